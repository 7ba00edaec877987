"""Loop homology and cohomology of an odd-dimensional sphere.

Homology ``H_*(L S^n)`` has the integral basis

    AU(k) = A ^ U^k   in degree k(n-1)
    U(k)  = U^k       in degree k(n-1) + n

with ``AU(0) = A`` the point class and ``U(0) = [S^n]`` the unit of the loop
product.  Cohomology is spanned by the relative classes ``T(m) = t^m`` and
``UT(m) = u t^m`` (m >= 2) together with ``E0`` and ``EN``, the classes pulled
back from ``H^*(S^n)`` along evaluation at the basepoint.  The names used in
the literature are ``omega = T(2)``, ``X = T(3)``, ``Y = UT(2)``,
``Z = UT(3)``.

All operations act on basis labels and extend bilinearly, so inhomogeneous
input is handled one homogeneous component at a time.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import ContractError
from .graded import (
    BasisLabel,
    Element,
    TensorChain,
    apply_in_slot,
    contract_slots,
    pair_tensor,
    sign,
    tensor,
)

HOMOLOGY_FAMILIES = ("AU", "U")
COHOMOLOGY_FAMILIES = ("E0", "EN", "T", "UT")

CONVENTIONS = ("alg", "thom")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ContractError(f"unknown convention {convention!r}; use 'alg' or 'thom'")


class Multiplicity(NamedTuple):
    value: int
    constant_supported: bool


@dataclass(frozen=True)
class SphereContext:
    """Algebraic model of the free loop space of ``S^n`` for odd ``n >= 3``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3 or self.n % 2 == 0:
            raise ContractError(f"sphere dimension must be an odd integer >= 3, got {self.n!r}")

    # -- basis -----------------------------------------------------------

    def label(self, family: str, index: int = 0) -> BasisLabel:
        n = self.n
        if family == "AU":
            if index < 0:
                raise ContractError("AU index must be >= 0")
            return BasisLabel("AU", index, index * (n - 1))
        if family == "U":
            if index < 0:
                raise ContractError("U index must be >= 0")
            return BasisLabel("U", index, index * (n - 1) + n)
        if family == "T":
            if index < 2:
                raise ContractError("T index must be >= 2")
            return BasisLabel("T", index, (index - 1) * (n - 1))
        if family == "UT":
            if index < 2:
                raise ContractError("UT index must be >= 2")
            return BasisLabel("UT", index, index * (n - 1) + 1)
        if family == "E0":
            return BasisLabel("E0", 0, 0)
        if family == "EN":
            return BasisLabel("EN", 0, n)
        raise ContractError(f"unknown basis family {family!r}")

    def AU(self, k: int) -> Element:
        return Element.basis(self.label("AU", k))

    def U(self, k: int) -> Element:
        return Element.basis(self.label("U", k))

    def T(self, m: int) -> Element:
        return Element.basis(self.label("T", m))

    def UT(self, m: int) -> Element:
        return Element.basis(self.label("UT", m))

    @property
    def E0(self) -> Element:
        return Element.basis(self.label("E0"))

    @property
    def EN(self) -> Element:
        return Element.basis(self.label("EN"))

    # named classes
    @property
    def A(self) -> Element:
        return self.AU(0)

    @property
    def unit(self) -> Element:
        return self.U(0)

    @property
    def omega(self) -> Element:
        return self.T(2)

    @property
    def X(self) -> Element:
        return self.T(3)

    @property
    def Y(self) -> Element:
        return self.UT(2)

    @property
    def Z(self) -> Element:
        return self.UT(3)

    def homology_basis(self, max_index: int) -> list:
        return [self.label(f, k) for k in range(max_index + 1) for f in HOMOLOGY_FAMILIES]

    def cohomology_basis(self, max_index: int) -> list:
        out = [self.label("E0"), self.label("EN")]
        out += [self.label(f, m) for m in range(2, max_index + 1) for f in ("T", "UT")]
        return out

    def homology_in_degree(self, degree: int) -> list:
        """All homology basis labels of the given degree (at most one exists)."""
        n1 = self.n - 1
        out = []
        if degree >= 0 and degree % n1 == 0:
            out.append(self.label("AU", degree // n1))
        if degree >= self.n and (degree - self.n) % n1 == 0:
            out.append(self.label("U", (degree - self.n) // n1))
        return out

    def _check_homology(self, x: Element) -> None:
        for b in x.terms:
            if b.family not in HOMOLOGY_FAMILIES:
                raise ContractError(f"{b!r} is not a homology class")

    def _check_cohomology(self, a: Element) -> None:
        for b in a.terms:
            if b.family not in COHOMOLOGY_FAMILIES:
                raise ContractError(f"{b!r} is not a cohomology class")

    # -- loop product ----------------------------------------------------

    def _wedge_basis(self, x: BasisLabel, y: BasisLabel) -> Element:
        if x.family == "AU" and y.family == "AU":
            return Element()
        family = "AU" if "AU" in (x.family, y.family) else "U"
        return Element.basis(self.label(family, x.index + y.index))

    def wedge_basis(self, x: BasisLabel, y: BasisLabel, convention: str = "alg") -> Element:
        out = self._wedge_basis(x, y)
        if convention == "thom":
            # A ^ B = (-1)^{np+n} A ^_Th B, and the sign is its own inverse
            return sign(self.n * x.degree + self.n) * out
        return out

    def cs_product(self, x: Element, y: Element, convention: str = "alg") -> Element:
        """Loop product; ``convention='thom'`` gives the Thom-signed variant."""
        _check_convention(convention)
        self._check_homology(x)
        self._check_homology(y)
        out = Element()
        for bx, cx in x.terms.items():
            for by, cy in y.terms.items():
                out = out + (cx * cy) * self.wedge_basis(bx, by, convention)
        return out

    def product_koszul_degree(self, convention: str) -> int:
        """Degree used for Koszul signs when the loop product acts inside a tensor.

        The algebraic product has degree 0 for the shifted grading H_{*+n}, which
        is what its sign correction achieves; the Thom-signed product has degree -n.
        """
        _check_convention(convention)
        return 0 if convention == "alg" else -self.n

    # -- cohomology product ----------------------------------------------

    def _ast_basis(self, a: BasisLabel, b: BasisLabel) -> Element:
        if a.family == "UT" and b.family == "UT":
            return Element()
        family = "UT" if "UT" in (a.family, b.family) else "T"
        return Element.basis(self.label(family, a.index + b.index))

    def gh_product(self, a: Element, b: Element, convention: str = "alg",
                   lifted: bool = True) -> Element:
        """Cohomology product dual to the loop coproduct.

        With ``lifted=True`` this is the extension by zero: classes pulled back
        from the sphere (E0, EN) are projected away first.  Unlifted, the product
        only exists on relative cohomology and such classes are rejected.
        """
        _check_convention(convention)
        self._check_cohomology(a)
        self._check_cohomology(b)
        out = Element()
        for ba, ca in a.terms.items():
            for bb, cb in b.terms.items():
                if ba.family in ("E0", "EN") or bb.family in ("E0", "EN"):
                    if lifted:
                        continue
                    raise ContractError("unlifted product is only defined on relative classes")
                term = self._ast_basis(ba, bb)
                if convention == "thom":
                    term = sign((self.n - 1) * bb.degree) * term
                out = out + (ca * cb) * term
        return out

    # -- coproduct -------------------------------------------------------

    def coproduct_basis(self, x: BasisLabel) -> TensorChain:
        k = x.index
        terms = []
        if x.family == "AU":
            for j in range(1, k - 1):
                terms.append(((self.label("AU", j), self.label("AU", k - 1 - j)), 1))
        elif x.family == "U":
            for j in range(1, k - 1):
                terms.append(((self.label("AU", j), self.label("U", k - 1 - j)), 1))
                terms.append(((self.label("U", j), self.label("AU", k - 1 - j)), 1))
        else:
            raise ContractError(f"{x!r} is not a homology class")
        return TensorChain(terms, arity=2)

    @property
    def coproduct_degree(self) -> int:
        return 1 - self.n

    def coproduct(self, x: Element) -> TensorChain:
        """Lifted loop coproduct, zero on constant loops."""
        self._check_homology(x)
        return apply_in_slot(self.coproduct_basis, 1, x, self.coproduct_degree,
                             arity_change=1)

    def iterated_coproduct(self, x: Element, k: int) -> TensorChain:
        """k-fold coproduct, each step applied in the last tensor slot."""
        if k < 1:
            raise ContractError("iteration count must be >= 1")
        out = self.coproduct(x)
        for _ in range(k - 1):
            out = apply_in_slot(self.coproduct_basis, out.arity, out,
                                self.coproduct_degree, arity_change=1)
        return out

    def trivial_coproduct(self, x: Element) -> TensorChain:
        """chi(S^n) (x ^ [*]) x [*]; the Euler characteristic vanishes for odd n."""
        self._check_homology(x)
        chi = 1 + sign(self.n)
        point = self.AU(0)
        return chi * tensor(self.cs_product(x, point), point)

    # -- circle action ---------------------------------------------------

    def delta_basis(self, x: BasisLabel) -> Element:
        if x.family == "AU":
            k = x.index
            if k == 0:
                return Element()
            return (sign(k) * k) * self.U(k - 1)
        if x.family == "U":
            return Element()
        raise ContractError(f"{x!r} is not a homology class")

    def delta(self, x: Element) -> Element:
        self._check_homology(x)
        return x.map_basis(self.delta_basis)

    # -- pairings --------------------------------------------------------

    def kronecker_basis(self, a: BasisLabel, x: BasisLabel) -> int:
        if a.family == "T" and x.family == "AU":
            return int(x.index == a.index - 1)
        if a.family == "UT" and x.family == "U":
            return int(x.index == a.index - 1)
        if a.family == "E0" and x.family == "AU":
            return int(x.index == 0)
        if a.family == "EN" and x.family == "U":
            return int(x.index == 0)
        return 0

    def kronecker(self, a: Element, x: Element) -> int:
        self._check_cohomology(a)
        self._check_homology(x)
        return sum(ca * cx * self.kronecker_basis(ba, bx)
                   for ba, ca in a.terms.items() for bx, cx in x.terms.items())

    def duality_check(self, a: Element, b: Element, z: Element) -> tuple:
        """Both sides of <a *^ b, z> = (-1)^{q(n-1)} <a x b, coproduct(z)>."""
        a.degree  # raises unless homogeneous
        q = b.degree
        lhs = self.kronecker(self.gh_product(a, b, "alg", lifted=True), z)
        rhs = sign(q * (self.n - 1)) * pair_tensor(tensor(a, b), self.coproduct(z),
                                                   self.kronecker_basis)
        return lhs, rhs

    # -- composite operations ---------------------------------------------

    def t_op(self, x: Element, g: int = 1, convention: str = "alg") -> Element:
        """The genus-one operation  product o (1 x Delta) o coproduct, iterated g times."""
        _check_convention(convention)
        out = x
        for _ in range(g):
            cop = self.coproduct(out)
            rotated = apply_in_slot(self.delta_basis, 2, cop, 1)
            out = contract_slots(lambda u, v: self.wedge_basis(u, v, convention), 1, rotated,
                                 self.product_koszul_degree(convention))
        return out

    def product_after_coproduct(self, x: Element, convention: str = "alg") -> Element:
        _check_convention(convention)
        return contract_slots(lambda u, v: self.wedge_basis(u, v, convention), 1,
                              self.coproduct(x), self.product_koszul_degree(convention))

    def frobenius_defect(self, x: Element, y: Element, convention: str = "alg") -> TensorChain:
        """cop(x ^ y) - (1 x ^)(cop(x) x y) - (^ x 1)(x x cop(y))."""
        _check_convention(convention)
        d = self.product_koszul_degree(convention)

        def wedge(u, v):
            return self.wedge_basis(u, v, convention)

        lhs = self.coproduct(self.cs_product(x, y, convention))
        left = tensor(self.coproduct(x), y)
        right_factor = apply_in_slot(self.coproduct_basis, 2, tensor(x, y),
                                     self.coproduct_degree, arity_change=1)
        first = contract_slots(wedge, 2, left, d)
        second = contract_slots(wedge, 1, right_factor, d)
        return lhs - first - second

    # -- filtration ------------------------------------------------------

    def level(self, b: BasisLabel) -> int:
        """Energy level of a basis class (length at most level * minimal geodesic length)."""
        if b.family in HOMOLOGY_FAMILIES:
            return (b.index + 1) // 2
        if b.family in ("T", "UT"):
            return b.index // 2
        if b.family in ("E0", "EN"):
            return 0
        raise ContractError(f"unknown basis family {b.family!r}")

    def intersection_multiplicity(self, x: Element) -> Multiplicity:
        """Smallest k >= 1 with a vanishing k-fold coproduct.

        Classes supported on constant loops are flagged: the coproduct cannot
        tell multiplicity 0 from 1.
        """
        if not x:
            raise ContractError("intersection multiplicity of the zero class is undefined")
        self._check_homology(x)
        constant = all(b.index == 0 for b in x.terms)
        k = 1
        while self.iterated_coproduct(x, k):
            k += 1
        return Multiplicity(k, constant)

    def level_table(self, max_level: int) -> list:
        """Rows ``(level, homology labels, cohomology labels)`` for levels 0..max_level.

        Level 0 holds the classes of constant loops; level m >= 1 holds
        AU(2m-1), AU(2m), U(2m-1), U(2m) and dually T(2m), T(2m+1), UT(2m),
        UT(2m+1), which sit in the same four degrees.
        """
        if max_level < 0:
            raise ContractError("max_level must be non-negative")
        rows = [(0, [self.label("AU", 0), self.label("U", 0)],
                 [self.label("E0"), self.label("EN")])]
        for m in range(1, max_level + 1):
            hom = [self.label("AU", 2 * m - 1), self.label("AU", 2 * m),
                   self.label("U", 2 * m - 1), self.label("U", 2 * m)]
            coh = [self.label("T", 2 * m), self.label("T", 2 * m + 1),
                   self.label("UT", 2 * m), self.label("UT", 2 * m + 1)]
            rows.append((m, hom, coh))
        return rows


COHOMOLOGY_NAMES = {("T", 2): "omega", ("T", 3): "X", ("UT", 2): "Y", ("UT", 3): "Z"}


def cohomology_monomial(b: BasisLabel) -> str:
    """Name of a cohomology basis class as a monomial in omega, X, Y, Z."""
    if b.family in ("E0", "EN"):
        return b.family
    m, rest = divmod(b.index, 2)
    # T(2m) = omega^m, T(2m+1) = omega^(m-1) X, UT(2m) = omega^(m-1) Y, UT(2m+1) = omega^(m-1) Z
    if b.family == "T" and rest == 0:
        power, tail = m, ""
    else:
        power, tail = m - 1, {("T", 1): "X", ("UT", 0): "Y", ("UT", 1): "Z"}[(b.family, rest)]
    head = "" if power == 0 else ("omega" if power == 1 else f"omega^{power}")
    return " ".join(p for p in (head, tail) if p)
