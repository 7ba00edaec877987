"""Graded free Z-modules on labelled bases, their tensor powers and Koszul signs.

Everything here is exact integer arithmetic on formal sums.  An `Element` is a
finite integer combination of `BasisLabel`s; a `TensorChain` is a finite
integer combination of ordered tuples of labels, all of the same arity.  Sign
conventions (twist, operators applied inside a tensor slot, pairings of cross
products) are collected in the free functions at the bottom of the module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Tuple, Union

from .errors import ContractError


@dataclass(frozen=True)
class BasisLabel:
    """A basis symbol such as ``AU(3)``.

    Equality and hashing only look at ``(family, index)``; the degree is
    carried along for sign computations and is fixed by whoever builds the
    label.
    """

    family: str
    index: int
    degree: int = field(compare=False)

    @property
    def sort_key(self) -> Tuple[str, int]:
        return (self.family, self.index)

    def __repr__(self) -> str:
        return f"{self.family}({self.index})"


TensorLabel = Tuple[BasisLabel, ...]


def sign(exponent: int) -> int:
    """(-1)**exponent for any integer exponent."""
    return -1 if exponent % 2 else 1


def tensor_degree(slots: TensorLabel) -> int:
    return sum(b.degree for b in slots)


def _canonical(pairs: Iterable[Tuple[object, int]]) -> dict:
    acc: dict = {}
    for key, c in pairs:
        if c:
            acc[key] = acc.get(key, 0) + c
    return {k: c for k, c in acc.items() if c}


class _FormalSum:
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, Mapping):
            terms = terms.items()
        self._terms = _canonical(terms)

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, key) -> int:
        return self._terms.get(key, 0)

    def _sorted_keys(self):
        return sorted(self._terms, key=self._key_order)

    def __iter__(self) -> Iterator:
        for k in self._sorted_keys():
            yield k, self._terms[k]

    def __hash__(self) -> int:
        return hash((type(self), frozenset(self._terms.items())))


class Element(_FormalSum):
    """Integer formal sum of basis labels, always in canonical form."""

    __slots__ = ()

    @staticmethod
    def _key_order(label: BasisLabel):
        return label.sort_key

    @classmethod
    def basis(cls, label: BasisLabel, coefficient: int = 1) -> "Element":
        return cls({label: coefficient})

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return isinstance(other, Element) and self._terms == other._terms

    __hash__ = _FormalSum.__hash__

    def __add__(self, other: "Element") -> "Element":
        return add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return add(self, scale(-1, other))

    def __neg__(self) -> "Element":
        return scale(-1, self)

    def __rmul__(self, c: int) -> "Element":
        return scale(c, self)

    __mul__ = __rmul__

    def labels(self) -> list:
        return self._sorted_keys()

    def degrees(self) -> list:
        return sorted({b.degree for b in self._terms})

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for b, c in self._terms.items():
            parts.setdefault(b.degree, {})[b] = c
        return {d: Element(t) for d, t in sorted(parts.items())}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ContractError(f"element is not homogeneous (degrees {degs})")
        return degs[0]

    def map_basis(self, fn: Callable[[BasisLabel], "Element"]) -> "Element":
        """Linear extension of a function defined on basis labels."""
        out: dict = {}
        for b, c in self._terms.items():
            for b2, c2 in fn(b)._terms.items():
                out[b2] = out.get(b2, 0) + c * c2
        return Element(out)

    def __repr__(self) -> str:
        if not self._terms:
            return "Element(0)"
        return "Element(" + " + ".join(f"{c}*{b!r}" for b, c in self) + ")"


class TensorChain(_FormalSum):
    """Integer formal sum of label tuples of a fixed arity.

    The arity is stored explicitly so that the zero chain still knows how many
    loop factors it lives in.
    """

    __slots__ = ("arity",)

    def __init__(self, terms=None, arity: int = 2):
        if arity < 1:
            raise ContractError("arity must be positive")
        super().__init__(terms)
        for slots in self._terms:
            if len(slots) != arity:
                raise ContractError(f"tuple {slots!r} does not have arity {arity}")
        self.arity = arity

    @staticmethod
    def _key_order(slots: TensorLabel):
        return tuple(b.sort_key for b in slots)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return (isinstance(other, TensorChain) and self.arity == other.arity
                and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._terms.items())))

    def __add__(self, other: "TensorChain") -> "TensorChain":
        return add(self, other)

    def __sub__(self, other: "TensorChain") -> "TensorChain":
        return add(self, scale(-1, other))

    def __neg__(self) -> "TensorChain":
        return scale(-1, self)

    def __rmul__(self, c: int) -> "TensorChain":
        return scale(c, self)

    __mul__ = __rmul__

    def degrees(self) -> list:
        return sorted({tensor_degree(s) for s in self._terms})

    def __repr__(self) -> str:
        if not self._terms:
            return f"TensorChain(0, arity={self.arity})"
        body = " + ".join(f"{c}*{s!r}" for s, c in self)
        return f"TensorChain({body}, arity={self.arity})"


Graded = Union[Element, TensorChain]


def _as_tensor(x: Graded) -> TensorChain:
    if isinstance(x, TensorChain):
        return x
    return TensorChain({(b,): c for b, c in x.terms.items()}, arity=1)


def add(x: Graded, y: Graded) -> Graded:
    if isinstance(x, TensorChain) or isinstance(y, TensorChain):
        if not (isinstance(x, TensorChain) and isinstance(y, TensorChain)):
            raise ContractError("cannot add an Element and a TensorChain")
        if x.arity != y.arity:
            raise ContractError(f"arity mismatch: {x.arity} vs {y.arity}")
        return TensorChain(list(x.terms.items()) + list(y.terms.items()), arity=x.arity)
    return Element(list(x.terms.items()) + list(y.terms.items()))


def scale(c: int, x: Graded) -> Graded:
    items = [(k, c * v) for k, v in x.terms.items()]
    if isinstance(x, TensorChain):
        return TensorChain(items, arity=x.arity)
    return Element(items)


def tensor(x: Graded, y: Graded) -> TensorChain:
    """Cross product of two chains: bilinear concatenation of label tuples, no sign."""
    tx, ty = _as_tensor(x), _as_tensor(y)
    out = [(sx + sy, cx * cy) for sx, cx in tx.terms.items() for sy, cy in ty.terms.items()]
    return TensorChain(out, arity=tx.arity + ty.arity)


def twist(t: TensorChain) -> TensorChain:
    """(b1, b2) -> (-1)^{|b1||b2|} (b2, b1)."""
    if t.arity != 2:
        raise ContractError(f"twist needs arity 2, got {t.arity}")
    return TensorChain(
        [((b2, b1), sign(b1.degree * b2.degree) * c) for (b1, b2), c in t.terms.items()],
        arity=2)


def identity_op(b: BasisLabel) -> Element:
    return Element.basis(b)


def apply_in_slot(op: Callable[[BasisLabel], Graded], slot: int, t: Graded,
                  degree: int, arity_change: int = 0) -> TensorChain:
    """Apply a degree-``degree`` operator to tensor slot ``slot`` (1-based).

    Each term picks up the Koszul sign (-1)^{degree * (degrees of earlier slots)}.
    ``op`` may return an Element (arity is preserved) or a TensorChain, whose
    tuples are spliced in place of the slot (e.g. a coproduct raises the arity
    by one).  ``arity_change`` fixes the output arity when ``t`` is zero.
    """
    t = _as_tensor(t)
    if not 1 <= slot <= t.arity:
        raise ContractError(f"slot {slot} out of range for arity {t.arity}")
    i = slot - 1
    out = []
    new_arity = None
    for slots, c in t.terms.items():
        s = sign(degree * tensor_degree(slots[:i]))
        image = _as_tensor(op(slots[i]))
        new_arity = t.arity - 1 + image.arity
        for piece, c2 in image.terms.items():
            out.append((slots[:i] + piece + slots[i + 1:], s * c * c2))
    if new_arity is None:
        new_arity = t.arity + arity_change
    return TensorChain(out, arity=new_arity)


def contract_slots(op: Callable[[BasisLabel, BasisLabel], Element], slot: int,
                   t: TensorChain, degree: int) -> Graded:
    """Apply a binary operator of degree ``degree`` to slots ``slot, slot+1`` (1-based).

    Returns a TensorChain of arity one less, or an Element if the result has
    arity 1.
    """
    if t.arity < 2 or not 1 <= slot < t.arity:
        raise ContractError(f"cannot contract slots {slot},{slot + 1} of arity {t.arity}")
    i = slot - 1
    out = []
    for slots, c in t.terms.items():
        s = sign(degree * tensor_degree(slots[:i]))
        for b, c2 in op(slots[i], slots[i + 1]).terms.items():
            out.append((slots[:i] + (b,) + slots[i + 2:], s * c * c2))
    if t.arity == 2:
        return Element([(k[0], v) for k, v in out])
    return TensorChain(out, arity=t.arity - 1)


def pair_tensor(c: TensorChain, t: TensorChain,
                pairing: Callable[[BasisLabel, BasisLabel], int]) -> int:
    """Kronecker pairing of a cross product of cochains with a cross product of chains.

    <c1 x ... x ck, C1 x ... x Ck> = (-1)^{sum_{i<j} |c_i||C_j|} prod <c_i, C_i>,
    which for k = 2 is <c x d, C x D> = (-1)^{|D||c|} <c, C><d, D>.
    """
    c, t = _as_tensor(c), _as_tensor(t)
    if c.arity != t.arity:
        raise ContractError(f"arity mismatch: {c.arity} vs {t.arity}")
    total = 0
    for cs, a in c.terms.items():
        for ts, b in t.terms.items():
            value = a * b
            for x, y in zip(cs, ts):
                value *= pairing(x, y)
                if not value:
                    break
            if not value:
                continue
            e = sum(cs[i].degree * ts[j].degree
                    for i in range(len(cs)) for j in range(i + 1, len(ts)))
            total += sign(e) * value
    return total
