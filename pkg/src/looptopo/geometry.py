"""Polygonal loops on the plane and the flat torus, cut at self-intersections.

Loops are closed polygons with exact rational vertices, parametrized
proportionally to arc length over [0, 1], so a loop is determined by its
vertex list and the basepoint is vertex 0.  On the torus ``R^2 / Z^2`` the
vertices are stored mod 1 and every edge is the shortest lift between
consecutive vertices, which requires both displacement components to be
strictly smaller than 1/2 in absolute value.

Arc lengths are sums of square roots and are kept exact with sympy.  All
incidence and orientation tests are done on the rational coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import sympy

from .errors import ContractError, DegenerateGeometryError, ParseError

Point = Tuple[Fraction, Fraction]

SPACES = ("plane", "torus")
# dimension of the target surface; enters through the normal orientation of the diagonal
SURFACE_DIM = 2
HALF = Fraction(1, 2)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise ParseError(f"not a rational number: {value!r}")


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def _mul(c: Fraction, p: Point) -> Point:
    return (c * p[0], c * p[1])


def _cross(p: Point, q: Point) -> Fraction:
    return p[0] * q[1] - p[1] * q[0]


def _dot(p: Point, q: Point) -> Fraction:
    return p[0] * q[0] + p[1] * q[1]


def _mod1(p: Point) -> Point:
    return (p[0] % 1, p[1] % 1)


def _reduce(c: Fraction) -> Fraction:
    """Representative of c mod 1 in [-1/2, 1/2)."""
    return c - floor(c + HALF)


def _exact(expr):
    """Canonical form for sums of rational multiples of square roots."""
    return sympy.expand(sympy.radsimp(expr))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _shifts(box_a, box_b, torus: bool):
    """Integer translates k with box_a meeting box_b + k (only k = 0 on the plane)."""
    if not torus:
        yield (0, 0)
        return
    (ax0, ay0, ax1, ay1), (bx0, by0, bx1, by1) = box_a, box_b
    for kx in range(ceil(ax0 - bx1), floor(ax1 - bx0) + 1):
        for ky in range(ceil(ay0 - by1), floor(ay1 - by0) + 1):
            yield (Fraction(kx), Fraction(ky))


def _box(points) -> tuple:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


@dataclass(frozen=True, order=True)
class LoopPoint:
    """A point of a loop given combinatorially: edge index and fraction along it."""

    edge: int
    frac: Fraction = Fraction(0)


START = LoopPoint(0, Fraction(0))


@dataclass(frozen=True)
class PolyLoop:
    """Closed polygonal loop with constant-speed parametrization.

    ``vertices`` are normalized on construction: coordinates become Fractions
    (reduced mod 1 on the torus) and repeated consecutive vertices are merged.
    Construction fails with DegenerateGeometryError if a vertex lies in the
    interior of an edge not incident to it.
    """

    space: str
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if self.space not in SPACES:
            raise ContractError(f"space must be 'plane' or 'torus', got {self.space!r}")
        pts = []
        for v in self.vertices:
            if len(v) != 2:
                raise ParseError(f"vertex {v!r} is not a pair")
            p = (as_fraction(v[0]), as_fraction(v[1]))
            if self.space == "torus":
                p = _mod1(p)
            if not pts or pts[-1] != p:
                pts.append(p)
        while len(pts) > 1 and pts[-1] == pts[0]:
            pts.pop()
        if not pts:
            raise ContractError("a loop needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(pts))
        if self.space == "torus":
            for i, d in enumerate(self.displacements):
                if abs(d[0]) == HALF or abs(d[1]) == HALF:
                    raise DegenerateGeometryError(
                        f"edge {i} has a displacement component of exactly 1/2; "
                        "its shortest lift is not unique")
        self._check_generic()

    # -- combinatorics ----------------------------------------------------

    @property
    def torus(self) -> bool:
        return self.space == "torus"

    @property
    def n_edges(self) -> int:
        return 0 if len(self.vertices) == 1 else len(self.vertices)

    @property
    def is_constant(self) -> bool:
        return len(self.vertices) == 1

    @property
    def basepoint(self) -> Point:
        return self.vertices[0]

    @cached_property
    def displacements(self) -> List[Point]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        out = []
        for i in range(len(vs)):
            d = _sub(vs[(i + 1) % len(vs)], vs[i])
            if self.torus:
                d = (_reduce(d[0]), _reduce(d[1]))
            out.append(d)
        return out

    @cached_property
    def lifted(self) -> List[Point]:
        """Vertices P_0, ..., P_N along a lift to R^2; P_N = P_0 + winding."""
        pts = [self.vertices[0]]
        for d in self.displacements:
            pts.append(_add(pts[-1], d))
        return pts

    @cached_property
    def winding(self) -> Tuple[int, int]:
        w = _sub(self.lifted[-1], self.lifted[0])
        return (int(w[0]), int(w[1]))

    def edge_segment(self, i: int) -> Tuple[Point, Point]:
        return self.lifted[i], self.displacements[i]

    # -- metric -----------------------------------------------------------

    @cached_property
    def edge_lengths(self) -> list:
        return [sympy.sqrt(sympy.Rational(_dot(d, d).numerator, _dot(d, d).denominator))
                for d in self.displacements]

    @cached_property
    def cumulative(self) -> list:
        out = [sympy.Integer(0)]
        for ell in self.edge_lengths:
            out.append(out[-1] + ell)
        return out

    @property
    def length(self):
        return self.cumulative[-1]

    def arc(self, lp: LoopPoint):
        """Arc length from the basepoint to lp, as a sum of rational multiples of surds."""
        if self.is_constant:
            return sympy.Integer(0)
        f = sympy.Rational(lp.frac.numerator, lp.frac.denominator)
        return sympy.expand(self.cumulative[lp.edge] + f * self.edge_lengths[lp.edge])

    def time(self, lp: LoopPoint):
        """Arc-length parameter in [0, 1) of a LoopPoint (exact, left unsimplified)."""
        if self.is_constant:
            return sympy.Integer(0)
        return self.arc(lp) / self.length

    def locate(self, s) -> LoopPoint:
        """LoopPoint at arc-length parameter s (a rational in [0, 1) or a LoopPoint)."""
        if isinstance(s, LoopPoint):
            if not 0 <= s.edge < max(self.n_edges, 1) or not 0 <= s.frac < 1:
                raise ContractError(f"{s!r} is not a point of this loop")
            return s
        s = as_fraction(s)
        if not 0 <= s < 1:
            raise ContractError(f"parameter {s} not in [0, 1)")
        if self.is_constant or s == 0:
            return START
        target = sympy.Rational(s.numerator, s.denominator) * self.length
        for e in range(self.n_edges):
            if target < self.cumulative[e + 1]:
                frac = _exact((target - self.cumulative[e]) / self.edge_lengths[e])
                if not frac.is_Rational:
                    raise ContractError(
                        f"parameter {s} does not land on a rational point (edge {e}, {frac})")
                return LoopPoint(e, as_fraction(frac))
        raise AssertionError("unreachable: target below total length")

    def point(self, lp: LoopPoint, lifted: bool = False) -> Point:
        if self.is_constant:
            return self.vertices[0]
        a, d = self.edge_segment(lp.edge)
        p = _add(a, _mul(lp.frac, d))
        return p if lifted or not self.torus else _mod1(p)

    def same_point(self, p: Point, q: Point) -> bool:
        if self.torus:
            return _mod1(p) == _mod1(q)
        return p == q

    def displacement(self, p: Point, q: Point) -> Point:
        """Shortest displacement from p to q (unique lift required on the torus)."""
        d = _sub(q, p)
        if self.torus:
            d = (_reduce(d[0]), _reduce(d[1]))
            if abs(d[0]) == HALF or abs(d[1]) == HALF:
                raise ContractError("points are antipodal in a coordinate; no unique stick")
        return d

    # -- generic position ---------------------------------------------------

    def _check_generic(self) -> None:
        n = self.n_edges
        for v in range(len(self.vertices)):
            p = self.lifted[v]
            for i in range(n):
                if i == v or (i + 1) % n == v:
                    continue
                a, d = self.edge_segment(i)
                seg_box = _box([a, _add(a, d)])
                for k in _shifts(_box([p]), seg_box, self.torus):
                    lam = _on_segment(a, d, _sub(p, k))
                    if lam is not None and 0 < lam < 1:
                        raise DegenerateGeometryError(
                            f"vertex {v} lies in the interior of edge {i}")

    # -- records ------------------------------------------------------------

    @classmethod
    def from_record(cls, record: dict) -> "PolyLoop":
        if not isinstance(record, dict) or "space" not in record or "vertices" not in record:
            raise ParseError("loop record needs 'space' and 'vertices'")
        verts = record["vertices"]
        if not isinstance(verts, list):
            raise ParseError("'vertices' must be a list of pairs")
        pts = []
        for v in verts:
            if not isinstance(v, (list, tuple)) or len(v) != 2:
                raise ParseError(f"vertex {v!r} is not a pair")
            pts.append((as_fraction(v[0]), as_fraction(v[1])))
        return cls(record["space"], tuple(pts))

    def to_record(self) -> dict:
        return {"space": self.space,
                "vertices": [[str(x), str(y)] for x, y in self.vertices]}

    def __repr__(self) -> str:
        vs = ", ".join(f"({x}, {y})" for x, y in self.vertices)
        return f"PolyLoop({self.space}: {vs})"


def _on_segment(a: Point, d: Point, p: Point) -> Optional[Fraction]:
    """Fraction lambda with p = a + lambda d, if p lies on the closed segment."""
    w = _sub(p, a)
    if _cross(d, w) != 0:
        return None
    lam = _dot(w, d) / _dot(d, d)
    return lam if 0 <= lam <= 1 else None


def _loop_from_path(space: str, pts: List[Point]) -> PolyLoop:
    return PolyLoop(space, tuple(pts))


def subpath(loop: PolyLoop, a: LoopPoint, b: LoopPoint) -> List[Point]:
    """Lifted points of the path running forward from a to b (a full turn if a == b)."""
    if loop.is_constant:
        return [loop.vertices[0]]
    pts: List[Point] = []

    def push(p):
        if not pts or pts[-1] != p:
            pts.append(p)

    push(loop.point(a, lifted=True))
    if b.edge == a.edge and b.frac > a.frac:
        push(loop.point(b, lifted=True))
        return pts
    w = (Fraction(loop.winding[0]), Fraction(loop.winding[1]))
    shift: Point = (Fraction(0), Fraction(0))
    e = a.edge
    while True:
        push(_add(loop.lifted[e + 1], shift))
        e += 1
        if e == loop.n_edges:
            e = 0
            shift = _add(shift, w)
        if e == b.edge:
            push(_add(loop.point(b, lifted=True), shift))
            return pts


def rotate(loop: PolyLoop, lp: LoopPoint) -> PolyLoop:
    """Same loop with the basepoint moved to lp."""
    return _loop_from_path(loop.space, subpath(loop, lp, lp))


def length_energy(loop: PolyLoop) -> tuple:
    """(length, energy) of a constant-speed loop; energy = length**2."""
    ell = loop.length
    return ell, sympy.expand(ell ** 2)


def concat_optimal(gamma: PolyLoop, delta: PolyLoop) -> PolyLoop:
    """Length-weighted concatenation of two loops with a common basepoint."""
    if gamma.space != delta.space:
        raise ContractError("loops live in different spaces")
    if gamma.basepoint != delta.basepoint:
        raise ContractError("endpoint mismatch: gamma(1) != delta(0)")
    return PolyLoop(gamma.space, gamma.vertices + delta.vertices)


def concat_break(gamma: PolyLoop, delta: PolyLoop):
    """Parameter at which concat_optimal switches from gamma to delta."""
    total = gamma.length + delta.length
    if total == 0:
        return sympy.Integer(0)
    return gamma.length / total


def cut(loop: PolyLoop, s) -> Tuple[PolyLoop, PolyLoop]:
    """Split a loop at a parameter s in (0, 1) where it returns to its basepoint."""
    lp = loop.locate(s)
    if lp == START:
        raise ContractError("cut parameter must lie in (0, 1)")
    if not loop.same_point(loop.point(lp), loop.basepoint):
        raise ContractError(f"loop does not pass through its basepoint at {lp}")
    first = subpath(loop, START, lp)
    second = subpath(loop, lp, START)
    return _loop_from_path(loop.space, first), _loop_from_path(loop.space, second)


class BasepointCensus(NamedTuple):
    points: List[LoopPoint]
    times: list
    fold: int


def basepoint_self_intersections(loop: PolyLoop) -> BasepointCensus:
    """Parameters s in (0, 1) with loop(s) = loop(0); fold = count + 1."""
    if loop.is_constant:
        return BasepointCensus([], [], 0)
    p0 = loop.lifted[0]
    found = set()
    for i in range(loop.n_edges):
        a, d = loop.edge_segment(i)
        for k in _shifts(_box([p0]), _box([a, _add(a, d)]), loop.torus):
            lam = _on_segment(a, d, _sub(p0, k))
            if lam is None:
                continue
            if 0 < lam < 1:
                raise DegenerateGeometryError(f"basepoint lies inside edge {i}")
            j = (i + int(lam)) % loop.n_edges
            if j != 0:
                found.add(j)
    points = [LoopPoint(j) for j in sorted(found)]
    return BasepointCensus(points, [loop.time(lp) for lp in points], len(points) + 1)


class Crossing(NamedTuple):
    """A transverse double point: the loop passes at first then at second."""

    point: Point
    first: LoopPoint
    second: LoopPoint


def self_crossings(loop: PolyLoop) -> List[Crossing]:
    """All transverse self-crossings, each listed once with first < second.

    Raises DegenerateGeometryError on overlapping edges, on distinct vertices
    that coincide, and on vertices lying inside edges.
    """
    out: List[Crossing] = []
    n = loop.n_edges
    for i in range(n):
        a, da = loop.edge_segment(i)
        box_a = _box([a, _add(a, da)])
        for j in range(i + 1, n):
            b, db = loop.edge_segment(j)
            for k in _shifts(box_a, _box([b, _add(b, db)]), loop.torus):
                hit = _intersect(a, da, _add(b, k), db)
                if hit is None:
                    continue
                lam, mu = hit
                if 0 < lam < 1 and 0 < mu < 1:
                    out.append(Crossing(_mod1(_add(a, _mul(lam, da))) if loop.torus
                                        else _add(a, _mul(lam, da)),
                                        LoopPoint(i, lam), LoopPoint(j, mu)))
                    continue
                va = (i + int(lam)) % n if lam in (0, 1) else None
                vb = (j + int(mu)) % n if mu in (0, 1) else None
                if va is not None and va == vb:
                    continue  # shared vertex of adjacent edges
                if va is not None and vb is not None:
                    raise DegenerateGeometryError(f"vertices {va} and {vb} coincide")
                raise DegenerateGeometryError(f"edges {i} and {j} meet at a vertex")
    return out


def _intersect(a: Point, da: Point, b: Point, db: Point):
    """(lambda, mu) with a + lambda da = b + mu db on the closed segments, or None.

    Collinear overlaps of positive length raise DegenerateGeometryError; a
    collinear touch in a single endpoint is reported like a transverse hit.
    """
    cr = _cross(da, db)
    w = _sub(b, a)
    if cr != 0:
        lam = _cross(w, db) / cr
        mu = _cross(w, da) / cr
        if 0 <= lam <= 1 and 0 <= mu <= 1:
            return lam, mu
        return None
    if _cross(w, da) != 0:
        return None
    # collinear: project b's endpoints onto a's parameter
    dd = _dot(da, da)
    t0 = _dot(w, da) / dd
    t1 = _dot(_add(w, db), da) / dd
    lo, hi = max(min(t0, t1), 0), min(max(t0, t1), 1)
    if lo > hi:
        return None
    if lo < hi:
        raise DegenerateGeometryError("collinear overlapping edges (non-transverse)")
    lam = lo
    mu = (lam - t0) / (t1 - t0)
    return lam, mu


# -- chains of loop pairs ------------------------------------------------------

ComponentLabel = Union[str, Tuple[int, int]]


def component_label(loop: PolyLoop) -> ComponentLabel:
    """Path component of a loop: winding vector on the torus; the plane is connected."""
    return loop.winding if loop.torus else "plane"


class PairChain:
    """Integer combination of ordered pairs of loops (a 0-chain on pairs of loops)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: Dict[Tuple[PolyLoop, PolyLoop], int] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for pair, c in items:
            acc[pair] = acc.get(pair, 0) + c
        self._terms = {p: c for p, c in acc.items() if c}

    @property
    def terms(self) -> Dict[Tuple[PolyLoop, PolyLoop], int]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __add__(self, other: "PairChain") -> "PairChain":
        return PairChain(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "PairChain":
        return PairChain([(p, -c) for p, c in self._terms.items()])

    def __sub__(self, other: "PairChain") -> "PairChain":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PairChain) and self._terms == other._terms

    def __repr__(self) -> str:
        return f"PairChain({self._terms!r})"


def pair_chain_class(chain: PairChain) -> Dict[Tuple[ComponentLabel, ComponentLabel], int]:
    """Group a chain by the components of its two loops, dropping zero totals."""
    acc: dict = {}
    for (x, y), c in chain:
        key = (component_label(x), component_label(y))
        acc[key] = acc.get(key, 0) + c
    return {k: c for k, c in sorted(acc.items(), key=lambda kv: repr(kv[0])) if c}


class RotationTerm(NamedTuple):
    """One solution (t, s) of loop(t) = loop(t + s) in the rotation family."""

    t: object
    s: object
    sign: int
    pair: Tuple[PolyLoop, PolyLoop]


def rotation_terms(loop: PolyLoop) -> List[RotationTerm]:
    """Interior solutions of loop(t) = loop(t + s), 0 < s < 1, with intersection signs.

    The sign is that of the Jacobian of (t, s) -> loop(t + s) - loop(t), i.e.
    sign det(v(t + s), v(t)), times (-1)^dim for the normal orientation of the
    diagonal.  The two solutions coming from one double point have opposite
    signs.
    """
    out: List[RotationTerm] = []
    normal = -1 if SURFACE_DIM % 2 else 1
    for c in self_crossings(loop):
        a1, a2, ell = loop.arc(c.first), loop.arc(c.second), loop.length
        d1 = loop.displacements[c.first.edge]
        d2 = loop.displacements[c.second.edge]
        zeta = _loop_from_path(loop.space, subpath(loop, c.first, c.second))
        xi = _loop_from_path(loop.space, subpath(loop, c.second, c.first))
        out.append(RotationTerm(a1 / ell, sympy.expand(a2 - a1) / ell,
                                normal * _sgn(_cross(d2, d1)), (zeta, xi)))
        out.append(RotationTerm(a2 / ell, sympy.expand(ell - a2 + a1) / ell,
                                normal * _sgn(_cross(d1, d2)), (xi, zeta)))
    out.sort(key=lambda r: sympy.N(r.t, 30))
    return out


def constant_at(loop: PolyLoop) -> PolyLoop:
    return PolyLoop(loop.space, (loop.basepoint,))


def rotation_coproduct(loop: PolyLoop, lifted: bool = False) -> PairChain:
    """Coproduct of the rotation 1-cycle of a loop, computed by transversality.

    The lifted version applies (1 - const o ev) to both factors, adding the
    terms with constant loops at the cut point.
    """
    if loop.is_constant:
        return PairChain()
    terms = []
    for r in rotation_terms(loop):
        x, y = r.pair
        terms.append(((x, y), r.sign))
        if lifted:
            cx, cy = constant_at(x), constant_at(y)
            terms += [((cx, y), -r.sign), ((x, cy), -r.sign), ((cx, cy), r.sign)]
    return PairChain(terms)


# -- stick retractions ----------------------------------------------------------

def _dist2(d: Point) -> Fraction:
    return _dot(d, d)


def stick_retraction_gh(loop: PolyLoop, s, eps) -> Tuple[PolyLoop, LoopPoint]:
    """Force loop(s) = loop(0) by inserting the stick loop(s) -> loop(0) -> loop(s).

    Returns the resulting constant-speed loop and the LoopPoint at which it
    passes through its basepoint.
    """
    eps = as_fraction(eps)
    lp = loop.locate(s)
    if lp == START:
        return loop, START
    q = loop.point(lp, lifted=True)
    d = loop.displacement(q, loop.basepoint)
    if _dist2(d) >= eps * eps:
        raise ContractError("loop(s) is not within eps of the basepoint")
    first = subpath(loop, START, lp)
    second = subpath(loop, lp, START)
    if d == (0, 0):
        return loop, lp
    pts = first + [_add(q, d)] + second
    out = _loop_from_path(loop.space, pts)
    return out, LoopPoint(len(first))


def cs_product_geometric(gamma: PolyLoop, delta: PolyLoop, eps) -> Optional[PolyLoop]:
    """Stick product: join delta to gamma's basepoint by a stick there and back, concatenate.

    Returns None when the basepoints are at least eps apart (outside the
    support of the Thom class).
    """
    eps = as_fraction(eps)
    if gamma.space != delta.space:
        raise ContractError("loops live in different spaces")
    if gamma.torus and eps > HALF:
        raise ContractError("eps must be at most 1/2 on the torus")
    g0, d0 = gamma.basepoint, delta.basepoint
    d = _sub(d0, g0)
    if gamma.torus:
        d = (_reduce(d[0]), _reduce(d[1]))
    if _dist2(d) >= eps * eps:
        return None
    stuck = (g0, _add(g0, d)) + tuple(_add(_add(g0, d), _sub(v, d0)) for v in delta.vertices[1:])
    stuck = stuck + (_add(g0, d),)
    return PolyLoop(gamma.space, gamma.vertices + stuck)
