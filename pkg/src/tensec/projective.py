"""Homogeneous points and lines, forces as 2-forms, and the four geometric
operations with their three relations.

Points and lines are triples of exact rationals up to nonzero scale; we store
the canonical representative (coprime integers, first nonzero entry positive)
so that equality and hashing are structural.  A point lies on a line iff the
dot product of the triples vanishes; the meet of two lines and the join of
two points are both cross products.

A force is a decomposable 2-form on R^3 stored through its Hodge dual: the
dual of d(p) ^ d(q) is cross(p, q).  With that encoding force addition is
componentwise, the line of a nonzero force has exactly the dual triple as
coefficients, and the chart vector of a force (its interior product with the
chart's constant field V) is dual x V.  Unlike points and lines, forces keep
their scale.

Geometric computations may collapse to the absorbing ``TRUE`` token (meet of
equal lines, join of equal points); every operation and relation propagates
it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GeometryError, InputError
from .numeric import scalar_from_string, scalar_to_string


def _canonical_triple(triple):
    xs = [Fraction(x) for x in triple]
    if len(xs) != 3:
        raise InputError("homogeneous triples have exactly 3 entries")
    if not any(xs):
        raise GeometryError("zero triple is not a projective element")
    mult = 1
    for x in xs:
        d = x.denominator
        mult = mult // gcd(mult, d) * d
    ints = [int(x * mult) for x in xs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class ProjPoint:
    """Point of the rational projective plane, canonical homogeneous triple."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", _canonical_triple(coords))

    @classmethod
    def from_strings(cls, strings):
        return cls([scalar_from_string(s) for s in strings])

    def to_strings(self):
        return [scalar_to_string(Fraction(c)) for c in self.coords]

    def __repr__(self):
        return "({}:{}:{})".format(*self.coords)


@dataclass(frozen=True)
class ProjLine:
    """Line of the rational projective plane, canonical coefficient triple."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _canonical_triple(coeffs))

    @classmethod
    def from_strings(cls, strings):
        return cls([scalar_from_string(s) for s in strings])

    def to_strings(self):
        return [scalar_to_string(Fraction(c)) for c in self.coeffs]

    def contains(self, p: ProjPoint) -> bool:
        return _dot(self.coeffs, p.coords) == 0

    def __repr__(self):
        return "[{}:{}:{}]".format(*self.coeffs)


class TrueToken:
    """Absorbing result of degenerate meets/joins; compares equal to itself."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TRUE"


TRUE = TrueToken()

# A GeomValue is a ProjPoint, a ProjLine, or TRUE.


def meet(a, b):
    """Intersection point of two lines; TRUE if they coincide or either
    argument is TRUE."""
    if a is TRUE or b is TRUE:
        return TRUE
    if not isinstance(a, ProjLine) or not isinstance(b, ProjLine):
        raise InputError("meet expects lines or TRUE")
    if a == b:
        return TRUE
    return ProjPoint(_cross(a.coeffs, b.coeffs))


def join(a, b):
    """Line through two points; TRUE if they coincide or either is TRUE."""
    if a is TRUE or b is TRUE:
        return TRUE
    if not isinstance(a, ProjPoint) or not isinstance(b, ProjPoint):
        raise InputError("join expects points or TRUE")
    if a == b:
        return TRUE
    return ProjLine(_cross(a.coords, b.coords))


def rel_concurrent(l1, l2, l3) -> bool:
    """Three lines share a common point (TRUE absorbs to a true verdict)."""
    args = (l1, l2, l3)
    if any(a is TRUE for a in args):
        return True
    if not all(isinstance(a, ProjLine) for a in args):
        raise InputError("concurrency relation expects lines or TRUE")
    return _dot(_cross(l1.coeffs, l2.coeffs), l3.coeffs) == 0


def rel_collinear(p1, p2, p3) -> bool:
    """Three points lie on a common line (TRUE absorbs)."""
    args = (p1, p2, p3)
    if any(a is TRUE for a in args):
        return True
    if not all(isinstance(a, ProjPoint) for a in args):
        raise InputError("collinearity relation expects points or TRUE")
    return _dot(_cross(p1.coords, p2.coords), p3.coords) == 0


def rel_incident(p, l) -> bool:
    """Point lies on line (TRUE absorbs)."""
    if p is TRUE or l is TRUE:
        return True
    if not isinstance(p, ProjPoint) or not isinstance(l, ProjLine):
        raise InputError("incidence relation expects a point and a line")
    return l.contains(p)


@dataclass(frozen=True)
class Force:
    """Force on the projective plane: Hodge dual of a decomposable 2-form.

    ``dual`` is a Fraction triple; forces add componentwise and keep scale.
    """

    dual: tuple

    def __init__(self, dual):
        xs = tuple(Fraction(x) for x in dual)
        if len(xs) != 3:
            raise InputError("force duals have exactly 3 entries")
        object.__setattr__(self, "dual", xs)

    def is_zero(self) -> bool:
        return not any(self.dual)

    def __add__(self, other: "Force") -> "Force":
        return Force(tuple(a + b for a, b in zip(self.dual, other.dual)))

    def __neg__(self) -> "Force":
        return Force(tuple(-a for a in self.dual))

    def __sub__(self, other: "Force") -> "Force":
        return self + (-other)

    def scaled(self, k) -> "Force":
        k = Fraction(k)
        return Force(tuple(k * a for a in self.dual))

    def __repr__(self):
        return "Force({}, {}, {})".format(*map(str, self.dual))


ZERO_FORCE = Force((0, 0, 0))


def force_between(p: ProjPoint, q: ProjPoint, scale) -> Force:
    """Force scale * d(p) ^ d(q) built on the canonical representatives."""
    scale = Fraction(scale)
    if scale == 0:
        return ZERO_FORCE
    if p == q:
        raise GeometryError("force between coincident points is undefined")
    return Force(tuple(scale * c for c in _cross(p.coords, q.coords)))


def line_of_force(f: Force) -> ProjLine:
    if f.is_zero():
        raise GeometryError("zero force has no line of force")
    return ProjLine(f.dual)


@dataclass(frozen=True)
class AffineChart:
    """Affine chart determined by its line at infinity A1 x + A2 y + A3 z = 0.

    The constant field V has components (A1, A2, A3).
    """

    infinity_line: ProjLine

    @classmethod
    def standard(cls) -> "AffineChart":
        return cls(ProjLine((0, 0, 1)))

    @property
    def field(self):
        return self.infinity_line.coeffs

    def normalize(self, p: ProjPoint):
        """Representative of p scaled so <p, V> = 1; None if p is at infinity."""
        s = Fraction(_dot(p.coords, self.field))
        if s == 0:
            return None
        return tuple(Fraction(c) / s for c in p.coords)


def affine_vector(f: Force, chart: AffineChart):
    """Chart vector of the force: the 1-form iota_V F, as a covector triple.

    Linear in f; always orthogonal to V.
    """
    return tuple(Fraction(x) for x in _cross(f.dual, chart.field))


def _two_points_on(l: ProjLine):
    """Two deterministic independent rational points on a line.

    For line (a, b, c) the candidates (b,-a,0), (c,0,-a), (0,c,-b) all lie on
    it, and the cross product of any two of them is a coordinate of the line
    times (a, b, c), so a pair is independent iff that coordinate is nonzero.
    """
    a, b, c = l.coeffs
    cands = [(b, -a, 0), (c, 0, -a), (0, c, -b)]
    keep = [t for t in cands if any(t)]
    for i in range(len(keep)):
        for j in range(i + 1, len(keep)):
            if any(_cross(keep[i], keep[j])):
                return ProjPoint(keep[i]), ProjPoint(keep[j])
    raise GeometryError("degenerate line")  # unreachable for nonzero l


def _two_lines_through(p: ProjPoint):
    a, b, c = p.coords
    cands = [(b, -a, 0), (c, 0, -a), (0, c, -b)]
    keep = [t for t in cands if any(t)]
    for i in range(len(keep)):
        for j in range(i + 1, len(keep)):
            if any(_cross(keep[i], keep[j])):
                return ProjLine(keep[i]), ProjLine(keep[j])
    raise GeometryError("degenerate point")


def _random_fraction(rng: random.Random, bound: int = 999) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def pick_generic_point_on(l: ProjLine, avoid, seed: int) -> ProjPoint:
    """Deterministic pseudo-random rational point on l outside `avoid`.

    Draws b1 + t b2 for seeded rational t and rejects until the point misses
    the (finite) avoid set; the same seed always yields the same point.
    """
    avoid = set(avoid)
    b1, b2 = _two_points_on(l)
    rng = random.Random(seed)
    while True:
        t = _random_fraction(rng)
        cand = ProjPoint(tuple(Fraction(x) + t * Fraction(y)
                               for x, y in zip(b1.coords, b2.coords)))
        if cand not in avoid:
            return cand


def pick_generic_line_through(p: ProjPoint, avoid, seed: int) -> ProjLine:
    """Dual of pick_generic_point_on: seeded line through p outside `avoid`."""
    avoid = set(avoid)
    l1, l2 = _two_lines_through(p)
    rng = random.Random(seed)
    while True:
        t = _random_fraction(rng)
        cand = ProjLine(tuple(Fraction(x) + t * Fraction(y)
                              for x, y in zip(l1.coeffs, l2.coeffs)))
        if cand not in avoid:
            return cand


def lines_in_general_position(lines) -> bool:
    """An n-tuple of lines is in general position iff it has exactly
    n(n-1)/2 distinct pairwise intersection points (pairwise distinct lines,
    no three concurrent)."""
    lines = list(lines)
    n = len(lines)
    if len(set(lines)) != n:
        return False
    points = set()
    for i in range(n):
        for j in range(i + 1, n):
            points.add(meet(lines[i], lines[j]))
    return len(points) == n * (n - 1) // 2


def nonvanishing_proper_subsets(forces) -> bool:
    """True iff no proper nonempty 0/1-combination of the forces vanishes."""
    n = len(forces)
    for mask in range(1, (1 << n) - 1):
        total = ZERO_FORCE
        for i in range(n):
            if mask >> i & 1:
                total = total + forces[i]
        if total.is_zero():
            return False
    return True


def partial_sum_lines_distinct(forces) -> bool:
    """True iff the 2^(s-1) - 1 lines of F1 + sum(a_i F_i, i >= 2) over all
    proper 0/1-tuples (a_2..a_s) are pairwise distinct.

    Assumes no proper nonempty subset vanishes, so every partial sum has a
    line of force.
    """
    s = len(forces)
    lines = []
    for mask in range((1 << (s - 1)) - 1):
        total = forces[0]
        for i in range(1, s):
            if mask >> (i - 1) & 1:
                total = total + forces[i]
        lines.append(line_of_force(total))
    return len(set(lines)) == len(lines)
