"""Seeded random generators for placements, framed cycles, and projective
maps.

Rational draws are bounded (numerators and denominators up to 1000) to keep
exact-arithmetic growth in check.  Every generator threads an explicit seed;
generation is deterministic per (seed, arguments).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cycles import FramedCycle, cycle_general_position
from .errors import GeometryError
from .framework import Framework, Graph
from .projective import (Force, ProjLine, ProjPoint, _cross, join,
                         line_of_force, lines_in_general_position)


def random_fraction(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_affine_point(rng: random.Random, bound: int = 1000) -> ProjPoint:
    return ProjPoint((random_fraction(rng, bound), random_fraction(rng, bound), 1))


def random_placement(g: Graph, seed: int, bound: int = 1000) -> Framework:
    """Random affine placement with pairwise distinct points."""
    rng = random.Random(seed)
    while True:
        try:
            return Framework(g, {v: random_affine_point(rng, bound)
                                 for v in g.vertices})
        except GeometryError:
            continue


def desargues_concurrent_placement(g: Graph, seed: int) -> Framework:
    """Placement of the prism fixture graph with the three rung lines
    (p1p2, p3p4, p5p6) concurrent at a random point."""
    rng = random.Random(seed)
    while True:
        center = random_affine_point(rng, 60)
        lines = []
        while len(lines) < 3:
            q = random_affine_point(rng, 60)
            if q == center:
                continue
            l = join(center, q)
            if l not in lines:
                lines.append(l)
        placement = {}
        ok = True
        used = {center}
        for (a, b), l in zip((("p1", "p2"), ("p3", "p4"), ("p5", "p6")), lines):
            pts = []
            guard = 0
            while len(pts) < 2 and guard < 40:
                guard += 1
                t = random_fraction(rng, 60)
                cand = ProjPoint(tuple(Fraction(x) + t * Fraction(y)
                                       for x, y in zip(center.coords, _direction(l, center))))
                if cand not in used:
                    used.add(cand)
                    pts.append(cand)
            if len(pts) < 2:
                ok = False
                break
            placement[a], placement[b] = pts
        if not ok:
            continue
        try:
            return Framework(g, placement)
        except GeometryError:
            continue


def _direction(l: ProjLine, through: ProjPoint):
    """A second point on l distinct from `through`."""
    a, b, c = l.coeffs
    for cand in ((b, -a, 0), (c, 0, -a), (0, c, -b)):
        if any(cand) and ProjPoint(cand) != through:
            return cand
    raise GeometryError("degenerate line")


def pascal_conic_placement(g: Graph, seed: int) -> Framework:
    """Placement of the hexagon fixture graph on a random parabola."""
    rng = random.Random(seed)
    while True:
        a = random_fraction(rng, 30)
        if a == 0:
            continue
        b = random_fraction(rng, 30)
        c = random_fraction(rng, 30)
        xs = set()
        guard = 0
        while len(xs) < 6 and guard < 60:
            guard += 1
            xs.add(random_fraction(rng, 30))
        if len(xs) < 6:
            continue
        xs = sorted(xs)
        placement = {f"p{i + 1}": ProjPoint((x, a * x * x + b * x + c, 1))
                     for i, x in enumerate(xs)}
        try:
            return Framework(g, placement)
        except GeometryError:
            continue


def random_cycle_points(k: int, rng: random.Random, bound: int = 200):
    """k affine points whose cyclic edge lines are in general position."""
    while True:
        pts = [random_affine_point(rng, bound) for _ in range(k)]
        if len(set(pts)) != k:
            continue
        lines = [join(pts[i], pts[(i + 1) % k]) for i in range(k)]
        if lines_in_general_position(lines):
            return pts


def random_framed_cycle(k: int, seed: int, equilibrium: bool) -> FramedCycle:
    """Random framed cycle in general position.

    With `equilibrium` the framings are the lines of the forces balancing
    random nonzero edge stresses, so a nonzero equilibrium force-load exists
    by construction; otherwise independent random framings make one almost
    surely impossible.
    """
    rng = random.Random(seed)
    while True:
        pts = random_cycle_points(k, rng)
        edge_reps = [_cross(pts[i].coords, pts[(i + 1) % k].coords) for i in range(k)]
        if equilibrium:
            ts = [random_fraction(rng, 50) for _ in range(k)]
            if any(t == 0 for t in ts):
                continue
            framings = []
            for i in range(k):
                dual = tuple(ts[i] * Fraction(edge_reps[i][c])
                             - ts[i - 1] * Fraction(edge_reps[i - 1][c])
                             for c in range(3))
                f = Force(dual)
                if f.is_zero():
                    framings = None
                    break
                framings.append(line_of_force(-f))
            if framings is None:
                continue
        else:
            framings = []
            for i in range(k):
                guard = 0
                line = None
                while guard < 40:
                    guard += 1
                    q = random_affine_point(rng, 200)
                    if q == pts[i]:
                        continue
                    cand = join(pts[i], q)
                    if not cand.contains(pts[(i - 1) % k]) and not cand.contains(pts[(i + 1) % k]):
                        line = cand
                        break
                if line is None:
                    framings = None
                    break
                framings.append(line)
            if framings is None:
                continue
        try:
            c = FramedCycle(pts, framings)
        except GeometryError:
            continue
        if cycle_general_position(c):
            return c


def random_projective_map(seed: int):
    """Random invertible 3x3 rational matrix with its inverse transpose,
    as (point_map, line_map) callables."""
    rng = random.Random(seed)
    while True:
        m = [[Fraction(rng.randint(-20, 20)) for _ in range(3)] for _ in range(3)]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        if det != 0:
            break
    adj = [[(m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
             - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3])
            for j in range(3)] for i in range(3)]

    def point_map(p: ProjPoint) -> ProjPoint:
        return ProjPoint(tuple(sum(m[i][j] * Fraction(p.coords[j]) for j in range(3))
                               for i in range(3)))

    def line_map(l: ProjLine) -> ProjLine:
        # inverse-transpose action: adj(M)^T up to the determinant
        return ProjLine(tuple(sum(Fraction(adj[j][i]) * Fraction(l.coeffs[j])
                                  for j in range(3)) for i in range(3)))

    return point_map, line_map


def transform_framework(fw: Framework, point_map) -> Framework:
    return Framework(fw.graph, {v: point_map(p) for v, p in fw.placement.items()})
