"""Planar frameworks over exact rational projective coordinates.

Holds the graph/framework value types, the brute-force self-stress oracle
(exact null space of the rigidity system in an affine chart), equilibrium
force-loads and their non-parallelizability test, simple-cycle enumeration,
general-position predicates, and the local H-to-Phi rewiring surgery.

The oracle is the ground truth every other verdict in the package is
cross-validated against.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GeometryError, InputError, PointAtInfinityError, PreconditionError
from .numeric import ExactMatrix, nullspace_basis
from .projective import (
    TRUE,
    AffineChart,
    Force,
    ProjLine,
    ProjPoint,
    ZERO_FORCE,
    _dot,
    affine_vector,
    join,
    lines_in_general_position,
    meet,
    nonvanishing_proper_subsets,
    partial_sum_lines_distinct,
)


def edge_key(u: str, v: str):
    if u == v:
        raise InputError(f"loop edge at {u!r}")
    return (u, v) if u < v else (v, u)


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


class Graph:
    """Simple connected graph with string vertex ids."""

    __slots__ = ("vertices", "edges", "_adj", "_edge_set")

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InputError("duplicate vertex ids")
        keys = sorted({edge_key(u, v) for u, v in edges})
        known = set(vertices)
        for u, v in keys:
            if u not in known or v not in known:
                raise InputError(f"edge ({u!r}, {v!r}) uses unknown vertex")
        self.vertices = vertices
        self.edges = tuple(keys)
        self._edge_set = frozenset(keys)
        adj = {v: [] for v in vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        if vertices and not self._connected():
            raise InputError("graph is not connected")

    def _connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def neighbors(self, v: str):
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self._edge_set

    def require_min_degree(self, k: int = 3):
        for v in self.vertices:
            if self.degree(v) < k:
                raise InputError(f"vertex {v!r} has degree {self.degree(v)} < {k}")

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))


class Framework:
    """Graph with a placement of its vertices at pairwise distinct points."""

    __slots__ = ("graph", "placement")

    def __init__(self, graph: Graph, placement):
        placement = dict(placement)
        missing = [v for v in graph.vertices if v not in placement]
        if missing:
            raise InputError(f"missing placement for {missing}")
        pts = [placement[v] for v in graph.vertices]
        if len(set(pts)) != len(pts):
            raise GeometryError("placed points must be pairwise distinct")
        self.graph = graph
        self.placement = {v: placement[v] for v in graph.vertices}

    def point(self, v: str) -> ProjPoint:
        return self.placement[v]

    def edge_line(self, u: str, v: str):
        return join(self.placement[u], self.placement[v])


@dataclass
class Stress:
    """Chart tensions, one exact scalar per unordered edge."""

    weights: dict

    def scale(self, k) -> "Stress":
        k = Fraction(k)
        return Stress({e: k * w for e, w in self.weights.items()})

    def is_zero(self) -> bool:
        return all(w == 0 for w in self.weights.values())


class ForceLoad:
    """Antisymmetric assignment of forces to ordered vertex pairs."""

    __slots__ = ("forces",)

    def __init__(self, forces):
        forces = dict(forces)
        for (u, v), f in list(forces.items()):
            back = forces.get((v, u))
            if back is None:
                forces[(v, u)] = -f
            elif not (f + back).is_zero():
                raise GeometryError(f"forces at ({u},{v}) are not antisymmetric")
        self.forces = forces

    def force(self, u: str, v: str) -> Force:
        return self.forces.get((u, v), ZERO_FORCE)

    def scaled(self, k) -> "ForceLoad":
        return ForceLoad({p: f.scaled(k) for p, f in self.forces.items()})


def vertex_force_sum(fw: Framework, fl: ForceLoad, v: str) -> Force:
    total = ZERO_FORCE
    for u in fw.graph.neighbors(v):
        total = total + fl.force(v, u)
    return total


def is_equilibrium(fw: Framework, fl: ForceLoad) -> bool:
    return all(vertex_force_sum(fw, fl, v).is_zero() for v in fw.graph.vertices)


def self_stress_basis(fw: Framework, chart: AffineChart | None = None):
    """Exact basis of the self-stress space of the framework in a chart.

    Builds the 2n x |E| rigidity-type system (two chart coordinates per
    vertex, one column per edge, entries p_i - p_j on chart representatives)
    and returns its null space as Stress objects.  This is the brute-force
    oracle the rest of the package is validated against.
    """
    chart = chart or AffineChart.standard()
    normalized = {}
    for v in fw.graph.vertices:
        n = chart.normalize(fw.placement[v])
        if n is None:
            raise PointAtInfinityError(f"vertex {v!r} lies on the infinity line")
        normalized[v] = n
    field = chart.field
    drop = next(i for i in range(3) if field[i] != 0)
    keep = [i for i in range(3) if i != drop]
    edges = fw.graph.edges
    col = {e: j for j, e in enumerate(edges)}
    rows = []
    for v in fw.graph.vertices:
        for c in keep:
            row = [Fraction(0)] * len(edges)
            for u in fw.graph.neighbors(v):
                row[col[edge_key(u, v)]] = normalized[v][c] - normalized[u][c]
            rows.append(row)
    basis = nullspace_basis(ExactMatrix(rows))
    return [Stress(dict(zip(edges, vec))) for vec in basis]


def forceload_from_stress(fw: Framework, w: Stress,
                          chart: AffineChart | None = None) -> ForceLoad:
    """Force-load whose chart vectors are w_ij (p_i - p_j) on every edge."""
    chart = chart or AffineChart.standard()
    if set(w.weights) != set(fw.graph.edges):
        raise InputError("stress keys do not match framework edges")
    normalized = {}
    for v in fw.graph.vertices:
        n = chart.normalize(fw.placement[v])
        if n is None:
            raise PointAtInfinityError(f"vertex {v!r} lies on the infinity line")
        normalized[v] = n
    forces = {}
    for (u, v), weight in w.weights.items():
        # dual = w * cross(n_v, n_u) gives iota_V F_{u,v} = w (n_u - n_v);
        # the chart representatives must be used as-is, not recanonicalized.
        dual = _cross3(normalized[v], normalized[u])
        f = Force(tuple(weight * d for d in dual))
        forces[(u, v)] = f
        forces[(v, u)] = -f
    return ForceLoad(forces)


def stress_of_forceload(fw: Framework, fl: ForceLoad,
                        chart: AffineChart | None = None) -> Stress:
    """Read back chart tensions: the w with iota_V F_{i,j} = w_ij (p_i - p_j)."""
    chart = chart or AffineChart.standard()
    normalized = {}
    for v in fw.graph.vertices:
        n = chart.normalize(fw.placement[v])
        if n is None:
            raise PointAtInfinityError(f"vertex {v!r} lies on the infinity line")
        normalized[v] = n
    weights = {}
    for u, v in fw.graph.edges:
        vec = affine_vector(fl.force(u, v), chart)
        diff = tuple(normalized[u][i] - normalized[v][i] for i in range(3))
        c = next(i for i in range(3) if diff[i] != 0)
        w = vec[c] / diff[c]
        if any(vec[i] != w * diff[i] for i in range(3)):
            raise GeometryError(f"force at edge ({u},{v}) is not along the edge")
        weights[(u, v)] = w
    return Stress(weights)


def is_non_parallelizable(fw: Framework, fl: ForceLoad) -> bool:
    """Non-parallelizability of an equilibrium force-load, by exhaustive
    subset enumeration at every vertex.

    At a vertex with incident forces F_1..F_s this requires (a) no proper
    nonempty 0/1-combination vanishes and (b) the 2^(s-1) - 1 lines of
    F_1 + sum(a_i F_i, i >= 2), (a_2..a_s) != (1..1), are pairwise distinct.
    """
    if not is_equilibrium(fw, fl):
        raise PreconditionError("force-load is not an equilibrium force-load")
    for v in fw.graph.vertices:
        forces = [fl.force(v, u) for u in fw.graph.neighbors(v)]
        if any(f.is_zero() for f in forces):
            return False
        if not nonvanishing_proper_subsets(forces):
            return False
        if not partial_sum_lines_distinct(forces):
            return False
    return True


def find_nonparallelizable_stress(fw: Framework, chart: AffineChart | None = None,
                                  seed: int = 0, tries: int = 16):
    """A self-stress whose load is non-parallelizable, or None.

    Exact for stress spaces of dimension <= 1 (non-parallelizability is
    scale-invariant).  For higher-dimensional spaces the generic element is
    probed with the basis vectors plus seeded random combinations, which can
    only under-report.
    """
    basis = self_stress_basis(fw, chart)
    if not basis:
        return None
    candidates = list(basis)
    if len(basis) > 1:
        rng = random.Random(seed)
        for _ in range(tries):
            combo = {}
            for e in fw.graph.edges:
                combo[e] = sum((Fraction(rng.randint(-9, 9)) * w.weights[e]
                                for w in basis), Fraction(0))
            candidates.append(Stress(combo))
    for w in candidates:
        if w.is_zero():
            continue
        fl = forceload_from_stress(fw, w, chart)
        if is_non_parallelizable(fw, fl):
            return w
    return None


def exists_nonparallelizable_stress(fw: Framework, chart: AffineChart | None = None,
                                    seed: int = 0, tries: int = 16) -> bool:
    """Oracle verdict: some self-stress induces a non-parallelizable load."""
    return find_nonparallelizable_stress(fw, chart, seed, tries) is not None


def enumerate_simple_cycles(g: Graph, max_len: int):
    """All simple cycles with at most max_len vertices, once each.

    Cycles are reported as vertex tuples in canonical form: smallest vertex
    first, oriented toward its smaller neighbor; output sorted by length
    then lexicographically.
    """
    if max_len > len(g.vertices):
        raise InputError("max_len exceeds vertex count")
    cycles = []
    order = sorted(g.vertices)
    for start in order:
        path = [start]
        on_path = {start}

        def extend():
            v = path[-1]
            for w in g.neighbors(v):
                if w == start and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(tuple(path))
                elif w > start and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    extend()
                    on_path.remove(w)
                    path.pop()

        extend()
    return sorted(cycles, key=lambda c: (len(c), c))


def cycle_edge_lines(fw: Framework, cycle):
    k = len(cycle)
    return [fw.edge_line(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def cycle_in_general_position(fw: Framework, cycle) -> bool:
    """The cycle's edge lines are pairwise distinct with no three concurrent,
    i.e. they have exactly k(k-1)/2 distinct pairwise intersection points."""
    return lines_in_general_position(cycle_edge_lines(fw, cycle))


def framework_in_general_position(fw: Framework) -> bool:
    """Every simple cycle on at most n-1 vertices is in general position."""
    fw.graph.require_min_degree(3)
    n = len(fw.graph.vertices)
    for cycle in enumerate_simple_cycles(fw.graph, n - 1):
        if not cycle_in_general_position(fw, cycle):
            return False
    return True


def _fresh_id(base: str, taken) -> str:
    name = base + "'"
    while name in taken:
        name += "'"
    return name


def hf_surgery_framework(fw: Framework, edge, roles) -> Framework:
    """Replace the H-pattern at a degree-3 edge q1q2 by the Phi pattern.

    `roles` maps "q3","q4" to the other neighbors of q1 and "q5","q6" to the
    other neighbors of q2.  The new vertices are placed at
    q1' = q1q3 ^ q2q5 and q2' = q1q4 ^ q2q6, with edges
    q1'q2', q1'q3, q1'q5, q2'q4, q2'q6.
    """
    q1, q2 = edge
    g = fw.graph
    if not g.has_edge(q1, q2):
        raise PreconditionError(f"({q1},{q2}) is not an edge")
    if g.degree(q1) != 3 or g.degree(q2) != 3:
        raise PreconditionError("both endpoints of the surgery edge must have degree 3")
    q3, q4, q5, q6 = (roles[k] for k in ("q3", "q4", "q5", "q6"))
    if {q3, q4} != set(g.neighbors(q1)) - {q2}:
        raise PreconditionError("q3,q4 must be the other neighbors of q1")
    if {q5, q6} != set(g.neighbors(q2)) - {q1}:
        raise PreconditionError("q5,q6 must be the other neighbors of q2")
    if len({q1, q2, q3, q4, q5, q6}) != 6:
        raise PreconditionError("the six pattern vertices must be distinct")
    p = fw.placement
    l13, l25 = join(p[q1], p[q3]), join(p[q2], p[q5])
    l14, l26 = join(p[q1], p[q4]), join(p[q2], p[q6])
    if l13 == l25:
        raise PreconditionError("q1q3 = q2q5")
    if l14 == l26:
        raise PreconditionError("q1q4 = q2q6")
    new1 = meet(l13, l25)
    new2 = meet(l14, l26)
    assert new1 is not TRUE and new2 is not TRUE

    keep = [v for v in g.vertices if v not in (q1, q2)]
    id1 = _fresh_id(q1, set(keep))
    id2 = _fresh_id(q2, set(keep) | {id1})
    vertices = [id1 if v == q1 else id2 if v == q2 else v for v in g.vertices]
    edges = [e for e in g.edges if q1 not in e and q2 not in e]
    edges += [(id1, id2), (id1, q3), (id1, q5), (id2, q4), (id2, q6)]
    placement = {v: p[v] for v in keep}
    placement[id1] = new1
    placement[id2] = new2
    return Framework(Graph(vertices, edges), placement)


def chart_avoiding(points, seed: int = 0) -> AffineChart:
    """Deterministic chart whose infinity line misses every given point."""
    rng = random.Random(seed)
    pts = list(points)
    while True:
        coeffs = tuple(rng.randint(-999, 999) for _ in range(3))
        if not any(coeffs):
            continue
        if all(_dot(coeffs, q.coords) != 0 for q in pts):
            return AffineChart(ProjLine(coeffs))


# ---------------------------------------------------------------------------
# JSON interface: {"vertices":[{"id":"p1","coords":["1","0","1"]},...],
#                  "edges":[["p1","p2"],...]}

def framework_to_json(fw: Framework) -> dict:
    return {
        "vertices": [
            {"id": v, "coords": fw.placement[v].to_strings()}
            for v in sorted(fw.graph.vertices)
        ],
        "edges": [list(e) for e in fw.graph.edges],
    }


def framework_from_json(obj) -> Framework:
    try:
        vertices = [entry["id"] for entry in obj["vertices"]]
        placement = {
            entry["id"]: ProjPoint.from_strings(entry["coords"])
            for entry in obj["vertices"]
        }
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed framework JSON: {exc}") from exc
    return Framework(Graph(vertices, edges), placement)


def load_framework(path) -> Framework:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read framework file: {exc}") from exc
    return framework_from_json(obj)


def graph_from_json(obj) -> Graph:
    """Graph-only JSON: vertices may be bare ids or framework-style objects."""
    try:
        raw = obj["vertices"]
        vertices = [entry["id"] if isinstance(entry, dict) else entry for entry in raw]
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return Graph(vertices, edges)
