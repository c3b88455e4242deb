"""Symbolic geometric conditions: the configuration space, the condition
AST, the graph-to-condition compiler, and evaluation.

The configuration space of a framework fixes all placed points and attaches
deg(v) - 3 free lines through each vertex v.  A condition is a composition
of the four geometric operations (meet, join, generic point on a line,
generic line through a point) capped by one of the three relations
(concurrent lines, collinear points, point-line incidence), evaluated with
absorption of the TRUE token.

Compilation mirrors the numeric pipeline symbolically: a cycle's framing at
each vertex is the associated-framing expression (third-edge label after
rewiring surgeries, each surgery expanded into the seven-step meet/join
construction of the new interior line), and the cycle condition reduces the
framed cycle by symbolic projections down to a three-line relation.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .framework import (Framework, Graph, edge_key, enumerate_simple_cycles,
                        framework_in_general_position)
from .projective import (TRUE, join, meet, pick_generic_line_through,
                         pick_generic_point_on, rel_collinear,
                         rel_concurrent, rel_incident)
from .quantization import fundamental_cycles, interior_edge_order
from .resolution import BinaryTree, default_tree, tree_edge


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class PointConst:
    vertex: str


@dataclass(frozen=True)
class LineVar:
    vertex: str
    index: int


@dataclass(frozen=True)
class Join:
    a: object
    b: object

    def __post_init__(self):
        _require_point(self.a)
        _require_point(self.b)


@dataclass(frozen=True)
class Meet:
    a: object
    b: object

    def __post_init__(self):
        _require_line(self.a)
        _require_line(self.b)


@dataclass(frozen=True)
class GenericPointOn:
    line: object
    avoid: tuple = ()

    def __post_init__(self):
        _require_line(self.line)
        for a in self.avoid:
            _require_point(a)


@dataclass(frozen=True)
class GenericLineThrough:
    point: object
    avoid: tuple = ()

    def __post_init__(self):
        _require_point(self.point)
        for a in self.avoid:
            _require_line(a)


@dataclass(frozen=True)
class Concurrent3:
    a: object
    b: object
    c: object

    def __post_init__(self):
        for x in (self.a, self.b, self.c):
            _require_line(x)


@dataclass(frozen=True)
class Collinear3:
    a: object
    b: object
    c: object

    def __post_init__(self):
        for x in (self.a, self.b, self.c):
            _require_point(x)


@dataclass(frozen=True)
class Incident:
    point: object
    line: object

    def __post_init__(self):
        _require_point(self.point)
        _require_line(self.line)


_POINT_NODES = (PointConst, Meet, GenericPointOn)
_LINE_NODES = (LineVar, Join, GenericLineThrough)
_RELATION_NODES = (Concurrent3, Collinear3, Incident)


def _require_point(e):
    if not isinstance(e, _POINT_NODES):
        raise InputError(f"expected a point-valued expression, got {type(e).__name__}")


def _require_line(e):
    if not isinstance(e, _LINE_NODES):
        raise InputError(f"expected a line-valued expression, got {type(e).__name__}")


def to_sexpr(e) -> str:
    if isinstance(e, PointConst):
        return e.vertex
    if isinstance(e, LineVar):
        return f"(linevar {e.vertex} {e.index})"
    if isinstance(e, Join):
        return f"(join {to_sexpr(e.a)} {to_sexpr(e.b)})"
    if isinstance(e, Meet):
        return f"(meet {to_sexpr(e.a)} {to_sexpr(e.b)})"
    if isinstance(e, GenericPointOn):
        avoid = " ".join(to_sexpr(a) for a in e.avoid)
        return f"(generic-point {to_sexpr(e.line)} (avoid {avoid}))"
    if isinstance(e, GenericLineThrough):
        avoid = " ".join(to_sexpr(a) for a in e.avoid)
        return f"(generic-line {to_sexpr(e.point)} (avoid {avoid}))"
    if isinstance(e, Concurrent3):
        return f"(concurrent {to_sexpr(e.a)} {to_sexpr(e.b)} {to_sexpr(e.c)})"
    if isinstance(e, Collinear3):
        return f"(collinear {to_sexpr(e.a)} {to_sexpr(e.b)} {to_sexpr(e.c)})"
    if isinstance(e, Incident):
        return f"(incident {to_sexpr(e.point)} {to_sexpr(e.line)})"
    raise InputError(f"not an expression: {e!r}")


def to_json_ast(e, counter=None) -> dict:
    """JSON form with prefix-order node ids."""
    if counter is None:
        counter = [0]
    nid = counter[0]
    counter[0] += 1
    if isinstance(e, PointConst):
        return {"id": nid, "op": "point", "vertex": e.vertex}
    if isinstance(e, LineVar):
        return {"id": nid, "op": "linevar", "vertex": e.vertex, "index": e.index}
    if isinstance(e, Join):
        return {"id": nid, "op": "join",
                "args": [to_json_ast(e.a, counter), to_json_ast(e.b, counter)]}
    if isinstance(e, Meet):
        return {"id": nid, "op": "meet",
                "args": [to_json_ast(e.a, counter), to_json_ast(e.b, counter)]}
    if isinstance(e, GenericPointOn):
        return {"id": nid, "op": "generic-point",
                "arg": to_json_ast(e.line, counter),
                "avoid": [to_json_ast(a, counter) for a in e.avoid]}
    if isinstance(e, GenericLineThrough):
        return {"id": nid, "op": "generic-line",
                "arg": to_json_ast(e.point, counter),
                "avoid": [to_json_ast(a, counter) for a in e.avoid]}
    if isinstance(e, Concurrent3):
        return {"id": nid, "op": "concurrent",
                "args": [to_json_ast(x, counter) for x in (e.a, e.b, e.c)]}
    if isinstance(e, Collinear3):
        return {"id": nid, "op": "collinear",
                "args": [to_json_ast(x, counter) for x in (e.a, e.b, e.c)]}
    if isinstance(e, Incident):
        return {"id": nid, "op": "incident",
                "args": [to_json_ast(e.point, counter), to_json_ast(e.line, counter)]}
    raise InputError(f"not an expression: {e!r}")


# --------------------------------------------------------------------------
# Configuration space

@dataclass(frozen=True)
class XiSpace:
    """Free-line slots (vertex, 1..deg-3) on top of the fixed placement."""

    slots: tuple

    @property
    def dimension(self) -> int:
        return len(self.slots)


def xi_space(g: Graph, fw: Framework | None = None) -> XiSpace:
    g.require_min_degree(3)
    slots = []
    for v in g.vertices:
        for idx in range(1, g.degree(v) - 3 + 1):
            slots.append((v, idx))
    return XiSpace(tuple(slots))


# --------------------------------------------------------------------------
# Compiler

def _surgery_expression(p, l12, l13, l14, l25, l26):
    """Seven-step meet/join construction of the relabeled interior line.

    Picks an affine chart (a generic point on the old interior line and a
    generic line through it), transports a generic point of l13 around the
    H-pattern by chart-parallels, and joins the final intersection back to
    the base vertex.
    """
    p_inf = GenericPointOn(l12, avoid=(p,))
    l_inf = GenericLineThrough(p_inf, avoid=(l12,))
    p1 = GenericPointOn(l13, avoid=(p, p_inf, Meet(l13, l_inf)))
    l_hat = Join(p1, Meet(l12, l_inf))
    p2 = Meet(l_hat, l25)
    l_a = Join(p1, Meet(l14, l_inf))
    l_b = Join(p2, Meet(l26, l_inf))
    p3 = Meet(l_a, l_b)
    return Join(p, p3)


def _symbolic_scheme(g: Graph, trees: dict, vertex: str):
    """(tree, labels) with expression labels: edge lines at leaf edges,
    configuration-space variables at interior edges."""
    tree = trees[vertex]
    labels = {}
    order = interior_edge_order(tree)
    for te in tree.edges():
        u, w = te
        if tree.degree(u) == 1 or tree.degree(w) == 1:
            leaf = u if tree.degree(u) == 1 else w
            i, j = tree.leaf_labels[leaf]
            labels[te] = Join(PointConst(i), PointConst(j))
        else:
            labels[te] = LineVar(vertex, order.index(te) + 1)
    return tree, labels


def _symbolic_surgery(tree: BinaryTree, labels: dict, base_expr, edge, pairing):
    v1, v2 = edge
    n3, n5 = pairing
    side1 = [n for n in tree.adjacency[v1] if n != v2]
    side2 = [n for n in tree.adjacency[v2] if n != v1]
    n4 = side1[0] if side1[1] == n3 else side1[1]
    n6 = side2[0] if side2[1] == n5 else side2[1]
    new_label = _surgery_expression(
        base_expr,
        labels[tree_edge(v1, v2)],
        labels[tree_edge(v1, n3)],
        labels[tree_edge(v1, n4)],
        labels[tree_edge(v2, n5)],
        labels[tree_edge(v2, n6)],
    )
    a = tree.fresh_node()
    b = a + 1
    adjacency = {u: list(vs) for u, vs in tree.adjacency.items() if u not in (v1, v2)}
    for node, old, new in ((n3, v1, a), (n5, v2, a), (n4, v1, b), (n6, v2, b)):
        adjacency[node] = [new if x == old else x for x in adjacency[node]]
    adjacency[a] = [n3, n5, b]
    adjacency[b] = [n4, n6, a]
    out_labels = {e: x for e, x in labels.items() if v1 not in e and v2 not in e}
    out_labels[tree_edge(a, n3)] = labels[tree_edge(v1, n3)]
    out_labels[tree_edge(a, n5)] = labels[tree_edge(v2, n5)]
    out_labels[tree_edge(b, n4)] = labels[tree_edge(v1, n4)]
    out_labels[tree_edge(b, n6)] = labels[tree_edge(v2, n6)]
    out_labels[tree_edge(a, b)] = new_label
    return BinaryTree(adjacency, tree.leaf_labels), out_labels


def framing_expression(g: Graph, trees: dict, vertex: str, edge_a, edge_b):
    """Expression for the associated framing of two edges at a vertex.

    Degree-3 vertices shortcut to the join of the third edge's endpoints,
    adjacent leaf pairs (including each degree-4 complementary pair) to the
    shared interior label, and everything else walks the leaf-to-leaf path
    expanding each surgery into the seven-step construction.
    """
    edge_a, edge_b = tuple(edge_a), tuple(edge_b)
    if edge_a == edge_b:
        raise InputError("framing needs two distinct incident edges")
    if g.degree(vertex) == 3:
        others = [edge_key(vertex, u) for u in g.neighbors(vertex)
                  if edge_key(vertex, u) not in (edge_a, edge_b)]
        third = others[0]
        return Join(PointConst(third[0]), PointConst(third[1]))
    tree, labels = _symbolic_scheme(g, trees, vertex)
    base = PointConst(vertex)
    while True:
        na = tree.leaf_node(edge_a)
        nb = tree.leaf_node(edge_b)
        path = tree.path(na, nb)
        if len(path) == 3:
            mid = path[1]
            third = next(n for n in tree.adjacency[mid] if n not in (na, nb))
            return labels[tree_edge(mid, third)]
        tree, labels = _symbolic_surgery(tree, labels, base,
                                         (path[1], path[2]), (path[0], path[3]))


def cycle_condition_expression(cycle_points, framing_exprs, variant: str = "paper"):
    """Relation-rooted condition for a framed cycle given symbolically.

    Applies k-3 symbolic projection operations and caps with a three-line
    relation.  The default variant emits the standard display shapes for
    k = 4 and k = 5 (projections at the middle pairs, the four-cycle one
    rewritten through the three-point relation); `variant="head"` always
    merges the first two vertices, giving an equivalent condition by a
    different operation order.
    """
    pts = list(cycle_points)
    frs = list(framing_exprs)
    k = len(pts)
    if k != len(frs) or k < 3:
        raise InputError("need k >= 3 points with k framings")
    if k == 3:
        return Concurrent3(frs[0], frs[1], frs[2])
    if variant == "paper" and k == 4:
        return Collinear3(
            Meet(frs[0], frs[3]),
            Meet(frs[1], frs[2]),
            Meet(Join(pts[0], pts[1]), Join(pts[2], pts[3])),
        )
    if variant == "paper" and k == 5:
        left = Join(Meet(frs[1], frs[2]),
                    Meet(Join(pts[0], pts[1]), Join(pts[2], pts[3])))
        right = Join(Meet(frs[3], frs[4]),
                     Meet(Join(pts[2], pts[3]), Join(pts[4], pts[0])))
        return Concurrent3(left, frs[0], right)
    while len(pts) > 3:
        merged = Meet(Join(pts[-1], pts[0]), Join(pts[1], pts[2]))
        new_fr = Join(merged, Meet(frs[0], frs[1]))
        pts = [merged] + pts[2:]
        frs = [new_fr] + frs[2:]
    return Concurrent3(frs[0], frs[1], frs[2])


@dataclass(frozen=True)
class Condition:
    cycle: tuple
    expr: object


@dataclass(frozen=True)
class ConditionSystem:
    xi: XiSpace
    conditions: tuple


def default_graph_trees(g: Graph) -> dict:
    return {v: default_tree([edge_key(v, u) for u in g.neighbors(v)])
            for v in g.vertices}


def generate_system(g: Graph, fw: Framework | None = None,
                    trees: dict | None = None, mode: str = "all",
                    variant: str = "paper") -> ConditionSystem:
    """One relation-rooted condition per configured simple cycle.

    The system depends only on the graph and tree choice; when a framework
    is supplied it is required to be in general position (the regime in
    which fulfillment is equivalent to the existence of a non-parallelizable
    tensegrity).
    """
    g.require_min_degree(3)
    if fw is not None and not framework_in_general_position(fw):
        raise PreconditionError("framework is not in general position")
    trees = trees if trees is not None else default_graph_trees(g)
    n = len(g.vertices)
    if mode == "all":
        cycles = enumerate_simple_cycles(g, n - 1)
    elif mode == "generators":
        cycles = fundamental_cycles(g)
    else:
        raise InputError(f"unknown cycle mode {mode!r}")
    conditions = []
    for cycle in cycles:
        k = len(cycle)
        framings = []
        for m in range(k):
            v = cycle[m]
            e_prev = edge_key(cycle[(m - 1) % k], v)
            e_next = edge_key(v, cycle[(m + 1) % k])
            framings.append(framing_expression(g, trees, v, e_prev, e_next))
        pts = [PointConst(v) for v in cycle]
        conditions.append(Condition(tuple(cycle),
                                    cycle_condition_expression(pts, framings,
                                                               variant=variant)))
    return ConditionSystem(xi_space(g), tuple(conditions))


# --------------------------------------------------------------------------
# Evaluation

def _node_seed(e, seed: int) -> int:
    digest = zlib.crc32(to_sexpr(e).encode("utf-8"))
    return (seed * 0x9E3779B1 + digest) & 0x7FFFFFFF


def evaluate(expr, fw: Framework, line_assignment, seed: int):
    """Bottom-up evaluation over a placement and a slot assignment.

    Relation roots return a bool; inner nodes return a point, a line, or the
    absorbing TRUE token.  Generic nodes draw seeded rational witnesses with
    their structural avoid sets; the same (expression, seed) pair always
    evaluates identically.
    """
    if isinstance(expr, PointConst):
        try:
            return fw.placement[expr.vertex]
        except KeyError as exc:
            raise InputError(f"placement misses vertex {expr.vertex!r}") from exc
    if isinstance(expr, LineVar):
        key = (expr.vertex, expr.index)
        if key not in line_assignment:
            raise InputError(f"assignment misses slot {key}")
        line = line_assignment[key]
        if not line.contains(fw.placement[expr.vertex]):
            raise PreconditionError(f"assigned line for {key} misses its point")
        return line
    if isinstance(expr, Join):
        return join(evaluate(expr.a, fw, line_assignment, seed),
                    evaluate(expr.b, fw, line_assignment, seed))
    if isinstance(expr, Meet):
        return meet(evaluate(expr.a, fw, line_assignment, seed),
                    evaluate(expr.b, fw, line_assignment, seed))
    if isinstance(expr, GenericPointOn):
        line = evaluate(expr.line, fw, line_assignment, seed)
        if line is TRUE:
            return TRUE
        avoid = [evaluate(a, fw, line_assignment, seed) for a in expr.avoid]
        avoid = [a for a in avoid if a is not TRUE]
        return pick_generic_point_on(line, avoid, _node_seed(expr, seed))
    if isinstance(expr, GenericLineThrough):
        point = evaluate(expr.point, fw, line_assignment, seed)
        if point is TRUE:
            return TRUE
        avoid = [evaluate(a, fw, line_assignment, seed) for a in expr.avoid]
        avoid = [a for a in avoid if a is not TRUE]
        return pick_generic_line_through(point, avoid, _node_seed(expr, seed))
    if isinstance(expr, Concurrent3):
        return rel_concurrent(evaluate(expr.a, fw, line_assignment, seed),
                              evaluate(expr.b, fw, line_assignment, seed),
                              evaluate(expr.c, fw, line_assignment, seed))
    if isinstance(expr, Collinear3):
        return rel_collinear(evaluate(expr.a, fw, line_assignment, seed),
                             evaluate(expr.b, fw, line_assignment, seed),
                             evaluate(expr.c, fw, line_assignment, seed))
    if isinstance(expr, Incident):
        return rel_incident(evaluate(expr.point, fw, line_assignment, seed),
                            evaluate(expr.line, fw, line_assignment, seed))
    raise InputError(f"not an expression: {expr!r}")


def fulfilled_with_witness(system: ConditionSystem, fw: Framework,
                           witness, seed: int) -> bool:
    """Conjunction of all conditions under one slot assignment."""
    for slot in system.xi.slots:
        if slot not in witness:
            raise InputError(f"witness misses slot {slot}")
    return all(evaluate(cond.expr, fw, witness, seed)
               for cond in system.conditions)


# --------------------------------------------------------------------------
# JSON

def system_to_json(system: ConditionSystem) -> dict:
    return {
        "xi": {"slots": [[v, i] for v, i in system.xi.slots]},
        "conditions": [
            {"cycle": list(cond.cycle),
             "ast": to_json_ast(cond.expr),
             "sexpr": to_sexpr(cond.expr)}
            for cond in system.conditions
        ],
    }
