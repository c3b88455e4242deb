"""Resolution schemes: labeled unrooted full binary trees at a point.

A scheme resolves the force balance at a vertex: each tree edge carries a
line through the base point, and an equilibrium force-load assigns a force
along that line to every edge so that the three forces at each interior tree
node cancel.  The H-to-Phi surgery rewires an interior edge and relabels it
with the line of the two forces that come together at the new node; walking
surgeries along a leaf-to-leaf path yields the associated framing for a pair
of host edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GenericityError, GeometryError, InputError
from .projective import Force, ProjLine, ProjPoint, line_of_force, \
    nonvanishing_proper_subsets, partial_sum_lines_distinct


def tree_edge(u: int, v: int):
    return (u, v) if u < v else (v, u)


class BinaryTree:
    """Unrooted full binary tree with labeled leaves.

    `adjacency` maps node ids to neighbor tuples (degrees 1 or 3);
    `leaf_labels` maps each degree-1 node to its label.  Labels are
    arbitrary hashables (host-graph edge keys in practice).
    """

    __slots__ = ("adjacency", "leaf_labels")

    def __init__(self, adjacency, leaf_labels):
        adjacency = {u: tuple(sorted(vs)) for u, vs in adjacency.items()}
        for u, vs in adjacency.items():
            if len(vs) not in (1, 3):
                raise InputError(f"tree node {u} has degree {len(vs)}")
            for v in vs:
                if u not in adjacency.get(v, ()):
                    raise InputError("asymmetric adjacency")
        leaves = {u for u, vs in adjacency.items() if len(vs) == 1}
        if set(leaf_labels) != leaves:
            raise InputError("leaf labels must cover exactly the degree-1 nodes")
        if len(set(leaf_labels.values())) != len(leaf_labels):
            raise InputError("leaf labels must be distinct")
        if len(leaves) < 3:
            raise InputError("a full binary tree has at least 3 leaves")
        self.adjacency = adjacency
        self.leaf_labels = dict(leaf_labels)
        if not self._connected():
            raise InputError("tree is not connected")

    def _connected(self):
        nodes = list(self.adjacency)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(nodes)

    def edges(self):
        out = set()
        for u, vs in self.adjacency.items():
            for v in vs:
                out.add(tree_edge(u, v))
        return sorted(out)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def leaf_node(self, label) -> int:
        for node, lab in self.leaf_labels.items():
            if lab == label:
                return node
        raise InputError(f"no leaf labeled {label!r}")

    def is_interior(self, edge) -> bool:
        u, v = edge
        return self.degree(u) == 3 and self.degree(v) == 3

    def interior_edges(self):
        return [e for e in self.edges() if self.is_interior(e)]

    def side_labels(self, edge, node: int):
        """Leaf labels of the component of tree minus `edge` containing `node`."""
        u, v = edge
        if node not in (u, v):
            raise InputError("node must be an endpoint of the edge")
        other = v if node == u else u
        seen = {other, node}
        stack = [node]
        labels = []
        while stack:
            w = stack.pop()
            if self.degree(w) == 1:
                labels.append(self.leaf_labels[w])
            for x in self.adjacency[w]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return frozenset(labels)

    def topology_key(self):
        """Complete invariant of the leaf-labeled topology: the set of leaf
        bipartitions induced by interior edges."""
        splits = set()
        for e in self.interior_edges():
            a = self.side_labels(e, e[0])
            b = self.side_labels(e, e[1])
            splits.add(frozenset((a, b)))
        return frozenset(splits)

    def path(self, a: int, b: int):
        prev = {a: None}
        stack = [a]
        while stack:
            w = stack.pop()
            if w == b:
                break
            for x in self.adjacency[w]:
                if x not in prev:
                    prev[x] = w
                    stack.append(x)
        out = [b]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]

    def fresh_node(self) -> int:
        return max(self.adjacency) + 1


def default_tree(leaf_labels) -> BinaryTree:
    """Left-comb caterpillar over the labels in the given order."""
    labels = list(leaf_labels)
    s = len(labels)
    if s < 3:
        raise InputError("need at least 3 leaf labels")
    adjacency = {i: [] for i in range(s)}
    if s == 3:
        adjacency[3] = [0, 1, 2]
        for i in range(3):
            adjacency[i] = [3]
    else:
        spine = list(range(s, 2 * s - 2))
        for j, node in enumerate(spine):
            adjacency[node] = []
        adjacency[spine[0]] = [0, 1, spine[1]]
        adjacency[0] = [spine[0]]
        adjacency[1] = [spine[0]]
        for j in range(1, s - 3):
            adjacency[spine[j]] = [spine[j - 1], j + 1, spine[j + 1]]
            adjacency[j + 1] = [spine[j]]
        adjacency[spine[-1]] = [spine[-2], s - 2, s - 1]
        adjacency[s - 2] = [spine[-1]]
        adjacency[s - 1] = [spine[-1]]
    return BinaryTree(adjacency, {i: labels[i] for i in range(s)})


@dataclass
class ResolutionScheme:
    """Binary tree whose edges carry lines through a common base point."""

    tree: BinaryTree
    base: ProjPoint
    labels: dict

    def __post_init__(self):
        edges = set(self.tree.edges())
        if set(self.labels) != edges:
            raise InputError("labels must cover exactly the tree edges")
        for e, line in self.labels.items():
            if not line.contains(self.base):
                raise GeometryError(f"label of {e} misses the base point")

    def label(self, u: int, v: int) -> ProjLine:
        return self.labels[tree_edge(u, v)]


def is_weakly_generic(s: ResolutionScheme) -> bool:
    """No two edges sharing a tree node carry the same line."""
    for u, vs in s.tree.adjacency.items():
        lines = [s.label(u, v) for v in vs]
        if len(set(lines)) != len(lines):
            return False
    return True


def _decompose(force: Force, l1: ProjLine, l2: ProjLine):
    """Split -force into components along two distinct concurrent lines:
    returns (f1, f2) with force + f1 + f2 = 0 and line(f_i) <= l_i."""
    a, b = l1.coeffs, l2.coeffs
    v = [-x for x in force.dual]
    for r in range(3):
        for t in range(r + 1, 3):
            det = Fraction(a[r] * b[t] - a[t] * b[r])
            if det:
                x = (v[r] * Fraction(b[t]) - v[t] * Fraction(b[r])) / det
                y = (Fraction(a[r]) * v[t] - Fraction(a[t]) * v[r]) / det
                u = 3 - r - t
                if x * a[u] + y * b[u] != v[u]:
                    raise GeometryError("force not in the span of the two lines")
                return (Force(tuple(x * c for c in a)),
                        Force(tuple(y * c for c in b)))
    raise GeometryError("cannot decompose along equal lines")


def scheme_forceload(s: ResolutionScheme, seed_edge, seed_force: Force):
    """Unique equilibrium force-load extending a nonzero seed stress.

    Returns a dict mapping ordered node pairs (u, v) to the force applied at
    u along edge uv; opposite orientations are negatives.  Propagates from
    the seed edge, splitting the incoming force at every degree-3 node along
    the other two labels (a 2x2 exact solve), which is unique exactly when
    the scheme is weakly generic.
    """
    if not is_weakly_generic(s):
        raise GenericityError("scheme is not weakly generic")
    key = tree_edge(*seed_edge)
    if seed_force.is_zero() or line_of_force(seed_force) != s.labels[key]:
        raise GeometryError("seed force must be nonzero along the seed edge label")
    u, v = seed_edge
    forces = {(u, v): seed_force, (v, u): -seed_force}
    stack = [u, v]
    resolved = set()
    while stack:
        w = stack.pop()
        if w in resolved or s.tree.degree(w) != 3:
            continue
        known = [n for n in s.tree.adjacency[w] if (w, n) in forces]
        unknown = [n for n in s.tree.adjacency[w] if (w, n) not in forces]
        if not known:
            continue
        if unknown:
            incoming = forces[(w, known[0])]
            n1, n2 = unknown
            f1, f2 = _decompose(incoming, s.label(w, n1), s.label(w, n2))
            forces[(w, n1)], forces[(n1, w)] = f1, -f1
            forces[(w, n2)], forces[(n2, w)] = f2, -f2
            stack.extend([n1, n2])
        resolved.add(w)
    if len(forces) != 2 * len(s.tree.edges()):
        raise GeometryError("propagation did not reach every edge")
    return forces


def leaf_forces(s: ResolutionScheme, forces) -> dict:
    """Force at each leaf edge, applied at its interior endpoint, by label."""
    out = {}
    for node, label in s.tree.leaf_labels.items():
        interior = s.tree.adjacency[node][0]
        out[label] = forces[(interior, node)]
    return out


def _canonical_forceload(s: ResolutionScheme):
    seed = s.tree.edges()[0]
    return scheme_forceload(s, seed, Force(s.labels[seed].coeffs))


def is_strongly_generic(s: ResolutionScheme) -> bool:
    """Only trivial 0/1-combinations of the leaf forces vanish, and the
    2^(s-1) - 1 partial-sum force lines are pairwise distinct."""
    if not is_weakly_generic(s):
        raise GenericityError("scheme is not weakly generic")
    lf = leaf_forces(s, _canonical_forceload(s))
    ordered = [lf[lab] for lab in sorted(lf)]
    return (nonvanishing_proper_subsets(ordered)
            and partial_sum_lines_distinct(ordered))


def scheme_hf_surgery(s: ResolutionScheme, interior_edge, pairing=None) -> ResolutionScheme:
    """Rewire the H at an interior edge into the Phi pairing.

    With v1v2 the interior edge, v3,v4 the other neighbors of v1 and v5,v6
    of v2, the new tree joins v3 with v5 at one fresh node and v4 with v6 at
    the other; the fresh interior edge is labeled by the line of force of
    the two forces meeting at the new node.  `pairing` = (v3, v5) selects
    which neighbors come together (defaults to the smallest of each side).
    """
    if not is_strongly_generic(s):
        raise GenericityError("scheme is not strongly generic")
    v1, v2 = interior_edge
    if not s.tree.is_interior(tree_edge(v1, v2)):
        raise InputError(f"({v1},{v2}) is not an interior edge")
    side1 = [n for n in s.tree.adjacency[v1] if n != v2]
    side2 = [n for n in s.tree.adjacency[v2] if n != v1]
    if pairing is None:
        n3, n5 = min(side1), min(side2)
    else:
        n3, n5 = pairing
        if n3 not in side1 or n5 not in side2:
            raise InputError("pairing must name one neighbor of each endpoint")
    n4 = side1[0] if side1[1] == n3 else side1[1]
    n6 = side2[0] if side2[1] == n5 else side2[1]

    forces = _canonical_forceload(s)
    combined = forces[(v1, n3)] + forces[(v2, n5)]
    if combined.is_zero():
        raise GeometryError("surgery undefined: the paired forces cancel")
    new_label = line_of_force(combined)

    a = s.tree.fresh_node()
    b = a + 1
    adjacency = {u: [x for x in vs] for u, vs in s.tree.adjacency.items()
                 if u not in (v1, v2)}
    for node, old, new in ((n3, v1, a), (n5, v2, a), (n4, v1, b), (n6, v2, b)):
        adjacency[node] = [new if x == old else x for x in adjacency[node]]
    adjacency[a] = [n3, n5, b]
    adjacency[b] = [n4, n6, a]
    labels = {e: line for e, line in s.labels.items() if v1 not in e and v2 not in e}
    labels[tree_edge(a, n3)] = s.label(v1, n3)
    labels[tree_edge(a, n5)] = s.label(v2, n5)
    labels[tree_edge(b, n4)] = s.label(v1, n4)
    labels[tree_edge(b, n6)] = s.label(v2, n6)
    labels[tree_edge(a, b)] = new_label
    return ResolutionScheme(BinaryTree(adjacency, s.tree.leaf_labels), s.base, labels)


def associated_framing(s: ResolutionScheme, leaf_a, leaf_b,
                       route: str = "forward") -> ProjLine:
    """Line at the third edge once the two leaves share a tree node, after
    the s-3 surgeries along the leaf-to-leaf path.

    `route` picks the processing end ("forward" from leaf_a, "backward" from
    leaf_b); the result is route-independent.
    """
    if leaf_a == leaf_b:
        raise InputError("framing needs two distinct leaf labels")
    current = s
    while True:
        na = current.tree.leaf_node(leaf_a)
        nb = current.tree.leaf_node(leaf_b)
        path = current.tree.path(na, nb)
        if len(path) == 3:
            mid = path[1]
            third = next(n for n in current.tree.adjacency[mid] if n not in (na, nb))
            return current.label(mid, third)
        if route == "forward":
            current = scheme_hf_surgery(current, (path[1], path[2]),
                                        pairing=(path[0], path[3]))
        else:
            current = scheme_hf_surgery(current, (path[-3], path[-2]),
                                        pairing=(path[-4], path[-1]))


def topology_sort_key(key):
    """Deterministic total order on topology keys (nested frozensets)."""
    return sorted(sorted(tuple(sorted(map(str, side))) for side in split)
                  for split in key)


def enumerate_equivalent_schemes(s: ResolutionScheme):
    """One scheme per leaf-labeled tree topology, reached by surgeries.

    Breadth-first closure over all interior edges and both pairings;
    deterministic order (sorted by topology key).
    """
    if not is_strongly_generic(s):
        raise GenericityError("scheme is not strongly generic")
    seen = {s.tree.topology_key(): s}
    queue = [s]
    while queue:
        cur = queue.pop(0)
        for e in cur.tree.interior_edges():
            v1, v2 = e
            side1 = [n for n in cur.tree.adjacency[v1] if n != v2]
            side2 = [n for n in cur.tree.adjacency[v2] if n != v1]
            for n3 in side1:
                for n5 in side2:
                    nxt = scheme_hf_surgery(cur, e, pairing=(n3, n5))
                    key = nxt.tree.topology_key()
                    if key not in seen:
                        seen[key] = nxt
                        queue.append(nxt)
    return [seen[k] for k in sorted(seen, key=topology_sort_key)]
