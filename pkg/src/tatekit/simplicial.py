"""Finite combinatorial carriers: posets, nerves, subdivision, Ex, trees.

Everything here is small and fully enumerable.  Simplicial sets are stored
level by level with explicit face/degeneracy tables and are audited against
the simplicial identities up to their dimension cap.  Ex is implemented on
nerves of posets only, through its closed description: an n-simplex is a
family (x_I) over the non-empty subsets I of [n], weakly monotone in I.
Weak monotonicity is what makes the degenerate simplices exist.
"""

from __future__ import annotations

from itertools import combinations

from .errors import FrameMismatch
from .linalg import Subspace, quotient_dim, subspace_contains

DEFAULT_DIM_CAP = 4


def subset_face(I, i):
    """Image of a subset of [n-1] under the coface d^i: [n-1] -> [n]."""
    return frozenset(x if x < i else x + 1 for x in I)


def subset_degeneracy(I, i):
    """Image of a subset of [n+1] under the codegeneracy s^i: [n+1] -> [n]."""
    return frozenset(x if x <= i else x - 1 for x in I)


def nonempty_subsets(n):
    """Non-empty subsets of {0,...,n}, by size then lexicographically."""
    elems = range(n + 1)
    out = []
    for r in range(1, n + 2):
        out.extend(frozenset(c) for c in combinations(elems, r))
    return out


class FinPoset:
    """Finite poset given by elements and a relation table, validated."""

    def __init__(self, elements, leq_pairs):
        """``leq_pairs`` is an iterable of (x, y) with x <= y; reflexivity is
        added automatically, transitivity and antisymmetry are checked."""
        self.elements = list(elements)
        idx = {x: i for i, x in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("duplicate poset elements")
        n = len(self.elements)
        table = [[False] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = True
        for x, y in leq_pairs:
            table[idx[x]][idx[y]] = True
        # transitive closure (Floyd-Warshall on a tiny table)
        for k in range(n):
            for i in range(n):
                if table[i][k]:
                    row_k = table[k]
                    row_i = table[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            for j in range(n):
                if i != j and table[i][j] and table[j][i]:
                    raise ValueError(
                        "antisymmetry fails for %r, %r" % (self.elements[i], self.elements[j])
                    )
        self._idx = idx
        self._table = table

    @classmethod
    def from_leq(cls, elements, leq):
        elements = list(elements)
        return cls(elements, [(x, y) for x in elements for y in elements if leq(x, y)])

    @classmethod
    def chain(cls, n):
        """The ordinal [n] = {0 < ... < n}."""
        return cls(range(n + 1), [(i, i + 1) for i in range(n)])

    def leq(self, x, y) -> bool:
        return self._table[self._idx[x]][self._idx[y]]

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._idx

    def maximal_element(self):
        """The final element, or None if there is none."""
        for y in self.elements:
            if all(self.leq(x, y) for x in self.elements):
                return y
        return None

    def is_filtered(self) -> bool:
        return self.maximal_element() is not None

    def minimal_elements(self):
        return [
            x
            for x in self.elements
            if not any(self.lt(y, x) for y in self.elements)
        ]

    def __repr__(self):
        return "FinPoset(%r)" % (self.elements,)


class FinSimplicialSet:
    """Levelwise simplex lists with face/degeneracy index tables."""

    def __init__(self, simplices, faces, degens):
        """``simplices[n]`` lists the n-simplices; ``faces[n][i]`` maps the
        index of an n-simplex to the index of its i-th face in level n-1,
        and ``degens[n][i]`` likewise into level n+1."""
        self.simplices = simplices
        self.faces = faces
        self.degens = degens
        self.dim_cap = len(simplices) - 1

    def face(self, n, i, idx):
        return self.faces[n][i][idx]

    def degeneracy(self, n, i, idx):
        return self.degens[n][i][idx]

    def is_degenerate(self, n, idx) -> bool:
        if n == 0:
            return False
        for i in range(n):
            if self.degens[n - 1][i][self.face(n, i, idx)] == idx:
                return True
        return False

    def nondegenerate(self, n):
        return [i for i in range(len(self.simplices[n])) if not self.is_degenerate(n, i)]

    def check_identities(self):
        """All simplicial identities up to the cap; returns failures."""
        bad = []
        D = self.dim_cap
        for n in range(D + 1):
            count = len(self.simplices[n])
            for idx in range(count):
                # d_i d_j = d_{j-1} d_i for i < j
                if n >= 2:
                    for j in range(n + 1):
                        for i in range(j):
                            lhs = self.face(n - 1, i, self.face(n, j, idx))
                            rhs = self.face(n - 1, j - 1, self.face(n, i, idx))
                            if lhs != rhs:
                                bad.append(("dd", n, idx, i, j))
                if n + 1 <= D:
                    # s_i s_j = s_{j+1} s_i for i <= j
                    if n + 2 <= D:
                        for j in range(n + 1):
                            for i in range(j + 1):
                                lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, idx))
                                rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, idx))
                                if lhs != rhs:
                                    bad.append(("ss", n, idx, i, j))
                    # d_i s_j relations
                    for j in range(n + 1):
                        sj = self.degeneracy(n, j, idx)
                        for i in range(n + 2):
                            di = self.face(n + 1, i, sj)
                            if i < j:
                                want = self.degeneracy(n - 1, j - 1, self.face(n, i, idx))
                            elif i in (j, j + 1):
                                want = idx
                            else:
                                want = self.degeneracy(n - 1, j, self.face(n, i - 1, idx))
                            if di != want:
                                bad.append(("ds", n, idx, i, j))
        return bad


def nerve(poset: FinPoset, dim_cap: int = DEFAULT_DIM_CAP) -> FinSimplicialSet:
    """Nerve of a poset: n-simplices are weakly monotone (n+1)-chains."""
    levels = []
    for n in range(dim_cap + 1):
        if n == 0:
            levels.append([(x,) for x in poset.elements])
            continue
        prev = levels[-1]
        cur = []
        for chain in prev:
            last = chain[-1]
            for y in poset.elements:
                if poset.leq(last, y):
                    cur.append(chain + (y,))
        levels.append(cur)
    index = [{c: i for i, c in enumerate(level)} for level in levels]
    faces = [None]
    degens = []
    for n in range(1, dim_cap + 1):
        faces.append(
            [
                [index[n - 1][c[:i] + c[i + 1 :]] for c in levels[n]]
                for i in range(n + 1)
            ]
        )
    for n in range(dim_cap):
        degens.append(
            [
                [index[n + 1][c[: i + 1] + c[i:]] for c in levels[n]]
                for i in range(n + 1)
            ]
        )
    degens.append([])
    return FinSimplicialSet(levels, faces, degens)


def sd_ordinal(n: int) -> FinPoset:
    """Subdivision of [n]: non-empty subsets ordered by inclusion."""
    subsets = nonempty_subsets(n)
    return FinPoset(subsets, [(I, J) for I in subsets for J in subsets if I < J])


def ex_poset(poset: FinPoset, n: int):
    """Ex of the nerve of a poset in level n: weakly monotone families (x_I).

    Families are returned as dicts over the non-empty subsets of [n],
    enumerated in a deterministic order.
    """
    subsets = nonempty_subsets(n)
    preds = {
        J: [I for I in subsets if I < J and len(I) == len(J) - 1] for J in subsets
    }
    families = [{}]
    for J in subsets:
        nxt = []
        for fam in families:
            for x in poset.elements:
                if all(poset.leq(fam[I], x) for I in preds[J]):
                    g = dict(fam)
                    g[J] = x
                    nxt.append(g)
        families = nxt
    return families


def ex_face(family: dict, i: int, n: int) -> dict:
    """The i-th face of an Ex_n family: J |-> x_{d^i(J)} over J subset [n-1]."""
    return {J: family[subset_face(J, i)] for J in nonempty_subsets(n - 1)}


def ex_degeneracy(family: dict, i: int, n: int) -> dict:
    """The i-th degeneracy: J |-> x_{s^i(J)} over J subset [n+1]."""
    return {J: family[subset_degeneracy(J, i)] for J in nonempty_subsets(n + 1)}


def sd_maps_into_poset(poset: FinPoset, n: int):
    """Brute-force simplicial-set maps sd(Delta^n) -> nerve(poset).

    A map out of the nerve of sd([n]) is a vertex assignment that sends
    every 1-simplex of the subdivision to a 1-simplex of the target nerve;
    higher simplices impose nothing new over a poset.  Used as the
    independent oracle for ``ex_poset``.
    """
    sd = sd_ordinal(n)
    subsets = sd.elements
    out = [{}]
    for J in subsets:
        nxt = []
        below = [I for I in subsets if sd.lt(I, J)]
        for fam in out:
            for x in poset.elements:
                if all(poset.leq(fam[I], x) for I in below if I in fam):
                    g = dict(fam)
                    g[J] = x
                    nxt.append(g)
        out = nxt
    return out


class OrientedGraph:
    def __init__(self, vertices, edges):
        self.vertices = list(vertices)
        self.edges = [(a, b) for a, b in edges]

    def __repr__(self):
        return "OrientedGraph(%d vertices, %d edges)" % (len(self.vertices), len(self.edges))


def order_graph(poset: FinPoset) -> OrientedGraph:
    """Gamma(I): one directed edge for every strict relation a < b."""
    edges = [
        (a, b)
        for a in poset.elements
        for b in poset.elements
        if poset.lt(a, b)
    ]
    return OrientedGraph(poset.elements, edges)


def _count_oriented_paths(tree_edges, x, z):
    if x == z:
        return 1
    total = 0
    for (a, b) in tree_edges:
        if a == x:
            total += _count_oriented_paths(tree_edges, b, z)
    return total


def is_admissible_tree(graph: OrientedGraph, tree_edges) -> bool:
    """Whether ``tree_edges`` is an admissible maximal tree of the graph.

    Maximal tree: spans every vertex, connected and acyclic as an
    undirected graph.  Admissible: every vertex pair has a common target z
    reachable from both by a unique oriented tree path.
    """
    tree_edges = list(tree_edges)
    edge_set = set(graph.edges)
    if any(e not in edge_set for e in tree_edges):
        return False
    verts = graph.vertices
    if len(verts) == 0:
        return False
    if len(verts) == 1:
        return not tree_edges
    if len(tree_edges) != len(verts) - 1:
        return False
    # undirected connectivity
    adj = {v: set() for v in verts}
    for a, b in tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(verts):
        return False
    for x in verts:
        for y in verts:
            ok = False
            for z in verts:
                px = _count_oriented_paths(tree_edges, x, z)
                py = _count_oriented_paths(tree_edges, y, z)
                if px == 1 and py == 1:
                    ok = True
                    break
            if not ok:
                return False
    return True


class BasedPoset:
    """A finite filtered poset with a tuple of minimal base points."""

    def __init__(self, poset: FinPoset, base_points):
        if not poset.is_filtered():
            raise ValueError("based poset must have a final element")
        minimal = set(poset.minimal_elements())
        for x in base_points:
            if x not in minimal:
                raise ValueError("base point %r is not minimal" % (x,))
        self.poset = poset
        self.base_points = list(base_points)

    def __repr__(self):
        return "BasedPoset(%d elements, %d base points)" % (
            len(self.poset),
            len(self.base_points),
        )


class FramedPoset(BasedPoset):
    """A based poset together with an admissible maximal tree of Gamma(I)."""

    def __init__(self, poset: FinPoset, base_points, tree_edges):
        super().__init__(poset, base_points)
        self.tree_edges = list(tree_edges)
        if not is_admissible_tree(order_graph(poset), self.tree_edges):
            raise ValueError("tree is not an admissible maximal tree")


def star_frame(based: BasedPoset) -> FramedPoset:
    """The star-to-maximum tree: every non-final element points at max."""
    m = based.poset.maximal_element()
    edges = [(x, m) for x in based.poset.elements if x != m]
    return FramedPoset(based.poset, based.base_points, edges)


def b_interval(k: int) -> BasedPoset:
    """B[k]: non-empty intervals of the ordinal [k], singleton base points."""
    intervals = [
        frozenset(range(i, j + 1)) for i in range(k + 1) for j in range(i, k + 1)
    ]
    poset = FinPoset(intervals, [(I, J) for I in intervals for J in intervals if I < J])
    return BasedPoset(poset, [frozenset([i]) for i in range(k + 1)])


class AdmissibleDiagram:
    """A poset-indexed diagram of nested subspaces of k^d."""

    def __init__(self, poset: FinPoset, assignment: dict):
        self.poset = poset
        self.assignment = dict(assignment)
        dims = {s.ambient_dim for s in self.assignment.values()}
        if len(dims) != 1:
            raise ValueError("all subspaces must share one ambient space")
        for x in poset.elements:
            if x not in self.assignment:
                raise ValueError("missing value at %r" % (x,))
        for x in poset.elements:
            for y in poset.elements:
                if poset.lt(x, y) and not subspace_contains(
                    self.assignment[y], self.assignment[x]
                ):
                    raise ValueError("diagram not monotone along %r <= %r" % (x, y))

    def value(self, x) -> Subspace:
        return self.assignment[x]

    def dim(self, x) -> int:
        return self.assignment[x].dim


def k0_decompose(diagram: AdmissibleDiagram, frame: FramedPoset):
    """Split a diagram into (dim at the zeroth base point, edge quotient dims).

    This is the dimension shadow of the tree splitting of diagram categories:
    the diagram maps to its value at x_0 together with one quotient per tree
    edge.
    """
    if frame.poset is not diagram.poset and frame.poset.elements != diagram.poset.elements:
        raise FrameMismatch("frame poset differs from diagram poset")
    x0 = frame.base_points[0]
    d0 = diagram.dim(x0)
    edge_dims = {}
    for (u, v) in frame.tree_edges:
        edge_dims[(u, v)] = quotient_dim(diagram.value(u), diagram.value(v))
    return d0, edge_dims


def k0_reconstruct(frame: FramedPoset, d0: int, edge_dims: dict):
    """Recover every dim F(x) from (d0, edge dims) through unique tree paths.

    For each x, pick a common target z of x and x_0; then
    dim F(x) = d0 + sum(path x0 -> z) - sum(path x -> z).
    """
    x0 = frame.base_points[0]
    verts = frame.poset.elements
    out = {}

    def path_sum(x, z):
        if x == z:
            return 0
        for (a, b) in frame.tree_edges:
            if a == x:
                rest = path_sum(b, z)
                if rest is not None:
                    return edge_dims[(a, b)] + rest
        return None

    for x in verts:
        val = None
        for z in verts:
            up_x = path_sum(x, z)
            up_0 = path_sum(x0, z)
            if up_x is not None and up_0 is not None:
                val = d0 + up_0 - up_x
                break
        if val is None:
            raise FrameMismatch("no common tree target for %r" % (x,))
        out[x] = val
    return out


def preindex_k0(diagram: AdmissibleDiagram, base_points):
    """Dimension differences between consecutive base point values."""
    dims = [diagram.dim(x) for x in base_points]
    return [dims[i + 1] - dims[i] for i in range(len(dims) - 1)]


def to_dot(graph: OrientedGraph, tree_edges=None, name="gamma") -> str:
    """Graphviz export of Gamma(I); tree edges are drawn bold."""
    tree = set(tree_edges or [])
    lines = ["digraph %s {" % name]
    for v in graph.vertices:
        lines.append('  "%s";' % (_label(v),))
    for (a, b) in graph.edges:
        style = ' [style=bold]' if (a, b) in tree else ""
        lines.append('  "%s" -> "%s"%s;' % (_label(a), _label(b), style))
    lines.append("}")
    return "\n".join(lines)


def _label(v):
    if isinstance(v, frozenset):
        return "{%s}" % ",".join(str(x) for x in sorted(v))
    return str(v)
