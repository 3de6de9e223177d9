"""Graph problems solved through maximum witnesses of Boolean products.

Conventions used throughout:
  - ancestors are reflexive: every vertex is an ancestor of itself;
  - a lowest common ancestor (LCA) of u and v is a common ancestor none of
    whose proper descendants is also a common ancestor; a pair may have
    several, and the witness-based solver returns the one that comes last
    in the topological order used for the reduction;
  - weight ties are broken by vertex id, so every solver is deterministic.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .boolmat import BoolMatrix, WitnessMatrix, bool_product, max_witness_oracle, transpose
from .rng import np_stream
from .witness import exact_max_witness_strips

__all__ = [
    "CycleError",
    "Dag",
    "random_dag",
    "demo_dag",
    "ancestor_matrix",
    "lca_matrix",
    "all_pairs_lca",
    "brute_force_lca_set",
    "VertexWeightedGraph",
    "random_weighted_graph",
    "heaviest_triangle_per_edge",
    "max_weight_two_edge_paths",
    "brute_force_heaviest_triangles",
    "brute_force_two_edge_paths",
]

LCA_SOLVERS = ("oracle", "strips", "qsim-algorithm4")


class CycleError(ValueError):
    """Raised when an edge list is not acyclic; carries one cycle as proof."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"graph contains a cycle: {' -> '.join(map(str, cycle))}")
        self.cycle = cycle


@dataclass(eq=False)
class Dag:
    """Directed acyclic graph on vertices 0..n-1; edge (u, v) points u -> v."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        edges = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise CycleError([u, u])
            if (u, v) not in seen:
                seen.add((u, v))
                edges.append((u, v))
        self.edges = tuple(edges)
        self.children: list[list[int]] = [[] for _ in range(self.n)]
        self.parents: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            self.children[u].append(v)
            self.parents[v].append(u)
        self.topo_order = self._toposort()
        self.rank = [0] * self.n
        for pos, v in enumerate(self.topo_order):
            self.rank[v] = pos

    def _toposort(self) -> list[int]:
        # Kahn with a heap for a deterministic order; a stall proves a cycle
        indeg = [len(self.parents[v]) for v in range(self.n)]
        ready = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for c in self.children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(ready, c)
        if len(order) < self.n:
            raise CycleError(self._find_cycle(indeg))
        return order

    def _find_cycle(self, indeg: list[int]) -> list[int]:
        # walk parent pointers inside the unresolved subgraph until repetition
        stuck = {v for v in range(self.n) if indeg[v] > 0}
        v = min(stuck)
        seen: dict[int, int] = {}
        path = []
        while v not in seen:
            seen[v] = len(path)
            path.append(v)
            v = next(p for p in self.parents[v] if p in stuck)
        cycle = path[seen[v] :] + [v]
        cycle.reverse()  # parent pointers were followed backwards
        return cycle

    def adjacency(self) -> BoolMatrix:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
        return BoolMatrix(self.n, self.n, tuple(rows))

    def ancestor_bitsets(self, method: str = "traversal") -> list[int]:
        """Per-vertex reflexive ancestor sets as bit masks over vertex ids.

        "traversal" accumulates along the topological order; "squaring"
        closes the adjacency matrix by repeated Boolean squaring. Both
        produce identical sets.
        """
        if method == "traversal":
            anc = [1 << v for v in range(self.n)]
            for v in self.topo_order:
                for p in self.parents[v]:
                    anc[v] |= anc[p]
            return anc
        if method == "squaring":
            m = self.adjacency()
            rows = [r | (1 << i) for i, r in enumerate(m.row_bits)]
            m = BoolMatrix(self.n, self.n, tuple(rows))
            steps = max(1, (self.n - 1).bit_length())
            for _ in range(steps):
                m = bool_product(m, m)
            mt = transpose(m)  # reach[u, v]: ancestors of v sit in column v
            return list(mt.row_bits)
        raise ValueError(f"unknown closure method {method!r}")

    def descendant_bitsets(self) -> list[int]:
        desc = [1 << v for v in range(self.n)]
        for v in reversed(self.topo_order):
            for c in self.children[v]:
                desc[v] |= desc[c]
        return desc


def random_dag(n: int, density: float, seed: int) -> Dag:
    """Random dag: a hidden topological order with independent forward edges."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np_stream(seed, 21)
    perm = rng.permutation(n)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                edges.append((int(perm[i]), int(perm[j])))
    return Dag(n, tuple(edges))


def demo_dag() -> Dag:
    """Six-vertex dag whose pair (1, 2) has two lowest common ancestors.

    Vertices 4 and 5 are both LCAs of (1, 2); vertex 5 is the only LCA of
    (0, 2); for (0, 1) the common ancestor 5 is excluded by its descendant 3.
    """
    return Dag(6, ((3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 3)))


def ancestor_matrix(dag: Dag, method: str = "traversal") -> BoolMatrix:
    """Reflexive ancestor relation: entry (u, v) is 1 iff v is an ancestor of u."""
    anc = dag.ancestor_bitsets(method)
    return BoolMatrix(dag.n, dag.n, tuple(anc))


def lca_matrix(dag: Dag, method: str = "traversal") -> tuple[BoolMatrix, tuple[int, ...]]:
    """Topologically renumbered ancestor matrix for the LCA reduction.

    Returns (M, order): M[x, y] = 1 iff order[y] is an ancestor of order[x].
    The maximum witness of M x M^T at (x, y) is then the renumbered deepest
    common ancestor of order[x] and order[y].
    """
    anc = dag.ancestor_bitsets(method)
    order = tuple(dag.topo_order)
    rank = dag.rank
    rows = []
    for x in range(dag.n):
        mask = anc[order[x]]
        bits = 0
        while mask:
            low = mask & -mask
            bits |= 1 << rank[low.bit_length() - 1]
            mask ^= low
        rows.append(bits)
    return BoolMatrix(dag.n, dag.n, tuple(rows)), order


def all_pairs_lca(
    dag: Dag,
    solver: str = "oracle",
    ell: int | None = None,
    beta: float = 2.0,
    seed: int = 0,
) -> np.ndarray:
    """LCA for every vertex pair; -1 where no common ancestor exists.

    The returned vertex is always the common ancestor that comes last in the
    dag's topological order, which is one of the pair's LCAs. Solvers:
    "oracle" (bit-parallel exact), "strips" (strip-based exact),
    "qsim-algorithm4" (simulated quantum search; correct with high
    probability).
    """
    m, order = lca_matrix(dag)
    mt = transpose(m)
    if solver == "oracle":
        wm = max_witness_oracle(m, mt)
    elif solver == "strips":
        wm = exact_max_witness_strips(m, mt, ell)
    elif solver == "qsim-algorithm4":
        from .qsim import algorithm4

        wm, _ = algorithm4(m, mt, ell, beta, seed)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    w = wm.array
    order_arr = np.asarray(order, np.int64)
    renum = np.where(w >= 0, order_arr[np.clip(w, 0, None)], np.int64(-1))
    rank_arr = np.asarray(dag.rank, np.int64)
    return renum[np.ix_(rank_arr, rank_arr)]


def brute_force_lca_set(dag: Dag, u: int, v: int) -> list[int]:
    """All LCAs of (u, v) by definition: common ancestors that are maximal."""
    anc = dag.ancestor_bitsets()
    desc = dag.descendant_bitsets()
    common = anc[u] & anc[v]
    out = []
    mask = common
    while mask:
        low = mask & -mask
        w = low.bit_length() - 1
        if desc[w] & common == low:  # no proper descendant is also common
            out.append(w)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Vertex-weighted graphs
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class VertexWeightedGraph:
    """Graph with one real weight per vertex; undirected unless stated."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[float, ...]
    directed: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        if len(self.weights) != self.n:
            raise ValueError("need exactly one weight per vertex")
        self.weights = tuple(float(w) for w in self.weights)
        edges = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError("self-loops are not allowed")
            key = (u, v) if self.directed else (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                edges.append(key)
        self.edges = tuple(edges)

    def adjacency(self) -> BoolMatrix:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            if not self.directed:
                rows[v] |= 1 << u
        return BoolMatrix(self.n, self.n, tuple(rows))

    def weight_order(self, descending: bool = False) -> list[int]:
        """Vertex ids sorted by (weight, id); ties resolved by id."""
        keyed = sorted(range(self.n), key=lambda v: (self.weights[v], v))
        return keyed[::-1] if descending else keyed


def random_weighted_graph(
    n: int, density: float, seed: int, directed: bool = False
) -> VertexWeightedGraph:
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np_stream(seed, 22)
    edges = []
    for u in range(n):
        vs = range(n) if directed else range(u + 1, n)
        for v in vs:
            if u != v and rng.random() < density:
                edges.append((u, v))
    weights = tuple(float(w) for w in rng.random(n))
    return VertexWeightedGraph(n, tuple(edges), weights, directed)


def _permuted_witnesses(adj: BoolMatrix, order: list[int]) -> tuple[WitnessMatrix, list[int]]:
    # columns of the left factor and rows of the right factor follow `order`,
    # so witness k stands for original vertex order[k] and the maximum witness
    # is the common neighbour that comes last in `order`
    dense = adj.to_dense()
    perm = np.asarray(order, np.int64)
    left = BoolMatrix.from_dense(dense[:, perm])
    right = BoolMatrix.from_dense(dense[perm, :])
    return max_witness_oracle(left, right), order


def heaviest_triangle_per_edge(
    g: VertexWeightedGraph, lightest: bool = False
) -> dict[tuple[int, int], int | None]:
    """Extreme-weight triangle apex for every edge; None when no triangle.

    For each edge (u, v) the apex is the common neighbour maximizing vertex
    weight (minimizing when lightest=True), ties broken towards the larger
    (smaller) vertex id.
    """
    if g.directed:
        raise ValueError("triangle search expects an undirected graph")
    adj = g.adjacency()
    order = g.weight_order(descending=lightest)
    wm, order = _permuted_witnesses(adj, order)
    w = wm.array
    out: dict[tuple[int, int], int | None] = {}
    for u, v in g.edges:
        k = int(w[u, v])
        out[(u, v)] = order[k] if k >= 0 else None
    return out


def max_weight_two_edge_paths(g: VertexWeightedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Best middle vertex of a two-edge path u -> k -> v for every pair.

    Open-variant path weight: only the middle vertex counts, endpoint weights
    are ignored. Returns (mid, weight): mid[u, v] is the middle vertex
    maximizing its weight (-1 when no such path; ties broken towards the
    larger id) and weight[u, v] is that vertex's weight (NaN where mid is -1).
    """
    adj = g.adjacency()
    order = g.weight_order()
    wm, order = _permuted_witnesses(adj, order)
    w = wm.array
    order_arr = np.asarray(order, np.int64)
    mid = np.where(w >= 0, order_arr[np.clip(w, 0, None)], np.int64(-1))
    warr = np.asarray(g.weights, np.float64)
    weight = np.where(mid >= 0, warr[np.clip(mid, 0, None)], np.nan)
    return mid, weight


def brute_force_heaviest_triangles(
    g: VertexWeightedGraph, lightest: bool = False
) -> dict[tuple[int, int], int | None]:
    adj = g.adjacency()
    out: dict[tuple[int, int], int | None] = {}
    for u, v in g.edges:
        best = None
        for k in range(g.n):
            if k in (u, v) or not (adj.get(u, k) and adj.get(v, k)):
                continue
            key = (g.weights[k], k)
            if best is None:
                best = (key, k)
            elif lightest and key < best[0]:
                best = (key, k)
            elif not lightest and key > best[0]:
                best = (key, k)
        out[(u, v)] = None if best is None else best[1]
    return out


def brute_force_two_edge_paths(g: VertexWeightedGraph) -> tuple[np.ndarray, np.ndarray]:
    adj = g.adjacency()
    n = g.n
    mid = np.full((n, n), -1, np.int64)
    weight = np.full((n, n), np.nan, np.float64)
    for u in range(n):
        for v in range(n):
            best = None
            for k in range(n):
                if adj.get(u, k) and adj.get(k, v):
                    key = (g.weights[k], k)
                    if best is None or key > best[0]:
                        best = (key, k)
            if best is not None:
                mid[u, v] = best[1]
                weight[u, v] = g.weights[best[1]]
    return mid, weight
