"""Exhaustive ground truth at desk scale.

CPT models are searched over host trees in which every leaf and every
degree-2 vertex is an endpoint of some path. ``prune_minimal`` turns any
model into such a model, so the restricted space is complete. With at most
``2n`` endpoints there are at most ``2n`` leaves plus degree-2 vertices, and
a tree with ``L`` leaves has at most ``L - 2`` vertices of degree three or
more, hence the search never needs more than ``4n - 2`` host vertices.
This bound is an argument of this package, not a published result.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator

import networkx as nx

from .ci import ci_recognize, is_ci_brute
from .cpt import CptModel, HostTree
from .errors import BudgetExceeded
from .poset import Poset, comparability_graph, dual, make_poset, transitive_orientations


@dataclass(frozen=True)
class SearchBudget:
    max_tree: int | None = None
    max_expansions: int | None = None

    def __post_init__(self):
        for v in (self.max_tree, self.max_expansions):
            if v is not None and v <= 0:
                raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class ExhaustedNone:
    """No model exists on any host tree of the searched space."""
    max_tree: int
    trees_searched: int
    pruned: bool = True

    def __bool__(self):
        return False


def tree_size_bound(n: int) -> int:
    return max(1, 4 * n - 2)


@lru_cache(maxsize=None)
def _trees(size: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if size == 1:
        return ((),)
    return tuple(tuple(sorted(t.edges())) for t in nx.nonisomorphic_trees(size))


def _adjacency(size: int, edges) -> list[list[int]]:
    adj = [[] for _ in range(size)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _required(adj) -> int:
    """Bitmask of leaves and degree-2 vertices."""
    if len(adj) == 1:
        return 1
    mask = 0
    for v, ns in enumerate(adj):
        if len(ns) <= 2:
            mask |= 1 << v
    return mask


def host_trees(size: int, n: int | None = None) -> Iterator[tuple[list[list[int]], tuple]]:
    """Unlabeled trees on ``size`` vertices; with ``n``, only those whose
    leaves and degree-2 vertices can all be endpoints of ``n`` paths."""
    for edges in _trees(size):
        adj = _adjacency(size, edges)
        if n is not None and bin(_required(adj)).count("1") > 2 * n:
            continue
        yield adj, edges


def _path_masks(adj) -> dict[tuple[int, int], int]:
    size = len(adj)
    masks = {}
    for s in range(size):
        parent = {s: None}
        order = [s]
        for u in order:
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        for t in range(s, size):
            m, v = 0, t
            while v is not None:
                m |= 1 << v
                v = parent[v]
            masks[(s, t)] = m
    return masks


def _encode(adj, root, parent, marks) -> str:
    kids = sorted(_encode(adj, w, root, marks) for w in adj[root] if w != parent)
    return "(" + marks.get(root, "") + "".join(kids) + ")"


def _centers(adj) -> list[int]:
    deg = [len(ns) for ns in adj]
    left = set(range(len(adj)))
    layer = [v for v in left if deg[v] <= 1]
    while len(left) > 2:
        nxt = []
        for v in layer:
            left.discard(v)
            for w in adj[v]:
                if w in left:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(left)


def _canon(adj, marks: dict[int, str]) -> str:
    return min(_encode(adj, c, None, marks) for c in _centers(adj))


def _pair_orbits(adj, pairs) -> list[tuple[int, int]]:
    """One pair per orbit under tree automorphisms."""
    seen = set()
    out = []
    for u, v in pairs:
        key = _canon(adj, {u: "s"} if u == v else {u: "e", v: "e"})
        if key not in seen:
            seen.add(key)
            out.append((u, v))
    return out


def _vertex_orbits(adj) -> list[int]:
    seen, out = set(), []
    for v in range(len(adj)):
        key = _canon(adj, {v: "a"})
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


class _Counter:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} expansions exhausted")


def _search_tree(p: Poset, order, adj, pruned: bool, common_endpoint: bool, counter):
    size = len(adj)
    masks = _path_masks(adj)
    pairs = sorted(masks)
    need = _required(adj) if pruned else 0
    idx = {x: i for i, x in enumerate(order)}
    rel = [[0] * len(order) for _ in order]  # 1: i<j, -1: j<i, 0: incomparable
    for x, y in p.lt:
        rel[idx[x]][idx[y]] = 1
        rel[idx[y]][idx[x]] = -1
    n = len(order)
    chosen: list[tuple[int, int]] = []
    cmask: list[int] = []

    def fits(i, m):
        for j in range(i):
            o = cmask[j]
            sub = m != o and m & o == m
            sup = m != o and m & o == o
            r = rel[i][j]
            if r == 1 and not sub or r == -1 and not sup or r == 0 and (sub or sup):
                return False
        return True

    def rec(i, covered, options):
        counter.tick()
        if need and bin(need & ~covered).count("1") > 2 * (n - i):
            return None
        if i == n:
            return list(chosen) if need & ~covered == 0 else None
        cands = options if i > 0 or common_endpoint else _pair_orbits(adj, options)
        for uv in cands:
            m = masks[uv]
            if fits(i, m):
                chosen.append(uv)
                cmask.append(m)
                got = rec(i + 1, covered | (1 << uv[0]) | (1 << uv[1]), options)
                if got is not None:
                    return got
                chosen.pop()
                cmask.pop()
        return None

    if common_endpoint:
        for a in _vertex_orbits(adj):
            opts = [uv for uv in pairs if a in uv]
            got = rec(0, 0, opts)
            if got is not None:
                return got
        return None
    return rec(0, 0, pairs)


def _element_order(p: Poset) -> list[str]:
    g = comparability_graph(p)
    return sorted(p.elements, key=lambda x: (-len(g.neighbors(x)), x))


def brute_force_cpt(p: Poset, budget: SearchBudget | None = None, *, pruned: bool = True,
                    common_endpoint: bool = False, max_tree: int | None = None):
    """First CPT model of ``p`` over trees of increasing size, or :class:`ExhaustedNone`.

    ``common_endpoint`` restricts the search to models in which all paths
    share one endpoint vertex. ``max_tree`` overrides the size bound of the
    searched space (used to compare pruned and unpruned searches).
    """
    budget = budget or SearchBudget()
    bound = max_tree if max_tree is not None else tree_size_bound(len(p))
    cap = bound if budget.max_tree is None else min(bound, budget.max_tree)
    counter = _Counter(budget.max_expansions)
    if len(p) == 0:
        return CptModel(HostTree({0: ()}), {})
    order = _element_order(p)
    searched = 0
    for size in range(1, cap + 1):
        for adj, edges in host_trees(size, len(p) if pruned else None):
            searched += 1
            got = _search_tree(p, order, adj, pruned, common_endpoint, counter)
            if got is not None:
                tree = HostTree.from_edges(edges, vertices=range(size))
                return CptModel(tree, dict(zip(order, got)))
    if cap < bound:
        raise BudgetExceeded(f"host trees limited to {cap} vertices, complete search needs {bound}")
    return ExhaustedNone(bound, searched, pruned)


@dataclass(frozen=True)
class Classification:
    is_ci: bool
    is_cpt: bool
    is_dually_cpt: bool
    is_strongly_cpt: bool
    model: CptModel | None = None
    dual_model: CptModel | None = None
    orientation_models: tuple = field(default=(), repr=False)

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.is_ci, self.is_cpt, self.is_dually_cpt, self.is_strongly_cpt)


def classify(p: Poset, budget: SearchBudget | None = None) -> Classification:
    is_ci = bool(ci_recognize(p))
    if is_ci != is_ci_brute(p):
        raise AssertionError(f"CI recognition disagrees with brute force on {p}")
    found = brute_force_cpt(p, budget)
    model = found if isinstance(found, CptModel) else None
    dual_found = brute_force_cpt(dual(p), budget) if model else None
    dual_model = dual_found if isinstance(dual_found, CptModel) else None
    orient_models = []
    strongly = model is not None
    if strongly:
        for q in transitive_orientations(comparability_graph(p)):
            got = brute_force_cpt(q, budget)
            orient_models.append((q, got))
            if not isinstance(got, CptModel):
                strongly = False
    return Classification(is_ci, model is not None, dual_model is not None, strongly,
                          model, dual_model, tuple(orient_models))


def _canonical(n: int, lt: frozenset[tuple[int, int]]) -> tuple[tuple[int, ...], int]:
    """Least adjacency bitstring over relabelings that respect simple invariants."""
    down = [sum((y, x) in lt for y in range(n)) for x in range(n)]
    up = [sum((x, y) in lt for y in range(n)) for x in range(n)]
    inv = [(down[x], up[x]) for x in range(n)]
    cells: dict[tuple, list[int]] = {}
    for x in range(n):
        cells.setdefault(inv[x], []).append(x)
    keys = sorted(cells)
    best = None
    for combo in product(*(permutations(cells[k]) for k in keys)):
        seq = [x for part in combo for x in part]
        bits = 0
        for i, x in enumerate(seq):
            for j, y in enumerate(seq):
                if (x, y) in lt:
                    bits |= 1 << (i * n + j)
        if best is None or bits < best[1]:
            best = (tuple(seq), bits)
    return best


def _ideals(n: int, lt) -> list[frozenset[int]]:
    down = {x: {y for y in range(n) if (y, x) in lt} for x in range(n)}
    out = []
    for r in range(n + 1):
        for s in combinations(range(n), r):
            ss = set(s)
            if all(down[x] <= ss for x in ss):
                out.append(frozenset(ss))
    return out


def _label(i: int) -> str:
    return chr(ord("a") + i)


def enumerate_posets(n: int) -> list[Poset]:
    """All posets on ``n`` unlabeled elements, one canonical representative each."""
    if n < 0:
        raise ValueError("n must be non-negative")
    level = {(0, ()): frozenset()}
    for k in range(n):
        nxt = {}
        for lt in level.values():
            for ideal in _ideals(k, lt):
                new = set(lt) | {(x, k) for x in ideal}
                seq, bits = _canonical(k + 1, frozenset(new))
                if (k + 1, bits) in nxt:
                    continue
                pos = {x: i for i, x in enumerate(seq)}
                nxt[(k + 1, bits)] = frozenset((pos[x], pos[y]) for x, y in new)
        level = nxt
    out = []
    for (_, bits), lt in sorted(level.items(), key=lambda kv: kv[0][1]):
        out.append(make_poset([_label(i) for i in range(n)],
                              [(_label(x), _label(y)) for x, y in lt]))
    return out
