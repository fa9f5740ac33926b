"""Host trees, paths in trees and containment models.

Paths are stored as endpoint pairs and their vertex sets are recomputed
on demand, so subdividing an edge never requires rewriting stored paths.
Every surgery returns a new model together with the fresh vertex ids it
created.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import EdgeNotInTree, ElementSetMismatch, VertexNotInTree
from .poset import Poset, make_poset


class HostTree:
    """An unrooted tree on integer vertices. Treated as immutable."""

    __slots__ = ("_adj", "next_id", "_paths")

    def __init__(self, adj: Mapping[int, Iterable[int]], next_id: int | None = None):
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        if next_id is None:
            next_id = max(self._adj, default=-1) + 1
        self.next_id = next_id
        self._paths: dict[tuple[int, int], tuple[int, ...]] = {}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = (),
                   next_id: int | None = None) -> "HostTree":
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        tree = cls(adj, next_id)
        tree.validate()
        return tree

    def validate(self) -> None:
        n = len(self._adj)
        if n == 0:
            raise ValueError("host tree needs at least one vertex")
        m = sum(len(ns) for ns in self._adj.values()) // 2
        if m != n - 1:
            raise ValueError("host graph is not a tree (edge count)")
        start = next(iter(self._adj))
        seen, stack = {start}, [start]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise ValueError("host graph is not connected")
        if self.next_id <= max(self._adj):
            raise ValueError("next_id must exceed every vertex id")

    @property
    def vertices(self) -> list[int]:
        return sorted(self._adj)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, ns in self._adj.items() for v in ns if u < v)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, HostTree) and self._adj == other._adj

    def __hash__(self):
        return hash(tuple(self.edges))

    def neighbors(self, v: int) -> frozenset[int]:
        if v not in self._adj:
            raise VertexNotInTree(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def path(self, u: int, v: int) -> tuple[int, ...]:
        """The unique vertex sequence from ``u`` to ``v``."""
        key = (u, v)
        if key in self._paths:
            return self._paths[key]
        for x in (u, v):
            if x not in self._adj:
                raise VertexNotInTree(x)
        parent = {u: None}
        stack = [u]
        while stack and v not in parent:
            x = stack.pop()
            for w in self._adj[x]:
                if w not in parent:
                    parent[w] = x
                    stack.append(w)
        seq = [v]
        while seq[-1] != u:
            seq.append(parent[seq[-1]])
        seq.reverse()
        self._paths[key] = out = tuple(seq)
        return out

    def step(self, u: int, target: int) -> int:
        """Neighbour of ``u`` on the way to ``target``."""
        if u == target:
            raise ValueError("no step from a vertex to itself")
        return self.path(u, target)[1]

    def subdivide(self, u: int, v: int, k: int) -> tuple["HostTree", list[int]]:
        if not self.has_edge(u, v):
            raise EdgeNotInTree((u, v))
        if k < 1:
            raise ValueError("k must be at least 1")
        adj = {x: set(ns) for x, ns in self._adj.items()}
        adj[u].discard(v)
        adj[v].discard(u)
        new = list(range(self.next_id, self.next_id + k))
        chain = [u] + new + [v]
        for x in new:
            adj[x] = set()
        for a, b in zip(chain, chain[1:]):
            adj[a].add(b)
            adj[b].add(a)
        return HostTree(adj, self.next_id + k), new

    def add_branch(self, at: int, length: int) -> tuple["HostTree", list[int]]:
        if at not in self._adj:
            raise VertexNotInTree(at)
        if length < 1:
            raise ValueError("branch length must be at least 1")
        adj = {x: set(ns) for x, ns in self._adj.items()}
        new = list(range(self.next_id, self.next_id + length))
        chain = [at] + new
        for x in new:
            adj[x] = set()
        for a, b in zip(chain, chain[1:]):
            adj[a].add(b)
            adj[b].add(a)
        return HostTree(adj, self.next_id + length), new

    def without(self, removed: Iterable[int]) -> "HostTree":
        gone = set(removed)
        return HostTree({x: ns - gone for x, ns in self._adj.items() if x not in gone},
                        self.next_id)

    def contract(self, v: int) -> "HostTree":
        """Remove a degree-2 vertex, joining its two neighbours."""
        a, b = sorted(self.neighbors(v))
        adj = {x: set(ns) for x, ns in self._adj.items() if x != v}
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
        return HostTree(adj, self.next_id)

    def relabeled(self, offset: int) -> "HostTree":
        return HostTree({x + offset: {w + offset for w in ns} for x, ns in self._adj.items()},
                        self.next_id + offset)

    def __repr__(self):
        return f"HostTree({self.edges or self.vertices})"


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class CptModel:
    tree: HostTree
    paths: Mapping[str, tuple[int, int]]
    _sets: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ps = {str(x): _norm(*uv) for x, uv in sorted(self.paths.items())}
        for x, (u, v) in ps.items():
            if u not in self.tree or v not in self.tree:
                raise VertexNotInTree(f"path of {x} leaves the tree")
        object.__setattr__(self, "paths", ps)
        object.__setattr__(self, "_sets", {})

    @property
    def elements(self) -> list[str]:
        return list(self.paths)

    def vertex_list(self, x: str) -> tuple[int, ...]:
        u, v = self.paths[x]
        return self.tree.path(u, v)

    def vertex_set(self, x: str) -> frozenset[int]:
        s = self._sets.get(x)
        if s is None:
            s = self._sets[x] = frozenset(self.vertex_list(x))
        return s

    def endpoints(self, x: str) -> set[int]:
        return set(self.paths[x])

    def is_trivial(self, x: str) -> bool:
        u, v = self.paths[x]
        return u == v

    def contains(self, x: str, y: str) -> bool:
        """True iff the path of ``y`` is a proper subset of the path of ``x``."""
        sx, sy = self.vertex_set(x), self.vertex_set(y)
        return sy < sx

    def poset(self) -> Poset:
        """The containment order this model induces."""
        els = self.elements
        sets = {x: self.vertex_set(x) for x in els}
        return make_poset(els, [(x, y) for x in els for y in els if sets[x] < sets[y]])

    def with_paths(self, updates: Mapping[str, tuple[int, int]]) -> "CptModel":
        ps = dict(self.paths)
        ps.update(updates)
        return CptModel(self.tree, ps)

    def with_tree(self, tree: HostTree) -> "CptModel":
        return CptModel(tree, self.paths)

    def restrict(self, keep: Iterable[str]) -> "CptModel":
        keep = set(keep)
        return CptModel(self.tree, {x: uv for x, uv in self.paths.items() if x in keep})

    def rename(self, mapping: Mapping[str, str]) -> "CptModel":
        return CptModel(self.tree, {mapping.get(x, x): uv for x, uv in self.paths.items()})

    def endpoint_vertices(self) -> set[int]:
        return {v for uv in self.paths.values() for v in uv}

    def trivial_vertices(self, exclude: Iterable[str] = ()) -> dict[int, list[str]]:
        """Host vertices carrying trivial paths, with their elements."""
        ex = set(exclude)
        out: dict[int, list[str]] = {}
        for x, (u, v) in self.paths.items():
            if u == v and x not in ex:
                out.setdefault(u, []).append(x)
        return out


def path_vertices(tree: HostTree, path: tuple[int, int]) -> list[int]:
    return list(tree.path(*path))


@dataclass
class Report:
    ok: bool
    violations: list[tuple[str, str, str]] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{x} < {y}: {kind}" for x, y, kind in self.violations)


def realizes(model: CptModel, p: Poset) -> Report:
    """Check ``x < y`` in ``p`` exactly when ``W_x`` is a proper subset of ``W_y``.

    Each violation is ``(x, y, kind)`` where kind is ``"missing"`` (order
    says ``x<y`` but the model does not contain) or ``"extra"``.
    """
    if set(model.paths) != set(p.elements):
        raise ElementSetMismatch(
            f"model covers {sorted(model.paths)}, poset has {list(p.elements)}")
    bad = []
    for x, y in combinations(p.elements, 2):
        for a, b in ((x, y), (y, x)):
            want = p.less(a, b)
            got = model.contains(b, a)
            if want != got:
                bad.append((a, b, "missing" if want else "extra"))
    return Report(not bad, bad)


def subdivide_edge(model: CptModel, edge: tuple[int, int], k: int = 1) -> tuple[CptModel, list[int]]:
    """Replace ``edge=(u, v)`` by a path through ``k`` fresh vertices, listed from ``u``."""
    tree, new = model.tree.subdivide(edge[0], edge[1], k)
    return model.with_tree(tree), new


def add_branch(model: CptModel, at_vertex: int, length: int) -> tuple[CptModel, list[int]]:
    """Attach a fresh path of ``length`` vertices at ``at_vertex``, listed outward."""
    tree, new = model.tree.add_branch(at_vertex, length)
    return model.with_tree(tree), new


def trivial_paths(model: CptModel) -> set[str]:
    return {x for x in model.paths if model.is_trivial(x)}


@dataclass(frozen=True)
class OneSided:
    b: int


@dataclass(frozen=True)
class TwoSided:
    sides: tuple[int, ...]


@dataclass(frozen=True)
class NotEndingAtA:
    pass


def classify_module_ending(model: CptModel, module_elements: Iterable[str], a: int):
    """How the paths of a module arrive at host vertex ``a``.

    All paths must have ``a`` as an endpoint, otherwise the result is
    :class:`NotEndingAtA`. The family is one-sided through ``b`` when every
    path except possibly one trivial path passes through the neighbour ``b``.
    """
    els = sorted(set(module_elements))
    if a not in model.tree:
        raise VertexNotInTree(a)
    if not els or any(a not in model.paths[x] for x in els):
        return NotEndingAtA()
    trivial = [x for x in els if model.is_trivial(x)]
    nontrivial = [x for x in els if x not in trivial]
    sides = sorted(b for b in model.tree.neighbors(a)
                   if any(b in model.vertex_set(x) for x in nontrivial))
    if len(trivial) <= 1 and nontrivial:
        for b in sides:
            if all(b in model.vertex_set(x) for x in nontrivial):
                return OneSided(b)
    return TwoSided(tuple(sides))


def prune_minimal(model: CptModel) -> CptModel:
    """Drop leaves that end no path and contract degree-2 vertices that end no path."""
    tree = model.tree
    used = model.endpoint_vertices()
    changed = True
    while changed and len(tree) > 1:
        changed = False
        for v in tree.vertices:
            if v in used:
                continue
            d = tree.degree(v)
            if d <= 1 and len(tree) > 1:
                tree = tree.without([v])
                changed = True
                break
            if d == 2:
                tree = tree.contract(v)
                changed = True
                break
    return CptModel(tree, model.paths)


def model_from_edges(edges, paths, vertices=()) -> CptModel:
    return CptModel(HostTree.from_edges(edges, vertices), paths)
