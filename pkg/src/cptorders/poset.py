"""Finite posets, duals, comparability graphs and transitive orientations.

Elements are opaque strings. A :class:`Poset` stores its strict order
closed under transitivity; every canonical ordering in the package is the
lexicographic order on element identifiers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BudgetExceeded, CycleError, GroundSetMismatch, UnknownElement


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    lt: frozenset[tuple[str, str]]
    _down: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        down = {x: set() for x in self.elements}
        for x, y in self.lt:
            down[y].add(x)
        object.__setattr__(self, "_down", {x: frozenset(s) for x, s in down.items()})

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._down

    def less(self, x: str, y: str) -> bool:
        return (x, y) in self.lt

    def comparable(self, x: str, y: str) -> bool:
        return (x, y) in self.lt or (y, x) in self.lt

    def check(self, *xs: str) -> None:
        for x in xs:
            if x not in self._down:
                raise UnknownElement(x)

    def down_set(self, z: str, closed: bool = False) -> frozenset[str]:
        self.check(z)
        d = self._down[z]
        return d | {z} if closed else d

    def up_set(self, z: str, closed: bool = False) -> frozenset[str]:
        self.check(z)
        u = frozenset(y for y in self.elements if (z, y) in self.lt)
        return u | {z} if closed else u

    def covers(self) -> list[tuple[str, str]]:
        """Hasse diagram edges ``(x, y)`` with ``x <: y``."""
        out = []
        for x, y in sorted(self.lt):
            if not any((x, z) in self.lt and (z, y) in self.lt for z in self.elements):
                out.append((x, y))
        return out

    def minimal(self) -> list[str]:
        return [x for x in self.elements if not self._down[x]]

    def is_chain(self) -> bool:
        return all(self.comparable(x, y) for x, y in combinations(self.elements, 2))

    def linear_order(self) -> list[str]:
        """Elements of a chain from bottom to top."""
        if not self.is_chain():
            raise ValueError("poset is not a total order")
        return sorted(self.elements, key=lambda x: len(self._down[x]))

    def relabel(self, mapping: dict[str, str]) -> "Poset":
        return make_poset([mapping.get(x, x) for x in self.elements],
                          [(mapping.get(x, x), mapping.get(y, y)) for x, y in self.lt])

    def __repr__(self):
        rel = ", ".join(f"{x}<{y}" for x, y in sorted(self.lt))
        return f"Poset({{{' '.join(self.elements)}}}; {rel})"


def make_poset(elements: Iterable, relation_pairs: Iterable = ()) -> Poset:
    """Build a poset from generating pairs, closing them under transitivity."""
    elems = sorted({str(x) for x in elements})
    known = set(elems)
    up: dict[str, set[str]] = {x: set() for x in elems}
    for x, y in relation_pairs:
        x, y = str(x), str(y)
        for e in (x, y):
            if e not in known:
                raise UnknownElement(e)
        if x == y:
            raise CycleError(f"{x} < {x} violates irreflexivity")
        up[x].add(y)
    # Warshall closure; n is small
    for k in elems:
        for i in elems:
            if k in up[i]:
                up[i] |= up[k]
    lt = set()
    for x in elems:
        if x in up[x]:
            raise CycleError(f"relation has a cycle through {x}")
        lt.update((x, y) for y in up[x])
    return Poset(tuple(elems), frozenset(lt))


def dual(p: Poset) -> Poset:
    return Poset(p.elements, frozenset((y, x) for x, y in p.lt))


@dataclass(frozen=True)
class CompGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def adjacent(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.edges

    def neighbors(self, x: str) -> set[str]:
        return {y for e in self.edges if x in e for y in e if y != x}

    def complement(self) -> "CompGraph":
        return CompGraph(self.vertices, frozenset(
            frozenset(e) for e in combinations(self.vertices, 2)
            if frozenset(e) not in self.edges))

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def components(self) -> list[frozenset[str]]:
        seen: set[str] = set()
        comps = []
        adj = {v: self.neighbors(v) for v in self.vertices}
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], {v}
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps


def make_graph(vertices: Iterable, edges: Iterable) -> CompGraph:
    vs = tuple(sorted({str(v) for v in vertices}))
    es = frozenset(frozenset((str(u), str(v))) for u, v in edges)
    for e in es:
        if len(e) != 2 or not e <= set(vs):
            raise UnknownElement(tuple(e))
    return CompGraph(vs, es)


def comparability_graph(p: Poset) -> CompGraph:
    return CompGraph(p.elements, frozenset(frozenset(pair) for pair in p.lt))


def incomparability_graph(p: Poset) -> CompGraph:
    return comparability_graph(p).complement()


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"node-expansion budget {self.limit} exhausted")


def orient(g: CompGraph, fixed: Iterable[tuple[str, str]] = (),
           max_expansions: int | None = None) -> Iterator[frozenset[tuple[str, str]]]:
    """Yield every transitive orientation of ``g`` extending ``fixed``.

    Backtracking over edge directions; each decision is propagated through
    the forcing rules of transitivity (an arc ``u->v`` forces ``u->w`` for
    every neighbour ``w`` of ``u`` not adjacent to ``v``, and so on).
    Orientations come out in the order of a depth-first search that branches
    on the lexicographically least undecided edge, trying ``min->max`` first.
    """
    adj = {v: g.neighbors(v) for v in g.vertices}
    edges = g.edge_list()
    budget = _Budget(max_expansions)

    def assign(state: dict, u: str, v: str) -> bool:
        queue = [(u, v)]
        while queue:
            a, b = queue.pop()
            key = (a, b) if a < b else (b, a)
            want = (a, b)
            have = state.get(key)
            if have is not None:
                if have != want:
                    return False
                continue
            state[key] = want
            for w in adj[a]:
                if w == b:
                    continue
                if w not in adj[b]:
                    queue.append((a, w))
                else:
                    k = (b, w) if b < w else (w, b)
                    if state.get(k) == (b, w):
                        queue.append((a, w))
            for w in adj[b]:
                if w == a:
                    continue
                if w not in adj[a]:
                    queue.append((w, b))
                else:
                    k = (a, w) if a < w else (w, a)
                    if state.get(k) == (w, a):
                        queue.append((w, b))
        return True

    start: dict = {}
    for u, v in fixed:
        if v not in adj.get(u, ()):
            raise ValueError(f"fixed arc {u}->{v} is not an edge")
        if not assign(start, u, v):
            return

    def transitive(state: dict) -> bool:
        arcs = set(state.values())
        succ: dict[str, set[str]] = {v: set() for v in g.vertices}
        for a, b in arcs:
            succ[a].add(b)
        return all(c in succ[a] for a, b in arcs for c in succ[b])

    def rec(state: dict):
        budget.tick()
        for e in edges:
            if e not in state:
                break
        else:
            if transitive(state):
                yield frozenset(state.values())
            return
        u, v = e
        for a, b in ((u, v), (v, u)):
            nxt = dict(state)
            if assign(nxt, a, b):
                yield from rec(nxt)

    yield from rec(start)


def transitive_orientations(g: CompGraph, max_expansions: int | None = None) -> list[Poset]:
    """All posets whose comparability graph is ``g``, canonically ordered."""
    out = [Poset(g.vertices, arcs) for arcs in orient(g, max_expansions=max_expansions)]
    out.sort(key=lambda q: sorted(q.lt))
    return out


def down_set(p: Poset, z: str, closed: bool = False) -> frozenset[str]:
    return p.down_set(z, closed)


def up_set(p: Poset, z: str, closed: bool = False) -> frozenset[str]:
    return p.up_set(z, closed)


def induced_subposet(p: Poset, subset: Iterable) -> Poset:
    s = {str(x) for x in subset}
    p.check(*s)
    return Poset(tuple(x for x in p.elements if x in s),
                 frozenset((x, y) for x, y in p.lt if x in s and y in s))


def is_associated(p: Poset, q: Poset) -> bool:
    if set(p.elements) != set(q.elements):
        raise GroundSetMismatch("associated posets must share a ground set")
    return comparability_graph(p) == comparability_graph(q)
