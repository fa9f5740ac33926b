"""Modules, strong modules and the modular decomposition of a poset.

A module is taken in the comparability-graph sense: every outside element
is comparable to all members or to none. Strong modules are computed by
checking the definition over all subsets for small ground sets and from
the recursive maximal modular partition otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (BudgetExceeded, NameCollision, NotAModule,
                     NotAPartitionOfModules, TooSmall)
from .poset import Poset, comparability_graph, induced_subposet, make_poset

SERIES = "series"
PARALLEL = "parallel"
PRIME = "prime"

BRUTE_FORCE_LIMIT = 12


def is_module(p: Poset, s: Iterable) -> bool:
    s = frozenset(s)
    p.check(*s)
    for y in p.elements:
        if y in s:
            continue
        hits = sum(p.comparable(x, y) for x in s)
        if 0 < hits < len(s):
            return False
    return True


def all_modules(p: Poset) -> list[frozenset[str]]:
    """Every non-empty module, by exhaustive subset check."""
    if len(p) > BRUTE_FORCE_LIMIT:
        raise BudgetExceeded(f"subset enumeration limited to {BRUTE_FORCE_LIMIT} elements")
    els = p.elements
    out = []
    for r in range(1, len(els) + 1):
        for combo in combinations(els, r):
            if is_module(p, combo):
                out.append(frozenset(combo))
    return out


def _overlap(a: frozenset, b: frozenset) -> bool:
    return bool(a & b) and not a <= b and not b <= a


def is_strong_module(p: Poset, s: Iterable) -> bool:
    s = frozenset(s)
    if not is_module(p, s):
        raise NotAModule(sorted(s))
    return s in strong_modules(p)


@dataclass(frozen=True)
class ModularPartition:
    parts: tuple[frozenset[str], ...]
    kind: str

    def part_of(self, x: str) -> frozenset[str]:
        for part in self.parts:
            if x in part:
                return part
        raise KeyError(x)


def _sorted_parts(parts) -> tuple[frozenset[str], ...]:
    return tuple(sorted((frozenset(q) for q in parts), key=lambda q: min(q)))


def _smallest_module(p: Poset, seed: Iterable[str]) -> frozenset[str]:
    m = set(seed)
    changed = True
    while changed:
        changed = False
        for y in p.elements:
            if y in m:
                continue
            hits = sum(p.comparable(x, y) for x in m)
            if 0 < hits < len(m):
                m.add(y)
                changed = True
    return frozenset(m)


def maximal_modular_partition(p: Poset) -> ModularPartition:
    if len(p) < 2:
        raise TooSmall("the modular partition needs at least two elements")
    g = comparability_graph(p)
    comps = g.components()
    if len(comps) > 1:
        return ModularPartition(_sorted_parts(comps), PARALLEL)
    co = g.complement().components()
    if len(co) > 1:
        return ModularPartition(_sorted_parts(co), SERIES)
    # prime case: x,y share a part iff the smallest module holding both is proper
    full = frozenset(p.elements)
    parent = {x: x for x in p.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in combinations(p.elements, 2):
        if find(x) != find(y) and _smallest_module(p, (x, y)) != full:
            parent[find(x)] = find(y)
    groups: dict[str, set[str]] = {}
    for x in p.elements:
        groups.setdefault(find(x), set()).add(x)
    parts = _sorted_parts(groups.values())
    for part in parts:
        if not is_module(p, part):
            raise AssertionError(f"prime partition part {sorted(part)} is not a module")
    if len(parts) < 4 or not is_prime(quotient(p, ModularPartition(parts, PRIME))):
        raise AssertionError("prime partition failed verification")
    return ModularPartition(parts, PRIME)


def is_prime(p: Poset) -> bool:
    """True iff every module is trivial (size <= 1 or the whole set)."""
    if len(p) < 3:
        return False
    full = frozenset(p.elements)
    return all(_smallest_module(p, pair) == full for pair in combinations(p.elements, 2))


def representative(part: Iterable[str]) -> str:
    return min(part)


def quotient(p: Poset, partition) -> Poset:
    """Quotient poset, one vertex per part named by the part's least element."""
    parts = partition.parts if isinstance(partition, ModularPartition) else _sorted_parts(partition)
    seen: set[str] = set()
    for part in parts:
        if not part or seen & part:
            raise NotAPartitionOfModules("parts must be non-empty and disjoint")
        seen |= part
        if not is_module(p, part):
            raise NotAPartitionOfModules(f"{sorted(part)} is not a module")
    if seen != set(p.elements):
        raise NotAPartitionOfModules("parts do not cover the ground set")
    reps = [representative(q) for q in parts]
    pairs = []
    for (i, a), (j, b) in combinations(enumerate(parts), 2):
        below = sum(p.less(x, y) for x in a for y in b)
        above = sum(p.less(y, x) for x in a for y in b)
        total = len(a) * len(b)
        if below + above == 0:
            continue
        if below == total:
            pairs.append((reps[i], reps[j]))
        elif above == total:
            pairs.append((reps[j], reps[i]))
        else:
            raise NotAPartitionOfModules(
                f"mixed directions between {sorted(a)} and {sorted(b)}")
    return make_poset(reps, pairs)


def substitute(p: Poset, v: str, h: Poset) -> Poset:
    """Replace ``v`` by ``h``; members of ``h`` inherit every outside relation of ``v``."""
    p.check(v)
    rest = [x for x in p.elements if x != v]
    if set(rest) & set(h.elements):
        raise NameCollision(sorted(set(rest) & set(h.elements)))
    pairs = [(x, y) for x, y in p.lt if v not in (x, y)]
    pairs += list(h.lt)
    for x in h.elements:
        pairs += [(x, y) for y in p.up_set(v)]
        pairs += [(y, x) for y in p.down_set(v)]
    return make_poset(rest + list(h.elements), pairs)


@dataclass(frozen=True)
class ModuleTree:
    elements: frozenset[str]
    kind: str | None  # None for leaves
    children: tuple["ModuleTree", ...] = ()

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def render(self, indent: int = 0) -> str:
        label = " ".join(sorted(self.elements))
        head = "  " * indent + (f"{self.kind} {{{label}}}" if self.kind else f"leaf {label}")
        return "\n".join([head] + [c.render(indent + 1) for c in self.children])


def module_tree(p: Poset) -> ModuleTree:
    if len(p) == 0:
        raise TooSmall("empty poset has no module tree")
    if len(p) == 1:
        return ModuleTree(frozenset(p.elements), None)
    part = maximal_modular_partition(p)
    kids = tuple(module_tree(induced_subposet(p, q)) for q in part.parts)
    return ModuleTree(frozenset(p.elements), part.kind, kids)


def strong_modules_brute(p: Poset) -> set[frozenset[str]]:
    mods = all_modules(p)
    return {m for m in mods if not any(_overlap(m, o) for o in mods)}


def strong_modules_tree(p: Poset) -> set[frozenset[str]]:
    if len(p) == 0:
        return set()
    return {node.elements for node in module_tree(p).nodes()}


def strong_modules(p: Poset) -> set[frozenset[str]]:
    if len(p) <= BRUTE_FORCE_LIMIT:
        return strong_modules_brute(p)
    return strong_modules_tree(p)


def module_kind(p: Poset, m: Iterable[str]) -> str | None:
    """Kind of the decomposition node for ``m`` (None for singletons)."""
    m = frozenset(m)
    if len(m) < 2:
        return None
    return maximal_modular_partition(induced_subposet(p, m)).kind


def proper_strong_modules(p: Poset) -> list[frozenset[str]]:
    """Strong modules with at least two elements that are neither the whole
    ground set nor a connected component of the comparability graph.

    These are the modules the rewriting machinery works on; the result is
    sorted by size and then by sorted member list.
    """
    comps = set(comparability_graph(p).components())
    full = frozenset(p.elements)
    mods = [m for m in strong_modules(p) if len(m) >= 2 and m != full and m not in comps]
    return sorted(mods, key=lambda m: (len(m), sorted(m)))
