"""Local rewrites of CPT models around trivial paths.

Two families of rewrites live here. The first removes trivial paths from
elements of proper strong modules (stable, clique and prime modules each
have their own construction). The second deals with modules whose paths
end on the trivial path of an outside element: partial endings are pushed
off the trivial vertex, complete endings are spread out, and clique modules
for which no spreading edge exists are flagged as blocked.

Every rewrite is checked with :func:`cptorders.cpt.realizes` before it is
returned. A failing check raises :class:`NotDuallyCptSuspicion`; a
configuration the construction does not cover raises
:class:`PreconditionFailed` without touching the model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .ci import ci_model_from_realizer, ci_recognize
from .cpt import CptModel, HostTree, add_branch, classify_module_ending, OneSided, realizes, subdivide_edge
from .errors import BlockedClique, NoLocalRewrite, NotDuallyCptSuspicion, PreconditionFailed
from .modular import (PARALLEL, PRIME, SERIES, maximal_modular_partition, module_kind,
                      proper_strong_modules)
from .poset import Poset, induced_subposet

INTERIOR = "interior"
COMPLETE = "complete"
PARTIAL = "partial"


def _verify(model: CptModel, p: Poset, what: str) -> CptModel:
    report = realizes(model, p)
    if not report.ok:
        raise NotDuallyCptSuspicion(f"{what} broke the model:\n{report.describe()}")
    return model


def _rank_groups(model: CptModel, elems: Iterable[str]) -> list[list[str]]:
    """Elements grouped by identical vertex sets, smallest sets first."""
    groups: dict[frozenset, list[str]] = {}
    for x in sorted(elems):
        groups.setdefault(model.vertex_set(x), []).append(x)
    return [groups[k] for k in sorted(groups, key=lambda s: (len(s), min(groups[s])))]


def _through(model: CptModel, a: int, exclude: Iterable[str] = ()) -> list[str]:
    ex = set(exclude)
    return [x for x in model.paths if x not in ex and a in model.vertex_set(x)]


def _side(model: CptModel, x: str, a: int) -> int:
    """Neighbour of ``a`` used by a non-trivial path ending at ``a``."""
    u, v = model.paths[x]
    return model.tree.step(a, v if u == a else u)


def _move_end(model: CptModel, x: str, old: int, new: int) -> tuple[int, int]:
    u, v = model.paths[x]
    return (new, v) if u == old else (u, new)


def _common_neighbor(model: CptModel, a: int, paths: list[str]) -> int | None:
    for b in sorted(model.tree.neighbors(a)):
        if all(b in model.vertex_set(x) for x in paths):
            return b
    return None


def _check_module(p: Poset, m, kind: str | None = None) -> frozenset[str]:
    m = frozenset(m)
    if m not in proper_strong_modules(p):
        raise PreconditionFailed(f"{sorted(m)} is not a proper strong module")
    if kind is not None and module_kind(p, m) != kind:
        raise PreconditionFailed(f"{sorted(m)} is not a {kind} module")
    return m


def _trivial_at(model: CptModel, z: str) -> int:
    if not model.is_trivial(z):
        raise PreconditionFailed(f"path of {z} is not trivial")
    return model.paths[z][0]


def _own_singletons(p: Poset, m: frozenset[str]) -> set[str]:
    """Members of ``m`` that form a child of ``m`` on their own."""
    parts = maximal_modular_partition(induced_subposet(p, m)).parts
    return {next(iter(q)) for q in parts if len(q) == 1}


def _check_member(p: Poset, m: frozenset[str], z: str) -> None:
    if z not in m:
        raise PreconditionFailed(f"{z} is not in the module")
    if z not in _own_singletons(p, m):
        raise PreconditionFailed(f"{z} lies in a smaller strong module; clear that one first")


def _lengthen_trivial(model: CptModel, z: str, a: int, through: list[str]) -> CptModel | None:
    """Shared first case: every path through ``a`` also uses one neighbour ``b``;
    subdivide ``a-b`` and stretch ``z`` onto the new vertex."""
    b = _common_neighbor(model, a, through)
    if b is None:
        return None
    model, (c,) = subdivide_edge(model, (a, b), 1)
    return model.with_paths({z: (a, c)})


def _two_sides(model: CptModel, a: int, through: list[str], allowed_ending):
    """Split paths through ``a`` into those ending there via one of exactly two
    neighbours; all remaining paths must use both neighbours."""
    ending = [x for x in through if a in model.paths[x]]
    if any(model.is_trivial(x) for x in ending):
        raise PreconditionFailed("another trivial path shares the vertex")
    if not set(ending) <= set(allowed_ending):
        raise PreconditionFailed("a path outside the module ends at the trivial vertex")
    sides: dict[int, list[str]] = {}
    for x in ending:
        sides.setdefault(_side(model, x, a), []).append(x)
    if len(sides) != 2:
        raise PreconditionFailed("paths reach the trivial vertex from more than two sides")
    b, c = sorted(sides)
    for x in through:
        if x not in ending and not {b, c} <= model.vertex_set(x):
            raise PreconditionFailed("a path through the trivial vertex leaves the b-c line")
    return b, c, sides[b], sides[c]


def eliminate_trivial_clique(model: CptModel, p: Poset, m, z: str) -> CptModel:
    """Give ``z`` (trivial, in the clique module ``m``) a non-trivial path.

    When every path through ``z``'s vertex ``a`` also uses a neighbour ``b``,
    one subdivision of ``a-b`` suffices. Otherwise the module arrives at
    ``a`` from two sides ``b`` and ``c``: both edges are subdivided (``i`` on
    ``a-b``, ``j`` on ``a-c``), the paths ending at ``a`` from ``b`` are
    stretched to ``j``, those from ``c`` to ``i``, and ``z`` becomes ``i-j``.
    """
    m = _check_module(p, m, SERIES)
    _check_member(p, m, z)
    a = _trivial_at(model, z)
    through = _through(model, a, [z])
    if not through:
        raise PreconditionFailed("no path passes through the trivial vertex")
    out = _lengthen_trivial(model, z, a, through)
    if out is None:
        b, c, side_b, side_c = _two_sides(model, a, through, m)
        out, (i,) = subdivide_edge(model, (a, b), 1)
        out, (j,) = subdivide_edge(out, (a, c), 1)
        moves = {x: _move_end(out, x, a, j) for x in side_b}
        moves.update({x: _move_end(out, x, a, i) for x in side_c})
        moves[z] = (i, j)
        out = out.with_paths(moves)
    return _verify(out, p, "clique trivial-path elimination")


def _split_vertex(model: CptModel, a: int, skip: list[str]) -> tuple[CptModel, int]:
    """Turn ``a`` into an edge ``a-a'`` that every path through ``a`` uses.

    Neighbours of ``a`` are 2-coloured so that each path crossing ``a`` joins
    the two colours; one colour class moves to ``a'``. Paths ending at ``a``
    from the other class are stretched onto ``a'``. When the neighbours
    cannot be 2-coloured this way the split is impossible and
    :class:`NoLocalRewrite` is raised.
    """
    tree = model.tree
    cross = nx.Graph()
    cross.add_nodes_from(tree.neighbors(a))
    for x in _through(model, a, skip):
        if model.is_trivial(x):
            raise PreconditionFailed("another trivial path shares the vertex")
        verts = model.vertex_list(x)
        i = verts.index(a)
        if 0 < i < len(verts) - 1:
            cross.add_edge(verts[i - 1], verts[i + 1])
    if not nx.is_bipartite(cross):
        raise NoLocalRewrite("paths crossing the trivial vertex admit no split")
    moved = set()
    for comp in sorted(nx.connected_components(cross), key=min):
        if len(comp) > 1:
            colour = nx.bipartite.color(cross.subgraph(comp))
            moved |= {v for v in comp if colour[v] != colour[min(comp)]}
    a2 = tree.next_id
    adj = {v: set(tree.neighbors(v)) for v in tree.vertices}
    adj[a] = (adj[a] - moved) | {a2}
    adj[a2] = moved | {a}
    for v in moved:
        adj[v] = (adj[v] - {a}) | {a2}
    moves = {}
    for x in _through(model, a, skip):
        if a in model.paths[x] and _side(model, x, a) not in moved:
            moves[x] = _move_end(model, x, a, a2)
    return CptModel(HostTree(adj), model.paths).with_paths(moves), a2


def eliminate_trivial_stable(model: CptModel, p: Poset, m) -> CptModel:
    """Replace every trivial path of the stable module ``m``.

    The ``k`` members sharing a trivial vertex ``a`` are laid out on ``2k-1``
    new vertices inserted on an edge ``a-b`` used by every path through
    ``a``: with ``a = a_1`` and the new vertices ``a_2 .. a_2k``, member
    ``u_i`` spans ``a_i .. a_{k+i}``, so the new paths pairwise overlap.
    When all members sit on ``a`` and the containing paths share no edge
    at ``a``, the vertex is first split into an edge they all use.
    Members lying in a smaller strong module are left to that module.
    """
    m = _check_module(p, m, PARALLEL)
    own = _own_singletons(p, m)
    groups = model.trivial_vertices()
    todo = {a: sorted(x for x in xs if x in own) for a, xs in groups.items()}
    todo = {a: xs for a, xs in todo.items() if xs}
    if not todo:
        raise PreconditionFailed("no member of the module has a trivial path")
    for a in sorted(todo):
        us = todo[a]
        k = len(us)
        through = _through(model, a, us)
        if not through:
            model, new = add_branch(model, a, 2 * k - 1)
        else:
            b = _common_neighbor(model, a, through)
            if b is None:
                model, b = _split_vertex(model, a, us)
            model, new = subdivide_edge(model, (a, b), 2 * k - 1)
        seq = [a] + new
        model = model.with_paths({u: (seq[i], seq[k + i]) for i, u in enumerate(us)})
    return _verify(model, p, "stable trivial-path elimination")


def eliminate_trivial_prime(model: CptModel, p: Poset, m, z: str) -> CptModel:
    """Give ``z`` (trivial, in the prime module ``m``) a non-trivial path.

    If the paths through ``z``'s vertex ``a`` share a neighbour, a single
    subdivision is enough. Otherwise ``a`` is the right bound of a set ``L``
    of paths (coming from ``b``) and the left bound of a set ``R`` (coming
    from ``c``): ``a-b`` is subdivided ``|R|+1`` times and ``a-c``
    ``|L|+1`` times, the bounds at ``a`` are moved onto the new vertices in
    containment order, and ``z`` becomes the path between the two vertices
    next to ``a``.
    """
    m = _check_module(p, m, PRIME)
    _check_member(p, m, z)
    a = _trivial_at(model, z)
    through = _through(model, a, [z])
    if not through:
        raise PreconditionFailed("no path passes through the trivial vertex")
    out = _lengthen_trivial(model, z, a, through)
    if out is None:
        b, c, left, right = _two_sides(model, a, through, m)
        right_groups = _rank_groups(model, right)
        left_groups = _rank_groups(model, left)
        out, ab = subdivide_edge(model, (a, b), len(right_groups) + 1)
        out, ac = subdivide_edge(out, (a, c), len(left_groups) + 1)
        moves = {}
        for i, grp in enumerate(right_groups):
            moves.update({x: _move_end(out, x, a, ab[i]) for x in grp})
        for j, grp in enumerate(left_groups):
            moves.update({x: _move_end(out, x, a, ac[j]) for x in grp})
        moves[z] = (ab[0], ac[0])
        out = out.with_paths(moves)
    return _verify(out, p, "prime trivial-path elimination")


def eliminate_all_trivial_in_modules(model: CptModel, p: Poset) -> CptModel:
    """Remove every trivial path belonging to a proper strong module.

    Modules are visited smallest first; a trivial element is handled by the
    smallest proper strong module containing it, using the construction for
    that module's kind.
    """
    mods = proper_strong_modules(p)
    for _ in range(len(mods) + 1):
        changed = False
        for m in mods:
            own = _own_singletons(p, m)
            zs = sorted(z for z in own if model.is_trivial(z))
            if not zs:
                continue
            kind = module_kind(p, m)
            try:
                if kind == PARALLEL:
                    model = eliminate_trivial_stable(model, p, m)
                elif kind == SERIES:
                    for z in zs:
                        model = eliminate_trivial_clique(model, p, m, z)
                else:
                    for z in zs:
                        model = eliminate_trivial_prime(model, p, m, z)
            except NoLocalRewrite:
                raise
            except PreconditionFailed as exc:
                raise NotDuallyCptSuspicion(
                    f"cannot clear trivial paths of module {sorted(m)}: {exc}") from exc
            changed = True
        if not changed:
            break
    left = {x for m in mods for x in m if model.is_trivial(x)}
    if left:
        raise NotDuallyCptSuspicion(f"trivial paths remain in modules: {sorted(left)}")
    return model


@dataclass(frozen=True)
class Ending:
    module: frozenset[str]
    a: int
    z: tuple[str, ...]
    status: str
    sided: str | None = None
    free: bool | None = None
    reason: str | None = None
    consistent: bool = True


@dataclass(frozen=True)
class EndingDiagnosis:
    entries: tuple[Ending, ...]

    def __iter__(self):
        return iter(self.entries)

    def of(self, status: str) -> list[Ending]:
        return [e for e in self.entries if e.status == status]


def containers(p: Poset, m: Iterable[str]) -> list[str]:
    """Outside elements above every member of ``m``."""
    m = set(m)
    return [y for y in p.elements if y not in m and all(p.less(x, y) for x in m)]


def _free_neighbor(model: CptModel, p: Poset, m: frozenset[str], a: int):
    """A neighbour ``b`` of ``a`` no module path uses while every container does."""
    conts = containers(p, m)
    for b in sorted(model.tree.neighbors(a)):
        if any(b in model.vertex_set(x) for x in m):
            continue
        if all(b in model.vertex_set(y) for y in conts):
            return b, None
    if any(a in model.paths[y] for y in conts):
        return None, "a containing path also stops at a"
    return None, "containing paths diverge at a"


def diagnose_endings(model: CptModel, p: Poset) -> EndingDiagnosis:
    out = []
    trivial = model.trivial_vertices()
    for m in proper_strong_modules(p):
        kind = module_kind(p, m)
        for a in sorted(trivial):
            zs = tuple(x for x in trivial[a] if x not in m)
            if not zs or not all(a in model.vertex_set(x) for x in m):
                continue
            ending = [x for x in m if a in model.paths[x]]
            if not ending:
                out.append(Ending(m, a, zs, INTERIOR))
                continue
            if len(ending) < len(m):
                out.append(Ending(m, a, zs, PARTIAL))
                continue
            shape = classify_module_ending(model, m, a)
            sided = "one" if isinstance(shape, OneSided) else "two"
            if sided == "two":
                consistent = kind == PARALLEL
            else:
                consistent = kind == PARALLEL or kind == SERIES
            free = reason = None
            if kind == SERIES and containers(p, m):
                b, reason = _free_neighbor(model, p, m, a)
                free = b is not None
            out.append(Ending(m, a, zs, COMPLETE, sided, free, reason, consistent))
    return EndingDiagnosis(tuple(out))


def _check_ending_module(model: CptModel, p: Poset, m, a: int) -> frozenset[str]:
    m = _check_module(p, m)
    if not any(model.is_trivial(x) and model.paths[x][0] == a and x not in m
               for x in model.paths):
        raise PreconditionFailed(f"vertex {a} carries no trivial path of an outside element")
    return m


def spread_complete_ending(model: CptModel, p: Poset, m, a: int) -> CptModel:
    """Move the endpoints of a module whose paths all end at ``a`` apart.

    Without a containing element a fresh branch of ``|M|`` vertices is hung
    at ``a``. A two-sided stable module has each side stretched across
    ``a`` onto new vertices inserted on the other side's edge. A free clique
    module is stretched onto new vertices inserted on the free edge. In all
    cases stretched endpoints are placed in containment order.
    """
    m = _check_ending_module(model, p, m, a)
    if not all(a in model.paths[x] for x in m):
        raise PreconditionFailed("not every module path ends at the vertex")
    conts = containers(p, m)
    kind = module_kind(p, m)
    if not conts:
        groups = _rank_groups(model, m)
        out, branch = add_branch(model, a, len(groups))
        moves = {x: _move_end(out, x, a, branch[i]) for i, grp in enumerate(groups) for x in grp}
        return _verify(out.with_paths(moves), p, "branch spreading")
    shape = classify_module_ending(model, m, a)
    if kind == PARALLEL and not isinstance(shape, OneSided):
        if any(model.is_trivial(x) for x in m) or len(shape.sides) != 2:
            raise PreconditionFailed("stable module is not split over exactly two sides")
        b, c = shape.sides
        side_b = [x for x in m if b in model.vertex_set(x)]
        side_c = [x for x in m if c in model.vertex_set(x)]
        gb, gc = _rank_groups(model, side_b), _rank_groups(model, side_c)
        out, on_c = subdivide_edge(model, (a, c), len(gb))
        out, on_b = subdivide_edge(out, (a, b), len(gc))
        moves = {x: _move_end(out, x, a, on_c[i]) for i, grp in enumerate(gb) for x in grp}
        moves.update({x: _move_end(out, x, a, on_b[i]) for i, grp in enumerate(gc) for x in grp})
        return _verify(out.with_paths(moves), p, "two-sided stable spreading")
    if kind == SERIES:
        b, reason = _free_neighbor(model, p, m, a)
        if b is None:
            raise BlockedClique(f"clique module {sorted(m)} is blocked at {a}: {reason}")
        groups = _rank_groups(model, m)
        out, new = subdivide_edge(model, (a, b), len(groups))
        moves = {x: _move_end(out, x, a, new[i]) for i, grp in enumerate(groups) for x in grp}
        return _verify(out.with_paths(moves), p, "free clique spreading")
    if kind == PARALLEL and len({model.vertex_set(x) for x in m}) == 1:
        return _verify(_spread_twins(model, p, sorted(m), a), p, "twin spreading")
    raise PreconditionFailed(f"no spreading construction for a one-sided {kind} module")


def _outward(model: CptModel, end: int, own: frozenset[int], ups: list[str]):
    """A neighbour of ``end`` off the path ``own`` used by every path in ``ups``."""
    for c in sorted(model.tree.neighbors(end) - own):
        if all(c in model.vertex_set(y) for y in ups):
            return c
    return None


def _spread_twins(model: CptModel, p: Poset, twins: list[str], a: int) -> CptModel:
    """Pull apart module members that share one path ``v .. a``.

    Both ends are pushed outward, ``a`` onto new vertices ``c_1..`` and
    ``v`` onto new vertices ``d_1..``; the i-th twin runs from
    ``d_{k-i}`` to ``c_{i-1}`` (with ``c_0 = a`` and ``d_0 = v``), so the
    twins overlap pairwise and all still cover the old path.
    """
    k = len(twins)
    x0 = twins[0]
    own = model.vertex_set(x0)
    u, v = model.paths[x0]
    far = v if u == a else u
    ups = [y for y in model.paths if own < model.vertex_set(y)]
    out = model
    ends = {}
    for end in (a, far):
        c = _outward(out, end, own, ups)
        if c is not None:
            out, new = subdivide_edge(out, (end, c), k - 1)
        elif not ups:
            out, new = add_branch(out, end, k - 1)
        else:
            raise PreconditionFailed(f"twin paths cannot be stretched beyond {end}")
        ends[end] = [end] + new
    moves = {x: (ends[far][k - 1 - i], ends[a][i]) for i, x in enumerate(twins)}
    return out.with_paths(moves)


def _extend_at(model: CptModel, t: int, ending: list[str]) -> CptModel:
    """Stretch the paths in ``ending`` (all ending at ``t``) past ``t``.

    Paths are handled per side of ``t`` they arrive from. Each side group is
    moved onto new vertices inserted on an edge ``t-c`` that every other
    path strictly containing one of them already uses, in containment order.
    """
    if any(model.is_trivial(x) for x in ending):
        raise PreconditionFailed("a trivial path cannot be stretched")
    left = list(ending)
    while left:
        s = min(_side(model, x, t) for x in left)
        group = [x for x in left if _side(model, x, t) == s]
        sup = [y for y in model.paths if y not in group
               and any(model.vertex_set(x) < model.vertex_set(y) for x in group)]
        for c in sorted(model.tree.neighbors(t) - {s}):
            if all(c in model.vertex_set(y) for y in sup):
                break
        else:
            raise PreconditionFailed(f"no edge at {t} to stretch the ending paths onto")
        groups = _rank_groups(model, group)
        model, new = subdivide_edge(model, (t, c), len(groups))
        model = model.with_paths({x: _move_end(model, x, t, new[i])
                                  for i, grp in enumerate(groups) for x in grp})
        left = [x for x in left if x not in group]
    return model


def _segment_ends(model: CptModel, verts: frozenset[int]) -> tuple[int, int]:
    ends = [v for v in verts if len(model.tree.neighbors(v) & verts) <= 1]
    return (ends[0], ends[0]) if len(ends) == 1 else (min(ends), max(ends))


def fix_partial_ending(model: CptModel, p: Poset, m, z: str) -> CptModel:
    """Push module paths off the trivial path of ``z`` when only some end there.

    Let ``I`` be the common part of the module's paths, ``a`` the vertex of
    ``z`` and ``b`` the other end of ``I``. Without a containing element
    the module is re-laid as an interval model whose left ends sit on a new
    branch at ``b`` and right ends on a new branch at ``a``. Otherwise the
    paths ending at ``a`` (and at ``b`` when ``b`` also carries a trivial
    outside path) are stretched onto new vertices of the next edge outward.
    """
    m = frozenset(m)
    if z in m:
        raise PreconditionFailed("z must lie outside the module")
    a = _trivial_at(model, z)
    m = _check_ending_module(model, p, m, a)
    if not all(a in model.vertex_set(x) for x in m):
        raise PreconditionFailed("module paths do not all pass through the trivial vertex")
    ending = [x for x in m if a in model.paths[x]]
    if not ending or len(ending) == len(m):
        raise PreconditionFailed("not a partial ending")
    common = frozenset.intersection(*(model.vertex_set(x) for x in m))
    e1, e2 = _segment_ends(model, common)
    b = e2 if e1 == a else e1
    if not containers(p, m):
        r = ci_recognize(induced_subposet(p, m))
        if not r:
            raise PreconditionFailed("module is not CI")
        ivs = ci_model_from_realizer(r).intervals
        out, at_b = add_branch(model, b, len(m))
        out, at_a = add_branch(out, a, len(m))
        moves = {x: (at_b[-l // 2 - 1], at_a[rr // 2 - 1]) for x, (l, rr) in ivs.items()}
        return _verify(out.with_paths(moves), p, "partial ending re-layout")
    out = _extend_at(model, a, ending)
    outside_trivial_at_b = any(out.is_trivial(y) and out.paths[y][0] == b and y not in m
                               for y in out.paths)
    if b != a and outside_trivial_at_b:
        at_b = [x for x in m if b in out.paths[x]]
        if 0 < len(at_b) < len(m):
            out = _extend_at(out, b, at_b)
    return _verify(out, p, "partial ending stretch")


@dataclass(frozen=True)
class NormalizedModel:
    model: CptModel
    flagged: frozenset[frozenset[str]] = field(default_factory=frozenset)
    unresolved: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def is_flagged(self, m) -> bool:
        return frozenset(m) in self.flagged


def normalize(model: CptModel, p: Poset) -> NormalizedModel:
    """Rewrite ``model`` into a normalized model of ``p``.

    Trivial paths are first cleared from proper strong modules; then partial
    endings are fixed before complete endings are spread. Clique modules
    that cannot be spread are returned as flagged; any other module whose
    complete ending no construction covers is reported as unresolved.
    :class:`NoLocalRewrite` propagates when a stable module sits entirely on
    one vertex whose crossing paths cannot share an edge.
    """
    _verify(model, p, "input")
    model = eliminate_all_trivial_in_modules(model, p)
    blocked: set[frozenset[str]] = set()
    stuck: set[tuple[frozenset[str], int]] = set()
    limit = 4 * (len(p) + 1) ** 2
    for _ in range(limit):
        diag = diagnose_endings(model, p)
        partial = diag.of(PARTIAL)
        if partial:
            e = partial[0]
            try:
                model = fix_partial_ending(model, p, e.module, e.z[0])
            except PreconditionFailed as exc:
                raise NotDuallyCptSuspicion(f"partial ending of {sorted(e.module)}: {exc}") from exc
            continue
        todo = [e for e in diag.of(COMPLETE)
                if (e.module, e.a) not in blocked and (e.module, e.a) not in stuck]
        if not todo:
            break
        e = todo[0]
        if not e.consistent:
            raise NotDuallyCptSuspicion(
                f"{e.sided}-sided complete ending of {sorted(e.module)} contradicts its kind")
        try:
            model = spread_complete_ending(model, p, e.module, e.a)
        except BlockedClique:
            blocked.add((e.module, e.a))
        except PreconditionFailed:
            stuck.add((e.module, e.a))
    else:
        raise NotDuallyCptSuspicion("normalization did not reach a fixed point")
    final = diagnose_endings(model, p).of(COMPLETE)
    flagged = frozenset(e.module for e in final if module_kind(p, e.module) == SERIES)
    unresolved = frozenset(e.module for e in final) - flagged
    for m in flagged:
        if not induced_subposet(p, m).is_chain():
            raise NotDuallyCptSuspicion(f"blocked module {sorted(m)} is not a total order")
    return NormalizedModel(model, flagged, unresolved)
