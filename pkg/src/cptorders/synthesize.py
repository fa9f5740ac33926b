"""CPT models for every poset associated to a dually-CPT poset.

The pipeline keeps one path per maximal strong module of a normalized
model, then substitutes each module back: an interval model laid across
the representative's path for ordinary modules, a fan of nested paths for
blocked clique modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .ci import CompressedCiModel, ci_model_from_realizer, ci_recognize, ci_to_cpt, compress_ci_model
from .cpt import CptModel, HostTree, add_branch, realizes, subdivide_edge
from .errors import (EndsOnTrivialPath, GroundSetMismatch, NotAssociated, NotDuallyCptSuspicion,
                     NotFlagged, PathTooShort, PreconditionFailed, TrivialPath)
from .modular import ModularPartition, maximal_modular_partition, quotient, representative
from .normalize import NormalizedModel, normalize
from .poset import Poset, comparability_graph, dual, induced_subposet, is_associated


@dataclass(frozen=True)
class QuotientModel:
    model: CptModel
    parts: Mapping[str, frozenset[str]]
    flagged: frozenset[str] = field(default_factory=frozenset)


def quotient_model(normalized: NormalizedModel, p: Poset, partition: ModularPartition) -> QuotientModel:
    """Keep the path of the least element of every part."""
    parts = {representative(q): frozenset(q) for q in partition.parts}
    model = normalized.model.restrict(parts)
    h = quotient(p, partition)
    report = realizes(model, h)
    if not report.ok:
        raise NotDuallyCptSuspicion(f"quotient restriction failed:\n{report.describe()}")
    flagged = frozenset(v for v, q in parts.items() if normalized.is_flagged(q))
    return QuotientModel(model, parts, flagged)


def ensure_min_path_length(model: CptModel, v0: str, min_vertices: int = 4) -> CptModel:
    """Subdivide the first edge of ``v0``'s path until it spans enough vertices."""
    verts = model.vertex_list(v0)
    if len(verts) < 2:
        raise TrivialPath(v0)
    missing = min_vertices - len(verts)
    if missing <= 0:
        return model
    out, _ = subdivide_edge(model, (verts[0], verts[1]), missing)
    return out


def _inside_touching(model: CptModel, v0: str, end: int) -> list[str]:
    own = model.vertex_set(v0)
    return [y for y in model.paths
            if y != v0 and end in model.vertex_set(y) and model.vertex_set(y) < own]


def _trivial_on(model: CptModel, v0: str, end: int) -> list[str]:
    return [y for y in model.paths if y != v0 and model.paths[y] == (end, end)]


def extend_outward(model: CptModel, v0: str, end: int) -> CptModel:
    """Move the endpoint ``end`` of ``v0`` one step away from its path.

    A neighbour ``y`` of ``end`` outside the path that every strict
    superset of ``W_v0`` uses is chosen and the edge ``end-y`` subdivided;
    without any containing path a fresh leaf is attached instead.
    """
    own = model.vertex_set(v0)
    ups = [y for y in model.paths if y != v0 and own < model.vertex_set(y)]
    twins = [y for y in model.paths if y != v0 and model.vertex_set(y) == own]
    if twins:
        raise PreconditionFailed(f"{v0} shares its path with {sorted(twins)}")
    for y in sorted(model.tree.neighbors(end) - own):
        if all(y in model.vertex_set(u) for u in ups):
            out, (new,) = subdivide_edge(model, (end, y), 1)
            break
    else:
        if ups:
            raise PreconditionFailed(f"no room to extend {v0} beyond vertex {end}")
        out, (new,) = add_branch(model, end, 1)
    u, v = model.paths[v0]
    return out.with_paths({v0: (new, v) if u == end else (u, new)})


def substitute_ci(model_h: CptModel, v0: str, n_model: CompressedCiModel) -> CptModel:
    """Replace the path ``x_1 .. x_k`` of ``v0`` by an interval model.

    ``x_1 x_2`` and ``x_{k-1} x_k`` are each subdivided ``n-1`` times. The
    ``n`` left interval bounds go, in order, to ``x_1`` and the new vertices
    after it; the ``n`` right bounds to the new vertices before ``x_k`` and
    ``x_k`` itself. The core ``c-d`` of the interval model is thereby
    stretched over ``x_2 .. x_{k-1}``, which every interval contains.
    A path identical to ``v0``'s would end up containing every interval,
    so ``v0`` may have no twin.
    """
    n_model.validate()
    verts = model_h.vertex_list(v0)
    if len(verts) < 4:
        raise PathTooShort(f"path of {v0} has {len(verts)} vertices, need 4")
    x1, xk = verts[0], verts[-1]
    own = model_h.vertex_set(v0)
    twins = sorted(y for y in model_h.paths if y != v0 and model_h.vertex_set(y) == own)
    if twins:
        raise PreconditionFailed(f"{v0} shares its path with {twins}")
    for end in (x1, xk):
        if _trivial_on(model_h, v0, end):
            raise EndsOnTrivialPath(f"path of {v0} ends on a trivial path at {end}")
        if _inside_touching(model_h, v0, end):
            raise PreconditionFailed(f"a path inside {v0} reaches its endpoint {end}")
    ivs = n_model.model.intervals
    clash = set(ivs) & (set(model_h.paths) - {v0})
    if clash:
        raise PreconditionFailed(f"names already used: {sorted(clash)}")
    n = len(ivs)
    out, left_new, right_new = model_h, [], []
    if n > 1:
        out, left_new = subdivide_edge(out, (x1, verts[1]), n - 1)
        out, right_new = subdivide_edge(out, (verts[-2], xk), n - 1)
    lefts = sorted(l for l, _ in ivs.values())
    rights = sorted(r for _, r in ivs.values())
    at_left = dict(zip(lefts, [x1] + left_new))
    at_right = dict(zip(rights, right_new + [xk]))
    paths = {x: uv for x, uv in out.paths.items() if x != v0}
    paths.update({x: (at_left[l], at_right[r]) for x, (l, r) in ivs.items()})
    return CptModel(out.tree, paths)


def substitute_blocked_clique(model_h: CptModel, v0: str, chain_order: Sequence[str],
                              flagged: Iterable[str]) -> CptModel:
    """Replace ``v0`` by nested paths sharing its blocked endpoint ``a``.

    ``chain_order`` lists the chain from bottom to top. With ``b`` the other
    endpoint and ``c`` its neighbour toward ``a``, the edge ``b-c`` is
    subdivided ``n-1`` times; the top element keeps ``a-b`` and each lower
    one stops one new vertex earlier.
    """
    if v0 not in set(flagged):
        raise NotFlagged(v0)
    u, v = model_h.paths[v0]
    if u == v:
        raise TrivialPath(v0)
    ends = [e for e in (u, v) if _trivial_on(model_h, v0, e)]
    if not ends:
        raise PreconditionFailed(f"path of {v0} does not end on a trivial path")
    a = ends[0]
    b = v if a == u else u
    if _inside_touching(model_h, v0, b):
        raise PreconditionFailed(f"a path inside {v0} reaches its endpoint {b}")
    chain = list(chain_order)
    clash = set(chain) & (set(model_h.paths) - {v0})
    if clash:
        raise PreconditionFailed(f"names already used: {sorted(clash)}")
    c = model_h.tree.step(b, a)
    out, new = subdivide_edge(model_h, (b, c), len(chain) - 1)
    stops = [b] + new  # top element stops at b
    paths = {x: uv for x, uv in out.paths.items() if x != v0}
    for stop, x in zip(stops, reversed(chain)):
        paths[x] = (a, stop)
    return CptModel(out.tree, paths)


def _check(model: CptModel, p: Poset, what: str) -> CptModel:
    report = realizes(model, p)
    if not report.ok:
        raise NotDuallyCptSuspicion(f"{what}:\n{report.describe()}")
    return model


def join_models(models: Sequence[CptModel]) -> CptModel:
    """Hang the host trees of independent models off one fresh spine vertex."""
    adj: dict[int, set[int]] = {0: set()}
    paths: dict[str, tuple[int, int]] = {}
    offset = 1
    for m in models:
        shift = offset - min(m.tree.vertices)
        for v in m.tree.vertices:
            adj[v + shift] = {w + shift for w in m.tree.neighbors(v)}
        root = min(m.tree.vertices) + shift
        adj[0].add(root)
        adj[root].add(0)
        paths.update({x: (u + shift, v + shift) for x, (u, v) in m.paths.items()})
        offset = max(adj) + 1
    return CptModel(HostTree(adj), paths)


def _prepare(model: CptModel, v0: str, protect: set[int]) -> CptModel:
    """Push the endpoints of ``v0`` outward until no inner path reaches them."""
    for _ in range(2):
        for end in set(model.paths[v0]) - protect:
            if _inside_touching(model, v0, end) or _trivial_on(model, v0, end):
                model = extend_outward(model, v0, end)
    return model


def _ci_model(q: Poset) -> CptModel:
    r = ci_recognize(q)
    if not r:
        raise NotDuallyCptSuspicion("a poset expected to be CI has no realizer")
    return ci_to_cpt(ci_model_from_realizer(r))


def build_associated_representation(p: Poset, model_p: CptModel, model_pd: CptModel | None,
                                    q: Poset, budget=None) -> CptModel:
    """A CPT model of ``q`` from models of ``p`` and its dual."""
    try:
        if not is_associated(p, q):
            raise NotAssociated("posets have different comparability graphs")
    except GroundSetMismatch as exc:
        raise NotAssociated(str(exc)) from exc
    _check(model_p, p, "model of p does not realize p")
    if model_pd is None:
        from .oracle import ExhaustedNone, brute_force_cpt
        found = brute_force_cpt(dual(p), budget)
        if isinstance(found, ExhaustedNone):
            raise NotDuallyCptSuspicion("the dual has no CPT model")
        model_pd = found
    pd = dual(p)
    _check(model_pd, pd, "model of the dual does not realize it")

    comps = comparability_graph(p).components()
    if len(comps) > 1:
        sub = [build_associated_representation(
            induced_subposet(p, c), model_p.restrict(c), model_pd.restrict(c),
            induced_subposet(q, c)) for c in sorted(comps, key=min)]
        return _check(join_models(sub), q, "joined component models")
    if len(p) == 1:
        (x,) = p.elements
        return CptModel(HostTree({0: ()}), {x: (0, 0)})

    partition = maximal_modular_partition(p)
    h = quotient(p, partition)
    if ci_recognize(h):
        return _check(_ci_model(q), q, "interval model of q")
    k = quotient(q, partition)
    if k == h:
        base, base_model = p, model_p
    elif k == dual(h):
        base, base_model = pd, model_pd
    else:
        raise NotAssociated("quotient of q is neither the quotient of p nor its dual")

    qm = quotient_model(normalize(base_model, base), base, partition)
    model = qm.model
    for v, part in sorted(qm.parts.items()):
        if len(part) == 1:
            continue
        sub = induced_subposet(q, part)
        if v in qm.flagged:
            a = [e for e in model.paths[v] if _trivial_on(model, v, e)]
            model = _prepare(model, v, set(a[:1]))
            model = substitute_blocked_clique(model, v, sub.linear_order(), qm.flagged)
            continue
        r = ci_recognize(sub)
        if not r:
            raise NotDuallyCptSuspicion(f"module {sorted(part)} of q is not CI")
        cm = compress_ci_model(ci_model_from_realizer(r))
        model = _prepare(model, v, set())
        model = ensure_min_path_length(model, v)
        model = substitute_ci(model, v, cm)
    return _check(model, q, "synthesized model")
