"""Random models and posets for property tests."""
from __future__ import annotations

import random

from cptorders.ci import ci_model_from_realizer, ci_recognize, compress_ci_model
from cptorders.cpt import CptModel, HostTree
from cptorders.synthesize import ensure_min_path_length


def random_tree(rng: random.Random, size: int) -> HostTree:
    adj = {0: set()}
    for v in range(1, size):
        u = rng.randrange(v)
        adj[v] = {u}
        adj[u].add(v)
    return HostTree(adj)


def random_model(rng: random.Random, n: int, size: int, trivial: float = 0.3) -> CptModel:
    tree = random_tree(rng, size)
    vs = tree.vertices
    paths = {}
    for i in range(n):
        u = rng.choice(vs)
        v = u if rng.random() < trivial else rng.choice(vs)
        paths[f"e{i}"] = (u, v)
    return CptModel(tree, paths)


def random_ci_model(rng: random.Random, lo: int = 4, hi: int = 8):
    """A random model whose poset is CI, hence dually-CPT."""
    while True:
        n = rng.randint(lo, hi)
        m = random_model(rng, n, rng.randint(2, 2 * n))
        p = m.poset()
        if ci_recognize(p):
            return m, p


def relation(model: CptModel, x: str, y: str) -> str:
    """``<``, ``>`` or ``|`` for the paths of ``x`` and ``y``."""
    sx, sy = model.vertex_set(x), model.vertex_set(y)
    if sx < sy:
        return "<"
    if sy < sx:
        return ">"
    return "|"


def uniform_outside(model: CptModel, inside, reference: CptModel, v0: str) -> list[str]:
    """Outside elements that do not relate to every member of ``inside`` the
    way they related to ``v0`` in ``reference``."""
    bad = []
    for y in model.paths:
        if y in inside:
            continue
        want = relation(reference, v0, y)
        if any(relation(model, x, y) != want for x in inside):
            bad.append(y)
    return bad


def random_substitution(rng: random.Random):
    """A host model with a chosen path and a compressed interval model with
    fresh names, or None when the drawn path cannot host a substitution."""
    n = rng.randint(2, 7)
    host = random_model(rng, n, rng.randint(2, 2 * n + 2))
    v0 = rng.choice(sorted(host.paths))
    if host.is_trivial(v0):
        return None
    host = ensure_min_path_length(host, v0)
    _, sub = random_ci_model(rng, 1, 6)
    sub = sub.relabel({x: "f" + x[1:] for x in sub.elements})
    cm = compress_ci_model(ci_model_from_realizer(ci_recognize(sub)))
    return host, v0, cm, sub
