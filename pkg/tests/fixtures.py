"""Hand-built models used across the test suite.

Most fixtures live on a path-shaped host whose vertices are the integer
coordinates ``0..hi``; ``line(...)`` builds them from intervals.
"""
from __future__ import annotations

from cptorders.ci import ci_model_from_realizer, ci_recognize, compress_ci_model
from cptorders.cpt import CptModel, HostTree, model_from_edges, realizes
from cptorders.modular import substitute
from cptorders.poset import Poset, dual, make_poset
from cptorders.synthesize import ensure_min_path_length, substitute_ci


def line(intervals: dict[str, tuple[int, int]], extra_edges=(), hi: int | None = None) -> CptModel:
    """Path host ``0 - 1 - .. - hi`` plus optional side edges."""
    if hi is None:
        hi = max(max(iv) for iv in intervals.values())
    edges = [(i, i + 1) for i in range(hi)] + list(extra_edges)
    return model_from_edges(edges, intervals, vertices=range(hi + 1))


def fixture(model: CptModel) -> tuple[CptModel, Poset]:
    return model, model.poset()


# elimination fixtures ------------------------------------------------------

def stable_twins():
    """Two trivial members of a stable module on one vertex (k = 2)."""
    m = line({"y": (0, 2), "u1": (1, 1), "u2": (1, 1), "w": (3, 3)})
    return m, m.poset(), frozenset({"u1", "u2"})


def stable_triple():
    m = line({"y": (0, 2), "u1": (1, 1), "u2": (1, 1), "u3": (1, 1), "w": (3, 3)})
    return m, m.poset(), frozenset({"u1", "u2", "u3"})


def clique_interior():
    """z inside every other member of the chain z < q < r."""
    m = line({"z": (1, 1), "q": (0, 2), "r": (0, 3), "t": (0, 5), "s": (5, 5)})
    return m, m.poset(), frozenset({"z", "q", "r"}), "z"


def clique_one_sided():
    m = line({"z": (1, 1), "q": (1, 2), "r": (1, 3), "t": (0, 5), "s": (4, 4)})
    return m, m.poset(), frozenset({"z", "q", "r"}), "z"


def clique_two_sided():
    """z below two incomparable members arriving at its vertex from both sides."""
    m = line({"z": (2, 2), "q1": (1, 2), "q2": (2, 3), "t": (0, 4), "s": (4, 4)})
    return m, m.poset(), frozenset({"z", "q1", "q2"}), "z"


def _prime(ivs):
    m = line(ivs)
    return m, m.poset(), frozenset({"1", "2", "3", "4"}), "3"


def prime_interior():
    return _prime({"1": (6, 14), "2": (2, 16), "3": (4, 4), "4": (0, 10),
                   "t": (0, 18), "s": (18, 18)})


def prime_both_bounds():
    return _prime({"1": (1, 3), "2": (0, 4), "3": (4, 4), "4": (4, 8),
                   "t": (0, 9), "s": (9, 9)})


def prime_one_bound():
    return _prime({"1": (0, 2), "2": (0, 4), "3": (4, 4), "4": (3, 8),
                   "t": (0, 9), "s": (9, 9)})


# ending fixtures -----------------------------------------------------------

def ending_no_container():
    m = line({"z": (4, 4), "m1": (2, 4), "m2": (4, 6), "s": (8, 8)})
    return m, m.poset(), frozenset({"m1", "m2"}), 4


def ending_two_sided():
    m = line({"z": (4, 4), "m1": (2, 4), "m2": (4, 6), "t": (1, 7), "s": (8, 8)})
    return m, m.poset(), frozenset({"m1", "m2"}), 4


def ending_free_clique():
    m = line({"z": (5, 5), "m1": (2, 5), "m2": (1, 5), "1": (2, 3), "4": (5, 8),
              "t": (0, 9)})
    return m, m.poset(), frozenset({"m1", "m2"}), 5


def ending_blocked_clique():
    """Two containing paths leave the module's end vertex on different edges."""
    m = line({"z": (5, 5), "m1": (2, 5), "m2": (1, 5), "1": (2, 3), "4": (5, 8),
              "t1": (0, 9), "t2": (0, 10)}, extra_edges=[(5, 10)], hi=9)
    return m, m.poset(), frozenset({"m1", "m2"}), 5


def partial_no_container():
    """Elements 1 and 3 end at b = 3, elements 2 and 3 end at a = 6."""
    m = line({"1": (3, 8), "2": (1, 6), "3": (3, 6), "4": (0, 7),
              "z": (6, 6), "y": (3, 3), "C": (6, 10)})
    return m, m.poset(), frozenset({"1", "2", "3", "4"}), "z"


def partial_with_container():
    m = line({"1": (3, 8), "2": (1, 6), "3": (3, 6), "4": (0, 7),
              "z": (6, 6), "y": (3, 3), "C": (6, 11), "x": (0, 9),
              "w": (8, 9)})
    return m, m.poset(), frozenset({"1", "2", "3", "4"}), "z"


# S3 and composed posets ------------------------------------------------------

def _star(legs: int = 3, length: int = 3):
    edges = []
    for i in range(legs):
        prev = 0
        for j in range(1, length + 1):
            v = i * length + j
            edges.append((prev, v))
            prev = v
    return edges


def _leg(i: int, j: int, length: int = 3) -> int:
    return i * length + j


def s3():
    """The standard example of dimension three with models of it and its dual."""
    lo = [f"a{i}" for i in range(3)]
    hi = [f"b{i}" for i in range(3)]
    p = make_poset(lo + hi, [(lo[i], hi[j]) for i in range(3) for j in range(3) if i != j])
    edges = _star()
    paths = {}
    for i in range(3):
        paths[lo[i]] = (_leg(i, 1), _leg(i, 2))
        o1, o2 = [k for k in range(3) if k != i]
        paths[hi[i]] = (_leg(o1, 3), _leg(o2, 3))
    mp = model_from_edges(edges, paths)
    dpaths = {}
    for i in range(3):
        dpaths[hi[i]] = (_leg(i, 1), _leg(i, 2))
        o1, o2 = [k for k in range(3) if k != i]
        dpaths[lo[i]] = (_leg(o1, 3), _leg(o2, 3))
    mpd = model_from_edges(edges, dpaths)
    assert realizes(mp, p).ok and realizes(mpd, dual(p)).ok
    return p, mp, mpd


def s3_with_trivial_chain():
    """S3 with a0 replaced by a chain a0 < c0 whose bottom is a trivial path."""
    p0, mp0, mpd0 = s3()
    p = substitute(p0, "a0", make_poset(["a0", "c0"], [("a0", "c0")]))
    leaf = _leg(0, 3)
    mp = model_from_edges(_star(), {**mp0.paths, "a0": (leaf, leaf),
                                    "c0": (_leg(0, 1), leaf)})
    mpd = model_from_edges(_star(), {**mpd0.paths, "c0": (_leg(1, 2), _leg(2, 2))})
    assert realizes(mp, p).ok and realizes(mpd, dual(p)).ok
    return p, mp, mpd


def _sub_model(model: CptModel, v: str, h: Poset) -> CptModel:
    r = ci_recognize(h)
    cm = compress_ci_model(ci_model_from_realizer(r))
    return substitute_ci(ensure_min_path_length(model, v), v, cm)


def composed(replacements: dict[str, Poset]):
    """S3 with vertices replaced by CI posets, with models of it and its dual."""
    p, mp, mpd = s3()
    for v, h in sorted(replacements.items()):
        p = substitute(p, v, h)
        mp = _sub_model(mp, v, h)
        mpd = _sub_model(mpd, v, dual(h))
    assert realizes(mp, p).ok and realizes(mpd, dual(p)).ok
    return p, mp, mpd


def p4(names=("1", "2", "3", "4")) -> Poset:
    a, b, c, d = names
    return make_poset(names, [(a, b), (c, b), (c, d)])


def chain(*names) -> Poset:
    return make_poset(names, list(zip(names, names[1:])))


def antichain(*names) -> Poset:
    return make_poset(names)
