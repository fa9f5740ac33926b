import pytest

import fixtures as F
from cptorders.cpt import CptModel, model_from_edges, realizes
from cptorders.errors import (BlockedClique, NoLocalRewrite, NotDuallyCptSuspicion,
                              PreconditionFailed)
from cptorders.modular import proper_strong_modules, strong_modules
from cptorders.normalize import (COMPLETE, INTERIOR, PARTIAL, diagnose_endings,
                                 eliminate_all_trivial_in_modules, eliminate_trivial_clique,
                                 eliminate_trivial_prime, eliminate_trivial_stable,
                                 fix_partial_ending, normalize, spread_complete_ending)
from cptorders.oracle import brute_force_cpt, enumerate_posets
from cptorders.poset import induced_subposet, make_poset

from rewrites import drive


def _grew(before, after):
    return len(after.tree) - len(before.tree)


# trivial-path eliminations -------------------------------------------------

def test_stable_two_members_overlap():
    m, p, mod = F.stable_twins()
    out = eliminate_trivial_stable(m, p, mod)
    assert realizes(out, p).ok
    assert _grew(m, out) == 3
    s1, s2 = out.vertex_set("u1"), out.vertex_set("u2")
    assert s1 & s2 and not s1 <= s2 and not s2 <= s1


def test_stable_three_members():
    m, p, mod = F.stable_triple()
    out = eliminate_trivial_stable(m, p, mod)
    assert realizes(out, p).ok
    assert _grew(m, out) == 5
    assert not any(out.is_trivial(u) for u in mod)


def test_stable_split_vertex():
    # both members on vertex 0; the containers leave 0 through 1-2 and 3-4
    m = model_from_edges([(0, 1), (0, 2), (0, 3), (0, 4)],
                         {"u1": (0, 0), "u2": (0, 0), "x": (1, 2), "y": (3, 4),
                          "w": (1, 1)})
    p = m.poset()
    out = eliminate_trivial_stable(m, p, frozenset({"u1", "u2"}))
    assert realizes(out, p).ok
    assert not out.is_trivial("u1")


def test_stable_without_local_rewrite():
    # three containers pairwise crossing at 0: no edge at 0 lies on all of them
    m = model_from_edges([(0, 1), (0, 2), (0, 3)],
                         {"u1": (0, 0), "u2": (0, 0), "x": (1, 2), "y": (2, 3), "w": (1, 3)})
    p = m.poset()
    with pytest.raises(NoLocalRewrite):
        eliminate_trivial_stable(m, p, frozenset({"u1", "u2"}))
    with pytest.raises(NoLocalRewrite):
        normalize(m, p)
    # the order itself is fine: a different host has no trivial module paths
    other = model_from_edges(
        [(2, 3), (3, 4), (2, 10), (2, 11), (2, 12), (4, 20), (4, 21), (4, 22)],
        {"u1": (2, 3), "u2": (3, 4), "x": (10, 20), "y": (11, 21), "w": (12, 22)})
    assert realizes(other, p).ok


def test_stable_rejects_wrong_kind():
    m, p, mod, _ = F.clique_interior()
    with pytest.raises(PreconditionFailed):
        eliminate_trivial_stable(m, p, mod)


def test_clique_interior():
    m, p, mod, z = F.clique_interior()
    out = eliminate_trivial_clique(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 1
    assert len(out.vertex_list(z)) == 2


def test_clique_one_sided():
    m, p, mod, z = F.clique_one_sided()
    out = eliminate_trivial_clique(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 1
    assert 1 in out.paths[z]


def test_clique_two_sided():
    m, p, mod, z = F.clique_two_sided()
    out = eliminate_trivial_clique(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 2
    assert 2 not in out.paths[z] and 2 in out.vertex_set(z)


def test_clique_requires_trivial_member():
    m, p, mod, _ = F.clique_interior()
    with pytest.raises(PreconditionFailed):
        eliminate_trivial_clique(m, p, mod, "q")


def test_prime_interior():
    m, p, mod, z = F.prime_interior()
    out = eliminate_trivial_prime(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 1


def test_prime_both_bounds():
    m, p, mod, z = F.prime_both_bounds()
    out = eliminate_trivial_prime(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 4
    assert 4 not in out.paths[z]


def test_prime_one_bound():
    m, p, mod, z = F.prime_one_bound()
    out = eliminate_trivial_prime(m, p, mod, z)
    assert realizes(out, p).ok
    assert _grew(m, out) == 1
    assert 4 in out.paths[z]


@pytest.mark.parametrize("name", ["stable_twins", "clique_interior", "clique_two_sided",
                                  "prime_interior", "prime_both_bounds", "prime_one_bound"])
def test_eliminate_all_on_fixtures(name):
    fx = getattr(F, name)()
    m, p = fx[0], fx[1]
    out = eliminate_all_trivial_in_modules(m, p)
    assert realizes(out, p).ok
    assert not any(out.is_trivial(x) for mod in proper_strong_modules(p) for x in mod)


def test_eliminate_all_leaves_clean_model_alone():
    m = F.line({"a": (0, 2), "b": (1, 3), "c": (4, 5)})
    assert eliminate_all_trivial_in_modules(m, m.poset()) == m


# endings -----------------------------------------------------------------------

def _entry(m, p, mod):
    (e,) = [e for e in diagnose_endings(m, p) if e.module == mod]
    return e


def test_diagnose_two_sided_is_stable():
    m, p, mod, _ = F.ending_two_sided()
    e = _entry(m, p, mod)
    assert (e.status, e.sided, e.consistent) == (COMPLETE, "two", True)


def test_diagnose_free_and_blocked():
    m, p, mod, _ = F.ending_free_clique()
    assert _entry(m, p, mod).free is True
    m, p, mod, _ = F.ending_blocked_clique()
    e = _entry(m, p, mod)
    assert e.free is False
    assert e.reason == "containing paths diverge at a"


def test_diagnose_container_stopping_at_a():
    # t contains the module and also ends at 5; r only separates {1, z} from the module
    m = F.line({"z": (5, 5), "m1": (2, 5), "m2": (1, 5), "1": (2, 3), "t": (0, 5),
                "q": (0, 0), "r": (5, 7)})
    p = m.poset()
    mod = frozenset({"m1", "m2"})
    e = _entry(m, p, mod)
    assert (e.status, e.free) == (COMPLETE, False)
    assert e.reason == "a containing path also stops at a"
    assert normalize(m, p).flagged == {mod}


def test_diagnose_partial_and_interior():
    m, p, mod, _ = F.partial_no_container()
    assert {e.status for e in diagnose_endings(m, p) if e.module == mod} == {PARTIAL}
    m = F.line({"z": (3, 3), "a": (1, 5), "b": (2, 6), "s": (8, 8)})
    p = m.poset()
    statuses = {e.status for e in diagnose_endings(m, p)}
    assert statuses == {INTERIOR}


@pytest.mark.parametrize("name", ["ending_no_container", "ending_two_sided", "ending_free_clique"])
def test_spread(name):
    m, p, mod, a = getattr(F, name)()
    out = spread_complete_ending(m, p, mod, a)
    assert realizes(out, p).ok
    assert not any(e.module == mod and e.a == a for e in diagnose_endings(out, p).of(COMPLETE))


def test_spread_without_container_adds_branch():
    m, p, mod, a = F.ending_no_container()
    out = spread_complete_ending(m, p, mod, a)
    assert _grew(m, out) >= len(mod)


def test_spread_blocked_clique():
    m, p, mod, a = F.ending_blocked_clique()
    with pytest.raises(BlockedClique):
        spread_complete_ending(m, p, mod, a)


@pytest.mark.parametrize("name", ["partial_no_container", "partial_with_container"])
def test_partial(name):
    m, p, mod, z = getattr(F, name)()
    a = m.paths[z][0]
    out = fix_partial_ending(m, p, mod, z)
    assert realizes(out, p).ok
    assert not any(a in out.paths[x] for x in mod)


def test_partial_rejects_complete_ending():
    m, p, mod, _ = F.ending_two_sided()
    with pytest.raises(PreconditionFailed):
        fix_partial_ending(m, p, mod, "z")


# normalize -----------------------------------------------------------------

ALL = ["stable_twins", "stable_triple", "clique_interior", "clique_one_sided",
       "clique_two_sided", "prime_interior", "prime_both_bounds", "prime_one_bound",
       "ending_no_container", "ending_two_sided", "ending_free_clique",
       "ending_blocked_clique", "partial_no_container", "partial_with_container"]


@pytest.mark.parametrize("name", ALL)
def test_normalize_fixture(name):
    fx = getattr(F, name)()
    m, p = fx[0], fx[1]
    out = normalize(m, p)
    assert realizes(out.model, p).ok
    assert not out.unresolved
    want = {frozenset({"m1", "m2"})} if name == "ending_blocked_clique" else set()
    assert set(out.flagged) == want


def test_normalize_is_deterministic():
    m, p, _, _ = F.partial_with_container()
    assert normalize(m, p) == normalize(m, p)


def test_normalize_rejects_wrong_model():
    m = F.line({"a": (0, 1), "b": (0, 2)})
    with pytest.raises(NotDuallyCptSuspicion):
        normalize(m, make_poset("ab"))


def test_flagged_modules_are_chains_without_inner_modules():
    m, p, _, _ = F.ending_blocked_clique()
    for mod in normalize(m, p).flagged:
        sub = induced_subposet(p, mod)
        assert sub.is_chain()
        assert strong_modules(sub) == {frozenset({x}) for x in mod} | {frozenset(mod)}


@pytest.mark.parametrize("n", range(2, 7))
def test_diagnosis_consistent_on_oracle_models(n):
    for p in enumerate_posets(n):
        m = brute_force_cpt(p)
        assert isinstance(m, CptModel)
        clean = eliminate_all_trivial_in_modules(m, p)
        for model in (m, clean):
            assert all(e.consistent for e in diagnose_endings(model, p))


def test_random_rewrites_preserve_order():
    h = drive(30, seed=11)
    assert h.failures == []
    assert h.done(30)
