import pytest

from cptorders.ci import (CiModel, CompressedCiModel, Realizer, brute_force_realizer,
                          ci_model_from_realizer, ci_recognize, ci_to_cpt, compress_ci_model,
                          linear_extensions)
from cptorders.cpt import realizes
from cptorders.errors import MalformedCiModel
from cptorders.modular import maximal_modular_partition, quotient
from cptorders.oracle import enumerate_posets
from cptorders.poset import (comparability_graph, dual, induced_subposet, make_poset,
                             transitive_orientations)

from fixtures import antichain, chain, p4, s3


def test_s3_is_not_ci():
    assert not ci_recognize(s3()[0])
    assert brute_force_realizer(s3()[0]) is None


def test_p4_realizer():
    r = ci_recognize(p4())
    assert isinstance(r, Realizer)
    assert r.poset() == p4()


def test_antichain_realizer_reverses():
    r = ci_recognize(antichain("a", "b", "c"))
    assert r.l2 == tuple(reversed(r.l1))


def test_tie_break_is_deterministic():
    assert ci_recognize(p4()) == ci_recognize(p4())


def test_linear_extensions_count():
    assert len(list(linear_extensions(antichain("a", "b", "c")))) == 6
    assert len(list(linear_extensions(chain("a", "b", "c")))) == 1


def test_model_from_realizer_has_even_endpoints():
    m = ci_model_from_realizer(ci_recognize(p4()))
    m.validate()
    assert all(v % 2 == 0 for iv in m.intervals.values() for v in iv)
    assert m.poset() == p4()


def test_validate_rejects_shared_endpoints():
    with pytest.raises(MalformedCiModel):
        CiModel({"a": (0, 2), "b": (0, 4)}).validate()
    with pytest.raises(MalformedCiModel):
        CiModel({"a": (2, 2)}).validate()


def test_compress_rescales_when_core_misses_zero():
    m = CiModel({"a": (2, 10), "b": (4, 12)})
    cm = compress_ci_model(m)
    cm.validate()
    assert cm.model.poset() == m.poset()


def test_compressed_validate_catches_core_endpoint():
    m = CiModel({"a": (-4, 4), "b": (-1, 2)})
    with pytest.raises(MalformedCiModel):
        CompressedCiModel(m, -4, -1, 1, 4).validate()


def test_ci_to_cpt_on_p4():
    model = ci_to_cpt(ci_model_from_realizer(ci_recognize(p4())))
    assert realizes(model, p4()).ok
    assert all(model.tree.degree(v) <= 2 for v in model.tree.vertices)


def test_ci_to_cpt_single_element():
    model = ci_to_cpt(ci_model_from_realizer(ci_recognize(antichain("a"))))
    assert not model.is_trivial("a")


@pytest.mark.parametrize("n", range(1, 6))
def test_recognition_matches_brute_force(n):
    for p in enumerate_posets(n):
        r = ci_recognize(p)
        assert bool(r) == (brute_force_realizer(p) is not None)
        if r:
            assert r.poset() == p
            cm = compress_ci_model(ci_model_from_realizer(r))
            cm.validate()
            assert cm.model.poset() == p


@pytest.mark.parametrize("n", range(1, 7))
def test_ci_is_invariant_under_orientation(n):
    for p in enumerate_posets(n):
        want = bool(ci_recognize(p))
        assert bool(ci_recognize(dual(p))) == want
        for q in transitive_orientations(comparability_graph(p)):
            assert bool(ci_recognize(q)) == want


@pytest.mark.parametrize("n", range(2, 7))
def test_ci_iff_quotient_and_modules_ci(n):
    for p in enumerate_posets(n):
        part = maximal_modular_partition(p)
        if len(part.parts) == len(p):
            continue
        parts_ci = all(ci_recognize(induced_subposet(p, q)) for q in part.parts)
        assert bool(ci_recognize(p)) == (parts_ci and bool(ci_recognize(quotient(p, part))))


def test_chain_of_two_realizer():
    p = make_poset("ab", [("a", "b")])
    assert ci_recognize(p).poset() == p
