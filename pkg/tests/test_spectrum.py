import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigzag_ideals.boolean import PrimePoint, enumerate_primes, is_prime_ideal
from zigzag_ideals.linalg import GF2, GF5
from zigzag_ideals.quiver import QuiverWindow, Representation, interval_rep, random_representation, support
from zigzag_ideals.spectrum import (
    PointTensorIdeal,
    SpcFiniteModel,
    clopen_check,
    closed_set_axioms_check,
    hausdorff_check,
    homeomorphism_check,
    membership,
    phi,
    prime_axioms_check,
    psi,
    spectrum_report,
    zariski_closed,
)

from conftest import windows


def test_membership_examples():
    w = QuiverWindow(0, 2, "RL")
    k1 = interval_rep(w, w.subset([1]))
    assert all(membership(Representation.zero(w), PointTensorIdeal(w, a)) for a in w.vertices)
    assert not membership(k1, PointTensorIdeal(w, 1))
    assert membership(k1, PointTensorIdeal(w, 0))
    with pytest.raises(ValueError):
        membership(k1, PointTensorIdeal(QuiverWindow(0, 1, "R"), 0))


def test_phi_examples():
    w = QuiverWindow(0, 2, "LR")
    for a in w.vertices:
        fam = phi(PointTensorIdeal(w, a))
        assert fam == PrimePoint(0, 2, a).family()
        assert is_prime_ideal(fam)
    one = QuiverWindow(4, 4, "")
    assert phi(PointTensorIdeal(one, 4)).to_json() == [[]]


def test_psi_inverts_phi():
    w = QuiverWindow(0, 3, "RRL")
    for q in enumerate_primes(0, 3, "exhaustive"):
        assert phi(psi(q, w)) == q
    for m in SpcFiniteModel(w).points:
        assert psi(phi(m), w) == m
    with pytest.raises(ValueError):
        psi(PrimePoint(0, 2, 0), w)


def test_zariski_examples():
    w = QuiverWindow(0, 2, "RR")
    model = SpcFiniteModel(w)
    assert zariski_closed([], model) == frozenset(model.points)
    assert zariski_closed([interval_rep(w, w.subset([1]))], model) == {model.point(1)}
    sample = [Representation.zero(w), interval_rep(w, w.full())]
    assert zariski_closed(sample, model) == frozenset()


def test_clopen_examples():
    w = QuiverWindow(0, 3, "RLL")
    model = SpcFiniteModel(w)
    assert clopen_check(Representation.zero(w), model)
    assert clopen_check(Representation.unit(w), model)


def test_hausdorff_examples():
    assert hausdorff_check(SpcFiniteModel(QuiverWindow(0, 0, "")))[0]
    ok, wit = hausdorff_check(SpcFiniteModel(QuiverWindow(0, 1, "R")))
    assert ok and wit[0]["pair"] == [0, 1] and wit[0]["separator"] == [1]
    w = QuiverWindow(0, 1, "R")
    model = SpcFiniteModel(w)
    z = zariski_closed([interval_rep(w, w.subset([0]))], model)
    assert z == {model.point(0)}
    assert frozenset(model.points) - z == zariski_closed([interval_rep(w, w.subset([1]))], model)


def test_homeomorphism_examples():
    assert homeomorphism_check(SpcFiniteModel(QuiverWindow(0, 0, "")))[0]
    ok, info = homeomorphism_check(SpcFiniteModel(QuiverWindow(0, 2, "RL")))
    assert ok and info["discrete"] and info["closed_sets"] == 8


def test_size_guards():
    big = QuiverWindow(0, 8, "R" * 8)
    with pytest.raises(ValueError):
        homeomorphism_check(SpcFiniteModel(big))
    with pytest.raises(ValueError):
        spectrum_report(big)


def test_spectrum_report_shape():
    r = spectrum_report(QuiverWindow(0, 2, "RL"))
    assert [p["point"] for p in r["points"]] == [0, 1, 2]
    assert r["hausdorff"] and r["homeomorphism"]
    assert len(r["closed_set_lattice"]) == 8


@given(windows(max_size=6), st.integers(0, 10_000))
def test_membership_is_support_test(w, seed):
    rng = np.random.default_rng(seed)
    v = random_representation(w, GF5, rng)
    k = interval_rep(w, support(v), GF5)
    for m in SpcFiniteModel(w, GF5).points:
        assert membership(v, m) == membership(k, m) == (m.a not in support(v))
        assert membership(v, m) == (support(v) in PrimePoint(w.lo, w.hi, m.a))


@given(windows(max_size=5), st.integers(0, 10_000))
def test_topology_properties(w, seed):
    model = SpcFiniteModel(w)
    rng = np.random.default_rng(seed)
    assert closed_set_axioms_check(model, trials=5, seed=rng)["ok"]
    assert clopen_check(random_representation(w, GF2, rng), model)


@given(windows(max_size=4), st.integers(0, 10_000))
def test_prime_axioms(w, seed):
    for m in SpcFiniteModel(w).points:
        assert prime_axioms_check(m, GF2, trials=20, seed=seed)["ok"]
