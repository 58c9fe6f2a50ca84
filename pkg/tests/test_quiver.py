import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigzag_ideals.barcode import Barcode, decompose, isomorphic
from zigzag_ideals.linalg import GF2, GF5, QQ, Matrix, rank
from zigzag_ideals.quiver import (
    InvalidMorphism,
    Morphism,
    QuiverWindow,
    Representation,
    cokernel,
    direct_sum,
    exactness_report,
    extension,
    interval_rep,
    is_epi,
    is_mono,
    kernel,
    kernel_rank_one,
    random_hom,
    random_representation,
    short_exact_report,
    support,
    tensor,
)

from conftest import FIELDS, fields, windows


def K(w, elems, field=GF2):
    return interval_rep(w, w.subset(elems), field)


# -- windows -----------------------------------------------------------------------


def test_window_sinks_sources():
    w = QuiverWindow(0, 2, "RL")
    assert w.sinks == [1] and w.sources == [0, 2]
    w = QuiverWindow(0, 4, "RRLL")
    assert w.sinks == [2] and w.sources == [0, 4]
    assert w.max_path_length == 2
    assert QuiverWindow(0, 0, "").sinks == []


def test_window_validation():
    with pytest.raises(ValueError):
        QuiverWindow(0, 3, "RR")
    with pytest.raises(ValueError):
        QuiverWindow(0, 2, "RX")
    with pytest.raises(ValueError):
        QuiverWindow(3, 1, "")


def test_window_json_roundtrip():
    w = QuiverWindow(-2, 3, "RLLRL")
    assert QuiverWindow.from_json(w.to_json()) == w


# -- interval representations and sums ------------------------------------------------


def test_interval_rep_examples():
    w = QuiverWindow(0, 2, "RR")
    assert K(w, []) == Representation.zero(w)
    full = K(w, [0, 1, 2])
    assert full.dims == (1, 1, 1)
    assert all(m == Matrix.identity(GF2, 1) for m in full.maps)
    gap = K(w, [0, 2])
    assert gap.dims == (1, 0, 1)
    assert [m.shape for m in gap.maps] == [(0, 1), (1, 0)]


def test_direct_sum_examples():
    w = QuiverWindow(0, 2, "RR")
    v = K(w, [0, 1])
    assert direct_sum(v, Representation.zero(w)) == v
    assert direct_sum(K(w, [0, 1]), K(w, [1, 2])).dims == (1, 2, 1)


def test_tensor_examples():
    w = QuiverWindow(0, 5, "RLRRL")
    b, d = w.subset([0, 1, 2, 4]), w.subset([2, 3, 4, 5])
    assert tensor(interval_rep(w, b), interval_rep(w, d)) == interval_rep(w, b & d)
    rng = np.random.default_rng(0)
    v = random_representation(w, GF5, rng)
    assert isomorphic(tensor(v, Representation.unit(w, GF5)), v)


def test_representation_json_roundtrip():
    rng = np.random.default_rng(1)
    for f in FIELDS:
        v = random_representation(QuiverWindow(0, 3, "RLR"), f, rng)
        assert Representation.loads(v.dumps()) == v
        assert Representation.loads(v.dumps()).dumps() == v.dumps()


def test_representation_rejects_bad_shapes():
    w = QuiverWindow(0, 1, "R")
    with pytest.raises(ValueError):
        Representation(w, GF2, (1, 1), (Matrix.zeros(GF2, 2, 1),))


# -- kernels, cokernels, monos ---------------------------------------------------------


def test_kernel_cokernel_examples():
    w = QuiverWindow(0, 3, "RLR")
    rng = np.random.default_rng(2)
    v = random_representation(w, GF2, rng, min_dim=1)
    u = random_representation(w, GF2, rng)
    assert kernel(Morphism.identity(v))[0].total_dim == 0
    assert cokernel(Morphism.identity(v))[0].total_dim == 0
    assert isomorphic(kernel(Morphism.zero(v, u))[0], v)
    assert isomorphic(cokernel(Morphism.zero(v, u))[0], u)


def test_kernel_rank_one_examples():
    w = QuiverWindow(0, 3, "RRL")
    ones = Representation.dust(w, GF5)
    f = kernel_rank_one(ones)
    assert all(c.is_zero() for c in f.components)
    twos = Representation.from_dims(w, GF5, [2, 2, 2, 2])
    g = kernel_rank_one(twos)
    assert g.ranks() == [1, 1, 1, 1]
    assert kernel(g)[0] == Representation.dust(w, GF5)
    with pytest.raises(ValueError):
        kernel_rank_one(Representation.unit(w, GF5))


def test_mono_epi_examples():
    w = QuiverWindow(0, 2, "RL")
    v = K(w, [0, 1, 2])
    assert is_mono(Morphism.identity(v)) and is_epi(Morphism.identity(v))
    assert not is_mono(Morphism.zero(v, v))


def test_extension_examples():
    w = QuiverWindow(0, 1, "R")
    v1, v2 = K(w, [1]), K(w, [0])
    mid, inc, proj = extension(v1, v2)
    assert mid == direct_sum(v1, v2)
    mid, _, _ = extension(v1, v2, [Matrix.identity(GF2, 1)])
    assert decompose(mid) == Barcode.of([(0, 1)])


def test_corrupted_morphism_is_detected():
    w = QuiverWindow(0, 1, "R")
    v = K(w, [0, 1])
    bad = (Matrix.identity(GF2, 1), Matrix.zeros(GF2, 1, 1))
    with pytest.raises(InvalidMorphism):
        Morphism(v, v, bad)


@given(windows(max_size=5), fields, st.integers(0, 10_000))
def test_random_corruption_detected(w, f, seed):
    rng = np.random.default_rng(seed)
    v = random_representation(w, f, rng, min_dim=1, max_dim=2)
    g = random_hom(v, v, rng)
    i = int(rng.integers(0, w.size))
    comp = g.components[i]
    data = comp.data.copy()
    data[0, 0] = data[0, 0] + 1
    comps = list(g.components)
    comps[i] = Matrix(f, f.reduce(data))
    broken = Morphism(v, v, tuple(comps), check=False)
    # the perturbation is itself a morphism exactly when the elementary matrix commutes
    e = Morphism(v, v, tuple(c - d for c, d in zip(comps, g.components)), check=False)
    assert (broken.defect() is None) == (e.defect() is None)


# -- properties ----------------------------------------------------------------------


@given(windows(), fields, st.integers(0, 10_000))
def test_pointwise_laws(w, f, seed):
    rng = np.random.default_rng(seed)
    v = random_representation(w, f, rng)
    u = random_representation(w, f, rng)
    assert support(direct_sum(v, u)) == support(v) | support(u)
    assert support(tensor(v, u)) == support(v) & support(u)
    assert list(tensor(v, u).dims) == [a * b for a, b in zip(v.dims, u.dims)]
    assert isomorphic(tensor(v, u), tensor(u, v))


@given(windows(), fields, st.integers(0, 10_000))
def test_kernel_cokernel_exact(w, f, seed):
    rng = np.random.default_rng(seed)
    v = random_representation(w, f, rng)
    u = random_representation(w, f, rng)
    g = random_hom(v, u, rng)
    assert exactness_report(g)["exact"]
    ker, inc = kernel(g)
    assert is_mono(inc)
    cok, proj = cokernel(g)
    assert is_epi(proj)
    assert list(cok.dims) == [b - rank(c) for b, c in zip(u.dims, g.components)]


@given(windows(), fields, st.integers(0, 10_000))
def test_random_extensions_are_short_exact(w, f, seed):
    rng = np.random.default_rng(seed)
    v1 = random_representation(w, f, rng)
    v2 = random_representation(w, f, rng)
    mid, inc, proj = extension(v1, v2, seed=rng)
    assert list(mid.dims) == [a + b for a, b in zip(v1.dims, v2.dims)]
    assert is_mono(inc) and is_epi(proj)
    assert short_exact_report(inc, proj)["exact"]
