import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zigzag_ideals.barcode import Barcode, assemble
from zigzag_ideals.linalg import GF2, GF5, QQ, Matrix
from zigzag_ideals.quiver import Morphism, QuiverWindow, interval_rep, random_hom, tensor
from zigzag_ideals.unbounded import (
    INF,
    K_PRIME_Z,
    K_Z,
    ZERO,
    CertStep,
    DerivationCertificate,
    Dust,
    ExtendedInterval,
    MalformedCertificate,
    SymbolicBarcode,
    adversarial_corpus,
    bounded_derivation,
    bounded_extension_check,
    check_derivation,
    direct_summand_of_tensor_check,
    generate_mono_or_epi,
    hom_dim_brute,
    hom_dim_linear,
    is_bounded,
    mono_containment_check,
    symbolic_tensor,
)

endpoints = st.one_of(st.integers(-20, 20), st.just(-INF), st.just(INF))


@st.composite
def ext_intervals(draw):
    a = draw(st.one_of(st.integers(-20, 20), st.just(-INF)))
    b = draw(st.one_of(st.integers(-20, 20), st.just(INF)))
    if a > b:
        a, b = b, a
    return ExtendedInterval(a, b)


@st.composite
def symbolic(draw, bounded=None):
    bars = draw(st.lists(ext_intervals(), max_size=3))
    if bounded:
        bars = [b for b in bars if b.finite]
    dust = []
    for _ in range(draw(st.integers(0, 2))):
        p = draw(st.integers(1, 4))
        lo = draw(st.one_of(st.just(-INF), st.integers(-20, 20)))
        hi = draw(st.one_of(st.just(INF), st.integers(-20, 20)))
        d = Dust(draw(st.integers(0, 3)), p, lo, hi, draw(st.integers(1, 2)))
        if not d.empty:
            dust.append(d)
    return SymbolicBarcode(tuple((b, 1) for b in bars), tuple(dust))


def test_is_bounded_examples():
    assert is_bounded(K_PRIME_Z)
    assert not is_bounded(K_Z)
    assert not is_bounded(SymbolicBarcode.of((0, 5), (3, INF)))
    assert is_bounded(ZERO)


def test_tensor_examples():
    assert symbolic_tensor(K_Z, K_PRIME_Z).equivalent(K_PRIME_Z)
    assert symbolic_tensor(SymbolicBarcode.of((0, 5)), SymbolicBarcode.of((3, 9))) == SymbolicBarcode.of((3, 5))
    two = SymbolicBarcode(dust=(Dust(0, 2),))
    three = SymbolicBarcode(dust=(Dust(1, 3),))
    assert symbolic_tensor(two, three) == SymbolicBarcode(dust=(Dust(4, 6),))
    assert symbolic_tensor(two, SymbolicBarcode(dust=(Dust(1, 2),))) == ZERO


def test_extended_interval_validation():
    with pytest.raises(ValueError):
        ExtendedInterval(INF, INF)
    with pytest.raises(ValueError):
        ExtendedInterval(3, 1)
    assert str(ExtendedInterval(-INF, 2)) == "(-inf,2]"


def test_symbolic_json_roundtrip():
    b = SymbolicBarcode.of((-INF, 3), (0, INF), dust=[Dust(1, 3, 0, INF, 2)])
    text = json.dumps(b.to_json())
    assert SymbolicBarcode.from_json(json.loads(text)) == b


@given(symbolic(bounded=True), symbolic())
def test_tensor_preserves_boundedness(x, y):
    t = symbolic_tensor(x, y)
    assert is_bounded(t)
    for p in range(-25, 26):
        assert t.dim_at(p) == x.dim_at(p) * y.dim_at(p)


@given(symbolic(), symbolic())
def test_tensor_commutes(x, y):
    assert symbolic_tensor(x, y).equivalent(symbolic_tensor(y, x))


# -- hom dimensions -------------------------------------------------------------------


def test_hom_examples():
    w = QuiverWindow.linear(0, 3)
    assert hom_dim_brute(w, (1, 3), (0, 2)) == 1 == hom_dim_linear((1, 3), (0, 2))
    assert hom_dim_brute(w, (0, 2), (1, 3)) == 0 == hom_dim_linear((0, 2), (1, 3))
    assert hom_dim_linear((1, 2), (1, 2)) == 1
    assert hom_dim_linear((-INF, 4), (-INF, INF)) == 0
    assert hom_dim_linear((0, INF), (-INF, INF)) == 1


def test_hom_exhaustive_small():
    for n in range(1, 6):
        w = QuiverWindow.linear(0, n - 1)
        ivs = [(a, b) for a in range(n) for b in range(a, n)]
        for i in ivs:
            for j in ivs:
                assert hom_dim_brute(w, i, j, GF5) == hom_dim_linear(i, j)


# -- mono / epi containment -----------------------------------------------------------


def test_mono_containment_examples():
    w = QuiverWindow.linear(-1, 3)
    src = interval_rep(w, w.subset([0, 1]))
    tgt = interval_rep(w, w.subset([-1, 0, 1]))
    f = Morphism(src, tgt, tuple(Matrix.identity(GF2, 1) if v in (0, 1) else Matrix.zeros(GF2, *(tgt.dim(v), src.dim(v))) for v in w.vertices))
    verdict = mono_containment_check(f)
    assert verdict.ok and verdict.kind == "mono"
    (inner, outer), = verdict.assignment.items()
    assert (inner.a, inner.b, outer.a, outer.b) == (0, 1, -1, 1)
    s = direct_summand_of_tensor_check(f)
    assert s.ok
    assert tensor(src, tgt) == src


def test_no_mono_is_vacuous():
    w = QuiverWindow.linear(0, 3)
    src = interval_rep(w, w.subset([0, 1]))
    tgt = assemble(w, Barcode.of([(2, 3), (0, 0)]))
    rng = np.random.default_rng(0)
    for _ in range(10):
        assert mono_containment_check(random_hom(src, tgt, rng)).kind == "vacuous"


def test_identity_containment():
    w = QuiverWindow.linear(0, 4)
    v = assemble(w, Barcode.of([(0, 2), (1, 4), (3, 3)]), GF5)
    assert mono_containment_check(Morphism.identity(v)).kind == "iso"
    assert direct_summand_of_tensor_check(Morphism.identity(v)).ok


def test_summand_check_needs_mono_or_epi():
    w = QuiverWindow.linear(0, 2)
    v = interval_rep(w, w.full())
    with pytest.raises(ValueError):
        direct_summand_of_tensor_check(Morphism.zero(v, v))


@given(st.integers(0, 9), st.sampled_from(["mono", "epi"]), st.sampled_from([GF2, GF5, QQ]), st.integers(0, 10_000))
def test_generated_monos_and_epis(hi, kind, field, seed):
    w = QuiverWindow.linear(0, hi)
    f = generate_mono_or_epi(w, field, np.random.default_rng(seed), kind)
    if f is None:
        return
    assert mono_containment_check(f).ok
    assert direct_summand_of_tensor_check(f).ok


# -- bounded extensions ---------------------------------------------------------------


def test_bounded_extension_examples():
    w = QuiverWindow.linear(0, 3)
    v1, v2 = interval_rep(w, w.subset([1])), interval_rep(w, w.subset([0]))
    zero_eps = [Matrix.zeros(GF2, 1, 1), Matrix.zeros(GF2, 0, 0), Matrix.zeros(GF2, 0, 0)]
    assert bounded_extension_check(v1, v2, zero_eps).ok
    one = [Matrix.identity(GF2, 1), Matrix.zeros(GF2, 0, 0), Matrix.zeros(GF2, 0, 0)]
    assert bounded_extension_check(v1, v2, one).ok
    assert bounded_extension_check(v1, v2, trials=20, seed=1).ok


def test_bounded_extension_preconditions():
    w = QuiverWindow.linear(0, 2)
    touching = interval_rep(w, w.subset([2]))
    with pytest.raises(ValueError):
        bounded_extension_check(touching, touching, trials=1)
    zz = QuiverWindow(0, 2, "RL")
    with pytest.raises(ValueError):
        bounded_extension_check(interval_rep(zz, zz.subset([0])), interval_rep(zz, zz.subset([0])))


# -- certificates --------------------------------------------------------------------


def test_certificate_examples():
    seed = (K_PRIME_Z,)
    ok = DerivationCertificate(seed, (CertStep("tensor", (0,), symbolic_tensor(K_PRIME_Z, K_Z), K_Z),))
    assert check_derivation(ok).accepted
    ext = DerivationCertificate(seed, (CertStep("ext", (0, 0), SymbolicBarcode(dust=(Dust(0, 1, mult=2),))),))
    assert check_derivation(ext).accepted
    bad = DerivationCertificate(seed, (CertStep("ext", (0, 0), K_Z),))
    verdict = check_derivation(bad)
    assert not verdict.accepted and verdict.failing_step == 0


def test_bounded_derivation_accepted():
    cert = bounded_derivation(10)
    assert len(cert.steps) == 10
    assert {s.op for s in cert.steps} == {"tensor", "ext", "ker", "coker"}
    v = check_derivation(cert)
    assert v.accepted and is_bounded(v.final)
    again = DerivationCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert again == cert and check_derivation(again).accepted


def test_adversarial_corpus_rejected():
    corpus = adversarial_corpus()
    assert len(corpus) >= 20
    for cert in corpus:
        v = check_derivation(cert)
        assert not v.accepted
        assert not is_bounded(cert.steps[v.failing_step].claim)


def test_malformed_certificates():
    with pytest.raises(MalformedCertificate):
        check_derivation(DerivationCertificate((K_Z,), ()))
    with pytest.raises(MalformedCertificate):
        check_derivation(DerivationCertificate((K_PRIME_Z,), (CertStep("ext", (0, 1), K_PRIME_Z),)))
    with pytest.raises(MalformedCertificate):
        check_derivation(DerivationCertificate((K_PRIME_Z,), (CertStep("glue", (0,), K_PRIME_Z),)))
    with pytest.raises(MalformedCertificate):
        check_derivation(DerivationCertificate((K_PRIME_Z,), (CertStep("tensor", (0,), K_PRIME_Z),)))
    with pytest.raises(MalformedCertificate):
        DerivationCertificate.from_json({"steps": []})


def test_kernel_rule_containment():
    seed = (K_PRIME_Z,)
    pts = SymbolicBarcode.of((0, 0), (5, 5))
    assert check_derivation(DerivationCertificate(seed, (CertStep("ker", (0, 0), pts),))).accepted
    long_bar = SymbolicBarcode.of((0, 1))
    v = check_derivation(DerivationCertificate(seed, (CertStep("ker", (0, 0), long_bar),)))
    assert not v.accepted and "no bar" in v.reason


@st.composite
def random_certificates(draw):
    """Random certificates whose claims are drawn freely; soundness must hold regardless."""
    seeds = (K_PRIME_Z, ZERO)
    objs = list(seeds)
    steps = []
    for _ in range(draw(st.integers(1, 6))):
        op = draw(st.sampled_from(["tensor", "ext", "ker", "coker"]))
        here = len(objs)
        if op == "tensor":
            i = draw(st.integers(0, here - 1))
            factor = draw(symbolic())
            honest = draw(st.booleans())
            claim = symbolic_tensor(objs[i], factor) if honest else draw(symbolic())
            steps.append(CertStep(op, (i,), claim, factor))
        else:
            args = (draw(st.integers(0, here - 1)), draw(st.integers(0, here - 1)))
            claim = draw(symbolic())
            steps.append(CertStep(op, args, claim))
        objs.append(steps[-1].claim)
    return DerivationCertificate(seeds, tuple(steps))


@given(random_certificates())
def test_checker_soundness(cert):
    v = check_derivation(cert)
    if v.accepted:
        assert all(is_bounded(s.claim) for s in cert.steps)
    else:
        assert all(is_bounded(s.claim) for s in cert.steps[: v.failing_step])
