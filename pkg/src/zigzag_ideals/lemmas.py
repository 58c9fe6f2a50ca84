"""Randomized property suites behind ``verify-lemmas``.

Each suite receives its own generator spawned from the master seed, so a
report depends only on ``(seed, trials)`` and never on timing or order of
execution.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import barcode as bc
from .boolean import enumerate_primes, is_maximal_ideal, is_prime_ideal
from .linalg import GF2, GF5, QQ, Field
from .quiver import (
    QuiverWindow,
    exactness_report,
    interval_rep,
    random_hom,
    random_orientation,
    random_representation,
    support,
)
from .spectrum import (
    SpcFiniteModel,
    clopen_check,
    closed_set_axioms_check,
    hausdorff_check,
    homeomorphism_check,
    membership,
    phi,
    prime_axioms_check,
    psi,
)
from .subsets import FiniteSubset
from .unbounded import (
    adversarial_corpus,
    bounded_derivation,
    bounded_extension_check,
    check_derivation,
    direct_summand_of_tensor_check,
    generate_mono_or_epi,
    hom_dim_brute,
    hom_dim_linear,
    mono_containment_check,
)
from .witness import WitnessError, full_witness

__all__ = ["SUITES", "run_suites", "random_window", "planted_barcode"]

FIELDS = (GF2, GF5, QQ)


def random_window(rng: np.random.Generator, max_size: int, min_size: int = 1) -> QuiverWindow:
    n = int(rng.integers(min_size, max_size + 1))
    return QuiverWindow(0, n - 1, random_orientation(n - 1, rng))


def planted_barcode(window: QuiverWindow, rng: np.random.Generator, max_bars: int = 5) -> bc.Barcode:
    bars = []
    for _ in range(int(rng.integers(0, max_bars + 1))):
        a = int(rng.integers(window.lo, window.hi + 1))
        b = int(rng.integers(a, window.hi + 1))
        bars.append((a, b))
    return bc.Barcode.of(bars)


def _field(rng: np.random.Generator) -> Field:
    return FIELDS[int(rng.integers(0, len(FIELDS)))]


def suite_barcode(rng, trials):
    failures = []
    for t in range(trials):
        w = random_window(rng, 12)
        field = _field(rng)
        code = planted_barcode(w, rng)
        got = bc.decompose(bc.base_change(bc.assemble(w, code, field), rng))
        if got != code:
            failures.append({"trial": t, "window": w.to_json(), "planted": str(code), "got": str(got)})
    return failures


def suite_exactness(rng, trials):
    failures = []
    for t in range(trials):
        w = random_window(rng, 6)
        field = _field(rng)
        v = random_representation(w, field, rng, max_dim=3)
        u = random_representation(w, field, rng, max_dim=3)
        rep = exactness_report(random_hom(v, u, rng))
        if not rep["exact"]:
            failures.append({"trial": t, "failures": rep["failures"]})
    return failures


def suite_boolean(rng, trials):
    failures = []
    for n in range(1, 4):
        ex = enumerate_primes(0, n - 1, "exhaustive")
        pr = enumerate_primes(0, n - 1, "principal")
        if set(ex) != set(pr) or len(ex) != n:
            failures.append({"universe": n, "what": "exhaustive and principal enumerations differ"})
        for q in ex:
            if not (is_prime_ideal(q) and is_maximal_ideal(q)):
                failures.append({"universe": n, "what": f"{q!r} not prime and maximal"})
    return failures


def suite_correspondence(rng, trials):
    failures = []
    for t in range(trials):
        w = random_window(rng, 6)
        model = SpcFiniteModel(w, GF2)
        for m in model.points:
            if psi(phi(m), w) != m:
                failures.append({"trial": t, "point": m.a, "what": "psi(phi(M)) != M"})
        v = random_representation(w, GF2, rng, max_dim=2)
        for m in model.points:
            if membership(v, m) != (m.a not in support(v)):
                failures.append({"trial": t, "point": m.a, "what": "membership disagrees with support"})
    return failures


def suite_prime_axioms(rng, trials):
    failures = []
    w = random_window(rng, 5)
    for m in SpcFiniteModel(w).points:
        rep = prime_axioms_check(m, GF2, trials=trials, seed=rng)
        if not rep["ok"]:
            failures.append({"window": w.to_json(), "point": m.a, "failures": rep["failures"]})
    return failures


def suite_topology(rng, trials):
    failures = []
    for t in range(max(1, trials // 10)):
        w = random_window(rng, 5)
        model = SpcFiniteModel(w, GF2)
        if not closed_set_axioms_check(model, trials=10, seed=rng)["ok"]:
            failures.append({"trial": t, "what": "closed-set identities"})
        v = random_representation(w, GF2, rng, max_dim=2)
        if not clopen_check(v, model):
            failures.append({"trial": t, "what": "clopen complement"})
        if not hausdorff_check(model)[0]:
            failures.append({"trial": t, "what": "Hausdorff"})
        if not homeomorphism_check(model)[0]:
            failures.append({"trial": t, "what": "homeomorphism"})
    return failures


def suite_witness(rng, trials):
    failures = []
    done = 0
    while done < trials:
        w = random_window(rng, 16, min_size=3)
        if w.max_path_length >= w.size - 1:
            continue
        v = random_representation(w, GF2, rng, max_dim=2)
        if support(v) == w.full():
            continue
        done += 1
        try:
            chain = full_witness(w, v)
        except WitnessError as exc:
            failures.append({"window": w.to_json(), "error": str(exc)})
            continue
        for branch, info in chain.saturation.items():
            if max(info["right_iterations"], info["left_iterations"]) > w.max_path_length:
                failures.append({"window": w.to_json(), "branch": branch, "what": "slow saturation"})
    return failures


def suite_hom_linear(rng, trials):
    failures = []
    for _ in range(trials):
        w = QuiverWindow.linear(0, int(rng.integers(0, 8)))
        i = sorted(int(x) for x in rng.integers(0, w.size, size=2))
        j = sorted(int(x) for x in rng.integers(0, w.size, size=2))
        if hom_dim_brute(w, tuple(i), tuple(j)) != hom_dim_linear(tuple(i), tuple(j)):
            failures.append({"i": i, "j": j})
    return failures


def suite_mono_epi(rng, trials):
    failures = []
    for t in range(trials):
        w = QuiverWindow.linear(0, int(rng.integers(0, 10)))
        kind = ("mono", "epi")[t % 2]
        f = generate_mono_or_epi(w, _field(rng), rng, kind)
        if f is None:
            continue
        v = mono_containment_check(f)
        s = direct_summand_of_tensor_check(f)
        if not (v.ok and s.ok):
            failures.append({"trial": t, "kind": kind, "containment": v.to_json(), "summand": s.to_json()})
    return failures


def suite_bounded_extension(rng, trials):
    failures = []
    for t in range(trials):
        w = QuiverWindow.linear(0, int(rng.integers(1, 12)))
        field = _field(rng)
        inner = QuiverWindow.linear(w.lo, w.hi - 1)
        reps = []
        for _ in range(2):
            code = planted_barcode(inner, rng, max_bars=3)
            reps.append(bc.base_change(bc.assemble(w, code, field), rng))
        verdict = bounded_extension_check(reps[0], reps[1], trials=1, seed=rng)
        if not verdict.ok:
            failures.append({"trial": t, "failures": verdict.failures})
    return failures


def suite_certificates(rng, trials):
    failures = []
    if not check_derivation(bounded_derivation(10)).accepted:
        failures.append({"what": "bounded derivation rejected"})
    for k, cert in enumerate(adversarial_corpus()):
        if check_derivation(cert).accepted:
            failures.append({"what": "unbounded claim accepted", "certificate": k})
    return failures


SUITES: dict[str, Callable] = {
    "barcode_oracle": suite_barcode,
    "exactness": suite_exactness,
    "boolean_primes": suite_boolean,
    "correspondence": suite_correspondence,
    "prime_axioms": suite_prime_axioms,
    "topology": suite_topology,
    "witness_chains": suite_witness,
    "hom_linear": suite_hom_linear,
    "mono_epi_containment": suite_mono_epi,
    "bounded_extension": suite_bounded_extension,
    "certificates": suite_certificates,
}


def run_suites(seed: int, trials: int, names: list[str] | None = None) -> dict:
    """Run the named suites (all by default) and return a JSON-ready report."""
    names = list(SUITES) if names is None else names
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    sub = dict(zip(SUITES, children))
    results = {}
    for name in names:
        rng = np.random.default_rng(sub[name])
        failures = SUITES[name](rng, trials)
        results[name] = {"ok": not failures, "failures": failures}
    return {
        "seed": seed,
        "trials": trials,
        "ok": all(r["ok"] for r in results.values()),
        "suites": results,
    }
