"""Prime tensor ideals on a finite window and their Zariski topology.

On a window with bounded paths the prime tensor ideals are the point ideals
``M_a = {V : V_a = 0}``.  The model takes those as its points and checks
the ideal axioms, the correspondence with Boolean primes, and the
topological statements against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .boolean import BooleanIdealFamily, PrimePoint, all_subsets, enumerate_primes, is_prime_ideal
from .linalg import Field, GF2, random_matrix
from .quiver import (
    QuiverWindow,
    Representation,
    cokernel,
    direct_sum,
    extension,
    interval_rep,
    kernel,
    random_hom,
    random_representation,
    support,
    tensor,
)
from .subsets import FiniteSubset

__all__ = [
    "PointTensorIdeal",
    "SpcFiniteModel",
    "membership",
    "phi",
    "psi",
    "zariski_closed",
    "closed_set_axioms_check",
    "clopen_check",
    "hausdorff_check",
    "homeomorphism_check",
    "prime_axioms_check",
    "spectrum_report",
]


@lru_cache(maxsize=8192)
def _interval(window: QuiverWindow, s: FiniteSubset, field: Field) -> Representation:
    # exhaustive checks rebuild the same K_I many times
    return interval_rep(window, s, field)


@dataclass(frozen=True, order=True)
class PointTensorIdeal:
    window: QuiverWindow
    a: int

    def __post_init__(self):
        self.window.index(self.a)

    def __contains__(self, v: Representation) -> bool:
        return membership(v, self)

    def __repr__(self) -> str:
        return f"M_{self.a}"


@dataclass(frozen=True)
class SpcFiniteModel:
    window: QuiverWindow
    field: Field = GF2

    @property
    def points(self) -> list[PointTensorIdeal]:
        return [PointTensorIdeal(self.window, a) for a in self.window.vertices]

    def point(self, a: int) -> PointTensorIdeal:
        return PointTensorIdeal(self.window, a)

    def interval(self, s: FiniteSubset) -> Representation:
        return _interval(self.window, s, self.field)

    def subsets(self) -> list[FiniteSubset]:
        return all_subsets(self.window.lo, self.window.hi)


def membership(v: Representation, m: PointTensorIdeal) -> bool:
    if v.window != m.window:
        raise ValueError(f"window mismatch: {v.window} vs {m.window}")
    return v.dim(m.a) == 0


def phi(m: PointTensorIdeal, field: Field = GF2) -> BooleanIdealFamily:
    """``{supp(V) : V in M}``, realizing each subset ``I`` as the support of ``K_I``."""
    w = m.window
    members = frozenset(s for s in all_subsets(w.lo, w.hi) if membership(_interval(w, s, field), m))
    return BooleanIdealFamily(w.lo, w.hi, members)


def psi(q: PrimePoint | BooleanIdealFamily, window: QuiverWindow, field: Field = GF2) -> PointTensorIdeal:
    """The point ideal ``{V : supp(V) in Q}``, identified by agreeing with it on every ``K_I``."""
    fam = q.family() if isinstance(q, PrimePoint) else q
    if (fam.lo, fam.hi) != (window.lo, window.hi):
        raise ValueError("prime and window live on different universes")
    subsets = all_subsets(window.lo, window.hi)
    reps = [_interval(window, s, field) for s in subsets]
    for a in window.vertices:
        m = PointTensorIdeal(window, a)
        if all((s in fam) == membership(r, m) for s, r in zip(subsets, reps)):
            return m
    raise ValueError(f"{fam!r} is not the support family of a point ideal")


def zariski_closed(reps: Iterable[Representation], model: SpcFiniteModel) -> frozenset[PointTensorIdeal]:
    """``Z(S)``: the points containing no member of ``S``."""
    reps = list(reps)
    for v in reps:
        if v.window != model.window:
            raise ValueError(f"window mismatch: {v.window} vs {model.window}")
    return frozenset(m for m in model.points if not any(membership(v, m) for v in reps))


def clopen_check(v: Representation, model: SpcFiniteModel) -> bool:
    """The complement of ``Z({v})`` equals ``Z({K_{window - supp v}})``."""
    z = zariski_closed([v], model)
    comp = frozenset(model.points) - z
    other = zariski_closed([model.interval(support(v).complement())], model)
    return comp == other


def hausdorff_check(model: SpcFiniteModel) -> tuple[bool, list[dict]]:
    """Separate every pair of points by ``Z({V})`` and its complement (both open)."""
    pts = model.points
    all_pts = frozenset(pts)
    candidates = [model.interval(s) for s in model.subsets()]
    witnesses = []
    ok = True
    for m1, m2 in combinations(pts, 2):
        found = None
        for v in candidates:
            if membership(v, m1) and not membership(v, m2):
                u2 = zariski_closed([v], model)
                u1 = zariski_closed([model.interval(support(v).complement())], model)
                if m2 in u2 and m1 in u1 and not (u1 & u2) and u1 == all_pts - u2:
                    found = v
                    break
        if found is None:
            ok = False
        witnesses.append(
            {"pair": [m1.a, m2.a], "separator": None if found is None else support(found).to_json()}
        )
    return ok, witnesses


def closed_set_axioms_check(model: SpcFiniteModel, trials: int = 50, seed=0) -> dict:
    """Intersection of closed sets and union via direct sums, on random families."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    w, field = model.window, model.field
    all_pts = frozenset(model.points)
    failures = []

    def rand_family() -> list[Representation]:
        return [random_representation(w, field, rng, max_dim=2) for _ in range(int(rng.integers(0, 4)))]

    if zariski_closed([], model) != all_pts:
        failures.append("Z(empty) != all points")
    if zariski_closed([Representation.zero(w, field)], model):
        failures.append("Z({0}) nonempty")
    for t in range(trials):
        families = [rand_family() for _ in range(int(rng.integers(1, 4)))]
        inter = all_pts
        for fam in families:
            inter = inter & zariski_closed(fam, model)
        if inter != zariski_closed([v for fam in families for v in fam], model):
            failures.append(f"intersection identity, trial {t}")
        s1, s2 = rand_family(), rand_family()
        union = zariski_closed(s1, model) | zariski_closed(s2, model)
        sums = [direct_sum(a, b) for a in s1 for b in s2]
        if union != zariski_closed(sums, model):
            failures.append(f"union identity, trial {t}")
    return {"ok": not failures, "trials": trials, "failures": failures}


def homeomorphism_check(model: SpcFiniteModel) -> tuple[bool, dict]:
    """``psi`` carries Boolean-side basic closed sets onto Zariski basic closed sets.

    The Boolean basic closed set attached to ``W`` is the complement of
    ``D_x = {Q : x not in Q}`` for ``x = window - supp(W)``.
    """
    w, field = model.window, model.field
    if w.size > 8:
        raise ValueError("homeomorphism check is exhaustive; window size must be <= 8")
    primes = enumerate_primes(w.lo, w.hi, "exhaustive" if w.size <= 3 else "principal")
    psi_of = {q: psi(q, w, field) for q in primes}
    all_pts = frozenset(model.points)
    if set(psi_of.values()) != all_pts or len(psi_of) != len(all_pts):
        return False, {"reason": "psi is not a bijection onto the points"}
    mismatches = []
    zariski_sets, boolean_images = set(), set()
    for s in model.subsets():
        rep = model.interval(s)
        z = zariski_closed([rep], model)
        x = s.complement()
        d_complement = [q for q in primes if x in q]  # complement of D_x
        pre_direct = {q for q in primes if psi_of[q] in z}
        if pre_direct != set(d_complement):
            mismatches.append({"support": s.to_json(), "what": "preimage formula"})
        image = frozenset(psi_of[q] for q in d_complement)
        if image != z:
            mismatches.append({"support": s.to_json(), "what": "image"})
        zariski_sets.add(z)
        boolean_images.add(image)
    # finite model: closed sets are intersections of basic ones; both sides should be discrete
    def closure_under_meets(basics: set) -> set:
        out = set(basics) | {all_pts}
        changed = True
        while changed:
            changed = False
            for a, b in combinations(list(out), 2):
                if a & b not in out:
                    out.add(a & b)
                    changed = True
        return out

    lattice_z = closure_under_meets(zariski_sets)
    lattice_b = closure_under_meets(boolean_images)
    ok = not mismatches and lattice_z == lattice_b
    return ok, {
        "mismatches": mismatches,
        "closed_sets": len(lattice_z),
        "discrete": len(lattice_z) == 2 ** len(all_pts),
    }


def _random_member(m: PointTensorIdeal, field: Field, rng, max_dim: int = 2) -> Representation:
    v = random_representation(m.window, field, rng, max_dim=max_dim)
    dims = list(v.dims)
    dims[m.window.index(m.a)] = 0
    maps = []
    for k in range(m.window.size - 1):
        s, t = m.window.arrow(k)
        maps.append(random_matrix(field, dims[t - m.window.lo], dims[s - m.window.lo], rng))
    return Representation(m.window, field, tuple(dims), tuple(maps))


def prime_axioms_check(m: PointTensorIdeal, field: Field = GF2, trials: int = 300, seed=0) -> dict:
    """Randomized closure checks for ``M_a``: kernels, cokernels, extensions,
    tensor absorption, and primality of the tensor product."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    w = m.window
    counts = {"kernel": 0, "cokernel": 0, "extension": 0, "tensor_absorb": 0, "prime": 0}
    failures = []
    kinds = list(counts)
    for t in range(trials):
        kind = kinds[t % len(kinds)]
        if kind in ("kernel", "cokernel"):
            v, u = _random_member(m, field, rng), _random_member(m, field, rng)
            f = random_hom(v, u, rng)
            obj = kernel(f)[0] if kind == "kernel" else cokernel(f)[0]
            ok = membership(obj, m)
        elif kind == "extension":
            v1, v2 = _random_member(m, field, rng), _random_member(m, field, rng)
            mid = extension(v1, v2, seed=rng)[0]
            ok = membership(mid, m)
        elif kind == "tensor_absorb":
            v = _random_member(m, field, rng)
            x = random_representation(w, field, rng, max_dim=2)
            ok = membership(tensor(x, v), m) and membership(tensor(v, x), m)
        else:
            v = random_representation(w, field, rng, max_dim=2)
            u = random_representation(w, field, rng, max_dim=2)
            ok = (not membership(tensor(v, u), m)) or membership(v, m) or membership(u, m)
        counts[kind] += 1
        if not ok:
            failures.append({"trial": t, "kind": kind})
    # properness: the unit is never a member
    if membership(Representation.unit(w, field), m):
        failures.append({"trial": -1, "kind": "proper"})
    return {"ok": not failures, "point": m.a, "counts": counts, "failures": failures}


def spectrum_report(window: QuiverWindow, field: Field = GF2) -> dict:
    """Points, their Boolean images and the closed-set lattice, for windows of size <= 8."""
    if window.size > 8:
        raise ValueError("spectrum report is exhaustive; window size must be <= 8")
    model = SpcFiniteModel(window, field)
    points = []
    for m in model.points:
        fam = phi(m, field)
        points.append(
            {
                "point": m.a,
                "phi": fam.to_json(),
                "phi_is_prime": is_prime_ideal(fam) if window.size <= 4 else None,
                "psi_phi_is_identity": psi(fam, window, field) == m,
            }
        )
    basic = {}
    for s in model.subsets():
        z = zariski_closed([model.interval(s)], model)
        basic[tuple(s.to_json())] = sorted(p.a for p in z)
    lattice = sorted({tuple(v) for v in basic.values()}, key=lambda t: (len(t), t))
    homeo_ok, _ = homeomorphism_check(model)
    hausdorff_ok, _ = hausdorff_check(model)
    return {
        "window": window.to_json(),
        "points": points,
        "basic_closed_sets": [{"support": list(k), "closed": v} for k, v in sorted(basic.items())],
        "closed_set_lattice": [list(t) for t in lattice],
        "hausdorff": hausdorff_ok,
        "homeomorphism": homeo_ok,
    }
