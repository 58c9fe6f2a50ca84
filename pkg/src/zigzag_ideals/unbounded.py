"""The linearly oriented quiver on all of Z: symbolic barcodes and derivation certificates.

Objects with infinite support are never built pointwise.  A
:class:`SymbolicBarcode` holds bars with possibly infinite endpoints plus
"dust": arithmetic progressions of length-0 bars (``K'`` on Z is dust of
period 1).  The certificate checker replays a claimed construction inside
the ideal generated by ``{0, K'}`` and rejects the first step whose
claim leaves the bounded world.

The window-scale lemma checks (hom dimensions, mono/epi containment,
direct summands of tensors, bounded extensions) run on finite windows with
all arrows pointing right.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .barcode import Barcode, Interval, assemble, base_change, decompose
from .linalg import Field, GF2, GF5, QQ, Matrix
from .quiver import (
    Morphism,
    QuiverWindow,
    Representation,
    extension,
    hom_space,
    interval_rep,
    is_epi,
    is_mono,
    random_hom,
    tensor,
)

__all__ = [
    "INF",
    "ExtendedInterval",
    "Dust",
    "SymbolicBarcode",
    "K_Z",
    "K_PRIME_Z",
    "ZERO",
    "is_bounded",
    "symbolic_tensor",
    "hom_dim_linear",
    "hom_dim_brute",
    "LemmaVerdict",
    "mono_containment_check",
    "direct_summand_of_tensor_check",
    "bounded_extension_check",
    "CertStep",
    "DerivationCertificate",
    "CertVerdict",
    "MalformedCertificate",
    "check_derivation",
    "bounded_derivation",
    "adversarial_corpus",
    "generate_mono_or_epi",
]

INF = math.inf


def _endpoint(x) -> float | int:
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return INF
        if s in ("-inf", "-infinity"):
            return -INF
        return int(s)
    if isinstance(x, float) and math.isinf(x):
        return x
    return int(x)


def _endpoint_json(x) -> int | str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return int(x)


@dataclass(frozen=True, order=True)
class ExtendedInterval:
    """``[a, b]`` in Z with ``a`` possibly ``-inf`` and ``b`` possibly ``+inf``."""

    a: float | int
    b: float | int

    def __post_init__(self):
        a, b = _endpoint(self.a), _endpoint(self.b)
        if a == INF or b == -INF:
            raise ValueError(f"bad endpoints [{a}, {b}]")
        if a > b:
            raise ValueError(f"empty interval [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def finite(self) -> bool:
        return not (math.isinf(self.a) or math.isinf(self.b))

    def contains_point(self, x) -> bool:
        return self.a <= x <= self.b

    def contains(self, other: ExtendedInterval) -> bool:
        return self.a <= other.a and other.b <= self.b

    def intersect(self, other: ExtendedInterval) -> ExtendedInterval | None:
        a, b = max(self.a, other.a), min(self.b, other.b)
        return ExtendedInterval(a, b) if a <= b else None

    def to_json(self) -> dict:
        return {"a": _endpoint_json(self.a), "b": _endpoint_json(self.b)}

    def __str__(self) -> str:
        left = "(-inf" if self.a == -INF else f"[{self.a}"
        right = "+inf)" if self.b == INF else f"{self.b}]"
        return f"{left},{right}"


@dataclass(frozen=True, order=True)
class Dust:
    """``mult`` length-0 bars at each ``x`` with ``x = offset (mod period)`` and ``lo <= x <= hi``."""

    offset: int
    period: int
    lo: float | int = -INF
    hi: float | int = INF
    mult: int = 1

    def __post_init__(self):
        p = int(self.period)
        if p < 1:
            raise ValueError("dust period must be >= 1")
        if self.mult < 1:
            raise ValueError("dust multiplicity must be >= 1")
        off = int(self.offset) % p
        lo, hi = _endpoint(self.lo), _endpoint(self.hi)
        # tighten finite ends onto actual members
        if not math.isinf(lo):
            lo = lo + (off - lo) % p
        if not math.isinf(hi):
            hi = hi - (hi - off) % p
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi and (x - self.offset) % self.period == 0

    def restrict(self, iv: ExtendedInterval) -> Dust | None:
        d = Dust(self.offset, self.period, max(self.lo, iv.a), min(self.hi, iv.b), self.mult)
        return None if d.empty else d

    def is_subprogression_of(self, other: Dust) -> bool:
        return (
            self.period % other.period == 0
            and (self.offset - other.offset) % other.period == 0
            and other.lo <= self.lo
            and self.hi <= other.hi
        )

    def to_json(self) -> dict:
        return {
            "offset": self.offset,
            "period": self.period,
            "lo": _endpoint_json(self.lo),
            "hi": _endpoint_json(self.hi),
            "mult": self.mult,
        }


def _crt(o1: int, p1: int, o2: int, p2: int) -> tuple[int, int] | None:
    g = math.gcd(p1, p2)
    if (o2 - o1) % g:
        return None
    lcm = p1 // g * p2
    # o1 + p1 * t = o2 (mod p2)
    t = ((o2 - o1) // g * pow(p1 // g, -1, p2 // g)) % (p2 // g) if p2 // g > 1 else 0
    return (o1 + p1 * t) % lcm, lcm


@dataclass(frozen=True)
class SymbolicBarcode:
    bars: tuple[tuple[ExtendedInterval, int], ...] = ()
    dust: tuple[Dust, ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for iv, m in self.bars:
            if not isinstance(iv, ExtendedInterval):
                iv = ExtendedInterval(*iv)
            if m < 0:
                raise ValueError("negative multiplicity")
            merged[iv] += int(m)
        object.__setattr__(self, "bars", tuple(sorted((iv, m) for iv, m in merged.items() if m > 0)))
        object.__setattr__(self, "dust", tuple(sorted(d for d in self.dust if not d.empty)))

    @classmethod
    def of(cls, *bars, dust: Iterable[Dust] = ()) -> SymbolicBarcode:
        return cls(tuple(Counter(ExtendedInterval(*b) for b in bars).items()), tuple(dust))

    def intervals(self) -> list[ExtendedInterval]:
        return [iv for iv, m in self.bars for _ in range(m)]

    def dim_at(self, x: int) -> int:
        return sum(m for iv, m in self.bars if iv.contains_point(x)) + sum(d.mult for d in self.dust if x in d)

    def _probe_range(self) -> range:
        pts = [e for iv, _ in self.bars for e in (iv.a, iv.b) if not math.isinf(e)]
        pts += [e for d in self.dust for e in (d.lo, d.hi) if not math.isinf(e)]
        period = math.lcm(*[d.period for d in self.dust]) if self.dust else 1
        lo, hi = (min(pts), max(pts)) if pts else (0, 0)
        return range(int(lo) - period - 1, int(hi) + period + 2)

    def same_dims(self, other: SymbolicBarcode) -> bool:
        """Pointwise dimension functions agree.  Both are eventually periodic, so a finite probe is exact."""
        a, b = self._probe_range(), other._probe_range()
        span = range(min(a.start, b.start), max(a.stop, b.stop))
        period = math.lcm(*[d.period for d in self.dust + other.dust]) if self.dust + other.dust else 1
        span = range(span.start - period, span.stop + period)
        return all(self.dim_at(x) == other.dim_at(x) for x in span)

    def equivalent(self, other: SymbolicBarcode) -> bool:
        """Same bars of positive length and the same length-0 multiplicities at every point."""
        long_a = Counter({iv: m for iv, m in self.bars if iv.a != iv.b})
        long_b = Counter({iv: m for iv, m in other.bars if iv.a != iv.b})
        if long_a != long_b:
            return False
        pa = SymbolicBarcode(tuple((iv, m) for iv, m in self.bars if iv.a == iv.b), self.dust)
        pb = SymbolicBarcode(tuple((iv, m) for iv, m in other.bars if iv.a == iv.b), other.dust)
        return pa.same_dims(pb)

    def to_json(self) -> dict:
        return {
            "bars": [{**iv.to_json(), "mult": m} for iv, m in self.bars],
            "dust": [d.to_json() for d in self.dust],
        }

    @classmethod
    def from_json(cls, d: dict) -> SymbolicBarcode:
        bars = tuple((ExtendedInterval(x["a"], x["b"]), int(x.get("mult", 1))) for x in d.get("bars", []))
        dust = tuple(
            Dust(int(x["offset"]), int(x["period"]), x.get("lo", "-inf"), x.get("hi", "inf"), int(x.get("mult", 1)))
            for x in d.get("dust", [])
        )
        return cls(bars, dust)

    def __str__(self) -> str:
        parts = [f"{iv}" + (f"x{m}" if m > 1 else "") for iv, m in self.bars]
        parts += [f"dust({d.offset} mod {d.period} on {ExtendedInterval(d.lo, d.hi)})" for d in self.dust]
        return "{" + ", ".join(parts) + "}"


ZERO = SymbolicBarcode()
K_Z = SymbolicBarcode.of((-INF, INF))
K_PRIME_Z = SymbolicBarcode(dust=(Dust(0, 1),))


def is_bounded(b: SymbolicBarcode) -> bool:
    """Every bar has finite endpoints; dust is made of length-0 bars and always counts as bounded."""
    return all(iv.finite for iv, _ in b.bars)


def symbolic_tensor(x: SymbolicBarcode, y: SymbolicBarcode) -> SymbolicBarcode:
    """Tensor of interval sums: bars intersect pairwise, dust restricts to bars and meets dust by CRT."""
    bars: Counter = Counter()
    dust: list[Dust] = []
    for i, m in x.bars:
        for j, n in y.bars:
            k = i.intersect(j)
            if k is not None:
                bars[k] += m * n
    for d, bs in ((dd, y.bars) for dd in x.dust):
        for j, n in bs:
            r = d.restrict(j)
            if r is not None:
                dust.append(Dust(r.offset, r.period, r.lo, r.hi, r.mult * n))
    for d, bs in ((dd, x.bars) for dd in y.dust):
        for j, n in bs:
            r = d.restrict(j)
            if r is not None:
                dust.append(Dust(r.offset, r.period, r.lo, r.hi, r.mult * n))
    for d1 in x.dust:
        for d2 in y.dust:
            c = _crt(d1.offset, d1.period, d2.offset, d2.period)
            if c is None:
                continue
            dd = Dust(c[0], c[1], max(d1.lo, d2.lo), min(d1.hi, d2.hi), d1.mult * d2.mult)
            if not dd.empty:
                dust.append(dd)
    return SymbolicBarcode(tuple(bars.items()), tuple(dust))


# -- window-scale lemma checks (all arrows rightward) ----------------------------


def hom_dim_linear(i: ExtendedInterval | tuple, j: ExtendedInterval | tuple) -> int:
    """``dim Hom(K_i, K_j)`` for rightward arrows: 1 iff ``j.a <= i.a <= j.b <= i.b``."""
    i = i if isinstance(i, ExtendedInterval) else ExtendedInterval(*i)
    j = j if isinstance(j, ExtendedInterval) else ExtendedInterval(*j)
    return int(j.a <= i.a <= j.b <= i.b)


def hom_dim_brute(window: QuiverWindow, i: tuple[int, int], j: tuple[int, int], field: Field = GF2) -> int:
    """Dimension of the solution space of the commuting-square equations."""
    ki = interval_rep(window, window.subset(range(i[0], i[1] + 1)), field)
    kj = interval_rep(window, window.subset(range(j[0], j[1] + 1)), field)
    return len(hom_space(ki, kj))


@dataclass
class LemmaVerdict:
    ok: bool
    kind: str
    assignment: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "kind": self.kind,
            "assignment": {str(k): list(v) for k, v in self.assignment.items()},
            "failures": [str(f) for f in self.failures],
        }


def _containment(inner: Barcode, outer: Barcode) -> tuple[dict, list]:
    assignment, failures = {}, []
    for iv in inner.intervals():
        host = next((j for j in outer.intervals() if iv in j), None)
        if host is None:
            failures.append(iv)
        else:
            assignment[iv] = host
    return assignment, failures


def mono_containment_check(f: Morphism) -> LemmaVerdict:
    """Monos: every source bar sits inside a target bar.  Epis: every target bar sits inside a source bar.

    ``kind`` is ``"vacuous"`` when ``f`` is neither.
    """
    mono, epi = is_mono(f), is_epi(f)
    if not (mono or epi):
        return LemmaVerdict(True, "vacuous")
    src, tgt = decompose(f.source), decompose(f.target)
    assignment, failures = {}, []
    if mono:
        a, fl = _containment(src, tgt)
        assignment.update({("mono", k): v for k, v in a.items()})
        failures += fl
    if epi:
        a, fl = _containment(tgt, src)
        assignment.update({("epi", k): v for k, v in a.items()})
        failures += fl
    kind = "iso" if mono and epi else ("mono" if mono else "epi")
    return LemmaVerdict(not failures, kind, {k[1]: v for k, v in assignment.items()}, failures)


def direct_summand_of_tensor_check(f: Morphism) -> LemmaVerdict:
    """For a mono ``V -> W`` the barcode of ``V (x) W`` contains that of ``V``; for an epi, that of ``W``."""
    mono, epi = is_mono(f), is_epi(f)
    if not (mono or epi):
        raise ValueError("morphism is neither mono nor epi")
    prod = decompose(tensor(f.source, f.target))
    failures = []
    if mono and not decompose(f.source).issubmultiset(prod):
        failures.append("source barcode is not a summand of the tensor")
    if epi and not decompose(f.target).issubmultiset(prod):
        failures.append("target barcode is not a summand of the tensor")
    kind = "iso" if mono and epi else ("mono" if mono else "epi")
    return LemmaVerdict(not failures, kind, {}, failures)


def _touches_right(code: Barcode, window: QuiverWindow) -> list[Interval]:
    return [iv for iv in code.intervals() if iv.b == window.hi]


def bounded_extension_check(
    v1: Representation,
    v2: Representation,
    eps: Sequence[Matrix] | None = None,
    trials: int = 1,
    seed=None,
) -> LemmaVerdict:
    """Middle terms of extensions of ``v2`` by ``v1`` keep every bar off the window's right edge.

    The right edge stands in for ``+inf``.  With ``eps`` given, that extension
    is checked once; otherwise ``trials`` random extensions are drawn.
    """
    w = v1.window
    if w.orientation != "R" * (w.size - 1):
        raise ValueError("bounded extension check needs all arrows pointing right")
    for name, v in (("v1", v1), ("v2", v2)):
        bad = _touches_right(decompose(v), w)
        if bad:
            raise ValueError(f"{name} has bars touching the right edge: {bad}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    failures = []
    runs = [eps] if eps is not None else [None] * trials
    for t, e in enumerate(runs):
        mid = extension(v1, v2, e) if e is not None else extension(v1, v2, seed=rng)[0]
        if e is not None:
            mid = mid[0]
        bad = _touches_right(decompose(mid), w)
        if bad:
            failures.append({"trial": t, "bars": [str(b) for b in bad]})
    return LemmaVerdict(not failures, "extension", {}, failures)


def _random_barcode(window: QuiverWindow, rng: np.random.Generator, n: int, right_limit: int | None = None) -> Barcode:
    hi = window.hi if right_limit is None else right_limit
    bars = []
    for _ in range(n):
        a = int(rng.integers(window.lo, hi + 1))
        b = int(rng.integers(a, hi + 1))
        bars.append((a, b))
    return Barcode.of(bars)


def generate_mono_or_epi(
    window: QuiverWindow, field: Field, rng: np.random.Generator, kind: str = "mono", attempts: int = 20
) -> Morphism | None:
    """A random mono (or epi) between interval sums on a rightward window, or ``None``.

    The target (or source) is planted so that such maps exist, then the map
    is drawn from the full Hom space after random base changes.
    """
    inner = _random_barcode(window, rng, int(rng.integers(1, 4)))
    outer_bars = []
    for iv in inner.intervals():
        if kind == "mono":
            outer_bars.append((int(rng.integers(window.lo, iv.a + 1)), iv.b))
        else:
            outer_bars.append((iv.a, int(rng.integers(iv.b, window.hi + 1))))
    extra = _random_barcode(window, rng, int(rng.integers(0, 3)))
    outer = Barcode.of(outer_bars + [tuple(iv) for iv in extra.intervals()])
    a = base_change(assemble(window, inner, field), rng)
    b = base_change(assemble(window, outer, field), rng)
    src, tgt = (a, b) if kind == "mono" else (b, a)
    for _ in range(attempts):
        f = random_hom(src, tgt, rng)
        if (kind == "mono" and is_mono(f)) or (kind == "epi" and is_epi(f)):
            return f
    return None


# -- derivation certificates -------------------------------------------------------


class MalformedCertificate(ValueError):
    """The certificate is not well formed (bad reference, unknown op, foreign seed)."""


OPS = ("tensor", "ext", "ker", "coker")


@dataclass(frozen=True)
class CertStep:
    op: str
    args: tuple[int, ...]
    claim: SymbolicBarcode
    factor: SymbolicBarcode | None = None

    def to_json(self) -> dict:
        d = {"op": self.op, "args": list(self.args), "claim": self.claim.to_json()}
        if self.factor is not None:
            d["factor"] = self.factor.to_json()
        return d

    @classmethod
    def from_json(cls, d: dict) -> CertStep:
        factor = d.get("factor")
        return cls(
            str(d["op"]),
            tuple(int(a) for a in d["args"]),
            SymbolicBarcode.from_json(d["claim"]),
            None if factor is None else SymbolicBarcode.from_json(factor),
        )


@dataclass(frozen=True)
class DerivationCertificate:
    """Objects are numbered seeds first, then steps; ``args`` index into that list."""

    seeds: tuple[SymbolicBarcode, ...]
    steps: tuple[CertStep, ...]

    def to_json(self) -> dict:
        return {"seeds": [s.to_json() for s in self.seeds], "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, d: dict) -> DerivationCertificate:
        try:
            return cls(
                tuple(SymbolicBarcode.from_json(s) for s in d["seeds"]),
                tuple(CertStep.from_json(s) for s in d["steps"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"cannot parse certificate: {exc}") from exc


@dataclass
class CertVerdict:
    accepted: bool
    failing_step: int | None = None
    reason: str = ""
    final: SymbolicBarcode | None = None

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "failing_step": self.failing_step,
            "reason": self.reason,
            "final": None if self.final is None else self.final.to_json(),
            "final_bounded": None if self.final is None else is_bounded(self.final),
        }


def _covered(claim: SymbolicBarcode, source: SymbolicBarcode) -> str | None:
    """Every claimed bar inside a source bar; dust inside source dust or a source bar."""
    for iv, _ in claim.bars:
        if any(j.contains(iv) for j, _ in source.bars):
            continue
        if iv.a == iv.b and any(iv.a in d for d in source.dust):
            continue
        return f"bar {iv} lies in no bar of the source"
    for d in claim.dust:
        rng = ExtendedInterval(d.lo, d.hi)
        if any(d.is_subprogression_of(s) for s in source.dust):
            continue
        if any(j.contains(rng) for j, _ in source.bars):
            continue
        return f"dust {d.to_json()} is covered by no source component"
    return None


def check_derivation(cert: DerivationCertificate, allowed: Sequence[SymbolicBarcode] = (ZERO, K_PRIME_Z)) -> CertVerdict:
    """Replay ``cert``; every claim must follow its rule and stay bounded.

    Rules: ``tensor`` claims must equal the symbolic tensor with the given
    factor; ``ext`` claims have the summed pointwise dimension; ``ker``
    (``coker``) claims have every bar inside a bar of the source (target).
    Raises :class:`MalformedCertificate` for structural problems.
    """
    objs: list[SymbolicBarcode] = []
    for k, s in enumerate(cert.seeds):
        if not any(s.equivalent(a) for a in allowed):
            raise MalformedCertificate(f"seed {k} is not in the generating set")
        objs.append(s)
    n_seeds = len(objs)
    for j, st in enumerate(cert.steps):
        here = n_seeds + j
        if st.op not in OPS:
            raise MalformedCertificate(f"step {j}: unknown op {st.op!r}")
        need = 1 if st.op == "tensor" else 2
        if len(st.args) != need:
            raise MalformedCertificate(f"step {j}: {st.op} takes {need} argument(s)")
        for a in st.args:
            if not 0 <= a < here:
                raise MalformedCertificate(f"step {j}: argument {a} is not an earlier object")
        ins = [objs[a] for a in st.args]
        problem = None
        if st.op == "tensor":
            if st.factor is None:
                raise MalformedCertificate(f"step {j}: tensor needs a factor")
            if not st.claim.equivalent(symbolic_tensor(ins[0], st.factor)):
                problem = "claim is not the tensor of its inputs"
        elif st.op == "ext":
            both = SymbolicBarcode(ins[0].bars + ins[1].bars, ins[0].dust + ins[1].dust)
            if not st.claim.same_dims(both):
                problem = "claim does not have the dimensions of an extension of its inputs"
        elif st.op == "ker":
            problem = _covered(st.claim, ins[0])
        else:
            problem = _covered(st.claim, ins[1])
        if problem is None and not is_bounded(st.claim):
            problem = "claim has an unbounded bar"
        if problem is not None:
            return CertVerdict(False, j, problem, st.claim)
        objs.append(st.claim)
    return CertVerdict(True, None, "", objs[-1] if objs else None)


def bounded_derivation(n_steps: int = 10) -> DerivationCertificate:
    """A valid certificate exercising every rule, starting from ``K'`` on Z."""
    seeds = (K_PRIME_Z,)
    steps: list[CertStep] = []
    objs = [K_PRIME_Z]

    def add(op, args, claim, factor=None):
        steps.append(CertStep(op, tuple(args), claim, factor))
        objs.append(claim)
        return len(objs) - 1

    # object k + 1 is created by step k
    plan = [
        lambda: add("tensor", [0], symbolic_tensor(objs[0], K_Z), K_Z),
        lambda: add("tensor", [0], symbolic_tensor(objs[0], SymbolicBarcode.of((0, 4))), SymbolicBarcode.of((0, 4))),
        lambda: add("tensor", [0], symbolic_tensor(objs[0], SymbolicBarcode(dust=(Dust(1, 3),))), SymbolicBarcode(dust=(Dust(1, 3),))),
        lambda: add("ext", [2, 3], SymbolicBarcode(objs[2].bars + objs[3].bars, objs[2].dust + objs[3].dust)),
        lambda: add("ker", [1, 0], SymbolicBarcode(dust=(Dust(0, 2),))),
        lambda: add("coker", [0, 2], SymbolicBarcode.of((2, 2), (3, 3))),
        lambda: add("ext", [5, 6], SymbolicBarcode(objs[6].bars, objs[5].dust)),
        lambda: add("tensor", [7], symbolic_tensor(objs[7], SymbolicBarcode.of((-INF, 10))), SymbolicBarcode.of((-INF, 10))),
        lambda: add("ker", [8, 8], SymbolicBarcode(dust=(Dust(0, 4, -INF, 8),))),
        lambda: add("tensor", [9], symbolic_tensor(objs[9], SymbolicBarcode.of((0, INF))), SymbolicBarcode.of((0, INF))),
    ]
    if n_steps > len(plan):
        extra = [lambda: add("tensor", [len(objs) - 1], symbolic_tensor(objs[-1], K_Z), K_Z)] * (n_steps - len(plan))
        plan += extra
    for p in plan[:n_steps]:
        p()
    return DerivationCertificate(seeds, tuple(steps))


def adversarial_corpus() -> list[DerivationCertificate]:
    """Well-formed certificates each of which claims an unbounded bar somewhere."""
    ray_r, ray_l = SymbolicBarcode.of((0, INF)), SymbolicBarcode.of((-INF, 0))
    mixed = SymbolicBarcode.of((0, 3), (5, INF))
    unb = [K_Z, ray_r, ray_l, mixed, SymbolicBarcode(((ExtendedInterval(-INF, INF), 2),), (Dust(0, 1),))]
    out: list[DerivationCertificate] = []
    seed = (K_PRIME_Z,)
    good = list(bounded_derivation(10).steps)
    for claim in unb:
        # tensor claims that do not match the actual product
        out.append(DerivationCertificate(seed, (CertStep("tensor", (0,), claim, K_Z),)))
        # extension of two copies of the dust
        out.append(DerivationCertificate(seed, (CertStep("ext", (0, 0), claim),)))
        # kernel / cokernel out of dust
        out.append(DerivationCertificate(seed, (CertStep("ker", (0, 0), claim),)))
        out.append(DerivationCertificate(seed, (CertStep("coker", (0, 0), claim),)))
    # a valid prefix followed by a bad final step
    for claim in (K_Z, ray_r, ray_l):
        out.append(DerivationCertificate(seed, tuple(good) + (CertStep("ext", (10, 10), claim),)))
        out.append(DerivationCertificate(seed, tuple(good) + (CertStep("coker", (3, 4), claim),)))
    # the zero seed
    out.append(DerivationCertificate((ZERO,), (CertStep("tensor", (0,), K_Z, K_Z),)))
    out.append(DerivationCertificate((ZERO, K_PRIME_Z), (CertStep("ext", (0, 1), K_Z),)))
    return out
