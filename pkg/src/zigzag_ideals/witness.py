"""Machine-checked membership chains that force ``K_window`` into a prime ideal.

Starting from the assumptions ``V in M`` and ``K_{supp(V)^c} in M``, the
chain derives ``K'`` (K everywhere, zero arrows), the sources ``K_C`` and
then, for each case of the prime split ``K_C = K_B (x) K_D``, grows ``B``
rightward and leftward from the sources until only a sparse set ``E`` of
sinks is missing, finishing with ``0 -> K_E -> K_window -> K_{B''} -> 0``.

Labels follow a fixed convention: sinks and sources (window edges
included) alternate along the window; the leftmost interior sink gets
index 0, and label ``k`` is a sink when ``k`` is even.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .barcode import decompose
from .boolean import BooleanIdealFamily, all_subsets
from .linalg import Field, Matrix
from .quiver import (
    Morphism,
    QuiverWindow,
    Representation,
    extension,
    interval_rep,
    kernel,
    kernel_rank_one,
    cokernel,
    short_exact_report,
    support,
    tensor,
)
from .subsets import FiniteSubset

__all__ = [
    "Label",
    "SinkSourceLabeling",
    "sinks_and_sources",
    "bdc_sets",
    "SaturationResult",
    "saturate_right",
    "saturate_left",
    "Seed",
    "TensorAbsorb",
    "Extension",
    "KernelOf",
    "CokernelOf",
    "IsoReplace",
    "PrimeFactor",
    "WitnessStep",
    "WitnessChain",
    "WitnessError",
    "full_witness",
    "verify_chain",
    "support_ideal_closure",
]


class WitnessError(ValueError):
    """A precondition failed or a chain step does not check."""


@dataclass(frozen=True)
class Label:
    index: int
    vertex: int

    @property
    def role(self) -> str:
        return "sink" if self.index % 2 == 0 else "source"


@dataclass(frozen=True)
class SinkSourceLabeling:
    window: QuiverWindow
    labels: tuple[Label, ...]

    def __post_init__(self):
        prev = None
        for lab in self.labels:
            ok = self.window.is_sink(lab.vertex) if lab.role == "sink" else self.window.is_source(lab.vertex)
            if not ok:
                raise WitnessError(f"label {lab} is not a {lab.role}")
            if prev is not None and (lab.index != prev.index + 1 or lab.vertex <= prev.vertex):
                raise WitnessError("labels must be consecutive and increasing")
            prev = lab

    def vertex(self, index: int) -> int | None:
        for lab in self.labels:
            if lab.index == index:
                return lab.vertex
        return None

    def with_phase(self, phase: int, residue: int) -> list[Label]:
        """Labels whose index is ``residue`` mod 4 after shifting by ``phase``."""
        return [lab for lab in self.labels if (lab.index - phase) % 4 == residue]

    @property
    def sinks(self) -> list[int]:
        return [lab.vertex for lab in self.labels if lab.role == "sink"]

    @property
    def sources(self) -> list[int]:
        return [lab.vertex for lab in self.labels if lab.role == "source"]

    def to_json(self) -> list[dict]:
        return [{"index": lab.index, "vertex": lab.vertex, "role": lab.role} for lab in self.labels]


def sinks_and_sources(w: QuiverWindow) -> SinkSourceLabeling:
    """Alternating sink/source labels with ``t_0`` the leftmost interior sink.

    When no sink is interior (e.g. ``LLRR``) the leftmost sink is used.
    A single run has nothing to alternate and is rejected.
    """
    if w.size < 2 or w.max_path_length == w.size - 1:
        raise WitnessError(f"window {w} is a single run: no interior sink")
    special = [v for v in w.vertices if w.is_sink(v) or w.is_source(v)]
    sinks = [v for v in special if w.is_sink(v)]
    interior = [v for v in sinks if w.lo < v < w.hi]
    t0 = (interior or sinks)[0]
    base = special.index(t0)
    labels = tuple(Label(i - base, v) for i, v in enumerate(special))
    return SinkSourceLabeling(w, labels)


def _region(lab: SinkSourceLabeling, phase: int) -> FiniteSubset:
    """Union of ``[s_{4i-1}, s_{4i+1}]`` (indices shifted by ``phase``), truncated to the window."""
    w = lab.window
    inside = {3, 0, 1}
    members = set()
    labels = lab.labels
    for j, cur in enumerate(labels):
        if (cur.index - phase) % 4 in inside:
            members.add(cur.vertex)
            if j + 1 < len(labels) and (labels[j + 1].index - phase) % 4 in inside:
                members.update(range(cur.vertex, labels[j + 1].vertex + 1))
    return w.subset(members)


def bdc_sets(lab: SinkSourceLabeling) -> tuple[FiniteSubset, FiniteSubset, FiniteSubset]:
    """``B``, ``D`` and ``C = B & D`` (the labelled sources)."""
    if not lab.sources:
        raise WitnessError("need at least one labelled source")
    b = _region(lab, 0)
    d = _region(lab, 2)
    c = lab.window.subset(lab.sources)
    if b & d != c:
        raise AssertionError(f"B & D = {b & d!r} but C = {c!r}")
    return b, d, c


@dataclass(frozen=True)
class SaturationResult:
    start: FiniteSubset
    final: FiniteSubset
    rounds: tuple[FiniteSubset, ...]

    @property
    def steps(self) -> int:
        return len(self.rounds)

    @property
    def iterations(self) -> int:
        """Passes until ``B_m = B_{m+1}``: the growth rounds plus the pass that finds nothing new."""
        return len(self.rounds) + 1


def _saturate(b: FiniteSubset, lab: SinkSourceLabeling, phase: int, residue: int, direction: int) -> SaturationResult:
    w = lab.window
    anchors = [x.vertex for x in lab.with_phase(phase, residue)]
    cur = b
    rounds = []
    ell = 1
    while True:
        added = set()
        for s in anchors:
            path = [s + direction * j for j in range(1, ell + 1)]
            if all(w.lo <= x <= w.hi and not w.is_sink(x) for x in path):
                added.add(path[-1])
        new = w.subset(added) - cur
        if not new:
            break
        rounds.append(new)
        cur = cur | new
        ell += 1
    return SaturationResult(b, cur, tuple(rounds))


def saturate_right(b: FiniteSubset, lab: SinkSourceLabeling, w: QuiverWindow | None = None, phase: int = 0) -> SaturationResult:
    """Grow ``b`` rightward from each ``s_{4i+1}`` up to (not including) the next sink."""
    if w is not None and w != lab.window:
        raise WitnessError("labeling belongs to a different window")
    return _saturate(b, lab, phase, 1, +1)


def saturate_left(b: FiniteSubset, lab: SinkSourceLabeling, w: QuiverWindow | None = None, phase: int = 0) -> SaturationResult:
    """Grow ``b`` leftward from each ``s_{4i-1}`` down to (not including) the previous sink."""
    if w is not None and w != lab.window:
        raise WitnessError("labeling belongs to a different window")
    return _saturate(b, lab, phase, 3, -1)


# -- justifications --------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    note: str = ""


@dataclass(frozen=True)
class TensorAbsorb:
    member: int
    factor: Representation


@dataclass(frozen=True)
class Extension:
    sub: int
    quot: int
    eps: tuple[Matrix, ...]


@dataclass(frozen=True)
class KernelOf:
    source: int
    target: int
    morphism: Morphism


@dataclass(frozen=True)
class CokernelOf:
    source: int
    target: int
    morphism: Morphism


@dataclass(frozen=True)
class IsoReplace:
    member: int


@dataclass(frozen=True)
class PrimeFactor:
    """``obj (x) other`` is the member ``product``; primality picks ``obj`` in this branch."""

    product: int
    other: Representation


Justification = Seed | TensorAbsorb | Extension | KernelOf | CokernelOf | IsoReplace | PrimeFactor


@dataclass(frozen=True, eq=False)
class WitnessStep:
    obj: Representation
    why: Justification
    branch: str | None = None
    label: str = ""
    detail: dict = dc_field(default_factory=dict)


@dataclass
class WitnessChain:
    window: QuiverWindow
    steps: list[WitnessStep] = dc_field(default_factory=list)
    finals: dict[str, int] = dc_field(default_factory=dict)
    saturation: dict[str, dict] = dc_field(default_factory=dict)

    def add(self, obj: Representation, why: Justification, branch: str | None = None, label: str = "") -> int:
        self.steps.append(WitnessStep(obj, why, branch, label))
        return len(self.steps) - 1

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        out = []
        for i, st in enumerate(self.steps):
            why = st.why
            j: dict = {"tag": type(why).__name__}
            if isinstance(why, TensorAbsorb):
                j.update(member=why.member, factor_support=support(why.factor).to_json())
            elif isinstance(why, Extension):
                j.update(sub=why.sub, quot=why.quot)
            elif isinstance(why, (KernelOf, CokernelOf)):
                j.update(source=why.source, target=why.target, ranks=why.morphism.ranks())
            elif isinstance(why, IsoReplace):
                j.update(member=why.member)
            elif isinstance(why, PrimeFactor):
                j.update(product=why.product, other_support=support(why.other).to_json())
            elif isinstance(why, Seed):
                j.update(note=why.note)
            out.append(
                {
                    "index": i,
                    "branch": st.branch,
                    "label": st.label,
                    "dims": list(st.obj.dims),
                    "support": support(st.obj).to_json(),
                    "justification": j,
                    **({"exact_sequence": st.detail["exact"]} if "exact" in st.detail else {}),
                }
            )
        return {
            "window": self.window.to_json(),
            "steps": out,
            "finals": dict(self.finals),
            "saturation": self.saturation,
        }


def _gluing_eps(window: QuiverWindow, sub: FiniteSubset, quot: FiniteSubset, field: Field) -> tuple[Matrix, ...]:
    """Extension blocks gluing ``K_sub`` under ``K_quot`` into ``K_{sub | quot}``."""
    eps = []
    for k in range(window.size - 1):
        s, t = window.arrow(k)
        rows, cols = int(t in sub), int(s in quot)
        m = Matrix.zeros(field, rows, cols)
        if rows and cols:
            m = Matrix.identity(field, 1)
        eps.append(m)
    return tuple(eps)


def _emit_saturation(
    chain: WitnessChain,
    res: SaturationResult,
    current: int,
    kprime: int,
    branch: str,
    name: str,
    field: Field,
) -> int:
    w = chain.window
    cur_set = res.start
    for r, new in enumerate(res.rounds, 1):
        k_new = interval_rep(w, new, field)
        piece = chain.add(tensor(chain.steps[kprime].obj, k_new), TensorAbsorb(kprime, k_new), branch, f"{name}: K' (x) K_new round {r}")
        nxt = cur_set | new
        eps = _gluing_eps(w, new, cur_set, field)
        current = chain.add(interval_rep(w, nxt, field), Extension(piece, current, eps), branch, f"{name}_{r}")
        cur_set = nxt
    return current


def full_witness(w: QuiverWindow, v: Representation) -> WitnessChain:
    """Build and verify the chain deriving ``K_window`` from ``V`` and ``K_{supp(V)^c}``."""
    if v.window != w:
        raise WitnessError("representation lives on a different window")
    field = v.field
    supp = support(v)
    if supp == w.full():
        raise WitnessError("support of v must be a proper subset of the window")
    comp = supp.complement()
    chain = WitnessChain(w)
    i_v = chain.add(v, Seed("V assumed in M"), label="V")
    i_c = chain.add(interval_rep(w, comp, field), Seed("K_{supp(V)^c} assumed in M"), label="K_{supp(V)^c}")
    if comp == w.full():
        # supp(V) is empty: the second seed already is K_window
        chain.finals = {"B": i_c, "D": i_c}
        verify_chain(chain)
        return chain

    lab = sinks_and_sources(w)
    b, d, c = bdc_sets(lab)

    zero_eps = tuple(
        Matrix.zeros(field, v.dim(t), chain.steps[i_c].obj.dim(s)) for s, t in (w.arrow(k) for k in range(w.size - 1))
    )
    vsum, _, _ = extension(v, chain.steps[i_c].obj, zero_eps)
    i_sum = chain.add(vsum, Extension(i_v, i_c, zero_eps), label="V (+) K_{supp(V)^c}")
    dust = Representation.dust(w, field)
    i_x = chain.add(tensor(vsum, dust), TensorAbsorb(i_sum, dust), label="X = (V (+) K_c) (x) K'")
    x = chain.steps[i_x].obj
    f = kernel_rank_one(x)
    i_kp = chain.add(kernel(f)[0], KernelOf(i_x, i_x, f), label="K'")
    if chain.steps[i_kp].obj != dust:
        i_kp = chain.add(dust, IsoReplace(i_kp), label="K'")
    k_b, k_d, k_c = (interval_rep(w, s, field) for s in (b, d, c))
    i_kc = chain.add(tensor(chain.steps[i_kp].obj, k_c), TensorAbsorb(i_kp, k_c), label="K_C")

    for branch, phase, this, other in (("B", 0, k_b, k_d), ("D", 2, k_d, k_b)):
        start = b if branch == "B" else d
        cur = chain.add(this, PrimeFactor(i_kc, other), branch, f"K_{branch}")
        right = saturate_right(start, lab, phase=phase)
        cur = _emit_saturation(chain, right, cur, i_kp, branch, f"{branch}'", field)
        left = saturate_left(right.final, lab, phase=phase)
        cur = _emit_saturation(chain, left, cur, i_kp, branch, f"{branch}''", field)
        e = w.subset(x.vertex for x in lab.with_phase(phase, 2))
        if left.final != e.complement():
            raise WitnessError(f"branch {branch}: saturation ended at {left.final!r}, expected complement of {e!r}")
        k_e = interval_rep(w, e, field)
        i_e = chain.add(tensor(chain.steps[i_kp].obj, k_e), TensorAbsorb(i_kp, k_e), branch, "K_E")
        eps = _gluing_eps(w, e, left.final, field)
        chain.finals[branch] = chain.add(
            interval_rep(w, w.full(), field), Extension(i_e, cur, eps), branch, "K_window"
        )
        chain.saturation[branch] = {
            "right_rounds": right.steps,
            "left_rounds": left.steps,
            "right_iterations": right.iterations,
            "left_iterations": left.iterations,
            "max_path_length": w.max_path_length,
            "E": e.to_json(),
        }
    verify_chain(chain)
    return chain


def _check_step(chain: WitnessChain, i: int) -> None:
    st = chain.steps[i]
    why = st.why
    w = chain.window

    def ref(j: int) -> Representation:
        if not 0 <= j < i:
            raise WitnessError(f"step {i}: reference {j} does not point backwards")
        other = chain.steps[j]
        if other.branch is not None and other.branch != st.branch:
            raise WitnessError(f"step {i}: cites step {j} from branch {other.branch}")
        return other.obj

    if st.obj.window != w:
        raise WitnessError(f"step {i}: object on the wrong window")
    if isinstance(why, Seed):
        if st.branch is not None:
            raise WitnessError(f"step {i}: seeds belong to the common trunk")
        return
    if isinstance(why, TensorAbsorb):
        prod = tensor(ref(why.member), why.factor)
        if st.obj != prod:
            raise WitnessError(f"step {i}: object is not member (x) factor")
        return
    if isinstance(why, Extension):
        sub, quot = ref(why.sub), ref(why.quot)
        try:
            mid, inc, proj = extension(sub, quot, why.eps)
        except (ValueError, AssertionError) as exc:
            raise WitnessError(f"step {i}: bad extension data: {exc}") from exc
        report = short_exact_report(inc, proj)
        if not report["exact"]:
            raise WitnessError(f"step {i}: sequence not exact: {report['failures']}")
        if st.obj != mid:
            raise WitnessError(f"step {i}: object differs from the extension's middle term")
        st.detail["exact"] = report["dims"]
        return
    if isinstance(why, (KernelOf, CokernelOf)):
        src, tgt = ref(why.source), ref(why.target)
        f = why.morphism
        if f.source != src or f.target != tgt:
            raise WitnessError(f"step {i}: morphism endpoints are not the cited members")
        if f.defect() is not None:
            raise WitnessError(f"step {i}: {f.defect()}")
        obj = kernel(f)[0] if isinstance(why, KernelOf) else cokernel(f)[0]
        if st.obj != obj:
            raise WitnessError(f"step {i}: object differs from the computed (co)kernel")
        return
    if isinstance(why, IsoReplace):
        if decompose(st.obj) != decompose(ref(why.member)):
            raise WitnessError(f"step {i}: barcodes differ")
        return
    if isinstance(why, PrimeFactor):
        if st.branch is None:
            raise WitnessError(f"step {i}: a prime split must open a branch")
        prod = ref(why.product)
        if decompose(tensor(st.obj, why.other)) != decompose(prod):
            raise WitnessError(f"step {i}: obj (x) other is not the cited member")
        return
    raise WitnessError(f"step {i}: unknown justification {why!r}")


def verify_chain(chain: WitnessChain) -> None:
    """Re-check every step; raise :class:`WitnessError` naming the first failure."""
    for i in range(len(chain.steps)):
        _check_step(chain, i)
    # every prime split needs its mirror case
    splits = {}
    for i, st in enumerate(chain.steps):
        if isinstance(st.why, PrimeFactor):
            splits.setdefault(st.why.product, []).append((st.branch, st.obj, st.why.other))
    for product, cases in splits.items():
        if len(cases) != 2 or cases[0][0] == cases[1][0]:
            raise WitnessError(f"prime split of step {product} does not cover both cases")
        (_, a, a_other), (_, b, b_other) = cases
        if not (a == b_other and b == a_other):
            raise WitnessError(f"prime split of step {product}: cases are not mirror images")
    unit = Representation.unit(chain.window, chain.steps[0].obj.field) if chain.steps else None
    if not chain.finals:
        raise WitnessError("chain has no final step")
    for branch, idx in chain.finals.items():
        if chain.steps[idx].obj != unit:
            raise WitnessError(f"branch {branch} ends at {chain.steps[idx].obj!r}, not K_window")


def support_ideal_closure(seeds: Sequence[FiniteSubset], universe: tuple[int, int] | None = None) -> BooleanIdealFamily:
    """Smallest union-closed, downward-closed family containing ``seeds`` (and the empty set)."""
    seeds = list(seeds)
    if universe is None:
        if not seeds:
            raise ValueError("universe needed when there are no seeds")
        universe = seeds[0].universe
    lo, hi = universe
    for s in seeds:
        if s.universe != (lo, hi):
            raise ValueError("seeds live in different universes")
    top = FiniteSubset.empty(lo, hi)
    for s in seeds:
        top = top | s
    # union-closure of the seeds followed by downward closure: subsets of some finite union
    unions = {FiniteSubset.empty(lo, hi)}
    for s in seeds:
        unions |= {u | s for u in unions}
    members = {x for x in all_subsets(lo, hi) if any(x.issubset(u) for u in unions)}
    return BooleanIdealFamily(lo, hi, frozenset(members))
