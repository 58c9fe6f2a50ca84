"""Interval decomposition of zigzag representations.

The rank invariant ``r(a, b)`` is the rank of the canonical map from the
limit of ``V`` restricted to ``[a, b]`` to its colimit.  On an interval
module ``K_I`` it is 1 exactly when ``[a, b]`` lies inside ``I``, so for an
interval-decomposable ``V`` it counts the bars containing ``[a, b]``, and the
barcode follows by inclusion-exclusion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from .linalg import Field, GF2, Matrix, cokernel_projection, kernel_basis, random_invertible, rank, solve
from .quiver import QuiverWindow, Representation, direct_sum, interval_rep

__all__ = [
    "Interval",
    "Barcode",
    "rank_invariant",
    "rank_invariant_table",
    "limit_colimit_data",
    "decompose",
    "assemble",
    "base_change",
    "isomorphic",
    "render_ascii",
]


class Interval(NamedTuple):
    a: int
    b: int

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.a <= x.a and x.b <= self.b
        return self.a <= x <= self.b

    def intersect(self, other: Interval) -> Interval | None:
        a, b = max(self.a, other.a), min(self.b, other.b)
        return Interval(a, b) if a <= b else None

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


@dataclass(frozen=True)
class Barcode:
    """Multiset of intervals, stored as sorted ``(interval, multiplicity)`` pairs."""

    bars: tuple[tuple[Interval, int], ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for iv, m in self.bars:
            iv = Interval(int(iv[0]), int(iv[1]))
            if iv.a > iv.b:
                raise ValueError(f"bad interval {iv}")
            if m < 0:
                raise ValueError(f"negative multiplicity for {iv}")
            merged[iv] += int(m)
        object.__setattr__(self, "bars", tuple(sorted((iv, m) for iv, m in merged.items() if m > 0)))

    @classmethod
    def of(cls, bars: Mapping | Iterable) -> Barcode:
        """From ``{(a, b): mult}`` or an iterable of ``(a, b)`` (each counted once)."""
        if isinstance(bars, Mapping):
            return cls(tuple((Interval(*k), v) for k, v in bars.items()))
        return cls(tuple(Counter(Interval(*k) for k in bars).items()))

    def __iter__(self) -> Iterator[tuple[Interval, int]]:
        return iter(self.bars)

    def __len__(self) -> int:
        return sum(m for _, m in self.bars)

    def as_dict(self) -> dict[Interval, int]:
        return dict(self.bars)

    def counter(self) -> Counter:
        return Counter(dict(self.bars))

    def multiplicity(self, a: int, b: int) -> int:
        return self.as_dict().get(Interval(a, b), 0)

    def intervals(self) -> list[Interval]:
        """Each bar repeated by its multiplicity."""
        return [iv for iv, m in self.bars for _ in range(m)]

    def dims(self, window: QuiverWindow) -> list[int]:
        return [sum(m for iv, m in self.bars if v in iv) for v in window.vertices]

    def issubmultiset(self, other: Barcode) -> bool:
        theirs = other.as_dict()
        return all(theirs.get(iv, 0) >= m for iv, m in self.bars)

    def to_json(self) -> dict:
        return {"bars": [{"a": iv.a, "b": iv.b, "mult": m} for iv, m in self.bars]}

    @classmethod
    def from_json(cls, d: dict) -> Barcode:
        return cls(tuple((Interval(int(x["a"]), int(x["b"])), int(x.get("mult", 1))) for x in d["bars"]))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{iv}:{m}" for iv, m in self.bars) + "}"


def _check_range(v: Representation, a: int, b: int) -> None:
    w = v.window
    if not (w.lo <= a <= b <= w.hi):
        raise ValueError(f"range [{a}, {b}] outside window [{w.lo}, {w.hi}]")


def limit_colimit_data(v: Representation, a: int, b: int) -> dict:
    """The limit and colimit of ``v`` over ``[a, b]`` as explicit matrices.

    Returns ``offsets`` into the stacked space ``(+)_{i in [a,b]} V_i``, the
    limit basis ``limit`` (columns are compatible families), and
    ``relations`` whose column span is the subspace divided out by the colimit.
    """
    _check_range(v, a, b)
    field, w = v.field, v.window
    verts = list(range(a, b + 1))
    dims = [v.dim(i) for i in verts]
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    n = offsets[-1]

    def place(vertex: int) -> slice:
        j = vertex - a
        return slice(offsets[j], offsets[j + 1])

    constraint_rows = []
    relation_cols = []
    for k in range(a - w.lo, b - w.lo):
        s, t = w.arrow(k)
        vm = v.maps[k]
        # limit: x_t - V x_s = 0
        block = field.zeros(v.dim(t), n)
        block[:, place(t)] = field.eye(v.dim(t))
        block[:, place(s)] = field.reduce(-vm.data)
        constraint_rows.append(block)
        # colimit relation: iota_s(x) - iota_t(V x)
        col = field.zeros(n, v.dim(s))
        col[place(s), :] = field.eye(v.dim(s))
        col[place(t), :] = field.reduce(-vm.data)
        relation_cols.append(col)
    constraint = Matrix(field, np.concatenate(constraint_rows, axis=0)) if constraint_rows else Matrix.zeros(field, 0, n)
    limit = kernel_basis(constraint)
    relations = (
        Matrix(field, np.concatenate(relation_cols, axis=1)) if relation_cols else Matrix.zeros(field, n, 0)
    )
    return {"offsets": offsets, "limit": limit, "relations": relations, "constraint": constraint}


def rank_invariant(v: Representation, a: int, b: int) -> int:
    """Rank of the limit -> colimit map of ``v`` over ``[a, b]``, from the full matrices.

    This is the reference computation; :func:`rank_invariant_table` sweeps
    the window incrementally and is what :func:`decompose` uses.
    """
    data = limit_colimit_data(v, a, b)
    field = v.field
    lim, rel = data["limit"], data["relations"]
    n = rel.rows
    # send each family to iota_a(x_a)
    comp = field.zeros(n, lim.cols)
    d_a = data["offsets"][1]
    comp[:d_a, :] = lim.data[:d_a, :]
    both = Matrix(field, np.concatenate([rel.data, comp], axis=1))
    return rank(both) - rank(rel)


def colimit_classes_agree(v: Representation, a: int, b: int) -> bool:
    """Whether every compatible family has the same colimit class at each of its components."""
    data = limit_colimit_data(v, a, b)
    field = v.field
    lim, rel, off = data["limit"], data["relations"], data["offsets"]
    n = rel.rows
    base = rank(rel)
    for j in range(1, len(off) - 1):
        diff = field.zeros(n, lim.cols)
        diff[off[0] : off[1], :] = lim.data[off[0] : off[1], :]
        diff[off[j] : off[j + 1], :] = field.reduce(diff[off[j] : off[j + 1], :] - lim.data[off[j] : off[j + 1], :])
        if rank(Matrix(field, np.concatenate([rel.data, diff], axis=1))) != base:
            return False
    return True


def _vstack(field: Field, top: Matrix, bottom: Matrix) -> Matrix:
    return Matrix(field, np.concatenate([top.data, bottom.data], axis=0))


def _hstack(field: Field, left: Matrix, right: Matrix) -> Matrix:
    return Matrix(field, np.concatenate([left.data, right.data], axis=1))


def rank_invariant_table(v: Representation) -> dict[tuple[int, int], int]:
    """``r(a, b)`` for every ``lo <= a <= b <= hi`` by sweeping right from each ``a``.

    Tracks, for the current right end ``i``:
    the limit as families (component at ``a`` and at ``i``) and the colimit
    as a quotient (class maps out of ``V_a`` and ``V_i``).
    """
    field, w = v.field, v.window
    table: dict[tuple[int, int], int] = {}
    for a in w.vertices:
        d = v.dim(a)
        lim_a = lim_cur = Matrix.identity(field, d)
        col_a = col_cur = Matrix.identity(field, d)
        table[(a, a)] = d
        for i in range(a, w.hi):
            k = i - w.lo
            vm = v.maps[k]
            if w.orientation[k] == "R":
                # i -> i+1: families extend uniquely
                lim_cur = vm @ lim_cur
                # quotient of colim (+) V_{i+1} by (q x, -V x)
                p = cokernel_projection(_vstack(field, col_cur, -vm))
                c = col_cur.rows
                col_a = Matrix(field, p.data[:, :c]) @ col_a
                col_cur = Matrix(field, p.data[:, c:])
            else:
                # i+1 -> i: pairs (family c, y) with lim_cur c = V y
                nb = kernel_basis(_hstack(field, lim_cur, -vm))
                kk = lim_cur.cols
                lim_a = lim_a @ Matrix(field, nb.data[:kk, :])
                lim_cur = Matrix(field, nb.data[kk:, :])
                # iota_{i+1}(y) ~ iota_i(V y): no new generators survive
                col_cur = col_cur @ vm
            table[(a, i + 1)] = rank(col_a @ lim_a)
    return table


def decompose(v: Representation) -> Barcode:
    """Barcode of ``v`` via the rank invariant and inclusion-exclusion."""
    w = v.window
    r = rank_invariant_table(v)

    def get(a: int, b: int) -> int:
        if a < w.lo or b > w.hi:
            return 0
        return r[(a, b)]

    bars = []
    for a in w.vertices:
        for b in range(a, w.hi + 1):
            m = get(a, b) - get(a - 1, b) - get(a, b + 1) + get(a - 1, b + 1)
            if m < 0:
                raise AssertionError(f"negative multiplicity {m} for [{a},{b}]: rank invariant is inconsistent")
            if m:
                bars.append((Interval(a, b), m))
    code = Barcode(tuple(bars))
    if code.dims(w) != list(v.dims):
        raise AssertionError(f"barcode {code} does not account for dims {list(v.dims)}")
    return code


def assemble(window: QuiverWindow, code: Barcode, field: Field = GF2) -> Representation:
    """Direct sum of interval representations, one per bar (with multiplicity)."""
    out = Representation.zero(window, field)
    for iv in code.intervals():
        if not (window.lo <= iv.a <= iv.b <= window.hi):
            raise ValueError(f"bar {iv} outside window [{window.lo}, {window.hi}]")
        out = direct_sum(out, interval_rep(window, window.subset(range(iv.a, iv.b + 1)), field))
    return out


def base_change(v: Representation, seed=None, identity: bool = False) -> Representation:
    """Conjugate every arrow map by random invertible matrices at its endpoints."""
    field, w = v.field, v.window
    if identity:
        mats = [Matrix.identity(field, d) for d in v.dims]
    else:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        mats = [random_invertible(d, rng, field) for d in v.dims]
    invs = [solve(p, Matrix.identity(field, p.rows)) for p in mats]
    maps = []
    for k in range(w.size - 1):
        s, t = w.arrow(k)
        maps.append(mats[t - w.lo] @ v.maps[k] @ invs[s - w.lo])
    return Representation(w, field, v.dims, tuple(maps))


def isomorphic(v: Representation, w: Representation) -> bool:
    """Isomorphism test by barcode equality (barcodes are a complete invariant)."""
    return v.window == w.window and v.field == w.field and decompose(v) == decompose(w)


def render_ascii(code: Barcode, window: QuiverWindow | None = None) -> str:
    """One line per bar: ``a──b`` indented by the bar's offset in the window."""
    lo = window.lo if window is not None else min((iv.a for iv, _ in code.bars), default=0)
    lines = []
    for iv, m in code.bars:
        body = str(iv.a) if iv.a == iv.b else f"{iv.a}{'─' * (iv.b - iv.a)}{iv.b}"
        line = " " * (iv.a - lo) + body
        if m > 1:
            line += f"  x{m}"
        lines.append(line)
    return "\n".join(lines)
