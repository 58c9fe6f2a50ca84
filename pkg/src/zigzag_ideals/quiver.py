"""Type-A quivers on finite windows and their representations.

A window ``[lo, hi]`` carries one arrow between ``i`` and ``i + 1`` for each
``lo <= i < hi``; its direction is the ``i - lo``-th letter of the
orientation word (``R``: ``i -> i+1``, ``L``: ``i+1 -> i``).  A
representation puts a finite-dimensional space at each vertex and a matrix
of shape ``dims[target] x dims[source]`` on each arrow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .linalg import (
    GF2,
    Field,
    Matrix,
    block_diag,
    cokernel_projection,
    get_field,
    kernel_basis,
    rank,
    random_matrix,
    solve,
)
from .subsets import FiniteSubset

__all__ = [
    "QuiverWindow",
    "Representation",
    "Morphism",
    "InvalidMorphism",
    "interval_rep",
    "direct_sum",
    "tensor",
    "kernel",
    "cokernel",
    "support",
    "extension",
    "kernel_rank_one",
    "is_mono",
    "is_epi",
    "hom_space",
    "random_hom",
    "random_orientation",
    "random_representation",
    "tensor_morphism",
    "direct_sum_all",
    "exactness_report",
    "short_exact_report",
]


class InvalidMorphism(ValueError):
    """A family of matrices that fails a commuting square or a shape check."""


@dataclass(frozen=True)
class QuiverWindow:
    lo: int
    hi: int
    orientation: str = ""

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"window needs lo <= hi, got [{self.lo}, {self.hi}]")
        if len(self.orientation) != self.hi - self.lo:
            raise ValueError(
                f"orientation {self.orientation!r} has length {len(self.orientation)}, "
                f"window [{self.lo}, {self.hi}] needs {self.hi - self.lo}"
            )
        if set(self.orientation) - {"R", "L"}:
            raise ValueError(f"orientation may only contain R and L: {self.orientation!r}")

    @classmethod
    def linear(cls, lo: int, hi: int) -> QuiverWindow:
        return cls(lo, hi, "R" * (hi - lo))

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def vertices(self) -> range:
        return range(self.lo, self.hi + 1)

    def index(self, vertex: int) -> int:
        if not self.lo <= vertex <= self.hi:
            raise ValueError(f"vertex {vertex} outside window [{self.lo}, {self.hi}]")
        return vertex - self.lo

    def arrow(self, k: int) -> tuple[int, int]:
        """(source, target) vertices of the arrow between ``lo + k`` and ``lo + k + 1``."""
        a = self.lo + k
        return (a, a + 1) if self.orientation[k] == "R" else (a + 1, a)

    @property
    def arrows(self) -> list[tuple[int, int]]:
        return [self.arrow(k) for k in range(len(self.orientation))]

    @property
    def max_path_length(self) -> int:
        """Length of the longest directed path, i.e. the longest run of equal letters."""
        best = run = 0
        prev = None
        for c in self.orientation:
            run = run + 1 if c == prev else 1
            prev = c
            best = max(best, run)
        return best

    def is_sink(self, v: int) -> bool:
        i = self.index(v)
        if self.size == 1:
            return False
        left_in = i == 0 or self.orientation[i - 1] == "R"
        right_in = i == self.size - 1 or self.orientation[i] == "L"
        return left_in and right_in

    def is_source(self, v: int) -> bool:
        i = self.index(v)
        if self.size == 1:
            return False
        left_out = i == 0 or self.orientation[i - 1] == "L"
        right_out = i == self.size - 1 or self.orientation[i] == "R"
        return left_out and right_out

    @property
    def sinks(self) -> list[int]:
        return [v for v in self.vertices if self.is_sink(v)]

    @property
    def sources(self) -> list[int]:
        return [v for v in self.vertices if self.is_source(v)]

    def subset(self, elems=()) -> FiniteSubset:
        return FiniteSubset.of(self.lo, self.hi, elems)

    def full(self) -> FiniteSubset:
        return FiniteSubset.full(self.lo, self.hi)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "orientation": self.orientation}

    @classmethod
    def from_json(cls, d: dict) -> QuiverWindow:
        return cls(int(d["lo"]), int(d["hi"]), str(d.get("orientation", "")))

    def __str__(self) -> str:
        return f"[{self.lo}..{self.hi}] {self.orientation or '-'}"


@dataclass(frozen=True, eq=False)
class Representation:
    window: QuiverWindow
    field: Field
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.dims) != self.window.size:
            raise ValueError(f"{len(self.dims)} dims for a window of size {self.window.size}")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be non-negative")
        if len(self.maps) != self.window.size - 1:
            raise ValueError(f"{len(self.maps)} maps for {self.window.size - 1} arrows")
        for k, m in enumerate(self.maps):
            s, t = self.window.arrow(k)
            want = (self.dim(t), self.dim(s))
            if m.shape != want:
                raise ValueError(f"arrow {s}->{t}: map has shape {m.shape}, expected {want}")
            if m.field != self.field:
                raise ValueError(f"arrow {s}->{t}: map over {m.field.name}, rep over {self.field.name}")

    def dim(self, v: int) -> int:
        return self.dims[self.window.index(v)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def arrow_map(self, k: int) -> Matrix:
        return self.maps[k]

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __eq__(self, other) -> bool:
        """Literal equality of the data (not isomorphism; see ``barcode.isomorphic``)."""
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.window == other.window
            and self.field == other.field
            and self.dims == other.dims
            and all(a == b for a, b in zip(self.maps, other.maps))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Representation({self.window}, {self.field.name}, dims={list(self.dims)})"

    # constructors

    @classmethod
    def zero(cls, window: QuiverWindow, field: Field = GF2) -> Representation:
        return cls.from_dims(window, field, [0] * window.size)

    @classmethod
    def from_dims(cls, window: QuiverWindow, field: Field, dims: Sequence[int], maps=None) -> Representation:
        """Build from dims; ``maps`` defaults to all-zero matrices."""
        if maps is None:
            maps = []
            for k in range(window.size - 1):
                s, t = window.arrow(k)
                maps.append(Matrix.zeros(field, dims[t - window.lo], dims[s - window.lo]))
        return cls(window, field, tuple(dims), tuple(maps))

    @classmethod
    def unit(cls, window: QuiverWindow, field: Field = GF2) -> Representation:
        """The tensor unit: K at every vertex, identities on every arrow."""
        return interval_rep(window, window.full(), field)

    @classmethod
    def dust(cls, window: QuiverWindow, field: Field = GF2) -> Representation:
        """K at every vertex with all arrow maps zero."""
        return cls.from_dims(window, field, [1] * window.size)

    # serialization

    def to_json(self) -> dict:
        return {
            "window": self.window.to_json(),
            "field": self.field.name,
            "dims": list(self.dims),
            "maps": [m.to_json() for m in self.maps],
        }

    def dumps(self) -> str:
        """Canonical byte-exact JSON text."""
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, d: dict) -> Representation:
        window = QuiverWindow.from_json(d["window"])
        field = get_field(d.get("field", "gf2"))
        dims = [int(x) for x in d["dims"]]
        raw = d.get("maps")
        if raw is None:
            return cls.from_dims(window, field, dims)
        if len(raw) != window.size - 1:
            raise ValueError(f"expected {window.size - 1} maps, got {len(raw)}")
        maps = []
        for k, m in enumerate(raw):
            s, t = window.arrow(k)
            maps.append(Matrix.from_json(field, m, (dims[t - window.lo], dims[s - window.lo])))
        return cls(window, field, tuple(dims), tuple(maps))

    @classmethod
    def loads(cls, text: str) -> Representation:
        return cls.from_json(json.loads(text))


def _check_same(v: Representation, w: Representation) -> None:
    if v.window != w.window:
        raise ValueError(f"window mismatch: {v.window} vs {w.window}")
    if v.field != w.field:
        raise ValueError(f"field mismatch: {v.field.name} vs {w.field.name}")


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    components: tuple[Matrix, ...]
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.check:
            problem = self.defect()
            if problem is not None:
                raise InvalidMorphism(problem)

    def defect(self) -> str | None:
        """Describe the first failed shape or commuting-square check, if any."""
        v, w = self.source, self.target
        if v.window != w.window or v.field != w.field:
            return "source and target live on different windows or fields"
        if len(self.components) != v.window.size:
            return f"{len(self.components)} components for {v.window.size} vertices"
        for i, f in enumerate(self.components):
            if f.shape != (w.dims[i], v.dims[i]):
                return f"component at {v.window.lo + i} has shape {f.shape}, expected {(w.dims[i], v.dims[i])}"
        for k in range(v.window.size - 1):
            s, t = v.window.arrow(k)
            fs = self.components[s - v.window.lo]
            ft = self.components[t - v.window.lo]
            if ft @ v.maps[k] != w.maps[k] @ fs:
                return f"square at arrow {s}->{t} does not commute"
        return None

    def at(self, vertex: int) -> Matrix:
        return self.components[self.source.window.index(vertex)]

    @property
    def window(self) -> QuiverWindow:
        return self.source.window

    @property
    def field(self) -> Field:
        return self.source.field

    @classmethod
    def identity(cls, v: Representation) -> Morphism:
        return cls(v, v, tuple(Matrix.identity(v.field, d) for d in v.dims))

    @classmethod
    def zero(cls, v: Representation, w: Representation) -> Morphism:
        _check_same(v, w)
        return cls(v, w, tuple(Matrix.zeros(v.field, b, a) for a, b in zip(v.dims, w.dims)))

    def __matmul__(self, other: Morphism) -> Morphism:
        """Composition ``self o other``."""
        return Morphism(other.source, self.target, tuple(f @ g for f, g in zip(self.components, other.components)))

    def ranks(self) -> list[int]:
        return [rank(f) for f in self.components]

    def __repr__(self) -> str:
        return f"Morphism({self.source!r} -> {self.target!r})"

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "components": [f.to_json() for f in self.components],
        }

    @classmethod
    def from_json(cls, d: dict) -> Morphism:
        v = Representation.from_json(d["source"])
        w = Representation.from_json(d["target"])
        comps = [Matrix.from_json(v.field, c, (w.dims[i], v.dims[i])) for i, c in enumerate(d["components"])]
        return cls(v, w, tuple(comps))


# -- constructions ---------------------------------------------------------------


def interval_rep(window: QuiverWindow, s: FiniteSubset, field: Field = GF2) -> Representation:
    """K_s: dimension 1 on ``s``, identity on arrows inside ``s``, zero elsewhere.

    ``s`` may be disconnected, giving the direct sum over its components.
    """
    if s.universe != (window.lo, window.hi):
        raise ValueError(f"subset universe {s.universe} does not match window {window}")
    dims = [1 if v in s else 0 for v in window.vertices]
    maps = []
    for k in range(window.size - 1):
        src, tgt = window.arrow(k)
        if src in s and tgt in s:
            maps.append(Matrix.identity(field, 1))
        else:
            maps.append(Matrix.zeros(field, dims[tgt - window.lo], dims[src - window.lo]))
    return Representation(window, field, tuple(dims), tuple(maps))


def direct_sum(v: Representation, w: Representation) -> Representation:
    _check_same(v, w)
    dims = tuple(a + b for a, b in zip(v.dims, w.dims))
    maps = tuple(block_diag(v.field, a, b) for a, b in zip(v.maps, w.maps))
    return Representation(v.window, v.field, dims, maps)


def direct_sum_all(reps: Sequence[Representation], window: QuiverWindow, field: Field) -> Representation:
    out = Representation.zero(window, field)
    for r in reps:
        out = direct_sum(out, r)
    return out


def tensor(v: Representation, w: Representation) -> Representation:
    """Pointwise tensor product: dims multiply, arrow maps are Kronecker products."""
    _check_same(v, w)
    dims = tuple(a * b for a, b in zip(v.dims, w.dims))
    maps = tuple(a.kron(b) for a, b in zip(v.maps, w.maps))
    return Representation(v.window, v.field, dims, maps)


def tensor_morphism(f: Morphism, g: Morphism) -> Morphism:
    return Morphism(
        tensor(f.source, g.source),
        tensor(f.target, g.target),
        tuple(a.kron(b) for a, b in zip(f.components, g.components)),
    )


def support(v: Representation) -> FiniteSubset:
    return v.window.subset(x for x, d in zip(v.window.vertices, v.dims) if d > 0)


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    """Pointwise kernel with induced arrow maps, plus its inclusion into ``f.source``."""
    v = f.source
    if f.defect() is not None:
        raise InvalidMorphism(f.defect())
    bases = [kernel_basis(c) for c in f.components]
    maps = []
    for k in range(v.window.size - 1):
        s, t = v.window.arrow(k)
        ks, kt = bases[s - v.window.lo], bases[t - v.window.lo]
        x = solve(kt, v.maps[k] @ ks)
        if x is None:
            raise AssertionError(f"kernel not preserved by arrow {s}->{t}")
        maps.append(x)
    ker = Representation(v.window, v.field, tuple(b.cols for b in bases), tuple(maps))
    return ker, Morphism(ker, v, tuple(bases))


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    """Pointwise cokernel with induced arrow maps, plus the projection from ``f.target``."""
    w = f.target
    if f.defect() is not None:
        raise InvalidMorphism(f.defect())
    projs = [cokernel_projection(c) for c in f.components]
    maps = []
    for k in range(w.window.size - 1):
        s, t = w.window.arrow(k)
        qs, qt = projs[s - w.window.lo], projs[t - w.window.lo]
        # y @ qs == qt @ W_alpha; qs has full row rank so y is unique
        y = solve(qs.T, (qt @ w.maps[k]).T)
        if y is None:
            raise AssertionError(f"image not preserved by arrow {s}->{t}")
        maps.append(y.T)
    cok = Representation(w.window, w.field, tuple(q.rows for q in projs), tuple(maps))
    return cok, Morphism(w, cok, tuple(projs))


def is_mono(f: Morphism) -> bool:
    return all(rank(c) == c.cols for c in f.components)


def is_epi(f: Morphism) -> bool:
    return all(rank(c) == c.rows for c in f.components)


def extension(
    v1: Representation,
    v2: Representation,
    eps: Sequence[Matrix] | None = None,
    seed=None,
) -> tuple[Representation, Morphism, Morphism]:
    """Middle term of ``0 -> v1 -> E -> v2 -> 0`` with arrow maps ``[[v1_a, eps_a], [0, v2_a]]``.

    ``eps[k]`` has shape ``dims_v1[target] x dims_v2[source]``.  With no
    ``eps``, a random one is drawn from ``seed`` if given, else zero (split).
    Returns ``(E, inclusion, projection)``; exactness is verified.
    """
    _check_same(v1, v2)
    w, field = v1.window, v1.field
    shapes = []
    for k in range(w.size - 1):
        s, t = w.arrow(k)
        shapes.append((v1.dim(t), v2.dim(s)))
    if eps is None:
        if seed is None:
            eps = [Matrix.zeros(field, *sh) for sh in shapes]
        else:
            rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
            eps = [random_matrix(field, *sh, rng) for sh in shapes]
    eps = list(eps)
    if len(eps) != len(shapes):
        raise ValueError(f"{len(eps)} extension blocks for {len(shapes)} arrows")
    maps = []
    for k, (e, sh) in enumerate(zip(eps, shapes)):
        if e.shape != sh:
            raise ValueError(f"extension block {k} has shape {e.shape}, expected {sh}")
        s, t = w.arrow(k)
        top = np.concatenate([v1.maps[k].data, e.data], axis=1)
        bot = np.concatenate([field.zeros(v2.dim(t), v1.dim(s)), v2.maps[k].data], axis=1)
        maps.append(Matrix(field, np.concatenate([top, bot], axis=0)))
    dims = tuple(a + b for a, b in zip(v1.dims, v2.dims))
    mid = Representation(w, field, dims, tuple(maps))
    inc = Morphism(v1, mid, tuple(
        Matrix(field, np.concatenate([field.eye(a), field.zeros(b, a)], axis=0)) for a, b in zip(v1.dims, v2.dims)
    ))
    proj = Morphism(mid, v2, tuple(
        Matrix(field, np.concatenate([field.zeros(b, a), field.eye(b)], axis=1)) for a, b in zip(v1.dims, v2.dims)
    ))
    report = short_exact_report(inc, proj)
    if not report["exact"]:
        raise AssertionError(f"extension not exact: {report}")
    return mid, inc, proj


def kernel_rank_one(x: Representation) -> Morphism:
    """Endomorphism of ``x`` (all arrow maps zero, full support) with pointwise nullity 1.

    Its kernel is K at every vertex with zero arrow maps.
    """
    if any(d < 1 for d in x.dims):
        raise ValueError("kernel_rank_one needs dims >= 1 at every vertex")
    if any(not m.is_zero() for m in x.maps):
        raise ValueError("kernel_rank_one needs every arrow map to be zero")
    comps = []
    for d in x.dims:
        a = x.field.eye(d)
        a[0, 0] = 0
        comps.append(Matrix(x.field, a))
    return Morphism(x, x, tuple(comps))


# -- Hom spaces and random objects -----------------------------------------------


def hom_space(v: Representation, w: Representation) -> list[Morphism]:
    """A basis of Hom(v, w), found by solving the commuting-square equations."""
    _check_same(v, w)
    field, win = v.field, v.window
    sizes = [b * a for a, b in zip(v.dims, w.dims)]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    n = int(offsets[-1])
    rows = []
    for k in range(win.size - 1):
        s, t = win.arrow(k)
        i, j = s - win.lo, t - win.lo
        ws = w.maps[k]  # dims_w[t] x dims_w[s]
        vs = v.maps[k]  # dims_v[t] x dims_v[s]
        neq = w.dims[j] * v.dims[i]
        if neq == 0:
            continue
        # row-major vec: vec(A X B) = (A kron B^T) vec(X)
        block = field.zeros(neq, n)
        left = ws.kron(Matrix.identity(field, v.dims[i]))  # acts on vec(F_s)
        right = Matrix.identity(field, w.dims[j]).kron(vs.T)  # acts on vec(F_t)
        if sizes[i]:
            block[:, offsets[i] : offsets[i + 1]] = left.data
        if sizes[j]:
            block[:, offsets[j] : offsets[j + 1]] = field.reduce(block[:, offsets[j] : offsets[j + 1]] - right.data)
        rows.append(block)
    system = Matrix(field, np.concatenate(rows, axis=0)) if rows else Matrix.zeros(field, 0, n)
    basis = kernel_basis(system)
    out = []
    for c in range(basis.cols):
        vec = basis.data[:, c]
        comps = []
        for i in range(win.size):
            chunk = vec[offsets[i] : offsets[i + 1]]
            comps.append(Matrix(field, chunk.reshape(w.dims[i], v.dims[i])))
        out.append(Morphism(v, w, tuple(comps)))
    return out


def random_hom(v: Representation, w: Representation, rng: np.random.Generator) -> Morphism:
    """A uniformly random element of Hom(v, w) (random combination of a basis)."""
    basis = hom_space(v, w)
    comps = [Matrix.zeros(v.field, b, a) for a, b in zip(v.dims, w.dims)]
    for f in basis:
        c = v.field.random_entries(rng, 1, 1)[0, 0]
        if c == 0:
            continue
        comps = [acc + g.scale(c) for acc, g in zip(comps, f.components)]
    return Morphism(v, w, tuple(comps))


def random_orientation(n_arrows: int, rng: np.random.Generator) -> str:
    return "".join(rng.choice(["R", "L"], size=n_arrows)) if n_arrows else ""


def random_representation(
    window: QuiverWindow,
    field: Field,
    rng: np.random.Generator,
    max_dim: int = 3,
    min_dim: int = 0,
) -> Representation:
    dims = [int(d) for d in rng.integers(min_dim, max_dim + 1, size=window.size)]
    maps = []
    for k in range(window.size - 1):
        s, t = window.arrow(k)
        maps.append(random_matrix(field, dims[t - window.lo], dims[s - window.lo], rng))
    return Representation(window, field, tuple(dims), tuple(maps))


# -- exactness -------------------------------------------------------------------


def exactness_report(f: Morphism) -> dict:
    """Check ``0 -> Ker f -> V -> W -> Coker f -> 0`` pointwise by rank arithmetic."""
    ker, inc = kernel(f)
    cok, proj = cokernel(f)
    failures = []
    for i, v in enumerate(f.window.vertices):
        fa, ia, qa = f.components[i], inc.components[i], proj.components[i]
        r = rank(fa)
        dv, dw = f.source.dims[i], f.target.dims[i]
        checks = {
            "ker_injective": rank(ia) == ker.dims[i],
            "ker_dim": ker.dims[i] == dv - r,
            "f_after_ker_zero": (fa @ ia).is_zero(),
            "coker_surjective": rank(qa) == cok.dims[i],
            "coker_dim": cok.dims[i] == dw - r,
            "coker_after_f_zero": (qa @ fa).is_zero(),
        }
        for name, ok in checks.items():
            if not ok:
                failures.append(f"{name}@{v}")
    return {"exact": not failures, "failures": failures, "ker_dims": list(ker.dims), "coker_dims": list(cok.dims)}


def short_exact_report(inc: Morphism, proj: Morphism) -> dict:
    """Check ``0 -> A -> B -> C -> 0`` pointwise: mono, epi, composite zero, dims add."""
    failures = []
    if inc.target.dims != proj.source.dims or inc.window != proj.window:
        return {"exact": False, "failures": ["middle objects differ"]}
    if inc.defect() is not None or proj.defect() is not None:
        return {"exact": False, "failures": ["invalid morphism"]}
    for i, v in enumerate(inc.window.vertices):
        ia, pa = inc.components[i], proj.components[i]
        if rank(ia) != ia.cols:
            failures.append(f"not_mono@{v}")
        if rank(pa) != pa.rows:
            failures.append(f"not_epi@{v}")
        if not (pa @ ia).is_zero():
            failures.append(f"composite_nonzero@{v}")
        if inc.source.dims[i] + proj.target.dims[i] != inc.target.dims[i]:
            failures.append(f"dims@{v}")
    return {
        "exact": not failures,
        "failures": failures,
        "dims": [list(inc.source.dims), list(inc.target.dims), list(proj.target.dims)],
    }
