"""Exact dense linear algebra over GF(p) and the rationals.

Matrices are small (a few dozen rows at most), so everything is dense
Gaussian elimination on numpy arrays: ``int64`` reduced mod p for prime
fields, ``object`` arrays of :class:`fractions.Fraction` for QQ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Field",
    "GF2",
    "GF5",
    "QQ",
    "Matrix",
    "get_field",
    "rank",
    "kernel_basis",
    "solve",
    "cokernel_projection",
    "random_invertible",
    "random_matrix",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """A ground field: GF(p) when ``p`` is set, otherwise QQ."""

    name: str
    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not (_is_prime(self.p) and self.p <= 251):
            raise ValueError(f"GF(p) needs a prime p <= 251, got {self.p}")

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def array(self, entries, shape: tuple[int, int] | None = None) -> np.ndarray:
        """Coerce ``entries`` to a normalized 2-D array over this field."""
        if self.p is not None:
            a = np.array(entries, dtype=np.int64)
            if shape is not None:
                a = a.reshape(shape)
            return a % self.p
        a = np.array(entries, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = Fraction(x)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is not None:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = 1 if self.p is not None else Fraction(1)
        return a

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p if self.p is not None else a

    def inv(self, x):
        if self.p is not None:
            return pow(int(x), -1, self.p)
        return 1 / x

    def parse(self, s: str):
        if self.p is not None:
            return int(Fraction(s) % self.p) if "/" not in s else _modp_fraction(Fraction(s), self.p)
        return Fraction(s)

    def format(self, x) -> str:
        if self.p is not None:
            return str(int(x))
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def random_entries(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        if self.p is not None:
            return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)
        # small integers keep rational growth under control
        vals = rng.integers(-3, 4, size=(rows, cols))
        return self.array(vals.tolist() if rows and cols else np.zeros((rows, cols), dtype=int), (rows, cols))


def _modp_fraction(x: Fraction, p: int) -> int:
    return (x.numerator * pow(x.denominator, -1, p)) % p


GF2 = Field("gf2", 2)
GF5 = Field("gf5", 5)
QQ = Field("rational", None)

_FIELDS = {"gf2": GF2, "gf5": GF5, "rational": QQ, "q": QQ, "qq": QQ}


def get_field(name: str) -> Field:
    """Look up a field by name: ``gf2``, ``gf5``, ``gfP`` for prime P, ``rational``."""
    key = name.lower()
    if key in _FIELDS:
        return _FIELDS[key]
    if key.startswith("gf") and key[2:].isdigit():
        return Field(key, int(key[2:]))
    raise ValueError(f"unknown field {name!r}")


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        arr = data if isinstance(data, np.ndarray) and data.ndim == 2 else None
        if arr is None:
            arr = np.asarray(data, dtype=object)
            if arr.ndim != 2:
                raise ValueError("matrix data must be 2-dimensional")
        if field.p is not None:
            arr = np.asarray(arr, dtype=np.int64) % field.p
        elif arr.dtype != object or (arr.size and not isinstance(arr.flat[0], Fraction)):
            arr = field.array(arr)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, field.eye(n))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(field, field.array(rows, (len(rows), n)))

    # shape / access

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx):
        return self.data[idx]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    # arithmetic

    def _check(self, other: Matrix) -> None:
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field.name} vs {other.field.name}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self.field.reduce(self.data.dot(other.data)))

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce(self.data + other.data))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce(self.data - other.data))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.field.reduce(-self.data))

    def scale(self, c) -> Matrix:
        return Matrix(self.field, self.field.reduce(self.data * c))

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.data.T.copy())

    def kron(self, other: Matrix) -> Matrix:
        self._check(other)
        r, c = self.rows * other.rows, self.cols * other.cols
        if r == 0 or c == 0:
            return Matrix.zeros(self.field, r, c)
        return Matrix(self.field, self.field.reduce(np.kron(self.data, other.data)))

    def is_zero(self) -> bool:
        return not np.any(self.data != 0) if self.data.size else True

    def rank(self) -> int:
        return rank(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.data == other.data))
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.field.format(x) for x in self.data.flat)))

    def __repr__(self) -> str:
        body = [[self.field.format(x) for x in row] for row in self.data]
        return f"Matrix<{self.field.name} {self.rows}x{self.cols}>{body}"

    # serialization

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.data]

    @classmethod
    def from_json(cls, field: Field, rows: list[list[str]], shape: tuple[int, int] | None = None) -> Matrix:
        if not rows:
            r, c = shape if shape is not None else (0, 0)
            if r != 0 and c != 0:
                raise ValueError(f"empty matrix JSON for shape {shape}")
            return cls.zeros(field, r, c)
        parsed = [[field.parse(str(x)) for x in row] for row in rows]
        m = cls.from_rows(field, parsed)
        if shape is not None and m.shape != tuple(shape):
            raise ValueError(f"matrix has shape {m.shape}, expected {tuple(shape)}")
        return m


def hstack(field: Field, blocks: Iterable[Matrix], rows: int) -> Matrix:
    blocks = [b.data for b in blocks]
    if not blocks:
        return Matrix.zeros(field, rows, 0)
    return Matrix(field, np.concatenate(blocks, axis=1) if blocks else field.zeros(rows, 0))


def vstack(field: Field, blocks: Iterable[Matrix], cols: int) -> Matrix:
    blocks = [b.data for b in blocks]
    if not blocks:
        return Matrix.zeros(field, 0, cols)
    return Matrix(field, np.concatenate(blocks, axis=0))


def block_diag(field: Field, *blocks: Matrix) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = field.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i : i + b.rows, j : j + b.cols] = b.data
        i += b.rows
        j += b.cols
    return Matrix(field, out)


# -- elimination ---------------------------------------------------------------


def _rref(field: Field, a: np.ndarray, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots searched only in the first ``ncols`` columns."""
    a = a.copy()
    rows, cols = a.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    p = field.p
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        if p is not None:
            a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        else:
            a[r] = a[r] / a[r, c]
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col != 0)
        if others.size:
            upd = a[others] - np.outer(col[others], a[r])
            a[others] = upd % p if p is not None else upd
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    """Rank by exact Gaussian elimination (0 for empty matrices)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    data = m.data if m.rows <= m.cols else m.data.T
    return len(_rref(m.field, np.ascontiguousarray(data))[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right null space of ``m``."""
    field = m.field
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(field, n)
    r, pivots = _rref(field, m.data)
    free = [c for c in range(n) if c not in set(pivots)]
    out = field.zeros(n, len(free))
    for j, f in enumerate(free):
        out[f, j] = 1 if field.p is not None else Fraction(1)
        for i, pc in enumerate(pivots):
            out[pc, j] = -r[i, f]
    return Matrix(field, field.reduce(out))


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """A particular solution ``x`` of ``a @ x == b``, or ``None`` if inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"solve: a has {a.rows} rows but b has {b.rows}")
    a._check(b)
    field = a.field
    n, k = a.cols, b.cols
    if a.rows == 0:
        return Matrix.zeros(field, n, k)
    aug = np.concatenate([a.data, b.data], axis=1)
    r, pivots = _rref(field, aug, ncols=n)
    nrank = len(pivots)
    if nrank < r.shape[0] and np.any(r[nrank:, n:] != 0):
        return None
    x = field.zeros(n, k)
    for i, pc in enumerate(pivots):
        x[pc, :] = r[i, n:]
    return Matrix(field, x)


def cokernel_projection(m: Matrix) -> Matrix:
    """Full-row-rank ``q`` with ``q @ m == 0`` and ``q.rows == m.rows - rank(m)``."""
    return kernel_basis(m.T).T


def random_matrix(field: Field, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
    return Matrix(field, field.random_entries(rng, rows, cols) if rows and cols else field.zeros(rows, cols))


def random_invertible(n: int, seed=None, field: Field = GF2) -> Matrix:
    """An n x n invertible matrix, drawn by rejection sampling.

    ``seed`` may be an int or an existing ``numpy.random.Generator``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if n == 0:
        return Matrix.zeros(field, 0, 0)
    while True:
        m = random_matrix(field, n, n, rng)
        if rank(m) == n:
            return m
