"""Bitset subsets of a finite integer universe ``{lo, ..., hi}``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class FiniteSubset:
    """A subset of ``range(lo, hi + 1)`` stored as a bitmask (bit ``i`` is vertex ``lo + i``)."""

    lo: int
    hi: int
    bits: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty universe [{self.lo}, {self.hi}]")
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError("bits outside the universe")

    @classmethod
    def of(cls, lo: int, hi: int, elems: Iterable[int] = ()) -> FiniteSubset:
        bits = 0
        for x in elems:
            if not lo <= x <= hi:
                raise ValueError(f"{x} not in universe [{lo}, {hi}]")
            bits |= 1 << (x - lo)
        return cls(lo, hi, bits)

    @classmethod
    def full(cls, lo: int, hi: int) -> FiniteSubset:
        return cls(lo, hi, (1 << (hi - lo + 1)) - 1)

    @classmethod
    def empty(cls, lo: int, hi: int) -> FiniteSubset:
        return cls(lo, hi, 0)

    @classmethod
    def interval(cls, lo: int, hi: int, a: int, b: int) -> FiniteSubset:
        return cls.of(lo, hi, range(a, b + 1))

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    @property
    def universe(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi and bool(self.bits >> (x - self.lo) & 1)

    def __iter__(self) -> Iterator[int]:
        b, i = self.bits, self.lo
        while b:
            if b & 1:
                yield i
            b >>= 1
            i += 1

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same(self, other: FiniteSubset) -> None:
        if self.universe != other.universe:
            raise ValueError(f"universe mismatch: {self.universe} vs {other.universe}")

    def __or__(self, other: FiniteSubset) -> FiniteSubset:
        self._same(other)
        return FiniteSubset(self.lo, self.hi, self.bits | other.bits)

    def __and__(self, other: FiniteSubset) -> FiniteSubset:
        self._same(other)
        return FiniteSubset(self.lo, self.hi, self.bits & other.bits)

    def __sub__(self, other: FiniteSubset) -> FiniteSubset:
        self._same(other)
        return FiniteSubset(self.lo, self.hi, self.bits & ~other.bits)

    def __xor__(self, other: FiniteSubset) -> FiniteSubset:
        self._same(other)
        return FiniteSubset(self.lo, self.hi, self.bits ^ other.bits)

    def complement(self) -> FiniteSubset:
        return FiniteSubset(self.lo, self.hi, ((1 << self.size) - 1) & ~self.bits)

    def issubset(self, other: FiniteSubset) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def components(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive members, as closed ``(a, b)`` pairs."""
        runs: list[tuple[int, int]] = []
        for x in self:
            if runs and runs[-1][1] == x - 1:
                runs[-1] = (runs[-1][0], x)
            else:
                runs.append((x, x))
        return runs

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"{{{', '.join(map(str, self))}}}@[{self.lo},{self.hi}]"


# vertex subsets of a quiver window are the same objects
IntervalSet = FiniteSubset
