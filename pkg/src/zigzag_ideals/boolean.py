"""The power-set Boolean algebra of a finite window and its prime ideals.

Families of subsets are explicit ``frozenset``s of :class:`FiniteSubset`.
Exhaustive searches encode a family as an integer with bit ``m`` set when
the subset with bitmask ``m`` belongs to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .subsets import FiniteSubset

__all__ = [
    "BooleanIdealFamily",
    "PrimePoint",
    "join",
    "meet",
    "complement",
    "ring_add",
    "ring_mul",
    "to_indicator",
    "from_indicator",
    "is_ideal",
    "is_prime_ideal",
    "is_maximal_ideal",
    "enumerate_primes",
    "all_subsets",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 4


def join(x: FiniteSubset, y: FiniteSubset) -> FiniteSubset:
    return x | y


def meet(x: FiniteSubset, y: FiniteSubset) -> FiniteSubset:
    return x & y


def complement(x: FiniteSubset) -> FiniteSubset:
    return x.complement()


def ring_add(x: FiniteSubset, y: FiniteSubset) -> FiniteSubset:
    """Boolean-ring sum ``(x and not y) or (not x and y)``: symmetric difference."""
    return join(meet(x, complement(y)), meet(complement(x), y))


def ring_mul(x: FiniteSubset, y: FiniteSubset) -> FiniteSubset:
    return meet(x, y)


def to_indicator(x: FiniteSubset) -> tuple[int, ...]:
    """Coordinates in the product of copies of Z/2, one per universe point."""
    return tuple(1 if v in x else 0 for v in range(x.lo, x.hi + 1))


def from_indicator(lo: int, bits: Iterable[int]) -> FiniteSubset:
    bits = [int(b) % 2 for b in bits]
    return FiniteSubset.of(lo, lo + len(bits) - 1, (lo + i for i, b in enumerate(bits) if b))


def all_subsets(lo: int, hi: int) -> list[FiniteSubset]:
    n = hi - lo + 1
    return [FiniteSubset(lo, hi, m) for m in range(1 << n)]


@dataclass(frozen=True)
class BooleanIdealFamily:
    """A family of subsets of the universe ``{lo..hi}``; no axioms assumed."""

    lo: int
    hi: int
    members: frozenset = frozenset()

    def __post_init__(self):
        members = frozenset(self.members)
        for x in members:
            if x.universe != (self.lo, self.hi):
                raise ValueError(f"{x!r} not in universe [{self.lo}, {self.hi}]")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, lo: int, hi: int, sets: Iterable[Iterable[int]]) -> BooleanIdealFamily:
        return cls(lo, hi, frozenset(FiniteSubset.of(lo, hi, s) for s in sets))

    @classmethod
    def from_mask(cls, lo: int, hi: int, mask: int) -> BooleanIdealFamily:
        n = hi - lo + 1
        return cls(lo, hi, frozenset(FiniteSubset(lo, hi, m) for m in range(1 << n) if mask >> m & 1))

    def to_mask(self) -> int:
        out = 0
        for x in self.members:
            out |= 1 << x.bits
        return out

    def __contains__(self, x: FiniteSubset) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members, key=lambda s: (len(s), s.bits)))

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self]

    def __repr__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, s)) + "}" for s in self) + "}"


@dataclass(frozen=True)
class PrimePoint:
    """The principal prime ``P_a``: every subset that omits ``a``."""

    lo: int
    hi: int
    a: int

    def __post_init__(self):
        if not self.lo <= self.a <= self.hi:
            raise ValueError(f"point {self.a} outside [{self.lo}, {self.hi}]")

    def family(self) -> BooleanIdealFamily:
        return BooleanIdealFamily(self.lo, self.hi, frozenset(s for s in all_subsets(self.lo, self.hi) if self.a not in s))

    def __contains__(self, x: FiniteSubset) -> bool:
        return self.a not in x


# -- predicates on explicit families ---------------------------------------------


def is_ideal(f: BooleanIdealFamily) -> bool:
    """Nonempty, closed under joins, and closed downward under inclusion."""
    return _mask_is_ideal(f.to_mask(), f.hi - f.lo + 1)


def is_prime_ideal(f: BooleanIdealFamily) -> bool:
    return _mask_is_prime(f.to_mask(), f.hi - f.lo + 1)


def is_maximal_ideal(f: BooleanIdealFamily) -> bool:
    """A proper ideal with no proper ideal strictly above it (exhaustive, small universes)."""
    n = f.hi - f.lo + 1
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"maximality check is exhaustive; universe size {n} > {BRUTE_FORCE_LIMIT}")
    mask = f.to_mask()
    if not _mask_is_ideal(mask, n) or mask >> ((1 << n) - 1) & 1:
        return False
    full = (1 << (1 << n)) - 1
    for other in _ideal_masks(n):
        if other != mask and other != full and other & mask == mask:
            return False
    return True


def _mask_is_ideal(mask: int, n: int) -> bool:
    if mask == 0:
        return False
    members = [m for m in range(1 << n) if mask >> m & 1]
    for x in members:
        # downward closure: every submask of x
        sub = x
        while True:
            if not mask >> sub & 1:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & x
    for x, y in combinations(members, 2):
        if not mask >> (x | y) & 1:
            return False
    return True


def _mask_is_prime(mask: int, n: int) -> bool:
    full_set = (1 << n) - 1
    if not _mask_is_ideal(mask, n) or mask >> full_set & 1:
        return False
    for x in range(1 << n):
        if mask >> x & 1:
            continue
        for y in range(x, 1 << n):
            if not mask >> y & 1 and mask >> (x & y) & 1:
                return False
    return True


def _ideal_masks(n: int) -> list[int]:
    return [m for m in range(1 << (1 << n)) if _mask_is_ideal(m, n)]


def enumerate_primes(lo: int, hi: int, mode: str = "principal") -> list[BooleanIdealFamily]:
    """Prime ideals of the power set of ``{lo..hi}``.

    ``exhaustive`` scans all ``2^(2^n)`` families (``n <= 4``);
    ``principal`` builds ``P_a`` for each point directly.
    """
    n = hi - lo + 1
    if mode == "principal":
        return [PrimePoint(lo, hi, a).family() for a in range(lo, hi + 1)]
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"exhaustive enumeration needs a universe of size <= {BRUTE_FORCE_LIMIT}, got {n}")
    primes = [m for m in range(1 << (1 << n)) if _mask_is_prime(m, n)]
    return sorted(
        (BooleanIdealFamily.from_mask(lo, hi, m) for m in primes),
        key=lambda f: sorted(s.bits for s in f.members),
    )


def principal_point(f: BooleanIdealFamily) -> int | None:
    """The point ``a`` with ``f == P_a``, if there is one."""
    for a in range(f.lo, f.hi + 1):
        if f == PrimePoint(f.lo, f.hi, a).family():
            return a
    return None
