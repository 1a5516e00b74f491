"""Lower bounds for cyclic codes, evaluated on zero sets N inside Z_n.

A ds-bound maps (N, n) to an integer that is a guaranteed lower bound on the
minimum distance of *any* cyclic code of length n whose defining set contains
N.  Shipped instances:

  bch  1 + the longest circular run of consecutive residues inside N.
  ht   best a + s' over two-parameter patterns
           {b + i1*c1 + i2*c2 : 0 <= i1 <= a-2, 0 <= i2 <= s'} contained in N
       with gcd(n, c1) = 1 and gcd(n, c2) < a; degenerates to bch at s' = 0.

Both are "optimal": they return the maximum their pattern family attains.
Conventions: the empty set is worth 1; N = Z_n evaluates to n + 1 (that case
only arises for zero vectors/matrices, which callers intercept upstream).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import CapacityError, InputError

# The search kernels are roughly cubic in n, so refuse silly moduli outright.
MAX_N = 1024


def _as_subset(members, n: int) -> tuple[int, ...]:
    if n < 1:
        raise InputError(f"modulus must be positive, got {n}")
    if n > MAX_N:
        raise CapacityError(
            f"bound evaluation is capped at n <= {MAX_N}, got n = {n}",
            required=n,
            budget=MAX_N,
        )
    out = set()
    for x in members:
        x = int(x)
        if not 0 <= x < n:
            raise InputError(f"residue {x} out of range for Z_{n}")
        out.add(x)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _bch(members: tuple[int, ...], n: int) -> int:
    if not members:
        return 1
    if len(members) == n:
        return n + 1
    present = bytearray(n)
    for x in members:
        present[x] = 1
    best = cur = 0
    for i in range(2 * n):  # doubled scan picks up wrap-around runs
        if present[i % n]:
            cur += 1
            if cur > best:
                best = cur
        else:
            cur = 0
    return best + 1


def _run_lengths(members: tuple[int, ...], n: int) -> list[int]:
    """L[b] = largest t with {b, b+1, ..., b+t-1} (mod n) inside the set.

    Assumes the set is proper, so every circular run terminates.
    """
    present = [False] * n
    for x in members:
        present[x] = True
    z = present.index(False)
    L = [0] * n
    for off in range(1, n):
        i = (z - off) % n
        L[i] = L[(i + 1) % n] + 1 if present[i] else 0
    return L


def _ht_normalized(members: tuple[int, ...], n: int, floor: int) -> int:
    """Best a + s' over patterns with c1 = 1 inside the given proper subset."""
    L = _run_lengths(members, n)
    best = floor
    # c2 and n - c2 produce the same pattern sets, so half the range suffices.
    for c2 in range(1, n // 2 + 1):
        g = gcd(n, c2)
        period = n // g
        for b in range(n):
            if L[b] < g:  # need a > g, i.e. a starting run of at least g
                continue
            m = L[b]
            # march the arithmetic progression b, b+c2, ... ; m is the prefix
            # minimum of run lengths, so a = m + 1 is the best head size at
            # each s' = t.  Once m + 1 <= g the side condition is dead for
            # every later t as well.  s' never reaches a full period: that
            # would force N = Z_n, excluded here.
            for t in range(period):
                Lt = L[(b + t * c2) % n]
                if Lt < m:
                    m = Lt
                if m + 1 <= g or m + 1 + (period - 1) <= best:
                    break
                if m + 1 + t > best:
                    best = m + 1 + t
    return best


@lru_cache(maxsize=None)
def _ht(members: tuple[int, ...], n: int) -> int:
    if not members:
        return 1
    if len(members) == n:
        return n + 1
    best = _bch(members, n)  # the s' = 0 family with c1 = 1
    # Any unit c1 is handled by rescaling N so that c1 becomes 1; scaling by
    # -u mirrors every pattern of u, so only half the units are needed.
    for u in range(1, n // 2 + 1):
        if gcd(u, n) != 1:
            continue
        scaled = tuple(sorted((u * x) % n for x in members))
        best = _ht_normalized(scaled, n, best)
    return best


def bch_optimal(members, n: int) -> int:
    """1 + length of the longest circular run of consecutive residues in N."""
    return _bch(_as_subset(members, n), n)


def ht_optimal(members, n: int) -> int:
    """Exhaustive-search Hartmann-Tzeng value; never below bch_optimal."""
    return _ht(_as_subset(members, n), n)


class DsBound(ABC):
    """Interface of a pluggable bound; instances must be stateless."""

    name: str = "?"

    @abstractmethod
    def evaluate(self, members, n: int) -> int:
        """Best value certified for any cyclic code whose defining set contains N."""

    def __repr__(self):
        return f"<DsBound {self.name}>"


class BchBound(DsBound):
    name = "bch"

    def evaluate(self, members, n: int) -> int:
        return bch_optimal(members, n)


class HartmannTzengBound(DsBound):
    name = "ht"

    def evaluate(self, members, n: int) -> int:
        return ht_optimal(members, n)


@dataclass(frozen=True)
class BoundSet:
    """Nonempty collection of ds-bounds with distinct names."""

    bounds: tuple[DsBound, ...]

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        if not self.bounds:
            raise InputError("bound set must be nonempty")
        names = [b.name for b in self.bounds]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate bound names in {names}")

    @property
    def key(self) -> tuple[str, ...]:
        """Canonical identity of the set, used as a memoization key."""
        return tuple(sorted(b.name for b in self.bounds))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.bounds)

    def evaluate_best(self, members, n: int) -> int:
        return max(b.evaluate(members, n) for b in self.bounds)


def evaluate_best(bounds: BoundSet, members, n: int) -> int:
    return bounds.evaluate_best(members, n)


REGISTRY: dict[str, DsBound] = {b.name: b for b in (BchBound(), HartmannTzengBound())}


def get_bounds(names) -> BoundSet:
    """Build a BoundSet from names like ["bch", "ht"]; case-insensitive."""
    if isinstance(names, str):
        names = names.split(",")
    picked = []
    for name in names:
        key = str(name).strip().lower()
        if key not in REGISTRY:
            raise InputError(f"unknown bound {name!r}; available: {sorted(REGISTRY)}")
        picked.append(REGISTRY[key])
    return BoundSet(tuple(picked))
