"""Index arithmetic for abelian codes: q-orbits modulo (r1, ..., rs).

The ambient index set is I = Z_{r1} x ... x Z_{rs}.  A semisimple abelian
code over GF(q) is pinned down by a defining set D, a subset of I closed
under coordinatewise multiplication by q.  This module builds and validates
those sets; everything here is plain modular arithmetic on int tuples.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InputError

IndexTuple = tuple[int, ...]


def _is_prime_power(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return m == 1
        p += 1
    return True  # m is prime


def prime_power_split(q: int) -> tuple[int, int]:
    """q = p**e with p prime; returns (p, e)."""
    if q < 2:
        raise InputError(f"q must be a prime power >= 2, got {q}")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise InputError(f"q must be a prime power, got {q}")
    return p, e


@dataclass(frozen=True)
class CodeShape:
    """Base field order q and component lengths r = (r1, ..., rs).

    Only the semisimple case gcd(ri, q) = 1 is supported; validation is
    eager so downstream code can assume a good shape.
    """

    q: int
    r: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        if not _is_prime_power(self.q):
            raise InputError(f"q must be a prime power, got {self.q}")
        for rk in self.r:
            if rk < 1:
                raise InputError(f"component lengths must be positive, got {rk}")
            if math.gcd(rk, self.q) != 1:
                raise InputError(
                    f"gcd(r_i, q) must be 1 (semisimple case only); got r_i={rk}, q={self.q}"
                )

    @property
    def n(self) -> int:
        return math.prod(self.r)

    @property
    def s(self) -> int:
        return len(self.r)

    def check_index(self, a) -> IndexTuple:
        a = tuple(int(x) for x in a)
        if len(a) != self.s:
            raise InputError(f"index {a} has {len(a)} coordinates, shape needs {self.s}")
        for ak, rk in zip(a, self.r):
            if not 0 <= ak < rk:
                raise InputError(f"index {a} out of range for r={self.r}")
        return a

    def all_indices(self):
        return itertools.product(*(range(rk) for rk in self.r))


def q_orbit(a, shape: CodeShape) -> frozenset[IndexTuple]:
    """Orbit of the index a under coordinatewise multiplication by q."""
    a = shape.check_index(a)
    orbit = {a}
    cur = a
    while True:
        cur = tuple((x * shape.q) % rk for x, rk in zip(cur, shape.r))
        if cur in orbit:
            return frozenset(orbit)
        orbit.add(cur)


def cyclotomic_coset(b: int, q: int, n: int) -> frozenset[int]:
    """q-cyclotomic coset of b modulo n (the one-variable orbit)."""
    if n < 1:
        raise InputError(f"modulus must be positive, got {n}")
    if math.gcd(n, q) != 1:
        raise InputError(f"gcd(n, q) = {math.gcd(n, q)} != 1 for n={n}, q={q}")
    b = int(b) % n
    coset = {b}
    cur = b
    while True:
        cur = (cur * q) % n
        if cur in coset:
            return frozenset(coset)
        coset.add(cur)


@dataclass(frozen=True)
class DefiningSet:
    """A union of q-orbits in I, stored with one canonical rep per orbit.

    Build through defining_set_from_reps / defining_set_from_members rather
    than directly; the constructors guarantee the closure invariant.
    """

    shape: CodeShape
    members: frozenset[IndexTuple]
    orbit_reps: tuple[IndexTuple, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return tuple(a) in self.members


def defining_set_from_reps(reps, shape: CodeShape) -> DefiningSet:
    """Union of the q-orbits of the given representatives."""
    orbits = {}
    for rep in reps:
        orb = q_orbit(rep, shape)
        orbits[min(orb)] = orb
    members = frozenset(itertools.chain.from_iterable(orbits.values()))
    return DefiningSet(shape, members, tuple(sorted(orbits)))


def is_union_of_orbits(members, shape: CodeShape) -> bool:
    """True iff the set is closed under the q-action (valid defining set)."""
    members = {shape.check_index(a) for a in members}
    q = shape.q
    return all(
        tuple((x * q) % rk for x, rk in zip(a, shape.r)) in members for a in members
    )


def defining_set_from_members(members, shape: CodeShape) -> DefiningSet:
    """Validating constructor for explicitly listed members."""
    members = frozenset(shape.check_index(a) for a in members)
    if not is_union_of_orbits(members, shape):
        raise InputError("member set is not closed under multiplication by q")
    return defining_set_from_reps(members, shape)


def split_into_orbits(members, shape: CodeShape) -> list[frozenset[IndexTuple]]:
    """Partition an orbit-closed set into its q-orbits, sorted by smallest rep."""
    members = {shape.check_index(a) for a in members}
    out = []
    while members:
        orb = q_orbit(min(members), shape)
        if not orb <= members:
            raise InputError("member set is not closed under multiplication by q")
        members -= orb
        out.append(orb)
    return sorted(out, key=min)


def scale_members(members, v, shape: CodeShape) -> frozenset[IndexTuple]:
    """Coordinatewise scaling i -> (v_k * i_k mod r_k) by a unit tuple v."""
    v = tuple(int(x) for x in v)
    if len(v) != shape.s:
        raise InputError(f"unit tuple {v} has wrong arity for shape {shape.r}")
    for vk, rk in zip(v, shape.r):
        if math.gcd(vk, rk) != 1:
            raise InputError(f"{v} is not a unit tuple modulo {shape.r}")
    return frozenset(
        tuple((vk * ik) % rk for vk, ik, rk in zip(v, a, shape.r))
        for a in (shape.check_index(a) for a in members)
    )
