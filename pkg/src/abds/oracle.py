"""Brute-force ground truth for desk-scale codes.

Everything here is deliberately independent of the bound machinery: true
minimum distance by codeword enumeration, random-polynomial checks of the
weight inequality, and exhaustive lattice checks of the descent result.
Budgets keep the enumerations at desk scale; exceeding one raises
CapacityError rather than silently thrashing.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np

from .apparent import HyperMatrix, afforded_by, apparent_distance, mad
from .codes import AbelianCode, apparent_distance_over_U, dimension, generating_idempotent
from .dsbounds import BoundSet
from .errors import CapacityError, InputError
from .gfield import MAX_FIELD_SIZE, FieldContext, PolyVector, build_context, inverse_dft, weight
from .orbits import (
    CodeShape,
    DefiningSet,
    defining_set_from_reps,
    prime_power_split,
    split_into_orbits,
)


@dataclass(frozen=True)
class OracleBudget:
    max_codewords: int = 1 << 24
    max_orbit_subsets: int = 1 << 12

    def __post_init__(self):
        if self.max_codewords < 1 or self.max_orbit_subsets < 1:
            raise InputError("budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


def worker_count() -> int:
    """Worker cap from ABDS_THREADS; defaults to a small pool."""
    env = os.environ.get("ABDS_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"ABDS_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def _small_field_tables(ctx: FieldContext, q: int):
    """Dense q x q add/mul (plus neg/inv) tables over the subfield GF(q)."""
    sub = ctx.subfield(q)
    pos = {enc: i for i, enc in enumerate(sub)}
    ADD = np.zeros((q, q), dtype=np.uint8)
    SUB = np.zeros((q, q), dtype=np.uint8)
    MUL = np.zeros((q, q), dtype=np.uint8)
    INV = np.zeros(q, dtype=np.uint8)
    for i, a in enumerate(sub):
        for j, b in enumerate(sub):
            ADD[i, j] = pos[ctx.add(a, b)]
            SUB[i, j] = pos[ctx.sub(a, b)]
            MUL[i, j] = pos[ctx.mul(a, b)]
        if a:
            INV[i] = pos[ctx.inv(a)]
    return sub, pos, ADD, SUB, MUL, INV


def _row_reduce(rows: np.ndarray, ADD, SUB, MUL, INV) -> np.ndarray:
    """Row echelon over GF(q) on index-encoded rows; returns the basis."""
    rows = rows.copy()
    m, n = rows.shape
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if rows[i, col]:
                piv = i
                break
        if piv is None:
            continue
        rows[[rank, piv]] = rows[[piv, rank]]
        rows[rank] = MUL[INV[rows[rank, col]], rows[rank]]
        for i in range(m):
            if i != rank and rows[i, col]:
                rows[i] = SUB[rows[i], MUL[rows[i, col], rows[rank]]]
        rank += 1
    return rows[:rank]


def _gray_digits(t: int, q: int, k: int) -> list[int]:
    """Digits of the q-ary reflected Gray code at rank t."""
    n = [(t // q**i) % q for i in range(k + 1)]
    return [(n[i] - n[i + 1]) % q for i in range(k)]


def code_basis(C: AbelianCode, ctx: FieldContext):
    """Reduced basis of the monomial shifts of the generating idempotent.

    Returned as index-encoded rows (values 0..q-1 indexing the subfield
    elements) together with the small-field tables.  Rank != n - |D| would
    falsify the model, so it is a hard error.
    """
    shape = C.shape
    q = shape.q
    sub, pos, ADD, SUB, MUL, INV = _small_field_tables(ctx, q)
    e = generating_idempotent(C, ctx)
    e_idx = np.vectorize(lambda x: pos[int(x)], otypes=[np.uint8])(e.coeffs)
    shifts = []
    for idx in shape.all_indices():
        shifts.append(np.roll(e_idx, shift=idx, axis=tuple(range(shape.s))).reshape(-1))
    basis = _row_reduce(np.array(shifts, dtype=np.uint8), ADD, SUB, MUL, INV)
    k = dimension(C)
    if basis.shape[0] != k:
        raise RuntimeError(
            f"shift span has rank {basis.shape[0]}, expected dimension {k}"
        )
    return basis, (ADD, SUB, MUL, INV)


def min_distance_bruteforce(
    C: AbelianCode,
    ctx: FieldContext | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
    threads: int | None = None,
) -> int:
    """Exact minimum Hamming weight over all nonzero codewords."""
    k = dimension(C)
    if k == 0:
        raise InputError("the zero code has no minimum distance")
    q = C.shape.q
    count = q**k
    if count > budget.max_codewords:
        raise CapacityError(
            f"enumeration needs {count} codewords, budget is {budget.max_codewords}",
            required=count,
            budget=budget.max_codewords,
        )
    if ctx is None:
        ctx = build_context(C.shape)
    basis, (ADD, SUB, MUL, INV) = code_basis(C, ctx)
    n = C.shape.n

    # Meet in the middle: materialize the span of the tail rows as one block,
    # then walk the head combinations in Gray order, one row update per step.
    k2 = 0
    while k2 < k and q ** (k2 + 1) <= 4096:
        k2 += 1
    k1 = k - k2
    W = np.zeros((1, n), dtype=np.uint8)
    for row in basis[k1:]:
        scaled = MUL[:, row]  # (q, n): c -> c * row
        W = ADD[W[:, None, :], scaled[None, :, :]].reshape(-1, n)

    def scan(lo: int, hi: int) -> int:
        local = n + 1
        digits = _gray_digits(lo, q, k1)
        acc = np.zeros(n, dtype=np.uint8)
        for pos_, d in enumerate(digits):
            if d:
                acc = ADD[acc, MUL[d, basis[pos_]]]
        t = lo
        while True:
            sums = ADD[acc[None, :], W]
            w = np.count_nonzero(sums, axis=1)
            w[w == 0] = n + 1  # the zero codeword shows up exactly once
            m = int(w.min())
            if m < local:
                local = m
            t += 1
            if t >= hi:
                return local
            nxt = _gray_digits(t, q, k1)
            pos_ = next(i for i in range(k1) if nxt[i] != digits[i])
            acc = ADD[acc, MUL[SUB[nxt[pos_], digits[pos_]], basis[pos_]]]
            digits = nxt

    steps = q**k1
    nworkers = threads if threads is not None else worker_count()
    nworkers = max(1, min(nworkers, steps))
    if nworkers == 1 or steps < 4 * nworkers:
        return scan(0, steps)
    bounds_ = [steps * i // nworkers for i in range(nworkers + 1)]
    with ThreadPoolExecutor(max_workers=nworkers) as pool:
        parts = pool.map(scan, bounds_[:-1], bounds_[1:])
    return min(parts)


def check_weight_theorem(
    shape: CodeShape,
    ctx: FieldContext,
    bounds: BoundSet,
    trials: int,
    seed: int | None = None,
) -> dict:
    """Random-polynomial check: apparent distance of the coefficient support
    never exceeds the weight of the inverse transform."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    violations = 0
    t0 = time.perf_counter()
    for _ in range(trials):
        density = rng.uniform(0.05, 0.95)
        mask = rng.random(tuple(shape.r)) < density
        coeffs = np.where(mask, rng.integers(1, ctx.size, size=tuple(shape.r)), 0)
        f = PolyVector(shape, coeffs.astype(np.int64))
        value, _ = apparent_distance(HyperMatrix(shape, mask), bounds)
        if value > weight(inverse_dft(f, ctx)):
            violations += 1
    return {
        "check": "weight",
        "q": shape.q,
        "r": list(shape.r),
        "trials": trials,
        "violations": violations,
        "seed": seed,
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }


def check_mad_lattice(
    M: HyperMatrix,
    bounds: BoundSet,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> tuple[int, int, bool]:
    """Compare the descent result with the plain minimum over every nonzero
    orbit-closed hypermatrix below M."""
    free = split_into_orbits(M.support_indices(), M.shape)
    subsets = 1 << len(free)
    if subsets > budget.max_orbit_subsets:
        raise CapacityError(
            f"lattice has {subsets} orbit subsets, budget is {budget.max_orbit_subsets}",
            required=subsets,
            budget=budget.max_orbit_subsets,
        )
    brute = None
    for mask in range(1, subsets):
        arr = np.zeros(tuple(M.shape.r), dtype=bool)
        for bit, orb in enumerate(free):
            if mask >> bit & 1:
                for idx in orb:
                    arr[idx] = True
        value, _ = apparent_distance(HyperMatrix(M.shape, arr), bounds)
        if brute is None or value < brute:
            brute = value
    mad_value = mad(M, bounds).result
    return mad_value, brute, mad_value == brute


# --- samplers used by the verification suites and the verify command


def random_defining_set(
    shape: CodeShape,
    rng: np.random.Generator,
    keep_probability: float = 0.5,
    min_dim: int = 1,
    max_dim: int | None = None,
) -> DefiningSet:
    """Random union of q-orbits with dimension inside the requested window."""
    orbits = split_into_orbits(shape.all_indices(), shape)
    hi = shape.n if max_dim is None else max_dim
    for _ in range(10_000):
        picked = [orb for orb in orbits if rng.random() < keep_probability]
        size = sum(len(o) for o in picked)
        if min_dim <= shape.n - size <= hi:
            return defining_set_from_reps([min(o) for o in picked], shape)
    raise InputError(
        f"no defining set with dimension in [{min_dim}, {hi}] found for shape {shape.r}"
    )


def sample_cyclic_code(
    rng: np.random.Generator,
    qs=(2, 3, 4, 5),
    max_n: int = 35,
    max_dim: int = 20,
    max_codewords: int = DEFAULT_BUDGET.max_codewords,
) -> DefiningSet:
    """Random cyclic (s = 1) code whose field tables and enumeration both fit."""
    while True:
        q = int(rng.choice(qs))
        n = int(rng.integers(2, max_n + 1))
        if gcd(n, q) != 1:
            continue
        p, e = prime_power_split(q)
        order, cur = 1, q % n
        while cur != 1:
            cur = (cur * q) % n
            order += 1
        if p ** (e * order) > MAX_FIELD_SIZE:
            continue  # root-of-unity field would not fit the table budget
        dim_cap = max_dim
        while q**dim_cap > max_codewords:
            dim_cap -= 1
        if dim_cap < 1:
            continue
        shape = CodeShape(q, (n,))
        # bias the orbit keep-rate so the dimension window is reachable
        keep = min(0.9, max(0.3, 1.0 - dim_cap / (2 * n)))
        try:
            return random_defining_set(shape, rng, keep, min_dim=1, max_dim=dim_cap)
        except InputError:
            continue


# --- suite runners shared by the CLI/service verify command and the tests


def run_weight_suite(shape: CodeShape, bounds: BoundSet, trials: int, seed: int | None) -> dict:
    ctx = build_context(shape)
    return check_weight_theorem(shape, ctx, bounds, trials, seed)


def run_soundness_exhaustive(
    shape: CodeShape,
    bounds: BoundSet,
    max_dim: int = 20,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> dict:
    """Every orbit-closed defining set of the shape (dimension-capped):
    the over-roots apparent distance must never exceed the true distance."""
    t0 = time.perf_counter()
    ctx = build_context(shape)
    orbits = split_into_orbits(shape.all_indices(), shape)
    if len(orbits) > 20:
        raise CapacityError(
            f"shape has {len(orbits)} orbits; exhaustive sweep would not finish",
            required=1 << len(orbits),
            budget=1 << 20,
        )
    cases = 0
    violations = []
    for mask in range(1 << len(orbits)):
        reps = [min(orb) for bit, orb in enumerate(orbits) if mask >> bit & 1]
        D = defining_set_from_reps(reps, shape)
        dim = shape.n - len(D)
        if dim < 1 or dim > max_dim:
            continue
        code = AbelianCode(D)
        bound_value = apparent_distance_over_U(code, bounds).value
        true_d = min_distance_bruteforce(code, ctx, budget)
        cases += 1
        if bound_value > true_d:
            violations.append({"reps": sorted(D.orbit_reps), "bound": bound_value, "d": true_d})
    return {
        "check": "soundness",
        "mode": "exhaustive",
        "q": shape.q,
        "r": list(shape.r),
        "max_dim": max_dim,
        "cases": cases,
        "violations": len(violations),
        "witnesses": violations[:5],
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }


def run_soundness_random(
    bounds: BoundSet,
    count: int,
    seed: int | None,
    max_n: int = 35,
    max_dim: int = 20,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> dict:
    """Random cyclic codes: over-roots apparent distance vs true distance."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    violations = []
    for _ in range(count):
        D = sample_cyclic_code(rng, max_n=max_n, max_dim=max_dim)
        code = AbelianCode(D)
        ctx = build_context(D.shape)
        bound_value = apparent_distance_over_U(code, bounds).value
        true_d = min_distance_bruteforce(code, ctx, budget)
        if bound_value > true_d:
            violations.append(
                {"q": D.shape.q, "r": list(D.shape.r), "reps": sorted(D.orbit_reps),
                 "bound": bound_value, "d": true_d}
            )
    return {
        "check": "soundness",
        "mode": "random",
        "cases": count,
        "violations": len(violations),
        "witnesses": violations[:5],
        "seed": seed,
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }


def run_lattice_suite(
    shape: CodeShape,
    bounds: BoundSet,
    count: int,
    seed: int | None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> dict:
    """Random orbit-closed matrices: descent result == lattice minimum."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    max_free = budget.max_orbit_subsets.bit_length() - 1
    mismatches = []
    done = 0
    while done < count:
        D = random_defining_set(shape, rng, keep_probability=0.5, min_dim=1)
        M = afforded_by(D)
        free = split_into_orbits(M.support_indices(), M.shape)
        if len(free) > max_free:
            continue
        mad_value, brute, equal = check_mad_lattice(M, bounds, budget)
        done += 1
        if not equal:
            mismatches.append({"reps": sorted(D.orbit_reps), "mad": mad_value, "brute": brute})
    return {
        "check": "lattice",
        "q": shape.q,
        "r": list(shape.r),
        "cases": count,
        "violations": len(mismatches),
        "witnesses": mismatches[:5],
        "seed": seed,
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }
