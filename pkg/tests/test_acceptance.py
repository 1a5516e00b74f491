"""Acceptance gate: one test per numbered criterion, with the stated value
and runtime assertions.  Run with ``pytest -v tests/test_acceptance.py`` to
get exactly one pass/fail line per criterion."""

import random
import time

import numpy as np

from abds.apparent import afforded_by, apparent_distance, mad
from abds.codes import (
    AbelianCode,
    apparent_distance_at_alpha,
    apparent_distance_over_U,
)
from abds.dsbounds import REGISTRY, bch_optimal, get_bounds, ht_optimal
from abds.gfield import PolyVector, build_context, convolve, dft, inverse_dft
from abds.jobs import run_table1
from abds.oracle import (
    random_defining_set,
    run_lattice_suite,
    run_soundness_exhaustive,
    run_soundness_random,
    run_weight_suite,
    sample_cyclic_code,
)
from abds.orbits import CodeShape, defining_set_from_reps, split_into_orbits

BOTH = get_bounds("bch,ht")

CODE1_SHAPE = (5, (3, 24))
CODE1_REPS = [(0, 0), (0, 1), (0, 2), (0, 3), (0, 6), (0, 7), (0, 9), (1, 0), (1, 1), (1, 5), (1, 6)]
CODE2_SHAPE = (2, (5, 15))
CODE2_REPS = [(0, 0), (0, 3), (0, 5), (0, 7), (1, 0), (1, 2), (1, 4)]

# seeds shared between criterion 6/8 runs and the criterion-10 trace sweep
SEED_RANDOM_CODES = 20260819
LATTICE_PLAN = ((2, (3, 15), 40, 101), (2, (3, 7), 30, 102), (3, (5, 5), 30, 103))


def make_code(shape_args, reps):
    q, r = shape_args
    sh = CodeShape(q, r)
    return AbelianCode(defining_set_from_reps(reps, sh))


def test_01_first_code_axis_reports():
    t0 = time.perf_counter()
    M = afforded_by(make_code(CODE1_SHAPE, CODE1_REPS).defining_set)
    value_ht, (ax0, ax1) = apparent_distance(M, get_bounds("ht"))
    assert value_ht == 8
    assert ax0.omega == 1
    assert ax1.omega == 4
    value_bch, (bx0, bx1) = apparent_distance(M, get_bounds("bch"))
    assert value_bch == 6
    assert bx0.delta == 5
    assert bx1.delta == 6
    assert bx1.omega == 3
    assert time.perf_counter() - t0 < 1.0


def test_02_second_code_value():
    t0 = time.perf_counter()
    M = afforded_by(make_code(CODE2_SHAPE, CODE2_REPS).defining_set)
    value, _ = apparent_distance(M, BOTH)
    assert value == 8
    assert time.perf_counter() - t0 < 1.0


def test_03_second_code_descent_trace():
    t0 = time.perf_counter()
    C = make_code(CODE2_SHAPE, CODE2_REPS)
    report = apparent_distance_at_alpha(C, BOTH)
    assert report.dimension == 52
    assert report.trace.result == 8
    assert time.perf_counter() - t0 < 5.0
    assert tuple(report.trace.values) == (8, 8, 15)


def test_04_first_code_final_value():
    t0 = time.perf_counter()
    C = make_code(CODE1_SHAPE, CODE1_REPS)
    report = apparent_distance_over_U(C, BOTH)
    assert report.dimension == 52
    assert time.perf_counter() - t0 < 5.0
    assert report.value == 8


def test_05_golden_table_rows():
    t0 = time.perf_counter()
    report = run_table1()
    by_name = {row["name"]: row for row in report["rows"]}
    assert by_name["C4"]["skipped"] is True
    assert report["comparable"] == 4
    assert time.perf_counter() - t0 < 30.0
    assert report["matches"] == 4
    assert report["all_match"] is True


def test_06_soundness_suite():
    t0 = time.perf_counter()
    ex1 = run_soundness_exhaustive(CodeShape(2, (3, 5)), BOTH, max_dim=20)
    ex2 = run_soundness_exhaustive(CodeShape(2, (3, 7)), BOTH, max_dim=20)
    rnd = run_soundness_random(BOTH, count=50, seed=SEED_RANDOM_CODES, max_n=35, max_dim=20)
    assert ex1["violations"] == 0, ex1["witnesses"]
    assert ex2["violations"] == 0, ex2["witnesses"]
    assert rnd["violations"] == 0, rnd["witnesses"]
    assert rnd["cases"] == 50
    assert time.perf_counter() - t0 < 600.0


def test_07_weight_suite():
    t0 = time.perf_counter()
    for r, seed in (((3, 3), 71), ((3, 5), 72), ((5, 3), 73)):
        report = run_weight_suite(CodeShape(2, r), BOTH, trials=1000, seed=seed)
        assert report["violations"] == 0, (r, report)
    assert time.perf_counter() - t0 < 120.0


def test_08_descent_vs_lattice_suite():
    t0 = time.perf_counter()
    total = 0
    for q, r, count, seed in LATTICE_PLAN:
        report = run_lattice_suite(CodeShape(q, r), BOTH, count=count, seed=seed)
        assert report["violations"] == 0, (q, r, report["witnesses"])
        total += report["cases"]
    assert total == 100
    assert time.perf_counter() - t0 < 300.0


def test_09_monotonicity_and_floor():
    t0 = time.perf_counter()
    for bound in REGISTRY.values():
        rng = random.Random(900 + len(bound.name))
        for _ in range(10_000):
            n = rng.randint(2, 30)
            M = [x for x in range(n) if rng.random() < 0.5]
            N = [x for x in M if rng.random() < 0.6]
            assert bound.evaluate(N, n) <= bound.evaluate(M, n), (bound.name, N, M, n)
    for n in (1, 2, 7, 24, 100):
        assert bch_optimal([], n) == 1
        assert ht_optimal([], n) == 1
    rng = random.Random(901)
    for _ in range(10_000):
        n = rng.randint(2, 30)
        N = [x for x in range(n) if rng.random() < 0.5]
        assert ht_optimal(N, n) >= bch_optimal(N, n), (N, n)
    assert time.perf_counter() - t0 < 60.0


def test_10_trace_length_within_orbit_count():
    offenders = []

    def check(trace, tag):
        if trace.length > trace.mu:
            offenders.append((tag, trace.length, trace.mu))

    # every defining set the exhaustive soundness sweep visits
    for q, r in ((2, (3, 5)), (2, (3, 7))):
        shape = CodeShape(q, r)
        orbits = split_into_orbits(shape.all_indices(), shape)
        for mask in range(1 << len(orbits)):
            reps = [min(orb) for bit, orb in enumerate(orbits) if mask >> bit & 1]
            D = defining_set_from_reps(reps, shape)
            dim = shape.n - len(D)
            if dim < 1 or dim > 20:
                continue
            C = AbelianCode(D)
            check(apparent_distance_at_alpha(C, BOTH).trace, (q, r, mask, "at"))
            check(apparent_distance_over_U(C, BOTH).trace, (q, r, mask, "over"))

    # the random cyclic codes of the soundness suite (same seed and sampler)
    rng = np.random.default_rng(SEED_RANDOM_CODES)
    for i in range(50):
        D = sample_cyclic_code(rng, max_n=35, max_dim=20)
        C = AbelianCode(D)
        check(apparent_distance_at_alpha(C, BOTH).trace, ("cyclic", i, "at"))
        check(apparent_distance_over_U(C, BOTH).trace, ("cyclic", i, "over"))

    # the random matrices of the lattice suite (same seeds and filter)
    for q, r, count, seed in LATTICE_PLAN:
        shape = CodeShape(q, r)
        rng = np.random.default_rng(seed)
        done = 0
        while done < count:
            D = random_defining_set(shape, rng, keep_probability=0.5, min_dim=1)
            M = afforded_by(D)
            if len(split_into_orbits(M.support_indices(), shape)) > 12:
                continue
            check(mad(M, BOTH), (q, r, done))
            done += 1

    assert offenders == []


def test_11_transform_algebra_suite():
    t0 = time.perf_counter()
    for r in ((3, 3), (3, 5), (5, 3)):
        shape = CodeShape(2, r)
        ctx = build_context(shape)
        rng = np.random.default_rng(110 + r[0] * r[1])
        for _ in range(1000):
            fa = rng.integers(0, ctx.size, size=tuple(r)).astype(np.int64)
            ga = rng.integers(0, ctx.size, size=tuple(r)).astype(np.int64)
            f, g = PolyVector(shape, fa), PolyVector(shape, ga)
            vf = dft(f, ctx)
            assert np.array_equal(inverse_dft(vf, ctx).coeffs, f.coeffs)
            lhs = dft(convolve(f, g, ctx), ctx).coeffs
            vg = dft(g, ctx).coeffs
            rhs = np.array(
                [ctx.mul(int(a), int(b)) for a, b in zip(vf.coeffs.flat, vg.flat)],
                dtype=np.int64,
            ).reshape(r)
            assert np.array_equal(lhs, rhs)
    assert time.perf_counter() - t0 < 60.0
