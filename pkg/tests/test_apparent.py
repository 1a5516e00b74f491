import itertools
import random

import numpy as np
import pytest

from abds.apparent import (
    HyperMatrix,
    afforded_by,
    apparent_distance,
    apparent_distance_vector,
    hypercolumn,
    involved_hypercolumns,
    mad,
)
from abds.dsbounds import get_bounds
from abds.errors import InputError
from abds.orbits import CodeShape, defining_set_from_reps, split_into_orbits

BOTH = get_bounds("bch,ht")


def code1_matrix():
    sh = CodeShape(5, (3, 24))
    reps = [(0, 0), (0, 1), (0, 2), (0, 3), (0, 6), (0, 7), (0, 9), (1, 0), (1, 1), (1, 5), (1, 6)]
    return afforded_by(defining_set_from_reps(reps, sh))


def code2_matrix():
    sh = CodeShape(2, (5, 15))
    reps = [(0, 0), (0, 3), (0, 5), (0, 7), (1, 0), (1, 2), (1, 4)]
    return afforded_by(defining_set_from_reps(reps, sh))


def full_matrix(q, r):
    sh = CodeShape(q, r)
    return HyperMatrix(sh, np.ones(r, dtype=bool))


def lattice_minimum(M, bounds):
    """Definitional value: min apparent distance over nonzero unions of support orbits."""
    orbits = split_into_orbits(M.support_indices(), M.shape)
    best = None
    for k in range(1, len(orbits) + 1):
        for pick in itertools.combinations(orbits, k):
            arr = np.zeros(tuple(M.shape.r), dtype=bool)
            for orb in pick:
                for idx in orb:
                    arr[idx] = True
            value, _ = apparent_distance(HyperMatrix(M.shape, arr), bounds)
            best = value if best is None else min(best, value)
    return best


class TestHyperMatrix:
    def test_shape_validation(self):
        with pytest.raises(InputError):
            HyperMatrix(CodeShape(2, (3, 5)), np.zeros((5, 3), dtype=bool))

    def test_immutability(self):
        M = full_matrix(2, (3, 5))
        with pytest.raises(ValueError):
            M.support[0, 0] = False

    def test_zero_and_support_partition(self):
        sh = CodeShape(2, (3, 5))
        arr = np.zeros((3, 5), dtype=bool)
        arr[1, 2] = True
        M = HyperMatrix(sh, arr)
        assert not M.is_zero()
        assert M.support_indices() == frozenset({(1, 2)})
        assert M.support_indices() | M.zero_indices() == frozenset(sh.all_indices())
        assert HyperMatrix(sh, np.zeros((3, 5), dtype=bool)).is_zero()

    def test_same_support(self):
        a = full_matrix(2, (3, 5))
        b = full_matrix(2, (3, 5))
        assert a.same_support(b)
        arr = np.ones((3, 5), dtype=bool)
        arr[0, 0] = False
        assert not a.same_support(HyperMatrix(a.shape, arr))


class TestAffordedBy:
    def test_support_is_complement_of_defining_set(self):
        sh = CodeShape(2, (5, 15))
        D = defining_set_from_reps([(0, 3), (1, 0)], sh)
        M = afforded_by(D)
        assert M.zero_indices() == D.members
        assert len(M.support_indices()) == sh.n - len(D)

    def test_empty_defining_set_gives_full_support(self):
        sh = CodeShape(2, (3, 5))
        M = afforded_by(defining_set_from_reps([], sh))
        assert bool(M.support.all())


class TestHypercolumn:
    def test_slices_match_numpy_take(self):
        M = code2_matrix()
        row = hypercolumn(M, 0, 3)
        assert row.shape.r == (15,)
        assert np.array_equal(row.support, M.support[3])
        col = hypercolumn(M, 1, 7)
        assert col.shape.r == (5,)
        assert np.array_equal(col.support, M.support[:, 7])

    def test_validation(self):
        M = code2_matrix()
        with pytest.raises(InputError):
            hypercolumn(M, 2, 0)
        with pytest.raises(InputError):
            hypercolumn(M, 0, 5)
        with pytest.raises(InputError):
            hypercolumn(M, 1, -1)


class TestVectorCase:
    def test_zero_vector_is_zero(self):
        assert apparent_distance_vector(np.zeros(24, dtype=bool), BOTH) == 0

    def test_frozen_example(self):
        v = np.ones(24, dtype=bool)
        for k in (0, 1, 5, 6):
            v[k] = False
        assert apparent_distance_vector(v, get_bounds("ht")) == 4
        assert apparent_distance_vector(v, get_bounds("bch")) == 3

    def test_full_vector_is_one(self):
        assert apparent_distance_vector(np.ones(7, dtype=bool), BOTH) == 1

    def test_rejects_matrices(self):
        with pytest.raises(InputError):
            apparent_distance_vector(np.ones((2, 2), dtype=bool), BOTH)


class TestApparentDistance:
    def test_zero_matrix(self):
        M = HyperMatrix(CodeShape(2, (3, 5)), np.zeros((3, 5), dtype=bool))
        assert apparent_distance(M, BOTH) == (0, ())

    def test_full_support_is_one(self):
        value, reports = apparent_distance(full_matrix(2, (3, 5)), BOTH)
        assert value == 1
        assert all(rep.omega == 1 and rep.epsilon == 1 for rep in reports)

    def test_scalar_case(self):
        M = HyperMatrix(CodeShape(2, ()), np.array(True))
        assert apparent_distance(M, BOTH) == (1, ())

    def test_first_worked_code(self):
        M = code1_matrix()
        v_ht, reports = apparent_distance(M, get_bounds("ht"))
        assert v_ht == 8
        ax0, ax1 = reports
        assert (ax0.omega, ax0.epsilon, ax0.delta, ax0.involved) == (1, 5, 5, ())
        assert (ax1.omega, ax1.epsilon, ax1.delta) == (4, 2, 8)
        assert ax1.involved == (2, 3, 7, 9, 10, 11, 15, 21)
        v_bch, _ = apparent_distance(M, get_bounds("bch"))
        assert v_bch == 6
        v_both, _ = apparent_distance(M, BOTH)
        assert v_both == 8

    def test_second_worked_code(self):
        M = code2_matrix()
        value, (ax0, ax1) = apparent_distance(M, BOTH)
        assert value == 8
        assert (ax0.supp, ax0.omega, ax0.epsilon, ax0.delta) == ((0, 1, 2, 3, 4), 1, 8, 8)
        assert ax0.involved == (0,)
        assert (ax1.omega, ax1.epsilon, ax1.delta, ax1.involved) == (2, 3, 6, ())

    def test_involved_hypercolumns(self):
        assert involved_hypercolumns(code2_matrix(), BOTH) == ((0, 0),)
        with pytest.raises(InputError):
            involved_hypercolumns(
                HyperMatrix(CodeShape(2, (3, 5)), np.zeros((3, 5), dtype=bool)), BOTH
            )

    def test_value_bounded_by_length(self):
        for M in (code1_matrix(), code2_matrix()):
            value, _ = apparent_distance(M, BOTH)
            assert 1 <= value <= M.shape.n


class TestMadDescent:
    def test_second_worked_code_trace(self):
        t = mad(code2_matrix(), BOTH)
        assert t.deltas == (8, 8)
        assert t.values == (8, 8)
        assert t.result == 8
        assert t.stop_reason == "zero-matrix"
        assert t.first_min_index == 0
        assert t.mu == 7
        assert t.length == 1

    def test_first_worked_code_trace(self):
        t = mad(code1_matrix(), BOTH)
        assert t.deltas == (8, 5)
        assert t.values == (8, 5)
        assert t.result == 5
        assert t.stop_reason == "unit-hypercolumn"
        assert t.first_min_index == 1
        assert t.mu == 11
        assert t.length == 1

    def test_full_support_stops_immediately(self):
        t = mad(full_matrix(2, (3, 5)), BOTH)
        assert t.result == 1
        assert t.length == 0
        assert t.stop_reason == "unit-hypercolumn"

    def test_zero_matrix_rejected(self):
        with pytest.raises(InputError):
            mad(HyperMatrix(CodeShape(2, (3, 5)), np.zeros((3, 5), dtype=bool)), BOTH)

    def test_non_orbit_closed_zero_set_rejected(self):
        sh = CodeShape(2, (3, 5))
        arr = np.ones((3, 5), dtype=bool)
        arr[0, 1] = False  # {(0,1)} is not 2-closed: misses (0,2)
        with pytest.raises(InputError):
            mad(HyperMatrix(sh, arr), BOTH)

    def test_trace_invariants_on_worked_codes(self):
        for M in (code1_matrix(), code2_matrix()):
            t = mad(M, BOTH)
            assert len(t.deltas) == len(t.values) == len(t.matrices)
            assert t.values[0] == t.deltas[0]
            for i in range(1, len(t.values)):
                assert t.values[i] == min(t.values[i - 1], t.deltas[i])
            assert t.result == t.values[-1]
            assert t.values.index(t.result) == t.first_min_index
            assert t.length <= t.mu
            # strictly shrinking supports
            for a, b in zip(t.matrices, t.matrices[1:]):
                assert b.support_indices() < a.support_indices()

    def test_matches_lattice_minimum_small(self):
        rng = random.Random(23)
        for q, r in [(2, (3, 5)), (2, (7,)), (3, (2, 5)), (2, (3, 7))]:
            sh = CodeShape(q, r)
            for _ in range(6):
                all_idx = list(sh.all_indices())
                reps = [all_idx[rng.randrange(len(all_idx))] for _ in range(rng.randint(0, 3))]
                M = afforded_by(defining_set_from_reps(reps, sh))
                if M.is_zero():
                    continue
                t = mad(M, BOTH)
                assert t.result == lattice_minimum(M, BOTH), (q, r, reps)
                assert t.length <= t.mu

    def test_descent_never_raises_below_one(self):
        # nonzero matrices always end at a value >= 1
        t = mad(code2_matrix(), BOTH)
        assert all(v >= 1 for v in t.values)
