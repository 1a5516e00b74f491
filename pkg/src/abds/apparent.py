"""Support hypermatrices, apparent distance, and the descent to its minimum.

The apparent distance of a nonzero s-dimensional support array M is computed
per axis j: omega_j bounds the zero pattern of the axis support (via the
configured ds-bounds), epsilon_j is the best apparent distance among the
nonzero slices along j, and Delta_j = omega_j * epsilon_j; the value is the
max over axes.  Vectors are the s = 1 case, scalars (s = 0) anchor the
recursion with value 1.

mad() runs the descent: starting from a hypermatrix whose zero set is a
union of q-orbits, it repeatedly zeroes every q-orbit that meets the support
of an involved slice (a slice achieving epsilon on an axis achieving the
overall value), keeping the running minimum of the values seen.  The result
is the minimum apparent distance over all nonzero orbit-closed hypermatrices
below the start, which is exactly the code-level apparent distance at a
fixed root tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dsbounds import BoundSet
from .errors import InputError
from .orbits import CodeShape, DefiningSet, IndexTuple, is_union_of_orbits, q_orbit, split_into_orbits


@dataclass(frozen=True, eq=False)
class HyperMatrix:
    """Boolean support array indexed by I = Z_{r1} x ... x Z_{rs}."""

    shape: CodeShape
    support: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.support, dtype=bool)
        if arr.shape != tuple(self.shape.r):
            raise InputError(f"support array shape {arr.shape} != {tuple(self.shape.r)}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "support", arr)

    def is_zero(self) -> bool:
        return not self.support.any()

    def support_indices(self) -> frozenset[IndexTuple]:
        return frozenset(tuple(int(x) for x in idx) for idx in np.argwhere(self.support))

    def zero_indices(self) -> frozenset[IndexTuple]:
        return frozenset(tuple(int(x) for x in idx) for idx in np.argwhere(~self.support))

    def same_support(self, other: "HyperMatrix") -> bool:
        return self.shape == other.shape and bool(np.array_equal(self.support, other.support))


def afforded_by(D: DefiningSet) -> HyperMatrix:
    """Hypermatrix with a 1 exactly at the indices off the defining set."""
    arr = np.ones(tuple(D.shape.r), dtype=bool)
    for idx in D.members:
        arr[idx] = False
    return HyperMatrix(D.shape, arr)


def hypercolumn(M: HyperMatrix, j: int, k: int) -> HyperMatrix:
    """The (s-1)-dimensional slice at coordinate j fixed to k (axes 0-based)."""
    if not 0 <= j < M.shape.s:
        raise InputError(f"axis {j} out of range for shape {M.shape.r}")
    if not 0 <= k < M.shape.r[j]:
        raise InputError(f"slice index {k} out of range on axis {j}")
    sub = np.take(M.support, k, axis=j)
    return HyperMatrix(CodeShape(M.shape.q, M.shape.r[:j] + M.shape.r[j + 1 :]), sub)


def apparent_distance_vector(v, bounds: BoundSet) -> int:
    """Best bound value on the zero set of a 1-dimensional support vector."""
    arr = np.asarray(v, dtype=bool)
    if arr.ndim != 1:
        raise InputError(f"expected a vector, got ndim={arr.ndim}")
    if not arr.any():
        return 0
    zero = [i for i in range(arr.size) if not arr[i]]
    return bounds.evaluate_best(zero, arr.size)


# Apparent distance depends only on (bounds, r, support), never on q, so the
# memo is shared across shapes and descent steps.  Plain dict assignment is
# atomic; concurrent duplicate inserts are harmless.
_DELTA_MEMO: dict[tuple, int] = {}


class _AxisStats(NamedTuple):
    supp: tuple[int, ...]
    omega: int
    epsilon: int
    delta: int
    slice_values: tuple[int, ...]  # aligned with supp


def _delta(arr: np.ndarray, r: tuple[int, ...], bounds: BoundSet) -> int:
    if not arr.any():
        return 0
    if not r:
        return 1  # nonzero scalar
    key = (bounds.key, r, arr.tobytes())
    hit = _DELTA_MEMO.get(key)
    if hit is not None:
        return hit
    value = max(_axis_stats(arr, r, bounds, j).delta for j in range(len(r)))
    _DELTA_MEMO[key] = value
    return value


def _axis_stats(arr: np.ndarray, r: tuple[int, ...], bounds: BoundSet, j: int) -> _AxisStats:
    rj = r[j]
    flat = np.moveaxis(arr, j, 0).reshape(rj, -1)
    nonzero = flat.any(axis=1)
    supp = tuple(int(k) for k in np.nonzero(nonzero)[0])
    omega = bounds.evaluate_best([k for k in range(rj) if not nonzero[k]], rj)
    sub_r = r[:j] + r[j + 1 :]
    if sub_r:
        slice_values = tuple(_delta(np.take(arr, k, axis=j), sub_r, bounds) for k in supp)
    else:
        slice_values = tuple(1 for _ in supp)  # vector case: entries
    epsilon = max(slice_values)
    return _AxisStats(supp, omega, epsilon, omega * epsilon, slice_values)


@dataclass(frozen=True)
class AxisReport:
    axis: int
    supp: tuple[int, ...]
    omega: int
    epsilon: int
    delta: int
    involved: tuple[int, ...]


def apparent_distance(M: HyperMatrix, bounds: BoundSet) -> tuple[int, tuple[AxisReport, ...]]:
    """Value plus per-axis evidence (omega, epsilon, Delta, involved slices)."""
    arr = M.support
    r = tuple(M.shape.r)
    if not arr.any():
        return 0, ()
    if not r:
        return 1, ()
    stats = [_axis_stats(arr, r, bounds, j) for j in range(len(r))]
    value = max(st.delta for st in stats)
    _DELTA_MEMO.setdefault((bounds.key, r, arr.tobytes()), value)
    reports = []
    for j, st in enumerate(stats):
        involved = ()
        if st.delta == value:
            involved = tuple(
                k for k, dv in zip(st.supp, st.slice_values) if dv == st.epsilon
            )
        reports.append(
            AxisReport(
                axis=j,
                supp=st.supp,
                omega=st.omega,
                epsilon=st.epsilon,
                delta=st.delta,
                involved=involved,
            )
        )
    return value, tuple(reports)


def involved_hypercolumns(M: HyperMatrix, bounds: BoundSet) -> tuple[tuple[int, int], ...]:
    """All (axis, index) pairs whose slice contributes the overall value."""
    if M.is_zero():
        raise InputError("the zero hypermatrix has no involved hypercolumns")
    _, reports = apparent_distance(M, bounds)
    return tuple((rep.axis, k) for rep in reports for k in rep.involved)


@dataclass(frozen=True)
class MadTrace:
    """Record of the descent M_0 > M_1 > ... > M_l.

    deltas[i] is the apparent distance of M_i; values[i] is the running
    minimum m_i, so values is non-increasing and result = values[-1].
    first_min_index is the least i with values[i] == result; mu counts the
    q-orbits in the zero set of M_0 (the trace never exceeds it).
    """

    matrices: tuple[HyperMatrix, ...]
    deltas: tuple[int, ...]
    values: tuple[int, ...]
    result: int
    stop_reason: str  # "unit-hypercolumn" | "zero-matrix" | "stabilized"
    first_min_index: int
    mu: int

    @property
    def length(self) -> int:
        return len(self.matrices) - 1


def mad(M: HyperMatrix, bounds: BoundSet) -> MadTrace:
    """Minimum apparent distance over nonzero orbit-closed P <= M, with trace."""
    if M.is_zero():
        raise InputError("mad needs a nonzero hypermatrix")
    shape = M.shape
    zero_set = M.zero_indices()
    if not is_union_of_orbits(zero_set, shape):
        raise InputError("the zero set of the hypermatrix must be a union of q-orbits")
    mu = len(split_into_orbits(zero_set, shape))
    support_orbits = len(split_into_orbits(M.support_indices(), shape))

    mats: list[HyperMatrix] = []
    deltas: list[int] = []
    values: list[int] = []
    stop = "stabilized"
    cur = M
    # every step zeroes at least one support orbit, so this range is generous
    for _ in range(support_orbits + 1):
        value, reports = apparent_distance(cur, bounds)
        mats.append(cur)
        deltas.append(value)
        values.append(value if not values else min(values[-1], value))

        if any(rep.involved and rep.epsilon == 1 for rep in reports):
            # an involved slice of value 1 pins the minimum at the current value
            stop = "unit-hypercolumn"
            break

        doomed: set[IndexTuple] = set()
        for rep in reports:
            for k in rep.involved:
                sub = np.take(cur.support, k, axis=rep.axis)
                for pos in np.argwhere(sub):
                    full = tuple(int(x) for x in pos[: rep.axis]) + (k,) + tuple(
                        int(x) for x in pos[rep.axis :]
                    )
                    doomed.add(full)
        kill: set[IndexTuple] = set()
        for idx in doomed:
            if idx not in kill:
                kill |= q_orbit(idx, shape)
        nxt_arr = cur.support.copy()
        for idx in kill:
            nxt_arr[idx] = False
        nxt = HyperMatrix(shape, nxt_arr)
        if nxt.is_zero():
            stop = "zero-matrix"
            break
        cur = nxt

    result = values[-1]
    return MadTrace(
        matrices=tuple(mats),
        deltas=tuple(deltas),
        values=tuple(values),
        result=result,
        stop_reason=stop,
        first_min_index=values.index(result),
        mu=mu,
    )
