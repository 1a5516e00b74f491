"""Abelian codes pinned by a defining set: dimension, code-level apparent
distance (at the canonical root tuple and maximized over all of them), and
the generating idempotent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .apparent import MadTrace, afforded_by, mad
from .dsbounds import BoundSet
from .errors import InputError
from .gfield import FieldContext, PolyVector, inverse_dft
from .orbits import DefiningSet, defining_set_from_members, scale_members


@dataclass(frozen=True)
class AbelianCode:
    defining_set: DefiningSet

    @property
    def shape(self):
        return self.defining_set.shape


def dimension(C: AbelianCode) -> int:
    return C.shape.n - len(C.defining_set)


@dataclass(frozen=True)
class CodeReport:
    n: int
    dimension: int
    value: int
    bound_names: tuple[str, ...]
    trace: MadTrace
    alpha_variant: tuple[int, ...] | None = None


def _check_nonzero(C: AbelianCode):
    if len(C.defining_set) == C.shape.n:
        raise InputError("the zero code (defining set = all of I) has no distance bound")


def apparent_distance_at_alpha(C: AbelianCode, bounds: BoundSet) -> CodeReport:
    """Code apparent distance at the canonical root tuple: mad of M(D)."""
    _check_nonzero(C)
    trace = mad(afforded_by(C.defining_set), bounds)
    return CodeReport(
        n=C.shape.n,
        dimension=dimension(C),
        value=trace.result,
        bound_names=bounds.names,
        trace=trace,
    )


def _unit_classes(C: AbelianCode):
    """Unit tuples modulo the diagonal q-power action, with their scaled sets.

    Scaling D by q fixes it (D is orbit-closed), so v and q*v induce the same
    transformed defining set; distinct transforms can still coincide and are
    deduplicated outright.
    """
    shape = C.shape
    axis_units = [[u for u in range(rk) if gcd(u, rk) == 1] for rk in shape.r]
    seen_tuples: set[tuple[int, ...]] = set()
    seen_sets: set[frozenset] = set()
    for v in itertools.product(*axis_units):
        if v in seen_tuples:
            continue
        cur = v
        while cur not in seen_tuples:
            seen_tuples.add(cur)
            cur = tuple((x * shape.q) % rk for x, rk in zip(cur, shape.r))
        scaled = scale_members(C.defining_set.members, v, shape)
        if scaled in seen_sets:
            continue
        seen_sets.add(scaled)
        yield v, scaled


def apparent_distance_over_U(C: AbelianCode, bounds: BoundSet) -> CodeReport:
    """Max of the fixed-root apparent distance over all root tuples."""
    _check_nonzero(C)
    best: CodeReport | None = None
    for v, scaled in _unit_classes(C):
        D = defining_set_from_members(scaled, C.shape)
        trace = mad(afforded_by(D), bounds)
        if best is None or trace.result > best.value:
            best = CodeReport(
                n=C.shape.n,
                dimension=dimension(C),
                value=trace.result,
                bound_names=bounds.names,
                trace=trace,
                alpha_variant=v,
            )
    assert best is not None  # identity tuple always enumerated
    return best


def generating_idempotent(C: AbelianCode, ctx: FieldContext) -> PolyVector:
    """The idempotent generator: inverse transform of the indicator of I \\ D.

    Its coefficients always land in the base field; a failure here would mean
    the defining set was not orbit-closed, which the constructors exclude.
    """
    if ctx.shape != C.shape:
        raise InputError("field context was built for a different shape")
    shape = C.shape
    indicator = np.ones(tuple(shape.r), dtype=np.int64)
    for idx in C.defining_set.members:
        indicator[idx] = 0
    e = inverse_dft(PolyVector(shape, indicator), ctx)
    for x in e.coeffs.flat:
        if not ctx.in_subfield(int(x), shape.q):
            raise RuntimeError(
                "idempotent coefficients left the base field - defining set closure broken"
            )
    return e
