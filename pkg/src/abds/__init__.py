"""Defining-set distance bounds for abelian (multivariate cyclic) codes.

The package computes lower bounds on the minimum distance of semisimple
abelian codes over finite fields from their defining sets alone: classic
root-run bounds on one axis, their lift to hypermatrices of root supports
(the apparent distance), and an orbit-descent refinement that minimises the
apparent distance over the code's transform lattice.  A brute-force distance
oracle and randomized self-checks back the fast path.
"""

from .apparent import (
    AxisReport,
    HyperMatrix,
    MadTrace,
    afforded_by,
    apparent_distance,
    apparent_distance_vector,
    hypercolumn,
    involved_hypercolumns,
    mad,
)
from .codes import (
    AbelianCode,
    CodeReport,
    apparent_distance_at_alpha,
    apparent_distance_over_U,
    dimension,
    generating_idempotent,
)
from .dsbounds import (
    BchBound,
    BoundSet,
    DsBound,
    HartmannTzengBound,
    bch_optimal,
    evaluate_best,
    get_bounds,
    ht_optimal,
)
from .errors import CapacityError, InputError
from .gfield import FieldContext, PolyVector, build_context, convolve, dft, inverse_dft, weight
from .oracle import (
    DEFAULT_BUDGET,
    OracleBudget,
    check_mad_lattice,
    check_weight_theorem,
    min_distance_bruteforce,
    run_lattice_suite,
    run_soundness_exhaustive,
    run_soundness_random,
    run_weight_suite,
)
from .orbits import (
    CodeShape,
    DefiningSet,
    cyclotomic_coset,
    defining_set_from_members,
    defining_set_from_reps,
    q_orbit,
    split_into_orbits,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianCode",
    "AxisReport",
    "BchBound",
    "BoundSet",
    "CapacityError",
    "CodeReport",
    "CodeShape",
    "DEFAULT_BUDGET",
    "DefiningSet",
    "DsBound",
    "FieldContext",
    "HartmannTzengBound",
    "HyperMatrix",
    "InputError",
    "MadTrace",
    "OracleBudget",
    "PolyVector",
    "afforded_by",
    "apparent_distance",
    "apparent_distance_at_alpha",
    "apparent_distance_over_U",
    "apparent_distance_vector",
    "bch_optimal",
    "build_context",
    "check_mad_lattice",
    "check_weight_theorem",
    "convolve",
    "cyclotomic_coset",
    "defining_set_from_members",
    "defining_set_from_reps",
    "dft",
    "dimension",
    "evaluate_best",
    "generating_idempotent",
    "get_bounds",
    "hypercolumn",
    "ht_optimal",
    "inverse_dft",
    "involved_hypercolumns",
    "mad",
    "min_distance_bruteforce",
    "q_orbit",
    "run_lattice_suite",
    "run_soundness_exhaustive",
    "run_soundness_random",
    "run_weight_suite",
    "split_into_orbits",
    "weight",
    "__version__",
]
