"""Fast-forward evaluation of iterates of lookup-table functions."""

from .codec import (
    FastForwardCode,
    build_code,
    component_of,
    describe_code,
    iterate,
    iterate_many,
    mean_plateau_descents,
    pi_iterate,
    pi_iterate_many,
    plateau_descents,
)
from .core import (
    CodeKind,
    DecompositionStrategy,
    EvalResult,
    FFIterError,
    FunctionTable,
    IndexMode,
    InvariantViolation,
    LengthMismatch,
    NotInjective,
    OrbitDecomposition,
    OutOfRange,
    PermutationWitness,
    ValidationError,
    XOutOfRange,
    as_permutation,
    descent_bound,
    validate_table,
)
from .decompose import (
    decompose,
    greedy_orbit_decomposition,
    orbit_lengths,
    orbit_of,
    ordered_cycle_decomposition,
    ordered_orbit_decomposition,
)
from .estimator import FastForwardIterator

__version__ = "0.1.0"
