"""scikit-learn style front end: fit on a table, transform vertices to iterates."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .codec import build_code, iterate, iterate_many, mean_plateau_descents, plateau_descents
from .core import (
    DecompositionStrategy,
    EvalResult,
    FunctionTable,
    IndexMode,
    PermutationWitness,
    ValidationError,
    descent_bound,
    validate_table,
)
from .decompose import decompose


def _check_vertices(X) -> np.ndarray:
    X = check_array(X, ensure_2d=False, allow_nd=True, dtype=None, ensure_min_samples=0)
    if X.dtype.kind not in "iu":
        raise ValidationError(f"vertices must be integers, got dtype {X.dtype}")
    return X


class FastForwardIterator(TransformerMixin, BaseEstimator):
    """Precompute a table ``f`` so that ``transform`` returns ``f^m`` of its input.

    Parameters
    ----------
    m : int, default=1
        Iterate count used by ``transform`` and ``descents``.
    strategy : {"greedy", "ordered", "cycle"}, default="greedy"
        Decomposition used to build the code. ``"cycle"`` only accepts
        permutations.
    index : {"dense", "bsearch"}, default="dense"
        Store the position-to-component map, or search for it.
    hot : bool, default=False
        Also store per-component loop lengths.

    Attributes
    ----------
    table_ : FunctionTable
    decomposition_ : OrbitDecomposition
    code_ : FastForwardCode
    n_components_ : int
    max_descents_ : int
        Worst descent depth over all vertices.
    """

    def __init__(self, m=1, strategy="greedy", index="dense", hot=False):
        self.m = m
        self.strategy = strategy
        self.index = index
        self.hot = hot

    def fit(self, X, y=None):
        if isinstance(X, PermutationWitness):
            table = X.table
        elif isinstance(X, FunctionTable):
            table = X
        else:
            X = check_array(X, ensure_2d=False, dtype=None)
            if X.ndim != 1:
                raise ValidationError(f"expected a 1-D table, got shape {X.shape}")
            table = validate_table(X)
        strategy = DecompositionStrategy.parse(self.strategy)
        self.table_ = table
        self.decomposition_ = decompose(X if isinstance(X, PermutationWitness) else table, strategy)
        self.code_ = build_code(table, strategy, IndexMode.parse(self.index), self.hot, self.decomposition_)
        self.n_components_ = self.code_.n_components
        self.max_descents_ = int(plateau_descents(self.code_).max())
        self.descent_bound_ = descent_bound(table.n)
        return self

    def transform(self, X):
        check_is_fitted(self, "code_")
        return iterate_many(self.code_, _check_vertices(X), self.m)[0]

    def descents(self, X):
        """Number of descents spent on each entry of ``X`` at the current ``m``."""
        check_is_fitted(self, "code_")
        return iterate_many(self.code_, _check_vertices(X), self.m)[1]

    def iterate(self, x: int, m: int | None = None) -> EvalResult:
        """Scalar evaluation with operation counts."""
        check_is_fitted(self, "code_")
        return iterate(self.code_, x, self.m if m is None else m)

    def mean_descents(self):
        """Average plateau descent count over all vertices, as a ``Fraction``."""
        check_is_fitted(self, "code_")
        return mean_plateau_descents(self.code_)
