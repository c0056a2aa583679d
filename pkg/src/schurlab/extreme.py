"""Correlation matrices, rank-one extremity, and the isometry test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import DEFAULT_TOL, Tolerance, as_matrix, numerical_rank, require_square
from .star import is_positive_semidefinite

__all__ = ["CorrelationVerdict", "correlation_check", "IsometryResult", "isometry_check"]


@dataclass(frozen=True)
class CorrelationVerdict:
    is_correlation: bool
    rank: int
    rank_one_extreme: bool


def correlation_check(a, tol: Tolerance | None = None) -> CorrelationVerdict:
    """Classify a matrix as a correlation matrix and flag rank-one extremity.

    A correlation matrix is positive semidefinite with unit diagonal. Rank
    one is a sufficient condition for being an extreme point of the set of
    correlation matrices; no attempt is made to decide extremity at higher
    rank.
    """
    m = as_matrix(a)
    require_square(m)
    tol = tol or DEFAULT_TOL
    unit_diag = float(np.abs(np.diagonal(m.data) - 1.0).max()) <= tol.threshold(1.0)
    is_corr = is_positive_semidefinite(m, tol) and unit_diag
    rank = numerical_rank(m, tol)
    return CorrelationVerdict(
        is_correlation=is_corr,
        rank=rank,
        rank_one_extreme=is_corr and rank == 1,
    )


class IsometryResult(NamedTuple):
    isometry: bool
    coisometry: bool
    scalar_multiple: float | None


def _scalar_gram(gram: np.ndarray, tol: Tolerance) -> float | None:
    """c >= 0 with gram = c^2 I to tolerance, if one exists."""
    k = gram.shape[0]
    c2 = float(np.trace(gram).real) / k
    if c2 < -tol.threshold(1.0):
        return None
    dev = float(np.linalg.norm(gram - c2 * np.eye(k), 2))
    if dev <= tol.threshold(max(abs(c2), 1.0)):
        return float(np.sqrt(max(c2, 0.0)))
    return None


def isometry_check(a, tol: Tolerance | None = None) -> IsometryResult:
    """Test A*A = I and AA* = I, and detect scalar multiples of either.

    Rectangular input is allowed. ``scalar_multiple`` is the scalar c with
    A*A = c^2 I or AA* = c^2 I when either Gram matrix is scalar to
    tolerance, otherwise None.
    """
    m = as_matrix(a)
    tol = tol or DEFAULT_TOL
    data = m.data
    gram_right = data.conj().T @ data
    gram_left = data @ data.conj().T
    iso = float(np.linalg.norm(gram_right - np.eye(m.cols), 2)) <= tol.threshold(1.0)
    coiso = float(np.linalg.norm(gram_left - np.eye(m.rows), 2)) <= tol.threshold(1.0)
    scalar = _scalar_gram(gram_right, tol)
    if scalar is None:
        scalar = _scalar_gram(gram_left, tol)
    return IsometryResult(isometry=iso, coisometry=coiso, scalar_multiple=scalar)
