"""Finite corners of infinite coefficient matrices.

A generator rule (i, j) -> a_ij with 1-based indices models an infinite
matrix. Probing a finite leading corner can refute an infinite claim
(boundedness, being bounded away from zero) but never fully confirm it, so
the reports here say "consistent with" rather than "proved": boolean flags
are probe-scale statements and the ratio trend across probe sizes is the
divergence indicator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .core import DEFAULT_TOL, ComplexMatrix, Tolerance
from .errors import (
    DimensionError,
    NotMultiplicativeError,
    PreconditionError,
    ZeroEntryError,
)
from .multiplicative import ScalingVector, check_cocycle, factor_scaling

__all__ = [
    "CoefficientGenerator",
    "toeplitz_generator",
    "scaling_generator",
    "table_generator",
    "corner",
    "L2FactorReport",
    "l2_multiplier_factor_check",
    "compact_bound_check",
    "WitnessResult",
    "unboundedness_witness",
]


@dataclass(frozen=True)
class CoefficientGenerator:
    """Pure rule (i, j) -> complex scalar, indices 1-based.

    ``declared_bound`` is the claimed sup |a_ij| when known; ``max_index``
    bounds the corners a finitely supported rule can produce. The rule must
    be deterministic so corners are reproducible.
    """

    rule: Callable[[int, int], complex]
    declared_bound: float | None = None
    max_index: int | None = None
    label: str = ""


def toeplitz_generator(lam: complex) -> CoefficientGenerator:
    """a_ij = lam^(j-i)."""
    lam = complex(lam)
    if lam == 0:
        raise ZeroEntryError("Toeplitz ratio must be nonzero", position=None)
    return CoefficientGenerator(
        rule=lambda i, j: lam ** (j - i),
        label=f"toeplitz:{lam.real:g},{lam.imag:g}",
    )


def scaling_generator(values) -> CoefficientGenerator:
    """a_ij = f(i)/f(j) from a finite sequence or a callable f(i), 1-based."""
    if callable(values):
        fn = values
        return CoefficientGenerator(
            rule=lambda i, j: complex(fn(i)) / complex(fn(j)),
            label="scaling:<callable>",
        )
    arr = np.asarray(values, dtype=np.complex128).ravel()
    if arr.size == 0:
        raise DimensionError("scaling sequence must be nonempty")
    zero = np.abs(arr) == 0.0
    if np.any(zero):
        k = int(np.argmax(zero))
        raise ZeroEntryError(f"scaling value {k + 1} is zero", position=(k + 1, 1))
    mags = np.abs(arr)
    return CoefficientGenerator(
        rule=lambda i, j: complex(arr[i - 1] / arr[j - 1]),
        declared_bound=float(mags.max() / mags.min()),
        max_index=int(arr.size),
        label=f"scaling:len={arr.size}",
    )


def table_generator(entries) -> CoefficientGenerator:
    """Finite table extended by zeros beyond its support."""
    table = np.asarray(entries, dtype=np.complex128)
    if table.ndim != 2 or table.size == 0:
        raise DimensionError(f"table must be a nonempty 2-d array, got shape {table.shape}")
    rows, cols = table.shape

    def rule(i: int, j: int) -> complex:
        if 1 <= i <= rows and 1 <= j <= cols:
            return complex(table[i - 1, j - 1])
        return 0.0 + 0.0j

    return CoefficientGenerator(
        rule=rule,
        declared_bound=float(np.abs(table).max()),
        label=f"table:{rows}x{cols}",
    )


def corner(gen: CoefficientGenerator, n: int) -> ComplexMatrix:
    """Leading principal n-by-n submatrix of the generator."""
    if n < 1:
        raise DimensionError("corner size must be positive")
    if gen.max_index is not None and n > gen.max_index:
        raise DimensionError(
            f"generator only defined up to index {gen.max_index}, requested {n}"
        )
    data = np.empty((n, n), dtype=np.complex128)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            data[i - 1, j - 1] = gen.rule(i, j)
    return ComplexMatrix(data)


class L2FactorReport(NamedTuple):
    multiplicative: bool
    f: ScalingVector
    bounded: bool
    bounded_away: bool
    ratio: float
    half_probe_ratio: float
    trend_growing: bool
    probe: int


def l2_multiplier_factor_check(
    gen: CoefficientGenerator,
    probe: int,
    tol: Tolerance | None = None,
) -> L2FactorReport:
    """Factor the probe corner as f(i)/f(j) and report boundedness at probe scale.

    f(i) is read off the first column, f(i) = a_i1. ``bounded`` and
    ``bounded_away`` compare max|f| and min|f| against 1/rel and rel at the
    probe size; ``trend_growing`` compares the modulus ratio against the
    half-size probe and is the divergence flag. All three are consistent-with
    statements, not proofs about the infinite matrix.
    """
    if probe < 2:
        raise PreconditionError("probe size must be at least 2")
    tol = tol or DEFAULT_TOL
    block = corner(gen, probe)
    result = check_cocycle(block, tol)
    if not result.passed:
        raise NotMultiplicativeError(
            f"probe corner of size {probe} fails the ratio identity "
            f"(residual {result.residual:.3e})",
            residual=result.residual,
            witness=result.witness,
        )
    f = ScalingVector(block.data[:, 0])
    mags = np.abs(f.values)
    ratio = float(mags.max() / mags.min())
    half = max(2, probe // 2)
    half_ratio = float(mags[:half].max() / mags[:half].min())
    limit = 1.0 / max(tol.rel, np.finfo(float).tiny)
    return L2FactorReport(
        multiplicative=True,
        f=f,
        bounded=bool(mags.max() <= limit),
        bounded_away=bool(mags.min() >= 1.0 / limit),
        ratio=ratio,
        half_probe_ratio=half_ratio,
        trend_growing=bool(ratio > half_ratio * (1.0 + 1e-12)),
        probe=probe,
    )


def compact_bound_check(
    gen: CoefficientGenerator,
    n: int,
    trials: int = 200,
    seed: int = 0,
) -> float:
    """Largest ||A_n o T|| / ||T|| over elementary and random rank-one T.

    Elementary matrix units give exactly |a_ij|, so the exhaustive part
    already attains sup |a_ij| over the corner; random rank-one probes can
    only fall below it (the Frobenius bound caps the ratio at the coefficient
    supremum for rank-one T).
    """
    block = corner(gen, n).data
    best = float(np.abs(block).max())
    for t in range(trials):
        rng = np.random.default_rng((int(seed), t))
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        denom = float(np.linalg.norm(u) * np.linalg.norm(v))
        if denom == 0.0:
            continue
        scaled = block * np.outer(u, v.conj())
        best = max(best, float(np.linalg.norm(scaled, 2)) / denom)
    return best


class WitnessResult(NamedTuple):
    x: np.ndarray  # unit vector, length n
    lower_bound: float


def unboundedness_witness(
    gen: CoefficientGenerator,
    n: int,
    tol: Tolerance | None = None,
) -> WitnessResult:
    """Unit vector on which the n-corner attains norm at least n.

    For a multiplicative unit-diagonal corner the scaling vector itself is an
    eigenvector with eigenvalue n; normalized and extended by zeros it
    witnesses ||A x|| >= n for the infinite operator, and the bound grows
    without limit as n does.
    """
    tol = tol or DEFAULT_TOL
    block = corner(gen, n)
    result = check_cocycle(block, tol)
    if not result.passed:
        raise NotMultiplicativeError(
            f"corner of size {n} fails the ratio identity "
            f"(residual {result.residual:.3e})",
            residual=result.residual,
            witness=result.witness,
        )
    f = factor_scaling(block, tol).values
    x = f / np.linalg.norm(f)
    lower = float(np.linalg.norm(block.data @ x))
    return WitnessResult(x=x, lower_bound=lower)
