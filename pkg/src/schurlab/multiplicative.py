"""Deciding whether a Schur map distributes over matrix products.

The decisive finite test is the ratio identity a_ij = a_ik * a_kj together
with a unit diagonal. A matrix passing it factors as a_ij = f(i)/f(j) for a
vector f of nonzero scalars, which turns the Schur map into conjugation by
diag(f). The certificate produced here records that test next to three
equivalent views (rank-one structure, {n, 0, ..., 0} spectrum, and a seeded
sampling of the product rule) so that disagreement, which can only come from
conditioning, is surfaced instead of silently resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .core import (
    DEFAULT_TOL,
    ComplexMatrix,
    Tolerance,
    as_matrix,
    eigenvalues,
    multiset_distance,
    require_square,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    NotMultiplicativeError,
    PreconditionError,
    ZeroEntryError,
)

__all__ = [
    "ScalingVector",
    "CocycleResult",
    "ConditionResult",
    "MultiplicativityCertificate",
    "MULTIPLICATIVE_CONDITIONS",
    "check_cocycle",
    "factor_scaling",
    "build_from_scaling",
    "certify_multiplicative",
    "schur_map_norm",
    "numerical_range_samples",
]

MULTIPLICATIVE_CONDITIONS = (
    "cocycle",
    "unit_diagonal",
    "rank_one",
    "spectrum_0_n",
    "product_sampling",
)


@dataclass(frozen=True)
class ScalingVector:
    """Finite sequence f(1..n) of nonzero complex scalars.

    Carries the factorization a_ij = f(i)/f(j) and the diagonal similarity
    S_A(B) = diag(f) B diag(f)^{-1}.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128, copy=True).ravel()
        if arr.size == 0:
            raise DimensionError("scaling vector must be nonempty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("scaling values must be finite")
        zero = np.abs(arr) == 0.0
        if np.any(zero):
            i = int(np.argmax(zero))
            raise ZeroEntryError(
                f"scaling value {i + 1} is zero", position=(i + 1, 1)
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def modulus_ratio(self) -> float:
        """max |f(i)| / min |f(j)|; equals the induced Schur-map operator norm."""
        mags = np.abs(self.values)
        return float(mags.max() / mags.min())

    def diagonal_matrix(self) -> ComplexMatrix:
        return ComplexMatrix(np.diag(self.values))


def as_scaling(value) -> ScalingVector:
    if isinstance(value, ScalingVector):
        return value
    return ScalingVector(np.asarray(value))


class CocycleResult(NamedTuple):
    passed: bool
    residual: float
    witness: tuple[int, int, int | None] | None


def _cocycle_parts(data: np.ndarray):
    """Worst ratio-identity violation and worst diagonal deviation.

    Scans the middle index in blocks sized to keep the (n, n, block) slab
    around 32 MB; witnesses are 0-based here and converted at the reporting
    boundary.
    """
    n = data.shape[0]
    diag_dev = np.abs(np.diagonal(data) - 1.0)
    diag_i = int(np.argmax(diag_dev))
    diag_res = float(diag_dev[diag_i])
    block = min(n, max(1, (1 << 21) // (n * n)))
    target = data[:, :, None]
    buf = np.empty((n, n, block), dtype=np.complex128)
    mag = np.empty((n, n, block), dtype=np.float64)
    best = -1.0
    triple_witness = (0, 0, 0)
    for k0 in range(0, n, block):
        k1 = min(k0 + block, n)
        width = k1 - k0
        dev = buf[:, :, :width]
        mag2 = mag[:, :, :width]
        np.multiply(data[:, None, k0:k1], data.T[None, :, k0:k1], out=dev)  # a_ik * a_kj
        np.subtract(target, dev, out=dev)
        np.square(dev.real, out=mag2)
        mag2 += np.square(dev.imag)
        m = float(mag2.max())
        if m > best:
            i, j, k = np.unravel_index(int(np.argmax(mag2)), mag2.shape)
            best = m
            triple_witness = (int(i), int(j), int(k) + k0)
    return float(np.sqrt(best)), triple_witness, diag_res, diag_i


def check_cocycle(a, tol: Tolerance | None = None) -> CocycleResult:
    """Test a_ij = a_ik * a_kj for all triples and a_ii = 1 on the diagonal.

    The combined residual is compared against the tolerance scaled by
    max|a_ij|^2, making the verdict invariant under the magnitude of the
    entries. On failure the witness names the worst violation, 1-based;
    a diagonal violation is reported as (i, i, None).
    """
    m = as_matrix(a)
    require_square(m)
    tol = tol or DEFAULT_TOL
    data = m.data
    scale = float(np.abs(data).max())
    triple_res, (wi, wj, wk), diag_res, diag_i = _cocycle_parts(data)
    residual = max(triple_res, diag_res)
    passed = residual <= tol.threshold(scale * scale)
    if passed:
        return CocycleResult(True, residual, None)
    if diag_res >= triple_res:
        witness = (diag_i + 1, diag_i + 1, None)
    else:
        witness = (wi + 1, wj + 1, wk + 1)
    return CocycleResult(False, residual, witness)


def _pivot_scaling(data: np.ndarray, tol: Tolerance) -> ScalingVector:
    """Pivot-column extraction; the caller vouches for multiplicativity."""
    mags = np.abs(data)
    col_min = mags.min(axis=0)
    p = int(np.argmax(col_min))
    if col_min[p] <= tol.abs:
        i = int(np.argmin(mags[:, p]))
        raise ZeroEntryError(
            f"pivot column {p + 1} contains a below-floor entry at ({i + 1},{p + 1})",
            position=(i + 1, p + 1),
        )
    column = data[:, p]
    return ScalingVector(column / column[0])


def factor_scaling(a, tol: Tolerance | None = None) -> ScalingVector:
    """Extract f with a_ij = f(i)/f(j), normalized so f(1) = 1.

    The pivot column maximizes the minimum entry modulus; on exact inputs
    any column gives the same result, the pivot only buys robustness on
    noisy ones.
    """
    m = as_matrix(a)
    tol = tol or DEFAULT_TOL
    result = check_cocycle(m, tol)
    if not result.passed:
        raise NotMultiplicativeError(
            f"ratio identity fails with residual {result.residual:.3e} "
            f"at witness {result.witness}",
            residual=result.residual,
            witness=result.witness,
        )
    return _pivot_scaling(m.data, tol)


def build_from_scaling(f) -> ComplexMatrix:
    """Construct the n-by-n matrix a_ij = f(i)/f(j)."""
    scaling = as_scaling(f)
    values = scaling.values
    return ComplexMatrix(np.outer(values, 1.0 / values))


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    residual: float


@dataclass
class MultiplicativityCertificate:
    """Per-condition verdicts for the multiplicative battery.

    ``conditions`` maps each label in MULTIPLICATIVE_CONDITIONS to its
    verdict and scale-normalized residual. ``witness`` is the worst ratio
    violation (1-based, None for the middle index on diagonal failures) and
    is only present when the ratio test fails. ``inconsistent`` flags
    disagreement among the four theoretically equivalent composite
    conditions; near the tolerance boundary that is a conditioning
    diagnostic, and the caller decides what to do with it.
    """

    verdict: bool
    conditions: dict[str, ConditionResult]
    witness: tuple[int, int, int | None] | None
    scaling: ScalingVector | None
    inconsistent: bool
    tolerance: Tolerance = field(default_factory=Tolerance)

    def composite_conditions(self) -> dict[str, bool]:
        """The four equivalent conditions with the unit diagonal folded in."""
        c = self.conditions
        unit = c["unit_diagonal"].passed
        return {
            "product_rule": c["product_sampling"].passed,
            "spectrum": c["spectrum_0_n"].passed and unit,
            "rank_one": c["rank_one"].passed and unit,
            "cocycle": c["cocycle"].passed and unit,
        }

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "conditions": {
                name: {"pass": r.passed, "residual": _json_residual(r.residual)}
                for name, r in self.conditions.items()
            },
            "witness": list(self.witness) if self.witness else None,
            "scaling": (
                [[float(v.real), float(v.imag)] for v in self.scaling.values]
                if self.scaling is not None
                else None
            ),
            "inconsistent": self.inconsistent,
            "tolerance": {"rel": self.tolerance.rel, "abs": self.tolerance.abs},
        }


def _json_residual(value: float):
    return float(value) if math.isfinite(value) else None


def _product_sampling_residual(data: np.ndarray, trials: int, seed: int) -> float:
    """Worst normalized defect of S_A(BC) = S_A(B) S_A(C) over seeded pairs.

    Frobenius norms throughout; each trial draws from a stream derived from
    (seed, trial) so trials are reproducible independent of evaluation order.
    """
    n = data.shape[0]
    scale = float(np.abs(data).max())
    worst = 0.0
    for t in range(trials):
        rng = np.random.default_rng((int(seed), t))
        pair = rng.standard_normal((2, n, n)) + 1j * rng.standard_normal((2, n, n))
        b, c = pair[0], pair[1]
        lhs = data * (b @ c)
        rhs = (data * b) @ (data * c)
        denom = float(np.linalg.norm(b) * np.linalg.norm(c)) * scale * scale
        if denom == 0.0:
            continue
        worst = max(worst, float(np.linalg.norm(lhs - rhs)) / denom)
    return worst


def certify_multiplicative(
    a,
    tol: Tolerance | None = None,
    trials: int = 8,
    seed: int = 0,
) -> MultiplicativityCertificate:
    """Run the full multiplicative battery and return the certificate.

    Evaluates the ratio identity, unit diagonal, rank-one structure,
    {n, 0^(n-1)} spectrum and a seeded sampling of the product rule. The
    verdict is the conjunction; the theory predicts unanimous agreement, so
    disagreement is recorded on the certificate rather than raised.
    """
    m = as_matrix(a)
    n = require_square(m)
    tol = tol or DEFAULT_TOL
    if trials < 1:
        raise PreconditionError("trials must be positive")
    data = m.data
    scale = float(np.abs(data).max())
    if scale == 0.0:
        raise PreconditionError("the zero Schur map is excluded from certification")

    triple_res, (wi, wj, wk), diag_res, diag_i = _cocycle_parts(data)
    conditions: dict[str, ConditionResult] = {}
    conditions["cocycle"] = ConditionResult(
        triple_res <= tol.threshold(scale * scale), triple_res
    )
    conditions["unit_diagonal"] = ConditionResult(
        diag_res <= tol.threshold(1.0), diag_res
    )

    try:
        svals = np.linalg.svd(data, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"singular value iteration failed: {exc}") from exc
    rank_cut = max(tol.rel * float(svals[0]) * n, tol.abs)
    rank = int(np.count_nonzero(svals > rank_cut))
    rank_res = float(svals[1] / svals[0]) if n > 1 and svals[0] > 0 else 0.0
    conditions["rank_one"] = ConditionResult(rank == 1, rank_res)

    expected = np.zeros(n, dtype=np.complex128)
    expected[0] = n
    spec_res = multiset_distance(eigenvalues(m, tol), expected)
    conditions["spectrum_0_n"] = ConditionResult(
        spec_res <= tol.threshold(float(n)), spec_res
    )

    samp_res = _product_sampling_residual(data, trials, seed)
    conditions["product_sampling"] = ConditionResult(
        samp_res <= tol.threshold(1.0), samp_res
    )

    verdict = all(r.passed for r in conditions.values())
    witness: tuple[int, int, int | None] | None = None
    if not (conditions["cocycle"].passed and conditions["unit_diagonal"].passed):
        if diag_res >= triple_res:
            witness = (diag_i + 1, diag_i + 1, None)
        else:
            witness = (wi + 1, wj + 1, wk + 1)

    scaling = None
    if conditions["cocycle"].passed and conditions["unit_diagonal"].passed:
        try:
            scaling = _pivot_scaling(data, tol)
        except ZeroEntryError:
            scaling = None

    cert = MultiplicativityCertificate(
        verdict=verdict,
        conditions=conditions,
        witness=witness,
        scaling=scaling,
        inconsistent=False,
        tolerance=tol,
    )
    composites = cert.composite_conditions()
    cert.inconsistent = len(set(composites.values())) > 1
    return cert


def schur_map_norm(a, tol: Tolerance | None = None) -> float:
    """Operator norm of a multiplicative Schur map: max_{i,j} |f(i)/f(j)|.

    Equals 1 exactly when all |f(i)| coincide. Raises NotMultiplicativeError
    when the input does not pass the ratio test (the formula is only valid
    for multiplicative maps).
    """
    return factor_scaling(a, tol).modulus_ratio


def numerical_range_samples(a, directions: int) -> list[tuple[float, float]]:
    """Support function of the numerical range at equally spaced angles.

    For each angle t the support is the largest eigenvalue of the Hermitian
    part of e^{it} A. Two matrices with equal samples at every angle have
    numerical ranges with identical supporting half-planes at those angles.
    """
    m = as_matrix(a)
    require_square(m)
    if directions < 1:
        raise PreconditionError("directions must be positive")
    data = m.data
    out: list[tuple[float, float]] = []
    for idx in range(directions):
        theta = 2.0 * np.pi * idx / directions
        rotated = np.exp(1j * theta) * data
        herm = (rotated + rotated.conj().T) / 2.0
        try:
            support = float(np.linalg.eigvalsh(herm)[-1])
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"support computation failed: {exc}") from exc
        out.append((float(theta), support))
    return out
