"""Star-preserving / completely positive battery for unital Schur maps.

Complete positivity is never tested through Choi matrices: for a Schur map it
is equivalent to positive semidefiniteness of the coefficient matrix itself,
which is what the pair-positivity condition checks at O(n^3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    eigenvalues,
    multiset_distance,
    require_square,
    schur_inverse,
)
from .errors import PreconditionError, ZeroEntryError
from .multiplicative import ConditionResult, _cocycle_parts, _pivot_scaling

__all__ = [
    "STAR_CONDITIONS",
    "StarCertificate",
    "is_positive_semidefinite",
    "is_unimodular",
    "projection_check",
    "certify_star_multiplicative",
]

STAR_CONDITIONS = (
    "star_and_multiplicative",
    "cp_isomorphism_proxy",
    "rank_one_normal_unit_diag",
    "rank_one_unimodular_unit_diag",
    "selfadjoint_spectrum_norm",
    "schur_pair_positive",
)

# The normality commutator compounds two matrix products, so it gets a looser
# relative threshold than the base tolerance.
COMMUTATOR_REL = 1e-8


def _psd_residual(data: np.ndarray, tol: Tolerance) -> tuple[bool, float]:
    norm = float(np.linalg.norm(data, 2)) if data.size else 0.0
    herm = float(np.linalg.norm(data - data.conj().T, 2))
    sym = (data + data.conj().T) / 2.0
    lam_min = float(np.linalg.eigvalsh(sym)[0])
    thr = tol.threshold(norm)
    passed = herm <= thr and lam_min >= -thr
    scale = max(norm, 1.0)
    residual = max(herm / scale, max(0.0, -lam_min) / scale)
    return passed, residual


def is_positive_semidefinite(a, tol: Tolerance | None = None) -> bool:
    """Hermitian to tolerance with no eigenvalue below -tol * ||A||."""
    m = as_matrix(a)
    require_square(m)
    tol = tol or DEFAULT_TOL
    passed, _ = _psd_residual(m.data, tol)
    return passed


def is_unimodular(a, tol: Tolerance | None = None) -> bool:
    """Every entry has modulus 1 to tolerance."""
    tol = tol or DEFAULT_TOL
    m = as_matrix(a)
    return float(np.abs(np.abs(m.data) - 1.0).max()) <= tol.threshold(1.0)


def projection_check(a, tol: Tolerance | None = None) -> bool:
    """Whether A/n is an orthogonal projection (idempotent and Hermitian)."""
    m = as_matrix(a)
    n = require_square(m)
    tol = tol or DEFAULT_TOL
    p = m.data / n
    scale = float(np.linalg.norm(p, 2))
    thr = tol.threshold(scale)
    idem = float(np.linalg.norm(p @ p - p, 2))
    herm = float(np.linalg.norm(p - p.conj().T, 2))
    return idem <= thr and herm <= thr


@dataclass
class StarCertificate:
    """Verdicts for the six equivalent star-preserving conditions."""

    verdict: bool
    conditions: dict[str, ConditionResult]
    tolerance: Tolerance = field(default_factory=Tolerance)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "conditions": {
                name: {
                    "pass": r.passed,
                    "residual": float(r.residual) if math.isfinite(r.residual) else None,
                }
                for name, r in self.conditions.items()
            },
            "tolerance": {"rel": self.tolerance.rel, "abs": self.tolerance.abs},
        }


def certify_star_multiplicative(a, tol: Tolerance | None = None) -> StarCertificate:
    """Run the star-preserving battery on a unital coefficient matrix.

    Requires a unit diagonal (the battery is stated for unital Schur maps);
    anything else raises PreconditionError. Residuals are scale-normalized so
    they are comparable across conditions.
    """
    m = as_matrix(a)
    n = require_square(m)
    tol = tol or DEFAULT_TOL
    data = m.data

    diag_res = float(np.abs(np.diagonal(data) - 1.0).max())
    if diag_res > tol.threshold(1.0):
        raise PreconditionError(
            f"unit diagonal required for the star battery, worst deviation {diag_res:.3e}"
        )

    scale = float(np.abs(data).max())
    svals = np.linalg.svd(data, compute_uv=False)
    norm = float(svals[0])
    herm_res = float(np.linalg.norm(data - data.conj().T, 2)) / max(norm, 1.0)
    herm_ok = herm_res <= tol.threshold(1.0)

    triple_res, _, _, _ = _cocycle_parts(data)
    cocycle_ok = triple_res <= tol.threshold(scale * scale)

    rank_cut = max(tol.rel * norm * n, tol.abs)
    rank_one = int(np.count_nonzero(svals > rank_cut)) == 1
    rank_res = float(svals[1] / svals[0]) if n > 1 and svals[0] > 0 else 0.0

    comm = data @ data.conj().T - data.conj().T @ data
    comm_res = float(np.linalg.norm(comm, 2)) / max(norm * norm, 1.0)
    normal_ok = comm_res <= max(COMMUTATOR_REL, tol.rel)

    unimod_res = float(np.abs(np.abs(data) - 1.0).max())
    unimod_ok = unimod_res <= tol.threshold(1.0)

    expected = np.zeros(n, dtype=np.complex128)
    expected[0] = n
    spec_res = multiset_distance(eigenvalues(m, tol), expected) / n
    spec_ok = spec_res <= tol.threshold(1.0)

    if cocycle_ok:
        try:
            map_norm_res = abs(_pivot_scaling(data, tol).modulus_ratio - 1.0)
        except ZeroEntryError:
            map_norm_res = math.inf
    else:
        map_norm_res = math.inf
    map_norm_ok = map_norm_res <= tol.threshold(1.0)

    try:
        inv = schur_inverse(m, tol)
        psd_a_ok, psd_a_res = _psd_residual(data, tol)
        psd_inv_ok, psd_inv_res = _psd_residual(inv.data, tol)
        inv_diag_res = float(np.abs(np.diagonal(inv.data) - 1.0).max())
        pair_ok = psd_a_ok and psd_inv_ok and inv_diag_res <= tol.threshold(1.0)
        pair_res = max(psd_a_res, psd_inv_res, inv_diag_res)
    except ZeroEntryError:
        pair_ok = False
        pair_res = math.inf

    conditions = {
        "star_and_multiplicative": ConditionResult(
            cocycle_ok and herm_ok,
            max(triple_res / max(scale * scale, 1.0), herm_res),
        ),
        "cp_isomorphism_proxy": ConditionResult(pair_ok, pair_res),
        "rank_one_normal_unit_diag": ConditionResult(
            rank_one and normal_ok, max(rank_res, comm_res)
        ),
        "rank_one_unimodular_unit_diag": ConditionResult(
            rank_one and unimod_ok, max(rank_res, unimod_res)
        ),
        "selfadjoint_spectrum_norm": ConditionResult(
            herm_ok and spec_ok and map_norm_ok,
            max(herm_res, spec_res, map_norm_res),
        ),
        "schur_pair_positive": ConditionResult(pair_ok, pair_res),
    }
    verdict = all(r.passed for r in conditions.values())
    return StarCertificate(verdict=verdict, conditions=conditions, tolerance=tol)
