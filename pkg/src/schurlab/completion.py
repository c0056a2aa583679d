"""Completing a multiplicative coefficient matrix from partial data.

Specified entries define ratio constraints f(i)/f(j) = a_ij on a graph over
the indices. A spanning tree fixes f by propagation, every redundant entry is
checked against the propagated values, and the fundamental cycle of any
violated constraint is reported. Working with the ratios directly keeps the
solve branch-free; the additive logarithmic coordinates exist only for
reports.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .core import DEFAULT_TOL, ComplexMatrix, Tolerance, as_matrix
from .errors import DimensionError, PreconditionError, ZeroEntryError

__all__ = [
    "PartialMatrix",
    "Violation",
    "CompletionReport",
    "COMPLETED",
    "INCONSISTENT",
    "UNDERDETERMINED",
    "complete_partial",
    "log_coordinates",
]

COMPLETED = "completed"
INCONSISTENT = "inconsistent"
UNDERDETERMINED = "underdetermined"


@dataclass(frozen=True)
class PartialMatrix:
    """Square complex entries plus a specified/unspecified mask.

    Specified entries must be finite and nonzero; the diagonal may be left
    unspecified (a completion forces it to 1). Values at unspecified
    positions are ignored.
    """

    entries: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.complex128, copy=True)
        mask = np.array(self.mask, dtype=bool, copy=True)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise DimensionError(f"square entries required, got shape {entries.shape}")
        if mask.shape != entries.shape:
            raise DimensionError(
                f"mask shape {mask.shape} does not match entries shape {entries.shape}"
            )
        spec = entries[mask]
        if spec.size and not np.all(np.isfinite(spec)):
            raise ValueError("specified entries must be finite")
        zero = mask & (np.abs(entries) == 0.0)
        if np.any(zero):
            i, j = np.argwhere(zero)[0]
            raise ZeroEntryError(
                f"specified entry ({i + 1},{j + 1}) is zero",
                position=(int(i) + 1, int(j) + 1),
            )
        entries.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "mask", mask)

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def specified_items(self) -> Iterator[tuple[int, int, complex]]:
        """Yield (i, j, value) for every specified position, 0-based."""
        for i, j in np.argwhere(self.mask):
            yield int(i), int(j), complex(self.entries[i, j])


class Violation(NamedTuple):
    cycle: tuple[int, ...]  # 1-based vertex sequence, closing edge implied
    residual: float


@dataclass
class CompletionReport:
    status: str
    matrix: ComplexMatrix | None
    violations: list[Violation]
    components: list[list[int]]  # 1-based, each sorted, ordered by smallest vertex

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "violations": [
                {"cycle": list(v.cycle), "residual": v.residual} for v in self.violations
            ],
            "components": self.components,
        }


def _components_and_adjacency(n: int, edges: set[tuple[int, int]]):
    adjacency: dict[int, list[int]] = {v: [] for v in range(n)}
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    for v in adjacency:
        adjacency[v].sort()
    seen = [False] * n
    components: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = []
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        components.append(sorted(comp))
    return components, adjacency


def _tree_path(parent: list[int], depth: list[int], i: int, j: int) -> list[int]:
    """Vertex path from i to j along the BFS tree, endpoints included."""
    up_i, up_j = [i], [j]
    a, b = i, j
    while depth[a] > depth[b]:
        a = parent[a]
        up_i.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        up_j.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        up_i.append(a)
        up_j.append(b)
    # up_i ends at the meeting vertex, shared with up_j
    return up_i + up_j[-2::-1]


def complete_partial(
    partial: PartialMatrix,
    tol: Tolerance | None = None,
    star_preserving: bool = False,
) -> CompletionReport:
    """Fill in a multiplicative matrix from its specified entries.

    Connected and consistent data completes to the unique matrix
    a_ij = f(i)/f(j) agreeing with every specified entry; inconsistencies are
    reported with the fundamental cycle of the violated constraint; a
    disconnected constraint graph is underdetermined and the components are
    returned so the caller can supply more data. In star-preserving mode the
    specified entries must be unimodular and each one also implies its
    reciprocal at the transposed position.
    """
    tol = tol or DEFAULT_TOL
    n = partial.n
    unit_thr = tol.threshold(1.0)

    specified = list(partial.specified_items())
    if star_preserving:
        for i, j, value in specified:
            if i != j and abs(abs(value) - 1.0) > unit_thr:
                raise PreconditionError(
                    f"star-preserving completion requires unimodular data; "
                    f"entry ({i + 1},{j + 1}) has modulus {abs(value):.12g}"
                )

    edges: set[tuple[int, int]] = set()
    ratios: dict[tuple[int, int], complex] = {}
    diag_violations: list[Violation] = []
    for i, j, value in specified:
        if i == j:
            dev = abs(value - 1.0)
            if dev > unit_thr:
                diag_violations.append(Violation((i + 1,), dev))
            continue
        ratios[(i, j)] = value
        edges.add((min(i, j), max(i, j)))
        if star_preserving:
            ratios.setdefault((j, i), 1.0 / value)

    components, adjacency = _components_and_adjacency(n, edges)

    if diag_violations:
        return CompletionReport(INCONSISTENT, None, diag_violations, _one_based(components))

    if len(components) > 1:
        return CompletionReport(UNDERDETERMINED, None, [], _one_based(components))

    # Connected: depth-first spanning tree from vertex 0, exploring neighbors
    # in ascending order (a chain of specified entries stays a chain).
    parent = [-1] * n
    depth = [0] * n
    f = np.zeros(n, dtype=np.complex128)
    f[0] = 1.0
    seen = [False] * n
    stack: list[tuple[int, int]] = [(0, -1)]
    while stack:
        v, p = stack.pop()
        if seen[v]:
            continue
        seen[v] = True
        if p >= 0:
            parent[v] = p
            depth[v] = depth[p] + 1
            if (p, v) in ratios:
                f[v] = f[p] / ratios[(p, v)]  # a_pv = f(p)/f(v)
            else:
                f[v] = f[p] * ratios[(v, p)]  # a_vp = f(v)/f(p)
        for w in reversed(adjacency[v]):
            if not seen[w]:
                stack.append((w, v))

    completed = np.outer(f, 1.0 / f)
    np.fill_diagonal(completed, 1.0)  # forced exactly by the unit-diagonal law
    violations: list[Violation] = []
    for (i, j), value in sorted(ratios.items()):
        residual = abs(value - f[i] / f[j])
        if residual > tol.threshold(abs(value)):
            cycle = tuple(v + 1 for v in _tree_path(parent, depth, i, j))
            violations.append(Violation(cycle, float(residual)))

    if violations:
        return CompletionReport(INCONSISTENT, None, violations, _one_based(components))
    return CompletionReport(
        COMPLETED, ComplexMatrix(completed), [], _one_based(components)
    )


def _one_based(components: list[list[int]]) -> list[list[int]]:
    return [[v + 1 for v in comp] for comp in components]


def log_coordinates(a) -> np.ndarray:
    """Transform entries by x -> log(x) / (2 pi i), principal branch.

    The real part (the argument over 2 pi) is reduced to [0, 1); the
    imaginary part carries -ln|x| / (2 pi). Multiplicative matrices satisfy
    b_ii = 0 and b_ij = b_ik + b_kj modulo 1 in the real part. Diagnostic
    only; the completion itself never takes logarithms.
    """
    m = as_matrix(a)
    data = m.data
    mags = np.abs(data)
    if np.any(mags == 0.0):
        i, j = np.argwhere(mags == 0.0)[0]
        raise ZeroEntryError(
            f"entry ({i + 1},{j + 1}) is zero, logarithmic coordinates undefined",
            position=(int(i) + 1, int(j) + 1),
        )
    real_part = np.mod(np.angle(data) / (2.0 * np.pi), 1.0)
    imag_part = -np.log(mags) / (2.0 * np.pi)
    return real_part + 1j * imag_part
