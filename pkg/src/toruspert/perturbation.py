"""Degenerate perturbation corrections for the torus Laplacian.

Restricting the potential to one Laplacian eigenspace gives the
secular matrix A with entries A[u, v] = c(k_u - k_v), the Fourier
coefficient of the potential at the difference frequency.  Its
eigenvalues are the first-order eigenvalue corrections of the
perturbed operator and its eigenvectors pick the branch basis inside
the eigenspace.  Second-order corrections and first-order eigenvector
mixing are resolvent sums over lattice modes outside the eigenspace,
truncated to a sup-norm box whose tail is negligible for genuinely
decaying coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolve import symmetric_eigen
from .errors import DegenerateBranchError, ResourceLimitError
from .lattice import EigenspaceBasis, eigenspace, lattice_box, squared_norm
from .potential import PotentialSpec, fourier_coefficient

# Hard cap on resolvent-box size; beyond this the dense sums stop being
# a desk-scale computation.
MAX_BOX_POINTS = 2_000_000

FULLY_SPLIT = "fully_split"
PARTIALLY_SPLIT = "partially_split"
UNSPLIT = "unsplit"


@dataclass(frozen=True)
class PerturbationMatrix:
    """Secular matrix of the potential on one eigenspace.

    `entries[u, v]` is the potential coefficient at k_u - k_v for the
    stored basis order; `spec` records the potential (including the
    constant-term convention that fixes the diagonal).
    """

    lambda0: int
    basis: EigenspaceBasis
    entries: np.ndarray
    spec: PotentialSpec

    @property
    def subtract_constant(self) -> bool:
        return self.spec.subtract_constant


def assemble_first_order(spec: PotentialSpec, basis: EigenspaceBasis) -> PerturbationMatrix:
    """Build the secular matrix for `spec` on `basis` (in basis order)."""
    if spec.n != basis.n:
        raise ValueError(
            f"potential dimension {spec.n} != eigenspace dimension {basis.n}"
        )
    freqs = basis.frequencies
    m = len(freqs)
    entries = np.empty((m, m))
    for u in range(m):
        ku = freqs[u]
        for v in range(m):
            kv = freqs[v]
            entries[u, v] = fourier_coefficient(
                spec, tuple(a - b for a, b in zip(ku, kv))
            )
    return PerturbationMatrix(
        lambda0=basis.lambda0, basis=basis, entries=entries, spec=spec
    )


def default_gap_tolerance(entries: np.ndarray) -> float:
    """Clustering tolerance scaled to the coefficient magnitude."""
    return 1e-9 * max(1.0, float(np.abs(entries).max()))


@dataclass(frozen=True)
class SplittingReport:
    """First-order splitting of one degenerate eigenvalue.

    `corrections` are the secular eigenvalues in ascending order with
    `eigenvectors[:, i]` the matching branch vector in the basis order
    recorded by `matrix`.  `clusters` groups correction indices whose
    adjacent gaps fall at or below `gap_tolerance`; `min_gap` is +inf
    for a one-dimensional eigenspace.
    """

    lambda0: int
    n: int
    corrections: np.ndarray
    eigenvectors: np.ndarray
    min_gap: float
    gap_tolerance: float
    verdict: str
    clusters: tuple[tuple[int, ...], ...]
    matrix: PerturbationMatrix

    @property
    def multiplicity(self) -> int:
        return len(self.corrections)

    def to_dict(self) -> dict:
        """JSON-ready view (schema 1); non-finite min_gap maps to null."""
        return {
            "schema": 1,
            "kind": "splitting_report",
            "lambda0": self.lambda0,
            "n": self.n,
            "alpha": list(self.matrix.spec.alpha),
            "subtract_constant": self.matrix.spec.subtract_constant,
            "multiplicity": self.multiplicity,
            "basis": [list(k) for k in self.matrix.basis.frequencies],
            "corrections": [float(c) for c in self.corrections],
            "min_gap": float(self.min_gap) if math.isfinite(self.min_gap) else None,
            "gap_tolerance": float(self.gap_tolerance),
            "verdict": self.verdict,
            "clusters": [list(c) for c in self.clusters],
            "eigenvectors": [
                [float(x) for x in self.eigenvectors[:, i]]
                for i in range(self.eigenvectors.shape[1])
            ],
            "matrix": [[float(x) for x in row] for row in self.matrix.entries],
        }


def _cluster_indices(values: np.ndarray, tolerance: float) -> tuple[tuple[int, ...], ...]:
    clusters = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tolerance:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return tuple(tuple(c) for c in clusters)


def first_order_corrections(
    spec: PotentialSpec,
    lambda0: int,
    n: int,
    gap_tolerance: float | None = None,
) -> SplittingReport:
    """Diagonalize the secular matrix and classify the splitting.

    The verdict is `fully_split` when every adjacent gap exceeds the
    tolerance (vacuously for multiplicity 1), `unsplit` when all
    corrections fall in one cluster, `partially_split` otherwise.
    """
    if n != spec.n:
        raise ValueError(f"dimension argument {n} != potential dimension {spec.n}")
    basis = eigenspace(lambda0, n)
    matrix = assemble_first_order(spec, basis)
    if gap_tolerance is None:
        gap_tolerance = default_gap_tolerance(matrix.entries)
    elif gap_tolerance <= 0.0:
        raise ValueError(f"gap tolerance must be positive, got {gap_tolerance}")
    w, Q = symmetric_eigen(matrix.entries)
    m = len(w)
    if m == 1:
        min_gap = math.inf
    else:
        min_gap = float(np.diff(w).min())
    clusters = _cluster_indices(w, gap_tolerance)
    if all(len(c) == 1 for c in clusters):
        verdict = FULLY_SPLIT
    elif len(clusters) == 1:
        verdict = UNSPLIT
    else:
        verdict = PARTIALLY_SPLIT
    return SplittingReport(
        lambda0=lambda0,
        n=n,
        corrections=w,
        eigenvectors=Q,
        min_gap=min_gap,
        gap_tolerance=float(gap_tolerance),
        verdict=verdict,
        clusters=clusters,
        matrix=matrix,
    )


def default_resolvent_cutoff(lambda0: int) -> int:
    """Sup-norm box half-width for resolvent sums: max(3 sqrt(lambda0), 8)."""
    return max(math.ceil(3.0 * math.sqrt(lambda0)), 8)


def _resolvent_data(spec, lambda0, n, branches, cutoff):
    """Shared box sums: coefficients c_i(m) and denominators lambda0 - |m|^2."""
    basis = eigenspace(lambda0, n)
    m = basis.multiplicity
    B = np.asarray(branches, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    if B.ndim != 2 or B.shape[0] != m:
        raise ValueError(
            f"branch array must have {m} rows (one per basis frequency), got {B.shape}"
        )
    gram = B.T @ B
    if np.abs(gram - np.eye(B.shape[1])).max() > 1e-10:
        raise ValueError("branch vectors must be orthonormal")

    if cutoff is None:
        cutoff = default_resolvent_cutoff(lambda0)
    if not isinstance(cutoff, int) or cutoff < 1:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff!r}")
    if cutoff < math.sqrt(lambda0) + 1.0:
        raise ValueError(
            f"cutoff {cutoff} too small: must be at least sqrt(lambda0) + 1"
        )
    n_points = (2 * cutoff + 1) ** n
    if n_points > MAX_BOX_POINTS:
        raise ResourceLimitError(
            f"resolvent box has {n_points} points (limit {MAX_BOX_POINTS}); "
            "reduce the cutoff or the dimension"
        )

    points = np.array(lattice_box(n, cutoff), dtype=np.int64)
    sq = (points * points).sum(axis=1)
    outside = sq != lambda0
    points = points[outside]
    denom = lambda0 - sq[outside].astype(float)

    K = np.array(basis.frequencies, dtype=np.int64)
    W = np.zeros((points.shape[0], m))
    for j, a in enumerate(spec.alpha):
        d = points[:, j, None] - K[None, :, j]
        W += a * (d * d)
    coeff = np.exp(-W)
    # c_i(m) = sum_v branch[v, i] * c(m - k_v); t = 0 never occurs here
    # because every box point has |m|^2 != lambda0.
    C = coeff @ B
    return basis, B, C, denom, cutoff


def _tail_estimate(spec, lambda0, n, basis, cutoff):
    alpha_min = min(spec.alpha)
    max_inf = max(max(abs(c) for c in k) for k in basis.frequencies)
    s = max(0, cutoff + 1 - max_inf)
    gap = max(1.0, (cutoff + 1) ** 2 - lambda0)
    return 4.0 * n * (2 * cutoff + 3) ** (n - 1) * math.exp(-2.0 * alpha_min * s * s) / gap


@dataclass(frozen=True)
class SecondOrderCorrections:
    """Second-order eigenvalue corrections for a set of split branches."""

    lambda0: int
    values: np.ndarray
    cutoff: int
    tail_estimate: float
    first_order: np.ndarray


def second_order_corrections(
    spec: PotentialSpec,
    lambda0: int,
    n: int,
    branches,
    cutoff: int | None = None,
    gap_tolerance: float | None = None,
) -> SecondOrderCorrections:
    """Resolvent-sum second-order corrections for the given branches.

    `branches` holds orthonormal secular eigenvectors as columns.  The
    sum runs over lattice modes with |m|^2 != lambda0 inside the
    sup-norm box of half-width `cutoff` (default max(3 sqrt(lambda0), 8)).
    Branches whose first-order corrections collide within the gap
    tolerance are rejected: the formula needs distinct first-order
    values.  `tail_estimate` is a rough upper bound on the discarded
    mass; it is meaningless for formal specs.
    """
    basis, B, C, denom, cutoff = _resolvent_data(spec, lambda0, n, branches, cutoff)
    matrix = assemble_first_order(spec, basis)
    if gap_tolerance is None:
        gap_tolerance = default_gap_tolerance(matrix.entries)
    mu = np.einsum("vi,vw,wi->i", B, matrix.entries, B)
    resid = np.abs(matrix.entries @ B - B * mu).max()
    if resid > 1e-8 * max(1.0, np.abs(matrix.entries).max()):
        raise ValueError(
            "branch vectors are not secular-matrix eigenvectors "
            f"(residual {resid:.3e})"
        )
    order = np.argsort(mu, kind="stable")
    for a, b in zip(order[:-1], order[1:]):
        if mu[b] - mu[a] <= gap_tolerance:
            raise DegenerateBranchError(
                f"branches {int(a)} and {int(b)} have first-order corrections "
                f"{mu[a]!r} and {mu[b]!r} within tolerance {gap_tolerance!r}"
            )
    values = ((C * C) / denom[:, None]).sum(axis=0)
    return SecondOrderCorrections(
        lambda0=lambda0,
        values=values,
        cutoff=cutoff,
        tail_estimate=_tail_estimate(spec, lambda0, n, basis, cutoff),
        first_order=mu,
    )


def eigenvector_correction_coefficients(
    spec: PotentialSpec,
    lambda0: int,
    n: int,
    report: SplittingReport,
    cutoff: int | None = None,
) -> np.ndarray:
    """First-order mixing of split branches inside the eigenspace.

    Returns the matrix beta with beta[i, j] the coefficient of branch j
    in the first-order correction of branch i: the inter-branch
    coupling through the out-of-eigenspace resolvent divided by the
    first-order gap, and an exactly zero diagonal (normalization).
    Requires a fully split report.
    """
    if report.verdict != FULLY_SPLIT:
        worst = max(report.clusters, key=len)
        raise DegenerateBranchError(
            f"corrections are not fully split (verdict {report.verdict}; "
            f"cluster {worst} collides); branch mixing is undefined"
        )
    basis, B, C, denom, cutoff = _resolvent_data(
        spec, lambda0, n, report.eigenvectors, cutoff
    )
    mu = report.corrections
    coupling = C.T @ (C / denom[:, None])
    m = len(mu)
    beta = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if i != j:
                beta[i, j] = coupling[j, i] / (mu[i] - mu[j])
    return beta
