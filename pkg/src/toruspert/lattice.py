"""Spectrum and eigenspaces of the Laplacian on the flat n-torus.

The Fourier modes e^{i k.x} with k in Z^n diagonalize the (negative)
Laplacian with eigenvalue |k|^2 = k_1^2 + ... + k_n^2, so the spectrum
is the set of integers representable as a sum of n squares.  The
multiplicity of an eigenvalue counts signed, ordered integer vectors,
while `representations` lists the canonical unsigned nondecreasing
tuples; expanding a representation over coordinate permutations and
sign choices recovers the signed count.

Eigenspace bases are always listed in ascending lexicographic order of
the frequency vectors, which fixes row/column conventions everywhere
downstream.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyEigenspaceError

# Enumeration is exact integer arithmetic; the cap only bounds runtime.
MAX_DIMENSION = 8

LatticeVector = tuple[int, ...]


def squared_norm(v: LatticeVector) -> int:
    """Sum of squared entries of an integer vector."""
    return sum(c * c for c in v)


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"dimension must be an integer, got {n!r}")
    if not 1 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")


def _check_lambda(lambda0: int) -> None:
    if not isinstance(lambda0, int) or isinstance(lambda0, bool):
        raise ValueError(f"eigenvalue must be an integer, got {lambda0!r}")
    if lambda0 < 0:
        raise ValueError(f"eigenvalue must be non-negative, got {lambda0}")


@lru_cache(maxsize=None)
def _signed_count(rem: int, slots: int) -> int:
    if slots == 0:
        return 1 if rem == 0 else 0
    r = math.isqrt(rem)
    total = _signed_count(rem, slots - 1)
    total += 2 * sum(_signed_count(rem - a * a, slots - 1) for a in range(1, r + 1))
    return total


def multiplicity(lambda0: int, n: int) -> int:
    """Number of k in Z^n with |k|^2 = lambda0 (signed, ordered count).

    Returns 0 when lambda0 is not a sum of n squares; multiplicity(0, n)
    is 1 for every n.
    """
    _check_lambda(lambda0)
    _check_dimension(n)
    return _signed_count(lambda0, n)


def _representations(rem: int, slots: int, lo: int) -> list[LatticeVector]:
    if slots == 0:
        return [()] if rem == 0 else []
    out = []
    a = lo
    while slots * a * a <= rem:
        for tail in _representations(rem - a * a, slots - 1, a):
            out.append((a,) + tail)
        a += 1
    return out


def representations(lambda0: int, n: int) -> list[LatticeVector]:
    """Canonical representations of lambda0 as a sum of n squares.

    Each representation is a nondecreasing tuple of non-negative
    integers (a_1 <= ... <= a_n) with sum a_j^2 = lambda0; the list is
    sorted lexicographically.  Empty when lambda0 is not representable.
    """
    _check_lambda(lambda0)
    _check_dimension(n)
    return _representations(lambda0, n, 0)


def _signed_vectors(rem: int, slots: int) -> list[LatticeVector]:
    if slots == 0:
        return [()] if rem == 0 else []
    out = []
    r = math.isqrt(rem)
    for a in range(-r, r + 1):
        for tail in _signed_vectors(rem - a * a, slots - 1):
            out.append((a,) + tail)
    return out


@dataclass(frozen=True)
class EigenspaceBasis:
    """Ordered Fourier basis of one Laplacian eigenspace.

    `frequencies` holds every k in Z^n with |k|^2 = lambda0.  The
    canonical constructor (`eigenspace`) lists them in ascending
    lexicographic order; the invariants checked here (correct norms, no
    duplicates, closure under negation) hold for any ordering, which
    tests exploit to permute bases.
    """

    lambda0: int
    n: int
    frequencies: tuple[LatticeVector, ...]

    def __post_init__(self):
        seen = set(self.frequencies)
        if len(seen) != len(self.frequencies):
            raise ValueError("duplicate frequency in eigenspace basis")
        for k in self.frequencies:
            if len(k) != self.n:
                raise ValueError(f"frequency {k} has wrong dimension (expected {self.n})")
            if squared_norm(k) != self.lambda0:
                raise ValueError(f"frequency {k} has |k|^2 != {self.lambda0}")
            if tuple(-c for c in k) not in seen:
                raise ValueError(f"basis not closed under negation: missing -{k}")

    @property
    def multiplicity(self) -> int:
        return len(self.frequencies)

    def index_of(self, k: LatticeVector) -> int:
        return self.frequencies.index(tuple(k))


def eigenspace(lambda0: int, n: int) -> EigenspaceBasis:
    """Eigenspace basis for eigenvalue lambda0 in dimension n.

    Frequencies come out in ascending lexicographic order.  Raises
    EmptyEigenspaceError when lambda0 is not a sum of n squares.
    """
    _check_lambda(lambda0)
    _check_dimension(n)
    vectors = _signed_vectors(lambda0, n)
    if not vectors:
        raise EmptyEigenspaceError(
            f"{lambda0} is not a sum of {n} squares; the eigenspace is empty"
        )
    return EigenspaceBasis(lambda0=lambda0, n=n, frequencies=tuple(vectors))


def lattice_box(n: int, radius: int) -> list[LatticeVector]:
    """All k in Z^n with max_j |k_j| <= radius, in ascending lex order."""
    _check_dimension(n)
    if not isinstance(radius, int) or radius < 0:
        raise ValueError(f"radius must be a non-negative integer, got {radius!r}")
    side = range(-radius, radius + 1)
    return list(itertools.product(side, repeat=n))


def spectrum_up_to(lambda_max: int, n: int) -> list[tuple[int, int]]:
    """Ascending list of (eigenvalue, multiplicity) pairs up to lambda_max."""
    _check_lambda(lambda_max)
    _check_dimension(n)
    out = []
    for lam in range(lambda_max + 1):
        m = _signed_count(lam, n)
        if m > 0:
            out.append((lam, m))
    return out
