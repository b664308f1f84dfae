"""Finite-dimensional operator algebra for measurement statistics.

States are density operators, observables are Hermitian matrices, and
outcome statistics come from spectral measures via the Born rule.
Composite spaces are ordered system-first: an operator X on the system
and Y on the probe combine as kron(X, Y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ValidationError(ValueError):
    """An operator, state, or parameter violates a structural invariant."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared across the library.

    eq_tol bounds equality checks (Hermiticity residuals, trace defects,
    eigenvalue clustering). psd_tol is the floor for eigenvalues of
    nominally positive matrices; it is zero or slightly negative.
    """

    eq_tol: float = 1e-9
    psd_tol: float = -1e-10

    def __post_init__(self):
        if not self.eq_tol > 0:
            raise ValidationError("eq_tol must be positive")
        if not self.psd_tol <= 0:
            raise ValidationError("psd_tol must be <= 0")


@dataclass(frozen=True)
class PhysicalConstants:
    """Runtime physical constants. hbar defaults to 1."""

    hbar: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValidationError("hbar must be positive")

    @property
    def h(self) -> float:
        return 2.0 * np.pi * self.hbar


DEFAULT_TOL = Tolerances()
DEFAULT_CONSTANTS = PhysicalConstants()


def as_operator(matrix) -> np.ndarray:
    """Coerce to a finite square complex ndarray (copied, read-only)."""
    arr = np.array(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"operator must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("operator entries must be finite")
    arr.setflags(write=False)
    return arr


def dagger(op: np.ndarray) -> np.ndarray:
    return op.conj().T


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def hermitian_part(op: np.ndarray) -> np.ndarray:
    return 0.5 * (op + dagger(op))


def is_hermitian(op, tol: Tolerances = DEFAULT_TOL) -> bool:
    op = np.asarray(op, dtype=complex)
    return float(np.abs(op - dagger(op)).max()) <= tol.eq_tol


def operator_distance(x, y) -> float:
    """Max-abs entrywise distance, the norm used for operator equality checks."""
    return float(np.abs(np.asarray(x) - np.asarray(y)).max())


class HermitianObservable:
    """A self-adjoint operator.

    The stored matrix is the exact Hermitian part of the input, frozen.
    Construction fails if the input deviates from Hermiticity by more
    than tol.eq_tol in max-abs norm.
    """

    def __init__(self, matrix, tol: Tolerances = DEFAULT_TOL):
        op = as_operator(matrix)
        if not is_hermitian(op, tol):
            raise ValidationError("observable must be Hermitian within eq_tol")
        sym = hermitian_part(op)
        sym.setflags(write=False)
        self.matrix = sym
        self.dim = sym.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"HermitianObservable(dim={self.dim})"


class DensityOperator:
    """A quantum state: Hermitian, unit trace, eigenvalues >= psd_tol."""

    def __init__(self, matrix, tol: Tolerances = DEFAULT_TOL):
        op = as_operator(matrix)
        if not is_hermitian(op, tol):
            raise ValidationError("density operator must be Hermitian within eq_tol")
        if abs(np.trace(op).real - 1.0) > tol.eq_tol or abs(np.trace(op).imag) > tol.eq_tol:
            raise ValidationError(f"density operator must have unit trace, got {np.trace(op)}")
        sym = hermitian_part(op)
        lo = float(np.linalg.eigvalsh(sym).min())
        if lo < tol.psd_tol:
            raise ValidationError(f"density operator has negative eigenvalue {lo}")
        sym.setflags(write=False)
        self.matrix = sym
        self.dim = sym.shape[0]

    @classmethod
    def pure(cls, vector, tol: Tolerances = DEFAULT_TOL) -> "DensityOperator":
        """Rank-one state |v><v| from a (not necessarily normalized) vector."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(v)
        if nrm <= tol.eq_tol:
            raise ValidationError("cannot normalize a (near-)zero vector")
        v = v / nrm
        return cls(np.outer(v, v.conj()), tol=tol)

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        return cls(np.eye(dim) / dim)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, (HermitianObservable, DensityOperator)):
        return x.matrix
    return np.asarray(x, dtype=complex)


def _as_observable_matrix(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Matrix of an observable argument; validates Hermiticity for raw arrays."""
    if isinstance(a, HermitianObservable):
        return a.matrix
    op = as_operator(a)
    if not is_hermitian(op, tol):
        raise ValidationError("observable must be Hermitian within eq_tol")
    return hermitian_part(op)


def _as_state_matrix(rho, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Matrix of a state argument. Raw arrays get the cheap checks only;
    full positivity validation lives in DensityOperator."""
    if isinstance(rho, DensityOperator):
        return rho.matrix
    op = as_operator(rho)
    if not is_hermitian(op, tol):
        raise ValidationError("state must be Hermitian within eq_tol")
    if abs(np.trace(op).real - 1.0) > tol.eq_tol:
        raise ValidationError("state must have unit trace")
    return hermitian_part(op)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending) with orthogonal spectral projectors.

    sum(projectors) = identity and sum(a_i * P_i) reconstructs the operator.
    """

    eigenvalues: np.ndarray
    projectors: tuple

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        for p in self.projectors:
            p.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def reconstruct(self) -> np.ndarray:
        out = np.zeros_like(self.projectors[0])
        for a, p in zip(self.eigenvalues, self.projectors):
            out = out + a * p
        return out


def spectral_decompose(a, tol: Tolerances = DEFAULT_TOL) -> SpectralDecomposition:
    """Spectral decomposition with eigenvalue clustering.

    Eigenvalues closer than tol.eq_tol (consecutively, after sorting) are
    merged into a single spectral value whose projector spans the combined
    eigenspace and whose value is the weighted mean of the cluster.
    """
    mat = _as_observable_matrix(a, tol)
    w, v = np.linalg.eigh(mat)
    values = []
    projectors = []
    start = 0
    n = len(w)
    for i in range(1, n + 1):
        if i == n or w[i] - w[i - 1] > tol.eq_tol:
            block = v[:, start:i]
            proj = block @ dagger(block)
            values.append(float(np.mean(w[start:i])))
            projectors.append(hermitian_part(proj))
            start = i
    dec = SpectralDecomposition(np.array(values), tuple(projectors))
    if operator_distance(dec.reconstruct(), mat) > max(1e-12, 1e3 * tol.eq_tol) * max(1.0, float(np.abs(w).max())):
        raise ValidationError("spectral reconstruction failed")
    return dec


def expectation(x, rho) -> complex:
    """Tr[X rho]. Complex in general; real within eq_tol for Hermitian X."""
    xm = _as_matrix(x)
    rm = _as_matrix(rho)
    if xm.shape != rm.shape:
        raise ValidationError(f"dimension mismatch: {xm.shape} vs {rm.shape}")
    return complex(np.trace(xm @ rm))


def std_dev(a, rho, tol: Tolerances = DEFAULT_TOL) -> float:
    """Standard deviation sqrt(<A^2> - <A>^2) of an observable in a state."""
    am = _as_observable_matrix(a, tol)
    rm = _as_state_matrix(rho, tol)
    mean = expectation(am, rm).real
    second = expectation(am @ am, rm).real
    return float(np.sqrt(max(second - mean * mean, 0.0)))


def robertson_bound(a, b, rho, tol: Tolerances = DEFAULT_TOL) -> float:
    """Lower bound (1/2)|Tr[[A,B] rho]| appearing in the uncertainty relations."""
    am = _as_observable_matrix(a, tol)
    bm = _as_observable_matrix(b, tol)
    rm = _as_state_matrix(rho, tol)
    return 0.5 * abs(expectation(commutator(am, bm), rm))


def tensor(x, y) -> np.ndarray:
    """Kronecker product, system factor first."""
    return np.kron(_as_matrix(x), _as_matrix(y))


def partial_trace(z, dims, keep: str = "first") -> np.ndarray:
    """Partial trace of an operator on a bipartite space.

    Parameters
    ----------
    z : array_like, shape (d1*d2, d1*d2)
    dims : (d1, d2) factor dimensions, system first
    keep : "first" traces out the second factor, "second" the first
    """
    d1, d2 = int(dims[0]), int(dims[1])
    zm = _as_matrix(z)
    if zm.shape != (d1 * d2, d1 * d2):
        raise ValidationError(f"operator shape {zm.shape} does not match dims {dims}")
    t = zm.reshape(d1, d2, d1, d2)
    if keep == "first":
        return np.einsum("ijkj->ik", t)
    if keep == "second":
        return np.einsum("ijil->jl", t)
    raise ValidationError(f"keep must be 'first' or 'second', got {keep!r}")
