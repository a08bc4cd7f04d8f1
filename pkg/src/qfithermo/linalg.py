"""Dense complex linear algebra for small Hilbert spaces.

Plain numpy throughout: Hermitian eigendecomposition, unitaries of
Hermitian generators, partial trace, entropies (natural log, nats) and
trace distance. States and operators are ordinary complex ndarrays;
density matrices are validated on entry instead of being wrapped in
classes.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-10
DENSITY_EIG_FLOOR = -1e-10
STATE_NORM_TOL = 1e-10
ENTROPY_CLAMP = 1e-14


class Eigh(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    values are ascending; vectors holds the orthonormal eigenvectors as
    columns, so a = vectors @ diag(values) @ vectors.conj().T.
    """

    values: np.ndarray
    vectors: np.ndarray


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def kron(*ops: np.ndarray) -> np.ndarray:
    """Tensor product of one or more operators, leftmost factor first."""
    if not ops:
        raise ValueError("kron needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def apply(op: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Matrix-vector product with a shape check."""
    op = np.asarray(op, dtype=complex)
    vec = np.asarray(vec, dtype=complex)
    if op.ndim != 2 or op.shape[1] != vec.shape[0]:
        raise ValueError(f"operator {op.shape} cannot act on vector of length {vec.shape}")
    return op @ vec


def ket(amplitudes: Sequence[complex], tol: float = STATE_NORM_TOL) -> np.ndarray:
    """Normalized state vector.

    The input must already be normalized within tol; the returned copy is
    renormalized so its squared norm is 1 to machine precision.
    """
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.size == 0:
        raise ValueError("empty state vector")
    norm2 = float(np.vdot(v, v).real)
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"state vector norm^2 = {norm2!r} is not 1 within {tol}")
    return v / math.sqrt(norm2)


def _square(a: np.ndarray, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def require_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    """Validate Hermiticity within tol and return the matrix as complex ndarray."""
    a = _square(a, name)
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > tol:
        raise ValueError(f"{name} is not Hermitian: max |a_ij - conj(a_ji)| = {dev:.3e} > {tol}")
    return a


def density_eigvalsh(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    """Validate a density matrix and return its eigenvalues (ascending).

    Checks Hermiticity, unit trace within 1e-10 and spectrum above -1e-10.
    """
    rho = require_hermitian(rho, name=name)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise ValueError(f"{name} has trace {tr!r}, not 1 within {DENSITY_TRACE_TOL}")
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    if w[0] < DENSITY_EIG_FLOOR:
        raise ValueError(f"{name} has negative eigenvalue {w[0]:.3e}")
    return w


def require_density(rho: np.ndarray, name: str = "rho") -> np.ndarray:
    density_eigvalsh(rho, name=name)
    return np.asarray(rho, dtype=complex)


def herm_eig(a: np.ndarray) -> Eigh:
    """Eigendecomposition of a Hermitian matrix.

    Backed by LAPACK through numpy.linalg.eigh on the explicitly
    symmetrized input. Eigenvalues come out ascending; output is
    deterministic for identical input.
    """
    a = require_hermitian(a)
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return Eigh(values=w, vectors=v)


def unitary_from(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h, via eigendecomposition."""
    w, v = herm_eig(h)
    return (v * np.exp(-1j * w * float(t))) @ v.conj().T


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out all subsystems not listed in keep.

    dims lists the subsystem dimensions in tensor order; keep is a set of
    subsystem indices. Kept subsystems retain their relative order.
    """
    rho = require_density(rho)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError("subsystem dimensions must be >= 1")
    total = int(np.prod(dims))
    if rho.shape[0] != total:
        raise ValueError(f"dims {dims} do not match matrix dimension {rho.shape[0]}")
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep {keep} is not a nonempty subset of subsystem indices")

    nsub = len(dims)
    r = rho.reshape(dims + dims)
    traced = 0
    for ax in sorted(set(range(nsub)) - set(keep), reverse=True):
        cur = nsub - traced
        r = np.trace(r, axis1=ax, axis2=ax + cur)
        traced += 1
    d_keep = int(np.prod([dims[k] for k in keep]))
    return r.reshape(d_keep, d_keep)


def vn_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in nats.

    Eigenvalues are renormalized to unit sum and those below 1e-14 drop
    out, so round-off never produces a negative entropy.
    """
    w = density_eigvalsh(rho)
    w = w / w.sum()
    w = w[w > ENTROPY_CLAMP]
    return float(-(w * np.log(w)).sum())


def as_prob_vector(p: Sequence[float], name: str = "p") -> np.ndarray:
    """Validate a probability vector: entries >= -1e-12, sum within 1e-10 of 1."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0:
        raise ValueError(f"{name} is empty")
    if float(p.min()) < -1e-12:
        raise ValueError(f"{name} has negative entry {p.min()!r}")
    s = float(p.sum())
    if abs(s - 1.0) > 1e-10:
        raise ValueError(f"{name} sums to {s!r}, not 1 within 1e-10")
    return p


def shannon(p: Sequence[float]) -> float:
    """Shannon entropy in nats with the 0 log 0 = 0 convention."""
    p = as_prob_vector(p)
    p = p[p > 0.0]
    return float(-(p * np.log(p)).sum())


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the trace norm of rho - sigma; lies in [0, 1] for density inputs."""
    rho = require_density(rho, name="rho")
    sigma = require_density(sigma, name="sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    d = rho - sigma
    w = np.linalg.eigvalsh((d + d.conj().T) / 2.0)
    return 0.5 * float(np.abs(w).sum())
