"""Constructors for spin, Fock and symmetric-sector objects.

The symmetric N-qubit sector is represented in the Dicke basis
{|k excitations>, k = 0..N}, dimension N + 1; full 2^N spaces are never
materialized. Collective spin operators follow the m = k - N/2 ascending
ordering, so Jz = diag(-N/2, ..., N/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import ket, unitary_from

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

FAMILY_KINDS = ("product", "squeezed", "twin_fock", "ghz_like")

# twin-Fock distributions are expensive at large N (dense rotation); cache per N
_TWIN_CACHE: dict[int, np.ndarray] = {}


@dataclass(frozen=True)
class DickeFamily:
    """A named symmetric-state family producing level distributions {p_k}.

    gamma is the width exponent of the squeezed profile (sigma = N**gamma / 2),
    nu the edge-lump width of the ghz_like profile.
    """

    kind: str
    gamma: float = 0.95
    nu: float = 2.0

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}, expected one of {FAMILY_KINDS}")


def spin_ops(n_qubits: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collective (Jx, Jy, Jz) in the Dicke basis of N qubits, J = N/2."""
    n = int(n_qubits)
    if n < 1:
        raise ValueError("need at least one qubit")
    j = n / 2.0
    m = np.arange(n + 1) - j
    jp = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(n):
        jp[i + 1, i] = math.sqrt((j - m[i]) * (j + m[i] + 1.0))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    jz = np.diag(m).astype(complex)
    return jx, jy, jz


def dicke_state(coefficients) -> np.ndarray:
    """Normalized ket in the symmetric sector from Dicke-level coefficients."""
    return ket(coefficients)


def _product_distribution(n: int) -> np.ndarray:
    # binomial in log space; C(1024, 512) alone would overflow float64
    logs = [
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) - n * math.log(2.0)
        for k in range(n + 1)
    ]
    return np.exp(logs)


def _squeezed_distribution(n: int, gamma: float) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    sigma = n ** gamma / 2.0
    return np.exp(-((k - n / 2.0) ** 2) / (2.0 * sigma * sigma))


def _twin_fock_distribution(n: int) -> np.ndarray:
    if n % 2 != 0:
        raise ValueError(f"twin_fock needs even N, got {n}")
    cached = _TWIN_CACHE.get(n)
    if cached is None:
        _, jy, _ = spin_ops(n)
        u = unitary_from(jy, math.pi / 2.0)
        p = np.abs(u[:, n // 2]) ** 2
        cached = p / p.sum()
        cached.setflags(write=False)
        _TWIN_CACHE[n] = cached
    return cached.copy()


def _ghz_like_distribution(n: int, nu: float) -> np.ndarray:
    if nu <= 0.0:
        raise ValueError(f"ghz_like width nu must be positive, got {nu}")
    k = np.arange(n + 1, dtype=float)
    return np.exp(-(k ** 2) / (2.0 * nu * nu)) + np.exp(-((n - k) ** 2) / (2.0 * nu * nu))


def family_distribution(family: DickeFamily, n_qubits: int) -> np.ndarray:
    """Dicke-level probability distribution {p_k} of a family at size N.

    Normalized to unit sum; symmetric under k <-> N-k for every kind.
    """
    n = int(n_qubits)
    if n < 1:
        raise ValueError("need at least one qubit")
    if family.kind == "product":
        p = _product_distribution(n)
    elif family.kind == "squeezed":
        p = _squeezed_distribution(n, family.gamma)
    elif family.kind == "twin_fock":
        return _twin_fock_distribution(n)
    else:
        p = _ghz_like_distribution(n, family.nu)
    return p / p.sum()


def thermal_state(omega: float, temperature: float, nmax: int) -> np.ndarray:
    """Thermal density matrix of a truncated bosonic mode (k_B = hbar = 1)."""
    if omega <= 0.0:
        raise ValueError("mode frequency must be positive")
    if temperature < 0.0:
        raise ValueError("temperature must be nonnegative")
    nmax = int(nmax)
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    n = np.arange(nmax + 1, dtype=float)
    if temperature == 0.0:
        w = np.zeros(nmax + 1)
        w[0] = 1.0
    else:
        w = np.exp(-n * omega / temperature)
        w = w / w.sum()
    return np.diag(w).astype(complex)


def fock_ops(nmax: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Truncated ladder operators (a, a_dag, n) on nmax + 1 levels.

    The commutator [a, a_dag] equals the identity except at the top Fock
    level, where truncation puts -nmax on the diagonal.
    """
    nmax = int(nmax)
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    a = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    for n in range(1, nmax + 1):
        a[n - 1, n] = math.sqrt(n)
    adag = a.conj().T
    return a, adag, adag @ a
