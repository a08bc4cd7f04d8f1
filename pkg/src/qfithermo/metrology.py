"""Quantum Fisher information, ensemble-averaged states, and heat bounds.

For a pure probe evolved by exp(-i lambda h t), the QFI is
F_Q = 4 t^2 Var(h). The operator seminorm (spectral spread) normalizes
every bound: rescaling (h, t) -> (h/s, t*s) with s = seminorm(h) leaves
F_Q and all derived quantities invariant. Entropies are in nats, heats in
energy units with k_B = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Optional

import numpy as np

from .linalg import (
    Eigh,
    as_prob_vector,
    dagger,
    herm_eig,
    ket,
    require_density,
    require_hermitian,
    shannon,
    vn_entropy,
)

LOG2 = math.log(2.0)

# relative gap below which eigenvalues share a dephasing projector
DEGENERACY_RTOL = 1e-9

UNITARY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Generator:
    """A Hermitian generator h with its interrogation time t.

    The eigendecomposition is computed lazily and cached; instances are
    immutable and safe to share across threads.
    """

    h: np.ndarray
    t: float

    def __post_init__(self):
        h = require_hermitian(self.h, name="generator").copy()
        h.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "t", float(self.t))
        if self.t <= 0.0:
            raise ValueError("interrogation time must be positive")

    @cached_property
    def eigs(self) -> Eigh:
        return herm_eig(self.h)

    @cached_property
    def seminorm(self) -> float:
        w = self.eigs.values
        return float(w[-1] - w[0])

    def normalized(self) -> "Generator":
        """Equivalent generator with unit seminorm: (h/s, t*s)."""
        s = self.seminorm
        if s <= 0.0:
            raise ValueError("generator proportional to identity has zero seminorm")
        return Generator(self.h / s, self.t * s)


def seminorm(a: np.ndarray) -> float:
    """Operator seminorm: spectral spread max eig - min eig."""
    w = herm_eig(a).values
    return float(w[-1] - w[0])


def qfi_pure(psi, gen: Generator) -> float:
    """QFI of a pure state under exp(-i lambda h t): 4 t^2 (<h^2> - <h>^2)."""
    v = ket(psi)
    if v.shape[0] != gen.h.shape[0]:
        raise ValueError(f"state dimension {v.shape[0]} does not match generator {gen.h.shape[0]}")
    hv = gen.h @ v
    mean = float(np.vdot(v, hv).real)
    second = float(np.vdot(hv, hv).real)
    return 4.0 * gen.t * gen.t * (second - mean * mean)


def local_generator_fd(unitary_of: Callable[[float], np.ndarray], lam0: float, eps: float) -> np.ndarray:
    """Local generator i U(l)^dag dU/dl at lam0 by a central difference.

    Second-order accurate in eps; the result is Hermitian-symmetrized.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    u0 = _require_unitary(np.asarray(unitary_of(lam0), dtype=complex), "U(lam0)")
    up = _require_unitary(np.asarray(unitary_of(lam0 + eps), dtype=complex), "U(lam0 + eps)")
    um = _require_unitary(np.asarray(unitary_of(lam0 - eps), dtype=complex), "U(lam0 - eps)")
    h = 1j * dagger(u0) @ ((up - um) / (2.0 * eps))
    return (h + dagger(h)) / 2.0


def _require_unitary(u: np.ndarray, name: str) -> np.ndarray:
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"{name} must be square")
    dev = float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))))
    if dev > UNITARY_TOL:
        raise ValueError(f"{name} is not unitary: max |U^dag U - I| = {dev:.3e}")
    return u


def _eigen_groups(values: np.ndarray) -> np.ndarray:
    """Group indices of near-degenerate eigenvalues (ascending input)."""
    spread = float(values[-1] - values[0]) if values.size else 0.0
    thr = DEGENERACY_RTOL * spread
    gid = np.zeros(values.size, dtype=int)
    for i in range(1, values.size):
        gid[i] = gid[i - 1] + (1 if values[i] - values[i - 1] > thr else 0)
    return gid


def ensemble_dephase(rho: np.ndarray, gen: Generator) -> np.ndarray:
    """Average over all encoded phases: dephase rho in the eigenspaces of h.

    Equals sum_P P rho P over the eigenprojectors of the generator and is
    idempotent. This is the parameter-averaged state of the ensemble
    {exp(-i lambda h t) rho exp(+i lambda h t)} under a uniform phase.
    """
    rho = require_density(rho)
    if rho.shape[0] != gen.h.shape[0]:
        raise ValueError("density matrix dimension does not match generator")
    w, v = gen.eigs
    gid = _eigen_groups(w)
    b = dagger(v) @ rho @ v
    mask = gid[:, None] == gid[None, :]
    return v @ (b * mask) @ dagger(v)


def ensemble_grid_average(psi, gen: Generator, samples: int) -> np.ndarray:
    """Average of |psi_j><psi_j| over the uniform phase grid lambda_j t = 2 pi j / M.

    Requires an integer-spaced spectrum of h; matches ensemble_dephase
    exactly once M exceeds the eigenvalue spread.
    """
    m = int(samples)
    if m < 1:
        raise ValueError("samples must be >= 1")
    v0 = ket(psi)
    if v0.shape[0] != gen.h.shape[0]:
        raise ValueError("state dimension does not match generator")
    w, vecs = gen.eigs
    rel = w - w[0]
    spread = float(rel[-1]) if rel.size else 0.0
    if np.max(np.abs(rel - np.round(rel))) > 1e-9 * max(1.0, spread):
        raise ValueError("generator spectrum is not integer spaced; rescale h or use ensemble_dephase")
    c = dagger(vecs) @ v0
    rho = np.zeros((v0.size, v0.size), dtype=complex)
    for j in range(m):
        cj = np.exp(-1j * (2.0 * math.pi * j / m) * w) * c
        vj = vecs @ cj
        rho += np.outer(vj, vj.conj())
    return rho / m


def measurement_record_entropy(rho_s: np.ndarray, basis: np.ndarray) -> float:
    """Shannon entropy of the outcome record when rho_s is read in a basis.

    basis holds the measurement kets as orthonormal columns. Never less
    than the von Neumann entropy of rho_s.
    """
    rho_s = require_density(rho_s)
    basis = _require_unitary(np.asarray(basis, dtype=complex), "basis")
    if basis.shape[0] != rho_s.shape[0]:
        raise ValueError("basis dimension does not match state")
    probs = np.real(np.diag(dagger(basis) @ rho_s @ basis))
    return shannon(np.clip(probs, 0.0, None))


def fq_pairwise(p, levels, t: float) -> dict[tuple[int, int], float]:
    """Per-pair QFI contributions F^{ab} = 4 t^2 p_a p_b (a - b)^2.

    Keys are index pairs (i, j) with i < j; the values sum to the total
    QFI of the corresponding diagonal-coefficient pure state.
    """
    p = as_prob_vector(p)
    a = _levels(p, levels)
    t = float(t)
    out: dict[tuple[int, int], float] = {}
    for i in range(p.size):
        for j in range(i + 1, p.size):
            out[(i, j)] = 4.0 * t * t * p[i] * p[j] * (a[i] - a[j]) ** 2
    return out


def fq_pairwise_total(p, levels, t: float) -> float:
    """Sum of all pairwise QFI contributions, vectorized for large spectra."""
    p = as_prob_vector(p)
    a = _levels(p, levels)
    diff2 = (a[:, None] - a[None, :]) ** 2
    return float(4.0 * t * t * 0.5 * (p @ diff2 @ p))


def weighted_fq(p, levels) -> float:
    """Entropy-weighted QFI sum: sum_{a<b} 2 p_a p_b log(2 / (p_a + p_b)).

    Degenerate level pairs carry no QFI and contribute nothing. For a
    nondegenerate spectrum the value never exceeds shannon(p).
    """
    p = as_prob_vector(p)
    a = _levels(p, levels)
    spread = float(a.max() - a.min())
    thr = DEGENERACY_RTOL * spread
    pi = p[:, None]
    pj = p[None, :]
    gap = np.abs(a[:, None] - a[None, :])
    mask = np.triu(np.ones((p.size, p.size), dtype=bool), 1) & (gap > thr) & (pi * pj > 0.0)
    if not mask.any():
        return 0.0
    psum = np.where(mask, pi + pj, 1.0)
    terms = np.where(mask, 2.0 * pi * pj * (LOG2 - np.log(psum)), 0.0)
    return float(terms.sum())


def _levels(p: np.ndarray, levels) -> np.ndarray:
    a = np.asarray(levels, dtype=float).reshape(-1)
    if a.size != p.size:
        raise ValueError(f"{a.size} levels for {p.size} probabilities")
    return a


def heat_bound(fq: float, generator_seminorm: float, kbt: float) -> float:
    """Heat floor for extracting the parameter: log(2) kbt fq / seminorm^2.

    For a pure probe this never exceeds log(2) kbt, since
    4 Var(h) <= seminorm(h)^2.
    """
    fq = _nonnegative_fq(fq)
    if generator_seminorm <= 0.0:
        raise ValueError("generator seminorm must be positive")
    if kbt < 0.0:
        raise ValueError("kbt must be nonnegative")
    return LOG2 * kbt * fq / (generator_seminorm * generator_seminorm)


def avg_heat_bound(fq: float, t: float, kbt: float) -> float:
    """Phase-averaged heat floor log(2) kbt fq / t^2 (unit-seminorm convention)."""
    fq = _nonnegative_fq(fq)
    if t <= 0.0:
        raise ValueError("interrogation time must be positive")
    if kbt < 0.0:
        raise ValueError("kbt must be nonnegative")
    return LOG2 * kbt * fq / (t * t)


class ErasureBound(NamedTuple):
    heat_floor: float
    deficit: float


def erasure_bound(fq: float, t: float, kbt: float, entropy_final: float) -> ErasureBound:
    """Minimum admissible heat when erasing QFI into a state of given entropy.

    heat_floor = kbt * deficit with deficit = log(2) fq / t^2 - entropy_final.
    A negative floor means the entropy increase alone pays for the erasure.
    """
    fq = _nonnegative_fq(fq)
    if t <= 0.0:
        raise ValueError("interrogation time must be positive")
    if kbt < 0.0:
        raise ValueError("kbt must be nonnegative")
    if entropy_final < 0.0:
        raise ValueError("entropy_final must be nonnegative")
    deficit = LOG2 * fq / (t * t) - entropy_final
    return ErasureBound(kbt * deficit, deficit)


def corrected_bound(deficit: float, kbt: float,
                    hook: Optional[Callable[[float, float], float]] = None) -> float:
    """Erasure heat floor with an optional low-temperature correction hook.

    The default is the plain linear form kbt * deficit. A supplied hook is
    called as hook(deficit, kbt) and must dominate the default.
    """
    if kbt < 0.0:
        raise ValueError("kbt must be nonnegative")
    default = kbt * deficit
    if hook is None:
        return default
    value = float(hook(deficit, kbt))
    if value < default - 1e-12 * max(1.0, abs(default)):
        raise ValueError(f"correction hook returned {value!r} below the uncorrected floor {default!r}")
    return value


def precision_floor(t: float, kbt: float, heat: float) -> float:
    """Best attainable (delta lambda)^2 given interrogation time and heat budget."""
    if t <= 0.0:
        raise ValueError("interrogation time must be positive")
    if heat <= 0.0:
        raise ValueError("heat must be positive")
    return LOG2 * kbt / (t * t * heat)


def crb(fq: float) -> float:
    """Quantum Cramer-Rao floor on the estimator variance: 1 / fq."""
    if fq <= 0.0:
        raise ValueError("QFI must be positive")
    return 1.0 / fq


def _nonnegative_fq(fq: float) -> float:
    fq = float(fq)
    if fq < -1e-12:
        raise ValueError(f"QFI must be nonnegative, got {fq!r}")
    return max(fq, 0.0)


@dataclass(frozen=True)
class BoundReport:
    """Entropy and heat floors of one probe state under one generator.

    entropy_floor is log(2) fq / t^2 in the unit-seminorm convention;
    heat_floor = kbt * (entropy_floor - entropy_final). Entropies in nats,
    heats in energy units.
    """

    fq: float
    entropy_avg_state: float
    entropy_final: float
    entropy_floor: float
    heat_floor: float
    kbt: float


def entropy_heat_report(psi, gen: Generator, kbt: float = 1.0,
                        entropy_final: float = 0.0) -> BoundReport:
    """QFI, phase-averaged entropy, and the heat floor for one pure probe.

    The generator is rescaled to unit seminorm internally, which leaves the
    QFI invariant. Raises if the entropy of the averaged state falls below
    its QFI floor, which a correct computation cannot produce.
    """
    if entropy_final < 0.0:
        raise ValueError("entropy_final must be nonnegative")
    v = ket(psi)
    norm = gen.normalized()
    fq = qfi_pure(v, norm)
    entropy_floor = LOG2 * fq / (norm.t * norm.t)
    s_avg = vn_entropy(ensemble_dephase(np.outer(v, v.conj()), norm))
    if s_avg < entropy_floor - 1e-10:
        raise RuntimeError(
            f"averaged-state entropy {s_avg!r} fell below its QFI floor {entropy_floor!r}")
    heat_floor = kbt * (entropy_floor - entropy_final)
    return BoundReport(
        fq=fq,
        entropy_avg_state=s_avg,
        entropy_final=float(entropy_final),
        entropy_floor=entropy_floor,
        heat_floor=heat_floor,
        kbt=float(kbt),
    )
