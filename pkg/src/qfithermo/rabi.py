"""Erasure of a qubit probe's phase information into a thermal bosonic mode.

The probe carries an encoded phase in states c0|0> + c1 exp(-i phi)|1> and
interacts with a single truncated mode under the Rabi Hamiltonian

    H = (Omega/2) sz x I + omega I x n - g sx x (a + a_dag).

The qubit basis is ordered (|0>, |1>) with sz = diag(+1, -1), so |0> is the
upper level: larger |c0|^2 means more stored energy and more heat released
into the mode during erasure. Heat is the change of the bare mode energy
omega * tr(n d rho_mode); the interaction remainder is tracked explicitly
by the energy bookkeeping of each run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import herm_eig, kron, partial_trace, vn_entropy
from .metrology import LOG2
from .parallel import ordered_map
from .states import SIGMA_X, SIGMA_Z, fock_ops, thermal_state

TOP_FOCK_LIMIT = 1e-6
AUDIT_SLACK = 1e-9

# tie-break window when scanning for the best erasure time
SCAN_TIE_TOL = 1e-12


class TruncationError(RuntimeError):
    """Raised when population reaches the top Fock level beyond tolerance."""


@dataclass(frozen=True)
class RabiConfig:
    """Parameters of one erasure run (k_B = hbar = 1).

    c0 is the amplitude of |0> in the encoded qubit state; t_enc is the
    encoding time entering the QFI (it cancels from every reported
    quantity); tau is the erasure duration; m_lambda the size of the
    uniform encoded-phase grid.
    """

    omega_qubit: float = 1.0
    omega_mode: float = 1.0
    coupling: float = 0.05
    temperature: float = 0.3
    nmax: int = 20
    t_enc: float = 1.0
    c0: float = 1.0 / math.sqrt(2.0)
    m_lambda: int = 16
    tau: float = 30.8

    def __post_init__(self):
        if self.omega_qubit <= 0.0 or self.omega_mode <= 0.0:
            raise ValueError("frequencies must be positive")
        if self.coupling < 0.0:
            raise ValueError("coupling must be nonnegative")
        if self.temperature < 0.0:
            raise ValueError("temperature must be nonnegative")
        if int(self.nmax) < 10:
            raise ValueError("nmax must be >= 10")
        if not 0.0 <= self.c0 <= 1.0:
            raise ValueError("c0 must lie in [0, 1]")
        if int(self.m_lambda) < 2:
            raise ValueError("m_lambda must be >= 2")
        if self.t_enc <= 0.0:
            raise ValueError("encoding time must be positive")
        if self.tau < 0.0:
            raise ValueError("erasure duration must be nonnegative")


@dataclass(frozen=True)
class RabiRunRecord:
    """Outcome of one erasure run at a single encoded phase."""

    rho_s: np.ndarray
    rho_e: np.ndarray
    heat: float
    entropy_s: float
    energy_drift: float
    norm_error: float
    top_fock: float


@dataclass(frozen=True)
class RabiOutcome:
    """Phase-averaged outcome for one value of c0."""

    c0: float
    fq_over_t2: float
    heat_avg: float
    entropy_final_avg: float
    entropy_of_avg: float
    bound_floor: float
    erasure_quality: float


def build_hamiltonian(cfg: RabiConfig) -> np.ndarray:
    """Full qubit-mode Hamiltonian on dimension 2 (nmax + 1)."""
    a, adag, num = fock_ops(cfg.nmax)
    dim_m = cfg.nmax + 1
    return (
        (cfg.omega_qubit / 2.0) * kron(SIGMA_Z, np.eye(dim_m))
        + cfg.omega_mode * kron(np.eye(2), num)
        - cfg.coupling * kron(SIGMA_X, a + adag)
    )


class _System:
    """Prepared context shared by every run of one configuration."""

    def __init__(self, cfg: RabiConfig):
        self.cfg = cfg
        self.dim_m = cfg.nmax + 1
        self.h = build_hamiltonian(cfg)
        self.eig_vals, self.eig_vecs = herm_eig(self.h)
        rho_th = thermal_state(cfg.omega_mode, cfg.temperature, cfg.nmax)
        self.weights = np.real(np.diag(rho_th))
        self.nvec = np.arange(self.dim_m, dtype=float)

    def propagator(self, tau: float) -> np.ndarray:
        if tau == 0.0:
            return np.eye(2 * self.dim_m, dtype=complex)
        v = self.eig_vecs
        return (v * np.exp(-1j * self.eig_vals * tau)) @ v.conj().T

    def encoded_qubit(self, c0: float, phi: float) -> np.ndarray:
        c1 = math.sqrt(max(0.0, 1.0 - c0 * c0))
        return np.array([c0, c1 * np.exp(-1j * phi)], dtype=complex)

    def component_kets(self, c0: float, phi: float) -> np.ndarray:
        """Initial product kets (one per thermal Fock component), rows of (nmax+1, dim)."""
        qb = self.encoded_qubit(c0, phi)
        kets = np.zeros((self.dim_m, 2 * self.dim_m), dtype=complex)
        idx = np.arange(self.dim_m)
        kets[idx, idx] = qb[0]
        kets[idx, self.dim_m + idx] = qb[1]
        return kets

    def reduced_qubit_states(self, tau: float, c0: float, phis: np.ndarray) -> np.ndarray:
        """Final reduced qubit states, stacked (len(phis), 2, 2). Fast ket path."""
        u = self.propagator(tau)
        states = np.empty((len(phis), 2, 2), dtype=complex)
        for f, phi in enumerate(phis):
            kets = self.component_kets(c0, phi) @ u.T
            vm = kets.reshape(self.dim_m, 2, self.dim_m)
            states[f] = np.einsum("nam,nbm,n->ab", vm, vm.conj(), self.weights)
        return states

    def phase_grid(self) -> np.ndarray:
        m = self.cfg.m_lambda
        return 2.0 * math.pi * np.arange(m) / m


def _run_at(sys: _System, c0: float, phi: float) -> RabiRunRecord:
    cfg = sys.cfg
    dim_m = sys.dim_m
    kets0 = sys.component_kets(c0, phi)

    norm_error = 0.0
    top_fock = 0.0
    for frac in (0.0, 0.5, 1.0):
        u = sys.propagator(cfg.tau * frac) if frac else None
        kets = kets0 if u is None else kets0 @ u.T
        norms = np.real(np.einsum("ni,ni->n", kets, kets.conj()))
        norm_error = max(norm_error, float(np.max(np.abs(norms - 1.0))))
        vm = kets.reshape(dim_m, 2, dim_m)
        top = float(sys.weights @ np.sum(np.abs(vm[:, :, dim_m - 1]) ** 2, axis=1))
        top_fock = max(top_fock, top)
    if top_fock > TOP_FOCK_LIMIT:
        raise TruncationError(
            f"top Fock level holds population {top_fock:.3e} > {TOP_FOCK_LIMIT}; raise nmax")

    u = sys.propagator(cfg.tau)
    kets = kets0 @ u.T
    rho = np.einsum("ni,nj,n->ij", kets, kets.conj(), sys.weights)
    rho0 = np.einsum("ni,nj,n->ij", kets0, kets0.conj(), sys.weights)

    e0 = float(np.trace(sys.h @ rho0).real)
    e1 = float(np.trace(sys.h @ rho).real)

    dims = [2, dim_m]
    rho_s = partial_trace(rho, dims, keep=(0,))
    rho_e = partial_trace(rho, dims, keep=(1,))
    rho_e0 = partial_trace(rho0, dims, keep=(1,))
    occ = float(np.real(np.diag(rho_e)) @ sys.nvec)
    occ0 = float(np.real(np.diag(rho_e0)) @ sys.nvec)
    heat = cfg.omega_mode * (occ - occ0)

    return RabiRunRecord(
        rho_s=rho_s,
        rho_e=rho_e,
        heat=heat,
        entropy_s=vn_entropy(rho_s),
        energy_drift=abs(e1 - e0),
        norm_error=norm_error,
        top_fock=top_fock,
    )


def run_single(cfg: RabiConfig, phi: float) -> RabiRunRecord:
    """Evolve one encoded phase through the erasure and account for the heat."""
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ValueError("encoded phase must lie in [0, 2 pi)")
    return _run_at(_System(cfg), cfg.c0, phi)


def erasure_quality(cfg: RabiConfig, tau: float) -> float:
    """Residual distinguishability after erasing for a duration tau.

    Maximum pairwise trace distance between the final reduced qubit states
    across the encoded-phase grid; zero for perfect erasure.
    """
    if tau < 0.0:
        raise ValueError("erasure duration must be nonnegative")
    sys = _System(cfg)
    states = sys.reduced_qubit_states(tau, cfg.c0, sys.phase_grid())
    return _max_pairwise_distance(states)


def _max_pairwise_distance(states: np.ndarray) -> float:
    m = states.shape[0]
    dmax = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            d = states[i] - states[j]
            w = np.linalg.eigvalsh((d + d.conj().T) / 2.0)
            dmax = max(dmax, 0.5 * float(np.abs(w).sum()))
    return dmax


def _argmin_scan(values) -> int:
    """First index attaining the minimum within a tie tolerance."""
    values = np.asarray(values, dtype=float)
    vmin = float(values.min())
    for i, v in enumerate(values):
        if v <= vmin + SCAN_TIE_TOL:
            return i
    return int(np.argmin(values))


def scan_erasure_profile(cfg: RabiConfig, tau_min: float, tau_max: float, steps: int,
                         workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Residual distinguishability over a uniform grid of erasure durations."""
    if not tau_min < tau_max:
        raise ValueError("need tau_min < tau_max")
    if int(steps) < 2:
        raise ValueError("need at least two scan steps")
    sys = _System(cfg)
    phis = sys.phase_grid()
    taus = np.linspace(tau_min, tau_max, int(steps))

    def quality_at(tau: float) -> float:
        return _max_pairwise_distance(sys.reduced_qubit_states(tau, cfg.c0, phis))

    qualities = np.array(ordered_map(quality_at, taus, workers=workers))
    return taus, qualities


def find_erasure_time(cfg: RabiConfig, tau_min: float, tau_max: float, steps: int,
                      workers: int = 1) -> tuple[float, float]:
    """Grid scan for the erasure duration of least residual distinguishability.

    Ties resolve to the smallest tau. Returns (tau_star, quality).
    """
    taus, qualities = scan_erasure_profile(cfg, tau_min, tau_max, steps, workers=workers)
    i = _argmin_scan(qualities)
    return float(taus[i]), float(qualities[i])


def run_c0_sweep(cfg: RabiConfig, c0_list, workers: int = 1) -> list[RabiOutcome]:
    """Phase-averaged erasure outcomes for a list of c0 values.

    Each outcome averages heat and entropy over the uniform phase grid and
    audits the erasure heat floor: the averaged heat plus kbt times the
    entropy of the averaged final state must reach log(2) kbt F_Q / t^2 up
    to a slack of kbt times the residual distinguishability. Outcomes come
    back sorted by fq_over_t2.
    """
    c0_list = [float(c) for c in c0_list]
    for c0 in c0_list:
        if not 0.0 < c0 < 1.0:
            raise ValueError(f"c0 = {c0!r} must lie strictly between 0 and 1")
    sys = _System(cfg)
    phis = sys.phase_grid()
    kbt = cfg.temperature

    def outcome_for(c0: float) -> RabiOutcome:
        records = [_run_at(sys, c0, phi) for phi in phis]
        heats = np.array([r.heat for r in records])
        entropies = np.array([r.entropy_s for r in records])
        rho_avg = np.mean([r.rho_s for r in records], axis=0)
        entropy_of_avg = vn_entropy(rho_avg)
        quality = _max_pairwise_distance(np.array([r.rho_s for r in records]))
        fq = 4.0 * c0 * c0 * (1.0 - c0 * c0)
        heat_avg = float(np.mean(heats))
        floor = kbt * (LOG2 * fq - entropy_of_avg)
        gap = heat_avg + kbt * entropy_of_avg - LOG2 * kbt * fq
        if gap < -kbt * quality - AUDIT_SLACK:
            raise RuntimeError(
                f"erasure heat audit failed at c0 = {c0}: margin {gap:.3e} "
                f"below slack {-kbt * quality:.3e}")
        return RabiOutcome(
            c0=c0,
            fq_over_t2=fq,
            heat_avg=heat_avg,
            entropy_final_avg=float(np.mean(entropies)),
            entropy_of_avg=entropy_of_avg,
            bound_floor=floor,
            erasure_quality=quality,
        )

    outcomes = ordered_map(outcome_for, c0_list, workers=workers)
    return sorted(outcomes, key=lambda o: o.fq_over_t2)
