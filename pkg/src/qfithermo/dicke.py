"""Entropy and weighted-QFI scaling of symmetric multi-qubit families.

For every family the interrogation generator is the collective Jz, whose
eigenvalues in the symmetric sector are nondegenerate, so the entropy of
the phase-averaged state is simply the Shannon entropy of the Dicke-level
distribution. The dense-matrix dephasing path is kept as a cross-check at
small N in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import shannon
from .metrology import weighted_fq
from .parallel import ordered_map
from .states import DickeFamily, family_distribution


@dataclass(frozen=True)
class SweepRecord:
    """One row of the family sweep. Entropies in nats; sql_ratio = F_Q / (N t^2)."""

    family: str
    N: int
    entropy_nats: float
    weighted_fq_nats: float
    fq_over_t2: float
    sql_ratio: float


@dataclass(frozen=True)
class LogFit:
    """Least-squares fit of entropy against log N: entropy ~ alpha log N + beta."""

    alpha: float
    beta: float
    rms_residual: float


def sweep(family: DickeFamily, n_list: Sequence[int], workers: int = 1) -> list[SweepRecord]:
    """Entropy, weighted QFI and QFI scaling of one family over system sizes."""
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("empty N list")

    def record_for(n: int) -> SweepRecord:
        p = family_distribution(family, n)
        m = np.arange(n + 1, dtype=float) - n / 2.0
        mean = float(p @ m)
        fq = 4.0 * (float(p @ (m * m)) - mean * mean)
        return SweepRecord(
            family=family.kind,
            N=n,
            entropy_nats=shannon(p),
            weighted_fq_nats=weighted_fq(p, m),
            fq_over_t2=fq,
            sql_ratio=fq / n,
        )

    return ordered_map(record_for, n_list, workers=workers)


def fit_log(records: Sequence[SweepRecord]) -> LogFit:
    """Closed-form least squares of entropy_nats against log N."""
    if len(records) < 3:
        raise ValueError("need at least three records to fit")
    x = np.log(np.array([r.N for r in records], dtype=float))
    y = np.array([r.entropy_nats for r in records], dtype=float)
    xc = x - x.mean()
    denom = float(xc @ xc)
    if denom <= 0.0:
        raise ValueError("degenerate fit: all N equal")
    alpha = float(xc @ (y - y.mean())) / denom
    beta = float(y.mean() - alpha * x.mean())
    resid = y - (alpha * x + beta)
    return LogFit(alpha=alpha, beta=beta, rms_residual=float(np.sqrt(np.mean(resid ** 2))))


def saturation_check(family: DickeFamily, n_pair: tuple[int, int]) -> float:
    """Entropy change between two system sizes of the ghz_like family."""
    if family.kind != "ghz_like":
        raise ValueError("saturation check applies to the ghz_like family only")
    n1, n2 = int(n_pair[0]), int(n_pair[1])
    if not n1 < n2:
        raise ValueError("N pair must be increasing")
    s1 = shannon(family_distribution(family, n1))
    s2 = shannon(family_distribution(family, n2))
    return abs(s2 - s1)
