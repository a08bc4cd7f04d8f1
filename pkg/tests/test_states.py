import math

import numpy as np
import pytest

from qfithermo.states import (
    DickeFamily,
    dicke_state,
    family_distribution,
    fock_ops,
    spin_ops,
    thermal_state,
)

from oracles import twin_fock_distribution_oracle

# mean occupation of the omega = 1, T = 0.3 mode: 1 / expm1(1/0.3)
BOSE_EINSTEIN_MEAN = 0.03699370659003553


def test_spin_ops_single_qubit_is_pauli_halved():
    jx, jy, jz = spin_ops(1)
    # Dicke ordering is m ascending, so the z and y matrices carry the
    # basis-reversed sign relative to the usual (|0>, |1>) convention
    assert np.allclose(jz, np.diag([-0.5, 0.5]), atol=1e-15)
    assert np.allclose(jx, np.array([[0, 0.5], [0.5, 0]]), atol=1e-15)
    assert np.allclose(jy, np.array([[0, 0.5j], [-0.5j, 0]]), atol=1e-15)


def test_spin_ops_two_qubits_jz():
    _, _, jz = spin_ops(2)
    assert np.allclose(jz, np.diag([-1.0, 0.0, 1.0]), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 6, 33, 64])
def test_spin_ops_commutators(n):
    jx, jy, jz = spin_ops(n)
    assert np.max(np.abs(jx @ jy - jy @ jx - 1j * jz)) < 1e-10
    assert np.max(np.abs(jy @ jz - jz @ jy - 1j * jx)) < 1e-10
    assert np.max(np.abs(jz @ jx - jx @ jz - 1j * jy)) < 1e-10


def test_spin_ops_casimir():
    n = 6
    j = n / 2
    jx, jy, jz = spin_ops(n)
    casimir = jx @ jx + jy @ jy + jz @ jz
    assert np.max(np.abs(casimir - j * (j + 1) * np.eye(n + 1))) < 1e-10


def test_family_rejects_unknown_kind():
    with pytest.raises(ValueError):
        DickeFamily(kind="cat")


@pytest.mark.parametrize("kind", ["product", "squeezed", "twin_fock", "ghz_like"])
@pytest.mark.parametrize("n", [2, 8, 16, 64])
def test_family_distribution_normalized_and_symmetric(kind, n):
    p = family_distribution(DickeFamily(kind=kind), n)
    assert p.min() >= 0.0
    assert abs(p.sum() - 1.0) < 1e-12
    assert np.max(np.abs(p - p[::-1])) < 1e-12


def test_product_distribution_small_case():
    p = family_distribution(DickeFamily(kind="product"), 2)
    assert np.allclose(p, [0.25, 0.5, 0.25], atol=1e-14)


def test_ghz_like_limit_is_ghz():
    p = family_distribution(DickeFamily(kind="ghz_like", nu=1e-6), 8)
    expected = np.zeros(9)
    expected[0] = expected[-1] = 0.5
    assert np.max(np.abs(p - expected)) < 1e-12


def test_ghz_like_rejects_bad_width():
    with pytest.raises(ValueError):
        family_distribution(DickeFamily(kind="ghz_like", nu=0.0), 8)


def test_twin_fock_small_case():
    p = family_distribution(DickeFamily(kind="twin_fock"), 2)
    assert np.allclose(p, [0.5, 0.0, 0.5], atol=1e-12)


def test_twin_fock_rejects_odd_n():
    with pytest.raises(ValueError):
        family_distribution(DickeFamily(kind="twin_fock"), 7)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_twin_fock_matches_wigner_oracle(n):
    p = family_distribution(DickeFamily(kind="twin_fock"), n)
    assert np.max(np.abs(p - twin_fock_distribution_oracle(n))) < 1e-12


@pytest.mark.parametrize("n", [2, 8, 32, 64])
def test_twin_fock_variance(n):
    j = n / 2
    p = family_distribution(DickeFamily(kind="twin_fock"), n)
    k = np.arange(n + 1, dtype=float)
    var = float(p @ k ** 2 - (p @ k) ** 2)
    assert abs(var - j * (j + 1) / 2.0) < 1e-9


def test_thermal_state_zero_temperature():
    rho = thermal_state(1.0, 0.0, 12)
    expected = np.zeros((13, 13))
    expected[0, 0] = 1.0
    assert np.max(np.abs(rho - expected)) < 1e-15


def test_thermal_state_infinite_temperature_limit():
    rho = thermal_state(1.0, 1e9, 3)
    assert np.max(np.abs(np.diag(rho).real - 0.25)) < 1e-6


def test_thermal_state_mean_occupation():
    rho = thermal_state(1.0, 0.3, 20)
    mean = float(np.real(np.diag(rho)) @ np.arange(21))
    assert abs(mean - BOSE_EINSTEIN_MEAN) < 1e-10
    assert abs(np.trace(rho).real - 1.0) < 1e-12


def test_thermal_state_tail_negligible_in_erasure_regime():
    rho = thermal_state(1.0, 0.3, 20)
    assert np.real(rho[20, 20]) < 1e-10


def test_thermal_state_rejects_negative_temperature():
    with pytest.raises(ValueError):
        thermal_state(1.0, -0.1, 10)


def test_fock_ops_ladder_action():
    a, adag, num = fock_ops(5)
    e1 = np.zeros(6)
    e1[1] = 1.0
    out = a @ e1
    expected = np.zeros(6)
    expected[0] = 1.0
    assert np.allclose(out, expected, atol=1e-15)
    assert np.max(np.abs(num - np.diag(np.arange(6.0)))) < 1e-12


def test_fock_ops_commutator_truncation():
    nmax = 7
    a, adag, _ = fock_ops(nmax)
    comm = a @ adag - adag @ a
    dev = comm - np.eye(nmax + 1)
    assert abs(dev[nmax, nmax] + (nmax + 1)) < 1e-12
    dev[nmax, nmax] = 0.0
    assert np.max(np.abs(dev)) < 1e-12


def test_dicke_state_constructors():
    n = 6
    e0 = dicke_state([1.0] + [0.0] * n)
    assert abs(e0[0] - 1.0) < 1e-15
    p = family_distribution(DickeFamily(kind="product"), n)
    psi = dicke_state(np.sqrt(p))
    assert np.max(np.abs(np.abs(psi) ** 2 - p)) < 1e-12
    ghz = dicke_state([1 / math.sqrt(2)] + [0.0] * (n - 1) + [1 / math.sqrt(2)])
    assert abs(np.vdot(ghz, ghz).real - 1.0) < 1e-12
    with pytest.raises(ValueError):
        dicke_state([1.0, 1.0])
