import json
import math

import numpy as np
import pytest

from thetalab.characteristics import Characteristic, enumerate_characteristics
from thetalab.errors import AmbiguousVanishingError
from thetalab.theta import (
    PeriodMatrix,
    addition_residual,
    classify_magnitudes,
    constant_table,
    count_torsion,
    fay_relation_residual,
    m_count,
    qh_rank_profile,
    random_tau,
    theta,
)


def naive_theta(char, tau, z, radius):
    """Independent oracle: direct lattice sum, no reduction, no vectorization."""
    g = char.g
    delta = np.array(char.a, dtype=float) / char.n
    eps = np.array(char.b, dtype=float) / char.n
    total = 0.0 + 0.0j
    for m in np.ndindex(*(2 * radius + 1,) * g):
        p = np.array(m, dtype=float) - radius + delta
        total += np.exp(1j * math.pi * p @ tau @ p + 2j * math.pi * p @ (z + eps))
    return total


def test_period_matrix_rejects_asymmetric():
    with pytest.raises(ValueError):
        PeriodMatrix(np.array([[1j, 0.5], [0.1, 2j]]))


def test_period_matrix_rejects_indefinite():
    with pytest.raises(ValueError):
        PeriodMatrix(np.array([[-1j]]))


def test_period_matrix_json_roundtrip():
    tau = random_tau(2, 3)
    blob = json.dumps(tau.to_json())
    back = PeriodMatrix.from_json(json.loads(blob))
    assert np.allclose(back.mat, tau.mat)


def test_period_matrix_from_json_rejects_bad_shape():
    with pytest.raises(ValueError):
        PeriodMatrix.from_json({"g": 2, "re": [[0.0]], "im": [[1.0]]})


def test_theta_matches_naive_sum_g1():
    tau = PeriodMatrix(np.array([[1j]]))
    for a in (0, 1):
        for b in (0, 1):
            c = Characteristic(1, 2, (a,), (b,))
            got = theta(tau, np.zeros(1), c)
            want = naive_theta(c, tau.mat, np.zeros(1), 12)
            assert abs(got.value - want) < 1e-12


def test_theta_frozen_value():
    # theta[0;0](i, 0), the classical theta constant at the square lattice
    got = theta(PeriodMatrix(np.array([[1j]])), np.zeros(1), Characteristic(1, 2, (0,), (0,)))
    assert abs(got.value - 1.0864348112133082) < 1e-13
    assert got.tail_bound < 1e-12


def test_theta_matches_naive_sum_g2_offlattice_z():
    tau = random_tau(2, 9)
    z = np.array([0.21, -0.13]) + 1j * np.array([0.05, 0.02])
    for c in enumerate_characteristics(2, 2)[:6]:
        got = theta(tau, z, c)
        want = naive_theta(c, tau.mat, z, 10)
        assert abs(got.value - want) < 1e-10 * max(1.0, abs(want))


def test_theta_quasi_periodic_reduction_large_z():
    # z far outside the fundamental domain exercises the reduction factor
    tau = random_tau(2, 1)
    c = Characteristic(2, 2, (0, 1), (1, 0))
    z = tau.mat @ np.array([3.0, -2.0]) + np.array([4.0, 5.0]) + np.array([0.3, 0.1])
    got = theta(tau, z, c)
    want = naive_theta(c, tau.mat, z, 14)
    assert abs(got.value - want) < 1e-9 * max(1.0, abs(want))


def test_theta_level_three_characteristic():
    tau = PeriodMatrix(np.array([[0.1 + 1.2j]]))
    c = Characteristic(1, 3, (1,), (2,))
    got = theta(tau, np.zeros(1), c)
    want = naive_theta(c, tau.mat, np.zeros(1), 12)
    assert abs(got.value - want) < 1e-11


def test_odd_constant_vanishes():
    tau = PeriodMatrix(np.array([[1j]]))
    v = theta(tau, np.zeros(1), Characteristic(1, 2, (1,), (1,)))
    assert abs(v.value) < 1e-14


def test_classify_magnitudes_clear_split():
    flags = classify_magnitudes([1.0, 0.9, 1e-9, 0.0])
    assert flags.tolist() == [False, False, True, True]


def test_classify_magnitudes_ambiguous_band_raises():
    with pytest.raises(AmbiguousVanishingError) as info:
        classify_magnitudes([1.0, 1e-5])
    assert 1 in info.value.offenders


def test_constant_table_g1():
    table = constant_table(random_tau(1, 2), 2)
    assert len(table.values) == 4
    assert int(table.vanishing_flags().sum()) == 1


def test_constant_table_json_names_characteristics():
    blob = constant_table(random_tau(1, 2), 2).to_json()
    assert len(blob["entries"]) == 4
    assert all("char" in e and "vanishing" in e for e in blob["entries"])


@pytest.mark.parametrize("g,expected", [(1, 1), (2, 6), (3, 28)])
def test_generic_two_torsion_count(g, expected):
    res = count_torsion(random_tau(g, 0), 2)
    assert res.count == expected


def test_product_two_torsion_counts():
    # diagonal tau = product of elliptic curves, Theta(2) = 4^g - 3^g
    for g, expected in ((1, 1), (2, 7), (3, 37)):
        tau = PeriodMatrix(np.diag([1.0j * (k + 1) for k in range(g)]))
        res = count_torsion(tau, 2)
        assert res.count == expected
        assert res.certified


def test_product_count_factorizes():
    flags = []
    for t in (np.array([[1.3j]]), np.array([[0.2 + 1.7j]])):
        flags.append(constant_table(PeriodMatrix(t), 2).vanishing_flags())
    joint = constant_table(PeriodMatrix(np.diag([1.3j, 0.2 + 1.7j])), 2)
    # vanishing on the product is the "or" of factor vanishings
    chars = enumerate_characteristics(2, 2)
    for c, f in zip(chars, joint.vanishing_flags()):
        f1 = flags[0][2 * c.a[0] + c.b[0]]
        f2 = flags[1][2 * c.a[1] + c.b[1]]
        assert f == (f1 or f2)


def test_four_torsion_g1():
    res = count_torsion(random_tau(1, 4), 4)
    assert res.count == 1
    assert res.to_json()["theta_n"] == 1


def test_m_count_range_g2():
    tau = random_tau(2, 6)
    rng = np.random.default_rng(17)
    y = rng.uniform(-0.4, 0.4, 2) + 1j * rng.uniform(-0.1, 0.1, 2)
    m = m_count(tau, y)
    assert 9 <= m <= 16
    assert m_count(tau, np.zeros(2)) == 16 - count_torsion(tau, 2).count


def test_addition_residual_small():
    tau = random_tau(2, 8)
    z = np.array([0.11, 0.07]) + 1j * np.array([0.03, -0.02])
    for c in enumerate_characteristics(2, 2)[:4]:
        assert addition_residual(tau, z, c) < 1e-10


def test_fay_residual_small():
    tau = random_tau(2, 12)
    z = np.array([0.09, -0.04]) + 1j * np.array([0.02, 0.05])
    assert fay_relation_residual(tau, z, 0) < 1e-10
    assert fay_relation_residual(tau, np.zeros(2), 0) < 1e-10


@pytest.mark.parametrize("g,n", [(1, 2), (2, 2), (2, 3)])
def test_qh_rank_defect_zero(g, n):
    prof = qh_rank_profile(random_tau(g, 5), n)
    assert prof.defect == 0
    assert sum(prof.ranks) + prof.theta_n == n ** (2 * g)


def test_random_tau_deterministic():
    a = random_tau(3, 42).mat
    b = random_tau(3, 42).mat
    assert np.array_equal(a, b)
