import itertools
import random

import pytest

from thetalab.characteristics import (
    EVEN,
    ODD,
    Characteristic,
    F2Vector,
    SymplecticMap,
    act,
    canonical_f2_order,
    count_parity,
    enumerate_characteristics,
    orbits,
    parity,
    quadratic_class,
    symplectic_generators,
    symplectic_pairing,
)


@pytest.mark.parametrize("g,n", [(1, 2), (2, 2), (2, 3), (1, 4), (3, 2)])
def test_enumeration_size_and_uniqueness(g, n):
    chars = enumerate_characteristics(g, n)
    assert len(chars) == n ** (2 * g)
    assert len(set(chars)) == len(chars)


def test_enumeration_canonical_order_g1():
    chars = enumerate_characteristics(1, 2)
    assert [(c.a, c.b) for c in chars] == [
        ((0,), (0,)),
        ((0,), (1,)),
        ((1,), (0,)),
        ((1,), (1,)),
    ]


def test_parity_examples():
    assert parity(Characteristic(1, 2, (1,), (1,))) == ODD
    assert parity(Characteristic(1, 2, (0,), (0,))) == EVEN
    assert parity(Characteristic(2, 2, (1, 1), (1, 1))) == EVEN


def test_parity_rejects_higher_level():
    with pytest.raises(ValueError):
        parity(Characteristic(1, 3, (1,), (1,)))


@pytest.mark.parametrize("g,expected", [(1, (3, 1)), (2, (10, 6)), (3, (36, 28))])
def test_count_parity_closed_form(g, expected):
    assert count_parity(g) == expected


@pytest.mark.parametrize("g", range(1, 7))
def test_count_parity_matches_enumeration(g):
    even, odd = count_parity(g)
    tally = sum(1 for c in enumerate_characteristics(g, 2) if parity(c) == ODD)
    assert (even + odd, odd) == (4**g, tally)


def test_pairing_examples():
    assert symplectic_pairing(F2Vector(1, (1, 0)), F2Vector(1, (0, 1))) == 1
    assert symplectic_pairing(F2Vector(1, (1, 0)), F2Vector(1, (1, 0))) == 0
    assert symplectic_pairing(F2Vector(2, (1, 0, 0, 0)), F2Vector(2, (0, 1, 0, 0))) == 0


def test_pairing_rejects_mismatched_g():
    with pytest.raises(ValueError):
        symplectic_pairing(F2Vector(1, (1, 0)), F2Vector(2, (1, 0, 0, 0)))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_pairing_alternating_and_polarization(g):
    vecs = [F2Vector(g, bits) for bits in itertools.product((0, 1), repeat=2 * g)]
    for m in vecs:
        assert symplectic_pairing(m, m) == 0
    for m, n in itertools.product(vecs, vecs):
        qm = quadratic_class(m) == "anisotropic"
        qn = quadratic_class(n) == "anisotropic"
        qmn = quadratic_class(m + n) == "anisotropic"
        assert qmn == (qm ^ qn ^ bool(symplectic_pairing(m, n)))


@pytest.mark.parametrize("g", [1, 2])
def test_pairing_bilinear_exhaustive(g):
    vecs = [F2Vector(g, bits) for bits in itertools.product((0, 1), repeat=2 * g)]
    for m1, m2, n in itertools.product(vecs, vecs, vecs):
        assert symplectic_pairing(m1 + m2, n) == (
            symplectic_pairing(m1, n) + symplectic_pairing(m2, n)
        ) % 2


def test_pairing_bilinear_sampled_g3():
    rng = random.Random(5)
    vecs = [F2Vector(3, bits) for bits in itertools.product((0, 1), repeat=6)]
    for _ in range(2000):
        m1, m2, n = (rng.choice(vecs) for _ in range(3))
        assert symplectic_pairing(m1 + m2, n) == (
            symplectic_pairing(m1, n) + symplectic_pairing(m2, n)
        ) % 2


def test_quadratic_class_matches_parity():
    for g in (1, 2, 3):
        for c in enumerate_characteristics(g, 2):
            iso = quadratic_class(F2Vector.from_characteristic(c)) == "isotropic"
            assert iso == (parity(c) == EVEN)


def test_canonical_order_isotropic_first():
    for g in (1, 2, 3):
        order = canonical_f2_order(g)
        kp = count_parity(g)[0]
        assert all(quadratic_class(v) == "isotropic" for v in order[:kp])
        assert all(quadratic_class(v) == "anisotropic" for v in order[kp:])
        assert [v.bits for v in order[:kp]] == sorted(v.bits for v in order[:kp])


def test_symplectic_map_rejects_invalid():
    with pytest.raises(ValueError):
        SymplecticMap(1, ((1,),), ((1,),), ((1,),), ((1,),))


def test_identity_acts_trivially():
    for g in (1, 2, 3):
        ident = SymplecticMap.identity(g)
        for c in enumerate_characteristics(g, 2):
            assert act(ident, c) == c


@pytest.mark.parametrize("g", [1, 2, 3])
def test_action_preserves_parity(g):
    for gamma in symplectic_generators(g):
        for c in enumerate_characteristics(g, 2):
            assert parity(act(gamma, c)) == parity(c)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_group_action_law(g):
    rng = random.Random(11)
    gens = symplectic_generators(g)
    chars = enumerate_characteristics(g, 2)
    for _ in range(300):
        g1, g2 = rng.choice(gens), rng.choice(gens)
        c = rng.choice(chars)
        assert act(g1 @ g2, c) == act(g1, act(g2, c))


def test_orbits_g1():
    report = orbits(1, 1)
    assert report["orbit_sizes"] == [1, 3]


def test_orbits_g2_parity_classes():
    report = orbits(2, 1)
    assert sorted(report["orbit_sizes"]) == [6, 10]
    assert report["parity_classes_single_orbits"]


def test_orbits_g2_pairs_double_transitive():
    report = orbits(2, 2)
    assert 90 in report["orbit_sizes"]
    assert report["even_pairs_single_orbit"]
    assert report["odd_pairs_single_orbit"]


def test_orbits_rejects_large_g():
    with pytest.raises(ValueError):
        orbits(4, 1)
