import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trackshear.sampling import random_element
from trackshear.shear import verify_coupling
from trackshear.symplectic import (
    CouplingMatrix,
    coupling_constant,
    gram_matrix,
    pair,
    pairing_thm1,
    pairing_thm2,
    switch_contributions,
    track_warnings,
)
from trackshear.weights import WeightError, WeightSystem


def test_coupling_examples():
    assert coupling_constant(2, 1, 1) == 2
    assert CouplingMatrix.build(3).entries == ((4, 2), (2, 4))


@pytest.mark.parametrize("n", range(2, 13))
def test_coupling_symmetric_positive(n):
    c = CouplingMatrix.build(n)
    for a in range(1, n):
        for b in range(1, n):
            assert c(a, b) == c(b, a) > 0
            assert c(a, b) == c(n - a, n - b)


def test_coupling_range():
    with pytest.raises(ValueError):
        coupling_constant(3, 0, 1)
    with pytest.raises(ValueError):
        coupling_constant(3, 1, 3)


@pytest.mark.parametrize("n", range(2, 13))
def test_coupling_matches_killing(n):
    assert verify_coupling(n).ok


def test_theta_pairings(theta_or, w1, w2):
    # half of C(1,1) times ((1*1 - 1*(-1)) + (1*1 - 1*(-1)))
    assert pairing_thm2(w1, w2, theta_or, 2) == 4
    assert pairing_thm1(w1, w2, theta_or, 2) == 4
    assert pairing_thm2(w1, w1, theta_or, 2) == 0
    assert pairing_thm2(w1, WeightSystem.zero(theta_or), theta_or, 2) == 0
    res = pair(w1, w2, theta_or, 2)
    assert res.difference == 0 and len(res.warnings) == 2


def test_dimension_mismatch(theta_or, w1, w2):
    with pytest.raises(WeightError):
        pairing_thm2(w1, w2, theta_or, 3)


def test_no_warnings_on_genus2_cover(cover):
    assert track_warnings(cover) == []


def pairs(twisted, seed):
    rng = random.Random(seed)
    n = rng.choice(range(2, 7))
    return n, random_element(twisted[n], rng), random_element(twisted[n], rng), rng


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_theorems_agree(twisted, cover, seed):
    n, a1, a2, _ = pairs(twisted, seed)
    assert pairing_thm1(a1, a2, cover, n) == pairing_thm2(a1, a2, cover, n)


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_bilinear_antisymmetric(twisted, cover, seed):
    n, a1, a2, rng = pairs(twisted, seed)
    q = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
    for f in (pairing_thm1, pairing_thm2):
        assert f(a1, a1, cover, n) == 0
        assert f(a1, a2, cover, n) == -f(a2, a1, cover, n)
        assert f(q * a1, a2, cover, n) == q * f(a1, a2, cover, n)
        assert f(a1 + a2, a2, cover, n) == f(a1, a2, cover, n)


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_involution_orbits(twisted, cover, seed):
    n, a1, a2, _ = pairs(twisted, seed)
    contrib = switch_contributions(a1, a2, cover, n)
    assert sum(contrib.values()) == pairing_thm2(a1, a2, cover, n)
    inv = cover.involution.switches
    assert all(contrib[s] == contrib[inv[s]] for s in cover.switch_ids)


@pytest.mark.parametrize("n,dim", [(2, 6), (3, 13)])
def test_gram(twisted, n, dim):
    g = gram_matrix(twisted[n], n)
    m = g.matrix
    assert g.dimension == dim
    assert all(m[i][j] == -m[j][i] for i in range(dim) for j in range(dim))
    assert g.rank % 2 == 0 and g.rank <= dim
    assert g.warnings == []
