import numpy as np
import pytest
from hypothesis import given, strategies as st

from amalgam.errors import InputError, ResourceCapError
from amalgam.ideals import (
    all_ideals, annihilator, ideal_generated, ideal_intersection, ideal_product, ideal_sum,
    is_maximal, is_prime, is_regular_ideal, jacobson, max_spec, spec, unit_ideal, variety,
    zero_ideal,
)
from amalgam.rings import make_gf, make_zmod, unit_mask

from conftest import as_set, f2_trivext_f2sq, polyx


def members(I):
    return set(I.members.tolist())


def fmt_members(I):
    return sorted(I.ring.format(x) for x in I.members)


def test_generated_examples():
    Z12, Z24 = make_zmod(12), make_zmod(24)
    assert members(ideal_generated(Z12, [2])) == {0, 2, 4, 6, 8, 10}
    assert members(ideal_generated(Z24, [6])) == {0, 6, 12, 18}
    R = polyx(2, 4)
    X = R.generator
    J = ideal_generated(R, [R.pow(X, 2)])
    assert fmt_members(J) == sorted(["0", "X^2", "X^3", "X^2+X^3"])


def test_arithmetic_examples():
    Z12, Z24 = make_zmod(12), make_zmod(24)
    assert ideal_sum(ideal_generated(Z12, [2]), ideal_generated(Z12, [3])).is_unit()
    J = ideal_generated(Z24, [6])
    assert ideal_product(J, J) == ideal_generated(Z24, [12])
    assert not ideal_product(J, J).is_zero()
    R = polyx(2, 4)
    X2 = ideal_generated(R, [R.pow(R.generator, 2)])
    assert ideal_product(X2, X2).is_zero()
    assert ideal_intersection(ideal_generated(Z12, [2]), ideal_generated(Z12, [3])) == \
        ideal_generated(Z12, [6])


def test_ring_mismatch():
    with pytest.raises(InputError):
        ideal_sum(unit_ideal(make_zmod(4)), unit_ideal(make_zmod(6)))


def test_all_ideals_examples():
    assert len(all_ideals(make_zmod(12))) == 6
    R = polyx(2, 4)
    chain = all_ideals(R)
    assert [I.size for I in chain] == [1, 2, 4, 8, 16]
    assert all(a <= b for a, b in zip(chain, chain[1:]))
    A, _ = f2_trivext_f2sq()
    ideals = all_ideals(A)
    # (0), three lines, the socle, A
    assert sorted(I.size for I in ideals) == [1, 2, 2, 2, 4, 8]


def test_all_ideals_cap():
    with pytest.raises(ResourceCapError):
        all_ideals(make_zmod(720), cap=5)


def test_prime_and_maximal_examples():
    Z12 = make_zmod(12)
    two = ideal_generated(Z12, [2])
    assert is_prime(two) and is_maximal(two)
    assert not is_prime(ideal_generated(Z12, [4]))
    assert is_prime(zero_ideal(make_gf(3)))
    assert not is_prime(unit_ideal(Z12))


def test_spectrum_examples():
    Z48 = make_zmod(48)
    assert set(max_spec(Z48)) == {ideal_generated(Z48, [2]), ideal_generated(Z48, [3])}
    assert jacobson(Z48) == ideal_generated(Z48, [6])
    Z24 = make_zmod(24)
    assert set(variety(ideal_generated(Z24, [6]))) == {ideal_generated(Z24, [2]),
                                                       ideal_generated(Z24, [3])}
    R = polyx(2, 8)
    assert spec(R) == [ideal_generated(R, [R.generator])]


def test_regular_and_annihilator():
    Z12 = make_zmod(12)
    assert not is_regular_ideal(ideal_generated(Z12, [2]))
    assert is_regular_ideal(unit_ideal(Z12))
    Z24 = make_zmod(24)
    assert annihilator(Z24, 6) == ideal_generated(Z24, [4])


# --- properties -------------------------------------------------------------------------

rings = st.one_of(st.integers(2, 60).map(make_zmod),
                  st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (2, 5)]).map(lambda t: polyx(*t)))


@given(rings)
def test_ideals_closed(R):
    for I in all_ideals(R):
        m = I.members
        assert I.mask[R.add_table[np.ix_(m, m)]].all()
        assert I.mask[R.mul_table[:, m]].all()


@given(rings)
def test_all_ideals_unique_with_extremes(R):
    ideals = all_ideals(R)
    assert len(set(ideals)) == len(ideals)
    assert zero_ideal(R) in ideals and unit_ideal(R) in ideals


@given(rings)
def test_maximal_implies_prime(R):
    for I in all_ideals(R):
        if is_maximal(I):
            assert is_prime(I)


@given(rings)
def test_jacobson_alternative(R):
    U = unit_mask(R)
    # r in Jac iff 1 - r s is a unit for every s
    one_minus = R.sub(R.one, R.mul_table)
    alt = U[one_minus].all(axis=1)
    assert as_set(alt) == members(jacobson(R))


@given(rings)
def test_variety_of_zero_is_spec(R):
    assert set(variety(zero_ideal(R))) == set(spec(R))


@given(st.integers(2, 40), st.data())
def test_prime_matches_definition(n, data):
    R = make_zmod(n)
    g = data.draw(st.integers(0, n - 1))
    I = ideal_generated(R, [g])
    out = ~I.mask
    brute = I.is_proper() and not I.mask[R.mul_table[np.ix_(np.flatnonzero(out),
                                                           np.flatnonzero(out))]].any()
    assert is_prime(I) == brute
