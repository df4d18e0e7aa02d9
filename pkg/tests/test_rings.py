import numpy as np
import pytest
from hypothesis import given, strategies as st

from amalgam.errors import InputError, ResourceCapError, ValidationError
from amalgam.predicates import zero_divisors
from amalgam.rings import (
    Polynomial, check_ring_axioms, make_gf, make_hom, make_poly_quotient, make_product,
    make_quotient, make_zmod, unit_mask, units,
)
from amalgam.ideals import ideal_generated, zero_ideal

from conftest import as_set, polyx


def test_zmod_arithmetic():
    R = make_zmod(6)
    assert R.size == 6
    assert R.mul(2, 3) == 0
    assert R.mul(5, 5) == 1


def test_zmod48_size():
    assert make_zmod(48).size == 48


@pytest.mark.parametrize("n", [1, 0, -3])
def test_zmod_rejects_small(n):
    with pytest.raises(InputError):
        make_zmod(n)


def test_poly_quotient_dual_numbers():
    R = polyx(2, 2)
    assert R.size == 4
    X = R.generator
    assert R.mul(X, X) == R.zero
    assert sorted(R.format(i) for i in range(4)) == sorted(["0", "1", "1+X", "X"])


def test_poly_quotient_x8_is_local():
    from amalgam.predicates import is_local
    R = polyx(2, 8)
    assert R.size == 256
    assert is_local(R)


def test_poly_quotient_evaluation_at_one():
    Z4 = make_zmod(4)
    # X - 1 == X + 3 over Z/4
    R = make_poly_quotient(Z4, Polynomial.from_ints(Z4, [3, 1]))
    assert R.size == 4
    assert R.characteristic == 4
    assert R.mul(R.from_int(2), R.from_int(2)) == R.zero


def test_poly_quotient_rejects_non_monic():
    Z4 = make_zmod(4)
    with pytest.raises(InputError):
        make_poly_quotient(Z4, Polynomial.from_ints(Z4, [1, 2]))


def test_product_crt_and_idempotents():
    P = make_product(make_zmod(2), make_zmod(3))
    assert P.size == 6
    assert len(units(P)) == 2
    assert P.characteristic == 6
    e = P.index((1, 0))
    f = P.index((0, 1))
    assert P.mul(e, f) == P.zero
    assert P.mul(e, e) == e


def test_product_ambient_size():
    assert make_product(make_zmod(48), make_zmod(24)).size == 1152


def test_quotient_z48_by_24():
    R = make_zmod(48)
    S, f = make_quotient(R, ideal_generated(R, [24]))
    assert S.size == 24
    assert f.map[R.one] == S.one
    assert f.is_surjective()


def test_quotient_by_zero_is_identity():
    R = make_zmod(10)
    S, f = make_quotient(R, zero_ideal(R))
    assert S is R
    assert f.is_identity()


def test_quotient_x8_by_x4():
    R = polyx(2, 8)
    S, f = make_quotient(R, ideal_generated(R, [R.pow(R.generator, 4)]))
    assert S.size == 16
    X = S.generator
    assert S.pow(X, 4) == S.zero and S.pow(X, 3) != S.zero


def test_quotient_by_unit_ideal_rejected():
    R = make_zmod(6)
    with pytest.raises(InputError):
        make_quotient(R, ideal_generated(R, [1]))


def test_make_hom_identity_and_reduction():
    Z6 = make_zmod(6)
    assert make_hom(Z6, Z6, np.arange(6)).is_identity()
    Z4, Z2 = make_zmod(4), make_zmod(2)
    h = make_hom(Z4, Z2, [0, 1, 0, 1])
    assert h.map.tolist() == [0, 1, 0, 1]


def test_make_hom_characteristic_clash():
    with pytest.raises(ValidationError, match="additive|1"):
        make_hom(make_zmod(2), make_zmod(3), [0, 1])


def test_units_examples():
    assert as_set(unit_mask(make_zmod(6))) == {1, 5}
    R = polyx(2, 2)
    assert sorted(R.format(u) for u in units(R)) == ["1", "1+X"]
    assert set(units(make_gf(3))) == {1, 2}


def test_table_limit_and_size_cap():
    big = make_zmod(5000)
    assert big.mul(4999, 4999) == 1
    with pytest.raises(ResourceCapError):
        make_zmod(70000)


# --- properties -------------------------------------------------------------------------

small_rings = st.one_of(
    st.integers(2, 40).map(make_zmod),
    st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)]).map(lambda pk: polyx(*pk)),
)


@given(small_rings)
def test_ring_axioms_hold(R):
    check_ring_axioms(R)


@given(st.integers(2, 12), st.integers(2, 12))
def test_product_size(m, n):
    P = make_product(make_zmod(m), make_zmod(n))
    assert P.size == m * n
    check_ring_axioms(P)


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4))
def test_poly_quotient_size(p, d):
    assert polyx(p, d).size == p ** d


@given(small_rings)
def test_every_element_unit_or_zero_divisor(R):
    U = unit_mask(R)
    Z = np.zeros(R.size, dtype=bool)
    Z[list(zero_divisors(R))] = True
    assert not (U & Z).any()
    assert (U | Z).all()


@given(st.integers(2, 30), st.data())
def test_quotient_hom_equations(n, data):
    R = make_zmod(n)
    g = data.draw(st.integers(0, n - 1))
    I = ideal_generated(R, [g])
    if not I.is_proper():
        return
    S, f = make_quotient(R, I)
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert f.map[R.add(a, b)] == S.add(f.map[a], f.map[b])
    assert f.map[R.mul(a, b)] == S.mul(f.map[a], f.map[b])
