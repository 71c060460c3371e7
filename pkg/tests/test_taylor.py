"""Derivative vectors mod p, the divisibility criterion, and the valuation gde."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclosynth.rings import (
    CycInt,
    NotDivisible,
    chi,
    div_chi_pow,
    from_int,
    ring_spec,
)
from cyclosynth.taylor import (
    derivs_mod_p,
    gde,
    gde_oracle,
    phi_derivative_table,
    taylor_mod_p,
)

RINGS = (3, 8, 9)


def elements(n: int, lo: int = -50, hi: int = 50):
    spec = ring_spec(n)
    return st.lists(
        st.integers(lo, hi), min_size=spec.phi, max_size=spec.phi
    ).map(lambda cs: CycInt(spec, tuple(cs)))


@pytest.mark.parametrize("n", RINGS)
@given(data=st.data())
@settings(max_examples=200, deadline=None)
def test_gde_matches_division_oracle(n, data):
    a = data.draw(elements(n))
    if a.is_zero():
        return
    assert gde(a) == gde_oracle(a)


@pytest.mark.parametrize("n", RINGS)
@given(data=st.data())
@settings(max_examples=150, deadline=None)
def test_leading_zero_criterion_matches_exact_division(n, data):
    a = data.draw(elements(n))
    if a.is_zero():
        return
    spec = ring_spec(n)
    entries = taylor_mod_p(a).entries
    for k in range(1, spec.phi + 1):
        criterion = all(e == 0 for e in entries[:k])
        try:
            div_chi_pow(a, k)
            divisible = True
        except NotDivisible:
            divisible = False
        assert criterion == divisible


@pytest.mark.parametrize("n", RINGS)
@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_taylor_map_is_linear(n, data):
    a = data.draw(elements(n))
    b = data.draw(elements(n))
    p = a.spec.p
    ta, tb, ts = taylor_mod_p(a).entries, taylor_mod_p(b).entries, taylor_mod_p(a + b).entries
    assert ts == tuple((x + y) % p for x, y in zip(ta, tb))


@pytest.mark.parametrize("n", RINGS)
@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_alternating_sign_between_taylor_and_derivatives(n, data):
    a = data.draw(elements(n))
    p = a.spec.p
    tv = taylor_mod_p(a).entries
    dv = derivs_mod_p(a)
    assert tv == tuple(((-1) ** k * d) % p for k, d in enumerate(dv))


@pytest.mark.parametrize("n", RINGS)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_gde_shifts_under_chi_multiplication(n, data):
    a = data.draw(elements(n, -9, 9))
    if a.is_zero():
        return
    k = data.draw(st.integers(0, 3))
    assert gde(a * chi(a.spec) ** k) == gde(a) + k


def test_pinned_valuations():
    assert gde(CycInt(ring_spec(9), (1, 1, 1, 0, 0, 0))) == 2
    assert gde(from_int(ring_spec(8), 2)) == 4
    assert gde(from_int(ring_spec(3), 3)) == 2
    assert gde(from_int(ring_spec(9), 3)) == 6
    for n in RINGS:
        spec = ring_spec(n)
        assert gde(from_int(spec, spec.p)) == spec.phi
        assert gde(chi(spec)) == 1
        assert gde(from_int(spec, 1)) == 0


def test_gde_rejects_zero():
    spec = ring_spec(9)
    zero = from_int(spec, 0)
    with pytest.raises(ValueError):
        gde(zero)
    with pytest.raises(ValueError):
        gde_oracle(zero)


def test_minimal_polynomial_derivative_table():
    table = phi_derivative_table(9)
    assert table == (9, 36, 21, 15, 6, 1)
    assert all(v % 3 == 0 for v in table[:-1])
    assert table[-1] == 1


def test_derivative_table_other_rings_are_consistent():
    # entry k is Phi^(k)(1)/k! except for the pinned ring-9 second entry;
    # the small rings have no pin, so check them against the direct formula
    from math import comb

    for n, coeffs in ((3, (1, 1, 1)), (8, (1, 0, 0, 0, 1))):
        phi = len(coeffs) - 1
        want = tuple(
            sum(c * comb(i, k) for i, c in enumerate(coeffs)) for k in range(1, phi + 1)
        )
        assert phi_derivative_table(n) == want
        assert phi_derivative_table(n)[-1] == 1
