"""Quadratic-form census of unit vectors, orthogonality, and sde-3 factoring."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclosynth.enumeration import (
    NotSde3Form,
    check_orthogonal_sde3,
    eisenstein_reps,
    enumerate_form_solutions,
    enumerate_unit_vectors,
    factor_sde3_unitary,
    quad_forms,
    quad_target,
    _rescale_unit,
)
from cyclosynth.gates import Regime, gate_matrix, sym_D, sym_H, sym_X
from cyclosynth.linalg import (
    LocVector,
    identity,
    is_unit_vector,
    is_unitary,
    mat_mul,
    sde,
    to_real_tau_basis,
)
from cyclosynth.rings import CycInt, abs_sq, from_int, ring_spec
from cyclosynth.taylor import gde

SPEC = ring_spec(9)

# census sizes: the 54 and 5832 are pinned externally; the rest were computed
# once by this enumerator and frozen (emptiness below sde 3 matches the
# residue argument that forces chi into every coordinate there)
FROZEN_EXACT_COUNTS = {0: 54, 1: 0, 2: 0, 3: 5832}


@given(coeffs=st.tuples(*([st.integers(-8, 8)] * 6)))
@settings(max_examples=150, deadline=None)
def test_quadratic_forms_match_norm_coordinates(coeffs):
    w = CycInt(SPEC, coeffs)
    assert quad_forms(coeffs) == to_real_tau_basis(abs_sq(w))


@given(m=st.integers(0, 60))
@settings(max_examples=61, deadline=None)
def test_eisenstein_representations_complete(m):
    got = eisenstein_reps(m)
    brute = [
        (u, v)
        for u in range(-m - 1, m + 2)
        for v in range(-m - 1, m + 2)
        if u * u + v * v - u * v == m
    ]
    assert got == brute


def test_pinned_targets():
    for f, mode, abc in [
        (0, "exact", (1, 0, 0)),
        (1, "exact", (2, -1, 0)),
        (2, "exact", (4, -4, 1)),
        (3, "exact", (9, -15, 6)),
        (3, "rescaled", (3, 0, 0)),
        (4, "rescaled", (6, -3, 0)),
    ]:
        t = quad_target(f, mode)
        assert (t.A, t.B, t.C) == abc
        assert t.N == t.A + 2 * t.C
    with pytest.raises(ValueError):
        quad_target(-1)
    with pytest.raises(ValueError):
        quad_target(1, "scaled")


@pytest.mark.parametrize("f", sorted(FROZEN_EXACT_COUNTS))
def test_exact_census_counts_and_properties(f):
    vecs = enumerate_unit_vectors(f, "exact")
    assert len(vecs) == FROZEN_EXACT_COUNTS[f]
    for v in vecs:
        assert is_unit_vector(v)
        assert sde(v) == f
    keys = [tuple(c for w in v.nums for c in w.coeffs) for v in vecs]
    assert keys == sorted(keys)  # deterministic lexicographic order


def test_form_solutions_sum_to_target():
    t = quad_target(3, "rescaled")
    sols = enumerate_form_solutions(3, "rescaled")
    assert len(sols) == 5832
    for s in sols[::97]:
        triple = [quad_forms(s.a), quad_forms(s.b), quad_forms(s.c)]
        assert tuple(map(sum, zip(*triple))) == (t.A, t.B, t.C)
        for coeffs in (s.a, s.b, s.c):
            assert gde(CycInt(SPEC, coeffs)) == 0


def test_rescaled_census_is_monomial():
    vecs = enumerate_unit_vectors(3, "rescaled")
    assert len(vecs) == 5832
    one = from_int(SPEC, 1)
    for v in vecs[::211]:
        for w in v.nums:
            assert abs_sq(w) == one  # each coordinate a signed root of unity


def test_low_sde_rescaled_matches_exact():
    # 3^0 scaling: identical targets, identical (empty) censuses
    for f in (1, 2):
        assert enumerate_unit_vectors(f, "rescaled") == enumerate_unit_vectors(f, "exact")


def test_unit_bijection_between_modes():
    mu = _rescale_unit(SPEC)
    exact = enumerate_unit_vectors(3, "exact")
    rescaled = enumerate_unit_vectors(3, "rescaled")
    assert {tuple(mu * w for w in v.nums) for v in exact} == {v.nums for v in rescaled}


def test_monomial_census_matches_gate_diagonals():
    # the 54 sde-0 vectors are exactly (signed power of xi) * basis vector
    vecs = enumerate_unit_vectors(0, "exact")
    zero = from_int(SPEC, 0)
    seen = set()
    for v in vecs:
        nz = [i for i, w in enumerate(v.nums) if w != zero]
        assert len(nz) == 1
        seen.add((nz[0], v.nums[nz[0]]))
    assert len(seen) == 54


def test_orthogonality_rule_on_fourier_columns():
    mu = _rescale_unit(SPEC)
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    cols = [
        LocVector(SPEC, 3, tuple(mu * h.nums[i][j] for i in range(3))) for j in range(3)
    ]
    for j, k in itertools.combinations(range(3), 2):
        assert check_orthogonal_sde3(cols[j], cols[k])
    assert not check_orthogonal_sde3(cols[0], cols[0])


def test_orthogonality_rule_against_exact_inner_product(rng):
    # the rule is checked against the exact inner product inside the call;
    # sample widely so a disagreement would trip the internal assertion
    pool = enumerate_unit_vectors(3, "rescaled")
    hits = 0
    for _ in range(2500):
        a, b = rng.choice(pool), rng.choice(pool)
        hits += check_orthogonal_sde3(a, b)
    assert hits > 0


def test_orthogonality_rejects_wrong_shape():
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    with pytest.raises(ValueError):
        check_orthogonal_sde3(h.col(0), h.col(1))  # sde 3 but not monomial shape


def test_factoring_fourier_itself():
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    (d1e, d1s), (d2e, d2s), perm = factor_sde3_unitary(h)
    assert d1e == d2e == (0, 0, 0)
    assert d1s == d2s == (1, 1, 1)
    assert perm == (0, 1, 2)


def test_factoring_round_trips(rng):
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    for _ in range(30):
        e1 = tuple(rng.randrange(9) for _ in range(3))
        s1 = tuple(rng.choice((1, -1)) for _ in range(3))
        e2 = tuple(rng.randrange(9) for _ in range(3))
        s2 = tuple(rng.choice((1, -1)) for _ in range(3))
        m = mat_mul(mat_mul(gate_matrix(sym_D(e1, s1)), h), gate_matrix(sym_D(e2, s2)))
        for _ in range(rng.randrange(3)):
            m = mat_mul(m, gate_matrix(sym_X(Regime.QUTRIT_D9)))
        (f1e, f1s), (f2e, f2s), perm = factor_sde3_unitary(m)
        rhs = mat_mul(
            mat_mul(gate_matrix(sym_D(f1e, f1s)), h), gate_matrix(sym_D(f2e, f2s))
        )
        # reconstruct M * P column by column
        for j in range(3):
            assert m.col(perm[j]) == rhs.col(j)


def test_factoring_recovers_known_diagonals():
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    m = mat_mul(mat_mul(gate_matrix(sym_D((1, 2, 3))), h), gate_matrix(sym_D((0, 1, 0))))
    (d1e, d1s), (d2e, d2s), perm = factor_sde3_unitary(m)
    assert perm == (0, 1, 2)
    assert (d1e, d2e) == ((1, 2, 3), (0, 1, 0))
    assert d1s == d2s == (1, 1, 1)


def test_factoring_rejects_unsuitable_inputs():
    with pytest.raises(NotSde3Form):
        factor_sde3_unitary(identity(SPEC, 3))
    h = gate_matrix(sym_H(Regime.QUTRIT_D9))
    from cyclosynth.linalg import LocMatrix

    not_unitary = LocMatrix(SPEC, 3, (h.nums[0], h.nums[1], h.nums[0]))
    with pytest.raises(NotSde3Form):
        factor_sde3_unitary(not_unitary)
    assert is_unitary(h)  # sanity: the pieces above came from a genuine unitary
