"""Unit-vector enumeration over the degree-6 ring via integral quadratic forms.

For w = sum a_i xi^i the real number |w|^2 lies in the totally real cubic
subring Z[tau], tau = xi + xi^-1, and its coordinates (q0, q1, q2) on the
basis 1, tau, tau^2 are integer quadratic forms in the a_i.  The unit-vector
equation sum_i |w_i|^2 = (2-tau)^f therefore becomes three integer equations
in 18 unknowns whose combination q0 + 2*q2 is positive definite: it splits
into three Eisenstein-norm blocks u^2 + v^2 - u*v pairing coefficient k with
k+3.

Enumeration walks the blockwise candidates for one coordinate, prunes by the
three real embeddings of the target (a float check with a safety margin -
exactness is restored by the integer triple equality at the join), buckets by
the exact (q0, q1, q2) triple, and joins three buckets so the triples sum to
the target.

Two right-hand sides are supported.  Exact mode targets (2-tau)^f itself and
returns genuine unit vectors.  Rescaled mode targets 3^r (2-tau)^s (f = 3r+s),
the unit-rescaled form in which the sde-3 census becomes the 5832 signed
monomial triples; its outputs are unit vectors only after multiplying by the
unit sqrt(-3)/chi^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .gates import Regime, _root_of_unity_parts, gate_matrix, sym_D, sym_H, sym_mono
from .linalg import (
    LocMatrix,
    LocVector,
    is_unit_vector,
    is_unitary,
    mat_mul,
    to_real_tau_basis,
)
from .rings import (
    CycInt,
    abs_sq,
    chi,
    conj,
    div_chi_pow,
    eval_at_one_mod_p,
    ring_spec,
    zeta_pow,
)

__all__ = [
    "QuadTarget",
    "FormSolution",
    "NotSde3Form",
    "quad_forms",
    "eisenstein_reps",
    "quad_target",
    "enumerate_form_solutions",
    "enumerate_unit_vectors",
    "check_orthogonal_sde3",
    "factor_sde3_unitary",
]


class NotSde3Form(ValueError):
    """The matrix does not factor as diagonal * Fourier * diagonal at sde 3."""


@dataclass(frozen=True)
class QuadTarget:
    """Right-hand side of the quadratic system: A + B*tau + C*tau^2, N = A+2C."""

    f: int
    mode: str
    A: int
    B: int
    C: int
    N: int


@dataclass(frozen=True)
class FormSolution:
    """Coefficient 6-tuples of the three coordinates solving the system."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]


def quad_forms(a) -> tuple[int, int, int]:
    """(q0, q1, q2) with |sum_i a_i xi^i|^2 = q0 + q1*tau + q2*tau^2.

    With alpha_k = sum_{i<=j, j-i=k} a_i a_j the reduction of xi^k + xi^-k to
    the tau power basis gives q0 = alpha0 - 2*alpha2 - alpha3 + 2*alpha4 +
    2*alpha5, q1 = alpha1 - alpha4 - alpha5, q2 = alpha2 - alpha4 - alpha5.
    """
    al = [0] * 6
    for i in range(6):
        for j in range(i, 6):
            al[j - i] += a[i] * a[j]
    q0 = al[0] - 2 * al[2] - al[3] + 2 * al[4] + 2 * al[5]
    q1 = al[1] - al[4] - al[5]
    q2 = al[2] - al[4] - al[5]
    return q0, q1, q2


def eisenstein_reps(m: int) -> list[tuple[int, int]]:
    """All integer pairs with u^2 + v^2 - u*v = m, in scan order.

    (u - v/2)^2 + (3/4) v^2 = m bounds both coordinates by 2*sqrt(m/3).
    """
    if m < 0:
        return []
    bound = math.isqrt(4 * m // 3) + 2
    return [
        (u, v)
        for u in range(-bound, bound + 1)
        for v in range(-bound, bound + 1)
        if u * u + v * v - u * v == m
    ]


def quad_target(f: int, mode: str = "exact") -> QuadTarget:
    """Target triple for sde f: (2-tau)^f exact, 3^r (2-tau)^s rescaled."""
    if f < 0:
        raise ValueError("f must be nonnegative")
    spec = ring_spec(9)
    base = abs_sq(chi(spec))  # the element 2 - tau
    if mode == "exact":
        a, b, c = to_real_tau_basis(base**f)
    elif mode == "rescaled":
        r, s = divmod(f, 3)
        a, b, c = (3**r * x for x in to_real_tau_basis(base**s))
    else:
        raise ValueError("mode must be 'exact' or 'rescaled'")
    n = a + 2 * c
    assert n >= 0
    return QuadTarget(f, mode, a, b, c, n)


# the three real embeddings tau -> 2 cos(2 pi j / 9), j in the Galois orbit
_TAU_REAL = tuple(2.0 * math.cos(2.0 * math.pi * j / 9.0) for j in (1, 2, 4))
_MARGIN = 1e-6


def _embeddings(triple) -> tuple[float, float, float]:
    q0, q1, q2 = triple
    return tuple(q0 + q1 * t + q2 * t * t for t in _TAU_REAL)


def _admissible(triple, bounds) -> bool:
    # |w|^2 is totally nonnegative and at most the target in every embedding
    return all(
        -_MARGIN <= s <= hi + _MARGIN for s, hi in zip(_embeddings(triple), bounds)
    )


def _coordinate_buckets(target: QuadTarget) -> dict:
    """Map exact (q0,q1,q2) triples to the coefficient 6-tuples achieving them.

    Block k of a coordinate pairs coefficients (a_k, a_{k+3}); a coordinate is
    assembled from three blocks whose Eisenstein norms sum to at most N.
    """
    blocks = [
        (u, v, m) for m in range(target.N + 1) for (u, v) in eisenstein_reps(m)
    ]
    bounds = _embeddings((target.A, target.B, target.C))
    buckets: dict = {}
    for u0, v0, m0 in blocks:
        for u1, v1, m1 in blocks:
            if m0 + m1 > target.N:
                continue
            rest = target.N - m0 - m1
            for u2, v2, m2 in blocks:
                if m2 > rest:
                    continue
                coeffs = (u0, u1, u2, v0, v1, v2)
                triple = quad_forms(coeffs)
                if _admissible(triple, bounds):
                    buckets.setdefault(triple, []).append(coeffs)
    return buckets


def enumerate_form_solutions(f: int, mode: str = "exact") -> list[FormSolution]:
    """All coefficient triples with quadratic-form triples summing to target.

    For f >= 1 every coordinate must additionally be coprime to chi (value at
    1 nonzero mod 3): this removes chi-multiples of lower-sde solutions, so
    exact-mode survivors have sde exactly f and rescaled-mode survivors are
    the unit-rescaled census (e.g. it is what cuts the f = 3 rescaled list
    down to the 5832 monomial triples, excluding the likes of (1 - xi^3, 0, 0)
    whose norm also equals 3).
    """
    spec = ring_spec(9)
    target = quad_target(f, mode)
    buckets = _coordinate_buckets(target)
    keys = sorted(buckets)
    want = (target.A, target.B, target.C)
    coprime: dict = {}

    def _is_coprime(coeffs) -> bool:
        got = coprime.get(coeffs)
        if got is None:
            got = eval_at_one_mod_p(CycInt(spec, coeffs)) != 0
            coprime[coeffs] = got
        return got

    out = []
    for ka in keys:
        for kb in keys:
            kc = (want[0] - ka[0] - kb[0], want[1] - ka[1] - kb[1], want[2] - ka[2] - kb[2])
            if kc not in buckets:
                continue
            for ca in buckets[ka]:
                if f >= 1 and not _is_coprime(ca):
                    continue
                for cb in buckets[kb]:
                    if f >= 1 and not _is_coprime(cb):
                        continue
                    for cc in buckets[kc]:
                        if f >= 1 and not _is_coprime(cc):
                            continue
                        out.append(FormSolution(ca, cb, cc))
    out.sort(key=lambda s: s.a + s.b + s.c)
    return out


def enumerate_unit_vectors(f: int, mode: str = "exact") -> list[LocVector]:
    """Canonical vectors (w1,w2,w3)/chi^f for every form solution.

    Exact mode asserts the unit-vector identity on each output (it holds by
    construction; the assert guards the float prune).  Rescaled outputs
    satisfy the rescaled norm equation instead and are unit vectors only
    after multiplication by the appropriate unit.
    """
    spec = ring_spec(9)
    sols = enumerate_form_solutions(f, mode)
    out = []
    for s in sols:
        nums = tuple(CycInt(spec, c) for c in (s.a, s.b, s.c))
        v = LocVector(spec, f, nums)
        if mode == "exact":
            assert is_unit_vector(v)
        out.append(v)
    return out


# -- sde-3 monomial-shape classification ------------------------------------------


def _monomial_shape(z: LocVector):
    """(signs, exps) for a vector (+-xi^e1, +-xi^e2, +-xi^e3)/chi^3."""
    if z.spec.n != 9 or z.denom_exp != 3:
        raise ValueError("expected denominator exponent 3 over the degree-6 ring")
    signs, exps = [], []
    for w in z.nums:
        parts = _root_of_unity_parts(w)
        if parts is None:
            raise ValueError("coordinate is not a signed power of xi")
        signs.append(parts[0])
        exps.append(parts[1])
    return signs, exps


def check_orthogonal_sde3(z1: LocVector, z2: LocVector) -> bool:
    """Orthogonality of two monomial-shape sde-3 vectors, two ways.

    The inner product sum_i s_i xi^(c_i) of signed monomials vanishes exactly
    when all three sign products agree and the exponent differences form a
    rotated copy of {0, 3, 6} (the only length-3 vanishing sums of 18th roots
    of unity are 1 + omega + omega^2 scaled); the exponent rule is checked
    against the exact inner product before returning.
    """
    s1, e1 = _monomial_shape(z1)
    s2, e2 = _monomial_shape(z2)
    spec = z1.spec
    cs = [(a - b) % 9 for a, b in zip(e1, e2)]
    sgn = [x * y for x, y in zip(s1, s2)]
    pq = sorted(((cs[1] - cs[0]) % 9, (cs[2] - cs[0]) % 9))
    rule = len(set(sgn)) == 1 and pq == [3, 6]
    inner = sum(
        (s * zeta_pow(spec, c) for s, c in zip(sgn, cs)),
        start=CycInt(spec, (0,) * 6),
    )
    assert rule == inner.is_zero()
    return rule


def _rescale_unit(spec) -> CycInt:
    # sqrt(-3) = xi^3 - xi^6 has gde 3; dividing by chi^3 leaves a unit
    root = zeta_pow(spec, 3) - zeta_pow(spec, 6)
    return div_chi_pow(root, 3)


def factor_sde3_unitary(m: LocMatrix):
    """Factor an sde-3 unitary as M * P = D1 * H * D2 with sde-0 diagonals.

    Multiplying the numerators by the unit sqrt(-3)/chi^3 turns the Fourier
    prefactor into 1, so each entry must become a signed power of xi; the
    diagonal parameters are then read off a column and a row, checked against
    the omega^(i*j) pattern for each of the six column permutations, and the
    winning factorization is verified by exact matrix reconstruction.

    Returns ((d1_exps, d1_signs), (d2_exps, d2_signs), perm) where perm maps
    new column j to original column perm[j] (P[i][j] = 1 iff i = perm[j]).
    """
    spec = m.spec
    if spec.n != 9:
        raise NotSde3Form("expected a matrix over the degree-6 ring")
    if not is_unitary(m):
        raise NotSde3Form("matrix is not exactly unitary")
    if m.denom_exp != 3:
        raise NotSde3Form(f"sde is {m.denom_exp}, not 3")
    mu = _rescale_unit(spec)
    parts = [[_root_of_unity_parts(mu * m.nums[i][j]) for j in range(3)] for i in range(3)]
    if any(p is None for row in parts for p in row):
        raise NotSde3Form("an entry is not a unit multiple of a power of xi")
    for perm in permutations(range(3)):
        d1 = [parts[i][perm[0]] for i in range(3)]
        s0, e0 = d1[0]
        d2 = [(s0 * s, (e - e0) % 9) for s, e in (parts[0][perm[j]] for j in range(3))]
        if all(
            parts[i][perm[j]] == (d1[i][0] * d2[j][0], (d1[i][1] + d2[j][1] + 3 * i * j) % 9)
            for i in range(3)
            for j in range(3)
        ):
            d1_exps = tuple(e for _, e in d1)
            d1_signs = tuple(s for s, _ in d1)
            d2_exps = tuple(e for _, e in d2)
            d2_signs = tuple(s for s, _ in d2)
            p = gate_matrix(sym_mono(Regime.QUTRIT_D9, perm, (0, 0, 0), (1, 1, 1)))
            rhs = mat_mul(
                mat_mul(
                    gate_matrix(sym_D(d1_exps, d1_signs)),
                    gate_matrix(sym_H(Regime.QUTRIT_D9)),
                ),
                gate_matrix(sym_D(d2_exps, d2_signs)),
            )
            assert mat_mul(m, p) == rhs
            return (d1_exps, d1_signs), (d2_exps, d2_signs), perm
    raise NotSde3Form("no column permutation matches the Fourier pattern")
