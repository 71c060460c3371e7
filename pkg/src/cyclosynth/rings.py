"""Exact arithmetic in Z[zeta_n] for n in {3, 8, 9}.

Elements are integer vectors over the power basis 1, zeta, ..., zeta^(phi-1)
(phi = euler phi of n), reduced through the minimal polynomial of zeta_n:

    n = 3:  omega^2 = -1 - omega
    n = 8:  zeta^4  = -1
    n = 9:  xi^6    = -1 - xi^3

Throughout, chi = 1 - zeta generates the unique prime above p (p = 3 for the
odd rings, p = 2 for n = 8), and p = p_unit(spec) * chi^phi.  Everything is
exact; coefficients are unbounded Python ints.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "RingSpec",
    "CycInt",
    "SpecMismatch",
    "NotDivisible",
    "ring_spec",
    "reduce_poly",
    "from_int",
    "zeta_pow",
    "add",
    "sub",
    "neg",
    "mul",
    "conj",
    "chi",
    "try_div_chi",
    "div_chi_pow",
    "div_int",
    "p_unit",
    "abs_sq",
    "eval_at_one_mod_p",
    "to_complex",
]

_VALID_N = (3, 8, 9)


class SpecMismatch(ValueError):
    """Raised when operands live in different rings."""


class NotDivisible(ArithmeticError):
    """Raised when an exact division has a remainder."""


def _inverse_times_det(m: list[list[int]]) -> tuple[list[list[int]], int]:
    # Exact adjugate (det * inverse) of a small integer matrix, via
    # Fraction-valued Gauss-Jordan.  Only runs once per ring.
    size = len(m)
    aug = [
        [Fraction(m[i][j]) for j in range(size)]
        + [Fraction(1 if i == j else 0) for j in range(size)]
        for i in range(size)
    ]
    det = Fraction(1)
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        det *= aug[col][col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    adj = [[aug[i][size + j] * det for j in range(size)] for i in range(size)]
    if any(x.denominator != 1 for row in adj for x in row):
        raise AssertionError("adjugate of an integer matrix must be integral")
    return [[int(x) for x in row] for row in adj], int(det)


class RingSpec:
    """Immutable description of one of the three admitted rings.

    Attributes: n (root-of-unity order), p (ramified prime), l (n = p**l),
    phi (degree of the ring over Z).  Instances are interned: use
    ``ring_spec(n)`` and compare with ``is`` or ``==`` interchangeably.
    """

    __slots__ = (
        "n",
        "p",
        "l",
        "phi",
        "_conj_rows",
        "_chi_adj",
        "_chi_det",
        "_taylor_rows",
        "_deriv_rows",
        "_p_unit",
    )

    def __init__(self, n: int):
        if n not in _VALID_N:
            raise ValueError(f"unsupported ring order {n}; expected one of {_VALID_N}")
        self.n = n
        self.p = 2 if n == 8 else 3
        self.l = {3: 1, 8: 3, 9: 2}[n]
        self.phi = (n // self.p) * (self.p - 1)

        # conj(zeta^i) = zeta^((n-1) i mod n), reduced to the power basis
        self._conj_rows = tuple(
            _reduce_raw(self, {((self.n - 1) * i) % self.n: 1}) for i in range(self.phi)
        )

        # multiplication-by-chi matrix: column j = coefficients of (1-zeta)*zeta^j
        cols = [
            _reduce_raw(self, {j % self.n: 1, (j + 1) % self.n: -1})
            for j in range(self.phi)
        ]
        m = [[cols[j][i] for j in range(self.phi)] for i in range(self.phi)]
        self._chi_adj, self._chi_det = _inverse_times_det(m)

        # rows of the two derivative transforms at x = 1, mod p:
        #   taylor: entry k of the (1-x)-expansion, (-1)^k * C(i, k)
        #   deriv:  true normalized derivative f^(k)(1)/k!,      C(i, k)
        self._taylor_rows = tuple(
            tuple(((-1) ** k * comb(i, k)) % self.p for i in range(self.phi))
            for k in range(self.phi)
        )
        self._deriv_rows = tuple(
            tuple(comb(i, k) % self.p for i in range(self.phi))
            for k in range(self.phi)
        )
        self._p_unit = None  # filled lazily by p_unit()

    def __repr__(self) -> str:
        return f"RingSpec(n={self.n})"

    def __reduce__(self):  # keep interning across pickling
        return (ring_spec, (self.n,))


@lru_cache(maxsize=None)
def ring_spec(n: int) -> RingSpec:
    return RingSpec(n)


def _reduce_raw(spec: RingSpec, terms: dict[int, int]) -> tuple[int, ...]:
    # terms: exponent -> coefficient, exponents arbitrary; fold zeta^n = 1
    # first, then clear degrees phi..n-1 by one descending pass of the
    # minimal-polynomial rule.
    acc = [0] * spec.n
    for e, c in terms.items():
        acc[e % spec.n] += c
    n = spec.n
    if n == 9:
        for i in range(8, 5, -1):  # xi^i = -xi^(i-6) - xi^(i-3)
            t = acc[i]
            if t:
                acc[i] = 0
                acc[i - 6] -= t
                acc[i - 3] -= t
    elif n == 8:
        for i in range(7, 3, -1):  # zeta^i = -zeta^(i-4)
            t = acc[i]
            if t:
                acc[i] = 0
                acc[i - 4] -= t
    else:  # n == 3, omega^2 = -1 - omega
        t = acc[2]
        if t:
            acc[2] = 0
            acc[0] -= t
            acc[1] -= t
    return tuple(acc[: spec.phi])


class CycInt:
    """An element of Z[zeta_n], held reduced on the power basis."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: RingSpec, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.phi:
            raise ValueError(
                f"need exactly {spec.phi} coefficients for n={spec.n}, got {len(coeffs)}"
            )
        self.spec = spec
        self.coeffs = coeffs

    # -- structural ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.spec is other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec.n, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(n={self.spec.n}, {list(self.coeffs)})"

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, int):
            return from_int(self.spec, other)
        if isinstance(other, CycInt):
            if other.spec is not self.spec:
                raise SpecMismatch(f"mixing n={self.spec.n} with n={other.spec.n}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.spec, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.spec, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return CycInt(self.spec, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.spec, tuple(a * other for a in self.coeffs))
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.spec is not self.spec:
            raise SpecMismatch(f"mixing n={self.spec.n} with n={other.spec.n}")
        a, b = self.coeffs, other.coeffs
        conv: dict[int, int] = {}
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] = conv.get(i + j, 0) + ai * bj
        return CycInt(self.spec, _reduce_raw(self.spec, conv))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        out = from_int(self.spec, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- ring-specific -------------------------------------------------------

    def conj(self) -> "CycInt":
        """Complex conjugate: zeta -> zeta^(n-1)."""
        acc = [0] * self.spec.phi
        for i, c in enumerate(self.coeffs):
            if c:
                row = self.spec._conj_rows[i]
                for k in range(self.spec.phi):
                    acc[k] += c * row[k]
        return CycInt(self.spec, acc)

    def abs_sq(self) -> "CycInt":
        return self * self.conj()

    def to_complex(self) -> complex:
        """Float image under zeta -> exp(2 pi i / n); sanity checks only."""
        z = cmath.exp(2j * cmath.pi / self.spec.n)
        acc = 0j
        pw = 1 + 0j
        for c in self.coeffs:
            acc += c * pw
            pw *= z
        return acc


# -- module-level operations (the stable public surface) ----------------------


def reduce_poly(spec: RingSpec, coeffs) -> CycInt:
    """Reduce an integer coefficient list of arbitrary length (power basis)."""
    return CycInt(spec, _reduce_raw(spec, {i: c for i, c in enumerate(coeffs)}))


def from_int(spec: RingSpec, x: int) -> CycInt:
    return CycInt(spec, (x,) + (0,) * (spec.phi - 1))


def zeta_pow(spec: RingSpec, k: int) -> CycInt:
    """zeta^k, any integer k (negative exponents wrap: zeta^n = 1)."""
    return CycInt(spec, _reduce_raw(spec, {k % spec.n: 1}))


def add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def sub(a: CycInt, b: CycInt) -> CycInt:
    return a - b


def neg(a: CycInt) -> CycInt:
    return -a


def mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def conj(a: CycInt) -> CycInt:
    return a.conj()


def abs_sq(a: CycInt) -> CycInt:
    return a.abs_sq()


def chi(spec: RingSpec) -> CycInt:
    """chi = 1 - zeta, the generator of the ramified prime above p."""
    return CycInt(spec, _reduce_raw(spec, {0: 1, 1: -1}))


def try_div_chi(a: CycInt) -> CycInt:
    """Exact quotient a / chi, or raise NotDivisible.

    Solves the phi x phi integer system (multiplication by chi) through its
    precomputed adjugate: a/chi is integral iff det = +-N(chi) = +-p divides
    every entry of adj * a, and then the quotients are the coefficients.
    """
    spec = a.spec
    adj, det = spec._chi_adj, spec._chi_det
    out = []
    for i in range(spec.phi):
        s = 0
        row = adj[i]
        for j, c in enumerate(a.coeffs):
            if c:
                s += row[j] * c
        q, r = divmod(s, det)
        if r:
            raise NotDivisible(f"chi does not divide {a!r}")
        out.append(q)
    return CycInt(spec, out)


def div_chi_pow(a: CycInt, k: int) -> CycInt:
    """Exact quotient a / chi^k (k >= 0); NotDivisible if any stage fails."""
    for _ in range(k):
        a = try_div_chi(a)
    return a


def div_int(a: CycInt, m: int) -> CycInt:
    """Exact coefficientwise quotient a / m, or raise NotDivisible."""
    out = []
    for c in a.coeffs:
        q, r = divmod(c, m)
        if r:
            raise NotDivisible(f"{m} does not divide {a!r}")
        out.append(q)
    return CycInt(a.spec, out)


def p_unit(spec: RingSpec) -> CycInt:
    """The unit u with p = u * chi^phi, computed by phi exact chi-divisions."""
    if spec._p_unit is None:
        u = from_int(spec, spec.p)
        for _ in range(spec.phi):
            u = try_div_chi(u)
        spec._p_unit = u
    return spec._p_unit


def eval_at_one_mod_p(a: CycInt) -> int:
    """f(1) mod p — the residue of a modulo the prime (chi)."""
    return sum(a.coeffs) % a.spec.p


def to_complex(a: CycInt) -> complex:
    return a.to_complex()
