"""The localized rings R_(n,chi) = { a / chi^f }, their vectors and matrices.

Values are stored as integer numerators over one shared denominator exponent
f (the power of chi = 1 - zeta).  Canonical form means f = 0, or some nonzero
numerator has chi-adic valuation 0; then f is the sde (smallest denominator
exponent) of the value and is read off directly.

Vectors and matrices share a single exponent across entries.  For the unit
vectors and unitaries this library manipulates that is lossless (their
entries all carry the same sde); arbitrary per-entry values can still be
assembled via ``vector_from_elems`` / ``matrix_from_elems``, which pad to the
maximum exponent before canonicalizing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import (
    CycInt,
    RingSpec,
    SpecMismatch,
    chi,
    div_chi_pow,
    from_int,
    ring_spec,
    zeta_pow,
)
from .taylor import gde

__all__ = [
    "LocElem",
    "LocVector",
    "LocMatrix",
    "NotReal",
    "normalize",
    "normalize_vector",
    "normalize_matrix",
    "vector_from_elems",
    "matrix_from_elems",
    "loc_add",
    "loc_mul",
    "loc_conj",
    "identity",
    "mat_mul",
    "dagger",
    "mat_vec",
    "is_unit_vector",
    "is_unitary",
    "to_real_tau_basis",
    "tau_combination",
    "sde",
    "cyc_to_json",
    "cyc_from_json",
    "elem_to_json",
    "elem_from_json",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
]


class NotReal(ValueError):
    """Raised when a tau-basis expansion is requested for a non-real element."""


@dataclass(frozen=True)
class LocElem:
    num: CycInt
    denom_exp: int

    @property
    def spec(self) -> RingSpec:
        return self.num.spec


@dataclass(frozen=True)
class LocVector:
    spec: RingSpec
    denom_exp: int
    nums: tuple[CycInt, ...]

    @property
    def dim(self) -> int:
        return len(self.nums)


@dataclass(frozen=True)
class LocMatrix:
    spec: RingSpec
    denom_exp: int
    nums: tuple[tuple[CycInt, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.nums)

    def row(self, i: int) -> LocVector:
        return LocVector(self.spec, self.denom_exp, self.nums[i])

    def col(self, j: int) -> LocVector:
        return LocVector(self.spec, self.denom_exp, tuple(r[j] for r in self.nums))


# -- canonicalization ----------------------------------------------------------


def _common_gde(nums, cap: int) -> int:
    # min over nonzero entries of gde, clipped to cap; cap when all zero
    m = cap
    for w in nums:
        if m == 0:
            break
        if not w.is_zero():
            g = gde(w)
            if g < m:
                m = g
    return m


def normalize(num: CycInt, k: int) -> LocElem:
    """Canonical LocElem with value num / chi^k."""
    if num.is_zero():
        return LocElem(num, 0)
    d = min(k, gde(num))
    return LocElem(div_chi_pow(num, d), k - d)


def normalize_vector(nums, k: int) -> LocVector:
    nums = tuple(nums)
    spec = nums[0].spec
    d = _common_gde(nums, k)
    if d == k and all(w.is_zero() for w in nums):
        return LocVector(spec, 0, nums)
    return LocVector(spec, k - d, tuple(div_chi_pow(w, d) for w in nums))


def normalize_matrix(rows, k: int) -> LocMatrix:
    rows = tuple(tuple(r) for r in rows)
    spec = rows[0][0].spec
    flat = [w for r in rows for w in r]
    d = _common_gde(flat, k)
    if d == k and all(w.is_zero() for w in flat):
        return LocMatrix(spec, 0, rows)
    return LocMatrix(spec, k - d, tuple(tuple(div_chi_pow(w, d) for w in r) for r in rows))


def vector_from_elems(elems) -> LocVector:
    """Assemble a vector from per-entry LocElems, padding to the max exponent."""
    elems = tuple(elems)
    spec = elems[0].spec
    k = max(e.denom_exp for e in elems)
    c = chi(spec)
    nums = [e.num * c ** (k - e.denom_exp) for e in elems]
    return normalize_vector(nums, k)


def matrix_from_elems(rows) -> LocMatrix:
    rows = tuple(tuple(r) for r in rows)
    spec = rows[0][0].spec
    k = max(e.denom_exp for r in rows for e in r)
    c = chi(spec)
    nums = [[e.num * c ** (k - e.denom_exp) for e in r] for r in rows]
    return normalize_matrix(nums, k)


# -- scalar operations ---------------------------------------------------------


def _check_specs(a, b):
    if a.spec is not b.spec:
        raise SpecMismatch(f"mixing n={a.spec.n} with n={b.spec.n}")


def loc_add(a: LocElem, b: LocElem) -> LocElem:
    _check_specs(a, b)
    k = max(a.denom_exp, b.denom_exp)
    c = chi(a.spec)
    na = a.num * c ** (k - a.denom_exp)
    nb = b.num * c ** (k - b.denom_exp)
    return normalize(na + nb, k)


def loc_mul(a: LocElem, b: LocElem) -> LocElem:
    _check_specs(a, b)
    return normalize(a.num * b.num, a.denom_exp + b.denom_exp)


def _conj_num(w: CycInt, k: int) -> CycInt:
    # conj(w / chi^k) = conj(w) * (-zeta)^k / chi^k, since chi-bar = -zeta^(-1) chi
    spec = w.spec
    tw = (-zeta_pow(spec, 1)) ** (k % (2 * spec.n))
    return w.conj() * tw


def loc_conj(a: LocElem) -> LocElem:
    return LocElem(_conj_num(a.num, a.denom_exp), a.denom_exp)


# -- matrix / vector operations ------------------------------------------------


def identity(spec: RingSpec, dim: int) -> LocMatrix:
    one, zero = from_int(spec, 1), from_int(spec, 0)
    return LocMatrix(
        spec, 0, tuple(tuple(one if i == j else zero for j in range(dim)) for i in range(dim))
    )


def mat_mul(a: LocMatrix, b: LocMatrix) -> LocMatrix:
    _check_specs(a, b)
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    d = a.dim
    rows = [
        [sum((a.nums[i][k] * b.nums[k][j] for k in range(d)), from_int(a.spec, 0)) for j in range(d)]
        for i in range(d)
    ]
    return normalize_matrix(rows, a.denom_exp + b.denom_exp)


def mat_vec(a: LocMatrix, v: LocVector) -> LocVector:
    _check_specs(a, v)
    if a.dim != v.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {v.dim}")
    nums = [
        sum((a.nums[i][k] * v.nums[k] for k in range(a.dim)), from_int(a.spec, 0))
        for i in range(a.dim)
    ]
    return normalize_vector(nums, a.denom_exp + v.denom_exp)


def dagger(a: LocMatrix) -> LocMatrix:
    k = a.denom_exp
    rows = tuple(
        tuple(_conj_num(a.nums[j][i], k) for j in range(a.dim)) for i in range(a.dim)
    )
    # conjugation permutes the primes above p trivially here (chi-bar is a unit
    # multiple of chi), so canonical form is preserved without renormalizing
    return LocMatrix(a.spec, k, rows)


def is_unit_vector(v: LocVector) -> bool:
    total = sum((w.abs_sq() for w in v.nums), from_int(v.spec, 0))
    return total == chi(v.spec).abs_sq() ** v.denom_exp


def is_unitary(m: LocMatrix) -> bool:
    return mat_mul(dagger(m), m) == identity(m.spec, m.dim)


def sde(x) -> int:
    """Smallest denominator exponent of a canonical LocElem/LocVector/LocMatrix."""
    return x.denom_exp


# -- the real subring Z[tau] of Z[xi], tau = xi + xi^(-1) ----------------------


def to_real_tau_basis(x: CycInt) -> tuple[int, int, int]:
    """Write a conj-fixed element of Z[xi] as A + B*tau + C*tau^2.

    tau = xi + xi^(-1) has minimal polynomial t^3 - 3t + 1; the conj-fixed
    subring is exactly Z[tau].  Raises NotReal when conj(x) != x.
    """
    if x.spec.n != 9:
        raise ValueError("tau basis requires the degree-6 ring (n = 9)")
    if x.conj() != x:
        raise NotReal(f"{x!r} is not fixed by conjugation")
    x0, x1, x2, x3, x4, x5 = x.coeffs
    # power-basis expansion of A + B tau + C tau^2:
    #   (A + 2C, B - C, C - B, 0, -C, -B)
    c = -x4
    b = -x5
    a = x0 - 2 * c
    assert x1 == b - c and x2 == c - b and x3 == 0
    return (a, b, c)


def tau_combination(spec: RingSpec, a: int, b: int, c: int) -> CycInt:
    """Rebuild A + B*tau + C*tau^2 as an element of Z[xi] (n = 9)."""
    if spec.n != 9:
        raise ValueError("tau basis requires the degree-6 ring (n = 9)")
    tau = CycInt(spec, (0, 1, -1, 0, 0, -1))
    return from_int(spec, a) + b * tau + c * tau * tau


# -- JSON codecs (the CLI wire format) -----------------------------------------


def cyc_to_json(a: CycInt) -> dict:
    return {"ring": a.spec.n, "coeffs": list(a.coeffs)}


def cyc_from_json(d: dict) -> CycInt:
    spec = ring_spec(int(d["ring"]))
    coeffs = [int(c) for c in d["coeffs"]]
    if len(coeffs) != spec.phi:
        raise ValueError(f"ring {spec.n} needs {spec.phi} coefficients, got {len(coeffs)}")
    return CycInt(spec, coeffs)


def elem_to_json(e: LocElem) -> dict:
    d = cyc_to_json(e.num)
    d["denom_exp"] = e.denom_exp
    return d


def elem_from_json(d: dict) -> LocElem:
    return normalize(cyc_from_json(d), int(d.get("denom_exp", 0)))


def vector_to_json(v: LocVector) -> dict:
    return {
        "ring": v.spec.n,
        "denom_exp": v.denom_exp,
        "entries": [list(w.coeffs) for w in v.nums],
    }


def vector_from_json(d: dict) -> LocVector:
    spec = ring_spec(int(d["ring"]))
    nums = [CycInt(spec, [int(c) for c in row]) for row in d["entries"]]
    return normalize_vector(nums, int(d.get("denom_exp", 0)))


def matrix_to_json(m: LocMatrix) -> dict:
    return {
        "ring": m.spec.n,
        "denom_exp": m.denom_exp,
        "rows": [[list(w.coeffs) for w in row] for row in m.nums],
    }


def matrix_from_json(d: dict) -> LocMatrix:
    spec = ring_spec(int(d["ring"]))
    rows = [[CycInt(spec, [int(c) for c in w]) for w in row] for row in d["rows"]]
    return normalize_matrix(rows, int(d.get("denom_exp", 0)))
