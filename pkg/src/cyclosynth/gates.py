"""Gate alphabets for the three synthesis regimes, and the word grammar.

Regimes and their rings:

    QUBIT8    — single qubit over Z[zeta_8]:    H, T^k
    QUTRIT_R3 — single qutrit over Z[omega]:    H, S, X, R, Dw[a,b,c], Rs[b,b,b]
    QUTRIT_D9 — single qutrit over Z[xi]:       H, X, R, D[+-a,+-b,+-c]

plus the terminal monomial gate M(perm;phases;signs), available in every
regime, whose matrix has exactly one nonzero entry sign_j * zeta^(phase_j)
per column j, in row perm[j].

A word "g1 g2 ... gm" denotes the product g1 * g2 * ... * gm — leftmost
symbol is the leftmost matrix factor, so the rightmost gate acts first on a
column vector.

Scalar prefactors are realized exactly: the qubit 1/sqrt(2) through
sqrt(2) = zeta^2 (1-zeta)(1-zeta^3), the omega-qutrit 1/sqrt(-3) through
sqrt(-3) = omega (1-omega), and the xi-qutrit 1/sqrt(-3) through
sqrt(-3) = xi^3 (1-xi^3), which has chi-adic valuation 3.
"""

from __future__ import annotations

import json
import os
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations, product

from .linalg import LocMatrix, identity, is_unitary, mat_mul
from .rings import CycInt, RingSpec, chi, div_int, from_int, ring_spec, zeta_pow

__all__ = [
    "Regime",
    "GateSym",
    "GateWord",
    "NotMonomial",
    "TableIncomplete",
    "WordSyntaxError",
    "sym_H",
    "sym_T",
    "sym_S",
    "sym_X",
    "sym_R",
    "sym_Dw",
    "sym_Rs",
    "sym_D",
    "sym_mono",
    "gate_matrix",
    "word_to_matrix",
    "parse_word",
    "print_word",
    "matrix_key",
    "monomial_targets",
    "build_monomial_table",
    "monomial_table",
    "monomial_decompose",
    "random_word",
    "DEPTH_CAP",
]

DEPTH_CAP = 14


class Regime(Enum):
    QUBIT8 = "qubit"
    QUTRIT_R3 = "qutrit-r"
    QUTRIT_D9 = "qutrit-d"

    @property
    def ring(self) -> int:
        return {Regime.QUBIT8: 8, Regime.QUTRIT_R3: 3, Regime.QUTRIT_D9: 9}[self]

    @property
    def dim(self) -> int:
        return 2 if self is Regime.QUBIT8 else 3

    @property
    def spec(self) -> RingSpec:
        return ring_spec(self.ring)

    @classmethod
    def from_string(cls, s: str) -> "Regime":
        for r in cls:
            if r.value == s:
                return r
        raise ValueError(f"unknown regime {s!r}; expected one of "
                         + ", ".join(r.value for r in cls))


class NotMonomial(ValueError):
    """The matrix is not a signed-monomial (permutation-times-phases) matrix."""


class TableIncomplete(RuntimeError):
    """A monomial target was not reached by the word BFS at the depth cap."""

    def __init__(self, regime: "Regime", depth: int):
        self.regime = regime
        self.depth = depth
        super().__init__(f"monomial table for {regime.value} incomplete at depth {depth}")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


_KINDS = {
    Regime.QUBIT8: ("H", "T", "M"),
    Regime.QUTRIT_R3: ("H", "S", "X", "R", "Dw", "Rs", "M"),
    Regime.QUTRIT_D9: ("H", "X", "R", "D", "M"),
}


@dataclass(frozen=True)
class GateSym:
    regime: Regime
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS[self.regime]:
            raise ValueError(f"gate {self.kind!r} is not in the {self.regime.value} alphabet")


@dataclass(frozen=True)
class GateWord:
    regime: Regime
    syms: tuple[GateSym, ...] = ()

    def __post_init__(self):
        for s in self.syms:
            if s.regime is not self.regime:
                raise ValueError("mixed-regime word")

    def __len__(self) -> int:
        return len(self.syms)

    def __add__(self, other: "GateWord") -> "GateWord":
        if other.regime is not self.regime:
            raise ValueError("mixed-regime concatenation")
        return GateWord(self.regime, self.syms + other.syms)


# -- symbol factories (exponents folded into canonical ranges) -----------------


def sym_H(regime: Regime) -> GateSym:
    return GateSym(regime, "H")


def sym_T(k: int) -> GateSym:
    return GateSym(Regime.QUBIT8, "T", (k % 8,))


def sym_S() -> GateSym:
    return GateSym(Regime.QUTRIT_R3, "S")


def sym_X(regime: Regime) -> GateSym:
    return GateSym(regime, "X")


def sym_R(regime: Regime) -> GateSym:
    return GateSym(regime, "R")


def sym_Dw(a0: int, a1: int, a2: int) -> GateSym:
    return GateSym(Regime.QUTRIT_R3, "Dw", (a0 % 3, a1 % 3, a2 % 3))


def sym_Rs(b0: int, b1: int, b2: int) -> GateSym:
    if not all(b in (0, 1) for b in (b0, b1, b2)):
        raise ValueError("Rs parameters must be 0 or 1")
    return GateSym(Regime.QUTRIT_R3, "Rs", (b0, b1, b2))


def sym_D(exps, signs=(1, 1, 1)) -> GateSym:
    exps = tuple(e % 9 for e in exps)
    signs = tuple(signs)
    if len(exps) != 3 or len(signs) != 3 or not all(s in (1, -1) for s in signs):
        raise ValueError("D takes three exponents and three signs +-1")
    return GateSym(Regime.QUTRIT_D9, "D", exps + signs)


def sym_mono(regime: Regime, perm, phases, signs) -> GateSym:
    n, dim = regime.ring, regime.dim
    perm = tuple(perm)
    phases = tuple(p % n for p in phases)
    signs = tuple(signs)
    if sorted(perm) != list(range(dim)):
        raise ValueError(f"perm must permute 0..{dim - 1}")
    if len(phases) != dim or len(signs) != dim or not all(s in (1, -1) for s in signs):
        raise ValueError("phases/signs arity mismatch")
    return GateSym(regime, "M", (perm, phases, signs))


# -- exact gate matrices --------------------------------------------------------


@lru_cache(maxsize=None)
def _qubit_h_num() -> CycInt:
    # (1/sqrt 2) = v / chi^2 with  v = sqrt(2) * chi^2 / 2,  gde(v) = 0
    spec = ring_spec(8)
    sqrt2 = zeta_pow(spec, 2) * (from_int(spec, 1) - zeta_pow(spec, 1)) * (
        from_int(spec, 1) - zeta_pow(spec, 3)
    )
    return div_int(sqrt2 * chi(spec) ** 2, 2)


@lru_cache(maxsize=None)
def _qutrit9_h_num() -> CycInt:
    # (1/sqrt(-3)) = w / chi^3 with  w = -chi^3 * sqrt(-3) / 3,  gde(w) = 0
    spec = ring_spec(9)
    sqrt_m3 = zeta_pow(spec, 3) * (from_int(spec, 1) - zeta_pow(spec, 3))
    return div_int(-(chi(spec) ** 3 * sqrt_m3), 3)


def _diag(spec: RingSpec, entries) -> LocMatrix:
    zero = from_int(spec, 0)
    dim = len(entries)
    return LocMatrix(
        spec, 0, tuple(tuple(entries[i] if i == j else zero for j in range(dim)) for i in range(dim))
    )


@lru_cache(maxsize=None)
def gate_matrix(g: GateSym) -> LocMatrix:
    spec = g.regime.spec
    zero = from_int(spec, 0)
    if g.kind == "H":
        if g.regime is Regime.QUBIT8:
            v = _qubit_h_num()
            return LocMatrix(spec, 2, ((v, v), (v, -v)))
        if g.regime is Regime.QUTRIT_R3:
            # (1/sqrt(-3)) = omega^2 / chi, so the numerators are omega^(2+jk)
            rows = tuple(
                tuple(zeta_pow(spec, 2 + j * k) for k in range(3)) for j in range(3)
            )
            return LocMatrix(spec, 1, rows)
        w = _qutrit9_h_num()
        rows = tuple(
            tuple(w * zeta_pow(spec, 3 * j * k) for k in range(3)) for j in range(3)
        )
        return LocMatrix(spec, 3, rows)
    if g.kind == "T":
        (k,) = g.params
        return _diag(spec, (from_int(spec, 1), zeta_pow(spec, k)))
    if g.kind == "S":
        return _diag(spec, (from_int(spec, 1), zeta_pow(spec, 1), from_int(spec, 1)))
    if g.kind == "X":
        one = from_int(spec, 1)
        return LocMatrix(spec, 0, ((zero, zero, one), (one, zero, zero), (zero, one, zero)))
    if g.kind == "R":
        one = from_int(spec, 1)
        return _diag(spec, (one, one, -one))
    if g.kind == "Dw":
        return _diag(spec, tuple(zeta_pow(spec, a) for a in g.params))
    if g.kind == "Rs":
        return _diag(spec, tuple(from_int(spec, (-1) ** b) for b in g.params))
    if g.kind == "D":
        a = g.params[:3]
        s = g.params[3:]
        return _diag(spec, tuple(si * zeta_pow(spec, ai) for ai, si in zip(a, s)))
    if g.kind == "M":
        perm, phases, signs = g.params
        dim = g.regime.dim
        rows = [[zero] * dim for _ in range(dim)]
        for j in range(dim):
            rows[perm[j]][j] = signs[j] * zeta_pow(spec, phases[j])
        return LocMatrix(spec, 0, tuple(tuple(r) for r in rows))
    raise AssertionError(f"unhandled gate kind {g.kind}")


def word_to_matrix(w: GateWord) -> LocMatrix:
    m = identity(w.regime.spec, w.regime.dim)
    for s in w.syms:
        m = mat_mul(m, gate_matrix(s))
    return m


# -- word grammar ---------------------------------------------------------------

_SIGNED = re.compile(r"([+-]?)(\d+)$")

_TOKEN_RES = {
    "T": re.compile(r"T\^(-?\d+)$"),
    "Dw": re.compile(r"Dw\[(-?\d+),(-?\d+),(-?\d+)\]$"),
    "Rs": re.compile(r"Rs\[([01]),([01]),([01])\]$"),
    "D": re.compile(r"D\[([+-]?\d+),([+-]?\d+),([+-]?\d+)\]$"),
    "M": re.compile(r"M\((\d+);(-?\d+(?:,-?\d+)*);([+-]+)\)$"),
}

# which regimes admit each token shape; used for inference
_TOKEN_REGIMES = {
    "H": (Regime.QUBIT8, Regime.QUTRIT_R3, Regime.QUTRIT_D9),
    "S": (Regime.QUTRIT_R3,),
    "X": (Regime.QUTRIT_R3, Regime.QUTRIT_D9),
    "R": (Regime.QUTRIT_R3, Regime.QUTRIT_D9),
    "T": (Regime.QUBIT8,),
    "Dw": (Regime.QUTRIT_R3,),
    "Rs": (Regime.QUTRIT_R3,),
    "D": (Regime.QUTRIT_D9,),
}


def _classify_token(tok: str, pos: int):
    if tok in ("H", "S", "X", "R"):
        return tok, ()
    for kind, rx in _TOKEN_RES.items():
        m = rx.match(tok)
        if m:
            return kind, m.groups()
    raise WordSyntaxError(f"unrecognized token {tok!r}", pos)


def parse_word(text: str, regime: Regime | None = None) -> GateWord:
    """Parse whitespace-separated gate tokens into a word.

    The regime is inferred from the tokens when unambiguous; pass ``regime``
    to pin it (required for the empty word and for words over {H, X, R}
    alone, which two or three regimes admit).
    """
    toks = [(m.group(), m.start()) for m in re.finditer(r"\S+", text)]
    classified = [(tok, pos) + _classify_token(tok, pos) for tok, pos in toks]

    candidates = set(Regime)
    for tok, pos, kind, _groups in classified:
        if kind == "M":
            digits = _TOKEN_RES["M"].match(tok).group(1)
            allowed = {r for r in Regime if r.dim == len(digits)}
        else:
            allowed = set(_TOKEN_REGIMES[kind])
        candidates &= allowed
        if not candidates:
            raise WordSyntaxError(f"token {tok!r} fits no regime consistent with the rest", pos)
    if regime is not None:
        if regime not in candidates:
            for tok, pos, kind, _groups in classified:
                if kind == "M":
                    digits = _TOKEN_RES["M"].match(tok).group(1)
                    allowed = {r for r in Regime if r.dim == len(digits)}
                else:
                    allowed = set(_TOKEN_REGIMES[kind])
                if regime not in allowed:
                    raise WordSyntaxError(
                        f"token {tok!r} is not in the {regime.value} alphabet", pos
                    )
            raise WordSyntaxError("word fits no single regime", 0)
    elif len(candidates) == 1:
        regime = candidates.pop()
    else:
        raise WordSyntaxError(
            "regime is ambiguous for this word; specify it explicitly", 0
        )

    syms = []
    for tok, pos, kind, groups in classified:
        if kind == "H":
            syms.append(sym_H(regime))
        elif kind == "S":
            syms.append(sym_S())
        elif kind == "X":
            syms.append(sym_X(regime))
        elif kind == "R":
            syms.append(sym_R(regime))
        elif kind == "T":
            syms.append(sym_T(int(groups[0])))
        elif kind == "Dw":
            syms.append(sym_Dw(*(int(x) for x in groups)))
        elif kind == "Rs":
            syms.append(sym_Rs(*(int(x) for x in groups)))
        elif kind == "D":
            exps, signs = [], []
            for comp in groups:
                sgn, digits = _SIGNED.match(comp).groups()
                signs.append(-1 if sgn == "-" else 1)
                exps.append(int(digits))
            syms.append(sym_D(exps, signs))
        else:  # M
            digits, phasestr, signstr = groups
            perm = tuple(int(c) for c in digits)
            phases = tuple(int(x) for x in phasestr.split(","))
            signs = tuple(1 if c == "+" else -1 for c in signstr)
            if len(phases) != len(perm) or len(signs) != len(perm):
                raise WordSyntaxError(f"monomial arity mismatch in {tok!r}", pos)
            try:
                syms.append(sym_mono(regime, perm, phases, signs))
            except ValueError as e:
                raise WordSyntaxError(str(e), pos) from None
    return GateWord(regime, tuple(syms))


def print_word(w: GateWord) -> str:
    out = []
    for s in w.syms:
        if s.kind in ("H", "S", "X", "R"):
            out.append(s.kind)
        elif s.kind == "T":
            out.append(f"T^{s.params[0]}")
        elif s.kind == "Dw":
            out.append("Dw[{},{},{}]".format(*s.params))
        elif s.kind == "Rs":
            out.append("Rs[{},{},{}]".format(*s.params))
        elif s.kind == "D":
            comps = [
                ("-" if si < 0 else "") + str(ai)
                for ai, si in zip(s.params[:3], s.params[3:])
            ]
            out.append("D[{},{},{}]".format(*comps))
        else:
            perm, phases, signs = s.params
            out.append(
                "M({};{};{})".format(
                    "".join(map(str, perm)),
                    ",".join(map(str, phases)),
                    "".join("+" if x > 0 else "-" for x in signs),
                )
            )
    return " ".join(out)


# -- monomial subgroup tables -----------------------------------------------------


def matrix_key(m: LocMatrix):
    """Hashable exact encoding of a canonical LocMatrix."""
    return (m.denom_exp, tuple(tuple(w.coeffs for w in row) for row in m.nums))


def _root_of_unity_parts(w: CycInt):
    """(sign, exp) with w = sign * zeta^exp, or None."""
    spec = w.spec
    for e in range(spec.n):
        z = zeta_pow(spec, e)
        if w == z:
            return (1, e)
        if w == -z:
            return (-1, e)
    return None


def _is_monomial(m: LocMatrix) -> bool:
    if m.denom_exp != 0:
        return False
    dim = m.dim
    seen_rows = set()
    for j in range(dim):
        nz = [i for i in range(dim) if not m.nums[i][j].is_zero()]
        if len(nz) != 1 or _root_of_unity_parts(m.nums[nz[0]][j]) is None:
            return False
        seen_rows.add(nz[0])
    return len(seen_rows) == dim


def monomial_targets(regime: Regime) -> dict:
    """All signed-monomial matrices of the regime's monomial subgroup, keyed."""
    spec = regime.spec
    dim = regime.dim
    targets = {}
    if regime is Regime.QUBIT8:
        values = [zeta_pow(spec, e) for e in range(8)]  # -1 = zeta^4 is included
    else:
        values = [s * zeta_pow(spec, e) for s in (1, -1) for e in range(3)]
    zero = from_int(spec, 0)
    for perm in permutations(range(dim)):
        for vals in product(values, repeat=dim):
            rows = [[zero] * dim for _ in range(dim)]
            for j in range(dim):
                rows[perm[j]][j] = vals[j]
            m = LocMatrix(spec, 0, tuple(tuple(r) for r in rows))
            targets[matrix_key(m)] = m
    return targets


def _monomial_moves(regime: Regime):
    # short monomial-valued words used as BFS moves; every node stays inside
    # the finite monomial subgroup, so the search space is its order times
    # the move count rather than the full word tree
    moves = []

    def add(*syms):
        w = GateWord(regime, tuple(syms))
        moves.append((w.syms, word_to_matrix(w)))

    if regime is Regime.QUBIT8:
        for k in range(1, 8):
            add(sym_T(k))
        add(sym_H(regime), sym_T(4), sym_H(regime))  # equals the bit flip
    elif regime is Regime.QUTRIT_R3:
        add(sym_X(regime))
        add(sym_S())
        add(sym_R(regime))
        for a in product(range(3), repeat=3):
            if a != (0, 0, 0):
                add(sym_Dw(*a))
        for b in product(range(2), repeat=3):
            if b != (0, 0, 0):
                add(sym_Rs(*b))
        add(sym_H(regime), sym_H(regime))  # = -(1 <-> 2 permutation)
    else:
        raise ValueError("the xi-qutrit monomial factorization is closed-form; no table")
    return moves


def build_monomial_table(regime: Regime, depth_cap: int = DEPTH_CAP) -> dict:
    """BFS the monomial subgroup; key -> GateWord, verified complete.

    Raises TableIncomplete if some monomial is unreached at the cap.
    """
    targets = monomial_targets(regime)
    moves = _monomial_moves(regime)
    start = identity(regime.spec, regime.dim)
    table = {matrix_key(start): GateWord(regime, ())}
    frontier = deque([(start, ())])
    found = 1
    while frontier and found < len(targets):
        mat, syms = frontier.popleft()
        for msyms, mmat in moves:
            nsyms = msyms + syms
            if len(nsyms) > depth_cap:
                continue
            nmat = mat_mul(mmat, mat)
            key = matrix_key(nmat)
            if key not in table:
                table[key] = GateWord(regime, nsyms)
                found += 1
                frontier.append((nmat, nsyms))
    missing = [k for k in targets if k not in table]
    if missing:
        raise TableIncomplete(regime, depth_cap)
    return table


# cache file layout: {"version": 1, "regime": ..., "depth_cap": ..., "entries": {...}}
_TABLE_VERSION = 1
_tables: dict[Regime, dict] = {}


def _cache_path(regime: Regime, depth_cap: int) -> str:
    base = os.environ.get("CYCLOSYNTH_CACHE_DIR") or os.path.join(
        os.path.expanduser("~"), ".cache", "cyclosynth"
    )
    return os.path.join(base, f"monomials-{regime.value}-d{depth_cap}-v{_TABLE_VERSION}.json")


def _load_cached_table(regime: Regime, depth_cap: int) -> dict | None:
    path = _cache_path(regime, depth_cap)
    try:
        with open(path, encoding="utf-8") as fh:
            blob = json.load(fh)
        if (
            blob.get("version") != _TABLE_VERSION
            or blob.get("regime") != regime.value
            or blob.get("depth_cap") != depth_cap
        ):
            return None
        table = {}
        for _key, text in blob["entries"].items():
            w = parse_word(text, regime) if text else GateWord(regime, ())
            m = word_to_matrix(w)
            if not _is_monomial(m):
                return None
            table[matrix_key(m)] = w
        if len(table) != len(blob["entries"]):
            return None
        return table
    except (OSError, ValueError, KeyError):
        return None


def _store_table(regime: Regime, depth_cap: int, table: dict) -> None:
    path = _cache_path(regime, depth_cap)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        entries = {json.dumps(key): print_word(w) for key, w in table.items()}
        blob = {
            "version": _TABLE_VERSION,
            "regime": regime.value,
            "depth_cap": depth_cap,
            "entries": entries,
        }
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(blob, fh)
        os.replace(tmp, path)
    except OSError:
        pass  # the cache is an optimization; never fail the computation


def monomial_table(regime: Regime, depth_cap: int = DEPTH_CAP) -> dict:
    """The regime's monomial lookup table (built once, cached on disk)."""
    if regime in _tables:
        return _tables[regime]
    table = _load_cached_table(regime, depth_cap)
    if table is None:
        table = build_monomial_table(regime, depth_cap)
        _store_table(regime, depth_cap, table)
    _tables[regime] = table
    return table


def monomial_decompose(m: LocMatrix, regime: Regime) -> GateWord:
    """A word over the regime's gate alphabet (no M symbols) equal to m.

    m must be a signed-monomial matrix (unitary of sde 0); raises NotMonomial
    otherwise, and TableIncomplete if the BFS table is missing the target.
    """
    if m.spec is not regime.spec or m.dim != regime.dim:
        raise NotMonomial(f"matrix does not live in the {regime.value} regime")
    if not _is_monomial(m):
        raise NotMonomial("matrix is not a signed monomial of sde 0")
    if regime is Regime.QUTRIT_D9:
        word = _decompose_xi_monomial(m)
    else:
        table = monomial_table(regime)
        word = table.get(matrix_key(m))
        if word is None:
            raise TableIncomplete(regime, DEPTH_CAP)
    assert word_to_matrix(word) == m
    return word


def _decompose_xi_monomial(m: LocMatrix) -> GateWord:
    # closed form over {X, H, D}: write m = P * diag, split the permutation
    # into a cyclic shift and (for odd parity) the double-H, whose global -1
    # is absorbed into the D signs
    regime = Regime.QUTRIT_D9
    pi = [next(i for i in range(3) if not m.nums[i][j].is_zero()) for j in range(3)]
    parts = [_root_of_unity_parts(m.nums[pi[j]][j]) for j in range(3)]
    signs = [s for s, _ in parts]
    exps = [e for _, e in parts]
    even = pi in ([0, 1, 2], [1, 2, 0], [2, 0, 1])
    delta = pi[0]
    syms = [sym_X(regime)] * delta
    if not even:
        # pi = shift^delta o (1<->2); H H = -(that swap)
        syms += [sym_H(regime), sym_H(regime)]
        signs = [-s for s in signs]
    if any(exps) or any(s < 0 for s in signs):
        syms.append(sym_D(exps, signs))
    word = GateWord(regime, tuple(syms))
    return word


# -- seeded random words ----------------------------------------------------------


def random_word(regime: Regime, length: int, rng) -> GateWord:
    """Uniformly random word of the given length (rng: random.Random)."""
    syms = []
    for _ in range(length):
        if regime is Regime.QUBIT8:
            k = rng.randrange(8)
            syms.append(sym_H(regime) if k == 0 else sym_T(k))
        elif regime is Regime.QUTRIT_R3:
            kind = rng.choice(("H", "S", "X", "R", "Dw", "Rs"))
            if kind == "Dw":
                syms.append(sym_Dw(rng.randrange(3), rng.randrange(3), rng.randrange(3)))
            elif kind == "Rs":
                syms.append(sym_Rs(rng.randrange(2), rng.randrange(2), rng.randrange(2)))
            elif kind == "S":
                syms.append(sym_S())
            else:
                syms.append(GateSym(regime, kind))
        else:
            kind = rng.choice(("H", "X", "R", "D"))
            if kind == "D":
                exps = [rng.randrange(9) for _ in range(3)]
                signs = [rng.choice((1, -1)) for _ in range(3)]
                syms.append(sym_D(exps, signs))
            else:
                syms.append(GateSym(regime, kind))
    return GateWord(regime, tuple(syms))
