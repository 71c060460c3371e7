"""Command-line surface for the exact synthesis toolkit.

Subcommands cover ring diagnostics (gde, sde, taylor), word/matrix conversion
and verification, the three synthesis engines, single reduction steps and the
quadratic obstruction value, the unit-vector census, seeded word generation,
and a built-in regression self-test.

Conventions: --elem/--vec/--mat accept inline JSON (first non-blank character
is '{') or a path to a JSON file.  Normal output goes to stdout and identical
argv (plus seed) produces byte-identical output.  Any failure prints a single
machine-readable line {"error": ..., "message": ...} and exits 1; an
obstructed reduction exits 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .enumeration import enumerate_unit_vectors
from .gates import Regime, parse_word, print_word, random_word, word_to_matrix
from .linalg import (
    cyc_from_json,
    elem_from_json,
    matrix_from_json,
    matrix_to_json,
    sde,
    to_real_tau_basis,
    vector_from_json,
    vector_to_json,
)
from .rings import abs_sq, chi, from_int, ring_spec
from .synth import (
    Obstructed,
    SynthStatus,
    qubit_synthesize,
    qutritD_delta,
    qutritD_greedy,
    qutritD_normalize,
    qutritD_reduce_step,
    qutritR_synthesize,
)
from .taylor import gde, phi_derivative_table, taylor_mod_p

__all__ = ["run", "main"]


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of sys.exit so run() can emit the error JSON contract
    def error(self, message):
        raise _UsageError(message)


def _load_json_arg(text: str) -> dict:
    s = text.strip()
    if s.startswith("{"):
        return json.loads(s)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _checked(doc: dict, ring: int) -> dict:
    got = int(doc.get("ring", ring))
    if got != ring:
        raise ValueError(f"--ring {ring} does not match the payload ring {got}")
    doc = dict(doc)
    doc["ring"] = ring
    return doc


_REGIME_FOR_RING = {8: Regime.QUBIT8, 3: Regime.QUTRIT_R3, 9: Regime.QUTRIT_D9}


def _cmd_gde(args) -> int:
    doc = _checked(_load_json_arg(args.elem), args.ring)
    if int(doc.get("denom_exp", 0)) != 0:
        raise ValueError("gde is defined for integral elements (denom_exp 0)")
    print(gde(cyc_from_json(doc)))
    return 0


def _cmd_sde(args) -> int:
    if args.elem is not None:
        x = elem_from_json(_checked(_load_json_arg(args.elem), args.ring))
    elif args.vec is not None:
        x = vector_from_json(_checked(_load_json_arg(args.vec), args.ring))
    else:
        x = matrix_from_json(_checked(_load_json_arg(args.mat), args.ring))
    print(sde(x))
    return 0


def _cmd_taylor(args) -> int:
    doc = _checked(_load_json_arg(args.elem), args.ring)
    tv = taylor_mod_p(cyc_from_json(doc))
    print(json.dumps({"ring": args.ring, "entries": list(tv.entries)}))
    return 0


def _regime_arg(args) -> Regime | None:
    return Regime.from_string(args.regime) if args.regime else None


def _cmd_word2mat(args) -> int:
    w = parse_word(args.word, _regime_arg(args))
    print(json.dumps(matrix_to_json(word_to_matrix(w))))
    return 0


def _cmd_verify(args) -> int:
    m = matrix_from_json(_load_json_arg(args.mat))
    regime = _regime_arg(args)
    if regime is None:
        regime = _REGIME_FOR_RING.get(m.spec.n)
    w = parse_word(args.word, regime)
    if w.regime.spec.n != m.spec.n:
        raise ValueError(
            f"word regime {w.regime.value} lives over ring {w.regime.ring}, "
            f"matrix over ring {m.spec.n}"
        )
    print("true" if word_to_matrix(w) == m else "false")
    return 0


def _cmd_synth(args) -> int:
    regime = Regime.from_string(args.regime)
    m = matrix_from_json(_load_json_arg(args.mat))
    if m.spec.n != regime.ring:
        raise ValueError(
            f"regime {regime.value} expects ring {regime.ring}, got {m.spec.n}"
        )
    engine = {
        Regime.QUBIT8: qubit_synthesize,
        Regime.QUTRIT_R3: qutritR_synthesize,
        Regime.QUTRIT_D9: qutritD_greedy,
    }[regime]
    res = engine(m)
    print(print_word(res.word))
    summary = {"status": res.status.value}
    if res.delta is not None:
        summary["delta"] = res.delta
    print(json.dumps(summary))
    return 2 if res.status is SynthStatus.OBSTRUCTED else 0


def _cmd_reduce_step(args) -> int:
    v = vector_from_json(_load_json_arg(args.vec))
    step = qutritD_reduce_step(v)
    if isinstance(step, Obstructed):
        print(json.dumps({"status": "obstructed", "delta": step.delta}))
        return 2
    print(
        json.dumps(
            {
                "status": "step",
                "syllable": print_word(step.syllable()),
                "sde_before": step.sde_before,
                "sde_after": step.sde_after,
            }
        )
    )
    return 0


def _cmd_delta(args) -> int:
    v = vector_from_json(_load_json_arg(args.vec))
    _, _, zn = qutritD_normalize(v)
    print(qutritD_delta(zn))
    return 0


def _cmd_enumerate(args) -> int:
    mode = "rescaled" if args.rescaled else "exact"
    vecs = enumerate_unit_vectors(args.sde, mode)
    for v in vecs:
        print(json.dumps(vector_to_json(v)))
    print(json.dumps({"f": args.sde, "mode": mode, "count": len(vecs)}))
    return 0


def _cmd_random_word(args) -> int:
    regime = Regime.from_string(args.regime)
    rng = random.Random(args.seed)
    print(print_word(random_word(regime, args.len, rng)))
    return 0


def _cmd_selftest(args) -> int:
    from .gates import gate_matrix, sym_H

    spec9, spec8, spec3 = ring_spec(9), ring_spec(8), ring_spec(3)
    checks = [
        ("gde(1 + x + x^2) over ring 9", gde(cyc_from_json({"ring": 9, "coeffs": [1, 1, 1, 0, 0, 0]})), 2),
        (
            "sde of (1 + x + x^2) / chi^6 over ring 9",
            sde(elem_from_json({"ring": 9, "coeffs": [1, 1, 1, 0, 0, 0], "denom_exp": 6})),
            4,
        ),
        ("gde(2) over ring 8", gde(from_int(spec8, 2)), 4),
        ("gde(3) over ring 3", gde(from_int(spec3, 3)), 2),
        ("sde(H) over ring 9", sde(gate_matrix(sym_H(Regime.QUTRIT_D9))), 3),
        ("sde(H) over ring 3", sde(gate_matrix(sym_H(Regime.QUTRIT_R3))), 1),
        ("sde(H) over ring 8", sde(gate_matrix(sym_H(Regime.QUBIT8))), 2),
        ("derivative table of the ring-9 minimal polynomial", phi_derivative_table(9), (9, 36, 21, 15, 6, 1)),
    ]
    base = abs_sq(chi(spec9))
    for f, want in [(1, (2, -1, 0)), (2, (4, -4, 1)), (3, (9, -15, 6))]:
        checks.append((f"tau basis of |chi|^{2 * f}", to_real_tau_basis(base**f), want))
    bad = []
    for label, got, want in checks:
        ok = got == want
        print(f"{'ok' if ok else 'FAIL'}: {label} = {got}" + ("" if ok else f" (expected {want})"))
        if not ok:
            bad.append(label)
    if bad:
        raise AssertionError(f"{len(bad)} selftest check(s) failed: {', '.join(bad)}")
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="cyclosynth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    def ring_flag(sp):
        sp.add_argument("--ring", type=int, required=True, choices=(3, 8, 9))

    sp = sub.add_parser("gde", help="chi-adic valuation of an integral element")
    ring_flag(sp)
    sp.add_argument("--elem", required=True)
    sp.set_defaults(func=_cmd_gde)

    sp = sub.add_parser("sde", help="smallest denominator exponent of an element/vector/matrix")
    ring_flag(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--elem")
    g.add_argument("--vec")
    g.add_argument("--mat")
    sp.set_defaults(func=_cmd_sde)

    sp = sub.add_parser("taylor", help="(1-x)-expansion coefficients mod p at 1")
    ring_flag(sp)
    sp.add_argument("--elem", required=True)
    sp.set_defaults(func=_cmd_taylor)

    sp = sub.add_parser("word2mat", help="exact matrix of a gate word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--regime", choices=[r.value for r in Regime])
    sp.set_defaults(func=_cmd_word2mat)

    sp = sub.add_parser("verify", help="does the word reproduce the matrix exactly")
    sp.add_argument("--word", required=True)
    sp.add_argument("--mat", required=True)
    sp.add_argument("--regime", choices=[r.value for r in Regime])
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("synth", help="exact synthesis of a unitary into a gate word")
    sp.add_argument("--regime", required=True, choices=[r.value for r in Regime])
    sp.add_argument("--mat", required=True)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("reduce-step", help="one verified denominator-dropping syllable")
    sp.add_argument("--regime", required=True, choices=[Regime.QUTRIT_D9.value])
    sp.add_argument("--vec", required=True)
    sp.set_defaults(func=_cmd_reduce_step)

    sp = sub.add_parser("delta", help="quadratic obstruction value of a ring-9 vector")
    sp.add_argument("--vec", required=True)
    sp.set_defaults(func=_cmd_delta)

    sp = sub.add_parser("enumerate", help="census of unit vectors at a given sde")
    sp.add_argument("--sde", type=int, required=True)
    sp.add_argument("--rescaled", action="store_true")
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("random-word", help="seeded random gate word")
    sp.add_argument("--regime", required=True, choices=[r.value for r in Regime])
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=_cmd_random_word)

    sp = sub.add_parser("selftest", help="pinned-value regression checks")
    sp.set_defaults(func=_cmd_selftest)

    return p


def run(argv) -> int:
    """Entry point used by tests: argv without the program name."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else int(e.code)
    except Exception as e:  # noqa: BLE001 - the CLI error contract is total
        print(json.dumps({"error": type(e).__name__.lstrip("_"), "message": str(e)}))
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
