#!/usr/bin/env python3
"""Output-length statistics for exact synthesis across the three regimes.

Samples random words per regime, multiplies them out, re-synthesizes the
matrix, and reports input-length vs output-length quartiles plus the exact
round-trip failure count (which must be zero).
"""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass
from random import Random

from cyclosynth.gates import Regime, random_word, word_to_matrix
from cyclosynth.synth import (
    SynthStatus,
    qubit_synthesize,
    qutritD_greedy,
    qutritR_synthesize,
)

ENGINES = {
    Regime.QUBIT8: qubit_synthesize,
    Regime.QUTRIT_R3: qutritR_synthesize,
    Regime.QUTRIT_D9: qutritD_greedy,
}


@dataclass
class Config:
    samples: int = 200
    min_len: int = 1
    max_len: int = 30
    seed: int = 7


def run(cfg: Config) -> None:
    rng = Random(cfg.seed)
    print(f"{'regime':>10}  {'n':>4}  {'in p50':>7}  {'out p50':>8}  "
          f"{'out p90':>8}  {'out max':>8}  {'fails':>6}")
    for regime in Regime:
        in_lens, out_lens, fails = [], [], 0
        for _ in range(cfg.samples):
            w = random_word(regime, rng.randrange(cfg.min_len, cfg.max_len + 1), rng)
            m = word_to_matrix(w)
            res = ENGINES[regime](m)
            ok = res.status is SynthStatus.COMPLETE and word_to_matrix(res.word) == m
            fails += not ok
            in_lens.append(len(w.syms))
            out_lens.append(len(res.word.syms))
        q = statistics.quantiles(out_lens, n=10)
        print(f"{regime.value:>10}  {cfg.samples:>4}  {statistics.median(in_lens):>7.0f}  "
              f"{statistics.median(out_lens):>8.0f}  {q[8]:>8.0f}  {max(out_lens):>8}  "
              f"{fails:>6}")
        assert fails == 0, f"round-trip failure in {regime.value}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--min-len", type=int, default=Config.min_len)
    ap.add_argument("--max-len", type=int, default=Config.max_len)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    run(Config(a.samples, a.min_len, a.max_len, a.seed))


if __name__ == "__main__":
    main()
