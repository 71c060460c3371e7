#!/usr/bin/env python3
"""Census of unit vectors over Z[zeta_9] by smallest denominator exponent.

Runs the quadratic-form enumerator for f = 0..max_f in exact mode plus the
rescaled mode at each f that is a multiple of 3, reporting counts and wall
times.  Optionally dumps every vector as one JSON document per line, in the
same wire format the CLI uses.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from cyclosynth.enumeration import enumerate_unit_vectors
from cyclosynth.linalg import vector_to_json


@dataclass
class Config:
    max_f: int = 3
    out_dir: Path | None = None


def run(cfg: Config) -> None:
    print(f"{'f':>3}  {'mode':>8}  {'count':>6}  {'secs':>7}")
    for f in range(cfg.max_f + 1):
        modes = ["exact"] + (["rescaled"] if f and f % 3 == 0 else [])
        for mode in modes:
            t0 = time.perf_counter()
            vecs = enumerate_unit_vectors(f, mode=mode)
            dt = time.perf_counter() - t0
            print(f"{f:>3}  {mode:>8}  {len(vecs):>6}  {dt:>7.2f}")
            if cfg.out_dir is not None:
                cfg.out_dir.mkdir(parents=True, exist_ok=True)
                path = cfg.out_dir / f"vectors_f{f}_{mode}.jsonl"
                with path.open("w") as fh:
                    for v in vecs:
                        fh.write(json.dumps(vector_to_json(v)) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-f", type=int, default=Config.max_f)
    ap.add_argument("--out-dir", type=Path, default=None,
                    help="dump each census as JSONL into this directory")
    a = ap.parse_args()
    run(Config(a.max_f, a.out_dir))


if __name__ == "__main__":
    main()
