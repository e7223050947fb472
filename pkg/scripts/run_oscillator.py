"""Softening-spring oscillator on a truncated number basis.

The invariant rides the closed three-operator algebra, so the run also
reports how far the truncation edge stayed from the occupied block.
"""

import argparse
import sys
from pathlib import Path

from weakinv.cli import emit_series, emit_verdict
from weakinv.config import validate_config
from weakinv.scenarios import run_scenario


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k0", type=float, default=1.0)
    ap.add_argument("--decay", type=float, default=0.5,
                    help="spring softening rate; negative values are "
                         "refused by the engine, try it")
    ap.add_argument("--n-fock", type=int, default=60)
    ap.add_argument("--alpha", type=float, default=2.0)
    ap.add_argument("--output-dir", default="out_oscillator")
    args = ap.parse_args()

    cfg = validate_config({
        "scenario": "oscillator",
        "alpha": args.alpha,
        "params": {"k0": args.k0, "decay": args.decay,
                   "n_fock": args.n_fock},
    })
    result = run_scenario(cfg)

    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit_series(result, out / "series.csv")
    emit_verdict(result, out / "verdict.json")

    for c in result.checks:
        print(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: "
              f"{c.measured:.6g} (tol {c.tolerance:.2g})")
    print(f"growth rate at t=0: {result.columns['growth_formula'][0]:.6f}")
    return 0 if result.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
