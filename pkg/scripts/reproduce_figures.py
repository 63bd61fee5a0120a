#!/usr/bin/env python3
"""Run every preset and collect its traces, metrics and plots under out/.

Usage: python scripts/reproduce_figures.py [--out DIR] [--sampled]

Runs are exact by default so the geometry is clean; pass --sampled for the
shot-noise variant (fig4 reproduces its reference appearance that way).
"""

import argparse
import sys
from pathlib import Path

from qmemristor import runner
from qmemristor.config import apply_overrides
from qmemristor.presets import PRESET_NAMES, preset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/figures")
    parser.add_argument("--sampled", action="store_true")
    args = parser.parse_args()

    mode = "sampled" if args.sampled else "exact"
    for name in PRESET_NAMES:
        if name in ("fig8", "fig10"):
            continue  # same runs as fig7 / fig9
        cfg = apply_overrides(preset(name), shots_mode=mode)
        result = runner.run(cfg, Path(args.out) / name)
        print(runner.summary_text(result))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
