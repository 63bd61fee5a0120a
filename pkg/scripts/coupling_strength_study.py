#!/usr/bin/env python3
"""Sweep the coupling strength of every coupled preset.

Usage: python scripts/coupling_strength_study.py [--out DIR]

The coupling strength delta has no reference value, so this study runs the
default ladder (10 points over [0.1, 1.0]) for each coupled interaction and
tabulates which qubits keep their pinched hysteresis and where entanglement
dies and revives. Takes about half a minute.
"""

import argparse
import sys
from pathlib import Path

from qmemristor import runner
from qmemristor.presets import preset

COUPLED = ("fig7", "fig9", "appx_xx", "appx_zz", "appx_crx", "appx_crz", "appx_pswap")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/scans")
    args = parser.parse_args()

    for name in COUPLED:
        rows = runner.delta_scan(preset(name), runner.DEFAULT_SCAN_DELTAS,
                                 Path(args.out) / name)
        print(f"{name}:")
        for r in rows:
            flags = "/".join("pass" if ok else "FAIL" for ok in r.pinch_pass)
            print(f"  delta={r.delta:.2f}  pinch {flags}  "
                  f"mean F q1={r.mean_f[0]:.3f} q2={r.mean_f[1]:.3f}  "
                  f"ESD={r.deaths} ESB={r.births}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
