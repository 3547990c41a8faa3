#!/usr/bin/env python3
"""Adiabatic-elimination validity study: sweep the Raman detuning.

Runs the fig5 hold experiment at detuning/rabi = 5, 10 and 20 and prints
the leakage column of the summary (it should decrease monotonically).
"""

import sys
from pathlib import Path

from aagates.cli import main as cli_main

ROOT = Path(__file__).resolve().parents[1]


def run(out_dir: Path) -> int:
    code = cli_main([
        "sweep", "--config", str(ROOT / "configs" / "fig5_raman.cfg"),
        "--param", "model.detuning", "--values", "0.1,0.2,0.4",
        "--out-dir", str(out_dir), "--quiet",
    ])
    if code != 0:
        return code
    print((out_dir / "summary.csv").read_text().strip())
    return 0


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "out" / "raman_sweep"))
