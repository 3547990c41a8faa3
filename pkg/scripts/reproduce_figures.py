#!/usr/bin/env python3
"""Run every bundled experiment config into out/<name>/.

Each run leaves trajectory.csv (plot-ready), report.json and manifest.json;
the printed summary pulls the headline number from each report.
"""

import json
import sys
from pathlib import Path

from aagates.cli import main as cli_main

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = [
    "fig3_not_gate",
    "fig4_phase_gate",
    "fig5_raman",
    "fig6_raman_not",
    "biexciton_cphase",
]


def headline(name: str, report: dict) -> str:
    if name == "fig3_not_gate":
        return f"population transfer {report['population_transfer']:.6f}"
    if name == "fig4_phase_gate":
        return f"geometric phase {report['geom_phase']:.6f} rad"
    if name == "fig5_raman":
        return (f"max |G> population {report['max_leakage']:.4f}, "
                f"measured rate {report['measured_rabi']:.3e} rad/fs")
    if name == "fig6_raman_not":
        return (f"{report['loop_count']} loops of {report['gamma_loop']:.7f} rad, "
                f"transfer {report['population_transfer']:.5f}")
    if name == "biexciton_cphase":
        return (f"fidelity {report['fidelity']:.5f}, "
                f"leakage {report['leakage']:.5f}")
    return ""


def run_all(out_root: Path) -> int:
    for name in CONFIGS:
        out_dir = out_root / name
        code = cli_main([
            "run", "--config", str(ROOT / "configs" / f"{name}.cfg"),
            "--out-dir", str(out_dir), "--quiet",
        ])
        if code != 0:
            print(f"{name}: FAILED (exit {code})")
            return code
        report = json.loads((out_dir / "report.json").read_text())
        print(f"{name}: {headline(name, report)}")
    return 0


if __name__ == "__main__":
    sys.exit(run_all(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "out"))
