#!/usr/bin/env python3
"""Probe how fast the remainder norm reaches a fraction of the energy excess.

Resting kink pairs at several excesses; prints the first-crossing time and
its size relative to ln(1/eps)/sqrt(eps).

Usage: python scripts/probe_remainder_growth.py [eps ...]
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from phi6kinks.scenarios import optimality_probe  # noqa: E402


def main():
    eps_values = [float(v) for v in sys.argv[1:]] or [1e-2, 2.5e-2, 5e-2]
    for rec in optimality_probe(eps_values):
        status = (
            f"t_hit={rec.t_hit:8.2f}  t_hit/(ln(1/eps)/sqrt(eps))={rec.hit_ratio:.4f}"
            if rec.hit
            else f"no hit within t_max={rec.t_max:.1f}"
        )
        print(
            f"target={rec.eps_target:8.3g}  measured={rec.eps_measured:10.4g}  "
            f"z0={rec.z0:6.3f}  {status}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
