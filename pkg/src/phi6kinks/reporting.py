"""Machine-readable trajectory reports: CSV rows plus a JSON summary.

Floats are written with shortest round-trip formatting, so a written file
re-parses to bit-identical values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

CSV_HEADER = (
    "t,x1,x2,z,d1,d2,d,z_minus_d,xdot1,xdot2,norm_g_h1,norm_gt_l2,eps_t,F_t"
)
SUMMARY_KEYS = (
    "epsilon",
    "v",
    "c",
    "a",
    "b",
    "max_abs_z_minus_d",
    "max_remainder",
    "fitted_C_growth",
)


@dataclass(frozen=True)
class FrameRow:
    """One tracked frame; field order matches the CSV header."""

    t: float
    x1: float
    x2: float
    z: float
    d1: float
    d2: float
    d: float
    z_minus_d: float
    xdot1: float
    xdot2: float
    norm_g_h1: float
    norm_gt_l2: float
    eps_t: float
    F_t: float


@dataclass
class ComparisonReport:
    """Per-frame comparison of the tracked PDE against the reduced dynamics."""

    rows: list[FrameRow]
    epsilon: float
    v: float
    c: float
    a: float
    b: float
    fitted_C_growth: float = float("nan")
    seed_label: str = ""
    failed_at_frame: int | None = None
    coercivity_ratio_min: float = float("nan")
    d1_dots: list[float] = field(default_factory=list)
    d2_dots: list[float] = field(default_factory=list)
    # in-memory only: the modulation frames behind the rows (not serialized)
    frames: list | None = field(default=None, repr=False, compare=False)

    @property
    def max_abs_z_minus_d(self) -> float:
        return max((abs(r.z_minus_d) for r in self.rows), default=float("nan"))

    @property
    def max_remainder(self) -> float:
        return max((r.norm_g_h1 + r.norm_gt_l2 for r in self.rows), default=float("nan"))

    def summary(self) -> dict:
        out = {
            "epsilon": self.epsilon,
            "v": self.v,
            "c": self.c,
            "a": self.a,
            "b": self.b,
            "max_abs_z_minus_d": self.max_abs_z_minus_d,
            "max_remainder": self.max_remainder,
            "fitted_C_growth": self.fitted_C_growth,
        }
        if self.failed_at_frame is not None:
            out["failure"] = f"tracking invalid from frame {self.failed_at_frame}"
        return out


def emit_csv(report: ComparisonReport, path) -> Path:
    """Write the trajectory CSV; rows in time order, header always present."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [CSV_HEADER]
    for r in report.rows:
        lines.append(
            ",".join(
                repr(float(v))
                for v in (
                    r.t, r.x1, r.x2, r.z, r.d1, r.d2, r.d, r.z_minus_d,
                    r.xdot1, r.xdot2, r.norm_g_h1, r.norm_gt_l2, r.eps_t, r.F_t,
                )
            )
        )
    path.write_text("\n".join(lines) + "\n")
    return path


def emit_summary(report: ComparisonReport, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.summary(), indent=2, allow_nan=True) + "\n")
    return path


def write_report(report: ComparisonReport, out_dir) -> Path:
    """Write trajectory.csv and summary.json under out_dir."""
    out_dir = Path(out_dir)
    emit_csv(report, out_dir / "trajectory.csv")
    emit_summary(report, out_dir / "summary.json")
    return out_dir


def parse_csv(path) -> list[FrameRow]:
    text = Path(path).read_text().strip().splitlines()
    if not text or text[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path}")
    rows = []
    for line in text[1:]:
        vals = [float(v) for v in line.split(",")]
        rows.append(FrameRow(*vals))
    return rows


def load_report(directory) -> ComparisonReport:
    """Rebuild a report from trajectory.csv + summary.json in a directory."""
    directory = Path(directory)
    rows = parse_csv(directory / "trajectory.csv")
    summary = json.loads((directory / "summary.json").read_text())
    report = ComparisonReport(
        rows=rows,
        epsilon=summary["epsilon"],
        v=summary["v"],
        c=summary["c"],
        a=summary["a"],
        b=summary["b"],
        fitted_C_growth=summary.get("fitted_C_growth", float("nan")),
        seed_label=directory.name,
    )
    return report
