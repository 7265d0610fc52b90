"""Command line interface: run scenarios, verify reports, probe remainder growth.

Exit codes: 0 on success/pass, 1 on any verdict failure, 2 on runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .pde import SolverConfig
from .reporting import load_report
from .scenarios import (
    GaussianPerturbation,
    GridSpec,
    KinkArrangement,
    ScenarioConfig,
    optimality_probe,
    run_scenario,
    verify_orbital_stability,
    verify_remainder_growth,
    verify_tracking,
)


def config_from_dict(data: dict) -> ScenarioConfig:
    kinks = KinkArrangement(**data["kinks"])
    grid = GridSpec(**data["grid"]) if "grid" in data and data["grid"] else None
    perturbation = None
    pert = data.get("perturbation")
    if pert and pert.get("kind", "none") != "none":
        perturbation = GaussianPerturbation(
            amplitude=pert["amplitude"],
            width=pert.get("width", 1.0),
            center=pert.get("center", 0.0),
            channel=pert.get("channel", "g0"),
        )
    solver = SolverConfig(**data.get("solver", {}))
    return ScenarioConfig(
        kinks=kinks,
        grid=grid,
        perturbation=perturbation,
        solver=solver,
        t_end=data.get("t_end", 100.0),
        frame_cadence=data.get("frame_cadence", 50),
        outputs=data.get("outputs"),
        seed_label=data.get("seed_label", "scenario"),
        lorentz_contract=data.get("lorentz_contract", True),
    )


def _cmd_run(args) -> int:
    data = json.loads(Path(args.config).read_text())
    config = config_from_dict(data)
    if args.out:
        config = replace(config, outputs=args.out)
    if args.dx:
        grid = config.resolved_grid()
        span = grid.dx * (grid.n - 1)
        n = int(round(span / args.dx)) + 1
        if n % 2 == 0:
            n += 1
        config = replace(config, grid=GridSpec(x0=grid.x0, dx=args.dx, n=n))
    if args.dt:
        config = replace(config, solver=replace(config.solver, dt=args.dt))
    if args.t_end:
        config = replace(config, t_end=args.t_end)
    report = run_scenario(config)
    summary = report.summary()
    for key, value in summary.items():
        print(f"{key}: {value}")
    if config.outputs:
        print(f"report written to {config.outputs}")
    return 0


def _verify_one(directory: Path) -> bool:
    report = load_report(directory)
    stability = verify_orbital_stability(report)
    print(
        f"[{directory.name}] stability: C={stability.c_stability:.3g} "
        f"sep={stability.separation_margin:.3g} "
        f"t2=[{stability.t2_ratio_min:.3g}, {stability.t2_ratio_max:.3g}] "
        f"-> {'pass' if stability.passed else 'FAIL'}"
    )
    ok = stability.passed
    tracking = verify_tracking(report)
    print(
        f"[{directory.name}] tracking: C={tracking.fitted_C:.3g} "
        f"max|z-d|={tracking.max_abs_z_minus_d:.3g} "
        f"(log-power envelope C={tracking.lnpow_envelope_C:.3g}, informational) "
        f"-> {'pass' if tracking.passed else 'FAIL'}"
    )
    ok = ok and tracking.passed
    try:
        growth = verify_remainder_growth(report)
        print(
            f"[{directory.name}] growth envelope: C={growth.fitted_C:.3g} "
            f"({growth.frames_used} frames) -> {'pass' if growth.passed else 'FAIL'}"
        )
        ok = ok and growth.passed
    except ValueError as exc:
        print(f"[{directory.name}] growth envelope: skipped ({exc})")
    return ok


def _cmd_verify(args) -> int:
    root = Path(args.report)
    if (root / "summary.json").exists():
        dirs = [root]
    else:
        dirs = sorted(d for d in root.iterdir() if (d / "summary.json").exists())
    if not dirs:
        raise FileNotFoundError(f"no reports found under {root}")
    all_ok = all([_verify_one(d) for d in dirs])
    return 0 if all_ok else 1


def _cmd_probe(args) -> int:
    eps_values = [float(v) for v in args.eps.replace(",", " ").split()]
    records = optimality_probe(eps_values, kappa=args.kappa)
    for rec in records:
        if rec.hit:
            print(
                f"eps={rec.eps_measured:.4g} (target {rec.eps_target:g}) z0={rec.z0:.3f} "
                f"t_hit={rec.t_hit:.2f} of t_max={rec.t_max:.2f} ratio={rec.hit_ratio:.3f}"
            )
        else:
            print(
                f"eps={rec.eps_measured:.4g} (target {rec.eps_target:g}) z0={rec.z0:.3f} "
                f"no hit within t_max={rec.t_max:.2f}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phi6kinks", description="Kink-pair dynamics: run, verify, probe"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario from a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None)
    p_run.add_argument("--dx", type=float, default=None)
    p_run.add_argument("--dt", type=float, default=None)
    p_run.add_argument("--t-end", dest="t_end", type=float, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser("verify", help="verify stability envelopes of reports")
    p_verify.add_argument("--report", required=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_probe = sub.add_parser("probe", help="remainder-growth probe at given excesses")
    p_probe.add_argument("--eps", required=True, help="comma/space separated list")
    p_probe.add_argument("--kappa", type=float, default=0.1)
    p_probe.set_defaults(func=_cmd_probe)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # runtime failure -> exit code 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
