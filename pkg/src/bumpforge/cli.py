"""Command-line entry point: compute, sweep, verify, plot.

Exit codes: 0 success, 2 invalid usage or input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis, export, plotting, verify
from .moments import MomentSystemError, measure_csv, read_measure_csv, solve_moment_system
from .polyapprox import RemezError, Scheme, make_nodes, remez_sqrt
from .profile import build_f, build_g, profile_csv

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    d_min: int | None = None
    d_max: int | None = None
    schemes: list = field(default_factory=lambda: [Scheme.OPTIMAL])
    lo: float = 0.0
    eps: float = 0.0
    quad_points: int = 1001
    out: Path = Path(".")
    format: str = "csv"

    def validate(self):
        for name in ("d", "d_min", "d_max"):
            v = getattr(self, name)
            if v is not None and (v < 3 or v % 2 == 0):
                raise UsageError(f"--{name.replace('_', '-')} must be odd and >= 3, got {v}")
        if self.d_min is not None and self.d_max is not None and self.d_min > self.d_max:
            raise UsageError("--d-min exceeds --d-max")
        if not 0.0 <= self.eps < 1.0:
            raise UsageError("--eps must lie in [0, 1)")
        if not 0.0 <= self.lo < 1.0:
            raise UsageError("--lo must lie in [0, 1)")
        if self.eps and self.lo and self.eps != self.lo:
            raise UsageError("--eps and --lo both set the first break point; give one")
        if self.quad_points < 11 or self.quad_points % 2 == 0:
            raise UsageError("--quad-points must be odd and >= 11")
        if self.node_lo and Scheme.CHEBYSHEV in self.schemes:
            raise UsageError("chebyshev nodes are fixed on [0, 1]; --lo/--eps not supported")
        return self

    @property
    def node_lo(self):
        return self.eps or self.lo

    def d_range(self):
        lo = self.d_min if self.d_min is not None else 3
        hi = self.d_max if self.d_max is not None else lo
        return list(range(lo, hi + 1, 2))


def _emit(path: Path, text: str, fmt: str) -> Path:
    if fmt == "json":
        path = path.with_suffix(".json")
        text = export.csv_to_json(text)
    return export.write_atomic(path, text)


def cmd_compute(cfg: RunConfig):
    d = cfg.d
    n = (d - 1) // 2
    scheme = cfg.schemes[0]
    lo = cfg.node_lo
    m = solve_moment_system(make_nodes(scheme, n, lo))
    bump = build_f(build_g(m), d, cfg.quad_points)
    tag = f"d{d}_{scheme.value}" + (f"_eps{cfg.eps:g}" if cfg.eps else f"_lo{cfg.lo:g}" if cfg.lo else "")
    mfile = _emit(cfg.out / f"measure_{tag}.csv", measure_csv(m), cfg.format)
    pfile = _emit(cfg.out / f"profile_{tag}.csv", profile_csv(bump), cfg.format)
    level = remez_sqrt(n, lo * lo).level
    return {
        "d": d,
        "n": n,
        "scheme": scheme.value,
        "eps": cfg.eps,
        "lo": lo,
        "gamma": m.gamma,
        "tv_even": m.tv_even,
        "remez_level": level,
        "lipschitz_bound": analysis.lipschitz_bound(d, m.tv_even),
        "measure_file": str(mfile),
        "profile_file": str(pfile),
    }


def cmd_sweep(cfg: RunConfig, figures: bool = False):
    ds = cfg.d_range()
    records, laws = [], {}
    for scheme in cfg.schemes:
        recs = analysis.run_sweep(ds, scheme, cfg.quad_points)
        records.extend(recs)
        laws[scheme.value] = analysis.fitted_laws(recs)
    text = export.rows_csv(analysis.SWEEP_FIELDS, (r.as_row() for r in records))
    sfile = _emit(cfg.out / "sweep.csv", text, cfg.format)
    lfile = export.write_atomic(cfg.out / "laws.json", export.dumps(laws))
    out = {"d": ds, "sweep_file": str(sfile), "laws_file": str(lfile), "laws": laws}
    if figures and cfg.format == "csv":
        out["figures"] = [
            str(plotting.plot_files([sfile], cfg.out / "gamma_vs_d.svg", log=True)),
            str(plotting.plot_files([sfile], cfg.out / "ball_avg_vs_d.svg", column="ball_avg")),
        ]
    return out


def cmd_verify(cfg: RunConfig, measure_file=None):
    if measure_file is not None:
        path = Path(measure_file)
        if not path.is_file():
            raise UsageError(f"{path}: no such file")
        m = read_measure_csv(path.read_text())
        d = 2 * m.n + 1
        plateau = float(m.points[0])
        checks = list(verify.measure_checks(m, d, plateau_eps=plateau))
    else:
        checks = verify.run_checks(cfg.d_range(), eps=cfg.eps)
    return verify.summary(checks)


def build_parser():
    p = argparse.ArgumentParser(prog="bumpforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, single_d):
        if single_d:
            sp.add_argument("--d", type=int, required=True, help="odd dimension >= 3")
        else:
            sp.add_argument("--d-min", type=int, default=3)
            sp.add_argument("--d-max", type=int, default=None)
        sp.add_argument("--scheme", action="append", choices=[s.value for s in Scheme])
        sp.add_argument("--lo", type=float, default=0.0, help="first break point of the node scheme")
        sp.add_argument("--eps", type=float, default=0.0, help="plateau radius (f = 1 on the eps-ball)")
        sp.add_argument("--quad-points", type=int, default=1001)
        sp.add_argument("--out", type=Path, default=Path("."))
        sp.add_argument("--format", choices=["csv", "json"], default="csv")

    common(sub.add_parser("compute", help="measure and profile for one dimension"), True)
    sp = sub.add_parser("sweep", help="norms and decay statistics over a range of dimensions")
    common(sp, False)
    sp.add_argument("--figures", action="store_true", help="also render SVG charts next to the CSV")
    sp = sub.add_parser("verify", help="run the invariant suite")
    common(sp, False)
    sp.add_argument("--measure", type=Path, default=None, help="verify a measure CSV instead of recomputing")
    sp = sub.add_parser("plot", help="render exported CSVs to SVG")
    sp.add_argument("inputs", nargs="+", type=Path)
    sp.add_argument("--out", type=Path, required=True)
    sp.add_argument("--log", action="store_true", help="log-log axes for sweep charts")
    sp.add_argument("--column", default="gamma", help="sweep column to chart")
    return p


def _config(args) -> RunConfig:
    default = [Scheme.OPTIMAL] if args.command != "sweep" else list(Scheme)
    schemes = [Scheme(s) for s in args.scheme] if args.scheme else default
    return RunConfig(
        command=args.command,
        d=getattr(args, "d", None),
        d_min=getattr(args, "d_min", None),
        d_max=getattr(args, "d_max", None),
        schemes=schemes,
        lo=args.lo,
        eps=args.eps,
        quad_points=args.quad_points,
        out=args.out,
        format=args.format,
    ).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            path = plotting.plot_files(args.inputs, args.out, log=args.log, column=args.column)
            sys.stdout.write(export.dumps({"figure": str(path)}))
            return EXIT_OK
        cfg = _config(args)
        if args.command == "compute":
            result = cmd_compute(cfg)
        elif args.command == "sweep":
            result = cmd_sweep(cfg, figures=args.figures)
        else:
            result = cmd_verify(cfg, args.measure)
            sys.stdout.write(export.dumps(result))
            return EXIT_OK if result["passed"] else EXIT_NUMERIC
        sys.stdout.write(export.dumps(result))
        return EXIT_OK
    except (UsageError, plotting.PlotInputError, ValueError) as exc:
        print(f"bumpforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RemezError, MomentSystemError) as exc:
        print(f"bumpforge: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
