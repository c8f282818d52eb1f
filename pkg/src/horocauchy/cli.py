"""Command-line interface.

Subcommands run the validation suites over the seeded corpus and write a
JSON report, a per-point CSV where applicable, and a PNG figure alongside.
With no --out the JSON goes to stdout and the human summary to stderr, so
reports can be piped. Exit status: 0 all checks pass, 1 any check failed or
a computation error, 2 bad configuration.
"""

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, HorocauchyError
from .harness import COMMANDS, RunConfig, apply_overrides, load_config, report_json, run


def build_parser():
    parser = argparse.ArgumentParser(
        prog="horocauchy",
        description="Horospherical Cauchy transform on spheres: "
                    "validation commands over a seeded corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("dims", "harmonic space dimensions and their factored forms"),
        ("forward", "forward-transform anchors, homogeneity, holomorphy"),
        ("roundtrip", "transform and invert the corpus on a grid"),
        ("zonal", "fiber averages against the classical recurrence"),
        ("plancherel", "operator-form vs summed-form inversion"),
        ("series", "component series truncation residuals"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=int, help="sphere dimension (1, 2 or 3)")
        p.add_argument("--kmax", type=int, help="band limit of the run")
        p.add_argument("--resolution", type=int, dest="resolution",
                       help="sphere rule resolution")
        p.add_argument("--fiber-res", type=int, dest="fiber_res",
                       help="fiber rule resolution")
        p.add_argument("--circle-res", type=int, dest="circle_res",
                       help="scaling-circle sample count (default 2*kmax+4)")
        p.add_argument("--method", choices=("spectral", "abel", "full-numerical"),
                       help="boundary value method")
        p.add_argument("--seed", type=int, help="corpus and grid seed")
        p.add_argument("--grid-size", type=int, dest="grid_size",
                       help="evaluation grid size")
        p.add_argument("--config", help="key-value config file; flags win")
        p.add_argument("--out", help="report JSON path; CSV/PNG land alongside")
        p.add_argument("--figures", action=argparse.BooleanOptionalAction,
                       default=None, help="render the PNG (default on)")
        p.add_argument("--timing", action=argparse.BooleanOptionalAction,
                       default=None, help="embed wall time in the report "
                       "(off keeps report bytes config-deterministic)")
    return parser


def _emit(report, artifacts, config, elapsed_ms):
    human = sys.stdout if config.out else sys.stderr
    if config.command == "dims":
        table = artifacts["table"]
        forms = " * ".join(f"({s})" for s in table.factor_strings())
        print(f"d(k) on S^{table.n}" + (f" = {forms}" if forms else ""), file=human)
        for k, d in enumerate(table.dims):
            print(f"  d({k}) = {d}", file=human)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} {check.name}: value={check.value:.3e} "
            f"reference={check.reference:.3e} tol={check.tol:.1e}",
            file=human,
        )
    print(f"elapsed {elapsed_ms:.1f} ms", file=sys.stderr)

    payload = report_json(report)
    if config.out:
        base = Path(config.out)
        base.parent.mkdir(parents=True, exist_ok=True)
        base.write_bytes(payload)
        written = [str(base)]
        if "csv" in artifacts:
            csv_path = base.with_suffix(".csv")
            csv_path.write_text(artifacts["csv"])
            written.append(str(csv_path))
        if config.figures:
            from . import figures

            written.append(
                figures.render(config.command, report, artifacts,
                               str(base.with_suffix(".png")))
            )
        print("wrote " + ", ".join(written), file=sys.stderr)
    else:
        sys.stdout.buffer.write(payload)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config) if args.config else RunConfig()
        config = apply_overrides(
            config,
            command=args.command,
            n=args.n,
            kmax=args.kmax,
            method=args.method,
            seed=args.seed,
            sphere_resolution=args.resolution,
            fiber_resolution=args.fiber_res,
            circle_resolution=args.circle_res,
            grid_size=args.grid_size,
            out=args.out,
            figures=args.figures,
            timing=args.timing,
        )
        config.validate()
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        report, artifacts, elapsed = run(config)
    except HorocauchyError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(report, artifacts, config, elapsed)
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
