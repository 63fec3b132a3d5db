"""Command-line front end: ``sweep``, ``figure <preset>`` and ``verify <scope>``.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .sweep import (
    FIGURES,
    ConfigError,
    config_from_mapping,
    csv_text,
    figure_curves,
    read_config_file,
    run_figure,
    run_sweep,
)
from .verify import SCOPES, run_checks

SWEEP_KEYS = ("model", "m", "u_prime", "initial", "k_min", "k_max", "k_steps", "combine_mode", "output", "diag_shift")
FIGURE_KEYS = ("k_min", "k_max", "k_steps", "combine_mode", "diag_shift")


def _add_grid_flags(p):
    p.add_argument("--k-min", type=float)
    p.add_argument("--k-max", type=float)
    p.add_argument("--k-steps", type=int)
    p.add_argument("--combine-mode", choices=("weighted", "paper_sum"))
    p.add_argument("--zpnr-diag-shift", dest="diag_shift", choices=("residue", "quarter"),
                   help="real part of the on-site edge propagator (default: residue)")
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinscatter",
        description="Electron scattering off two Heisenberg impurities in a chain or a phosphorene edge band.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sweep the incident wave number and write a CSV")
    sw.add_argument("--model", choices=("chain", "zpnr"))
    sw.add_argument("--m", type=int)
    sw.add_argument("--u-prime", type=float)
    sw.add_argument("--initial")
    sw.add_argument("--output", help="CSV path (default: standard output)")
    sw.add_argument("--plot", action="store_true", help="also render a PNG next to the CSV")
    _add_grid_flags(sw)

    fig = sub.add_parser("figure", help="reproduce a figure preset as CSV files (+ PNG)")
    fig.add_argument("preset", choices=sorted(FIGURES))
    fig.add_argument("--output", default=".", help="output directory")
    fig.add_argument("--no-plot", action="store_true", help="skip the PNG rendering")
    _add_grid_flags(fig)

    ver = sub.add_parser("verify", help="run the oracle verification suites")
    ver.add_argument("scope", nargs="?", default="all", choices=SCOPES)
    return parser


def _merged(args, keys) -> dict:
    values = read_config_file(args.config) if args.config else {}
    values = {k.replace("-", "_"): v for k, v in values.items()}
    unknown = set(values) - set(keys)
    if unknown:
        raise ConfigError(f"configuration keys not valid here: {sorted(unknown)}")
    for key in keys:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return values


def _threads(args) -> int:
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return args.threads


def cmd_sweep(args) -> int:
    values = _merged(args, SWEEP_KEYS)
    config = config_from_mapping(values).validate()
    if args.plot and not config.output:
        raise ConfigError("--plot needs --output")
    table, summary = run_sweep(config, _threads(args))
    if config.output is None:
        sys.stdout.write(csv_text(table))
        print(summary, file=sys.stderr)
    else:
        if args.plot:
            from .plotting import plot_table

            plot_table(table, Path(config.output).with_suffix(".png"), title=Path(config.output).stem)
        print(summary)
    return 0


def cmd_figure(args) -> int:
    values = _merged(args, FIGURE_KEYS)
    typed = config_from_mapping(values)
    overrides = {k: getattr(typed, k) for k in values}
    results = run_figure(args.preset, args.output, _threads(args), overrides)
    for name, (path, _, summary) in results.items():
        print(f"{path}: {summary}")
    if not args.no_plot:
        from .plotting import plot_figure
        configs = {c.name: c.config for c in figure_curves(args.preset, overrides)}
        png = Path(args.output) / f"{args.preset}.png"
        plot_figure(args.preset, {n: (configs[n], results[n][1]) for n in results}, png)
        print(f"{png}: figure")
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.scope)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"verification FAILED: {', '.join(failed)}")
        return 1
    print(f"verification passed ({len(results)} checks)")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"sweep": cmd_sweep, "figure": cmd_figure, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except (ConfigError, OSError) as exc:
        print(f"spinscatter: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
