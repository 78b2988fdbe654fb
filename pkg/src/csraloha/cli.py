"""Command-line front end: analyze | simulate | compare | sweep."""

import argparse
import sys

from . import analytics, harness
from .analytics import NumericalFailure
from .config import ConfigError, SystemConfig, load_config
from .protocol_analog import analog_slot_budget
from .protocol_digital import digital_slot_budget
from .thresholds import analog_threshold, digital_thresholds


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help="key=value config file")
    parser.add_argument("--seed", type=lambda v: int(v, 0), metavar="U64",
                        help="master seed override")
    parser.add_argument("--frames", type=int, metavar="N",
                        help="Monte Carlo frames override")
    parser.add_argument("--threads", type=int, metavar="N",
                        help="worker thread count override")
    parser.add_argument("--mode", choices=("analog", "digital"),
                        help="scheme override")
    parser.add_argument("--set", action="append", default=[],
                        metavar="KEY=VALUE", dest="assignments",
                        help="any config field override (repeatable)")
    parser.add_argument("--out", metavar="PATH.csv",
                        help="write CSV here (plus a .manifest.txt)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csraloha",
        description="Reservation-protocol throughput experiments: "
                    "compressed-sensing contention vs. interval splitting.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (("analyze", "closed-form rates and timing only"),
                      ("simulate", "Monte Carlo run at a single point"),
                      ("compare", "proposed scheme vs. splitting baseline"),
                      ("sweep", "standard throughput-vs-budget figure grid")):
        p = sub.add_parser(name, help=doc)
        _add_common(p)
        if name == "sweep":
            p.add_argument("--figure", type=int, required=True,
                           choices=(3, 4, 5, 6, 7, 8))
    return parser


def _build_config(args) -> SystemConfig:
    overrides = {}
    for item in args.assignments:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    for field, attr in (("master_seed", "seed"), ("frames", "frames"),
                        ("threads", "threads"), ("mode", "mode")):
        if getattr(args, attr, None) is not None:
            overrides[field] = getattr(args, attr)
    return load_config(args.config, **overrides)


def _emit(args, rows, config, command) -> None:
    text = harness.rows_to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        harness.write_manifest(args.out + ".manifest.txt", config, command)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(text)


def cmd_analyze(args, config: SystemConfig) -> None:
    tm = harness._timing(config)
    print(f"n={config.n} s={config.s} k={config.k} mode={config.mode}")
    print(f"timing: t={tm.t} p={tm.p} slot={config.slot_seconds:g}s")
    if config.mode == "analog":
        r = analog_slot_budget(config)
        rep = analytics.analog_rate_closed_form(config.n, config.s)
        print(f"threshold zeta={analog_threshold(config.n, config.s):.9g}")
        print(f"reservation: r={r} slots, m={r + tm.t}")
        print(f"closed-form rate={rep.rate:.9g} bits/s/Hz")
        print(f"asymptotic bound={analytics.analog_asymptotic_bound(config.n):.9g}")
    else:
        r = digital_slot_budget(config)
        ts = digital_thresholds(config.n, config.s, config.k)
        rep = analytics.digital_rate_closed_form(config.n, config.s,
                                                 config.k, as_printed=False)
        print("thresholds: " + " ".join(format(z, ".6g") for z in ts.levels))
        print(f"reservation: r={r} slots/interval, m={config.k * r + tm.t}")
        print(f"closed-form rate={rep.rate:.9g} bits/s/Hz")
    print(f"centralized optimum={analytics.centralized_optimum(config.n):.9g}")
    print(f"zero-reservation max={analytics.selected_rate_true_max(config.n):.9g}")


def cmd_simulate(args, config: SystemConfig) -> None:
    report, row = harness.run_experiment(config)
    print(f"scheme=cs-{config.mode} frames={config.frames} "
          f"seed={config.master_seed:#x}")
    print(f"r={row.r} m={row.m:g} p={row.p} efficiency={row.efficiency:.9g}")
    print(f"rate={report.rate:.9g} +- {row.rate_stderr:.3g}")
    print(f"throughput={report.throughput:.9g}"
          + (" (infeasible)" if row.infeasible else ""))
    if args.out:
        _emit(args, [row], config, "simulate")


def cmd_compare(args, config: SystemConfig) -> None:
    result = harness.compare_schemes(config)
    be = result["break_even_beta"]
    print(f"mode={config.mode}")
    print(f"reservation slots: proposed={result['reservation_slots_cs']:g} "
          f"baseline={result['reservation_slots_baseline']:g} "
          f"(beta={result['beta']:g})")
    print("break-even beta: "
          + ("none (proposed always faster)" if be is None else f"{be:.9g}"))
    print(f"throughput: proposed={result['throughput_cs']:.9g} "
          f"baseline={result['throughput_baseline']:.9g}")
    print(f"verdict: {result['verdict']}")
    if args.out:
        _emit(args, result["rows"], config, "compare")


def cmd_sweep(args, config: SystemConfig) -> None:
    rows = harness.sweep_figure(args.figure, config)
    _emit(args, rows, config, f"sweep --figure {args.figure}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        {"analyze": cmd_analyze, "simulate": cmd_simulate,
         "compare": cmd_compare, "sweep": cmd_sweep}[args.command](args, config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
