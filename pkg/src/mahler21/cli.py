"""``verify`` command line: run named suites and write a JSON report."""

from __future__ import annotations

import argparse
import json
import sys

from .harness import SUITES, ConfigError, SuiteConfig, UnknownSuite, run_all

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="print the registered suites")
    run = sub.add_parser("run", help="run suites and report")
    which = run.add_mutually_exclusive_group(required=True)
    which.add_argument("--suite", action="append", metavar="NAME", help="suite to run (repeatable)")
    which.add_argument("--all", action="store_true", help="run every suite")
    run.add_argument("--digits", type=int, default=30)
    run.add_argument("--out", metavar="PATH", help="write the JSON report here (default stdout)")
    run.add_argument("--coeff-cache", metavar="PATH")
    run.add_argument("--grid-k", nargs="+", metavar="K")
    run.add_argument("--grid-v", nargs="+", metavar="V")
    run.add_argument("--grid-u", nargs="+", metavar="U")
    run.add_argument("--tau", nargs="+", metavar="TAU", help="tau samples such as 0.1+0.3j")
    run.add_argument("--brute-grid", type=int, default=512)
    run.add_argument("--jobs", type=int, default=1, help="worker processes")
    run.add_argument("--timings", action="store_true",
                     help="record wall times (reports are then not byte-identical)")
    return ap


def _config(args) -> SuiteConfig:
    kw = dict(digits=args.digits, suites=tuple(args.suite or ()), coeff_cache=args.coeff_cache,
              brute_grid=args.brute_grid, timings=args.timings, jobs=args.jobs)
    for opt, key in (("grid_k", "k_grid"), ("grid_v", "v_grid"), ("grid_u", "u_grid"),
                     ("tau", "tau_sample")):
        vals = getattr(args, opt)
        if vals:
            kw[key] = tuple(vals)
    if args.grid_k:
        for k in args.grid_k:
            if not 0 < float(k) < 4:
                raise ConfigError(f"k={k} outside (0, 4)")
    return SuiteConfig(**kw)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name, (anchor, _) in SUITES.items():
            print(f"{name:20s} {anchor}")
        return EXIT_OK
    try:
        cfg = _config(args)
        results = run_all(cfg)
    except (ConfigError, UnknownSuite, ValueError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    flat = [r.to_dict() for name in results for r in results[name]]
    report = {"config": cfg.echo(), "results": flat}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r for r in flat if r["status"] != "pass"]
    for r in failed:
        print(f"FAIL {r['check_id']}: |diff|={r['abs_diff']} > {r['tolerance']}", file=sys.stderr)
    print(f"{len(flat) - len(failed)}/{len(flat)} checks passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
