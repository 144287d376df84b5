"""Command-line entry point: ``pnsimo <subcommand> [--config ...]``."""

import argparse
import logging
import sys

from . import _accel
from .harness import (
    ConfigError,
    SweepConfig,
    build_model,
    csv_text,
    load_config,
    run_closed_form_check,
    run_floor_and_bounds,
    run_oracle_validation,
    run_ser_sweep,
    run_truncation_stats,
    run_tslot_comparison,
    write_csv,
)

log = logging.getLogger("pnsimo")


def _config(args, required=True) -> SweepConfig:
    if args.config is None:
        if required:
            raise ConfigError(f"'{args.command}' needs --config")
        cfg = SweepConfig()
    else:
        cfg = load_config(args.config)
    return cfg.override(seed=args.seed, trials=args.trials, out=args.out)


def _emit(rows, cfg: SweepConfig):
    if cfg.out:
        write_csv(rows, cfg.out)
        log.info("wrote %d rows to %s", len(rows), cfg.out)
    else:
        sys.stdout.write(csv_text(rows))


def cmd_sweep(args):
    cfg = _config(args)
    _emit(run_ser_sweep(cfg, args.threads), cfg)
    return 0


def cmd_floors(args):
    cfg = _config(args)
    _emit(run_floor_and_bounds(cfg, args.threads, "floors"), cfg)
    return 0


def cmd_bounds(args):
    cfg = _config(args)
    rows = run_floor_and_bounds(cfg, args.threads, "bounds")
    _emit(rows, cfg)
    # every bound must sit above its Monte Carlo target
    bounds = {(r.scenario, r.M): r.ser for r in rows if r.trials == 0}
    ok = True
    for r in rows:
        key = {"CC-NS/high_snr_ns": "bernstein_union_bound", "FC-NS/min_distance": "chebyshev_union_bound"}.get(r.scenario)
        if key and r.ser > bounds[(key, r.M)]:
            log.error("%s M=%d: Monte Carlo %.4g exceeds bound %.4g", r.scenario, r.M, r.ser, bounds[(key, r.M)])
            ok = False
    return 0 if ok else 1


def cmd_truncation(args):
    cfg = _config(args)
    table, rows = run_truncation_stats(cfg, args.threads)
    _emit(rows, cfg)
    for (label, rho_db), (mean, mx) in sorted(table.items()):
        log.info("%-6s rho=%5.1f dB  mean terms %.2f  max %d", label, rho_db, mean, mx)
    return 0


def cmd_validate(args):
    cfg = _config(args, required=False)
    report = run_oracle_validation(args.instances, cfg.seed, model=build_model(cfg.model), policy=cfg.policy)
    print(report.summary())
    agree, total = run_closed_form_check(args.closed_form_instances, cfg.seed, cfg.policy)
    cf_ok = agree == total
    print(f"{'PASS' if cf_ok else 'FAIL'}: von Mises closed form agrees on {agree}/{total} instances")
    return 0 if report.passed and cf_ok else 1


def cmd_tslot(args):
    cfg = _config(args)
    _emit(run_tslot_comparison(cfg, args.threads), cfg)
    return 0


COMMANDS = {
    "sweep": (cmd_sweep, "Monte Carlo SER sweep over (scenario, M, rho)"),
    "floors": (cmd_floors, "analytic synchronous floor vs Monte Carlo at the top rho"),
    "bounds": (cmd_bounds, "Bernstein/Chebyshev union bounds vs high-SNR Monte Carlo"),
    "truncation": (cmd_truncation, "series term-count statistics"),
    "validate": (cmd_validate, "quadrature oracle and closed-form consistency checks"),
    "tslot": (cmd_tslot, "T-slot decision-feedback vs genie-aided comparison"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="pnsimo", description="Phase-noise SIMO detection simulator")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", help="JSON experiment manifest")
        sp.add_argument("--seed", type=int, help="master seed (overrides the config)")
        sp.add_argument("--out", help="CSV output path (default: stdout)")
        sp.add_argument("--threads", type=int, default=1, help="worker threads")
        sp.add_argument("--trials", type=int, help="trials per point (overrides the config)")
        if name == "validate":
            sp.add_argument("--instances", type=int, default=100, help="oracle instances per scenario")
            sp.add_argument("--closed-form-instances", type=int, default=10_000)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    log.info("kernel backend: %s", _accel.backend())
    if args.seed is not None and not 0 <= args.seed < 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command][0](args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
