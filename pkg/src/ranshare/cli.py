"""Command-line interface.

Subcommands: ``run`` and ``sweep`` evaluate scenarios and export tables;
``catalog list`` prints the platform benchmark table; ``ingest-trace`` turns a
request trace into a weekly profile; ``serve`` starts the local JSON API.
Exit code 0 only on full success.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import run_scenario, run_sweep, validate_spec
from .errors import ConfigError
from .exports import export_tables
from .platforms import load_catalog
from .presets import PRESETS
from .profiles import ingest_trace, read_trace_csv, write_profile_csv


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError([("config", str(exc))]) from exc


def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="scenario JSON document (fields override the preset)")
    parser.add_argument("--preset", choices=sorted(PRESETS),
                        help="bundled preset supplying defaults")
    parser.add_argument("--catalog", help="platform catalog JSON (default: bundled)")
    parser.add_argument("--out", required=True, help="output directory for tables")
    parser.add_argument("--backend", choices=["numba", "numpy"],
                        help="force a kernel backend (default: env/auto)")


def cmd_run(args) -> int:
    catalog = load_catalog(args.catalog)
    spec = validate_spec(_load_config(args.config), preset_name=args.preset, catalog=catalog)
    bundle = run_scenario(spec, catalog, backend=args.backend)
    files = export_tables([bundle], args.out, catalog)
    roi = bundle.roi
    print(f"{spec.name}: fleet {bundle.fleet_primary.g_total} vs {bundle.fleet_baseline.g_total} "
          f"servers, investment ${roi.investment_usd:,.2f}, "
          f"return multiple {roi.return_multiple:.2f}, "
          f"break-even week {roi.break_even_week}")
    print(f"config digest {bundle.digest}")
    print(f"wrote {len(files)} files to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    catalog = load_catalog(args.catalog)
    spec = validate_spec(_load_config(args.config), preset_name=args.preset, catalog=catalog)
    bundles = run_sweep(spec, catalog, backend=args.backend)
    files = export_tables(bundles, args.out, catalog)
    for b in bundles:
        mult = b.roi.return_multiple
        print(f"{b.spec.name}: return multiple {mult:.2f}, break-even week {b.roi.break_even_week}")
    print(f"wrote {len(files)} files to {args.out}")
    return 0


def cmd_catalog(args) -> int:
    catalog = load_catalog(args.catalog)
    if args.action == "list":
        rows = catalog.table_rows()
        header = f"{'platform':<12} {'stack':<8} {'config':<7} {'cost $':>8} {'power W':>8} " \
                 f"{'B MHz':>8} {'MHz/$':>7} {'MHz/W':>7}"
        print(header)
        print("-" * len(header))
        for r in rows:
            print(f"{r['platform']:<12} {r['l1_stack']:<8} {r['config']:<7} "
                  f"{r['cost_usd']:>8.0f} {r['power_w']:>8.0f} {r['b_mhz']:>8.0f} "
                  f"{r['eta_c_mhz_per_usd']:>7.2f} {r['eta_o_mhz_per_w']:>7.2f}")
    return 0


def cmd_ingest_trace(args) -> int:
    records = read_trace_csv(
        args.infile,
        timestamp_col=args.timestamp_col,
        request_tokens_col=args.request_tokens_col,
        response_tokens_col=args.response_tokens_col,
    )
    summary = ingest_trace(records, token_mode=args.tokens)
    write_profile_csv(summary.profile, args.out)
    print(f"{summary.record_count} records, "
          f"mean tokens/request {summary.mean_tokens_per_request:.2f}")
    print(f"wrote weekly profile to {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    catalog = load_catalog(args.catalog)
    serve(args.host, args.port, catalog, static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ranshare",
                                     description="Dual-use RAN + inference fleet economics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evaluate one scenario and export tables")
    _add_scenario_args(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="evaluate every sweep point and export tables")
    _add_scenario_args(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cat = sub.add_parser("catalog", help="platform catalog operations")
    p_cat.add_argument("action", choices=["list"])
    p_cat.add_argument("--catalog", help="platform catalog JSON (default: bundled)")
    p_cat.set_defaults(func=cmd_catalog)

    p_tr = sub.add_parser("ingest-trace", help="aggregate a request trace into a weekly profile")
    p_tr.add_argument("--in", dest="infile", required=True, help="trace CSV")
    p_tr.add_argument("--out", required=True, help="profile CSV to write")
    p_tr.add_argument("--timestamp-col", default="timestamp")
    p_tr.add_argument("--request-tokens-col", default="request_tokens")
    p_tr.add_argument("--response-tokens-col", default="response_tokens")
    p_tr.add_argument("--tokens", choices=["total", "request"], default="total",
                      help="count request+response tokens or request only")
    p_tr.set_defaults(func=cmd_ingest_trace)

    p_srv = sub.add_parser("serve", help="serve the JSON API (and UI assets if given)")
    p_srv.add_argument("--port", type=int, default=8180)
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--catalog", help="platform catalog JSON (default: bundled)")
    p_srv.add_argument("--static", help="directory of UI assets to serve at /")
    p_srv.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for path, msg in exc.violations:
            print(f"error: {path or 'config'}: {msg}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
