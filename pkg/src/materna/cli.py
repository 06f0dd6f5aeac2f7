"""Command line front end: seed, scenario, replay, serve."""

from __future__ import annotations

import argparse
import sys
import threading
import time

from .config import ServiceConfig, load_config
from .errors import BadScenario, CorruptLog, MaternaError
from .eventlog import read_events
from .httpapi import ApiServer
from .registry import Registry
from .scenario import parse_scenario, render_report, run_scenario, summarize_events
from .service import MaternaService


def _load_cfg(args) -> ServiceConfig:
    config = load_config(args.config) if getattr(args, "config", None) else ServiceConfig()
    if getattr(args, "facilities", None):
        config.facilities_path = args.facilities
    return config


def cmd_seed(args) -> int:
    try:
        registry = Registry.load(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MaternaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{len(registry.facilities)} facilities loaded")
    return 0


def cmd_scenario(args) -> int:
    config = _load_cfg(args)
    if not config.facilities_path:
        print("error: a facilities file is required (--facilities or config)", file=sys.stderr)
        return 2
    log_path = args.log or (args.out + ".events" if args.out else None)
    try:
        service = MaternaService.from_config(config, event_log_path=log_path)
    except (OSError, MaternaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        with open(args.file, encoding="utf-8") as fh:
            steps = parse_scenario(fh.read())
        run_scenario(service, steps, args.seed)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BadScenario as exc:
        print(f"error: scenario {exc}", file=sys.stderr)
        return 2
    finally:
        service.close()
    report = render_report(summarize_events(service.events))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report)
        print(f"report written to {args.out}")
        if log_path:
            print(f"event log written to {log_path}")
    else:
        sys.stdout.write(report)
    return 0


def cmd_replay(args) -> int:
    try:
        events = read_events(args.log)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CorruptLog as exc:
        print(f"error: corrupt log at seq {exc.seq}: {exc.reason}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(summarize_events(events)))
    return 0


def cmd_serve(args) -> int:
    config = _load_cfg(args)
    if args.listen:
        config.listen_addr = args.listen
    if args.console:
        config.console_path = args.console
    if not config.facilities_path:
        print("error: a facilities file is required (--facilities or config)", file=sys.stderr)
        return 2
    try:
        service = MaternaService.from_config(config)
    except (OSError, MaternaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    host, _, port = config.listen_addr.partition(":")
    server = ApiServer(service, addr=(host, int(port or 0)))
    if config.clock_mode == "wall":
        def sweeper():
            while True:
                time.sleep(args.sweep_interval)
                service.run_sweep()

        threading.Thread(target=sweeper, daemon=True).start()
    bound = server.server_address
    print(f"serving on http://{bound[0]}:{bound[1]} (clock: {config.clock_mode})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        service.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="materna")
    sub = parser.add_subparsers(dest="command", required=True)

    p_seed = sub.add_parser("seed", help="validate and count a facilities file")
    p_seed.add_argument("file")
    p_seed.set_defaults(func=cmd_seed)

    p_scn = sub.add_parser("scenario", help="run a scripted scenario deterministically")
    p_scn.add_argument("file")
    p_scn.add_argument("--seed", type=int, default=0)
    p_scn.add_argument("--out", help="report path (stdout when omitted)")
    p_scn.add_argument("--log", help="event log path (default: <out>.events)")
    p_scn.add_argument("--facilities", help="facilities file (overrides config)")
    p_scn.add_argument("--config", help="key=value config file")
    p_scn.set_defaults(func=cmd_scenario)

    p_rep = sub.add_parser("replay", help="summarize an event log")
    p_rep.add_argument("log")
    p_rep.set_defaults(func=cmd_replay)

    p_srv = sub.add_parser("serve", help="run the API service")
    p_srv.add_argument("--config", help="key=value config file")
    p_srv.add_argument("--facilities", help="facilities file (overrides config)")
    p_srv.add_argument("--listen", help="host:port (overrides config)")
    p_srv.add_argument("--console", help="directory with the built operator console")
    p_srv.add_argument("--sweep-interval", type=float, default=60.0,
                       help="wall-clock sweep period in seconds")
    p_srv.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
