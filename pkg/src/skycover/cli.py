"""Command line client for the deployment service.

By default the service app is mounted in-process, so no network or separate
server is needed; pass --server to talk to a running instance instead. A
positional target is either a preset name or a path to a config JSON file.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .experiments import RunRecord, SummaryRecord, emit_csv, emit_summary_csv, preset_names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skycover", description=__doc__)
    parser.add_argument("--server", default=None, help="base URL of a running service; default runs in-process")

    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="replication seed")
    common.add_argument("--out", default=None, help="output file (JSON) or directory for CSV")
    common.add_argument("--solver", default="hybrid", help="solver name for solve runs")

    p_solve = sub.add_parser("solve", parents=[common], help="run one solver on one spawned scene")
    p_solve.add_argument("target", nargs="?", default=None, help="preset name or config path; defaults apply if omitted")

    p_exp = sub.add_parser("experiment", parents=[common], help="run a full replicated experiment grid")
    p_exp.add_argument("target", help="preset name or config path")

    p_val = sub.add_parser("validate", parents=[common], help="check a saved plan against all constraints")
    p_val.add_argument("plan_file", help="JSON file of [x, y, h] or [x, y, h, capacity] rows")
    p_val.add_argument("target", nargs="?", default=None, help="preset name or config path; defaults apply if omitted")

    p_orc = sub.add_parser("oracle", parents=[common], help="exhaustive grid search on a small instance")
    p_orc.add_argument("target", nargs="?", default=None, help="preset name or config path; defaults apply if omitted")
    p_orc.add_argument("--vehicle-count", type=int, default=8)
    p_orc.add_argument("--n-uavs", type=int, default=1)
    p_orc.add_argument("--nx", type=int, default=30)
    p_orc.add_argument("--ny", type=int, default=30)
    p_orc.add_argument("--n-altitudes", type=int, default=5)

    sub.add_parser("presets", parents=[common], help="list built-in experiment presets")

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    return parser


def _target_body(target):
    """Map a positional target onto the preset/config request fields."""
    if target is None:
        return {}
    path = Path(target)
    if path.exists():
        with open(path, "r", encoding="utf-8") as fh:
            return {"config": json.load(fh)}
    if target in preset_names():
        return {"preset": target}
    raise SystemExit("target %r is neither a readable file nor one of %r" % (target, preset_names()))


def _client(server):
    if server:
        return httpx.AsyncClient(base_url=server, timeout=None)
    from .service import create_app

    transport = httpx.ASGITransport(app=create_app())
    return httpx.AsyncClient(transport=transport, base_url="http://service", timeout=None)


async def _request(server, method: str, url: str, body=None) -> dict:
    async with _client(server) as client:
        response = await client.request(method, url, json=body)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise SystemExit("service error (%d): %s" % (response.status_code, detail))
    return response.json()


def _emit_json(payload: dict, out) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _cmd_solve(args) -> int:
    body = _target_body(args.target)
    body.update({"solver": args.solver, "seed": args.seed})
    payload = asyncio.run(_request(args.server, "POST", "/solve", body))
    _emit_json(payload, args.out)
    return 0


def _cmd_experiment(args) -> int:
    body = _target_body(args.target)
    payload = asyncio.run(_request(args.server, "POST", "/experiment", body))
    out_dir = Path(args.out) if args.out else Path.cwd()
    out_dir.mkdir(parents=True, exist_ok=True)
    records = [RunRecord(**r) for r in payload["records"]]
    summaries = [SummaryRecord(**s) for s in payload["summaries"]]
    emit_csv(records, out_dir / "records.csv")
    emit_summary_csv(summaries, out_dir / "summary.csv")
    print("wrote %d records to %s" % (len(records), out_dir / "records.csv"))
    return 0


def _cmd_validate(args) -> int:
    with open(args.plan_file, "r", encoding="utf-8") as fh:
        plan = json.load(fh)
    body = _target_body(args.target)
    body.update({"plan": plan, "seed": args.seed})
    payload = asyncio.run(_request(args.server, "POST", "/validate", body))
    _emit_json(payload, args.out)
    return 0 if not payload["violations"] else 1


def _cmd_oracle(args) -> int:
    body = _target_body(args.target)
    body.update(
        {
            "seed": args.seed,
            "vehicle_count": args.vehicle_count,
            "n_uavs": args.n_uavs,
            "nx": args.nx,
            "ny": args.ny,
            "n_altitudes": args.n_altitudes,
        }
    )
    payload = asyncio.run(_request(args.server, "POST", "/oracle", body))
    _emit_json(payload, args.out)
    return 0


def _cmd_presets(args) -> int:
    payload = asyncio.run(_request(args.server, "GET", "/presets"))
    _emit_json(payload, args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "experiment": _cmd_experiment,
    "validate": _cmd_validate,
    "oracle": _cmd_oracle,
    "presets": _cmd_presets,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
