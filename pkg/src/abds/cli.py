"""Command-line front end.

Thin client over the HTTP service: every command builds a request from the
job document (``--input``) plus flag overrides, posts it to an in-process
ASGI app (or a remote ``--server`` URL), and formats the response.

Exit codes: 0 success; 2 input error; 3 capacity error; 1 internal error or
a failed golden-row reproduction.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from . import __version__
from .errors import CapacityError, InputError
from .jobs import JobSpec, parse_job, report_envelope

_NEEDS_INPUT = {"orbit", "bound", "appdist", "mad", "code", "verify"}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abds",
        description="Defining-set distance bounds for abelian and cyclic codes.",
    )
    parser.add_argument("--version", action="version", version=f"abds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", metavar="FILE", help="job document (key-value text or JSON)")
        p.add_argument("--bounds", metavar="LIST", help="comma list of bound names (bch,ht)")
        p.add_argument(
            "--format", choices=("text", "structured"), default="text",
            help="output format (structured = versioned report document)",
        )
        p.add_argument("--server", metavar="URL", help="use a running service instead of in-process")
        return p

    add("orbit", "expand orbit representatives to full q-orbits")
    add("bound", "evaluate ds-bounds on a subset of Z_n")
    add("appdist", "apparent distance of the hypermatrix afforded by a defining set")
    add("mad", "minimum apparent distance descent with full trace")
    p_code = add("code", "code report: n, dimension, distance bound")
    p_code.add_argument("--over-u", action="store_true", help="maximize over root choices")
    p_code.add_argument("--trace", action="store_true", help="include the descent trace")
    p_verify = add("verify", "run an oracle suite (weight | soundness | lattice)")
    p_verify.add_argument("--seed", type=int, metavar="N", help="override the suite seed")
    p_verify.add_argument(
        "--max-codewords", type=int, metavar="N", help="codeword enumeration budget"
    )
    add("table1", "recompute the golden code table and compare")
    return parser


def _load_job(args) -> tuple[bytes | None, JobSpec]:
    if not args.input:
        if args.command in _NEEDS_INPUT:
            raise InputError(f"command {args.command!r} requires --input FILE")
        return None, JobSpec()
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from None
    return raw, parse_job(raw.decode("utf-8"))


def _build_request(args, spec: JobSpec) -> tuple[str, dict]:
    bounds = list(spec.bounds)
    if args.bounds:
        bounds = [b.strip() for b in args.bounds.split(",") if b.strip()]

    def need(field, value):
        if value is None:
            raise InputError(f"command {args.command!r} needs {field} in the job document")
        return value

    cmd = args.command
    if cmd == "orbit":
        return "/orbit", {
            "q": need("q", spec.q),
            "r": list(need("r", spec.r)),
            "reps": [list(t) for t in spec.reps],
        }
    if cmd == "bound":
        return "/bound", {
            "n": need("n", spec.n),
            "subset": list(spec.subset or ()),
            "bounds": bounds,
        }
    if cmd in ("appdist", "mad"):
        return f"/{cmd}", {
            "q": need("q", spec.q),
            "r": list(need("r", spec.r)),
            "reps": [list(t) for t in spec.reps],
            "bounds": bounds,
        }
    if cmd == "code":
        return "/code", {
            "q": need("q", spec.q),
            "r": list(need("r", spec.r)),
            "reps": [list(t) for t in spec.reps],
            "bounds": bounds,
            "over_u": bool(args.over_u or spec.options.get("over_u")),
            "trace": bool(args.trace or spec.options.get("trace")),
        }
    if cmd == "verify":
        payload = {
            "suite": need("suite", spec.options.get("suite")),
            "bounds": bounds,
        }
        if spec.q is not None:
            payload["q"] = spec.q
        if spec.r is not None:
            payload["r"] = list(spec.r)
        for key in ("trials", "count", "seed", "max_dim", "max_n", "max_codewords"):
            if key in spec.options:
                payload[key] = spec.options[key]
        if args.seed is not None:
            payload["seed"] = args.seed
        if args.max_codewords is not None:
            payload["max_codewords"] = args.max_codewords
        return "/verify", payload
    return "/table1", {}


def _post(args, path: str, payload: dict) -> tuple[int, dict]:
    if args.server:
        with httpx.Client(base_url=args.server, timeout=600.0) as client:
            resp = client.post(path, json=payload)
            return resp.status_code, _body_of(resp)

    from .service import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app(), raise_app_exceptions=False)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://abds.internal", timeout=600.0
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, _body_of(resp)

    return asyncio.run(go())


def _body_of(resp) -> dict:
    try:
        return resp.json()
    except Exception:
        return {"error": {"kind": "internal", "message": resp.text or "empty response"}}


def _tuple_str(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _print_trace(trace: dict) -> None:
    for i, step in enumerate(trace["matrices"]):
        reps = " ".join(_tuple_str(t) for t in step["orbit_reps"])
        print(f"M_{i}: {len(step['orbit_reps'])} orbits, {step['cells']} cells: {reps}")
    print("deltas:", ", ".join(str(v) for v in trace["deltas"]))
    print("values:", ", ".join(str(v) for v in trace["values"]), "-> result", trace["result"])
    print(f"stop: {trace['stop_reason']}")
    print(f"mu: {trace['mu']} (trace length {trace['length']})")


def _print_text(command: str, body: dict) -> int:
    if command == "orbit":
        for entry in body["orbits"]:
            members = " ".join(_tuple_str(m) for m in entry["members"])
            print(f"{_tuple_str(entry['rep'])} -> size {entry['size']}: {members}")
        print(f"total |D| = {body['total']}")
    elif command == "bound":
        for name, value in body["values"].items():
            print(f"{name}: {value}")
    elif command == "appdist":
        print(f"Delta_B = {body['value']}")
        for ax in body["axes"]:
            print(
                f"axis {ax['axis']}: omega={ax['omega']} epsilon={ax['epsilon']} "
                f"delta={ax['delta']} involved={ax['involved']}"
            )
    elif command == "mad":
        _print_trace(body["trace"])
    elif command == "code":
        line = (
            f"n={body['n']} dim={body['dimension']} Delta={body['value']} "
            f"bounds={','.join(body['bounds'])}"
        )
        if body.get("alpha_variant"):
            line += f" alpha-variant={_tuple_str(body['alpha_variant'])}"
        print(line)
        if body.get("trace"):
            _print_trace(body["trace"])
    elif command == "verify":
        for key, value in body["report"].items():
            print(f"{key}: {value}")
        if body["report"].get("violations", 0):
            return 1
    elif command == "table1":
        for row in body["rows"]:
            exp = row["expected"]
            if row["skipped"]:
                print(f"{row['name']} skipped: {row['reason']}")
                continue
            got = row["computed"]
            if row["match"]:
                print(f"{row['name']} ok: n={got['n']} dim={got['dimension']} Delta={got['value']}")
            else:
                print(
                    f"{row['name']} MISMATCH: expected n={exp['n']} dim={exp['dimension']} "
                    f"Delta={exp['value']}, got n={got['n']} dim={got['dimension']} "
                    f"Delta={got['value']}"
                )
        print(f"{body['matches']}/{body['comparable']} rows match")
        if not body["all_match"]:
            return 1
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        raw, spec = _load_job(args)
        path, payload = _build_request(args, spec)
        status, body = _post(args, path, payload)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 1

    if status >= 400:
        err = body.get("error", {})
        kind = err.get("kind", "internal")
        print(f"error ({kind}): {err.get('message', status)}", file=sys.stderr)
        if status == 422 or kind == "input":
            return 2
        if status == 413 or kind == "capacity":
            return 3
        return 1

    if args.format == "structured":
        envelope = report_envelope(args.command, body, raw, __version__)
        print(json.dumps(envelope, indent=2, sort_keys=True))
        if args.command == "table1" and not body.get("all_match", True):
            return 1
        if args.command == "verify" and body.get("report", {}).get("violations", 0):
            return 1
        return 0
    return _print_text(args.command, body)


if __name__ == "__main__":
    sys.exit(main())
