"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import padic_map
from .coherent import (
    first_mismatch,
    pairing_report,
    pairing_series,
    parse_seq,
    renorm_pairing,
    rho_distance_sq,
)
from .dyadic import LocallyConstantFn, apply_distribution, integrate, l2_pairing
from .padic_map import CLAIMS, phi_functional, phi_state, run_claims, verify_proposition
from .scalar import ParseError, Scalar
from .series import DivergentAt, DivergentBeforeLimit, evaluate

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _seq(text: str):
    return parse_seq(text)


def _binary_seq(text: str):
    s = parse_seq(text)
    if not s.is_binary():
        raise ParseError(f"expected a binary sequence, got {text!r}")
    return s


def _load_fn(arg: str) -> LocallyConstantFn:
    """Inline JSON object or path to a JSON file."""
    try:
        obj = json.loads(arg) if arg.lstrip().startswith("{") else json.loads(Path(arg).read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read function {arg!r}: {exc}") from exc
    return LocallyConstantFn.from_json(obj)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(add_help=False)
    top.add_argument("--format", choices=("json", "csv", "text"), default="text")
    top.add_argument("--out", type=Path, help="write output here instead of stdout")
    # repeated after the subcommand; SUPPRESS keeps a global value from being reset
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS)

    p = _Parser(prog="freecoh", description=__doc__, parents=[top],
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pair = sub.add_parser("pair", parents=[common], help="pairing series of two coherent states")
    pair.add_argument("--u", required=True)
    pair.add_argument("--v", required=True)
    pair.add_argument("--t", help="evaluate the series at t = lambda^2")

    limit = sub.add_parser("limit", parents=[common], help="renormalized pairing at lambda -> sqrt 2")
    limit.add_argument("--u", required=True)
    limit.add_argument("--v", required=True)

    dist = sub.add_parser("distance", parents=[common], help="Fock distance of binary states")
    dist.add_argument("--u", required=True)
    dist.add_argument("--v", required=True)
    dist.add_argument("--t", required=True)

    integ = sub.add_parser("integrate", parents=[common], help="Haar integral of a step function")
    integ.add_argument("--f", required=True)

    l2 = sub.add_parser("l2", parents=[common], help="L2 pairing of two step functions")
    l2.add_argument("--f", required=True)
    l2.add_argument("--g", required=True)

    phi = sub.add_parser("phi", parents=[common], help="image of a state or action of a functional")
    group = phi.add_mutually_exclusive_group(required=True)
    group.add_argument("--state")
    group.add_argument("--functional")
    phi.add_argument("--test", help="test function for --functional")

    ver = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    ver.add_argument("--claim", choices=(*CLAIMS, "all"), default="all")
    ver.add_argument("--max-level", type=int, default=8)
    ver.add_argument("--seed", type=int, default=0)
    return p


def _cmd_pair(a) -> tuple[dict, int]:
    u, v = _seq(a.u), _seq(a.v)
    rep = pairing_report(u, v)
    out = {"u": str(u), "v": str(v), **rep.to_json()}
    if a.t is not None:
        out["t"] = str(Scalar.parse(a.t))
        out["value"] = str(evaluate(rep.series, Scalar.parse(a.t)))
    return out, EXIT_OK


def _cmd_limit(a) -> tuple[dict, int]:
    u, v = _seq(a.u), _seq(a.v)
    return {"u": str(u), "v": str(v), "limit": str(renorm_pairing(u, v))}, EXIT_OK


def _cmd_distance(a) -> tuple[dict, int]:
    u, v = _binary_seq(a.u), _binary_seq(a.v)
    t = Scalar.parse(a.t)
    rho2 = rho_distance_sq(u, v, t)
    rep = verify_proposition(u, v, t)
    out = {
        "u": str(u),
        "v": str(v),
        "t": str(t),
        "rho_sq": str(rho2),
        "first_mismatch": first_mismatch(u, v),
        "isometry_lhs": str(rep.lhs),
        "isometry_rhs": str(rep.rhs),
        "isometry_equal": rep.equal,
    }
    return out, EXIT_OK if rep.equal else EXIT_FAILED


def _cmd_integrate(a) -> tuple[dict, int]:
    return {"integral": str(integrate(_load_fn(a.f)))}, EXIT_OK


def _cmd_l2(a) -> tuple[dict, int]:
    return {"l2": str(l2_pairing(_load_fn(a.f), _load_fn(a.g)))}, EXIT_OK


def _cmd_phi(a) -> tuple[dict, int]:
    if a.state is not None:
        w = _seq(a.state)
        if not w.is_truncated():
            raise ValueError(f"--state needs a sequence with tail 1/2, got {w}")
        return {"state": str(w), "image": phi_state(w).to_json()}, EXIT_OK
    if a.test is None:
        raise ParseError("--functional needs --test")
    u = _seq(a.functional)
    dist = phi_functional(u)
    value = apply_distribution(dist, _load_fn(a.test))
    return {"functional": str(u), "kind": type(dist).__name__, "value": str(value)}, EXIT_OK


def _cmd_verify(a):
    if a.max_level < 0:
        raise ParseError("--max-level must be non-negative")
    claims = CLAIMS if a.claim == "all" else (a.claim,)
    reports = run_claims(claims, a.max_level, a.seed)
    summary = {}
    for r in reports:
        s = summary.setdefault(r.claim, {"instances": 0, "equal": 0})
        s["instances"] += 1
        s["equal"] += r.equal
    ok = all(r.equal for r in reports)
    return {"summary": summary, "all_equal": ok, "reports": reports}, EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "pair": _cmd_pair,
    "limit": _cmd_limit,
    "distance": _cmd_distance,
    "integrate": _cmd_integrate,
    "l2": _cmd_l2,
    "phi": _cmd_phi,
    "verify": _cmd_verify,
}


def _render(result: dict, fmt: str) -> str:
    reports = result.get("reports")
    if fmt == "json":
        if reports is not None:
            result = {**result, "reports": [r.to_json() for r in reports]}
        return json.dumps(result, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if reports is not None:
            w.writerow(["claim", "params", "lhs", "rhs", "equal"])
            for r in reports:
                j = r.to_json()
                w.writerow([j["claim"], json.dumps(j["params"], sort_keys=True),
                            json.dumps(j["lhs"]), json.dumps(j["rhs"]), j["equal"]])
        else:
            flat = {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in result.items()}
            w.writerow(flat.keys())
            w.writerow(flat.values())
        return buf.getvalue()
    lines = []
    if reports is not None:
        for claim, s in result["summary"].items():
            status = "PASS" if s["equal"] == s["instances"] else "FAIL"
            lines.append(f"{claim:<12} {s['equal']}/{s['instances']} exact  {status}")
        for r in reports:
            if not r.equal:
                lines.append(f"  mismatch {r.claim} {r.params}: lhs={r.lhs} rhs={r.rhs}")
        lines.append("all equal" if result["all_equal"] else "verification FAILED")
    else:
        for k, v in result.items():
            lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, code = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DivergentAt, DivergentBeforeLimit, ValueError, ZeroDivisionError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = _render(result, args.format)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
