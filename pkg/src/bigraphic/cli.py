"""Command-line front end.

Exit codes: 0 the verdict holds (bigraphic / forcibly), 1 it fails,
2 input or usage error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .core import MAX_LENGTH, MAX_VALUE, CheckReport, DegreePair, IntervalPair
from .enumeration import BudgetExceeded
from .gale_ryser import NotBigraphic, is_bigraphic, realize
from .interval_criteria import (
    DEFAULT_BUDGET,
    NoneFound,
    NotApplicable,
    PreconditionError,
    check_exact,
    check_existence,
    check_necessary,
    check_sufficient,
    necessity_witness,
)
from .oracle import MODES, UNCONSTRAINED, brute_forcibly, digest, run_campaign, validate

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class ParseError(ValueError):
    def __init__(self, position: str, reason: str):
        super().__init__(f"{position}: {reason}")
        self.position = position
        self.reason = reason


@dataclass
class InstanceDocument:
    intervals: IntervalPair | None = None
    degrees: DegreePair | None = None
    meta: dict[str, str] = field(default_factory=dict)


def _int_list(value, path: str, width: int | None = None) -> list:
    if not isinstance(value, list) or not value:
        raise ParseError(path, "expected a nonempty list")
    if len(value) > MAX_LENGTH:
        raise ParseError(path, f"length {len(value)} exceeds cap {MAX_LENGTH}")
    out = []
    for i, item in enumerate(value):
        where = f"{path}[{i}]"
        if width is not None:
            if not isinstance(item, list) or len(item) != width:
                raise ParseError(where, f"expected a list of {width} integers")
            lo, hi = (_number(v, f"{where}[{k}]") for k, v in enumerate(item))
            if lo > hi:
                raise ParseError(where, f"lo={lo} > hi={hi}")
            out.append((lo, hi))
        else:
            out.append(_number(item, where))
    return out


def _number(v, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(path, f"expected an integer, got {v!r}")
    if v < 0:
        raise ParseError(path, f"negative value {v}")
    if v > MAX_VALUE:
        raise ParseError(path, f"value {v} exceeds cap {MAX_VALUE}")
    return v


def parse_instance(text: str) -> InstanceDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("$", "expected a JSON object")
    kinds = [k for k in ("intervals", "degrees") if k in doc]
    if len(kinds) != 1:
        raise ParseError("$", "exactly one of 'intervals' or 'degrees' is required")
    unknown = set(doc) - {"intervals", "degrees", "meta"}
    if unknown:
        raise ParseError("$", f"unknown keys {sorted(unknown)}")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise ParseError("$.meta", "expected a map of strings")
    body = doc[kinds[0]]
    if kinds[0] == "intervals":
        if not isinstance(body, dict) or set(body) != {"L1", "L2"}:
            raise ParseError("$.intervals", "expected keys L1 and L2")
        L1 = _int_list(body["L1"], "$.intervals.L1", width=2)
        L2 = _int_list(body["L2"], "$.intervals.L2", width=2)
        return InstanceDocument(intervals=IntervalPair.of(L1, L2), meta=meta)
    if not isinstance(body, dict) or set(body) != {"P", "Q"}:
        raise ParseError("$.degrees", "expected keys P and Q")
    P = _int_list(body["P"], "$.degrees.P")
    Q = _int_list(body["Q"], "$.degrees.Q")
    return InstanceDocument(degrees=DegreePair(P, Q), meta=meta)


def dump_instance(doc: InstanceDocument) -> str:
    body = {"intervals": doc.intervals.to_json()} if doc.intervals else {"degrees": doc.degrees.to_json()}
    if doc.meta:
        body["meta"] = doc.meta
    return json.dumps(body)


def parse_edges(text: str, m: int, n: int) -> DegreePair:
    """Degrees of an ``i j`` edge list (0-based)."""
    P, Q = [0] * m, [0] * n
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            i, j = map(int, line.split())
        except ValueError:
            raise ParseError(f"line {lineno}", f"expected 'i j', got {line!r}") from None
        if not (0 <= i < m and 0 <= j < n) or (i, j) in seen:
            raise ParseError(f"line {lineno}", f"bad or repeated edge {i} {j}")
        seen.add((i, j))
        P[i] += 1
        Q[j] += 1
    return DegreePair(P, Q)


def _report_doc(command: str, report: CheckReport) -> dict:
    return {"command": command, "status": report.verdict, "report": report.to_json()}


def _text_report(doc: dict) -> str:
    lines = [f"{doc['command']}: {doc['status']}"]
    for v in doc.get("report", {}).get("violations", []):
        idx = next(k for k in v if k not in ("family", "lhs", "rhs"))
        lines.append(f"  {v['family']} {idx}={v[idx]}: {v['lhs']} > {v['rhs']}")
    for key in ("realization", "verdict", "witness", "record", "sums", "finding"):
        if key in doc:
            lines.append(f"  {key}: {json.dumps(doc[key])}")
    return "\n".join(lines)


def _need(doc: InstanceDocument, kind: str):
    value = getattr(doc, kind)
    if value is None:
        raise ParseError("$", f"this command needs a '{kind}' instance")
    return value


def _execute(args, doc: InstanceDocument) -> tuple[int, dict | None, str | None]:
    cmd = args.command
    if cmd == "check-bigraphic":
        report = is_bigraphic(_need(doc, "degrees"))
        return (EXIT_HOLDS if report.holds else EXIT_FAILS), _report_doc(cmd, report), None
    if cmd == "realize":
        pair = _need(doc, "degrees")
        try:
            g = realize(pair)
        except NotBigraphic as exc:
            return EXIT_FAILS, _report_doc(cmd, exc.report), None
        edges = "".join(f"{i} {j}\n" for i, j in g.edges()) if args.edges else None
        return EXIT_HOLDS, {"command": cmd, "status": "Realized", "realization": g.to_json()}, edges
    if cmd in INTERVAL_CHECKS:
        ip = _need(doc, "intervals")
        try:
            report = INTERVAL_CHECKS[cmd](ip)
        except NotApplicable as exc:
            return EXIT_FAILS, {"command": cmd, "status": "NotApplicable", "sums": exc.sums}, None
        return (EXIT_HOLDS if report.holds else EXIT_FAILS), _report_doc(cmd, report), None
    if cmd == "forcibly-brute":
        verdict = brute_forcibly(_need(doc, "intervals"), args.budget)
        code = EXIT_HOLDS if verdict.forcibly else EXIT_FAILS
        return code, {"command": cmd, "status": verdict.kind, "verdict": verdict.to_json()}, None
    if cmd == "witness":
        try:
            w = necessity_witness(_need(doc, "intervals"), args.budget)
        except PreconditionError as exc:
            raise ParseError("$", f"precondition violated: {exc}") from None
        except NoneFound as exc:
            return EXIT_HOLDS, {"command": cmd, "status": "NoneFound", "finding": exc.record}, None
        return EXIT_FAILS, {"command": cmd, "status": "Witness", "witness": w.to_json()}, None
    if cmd == "validate":
        record = validate(_need(doc, "intervals"), args.budget)
        if record.partial:
            raise BudgetExceeded(args.budget, 0)
        code = EXIT_FAILS if record.findings else EXIT_HOLDS
        status = "Findings" if record.findings else "Consistent"
        return code, {"command": cmd, "status": status, "record": record.to_json()}, None
    raise ParseError("$", f"unknown command {cmd}")


INTERVAL_CHECKS = {
    "check-existence": check_existence,
    "forcibly-sufficient": check_sufficient,
    "forcibly-necessary": check_necessary,
    "forcibly-exact": check_exact,
}

COMMANDS = (
    "check-bigraphic",
    "realize",
    *INTERVAL_CHECKS,
    "forcibly-brute",
    "witness",
    "validate",
    "fuzz",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigraphic", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("input", nargs="?", default="-", help="instance JSON file, '-' for stdin")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--edges", action="store_true", help="realize: print 'i j' edge lines instead of JSON")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration state budget")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--m-max", type=int, default=4)
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--deg-max", type=int, default=5)
    parser.add_argument("--mode", choices=MODES, default=UNCONSTRAINED)
    parser.add_argument("--workers", type=int, default=1)
    return parser


def _emit(doc: dict, fmt: str, out) -> None:
    out.write((json.dumps(doc) if fmt == "json" else _text_report(doc)) + "\n")


def _fuzz(args, out) -> int:
    if args.budget < 1 or args.count < 0 or min(args.m_max, args.n_max, args.deg_max) < 1:
        raise ParseError("flags", "budget, m-max, n-max and deg-max must be positive; count nonnegative")
    summaries = []
    for s in run_campaign(
        args.seed, args.count, args.m_max, args.n_max, args.deg_max, args.mode, args.budget, args.workers
    ):
        summaries.append(s)
        if args.format == "json":
            out.write(json.dumps(s) + "\n")
        else:
            out.write(f"seed={s['seed']} {s['status']} {s['kind']} findings={len(s['findings'])}\n")
    final = digest(summaries)
    out.write(json.dumps({"digest": final}) + "\n")
    return EXIT_FAILS if final["findings"] else EXIT_HOLDS


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_HOLDS
    try:
        if args.budget < 1:
            raise ParseError("--budget", "must be positive")
        if args.command == "fuzz":
            return _fuzz(args, stdout)
        if args.input == "-":
            text = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        code, doc, edges = _execute(args, parse_instance(text))
    except ParseError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except BudgetExceeded as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    if edges is not None:
        stdout.write(edges)
    else:
        _emit(doc, args.format, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
