"""Command-line front end for the toolkit.

One executable, seven subcommands:

    classify      enumerate and classify quantum parameter matrices
    build-table   compute the 625 x 625 structure-constant table
    verify        check associativity of a stored table
    fiber         center/radical analysis of a specialized fiber algebra
    hilbert       Hilbert polynomial and sheaf cohomology of a twist multiset
    normal-form   rewrite a generator word to the standard monomial basis
    report        the full reproduction suite as one JSON document

All input and output is JSON.  Output is deterministic: payloads are
serialized with sorted keys and contain no timings or machine state, so
identical configuration (and seed, for sampled verification) gives
byte-identical bytes.  Failures produce a machine-readable error record on
stderr and a nonzero exit status: 2 for usage and parse errors, 3 for
precondition violations, 4 for an exceeded full-triple budget, and 1 for a
verification that ran but found violations.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import cohomology, fiber, indices, qmatrix, rewrite, structure
from .errors import BudgetExceededError, PreconditionError

__all__ = ["RunConfig", "run", "main"]

_ACTION_NAMES = ("scale", "permute", "twist")


@dataclass
class RunConfig:
    """Everything one invocation needs; built by main() from argv."""

    command: str
    matrix_path: Optional[str] = None
    table_path: Optional[str] = None
    out_path: Optional[str] = None
    emit_matrices_path: Optional[str] = None
    actions: Optional[str] = None
    mode: str = "exact"
    seed: Optional[int] = None
    budget_seconds: Optional[float] = None
    point: Optional[str] = None
    twists: Optional[str] = None
    at: Optional[int] = None
    cohomology: bool = False
    word: Optional[str] = None
    emit: str = "json"
    threads: int = 1


class _CliError(Exception):
    def __init__(self, kind: str, message: str, path: Optional[str] = None,
                 position: Optional[dict] = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.path = path
        self.position = position

    def record(self) -> dict:
        err = {"kind": self.kind, "message": self.message}
        if self.path is not None:
            err["path"] = self.path
        if self.position is not None:
            err["position"] = self.position
        return {"error": err}

    def exit_code(self) -> int:
        return {"usage": 2, "parse": 2, "precondition": 3, "budget": 4}.get(self.kind, 1)


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError("not JSON serializable: %r" % (obj,))


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def _human_lines(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append("%s%s:" % (pad, key))
                lines.extend(_human_lines(value, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, key, json.dumps(value, default=_json_default)))
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)):
                lines.append("%s-" % pad)
                lines.extend(_human_lines(value, indent + 1))
            else:
                lines.append("%s- %s" % (pad, json.dumps(value, default=_json_default)))
    else:
        lines.append("%s%s" % (pad, json.dumps(obj, default=_json_default)))
    return lines


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliError("parse", "cannot read %s: %s" % (path, exc.strerror or exc), path=path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError("parse", "invalid JSON in %s: %s" % (path, exc.msg), path=path,
                        position={"line": exc.lineno, "col": exc.colno})


def _load_matrix(path: str) -> qmatrix.QMatrix:
    data = _load_json(path)
    try:
        return qmatrix.QMatrix.from_json(data)
    except PreconditionError:
        raise
    except (TypeError, ValueError) as exc:
        raise _CliError("parse", "not a 5x5 integer matrix in %s: %s" % (path, exc), path=path)


def _load_table(path: str) -> structure.StructureTable:
    data = _load_json(path)
    try:
        return structure.StructureTable.from_json(data)
    except PreconditionError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliError("parse", "not a structure table in %s: %s" % (path, exc), path=path)


def _parse_actions(text: Optional[str]):
    if text is None:
        return set(_ACTION_NAMES)
    names = {tok.strip() for tok in text.split(",") if tok.strip()}
    bad = names - set(_ACTION_NAMES)
    if bad or not names:
        raise _CliError("usage", "actions must be a nonempty subset of %s"
                        % (",".join(_ACTION_NAMES),))
    return names


def _parse_word(text: str) -> Tuple[int, ...]:
    parts = [tok.strip() for tok in text.split(",") if tok.strip()]
    try:
        word = tuple(int(tok) for tok in parts)
    except ValueError:
        raise _CliError("usage", "word must be comma-separated generator letters, got %r"
                        % (text,))
    return word


# ---------------------------------------------------------------------------
# command handlers: each returns (payload, exit_code, [(path, text), ...])


def _cmd_classify(config: RunConfig):
    actions = _parse_actions(config.actions)
    report = qmatrix.classify(threads=config.threads)
    payload = report.to_json()
    artifacts = []
    if config.actions is not None and actions != set(_ACTION_NAMES):
        mats = qmatrix.enumerate_generic(config.threads)
        orbits = qmatrix._partition(mats, actions)
        reps = sorted(qmatrix.QMatrix([min(o)[5 * i:5 * i + 5] for i in range(5)])
                      for o in orbits)
        payload["selected_actions"] = sorted(actions)
        payload["orbit_count_selected_actions"] = len(orbits)
        selected = [m.to_json() for m in reps]
    else:
        selected = payload["canonical_representatives"]
    if config.emit_matrices_path:
        artifacts.append((config.emit_matrices_path, _dumps(selected)))
    return payload, 0, artifacts


def _cmd_build_table(config: RunConfig):
    matrix = _load_matrix(config.matrix_path)
    table = structure.build_table(matrix)
    if not config.out_path:
        raise _CliError("usage", "build-table requires --out for the table file")
    text = json.dumps(table.to_json(), sort_keys=True, separators=(",", ":"),
                      default=_json_default) + "\n"
    payload = {
        "written": config.out_path,
        "source_matrix": matrix.to_json(),
        "entries": 625 * 625,
    }
    return payload, 0, [(config.out_path, text)]


def _cmd_verify(config: RunConfig):
    table = _load_table(config.table_path)
    report = structure.verify_associativity(
        table, config.mode, seed=config.seed,
        budget_seconds=config.budget_seconds, threads=config.threads)
    return report.to_json(), 0 if report.ok else 1, []


def _cmd_fiber(config: RunConfig):
    table = _load_table(config.table_path)
    point = fiber.FiberPoint.parse(config.point)
    algebra = fiber.specialize(table, point)
    payload = {
        "point": point.to_json(),
        "center_dim": fiber.center_dim(algebra),
        "radical_dim": fiber.radical_dim(algebra),
        "semisimple": fiber.is_semisimple(algebra),
    }
    return payload, 0, []


def _cmd_hilbert(config: RunConfig):
    twists = cohomology.TwistMultiset.parse(config.twists)
    poly = cohomology.hilbert_polynomial(twists)
    payload = {
        "twists": twists.to_json(),
        "polynomial": poly.to_json(),
    }
    if config.at is not None:
        payload["at"] = config.at
        payload["value"] = str(poly(config.at))
    if config.cohomology:
        window = [config.at] if config.at is not None else list(range(-5, 6))
        rows = []
        for n in window:
            h = cohomology.sheaf_cohomology(twists, n)
            rows.append({"n": n, "h": list(h), "euler": h[0] - h[1] + h[2] - h[3]})
        payload["cohomology"] = rows
    return payload, 0, []


def _cmd_normal_form(config: RunConfig):
    matrix = _load_matrix(config.matrix_path)
    word = _parse_word(config.word or "")
    element = rewrite.normal_form(word, matrix)
    payload = {
        "word": list(word),
        "terms": element.to_json(),
    }
    return payload, 0, []


def _cmd_report(config: RunConfig):
    classification = qmatrix.classify(threads=config.threads)
    base = qmatrix.canonical_generic_representative()
    certificate = structure.cy_certificate(base)

    fifth_powers = [rewrite.normal_form((i,) * 5, base) for i in range(5)]
    relation_sum = fifth_powers[0]
    for el in fifth_powers[1:]:
        relation_sum = relation_sum + el
    centrality = {
        "fifth_power_central": [rewrite.is_central(el, base) for el in fifth_powers],
        "defining_relation_vanishes": relation_sum.is_zero(),
        "generator_central": rewrite.is_central(rewrite.AlgElement.generator(0), base),
    }

    twists = cohomology.algebra_twist_multiset()
    poly = cohomology.hilbert_polynomial(twists)
    graded = [rewrite.graded_dimension(n) for n in range(11)]
    dims = {
        "graded_dimensions": graded,
        "hilbert_matches_graded": {
            str(n): poly(n) == rewrite.graded_dimension(5 * n)
            for n in range(1, 4)
        },
        "euler_at_zero": int(poly(0)),
        "dimension_at_zero": rewrite.graded_dimension(0),
    }
    h0 = cohomology.sheaf_cohomology(twists, 0)
    coh = {
        "hilbert_polynomial": poly.to_json(),
        "weight_histogram": list(indices.weight_histogram()),
        "h_at_zero": list(h0),
        "euler_matches_polynomial": all(
            cohomology.euler_characteristic(twists, n) == poly(n)
            for n in range(-5, 11)),
        "section_sum_matches_graded": all(
            cohomology.section_dimension_sum(twists, n) == rewrite.graded_dimension(5 * n)
            for n in range(0, 4)),
    }

    payload = {
        "classification": classification.to_json(),
        "cy_certificate": certificate.to_json(),
        "centrality": centrality,
        "dimensions": dims,
        "cohomology": coh,
    }
    if config.seed is not None:
        table = structure.build_table(base)
        sampled = structure.verify_associativity(
            table, "sampled=100000", seed=config.seed, threads=config.threads)
        payload["sampled_verification"] = sampled.to_json()
    return payload, 0, []


_HANDLERS = {
    "classify": _cmd_classify,
    "build-table": _cmd_build_table,
    "verify": _cmd_verify,
    "fiber": _cmd_fiber,
    "hilbert": _cmd_hilbert,
    "normal-form": _cmd_normal_form,
    "report": _cmd_report,
}


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one configured command; returns the process exit status."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    handler = _HANDLERS.get(config.command)
    if handler is None:
        record = _CliError("usage", "unknown command %r" % (config.command,))
        err.write(_dumps(record.record()))
        return record.exit_code()
    try:
        payload, code, artifacts = handler(config)
    except _CliError as exc:
        err.write(_dumps(exc.record()))
        return exc.exit_code()
    except BudgetExceededError as exc:
        record = _CliError("budget", str(exc))
        err.write(_dumps(record.record()))
        return record.exit_code()
    except PreconditionError as exc:
        record = _CliError("precondition", str(exc))
        err.write(_dumps(record.record()))
        return record.exit_code()
    for path, text in artifacts:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            record = _CliError("usage", "cannot write %s: %s" % (path, exc.strerror or exc))
            err.write(_dumps(record.record()))
            return record.exit_code()
    if config.emit == "human":
        out.write("\n".join(_human_lines(payload)) + "\n")
    else:
        out.write(_dumps(payload))
    return code


class _Parser(argparse.ArgumentParser):
    # argparse normally prints usage and exits; surface a typed error instead
    def error(self, message):
        raise _CliError("usage", message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qfermat", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for enumeration and verification")
    parser.add_argument("--emit", choices=("json", "human"), default="json",
                        help="output format (default json)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify quantum parameter matrices")
    p.add_argument("--actions", default=None,
                   help="comma-separated subset of scale,permute,twist")
    p.add_argument("--emit-matrices", dest="emit_matrices", default=None,
                   metavar="OUT.json", help="write canonical representatives here")

    p = sub.add_parser("build-table", help="build the structure-constant table")
    p.add_argument("--matrix", required=True, help="5x5 integer matrix JSON file")
    p.add_argument("--out", required=True, help="destination table JSON file")

    p = sub.add_parser("verify", help="verify associativity of a stored table")
    p.add_argument("--table", required=True, help="table JSON file")
    p.add_argument("--mode", default="exact",
                   help="exact | full | sampled=N (default exact)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed, required for sampled mode")
    p.add_argument("--budget-seconds", dest="budget_seconds", type=float, default=600.0,
                   help="abort full mode after this many seconds (default 600)")

    p = sub.add_parser("fiber", help="analyze the fiber algebra at a point")
    p.add_argument("--table", required=True, help="table JSON file")
    p.add_argument("--point", required=True,
                   help="comma-separated coordinates summing to zero")

    p = sub.add_parser("hilbert", help="Hilbert polynomial of a twist multiset")
    p.add_argument("--twists", required=True,
                   help='multiset like "0:1,-1:121,-2:381,-3:121,-4:1"')
    p.add_argument("--at", type=int, default=None, help="evaluate at this twist")
    p.add_argument("--cohomology", action="store_true",
                   help="include cohomology dimension tables")

    p = sub.add_parser("normal-form", help="rewrite a generator word")
    p.add_argument("--matrix", required=True, help="5x5 integer matrix JSON file")
    p.add_argument("--word", required=True,
                   help="comma-separated generator letters like 1,0,3,3")

    p = sub.add_parser("report", help="run the full reproduction suite")
    p.add_argument("--seed", type=int, default=None,
                   help="also run seeded sampled verification")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        matrix_path=getattr(args, "matrix", None),
        table_path=getattr(args, "table", None),
        out_path=getattr(args, "out", None),
        emit_matrices_path=getattr(args, "emit_matrices", None),
        actions=getattr(args, "actions", None),
        mode=getattr(args, "mode", "exact"),
        seed=getattr(args, "seed", None),
        budget_seconds=getattr(args, "budget_seconds", None),
        point=getattr(args, "point", None),
        twists=getattr(args, "twists", None),
        at=getattr(args, "at", None),
        cohomology=getattr(args, "cohomology", False),
        word=getattr(args, "word", None),
        emit=args.emit,
        threads=args.threads,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        sys.stderr.write(_dumps(exc.record()))
        return exc.exit_code()
    return run(_config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
