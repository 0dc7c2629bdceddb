"""Batch front-end: verify documents, derive maps, and run built-in demos.

Exit codes: 0 all checks pass, 1 parse/validation error, 2 at least one check
refuted, 3 inconclusive (a certificate could not be produced).  Output is
deterministic; files are written atomically (temp file, then rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

from .polycore import Polynomial, ShapeError
from .report import Report, Status
from .tangent import Space, check_tangent_axioms
from .dbundle import verify_bundle
from .connection import (
    Connection,
    canonical_connection,
    check_effective,
    check_horizontal,
    check_pair,
    check_vertical,
    christoffel_connection,
    decompose_point,
    derive_horizontal,
    total_bundle,
)
from . import serialize
from .serialize import SerializationError

EXIT_PASS = 0
EXIT_PARSE = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3

DEFAULT_MAX_DEGREE = 8


class DegreeError(ValueError):
    """An input exceeds the symbolic-expansion degree guard."""


def _max_degree_limit(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("TANGENTCAT_MAX_DEGREE")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise DegreeError(f"TANGENTCAT_MAX_DEGREE is not an integer: {env!r}") from exc
    return DEFAULT_MAX_DEGREE


def _guard_connection(c: Connection, limit: int) -> None:
    degrees = [c.bundle.sigma.max_degree(), c.bundle.zeta.max_degree(), c.bundle.lift.max_degree(), c.K.max_degree()]
    if c.H is not None:
        degrees.append(c.H.max_degree())
    worst = max(degrees, default=0)
    if worst > limit:
        raise DegreeError(
            f"input degree {worst} exceeds the guard ({limit}); raise --max-degree to proceed"
        )


def _guard_bundle(b, limit: int) -> None:
    worst = max(b.sigma.max_degree(), b.zeta.max_degree(), b.lift.max_degree())
    if worst > limit:
        raise DegreeError(
            f"input degree {worst} exceeds the guard ({limit}); raise --max-degree to proceed"
        )


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SerializationError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SerializationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tangentcat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(report: Report, fmt: str, extra: Optional[dict] = None) -> None:
    if fmt == "json":
        payload = report.to_dict()
        if extra:
            payload.update(extra)
        sys.stdout.write(serialize.dumps(payload))
    else:
        sys.stdout.write(report.render_text())
        if extra:
            for key, value in extra.items():
                sys.stdout.write(f"{key}: {value}\n")


def _exit_code(report: Report) -> int:
    if report.verdict is Status.PASS:
        return EXIT_PASS
    if report.verdict is Status.FAIL:
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _connection_gate(c: Connection) -> tuple[Report, Optional[Connection], Optional[object]]:
    """Run the full chain: vertical, effectiveness, derived H, horizontal, pair."""
    rep = Report(subject="connection gate")
    rep.extend(check_vertical(c), prefix="vertical: ")
    eff, decomp = check_effective(c)
    rep.extend(eff, prefix="effectiveness: ")
    if decomp is None:
        return rep, None, None
    full = c if c.H is not None else derive_horizontal(c)
    rep.extend(check_horizontal(full), prefix="horizontal: ")
    rep.extend(check_pair(full), prefix="pair: ")
    return rep, full, decomp


def cmd_verify(args) -> int:
    limit = _max_degree_limit(args.max_degree)
    doc = _load_json(args.path)
    if args.kind == "bundle":
        b = serialize.bundle_from_json(doc)
        _guard_bundle(b, limit)
        report = verify_bundle(b)
    else:
        c = serialize.connection_from_json(doc)
        _guard_connection(c, limit)
        report, _, _ = _connection_gate(c)
    _emit(report, args.format)
    return _exit_code(report)


def _sidecar(path: str, tag: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}.{tag}{ext or '.json'}"


def cmd_derive_h(args) -> int:
    limit = _max_degree_limit(args.max_degree)
    c = serialize.connection_from_json(_load_json(args.path))
    _guard_connection(c, limit)
    try:
        full = derive_horizontal(Connection(bundle=c.bundle, K=c.K, gamma=c.gamma))
    except ShapeError as exc:
        report = Report(subject="horizontal derivation")
        report.check("derivation", "an effective vertical map determines H", False, str(exc))
        _emit(report, args.format)
        return EXIT_FAIL
    out = _sidecar(args.path, "h")
    _atomic_write(out, serialize.dumps(serialize.map_to_json(full.H)))
    report = check_horizontal(full)
    report.extend(check_pair(full), prefix="pair: ")
    _emit(report, args.format, extra={"written": out})
    return _exit_code(report)


def cmd_total_bundle(args) -> int:
    limit = _max_degree_limit(args.max_degree)
    c = serialize.connection_from_json(_load_json(args.path))
    if c.bundle.base.dim == 0:
        raise SerializationError("total-bundle needs a base of positive dimension")
    _guard_connection(c, limit)
    eff, decomp = check_effective(c)
    if decomp is None:
        _emit(eff, args.format)
        return _exit_code(eff)
    bundle = total_bundle(decomp)
    report = eff
    report.extend(verify_bundle(bundle), prefix="total bundle: ")
    out = _sidecar(args.path, "total")
    _atomic_write(out, serialize.dumps(serialize.bundle_to_json(bundle)))
    _emit(report, args.format, extra={"written": out})
    return _exit_code(report)


def cmd_decompose(args) -> int:
    limit = _max_degree_limit(args.max_degree)
    c = serialize.connection_from_json(_load_json(args.path))
    _guard_connection(c, limit)
    try:
        point = [Fraction(tok) for tok in args.point.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError(f"bad point {args.point!r}: {exc}") from exc
    if len(point) != 2 * c.bundle.total.dim:
        raise SerializationError(
            f"point has {len(point)} coordinates; expected {2 * c.bundle.total.dim}"
        )
    eff, decomp = check_effective(c)
    if decomp is None:
        _emit(eff, args.format)
        return _exit_code(eff)
    triple = decompose_point(decomp, point)
    if args.format == "json":
        sys.stdout.write(
            serialize.dumps({"components": [[str(v) for v in part] for part in triple]})
        )
    else:
        rendered = ", ".join("(" + ", ".join(str(v) for v in part) + ")" for part in triple)
        sys.stdout.write(rendered + "\n")
    return EXIT_PASS


def _demo_christoffel() -> Connection:
    x = Polynomial.variable(1, 0)
    return christoffel_connection(Space.euclidean(1), (((x,),),))


def cmd_demo(args) -> int:
    if args.name == "tangent-axioms":
        report = Report(subject="tangent axioms, dimensions 1-3")
        for n in (1, 2, 3):
            report.extend(check_tangent_axioms(Space.euclidean(n)), prefix=f"dim {n}: ")
        _emit(report, args.format)
        return _exit_code(report)
    c = canonical_connection(1) if args.name == "canonical" else _demo_christoffel()
    report, full, decomp = _connection_gate(c)
    if decomp is not None:
        report.extend(verify_bundle(total_bundle(decomp)), prefix="total bundle: ")
    _emit(report, args.format)
    return _exit_code(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangentcat",
        description="Exact verifier for polynomial tangent-category structures.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="reject inputs whose maps exceed this total degree (default 8; "
        "env TANGENTCAT_MAX_DEGREE overrides)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a bundle or connection document")
    p.add_argument("path")
    p.add_argument("--kind", choices=("bundle", "connection"), default="connection")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive-h", help="derive the horizontal map and write it beside the input")
    p.add_argument("path")
    p.set_defaults(func=cmd_derive_h)

    p = sub.add_parser("total-bundle", help="emit the Whitney-sum structure on the tangent space")
    p.add_argument("path")
    p.set_defaults(func=cmd_total_bundle)

    p = sub.add_parser("decompose", help="split a second-order point into three tangent vectors")
    p.add_argument("path")
    p.add_argument("point", help="comma-separated rational coordinates")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("demo", help="run a built-in worked example")
    p.add_argument("name", choices=("canonical", "christoffel", "tangent-axioms"))
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SerializationError, DegreeError, ShapeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
