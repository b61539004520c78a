"""Batch command-line interface.

Every command prints a JSON envelope {"status", "payload", "diagnostics"} on
stdout (or a plain-text rendering with --pretty); --out additionally writes
the bare payload as canonical JSON.  Exit codes: 0 ok, 1 domain error
(axiom, rationality or regularity mismatch), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .autgroup import (
    IntMatrix,
    UnitGroupAut,
    corank1_embedding,
    deformed_embedding,
    induced_map,
    is_regular,
    plain_embedding,
)
from .catalog import QBCParams, enumerate_entries, q_poly
from .descent import RationalityFailure, SplittingMatrix, twist
from .etale import EtaleAlgebra, quadratic_iso
from .exactpoly import ParseError, as_rational
from .monoidcore import dumps, monoid_from_dict, monoid_to_dict, verify_axioms

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: object
    diagnostics: list = field(default_factory=list)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.status == "ok" else EXIT_DOMAIN

    def to_dict(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _coeff_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"not an integer list: {text!r}") from None


def _matrix(text: str) -> list[list[Fraction]]:
    rows = [_coeff_list(r) for r in text.split(";")]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise UsageError(f"matrix must be square, rows separated by ';': {text!r}")
    return rows


def cmd_catalog(dim, bound=0, ds=(), cubics=()) -> CommandResult:
    if dim not in (1, 2, 3):
        raise UsageError("--dim must be 1, 2 or 3")
    if bound < 0:
        raise UsageError("--bound must be nonnegative")
    try:
        entries = enumerate_entries(dim, bound, ds, cubics)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = [e.to_dict() for e in entries]
    text = "\n".join(e.monoid.format() for e in entries)
    return CommandResult("ok", payload, [f"{len(entries)} entries"], text)


def _monoids_in(data) -> list[tuple[str, dict]]:
    """A file holds one monoid, one catalog entry, or a catalog array."""
    items = data if isinstance(data, list) else [data]
    out = []
    for i, item in enumerate(items):
        path = f"$[{i}]" if isinstance(data, list) else "$"
        if isinstance(item, dict) and "monoid" in item:
            out.append((f"{path}.monoid", item["monoid"]))
        else:
            out.append((path, item))
    return out


def cmd_verify(in_path: str) -> CommandResult:
    data = _read_json(in_path)
    reports, lines, failed = [], [], False
    for path, raw in _monoids_in(data):
        m = monoid_from_dict(raw, path)
        r = verify_axioms(m)
        failed = failed or not r.ok
        reports.append({"label": m.label, **r.to_json()})
        flags = f"assoc={r.associative} comm={r.commutative} unit={r.unital}"
        witness = "" if r.witness is None else f" witness: {r.witness.format(m.var_names())}"
        lines.append(f"{m.label or path}: {flags}{witness}")
    payload = reports[0] if not isinstance(data, list) else reports
    diags = [ln for ln in lines if "witness" in ln]
    return CommandResult("error" if failed else "ok", payload, diags, "\n".join(lines))


def cmd_qpoly(b: int, c: int) -> CommandResult:
    try:
        params = QBCParams(b, c)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    q = q_poly(params)
    names = ["x1", "x2", "y1", "y2"]
    diags = [f"variables: {','.join(names)}", f"d={params.d} e={params.e}"]
    return CommandResult("ok", q.to_json(), diags, q.format(names))


def cmd_twist(base_path: str, splitting_path: str) -> CommandResult:
    base = monoid_from_dict(_read_json(base_path))
    splitting = SplittingMatrix.from_json(_read_json(splitting_path))
    try:
        m = twist(base, splitting)
    except RationalityFailure as exc:
        return CommandResult("error", None, [f"{type(exc).__name__}: {exc}"], str(exc))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = verify_axioms(m)
    diags = [] if report.ok else ["twisted structure fails the axioms"]
    return CommandResult("ok" if report.ok else "error", monoid_to_dict(m), diags, m.format())


def cmd_autcheck(family: str, matrix, b=None, c=None, bvec=None, z=1) -> CommandResult:
    try:
        if family == "plain":
            e = plain_embedding(b, c)
        elif family == "deformed":
            e = deformed_embedding(QBCParams(b, c))
        elif family == "corank1":
            e = corank1_embedding(bvec)
        else:
            raise UsageError(f"unknown family {family!r}")
        if family == "corank1":
            g = UnitGroupAut(IntMatrix(tuple(tuple(int(x) for x in r) for r in matrix)), ((z,),))
        else:
            if len(matrix) != 2:
                raise UsageError("plain/deformed families take a 2x2 matrix")
            (al, be), (ga, de) = matrix
            g = UnitGroupAut.linear(al, be, ga, de)
        images = induced_map(e, g)
        expected = e.closed_form(g)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    regular = is_regular(images)
    names = [f"x{i + 1}" for i in range(e.n)]
    payload = {
        "family": family,
        "params": e.params,
        "matrix": [[str(x) for x in r] for r in matrix],
        "regular": regular,
        "expected": expected,
    }
    text = "\n".join(f"x{i + 1} -> {p.format(names)}" for i, p in enumerate(images))
    text += f"\nregular={regular} expected={expected}"
    status = "ok" if regular == expected else "error"
    diags = [] if status == "ok" else ["computed regularity disagrees with the closed form"]
    return CommandResult(status, payload, diags, text)


def cmd_norm(algebra_path: str) -> CommandResult:
    alg = EtaleAlgebra.from_json(_read_json(algebra_path))
    norm = alg.norm_form().poly
    diags = [
        f"factor {i + 1}: degree {f.degree}, discriminant {f.discriminant()}"
        for i, f in enumerate(alg.factors)
    ]
    names = [f"x{i + 1}" for i in range(alg.dim)]
    return CommandResult("ok", norm.to_json(), diags, norm.format(names))


def cmd_iso(d1, d2) -> CommandResult:
    try:
        verdict = quadratic_iso(d1, d2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"d1": str(as_rational(d1)), "d2": str(as_rational(d2)), "isomorphic": verdict}
    return CommandResult("ok", payload, [], f"Q(sqrt({d1})) ~ Q(sqrt({d2})): {verdict}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="monoidforms",
        description="Commutative monoid structures on affine space over Q.",
        epilog="Negative or fractional values: write --d=-1/2, --cubic=-2,0,0,1.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="also write the payload as canonical JSON to this file")
        p.add_argument("--pretty", action="store_true", help="plain-text rendering on stdout")
        return p

    p = common(sub.add_parser("catalog", help="enumerate the classification tables"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--bound", type=int, default=0, help="upper bound for b and c")
    p.add_argument("--d", action="append", default=[], help="quadratic field Q(sqrt(d)); repeatable")
    p.add_argument("--cubic", action="append", default=[],
                   help="cubic minimal polynomial, coefficients low-to-high; repeatable")

    p = common(sub.add_parser("verify", help="check the monoid axioms"))
    p.add_argument("--in", dest="in_path", required=True)

    p = common(sub.add_parser("qpoly", help="emit Q_{b,c}"))
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)

    p = common(sub.add_parser("twist", help="twist a split monoid by a quadratic splitting"))
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--splitting", required=True)

    p = common(sub.add_parser("autcheck", help="regularity of an induced automorphism"))
    p.add_argument("--family", choices=["plain", "deformed", "corank1"], required=True)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--bvec", help="corank-1 exponent vector, e.g. 1,1,2")
    p.add_argument("--matrix", required=True, help="rows separated by ';', e.g. '1,0;1,1'")
    p.add_argument("--z", default="1", help="G_m scalar for the corank-1 family")

    p = common(sub.add_parser("norm", help="norm form of an algebra"))
    p.add_argument("--in", dest="in_path", required=True)

    p = common(sub.add_parser("iso", help="isomorphism of Q(sqrt(d1)) and Q(sqrt(d2))"))
    p.add_argument("--d", action="append", default=[], required=True)
    return ap


def run(args: argparse.Namespace) -> CommandResult:
    if args.command == "catalog":
        return cmd_catalog(args.dim, args.bound, [_rational(d) for d in args.d],
                           [_coeff_list(c) for c in args.cubic])
    if args.command == "verify":
        return cmd_verify(args.in_path)
    if args.command == "qpoly":
        return cmd_qpoly(args.b, args.c)
    if args.command == "twist":
        return cmd_twist(args.in_path, args.splitting)
    if args.command == "autcheck":
        if args.family == "corank1" and args.bvec is None:
            raise UsageError("--bvec is required for the corank1 family")
        if args.family != "corank1" and (args.b is None or args.c is None):
            raise UsageError("--b and --c are required for this family")
        bvec = _int_list(args.bvec) if args.bvec is not None else None
        return cmd_autcheck(args.family, _matrix(args.matrix), args.b, args.c, bvec, _rational(args.z))
    if args.command == "norm":
        return cmd_norm(args.in_path)
    if args.command == "iso":
        if len(args.d) != 2:
            raise UsageError("iso takes exactly two --d values")
        return cmd_iso(_rational(args.d[0]), _rational(args.d[1]))
    raise UsageError(f"unknown command {args.command}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = run(args)
    except (UsageError, ParseError) as exc:
        print(dumps({"status": "error", "payload": None, "diagnostics": [str(exc)]}))
        return EXIT_USAGE
    if args.out and result.payload is not None:
        try:
            Path(args.out).write_text(dumps(result.payload) + "\n")
        except OSError as exc:
            print(dumps({"status": "error", "payload": None,
                         "diagnostics": [f"cannot write {args.out}: {exc.strerror}"]}))
            return EXIT_USAGE
    if args.pretty:
        print(result.text)
        for d in result.diagnostics:
            print(f"# {d}")
    else:
        print(dumps(result.to_dict()))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
