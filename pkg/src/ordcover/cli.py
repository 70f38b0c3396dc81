"""Command line front end.

Exit codes: 0 success, 1 a hypothesis failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ordcover import gallery
from ordcover.certificate import CertificationRefused, certify, render_certificate, render_checklist, run_checks
from ordcover.curves import CurveError, arithmetic_genus, classify_node, is_prime, nodes, quotient_curve
from ordcover.document import DocumentError, dump_action, dump_curve, load_action, to_json
from ordcover.eegraph import GraphError, to_dot
from ordcover.perms import GroupError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise InputError(f"p must be an integer, got {text!r}") from None
    if not is_prime(p):
        raise InputError(f"p = {p} is not prime")
    return p


def cmd_gallery(args: argparse.Namespace) -> int:
    params = {k: getattr(args, k) for k in ("group", "h1", "h2", "n", "genus", "ell")}
    try:
        a = gallery.build(args.name, **params)
    except (gallery.GalleryError, GroupError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit(to_json(dump_action(a)), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    p = _prime(args.p)
    a = load_action(args.doc)
    checks = run_checks(a, p)
    lines = [f"CHECK {c.name} {c.status}: {c.evidence}" for c in checks]
    for node in nodes(a):
        try:
            lines.append(f"NODE {classify_node(a, node).describe()}")
        except CurveError as exc:
            lines.append(f"NODE {node[0]}~{node[1]}: unclassifiable ({exc})")
    ok = all(c.passed for c in checks)
    lines.append("RESULT PASS" if ok else "RESULT FAIL")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_quotient(args: argparse.Namespace) -> int:
    a = load_action(args.doc)
    try:
        d, _ = quotient_curve(a)
    except CurveError as exc:
        raise InputError(str(exc)) from exc
    _emit(to_json(dump_curve(d, label=f"{a.label}/quotient" if a.label else "quotient")), args.output)
    if args.dot:
        Path(args.dot).write_text(to_dot(a.graph, "C") + to_dot(d.graph, "D"), encoding="utf-8")
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    p = _prime(args.p)
    a = load_action(args.doc)
    try:
        cert = certify(a, p)
    except CertificationRefused as exc:
        _emit(render_checklist(exc.checklist, args.format), args.output)
        return EXIT_FAIL
    _emit(render_certificate(cert, args.format), args.output)
    return EXIT_OK


def cmd_genus(args: argparse.Namespace) -> int:
    a = load_action(args.doc)
    _emit(f"{arithmetic_genus(a.curve)}\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordcover",
        description="Nodal curves with group actions: quotients, hypothesis checks and smoothing certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gal = sub.add_parser("gallery", help="build an example curve document")
    gal.add_argument("name", choices=gallery.GALLERY_NAMES)
    gal.add_argument("--group", help="group name, e.g. A4, S3, D4, C2xC4 (triangle: C3 or S3)")
    gal.add_argument("--h1", help="order-2 generator in cycle notation")
    gal.add_argument("--h2", help="generator of order > 2 in cycle notation")
    gal.add_argument("--n", type=int, help="number of sides for ngon")
    gal.add_argument("--genus", type=int, help="genus for hyperelliptic")
    gal.add_argument("--ell", type=int, help="target genus for hyperelliptic-step")
    gal.add_argument("-o", "--output")
    gal.set_defaults(func=cmd_gallery)

    ver = sub.add_parser("verify", help="run the hypothesis checks on a document")
    ver.add_argument("doc")
    ver.add_argument("--p", "-p", required=True)
    ver.add_argument("-o", "--output")
    ver.set_defaults(func=cmd_verify)

    quo = sub.add_parser("quotient", help="write the quotient curve as a document")
    quo.add_argument("doc")
    quo.add_argument("--dot", metavar="PATH", help="also write DOT for the curve and its quotient")
    quo.add_argument("-o", "--output")
    quo.set_defaults(func=cmd_quotient)

    cer = sub.add_parser("certify", help="issue a smoothing certificate")
    cer.add_argument("doc")
    cer.add_argument("--p", "-p", required=True)
    cer.add_argument("--format", choices=("text", "json"), default="text")
    cer.add_argument("-o", "--output")
    cer.set_defaults(func=cmd_certify)

    gen = sub.add_parser("genus", help="print the arithmetic genus of the curve")
    gen.add_argument("doc")
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_genus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, DocumentError, GraphError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
