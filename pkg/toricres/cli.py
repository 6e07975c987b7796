#!/usr/bin/env python3
"""
toricres command line

Singularity orders, blowups, resolutions and cobordism certificates for
characteristic pairs stored as JSON documents.

Usage:
    toricres validate -i pair.json            # Check a document
    toricres orders --all -i pair.json        # Singular locus
    toricres resolve -i pair.json             # Resolve all singularities
    toricres cobound -i hyper.json            # Build a cobordism certificate
    toricres --help                           # Show help
"""

import argparse
import logging
import sys
from fractions import Fraction

from . import __version__, documents
from .charpair import HyperCharPair, face_order, is_characteristic, singular_locus, validate_hyper_characteristic, validate_r_characteristic
from .cobordism import EmbeddedPolytope, cobound, cone_hyper_characteristic, validate_embedded
from .errors import CharacteristicError, InputError, ResolutionGuardError, ToricError
from .polytope import SimplePolytope, faces_of_codim, validate
from .resolution import FaceRule, PointRule, ResolutionConfig, blowup_pair, choice_from_coefficients, choose_lattice_point, resolve

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_INTERRUPTED = 130

logger = logging.getLogger(__name__)


class Colors:
    """ANSI color codes for terminal output"""

    GREEN = "\033[0;32m"
    CYAN = "\033[0;36m"
    RED = "\033[0;31m"
    YELLOW = "\033[0;33m"
    RESET = "\033[0m"
    BOLD = "\033[1m"


def _paint(color, msg):
    if sys.stderr.isatty():
        return f"{color}{msg}{Colors.RESET}"
    return msg


def success(msg):
    """Print success message in green"""
    print(_paint(Colors.GREEN, f"✓ {msg}"), file=sys.stderr)


def info(msg):
    """Print info message in cyan"""
    print(_paint(Colors.CYAN, msg), file=sys.stderr)


def warning(msg):
    """Print warning message in yellow"""
    print(_paint(Colors.YELLOW, f"⚠ WARNING: {msg}"), file=sys.stderr)


def error(msg):
    """Print error message in red"""
    print(_paint(Colors.RED, f"✗ ERROR: {msg}"), file=sys.stderr)


def _read_input(args):
    if args.input in (None, "-"):
        return documents.load_document(sys.stdin, "<stdin>")
    return documents.load_document(args.input)


def _load(args, *kinds):
    doc = _read_input(args)
    kind = getattr(args, "kind", None) or doc["kind"]
    if kind not in kinds:
        raise InputError(f"{args.command} needs a {' or '.join(kinds)} document, got {kind}")
    return documents.build(doc, kind)


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _emit(args, doc):
    if args.format == "text":
        _write_text(args.output, render_text(doc))
    else:
        _write_text(args.output, documents.dumps(doc))


def _parse_face(polytope, text):
    tokens = [token for token in text.split(",") if token.strip()]
    if not tokens:
        raise CharacteristicError("empty face")
    return polytope.face(tokens)


def _parse_rationals(text):
    values = []
    for token in text.split(","):
        try:
            values.append(Fraction(token.strip()))
        except (ValueError, ZeroDivisionError):
            raise CharacteristicError(f"invalid coefficient {token.strip()!r}") from None
    return values


def _parse_integers(text):
    try:
        return tuple(int(token) for token in text.split(","))
    except ValueError:
        raise CharacteristicError(f"invalid integer vector {text!r}") from None


def _config(args):
    return ResolutionConfig(max_steps=args.max_steps, face_rule=FaceRule(args.face_rule), point_rule=PointRule(args.point_rule))


def _face_entry(face, order, **extra):
    entry = documents.face_document(face)
    entry["order"] = documents.encode_int(order)
    entry.update(extra)
    return entry


def cmd_validate(args):
    subject = _load(args, *documents.INPUT_KINDS)
    if isinstance(subject, SimplePolytope):
        report = validate(subject)
    elif isinstance(subject, EmbeddedPolytope):
        report = validate_embedded(subject)
    elif isinstance(subject, HyperCharPair):
        report = validate_hyper_characteristic(subject)
    else:
        report = validate_r_characteristic(subject)

    _emit(args, documents.output_document("report", report.to_dict()))
    if report.valid:
        success(f"{report.subject} is valid")
        return EXIT_OK
    error(f"{report.subject}: {report.first().message}")
    return EXIT_DOMAIN


def cmd_orders(args):
    pair = _load(args, "rcharpair")
    validate_r_characteristic(pair).raise_for(CharacteristicError)

    if args.face is not None:
        faces = [_parse_face(pair.polytope, args.face)]
    elif args.codim is not None:
        faces = faces_of_codim(pair.polytope, args.codim)
    else:
        locus = singular_locus(pair)
        payload = {
            "characteristic": locus.is_empty,
            "entries": [_face_entry(entry.face, entry.order, maximal=entry.maximal) for entry in locus],
        }
        _emit(args, documents.output_document("locus", payload))
        return EXIT_OK

    payload = {"faces": [_face_entry(face, face_order(pair, face)) for face in faces]}
    _emit(args, documents.output_document("orders", payload))
    return EXIT_OK


def cmd_blowup(args):
    pair = _load(args, "rcharpair")
    validate_r_characteristic(pair).raise_for(CharacteristicError)
    face = _parse_face(pair.polytope, args.face)
    if args.point == "auto":
        choice = choose_lattice_point(pair, face)
    else:
        choice = choice_from_coefficients(pair, face, _parse_rationals(args.point), strict=not args.allow_zero_coefficients)
    result = blowup_pair(pair, choice)

    payload = {"pair": documents.pair_document(result), "choice": documents.choice_document(choice)}
    _emit(args, documents.output_document("blowup_result", payload))
    info(f"blew up {face.names()} with new vector {list(choice.new_vector)}")
    return EXIT_OK


def _emit_trace(args, trace, path):
    doc = documents.output_document("trace", documents.trace_document(trace), trace.config.to_dict())
    _emit(args, doc)
    if path:
        _write_text(path, documents.dumps(doc))


def cmd_resolve(args):
    pair = _load(args, "rcharpair")
    config = _config(args)
    try:
        trace = resolve(pair, config)
    except ResolutionGuardError as exc:
        if exc.trace is not None:
            _emit_trace(args, exc.trace, args.emit_trace)
        error(str(exc))
        return EXIT_GUARD

    _emit_trace(args, trace, args.emit_trace)
    if not is_characteristic(trace.final):
        error("resolved pair is not characteristic")
        return EXIT_DOMAIN
    success(f"resolved in {trace.num_steps} step(s), {trace.final.polytope.num_facets} facets")
    return EXIT_OK


def cmd_cobound(args):
    pair = _load(args, "hypercharpair")
    validate_hyper_characteristic(pair).raise_for(CharacteristicError)
    transverse = None if args.transverse == "auto" else _parse_integers(args.transverse)
    config = _config(args)
    try:
        certificate = cobound(pair, config, transverse)
    except ResolutionGuardError as exc:
        if exc.trace is not None:
            _emit_trace(args, exc.trace, None)
        error(str(exc))
        return EXIT_GUARD

    doc = documents.output_document("certificate", documents.certificate_document(certificate), config.to_dict())
    _emit(args, doc)
    if args.emit_certificate:
        _write_text(args.emit_certificate, documents.dumps(doc))
    success(f"certificate with transverse vector {list(certificate.transverse_vector)} and {certificate.trace.num_steps} step(s)")
    return EXIT_OK


def cmd_cone_normals(args):
    embedded = _load(args, "embedded_polytope")
    pair = cone_hyper_characteristic(embedded)
    report = validate_hyper_characteristic(pair)
    payload = {"pair": documents.pair_document(pair), "report": report.to_dict()}
    _emit(args, documents.output_document("report", payload))
    if report.valid:
        success("cone normals form a hyper characteristic function")
        return EXIT_OK
    error(f"cone normals: {report.first().message}")
    return EXIT_DOMAIN


def _render_faces(lines, entries):
    for entry in entries:
        mark = "*" if entry.get("maximal") else " "
        lines.append(f"{mark} {','.join(entry['names']):<30} {entry['order']}")


def render_text(doc):
    """Plain text rendering of an output document."""
    kind = doc["kind"]
    payload = doc["payload"]
    lines = [f"# {kind} (toricres {doc['tool_version']})"]
    if kind == "report" and "report" in payload:
        lines.append("vectors: " + " ".join(str(v) for v in payload["pair"]["vectors"]))
        payload = payload["report"]
    if kind == "report":
        lines.append(f"{payload['subject']}: {'valid' if payload['valid'] else 'invalid'}")
        lines.extend(f"  {v['code']}: {v['message']}" for v in payload["violations"])
    elif kind == "orders":
        _render_faces(lines, payload["faces"])
    elif kind == "locus":
        lines.append("characteristic" if payload["characteristic"] else f"{len(payload['entries'])} singular face(s), * marks maximal")
        _render_faces(lines, payload["entries"])
    elif kind == "blowup_result":
        choice = payload["choice"]
        lines.append(f"face {','.join(choice['face']['names'])}: c = ({', '.join(choice['coefficients'])}), new vector {choice['new_vector']}")
        lines.append(f"{len(payload['pair']['facets'])} facets, {len(payload['pair']['vertices'])} vertices")
    elif kind in ("trace", "certificate"):
        trace = payload if kind == "trace" else payload["trace"]
        if kind == "certificate":
            lines.append(f"transverse vector {payload['transverse_vector']} ({payload['transverse_source']})")
        lines.append(f"{'step':>4}  {'face':<24} {'order':>5}  {'coefficients':<24} {'new vector':<16} {'left':>4}")
        for step in trace["steps"]:
            choice = step["choice"]
            lines.append(
                f"{step['index']:>4}  {','.join(choice['face']['names']):<24} {step['order']:>5}  {','.join(choice['coefficients']):<24} {str(choice['new_vector']):<16} {step['after']['singular_faces']:>4}"
            )
        final = trace["final"]
        if final is not None:
            lines.append(f"final: {len(final['facets'])} facets, {len(final['vertices'])} vertices{'' if trace['complete'] else ' (incomplete)'}")
        if kind == "certificate":
            for entry in payload["locality"]:
                lines.append(f"step {entry['step']}: {entry['cap']} cap{'' if entry['literal'] else ' (through a new facet)'}")
    return "\n".join(lines) + "\n"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", default="-", help="Input JSON document (default: standard input)")
    common.add_argument("-o", "--output", default="-", help="Output file (default: standard output)")
    common.add_argument("--format", choices=("json", "text"), default="json", help="Output format")
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress to standard error")

    resolution = argparse.ArgumentParser(add_help=False)
    resolution.add_argument("--max-steps", type=int, default=None, help="Guard on the number of blowups")
    resolution.add_argument("--face-rule", choices=[rule.value for rule in FaceRule], default=FaceRule.MAX_ORDER_THEN_LEX.value, help="Which maximal face to blow up first")
    resolution.add_argument("--point-rule", choices=[rule.value for rule in PointRule], default=PointRule.MIN_SUM_THEN_LEX.value, help="Which lattice point to use")

    parser = argparse.ArgumentParser(
        prog="toricres",
        description="Singularities, resolutions and cobordisms of toric orbifolds",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  toricres validate -i prism.json
  toricres orders --face 2,3 -i prism.json
  toricres blowup --face 2,3 --point 1/2,1/2 -i prism.json
  toricres resolve --emit-trace trace.json -i prism.json
  toricres cobound --transverse 1,2,0 -i pentagon.json

Exit codes:
  0 success, 1 domain failure, 2 input or schema error, 3 step guard exceeded
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    validate_cmd = commands.add_parser("validate", parents=[common], help="Validate a document")
    validate_cmd.add_argument("--kind", choices=documents.INPUT_KINDS, help="Interpret the document as this kind")
    validate_cmd.set_defaults(func=cmd_validate)

    orders_cmd = commands.add_parser("orders", parents=[common], help="Singularity orders of faces")
    which = orders_cmd.add_mutually_exclusive_group()
    which.add_argument("--codim", type=int, help="All faces of this codimension")
    which.add_argument("--face", help="One face, as comma separated facet names or indices")
    which.add_argument("--all", action="store_true", help="The singular locus with maximal faces marked (default)")
    orders_cmd.set_defaults(func=cmd_orders)

    blowup_cmd = commands.add_parser("blowup", parents=[common], help="Blow up one face")
    blowup_cmd.add_argument("--face", required=True, help="Comma separated facet names or indices")
    blowup_cmd.add_argument("--point", default="auto", help="auto, or coefficients c1,c2,... as rationals p/q")
    blowup_cmd.add_argument("--allow-zero-coefficients", action="store_true", help="Accept zero coefficients in --point")
    blowup_cmd.set_defaults(func=cmd_blowup)

    resolve_cmd = commands.add_parser("resolve", parents=[common, resolution], help="Resolve all singularities")
    resolve_cmd.add_argument("--emit-trace", help="Also write the full trace to this file")
    resolve_cmd.set_defaults(func=cmd_resolve)

    cobound_cmd = commands.add_parser("cobound", parents=[common, resolution], help="Build a cobordism certificate")
    cobound_cmd.add_argument("--transverse", default="auto", help="auto, or the cap vector a1,a2,...")
    cobound_cmd.add_argument("--emit-certificate", help="Also write the certificate to this file")
    cobound_cmd.set_defaults(func=cmd_cobound)

    cone_cmd = commands.add_parser("cone-normals", parents=[common], help="Hyper characteristic function from cone normals")
    cone_cmd.set_defaults(func=cmd_cone_normals)

    return parser


def run(argv=None):
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        format="%(asctime)s.%(msecs)03d %(levelname)-8s %(message)s",
        level=logging.INFO if args.verbose else logging.WARNING,
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    logger.debug("running %s", args.command)
    try:
        return args.func(args)
    except InputError as e:
        error(str(e))
        return EXIT_INPUT
    except ToricError as e:
        error(str(e))
        return EXIT_DOMAIN


def main():
    """Main entry point"""
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        sys.exit(EXIT_INTERRUPTED)


if __name__ == "__main__":
    main()
