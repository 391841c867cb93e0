"""Command-line entry point: ``trigroup <command> ...``.

Exit codes: 0 success, 1 internal error, 2 invalid input or failed
validation, 3 undecided verdict, 4 no certificate found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import billiards, diagram, tits, unfold, wallpaper, witness
from .billiards import EXACT, FLOAT, TypedWord
from .groups import GroupError
from .quadrat import QuadRat

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_UNDECIDED, EXIT_NOT_FOUND = 0, 1, 2, 3, 4

INFINITE_HINT = ("only finite groups given by Cayley tables are accepted; triangles with "
                 "infinite vertex or edge groups (such as those built from Thompson's "
                 "group F) are outside the finite casework and are rejected here")


class InputError(Exception):
    """Bad input; reported on stderr with exit code 2."""


class NotFound(Exception):
    """No certificate or witness exists within the search; exit code 4."""


# -- input ----------------------------------------------------------------------------


def read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def read_diagram(path: str) -> diagram.CorsonDiagram:
    data = read_json(path)
    try:
        return diagram.diagram_from_json(data)
    except diagram.InfiniteInput as e:
        raise InputError(f"{path}: {e}; {INFINITE_HINT}") from None
    except (diagram.DiagramError, GroupError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: {type(e).__name__}: {e}") from None


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.replace(" ", "").split(",")
    if len(parts) == 1 and len(text) == 3 and text.isdigit():
        parts = list(text)
    try:
        triple = tuple(int(p) for p in parts)
    except ValueError:
        raise InputError(f"bad triple {text!r}; expected e.g. 2,4,4") from None
    if len(triple) != 3:
        raise InputError(f"bad triple {text!r}; expected three integers")
    return triple


def parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"bad point {text!r}; expected x,y")
    try:
        return tuple(QuadRat.parse(p) for p in parts)
    except ValueError as e:
        raise InputError(str(e)) from None


def parse_word(text: str) -> TypedWord:
    try:
        return TypedWord.parse(text)
    except ValueError as e:
        raise InputError(f"bad word {text!r}: {e}") from None


# -- output -----------------------------------------------------------------------------


def emit(args, doc: dict, human: str) -> None:
    if args.json is not None:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text)
            sys.stdout.write(human)
    else:
        sys.stdout.write(human)


def _fmt(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _lines(*rows) -> str:
    return "".join(f"{r}\n" for r in rows)


# -- commands ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    d = read_diagram(args.diagram)
    report = diagram.validate(d)
    human = "ok\n" if report.ok else _lines(*(str(i) for i in report.issues))
    emit(args, report.to_json(), human)
    if not report.ok:
        sys.stderr.write(f"{args.diagram}: validation failed: {', '.join(report.kinds())}\n")
        return EXIT_INPUT
    return EXIT_OK


def _require_valid(path: str, d) -> None:
    report = diagram.validate(d)
    if not report.ok:
        raise InputError(f"{path}: validation failed: "
                         + "; ".join(str(i) for i in report.issues))


def cmd_angles(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    angles = diagram.all_angles(d, threads=args.threads)
    doc = {diagram.key_str(p): a.to_json() for p, a in angles.items()}
    human = _lines(*(f"{diagram.key_str(p)}: {a} (m_hat={a.m_hat})" for p, a in angles.items()))
    emit(args, doc, human)
    return EXIT_OK


def cmd_curvature(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    angles = diagram.all_angles(d, threads=args.threads)
    cls = diagram.curvature_from_angles(angles.values())
    total = diagram.angle_sum_over_pi(angles.values())
    doc = {**cls.to_json(), "angle_sum_over_pi": str(total)}
    human = f"{cls.kind}{' (degenerate)' if cls.degenerate else ''}, angle sum {total}*pi\n"
    emit(args, doc, human)
    return EXIT_OK


def cmd_branching(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    try:
        report = witness.find_branching(d)
    except witness.SphericalInput as e:
        raise InputError(str(e)) from None
    human = (_lines(*(json.dumps(c.to_json(), sort_keys=True) for c in report.causes))
             if report.branches else "no branching\n")
    emit(args, report.to_json(), human)
    return EXIT_OK


def cmd_witness(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    try:
        pair = witness.free_pair(d)
    except witness.NoBranching as e:
        raise NotFound(str(e)) from None
    except (witness.SphericalInput, billiards.NotEuclidean, billiards.DegenerateAngle) as e:
        raise InputError(str(e)) from None
    doc = pair.to_json()
    if pair.case == "Index3":
        try:
            rep = witness.verify_free_pair(d, pair, args.verify_depth, threads=args.threads)
        except witness.CertificationGap as e:
            raise NotFound(str(e)) from None
        doc["verification"] = rep.to_json()
        human = _lines(f"free pair on vertex {pair.a}: x = {pair.x}", f"y = {pair.y}",
                       f"certified {len(rep.certificates)} reduced words up to length "
                       f"{args.verify_depth}")
    else:
        human = _lines(f"amalgam witness: {json.dumps(doc['amalgam'], sort_keys=True)}")
    emit(args, doc, human)
    return EXIT_OK


def cmd_tits(args) -> int:
    data = read_json(args.diagram)
    try:
        v = tits.classify_json(data, verify_depth=args.verify_depth,
                               lattice_depth=args.lattice_depth, threads=args.threads)
    except (diagram.DiagramError, GroupError, KeyError, TypeError) as e:
        raise InputError(f"{args.diagram}: {type(e).__name__}: {e}") from None
    steps = "".join(f"  {n}. {s.rule}: {s.ref}\n" for n, s in enumerate(v.trace, 1))
    emit(args, v.to_json(), f"{v.kind}\n{steps}")
    if v.kind == tits.REJECTED:
        reason = v.trace[-1]
        extra = f"; {INFINITE_HINT}" if reason.rule == "infinite input" else ""
        sys.stderr.write(f"{args.diagram}: rejected ({reason.rule}){extra}\n")
        return EXIT_INPUT
    return EXIT_UNDECIDED if v.kind == tits.UNDECIDED else EXIT_OK


def cmd_certify(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    if args.word is None:
        raise InputError("certify needs --word, e.g. --word 1:1,2:1,3:1")
    w = parse_word(args.word)
    try:
        t = billiards.placement_for(d, args.mode)
    except billiards.BilliardError as e:
        raise InputError(str(e)) from None
    try:
        if args.infinite_order:
            if args.mode != EXACT:
                raise InputError("infinite-order certificates are exact only")
            cert = unfold.certify_infinite_order(d, w, t)
        else:
            cert = unfold.certify_nontrivial(d, w, t)
    except billiards.PreconditionLetterInBase as e:
        raise InputError(str(e)) from None
    except (billiards.NoSequenceFound, billiards.NoPeriodicSequenceFound,
            billiards.SearchExhausted) as e:
        raise NotFound(str(e)) from None
    except ValueError as e:
        raise InputError(str(e)) from None
    if not billiards.verify_certificate(d, t, cert):
        raise AssertionError("certificate fails to replay")
    if args.svg:
        Path(args.svg).write_text(billiards.to_svg(t, cert.sequence))
    emit(args, cert.to_json(), f"{cert.conclusion}: {cert.word} "
                               f"({cert.sequence.reflections} reflections)\n")
    return EXIT_OK


def cmd_shoot(args) -> int:
    triple = tuple(sorted(parse_triple(args.triple)))
    try:
        t = billiards.build_triangle([2 * n for n in triple], args.mode)
    except billiards.BilliardError as e:
        raise InputError(str(e)) from None
    try:
        if args.orthogonal is not None:
            if args.mode != EXACT:
                raise InputError("closed orthogonal shots are exact only")
            b = billiards.closed_orthogonal_shot(t, args.orthogonal)
        else:
            if args.start is None or args.direction is None:
                raise InputError("shoot needs --start and --direction, or --orthogonal EDGE")
            start, direction = parse_point(args.start), parse_point(args.direction)
            if args.mode == FLOAT:
                start = billiards.to_float_point(start)
                direction = billiards.to_float_point(direction)
            b = billiards.shoot(t, start, direction, args.reflections)
    except billiards.PocketHit as e:
        raise NotFound(str(e)) from None
    except (billiards.BilliardError, KeyError) as e:
        raise InputError(str(e)) from None
    if args.svg:
        Path(args.svg).write_text(billiards.to_svg(t, b))
    human = _lines(*(f"({_fmt(p[0])}, {_fmt(p[1])})" for p in b.points),
                   f"labels {','.join(map(str, b.labels))}")
    emit(args, {"triple": list(triple), **b.to_json()}, human)
    return EXIT_OK


def cmd_wallpaper(args) -> int:
    triple = tuple(sorted(parse_triple(args.triple)))
    try:
        rep = wallpaper.canonical_rep(triple)
    except wallpaper.UnsupportedTriple as e:
        raise InputError(str(e)) from None
    lat = wallpaper.translation_lattice(rep, args.lattice_depth)
    inter = wallpaper.intersection_check(rep)
    stabs = [len(wallpaper.vertex_stabilizer(rep, v)) for v in rep.vertices]
    doc = {"triple": list(triple),
           "generators": {k: g.to_json() for k, g in rep.generators.items()},
           "lattice": lat.to_json(),
           "stabilizer_orders": stabs,
           "intersections": [{"check": c, "ok": ok} for c, ok in inter.comparisons]}
    human = _lines(f"translation rank {lat.rank} (depth {args.lattice_depth})",
                   f"vertex stabilizer orders {stabs}",
                   *(f"{'ok  ' if ok else 'FAIL'} {c}" for c, ok in inter.comparisons))
    emit(args, doc, human)
    if lat.rank < 2 or not inter.ok:
        sys.stderr.write("wallpaper checks failed\n")
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_export(args) -> int:
    d = read_diagram(args.diagram)
    _require_valid(args.diagram, d)
    text = diagram.export_presentation(d)
    emit(args, {"presentation": text.splitlines()}, text)
    return EXIT_OK


def cmd_dominate(args) -> int:
    try:
        out = diagram.dominate(args.k, args.l, args.m)
    except (diagram.NotOrdered, diagram.NotNonSpherical) as e:
        raise InputError(str(e)) from None
    emit(args, {"input": [args.k, args.l, args.m], "euclidean": list(out)},
         f"{out[0]},{out[1]},{out[2]}\n")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be at least 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trigroup",
                                description="Angles, billiards and the Tits alternative "
                                            "for triangles of finite groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, diagram_arg=True):
        sp = sub.add_parser(name, help=help_text)
        if diagram_arg:
            sp.add_argument("diagram", help="diagram JSON file")
        sp.add_argument("--json", nargs="?", const="-", default=None, metavar="OUT",
                        help="machine-readable output to OUT (stdout when omitted)")
        sp.add_argument("--threads", type=_positive, default=1)
        sp.set_defaults(func=func)
        return sp

    command("validate", cmd_validate, "check maps, injectivity and commutativity")
    command("angles", cmd_angles, "Gersten-Stallings angles")
    command("curvature", cmd_curvature, "spherical, Euclidean or hyperbolic")
    command("branching", cmd_branching, "branching causes of the coset complex")
    sp = command("witness", cmd_witness, "explicit free pair")
    sp.add_argument("--verify-depth", type=_positive, default=2)
    sp = command("tits", cmd_tits, "large or small verdict with trace")
    sp.add_argument("--verify-depth", type=_positive, default=2)
    sp.add_argument("--lattice-depth", type=_positive, default=12)
    sp = command("certify", cmd_certify, "billiard certificate for a word")
    sp.add_argument("--word", help="comma-separated type:element letters, e.g. 1:1,2:1,3:1")
    sp.add_argument("--infinite-order", action="store_true",
                    help="certify every power with a periodic trajectory")
    sp.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    sp.add_argument("--svg", metavar="PATH")
    sp = command("shoot", cmd_shoot, "simulate a billiard trajectory", diagram_arg=False)
    sp.add_argument("triple", help="canonical triple, e.g. 2,4,4")
    sp.add_argument("--start", help="x,y with entries like 1/2+1/6*sqrt3")
    sp.add_argument("--direction", help="dx,dy")
    sp.add_argument("--reflections", type=_nonnegative, default=4)
    sp.add_argument("--orthogonal", type=int, metavar="EDGE",
                    help="closed orthogonal shot off the edge with this label")
    sp.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    sp.add_argument("--svg", metavar="PATH")
    sp = command("wallpaper", cmd_wallpaper, "isometry oracle checks", diagram_arg=False)
    sp.add_argument("triple", help="2,4,4 or 3,3,3 or 2,3,6")
    sp.add_argument("--lattice-depth", type=_positive, default=12)
    command("export-presentation", cmd_export, "presentation of the colimit group")
    sp = command("dominate", cmd_dominate, "Euclidean triple below a non-spherical one",
                 diagram_arg=False)
    sp.add_argument("k", type=int)
    sp.add_argument("l", type=int)
    sp.add_argument("m", type=int)
    return p


def run(argv=None) -> int:
    """Parse ``argv`` and run the command; returns the exit code."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except NotFound as e:
        sys.stderr.write(f"not found: {e}\n")
        return EXIT_NOT_FOUND
    except Exception as e:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
