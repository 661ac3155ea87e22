"""Command-line entry point.

Exit status: 0 on success, 1 on a domain error (its class name goes to
stderr), 2 on an I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .assembly import nested_discs, verify_ping_pong
from .assembly.io import SchemaError, assembly_to_json, load_assembly
from .census import TSV_HEADER, census, count_Xg, enumerate_Xg
from .circles import is_inf
from .errors import CrossCheckFailure, PingPongFailure, SchottkyError
from .fixed_locus import locus_report, report_json
from .moebius import EPS_CLASS, classify, fixed_set, format_transform, parse_transform
from .signatures import (
    Signature,
    SignatureFormatError,
    check_epimorphism,
    find_epimorphism,
    is_admissible,
    n2_signatures_up_to,
    random_odd_signature,
    rank,
    rank_matches_closed_forms,
    realize,
)

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class InputError(Exception):
    """Unreadable or unparsable input; maps to exit status 2."""


@dataclass
class Writer:
    """Funnels every line of output through one ordered stream."""

    stream: object = None

    def __call__(self, text: str = "") -> None:
        out = self.stream or sys.stdout
        out.write(text + "\n")


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _signature(args) -> Signature:
    if getattr(args, "six", None):
        try:
            values = tuple(int(x) for x in args.six.split(","))
        except ValueError:
            raise InputError(f"--six expects six integers, got {args.six!r}") from None
        if len(values) != 6:
            raise InputError(f"--six expects six integers, got {len(values)}")
        return Signature.from_six_tuple(values)
    if not args.signature:
        raise InputError("give a signature JSON file or --six")
    return Signature.from_json(_read_json(args.signature))


def _assembly(path: str):
    try:
        return load_assembly(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _point(z) -> str:
    if is_inf(z):
        return "inf"
    re, im = z.real + 0.0, z.imag + 0.0
    return f"{re:.12g}{'+' if im >= 0 else '-'}{abs(im):.12g}i"


# subcommands


def cmd_classify(args, out: Writer) -> int:
    try:
        t = parse_transform(args.transform)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    cls = classify(t, args.eps)
    fs = fixed_set(t, args.eps) if cls.tag.value != "Identity" else None
    if args.format == "json":
        data = {"transform": format_transform(t), "class": cls.tag.value, "order": cls.order,
                "multiplier": cls.multiplier}
        if fs is not None:
            data["fixed_points"] = [_point(p) for p in fs.points]
            data["fixed_circle"] = str(fs.circle) if fs.circle is not None else None
        out(_dump(data).rstrip("\n"))
        return EXIT_OK
    out(str(cls))
    if fs is not None:
        if fs.circle is not None:
            out(f"fixed circle\t{fs.circle}")
        for p in fs.points:
            out(f"fixed point\t{_point(p)}")
    return EXIT_OK


def _describe(group, out: Writer) -> None:
    out(f"assembly\t{group.describe()}")
    for label, t in group.generators:
        out(f"generator\t{label}\t{format_transform(t)}\t{classify(t)}")
    for k, h in enumerate(group.hosts):
        out(f"host\t{k}\t{h}")


def cmd_build(args, out: Writer) -> int:
    group = _assembly(args.assembly)
    _describe(group, out)
    if args.out:
        _write_text(args.out, _dump(assembly_to_json(group)))
    return EXIT_OK


def cmd_verify(args, out: Writer) -> int:
    group = _assembly(args.assembly)
    report = verify_ping_pong(group, args.depth, args.eps_id)
    for line in report.lines():
        out(line)
    if not report.passed:
        raise PingPongFailure(report.first_failure())
    return EXIT_OK


def cmd_admit(args, out: Writer) -> int:
    s = _signature(args)
    ok, reason = is_admissible(s)
    out(f"{s}")
    out("admissible" if ok else f"not admissible: {reason}")
    return EXIT_OK


def cmd_rank(args, out: Writer) -> int:
    out(str(rank(_signature(args))))
    return EXIT_OK


def cmd_epi(args, out: Writer) -> int:
    s = _signature(args)
    phi = find_epimorphism(s)
    if phi is None:
        out("none")
        return EXIT_OK
    if args.format == "json":
        out(_dump({"n": s.n, "assignment": phi.as_dict(), "problems": check_epimorphism(s, phi)}).rstrip("\n"))
    else:
        out(str(phi))
    return EXIT_OK


def cmd_realize(args, out: Writer) -> int:
    s = _signature(args)
    group = realize(s, lam=args.lam)
    _describe(group, out)
    report = verify_ping_pong(group, args.depth)
    out(f"ping-pong\t{'pass' if report.passed else 'FAIL'}\tdepth {args.depth}\t"
        f"{report.words_checked} words")
    if args.out:
        _write_text(args.out, _dump(assembly_to_json(group)))
    if not report.passed:
        raise PingPongFailure(report.first_failure())
    return EXIT_OK


def cmd_census(args, out: Writer) -> int:
    if args.genus is not None:
        if args.list:
            for t in enumerate_Xg(args.genus):
                out(",".join(str(x) for x in t))
        else:
            out(str(count_Xg(args.genus)))
        return EXIT_OK
    if args.gmax < 1:
        raise InputError("--gmax must be at least 1")
    rows = census(args.gmax)
    text = TSV_HEADER + "\n" + "".join(r.tsv() + "\n" for r in rows)
    if args.out:
        _write_text(args.out, text)
        out(f"wrote {len(rows)} rows to {args.out}")
    else:
        out(text.rstrip("\n"))
    bad = [r.g for r in rows if not r.match]
    if bad:
        raise CrossCheckFailure(f"closed form and oracle disagree at g = {bad}")
    return EXIT_OK


def cmd_locus(args, out: Writer) -> int:
    s = _signature(args)
    report = report_json(s)
    if args.out:
        _write_text(args.out, _dump(report))
    if args.format == "json":
        out(_dump(report).rstrip("\n"))
        return EXIT_OK
    out(f"{s}")
    out("source\tshape\tcount\tfixed by\tlocation\tnote")
    for c in locus_report(s):
        out(c.row())
    if "orbifold" in report:
        out(f"orbifold\t{report['orbifold']}")
        out(f"orientable double\t{report['orbifold_plus']}")
        out(f"genus\t{report['genus']}")
    return EXIT_OK


def cmd_limitset(args, out: Writer) -> int:
    from .render import svg_document, write_figure

    group = _assembly(args.assembly)
    report = verify_ping_pong(group, min(args.depth, 4))
    if not report.passed:
        raise PingPongFailure(report.first_failure())
    nest = nested_discs(group, args.depth)
    circles = group.circles()
    _write_text(args.out, svg_document(circles, nest.points))
    if args.figure:
        write_figure(args.figure, circles, nest.points, group.describe())
    out(f"wrote {len(circles)} circles and {len(nest.points)} points to {args.out}")
    if nest.unresolved:
        out(f"{nest.unresolved} chains fell below floating-point resolution")
    return EXIT_OK


def cmd_reproduce(args, out: Writer) -> int:
    from .fixtures import reproduce_examples

    rows = reproduce_examples()
    for r in rows:
        out(r.line())
    failed = sum(not r.ok for r in rows)
    out(f"{len(rows) - failed}/{len(rows)} rows pass")
    return EXIT_OK


def cmd_crosscheck(args, out: Writer) -> int:
    """Rank against the closed forms: all n = 2 signatures up to ``--gmax``
    and ``--samples`` seeded random odd-n signatures."""
    from .fixed_locus import genus_from_orbifold

    bad = 0
    even = n2_signatures_up_to(args.gmax)
    for s in even:
        if not rank_matches_closed_forms(s):
            bad += 1
            out(f"mismatch\t{s}")
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        s = random_odd_signature(rng, rng.choice((3, 5, 7)))
        r, g = rank(s), genus_from_orbifold(s)
        if r != g:
            bad += 1
            out(f"mismatch\t{s}\trank {r}\tgenus formula {g}")
    out(f"n=2 signatures\t{len(even)}\nodd samples\t{args.samples}\tseed {args.seed}\nmismatches\t{bad}")
    if bad:
        raise CrossCheckFailure(f"{bad} rank mismatches")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extschottky", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    def sig_args(q):
        q.add_argument("signature", nargs="?", help="signature JSON file")
        q.add_argument("--six", help="n = 2 six-tuple a1,...,a6 instead of a file")

    q = sub.add_parser("classify", help="classify an extended Moebius transformation")
    q.add_argument("transform", help="'[a, b; c, d] +' or '... -' for orientation-reversing")
    q.add_argument("--eps", type=float, default=EPS_CLASS)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("build", help="build an assembly from its JSON description")
    q.add_argument("assembly")
    q.add_argument("--out", help="write the normalized description here")
    q.set_defaults(func=cmd_build)

    q = sub.add_parser("verify", help="ping-pong verification of an assembly")
    q.add_argument("assembly")
    q.add_argument("--depth", type=int, default=8)
    q.add_argument("--eps-id", type=float, default=1e-6)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("admit", help="admissibility of a signature")
    sig_args(q)
    q.set_defaults(func=cmd_admit)

    q = sub.add_parser("rank", help="rank of the Schottky group of a signature")
    sig_args(q)
    q.set_defaults(func=cmd_rank)

    q = sub.add_parser("epi", help="find an epimorphism onto Z_2n")
    sig_args(q)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.set_defaults(func=cmd_epi)

    q = sub.add_parser("realize", help="realize a signature as a verified assembly")
    sig_args(q)
    q.add_argument("--lam", type=float, default=2.0)
    q.add_argument("--depth", type=int, default=6)
    q.add_argument("--out", help="write the assembly description here")
    q.set_defaults(func=cmd_realize)

    q = sub.add_parser("census", help="count n = 2 signatures by rank")
    q.add_argument("--gmax", type=int, default=20)
    q.add_argument("--out", help="TSV output file")
    q.add_argument("--genus", type=int)
    q.add_argument("--list", action="store_true", help="with --genus, list the tuples")
    q.set_defaults(func=cmd_census)

    q = sub.add_parser("locus", help="fixed-point locus of the handlebody symmetry")
    sig_args(q)
    q.add_argument("--format", choices=("text", "json"), default="text")
    q.add_argument("--out", help="write the JSON report here")
    q.set_defaults(func=cmd_locus)

    q = sub.add_parser("limitset", help="draw circles and limit points as SVG")
    q.add_argument("assembly")
    q.add_argument("--depth", type=int, default=6)
    q.add_argument("--out", required=True, help="SVG output file")
    q.add_argument("--figure", help="also save a matplotlib figure (png, pdf, ...)")
    q.set_defaults(func=cmd_limitset)

    q = sub.add_parser("reproduce", help="check the worked examples")
    q.set_defaults(func=cmd_reproduce)

    q = sub.add_parser("crosscheck", help="rank against its closed forms")
    q.add_argument("--gmax", type=int, default=20)
    q.add_argument("--samples", type=int, default=500)
    q.set_defaults(func=cmd_crosscheck)
    return p


def _check_ranges(args) -> None:
    for name in ("depth", "samples"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            raise InputError(f"--{name} must be nonnegative")
    for name in ("eps", "eps_id"):
        value = getattr(args, name, None)
        if value is not None and not value > 0:
            raise InputError(f"--{name.replace('_', '-')} must be positive")


def main(argv=None, stdout=None, stderr=None) -> int:
    out = Writer(stdout)
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        _check_ranges(args)
        return args.func(args, out)
    except SchottkyError as exc:
        err.write(f"{exc.code}: {exc}\n")
        return EXIT_DOMAIN
    except (InputError, SchemaError, SignatureFormatError, ValueError) as exc:
        # SchemaError and SignatureFormatError are ValueErrors too; named for clarity
        err.write(f"InputError: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
