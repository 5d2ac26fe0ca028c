"""``torsionlink`` command line.

Exit codes: 0 ok, 1 parse error, 2 domain precondition (e.g. p, q not
coprime), 3 invalid gluing, 4 not a rational homology sphere, 5 isometry
search cap exceeded.  JSON keys are always emitted in a fixed order and
integers that may be large are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .crosscheck import check_all
from .errors import (
    GenusMismatch,
    NotAntiSymplectic,
    NotCoprime,
    NotRationalHomologySphere,
    OddDimension,
    OracleMismatch,
    SearchCapExceeded,
)
from .exactalg import matrix_from_json, matrix_to_json
from .heegaard import LensParams, lens_gluing, random_gluing, validate_gluing
from .isometry import DEFAULT_CAP, isometric, witness_to_json
from .linking import (
    form_from_json,
    form_to_json,
    group_to_json,
    homology,
    is_rational_homology_sphere,
    linking_form,
)

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_GLUING, EXIT_NOT_QHS, EXIT_CAP = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _dump(obj, out):
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _table_form(form):
    lines = [f"H_1 = {form.group}"]
    if form.group.rank:
        cells = [[str(x) for x in r] for r in form.gram]
        width = max(len(c) for r in cells for c in r)
        lines.append("linking form on Smith generators:")
        lines += ["  " + "  ".join(c.rjust(width) for c in r) for r in cells]
    return "\n".join(lines)


def _table_homology(pres):
    s = f"H_1 = {pres.group}"
    if pres.free_rank:
        s += f" + Z^{pres.free_rank}"
    return s


def _emit(kind, gluing, fmt, out):
    if kind == "matrix":
        if fmt == "table":
            out.write(str(gluing.matrix) + "\n")
        else:
            _dump(matrix_to_json(gluing.matrix), out)
    elif kind == "homology":
        pres = homology(gluing)
        if fmt == "table":
            out.write(_table_homology(pres) + "\n")
        else:
            _dump(group_to_json(pres), out)
    else:
        form = linking_form(gluing)
        if fmt == "table":
            out.write(_table_form(form) + "\n")
        else:
            _dump(form_to_json(form), out)


def cmd_lens(args, out):
    try:
        params = LensParams(args.p, args.q)
    except NotCoprime:
        sys.stderr.write("p and q must be coprime positive integers\n")
        return EXIT_DOMAIN
    _emit(args.emit, lens_gluing(params), args.format, out)
    return EXIT_OK


def cmd_linking(args, out):
    m = matrix_from_json(_read_json(args.matrix))
    g = validate_gluing(m)
    _emit("form", g, args.format, out)
    return EXIT_OK


def _cap(args):
    if args.cap is not None:
        return args.cap
    env = os.environ.get("TORSIONLINK_CAP")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"TORSIONLINK_CAP must be an integer, got {env!r}") from exc
    return DEFAULT_CAP


def cmd_isometric(args, out):
    f1 = form_from_json(_read_json(args.form1))
    f2 = form_from_json(_read_json(args.form2))
    w = isometric(f1, f2, cap=_cap(args))
    _dump({"isometric": w is not None, "witness": witness_to_json(w)}, out)
    return EXIT_OK


def corpus_records(genus, twists, count, seed, check=False):
    """Yield one record per generated gluing; instance ``i`` uses seed ``seed + i``."""
    for i in range(count):
        g = random_gluing(genus, twists, seed + i)
        pres = homology(g)
        qhs = is_rational_homology_sphere(g)
        form = linking_form(g) if qhs else None
        rec = {
            "index": i,
            "genus": genus,
            "twists": twists,
            "seed": str(seed + i),
            "matrix": matrix_to_json(g.matrix),
            "qhs": qhs,
            "homology": group_to_json(pres),
            "form": form_to_json(form) if form is not None else None,
        }
        if check:
            try:
                rec["check"] = check_all(g, form, pres)
            except OracleMismatch as exc:
                rec["check"] = {"error": str(exc)}
        yield rec


def cmd_corpus(args, out):
    if args.genus < 1:
        sys.stderr.write("--genus must be at least 1\n")
        return EXIT_DOMAIN
    if args.twists < 0 or args.count < 0:
        sys.stderr.write("--twists and --count must be nonnegative\n")
        return EXIT_DOMAIN
    status = EXIT_OK
    for rec in corpus_records(args.genus, args.twists, args.count, args.seed, args.check):
        _dump(rec, out)
        if "error" in rec.get("check", {}):
            status = EXIT_PARSE
    return status


def build_parser():
    p = _Parser(prog="torsionlink", description="Linking forms of Heegaard-glued 3-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    lens = sub.add_parser("lens", help="gluing, homology or linking form of L(p, q)")
    lens.add_argument("p", type=int)
    lens.add_argument("q", type=int)
    lens.add_argument("--emit", choices=("matrix", "form", "homology"), default="form")
    lens.add_argument("--format", choices=("json", "table"), default="json")
    lens.set_defaults(func=cmd_lens)

    lk = sub.add_parser("linking", help="linking form of a gluing matrix file")
    lk.add_argument("--matrix", required=True, help="JSON matrix file, or - for stdin")
    lk.add_argument("--format", choices=("json", "table"), default="json")
    lk.set_defaults(func=cmd_linking)

    iso = sub.add_parser("isometric", help="decide isometry of two linking forms")
    iso.add_argument("form1")
    iso.add_argument("form2")
    iso.add_argument("--cap", type=int, default=None, help=f"search cap (default {DEFAULT_CAP})")
    iso.set_defaults(func=cmd_isometric)

    cor = sub.add_parser("corpus", help="seeded random gluings with their invariants")
    cor.add_argument("--genus", type=int, required=True)
    cor.add_argument("--twists", type=int, required=True)
    cor.add_argument("--count", type=int, required=True)
    cor.add_argument("--seed", type=int, required=True)
    cor.add_argument("--check", action="store_true", help="cross-check every record")
    cor.set_defaults(func=cmd_corpus)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NotCoprime as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_DOMAIN
    except (NotAntiSymplectic, OddDimension, GenusMismatch) as exc:
        sys.stderr.write(f"invalid gluing: {exc}\n")
        return EXIT_GLUING
    except NotRationalHomologySphere as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_NOT_QHS
    except SearchCapExceeded as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_CAP
    except (ValueError, TypeError, OSError) as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
