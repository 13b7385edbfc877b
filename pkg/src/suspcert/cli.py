"""Command-line front end.

Exit codes: 0 success (certify/search found a counterexample), 1 certify or
search completed without one, 2 input error, 3 recheck mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .certifier import (
    InvalidInput,
    SearchBox,
    certify,
    certify_polynomial,
    classify_polynomial,
    quadratic_factors,
    reciprocal_quartic,
    recheck,
    search_box,
)
from .flat_metric import ambient_gram
from .lattice_core import IntMatrix, Matrix, companion_matrix, smith_normal_form, spectral_projectors
from .poly_lab import IntPoly, UnsupportedDegree
from .serialize import (
    _profile_to_json,
    emit_certificate_json,
    format_quadext,
    parse_certificate_json,
    qx_to_json,
)
from .suspension_group import GammaElement, abelianization, subgroup_decompose

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RECHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _read_matrix(text: str) -> IntMatrix:
    m = Matrix.parse(text)
    if not isinstance(m, IntMatrix):
        raise ValueError("matrix must be square")
    return m


def _recheck_text(text: str) -> list[str]:
    return recheck(parse_certificate_json(text))


def _cert_text(c) -> str:
    lines = [f"polynomial: {c.polynomial}", f"verdict: {c.verdict}"]
    if c.profile is not None:
        lines.append(
            f"kind: {c.profile.kind}  unit-circle pairs: {c.profile.unit_circle_pairs}  "
            f"D: {c.profile.discriminant_core}"
        )
    if c.factor_pair is not None:
        for label, f in zip("HE", c.factor_pair):
            lines.append(f"factor_{label}: X^2 + ({format_quadext(f[1])}) X + 1")
    if c.metric_rank is not None:
        lines.append(f"metric_rank: {c.metric_rank}")
    if c.h1_free_rank is not None:
        lines.append(f"h1: free rank {c.h1_free_rank}, torsion {list(c.h1_torsion)}")
    if c.fibration_bound is not None:
        lines.append(f"fibration_bound: {c.fibration_bound}")
    for r in c.reasons:
        lines.append(f"  [{'ok' if r.passed else 'FAIL'}] {r.check}: {r.detail}")
    return "\n".join(lines)


def cmd_certify(args, out) -> int:
    if args.poly is not None:
        if args.a is not None or args.b is not None:
            raise UsageError("give either --poly or --a/--b")
        cert = certify_polynomial(IntPoly.parse(args.poly))
    else:
        if args.a is None or args.b is None:
            raise UsageError("certify needs --a and --b, or --poly")
        cert = certify(args.a, args.b)
    text = emit_certificate_json(cert)
    out.write((text if args.format == "json" else _cert_text(cert)) + "\n")
    if args.recheck:
        bad = _recheck_text(text)
        if bad:
            print(f"recheck-mismatch: {','.join(bad)}", file=sys.stderr)
            return EXIT_RECHECK
    if cert.verdict == "counterexample":
        return EXIT_OK
    failed = next((r for r in cert.reasons if not r.passed), None)
    print(f"reason: {failed.detail if failed else cert.verdict}", file=sys.stderr)
    return EXIT_NEGATIVE if cert.verdict == "not_counterexample" else EXIT_INPUT


def cmd_search(args, out) -> int:
    box = SearchBox(args.a_min, args.a_max, args.b_min, args.b_max)
    certs = search_box(box, jobs=args.jobs)
    texts = [emit_certificate_json(c) for c in certs]
    if args.format == "json":
        head = _dump(
            {"schema": "search/1", "box": [args.a_min, args.a_max, args.b_min, args.b_max], "count": len(certs)}
        )
        out.write(head[:-1] + ',"certificates":[' + ",".join(texts) + "]}\n")
    else:
        for c in certs:
            a, b = c.parameters
            out.write(f"{a} {b} D={c.profile.discriminant_core} metric_rank={c.metric_rank} "
                      f"bound={c.fibration_bound}\n")
    print(f"searched {len(box.points())} pairs, {len(certs)} counterexamples", file=sys.stderr)
    if args.recheck:
        for t in texts:
            bad = _recheck_text(t)
            if bad:
                print(f"recheck-mismatch: {','.join(bad)}", file=sys.stderr)
                return EXIT_RECHECK
    return EXIT_OK if certs else EXIT_NEGATIVE


def cmd_classify(args, out) -> int:
    prof = classify_polynomial(reciprocal_quartic(args.a, args.b))
    if args.format == "json":
        out.write(_dump(_profile_to_json(prof)) + "\n")
    else:
        out.write(f"kind: {prof.kind}\nunit_circle_pairs: {prof.unit_circle_pairs}\n")
        out.write(f"discriminant_core: {prof.discriminant_core}\n")
        for box in prof.real_root_boxes:
            out.write(f"real root in {box}\n")
    return EXIT_OK


def cmd_snf(args, out) -> int:
    m = _read_matrix(args.matrix)
    if args.shift:
        m = m + Matrix.identity(m.n).scale(args.shift)
    snf = smith_normal_form(m)
    divisors = ",".join(str(d) for d in snf.diagonal)
    if args.format == "json":
        out.write(
            _dump({"divisors": [str(d) for d in snf.diagonal], "left": snf.left.format(), "right": snf.right.format()})
            + "\n"
        )
    else:
        out.write(divisors + "\n")
    return EXIT_OK


def cmd_abelianize(args, out) -> int:
    a = _read_matrix(args.matrix)
    if args.generators:
        gens = [GammaElement.parse(s) for s in args.generators.split(";")]
        data = subgroup_decompose(gens, a)
        if data.generator_k0 is None:
            raise ValueError("generators have no nonzero shift; subgroup is a lattice")
        basis, m = data.lattice_basis, data.generator_k0.shift
    else:
        basis = [[int(i == j) for j in range(a.n)] for i in range(a.n)]
        m = args.m
    free, torsion = abelianization(basis, m, a)
    if args.format == "json":
        out.write(_dump({"free_rank": free, "torsion": [str(t) for t in torsion], "m": m}) + "\n")
    else:
        out.write(f"free_rank: {free}\ntorsion: {','.join(map(str, torsion))}\n")
    return EXIT_OK


def cmd_metric(args, out) -> int:
    p = reciprocal_quartic(args.a, args.b)
    prof = classify_polynomial(p)
    if prof.kind != "salem":
        raise ValueError(f"metric needs a salem quartic, got {prof.kind}")
    a = companion_matrix(p)
    f_h, f_e = quadratic_factors(p)
    gram = ambient_gram(a, spectral_projectors(a, f_h, f_e))
    d = prof.discriminant_core
    if args.format == "json":
        out.write(_dump({"rank": gram.rank, "entries": [[qx_to_json(x, d) for x in r] for r in gram.entries.rows]}) + "\n")
    else:
        for r in gram.entries.rows:
            out.write("; ".join(format_quadext(x) for x in r) + "\n")
        out.write(f"rank: {gram.rank}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--recheck", action="store_true", help="re-run every producing operation")

    parser = _Parser(prog="suspcert", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("certify", parents=[common], help="certify one reciprocal quartic")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--poly", help="ascending coefficients, e.g. 1,-2,0,-2,1")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", parents=[common], help="certify every (a, b) in a box")
    for name in ("--a-min", "--a-max", "--b-min", "--b-max"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", parents=[common], help="root structure of X^4 - aX^3 + bX^2 - aX + 1")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of M + shift*I")
    p.add_argument("--matrix", required=True)
    p.add_argument("--shift", type=int, default=0)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("abelianize", parents=[common], help="abelianization of L x|_{A^m} Z")
    p.add_argument("--matrix", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--generators", help="group elements 'v1,...,vn|k' separated by ';'")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("metric", parents=[common], help="print the 5x5 Gram form")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_metric)
    return parser


def run_cli(argv: list[str], out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
    except (ValueError, InvalidInput, UnsupportedDegree, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
