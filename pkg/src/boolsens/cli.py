"""Command-line interface.

Exit codes: 0 success, 1 campaign finished with violations, 2 bad input
(syntax error, unreadable file, unknown campaign or family), 3 a size cap
was exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import constructions, formats, hypercube, measures, spectral, verifier
from .core import DEFAULT_CAPS
from .errors import CapExceededError, ExpressionSyntaxError
from .parser import parse_expression

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT = 2
EXIT_CAP = 3

DEFAULT_SAMPLES = 1000
SAMPLED = {"chain", "ratio", "fourier", "gl", "huang", "degree-eigen", "interlacing"}


class InputError(Exception):
    pass


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_function(args):
    sources = [args.expr is not None, args.tt is not None, args.family is not None]
    if sum(sources) != 1:
        raise InputError("give exactly one of -e/--expr, --tt or --family")
    if args.expr is not None:
        if args.n is None:
            raise InputError("-e needs -n")
        return parse_expression(args.expr, args.n)
    if args.tt is not None:
        try:
            return formats.read_truth_table(args.tt)
        except OSError as exc:
            raise InputError(str(exc)) from None
    return constructions.family(args.family, k=args.k, depth=args.depth, n=args.n)


def cmd_measure(args) -> int:
    f = _load_function(args)
    only = [m.strip() for m in args.only.split(",")] if args.only else None
    rep = measures.measure_report(f, only)
    _emit(formats.dumps(rep.to_dict()), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    _emit(formats.truth_table_to_text(_load_function(args)), args.out)
    return EXIT_OK


def cmd_huang(args) -> int:
    A = spectral.huang_matrix(args.n)
    report: dict = {"n": args.n, "dim": A.dim}
    lines = []
    if args.check_square:
        ok = spectral.square_check(A, args.n)
        report["square_check"] = ok
        lines.append(f"A²={args.n}I: {'PASS' if ok else 'FAIL'}")
    if args.spectrum:
        ev = spectral.full_spectrum(A)
        report["spectrum"] = ev.tolist()
        report["trace"] = int(A.entries.trace())
        plus = int((abs(ev - math.sqrt(args.n)) < 1e-9).sum())
        minus = int((abs(ev + math.sqrt(args.n)) < 1e-9).sum())
        report["multiplicity_plus_sqrt_n"] = plus
        report["multiplicity_minus_sqrt_n"] = minus
        lines.append(f"spectrum: +sqrt({args.n}) x{plus}, -sqrt({args.n}) x{minus}, trace {report['trace']}")
    verts = None
    if args.submatrix:
        verts = _csv_ints(args.submatrix)
    elif args.vertices:
        n_file, verts = formats.vertex_set_from_text(Path(args.vertices).read_text())
        if n_file != args.n:
            raise InputError(f"vertex file is for n={n_file}, not {args.n}")
    if verts is not None:
        bad = [v for v in verts if not 0 <= v < A.dim]
        if bad or not verts:
            raise InputError(f"submatrix vertices must be in [0, {A.dim})")
        B = spectral.principal_submatrix(A, verts)
        lam = spectral.lambda1(B, args.n)
        H = hypercube.InducedSubgraph.from_vertices(args.n, verts)
        check = spectral.huang_bound_check(H)
        report["submatrix"] = {"vertices": sorted(set(verts)), "lambda1": lam,
                               "max_degree": check.max_degree, "degree_ge_lambda1": check.degree_ok,
                               "lambda1_ge_sqrt_n": check.sqrt_n_ok}
        lines.append(f"lambda1 = {lam:.12g}")
        lines.append(f"max degree = {check.max_degree}")
    if args.matrix_out:
        Path(args.matrix_out).write_text(formats.matrix_to_text(A.entries))
    if args.json:
        Path(args.json).write_text(formats.dumps(report))
    _emit("\n".join(lines) + ("\n" if lines else ""), None)
    return EXIT_OK


def cmd_subgraph(args) -> int:
    if args.vertices:
        n, verts = formats.vertex_set_from_text(Path(args.vertices).read_text())
        H = hypercube.InducedSubgraph.from_vertices(n, verts)
        gamma = None
    else:
        f = _load_function(args)
        H = hypercube.from_function(f, args.level)
        gamma = hypercube.gamma(f)
    report = {"n": H.n, "vertices": len(H), "max_degree": hypercube.max_degree(H),
              "average_degree": H.average_degree(), "gamma": gamma}
    if len(H) and H.n <= DEFAULT_CAPS.huang:
        chk = spectral.huang_bound_check(H)
        report.update(lambda1=chk.lambda1, degree_ge_lambda1=chk.degree_ok, lambda1_ge_sqrt_n=chk.sqrt_n_ok)
    _emit(formats.dumps(report), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    name = args.campaign
    if name not in verifier.CAMPAIGNS:
        raise InputError(f"unknown campaign {name!r}; choose from {', '.join(sorted(verifier.CAMPAIGNS))}")
    samples = args.samples
    if samples is None and name in SAMPLED and args.n > verifier.EXHAUSTIVE_MAX_N:
        samples = DEFAULT_SAMPLES
    kwargs: dict = {}
    if name in SAMPLED:
        kwargs.update(samples=samples, seed=args.seed)
    if name in {"chain", "ratio", "gl"}:
        kwargs["jobs"] = args.jobs
    if name == "ratio" and args.n == 4 and samples is None:
        kwargs["extra"] = [constructions.rubinstein(2)]
    rep = verifier.CAMPAIGNS[name](args.n, **kwargs)
    _emit(rep.to_json(include_timing=args.timing), args.out)
    if args.out or args.summary:
        sys.stderr.write(rep.summary())
    return EXIT_OK if rep.ok else EXIT_VIOLATIONS


def _add_function_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("-e", "--expr", help="Boolean expression over x1..xn")
    p.add_argument("-n", type=int, help="number of variables")
    p.add_argument("--tt", help="truth-table file")
    p.add_argument("--family", help=f"named family: {', '.join(sorted(constructions.FAMILIES))}")
    p.add_argument("--k", type=int, help="family parameter (and_of_ors, rubinstein)")
    p.add_argument("--depth", type=int, help="tree depth (e3_tree)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boolsens", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="complexity measures of one function (JSON)")
    _add_function_source(p)
    p.add_argument("--only", help=f"comma-separated subset of {','.join(measures.MEASURES)}")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("table", help="write a function in the truth-table file format")
    _add_function_source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("huang", help="Huang's signed matrix: square check, spectrum, submatrix lambda1")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--check-square", action="store_true")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--submatrix", help="comma-separated vertex indices")
    p.add_argument("--vertices", help="vertex-set file (first line n, then one index per line)")
    p.add_argument("--matrix-out", help="write the dense matrix here")
    p.add_argument("--json", help="write a JSON spectrum report here")
    p.set_defaults(func=cmd_huang)

    p = sub.add_parser("subgraph", help="degree statistics of an induced subgraph")
    _add_function_source(p)
    p.add_argument("--vertices", help="vertex-set file")
    p.add_argument("--level", type=int, default=1, help="level set of the function (0 or 1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_subgraph)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("campaign", help=", ".join(sorted(verifier.CAMPAIGNS)))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--summary", action="store_true", help="also print the text table to stderr")
    p.add_argument("--timing", action="store_true", help="include wall-clock duration in the JSON")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except ExpressionSyntaxError as exc:
        sys.stderr.write(f"syntax error: {exc}\n")
        if exc.text:
            sys.stderr.write(f"  {exc.text}\n  {' ' * exc.position}^\n")
        return EXIT_INPUT
    except (InputError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
