"""Command-line entry point: ``andreadakis <subcommand> ...``.

Exit status is 0 when everything checked passes, 1 when any check fails and 2
on a configuration or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import autf, braid, dk, harness
from .degree import degrees_agree
from .errors import AndreadakisError
from .freegroup import format_word, parse_word
from .freelie import bracket, parse_lie, witt_dimension
from .magnus import gamma_degree

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _positive(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


# --- handlers ---------------------------------------------------------------


def cmd_verify(args) -> int:
    cfg = harness.VerificationConfig(
        target=args.target,
        n=args.n,
        depth=args.max_degree,
        samples=args.samples,
        seed=args.seed,
        format=args.format,
        length_budget=args.length_budget,
    )
    if args.replay_seed is not None:
        rec = harness.replay(cfg, args.replay_index, args.replay_seed)
        _emit(args, rec, json.dumps(rec, sort_keys=True, indent=2))
        return EXIT_FAIL if rec["verdict"] == harness.FAIL else EXIT_OK
    report = harness.run_verification(cfg)
    if args.format == "json":
        print(report.to_json(timing=args.timing))
    else:
        print(report.to_text(verbose=args.verbose))
    return EXIT_FAIL if report.verdict == "FAIL" else EXIT_OK


def cmd_gamma_degree(args) -> int:
    w = parse_word(args.word, args.n)
    d = gamma_degree(w, args.max_degree)
    _emit(args, d.to_json(), str(d))
    return EXIT_OK


def _images(args) -> autf.FreeEndo:
    return autf.parse_images(args.images, args.n)


def cmd_aut_a_degree(args) -> int:
    d = autf.andreadakis_degree(_images(args), args.max_degree)
    _emit(args, d.to_json(), str(d))
    return EXIT_OK


def cmd_aut_g_degree(args) -> int:
    d = autf.triangular_gamma_degree(autf.parse_triangular(_images(args)), args.max_degree)
    _emit(args, d.to_json(), str(d))
    return EXIT_OK


def cmd_aut_decompose(args) -> int:
    w = autf.decompose_triangular(autf.parse_triangular(_images(args)))
    text = autf.format_ia_word(w) or "1"
    _emit(args, {"ia_word": text, "composition": "left factor applied last"}, text)
    return EXIT_OK


def cmd_braid_comb(args) -> int:
    beta = braid.parse_braid(args.word, args.n)
    form = braid.comb(beta, budget=args.length_budget)
    factors = {str(k): format_word(form.factor(k)) or "1" for k in range(2, args.n + 1)}
    lines = [f"beta_{k} = {braid.format_braid(form.factor_braid(k))}" for k in range(2, args.n + 1)]
    _emit(args, {"factors": factors, "combed": str(form)}, "\n".join(lines))
    return EXIT_OK


def cmd_braid_degree(args) -> int:
    beta = braid.parse_braid(args.word, args.n)
    g = braid.braid_gamma_degree(beta, args.max_degree, budget=args.length_budget)
    a = braid.braid_andreadakis_degree(beta, args.max_degree)
    agree = degrees_agree(g, a)
    verdict = {True: "EQUAL", False: "UNEQUAL", None: "INDETERMINATE"}[agree]
    payload = {"gamma_degree": str(g), "andreadakis_degree": str(a), "verdict": verdict}
    text = f"gamma-degree: {g}\nA-degree: {a}\n{verdict}"
    _emit(args, payload, text)
    return EXIT_FAIL if agree is False else EXIT_OK


def cmd_lie_dim(args) -> int:
    d = witt_dimension(args.n, args.k)
    _emit(args, {"dimension": d}, str(d))
    return EXIT_OK


def cmd_lie_bracket(args) -> int:
    c = bracket(parse_lie(args.a, args.n), parse_lie(args.b, args.n))
    _emit(args, {"bracket": str(c)}, str(c))
    return EXIT_OK


def cmd_dk_dim(args) -> int:
    d = dk.dk_dimension(args.n, args.k)
    _emit(args, {"dimension": d}, str(d))
    return EXIT_OK


def cmd_dk_bracket(args) -> int:
    c = dk.dk_bracket(dk.parse_dk(args.a, args.n), dk.parse_dk(args.b, args.n))
    _emit(args, {"bracket": str(c)}, str(c))
    return EXIT_OK


def cmd_tables(args) -> int:
    tables = harness.emit_tables(range(2, args.n_max + 1), range(1, args.k_max + 1))
    if args.format == "json":
        print(json.dumps(tables, sort_keys=True))
    else:
        print(harness.format_tables(tables), end="")
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="andreadakis",
        description="Lower central series and Andreadakis filtrations on automorphisms of free groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="seeded theorem checks")
    p.add_argument("--target", required=True, choices=harness.TARGETS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length-budget", type=_positive, default=braid.core.DEFAULT_BUDGET)
    p.add_argument("--replay-index", type=int, default=0)
    p.add_argument("--replay-seed", type=int, help="rerun one sample from its recorded seed")
    p.add_argument("--verbose", action="store_true", help="list every record in text output")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gamma-degree", help="lower-central-series degree of a word")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("word")
    _add_format(p)
    p.set_defaults(func=cmd_gamma_degree)

    aut = sub.add_parser("aut", help="automorphisms given by generator images").add_subparsers(
        dest="action", required=True
    )
    for name, func, needs_degree in (
        ("a-degree", cmd_aut_a_degree, True),
        ("g-degree-triangular", cmd_aut_g_degree, True),
        ("decompose", cmd_aut_decompose, False),
    ):
        p = aut.add_parser(name)
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--images", required=True, help='images "w1;w2;..." of x1..xn')
        if needs_degree:
            p.add_argument("--max-degree", type=_positive, required=True)
        _add_format(p)
        p.set_defaults(func=func)

    br = sub.add_parser("braid", help="pure braid words").add_subparsers(dest="action", required=True)
    p = br.add_parser("comb")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--length-budget", type=_positive, default=braid.core.DEFAULT_BUDGET)
    p.add_argument("word")
    _add_format(p)
    p.set_defaults(func=cmd_braid_comb)
    p = br.add_parser("degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--length-budget", type=_positive, default=braid.core.DEFAULT_BUDGET)
    p.add_argument("word")
    _add_format(p)
    p.set_defaults(func=cmd_braid_degree)

    for name, dim, brk, help_text in (
        ("lie", cmd_lie_dim, cmd_lie_bracket, "free Lie ring"),
        ("dk", cmd_dk_dim, cmd_dk_bracket, "Drinfeld–Kohno Lie ring"),
    ):
        group = sub.add_parser(name, help=help_text).add_subparsers(dest="action", required=True)
        p = group.add_parser("dim")
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("--k", type=_positive, required=True)
        _add_format(p)
        p.set_defaults(func=dim)
        p = group.add_parser("bracket")
        p.add_argument("--n", type=_positive, required=True)
        p.add_argument("a")
        p.add_argument("b")
        _add_format(p)
        p.set_defaults(func=brk)

    p = sub.add_parser("tables", help="Witt and Drinfeld–Kohno dimension tables")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--k-max", type=int, default=6)
    _add_format(p)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AndreadakisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
