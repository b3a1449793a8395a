"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 invariant failure.
Everything printed on stdout is deterministic; timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .crystal import (
    ceiling,
    character,
    check_word,
    crystal_edges,
    demazure_contains,
    demazure_top_down,
)
from .fock import (
    divided_vector,
    dump,
    leading_coefficient_formula,
    mod_p_reduce,
    standard_coefficient,
    standard_vector,
)
from .roof import demazure_bottom_up, member, reduced_word_from_extremal, roof
from .sets import IntegerSet, format_set, half_line, lex_compare, order, parse_set
from . import verify as harness

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


_GROUP = re.compile(r"\(([^()]*)\)\^(\d+)")


def parse_word(text: str) -> tuple[int, ...]:
    """Letters separated by commas or spaces; ``(a,b,...)^k`` repeats a group."""
    s = text
    while (mt := _GROUP.search(s)):
        s = s[:mt.start()] + ("," + mt.group(1) + ",") * int(mt.group(2)) + s[mt.end():]
    toks = [t for t in re.split(r"[,\s]+", s) if t]
    try:
        return tuple(int(t.lstrip("s")) for t in toks)
    except ValueError:
        raise UsageError(f"bad word: {text!r}") from None


def format_word(word) -> str:
    return ",".join(map(str, word))


def _set_arg(text: str) -> IntegerSet:
    try:
        return parse_set(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _lex_sorted(sets):
    from functools import cmp_to_key
    return sorted(sets, key=cmp_to_key(lex_compare))


def _emit(args, lines, doc):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


# -- commands -----------------------------------------------------------------

def cmd_roof(args) -> int:
    J = _set_arg(args.set)
    try:
        top, trace = roof(J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    word = reduced_word_from_extremal(top)
    doc = {
        "set": format_set(J),
        "trace": [[p, q] for p, q in trace],
        "roof": format_set(top),
        "word": list(word),
    }
    lines = [
        "trace: " + " ".join(f"({p},{q})" for p, q in trace),
        f"steps: {len(trace)}",
        f"roof: {top}",
        f"word: {format_word(word)}",
        f"word length: {len(word)}",
    ]
    status = EXIT_OK
    if args.ceiling:
        c = ceiling(J)
        doc["ceiling"] = format_set(c)
        doc["agree"] = c == top
        lines += [f"ceiling: {c}", f"agree: {'yes' if c == top else 'no'}"]
        if c != top:
            status = EXIT_INVARIANT
    _emit(args, lines, doc)
    return status


def cmd_ceiling(args) -> int:
    J = _set_arg(args.set)
    c = ceiling(J)
    _emit(args, [str(c)], {"set": format_set(J), "ceiling": format_set(c)})
    return EXIT_OK


def _write_dot(path, sets):
    lines = ["digraph crystal {"]
    for J in sets:
        lines.append(f'  "{J}";')
    edges = sorted(crystal_edges(sets), key=lambda e: (format_set(e[0]), e[1]))
    for a, i, b in edges:
        lines.append(f'  "{a}" -> "{b}" [label="{i}"];')
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_demazure(args) -> int:
    if (args.word is None) == (args.extremal is None):
        raise UsageError("give exactly one of --word or --extremal")
    if args.extremal is not None:
        K = _set_arg(args.extremal)
        try:
            word = reduced_word_from_extremal(K)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        n, m = K.n, order(K)
    else:
        if args.n is None:
            raise UsageError("--word needs --n")
        n, m = args.n, args.m or 0
        word = parse_word(args.word)
        try:
            K = check_word(word, m, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    status = EXIT_OK
    doc = {"n": n, "m": m, "word": list(word), "extremal": format_set(K)}
    lines = [f"word: {format_word(word)}", f"extremal: {K}"]
    if args.contains is not None:
        # membership alone; the crystal itself can be far too large to list
        J = _set_arg(args.contains)
        if J.n != n or order(J) != m:
            raise UsageError("--contains set has a different modulus or order")
        by_word = demazure_contains(word, J)
        by_roof = member(J, K)
        doc["contains"] = {"set": format_set(J), "by_word": by_word, "by_roof": by_roof}
        lines.append(f"contains {J}: {'yes' if by_word else 'no'} (roof test: {'yes' if by_roof else 'no'})")
        _emit(args, lines, doc)
        return EXIT_OK if by_word == by_roof else EXIT_INVARIANT
    doc["mode"] = args.mode
    if args.mode == "top-down":
        S = demazure_top_down(word, m, n)
    elif args.mode == "bottom-up":
        S = demazure_bottom_up(K, jobs=args.jobs)
    else:
        S = demazure_top_down(word, m, n)
        B = demazure_bottom_up(K, jobs=args.jobs)
        agree = S == B and character(S) == character(B)
        doc["agree"] = agree
        lines.append(f"top-down: {len(S)}  bottom-up: {len(B)}  agree: {'yes' if agree else 'no'}")
        if not agree:
            status = EXIT_INVARIANT
            only_top = _lex_sorted(S - B)
            only_bottom = _lex_sorted(B - S)
            doc["top_down_only"] = [format_set(J) for J in only_top]
            doc["bottom_up_only"] = [format_set(J) for J in only_bottom]
            lines += [f"top-down only: {J}" for J in only_top]
            lines += [f"bottom-up only: {J}" for J in only_bottom]
        S = S | B

    elements = _lex_sorted(S)
    doc["size"] = len(elements)
    doc["elements"] = [format_set(J) for J in elements]
    lines.append(f"size: {len(elements)}")
    lines += [format_set(J) for J in elements]
    if args.dot:
        _write_dot(args.dot, elements)
    _emit(args, lines, doc)
    return status


def cmd_expand(args) -> int:
    J = _set_arg(args.set)
    try:
        v = divided_vector(J) if args.divided else standard_vector(J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.mod is not None:
        try:
            v = mod_p_reduce(v, args.mod)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    terms = v.sorted_terms()
    doc = {"set": format_set(J), "divided": args.divided, "mod": args.mod,
           "terms": [{"coefficient": c, "set": format_set(K)} for K, c in terms]}
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(dump(v))
    return EXIT_OK


def cmd_coeff(args) -> int:
    J, K = _set_arg(args.set), _set_arg(args.other)
    if J.n != K.n or order(J) != order(K):
        raise UsageError("sets must share modulus and order")
    try:
        c = standard_coefficient(J, K)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"set": format_set(J), "other": format_set(K), "coefficient": c}
    lines = [str(c)]
    status = EXIT_OK
    if J == K:
        formula = leading_coefficient_formula(J)
        doc["formula"] = formula
        lines.append(f"factorial formula: {formula} ({'agrees' if abs(c) == formula else 'DIFFERS'})")
        if abs(c) != formula:
            status = EXIT_INVARIANT
    _emit(args, lines, doc)
    return status


def cmd_verify(args) -> int:
    names = harness.SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        reports += harness.run_suite(name, n=args.n, m=args.m, H=args.height,
                                     length=args.length, jobs=args.jobs,
                                     samples=args.random, seed=args.seed)
    for r in reports:
        print(f"{r.suite} {r.params}: {r.seconds:.2f}s", file=sys.stderr)
    ok = all(r.ok for r in reports)
    if args.json:
        docs = [r.as_dict() for r in reports]
        for d in docs:
            d.pop("seconds")
        print(json.dumps({"ok": ok, "reports": docs}, indent=2))
    else:
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            print(f"{r.suite:<10} {params:<26} checked={r.checked:<6} failures={len(r.failures)}")
            if r.failures:
                print(f"  counterexample: {r.counterexample()}")
        print("clean" if ok else "FAILURES")
    return EXIT_OK if ok else EXIT_INVARIANT


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    p = _Parser(prog="roofcrystal", description="Roofs, ceilings and Demazure crystals of n-bounded sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("roof", parents=[common], help="roof trace, roof and reduced word")
    s.add_argument("set", help="set literal n=<n>;<=<tail>;e1,e2,...")
    s.add_argument("--ceiling", action="store_true", help="also compute the ceiling and compare")
    s.set_defaults(func=cmd_roof)

    s = sub.add_parser("ceiling", parents=[common], help="extremal set via raising operators")
    s.add_argument("set")
    s.set_defaults(func=cmd_ceiling)

    s = sub.add_parser("demazure", parents=[common], help="generate a Demazure crystal")
    s.add_argument("--word", help="reduced word, e.g. '2,1,3,(4,3,2,1,0)^9,4'")
    s.add_argument("--extremal", help="n-stable extremal set literal")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--mode", choices=("top-down", "bottom-up", "both"), default="top-down")
    s.add_argument("--dot", metavar="FILE", help="write the crystal graph in DOT format")
    s.add_argument("--contains", metavar="SET", help="test membership of one set")
    s.set_defaults(func=cmd_demazure)

    s = sub.add_parser("expand", parents=[common], help="standard vector as a term dump")
    s.add_argument("set")
    s.add_argument("--divided", action="store_true", help="divided-power variant")
    s.add_argument("--mod", type=int, metavar="P", help="reduce coefficients mod a prime")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("coeff", parents=[common], help="one coefficient of a standard vector")
    s.add_argument("set")
    s.add_argument("other")
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("verify", parents=[common], help="invariant sweeps")
    s.add_argument("suite", choices=harness.SUITES + ("all",))
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--height", type=int)
    s.add_argument("--length", type=int, help="maximal word length (character suite)")
    s.add_argument("--random", type=int, default=0, metavar="N",
                   help="theorem1 suite only: also compare roof and ceiling on N random sets")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"roofcrystal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
