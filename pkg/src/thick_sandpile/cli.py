"""Command-line interface.

Exit status: 0 on success, 1 when a verification or cross-check fails,
2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import verify as _verify
from .multigraph import GraphError, Multigraph, build_banana, build_book_graph, build_thick_cycle
from .sandpile import (
    AbelianGroup,
    DivisorError,
    canonicalize_group,
    groups_isomorphic,
    monodromy_pairing,
    sandpile_group,
)
from .thick_cycle import (
    MinorSelectionError,
    generic_multiplicities,
    selected_minor,
    gcd_sequence,
    select_minor_indices,
    thick_cycle_group,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _load_graph(path: str) -> Multigraph:
    try:
        return Multigraph.from_json(_load_json(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_divisor(path: str) -> list[int]:
    data = _load_json(path)
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
        raise UsageError(f"{path}: a divisor is a JSON array of integers")
    return data


def _emit(args, payload, pretty_text=None):
    if args.pretty and pretty_text is not None:
        print(pretty_text)
    else:
        print(json.dumps(payload, indent=2 if args.pretty else None))


def _group_text(g: AbelianGroup) -> str:
    return f"{g} (order {g.order})"


def cmd_group(args) -> int:
    a = args.multiplicities
    graph = build_thick_cycle(a)
    theorem = thick_cycle_group(a)
    base = {"multiplicities": a, "gcd_sequence": gcd_sequence(a)}
    if args.both:
        snf = sandpile_group(graph)
        agree = groups_isomorphic(theorem, snf)
        payload = dict(base, theorem=theorem.to_json(), snf=snf.to_json(), agree=agree)
        text = (f"theorem: {_group_text(theorem)}\nsnf:     {_group_text(snf)}\n"
                f"agree:   {agree}")
        _emit(args, payload, text)
        return EXIT_OK if agree else EXIT_FAIL
    group = sandpile_group(graph) if args.via_snf else theorem
    payload = dict(group.to_json(), **base, method="snf" if args.via_snf else "theorem")
    _emit(args, payload, _group_text(group))
    return EXIT_OK


def cmd_graph_group(args) -> int:
    graph = _load_graph(args.graph_file)
    if args.sink is not None and not 0 <= args.sink < graph.vertex_count:
        raise UsageError(f"sink {args.sink} is not a vertex")
    group = sandpile_group(graph, args.sink)
    _emit(args, group.to_json(), _group_text(group))
    return EXIT_OK


def _trace_table(sel) -> str:
    def fmt(xs, changed):
        return "(" + ",".join(f"*{x}" if c else str(x) for x, c in zip(xs, changed)) + ")"

    lines = [f"Iteration  k   R_k-R_(k-1)  Resulting R{'':<15}Resulting C"]
    prev_r, prev_c = sel.subset, sel.subset
    for step in sel.trace:
        if step.changed:
            r = fmt(step.R, [x != y for x, y in zip(step.R, prev_r)])
            c = fmt(step.C, [x != y for x, y in zip(step.C, prev_c)])
        else:
            r = c = "no change"
        lines.append(f"{step.iteration:<10} {step.k:<3} {step.gap:<12} {r:<25} {c}")
        prev_r, prev_c = step.R, step.C
    return "\n".join(lines)


def cmd_minor_select(args) -> int:
    n = args.n
    if args.multiplicities is not None and len(args.multiplicities) != n:
        raise UsageError(f"--multiplicities needs {n} entries, got {len(args.multiplicities)}")
    try:
        sel = select_minor_indices(n, args.subset)
    except MinorSelectionError as exc:
        print(f"minor selection failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    a = args.multiplicities or generic_multiplicities(n)[0]
    d = selected_minor(a, sel)
    expected = math.prod(a[i - 1] for i in sel.subset)
    passed = abs(d) == expected
    payload = dict(sel.to_json(), check={
        "multiplicities": list(a), "determinant": d, "expected_abs": expected, "passed": passed,
    })
    text = "\n".join([
        f"I = {tuple(sel.subset)}, step {sel.step}"
        + (f", rotated by {sel.rotation}" if sel.rotation else ""),
        *([_trace_table(sel)] if sel.trace else []),
        f"R = {tuple(sel.R)}",
        f"C = {tuple(sel.C)}",
        f"det at a={tuple(a)}: {d} (expected +-{expected}) -> {'ok' if passed else 'FAIL'}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args) -> int:
    report = _verify.run_verify(args.n_max, args.mult_max, args.samples, args.seed, args.workers)
    print(json.dumps(report.to_json(), indent=2 if args.pretty else None))
    print(f"elapsed: {report.elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_dual(args) -> int:
    if args.kind == "banana":
        lengths = args.lengths
        graph_group = sandpile_group(build_banana(lengths))
        cycle_group = thick_cycle_group(lengths)
        iso = groups_isomorphic(graph_group, cycle_group)
        payload = {"kind": "banana", "lengths": lengths, "graph_group": graph_group.to_json(),
                   "thick_cycle_group": cycle_group.to_json(), "isomorphic": iso}
        text = (f"banana {tuple(lengths)}: {_group_text(graph_group)}\n"
                f"thick cycle {tuple(lengths)}: {_group_text(cycle_group)}\n"
                f"verdict: {'isomorphic' if iso else 'NOT isomorphic'}")
        _emit(args, payload, text)
        return EXIT_OK if iso else EXIT_FAIL

    n, k = args.n, args.k
    book = build_book_graph(n, k)
    book_group = sandpile_group(book)
    mult = [1] + [n - 1] * k
    theorem = thick_cycle_group(mult)
    snf = sandpile_group(build_thick_cycle(mult))
    # k pages that are n-cycles glued along one spine edge
    pages = sandpile_group(build_banana(mult))
    formula = canonicalize_group([n - 1] * (k - 2)) if k >= 2 else AbelianGroup()
    consistent = groups_isomorphic(theorem, snf)
    payload = {
        "kind": "book", "n": n, "k": k,
        "graph": {"vertex_count": book.vertex_count, "edge_count": book.edge_count},
        "graph_group": book_group.to_json(),
        "thick_cycle": {"multiplicities": mult, "theorem": theorem.to_json(), "snf": snf.to_json()},
        "page_banana_group": pages.to_json(),
        "stated_formula": formula.to_json(),
        "thick_cycle_consistent": consistent,
        "book_matches_thick_cycle": groups_isomorphic(book_group, theorem),
        "book_matches_stated_formula": groups_isomorphic(book_group, formula),
        "page_banana_matches_thick_cycle": groups_isomorphic(pages, theorem),
    }
    text = "\n".join([
        f"book B({n},{k}), {book.vertex_count} vertices: {_group_text(book_group)}",
        f"thick cycle {tuple(mult)}: theorem {_group_text(theorem)}, snf {_group_text(snf)}",
        f"banana {tuple(mult)} ({k} pages of length {n}): {_group_text(pages)}",
        f"Z_{n - 1}^{k - 2}: {_group_text(formula)}",
        f"thick cycle consistent: {consistent}",
        f"book ~ thick cycle: {payload['book_matches_thick_cycle']}",
        f"book ~ Z_{n - 1}^{k - 2}: {payload['book_matches_stated_formula']}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_pairing(args) -> int:
    graph = _load_graph(args.graph_file)
    a = _load_divisor(args.a_file)
    b = _load_divisor(args.b_file)
    try:
        value = monodromy_pairing(graph, a, b)
    except DivisorError as exc:
        raise UsageError(str(exc)) from None
    text = str(value)
    _emit(args, {"value": text, "numerator": value.numerator, "denominator": value.denominator}, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thick-sandpile", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="sandpile group of a thick cycle")
    p.add_argument("multiplicities", type=_int_list, help="e.g. 3,2,4,2,3")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--via-snf", action="store_true", help="use the Smith normal form path")
    mode.add_argument("--both", action="store_true", help="compute both ways; exit 1 on mismatch")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("graph-group", help="sandpile group of a graph JSON file")
    p.add_argument("graph_file")
    p.add_argument("--sink", type=int, default=None)
    p.set_defaults(func=cmd_graph_group)

    p = sub.add_parser("minor-select", help="row/column selection for a product minor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--subset", type=_int_list, required=True, help="1-based indices, e.g. 1,2,3")
    p.add_argument("--multiplicities", type=_int_list, default=None)
    p.set_defaults(func=cmd_minor_select)

    p = sub.add_parser("verify", help="cross-verification sweep")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--mult-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dual", help="compare a dual family with its thick cycle")
    dual = p.add_subparsers(dest="kind", required=True)
    q = dual.add_parser("book")
    q.add_argument("n", type=int)
    q.add_argument("k", type=int)
    q = dual.add_parser("banana")
    q.add_argument("lengths", type=_int_list)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("pairing", help="monodromy pairing of two degree-0 divisors")
    p.add_argument("graph_file")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.set_defaults(func=cmd_pairing)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
