"""Command line front end.

One subcommand per capability: trace a machine run, enumerate sortable
permutations, run verification suites, and query the bijections and
counting sequences directly.  Data goes to stdout, diagnostics to stderr,
and output bytes are deterministic: nothing here consults a clock, a
random source, or unordered iteration.

Exit codes: 0 on success, 1 when a verification suite reports a failure,
2 on usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .dyck import (
    FACTOR_DUDU,
    contains_factor,
    count_dyck_avoiding,
    dyck_paths,
    rotem_b_sequence,
    rotem_map,
)
from .machine import (
    StackTrace,
    pattern_name,
    pattern_stack_pass,
    west_pass,
)
from .perms import (
    STAR_123,
    STAR_132,
    BivincularPattern,
    MalformedToken,
    PatternSet,
    Permutation,
    format_permutation,
    parse_permutation,
)
from .harness import (
    SUITE_CAPS,
    SUITES,
    conjecture_tables,
    enumerate_cached,
    run_suites,
)
from .sequences import (
    binomial_transform_catalan,
    catalan,
    f_sequence,
    g_sequence,
    gf_coefficients,
    powers_2_shifted,
    schroder_large,
    sort_123_321_closed,
    SequenceTable,
)
from .signatures import (
    format_signature,
    has_plateau,
    signature,
    west_map,
)

FORMATS = ("text", "json", "csv")

#: Keyword tokens for the two bivincular patterns the machines care about.
STAR_TOKENS = {"132-star": STAR_132, "123-star": STAR_123}


def _parse_pattern(token: str) -> Permutation | BivincularPattern:
    if token in STAR_TOKENS:
        return STAR_TOKENS[token]
    if token.isdigit():
        return Permutation.from_digits(token)
    return parse_permutation(token)


def _parse_perm(token: str) -> Permutation:
    if token.isdigit():
        return Permutation.from_digits(token)
    return parse_permutation(token)


def _classical_pattern(token: str, flag: str) -> Permutation:
    p = _parse_pattern(token)
    if isinstance(p, BivincularPattern):
        raise MalformedToken(f"{flag} takes a classical pattern, got {token!r}")
    return p


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(payload: dict) -> None:
    _emit(json.dumps(payload, indent=2))


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def _render_trace_steps(trace: StackTrace) -> list[str]:
    lines = []
    for step in trace.steps:
        stack = " ".join(str(v) for v in step.stack_top_to_bottom) or "-"
        out = " ".join(str(v) for v in step.output_so_far) or "-"
        lines.append(f"  {step.action:<11} {step.moved_value:>3} | stack: {stack:<12} | out: {out}")
    return lines


# ---- subcommand handlers --------------------------------------------------


def _cmd_trace(args: argparse.Namespace) -> int:
    x = _parse_perm(args.perm)
    sigma = _parse_pattern(args.sigma)
    tau = _parse_pattern(args.tau)
    patterns = PatternSet.of(sigma, tau)
    mid, first = pattern_stack_pass(x, patterns, want_trace=True)
    out, second = west_pass(mid, want_trace=True)
    sorted_ok = out.is_identity
    if args.format == "json":
        _emit_json(
            {
                "input": list(x.entries),
                "machine": [pattern_name(sigma), pattern_name(tau)],
                "pattern_pass": first.to_json_dict(),
                "intermediate": list(mid.entries),
                "west_pass": second.to_json_dict(),
                "output": list(out.entries),
                "sorted": sorted_ok,
            }
        )
        return 0
    name = f"({pattern_name(sigma)}, {pattern_name(tau)})"
    lines = [f"{name} machine on {format_permutation(x)}"]
    lines.append(f"pass 1: stack avoiding {name}")
    lines.extend(_render_trace_steps(first))
    lines.append(f"  intermediate: {format_permutation(mid)}")
    lines.append("pass 2: increasing stack")
    lines.extend(_render_trace_steps(second))
    lines.append(f"output: {format_permutation(out)}")
    lines.append(f"sorted: {'yes' if sorted_ok else 'no'}")
    _emit("\n".join(lines))
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    sigma = _classical_pattern(args.sigma, "--sigma")
    tau = _classical_pattern(args.tau, "--tau") if args.tau else None
    cache_dir = Path(args.cache_dir) if args.cache_dir else None
    result, from_cache = enumerate_cached(
        args.n, sigma, tau, workers=args.workers, cache_dir=cache_dir
    )
    _note("cache hit" if from_cache else f"scanned in {result.worker_partitions} blocks")
    label = "+".join(result.machine)
    if args.format == "json":
        _emit_json(result.to_json_dict())
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["machine", "n", "count"])
        writer.writerow([label, result.n, result.count])
        _emit(buf.getvalue())
    else:
        _emit(f"machine {label}, n={result.n}: {result.count} sortable permutations")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, args.n_max, workers=args.workers)
    passed = all(r.passed for r in reports)
    if args.format == "json":
        _emit_json(
            {
                "n_max": args.n_max,
                "suites": [r.to_json_dict() for r in reports],
                "passed": passed,
            }
        )
    else:
        blocks = [r.render_text() for r in reports]
        failing = [r.suite for r in reports if not r.passed]
        blocks.append(
            "all suites passed" if passed else "failing suites: " + ", ".join(failing)
        )
        _emit("\n\n".join(blocks))
    return 0 if passed else 1


def _cmd_signature(args: argparse.Namespace) -> int:
    x = _parse_perm(args.perm)
    y = _classical_pattern(args.sigma, "--sigma")
    sig = signature(x, y)
    if args.format == "json":
        _emit_json(
            {
                "perm": list(x.entries),
                "pattern": pattern_name(y),
                "signature": list(sig),
                "plateau": has_plateau(sig),
            }
        )
        return 0
    lines = [format_signature(sig)]
    if has_plateau(sig):
        lines.append("has a plateau (sig_i = sig_{i+1} <= sig_{i+2})")
    _emit("\n".join(lines))
    return 0


def _cmd_west_map(args: argparse.Namespace) -> int:
    x = _parse_perm(args.perm)
    source = _classical_pattern(args.sigma, "--sigma")
    target = _classical_pattern(args.tau, "--tau")
    image = west_map(x, source, target)
    sig = signature(x, source)
    if args.format == "json":
        _emit_json(
            {
                "perm": list(x.entries),
                "source": pattern_name(source),
                "target": pattern_name(target),
                "image": list(image.entries),
                "signature": list(sig),
            }
        )
        return 0
    _emit(f"{format_permutation(image)}\nshared signature: {format_signature(sig)}")
    return 0


def _cmd_dyck(args: argparse.Namespace) -> int:
    if args.perm is not None:
        x = _parse_perm(args.perm)
        b = rotem_b_sequence(x)
        path = rotem_map(x)
        dudu = contains_factor(path, FACTOR_DUDU)
        if args.format == "json":
            _emit_json(
                {
                    "perm": list(x.entries),
                    "b_sequence": list(b.b),
                    "path": path.word,
                    "contains_dudu": dudu,
                }
            )
            return 0
        _emit(
            f"b: {' '.join(str(v) for v in b.b)}\n"
            f"path: {path.word}\n"
            f"dudu factor: {'yes' if dudu else 'no'}"
        )
        return 0
    n = args.n
    total = sum(1 for _ in dyck_paths(n))
    avoiding = count_dyck_avoiding(n, FACTOR_DUDU)
    if args.format == "json":
        _emit_json({"n": n, "paths": total, "avoiding_dudu": avoiding})
        return 0
    _emit(f"Dyck paths of semilength {n}: {total}, avoiding dudu: {avoiding}")
    return 0


def _sequence_tables(n_max: int) -> list[SequenceTable]:
    tables = [
        g_sequence(n_max),
        catalan(n_max),
        schroder_large(n_max),
        binomial_transform_catalan(n_max),
        powers_2_shifted(n_max),
        SequenceTable(
            "sort-123-321",
            1,
            tuple(sort_123_321_closed(n) for n in range(1, n_max + 1)),
        ),
        gf_coefficients(n_max),
    ]
    if n_max >= 2:
        tables.insert(1, f_sequence(n_max))
    return tables


def _cmd_sequences(args: argparse.Namespace) -> int:
    tables = _sequence_tables(args.n_max)
    if args.format == "json":
        _emit_json({"tables": [t.to_json_dict() for t in tables]})
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["table", "n", "value"])
        for t in tables:
            for i, term in enumerate(t.terms):
                writer.writerow([t.name, t.offset + i, term])
        _emit(buf.getvalue())
        return 0
    lines = [
        f"{t.name} (from n={t.offset}): {' '.join(str(v) for v in t.terms)}"
        for t in tables
    ]
    _emit("\n".join(lines))
    return 0


def _render_distribution(table) -> list[str]:
    label = "+".join(table.machine)
    first = ", ".join(
        f"{k}:{v}" for k, v in sorted(table.by_first_entry.items())
    )
    top = ", ".join(
        f"{k}:{v}" for k, v in sorted(table.by_position_of_max.items())
    )
    return [
        f"machine {label}, n={table.n}, total {table.total()}",
        f"  by first entry:      {first or '-'}",
        f"  by position of max:  {top or '-'}",
    ]


def _cmd_conjecture(args: argparse.Namespace) -> int:
    table_a, table_b, report = conjecture_tables(args.n, workers=args.workers)
    if args.format == "json":
        _emit_json(
            {
                "machine_a": table_a.to_json_dict(),
                "machine_b": table_b.to_json_dict(),
                "report": report.to_json_dict(),
            }
        )
    else:
        lines = _render_distribution(table_a) + _render_distribution(table_b)
        lines.append(report.render_text())
        _emit("\n".join(lines))
    return 0 if report.passed else 1


# ---- parser ----------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser, choices=("text", "json")) -> None:
    p.add_argument("--format", choices=choices, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacksort",
        description="Pattern-avoiding two-stack sorting machines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="step-by-step run of the two-stack machine")
    p.add_argument("--sigma", required=True, help="first forbidden pattern")
    p.add_argument("--tau", required=True, help="second forbidden pattern")
    p.add_argument("--perm", required=True, help="input permutation")
    _add_format(p)
    p.set_defaults(handler=_cmd_trace)

    p = sub.add_parser("enumerate", help="count sortable permutations of length n")
    p.add_argument("--sigma", required=True)
    p.add_argument("--tau", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache-dir", default=None)
    _add_format(p, FORMATS)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("verify", help="run brute-force verification suites")
    p.add_argument(
        "--suite",
        choices=sorted(SUITES) + ["all"],
        required=True,
    )
    p.add_argument(
        "--n-max",
        type=int,
        default=8,
        help=f"largest length to scan (clamped per suite, caps {dict(sorted(SUITE_CAPS.items()))})",
    )
    p.add_argument("--workers", type=int, default=1)
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("signature", help="active-site signature of a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--sigma", required=True, help="reference pattern, 123 or 132")
    _add_format(p)
    p.set_defaults(handler=_cmd_signature)

    p = sub.add_parser(
        "west-map", help="signature-matching bijection between avoider classes"
    )
    p.add_argument("--perm", required=True)
    p.add_argument("--sigma", required=True, help="pattern the input avoids")
    p.add_argument("--tau", required=True, help="pattern the image avoids")
    _add_format(p)
    p.set_defaults(handler=_cmd_west_map)

    p = sub.add_parser(
        "dyck", help="staircase encoding of a 123-avoider, or path counts"
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", default=None)
    group.add_argument("--n", type=int, default=None, help="semilength to count")
    _add_format(p)
    p.set_defaults(handler=_cmd_dyck)

    p = sub.add_parser("sequences", help="print the counting sequences side by side")
    p.add_argument("--n-max", type=int, default=8)
    _add_format(p, FORMATS)
    p.set_defaults(handler=_cmd_sequences)

    p = sub.add_parser(
        "conjecture", help="refined distribution tables for the open equinumerosity"
    )
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    _add_format(p)
    p.set_defaults(handler=_cmd_conjecture)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, LookupError, OverflowError, ArithmeticError) as exc:
        _note(f"error: {exc}")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
