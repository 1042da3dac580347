"""Command-line surface: bounds, verify, certify, check-cert, search, sweep, lemmas.

Exit codes: 0 success, 1 verification or violation failure, 2 usage or
parse error, 3 node budget exhausted without a violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .bounds import (
    IntersectionSpec,
    applicability,
    hk_inequality_check,
    pascal_equivalence_check,
)
from .errors import (
    CaseMismatch,
    FormatError,
    HypothesisUnmet,
    InvalidFamily,
    ModpError,
    PreconditionUnmet,
    RankDeficit,
    StepFailure,
    TooLarge,
)
from .families import (
    check_dimension_recursion,
    check_level_elimination,
    check_quotient_count,
    check_trivial_kernel,
    read_family,
    validate,
)
from .polycert import (
    GapCase,
    build_certificate,
    check_gap_lemma,
    gap_structure,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .search import (
    DEFAULT_NODE_BUDGET,
    greedy_family,
    max_family,
    sweep,
    sweep_to_csv,
    witness_sets,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

BUDGET_ENV = "MODP_NODE_BUDGET"


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _parse_range(text: str) -> tuple[int, ...]:
    """Either a..b inclusive or a comma-separated list."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return tuple(range(int(lo), int(hi) + 1))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a..b: {text!r}")
    return _parse_int_list(text)


def _default_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            value = int(env)
            if value <= 0:
                raise ValueError
        except ValueError:
            raise FormatError(f"{BUDGET_ENV} must be a positive integer: {env!r}")
        return value
    return DEFAULT_NODE_BUDGET


def _spec_from_args(args) -> IntersectionSpec:
    try:
        return IntersectionSpec.of(args.p, args.K, args.L)
    except ValueError as exc:
        raise FormatError(str(exc))


def cmd_bounds(args) -> int:
    spec = _spec_from_args(args)
    report = applicability(args.n, spec)
    if args.format == "json":
        doc = {
            "n": report.n,
            "p": spec.p,
            "K": list(spec.K),
            "L": list(spec.L),
            "entries": [
                {
                    "tag": e.tag.value,
                    "holds": e.holds,
                    "value": e.value,
                    "family_dependent": e.family_dependent,
                }
                for e in report.entries
            ],
        }
        print(json.dumps(doc))
        return EXIT_OK
    print(f"bounds for n={args.n}, p={spec.p}, K={list(spec.K)}, L={list(spec.L)}")
    print(f"{'tag':<10} {'hypothesis':<16} bound")
    for e in report.entries:
        if e.holds:
            status, value = "holds", str(e.value)
        elif e.family_dependent:
            status, value = "family-dependent", "n/a"
        else:
            status, value = "fails", "n/a"
        print(f"{e.tag.value:<10} {status:<16} {value}")
    return EXIT_OK


_VERIFY_CHECKS = ("conditions", "kernel", "cri", "count", "recurbound")


def cmd_verify(args) -> int:
    family, spec = read_family(args.family)
    selected = args.checks.split(",") if args.checks else list(_VERIFY_CHECKS)
    for name in selected:
        if name not in _VERIFY_CHECKS:
            raise FormatError(f"unknown check {name!r}; pick from {_VERIFY_CHECKS}")
    n, s, r, p = family.n, spec.s, spec.r, spec.p
    failed = False

    report = validate(family, spec)
    if "conditions" in selected:
        if report.ok:
            print("conditions: ok")
        else:
            failed = True
            print("conditions: FAIL")
            for idx, residue in report.size_violations[:20]:
                print(f"  size violation: member {idx} has size {residue} mod {p}")
            for i, j, residue in report.intersection_violations[:20]:
                print(f"  intersection violation: members {i},{j} meet in "
                      f"{residue} mod {p}")
    if not report.ok:
        # the rank checks are only meaningful for valid families
        for name in selected:
            if name != "conditions":
                print(f"{name}: skipped (family invalid)")
        return EXIT_FAIL

    if "kernel" in selected:
        ok, witness = check_trivial_kernel(family, spec)
        if ok:
            print("kernel: ok (only the trivial solution)")
        else:
            failed = True
            print(f"kernel: FAIL, nonzero solution {list(map(int, witness))}")

    if "cri" in selected:
        if p <= 2 * r:
            print(f"cri: inapplicable (p={p} <= 2r={2 * r})")
        else:
            levels = [
                i for i in range(0, s - 2 * r + 2) if i + 2 * r <= n - 1
            ]
            if not levels:
                print("cri: inapplicable (no level in range)")
            else:
                bad = [i for i in levels if not check_level_elimination(family, spec, i)]
                if bad:
                    failed = True
                    print(f"cri: FAIL at levels {bad}")
                else:
                    print(f"cri: ok (levels {levels[0]}..{levels[-1]})")

    if "count" in selected:
        pairs = [
            (u, v)
            for u in range(1, p)
            for v in range(u + 1, p)
            if u + v <= n - 1
        ]
        if not pairs:
            print("count: inapplicable (no (u, v) pair in range)")
        else:
            bad_pairs = [
                (u, v) for u, v in pairs
                if not check_quotient_count(family, spec.modulus, u, v)
            ]
            if bad_pairs:
                failed = True
                print(f"count: FAIL at {bad_pairs}")
            else:
                print(f"count: ok ({len(pairs)} (u, v) pairs)")

    if "recurbound" in selected:
        if n < 2 * s - 2 * r + 1 or s - 2 * r + 1 < 0:
            print("recurbound: inapplicable (hypothesis n >= 2s-2r+1 "
                  "or level range empty)")
        else:
            levels = list(range(0, s - 2 * r + 2))
            bad = [
                i for i in levels
                if not check_dimension_recursion(family, spec, i)
            ]
            if bad:
                failed = True
                print(f"recurbound: FAIL at levels {bad}")
            else:
                print(f"recurbound: ok (levels {levels[0]}..{levels[-1]})")

    return EXIT_FAIL if failed else EXIT_OK


def cmd_certify(args) -> int:
    family, spec = read_family(args.family)
    try:
        cert = build_certificate(family, spec)
    except HypothesisUnmet as exc:
        print(f"no theorem hypothesis applies: {exc}")
        return EXIT_FAIL
    except (CaseMismatch, StepFailure, RankDeficit, InvalidFamily) as exc:
        print(f"certification failed: {exc}")
        return EXIT_FAIL
    write_certificate(args.out, cert)
    print(f"kind: {cert.kind.value}")
    print(f"derived bound: {cert.derived_bound}")
    print(f"family size {family.m} <= {cert.derived_bound}: "
          f"{'ok' if family.m <= cert.derived_bound else 'VIOLATED'}")
    print(f"certificate written to {args.out}")
    return EXIT_OK if family.m <= cert.derived_bound else EXIT_FAIL


def cmd_check_cert(args) -> int:
    cert = read_certificate(args.certificate)
    family, spec = read_family(args.family)
    if not validate(family, spec).ok:
        print("mismatch: family fails its own conditions")
        return EXIT_FAIL
    problems = verify_certificate(cert, family, spec)
    if problems:
        print(f"mismatch: {problems[0]}")
        return EXIT_FAIL
    print(f"certificate ok ({cert.kind.value}, derived bound {cert.derived_bound})")
    return EXIT_OK


def cmd_search(args) -> int:
    spec = _spec_from_args(args)
    result = max_family(args.n, spec, _default_budget(args))
    print(f"optimum: {result.optimum}")
    print(f"witness: {[list(s) for s in witness_sets(result)]}")
    print(f"nodes explored: {result.nodes_explored}")
    print(f"proved optimal: {'yes' if result.proved_optimal else 'no'}")
    if result.budget_exhausted:
        print("node budget exhausted; optimum is only a lower bound")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = sweep(args.n, args.p, args.kmax, args.lmax, _default_budget(args))
    if args.format == "json":
        doc = [
            {
                "n": row.n,
                "p": row.spec.p,
                "K": list(row.spec.K),
                "L": list(row.spec.L),
                "optimum": row.result.optimum,
                "proved": row.result.proved_optimal,
                "slack": row.slack,
                "violation": row.violation,
                "bounds": {
                    e.tag.value: e.value for e in row.report.entries if e.holds
                },
            }
            for row in rows
        ]
        rendered = json.dumps(doc) + "\n"
    else:
        rendered = sweep_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        print(f"sweep table written to {args.out}")
    else:
        print(rendered, end="")
    violations = [row for row in rows if row.violation]
    if violations:
        for row in violations:
            print(
                f"VIOLATION at n={row.n}, p={row.spec.p}, K={list(row.spec.K)}, "
                f"L={list(row.spec.L)}: optimum {row.result.optimum}",
                file=sys.stderr,
            )
        return EXIT_FAIL
    if any(row.result.budget_exhausted for row in rows):
        print("some instances exhausted the node budget", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _lemma_families(n: int, spec: IntersectionSpec):
    yield greedy_family(n, spec)
    import random

    yield greedy_family(n, spec, random.Random(7 * n + spec.p))


def cmd_lemmas(args) -> int:
    counterexamples: list[str] = []

    for n in range(1, args.pascal_n_max + 1):
        for s in range(0, n + 1):
            for r in range(1, (s + 1) // 2 + 1):
                if not pascal_equivalence_check(n, s, r):
                    counterexamples.append(f"pascal: n={n}, s={s}, r={r}")
    print(f"pascal: checked n <= {args.pascal_n_max}")

    for n in range(1, args.hk_n_max + 1):
        for k in range(1, n // 2 + 1):
            for c in range(0, k):
                if not hk_inequality_check(n, k, c):
                    counterexamples.append(f"hk: n={n}, k={k}, c={c}")
    print(f"hk: checked n <= {args.hk_n_max}")

    from .search import spec_grid

    checked = {"cri": 0, "count": 0, "recurbound": 0, "gap": 0}
    for p in args.p:
        for spec in spec_grid(p, 2, 2):
            for n in range(4, args.n_max + 1):
                s, r = spec.s, spec.r
                structure = gap_structure(n, spec)
                g = s - 2 * r + 1
                if (
                    structure.case_tag in (GapCase.CASE1, GapCase.CASE2, GapCase.CASE3)
                    and g >= 1
                    and structure.max_gap >= g + 1
                ):
                    checked["gap"] += 1
                    if not check_gap_lemma(structure.residues, n - 1, g, spec.modulus):
                        counterexamples.append(
                            f"gap: p={p}, residues={structure.residues}, "
                            f"N={n - 1}, g={g}"
                        )
                for family in _lemma_families(n, spec):
                    if p > 2 * r:
                        for level in range(0, s - 2 * r + 2):
                            if level + 2 * r > n - 1:
                                continue
                            checked["cri"] += 1
                            if not check_level_elimination(family, spec, level):
                                counterexamples.append(
                                    f"cri: n={n}, p={p}, K={spec.K}, L={spec.L}, "
                                    f"level={level}"
                                )
                    for u in range(1, p):
                        for v in range(u + 1, p):
                            if u + v > n - 1:
                                continue
                            checked["count"] += 1
                            if not check_quotient_count(family, spec.modulus, u, v):
                                counterexamples.append(
                                    f"count: n={n}, p={p}, K={spec.K}, "
                                    f"L={spec.L}, u={u}, v={v}"
                                )
                    if n >= 2 * s - 2 * r + 1:
                        for level in range(0, s - 2 * r + 2):
                            checked["recurbound"] += 1
                            if not check_dimension_recursion(family, spec, level):
                                counterexamples.append(
                                    f"recurbound: n={n}, p={p}, K={spec.K}, "
                                    f"L={spec.L}, level={level}"
                                )
    for name, count in checked.items():
        print(f"{name}: {count} instances checked")
    if counterexamples:
        print(f"{len(counterexamples)} counterexamples:")
        for line in counterexamples:
            print(f"  {line}")
        return EXIT_FAIL
    print("no counterexamples")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modp-intersect",
        description=(
            "Exact bounds, certificates and extremal search for families of "
            "sets with restricted sizes and pairwise intersections mod p."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p_):
        p_.add_argument("--n", type=int, required=True, help="ground-set size")
        p_.add_argument("--p", type=int, required=True, help="prime modulus")
        p_.add_argument("--K", type=_parse_int_list, required=True,
                        help="admissible sizes mod p, comma-separated")
        p_.add_argument("--L", type=_parse_int_list, required=True,
                        help="admissible intersection sizes mod p, comma-separated")

    p_bounds = sub.add_parser("bounds", help="print the per-theorem bound table")
    add_spec_flags(p_bounds)
    p_bounds.add_argument("--format", choices=("text", "json"), default="text")
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="run the rank checks on a family file")
    p_verify.add_argument("family", help="family document (JSON)")
    p_verify.add_argument("--checks", default=None,
                          help="comma-separated subset of "
                               f"{','.join(_VERIFY_CHECKS)} (default: all)")
    p_verify.set_defaults(func=cmd_verify)

    p_certify = sub.add_parser("certify", help="write a bound certificate")
    p_certify.add_argument("family", help="family document (JSON)")
    p_certify.add_argument("--out", required=True, help="certificate output path")
    p_certify.set_defaults(func=cmd_certify)

    p_check = sub.add_parser("check-cert", help="re-verify a certificate")
    p_check.add_argument("certificate", help="certificate document (JSON)")
    p_check.add_argument("family", help="family document (JSON)")
    p_check.set_defaults(func=cmd_check_cert)

    p_search = sub.add_parser("search", help="find a maximum valid family")
    add_spec_flags(p_search)
    p_search.add_argument("--budget", type=int, default=None,
                          help=f"node budget (default {BUDGET_ENV} or "
                               f"{DEFAULT_NODE_BUDGET})")
    p_search.set_defaults(func=cmd_search)

    p_sweep = sub.add_parser("sweep", help="search a parameter grid and "
                                           "cross-check every bound")
    p_sweep.add_argument("--n", type=_parse_range, required=True,
                         help="ground-set sizes, a..b or comma-separated")
    p_sweep.add_argument("--p", type=_parse_int_list, required=True,
                         help="prime moduli, comma-separated")
    p_sweep.add_argument("--kmax", type=int, default=1, help="max |K|")
    p_sweep.add_argument("--lmax", type=int, default=2, help="max |L|")
    p_sweep.add_argument("--budget", type=int, default=None)
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", default=None, help="write the table here")
    p_sweep.set_defaults(func=cmd_sweep)

    p_lemmas = sub.add_parser("lemmas", help="sweep the lemma checkers over "
                                             "desk-scale ranges")
    p_lemmas.add_argument("--p", type=_parse_int_list, default=(2, 3, 5))
    p_lemmas.add_argument("--n-max", dest="n_max", type=int, default=7)
    p_lemmas.add_argument("--hk-n-max", dest="hk_n_max", type=int, default=60)
    p_lemmas.add_argument("--pascal-n-max", dest="pascal_n_max", type=int,
                          default=30)
    p_lemmas.set_defaults(func=cmd_lemmas)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, TooLarge, PreconditionUnmet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
