"""Command-line front end for the region-bound calculators.

Subcommands: bound (all bounds for one architecture), table (equal-width
bound tables), matrix (one bound matrix), decompose (factor a binomial
bound matrix), asymptotic (per-layer growth bases), count (exact region
enumeration for a network), verify (self-check suite).

All integer output is exact and printed in full. Identical flags and seed
produce byte-identical output. RELUBOUND_THREADS caps worker threads for
the enumeration commands.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import decomposition, empirical, fixtures
from .bound_matrices import (
    build_bound_matrix,
    evaluate_bound,
    format_matrix,
    matrix_to_json,
    montufar_bound,
    montufar_lower_bound,
    naive_bound,
    narrow_layer_somewhere,
    serra_sum,
    width_increases_somewhere,
)
from .gamma import BINOMIAL, BUILTIN, NAIVE, ZASLAVSKY
from .histogram import Histogram, clip, l1_norm, leq, scale
from .transition import Architecture, phi

WIDTHS_SHORTHAND = re.compile(r"^(\d+):x(\d+)$")


def parse_widths(text: str) -> tuple[int, ...]:
    """Comma list like '3,4,5' or repetition shorthand like '4:x6'."""
    m = WIDTHS_SHORTHAND.match(text)
    if m:
        width, reps = int(m.group(1)), int(m.group(2))
        if reps < 1:
            raise argparse.ArgumentTypeError("repetition count must be positive")
        return (width,) * reps
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad widths: {text!r}")


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational: {text!r}")


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _strictness_lines(arch: Architecture) -> list[str]:
    widens = width_increases_somewhere(arch)
    narrow = narrow_layer_somewhere(arch)
    lines = []
    if widens:
        lines.append("montufar < naive: some layer is wider than its input")
    else:
        lines.append("montufar = naive: no layer is wider than its input")
    if narrow:
        lines.append(
            "binomial < montufar: some hidden layer is narrower than the sum"
            " of the running width minima on its two sides"
        )
    else:
        lines.append(
            "binomial = montufar: no hidden layer is narrower than the sum"
            " of the running width minima on its two sides"
        )
    if widens or narrow:
        lines.append("binomial < naive: at least one strictness condition holds")
    else:
        lines.append("binomial = naive: neither strictness condition holds")
    return lines


def cmd_bound(args) -> int:
    arch = Architecture(args.n0, args.widths)
    if args.gamma is not None:
        g = BUILTIN[args.gamma]
        value = evaluate_bound(g, arch)
        if args.format == "json":
            _emit_json(
                {
                    "n0": arch.n0,
                    "widths": list(arch.widths),
                    "gamma": g.name,
                    "bound": value,
                }
            )
        else:
            print(f"n0={arch.n0} widths={','.join(map(str, arch.widths))}")
            print(f"{g.name}: {value}")
        return 0
    values = {
        "naive": naive_bound(arch),
        "montufar": montufar_bound(arch),
        "binomial": evaluate_bound(BINOMIAL, arch),
        "serra": serra_sum(arch),
        "lower": montufar_lower_bound(arch),
    }
    if args.format == "json":
        _emit_json(
            {
                "n0": arch.n0,
                "widths": list(arch.widths),
                **values,
                "montufar_lt_naive": width_increases_somewhere(arch),
                "binomial_lt_montufar": narrow_layer_somewhere(arch),
            }
        )
        return 0
    print(f"n0={arch.n0} widths={','.join(map(str, arch.widths))}")
    for name in ("naive", "montufar", "binomial", "serra", "lower"):
        print(f"{name:9s}{values[name]}")
    for line in _strictness_lines(arch):
        print(line)
    return 0


def cmd_table(args) -> int:
    rows = []
    for n0 in args.n0_list:
        for length in range(1, args.l_max + 1):
            arch = Architecture(n0, (args.n,) * length)
            rows.append(
                {
                    "n": args.n,
                    "n0": n0,
                    "L": length,
                    "montufar": evaluate_bound(ZASLAVSKY, arch),
                    "binomial": evaluate_bound(BINOMIAL, arch),
                }
            )
    if args.format == "json":
        _emit_json(rows)
    elif args.format == "csv":
        print("n,n0,L,montufar,binomial")
        for r in rows:
            print(f"{r['n']},{r['n0']},{r['L']},{r['montufar']},{r['binomial']}")
    else:
        header = ("n", "n0", "L", "montufar", "binomial")
        cells = [header] + [
            tuple(str(r[k]) for k in header) for r in rows
        ]
        print(format_matrix(cells))
    return 0


def cmd_matrix(args) -> int:
    g = BUILTIN[args.gamma]
    m = build_bound_matrix(g, args.n)
    if args.format == "json":
        _emit_json({"gamma": g.name, "n": args.n, "rows": matrix_to_json(m.rows)})
    else:
        print(format_matrix(m.rows))
    return 0


def _frac_matrix_json(rows) -> list[list[str]]:
    return [[str(x) for x in row] for row in rows]


def cmd_decompose(args) -> int:
    dec = decomposition.build_decomposition(args.n + 1)
    ok = decomposition.verify_B_equals_C(args.n)
    if args.format == "json":
        _emit_json(
            {
                "n": args.n,
                "size": dec.n,
                "xi": list(dec.xi),
                "C": _frac_matrix_json(dec.C),
                "P": _frac_matrix_json(dec.P),
                "J": _frac_matrix_json(dec.J),
                "P_inv": _frac_matrix_json(dec.P_inv),
                "matches_bound_matrix": ok,
            }
        )
        return 0 if ok else 1
    print(f"binomial bound matrix of width {args.n}, factored as P J P^-1")
    print(f"xi: {', '.join(map(str, dec.xi))}")
    for label, rows in (("C", dec.C), ("P", dec.P), ("J", dec.J), ("P^-1", dec.P_inv)):
        print(f"{label}:")
        print(format_matrix(rows))
    print(f"C equals the bound matrix: {ok}")
    return 0 if ok else 1


def cmd_asymptotic(args) -> int:
    rep = decomposition.asymptotic_report(args.n, args.n0)
    if args.format == "json":
        _emit_json(rep.to_dict())
    elif args.format == "csv":
        print(rep.CSV_HEADER)
        print(rep.csv_row())
    else:
        print(f"n={rep.n} n0={rep.n0}")
        print(f"montufar base: {rep.montufar_base}")
        print(f"binomial base: {rep.binomial_base}")
        print(f"log2 montufar: {rep.log2_montufar!r}")
        print(f"log2 binomial: {rep.log2_binomial!r}")
        print(f"stirling exponent (approximate): {rep.stirling_exponent!r}")
    return 0


def cmd_count(args) -> int:
    if args.network is not None:
        net = empirical.load_network(args.network)
    elif args.random:
        if args.n0 is None or args.widths is None:
            raise ValueError("--random needs --n0 and --widths")
        arch = Architecture(args.n0, args.widths)
        net = empirical.random_network(arch, args.seed, args.scale)
    elif args.triangle:
        net = fixtures.triangle_network(third_unit_up=args.triangle == "up")
    else:
        raise ValueError("give --network FILE, --random, or --triangle")
    report = empirical.verify_network(
        net,
        args.box_radius,
        allow_large=args.allow_large,
        exact=not args.float_lp,
    )
    sampled = None
    if args.samples:
        sampled = empirical.sample_count(
            net, args.samples, args.box_radius, seed=args.seed
        )
    ok = report.chain_ok and report.recursion_ok
    if sampled is not None:
        ok = ok and sampled <= report.exact
    if args.format == "json":
        payload = report.to_dict()
        if sampled is not None:
            payload["sample_count"] = sampled
            payload["samples"] = args.samples
            payload["seed"] = args.seed
        _emit_json(payload)
        return 0 if ok else 1
    arch = report.architecture
    print(f"n0={arch.n0} widths={','.join(map(str, arch.widths))}")
    print(f"exact count:     {report.exact}")
    if sampled is not None:
        print(f"sampled count:   {sampled} ({args.samples} samples, seed {args.seed})")
    print(f"binomial bound:  {report.binomial}")
    print(f"zaslavsky bound: {report.zaslavsky}")
    print(f"naive bound:     {report.naive}")
    print(f"chain exact <= binomial <= zaslavsky <= naive: {report.chain_ok}")
    print(f"per-layer dimension histogram dominance: {report.recursion_ok}")
    return 0 if ok else 1


def _random_histogram(rng: random.Random, max_index: int = 8, max_count: int = 40) -> Histogram:
    counts = [rng.randint(0, max_count) if rng.random() < 0.6 else 0
              for _ in range(rng.randint(1, max_index + 1))]
    return Histogram(tuple(counts))


def _dominated_variant(rng: random.Random, w: Histogram) -> Histogram:
    """Random v with v dominated by w: drop mass or move it to lower indices."""
    counts = list(w.to_list())
    for j in range(len(counts) - 1, -1, -1):
        take = rng.randint(0, counts[j])
        counts[j] -= take
        if j > 0 and rng.random() < 0.5:
            counts[rng.randrange(j)] += rng.randint(0, take)
    return Histogram(tuple(counts))


def _check_order_laws(rng: random.Random, cases: int) -> bool:
    for _ in range(cases):
        w = _random_histogram(rng)
        v = _dominated_variant(rng, w)
        u = _random_histogram(rng)
        k = rng.randint(0, 5)
        if not leq(v, w):
            return False
        if not leq(w, w):
            return False
        if leq(w, v) and v != w:
            return False
        if not leq(v + u, w + u):
            return False
        if not leq(scale(k, v), scale(k, w)):
            return False
        t = _dominated_variant(rng, v)
        if not leq(t, w):
            return False
    return True


def _check_norm_monotone(rng: random.Random, cases: int) -> bool:
    for _ in range(cases):
        w = _random_histogram(rng)
        v = _dominated_variant(rng, w)
        if l1_norm(v) > l1_norm(w):
            return False
    return True


def _check_clip_monotone(rng: random.Random, cases: int) -> bool:
    for _ in range(cases):
        w = _random_histogram(rng)
        v = _dominated_variant(rng, w)
        i = rng.randint(0, 9)
        j = rng.randint(i, 9)
        if not leq(clip(v, i), clip(w, i)):
            return False
        if not leq(clip(w, i), clip(w, j)):
            return False
        if not leq(clip(w, i), w):
            return False
        if l1_norm(clip(w, i)) != l1_norm(w):
            return False
    return True


def _check_phi_monotone(rng: random.Random, cases: int) -> bool:
    for _ in range(cases):
        w = _random_histogram(rng)
        v = _dominated_variant(rng, w)
        n_prime = rng.randint(1, 6)
        for g in (NAIVE, ZASLAVSKY, BINOMIAL):
            if not leq(phi(g, n_prime, v), phi(g, n_prime, w)):
                return False
    return True


def _check_norm_equality(rng: random.Random, cases: int) -> bool:
    for _ in range(cases):
        v = _random_histogram(rng)
        n_prime = rng.randint(1, 7)
        if l1_norm(phi(ZASLAVSKY, n_prime, v)) != l1_norm(phi(BINOMIAL, n_prime, v)):
            return False
    return True


def _check_decomposition(n_max: int) -> bool:
    for n in range(1, n_max + 1):
        if not decomposition.verify_B_equals_C(n):
            return False
        dec = decomposition.build_decomposition(n + 1)
        size = dec.n
        prod = decomposition._matmul(dec.P, dec.P_inv)
        for i in range(size):
            for j in range(size):
                if prod[i][j] != (1 if i == j else 0):
                    return False
        pjq = decomposition._matmul(decomposition._matmul(dec.P, dec.J), dec.P_inv)
        if pjq != dec.C:
            return False
    return True


def _check_cross_formulation(rng: random.Random, archs: int) -> bool:
    from .transition import compose_bound_histogram

    for _ in range(archs):
        n0 = rng.randint(1, 5)
        widths = tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 4)))
        arch = Architecture(n0, widths)
        for g in (NAIVE, ZASLAVSKY, BINOMIAL):
            if l1_norm(compose_bound_histogram(g, arch)) != evaluate_bound(g, arch):
                return False
        if evaluate_bound(ZASLAVSKY, arch) != montufar_bound(arch):
            return False
        if evaluate_bound(BINOMIAL, arch) != serra_sum(arch):
            return False
    return True


def _check_strictness(max_width: int, max_depth: int) -> bool:
    from itertools import product

    for n0 in range(1, max_width + 1):
        for depth in range(1, max_depth + 1):
            for widths in product(range(1, max_width + 1), repeat=depth):
                arch = Architecture(n0, widths)
                naive = naive_bound(arch)
                mont = montufar_bound(arch)
                binom = evaluate_bound(BINOMIAL, arch)
                if not (binom <= mont <= naive):
                    return False
                if (mont < naive) != width_increases_somewhere(arch):
                    return False
                if (binom < mont) != narrow_layer_somewhere(arch):
                    return False
                if width_increases_somewhere(arch) or narrow_layer_somewhere(arch):
                    if not binom < naive:
                        return False
    return True


def _check_ground_truth(full: bool) -> bool:
    for up in (False, True):
        net = fixtures.triangle_network(third_unit_up=up)
        count, sigs = empirical.exact_count(net, Fraction(10))
        expected = (
            fixtures.TRIANGLE_SIGNATURES_UP if up else fixtures.TRIANGLE_SIGNATURES_DOWN
        )
        if count != fixtures.TRIANGLE_REGION_COUNT:
            return False
        if {s[0] for s in sigs} != set(expected):
            return False
    if full:
        for seed in range(5):
            arch = Architecture(2, (3, 2))
            net = empirical.random_network(arch, seed)
            report = empirical.verify_network(net)
            if not (report.chain_ok and report.recursion_ok):
                return False
    return True


def cmd_verify(args) -> int:
    cases = 500 if args.quick else 10000
    rng = random.Random(args.seed)
    checks = [
        ("histogram order laws", lambda: _check_order_laws(rng, cases)),
        ("norm monotone under dominance", lambda: _check_norm_monotone(rng, cases)),
        ("clip monotone and mass preserving", lambda: _check_clip_monotone(rng, cases)),
        ("transition monotone", lambda: _check_phi_monotone(rng, cases)),
        ("zaslavsky and binomial norms agree", lambda: _check_norm_equality(rng, cases)),
        ("decomposition identities", lambda: _check_decomposition(6 if args.quick else 12)),
        ("matrix and histogram paths agree", lambda: _check_cross_formulation(rng, 25 if args.quick else 200)),
        ("strictness conditions exact", lambda: _check_strictness(3, 2) if args.quick else _check_strictness(4, 3)),
        ("region counts within bounds", lambda: _check_ground_truth(full=not args.quick)),
    ]
    failures = 0
    for name, run in checks:
        ok = run()
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relubound",
        description="Exact bounds and exact counts for ReLU network regions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="all bounds for one architecture")
    p.add_argument("--n0", type=int, required=True, help="input dimension")
    p.add_argument("--widths", type=parse_widths, required=True,
                   help="layer widths: '3,4,5' or '4:x6'")
    p.add_argument("--gamma", choices=sorted(BUILTIN), default=None,
                   help="print only this collection's bound")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="equal-width bound table")
    p.add_argument("--n", type=int, required=True, help="layer width")
    p.add_argument("--n0-list", type=parse_int_list, default=(1, 2, 3, 4),
                   help="input dimensions, comma separated")
    p.add_argument("--l-max", type=int, default=6, help="maximum depth")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("matrix", help="print one bound matrix")
    p.add_argument("--gamma", choices=sorted(BUILTIN), required=True)
    p.add_argument("--n", type=int, required=True, help="layer width")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("decompose", help="factor a binomial bound matrix")
    p.add_argument("--n", type=int, required=True, help="layer width")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("asymptotic", help="per-layer growth bases")
    p.add_argument("--n", type=int, required=True, help="layer width")
    p.add_argument("--n0", type=int, required=True, help="input dimension")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("count", help="exact region count for one network")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--network", help="network JSON file")
    src.add_argument("--random", action="store_true", help="draw a random network")
    src.add_argument("--triangle", choices=("down", "up"),
                     help="built-in three-line fixture")
    p.add_argument("--n0", type=int, default=None, help="input dimension (with --random)")
    p.add_argument("--widths", type=parse_widths, default=None,
                   help="layer widths (with --random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=int, default=1000,
                   help="weight denominator (with --random)")
    p.add_argument("--samples", type=int, default=0,
                   help="also sample this many points for a lower bound")
    p.add_argument("--box-radius", type=parse_rational,
                   default=empirical.DEFAULT_BOX_RADIUS)
    p.add_argument("--allow-large", action="store_true",
                   help="lift the instance size guard")
    p.add_argument("--float-lp", action="store_true",
                   help="use the float LP instead of exact rationals")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run the self-check suite")
    p.add_argument("--quick", action="store_true", help="smaller case counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
