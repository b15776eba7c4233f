"""Command-line front end.

Subcommands: ``ideal`` (print the generators of an architecture's filter
variety), ``eddeg`` (critical-point counts, merge trees, tables),
``critpoints`` (run the multi-start Newton experiment), ``verify`` (exact
sampling and dimension checks), ``resultant`` (show the two-layer recipe and
matrices) and ``compose`` (sample layer filters and their composition).

Exit codes: 0 success, 1 a verification-style run found failures or fell
short of the predicted count, 2 usage error.  All randomness is seeded
(defaults: ``--seed 42``, ``--data-seed 7``), so identical invocations print
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .arch import Architecture, reduce_arch, sample_neuromanifold
from .critpoints import solve_critical_points, training_reduce
from .eddegree import (
    arch_ed_degree,
    generic_ed_degree,
    merge_tree,
    tree_lines,
    two_layer_table,
)
from .idealgen import vanishing_generators
from .resultant import plan_two_layer, two_layer_matrices
from .verify import smoke_nonmembership, verify_ideal


class UsageError(Exception):
    pass


def _parse_sizes(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _arch(args) -> Architecture:
    if args.strides is None:
        raise UsageError("this subcommand needs strides (-s)")
    try:
        return Architecture(_parse_sizes(args.sizes), _parse_sizes(args.strides))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _fractions(values) -> list:
    return [str(v) for v in values]


def cmd_ideal(args) -> int:
    arch = _arch(args)
    gens = vanishing_generators(arch)
    if args.format == "json":
        payload = {
            "filter_sizes": list(arch.filter_sizes),
            "strides": list(arch.strides),
            "vars": list(gens.variables),
            "generators": [g.to_json() for g in gens.generators],
        }
        if args.provenance:
            payload["provenance"] = list(gens.provenance)
            payload["raw_counts"] = [[lbl, n] for lbl, n in gens.raw_counts]
        print(json.dumps(payload, indent=2))
    else:
        for g, prov in zip(gens.generators, gens.provenance):
            line = g.text()
            if args.provenance:
                line += f"\t# {prov}"
            print(line)
        if not gens.generators:
            print("# zero ideal (single-layer architecture)", file=sys.stderr)
    return 0


def cmd_eddeg(args) -> int:
    try:
        sizes = _parse_sizes(args.sizes)
        if args.table:
            m1, m2 = args.table
            rows = two_layer_table(m1, m2)
            header = "k1\\k2\t" + "\t".join(str(k2) for k2 in range(2, m2 + 1))
            print(header)
            for k1, row in zip(range(2, m1 + 1), rows):
                print(f"{k1}\t" + "\t".join(str(v) for v in row))
        elif args.tree:
            print("\n".join(tree_lines(merge_tree(sizes))))
        else:
            print(generic_ed_degree(sizes))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return 0


def cmd_critpoints(args) -> int:
    arch = _arch(args)
    reduced = reduce_arch(arch)
    k = reduced.out_size
    s = reduced.stride_product
    d_out = args.out_dim
    d0 = k + (d_out - 1) * s
    rng = np.random.default_rng(args.data_seed)
    X = rng.standard_normal((d0, d0 + 5))
    Y = rng.standard_normal((d_out, d0 + 5))
    try:
        problem = training_reduce(X, Y, reduced)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    expected = arch_ed_degree(reduced)
    report = solve_critical_points(problem, starts=args.starts, seed=args.seed, expected=expected)
    if args.format == "json":
        payload = {
            "filter_sizes": list(reduced.filter_sizes),
            "strides": list(reduced.strides),
            "expected": expected,
            "distinct": report.distinct_count,
            "real": report.real_count,
            "starts_used": report.starts_used,
            "saturated": report.saturated,
            "max_residual": report.max_residual,
            "points": [
                {
                    "w_re": [v.real for v in p.w],
                    "w_im": [v.imag for v in p.w],
                    "lambda_re": p.multiplier.real,
                    "lambda_im": p.multiplier.imag,
                    "residual": p.residual,
                    "real": p.is_real,
                }
                for p in report.points
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"architecture {reduced.describe()}  (hypersurface in C^{k})")
        print(f"expected count : {expected}")
        print(f"distinct found : {report.distinct_count}")
        print(f"real points    : {report.real_count}")
        print(f"starts used    : {report.starts_used} / {args.starts}")
        print(f"max residual   : {report.max_residual:.3e}")
        for i, p in enumerate(report.points):
            tag = "real   " if p.is_real else "complex"
            print(f"  point {i:2d} [{tag}] residual {p.residual:.3e}")
    return 0 if report.saturated else 1


def cmd_verify(args) -> int:
    arch = _arch(args)
    report = verify_ideal(arch, n_samples=args.samples, seed=args.seed)
    nonmember = None
    if report.generators_tested:
        nonmember = smoke_nonmembership(arch, n_trials=20, seed=args.seed)
    if args.format == "json":
        payload = {
            "filter_sizes": list(arch.filter_sizes),
            "strides": list(arch.strides),
            "samples": report.samples_tested,
            "generators": report.generators_tested,
            "failures": [list(f) for f in report.failures],
            "jacobian_rank": report.jacobian_rank,
            "expected_dim": report.expected_dim,
            "nonmember_violations": nonmember,
            "ok": report.ok,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"architecture {arch.describe()}")
        print(f"samples        : {report.samples_tested}")
        print(f"generators     : {report.generators_tested}")
        print(f"failures       : {len(report.failures)}")
        print(f"jacobian rank  : {report.jacobian_rank} (expected {report.expected_dim})")
        if nonmember is not None:
            print(f"nonmembership  : {nonmember}/20 random points violate a generator")
        print("ok" if report.ok else "FAILED")
    ok = report.ok and (nonmember in (None, 20))
    return 0 if ok else 1


def cmd_resultant(args) -> int:
    arch = reduce_arch(_arch(args))
    if arch.depth != 2:
        raise UsageError("the resultant view is defined for two-layer architectures")
    k1, k2 = arch.filter_sizes
    s1 = arch.strides[0]
    try:
        recipe = plan_two_layer(k1, k2, s1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    prof = recipe.profile
    degs = ",".join("-" if d is None else str(d) for d in prof.degrees)
    print(f"architecture {arch.describe()}  filter size {recipe.out_size}")
    print(f"slot degrees   : {degs}  (n*={prof.n_max}, n_*={prof.n_min}, r={prof.r})")
    print(f"matrix 1       : R_{recipe.l1}, minors of size {recipe.size1}")
    if recipe.i2_active:
        print(f"matrix 2       : R_{recipe.l2}, minors of size {recipe.size2} (top slots only)")
    else:
        print("matrix 2       : not needed")
    if args.print_matrices:
        for name, size, rm in two_layer_matrices(k1, k2, s1):
            print(f"{name} = R_{rm.shift_cap}  ({rm.matrix.rows}x{rm.matrix.cols}, minors of size {size})")
            print(rm.matrix.text())
    return 0


def cmd_compose(args) -> int:
    arch = _arch(args)
    layers, w = sample_neuromanifold(arch, args.seed)
    if args.format == "json":
        payload = {
            "filter_sizes": list(arch.filter_sizes),
            "strides": list(arch.strides),
            "layers": [_fractions(layer) for layer in layers],
            "filter": _fractions(w),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"architecture {arch.describe()}")
        for i, layer in enumerate(layers, start=1):
            print(f"w{i} = ({', '.join(_fractions(layer))})")
        print(f"w  = ({', '.join(_fractions(w))})")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcn",
        description="Equations, ED degrees and critical points of 1D linear convolutional networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, strides=True, seed=True):
        p.add_argument("-k", dest="sizes", required=True, help="comma-separated filter sizes")
        if strides:
            p.add_argument("-s", dest="strides", help="comma-separated strides")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if seed:
            p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("ideal", help="generators of the filter variety")
    common(p, seed=False)
    p.add_argument("--provenance", action="store_true", help="annotate each generator with its origin")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("eddeg", help="generic critical-point count")
    p.add_argument("-k", dest="sizes", required=True)
    p.add_argument("--tree", action="store_true", help="print the layer-merge tree")
    p.add_argument("--table", type=int, nargs=2, metavar=("K1MAX", "K2MAX"), help="two-layer table as TSV")
    p.set_defaults(func=cmd_eddeg)

    p = sub.add_parser("critpoints", help="count critical points of a seeded training problem")
    common(p)
    p.add_argument("--starts", type=int, default=500)
    p.add_argument("--data-seed", type=int, default=7)
    p.add_argument("--out-dim", type=int, default=3, help="output dimension of the generated data")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.set_defaults(func=cmd_critpoints)

    p = sub.add_parser("verify", help="exact sampling and dimension checks")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("resultant", help="two-layer resultant recipe")
    common(p, seed=False)
    p.add_argument("--print-matrices", action="store_true")
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("compose", help="sample layer filters and compose them")
    common(p)
    p.set_defaults(func=cmd_compose)

    return parser


def main(argv: "Sequence[str] | None" = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
