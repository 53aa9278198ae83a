"""Command-line interface.

Subcommands: ``pattern`` (deformation masks), ``codim`` (orbit
codimension), ``verify`` (direct-sum and pairwise miniversality checks),
``reduce`` (iterative reduction of a perturbed pair) and ``corpus``
(structure enumeration for batch runs).  All output is JSON on stdout;
exit codes: 0 success, 1 verification/convergence failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (
    SkewPair,
    dump_json,
    pair_from_json,
    structure_from_json,
    structure_to_json,
)
from .corpus import enumerate_structures
from .pattern import LAMBDA_TOL, assemble, codimension
from .reduction import DEFAULT_MAX_ITER, DEFAULT_TOL, reduce_pair
from .tangent import verify_direct_sum, verify_pairwise
from . import core


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_structure(path: str):
    return structure_from_json(_load_json(path))


def cmd_pattern(args) -> int:
    structure = _load_structure(args.structure)
    pat = assemble(structure, lambda_tol=args.lambda_tol)
    print(dump_json(pat.to_json()))
    return 0


def cmd_codim(args) -> int:
    structure = _load_structure(args.structure)
    print(codimension(structure, lambda_tol=args.lambda_tol))
    return 0


def cmd_verify(args) -> int:
    structure = _load_structure(args.structure)
    pair = core.make_structure_pair(structure)
    pat = assemble(structure, lambda_tol=args.lambda_tol)
    glob = verify_direct_sum(pair, pat, backend=args.backend)
    pairwise = verify_pairwise(structure, backend=args.backend, lambda_tol=args.lambda_tol)
    ok = glob.direct_sum_ok and all(e.report.direct_sum_ok for e in pairwise)
    print(dump_json({
        "n": structure.dim,
        "global": glob.to_json(),
        "pairwise": [e.to_json() for e in pairwise],
        "all_ok": ok,
    }))
    return 0 if ok else 1


def cmd_reduce(args) -> int:
    structure = _load_structure(args.base)
    base = core.make_structure_pair(structure)
    perturbation = pair_from_json(_load_json(args.perturbation))
    if perturbation.n != base.n:
        raise ValueError(
            f"perturbation is {perturbation.n}x{perturbation.n}, base needs {base.n}x{base.n}")
    perturbed = SkewPair(base.A + perturbation.A, base.B + perturbation.B)
    pat = assemble(structure, lambda_tol=args.lambda_tol)
    trace = reduce_pair(base, perturbed, pat, tol=args.tol, max_iter=args.max_iter)
    print(dump_json(trace.to_json()))
    return 0 if trace.converged else 1


def cmd_corpus(args) -> int:
    structures = enumerate_structures(args.max_dim)
    print(dump_json({"max_dim": args.max_dim, "seed": args.seed, "count": len(structures)}))
    for s in structures:
        print(dump_json(structure_to_json(s)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpencil",
        description="Canonical skew-symmetric matrix pairs under congruence: "
                    "deformation patterns, miniversality checks, reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_lambda_tol(p):
        p.add_argument("--lambda-tol", type=float, default=LAMBDA_TOL,
                       help="eigenvalue coincidence tolerance (default %(default)s)")

    p = sub.add_parser("pattern", help="print the deformation star pattern")
    p.add_argument("structure", help="structure JSON file")
    add_lambda_tol(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("codim", help="print the orbit codimension")
    p.add_argument("structure")
    add_lambda_tol(p)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("verify", help="tangent-space direct-sum verification")
    p.add_argument("structure")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    add_lambda_tol(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="reduce a perturbed pair to pattern form")
    p.add_argument("--base", required=True, help="structure JSON file")
    p.add_argument("--perturbation", required=True, help="skew pair JSON file (M, R)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    add_lambda_tol(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("corpus", help="enumerate all structures up to a dimension")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="echoed into the header for batch bookkeeping")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"skewpencil: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
