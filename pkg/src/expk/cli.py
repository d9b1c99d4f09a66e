"""Command-line front end.

Subcommands map one-to-one onto library entry points:

  build   space spec -> model file
  betti   model file -> graded dimension table
  sq      model file + degree + index -> square coordinates per generator
  solve   exact-sequence template file -> solution or certificate
  verify  run the named checks (all by default) and emit a report

Progress goes to stderr, results to stdout; exit status 0 means every
selected check passed (skipped checks do not fail a run).  The cache
directory may also be set through the EXPK_CACHE_DIR environment
variable; flags win over the environment.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import expected_betti
from .cochains import express_in_basis, steenrod_square
from .errors import LevelSizeError
from .exact_sequences import ExactTemplate, solve_template
from .simplicial import SimplicialSetModel, canonical_json
from .spaces import DEFAULT_MAX_LEVEL_SIZE, SpaceSpec, build_space
from .verify import CHECKS, run_verify


def _add_spec_arguments(p):
    p.add_argument("--kind", required=True, choices=("sphere", "product", "power", "sym", "exp", "complex"))
    p.add_argument("--n", type=int, help="sphere dimension")
    p.add_argument("--k", type=int, help="arity / cardinality bound")
    p.add_argument("--cap", type=int, help="level cap (defaults per kind)")
    p.add_argument(
        "--facets",
        help="JSON list of vertex tuples, for --kind complex",
    )
    p.add_argument(
        "--max-level-size",
        type=int,
        default=DEFAULT_MAX_LEVEL_SIZE,
        help="per-level simplex budget",
    )


def _spec_from_args(args) -> SpaceSpec:
    facets = None
    if args.facets:
        facets = tuple(tuple(int(v) for v in f) for f in json.loads(args.facets))
    return SpaceSpec(
        kind=args.kind,
        n=args.n,
        k=args.k,
        cap=args.cap,
        facets=facets,
        max_level_size=args.max_level_size,
    )


def _write_out(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        print(text)


def cmd_build(args) -> int:
    spec = _spec_from_args(args)
    try:
        model = build_space(spec)
    except LevelSizeError as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return 2
    doc = {
        "spec": spec.to_json_dict(),
        "model": model.to_json_dict(),
        "hash": model.content_hash(),
    }
    _write_out(canonical_json(doc), args.out)
    print(f"built {model.description}: levels {model.level_sizes}", file=sys.stderr)
    return 0


def _load_model(path) -> SimplicialSetModel:
    with open(path) as fh:
        doc = json.load(fh)
    if "model" in doc:
        doc = doc["model"]
    return SimplicialSetModel.from_json_dict(doc)


def cmd_betti(args) -> int:
    model = _load_model(args.model)
    table = model.betti_table()
    if args.format == "json":
        _write_out(canonical_json(table.to_json_dict()), args.out)
    else:
        _write_out(
            "\n".join(f"H^{k}: {d}" for k, d in enumerate(table.dims)), args.out
        )
    return 0


def cmd_sq(args) -> int:
    model = _load_model(args.model)
    basis = model.cohomology_basis(args.degree)
    target = model.cohomology_basis(args.degree + args.index)
    rows = []
    for idx, cls in enumerate(basis):
        image = steenrod_square(model, args.index, cls)
        coords = express_in_basis(model, image, target).to_bits().tolist()
        rows.append({"generator": idx, "coordinates": coords})
    if args.format == "json":
        _write_out(
            canonical_json(
                {
                    "degree": args.degree,
                    "index": args.index,
                    "target_rank": len(target),
                    "squares": rows,
                }
            ),
            args.out,
        )
    else:
        lines = [
            f"Sq^{args.index} on h{args.degree}[{r['generator']}] -> {r['coordinates']}"
            for r in rows
        ]
        _write_out("\n".join(lines) or "no generators in this degree", args.out)
    return 0


def cmd_solve(args) -> int:
    with open(args.template) as fh:
        template = ExactTemplate.from_json_dict(json.load(fh))
    result = solve_template(template)
    if args.format == "json":
        _write_out(canonical_json(result.to_json_dict(template)), args.out)
    else:
        if not result.consistent:
            _write_out(f"inconsistent: {result.certificate}", args.out)
        else:
            lines = []
            for term, (lo, hi) in zip(template.terms, result.dims):
                shown = str(lo) if lo == hi else f"[{lo}, {'inf' if hi is None else hi}]"
                lines.append(f"{term.name}: {shown}")
            _write_out("\n".join(lines), args.out)
    return 0 if result.consistent else 1


def cmd_verify(args) -> int:
    scope = args.checks or None
    cache_dir = args.cache_dir or os.environ.get("EXPK_CACHE_DIR")

    def progress(result):
        print(
            f"[{result.status:>7}] {result.check_id} ({result.wall_time_s:.2f}s)",
            file=sys.stderr,
        )

    try:
        report = run_verify(
            scope=scope,
            max_level_size=args.max_level_size,
            cache_dir=cache_dir,
            jobs=args.jobs,
            seed=args.seed,
            progress=progress,
        )
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        print("available checks:", ", ".join(sorted(CHECKS)), file=sys.stderr)
        return 2
    text = (
        report.to_json_text() if args.format == "json" else report.human_table()
    )
    _write_out(text, args.out)
    return 0 if report.passed else 1


def cmd_catalog(args) -> int:
    table = expected_betti(args.kind, args.n)
    _write_out(canonical_json(table.to_json_dict()), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expk",
        description="finite models of subset spaces of spheres: homology, "
        "squares, exact-sequence bookkeeping, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a model and write it to a file")
    _add_spec_arguments(p)
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("betti", help="graded dimensions of a stored model")
    p.add_argument("model", help="model file produced by build")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("sq", help="squares of the basis classes of a degree")
    p.add_argument("model")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_sq)

    p = sub.add_parser("solve", help="solve an exact-sequence template file")
    p.add_argument("template")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("checks", nargs="*", help="check ids (all when omitted)")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--out")
    p.add_argument("--cache-dir")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--max-level-size", type=int, default=DEFAULT_MAX_LEVEL_SIZE
    )
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("catalog", help="print an expected table")
    p.add_argument("kind", choices=("exp2", "exp3", "E0", "E", "C3", "grassmannian"))
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_catalog)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
