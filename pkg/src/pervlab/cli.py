"""pervlab command line: pi tables, trees, algorithm runs and sweeps."""

import argparse
import csv
import io
import json
import sys

from .brauertree import (
    FixtureError,
    TreeError,
    build_tree,
    fixture_rows,
    load_fixture,
    to_dot,
    tree_to_dict,
)
from .cyclopoly import parse_d
from .perverse import (
    AlgorithmError,
    alternating_sum,
    complexes_to_json,
    decomposition_matrix,
    run_algorithm,
)
from .perversity import pi
from .staralgebra import ModuleError, StarAlgebra
from .suites import SUITES, run_suite
from .unideg import FAMILIES, FamilyError, block_characters, valid_d


class UsageError(Exception):
    """Bad input; exit status 2."""


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _blocks(family, n, d):
    d_int, tag = parse_d(d)
    if tag:
        raise UsageError("twisted d values only apply to fixtures")
    if d_int not in valid_d(family, n):
        raise UsageError(f"Phi_{d_int} does not divide the order of {family}{n}")
    return block_characters(family, n, d_int)


# ---------------------------------------------------------------- pi-table

def _family_table(args) -> dict:
    out = {"family": args.family, "n": args.n, "d": int(args.d), "blocks": []}
    for block in _blocks(args.family, args.n, args.d):
        chars = [{"label": str(ch), "degree": str(ch.degree), "pi": pi(block, ch)} for ch in block.characters]
        out["blocks"].append({"core": str(block.core), "chars": chars})
    return out


def _fixture_table(args) -> dict:
    fx = load_fixture(args.fixture, args.d)
    blocks = {}
    for name, deg, p, block in fixture_rows(fx):
        blocks.setdefault(block, []).append({"label": name, "degree": deg, "pi": p})
    return {"family": fx.group, "n": None, "d": fx.d,
            "blocks": [{"core": b, "chars": rows} for b, rows in blocks.items()]}


def _render_table(table: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "n", "d", "block", "label", "degree", "pi"])
        for b in table["blocks"]:
            for c in b["chars"]:
                n = "" if table["n"] is None else table["n"]
                w.writerow([table["family"], n, table["d"], b["core"], c["label"], c["degree"] or "", c["pi"]])
        return buf.getvalue()
    lines = []
    for b in table["blocks"]:
        lines.append(f"block {b['core']}")
        width = max(len(c["label"]) for c in b["chars"])
        for c in b["chars"]:
            lines.append(f"  {c['label']:<{width}}  {c['pi']:>3}  {c['degree'] or '-'}")
    return "\n".join(lines) + "\n"


def cmd_pi_table(args) -> int:
    if args.fixture:
        table = _fixture_table(args)
    else:
        if args.family is None or args.n is None:
            raise UsageError("give --family and --n, or --fixture")
        table = _family_table(args)
    if args.format == "dot":
        return cmd_tree(args)
    sys.stdout.write(_render_table(table, args.format))
    return 0


# ---------------------------------------------------------------- tree

def _trees(args) -> list:
    if args.fixture:
        return load_fixture(args.fixture, args.d).trees
    if args.family is None or args.n is None:
        raise UsageError("give --family and --n, or --fixture")
    out = []
    for block in _blocks(args.family, args.n, args.d):
        if block.weight != 1:
            print(f"# block {block.core} has weight {block.weight}; only weight 1 gives a tree", file=sys.stderr)
            continue
        try:
            out.append(build_tree(block))
        except TreeError as exc:
            print(f"# block {block.core}: {exc}", file=sys.stderr)
    return out


def cmd_tree(args) -> int:
    trees = _trees(args)
    fmt = "dot" if args.format in (None, "dot") else args.format
    if fmt == "json":
        sys.stdout.write(json.dumps([tree_to_dict(t) for t in trees], indent=2, sort_keys=True) + "\n")
    elif fmt == "dot":
        sys.stdout.write("".join(to_dot(t) for t in trees))
    else:
        sys.stdout.write("".join(str(t) + "\n" for t in trees))
    return 0


# ---------------------------------------------------------------- algo

def _layers(mod) -> str:
    layers = mod.layers()
    if len(layers) <= 2:
        return "/".join(map(str, layers))
    return f"{layers[0]}/.../{layers[-1]}"


def _algo_text(alg, pis, ordering, xs) -> str:
    out = [f"l = {alg.ell}, d = {alg.d}, pi = {','.join(map(str, pis))}", ""]
    for x in xs:
        if x.pi == 0:
            continue
        chain = " -> ".join(f"P{a}" for a in x.projectives)
        out.append(f"X_{x.owner}: {chain} -> C_{x.owner}")
    out.append("")
    out.append("  ".join(f"C_{x.owner} = {_layers(x.degree_zero)} ({x.degree_zero.length})" for x in xs))
    out.append("")
    top = max(pis) if pis else 0
    head = ["X_i"] + [f"H^-{j}" for j in range(top, 0, -1)] + ["Total"]
    rows = []
    for x in xs:
        if x.pi == 0:
            continue
        cells = [str(x.owner)]
        for j in range(top, 0, -1):
            m = x.cohomology_at(j)
            cells.append("/".join(map(str, m.layers())))
        cells.append(str(alternating_sum(x)))
        rows.append(cells)
    widths = [max(len(r[k]) for r in rows + [head]) for k in range(len(head))]
    for r in [head] + rows:
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    out.append("")
    try:
        matrix = decomposition_matrix(xs)
    except AlgorithmError as exc:
        out.append(f"no decomposition matrix: {exc}")
        return "\n".join(out) + "\n"
    out.append("slot  pi  " + " ".join(f"S{k + 1}" for k in range(alg.d)))
    for k, (row, x) in enumerate(zip(matrix, xs)):
        cells = " ".join(f"{c if c else '.':>{len(f'S{i + 1}')}}" for i, c in enumerate(row))
        out.append(f"{k + 1:>4}  {x.pi:>2}  {cells}")
    return "\n".join(out) + "\n"


def cmd_algo(args) -> int:
    pis = _ints(args.pi)
    ordering = _ints(args.ordering) if args.ordering else None
    try:
        alg = StarAlgebra(args.d, args.l)
        xs = run_algorithm(alg, pis, ordering)
    except (ModuleError, ValueError) as exc:
        raise UsageError(str(exc))
    except AlgorithmError as exc:
        print(f"pervlab: algorithm failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        try:
            matrix = [list(r) for r in decomposition_matrix(xs)]
        except AlgorithmError:
            matrix = None
        doc = {"ell": args.l, "d": args.d, "pi": list(pis), "ordering": list(ordering or range(1, args.d + 1)),
               "complexes": json.loads(complexes_to_json(xs)), "decomposition_matrix": matrix}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_algo_text(alg, pis, ordering, xs))
    return 0


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    names = list(SUITES) if "all" in args.suite else args.suite
    reports = []
    for name in names:
        try:
            reports.append(run_suite(name, family=args.family, max_n=args.max_n,
                                     seed=args.seed, workers=args.workers))
        except FamilyError as exc:
            raise UsageError(str(exc))
    if args.format == "json":
        doc = [{"suite": r.name, "ok": r.ok, "checked": r.checked,
                "violations": r.violations, "skipped": r.skipped} for r in reports]
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for r in reports:
            print(r.summary())
            for v in r.violations:
                print(f"  violation: {v}")
            if args.verbose:
                for s in r.skipped:
                    print(f"  skipped: {s}")
    return 0 if all(r.ok for r in reports) else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pervlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp, fmt_default, fmts):
        sp.add_argument("--family", choices=FAMILIES)
        sp.add_argument("--n", type=int)
        sp.add_argument("--fixture", metavar="GROUP", help="e.g. G2, 2F4, E6")
        sp.add_argument("--d", required=True, help="d, or 8a/8b/12a/12b/24a/24b for the twisted groups")
        sp.add_argument("--format", choices=fmts, default=fmt_default)

    sp = sub.add_parser("pi-table", help="unipotent characters, blocks and pi")
    source(sp, "text", ("json", "csv", "dot", "text"))
    sp.set_defaults(func=cmd_pi_table)

    sp = sub.add_parser("tree", help="Brauer trees with pi and pi_0 labels")
    source(sp, "dot", ("dot", "json", "text"))
    sp.set_defaults(func=cmd_tree)

    sp = sub.add_parser("algo", help="run the perverse-equivalence algorithm on the star algebra")
    sp.add_argument("--l", type=int, required=True, help="order of the cyclic defect group")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--pi", required=True, help="comma-separated perversity values by slot")
    sp.add_argument("--ordering", help="comma-separated simple for each slot")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_algo)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", choices=list(SUITES) + ["all"], required=True)
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_n", None) is not None and args.max_n < 1:
        print("pervlab: --max-n must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, FixtureError, FamilyError, ValueError) as exc:
        print(f"pervlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
