"""Command-line surface: every computation as a subcommand.

Algebras come from presentation files or the built-in fixtures (@paper, @a3,
@loop, @square, @ss).  Output is a human-aligned table by default and a
RunReport JSON envelope under --json; identical inputs produce byte-identical
JSON apart from the timing_ms field.  HOMOTOOL_MAX_DIM caps the total field
operations spent per invocation (the corpus command applies it per suite) and
overrunning it is reported as a result, not an error.

Exit codes: 0 success, 2 parse problems (bad file, bad presentation), 3
precondition violations, 4 internal invariant breaches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, chains, fp, loewy3, modules, yoneda
from .algebra import FiniteAlgebra, ParseError, parse_presentation, build
from .corpus import SUITES, CorpusSpec, archive_violations, run_corpus
from .errors import InternalInvariantError, PreconditionError
from .fixtures import fixture_algebra, fixture_names, fixture_text

__all__ = ["main", "build_parser"]

_DEFAULT_WORK_CAP = 10_000_000

_DEGREE_DEFAULTS = {
    "resolve": 4,
    "ext-table": 12,
    "chains": 12,
    "gldim": 12,
    "yoneda": 12,
    "loewy3": 8,
    "criteria": 8,
    "corpus": 6,
}


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS if suppress else False,
        help="emit the RunReport JSON envelope instead of tables",
    )
    parser.add_argument(
        "--field",
        type=int,
        metavar="P",
        default=argparse.SUPPRESS if suppress else 2,
        help="field characteristic for files that do not declare one",
    )
    parser.add_argument(
        "--max-degree",
        type=int,
        metavar="K",
        default=d,
        help="homological degree bound (per-command default)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        metavar="N",
        default=argparse.SUPPRESS if suppress else 1,
        help="corpus seed",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverhom",
        description="exact homological calculator for bound quiver algebras",
    )
    parser.add_argument("--version", action="version", version=f"quiverhom {__version__}")
    _add_common(parser, suppress=False)
    parser.set_defaults(max_degree=None)

    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p = cmd("resolve", "minimal projective resolution of a simple module")
    p.add_argument("file", help="presentation file or @fixture")
    p.add_argument("--simple", metavar="I", help="vertex id (default: first declared)")

    p = cmd("ext-table", "dim Ext^n(S_i, S_j) for all simple pairs")
    p.add_argument("file", help="presentation file or @fixture")

    p = cmd("chains", "overlap chains per degree and the transition graph")
    p.add_argument("file", help="presentation file or @fixture")
    p.add_argument("--dot", action="store_true", help="print only the DOT graph")

    p = cmd("gldim", "global dimension (exact for monomial presentations)")
    p.add_argument("file", help="presentation file or @fixture")

    p = cmd("yoneda", "Ext-algebra dimensions, generators, products, certificate")
    p.add_argument("file", help="presentation file or @fixture")
    p.add_argument(
        "--gen-bound",
        type=int,
        metavar="S",
        default=None,
        help="degree bound for the generation profile (default: --max-degree)",
    )

    p = cmd("loewy3", "syzygy core sequence of a simple over a radical-cube algebra")
    p.add_argument("file", help="presentation file or @fixture")
    p.add_argument("--simple", metavar="I", help="vertex id (default: first declared)")
    p.add_argument(
        "--bound", type=int, metavar="B", default=None, help="alias for --max-degree"
    )

    p = cmd("criteria", "three-way finiteness equivalence report")
    p.add_argument("file", help="presentation file or @fixture")

    p = cmd("corpus", "run the invariant suites on a seeded random corpus")
    p.add_argument("--kind", choices=["monomial", "radcube"], default="monomial")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-arrows", type=int, default=6)
    p.add_argument("--max-relations", type=int, default=4)
    p.add_argument("--max-relation-length", type=int, default=4)
    p.add_argument("--truncation", type=int, default=5)
    p.add_argument("--force-truncation", type=int, default=None)
    p.add_argument(
        "--suites", metavar="A,B", default=None, help=f"subset of: {', '.join(SUITES)}"
    )
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--archive-dir",
        metavar="DIR",
        default=None,
        help="write violating instances here as .quiver files",
    )

    p = cmd("fixtures", "list built-in fixtures, or print one presentation")
    p.add_argument("name", nargs="?", help="fixture name, with or without @")

    return parser


# ---------------------------------------------------------------------------
# plumbing


def _load_algebra(ref: str, default_field: int) -> FiniteAlgebra:
    if ref.startswith("@"):
        try:
            text = fixture_text(ref)
        except KeyError as e:
            raise FileNotFoundError(str(e.args[0])) from None
    else:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    return build(parse_presentation(text, default_field=default_field))


def _vertex_index(algebra: FiniteAlgebra, ref: str | None) -> int:
    ids = algebra.quiver.vertex_ids
    if ref is None:
        return 0
    if ref not in ids:
        raise PreconditionError(f"no vertex '{ref}' (have: {', '.join(ids)})")
    return ids.index(ref)


def _degree(args) -> int:
    k = args.max_degree
    if k is None:
        k = _DEGREE_DEFAULTS[args.command]
    if k < 0:
        raise PreconditionError("--max-degree must be >= 0")
    return k


def _guarded(compute):
    """Run a computation under the work cap; overruns become results."""
    try:
        return compute()
    except fp.WorkBoundExceeded as e:
        return {"bound_exceeded": True, "detail": str(e)}


def _envelope(args, algebra: FiniteAlgebra | None, params: dict, result, t0) -> dict:
    return {
        "tool": "quiverhom",
        "version": __version__,
        "command": args.command,
        "algebra": None
        if algebra is None
        else {
            "hash": algebra.hash,
            "field": algebra.p,
            "kind": algebra.kind,
            "dim": algebra.dim,
        },
        "params": params,
        "result": result,
        "timing_ms": round((time.perf_counter() - t0) * 1000, 3),
    }


def _print_json(envelope: dict) -> None:
    print(json.dumps(envelope, indent=2, sort_keys=True))


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
    lines.extend(fmt.format(*row) for row in rows)
    return "\n".join(lines)


def _bound_exceeded(result) -> bool:
    return isinstance(result, dict) and result.get("bound_exceeded")


# ---------------------------------------------------------------------------
# commands


def _cmd_resolve(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)
    i = _vertex_index(algebra, args.simple)
    ids = algebra.quiver.vertex_ids

    def compute():
        seg = modules.minimal_resolution(modules.simple_module(algebra, i), n)
        return {
            "source_simple": ids[i],
            "length": n,
            "multiplicities": [list(v) for v in seg.multiplicity_vectors()],
            "dimension_vectors": [list(v) for v in seg.dimvecs()],
        }

    result = _guarded(compute)
    params = {"file": args.file, "simple": ids[i], "max_degree": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    print(f"minimal resolution of S_{ids[i]} over {algebra.hash}")
    rows = []
    for k, (mult, dims) in enumerate(
        zip(result["multiplicities"], result["dimension_vectors"])
    ):
        cover = " + ".join(
            f"P({ids[v]})^{m}" if m > 1 else f"P({ids[v]})"
            for v, m in enumerate(mult)
            if m
        )
        rows.append([f"P_{k}", cover or "0", " ".join(map(str, dims))])
    print(_table(["degree", "cover", "dim vector"], rows))
    return 0


def _cmd_ext_table(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)
    ids = algebra.quiver.vertex_ids

    def compute():
        table = modules.ext_table(algebra, n)
        rows = []
        for k in range(n + 1):
            for i in range(algebra.num_vertices):
                for j in range(algebra.num_vertices):
                    rows.append(
                        {
                            "n": k,
                            "source_simple": ids[i],
                            "target_simple": ids[j],
                            "dim": int(table[k][i][j]),
                        }
                    )
        return {"algebra": algebra.hash, "field": algebra.p, "rows": rows}

    result = _guarded(compute)
    params = {"file": args.file, "max_degree": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    print(f"dim Ext^n(S_i, S_j) over {algebra.hash}, n <= {n}")
    by_degree: dict[int, dict[tuple[str, str], int]] = {}
    for row in result["rows"]:
        by_degree.setdefault(row["n"], {})[
            (row["source_simple"], row["target_simple"])
        ] = row["dim"]
    for k in range(n + 1):
        print(f"\nn = {k}")
        rows = []
        for i in ids:
            rows.append(
                [i] + [str(by_degree[k][(i, j)] or ".") for j in ids]
            )
        print(_table(["i\\j"] + list(ids), rows))
    return 0


def _cmd_chains(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)

    def compute():
        gammas = chains.chains_up_to(algebra, n)
        graph = chains.transition_graph(algebra)
        return {
            "degrees": [
                {"degree": k, "chains": sorted(c.label(algebra) for c in gammas[k])}
                for k in range(n + 1)
            ],
            "transition_graph_dot": graph.to_dot(algebra),
        }

    result = _guarded(compute)
    params = {"file": args.file, "max_degree": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    if args.dot:
        print(result["transition_graph_dot"])
        return 0
    print(f"overlap chains over {algebra.hash}, degree <= {n}")
    rows = [
        [f"{entry['degree']}", str(len(entry["chains"])), "; ".join(entry["chains"])]
        for entry in result["degrees"]
    ]
    print(_table(["degree", "count", "chains"], rows))
    print()
    print(result["transition_graph_dot"])
    return 0


def _cmd_gldim(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)

    def compute():
        if algebra.kind == "monomial":
            return chains.gldim_decide(algebra).as_json()
        bounded = modules.gldim_bounded(algebra, n)
        out = bounded.as_json()
        out["verdict"] = "finite" if bounded.finite else "at_least"
        del out["kind"]
        out["bound"] = n
        return out

    result = _guarded(compute)
    params = {"file": args.file, "max_degree": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    if result["verdict"] == "infinite":
        print(f"gl.dim = infinite  (cycle: {' | '.join(result['witness_cycle'])})")
    elif result["verdict"] == "finite":
        print(f"gl.dim = {result['value']}")
    else:
        print(f"gl.dim >= {result['value']} (scanned to {result['bound']})")
    return 0


def _products_zero_prefix(algebra: FiniteAlgebra, bound: int) -> int:
    """Largest T <= bound with every positive-degree product of total <= T zero."""
    zero_to = 1
    for total in range(2, bound + 1):
        for d1 in range(1, total):
            for f in yoneda.ext_basis(algebra, d1):
                for g in yoneda.ext_basis(algebra, total - d1):
                    if not yoneda.yoneda_product(g, f).is_zero:
                        return zero_to
        zero_to = total
    return zero_to


def _cmd_yoneda(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)
    gen_bound = args.gen_bound if args.gen_bound is not None else n
    if gen_bound < 1:
        raise PreconditionError("--gen-bound must be >= 1")

    def compute():
        quiver_report = yoneda.yoneda_quiver(algebra, n)
        cert = yoneda.gldim_certificate(algebra, gen_bound)
        return {
            "dims": yoneda.dims_of_e(algebra, n),
            "new_generators": quiver_report.as_json()["new_generators"],
            "products_zero_up_to": _products_zero_prefix(algebra, n),
            "certificate": cert.as_json(),
        }

    result = _guarded(compute)
    params = {"file": args.file, "max_degree": n, "gen_bound": gen_bound}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    print(f"Ext algebra of A/J over {algebra.hash}, degree <= {n}")
    print("dim E_n: " + " ".join(map(str, result["dims"])))
    if result["new_generators"]:
        rows = [
            [str(g["degree"]), g["source"], g["target"], str(g["count"])]
            for g in result["new_generators"]
        ]
        print(_table(["degree", "source", "target", "new"], rows))
    else:
        print("no positive-degree generators")
    print(f"products of positive-degree classes vanish up to total degree "
          f"{result['products_zero_up_to']}")
    cert = result["certificate"]
    print(
        f"certificate: {cert['verdict']} "
        f"(r={cert['r']}, s={cert['s']}, m={cert['m']}, bound={cert['bound']})"
    )
    return 0


def _cmd_loewy3(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = args.bound if args.bound is not None else _degree(args)
    i = _vertex_index(algebra, args.simple)
    ids = algebra.quiver.vertex_ids

    def compute():
        core = loewy3.syzygy_core_sequence(algebra, i, n)
        simple = modules.simple_module(algebra, i)
        _, embed, cov = modules.syzygy(simple)
        crit = loewy3.check_depth_two_criterion(embed, cov.proj)
        out = core.as_json()
        out["criterion"] = crit.as_json()
        return out

    result = _guarded(compute)
    params = {"file": args.file, "simple": ids[i], "bound": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    print(f"syzygy core sequence of S_{ids[i]} over {algebra.hash}")
    rows = [
        [
            str(s["degree"]),
            " ".join(map(str, s["m"])),
            " ".join(map(str, s["z"])),
            " ".join(map(str, s["y"])),
        ]
        for s in result["steps"]
    ]
    print(_table(["n", "dim M_n", "dim Z_n", "dim Y_n"], rows))
    t = result["terminated_at"]
    print(f"terminated at: {t if t is not None else f'not within bound {n}'}")
    crit = result["criterion"]
    print(
        f"depth-two criterion on Omega S: M cap J^2P = JM is "
        f"{crit['cap_equals_rad']}, Y = 0 is {crit['y_is_zero']}"
    )
    return 0


def _cmd_criteria(args) -> int:
    t0 = time.perf_counter()
    algebra = _load_algebra(args.file, args.field)
    n = _degree(args)

    def compute():
        return loewy3.finiteness_equivalence(algebra, bound=n).as_json()

    result = _guarded(compute)
    params = {"file": args.file, "max_degree": n}
    if args.json:
        _print_json(_envelope(args, algebra, params, result, t0))
        return 0
    if _bound_exceeded(result):
        print(f"bound exceeded: {result['detail']}")
        return 0
    print(f"finiteness equivalence over {algebra.hash}, bound {n}")
    exact = "exact" if result["self_ext_exact"] else f"scanned to {n}"
    print(f"self-extensions vanish: {result['self_ext_vanish']} ({exact}, m={result['m']})")
    print(f"every simple one-sided finite: {result['one_sided_finite']}")
    ids = algebra.quiver.vertex_ids
    rows = [
        [ids[r["source"]], r["pd"], r["id"]] for r in result["per_simple"]
    ]
    print(_table(["simple", "pd", "id"], rows))
    gd = result["gldim"]
    rel = "=" if gd["kind"] == "finite" else ">="
    print(f"gl.dim {rel} {gd['value']}  (finite: {result['finite_gldim']})")
    if result["core_vanishes_beyond_mr"] is not None:
        print(
            f"cores vanish beyond m*r = {result['m'] * result['r']}: "
            f"{result['core_vanishes_beyond_mr']}"
        )
    print(f"consistent: {result['consistent']}")
    return 0


def _cmd_corpus(args) -> int:
    t0 = time.perf_counter()
    spec = CorpusSpec(
        kind=args.kind,
        count=args.count,
        seed=args.seed,
        max_vertices=args.max_vertices,
        max_arrows=args.max_arrows,
        max_relations=args.max_relations,
        max_relation_length=args.max_relation_length,
        truncation=args.truncation,
        field=args.field,
        force_truncation=args.force_truncation,
    )
    names = args.suites.split(",") if args.suites else None
    bound = _degree(args)
    report = run_corpus(
        spec, suites=names, bound=bound, jobs=args.jobs, work_budget=args.work_cap
    )
    archived = (
        archive_violations(report, args.archive_dir) if args.archive_dir else []
    )
    result = report.as_json()
    result["bound"] = bound
    result["archived"] = archived
    params = {
        "spec": spec.as_json(),
        "suites": list(names) if names else list(SUITES),
        "bound": bound,
        "jobs": args.jobs,
        "work_budget": args.work_cap,
    }
    if args.json:
        _print_json(_envelope(args, None, params, result, t0))
        return 0
    print(
        f"corpus kind={spec.kind} seed={spec.seed} count={spec.count} bound={bound}"
    )
    rows = []
    for rec in report.instances:
        ran = sum(1 for sr in rec.suites if sr.skipped is None)
        skipped = sum(1 for sr in rec.suites if sr.skipped is not None)
        fails = sum(len(sr.failures) for sr in rec.suites)
        rows.append(
            [
                str(rec.index),
                rec.algebra_hash,
                str(rec.dim),
                str(rec.loewy_length),
                str(ran),
                str(skipped),
                str(fails),
            ]
        )
    print(_table(
        ["instance", "algebra", "dim", "loewy", "suites", "skips", "failures"], rows
    ))
    print("\nchecks per suite:")
    for name in params["suites"]:
        print(f"  {name}: {report.checks(name)}")
    if report.violations:
        print("\nviolations:")
        for idx, suite, detail in report.violations:
            print(f"  instance {idx} [{suite}]: {detail}")
    else:
        print("\nno violations")
    for path in archived:
        print(f"archived {path}")
    return 0


def _cmd_fixtures(args) -> int:
    t0 = time.perf_counter()
    if args.name:
        algebra = fixture_algebra(args.name)
        name = args.name.lstrip("@")
        result = {
            "name": name,
            "kind": algebra.kind,
            "field": algebra.p,
            "dim": algebra.dim,
            "loewy_length": algebra.loewy_length,
            "text": fixture_text(args.name),
        }
        if args.json:
            _print_json(_envelope(args, algebra, {"name": name}, result, t0))
            return 0
        print(result["text"], end="")
        return 0
    entries = []
    for name in fixture_names():
        algebra = fixture_algebra(name)
        entries.append(
            {
                "name": name,
                "hash": algebra.hash,
                "kind": algebra.kind,
                "field": algebra.p,
                "dim": algebra.dim,
                "loewy_length": algebra.loewy_length,
            }
        )
    result = {"fixtures": entries}
    if args.json:
        _print_json(_envelope(args, None, {}, result, t0))
        return 0
    rows = [
        [
            "@" + e["name"],
            e["hash"],
            e["kind"],
            str(e["field"]),
            str(e["dim"]),
            str(e["loewy_length"]),
        ]
        for e in entries
    ]
    print(_table(["fixture", "algebra", "kind", "field", "dim", "loewy"], rows))
    return 0


_HANDLERS = {
    "resolve": _cmd_resolve,
    "ext-table": _cmd_ext_table,
    "chains": _cmd_chains,
    "gldim": _cmd_gldim,
    "yoneda": _cmd_yoneda,
    "loewy3": _cmd_loewy3,
    "criteria": _cmd_criteria,
    "corpus": _cmd_corpus,
    "fixtures": _cmd_fixtures,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cap = int(os.environ.get("HOMOTOOL_MAX_DIM", _DEFAULT_WORK_CAP))
    except ValueError:
        print("error: HOMOTOOL_MAX_DIM must be an integer", file=sys.stderr)
        return 2
    args.work_cap = cap
    try:
        # the corpus runner budgets each suite itself
        if args.command != "corpus":
            fp.set_work_limit(cap)
        return _HANDLERS[args.command](args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except InternalInvariantError as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return 4
    finally:
        fp.set_work_limit(None)


if __name__ == "__main__":
    sys.exit(main())
