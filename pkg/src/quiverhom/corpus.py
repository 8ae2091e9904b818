"""Seeded random presentations and the cross-module invariant suites.

Every instance is a pure function of (spec, index): instance i draws its
randomness from ``random.Random(seed * 1_000_003 + i)``, so a corpus can be
regenerated from the numbers printed in a report, and a violating instance
can be archived as a presentation file that reproduces the failure on its
own.  Admissibility is guaranteed by construction: monomial quivers are
sampled acyclic or truncated, quadratic ones always live under J^3 = 0.

The suites compare independent computations of the same invariant (chain
combinatorics against linear algebra, an algebra against its opposite, two
association orders of a triple product) and report disagreements as findings
rather than exceptions.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import chains, fp, loewy3, modules, yoneda
from .algebra import (
    FiniteAlgebra,
    _check_field,
    _contains_factor,
    build,
    opposite_algebra,
    parse_presentation,
)
from .errors import InternalInvariantError, PreconditionError

__all__ = [
    "CorpusSpec",
    "SuiteRecord",
    "InstanceRecord",
    "CorpusReport",
    "SUITES",
    "instance_text",
    "build_instance",
    "iter_instances",
    "run_corpus",
    "archive_violations",
]

_ARROW_NAMES = "abcdefghijklmnopqrstuvwxyz"
_WORD_POOL_CAP = 20_000


@dataclass(frozen=True)
class CorpusSpec:
    """Shape bounds for one seeded family of random presentations.

    force_truncation pins every instance to a single truncation level;
    3 gives the monomial radical-cube family.  kind "radcube" ignores the
    truncation bounds (J^3 = 0 is built into the presentation).
    """

    kind: str = "monomial"
    count: int = 50
    seed: int = 1
    max_vertices: int = 4
    max_arrows: int = 6
    max_relations: int = 4
    max_relation_length: int = 4
    truncation: int = 5
    field: int = 2
    force_truncation: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("monomial", "radcube"):
            raise PreconditionError(f"unknown corpus kind '{self.kind}'")
        for name in ("count", "max_vertices", "max_arrows", "max_relations"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be >= 1")
        if self.max_relation_length < 2:
            raise PreconditionError("max_relation_length must be >= 2")
        if self.truncation < 2:
            raise PreconditionError("truncation must be >= 2")
        if self.max_arrows > len(_ARROW_NAMES):
            raise PreconditionError(f"max_arrows must be <= {len(_ARROW_NAMES)}")
        if self.force_truncation is not None and not (
            2 <= self.force_truncation <= self.truncation
        ):
            raise PreconditionError("force_truncation must lie in [2, truncation]")
        try:
            _check_field(self.field)
        except ValueError as e:
            raise PreconditionError(str(e)) from None

    def as_json(self) -> dict:
        return {
            "kind": self.kind,
            "count": self.count,
            "seed": self.seed,
            "max_vertices": self.max_vertices,
            "max_arrows": self.max_arrows,
            "max_relations": self.max_relations,
            "max_relation_length": self.max_relation_length,
            "truncation": self.truncation,
            "field": self.field,
            "force_truncation": self.force_truncation,
        }


def _rng_for(spec: CorpusSpec, index: int) -> random.Random:
    return random.Random(spec.seed * 1_000_003 + index)


def _sample_arrows(
    rng: random.Random, pairs: list[tuple[int, int]], max_arrows: int
) -> list[tuple[str, int, int]]:
    count = rng.randint(0, max_arrows) if pairs else 0
    out = []
    for k in range(count):
        s, t = rng.choice(pairs)
        out.append((_ARROW_NAMES[k], s, t))
    return out


def _composable_words(
    arrows: list[tuple[str, int, int]], min_len: int, max_len: int
) -> list[tuple[int, ...]]:
    """All composable arrow-index words with min_len <= length <= max_len."""
    by_source: dict[int, list[int]] = {}
    for k, (_, s, _) in enumerate(arrows):
        by_source.setdefault(s, []).append(k)
    pool: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [(k,) for k in range(len(arrows))]
    length = 1
    while frontier and length < max_len:
        nxt = []
        for word in frontier:
            tgt = arrows[word[-1]][2]
            for k in by_source.get(tgt, []):
                nxt.append(word + (k,))
        length += 1
        if length >= min_len:
            pool.extend(nxt)
        if len(pool) > _WORD_POOL_CAP:
            break
        frontier = nxt
    return pool


def _drop_factor_redundant(words: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    kept: list[tuple[int, ...]] = []
    for w in sorted(set(words), key=lambda w: (len(w), w)):
        if not any(_contains_factor(w, s) for s in kept):
            kept.append(w)
    return kept


def _monomial_text(spec: CorpusSpec, rng: random.Random) -> str:
    nv = rng.randint(1, spec.max_vertices)
    if spec.force_truncation is not None:
        truncate = spec.force_truncation
    elif rng.random() < 0.5:
        truncate = 0
    else:
        truncate = rng.randint(2, spec.truncation)
    if truncate:
        pairs = [(u, w) for u in range(nv) for w in range(nv)]
    else:
        # arrows follow a random topological order, so the quiver is acyclic
        order = list(range(nv))
        rng.shuffle(order)
        rank = {v: k for k, v in enumerate(order)}
        pairs = [(u, w) for u in range(nv) for w in range(nv) if rank[u] < rank[w]]
    arrows = _sample_arrows(rng, pairs, spec.max_arrows)

    max_len = spec.max_relation_length
    if truncate:
        max_len = min(max_len, truncate - 1)
    words: list[tuple[int, ...]] = []
    if max_len >= 2:
        pool = _composable_words(arrows, 2, max_len)
        take = min(rng.randint(0, spec.max_relations), len(pool))
        words = _drop_factor_redundant(rng.sample(pool, take))

    lines = [
        "kind: monomial",
        f"field: {spec.field}",
        "vertices: " + " ".join(str(v + 1) for v in range(nv)),
    ]
    if arrows:
        lines.append(
            "arrows: " + " ; ".join(f"{n} {s + 1} {t + 1}" for n, s, t in arrows)
        )
    if words:
        lines.append(
            "relations: "
            + " ; ".join(" ".join(arrows[k][0] for k in w) for w in words)
        )
    lines.append(f"truncate: {truncate}")
    return "\n".join(lines) + "\n"


def _radcube_text(spec: CorpusSpec, rng: random.Random) -> str:
    nv = rng.randint(1, spec.max_vertices)
    pairs = [(u, w) for u in range(nv) for w in range(nv)]
    arrows = _sample_arrows(rng, pairs, spec.max_arrows)

    classes: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, (_, _, at) in enumerate(arrows):
        for b, (_, bs, bt) in enumerate(arrows):
            if at == bs:
                classes.setdefault((arrows[a][1], bt), []).append((a, b))
    groups = [classes[key] for key in sorted(classes)]

    relations = []
    if groups:
        for _ in range(rng.randint(0, spec.max_relations)):
            members = rng.choice(groups)
            terms = rng.sample(members, rng.randint(1, min(3, len(members))))
            parts = [
                f"{rng.randint(1, spec.field - 1)} {arrows[a][0]} {arrows[b][0]}"
                for a, b in terms
            ]
            relations.append(" + ".join(parts))

    lines = [
        "kind: radcube",
        f"field: {spec.field}",
        "vertices: " + " ".join(str(v + 1) for v in range(nv)),
    ]
    if arrows:
        lines.append(
            "arrows: " + " ; ".join(f"{n} {s + 1} {t + 1}" for n, s, t in arrows)
        )
    if relations:
        lines.append("relations: " + " ; ".join(relations))
    lines.append("truncate: 3")
    return "\n".join(lines) + "\n"


def instance_text(spec: CorpusSpec, index: int) -> str:
    """Presentation text of corpus instance `index`, a pure function of `spec`."""
    rng = _rng_for(spec, index)
    if spec.kind == "radcube":
        return _radcube_text(spec, rng)
    return _monomial_text(spec, rng)


def build_instance(spec: CorpusSpec, index: int) -> FiniteAlgebra:
    return build(parse_presentation(instance_text(spec, index)))


def iter_instances(spec: CorpusSpec):
    for i in range(spec.count):
        yield i, build_instance(spec, i)


# ---------------------------------------------------------------------------
# invariant suites

SuiteOutcome = tuple[int, list[str]]


def _suite_chain_oracle(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """Chain-counting Ext table equals the linear-algebra one entrywise."""
    table = chains.chain_ext_table(algebra, bound)
    linalg = modules.ext_table(algebra, bound)
    ids = algebra.quiver.vertex_ids
    checks, fails = 0, []
    for n in range(bound + 1):
        for i in range(algebra.num_vertices):
            for j in range(algebra.num_vertices):
                checks += 1
                got, want = int(table[n][i][j]), int(linalg[n][i][j])
                if got != want:
                    fails.append(
                        f"Ext^{n}(S_{ids[i]}, S_{ids[j]}): "
                        f"chains say {got}, linear algebra says {want}"
                    )
    return checks, fails


def _suite_certificate_bound(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """Vanishing self-extensions with stabilized generation force gl.dim <= m*r*s."""
    verdict = chains.ext_self_vanishing_decide(algebra)
    if not verdict.eventually_zero:
        return 0, []
    profile = yoneda.generation_profile(algebra, bound)
    if profile.s is None:
        return 0, []
    horizon = verdict.m * algebra.num_vertices * profile.s
    scan = horizon + 2
    if scan > 40:
        return 0, []
    checks, fails = 0, []
    dims = yoneda.dims_of_e(algebra, scan)
    for n in range(horizon + 1, scan + 1):
        checks += 1
        if dims[n]:
            fails.append(f"dim Ext^{n}(A/J, A/J) = {dims[n]} above the horizon {horizon}")
    gl = chains.gldim_decide(algebra)
    checks += 1
    if not gl.finite:
        fails.append(f"global dimension infinite despite horizon {horizon}")
    elif gl.value > horizon:
        fails.append(f"global dimension {gl.value} exceeds the horizon {horizon}")
    return checks, fails


def _generated_submodule(rep, seeds: list[np.ndarray]) -> list[np.ndarray]:
    """Close the given per-vertex columns under the arrow action."""
    p = rep.algebra.p
    cols = [fp.column_basis(s, p) for s in seeds]
    while True:
        dims = [c.shape[1] for c in cols]
        for t, arrow in enumerate(rep.algebra.quiver.arrows):
            image = fp.matmul(rep.act[t], cols[arrow.source], p)
            cols[arrow.target] = fp.column_basis(
                np.hstack([cols[arrow.target], image]), p
            )
        if [c.shape[1] for c in cols] == dims:
            return cols


def _submodule_samples(proj, rng: random.Random):
    """Submodules of JP worth decomposing: the layers plus random ones."""
    nv = proj.algebra.num_vertices
    yield "rad", [proj.rad_subspace(v, 1) for v in range(nv)]
    yield "rad^2", [proj.rad_subspace(v, 2) for v in range(nv)]
    rad_cols = [proj.rad_subspace(v, 1) for v in range(nv)]
    seeded = [v for v in range(nv) if rad_cols[v].shape[1]]
    if not seeded:
        return
    p = proj.algebra.p
    for run in range(2):
        seeds = [np.zeros((proj.rep.dims[v], 0), dtype=np.int64) for v in range(nv)]
        for _ in range(rng.randint(1, 2)):
            v = rng.choice(seeded)
            weights = [rng.randrange(p) for _ in range(rad_cols[v].shape[1])]
            if not any(weights):
                weights[rng.randrange(len(weights))] = 1
            vec = (rad_cols[v] @ np.array(weights, dtype=np.int64)) % p
            seeds[v] = np.hstack([seeds[v], vec.reshape(-1, 1)])
        yield f"random{run}", _generated_submodule(proj.rep, seeds)


def _suite_depth_two(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """Socle splitting of M <= JP: witness invariants and the criterion."""
    ids = algebra.quiver.vertex_ids
    checks, fails = 0, []
    for i in range(algebra.num_vertices):
        proj = modules.projective_module(algebra, i)
        for label, cols in _submodule_samples(proj, rng):
            _, incl = modules.sub_representation(proj.rep, cols)
            checks += 1
            try:
                witness = loewy3.decompose_submodule(incl, proj)
            except InternalInvariantError as e:
                fails.append(f"P({ids[i]}) {label}: {e}")
                continue
            if witness.cap_equals_rad != witness.y_is_zero:
                fails.append(
                    f"P({ids[i]}) {label}: M cap J^2P = JM is {witness.cap_equals_rad} "
                    f"but Y = 0 is {witness.y_is_zero}"
                )
    return checks, fails


def _suite_equivalence(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """The three finiteness conditions agree, and cores die past m*r."""
    report = loewy3.finiteness_equivalence(algebra, bound=max(bound, 8))
    checks, fails = 3, []
    if not report.consistent:
        fails.append(
            "conditions disagree: "
            f"self-ext vanishing {report.self_ext_vanish}, "
            f"one-sided finiteness {report.one_sided_finite}, "
            f"finite gl.dim {report.finite_gldim}"
        )
    if report.self_ext_vanish and report.self_ext_exact:
        checks += len(report.core_rows)
        if not report.core_vanishes:
            late = [i for i, t in report.core_rows if t is None]
            fails.append(
                f"M_n persists beyond m*r = {report.m * report.r} "
                f"for sources {late}"
            )
    return checks, fails


def _suite_opposite_symmetry(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """Loewy length and global dimension are side-insensitive."""
    op = opposite_algebra(algebra)
    checks, fails = 2, []
    if algebra.loewy_length != op.loewy_length:
        fails.append(
            f"Loewy length {algebra.loewy_length} vs {op.loewy_length} opposite"
        )
    if algebra.kind == "monomial":
        left, right = chains.gldim_decide(algebra), chains.gldim_decide(op)
        if (left.finite, left.value) != (right.finite, right.value):
            fails.append(
                f"gl.dim {left.as_json()} vs opposite {right.as_json()}"
            )
    else:
        left, right = modules.gldim_bounded(algebra, bound), modules.gldim_bounded(op, bound)
        if left.as_json() != right.as_json():
            fails.append(
                f"gl.dim bound {left.as_json()} vs opposite {right.as_json()}"
            )
    return checks, fails


def _suite_associativity(algebra: FiniteAlgebra, rng: random.Random, bound: int) -> SuiteOutcome:
    """(h.g).f = h.(g.f) on all basis triples up to the total degree."""
    bases = {n: yoneda.ext_basis(algebra, n) for n in range(bound + 1)}
    checks, fails = 0, []
    for d1 in range(bound + 1):
        for d2 in range(bound + 1 - d1):
            for d3 in range(bound + 1 - d1 - d2):
                for f in bases[d1]:
                    for g in bases[d2]:
                        for h in bases[d3]:
                            checks += 1
                            lhs = yoneda.yoneda_product(yoneda.yoneda_product(h, g), f)
                            rhs = yoneda.yoneda_product(h, yoneda.yoneda_product(g, f))
                            if lhs.coords().tolist() != rhs.coords().tolist():
                                fails.append(
                                    f"association orders differ at degrees "
                                    f"({d3}, {d2}, {d1})"
                                )
    return checks, fails


SUITES = {
    "chain-oracle": _suite_chain_oracle,
    "certificate-bound": _suite_certificate_bound,
    "depth-two": _suite_depth_two,
    "equivalence": _suite_equivalence,
    "opposite-symmetry": _suite_opposite_symmetry,
    "associativity": _suite_associativity,
}


# ---------------------------------------------------------------------------
# the runner

@dataclass(frozen=True)
class SuiteRecord:
    suite: str
    checks: int
    failures: tuple[str, ...]
    skipped: str | None

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": self.checks,
            "failures": list(self.failures),
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class InstanceRecord:
    index: int
    text: str
    algebra_hash: str
    dim: int
    loewy_length: int
    suites: tuple[SuiteRecord, ...]

    @property
    def ok(self) -> bool:
        return not any(r.failures for r in self.suites)

    def as_json(self) -> dict:
        return {
            "index": self.index,
            "algebra": self.algebra_hash,
            "dim": self.dim,
            "loewy_length": self.loewy_length,
            "suites": [r.as_json() for r in self.suites],
            "text": self.text,
        }


@dataclass(frozen=True)
class CorpusReport:
    spec: CorpusSpec
    instances: tuple[InstanceRecord, ...]

    @property
    def violations(self) -> list[tuple[int, str, str]]:
        return [
            (rec.index, sr.suite, detail)
            for rec in self.instances
            for sr in rec.suites
            for detail in sr.failures
        ]

    def checks(self, suite: str) -> int:
        return sum(
            sr.checks for rec in self.instances for sr in rec.suites if sr.suite == suite
        )

    def as_json(self) -> dict:
        return {
            "spec": self.spec.as_json(),
            "instances": [rec.as_json() for rec in self.instances],
            "totals": {name: self.checks(name) for name in SUITES},
            "violations": [
                {"index": i, "suite": s, "detail": d} for i, s, d in self.violations
            ],
        }


def _run_instance(
    spec: CorpusSpec,
    index: int,
    names: tuple[str, ...],
    bound: int,
    work_budget: int | None,
) -> InstanceRecord:
    text = instance_text(spec, index)
    try:
        algebra = build(parse_presentation(text))
        records = []
        for name in names:
            if work_budget is not None:
                # each suite gets its own budget, so one runaway suite does
                # not starve the rest of the instance
                fp.set_work_limit(work_budget)
            # fresh deterministic stream per (instance, suite); string seeding
            # is hash-based and stable across runs
            rng = random.Random(f"{spec.seed}:{index}:{name}")
            try:
                checks, fails = SUITES[name](algebra, rng, bound)
                records.append(SuiteRecord(name, checks, tuple(fails), None))
            except PreconditionError as e:
                records.append(SuiteRecord(name, 0, (), str(e)))
            except fp.WorkBoundExceeded as e:
                records.append(SuiteRecord(name, 0, (), f"bound exceeded: {e}"))
            except InternalInvariantError as e:
                records.append(SuiteRecord(name, 0, (str(e),), None))
    finally:
        if work_budget is not None:
            fp.set_work_limit(None)
    return InstanceRecord(
        index, text, algebra.hash, algebra.dim, algebra.loewy_length, tuple(records)
    )


def run_corpus(
    spec: CorpusSpec,
    suites: list[str] | None = None,
    bound: int = 6,
    jobs: int = 1,
    work_budget: int | None = 50_000_000,
) -> CorpusReport:
    """Generate the corpus and run the named suites (default: all) on it.

    Suites that blow past work_budget field operations are recorded as
    "bound exceeded" skips, which keeps a wild instance (say, six loops on
    one vertex) from sinking the whole run.  With jobs > 1 the instances run
    in a process pool; records are merged by index, so the report does not
    depend on scheduling.
    """
    names = tuple(suites) if suites else tuple(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise PreconditionError(f"unknown suites: {', '.join(unknown)}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [
                pool.submit(_run_instance, spec, i, names, bound, work_budget)
                for i in range(spec.count)
            ]
            records = [f.result() for f in futs]
    else:
        records = [
            _run_instance(spec, i, names, bound, work_budget)
            for i in range(spec.count)
        ]
    records.sort(key=lambda r: r.index)
    return CorpusReport(spec, tuple(records))


def archive_violations(report: CorpusReport, directory: str) -> list[str]:
    """Write each violating instance as a self-contained presentation file."""
    paths = []
    bad = {i for i, _, _ in report.violations}
    if not bad:
        return paths
    os.makedirs(directory, exist_ok=True)
    for rec in report.instances:
        if rec.index not in bad:
            continue
        path = os.path.join(
            directory, f"{report.spec.kind}_{report.spec.seed}_{rec.index:04d}.quiver"
        )
        header = [
            f"# corpus kind={report.spec.kind} seed={report.spec.seed} "
            f"instance={rec.index}",
        ]
        for sr in rec.suites:
            for detail in sr.failures:
                header.append(f"# {sr.suite}: {detail}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(header) + "\n" + rec.text)
        paths.append(path)
    return paths
