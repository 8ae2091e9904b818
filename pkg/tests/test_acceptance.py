"""Acceptance gate: one criterion per test, one ACCEPT line per criterion.

Corpus-backed criteria count only instances whose suite actually completed;
instances parked by the per-suite work budget are reported by the runner and
excluded, so every threshold below is met by fully checked algebras.
"""

from __future__ import annotations

import contextlib
import io
import time

import pytest

import quiverhom as qh
from quiverhom import chains, cli, corpus, loewy3, modules, yoneda


def _verdict(n: int, failures: list[str], detail: str) -> None:
    ok = not failures
    print(f"ACCEPT C{n} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"C{n}: " + "; ".join(failures)


def _completed(report, suite: str) -> int:
    return sum(
        1
        for rec in report.instances
        for sr in rec.suites
        if sr.suite == suite and sr.skipped is None
    )


@pytest.fixture(scope="module")
def oracle_corpus():
    spec = corpus.CorpusSpec(kind="monomial", count=260, seed=1)
    t0 = time.perf_counter()
    report = corpus.run_corpus(
        spec, suites=["chain-oracle", "certificate-bound"], bound=6
    )
    return report, time.perf_counter() - t0


def test_c1_swap_algebra_reproduction():
    t0 = time.perf_counter()
    fails: list[str] = []
    a = qh.fixture_algebra("paper")

    gammas = chains.chains_up_to(a, 12)
    if sorted(c.label(a) for c in gammas[0]) != ["1", "2"]:
        fails.append("Gamma_0 is not the vertex set")
    if sorted(c.label(a) for c in gammas[1]) != ["alpha", "beta"]:
        fails.append("Gamma_1 is not the arrow set")
    for n in range(2, 13):
        want = ("alpha " + "beta alpha " * (n - 1)).strip()
        if [c.label(a) for c in gammas[n]] != [want]:
            fails.append(f"Gamma_{n} != {{alpha (beta alpha)^{n - 1}}}")

    if chains.gldim_decide(a).finite:
        fails.append("global dimension not infinite")

    combinatorial = chains.chain_ext_table(a, 12)
    resolved = modules.ext_table(a, 12)
    for n in range(1, 13):
        for i in range(a.num_vertices):
            if combinatorial[n][i][i] or resolved[n][i][i]:
                fails.append(f"Ext^{n}(S, S) nonzero on the diagonal")

    all_zero, checked, witness = yoneda.products_vanish(a, 8)
    if not all_zero:
        fails.append(f"nonzero product: {witness}")

    profile = yoneda.generation_profile(a, 8)
    missing = [n for n in range(1, 9) if profile.new_generators(n) < 1]
    if missing:
        fails.append(f"no new generator in degrees {missing}")
    if profile.s is not None:
        fails.append("generation profile stabilized, E looked finitely generated")

    dt = time.perf_counter() - t0
    if dt >= 10:
        fails.append(f"took {dt:.1f}s (limit 10s)")
    _verdict(
        1,
        fails,
        f"chains to 12, infinite gl.dim, zero diagonal, {checked} products zero, "
        f"fresh generator in 1..8, {dt:.1f}s",
    )


def test_c2_minimal_loewy_length():
    fails: list[str] = []
    a = qh.fixture_algebra("paper")
    if a.loewy_length != 4:
        fails.append(f"loewy_length = {a.loewy_length}, want 4")
    with contextlib.redirect_stderr(io.StringIO()) as sink:
        code = cli.main(["loewy3", "@paper"])
    if code != 3:
        fails.append(f"loewy3 exit code {code}, want 3")
    if "Loewy length is 4" not in sink.getvalue():
        fails.append("refusal diagnostic missing")
    _verdict(2, fails, "loewy_length(@paper) = 4 and `loewy3` refuses with exit 3")


def test_c3_chain_oracle_equivalence(oracle_corpus):
    report, dt = oracle_corpus
    fails = [
        f"instance {i} [{s}]: {d}"
        for i, s, d in report.violations
        if s == "chain-oracle"
    ][:5]
    done = _completed(report, "chain-oracle")
    if done < 200:
        fails.append(f"only {done} instances completed, want >= 200")
    if dt >= 300:
        fails.append(f"took {dt:.0f}s (limit 300s)")
    _verdict(
        3,
        fails,
        f"chain table == resolution table to degree 6 on {done} monomial "
        f"algebras ({report.checks('chain-oracle')} entries, {dt:.1f}s)",
    )


def test_c4_certificate_bound(oracle_corpus):
    report, _ = oracle_corpus
    fails = [
        f"instance {i}: {d}"
        for i, s, d in report.violations
        if s == "certificate-bound"
    ][:5]
    checks = report.checks("certificate-bound")
    if checks == 0:
        fails.append("certificate hypotheses never applied")
    _verdict(
        4,
        fails,
        f"E_n = 0 above m*r*s and gl.dim <= m*r*s on every certified instance "
        f"({checks} checks)",
    )


def test_c5_depth_two_triples():
    spec = corpus.CorpusSpec(kind="radcube", count=80, seed=2)
    report = corpus.run_corpus(spec, suites=["depth-two"], bound=6)
    fails = [f"instance {i}: {d}" for i, _, d in report.violations][:5]
    triples = report.checks("depth-two")
    if triples < 500:
        fails.append(f"only {triples} triples, want >= 500")
    _verdict(
        5,
        fails,
        f"{triples} submodule decompositions with matching criterion booleans",
    )


def test_c6_three_way_equivalence():
    spec = corpus.CorpusSpec(kind="monomial", count=200, seed=6, force_truncation=3)
    report = corpus.run_corpus(
        spec, suites=["equivalence"], bound=8, work_budget=100_000_000
    )
    fails = [f"instance {i}: {d}" for i, _, d in report.violations][:5]
    done = _completed(report, "equivalence")
    if done < 100:
        fails.append(f"only {done} instances completed, want >= 100")
    _verdict(
        6,
        fails,
        f"finiteness conditions agree and cores die past m*r on {done} "
        f"radical-cube monomial algebras",
    )


def test_c7_fixture_regressions():
    fails: list[str] = []

    a3 = qh.fixture_algebra("a3")
    if modules.gldim_bounded(a3, 8) != modules.finite_dim(2):
        fails.append("@a3 resolution oracle disagrees with gl.dim 2")
    if chains.gldim_decide(a3) != chains.GldimVerdict(True, 2, None):
        fails.append("@a3 gl.dim != 2")
    cert = yoneda.gldim_certificate(a3, 6)
    if cert.bound != 3 or cert.gldim_upper != 3:
        fails.append(f"@a3 certificate bound {cert.bound}, want 3")
    if cert.verdict != "finite (certified)":
        fails.append(f"@a3 certificate verdict {cert.verdict!r}")

    loop = qh.fixture_algebra("loop")
    if modules.gldim_bounded(loop, 8).finite:
        fails.append("@loop resolution oracle thinks gl.dim finite")
    if chains.gldim_decide(loop).finite:
        fails.append("@loop gl.dim not infinite")
    if chains.ext_self_vanishing_decide(loop).eventually_zero:
        fails.append("@loop self-extensions reported vanishing")
    if any(modules.ext_table(loop, 8)[n][0][0] == 0 for n in range(9)):
        fails.append("@loop diagonal Ext vanished somewhere <= 8")

    sq = qh.fixture_algebra("square")
    if modules.gldim_bounded(sq, 8) != modules.finite_dim(2):
        fails.append("@square gl.dim != 2")
    core = loewy3.syzygy_core_sequence(sq, 0, 6)
    if core.t != 3:
        fails.append(f"@square core of S_1 terminated at {core.t}, want 3")

    ss = qh.fixture_algebra("ss")
    if chains.gldim_decide(ss) != chains.GldimVerdict(True, 0, None):
        fails.append("@ss gl.dim != 0")
    if modules.gldim_bounded(ss, 2) != modules.finite_dim(0):
        fails.append("@ss resolution oracle disagrees")

    _verdict(
        7,
        fails,
        "@a3 gl.dim 2 bound 3; @loop infinite; @square gl.dim 2 t=3; @ss gl.dim 0",
    )


def test_c8_symmetry_and_associativity():
    fails: list[str] = []
    reports = [
        corpus.run_corpus(
            corpus.CorpusSpec(kind="monomial", count=20, seed=81),
            suites=["opposite-symmetry", "associativity"],
            bound=6,
        ),
        corpus.run_corpus(
            corpus.CorpusSpec(kind="radcube", count=14, seed=82),
            suites=["opposite-symmetry", "associativity"],
            bound=6,
        ),
    ]
    for report in reports:
        fails.extend(f"instance {i} [{s}]: {d}" for i, s, d in report.violations[:5])
    sym_done = sum(_completed(r, "opposite-symmetry") for r in reports)
    assoc_done = sum(_completed(r, "associativity") for r in reports)
    if assoc_done < 20:
        fails.append(f"associativity completed on {assoc_done} instances, want >= 20")
    triples = sum(r.checks("associativity") for r in reports)
    _verdict(
        8,
        fails,
        f"opposite symmetry on {sym_done} algebras; associativity on "
        f"{assoc_done} instances ({triples} triples to total degree 6)",
    )
