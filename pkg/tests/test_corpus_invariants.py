"""Corpus generation determinism, shape bounds, and the suite runner."""

from __future__ import annotations

import dataclasses

import pytest

from quiverhom import corpus, fp, modules
from quiverhom.algebra import build, parse_presentation
from quiverhom.errors import PreconditionError

MONO = corpus.CorpusSpec(kind="monomial", count=8, seed=11)
RAD = corpus.CorpusSpec(kind="radcube", count=8, seed=12)


class TestGeneration:
    def test_text_is_pure_in_spec_and_index(self):
        for spec in (MONO, RAD):
            twin = corpus.CorpusSpec(**dataclasses.asdict(spec))
            for i in range(spec.count):
                assert corpus.instance_text(spec, i) == corpus.instance_text(twin, i)

    def test_indices_vary(self):
        texts = {corpus.instance_text(MONO, i) for i in range(MONO.count)}
        assert len(texts) > 1

    def test_roundtrips_through_canonical_text(self):
        for spec in (MONO, RAD):
            for _, algebra in corpus.iter_instances(spec):
                again = build(parse_presentation(algebra.canonical))
                assert again.hash == algebra.hash
                assert again.dim == algebra.dim

    def test_monomial_shape_bounds(self):
        for i in range(MONO.count):
            pres = parse_presentation(corpus.instance_text(MONO, i))
            assert pres.kind == "monomial"
            assert 1 <= pres.quiver.num_vertices <= MONO.max_vertices
            assert len(pres.quiver.arrows) <= MONO.max_arrows
            assert len(pres.relations) <= MONO.max_relations
            assert pres.truncate == 0 or 2 <= pres.truncate <= MONO.truncation
            for r in pres.relations:
                assert 2 <= len(r) <= MONO.max_relation_length
                if pres.truncate:
                    assert len(r) < pres.truncate

    def test_radcube_shape_bounds(self):
        for i in range(RAD.count):
            pres = parse_presentation(corpus.instance_text(RAD, i))
            assert pres.kind == "radcube" and pres.truncate == 3
            assert 1 <= pres.quiver.num_vertices <= RAD.max_vertices
            assert len(pres.quiver.arrows) <= RAD.max_arrows
            assert len(pres.relations) <= RAD.max_relations

    def test_forced_truncation_pins_every_instance(self):
        spec = corpus.CorpusSpec(kind="monomial", count=6, seed=5, force_truncation=3)
        for i in range(spec.count):
            assert parse_presentation(corpus.instance_text(spec, i)).truncate == 3

    def test_instances_build_finite(self):
        # acyclic-or-truncated sampling makes every draw admissible
        for spec in (MONO, RAD):
            for _, algebra in corpus.iter_instances(spec):
                assert algebra.dim >= algebra.num_vertices >= 1
                assert algebra.loewy_length >= 1
                if algebra.kind == "radcube":
                    assert algebra.loewy_length <= 3


class TestSpecValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "free"},
            {"count": 0},
            {"max_vertices": 0},
            {"max_relation_length": 1},
            {"truncation": 1},
            {"max_arrows": 27},
            {"force_truncation": 1},
            {"force_truncation": 9},
            {"field": 4},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(PreconditionError):
            corpus.CorpusSpec(**kwargs)


class TestRunner:
    def test_small_monomial_corpus_is_green(self):
        report = corpus.run_corpus(MONO, bound=4)
        assert report.violations == []
        assert report.checks("chain-oracle") > 0
        assert report.checks("associativity") > 0

    def test_radcube_skips_chain_suites(self):
        report = corpus.run_corpus(
            RAD, suites=["chain-oracle", "depth-two"], bound=4
        )
        assert report.violations == []
        assert report.checks("chain-oracle") == 0
        assert report.checks("depth-two") > 0
        for rec in report.instances:
            byname = {sr.suite: sr for sr in rec.suites}
            assert "monomial" in byname["chain-oracle"].skipped

    def test_suite_subset_only_runs_named(self):
        report = corpus.run_corpus(MONO, suites=["depth-two"], bound=4)
        for rec in report.instances:
            assert [sr.suite for sr in rec.suites] == ["depth-two"]

    def test_unknown_suite_rejected(self):
        with pytest.raises(PreconditionError):
            corpus.run_corpus(MONO, suites=["spectral"])

    def test_pool_matches_sequential(self):
        spec = corpus.CorpusSpec(kind="monomial", count=4, seed=7)
        one = corpus.run_corpus(spec, bound=4, jobs=1)
        two = corpus.run_corpus(spec, bound=4, jobs=2)
        assert one.as_json() == two.as_json()

    def test_tiny_budget_degrades_to_skips(self):
        report = corpus.run_corpus(MONO, bound=4, work_budget=10)
        assert report.violations == []
        skips = [
            sr.skipped
            for rec in report.instances
            for sr in rec.suites
            if sr.skipped and "bound exceeded" in sr.skipped
        ]
        assert skips
        # the runner must hand the meter back unlimited
        modules.ext_table(build(parse_presentation(corpus.instance_text(MONO, 0))), 2)
        assert fp.work_used() >= 0

    def test_report_json_shape(self):
        report = corpus.run_corpus(
            corpus.CorpusSpec(kind="monomial", count=2, seed=3),
            suites=["opposite-symmetry"],
            bound=3,
        )
        blob = report.as_json()
        assert set(blob) == {"spec", "instances", "totals", "violations"}
        assert set(blob["totals"]) == set(corpus.SUITES)
        assert blob["spec"]["seed"] == 3


class TestArchive:
    def test_clean_report_writes_nothing(self, tmp_path):
        report = corpus.run_corpus(
            corpus.CorpusSpec(kind="monomial", count=2, seed=3),
            suites=["opposite-symmetry"],
            bound=3,
        )
        target = tmp_path / "bad"
        assert corpus.archive_violations(report, str(target)) == []
        assert not target.exists()

    def test_violations_archive_as_presentations(self, tmp_path):
        report = corpus.run_corpus(
            corpus.CorpusSpec(kind="monomial", count=3, seed=3),
            suites=["opposite-symmetry"],
            bound=3,
        )
        poisoned = list(report.instances)
        rec = poisoned[1]
        poisoned[1] = dataclasses.replace(
            rec,
            suites=(
                dataclasses.replace(
                    rec.suites[0], failures=("left and right disagree",)
                ),
            ),
        )
        report = dataclasses.replace(report, instances=tuple(poisoned))

        paths = corpus.archive_violations(report, str(tmp_path / "bad"))
        assert len(paths) == 1
        assert paths[0].endswith("monomial_3_0001.quiver")
        content = open(paths[0], encoding="utf-8").read()
        assert content.startswith("# corpus kind=monomial seed=3 instance=1")
        assert "# opposite-symmetry: left and right disagree" in content
        # comment headers must not break reparsing
        assert build(parse_presentation(content)).hash == rec.algebra_hash
