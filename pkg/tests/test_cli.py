"""CLI surface: envelopes, schema conformance, exit codes, determinism."""

from __future__ import annotations

import importlib.resources
import json

import jsonschema
import pytest

from quiverhom import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture(scope="module")
def validator():
    ref = importlib.resources.files("quiverhom").joinpath("schemas/output.schema.json")
    schema = json.loads(ref.read_text(encoding="utf-8"))
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


JSON_INVOCATIONS = [
    ["resolve", "@paper", "--simple", "1", "--max-degree", "4", "--json"],
    ["ext-table", "@a3", "--max-degree", "4", "--json"],
    ["chains", "@paper", "--max-degree", "5", "--json"],
    ["gldim", "@paper", "--json"],
    ["gldim", "@square", "--json"],
    ["yoneda", "@a3", "--max-degree", "6", "--json"],
    ["loewy3", "@square", "--simple", "1", "--bound", "6", "--json"],
    ["criteria", "@square", "--json"],
    ["corpus", "--count", "2", "--seed", "3", "--max-degree", "3",
     "--suites", "opposite-symmetry", "--json"],
    ["fixtures", "--json"],
    ["fixtures", "paper", "--json"],
]


class TestSchema:
    @pytest.mark.parametrize("argv", JSON_INVOCATIONS, ids=lambda a: " ".join(a[:2]))
    def test_envelope_validates(self, capsys, validator, argv):
        validator.validate(run_json(capsys, argv))

    def test_bound_exceeded_validates(self, capsys, validator, monkeypatch):
        monkeypatch.setenv("HOMOTOOL_MAX_DIM", "50")
        blob = run_json(capsys, ["resolve", "@paper", "--max-degree", "6", "--json"])
        validator.validate(blob)
        assert blob["result"] == {
            "bound_exceeded": True,
            "detail": blob["result"]["detail"],
        }


class TestResults:
    def test_gldim_swap_algebra_verbatim(self, capsys):
        blob = run_json(capsys, ["gldim", "@paper", "--json"])
        assert blob["result"] == {
            "verdict": "infinite",
            "witness_cycle": ["alpha beta alpha"],
        }

    def test_gldim_bounded_for_quadratic(self, capsys):
        blob = run_json(capsys, ["gldim", "@square", "--json"])
        assert blob["result"] == {"verdict": "finite", "value": 2, "bound": 12}

    def test_ext_table_rows(self, capsys):
        blob = run_json(capsys, ["ext-table", "@a3", "--max-degree", "2", "--json"])
        rows = {
            (r["n"], r["source_simple"], r["target_simple"]): r["dim"]
            for r in blob["result"]["rows"]
        }
        assert len(rows) == 27
        assert rows[(2, "1", "3")] == 1 and rows[(1, "1", "2")] == 1
        assert rows[(2, "2", "3")] == 0

    def test_resolve_dumps_five_degrees(self, capsys):
        blob = run_json(
            capsys, ["resolve", "@paper", "--simple", "1", "--max-degree", "4", "--json"]
        )
        assert len(blob["result"]["multiplicities"]) == 5
        assert blob["result"]["multiplicities"][0] == [1, 0]

    def test_loewy3_core_terminates(self, capsys):
        blob = run_json(
            capsys, ["loewy3", "@square", "--simple", "1", "--bound", "6", "--json"]
        )
        assert blob["result"]["terminated_at"] == 3
        assert blob["result"]["criterion"]["agree"] is True

    def test_criteria_square(self, capsys):
        blob = run_json(capsys, ["criteria", "@square", "--json"])
        assert blob["result"]["consistent"] is True
        assert blob["result"]["gldim"] == {"kind": "finite", "value": 2}

    def test_yoneda_certificate_fields(self, capsys):
        blob = run_json(capsys, ["yoneda", "@a3", "--max-degree", "6", "--json"])
        cert = blob["result"]["certificate"]
        assert (cert["r"], cert["s"], cert["m"], cert["bound"]) == (3, 1, 1, 3)
        assert blob["result"]["dims"] == [3, 2, 1, 0, 0, 0, 0]

    def test_field_flag_applies_when_file_is_silent(self, capsys, tmp_path):
        f = tmp_path / "plain.quiver"
        f.write_text("vertices: 1\narrows: x 1 1\nrelations: x x\n")
        blob = run_json(capsys, ["gldim", str(f), "--field", "3", "--json"])
        assert blob["algebra"]["field"] == 3

    def test_corpus_envelope_has_no_algebra(self, capsys):
        blob = run_json(
            capsys,
            ["corpus", "--count", "2", "--seed", "3", "--max-degree", "3",
             "--suites", "opposite-symmetry", "--json"],
        )
        assert blob["algebra"] is None
        assert blob["result"]["violations"] == []


class TestDeterminism:
    def test_byte_identical_modulo_timing(self, capsys):
        argv = ["ext-table", "@paper", "--max-degree", "8", "--json"]
        one = run_json(capsys, argv)
        two = run_json(capsys, argv)
        one.pop("timing_ms"), two.pop("timing_ms")
        assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)

    def test_corpus_runs_reproduce(self, capsys):
        argv = ["corpus", "--count", "3", "--seed", "5", "--max-degree", "4",
                "--suites", "chain-oracle", "--json"]
        one = run_json(capsys, argv)
        two = run_json(capsys, argv)
        assert one["result"] == two["result"]


class TestExitCodes:
    def test_missing_file_is_2(self, capsys):
        code, _, err = run(capsys, ["resolve", "nosuch.quiver"])
        assert code == 2 and "nosuch.quiver" in err

    def test_unknown_fixture_is_2(self, capsys):
        code, _, err = run(capsys, ["gldim", "@nope"])
        assert code == 2 and "unknown fixture" in err

    def test_malformed_presentation_is_2(self, capsys, tmp_path):
        f = tmp_path / "bad.quiver"
        f.write_text("vertices: 1\narrows: x 1 9\n")
        code, _, err = run(capsys, ["gldim", str(f)])
        assert code == 2 and "line 2" in err

    def test_loewy3_rejects_depth_four_with_3(self, capsys):
        code, _, err = run(capsys, ["loewy3", "@paper"])
        assert code == 3 and "Loewy length is 4" in err

    def test_unknown_vertex_is_3(self, capsys):
        code, _, err = run(capsys, ["resolve", "@paper", "--simple", "9"])
        assert code == 3 and "no vertex '9'" in err

    def test_unknown_suite_is_3(self, capsys):
        code, _, err = run(capsys, ["corpus", "--count", "1", "--suites", "spectral"])
        assert code == 3 and "spectral" in err

    def test_bad_cap_is_2(self, capsys, monkeypatch):
        monkeypatch.setenv("HOMOTOOL_MAX_DIM", "lots")
        code, _, err = run(capsys, ["fixtures"])
        assert code == 2 and "HOMOTOOL_MAX_DIM" in err

    def test_cap_overrun_is_graceful(self, capsys, monkeypatch):
        monkeypatch.setenv("HOMOTOOL_MAX_DIM", "50")
        code, out, _ = run(capsys, ["resolve", "@paper", "--max-degree", "6"])
        assert code == 0 and "bound exceeded" in out


class TestHumanOutput:
    def test_fixtures_table(self, capsys):
        code, out, _ = run(capsys, ["fixtures"])
        assert code == 0
        for name in ("@paper", "@a3", "@loop", "@square", "@ss"):
            assert name in out

    def test_fixture_text_printout(self, capsys):
        code, out, _ = run(capsys, ["fixtures", "square"])
        assert code == 0 and "kind: radcube" in out

    def test_gldim_line(self, capsys):
        code, out, _ = run(capsys, ["gldim", "@a3"])
        assert code == 0 and "gl.dim = 2" in out

    def test_chains_dot_only(self, capsys):
        code, out, _ = run(capsys, ["chains", "@paper", "--dot"])
        assert code == 0
        assert out.startswith("digraph") and "alpha beta alpha" in out

    def test_global_flag_position_before_subcommand(self, capsys):
        blob = run_json(capsys, ["--json", "gldim", "@a3"])
        assert blob["result"] == {"verdict": "finite", "value": 2}
