"""
Tests for the command-line frontend.

Covers:
- Single commands in JSON and text mode
- Exit codes for invalid input and failed preconditions
- Batch manifests: partial failure, enumerate round trip, determinism
"""
import json
import pytest
from fillcheck.citations import CITATIONS
from fillcheck.cli import COMMANDS, EXIT_INVALID, EXIT_OK, EXIT_PARTIAL, EXIT_PRECONDITION, SCHEMA, main, run


def run_json(*argv: str) -> tuple[int, dict]:
    code, text = run(list(argv))
    assert code == EXIT_OK, text
    return code, json.loads(text)


def write_json(path, data) -> str:
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def profile_file(path, ranks: list[int], closed: bool = False) -> str:
    return write_json(path, {
        "dim": len(ranks) - 1,
        "ranks": {str(p): b for p, b in enumerate(ranks)},
        "field": "Q",
        "closed_orientable": closed,
    })


class TestBrieskornCommand:
    """Test the brieskorn and link-homology commands"""

    def test_poincare_sphere(self):
        """(2,3,5): mu = 8 and an integral homology sphere"""
        _, report = run_json("brieskorn", "--exponents", "2,3,5")
        assert report["schema"] == SCHEMA
        assert report["command"] == "brieskorn"
        results = report["results"]
        assert results["milnor_number"] == 8
        assert results["seifert_shape"] == [8, 8]
        assert results["intersection_determinant_abs"] == "1"
        assert results["is_homology_sphere"] is True
        assert results["homology"]["betti"]["ranks"] == {"0": 1, "1": 0, "2": 0, "3": 1}

    def test_verdicts_present(self):
        """Both link verdicts are reported with traces"""
        _, report = run_json("brieskorn", "--exponents", "2,2,2,3,5")
        verdicts = report["verdicts"]
        assert set(verdicts) == {"subcritical_embedding", "exotic_sphere"}
        assert verdicts["exotic_sphere"]["status"] == "Obstructed"
        assert all(v["trace"] for v in verdicts.values())

    def test_link_homology_over_f2(self):
        """Field flag reaches the homology computation"""
        _, report = run_json("link-homology", "--exponents", "2,2,2", "--field", "Fp:2")
        homology = report["results"]["homology"]
        assert homology["betti"]["field"] == "Fp:2"
        assert homology["betti"]["ranks"] == {"0": 1, "1": 1, "2": 1, "3": 1}
        assert "field-coefficients" in [c["key"] for c in report["citations"]]

    def test_bad_field_tag(self):
        """Fp:4 is not a field"""
        code, text = run(["link-homology", "--exponents", "2,3,5", "--field", "Fp:4"])
        assert code == EXIT_INVALID
        assert "field" in text

    def test_payload_from_file(self, tmp_path):
        """--input supplies the payload"""
        path = write_json(tmp_path / "link.json", {"exponents": [2, 3, 5]})
        _, report = run_json("brieskorn", "--input", path)
        assert report["inputs"] == {"exponents": [2, 3, 5]}
        assert report["results"]["milnor_number"] == 8


class TestFillingCommands:
    """Test check-duality, stein-fill, hc-rank, surgery and bundle commands"""

    def test_check_duality_torus_pair(self, tmp_path):
        """The T^2 circle-bundle pair fails in degree 2 but the command succeeds"""
        sigma = profile_file(tmp_path / "sigma.json", [1, 2, 2, 1], closed=True)
        w = profile_file(tmp_path / "w.json", [1, 2, 1, 0, 0])
        _, report = run_json("check-duality", "--sigma", sigma, "--w", w)
        duality = report["results"]["duality"]
        assert duality["holds"] is False
        assert 2 in [v["degree"] for v in duality["violations"]]
        # b_j(W) <= b_j(Sigma) in every degree, so only the identity fails
        assert report["results"]["surjectivity"]["holds"] is True

    def test_check_duality_inline_profiles(self):
        """Inline digit lists build profiles"""
        _, report = run_json("check-duality", "--sigma", "1,0,0,0,0,1", "--w", "1,0,0,0,0,0,0")
        assert report["results"]["duality"]["holds"] is True
        assert report["results"]["hc_consistent"] is True

    def test_stein_fill_general(self):
        """S^2 x S^3 leaves one pair sum undetermined"""
        _, report = run_json("stein-fill", "--sigma", "1,0,1,1,0,1", "--closed-orientable")
        filling = report["results"]["filling"]
        assert filling["ranks"]["2"] == "undetermined"
        assert filling["constrained"] == {"degrees": [2, 3], "sum": 1}
        assert report["warnings"]

    def test_hc_rank_single_degree(self):
        """rank HC_4 of S^5 from the boundary side"""
        _, report = run_json("hc-rank", "--sigma", "1,0,0,0,0,1", "--closed-orientable", "--degree", "4")
        assert report["results"]["n"] == 3
        assert report["results"]["ranks"] == [{"k": 4, "from_sigma": 1}]

    def test_surgery(self):
        """Index k > 3 fixes b_2"""
        _, report = run_json("surgery", "--b2-sigma", "4", "--b2-w", "1", "--k", "4", "--n", "5")
        assert report["results"]["surgery"]["possibilities"] == [[4, 1]]

    def test_sphere_bundle_nonzero_euler(self):
        """ST*S^4 with e != 0 is obstructed twice"""
        _, report = run_json("sphere-bundle", "--base", "1,0,0,0,1", "--closed-orientable", "--euler-nonzero")
        statuses = {name: v["status"] for name, v in report["verdicts"].items()}
        assert statuses == {"r2n_embedding": "Obstructed", "subcritical_embedding": "Obstructed"}

    def test_circle_bundle(self):
        """b_2 of the circle bundle over CP^2 x CP^1 profile"""
        _, report = run_json("circle-bundle", "--base", "1,0,2,0,2,0,1", "--closed-orientable")
        assert report["results"]["n"] == 4
        assert report["results"]["b2_sigma"] == 1
        assert "r2n_embedding" in report["verdicts"]

    def test_snf_identity(self, tmp_path):
        """Identity matrix: unit invariant factors, |det| = 1"""
        path = write_json(tmp_path / "m.json", {"matrix": {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]}})
        _, report = run_json("snf", "--input", path, "--modulus", "3")
        results = report["results"]
        assert results["smith"]["invariant_factors"] == ["1", "1"]
        assert results["smith"]["D"] == {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}
        assert results["determinant_abs"] == "1"
        assert results["kernel_rank"] == 0
        assert results["rank_mod_p"] == {"p": 3, "rank": 2}


class TestExitCodes:
    """Test diagnostics and exit statuses"""

    def test_unknown_command(self):
        """Unknown subcommand is invalid input"""
        code, text = run(["frobnicate"])
        assert code == EXIT_INVALID
        assert text.startswith("fillcheck: invalid input")

    def test_malformed_json(self, tmp_path):
        """Unparseable payload file"""
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, text = run(["brieskorn", "--input", str(path)])
        assert code == EXIT_INVALID
        assert "malformed JSON" in text

    def test_missing_file(self, tmp_path):
        """Nonexistent payload file"""
        code, text = run(["brieskorn", "--input", str(tmp_path / "missing.json")])
        assert code == EXIT_INVALID
        assert "cannot read" in text

    def test_diagnostic_names_field(self, tmp_path):
        """Unknown payload keys are reported by name"""
        path = write_json(tmp_path / "link.json", {"exponents": [2, 3, 5], "bogus": 1})
        code, text = run(["brieskorn", "--input", path])
        assert code == EXIT_INVALID
        assert "bogus" in text

    def test_exponent_below_two(self):
        """Exponents must be at least 2"""
        code, text = run(["brieskorn", "--exponents", "1,3,5"])
        assert code == EXIT_INVALID
        assert "exponents" in text

    @pytest.mark.parametrize("matrix", [
        {"cols": 1, "entries": [[6]]},
        {"rows": 1, "cols": 1, "entries": [[[6]]]},
        {"rows": 1, "cols": 1, "entries": [[2.7]]},
        {"rows": 1, "cols": 1, "entries": [[True]]},
        {"rows": 1, "cols": 2, "entries": [6, [1]]},
    ])
    def test_malformed_matrix(self, tmp_path, matrix):
        """Malformed matrices are invalid input, never a crash or a truncation"""
        path = write_json(tmp_path / "m.json", {"matrix": matrix})
        code, text = run(["snf", "--input", path])
        assert code == EXIT_INVALID
        assert text.startswith("fillcheck: invalid input")

    def test_precondition_failure(self):
        """Surgery index below 3 is a precondition error"""
        code, text = run(["surgery", "--b2-sigma", "1", "--b2-w", "1", "--k", "2", "--n", "5"])
        assert code == EXIT_PRECONDITION
        assert text.startswith("fillcheck: precondition failed")

    def test_main_streams(self, capsys):
        """Success goes to stdout, diagnostics to stderr"""
        assert main(["brieskorn", "--exponents", "2,3,5"]) == EXIT_OK
        captured = capsys.readouterr()
        assert json.loads(captured.out)["results"]["milnor_number"] == 8

        assert main(["frobnicate"]) == EXIT_INVALID
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "invalid input" in captured.err


class TestTextOutput:
    """Test the text rendering"""

    def test_numbers_agree_with_json(self):
        """Text mode prints the same values as JSON mode"""
        _, report = run_json("brieskorn", "--exponents", "2,3,5")
        code, text = run(["brieskorn", "--exponents", "2,3,5", "--output", "text"])
        assert code == EXIT_OK
        assert f"\n  milnor_number = {report['results']['milnor_number']}\n" in text
        assert '\n  intersection_determinant_abs = "1"\n' in text

    def test_trace_and_quotes(self):
        """Verdict steps are numbered and citations quoted"""
        code, text = run(["brieskorn", "--exponents", "2,2,2,3,5", "--output", "text"])
        assert code == EXIT_OK
        assert "verdict exotic_sphere: Obstructed" in text
        assert "  1. " in text
        assert "[milnor-number]" in text
        assert f"\"{CITATIONS['milnor-number']['quote']}\"" in text


class TestCitations:
    """Every citation a report names resolves in the table"""

    @pytest.mark.parametrize("argv", [
        ["brieskorn", "--exponents", "2,3,5"],
        ["brieskorn", "--exponents", "3,3,3,3"],
        ["brieskorn", "--exponents", "2,2,2,2"],
        ["sphere-bundle", "--base", "1,0,0,1", "--closed-orientable"],
        ["circle-bundle", "--base", "1,0,1,0,1", "--closed-orientable", "--c1-zero"],
        ["surgery", "--b2-sigma", "2", "--b2-w", "1", "--k", "3", "--n", "4"],
        ["ball-fill", "--sigma", "1,0,0,0,0,1", "--closed-orientable"],
    ])
    def test_citations_resolve(self, argv):
        """Citation records match the table and cover every trace step"""
        _, report = run_json(*argv)
        keys = [c["key"] for c in report["citations"]]
        assert keys == sorted(set(keys))
        for record in report["citations"]:
            assert record["quote"] == CITATIONS[record["key"]]["quote"]
        for verdict in report["verdicts"].values():
            for step in verdict["trace"]:
                assert step["cite"] in keys

    def test_enumerate_small(self):
        """enumerate runs and batch is not a registered command"""
        code, _ = run(["enumerate", "--n", "1", "--mu-max", "2"])
        assert code == EXIT_OK
        assert "batch" not in COMMANDS


@pytest.mark.integration
class TestBatch:
    """Test batch manifests"""

    def test_empty_manifest(self, tmp_path):
        """An empty array succeeds with zero items"""
        path = write_json(tmp_path / "empty.json", [])
        code, text = run(["batch", path])
        assert code == EXIT_OK
        aggregate = json.loads(text)
        assert aggregate["results"] == {"total": 0, "succeeded": 0, "failed": 0}
        assert aggregate["items"] == []

    def test_manifest_must_be_array(self, tmp_path):
        """A JSON object is not a manifest"""
        path = write_json(tmp_path / "obj.json", {"command": "brieskorn"})
        code, _ = run(["batch", path])
        assert code == EXIT_INVALID

    def test_partial_failure(self, tmp_path):
        """Bad items fail alone; the rest still complete in order"""
        path = write_json(tmp_path / "mixed.json", [
            {"command": "brieskorn", "payload": {"exponents": [2, 3, 5]}},
            {"command": "frobnicate", "payload": {}},
            {"command": "surgery", "payload": {"b2_sigma": 1, "b2_w": 1, "k": 2, "n": 5}},
            "not an object",
            {"command": "snf", "payload": {"matrix": {"rows": 1, "cols": 1, "entries": [[6]]}}},
        ])
        code, text = run(["batch", path, "--workers", "3"])
        assert code == EXIT_PARTIAL
        aggregate = json.loads(text)
        items = aggregate["items"]
        assert [item["index"] for item in items] == [0, 1, 2, 3, 4]
        assert [item["status"] for item in items] == ["ok", "error", "error", "error", "ok"]
        assert [item["exit_code"] for item in items] == [0, 2, 3, 2, 0]
        assert items[2]["error"]["kind"] == "PreconditionError"
        assert items[4]["report"]["results"]["smith"]["invariant_factors"] == ["6"]
        assert aggregate["results"] == {"total": 5, "succeeded": 2, "failed": 3}

    def test_malformed_items_stay_isolated(self, tmp_path):
        """Malformed matrices and commands fail their own item only"""
        path = write_json(tmp_path / "bad.json", [
            {"command": "snf", "payload": {"matrix": {"cols": 1, "entries": [[6]]}}},
            {"command": "snf", "payload": {"matrix": {"rows": 1, "cols": 1, "entries": [[[6]]]}}},
            {"command": "snf", "payload": {"matrix": {"rows": 1, "cols": 1, "entries": [[2.7]]}}},
            {"command": ["snf"], "payload": {}},
            {"command": "brieskorn", "payload": {"exponents": [2, 3, 5]}},
        ])
        code, text = run(["batch", path, "--workers", "2"])
        assert code == EXIT_PARTIAL
        items = json.loads(text)["items"]
        assert [item["status"] for item in items] == ["error"] * 4 + ["ok"]
        assert [item["exit_code"] for item in items] == [2, 2, 2, 2, 0]
        assert items[4]["report"]["results"]["milnor_number"] == 8

    @pytest.mark.slow
    def test_enumerated_links(self, tmp_path):
        """n = 3, mu <= 20: every link but the all-2 one is obstructed"""
        manifest = tmp_path / "links.json"
        code, text = run(["enumerate", "--n", "3", "--mu-max", "20", "--out", str(manifest)])
        assert code == EXIT_OK
        count = json.loads(text)["results"]["count"]

        code, text = run(["batch", str(manifest)])
        assert code == EXIT_OK
        items = json.loads(text)["items"]
        assert len(items) == count
        for item in items:
            exponents = item["report"]["inputs"]["exponents"]
            status = item["report"]["verdicts"]["subcritical_embedding"]["status"]
            if exponents == [2, 2, 2, 2]:
                assert status == "Inconclusive"
            else:
                assert status == "Obstructed", exponents

    def test_deterministic_output(self, tmp_path):
        """Worker count does not change a single byte"""
        path = write_json(tmp_path / "m.json", [
            {"command": "brieskorn", "payload": {"exponents": exponents}}
            for exponents in ([2, 3, 5], [3, 3, 3], [2, 2, 3, 4], [2, 2, 2, 2])
        ])
        first = run(["batch", path, "--workers", "1"])
        second = run(["batch", path, "--workers", "8"])
        third = run(["batch", path, "--workers", "8"])
        assert first == second == third

    def test_batch_text(self, tmp_path):
        """Text batch output summarizes and renders each item"""
        path = write_json(tmp_path / "m.json", [
            {"command": "brieskorn", "payload": {"exponents": [2, 3, 5]}},
            {"command": "frobnicate"},
        ])
        code, text = run(["batch", path, "--output", "text"])
        assert code == EXIT_PARTIAL
        assert text.startswith("fillcheck batch (fillcheck/1): 1/2 ok")
        assert "--- item 1: InputValidationError (exit 2)" in text
