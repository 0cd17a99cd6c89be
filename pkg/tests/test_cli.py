import json

import pytest

from src.cli import main
from src.settings import settings


@pytest.fixture
def run(capsys, tmp_path):
    config = str(tmp_path / "absent.yaml")

    def _run(*argv):
        code = main(["--config", config, *argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def _json(out):
    return json.loads(out)


class TestHomology:
    def test_rp2_over_gf2(self, run):
        code, out, _ = run("homology", "corpus:rp2_6", "--field", "gf2")
        assert code == 0
        assert _json(out)["betti"] == {"0": 0, "1": 1, "2": 1}

    def test_single_dimension(self, run):
        code, out, _ = run("homology", "corpus:torus_7", "--field", "q", "--dim", "1")
        assert _json(out)["betti"] == {"1": 2}

    def test_invalid_field(self, run):
        code, out, err = run("homology", "corpus:torus_7", "--field", "gf4")
        assert code == 2
        assert out == ""
        assert err.startswith("error:")

    def test_file_input(self, run, tmp_path):
        path = tmp_path / "square.txt"
        path.write_text("a b\nb c\nc d\nd a\n")
        code, out, _ = run("homology", str(path))
        assert _json(out) == {"name": "square", "field": "gf2", "betti": {"0": 0, "1": 1}}

    def test_output_is_byte_stable(self, run):
        first = run("homology", "corpus:moore_mod3", "--field", "gf3")[1]
        second = run("homology", "corpus:moore_mod3", "--field", "gf3")[1]
        assert first == second


class TestStructureCommands:
    def test_moore_space_is_not_a_cycle(self, run):
        code, out, _ = run("cycles", "corpus:moore_mod3")
        assert code == 1
        report = _json(out)
        assert not report["is_cycle"]
        assert sorted(map(tuple, report["odd_ridges"])) == [("x", "y"), ("x", "z"), ("y", "z")]

    def test_skeleton_of_tetrahedron(self, run):
        code, out, _ = run("cycles", "corpus:hollow_tetrahedron", "--dim", "1")
        assert code == 1
        assert len(_json(out)["odd_ridges"]) == 4

    def test_decompose(self, run):
        code, out, _ = run("decompose", "corpus:glued_pyramids")
        assert code == 0
        assert len(_json(out)["parts"]) == 2

    def test_decompose_rejects_non_cycles(self, run):
        code, _, err = run("decompose", "corpus:moore_mod3")
        assert code == 2
        assert "not a 2-dimensional cycle" in err

    def test_classify(self, run):
        code, out, _ = run("classify", "corpus:pinched_sphere")
        verdict = _json(out)
        assert code == 0
        assert verdict["cycle"] and not verdict["pseudo_manifold"]
        assert verdict["face_minimal"] and verdict["orientable"]

    def test_orient(self, run):
        assert run("orient", "corpus:rp2_6")[0] == 1
        code, out, _ = run("orient", "corpus:hollow_tetrahedron")
        assert code == 0
        assert _json(out)["orientation"]["a b c"] == 1


class TestCertify:
    def test_auto_picks_char2(self, run):
        code, out, _ = run("certify", "corpus:rp2_6")
        assert code == 0
        cert = _json(out)["certificate"]
        assert cert["kind"] == "Char2Cycle"
        assert cert["verified"]

    def test_none_over_rationals(self, run):
        code, out, _ = run("certify", "corpus:rp2_6", "--field", "q")
        assert code == 1
        assert _json(out)["certificate"] == "none"

    def test_graph_cycle(self, run):
        code, out, _ = run("certify", "corpus:six_cycle", "--kind", "graph", "--field", "gf3")
        assert code == 0
        assert len(_json(out)["certificate"]["vertex_sequence"]) == 6

    def test_char2_needs_characteristic_two(self, run):
        assert run("certify", "corpus:rp2_6", "--kind", "char2", "--field", "q")[0] == 2

    def test_orientable_over_gf3(self, run):
        code, out, _ = run("certify", "corpus:torus_7", "--field", "gf3")
        assert code == 0
        assert _json(out)["certificate"]["search"] == "sound, not complete"


class TestCorpusAndOracle:
    def test_list(self, run):
        code, out, _ = run("corpus", "list")
        assert code == 0
        assert len(_json(out)) == 11

    def test_emit_text(self, run):
        code, out, _ = run("corpus", "emit", "torus_7", "--format", "text")
        assert out.splitlines()[0] == "# name: torus_7"
        assert len(out.splitlines()) == 15

    def test_emit_needs_a_known_name(self, run):
        assert run("corpus", "emit")[0] == 2
        assert run("corpus", "emit", "klein_bottle")[0] == 2

    def test_oracle(self, run):
        code, out, _ = run("oracle", "corpus:six_cycle", "--dim", "1")
        assert _json(out)["betti"] == 1
        assert _json(out)["cycles"] == 2

    def test_oracle_bound(self, run):
        code, _, err = run("oracle", "corpus:sphere_triangulation", "--dim", "1")
        assert code == 2
        assert "limit 20" in err


class TestScanAndExperiments:
    def test_scan_writes_reports(self, run, tmp_path):
        out_dir = tmp_path / "reports"
        code, out, _ = run("scan", "corpus:hollow_tetrahedron", "corpus:rp2_6", "--output-dir", str(out_dir))
        assert code == 0
        results = _json(out)
        assert [r["complex"] for r in results] == ["hollow_tetrahedron"] * 3 + ["rp2_6"] * 3
        assert (out_dir / "index.html").exists()
        assert (out_dir / "report.json").exists()

    def test_scan_flags_unreadable_inputs(self, run, tmp_path):
        code, out, _ = run("scan", str(tmp_path / "missing.txt"), "--output-dir", str(tmp_path / "r"))
        assert code == 1
        assert _json(out)[0]["status"] == "error"

    def test_scan_directory_in_parallel(self, run, tmp_path):
        inputs = tmp_path / "complexes"
        inputs.mkdir()
        (inputs / "triangle.txt").write_text("# name: triangle\na b\nb c\na c\n")
        (inputs / "path.facets").write_text("# name: path\na b\nb c\n")
        code, out, _ = run("scan", str(inputs), "--jobs", "2", "--output-dir", str(tmp_path / "r"))
        assert code == 0
        assert [r["complex"] for r in _json(out)] == ["path"] * 3 + ["triangle"] * 3

    def test_converse_experiment(self, run):
        code, out, _ = run("experiment", "converse", "--trials", "5", "--vertices", "5")
        assert code == 0
        assert _json(out)["trials"] == 5


class TestArguments:
    def test_unknown_command(self, run):
        assert run("bogus")[0] == 2

    def test_missing_required_option(self, run):
        assert run("oracle", "corpus:six_cycle")[0] == 2

    def test_help(self, run):
        code, out, _ = run("--help")
        assert code == 0
        assert "certify" in out

    def test_log_level_defaults_to_settings(self, run, monkeypatch, tmp_path):
        monkeypatch.setattr(settings, "LOG_LEVEL", "info")
        _, _, err = run("scan", "corpus:six_cycle", "--output-dir", str(tmp_path / "r"))
        assert "Scanning 1 complex(es)" in err

    def test_log_level_flag_wins(self, run, monkeypatch, tmp_path):
        monkeypatch.setattr(settings, "LOG_LEVEL", "info")
        _, _, err = run("--log-level", "error", "scan", "corpus:six_cycle", "--output-dir", str(tmp_path / "r"))
        assert "Scanning" not in err
