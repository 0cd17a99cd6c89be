import pytest

from src.analyzers.base_analyzer import BaseAnalyzer
from src.analyzers.certificate_analyzer import CertificateAnalyzer
from src.analyzers.homology_analyzer import HomologyAnalyzer
from src.analyzers.scanner import build_analyzers, expand_inputs, run_scan
from src.analyzers.structure_analyzer import StructureAnalyzer, classify_complex
from src.core.complex import SimplicialComplex
from src.corpus.registry import corpus_get
from src.errors import NotPure
from src.settings import AppConfig, ConfigError, CycleMateSettings, load_config, settings


class _Failing(BaseAnalyzer):
    analyzer_name = "failing"

    def __init__(self, exc):
        self.exc = exc

    def _run_check(self, complex_):
        raise self.exc


class TestBaseAnalyzer:
    def test_domain_errors_become_error_results(self):
        result = _Failing(NotPure("mixed dimensions")).check(corpus_get("six_cycle"))
        assert result == {"analyzer": "failing", "status": "error", "message": "mixed dimensions"}

    def test_unexpected_errors_are_masked(self):
        result = _Failing(RuntimeError("boom")).check(corpus_get("six_cycle"))
        assert result["message"] == "Check failed"


class TestHomologyAnalyzer:
    def test_rp2(self):
        result = HomologyAnalyzer(["gf2", "q"]).check(corpus_get("rp2_6"))
        assert result["status"] == "ok"
        assert result["message"] == "Nonzero reduced homology over gf2"
        assert result["betti"]["q"] == {"0": 0, "1": 0, "2": 0}

    def test_acyclic(self):
        result = HomologyAnalyzer().check(SimplicialComplex.from_facets("solid", ["abcd"]))
        assert result["message"] == "Acyclic over every checked field"


class TestStructureAnalyzer:
    def test_glued_pyramids(self):
        result = StructureAnalyzer().check(corpus_get("glued_pyramids"))
        assert "2 face-minimal parts" in result["message"]
        assert result["classification"]["parts"] == 2

    def test_pseudo_manifold_prefix(self):
        assert "pseudo-manifold" in StructureAnalyzer().check(corpus_get("torus_7"))["message"]
        assert "pseudo-manifold" not in StructureAnalyzer().check(corpus_get("pinched_sphere"))["message"]

    def test_impure_complex(self):
        verdict = classify_complex(SimplicialComplex.from_facets("mixed", ["abc", "cd"]))
        assert verdict["pure"] is False
        assert verdict["dims"] == [1, 2]
        assert verdict["orientable"] is None

    def test_non_cycle(self):
        verdict = classify_complex(corpus_get("moore_mod3"))
        assert not verdict["cycle"]
        assert "odd incidence" in verdict["reason"]
        assert verdict["parts"] is None


class TestCertificateAnalyzer:
    def test_every_homology_class_certified(self):
        result = CertificateAnalyzer(["gf2", "q"]).check(corpus_get("rp2_6"))
        assert result["status"] == "ok"
        assert [(c["field"], c["dim"]) for c in result["certificates"]] == [("gf2", 1), ("gf2", 2)]

    def test_gap_is_a_warning(self):
        result = CertificateAnalyzer(["q"]).check(corpus_get("moore_mod3_plus_xyz"))
        assert result["status"] == "warning"
        assert "q dim 2" in result["message"]

    def test_search_limit_is_reported(self):
        result = CertificateAnalyzer(["q"], kernel_limit=1).check(corpus_get("one_dim_nonminimal"))
        assert result["status"] == "warning"
        assert "search limit" in result["message"]
        assert "skipped" in result["certificates"][0]

    def test_acyclic(self):
        result = CertificateAnalyzer().check(SimplicialComplex.from_facets("solid", ["abcd"]))
        assert result["message"] == "No homology in positive dimensions"


class TestScanner:
    def test_results_follow_input_order(self):
        results = run_scan(AppConfig(fields=["gf2"]), ["corpus:six_cycle", "corpus:octahedron"])
        assert [(r["complex"], r["analyzer"]) for r in results] == [
            ("six_cycle", "homology"), ("six_cycle", "structure"), ("six_cycle", "certificate"),
            ("octahedron", "homology"), ("octahedron", "structure"), ("octahedron", "certificate"),
        ]

    def test_parallel_scan_matches_serial(self):
        config = AppConfig(fields=["gf2", "gf3"])
        inputs = ["corpus:octahedron", "corpus:glued_pyramids", "corpus:moore_mod3"]
        assert run_scan(config, inputs, jobs=3) == run_scan(config, inputs, jobs=1)

    def test_load_failure(self, tmp_path):
        results = run_scan(AppConfig(), [str(tmp_path / "nope.json")])
        assert results[0]["analyzer"] == "load"
        assert results[0]["status"] == "error"

    def test_directory_inputs_expand_to_their_files(self, tmp_path):
        (tmp_path / "b_square.txt").write_text("# name: square\na b\nb c\nc d\nd a\n")
        (tmp_path / "a_sphere.json").write_text(
            '{"name": "sphere", "facets": [["a","b","c"],["a","b","d"],["a","c","d"],["b","c","d"]]}'
        )
        (tmp_path / "notes.md").write_text("not a complex\n")
        assert expand_inputs([str(tmp_path), "corpus:six_cycle"]) == [
            str(tmp_path / "a_sphere.json"), str(tmp_path / "b_square.txt"), "corpus:six_cycle",
        ]
        config = AppConfig(fields=["gf2"])
        results = run_scan(config, [str(tmp_path)], jobs=2)
        assert [r["complex"] for r in results if r["analyzer"] == "homology"] == ["sphere", "square"]
        assert all(r["status"] != "error" for r in results)
        assert results == run_scan(config, [str(tmp_path)], jobs=1)

    def test_empty_directory_scans_nothing(self, tmp_path):
        assert run_scan(AppConfig(), [str(tmp_path)]) == []

    def test_build_analyzers_uses_limits(self):
        config = AppConfig.model_validate({"limits": {"kernel_enumeration_max_dim": 5}})
        analyzers = build_analyzers(config)
        assert [a.analyzer_name for a in analyzers] == ["homology", "structure", "certificate"]
        assert analyzers[2].kernel_limit == 5


class TestConfig:
    def test_missing_file_gives_defaults(self, tmp_path):
        config = load_config(str(tmp_path / "absent.yaml"))
        assert config.fields == ["gf2", "gf3", "q"]
        assert config.limits.oracle_max_faces == 20

    def test_yaml(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("inputs: [corpus:torus_7]\nfields: [gf5]\nreports:\n  output_dir: out\n")
        config = load_config(str(path))
        assert config.inputs == ["corpus:torus_7"]
        assert config.fields == ["gf5"]
        assert config.reports.output_dir == "out"

    @pytest.mark.parametrize("body", [
        "fields: [gf4]\n",
        "fields: []\n",
        "limits:\n  oracle_max_faces: 40\n",
        "limits: [1, 2\n",
    ])
    def test_invalid(self, tmp_path, body):
        path = tmp_path / "c.yaml"
        path.write_text(body)
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_default_path_comes_from_settings(self, tmp_path, monkeypatch):
        path = tmp_path / "from_settings.yaml"
        path.write_text("fields: [gf7]\n")
        monkeypatch.setattr(settings, "CONFIG_FILE", str(path))
        assert load_config().fields == ["gf7"]
        assert load_config(str(tmp_path / "absent.yaml")).fields == ["gf2", "gf3", "q"]

    def test_settings_read_the_environment(self, monkeypatch):
        monkeypatch.setenv("CYCLEMATE_CONFIG_FILE", "elsewhere.yaml")
        monkeypatch.setenv("CYCLEMATE_LOG_LEVEL", "DEBUG")
        env = CycleMateSettings()
        assert env.CONFIG_FILE == "elsewhere.yaml"
        assert env.LOG_LEVEL == "DEBUG"
