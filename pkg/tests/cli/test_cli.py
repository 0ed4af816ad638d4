"""Tests for the invconn command line."""

import json

import pytest

from src.algebra.reductive import LieYamaguti, lie_yamaguti
from src.cli import cli
from src.formats.algebra_file import (
    lie_yamaguti_file,
    parse_algebra_file,
    serialize_algebra_file,
)
from tests.conftest import GOLDEN_DIR, MODELS_DIR

GOLDEN_MODELS = ["so3-group", "so3-so2", "sl2-h"]


@pytest.fixture
def write_file(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


class TestGoldenOutput:
    """--json output is byte-for-byte stable."""

    @pytest.mark.parametrize("model", GOLDEN_MODELS)
    @pytest.mark.parametrize(
        "command", ["validate", "products", "conn-space", "classify"]
    )
    def test_matches_golden(self, runner, model_path, command, model):
        result = runner.invoke(cli, [command, model_path(model), "--json"])
        assert result.exit_code == 0, result.stderr
        golden = GOLDEN_DIR / f"{command}-{model}.json"
        assert result.stdout == golden.read_text(encoding="utf-8")

    def test_repeated_runs_agree(self, runner, model_path):
        args = ["classify", model_path("so3xR-so2"), "--json"]
        first = runner.invoke(cli, args).stdout
        assert runner.invoke(cli, args).stdout == first


class TestValidateCommand:
    """Test validate and its exit codes."""

    def test_passes(self, runner, model_path):
        result = runner.invoke(cli, ["validate", model_path("so3")])
        assert result.exit_code == 0
        assert "passed: true" in result.stdout

    def test_broken_metric(self, runner, write_file):
        data = json.loads((MODELS_DIR / "so3-so2.json").read_text())
        data["metric"] = [["1", "0"], ["0", "-1"]]
        path = write_file("bad-metric.json", json.dumps(data))
        result = runner.invoke(cli, ["validate", path, "--json"])
        assert result.exit_code == 1
        payload = json.loads(result.stdout)
        assert payload["passed"] is False
        assert payload["metric"]["violations"][0]["kind"] == "invariance"

    def test_parse_error(self, runner, write_file):
        path = write_file("broken.json", "{")
        result = runner.invoke(cli, ["validate", path])
        assert result.exit_code == 2
        assert result.stdout == ""
        assert result.stderr.startswith("Error:")

    def test_parse_error_position(self, runner, write_file):
        text = json.dumps(
            {
                "name": "bad",
                "dim": 3,
                "brackets": [{"i": 0, "j": 1, "c": [[3, "1"]]}],
            }
        )
        result = runner.invoke(cli, ["validate", write_file("b.json", text)])
        assert result.exit_code == 2
        assert "brackets[0].c[0]" in result.stderr

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["validate", str(tmp_path / "nope.json")])
        assert result.exit_code == 2


class TestLyCheckCommand:
    """Test the Lie-Yamaguti axiom report."""

    def test_passes(self, runner, model_path):
        result = runner.invoke(cli, ["ly-check", model_path("sl2-h")])
        assert result.exit_code == 0
        rows = [line.split() for line in result.stdout.splitlines()]
        assert rows[0] == ["axiom", "result", "witness"]
        assert ["LY6", "PASS"] in rows

    def test_perturbed_data_fails(self, runner, write_file, so3_so2):
        ly = lie_yamaguti(*so3_so2)
        t = ly.ternary.copy()
        t[0, 1, 0, :] = -t[0, 1, 0, :]
        text = serialize_algebra_file(
            lie_yamaguti_file("perturbed", LieYamaguti(2, ly.binary, t))
        )
        result = runner.invoke(
            cli, ["ly-check", write_file("ly.json", text), "--json"]
        )
        assert result.exit_code == 1
        payload = json.loads(result.stdout)
        assert payload["passed"] is False
        assert payload["axioms"]["LY2"] == [0, 1, 0]

        table = runner.invoke(cli, ["ly-check", write_file("ly.json", text)])
        rows = [line.split() for line in table.stdout.splitlines()]
        assert ["LY2", "FAIL", "0,1,0"] in rows


class TestConnectionCommands:
    """Test conn-space, classify and levi-civita."""

    def test_conn_space_text(self, runner, model_path):
        result = runner.invoke(cli, ["conn-space", model_path("so3-so2")])
        assert result.exit_code == 0
        assert "dimension: 0" in result.stdout

    def test_conn_space_so3xr(self, runner, model_path):
        result = runner.invoke(
            cli, ["conn-space", model_path("so3xR-so2"), "--json"]
        )
        payload = json.loads(result.stdout)
        assert payload["dimension"] == 7
        assert len(payload["basis"]) == 7

    def test_classify_natural(self, runner, model_path):
        result = runner.invoke(
            cli, ["classify", model_path("so3-group"), "--alpha", "natural"]
        )
        assert result.exit_code == 0
        assert "  symmetric: true" in result.stdout
        assert "  flat: false" in result.stdout
        assert "  anticommutative: true" in result.stdout

    def test_classify_canonical(self, runner, model_path):
        result = runner.invoke(
            cli,
            ["classify", model_path("so3-group"), "--alpha", "canonical"],
        )
        assert "  symmetric: false" in result.stdout
        assert "  flat: true" in result.stdout

    def test_classify_alpha_from_file(self, runner, model_path):
        result = runner.invoke(
            cli,
            [
                "classify",
                model_path("so3-group"),
                "--alpha",
                model_path("su2-mu"),
                "--json",
            ],
        )
        assert result.exit_code == 0
        # su2-mu carries the so3 structure constants, twice the natural
        flags = json.loads(result.stdout)["flags"]
        assert flags["anticommutative"] is True
        assert flags["symmetric"] is False

    def test_classify_uses_input_alpha(self, runner, model_path):
        result = runner.invoke(cli, ["classify", model_path("su2-mu")])
        assert result.exit_code == 0
        assert "  flexible: true" in result.stdout

    def test_classify_bogus_alpha(self, runner, model_path):
        result = runner.invoke(
            cli, ["classify", model_path("so3-group"), "--alpha", "bogus"]
        )
        assert result.exit_code == 2

    def test_classify_alpha_file_without_section(self, runner, model_path):
        result = runner.invoke(
            cli,
            [
                "classify",
                model_path("so3-group"),
                "--alpha",
                model_path("so3"),
            ],
        )
        assert result.exit_code == 2

    def test_levi_civita(self, runner, model_path):
        result = runner.invoke(
            cli, ["levi-civita", model_path("so3-group"), "--json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["alpha"]["0,1,2"] == "1/2"
        assert payload["report"]["naturally_reductive"] is True

    def test_levi_civita_needs_metric(self, runner, model_path):
        result = runner.invoke(cli, ["levi-civita", model_path("so3")])
        assert result.exit_code == 2

    def test_levi_civita_rejects_bad_metric(self, runner, write_file):
        data = json.loads((MODELS_DIR / "so3-so2.json").read_text())
        data["metric"] = [["1", "0"], ["0", "-1"]]
        path = write_file("bad-metric.json", json.dumps(data))
        result = runner.invoke(cli, ["levi-civita", path])
        assert result.exit_code == 1
        assert "passed: false" in result.stdout


class TestStructureCommands:
    """Test envelope, metrics, decompositions and products."""

    def test_envelope(self, runner, model_path):
        result = runner.invoke(cli, ["envelope", model_path("so3-so2")])
        assert result.exit_code == 0
        data = parse_algebra_file(result.stdout)
        assert data.name == "so3-so2-envelope"
        assert data.basis == ["d1", "e1", "e2"]
        assert data.h == [0]

    def test_envelope_with_binary_section_only(self, runner, write_file):
        data = json.loads((MODELS_DIR / "so3-so2.json").read_text())
        data["binary"] = []
        path = write_file("binary-only.json", json.dumps(data))
        result = runner.invoke(cli, ["envelope", path])
        assert result.exit_code == 0
        envelope = parse_algebra_file(result.stdout)
        assert envelope.dim == 3
        assert envelope.h == [0]

    def test_envelope_of_broken_data(self, runner, write_file, so3_so2):
        ly = lie_yamaguti(*so3_so2)
        t = ly.ternary.copy()
        t[0, 1, 0, :] = -t[0, 1, 0, :]
        text = serialize_algebra_file(
            lie_yamaguti_file("perturbed", LieYamaguti(2, ly.binary, t))
        )
        result = runner.invoke(cli, ["envelope", write_file("ly.json", text)])
        assert result.exit_code == 1
        assert "AxiomsViolated" in result.stderr

    def test_metrics(self, runner, model_path):
        result = runner.invoke(cli, ["metrics", model_path("sl2-h"), "--json"])
        payload = json.loads(result.stdout)
        assert payload["dimension"] == 1
        assert payload["basis"] == [[["0", "1"], ["1", "0"]]]

    def test_decompositions(self, runner, model_path):
        result = runner.invoke(
            cli, ["decompositions", model_path("so3"), "--json"]
        )
        payload = json.loads(result.stdout)
        assert payload["count"] == 5
        assert payload["decompositions"][3] == {"h": [2], "m": [0, 1]}

    def test_decompositions_table(self, runner, model_path):
        result = runner.invoke(cli, ["decompositions", model_path("so3")])
        lines = result.stdout.splitlines()
        assert lines[0].split() == ["#", "h", "m"]
        assert lines[2].split() == ["1", "-", "e1", "e2", "e3"]
        assert lines[5].split() == ["4", "e3", "e1", "e2"]
        assert len(lines) == 7

    def test_metrics_text(self, runner, model_path):
        result = runner.invoke(cli, ["metrics", model_path("sl2-h")])
        lines = result.stdout.splitlines()
        assert lines[:2] == ["dimension: 1", "form 1:"]
        assert [line.split() for line in lines[2:]] == [["0", "1"], ["1", "0"]]

    def test_products_text(self, runner, model_path):
        result = runner.invoke(cli, ["products", model_path("so3-so2")])
        assert "binary: {}" in result.stdout
        assert "0,1,0,1: 1" in result.stdout

    def test_not_reductive(self, runner, write_file):
        data = json.loads((MODELS_DIR / "so3-so2.json").read_text())
        data["h"], data["m"] = [0, 1], [2]
        del data["metric"]
        path = write_file("split.json", json.dumps(data))
        result = runner.invoke(cli, ["products", path])
        assert result.exit_code == 1
        assert "NotReductive" in result.stderr


class TestModelCommands:
    """Test gen and adexp."""

    def test_gen_matches_shipped_file(self, runner):
        result = runner.invoke(cli, ["gen", "--model", "so3"])
        assert result.exit_code == 0
        expected = (MODELS_DIR / "so3.json").read_text(encoding="utf-8")
        assert result.stdout == expected

    def test_gen_with_h(self, runner):
        result = runner.invoke(cli, ["gen", "--model", "sl2", "--h", "0"])
        data = parse_algebra_file(result.stdout)
        assert data.h == [0]
        assert data.m == [1, 2]

    def test_gen_unknown_model(self, runner):
        result = runner.invoke(cli, ["gen", "--model", "so5"])
        assert result.exit_code == 1
        assert "UnknownModel" in result.stderr

    def test_adexp_table(self, runner):
        result = runner.invoke(cli, ["adexp", "--model", "so3", "--t", "0.1"])
        assert result.exit_code == 0
        assert "residual" in result.stdout
        assert "FAIL" not in result.stdout

    def test_adexp_json(self, runner):
        result = runner.invoke(
            cli, ["adexp", "--model", "sl2", "--t=-1", "--json"]
        )
        payload = json.loads(result.stdout)
        assert payload["passed"] is True
        assert len(payload["rows"]) == 9
        assert payload["rows"][0]["x"] == "h"

    def test_adexp_bad_tolerance(self, runner):
        result = runner.invoke(
            cli, ["adexp", "--model", "so3", "--t", "1", "--tol", "0"]
        )
        assert result.exit_code == 1

    def test_adexp_requires_t(self, runner):
        result = runner.invoke(cli, ["adexp", "--model", "so3"])
        assert result.exit_code == 2
