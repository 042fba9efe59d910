"""Tests for the command-line surface."""

import json
import sys
from pathlib import Path

import pytest

# Add parent directory to path so we can import src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.real_motivic.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main


def run_json(capsys: pytest.CaptureFixture, argv: list[str]) -> tuple[int, dict]:
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestMilnorAndZeta:
    """milnor and zeta subcommands."""

    def test_milnor_dl_text(self, capsys: pytest.CaptureFixture) -> None:
        code = main(["milnor", "--method", "dl", "--datum", "x2y4"])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert "beta: 1 + u" in out
        assert "chi_c: 0" in out

    @pytest.mark.parametrize("method", ["newton", "wh"])
    def test_milnor_from_polynomial(self, capsys: pytest.CaptureFixture, method: str) -> None:
        code, result = run_json(capsys, ["milnor", "--method", method, "--poly", "x^2+y^4"])

        assert code == EXIT_OK
        assert result["beta"] == "1 + u"

    def test_printed_sign_convention(self, capsys: pytest.CaptureFixture) -> None:
        code, result = run_json(
            capsys, ["--corfib-sign", "printed", "milnor", "--method", "dl", "--datum", "x2y4"]
        )

        assert code == EXIT_OK
        assert result["beta"] == "-3 + 5*u"

    def test_datum_file(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        from src.real_motivic.data import X6_DATUM

        path = tmp_path / "x6.json"
        path.write_text(json.dumps(X6_DATUM))
        code, result = run_json(capsys, ["milnor", "--method", "dl", "--datum", str(path)])

        assert code == EXIT_OK
        assert result["beta"] == "0"

    def test_zeta_coefficients(self, capsys: pytest.CaptureFixture) -> None:
        code, result = run_json(
            capsys, ["zeta", "--method", "dl", "--datum", "x2y4", "--terms", "4"]
        )

        assert code == EXIT_OK
        assert result["coefficients"]["T^2"] == "2*L^-1"
        assert result["coefficients"]["T^1"] == "0"
        assert len(result["coefficients"]) == 4

    def test_user_table_overrides(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        path = tmp_path / "table.json"
        path.write_text(json.dumps({"face:(0,4)-(2,0):plus": "u-1"}))
        code, result = run_json(
            capsys, ["milnor", "--method", "wh", "--poly", "x^2+y^4", "--table", str(path)]
        )

        assert code == EXIT_OK
        assert result["beta"] == "3 + u"


class TestOtherCommands:
    """newton, cf, link and validate subcommands."""

    def test_newton_fan(self, capsys: pytest.CaptureFixture) -> None:
        code, result = run_json(capsys, ["newton", "--poly", "x^2+y^4"])

        assert code == EXIT_OK
        assert [f["id"] for f in result["faces"]] == ["(0,4)", "(2,0)", "(0,4)-(2,0)"]
        assert result["rejected"] == {}

    def test_cf_operations(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        complex_path = tmp_path / "k.json"
        complex_path.write_text(json.dumps({"simplices": [[0, 1, 2]]}))
        fn_path = tmp_path / "f.json"
        fn_path.write_text(json.dumps({"values": {"0,1,2": 1}}))

        code, result = run_json(capsys, ["cf", "--op", "integrate", "--complex", str(complex_path)])
        assert code == EXIT_OK
        assert result["integral"] == 1

        code, result = run_json(
            capsys, ["cf", "--op", "dual", "--complex", str(complex_path), "--fn", str(fn_path)]
        )
        assert code == EXIT_OK
        assert result["values"]["0"] == 1
        assert len(result["values"]) == 7

    def test_cf_local_link(self, capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
        map_path = tmp_path / "h.json"
        map_path.write_text(
            json.dumps(
                {
                    "source": {"simplices": [["a", "c"], ["b", "c"]]},
                    "target": {"simplices": [["p", "q"]]},
                    "vertex_map": {"a": "p", "b": "p", "c": "q"},
                }
            )
        )
        code, result = run_json(
            capsys, ["cf", "--op", "locallink", "--map", str(map_path), "--at", "p"]
        )

        assert code == EXIT_OK
        assert result["chi_c"] == 2

    def test_link_on_shipped_torus(self, capsys: pytest.CaptureFixture) -> None:
        code, result = run_json(capsys, ["link", "--level=-3/2"])

        assert code == EXIT_OK
        assert result["beta"] == "1 + u"
        assert result["beta_link"] == "2 + 2*u"

    def test_validate_flags_do_not_fail(self, capsys: pytest.CaptureFixture) -> None:
        code = main(["validate", "--suite", "parity"])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert "FLAGGED  parity  link_dual_relation" in out
        assert out.strip().endswith("FLAGGED")

    def test_validate_failure_exit_code(
        self, capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("REAL_MOTIVIC_QSIGMA", "all-gens")
        code = main(["validate", "--suite", "newton"])
        capsys.readouterr()

        assert code == EXIT_FAILED


class TestErrors:
    """Input errors map to exit code 2 with a JSON error."""

    @pytest.mark.parametrize(
        "argv",
        [
            ["milnor", "--method", "dl"],
            ["milnor", "--method", "newton"],
            ["milnor", "--method", "dl", "--datum", "cusp"],
            ["newton", "--poly", "x^"],
            ["zeta", "--method", "newton", "--poly", "x^2-2*x*y+y^2"],
            ["cf", "--op", "dual"],
            ["cf", "--op", "integrate", "--complex", "/nonexistent/k.json"],
            ["link", "--level", "abc"],
        ],
    )
    def test_input_errors(self, capsys: pytest.CaptureFixture, argv: list[str]) -> None:
        code = main(argv)
        payload = json.loads(capsys.readouterr().out)

        assert code == EXIT_INPUT
        assert payload["status"] == "error"
        assert payload["message"]

    def test_bad_environment(
        self, capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("REAL_MOTIVIC_QSIGMA", "sometimes")
        code = main(["newton", "--poly", "x^2+y^4"])

        assert code == EXIT_INPUT
        assert json.loads(capsys.readouterr().out)["status"] == "error"
