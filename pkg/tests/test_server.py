"""Tests for the MCP server tools."""

import asyncio
import json
import sys
from pathlib import Path

# Add parent directory to path so we can import src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.real_motivic.server import call_tool, get_server, list_tools


def call(name: str, arguments: dict) -> tuple[bool, str]:
    result = asyncio.run(call_tool(name, arguments))
    return result.isError, result.content[0].text


class TestRealMotivicServer:
    """Test suite for the engine MCP server."""

    def test_server_initialization(self) -> None:
        """Test that server initializes correctly."""
        server = get_server()
        assert server is not None
        assert server.name == "real-motivic-engine"

    def test_tool_listing(self) -> None:
        """Test every engine operation is exposed as a tool."""
        tools = asyncio.run(list_tools())

        assert {t.name for t in tools} == {
            "milnor_fibre",
            "zeta_series",
            "cross_validate",
            "newton_fan",
            "constructible_function",
            "level_set_beta",
            "validate",
        }

    def test_milnor_fibre_on_shipped_datum(self) -> None:
        """Test the resolution route on a shipped example name."""
        error, text = call("milnor_fibre", {"method": "dl", "datum": "x2y4"})
        result = json.loads(text)

        assert not error
        assert result["psi"] == "1 + L"
        assert result["beta"] == "1 + u"
        assert result["chi_c"] == 0

    def test_milnor_fibre_minus_sign(self) -> None:
        error, text = call("milnor_fibre", {"method": "newton", "poly": "x^2+y^4", "sign": "minus"})

        assert not error
        assert json.loads(text)["beta"] == "0"

    def test_zeta_series(self) -> None:
        error, text = call("zeta_series", {"method": "dl", "datum": "x2y4", "terms": 2})
        result = json.loads(text)

        assert not error
        assert result["coefficients"] == {"T^1": "0", "T^2": "2*L^-1"}

    def test_cross_validate(self) -> None:
        """Test the three routes agree on x^2+y^4."""
        error, text = call("cross_validate", {"poly": "x^2+y^4", "datum": "x2y4"})

        assert not error
        assert json.loads(text)["verdict"] == "AGREE"

    def test_newton_fan(self) -> None:
        error, text = call("newton_fan", {"poly": "x^2+y^4"})

        assert not error
        assert len(json.loads(text)["faces"]) == 3

    def test_constructible_function(self) -> None:
        """Test Euler integration of a closed triangle."""
        error, text = call(
            "constructible_function", {"op": "integrate", "complex": {"simplices": [[0, 1, 2]]}}
        )

        assert not error
        assert json.loads(text) == {"integral": 1}

    def test_level_set_beta(self) -> None:
        error, text = call("level_set_beta", {"level": "0"})
        result = json.loads(text)

        assert not error
        assert result["beta"] == "2 + 2*u"
        assert result["beta_link"] == "4 + 4*u"

    def test_validate_unknown_suite(self) -> None:
        """Test an unknown suite surfaces as a tool error."""
        error, text = call("validate", {"suite": "nothing"})

        assert error
        assert json.loads(text)["status"] == "error"


class TestServerErrors:
    """Errors come back as isError results, never as exceptions."""

    def test_unknown_tool(self) -> None:
        error, text = call("geocode", {})

        assert error
        assert text == "Unknown tool: geocode"

    def test_missing_argument(self) -> None:
        error, text = call("milnor_fibre", {"datum": "x2y4"})

        assert error
        assert text.startswith("Error: missing argument")

    def test_parse_error(self) -> None:
        error, text = call("newton_fan", {"poly": "x^"})

        assert error
        assert text.startswith("Error: ")

    def test_weighted_homogeneous_route_unavailable(self) -> None:
        error, text = call("milnor_fibre", {"method": "wh", "poly": "x^6+x^2*y^2+y^6"})

        assert error
        assert "NotWeightedHomogeneous" in text


class TestServerConfig:
    """The server routes milnor_fibre and zeta_series through the engine configuration."""

    def test_printed_closed_form(self, monkeypatch) -> None:
        monkeypatch.setenv("REAL_MOTIVIC_CORFIB_SIGN", "printed")
        error, text = call("milnor_fibre", {"method": "dl", "datum": "x2y4"})

        assert not error
        assert json.loads(text)["beta"] == "-3 + 5*u"

    def test_limit_convention_by_default(self, monkeypatch) -> None:
        monkeypatch.setenv("REAL_MOTIVIC_CORFIB_SIGN", "limit")
        error, text = call("milnor_fibre", {"method": "dl", "datum": "x2y4"})

        assert not error
        assert json.loads(text)["beta"] == "1 + u"

    def test_assume_nondegenerate_is_forwarded(self) -> None:
        args = {"method": "newton", "poly": "x^2+y^2+z^2"}
        error, text = call("zeta_series", args)
        assert error
        assert "UnsupportedDimension" in text

        error, text = call("zeta_series", {**args, "assume_nondegenerate": True})
        assert error
        assert "MissingTableEntry" in text

        error, text = call("milnor_fibre", {**args, "assume_nondegenerate": True})
        assert error
        assert "MissingTableEntry" in text

    def test_schemas_list_assume_nondegenerate(self) -> None:
        tools = {t.name: t for t in asyncio.run(list_tools())}

        for name in ("milnor_fibre", "zeta_series"):
            assert "assume_nondegenerate" in tools[name].inputSchema["properties"]
