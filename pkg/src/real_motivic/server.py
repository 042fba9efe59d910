"""MCP server exposing the real motivic engine as tools."""

import asyncio
import json
import logging
from fractions import Fraction
from typing import Any

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import CallToolResult, TextContent, Tool

from . import data
from .agents.validator import SUITES, ValidationAgent
from .config import EngineConfig, load_config
from .errors import InvalidInput, MotivicError
from .tools.constructible import (
    ComplexSpec,
    ConstructibleFunction,
    FunctionSpec,
    MapSpec,
    SurfaceSpec,
    cf_dual,
    cf_integral,
    cf_is_euler,
    cf_link,
    cf_pullback,
    cf_pushforward,
    level_set_beta,
    local_link,
)
from .tools.motivic_classes import Unknown, beta_realize
from .tools.polyhedra import dual_fan, fan_to_json, newton_polyhedron
from .tools.polynomial import MultiPoly, parse_poly
from .tools.zeta import (
    ResolutionDatum,
    TorusClassTable,
    ZetaSeries,
    cross_validate,
    dl_zeta,
    expand_series,
    milnor_fibre,
    milnor_fibre_closed_form,
    newton_zeta,
    wh_milnor,
)

logger = logging.getLogger(__name__)

server = Server("real-motivic-engine")

_DATUM = {
    "description": "Resolution datum object, or the name of a shipped example "
    f"({', '.join(sorted(data.DATA))})",
}
_TABLE = {
    "type": "object",
    "description": 'Torus class entries {"face:<id>:plus|minus|zero": "<beta>"}',
}
_SIGN = {"type": "string", "enum": ["plus", "minus"], "default": "plus"}
_ASSUME = {
    "type": "boolean",
    "default": False,
    "description": "Assume non-degeneracy where it cannot be certified (3 or more variables)",
}


@server.list_tools()
async def list_tools() -> list[Tool]:
    """List available engine tools."""
    return [
        Tool(
            name="milnor_fibre",
            description="Motivic Milnor fibre with sign and its virtual Poincare polynomial",
            inputSchema={
                "type": "object",
                "properties": {
                    "poly": {"type": "string", "description": "Polynomial such as x^2+y^4"},
                    "method": {"type": "string", "enum": ["dl", "newton", "wh"]},
                    "datum": _DATUM,
                    "table": _TABLE,
                    "sign": _SIGN,
                    "assume_nondegenerate": _ASSUME,
                },
                "required": ["method"],
            },
        ),
        Tool(
            name="zeta_series",
            description="Zeta function with sign in closed form and its first coefficients",
            inputSchema={
                "type": "object",
                "properties": {
                    "poly": {"type": "string"},
                    "method": {"type": "string", "enum": ["dl", "newton"]},
                    "datum": _DATUM,
                    "table": _TABLE,
                    "sign": _SIGN,
                    "assume_nondegenerate": _ASSUME,
                    "terms": {"type": "integer", "default": 6, "minimum": 1},
                },
                "required": ["method"],
            },
        ),
        Tool(
            name="cross_validate",
            description="Compare beta of the Milnor fibre across all available routes",
            inputSchema={
                "type": "object",
                "properties": {
                    "poly": {"type": "string"},
                    "datum": _DATUM,
                    "table": _TABLE,
                },
                "required": ["poly"],
            },
        ),
        Tool(
            name="newton_fan",
            description="Compact faces of the Newton polyhedron and their dual cones",
            inputSchema={
                "type": "object",
                "properties": {"poly": {"type": "string"}},
                "required": ["poly"],
            },
        ),
        Tool(
            name="constructible_function",
            description="Euler calculus on a simplicial complex: integrate, dual, link, "
            "push, pull, euler, locallink",
            inputSchema={
                "type": "object",
                "properties": {
                    "op": {
                        "type": "string",
                        "enum": ["integrate", "dual", "link", "push", "pull", "euler", "locallink"],
                    },
                    "complex": {"type": "object", "description": "{vertices, simplices}"},
                    "function": {"type": "object", "description": '{"values": {"0,1": 2}}'},
                    "map": {"type": "object", "description": "{source, target, vertex_map}"},
                    "at": {"type": "string", "description": "Target vertex for locallink"},
                },
                "required": ["op"],
            },
        ),
        Tool(
            name="level_set_beta",
            description="beta of a level set of a heighted surface and of its link preimage",
            inputSchema={
                "type": "object",
                "properties": {
                    "level": {"type": "string", "description": "Rational level such as -3/2"},
                    "surface": {
                        "type": "object",
                        "description": "Heighted surface; the shipped torus when omitted",
                    },
                },
                "required": ["level"],
            },
        ),
        Tool(
            name="validate",
            description="Replay the worked examples and identity suites",
            inputSchema={
                "type": "object",
                "properties": {
                    "suite": {"type": "string", "enum": ["all", *SUITES], "default": "all"}
                },
            },
        ),
    ]


def _datum(arguments: dict[str, Any]) -> ResolutionDatum:
    ref = arguments.get("datum")
    if ref is None:
        raise InvalidInput("a resolution datum is required for the dl method")
    if isinstance(ref, str):
        return data.load_datum(ref)
    return ResolutionDatum.from_json(ref)


def _poly(arguments: dict[str, Any]) -> MultiPoly:
    if "poly" not in arguments:
        raise InvalidInput("a polynomial is required")
    return parse_poly(arguments["poly"])


def _table(f: MultiPoly, arguments: dict[str, Any]) -> TorusClassTable:
    table = TorusClassTable.compute(f)
    if arguments.get("table"):
        table = table.merged(TorusClassTable.from_json(arguments["table"]))
    return table


def _series(arguments: dict[str, Any], cfg: EngineConfig) -> ZetaSeries:
    sign = arguments.get("sign", "plus")
    if arguments["method"] == "dl":
        return dl_zeta(_datum(arguments), sign)
    f = _poly(arguments)
    return newton_zeta(
        f, _table(f, arguments), sign, cfg, bool(arguments.get("assume_nondegenerate", False))
    )


def _milnor(arguments: dict[str, Any]) -> dict[str, Any]:
    cfg = load_config()
    method, sign = arguments["method"], arguments.get("sign", "plus")
    if method == "wh":
        f = _poly(arguments)
        psi = wh_milnor(f, _table(f, arguments), sign)
    elif method == "dl" and cfg.corfib_sign == "printed":
        psi = milnor_fibre_closed_form(_datum(arguments), sign, "printed")
    else:
        psi = milnor_fibre(_series(arguments, cfg))
    beta = beta_realize(psi)
    result = {"psi": str(psi), "beta": str(beta)}
    if not isinstance(beta, Unknown):
        result["chi_c"] = beta.chi_c()
    return result


def _zeta(arguments: dict[str, Any]) -> dict[str, Any]:
    z = _series(arguments, load_config())
    coefficients = expand_series(z, int(arguments.get("terms", 6)))
    return {
        "series": z.format(),
        "coefficients": {f"T^{n}": str(c) for n, c in enumerate(coefficients, start=1)},
    }


def _constructible(arguments: dict[str, Any]) -> dict[str, Any]:
    op = arguments["op"]
    h = None
    if op in ("push", "pull", "locallink"):
        h = MapSpec.model_validate(arguments.get("map") or {}).build()
        if op == "locallink":
            at = next((v for v in h.target.vertices if str(v) == str(arguments.get("at"))), None)
            if at is None:
                raise InvalidInput(f"unknown target vertex {arguments.get('at')!r}")
            return {"chi_c": local_link(h, at).chi_c}
        space = h.source if op == "push" else h.target
    else:
        space = ComplexSpec.model_validate(arguments.get("complex") or {}).build()
    if arguments.get("function"):
        phi = FunctionSpec.model_validate(arguments["function"]).build(space)
    else:
        phi = ConstructibleFunction.constant(space)
    if op == "integrate":
        return {"integral": cf_integral(phi)}
    if op == "euler":
        return {"euler": cf_is_euler(phi)}
    if op == "dual":
        return cf_dual(phi).to_json()
    if op == "link":
        return cf_link(phi).to_json()
    if op == "push":
        return cf_pushforward(phi, h).to_json()
    if op == "pull":
        return cf_pullback(phi, h).to_json()
    raise InvalidInput(f"unknown operation {op}")


def _level_set(arguments: dict[str, Any]) -> dict[str, Any]:
    if arguments.get("surface"):
        surface = SurfaceSpec.model_validate(arguments["surface"]).build_surface()
    else:
        surface = data.torus_model()
    try:
        level = Fraction(str(arguments["level"]))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"bad level {arguments['level']!r}") from None
    result = level_set_beta(surface, level)
    return {"level": str(level), "beta": str(result.beta), "beta_link": str(result.beta_link)}


async def _dispatch(name: str, arguments: dict[str, Any]) -> dict[str, Any]:
    if name == "milnor_fibre":
        return _milnor(arguments)
    if name == "zeta_series":
        return _zeta(arguments)
    if name == "cross_validate":
        f = _poly(arguments)
        datum = _datum(arguments) if arguments.get("datum") is not None else None
        return cross_validate(f, datum, _table(f, arguments)).model_dump()
    if name == "newton_fan":
        f = _poly(arguments)
        fan = dual_fan(newton_polyhedron(f.support, f.dim))
        return {**fan_to_json(fan), "rejected": fan.rejected}
    if name == "constructible_function":
        return _constructible(arguments)
    if name == "level_set_beta":
        return _level_set(arguments)
    if name == "validate":
        return await ValidationAgent().run_suite(arguments.get("suite", "all"))
    raise KeyError(name)


@server.call_tool()
async def call_tool(name: str, arguments: dict[str, Any]) -> CallToolResult:
    """Call an engine tool."""
    try:
        result = await _dispatch(name, arguments or {})
    except KeyError as e:
        if e.args and e.args[0] == name:
            return CallToolResult(
                content=[TextContent(type="text", text=f"Unknown tool: {name}")], isError=True
            )
        logger.error(f"Missing argument for {name}: {e}", exc_info=True)
        return CallToolResult(
            content=[TextContent(type="text", text=f"Error: missing argument {e}")],
            isError=True,
        )
    except (MotivicError, ValueError) as e:
        logger.error(f"Error calling tool {name}: {e}", exc_info=True)
        return CallToolResult(
            content=[TextContent(type="text", text=f"Error: {type(e).__name__}: {e}")],
            isError=True,
        )
    return CallToolResult(
        content=[TextContent(type="text", text=json.dumps(result, sort_keys=True))],
        isError=result.get("status") == "error",
    )


async def main() -> None:
    """Run the MCP server on stdio."""
    cfg = load_config()
    logging.basicConfig(level=cfg.log_level.upper())
    logger.info("Starting real motivic engine MCP server...")
    async with stdio_server() as (read_stream, write_stream):
        await server.run(read_stream, write_stream, server.create_initialization_options())


def get_server() -> Server:
    """Get the MCP server instance for testing."""
    return server


def run() -> None:
    """Console entry point."""
    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        logger.info("Server interrupted")


if __name__ == "__main__":
    run()
