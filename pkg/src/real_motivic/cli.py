"""
Command-line surface of the real motivic engine.

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

import argparse
import asyncio
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

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
    dl_zeta,
    expand_series,
    milnor_fibre,
    milnor_fibre_closed_form,
    newton_zeta,
    wh_milnor,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from None


def _load_datum(ref: Optional[str]) -> ResolutionDatum:
    if ref is None:
        raise InvalidInput("--datum is required for the dl method")
    if ref in data.DATA:
        return data.load_datum(ref)
    return ResolutionDatum.from_json(_read_json(ref))


def _load_table(f: MultiPoly, ref: Optional[str]) -> TorusClassTable:
    """Computed torus classes, overridden by user entries when a table file is given."""
    table = TorusClassTable.compute(f)
    if ref is not None:
        table = table.merged(TorusClassTable.from_json(_read_json(ref)))
    return table


def _poly(args: argparse.Namespace) -> MultiPoly:
    if not args.poly:
        raise InvalidInput(f"--poly is required for the {args.method} method")
    return parse_poly(args.poly)


def _series(args: argparse.Namespace, cfg: EngineConfig) -> ZetaSeries:
    if args.method == "dl":
        return dl_zeta(_load_datum(args.datum), args.sign)
    f = _poly(args)
    return newton_zeta(f, _load_table(f, args.table), args.sign, cfg, args.assume_nondegenerate)


def cmd_milnor(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    if args.method == "wh":
        f = _poly(args)
        psi = wh_milnor(f, _load_table(f, args.table), args.sign)
    elif args.method == "dl" and cfg.corfib_sign == "printed":
        psi = milnor_fibre_closed_form(_load_datum(args.datum), args.sign, "printed")
    else:
        psi = milnor_fibre(_series(args, cfg))
    beta = beta_realize(psi)
    result = {
        "status": "success",
        "method": args.method,
        "sign": args.sign,
        "psi": str(psi),
        "beta": str(beta),
    }
    if not isinstance(beta, Unknown):
        result["chi_c"] = beta.chi_c()
    return result


def cmd_zeta(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    z = _series(args, cfg)
    return {
        "status": "success",
        "series": z.format(),
        "coefficients": {
            f"T^{n}": str(c) for n, c in enumerate(expand_series(z, args.terms), start=1)
        },
    }


def cmd_newton(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    f = parse_poly(args.poly)
    fan = dual_fan(newton_polyhedron(f.support, f.dim))
    return {"status": "success", **fan_to_json(fan), "rejected": fan.rejected}


def cmd_cf(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    if args.op in ("push", "pull", "locallink"):
        if args.map is None:
            raise InvalidInput(f"--map is required for {args.op}")
        h = MapSpec.model_validate(_read_json(args.map)).build()
        if args.op == "locallink":
            at = _vertex(h.target.vertices, args.at)
            return {"status": "success", "chi_c": local_link(h, at).chi_c}
        space = h.source if args.op == "push" else h.target
    else:
        if args.complex is None:
            raise InvalidInput(f"--complex is required for {args.op}")
        space = ComplexSpec.model_validate(_read_json(args.complex)).build()
    if args.fn is None:
        phi = ConstructibleFunction.constant(space)
    else:
        phi = FunctionSpec.model_validate(_read_json(args.fn)).build(space)
    if args.op == "integrate":
        return {"status": "success", "integral": cf_integral(phi)}
    if args.op == "euler":
        return {"status": "success", "euler": cf_is_euler(phi)}
    ops = {
        "dual": cf_dual,
        "link": cf_link,
        "push": lambda p: cf_pushforward(p, h),
        "pull": lambda p: cf_pullback(p, h),
    }
    return {"status": "success", **ops[args.op](phi).to_json()}


def _vertex(vertices: Sequence[Any], text: Optional[str]) -> Any:
    if text is None:
        raise InvalidInput("--at is required for locallink")
    for v in vertices:
        if str(v) == text:
            return v
    raise InvalidInput(f"unknown vertex {text!r}")


def cmd_link(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    if args.surface is None:
        surface = data.torus_model()
    else:
        surface = SurfaceSpec.model_validate(_read_json(args.surface)).build_surface()
    try:
        level = Fraction(args.level)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"bad level {args.level!r}") from None
    result = level_set_beta(surface, level)
    return {
        "status": "success",
        "level": str(level),
        "beta": str(result.beta),
        "beta_link": str(result.beta_link),
    }


def cmd_validate(args: argparse.Namespace, cfg: EngineConfig) -> dict[str, Any]:
    agent = ValidationAgent(cfg)
    return asyncio.run(agent.run_suite(args.suite))


COMMANDS = {
    "milnor": cmd_milnor,
    "zeta": cmd_zeta,
    "newton": cmd_newton,
    "cf": cmd_cf,
    "link": cmd_link,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="real-motivic", description="Motivic Milnor fibres and Euler calculus, exactly."
    )
    parser.add_argument("--json", action="store_true", help="Emit JSON instead of text.")
    parser.add_argument("--qsigma", choices=["positive-gens", "all-gens"], default=None)
    parser.add_argument("--corfib-sign", choices=["derived", "printed"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def route_options(p: argparse.ArgumentParser, methods: list[str]) -> None:
        p.add_argument("--poly", help="Polynomial, e.g. 'x^2+y^4'.")
        p.add_argument("--method", choices=methods, required=True)
        p.add_argument("--datum", help="Resolution datum JSON file or shipped example name.")
        p.add_argument("--table", help="Torus class table JSON overriding computed entries.")
        p.add_argument("--sign", choices=["plus", "minus"], default="plus")
        p.add_argument("--assume-nondegenerate", action="store_true")

    milnor = sub.add_parser("milnor", help="Motivic Milnor fibre with sign.")
    route_options(milnor, ["dl", "newton", "wh"])
    zeta = sub.add_parser("zeta", help="Zeta function in closed form with its first coefficients.")
    route_options(zeta, ["dl", "newton"])
    zeta.add_argument("--terms", type=int, default=6)

    newton = sub.add_parser("newton", help="Dump the dual fan of the Newton polyhedron.")
    newton.add_argument("--poly", required=True)

    cf = sub.add_parser("cf", help="Constructible function operations.")
    cf.add_argument(
        "--op",
        choices=["integrate", "dual", "link", "push", "pull", "euler", "locallink"],
        required=True,
    )
    cf.add_argument("--complex", help="Complex JSON file.")
    cf.add_argument("--fn", help="Function JSON file; the constant 1 when omitted.")
    cf.add_argument("--map", help="Simplicial map JSON file.")
    cf.add_argument("--at", help="Target vertex for locallink.")

    link = sub.add_parser("link", help="beta of a level set and of its link preimage.")
    link.add_argument("--surface", help="Heighted surface JSON; the shipped torus when omitted.")
    link.add_argument("--level", required=True, help="Rational level such as -3/2.")

    validate = sub.add_parser("validate", help="Replay the worked examples.")
    validate.add_argument("--suite", choices=["all", *SUITES], default="all")
    return parser


def render(result: dict[str, Any]) -> str:
    """Human-readable report; validation results become a verdict table."""
    if "cases" in result:
        lines = [
            f"{c['verdict']:<8} {c['suite']:<7} {c['name']}: "
            f"expected {c['expected']}, got {c['got']}"
            for c in result["cases"]
        ]
        summary = result["summary"]
        lines.append(
            f"{summary['PASS']} PASS, {summary['FAIL']} FAIL, {summary['FLAGGED']} FLAGGED"
        )
        return "\n".join(lines)
    return "\n".join(
        f"{key}: {json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value}"
        for key, value in result.items()
        if key != "status"
    )


def _error(e: Exception) -> int:
    payload = {"status": "error", "error": type(e).__name__, "message": str(e)}
    print(json.dumps(payload, sort_keys=True))
    return EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(qsigma=args.qsigma, corfib_sign=args.corfib_sign)
    except ValueError as e:
        return _error(e)
    logging.basicConfig(
        level=cfg.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        result = COMMANDS[args.command](args, cfg)
    except (MotivicError, ValueError) as e:
        logger.error(f"Command {args.command} failed: {e}")
        return _error(e)
    if result.get("status") == "error":
        print(json.dumps(result, sort_keys=True))
        return EXIT_INPUT
    print(json.dumps(result, sort_keys=True, indent=2) if args.json else render(result))
    if args.command == "validate" and result["summary"]["FAIL"]:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
