"""Validation agent replaying the worked examples and identity suites of the engine."""

import asyncio
import logging
import random
from collections import Counter
from typing import Any, Literal, Optional

from pydantic import BaseModel

from .. import data
from ..config import EngineConfig, load_config
from ..errors import MotivicError
from ..tools.constructible import (
    ConstructibleFunction,
    SimplicialMap,
    cf_dual,
    cf_integral,
    cf_is_euler,
    cf_link,
    cf_pushforward,
    cycle_complex,
    fibered_product,
    level_set_beta,
    local_link,
    pi_realize,
    random_complex,
    random_function,
    random_map_onto,
    simplex_complex,
)
from ..tools.curve_topology import torus_class
from ..tools.laurent_ring import U, LaurentPoly, parse_laurent
from ..tools.motivic_classes import (
    POINT,
    MotivicClass,
    beta_realize,
    dual_class,
    euler_parity_check,
    link_relative,
    pushforward_class,
)
from ..tools.polynomial import parse_poly
from ..tools.zeta import (
    TorusClassTable,
    cross_validate,
    dl_zeta,
    duality_milnor_check,
    expand_series,
    milnor_fibre,
    milnor_fibre_closed_form,
    sphere_class,
    sphere_link_check,
    wh_milnor,
)

logger = logging.getLogger(__name__)

SUITES = ("dl", "newton", "wh", "dual", "parity", "torus", "cf")
SEED = 7

Verdict = Literal["PASS", "FAIL", "FLAGGED"]


class CaseResult(BaseModel):
    name: str
    suite: str
    routes: list[str] = []
    expected: str
    got: str
    verdict: Verdict
    notes: str = ""
    provenance: str = ""


class ValidationAgent:
    """Runs named suites and reports PASS, FAIL or FLAGGED per case."""

    def __init__(
        self, cfg: Optional[EngineConfig] = None, seed: int = SEED, random_cases: int = 200
    ) -> None:
        self.cfg = cfg or load_config()
        self.seed = seed
        self.random_cases = random_cases
        logger.info(f"Validation agent initialized (seed {seed}, {random_cases} random cases)")

    def _compare(
        self,
        name: str,
        suite: str,
        expected: Any,
        got: Any,
        provenance: str,
        routes: tuple[str, ...] = (),
        notes: str = "",
    ) -> CaseResult:
        verdict: Verdict = "PASS" if expected == got else "FAIL"
        if verdict == "FAIL":
            logger.warning(f"{suite}/{name}: expected {expected}, got {got}")
        return CaseResult(
            name=name,
            suite=suite,
            routes=list(routes),
            expected=str(expected),
            got=str(got),
            verdict=verdict,
            notes=notes,
            provenance=provenance,
        )

    def _flag(
        self, name: str, suite: str, printed: Any, computed: Any, provenance: str, notes: str
    ) -> CaseResult:
        """A printed statement checked against the computed value; a mismatch is FLAGGED."""
        verdict: Verdict = "PASS" if printed == computed else "FLAGGED"
        if verdict == "FLAGGED":
            logger.warning(f"{suite}/{name}: printed {printed} but computed {computed}")
        return CaseResult(
            name=name,
            suite=suite,
            expected=str(printed),
            got=str(computed),
            verdict=verdict,
            notes=notes,
            provenance=provenance,
        )

    # suites

    def suite_dl(self) -> list[CaseResult]:
        cases = []
        for name in ("x2y4", "x6", "figure_eight"):
            res = data.load_datum(name)
            psi = milnor_fibre(dl_zeta(res, "plus"))
            expected = res.context.parse(data.EXPECTED_PSI[name], res.base)
            cases.append(
                self._compare(
                    f"psi_plus_{name}", "dl", expected, psi, "worked example", routes=("dl",)
                )
            )
            closed = milnor_fibre_closed_form(res, "plus", "derived")
            cases.append(
                self._compare(f"closed_form_{name}", "dl", closed, psi, "limit of the zeta series")
            )

        res = data.load_datum("x2y4")
        coefficients = expand_series(dl_zeta(res, "plus"), 6)
        for power, text in data.X2Y4_ZETA_COEFFICIENTS.items():
            cases.append(
                self._compare(
                    f"zeta_coefficient_T{power}_x2y4",
                    "dl",
                    res.context.parse(text),
                    coefficients[power - 1],
                    "jet count",
                )
            )

        printed = milnor_fibre_closed_form(res, "plus", "printed")
        cases.append(
            self._flag(
                "closed_form_sign_convention",
                "dl",
                printed,
                milnor_fibre(dl_zeta(res, "plus")),
                "closed form with (L-1)^{|I|-1}",
                "the closed form with (L-1)^{|I|-1} disagrees with -lim Z on x^2+y^4; "
                "the engine uses (1-L)^{|I|-1}",
            )
        )

        fig = data.load_datum("figure_eight")
        open_form = fig.context.parse(data.FIGURE_EIGHT_PSI, fig.base)
        compact = fig.context.parse(data.FIGURE_EIGHT_PSI_COMPACT, fig.base)
        cases.append(
            self._compare(
                "figure_eight_compactified_beta",
                "dl",
                beta_realize(compact),
                beta_realize(open_form),
                "smooth compactification adds the two points of E12",
            )
        )
        rewritten = fig.context.parse("([E1]-[E12])+([E2]-[E12])-(L-1)*[E12]", fig.base)
        cases.append(
            self._compare(
                "figure_eight_compactified_symbolic",
                "dl",
                compact,
                rewritten,
                "[E1o] = [E1] - [E12], [E2t] = [E2] - [E12]",
            )
        )
        return cases

    def suite_newton(self) -> list[CaseResult]:
        cases = []
        f = parse_poly(data.POLYNOMIALS["x2y4"])
        table = TorusClassTable.compute(f)
        mismatches = []
        for (face_id, tag), text in data.X2Y4_TORUS_TABLE.items():
            got = beta_realize(table.lookup(face_id, tag))
            if got != parse_laurent(text):
                mismatches.append(f"{face_id}:{tag} = {got}")
        cases.append(
            self._compare(
                "torus_table_x2y4",
                "newton",
                "[]",
                str(mismatches),
                "curve topology of the face curves",
            )
        )
        for name in ("x2y4", "x6"):
            f = parse_poly(data.POLYNOMIALS[name])
            report = cross_validate(
                f, data.load_datum(name), TorusClassTable.compute(f), self.cfg
            )
            cases.append(
                self._compare(
                    f"cross_validate_{name}",
                    "newton",
                    "AGREE",
                    report.verdict,
                    "resolution, Newton and weighted homogeneous routes",
                    routes=tuple(report.routes),
                    notes="; ".join(report.flags),
                )
            )

        residual = beta_realize(torus_class(parse_poly(data.X6_RESIDUAL_FACE), "plus", 2))
        printed_sum = parse_laurent(data.X6_RESIDUAL_CONSTANT) - residual * 2
        cases.append(
            self._flag(
                "x6_residual_arithmetic",
                "newton",
                parse_laurent("0"),
                printed_sum,
                "2(L-3) - 2[x^6+x^2y^2 = 1] with the residual claimed as u-3",
                f"torus curve x^6+x^2y^2 = 1 has beta {residual}, not "
                f"{data.X6_RESIDUAL_CLAIM}; psi^+ = 0 holds on the resolution route",
            )
        )
        return cases

    def suite_wh(self) -> list[CaseResult]:
        cases = []
        for text, sign, expected in (
            ("x^2+y^4", "plus", "u+1"),
            ("x^2+y^4", "minus", "0"),
            ("x^2+y^2", "plus", "u+1"),
            ("x^2+y^2", "minus", "0"),
        ):
            f = parse_poly(text)
            psi = wh_milnor(f, TorusClassTable.compute(f), sign)
            cases.append(
                self._compare(
                    f"wh_{sign}_{text}",
                    "wh",
                    parse_laurent(expected),
                    beta_realize(psi),
                    "[f = +-1] - [f = 0] + 1",
                    routes=("wh",),
                )
            )
        for text in data.SPHERE_LINK_POLYNOMIALS:
            f = parse_poly(text)
            cases.append(
                self._compare(
                    f"sphere_link_{text}",
                    "wh",
                    True,
                    sphere_link_check(f, TorusClassTable.compute(f)),
                    f"beta(psi^+) = {sphere_class(f.dim)}",
                )
            )
        return cases

    def suite_dual(self) -> list[CaseResult]:
        cases = []
        for name in ("x2y4", "x6", "figure_eight"):
            res = data.load_datum(name)
            psi = milnor_fibre(dl_zeta(res, "plus"))
            cases.append(
                self._compare(
                    f"duality_{name}",
                    "dual",
                    True,
                    duality_milnor_check(psi, 2),
                    "D(psi) = L^{1-d} psi",
                )
            )
        fig = data.load_datum("figure_eight")
        compact = fig.context.parse(data.FIGURE_EIGHT_PSI_COMPACT, fig.base)
        cases.append(
            self._compare(
                "duality_figure_eight_symbolic",
                "dual",
                compact * U**-1,
                dual_class(compact),
                "D[E_i] = L^-1 [E_i], D[E12] = [E12]",
            )
        )
        psi = milnor_fibre(dl_zeta(data.load_datum("x2y4"), "plus"))
        cases.append(
            self._compare(
                "duality_x2y4_explicit",
                "dual",
                MotivicClass.scalar(parse_laurent("L^-1+1")),
                dual_class(psi),
                "D(L+1) = L^-1 + 1",
            )
        )
        return cases

    def suite_parity(self) -> list[CaseResult]:
        cases = []
        fig = data.load_datum("figure_eight")
        samples = [
            fig.context.parse(text, fig.base)
            for text in ("[E1]", "[E2]", "[E12]", data.FIGURE_EIGHT_PSI_COMPACT)
        ]
        rng = random.Random(self.seed)
        for _ in range(20):
            coeffs = {rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(3)}
            samples.append(MotivicClass.scalar(LaurentPoly(coeffs)))
        odd = [str(x) for x in samples if not euler_parity_check(link_relative(x))]
        cases.append(
            self._compare(
                "link_images_are_euler", "parity", "[]", str(odd), "link images have even chi_c"
            )
        )

        x = fig.context.parse("[E1]", fig.base)
        cases.append(
            self._compare(
                "link_squared",
                "parity",
                link_relative(x) * 2,
                link_relative(link_relative(x)),
                "Lambda o Lambda = 2 Lambda",
            )
        )
        cases.append(
            self._flag(
                "link_dual_relation",
                "parity",
                dual_class(link_relative(x)) * U,
                link_relative(dual_class(x)),
                "Lambda o D = L D o Lambda",
                "fails on a compact nonsingular curve: L^-1 [E1] + L [E1] against 2 [E1]",
            )
        )
        cases.append(
            self._compare(
                "pushforward_commutes_with_link",
                "parity",
                link_relative(pushforward_class(x, POINT, context=fig.context)),
                pushforward_class(link_relative(x), POINT, context=fig.context),
                "f_! o Lambda = Lambda o f_! for proper f",
            )
        )
        return cases

    def suite_torus(self) -> list[CaseResult]:
        cases = []
        model = data.torus_model()
        chi_mismatch = []
        values = {}
        for row, level, beta, beta_link in data.TORUS_TABLE + data.TORUS_TABLE_UPPER:
            got = level_set_beta(model, level)
            values[row] = got
            cases.append(
                self._compare(
                    f"fibre {row}", "torus", parse_laurent(beta), got.beta, "torus table"
                )
            )
            cases.append(
                self._compare(
                    f"link {row}", "torus", parse_laurent(beta_link), got.beta_link, "torus table"
                )
            )
            if got.beta_link.chi_c() != sphere_class(2).chi_c() * got.beta.chi_c():
                chi_mismatch.append(row)
        cases.append(
            self._compare(
                "chi_c_fubini",
                "torus",
                "[]",
                str(chi_mismatch),
                "chi_c(h^-1(lk s)) = chi_c(S^1) chi_c(h^-1(s))",
            )
        )
        between = values["s in (s1, s2)"]
        product = sphere_class(2) * between.beta
        cases.append(
            self._compare(
                "beta_fubini_fails",
                "torus",
                "differs",
                "differs" if product != between.beta_link else "equal",
                "beta(h^-1(lk s)) against beta(S^1) beta(h^-1(s))",
                notes=f"{between.beta_link} against {product}",
            )
        )
        return cases

    def suite_cf(self) -> list[CaseResult]:
        cases = self._cf_examples()
        rng = random.Random(self.seed)
        failures: Counter[str] = Counter()
        anti_failures = 0
        identities = (
            "dual_involution",
            "link_squared",
            "link_commutes_with_dual",
            "link_integral_zero",
            "link_is_euler",
            "pushforward_commutes_with_dual",
            "local_link_fubini",
            "pushforward_functorial",
        )
        for _ in range(self.random_cases):
            target = random_complex(rng)
            phi = random_function(rng, target)
            d, lam = cf_dual(phi), cf_link(phi)
            failures["dual_involution"] += cf_dual(d) != phi
            failures["link_squared"] += cf_link(lam) != lam * 2
            failures["link_commutes_with_dual"] += not (cf_link(d) == cf_dual(lam) == -lam)
            anti_failures += cf_link(d) != -cf_dual(lam)
            failures["link_integral_zero"] += cf_integral(lam) != 0
            failures["link_is_euler"] += not cf_is_euler(lam)
            h = random_map_onto(rng, target)
            psi = random_function(rng, h.source)
            failures["pushforward_commutes_with_dual"] += cf_pushforward(
                cf_dual(psi), h
            ) != cf_dual(cf_pushforward(psi, h))
            realized = cf_link(pi_realize(h))
            failures["local_link_fubini"] += any(
                realized([s]) != local_link(h, s).chi_c for s in target.vertices
            )
            g = random_map_onto(rng, h.source)
            chi = random_function(rng, g.source)
            failures["pushforward_functorial"] += cf_pushforward(
                cf_pushforward(chi, g), h
            ) != cf_pushforward(chi, g.compose(h))
        for name in identities:
            cases.append(
                self._compare(
                    name,
                    "cf",
                    0,
                    failures[name],
                    f"failures over {self.random_cases} random complexes",
                )
            )

        closed = ConstructibleFunction.closed_indicator(simplex_complex(2), [0, 1, 2])
        cases.append(
            self._flag(
                "link_dual_anticommutation",
                "cf",
                -cf_dual(cf_link(closed)),
                cf_link(cf_dual(closed)),
                "Lambda o D = -D o Lambda",
                "with Lambda = id - D both sides of Lambda o D = D o Lambda equal -Lambda, so the "
                f"signed relation needs Lambda phi = 0; it fails on {anti_failures} of "
                f"{self.random_cases} random complexes",
            )
        )

        broken = 0
        pairs = max(self.random_cases // 4, 1)
        for _ in range(pairs):
            target = random_complex(rng)
            h1 = random_map_onto(rng, target, injective=True)
            h2 = random_map_onto(rng, target, injective=True)
            product = pi_realize(fibered_product(h1, h2))
            if product != pi_realize(h1) * pi_realize(h2):
                broken += 1
        cases.append(
            self._compare(
                "pi_multiplicative",
                "cf",
                0,
                broken,
                f"failures over {pairs} fibered products",
            )
        )
        return cases

    def _cf_examples(self) -> list[CaseResult]:
        cases = []
        triangle = simplex_complex(2)
        point = ConstructibleFunction.indicator(triangle, [0])
        cases.append(self._compare("dual_of_point", "cf", point, cf_dual(point), "D 1_a = 1_a"))
        cases.append(
            self._compare(
                "link_of_point",
                "cf",
                ConstructibleFunction(triangle),
                cf_link(point),
                "Lambda 1_a = 0",
            )
        )
        open_triangle = ConstructibleFunction.indicator(triangle, [0, 1, 2])
        closed_triangle = ConstructibleFunction.closed_indicator(triangle, [0, 1, 2])
        cases.append(
            self._compare(
                "dual_of_open_simplex",
                "cf",
                closed_triangle,
                cf_dual(open_triangle),
                "D 1_sigma = (-1)^d 1_closure",
            )
        )
        cases.append(
            self._compare(
                "dual_of_closed_simplex",
                "cf",
                open_triangle,
                cf_dual(closed_triangle),
                "D 1_closure = (-1)^d 1_sigma",
            )
        )
        cases.append(
            self._compare(
                "link_of_closed_simplex",
                "cf",
                closed_triangle - open_triangle,
                cf_link(closed_triangle),
                "Lambda 1_closure = 1_closure + (-1)^(d-1) 1_sigma",
            )
        )
        circle = cycle_complex(3)
        one = ConstructibleFunction.constant(circle)
        cases.append(
            self._compare(
                "link_of_circle", "cf", one * 2, cf_link(one), "(1 + (-1)^(d-1)) 1_X, d = 1"
            )
        )
        cover = double_cover()
        cases.append(
            self._compare(
                "double_cover_realization",
                "cf",
                one * 2,
                pi_realize(cover),
                "the double cover of the circle realizes 2 1_S1",
            )
        )
        cases.append(
            self._compare(
                "double_cover_local_link",
                "cf",
                4,
                local_link(cover, 0).chi_c,
                "four points over the link of a vertex",
            )
        )
        return cases

    async def run_suite(self, suite: str = "all") -> dict[str, Any]:
        """
        Run one suite or all of them.

        Args:
            suite: 'all' or one of SUITES

        Returns:
            Dictionary with status, cases and a verdict summary
        """
        logger.info(f"Running validation suite: {suite}")
        names = SUITES if suite == "all" else (suite,)
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            return {
                "status": "error",
                "suite": suite,
                "error": f"Unknown suite {suite}; choose from all, {', '.join(SUITES)}",
            }
        results = await asyncio.gather(
            *(asyncio.to_thread(self._run_guarded, name) for name in names)
        )
        cases = [case for batch in results for case in batch]
        summary = Counter(case.verdict for case in cases)
        logger.info(f"Suite {suite}: {dict(summary)}")
        return {
            "status": "success",
            "suite": suite,
            "cases": [case.model_dump() for case in cases],
            "summary": {v: summary.get(v, 0) for v in ("PASS", "FAIL", "FLAGGED")},
        }

    def _run_guarded(self, name: str) -> list[CaseResult]:
        try:
            return getattr(self, f"suite_{name}")()
        except MotivicError as e:
            logger.error(f"Suite {name} aborted: {e}", exc_info=True)
            return [
                CaseResult(
                    name=name,
                    suite=name,
                    expected="suite completes",
                    got=f"{type(e).__name__}: {e}",
                    verdict="FAIL",
                )
            ]


def double_cover() -> SimplicialMap:
    """Hexagon wrapped twice around the boundary of a triangle."""
    hexagon = cycle_complex(6)
    return SimplicialMap(hexagon, cycle_complex(3), {i: i % 3 for i in range(6)})
