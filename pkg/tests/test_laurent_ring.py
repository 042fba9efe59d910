"""Tests for exact Laurent polynomial arithmetic."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add parent directory to path so we can import src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.real_motivic.errors import InvalidInput, PolynomialSyntaxError
from src.real_motivic.tools.laurent_ring import (
    ONE,
    U,
    LaurentPoly,
    laurent_arith,
    laurent_dual,
    laurent_eval,
    parse_laurent,
)


class TestLaurentArithmetic:
    """Ring operations in Z[u, u^-1]."""

    def test_zero_coefficients_are_dropped(self) -> None:
        p = LaurentPoly({0: 1, 2: 0, -1: 0})
        assert p.coeffs == {0: 1}
        assert LaurentPoly({3: 0}).is_zero()

    def test_add_sub_mul(self) -> None:
        a = parse_laurent("u + 1")
        b = parse_laurent("u - 1")
        assert laurent_arith(a, b, "add") == 2 * U
        assert laurent_arith(a, b, "sub") == 2
        assert laurent_arith(a, b, "mul") == parse_laurent("u^2 - 1")

    def test_unknown_operation(self) -> None:
        with pytest.raises(InvalidInput):
            laurent_arith(ONE, U, "div")

    def test_negative_power_of_unit(self) -> None:
        assert U**-2 == LaurentPoly.monomial(-2)
        assert (-U) ** -1 == LaurentPoly.monomial(-1, -1)
        with pytest.raises(InvalidInput):
            _ = (U + 1) ** -1

    def test_shift_and_degrees(self) -> None:
        p = parse_laurent("u^-1 + 2*u^3")
        assert p.degree() == 3
        assert p.low_degree() == -1
        assert p.shift(2) == parse_laurent("u + 2*u^5")
        assert LaurentPoly().degree() is None


class TestDualityAndEvaluation:
    """u -> 1/u and exact evaluation."""

    def test_dual_is_involution(self) -> None:
        p = parse_laurent("3*u^-2 - u + 7")
        assert laurent_dual(laurent_dual(p)) == p
        assert laurent_dual(U + 1) == parse_laurent("u^-1 + 1")

    def test_chi_c_is_value_at_minus_one(self) -> None:
        assert (U + 1).chi_c() == 0
        assert (U - 1).chi_c() == -2
        assert parse_laurent("2*(u+1)").chi_c() == 0
        assert ONE.chi_c() == 1

    def test_exact_evaluation(self) -> None:
        p = parse_laurent("u^-1 + u")
        assert laurent_eval(p, 2) == Fraction(5, 2)
        with pytest.raises(InvalidInput):
            laurent_eval(p, 0)


def _random_laurent(rng: random.Random) -> LaurentPoly:
    return LaurentPoly({rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(rng.randint(0, 4))})


class TestRingMorphisms:
    """Duality and evaluation respect the ring structure."""

    @pytest.mark.parametrize("seed", range(3))
    def test_dual_is_a_ring_morphism(self, seed: int) -> None:
        rng = random.Random(seed)
        assert laurent_dual(ONE) == ONE
        for _ in range(30):
            a, b = _random_laurent(rng), _random_laurent(rng)
            assert laurent_dual(a + b) == laurent_dual(a) + laurent_dual(b)
            assert laurent_dual(a * b) == laurent_dual(a) * laurent_dual(b)

    @pytest.mark.parametrize("seed", range(3))
    def test_evaluation_is_multiplicative(self, seed: int) -> None:
        rng = random.Random(seed)
        for _ in range(30):
            a, b = _random_laurent(rng), _random_laurent(rng)
            x = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5))
            assert laurent_eval(a * b, x) == laurent_eval(a, x) * laurent_eval(b, x)
            assert laurent_eval(a + b, x) == laurent_eval(a, x) + laurent_eval(b, x)
            assert laurent_eval(laurent_dual(a), x) == laurent_eval(a, 1 / x)


class TestParsingAndFormatting:
    """Text forms."""

    def test_format_ascending(self) -> None:
        assert str(parse_laurent("-u^2 + 3 + 2*u^-1")) == "2*u^-1 + 3 - u^2"
        assert str(LaurentPoly()) == "0"
        assert parse_laurent("L+1").format("L") == "1 + L"

    def test_l_is_alias_for_u(self) -> None:
        assert parse_laurent("L^2 - L") == parse_laurent("u^2 - u")

    def test_implicit_multiplication_and_parentheses(self) -> None:
        assert parse_laurent("2(u+1)") == 2 * U + 2
        assert parse_laurent("(u-1)^2") == parse_laurent("u^2 - 2*u + 1")

    @pytest.mark.parametrize("text", ["", "u +", "u ^ x", "2 % u", "v", "(u+1"])
    def test_syntax_errors(self, text: str) -> None:
        with pytest.raises(PolynomialSyntaxError):
            parse_laurent(text)

    def test_json_keys_are_exponents(self) -> None:
        assert parse_laurent("u^-1 + 4").to_json() == {"-1": 1, "0": 4}
