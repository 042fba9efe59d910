"""Exception hierarchy for the real motivic engine."""


class MotivicError(Exception):
    """Base class for every error raised by the engine."""


class InvalidInput(MotivicError):
    """Malformed user input (JSON, expressions, arguments)."""


class BaseMismatch(MotivicError):
    """Two classes over different bases were combined."""


class UnrepresentableProduct(MotivicError):
    """Product of two classes that both carry opaque generators."""


class DualityUndefined(MotivicError):
    """Duality requested on generators missing the proper/nonsingular/compact flags."""

    def __init__(self, names: list[str]) -> None:
        self.names = names
        super().__init__(f"duality undefined for generators: {', '.join(names)}")


class UnknownBaseMorphism(MotivicError):
    """No declared base morphism between the requested bases."""


class PropernessLost(MotivicError):
    """A proper generator was pushed along a non-proper base morphism."""


class PolynomialSyntaxError(InvalidInput):
    """Syntax error in a polynomial or class expression."""

    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownVariable(InvalidInput):
    """A variable outside the declared variable list."""


class NonSimplicialCone(MotivicError):
    """A dual cone whose generators are linearly dependent."""


class MissingTableEntry(MotivicError):
    """A torus class table lacks an entry needed by the Newton route."""


class ZeroMultiplicityGenerator(MotivicError):
    """A denominator generator of P(gamma) has multiplicity zero."""


class NotWeightedHomogeneous(MotivicError):
    """The polynomial admits no positive weight vector."""


class NotConvenient(MotivicError):
    """The Newton polyhedron misses some coordinate axis."""


class SingularLevelCurve(MotivicError):
    """A level curve has a singular point inside the requested domain."""


class UnsupportedDimension(MotivicError):
    """The computation needs more effective variables than supported."""


class MonkeySaddle(MotivicError):
    """A level-set vertex of valence six or more."""


class NonSurfaceInput(MotivicError):
    """A heighted complex that is not a closed triangulated surface."""


class DivergentBlock(MotivicError):
    """A geometric block with k > l has no limit at infinity."""


class MissingStratumClass(MotivicError):
    """A resolution stratum lacks the class for the requested sign."""
