"""Exception types shared across the package."""


class SubstLyapError(Exception):
    """Base class for all package errors."""


class RuleSyntaxError(SubstLyapError):
    """Rule text or JSON does not match the input grammar."""


class LengthMismatch(SubstLyapError):
    """Substituted words do not share a single length L >= 2."""


class UnknownLetter(SubstLyapError):
    """An image word uses a symbol that was not declared in the alphabet."""


class NotBinary(SubstLyapError):
    """Operation requires a two-letter alphabet."""


class NotPrimitive(SubstLyapError):
    """Operation requires a primitive substitution."""


class NotAFixedSeed(SubstLyapError):
    """No power of the substitution fixes the seed's leading letter."""


class NoSuchSymmetry(SubstLyapError):
    """The requested letter pairing is not a symmetry of the substitution."""


class ZeroPolynomial(SubstLyapError):
    """The zero polynomial admits neither roots nor a Mahler measure."""


class DegenerateSubstitution(SubstLyapError):
    """All letters substitute to the same word; det B(k) vanishes identically."""


class SingularFamily(SubstLyapError):
    """det B(k) vanishes identically; the outward cocycle is undefined."""


class ResampleExhausted(SubstLyapError):
    """Repeated orbit draws kept hitting near-singular matrices."""
