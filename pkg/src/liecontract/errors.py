"""Exception types raised across the package."""


class LieError(Exception):
    """Base class for every error raised by liecontract."""


# exact arithmetic

class UnmappedVariable(LieError, KeyError):
    pass


class EmptySeries(LieError, ValueError):
    pass


class ParseError(LieError, ValueError):
    """Malformed polynomial, algebra or scaling text.

    ``line`` is the 1-based line of the offending input when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# algebra structure

class DuplicateGenerator(LieError, ValueError):
    pass


class DuplicateBracketPair(LieError, ValueError):
    pass


class UnknownGeneratorInBracket(LieError, ValueError):
    pass


class UnknownGenerator(LieError, KeyError):
    pass


class ForeignGenerator(LieError, ValueError):
    pass


class ForeignVariable(LieError, ValueError):
    pass


class SingularBasisChange(LieError, ValueError):
    pass


class NotClosed(LieError, ValueError):
    """A generator subset is not closed under the bracket.

    ``witness`` is a pair ``(a, b)`` whose bracket leaves the span.
    """

    def __init__(self, witness, leaving):
        self.witness = witness
        self.leaving = leaving
        a, b = witness
        super().__init__(
            f"[{a}, {b}] has components outside the subset: {', '.join(leaving)}"
        )


class NotBijective(LieError, ValueError):
    pass


# contractions

class IncompleteScaling(LieError, ValueError):
    pass


class IllDefinedContraction(LieError, ValueError):
    """Some rescaled structure constants diverge as epsilon -> 0.

    ``offending`` lists every ``(a, b, c, exponent)`` with a negative exponent.
    """

    def __init__(self, offending):
        self.offending = list(offending)
        parts = [f"[{a}, {b}] -> {c} ~ eps^{e}" for a, b, c, e in self.offending]
        super().__init__("ill-defined contraction: " + "; ".join(parts))


# invariants

class NotInvariant(LieError, ValueError):
    pass


class RankUnstable(LieError, RuntimeError):
    pass


class UnknownCatalogName(LieError, KeyError):
    pass
