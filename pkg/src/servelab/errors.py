"""Exception hierarchy shared across the package."""


class ServelabError(Exception):
    """Base class for every error raised by this package."""


class RangeError(ServelabError):
    """A numeric argument is outside its documented range."""


class SingularProfile(ServelabError):
    """The deuce-closure denominator vanished.

    Happens for profiles like (p_F, p_S) = (1, 0): the alternating deuce
    cycle then never terminates, so no closed answer exists.
    """


class MixedServerBreakpoint(ServelabError):
    """Break-point metrics were requested for a schedule where the serve
    changes hands; break points are only defined when one player serves
    every point."""


class DeuceCapExceeded(ServelabError):
    """A simulated deuce ran past the configured cycle cap, which signals
    a pathological profile such as (1, 0)."""


class DegenerateProfile(ServelabError):
    """A solver input makes the problem ill-posed (e.g. the blended and
    single-serve point probabilities coincide, so no cutoff can move the
    game-win probability)."""


class ParseError(ServelabError):
    """A stats table row could not be parsed.

    Attributes:
        line_no: 1-based line number in the source, when known.
    """

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ConsistencyError(ServelabError):
    """Two implementations that must agree (closed form vs exact engine)
    diverged beyond tolerance; indicates a bug, not bad input."""
