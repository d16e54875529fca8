"""Exception hierarchy.

Every error carries a stable ``code`` string so the CLI and JSON reports can
surface it without parsing messages.
"""


class VispathError(Exception):
    code = "ERROR"


class InputError(VispathError):
    """Bad user input: malformed files, invalid polygons or paths."""

    code = "INPUT_ERROR"


class ParseError(InputError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotSimple(InputError):
    code = "NOT_SIMPLE"


class Degenerate(InputError):
    code = "DEGENERATE"


class TooFewVertices(InputError):
    code = "TOO_FEW_VERTICES"


class PointOutside(InputError):
    code = "POINT_OUTSIDE"


class NotOnBoundary(InputError):
    code = "NOT_ON_BOUNDARY"


class PathOutside(InputError):
    code = "PATH_OUTSIDE"


class RayExitsImmediately(VispathError):
    code = "RAY_EXITS_IMMEDIATELY"


class NotPocketVertex(VispathError):
    code = "NOT_POCKET_VERTEX"


class NoEssentialCuts(VispathError):
    code = "NO_ESSENTIAL_CUTS"


class GenerationExhausted(VispathError):
    code = "GENERATION_EXHAUSTED"


class CannotAvoid(VispathError):
    code = "CANNOT_AVOID"


class Falsification(VispathError):
    """A lemma's conclusion failed on concrete input.

    These never occur on valid inputs if the underlying argument is sound, so
    callers should treat them as test failures rather than recover.
    """

    code = "FALSIFICATION"


class NoWitness(Falsification):
    code = "NO_WITNESS"


class QDisconnected(Falsification):
    code = "Q_DISCONNECTED"
