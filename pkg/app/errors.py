"""Domain errors.

Every error carries the machine-readable ``code`` used in JSON error objects, both by
the CLI (exit code 2) and by the routers (HTTP 422).
"""


class CurveError(Exception):
    code = "CurveError"
    status_code = 422

    def __init__(self, message: str | None = None):
        super().__init__(message or self.code)
        self.message = message or self.code

    def to_dict(self) -> dict:
        return {"error": self.code, "message": self.message}


# input
class FormSyntaxError(CurveError):
    code = "SyntaxError"


class NotHomogeneous(CurveError):
    code = "NotHomogeneous"


class ZeroForm(CurveError):
    code = "ZeroForm"


class NotIrreducible(CurveError):
    code = "NotIrreducible"


# resolution
class NonRationalSingularity(CurveError):
    code = "NonRationalSingularity"


class PositiveDimensionalSingularLocus(CurveError):
    code = "PositiveDimensionalSingularLocus"


class DepthExceeded(CurveError):
    code = "DepthExceeded"


class NotClosed(CurveError):
    code = "NotClosed"


# linear systems
class EmptySystem(CurveError):
    code = "EmptySystem"


class FixedComponentPresent(CurveError):
    code = "FixedComponentPresent"


class NonRationalBasePoint(CurveError):
    code = "NonRationalBasePoint"


class NotMember(CurveError):
    code = "NotMember"


# rationality
class NotNonnegativeType(CurveError):
    code = "NotNonnegativeType"


class NotRational(CurveError):
    code = "NotRational"


class GenusNegative(CurveError):
    code = "GenusNegative"
