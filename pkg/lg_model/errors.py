"""
Error Types
Every failure the library can signal, each with a CLI exit code
"""
from typing import Any, Optional


class LGMirrorError(Exception):
    """
    Base error for the library
    Carries a machine-readable detail payload and the exit code used by the CLI
    """
    exit_code = 1

    def __init__(self, detail: Any = None, exit_code: Optional[int] = None):
        self.detail = detail if detail is not None else self.__class__.__name__
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(str(self.detail))

    def to_dict(self) -> dict:
        return {
            "error": self.__class__.__name__,
            "detail": self.detail,
            "exit_code": self.exit_code,
        }


# ============ exactmath / polynomial ============

class SingularMatrix(LGMirrorError):
    exit_code = 10


class ChargeOutOfRange(LGMirrorError):
    exit_code = 11


class NotInvertibleType(LGMirrorError):
    exit_code = 12


class NonIntegerMilnor(LGMirrorError):
    exit_code = 13


# ============ symmetry / milnor / statespace ============

class InvalidElement(LGMirrorError):
    exit_code = 20


class GroupTooLarge(LGMirrorError):
    exit_code = 21


class DegenerateRestriction(LGMirrorError):
    exit_code = 22


class NonIntegralDegree(LGMirrorError):
    exit_code = 23


class NotAAdmissible(LGMirrorError):
    exit_code = 24


class NotCalabiYau(LGMirrorError):
    exit_code = 25


class NonScalarRelation(LGMirrorError):
    exit_code = 26


# ============ fjrw ============

class UnstableCurve(LGMirrorError):
    exit_code = 30


class NotConcave(LGMirrorError):
    exit_code = 31


class BroadNodeEncountered(LGMirrorError):
    exit_code = 32


# ============ parsing ============

class PolynomialSyntaxError(LGMirrorError):
    """Raised by the DSL parser; position is 1-based line/column plus 0-based byte offset"""
    exit_code = 2

    def __init__(self, message: str, line: int = 1, column: int = 1, offset: int = 0):
        self.line = line
        self.column = column
        self.offset = offset
        super().__init__({
            "message": message,
            "line": line,
            "column": column,
            "offset": offset,
        })


class NotSquare(LGMirrorError):
    exit_code = 3


class RepeatedMonomial(LGMirrorError):
    exit_code = 4
