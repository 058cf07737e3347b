"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` that the command line
front end prints as ``error: CODE message``.
"""

from __future__ import annotations


class PowrecError(Exception):
    code = "POWREC"


class RangeError(PowrecError):
    code = "RANGE"


class AssociativityError(PowrecError):
    code = "ASSOCIATIVITY"

    def __init__(self, triple: tuple[int, int, int]):
        x, y, z = triple
        super().__init__(f"(x*y)*z != x*(y*z) for (x, y, z) = ({x}, {y}, {z})")
        self.triple = triple


class SizeLimitError(PowrecError):
    code = "SIZE_LIMIT"


class BoundExceededError(PowrecError):
    code = "BOUND_EXCEEDED"


class NotHomomorphismError(PowrecError):
    code = "NOT_HOMOMORPHISM"


class MissingSingletonError(PowrecError):
    code = "MISSING_SINGLETON"


class EmptyFiberError(PowrecError):
    code = "EMPTY_FIBER"


class AlphabetMismatchError(PowrecError):
    code = "ALPHABET_MISMATCH"


class RegexSyntaxError(PowrecError):
    code = "SYNTAX"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FormulaSyntaxError(RegexSyntaxError):
    pass


class UnboundVariableError(PowrecError):
    code = "UNBOUND_VARIABLE"


class TrackLimitError(PowrecError):
    code = "TRACK_LIMIT"


class FormatError(PowrecError):
    code = "FORMAT"
