"""Exception hierarchy shared by every bocklift module."""


class BockliftError(Exception):
    """Base class for all errors raised by bocklift."""


class DimensionMismatch(BockliftError, ValueError):
    pass


class NoSolution(BockliftError):
    pass


class ValidationError(BockliftError):
    pass


class CommutativityViolation(ValidationError):
    """H_X H_Z^T is nonzero mod 2; ``entry`` is the first offending (row_x, row_z)."""

    def __init__(self, entry, value):
        self.entry = entry
        self.value = value
        super().__init__(f"H_X H_Z^T has odd entry {value} at {entry}")


class IllDefinedHomology(BockliftError):
    def __init__(self, level, commutativity):
        self.level = level
        self.commutativity = commutativity
        super().__init__(
            f"homology at level {level} is ill-defined: "
            f"H_X H_Z^T vanishes only mod 2^{commutativity}"
        )


class CommutativityTooLow(IllDefinedHomology):
    pass


class NotACycle(BockliftError):
    def __init__(self, level):
        self.level = level
        super().__init__(f"theta is not a cycle: H_X theta != 0 mod 2^{level}")


class NotACocycle(BockliftError):
    pass


class CapExceeded(BockliftError):
    pass


class LevelMismatch(BockliftError):
    pass


class NotLogical(BockliftError):
    """A phase vector is not physically logical; ``role`` says which input."""

    def __init__(self, level, offending, role="theta"):
        self.level = level
        self.offending = offending
        self.role = role
        super().__init__(
            f"{role} is not logical at level {level}; offending coset {offending}"
        )


class Obstructed(BockliftError):
    """The Bockstein defect is outside Im(H_X mod 2): no lift exists."""

    def __init__(self, level, defect):
        self.level = level
        self.defect = tuple(int(x) for x in defect)
        super().__init__(f"nontrivial Bockstein at level {level}: defect {self.defect}")


class PairingHypothesisViolated(BockliftError):
    pass


class PairingLiftFailed(BockliftError):
    """The pairing-preserving linear system had no solution although a lift exists."""


class HypothesisViolated(BockliftError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class ChainLiftUnsolvable(BockliftError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__("residual is outside the image of (A, B) -> A H_Z^T + H_X B^T")


class ParseError(BockliftError, ValueError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class UnknownCode(BockliftError, KeyError):
    def __str__(self):
        return f"unknown catalog code {self.args[0]!r}"
