"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command layer can
translate failures without a lookup table.
"""


class EulerSeidelError(Exception):
    exit_code = 1


class ParseError(EulerSeidelError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} at position {position}")


class EvaluationError(EulerSeidelError, ArithmeticError):
    exit_code = 3


class DivisionByZero(EvaluationError, ZeroDivisionError):
    """A coefficient expression divided by zero at lattice site (n, k)."""

    def __init__(self, n, k, detail=""):
        self.n = n
        self.k = k
        msg = f"division by zero evaluating coefficient at (n={n}, k={k})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InsufficientData(EvaluationError, IndexError):
    pass


class ClassMismatch(EulerSeidelError, ValueError):
    exit_code = 4


class AlgebraError(EulerSeidelError, ArithmeticError):
    exit_code = 5


class ZeroConstantTerm(AlgebraError, ZeroDivisionError):
    pass


class NonzeroInnerConstant(AlgebraError, ValueError):
    pass


class NotInvertible(AlgebraError, ValueError):
    pass


class BadConstantTerm(AlgebraError, ValueError):
    pass


class IndexOutOfRange(AlgebraError, IndexError):
    pass


class OrderTooSmall(AlgebraError, ValueError):
    pass


class FlavorMismatch(AlgebraError, TypeError):
    pass


class DegenerateMatrix(AlgebraError, ValueError):
    pass


class SequenceTooShort(AlgebraError, ValueError):
    pass


class BadParameters(EulerSeidelError, ValueError):
    exit_code = 2


class NonVerifiable(EulerSeidelError):
    exit_code = 6
