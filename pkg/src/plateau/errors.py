"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for input/parse problems, 3 for precondition violations, 4 for
certificate or identity failures.
"""


class PlateauError(Exception):
    exit_code = 1


class InputError(PlateauError, ValueError):
    exit_code = 2


class NonPowerOfTwoLength(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class VariableOutOfRange(InputError):
    pass


class PreconditionViolation(PlateauError):
    exit_code = 3


class KindMismatch(PreconditionViolation):
    pass


class ParityError(PreconditionViolation):
    pass


class SpecialWeight(PreconditionViolation):
    pass


class LoopedGraph(PreconditionViolation):
    pass


class TooLargeForDense(PreconditionViolation):
    pass


class DenominatorZero(PreconditionViolation):
    pass


class NotThreeEigenvalues(PreconditionViolation):
    pass


class CertificateFailure(PlateauError):
    """An exact identity that must hold did not."""

    exit_code = 4


class PaperConsistencyViolation(CertificateFailure):
    pass


class NonIntegerParameters(CertificateFailure):
    pass


class IdentityFailure(CertificateFailure):
    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


class RootFailure(CertificateFailure):
    def __init__(self, message: str, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class DegreeEquationFailure(CertificateFailure):
    pass


class TheoremViolation(CertificateFailure):
    pass


class MatrixOverflow(CertificateFailure, OverflowError):
    pass
