"""Exception hierarchy shared by every module."""


class ClausalError(Exception):
    pass


class ZeroLiteralError(ClausalError, ValueError):
    pass


class DimacsError(ClausalError, ValueError):
    pass


class ProofFormatError(ClausalError, ValueError):
    pass


class PivotNotInClause(ClausalError, ValueError):
    pass


class WitnessNotSubset(ClausalError, ValueError):
    pass


class EmptyWitness(ClausalError, ValueError):
    pass


class NotUpDerivable(ClausalError):
    pass


class NotARat(ClausalError):
    pass


class TooManyVariables(ClausalError):
    pass


class SatisfiableInput(ClausalError):
    pass


class InputNotVerified(ClausalError):
    pass


class UnsupportedSystem(ClausalError, ValueError):
    pass


class StepNotRestrictable(ClausalError):
    pass
