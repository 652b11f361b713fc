"""Exception hierarchy shared by the stackylg modules."""


class StackyError(Exception):
    pass


class DomainError(StackyError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(DomainError):
    pass


class InvalidModulusError(DomainError):
    pass


class InvalidDiscriminantError(DomainError):
    pass


class PreconditionError(StackyError, ValueError):
    """A hypothesis required by the operation does not hold.

    ``hypothesis`` names the failed check.
    """

    def __init__(self, hypothesis, message=None):
        self.hypothesis = hypothesis
        super().__init__(message or f"hypothesis failed: {hypothesis}")


class WrongRoutineError(StackyError, ValueError):
    pass


class VerificationFailed(StackyError, RuntimeError):
    """A witness search or re-verification failed at ``place``."""

    def __init__(self, place, message):
        self.place = place
        super().__init__(f"verification failed at {place}: {message}")


class CounterexampleRefuted(StackyError, RuntimeError):
    """The input is not a counterexample: a global point or an unobstructed class exists."""

    def __init__(self, message, evidence=None):
        self.evidence = evidence
        super().__init__(message)


class CertificateParseError(StackyError, ValueError):
    pass
