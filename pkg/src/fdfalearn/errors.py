"""Exception types shared across the package."""


class FdfaLearnError(Exception):
    pass


class InputError(FdfaLearnError, ValueError):
    """Bad user input: unknown letter, unknown state, alphabet mismatch."""


class ParseError(InputError):
    """Malformed automaton or word text."""


class PreconditionError(InputError):
    pass


class ConstructionError(FdfaLearnError):
    """An automaton construction was handed a malformed automaton."""


class InvariantViolation(FdfaLearnError, AssertionError):
    """Something that cannot happen on correct inputs happened."""


class InvalidCounterexample(FdfaLearnError):
    pass


class TeacherAbort(FdfaLearnError):
    """The over-approximation teacher could not produce a valid counterexample."""

    def __init__(self, witness, message="no valid counterexample for spurious negative witness"):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class LearningTimeout(FdfaLearnError):
    pass
