"""Exception hierarchy shared by every ergodfa module."""


class ErgodfaError(Exception):
    pass


class InvalidInput(ErgodfaError, ValueError):
    """A state id, symbol or automaton field is out of range or malformed."""


class NonSurjectiveMap(InvalidInput):
    pass


class TerminationMismatch(InvalidInput):
    """Two states merged by a merge map disagree on their termination bit."""


class EmptyTransition(InvalidInput):
    """Some (state, symbol) pair has no successor."""


class NotClosedClass(InvalidInput):
    pass


class NotTrimmed(InvalidInput):
    pass


class AlphabetMismatch(InvalidInput):
    pass


class InvalidSpec(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class InvalidAlphabet(InvalidInput):
    pass


class DomainError(InvalidInput):
    pass


class InvalidRange(InvalidInput):
    pass


class BudgetExceeded(ErgodfaError):
    pass


class NotConverged(ErgodfaError):
    """Power iteration stopped without settling.

    Either the iteration cap was reached or the iterates came back to an
    earlier vector exactly (``cycle_length`` is then set to the gap, a
    multiple of the orbit's true length).  Both are
    expected for periodic chains, so callers usually catch this and record
    it.  The last iterate is kept on ``last``.
    """

    def __init__(self, max_iters, last=None, delta=None, cycle_length=None):
        if cycle_length is None:
            msg = f"power iteration did not converge within {max_iters} iterations"
        else:
            msg = f"power iteration repeated the iterate from {cycle_length} steps earlier"
        super().__init__(msg + ("" if delta is None else f" (last step L1 change {delta:.3g})"))
        self.cycle_length = cycle_length
        self.max_iters = max_iters
        self.last = last
        self.delta = delta


class CheckFailed(ErgodfaError):
    """A verification check found a violating instance (kept on ``where``)."""

    def __init__(self, check, where, detail=""):
        super().__init__(f"{check} failed at {where}" + (f": {detail}" if detail else ""))
        self.check = check
        self.where = where
        self.detail = detail
