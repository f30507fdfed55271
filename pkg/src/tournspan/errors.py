"""Exception hierarchy shared by every module."""


class TournamentError(ValueError):
    pass


class NotATournament(TournamentError):
    pass


class SelfLoop(TournamentError):
    pass


class IndexOutOfRange(TournamentError):
    pass


class SameVertex(TournamentError):
    pass


class EmptyVertexSet(TournamentError):
    pass


class InfeasibleBudget(TournamentError):
    pass


class OrderTooLarge(TournamentError):
    pass


class ParseError(TournamentError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NoSuchArc(TournamentError):
    pass


class IrregularityExceeded(TournamentError):
    pass


class NotStrong(TournamentError):
    pass


class NotInsertable(TournamentError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ran out of node expansions before deciding."""


class NotConstructible(TournamentError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class OracleTooLarge(NotConstructible):
    pass
