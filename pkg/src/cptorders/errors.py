"""Exception hierarchy shared by all modules."""


class CptError(Exception):
    """Base class for every error raised by this package."""


class CycleError(CptError):
    pass


class UnknownElement(CptError, KeyError):
    pass


class GroundSetMismatch(CptError):
    pass


class BudgetExceeded(CptError):
    """A configured search budget ran out before the search was conclusive."""


class TooSmall(CptError):
    pass


class NotAModule(CptError):
    pass


class NotAPartitionOfModules(CptError):
    pass


class NameCollision(CptError):
    pass


class VertexNotInTree(CptError):
    pass


class EdgeNotInTree(CptError):
    pass


class ElementSetMismatch(CptError):
    pass


class NoCommonCore(CptError):
    pass


class PreconditionFailed(CptError):
    """A rewrite was asked to act on a configuration outside its hypotheses."""


class BlockedClique(PreconditionFailed):
    pass


class NoLocalRewrite(PreconditionFailed):
    """The hypotheses hold but no rewrite confined to the neighbourhood of
    the trivial vertex exists; a different model would be needed."""


class NotDuallyCptSuspicion(CptError):
    """A verification step failed; the input was probably not a valid
    model of a dually-CPT poset (or an internal invariant broke)."""


class NotAssociated(CptError):
    pass


class NotFlagged(PreconditionFailed):
    pass


class TrivialPath(PreconditionFailed):
    pass


class PathTooShort(PreconditionFailed):
    pass


class EndsOnTrivialPath(PreconditionFailed):
    pass


class MalformedCiModel(CptError):
    pass


class ParseError(CptError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
