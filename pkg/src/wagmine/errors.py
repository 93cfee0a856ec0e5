"""Exception hierarchy shared by all pipeline stages."""


class WagmineError(Exception):
    """Base class for every error raised by this package."""


class InputError(WagmineError):
    """User or input problem (CLI exit status 1)."""


class CorpusIOError(InputError, OSError):
    """A corpus, lexicon or database file could not be read."""


class EmptySentence(InputError):
    pass


class EmptyDocument(InputError):
    pass


class EmptyDb(InputError):
    pass


class EmptyInput(InputError):
    pass


class SentenceNotInGraph(WagmineError, KeyError):
    pass


class CycleDetected(WagmineError):
    """A word-alignment graph contains a cycle.

    Valid compatible groups never produce one, so this signals an internal
    invariant breach (CLI exit status 2).
    """
