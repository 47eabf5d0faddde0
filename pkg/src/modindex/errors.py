"""Exception hierarchy shared by the library and the command line."""


class ModIndexError(Exception):
    """Base class for user-facing analysis errors."""


class UsageError(ModIndexError):
    """Bad input supplied by the caller: missing paths, malformed manifests, bad flags."""


class NothingToAnalyze(ModIndexError):
    """The input contains no classes to measure."""

    def __init__(self, message: str = "nothing to analyze"):
        super().__init__(message)


class EmptyPackage(ModIndexError):
    pass
