"""Exception hierarchy shared by every module of the toolkit."""


class HFError(Exception):
    """Base class for all toolkit errors."""


class DomainError(HFError, ValueError):
    """A point or interval lies outside the domain of a map."""


class ResourceError(HFError):
    """A configured size cap was exceeded."""


class CertError(HFError):
    """A horseshoe certificate failed verification or cannot be used."""


class AlphabetMismatch(HFError, ValueError):
    pass


class PlateauError(HFError):
    """An orbit point is not strictly inside a lap of nonzero slope."""


class NonEventuallyPeriodicGuard(HFError):
    """A forward orbit exceeded the configured length cap."""


class OrbitError(HFError):
    pass


class CollarOverlap(HFError):
    pass


class PreconditionError(HFError):
    pass


class ParseError(HFError, ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)
