class BoundsError(IndexError):
    """A span does not fit inside its document, or is empty."""


class ResourceError(ValueError):
    """A rule resource (gazetteer, rule file, lexicon, record file) failed to parse."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += str(source)
        if line is not None:
            where += f"{':' if where else 'line '}{line}"
        super().__init__(f"{where}: {message}" if where else message)


class DateNormalizationError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Records reference ids that do not exist."""
