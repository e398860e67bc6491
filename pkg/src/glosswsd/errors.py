"""Exception types raised across the pipeline."""


class GlossWSDError(Exception):
    pass


class ParseError(GlossWSDError, ValueError):
    """Malformed input; carries the file and line (or element) where it was found."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class IntegrityError(GlossWSDError, ValueError):
    """Cross-reference or invariant violation (dangling ids, forbidden sources, ...)."""


class EmptyInputError(GlossWSDError, ValueError):
    pass


class UnknownSynsetError(GlossWSDError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown synset"
