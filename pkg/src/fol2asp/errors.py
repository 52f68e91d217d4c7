"""Exception types shared across the package."""

from __future__ import annotations


class Fol2AspError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(Fol2AspError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {col}" if col is not None else "")
        super().__init__(message + loc)


class UnknownSymbolError(ParseError):
    pass


class SortMismatchError(ParseError):
    pass


class PathError(Fol2AspError):
    """A formula path does not address a valid occurrence."""


class NotAlmostUniversalError(Fol2AspError):
    """Quantifier elimination refused: the input has a singular quantifier
    occurrence that is not negated relative to the intensional predicates,
    so the translation would not preserve stable models."""

    def __init__(self, witnesses):
        self.witnesses = tuple(witnesses)
        super().__init__(
            "formula is not almost universal; offending quantifier paths: "
            + ", ".join(str(list(w)) for w in self.witnesses)
        )


class CanonicityViolationError(Fol2AspError):
    def __init__(self, report, context=""):
        self.report = report
        msg = "description violates the required canonicity"
        if context:
            msg += f" ({context})"
        super().__init__(msg + ": " + "; ".join(
            f"{pred} at {list(path)} clause {clause}" for pred, path, clause in report.witnesses))


class OracleLimitError(Fol2AspError):
    """The enumeration space exceeds the configured bound.  The oracle
    refuses rather than approximate; use an external solver instead."""


class EmitError(Fol2AspError):
    pass


class TransformError(Fol2AspError):
    """A rewrite was applied to input outside its precondition."""
