"""Errors raised by the RDF and query parsers."""

from __future__ import annotations


class ParseError(ValueError):
    """Syntax error carrying a 1-based line and column.

    The message names the token class the parser expected at that position.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UndefinedPrefixError(ParseError):
    """A prefixed name referenced a prefix that was never declared."""

    def __init__(self, prefix: str, line: int, column: int):
        super().__init__(f"undefined prefix '{prefix}:'", line, column)
        self.prefix = prefix
