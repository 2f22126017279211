"""Character-level scanner shared by the Turtle, N-Triples/N-Quads, and query parsers."""

from __future__ import annotations

from typing import NoReturn

from .errors import ParseError

_STRING_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_HEX = set("0123456789abcdefABCDEF")


class Scanner:
    """Cursor over a source text with 1-based line/column tracking."""

    __slots__ = ("text", "pos", "line", "column")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def advance(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return c

    def error(self, expected: str) -> NoReturn:
        raise ParseError(f"expected {expected}", self.line, self.column)

    def error_at(self, expected: str, line: int, column: int) -> NoReturn:
        raise ParseError(f"expected {expected}", line, column)

    def skip_ws(self, *, comments: bool = True) -> None:
        """Skip whitespace and, by default, '#' comments running to end of line."""
        while not self.at_end():
            c = self.peek()
            if c in " \t\r\n":
                self.advance()
            elif comments and c == "#":
                while not self.at_end() and self.peek() != "\n":
                    self.advance()
            else:
                return

    def try_consume(self, token: str) -> bool:
        """Consume `token` if the text continues with it literally."""
        if self.text.startswith(token, self.pos):
            for _ in token:
                self.advance()
            return True
        return False

    def expect(self, token: str, label: str | None = None) -> None:
        if not self.try_consume(token):
            self.error(label or f"'{token}'")

    def read_while(self, allowed: str) -> str:
        """Consume the longest run of characters from the `allowed` set."""
        out = []
        while not self.at_end() and self.peek() in allowed:
            out.append(self.advance())
        return "".join(out)

    def read_quoted_string(self) -> str:
        """Read a double-quoted string literal, decoding backslash escapes."""
        self.expect('"', "string literal")
        out: list[str] = []
        while True:
            if self.at_end():
                self.error("closing '\"'")
            c = self.peek()
            if c in "\n\r":
                self.error("closing '\"' before end of line")
            self.advance()
            if c == '"':
                return "".join(out)
            if c == "\\":
                out.append(self._read_escape())
            else:
                out.append(c)

    def _read_escape(self) -> str:
        if self.at_end():
            self.error("string escape")
        e = self.advance()
        if e in _STRING_ESCAPES:
            return _STRING_ESCAPES[e]
        if e == "u":
            return self._read_hex_escape(4)
        if e == "U":
            return self._read_hex_escape(8)
        self.error("valid string escape (\\t \\b \\n \\r \\f \\\" \\' \\\\ \\u \\U)")

    def _read_hex_escape(self, width: int) -> str:
        digits = []
        for _ in range(width):
            if self.at_end() or self.peek() not in _HEX:
                self.error(f"{width} hex digits")
            digits.append(self.advance())
        return chr(int("".join(digits), 16))

    def read_iriref_body(self) -> str:
        """Read the text between '<' and '>' of an IRIREF (no escapes in this subset)."""
        self.expect("<", "'<'")
        out = []
        while True:
            if self.at_end():
                self.error("closing '>'")
            c = self.advance()
            if c == ">":
                return "".join(out)
            if c == "<" or c.isspace() or ord(c) < 0x20:
                self.error("IRI character (no whitespace or angle brackets)")
            out.append(c)

    def read_lang_tag(self) -> str:
        """Read a BCP-47-style language tag after '@' has been consumed."""
        line, col = self.line, self.column
        tag = self.read_while("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
        if not tag:
            self.error_at("language tag", line, col)
        while self.peek() == "-":
            self.advance()
            part = self.read_while("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")
            if not part:
                self.error("language subtag")
            tag += "-" + part
        return tag
