"""Hand-rolled lexer for the Java-like subset."""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(Exception):
    def __init__(self, message: str, path: str, line: int, col: int) -> None:
        super().__init__(f"{path}:{line}:{col}: {message}")
        self.message = message
        self.path = path
        self.line = line
        self.col = col


KEYWORDS = {
    "package", "class", "interface", "extends", "implements", "new",
    "return", "if", "else", "while", "for", "throw", "try", "catch",
    "finally", "super", "this", "null", "true", "false", "void",
    "public", "private", "protected", "static", "abstract", "final",
}

MODIFIERS = {"public", "private", "protected", "static", "abstract", "final"}

# Longest first so '==' wins over '='.
_PUNCT = [
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "{", "}", "(", ")", "[", "]", ";", ",", ".", "=", "+", "-", "*", "/",
    "%", "!", "<", ">",
]


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | int | string | char | punct | eof
    text: str
    line: int
    col: int


def tokenize(text: str, path: str = "<source>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def err(msg: str) -> ParseError:
        return ParseError(msg, path, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            j = text.find("\n", i)
            i = n if j < 0 else j
            continue
        if text.startswith("/*", i):
            j = text.find("*/", i + 2)
            if j < 0:
                raise err("unterminated block comment")
            skipped = text[i:j + 2]
            newlines = skipped.count("\n")
            if newlines:
                line += newlines
                col = len(skipped) - skipped.rfind("\n")
            else:
                col += len(skipped)
            i = j + 2
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == '"' or ch == "'":
            quote = ch
            j = i + 1
            while j < n and text[j] != quote and text[j] != "\n":
                j += 2 if text[j] == "\\" else 1
            if j >= n or text[j] != quote:
                raise err("unterminated literal")
            tokens.append(Token("string" if quote == '"' else "char", text[i:j + 1], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("punct", p, line, col))
                col += len(p)
                i += len(p)
                break
        else:
            raise err(f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", line, col))
    return tokens
