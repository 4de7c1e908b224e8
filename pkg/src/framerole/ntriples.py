"""Minimal N-Triples terms, parser and canonical writer.

Only IRIs and literals are supported; blank nodes are rejected.
"""

import re
import unicodedata
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .errors import ParseError

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        v = self.value
        if v.startswith("<") and v.endswith(">"):
            v = v[1:-1]
            object.__setattr__(self, "value", v)
        if not v or any(c.isspace() for c in v) or any(c in v for c in '<>"{}|^`\\'):
            raise ValueError(f"invalid IRI: {self.value!r}")

    @property
    def local_name(self) -> str:
        cut = max(self.value.rfind("/"), self.value.rfind("#"))
        return self.value[cut + 1:]

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class Literal:
    value: str
    datatype: Optional[Iri] = None
    lang: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.lang is not None:
            raise ValueError("literal cannot carry both datatype and language")

    def n3(self) -> str:
        out = f'"{escape_string(self.value)}"'
        if self.lang:
            out += f"@{self.lang}"
        elif self.datatype is not None:
            out += f"^^{self.datatype.n3()}"
        return out

    def __str__(self):
        return self.value


Term = Union[Iri, Literal]


class Triple(NamedTuple):
    subject: Iri
    predicate: Iri
    object: Term

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."


_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
            '"': '"', "'": "'", "\\": "\\"}
_OUT_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r"}

_IRI = r"<([^<>\"{}|^`\\\s]*)>"
_LITERAL = r'"((?:[^"\\\n\r]|\\.)*)"(?:\^\^' + _IRI + r"|@([A-Za-z]+(?:-[A-Za-z0-9]+)*))?"
_LINE = re.compile(
    r"^\s*" + _IRI + r"\s*" + _IRI + r"\s*(?:" + _IRI + r"|" + _LITERAL + r")\s*\.\s*(?:#.*)?$"
)


def _escape_char(c: str) -> str:
    if c in _OUT_ESCAPES:
        return _OUT_ESCAPES[c]
    # control and line-separator characters would break line-oriented readers
    if unicodedata.category(c) in ("Cc", "Zl", "Zp"):
        return f"\\u{ord(c):04X}"
    return c


def escape_string(s: str) -> str:
    return "".join(_escape_char(c) for c in s)


def _lines(text: str):
    """Physical lines; only LF / CRLF end a line (not U+2028 and friends)."""
    for line in text.split("\n"):
        yield line[:-1] if line.endswith("\r") else line


def unescape_string(s: str, lineno=None) -> str:
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(s):
            raise ParseError(lineno, "dangling escape in literal")
        e = s[i + 1]
        if e in _ESCAPES:
            out.append(_ESCAPES[e])
            i += 2
        elif e in "uU":
            width = 4 if e == "u" else 8
            digits = s[i + 2:i + 2 + width]
            if len(digits) != width or not all(d in "0123456789abcdefABCDEF" for d in digits):
                raise ParseError(lineno, f"bad \\{e} escape in literal")
            out.append(chr(int(digits, 16)))
            i += 2 + width
        else:
            raise ParseError(lineno, f"unknown escape \\{e} in literal")
    return "".join(out)


def parse_line(line: str, lineno=None) -> Optional[Triple]:
    """Parse one N-Triples line; returns None for blank and comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    m = _LINE.match(line)
    if m is None:
        if "_:" in stripped:
            raise ParseError(lineno, "blank nodes are not supported")
        raise ParseError(lineno, "not a triple: " + stripped[:80])
    s, p, o_iri, lit, dt, lang = m.groups()
    try:
        if o_iri is not None:
            obj = Iri(o_iri)
        else:
            obj = Literal(unescape_string(lit, lineno), Iri(dt) if dt is not None else None, lang)
        return Triple(Iri(s), Iri(p), obj)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(lineno, str(exc)) from None


def parse_ntriples(text: str) -> list:
    """Parse N-Triples text into a list of triples in file order."""
    triples = []
    for lineno, line in enumerate(_lines(text), start=1):
        t = parse_line(line, lineno)
        if t is not None:
            triples.append(t)
    return triples


def iter_with_lines(text: str):
    for lineno, line in enumerate(_lines(text), start=1):
        t = parse_line(line, lineno)
        if t is not None:
            yield lineno, t


def serialize_ntriples(triples) -> str:
    """Canonical form: unique lines, sorted, each newline-terminated."""
    lines = sorted({t.n3() for t in triples})
    return "".join(line + "\n" for line in lines)
