"""Reader and writer for ``.quiver`` documents.

::

    # Q with a bypass
    vertices: 1 2 3 4
    arrow a: 1 -> 2
    arrow b: 1 -> 3
    arrow c: 3 -> 2
    arrow d: 2 -> 4
    field QQ            # or: field GF 2
    ideal J
      1 d*a - 1 d*c*b
    end

Paths are written right-to-left; coefficients may be integers or ``p/q``
and default to 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraElement
from .field import Field
from .quiver import PathError, Quiver, QuiverError


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class InputDocument:
    quiver: Quiver
    field: Field
    ideals: dict = field(default_factory=dict)  # name -> list of AlgebraElement

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return (self.quiver, self.field, self.ideals) == (other.quiver, other.field, other.ideals)


_LABEL = r"[^\W\d]\w*'*"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*(?P<path>{_LABEL}(?:\s*\*\s*{_LABEL})*)?"
)
_ARROW = re.compile(rf"arrow\s+(?P<label>{_LABEL})\s*:\s*(?P<src>\S+)\s*->\s*(?P<tgt>\S+)\s*$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def parse_relation(text: str, quiver: Quiver, k: Field, lineno: int = 1, offset: int = 0) -> AlgebraElement:
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        col = offset + pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
        if not m or m.end() == pos:
            raise ParseError("expected a term", lineno, col)
        if not first and not m.group("sign"):
            raise ParseError("expected '+' or '-' between terms", lineno, col)
        if not m.group("path"):
            raise ParseError("term without a path", lineno, col)
        coef = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        path_col = offset + m.start("path") + 1
        try:
            path = quiver.path(m.group("path").replace(" ", ""))
        except PathError as e:
            raise ParseError(str(e), lineno, path_col) from None
        try:
            c = k(coef)
        except ZeroDivisionError as e:
            raise ParseError(str(e), lineno, col) from None
        terms[path] = terms.get(path, k.zero) + c
        pos = m.end()
        first = False
    if first:
        raise ParseError("empty relation", lineno, offset + 1)
    return AlgebraElement(quiver, k, terms)


def parse(text: str) -> InputDocument:
    vertices = None
    arrows = []
    arrow_lines = {}
    k = None
    ideals: dict = {}
    raw_ideals = []  # (name, [(lineno, offset, text)])
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if current is not None:
            if stripped == "end":
                current = None
            else:
                current[1].append((lineno, indent, stripped))
            continue
        word = stripped.split()[0].rstrip(":")
        if word == "vertices":
            if vertices is not None:
                raise ParseError("vertices declared twice", lineno, indent + 1)
            vertices = stripped.split(":", 1)[1].split() if ":" in stripped else stripped.split()[1:]
            if not vertices:
                raise ParseError("no vertices declared", lineno, indent + 1)
        elif word == "arrow":
            m = _ARROW.match(stripped)
            if not m:
                raise ParseError("expected 'arrow <label>: <source> -> <target>'", lineno, indent + 1)
            arrows.append((m["label"], m["src"], m["tgt"]))
            arrow_lines[m["label"]] = lineno
        elif word == "field":
            parts = stripped.split()
            if parts[1:] == ["QQ"]:
                k = Field.QQ()
            elif len(parts) == 3 and parts[1] == "GF" and parts[2].isdigit():
                try:
                    k = Field.GF(int(parts[2]))
                except ValueError as e:
                    raise ParseError(str(e), lineno, indent + 1) from None
            else:
                raise ParseError("expected 'field QQ' or 'field GF <p>'", lineno, indent + 1)
        elif word == "ideal":
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError("expected 'ideal <name>'", lineno, indent + 1)
            if parts[1] in {n for n, _ in raw_ideals}:
                raise ParseError(f"ideal {parts[1]!r} declared twice", lineno, indent + 1)
            current = (parts[1], [])
            raw_ideals.append(current)
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, indent + 1)
    if current is not None:
        raise ParseError(f"ideal {current[0]!r} is missing 'end'", lineno + 1)
    if vertices is None:
        raise ParseError("missing 'vertices:' line", 1)
    try:
        quiver = Quiver(vertices, arrows)
    except QuiverError as e:
        bad = next((lab for lab in arrow_lines if lab in str(e)), None)
        raise ParseError(str(e), arrow_lines.get(bad, 1)) from None
    k = k or Field.QQ()
    for name, lines in raw_ideals:
        ideals[name] = [parse_relation(t, quiver, k, n, off) for n, off, t in lines]
    return InputDocument(quiver, k, ideals)


def load(path) -> InputDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def format_relation(x: AlgebraElement) -> str:
    out = []
    for p, c in x.terms.items():
        if x.field.characteristic == 0 and c < 0:
            out.append(("-", -c, p))
        else:
            out.append(("+", c, p))
    text = " ".join(f"{s} {c} {p}" for s, c, p in out)
    return text[2:] if text.startswith("+ ") else text


def serialize(doc: InputDocument) -> str:
    q = doc.quiver
    lines = ["vertices: " + " ".join(str(v) for v in q.vertices)]
    lines += [f"arrow {a.label}: {a.source} -> {a.target}" for a in q.arrows]
    lines.append("field QQ" if not doc.field.characteristic else f"field GF {doc.field.characteristic}")
    for name, gens in doc.ideals.items():
        lines.append(f"ideal {name}")
        lines += ["  " + format_relation(g) for g in gens if g]
        lines.append("end")
    return "\n".join(lines) + "\n"
