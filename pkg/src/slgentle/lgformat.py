"""The ``.lg`` text format for locally gentle pairs, and the word syntax.

::

    # comment
    field 2 2 111              # p, n, modulus coefficients low to high
    vertices 1 2 3
    arrow alpha 1 2
    arrow beta 2 2 frob 1
    relations beta*beta nu*alpha

``b*a`` means "a then b".  Sections may appear in any order and
``vertices``/``relations`` lines may repeat.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import FieldError, FiniteField, FreeWord, FrobPower, symbolic_sigma
from .quiver import Arrow, LocallyGentlePair, Quiver, Relation, validate_locally_gentle
from .words import BAND, STRING, Word, letters


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


@dataclass(frozen=True)
class InputDocument:
    field: tuple[int, int, tuple[int, ...]] | None
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str, int | None], ...]
    relations: tuple[tuple[str, str], ...]

    def finite_field(self) -> FiniteField | None:
        if self.field is None:
            return None
        p, n, coeffs = self.field
        return FiniteField(p, n, coeffs)

    def pair(self) -> LocallyGentlePair:
        q = Quiver(self.vertices, tuple(Arrow(a, t, h) for a, t, h, _ in self.arrows))
        return validate_locally_gentle(q, [Relation(b, a) for b, a in self.relations])

    def sigma(self) -> dict:
        """FrobPower per arrow when a field is declared, free generators otherwise."""
        F = self.finite_field()
        if F is None:
            return symbolic_sigma([a for a, *_ in self.arrows])
        return {a: FrobPower(k or 0, F) for a, _, _, k in self.arrows}


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(line, f"expected integer {what}, got {tok!r}") from None


def _coeffs(tok: str, p: int, line: int) -> tuple[int, ...]:
    parts = tok.split(",") if "," in tok else list(tok)
    vals = tuple(_int(c, line, "coefficient") for c in parts)
    if any(not 0 <= c < p for c in vals):
        raise ParseError(line, f"coefficient out of range for p={p}")
    return vals


def parse(text: str) -> InputDocument:
    """Parse ``.lg`` text; semantic checks are left to validation."""
    field = None
    vertices: list[str] = []
    arrows: list[tuple[str, str, str, int | None]] = []
    relations: list[tuple[str, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        if key == "field":
            if field is not None:
                raise ParseError(no, "field declared twice")
            if len(rest) != 3:
                raise ParseError(no, "usage: field p n coeffs")
            p, n = _int(rest[0], no, "p"), _int(rest[1], no, "n")
            coeffs = _coeffs(rest[2], p, no)
            if len(coeffs) != n + 1:
                raise ParseError(no, f"modulus needs {n + 1} coefficients")
            try:
                FiniteField(p, n, coeffs)
            except FieldError as exc:
                raise ParseError(no, str(exc)) from None
            field = (p, n, coeffs)
        elif key == "vertices":
            if not rest:
                raise ParseError(no, "empty vertices line")
            vertices.extend(rest)
        elif key == "arrow":
            if len(rest) == 3:
                arrows.append((rest[0], rest[1], rest[2], None))
            elif len(rest) == 5 and rest[3] == "frob":
                arrows.append((rest[0], rest[1], rest[2], _int(rest[4], no, "frobenius exponent")))
            else:
                raise ParseError(no, "usage: arrow name tail head [frob k]")
        elif key == "relations":
            for tok in rest:
                parts = tok.split("*")
                if len(parts) != 2 or not all(parts):
                    raise ParseError(no, f"relation {tok!r} is not of the form b*a")
                relations.append((parts[0], parts[1]))
        else:
            raise ParseError(no, f"unknown keyword {key!r}")
    if not vertices:
        raise ParseError(0, "no vertices")
    return InputDocument(field, tuple(vertices), tuple(arrows), tuple(relations))


def render(doc: InputDocument) -> str:
    """Canonical text; ``parse(render(doc)) == doc``."""
    lines = []
    if doc.field is not None:
        p, n, coeffs = doc.field
        sep = "" if p <= 10 else ","
        lines.append(f"field {p} {n} {sep.join(map(str, coeffs))}")
    lines.append("vertices " + " ".join(doc.vertices))
    for a, t, h, k in doc.arrows:
        lines.append(f"arrow {a} {t} {h}" + ("" if k is None else f" frob {k}"))
    if doc.relations:
        lines.append("relations " + " ".join(f"{b}*{a}" for b, a in doc.relations))
    return "\n".join(lines) + "\n"


def document_from_pair(pair: LocallyGentlePair, field=None, frob=None) -> InputDocument:
    frob = frob or {}
    fld = None
    if field is not None:
        fld = (field.p, field.n, tuple(field.modulus))
    return InputDocument(
        fld,
        pair.quiver.vertices,
        tuple((a.name, a.tail, a.head, frob.get(a.name)) for a in pair.quiver.arrows),
        tuple((r.outer, r.inner) for r in pair.sorted_relations()),
    )


def parse_word(text: str) -> Word:
    """``triv:v``, ``band:a,b^-1`` or ``a,b^-1``."""
    text = text.strip()
    if text.startswith("triv:"):
        v = text[5:].strip()
        if not v:
            raise ParseError(0, "trivial word needs a vertex")
        return Word.trivial(v)
    kind = STRING
    if text.startswith("band:"):
        kind, text = BAND, text[5:]
    toks = [t.strip() for t in text.split(",")]
    if not toks or not all(toks):
        raise ParseError(0, f"empty letter in word {text!r}")
    try:
        return Word(kind, letters(*toks))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def is_symbolic(sigma) -> bool:
    return any(isinstance(s, FreeWord) for s in sigma.values())
