"""Letters, strings and bands over a quiver, and the quiver of a word.

A word ``C_1 C_2 ... C_n`` is written like a path: ``t(C_i) = h(C_{i+1})``.
Its vertex sequence is ``v_0 = h(C_1)`` and ``v_i = t(C_i)``.  A band is
stored by one period whose seam sits just before ``C_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .quiver import LocallyGentlePair, QuiverError

TRIVIAL = "trivial"
STRING = "string"
BAND = "band"


class Letter(NamedTuple):
    arrow: str
    direct: bool = True

    def inverse(self) -> "Letter":
        return Letter(self.arrow, not self.direct)

    def head(self, pair: LocallyGentlePair) -> str:
        q = pair.quiver
        return q.head(self.arrow) if self.direct else q.tail(self.arrow)

    def tail(self, pair: LocallyGentlePair) -> str:
        q = pair.quiver
        return q.tail(self.arrow) if self.direct else q.head(self.arrow)

    def key(self):
        return (self.arrow, 0 if self.direct else 1)

    def __str__(self) -> str:
        return self.arrow if self.direct else f"{self.arrow}^-1"


def letters(*specs) -> tuple[Letter, ...]:
    """``letters("nu", "zeta^-1")`` -> two letters."""
    out = []
    for s in specs:
        direct = not s.endswith("^-1")
        name = s if direct else s[:-3]
        if not name or any(c in name for c in " ,^"):
            raise ValueError(f"bad letter {s!r}")
        out.append(Letter(name, direct))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    kind: str
    letters: tuple[Letter, ...] = ()
    vertex: str | None = None
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(Letter(*x) for x in self.letters))
        if self.kind == TRIVIAL:
            if self.letters or self.vertex is None or self.sign not in (1, -1):
                raise ValueError("trivial word needs a vertex, a sign and no letters")
        elif self.kind in (STRING, BAND):
            if not self.letters:
                raise ValueError(f"{self.kind} needs at least one letter")
            for x, y in self._adjacent():
                if x.arrow == y.arrow and x.direct != y.direct:
                    raise ValueError(f"letter {y} cancels {x}")
            if self.kind == BAND and not _is_primitive(self.letters):
                raise ValueError("band period is a proper power")
        else:
            raise ValueError(f"unknown word kind {self.kind!r}")

    @staticmethod
    def trivial(v: str, sign: int = 1) -> "Word":
        return Word(TRIVIAL, (), v, sign)

    @staticmethod
    def string(*specs) -> "Word":
        return Word(STRING, _coerce(specs))

    @staticmethod
    def band(*specs) -> "Word":
        return Word(BAND, _coerce(specs))

    @property
    def is_trivial(self) -> bool:
        return self.kind == TRIVIAL

    @property
    def is_band(self) -> bool:
        return self.kind == BAND

    def __len__(self) -> int:
        return len(self.letters)

    def _adjacent(self):
        ls = self.letters
        pairs = list(zip(ls, ls[1:]))
        if self.kind == BAND:
            pairs.append((ls[-1], ls[0]))
        return pairs

    def key(self):
        return tuple(x.key() for x in self.letters)

    def __str__(self) -> str:
        if self.is_trivial:
            return f"triv:{self.vertex}"
        body = ",".join(str(x) for x in self.letters)
        return f"band:{body}" if self.is_band else body


def _coerce(specs) -> tuple[Letter, ...]:
    if len(specs) == 1 and not isinstance(specs[0], (str, Letter)):
        specs = tuple(specs[0])
    out = []
    for s in specs:
        out.extend([s] if isinstance(s, Letter) else letters(s))
    return tuple(out)


def _is_primitive(ls) -> bool:
    n = len(ls)
    for d in range(1, n):
        if n % d == 0 and ls[d:] + ls[:d] == ls:
            return False
    return True


def check_word(pair: LocallyGentlePair, word: Word) -> None:
    """Raise ``QuiverError`` for unknown arrows and ``ValueError`` for gaps."""
    q = pair.quiver
    if word.is_trivial:
        q.check_vertex(word.vertex)
        return
    for x in word.letters:
        q.arrow(x.arrow)
    for x, y in word._adjacent():
        if x.tail(pair) != y.head(pair):
            raise ValueError(f"letters {x} and {y} do not compose")


def is_admissible(pair: LocallyGentlePair, word: Word) -> bool:
    """Composable, no cancellation, and no relation as a direct or inverse subword.

    Raises:
        QuiverError: the word names an arrow unknown to ``pair``.
    """
    try:
        check_word(pair, word)
    except QuiverError:
        raise
    except ValueError:
        return False
    for x, y in word._adjacent():
        if x.direct and y.direct and pair.in_z(x.arrow, y.arrow):
            return False
        if not x.direct and not y.direct and pair.in_z(y.arrow, x.arrow):
            return False
    return True


def inverse(word: Word) -> Word:
    if word.is_trivial:
        return Word.trivial(word.vertex, -word.sign)
    return Word(word.kind, tuple(x.inverse() for x in reversed(word.letters)))


def shift(word: Word, d: int) -> Word:
    """Rotate a band's period so that it starts at ``C_{d+1}``."""
    if not word.is_band:
        return word
    d %= len(word.letters)
    return Word(word.kind, word.letters[d:] + word.letters[:d])


def canonical(word: Word) -> Word:
    """The least representative under rotation (bands) and inversion."""
    if word.is_trivial:
        return Word.trivial(word.vertex, 1)
    cands = [word, inverse(word)]
    if word.is_band:
        n = len(word.letters)
        cands = [shift(w, d) for w in cands for d in range(n)]
    return min(cands, key=Word.key)


def equivalent(u: Word, w: Word) -> bool:
    return u.kind == w.kind and canonical(u) == canonical(w)


def all_letters(pair: LocallyGentlePair) -> list[Letter]:
    out = []
    for a in pair.quiver.arrows:
        out += [Letter(a.name, True), Letter(a.name, False)]
    return out


def _can_follow(pair: LocallyGentlePair, x: Letter, y: Letter) -> bool:
    if x.tail(pair) != y.head(pair):
        return False
    if x.arrow == y.arrow and x.direct != y.direct:
        return False
    if x.direct and y.direct:
        return not pair.in_z(x.arrow, y.arrow)
    if not x.direct and not y.direct:
        return not pair.in_z(y.arrow, x.arrow)
    return True


def _extensions(pair: LocallyGentlePair, max_len: int):
    """Every admissible finite letter sequence of length 1..max_len."""
    ls = all_letters(pair)
    follow = {x: [y for y in ls if _can_follow(pair, x, y)] for x in ls}
    stack = [(x,) for x in reversed(ls)]
    while stack:
        seq = stack.pop()
        yield seq
        if len(seq) < max_len:
            for y in reversed(follow[seq[-1]]):
                stack.append(seq + (y,))


def enumerate_strings(pair: LocallyGentlePair, max_len: int) -> list[Word]:
    """Canonical strings of length at most ``max_len``, trivial words first."""
    out = [Word.trivial(v) for v in pair.quiver.vertices]
    seen = set()
    found = []
    for seq in _extensions(pair, max_len):
        w = canonical(Word(STRING, seq))
        if w not in seen:
            seen.add(w)
            found.append(w)
    found.sort(key=lambda w: (len(w), w.key()))
    return out + found


def enumerate_bands(pair: LocallyGentlePair, max_period: int) -> list[Word]:
    """Canonical primitive admissible bands of period at most ``max_period``."""
    seen = set()
    found = []
    for seq in _extensions(pair, max_period):
        if not _can_follow(pair, seq[-1], seq[0]) or not _is_primitive(seq):
            continue
        w = canonical(Word(BAND, seq))
        if w not in seen:
            seen.add(w)
            found.append(w)
    found.sort(key=lambda w: (len(w), w.key()))
    return found


def vertex_sequence(pair: LocallyGentlePair, word: Word) -> list[str]:
    """``v_0, ..., v_n`` (for a band, ``v_n == v_0``)."""
    if word.is_trivial:
        return [word.vertex]
    vs = [word.letters[0].head(pair)]
    for x in word.letters:
        vs.append(x.tail(pair))
    return vs


@dataclass(frozen=True)
class WordQuiver:
    """The line (or cycle, for bands) quiver of a word and its map to Q.

    ``arrows[i - 1] = (head, tail)`` is the arrow theta_i.  For a band the
    last arrow runs between ``n - 1`` and ``n``, which is identified with 0;
    ``wrap`` records this.
    """

    n_vertices: int
    arrows: tuple[tuple[int, int], ...]
    f_vertices: tuple[str, ...]
    f_arrows: tuple[str, ...]
    wrap: bool = False


def word_quiver(word: Word, pair: LocallyGentlePair | None = None) -> WordQuiver:
    """Build Q(C).  Vertex images need ``pair``; without it they are empty."""
    n = len(word.letters)
    arrows = []
    for i, x in enumerate(word.letters, start=1):
        arrows.append((i - 1, i) if x.direct else (i, i - 1))
    fv: tuple[str, ...] = ()
    if pair is not None:
        fv = tuple(vertex_sequence(pair, word))
    elif word.is_trivial:
        fv = (word.vertex,)
    if word.is_band:
        arrows = [(h % n, t % n) for h, t in arrows]
        fv = fv[:n]
        return WordQuiver(n, tuple(arrows), fv, tuple(x.arrow for x in word.letters), True)
    return WordQuiver(n + 1, tuple(arrows), fv, tuple(x.arrow for x in word.letters))
