"""The semilinear path algebra of a locally gentle pair over F_{p^n}.

Elements are finite sums ``sum c_p p`` over admissible paths with
coefficients on the left.  Moving a scalar across an arrow twists it:
``a * lam = sigma_a(lam) * a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .galois import FFElem, FiniteField, FrobPower
from .quiver import LocallyGentlePair, Path, admissible_paths, is_gentle

INFINITE = math.inf


class NotGentle(ValueError):
    """The pair has infinitely many admissible paths."""


def dimension(pair: LocallyGentlePair, up_to: int | None = None):
    """Number of admissible paths (``INFINITE`` for non-gentle pairs).

    With ``up_to`` only paths of length at most ``up_to`` are counted, which
    is finite for every pair.
    """
    if up_to is not None:
        return len(admissible_paths(pair, up_to))
    if not is_gentle(pair):
        return INFINITE
    return len(admissible_paths(pair, len(pair.quiver.arrows)))


def idempotent_and_radical_basis(pair: LocallyGentlePair):
    """Trivial paths and the paths of positive length (gentle pairs only)."""
    if not is_gentle(pair):
        raise NotGentle("the algebra is infinite dimensional")
    paths = admissible_paths(pair, len(pair.quiver.arrows))
    return [p for p in paths if p.is_trivial], [p for p in paths if not p.is_trivial]


@dataclass(frozen=True)
class AlgebraElement:
    algebra: "SemilinearAlgebra"
    terms: tuple[tuple[Path, int], ...]

    def as_dict(self) -> dict[Path, int]:
        return dict(self.terms)

    def __add__(self, other):
        return self.algebra.add(self, other)

    def __sub__(self, other):
        return self.algebra.add(self, self.algebra.lscale(self.algebra.field(-1), other))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.algebra.rscale(self, self.algebra.field(other))

    def __rmul__(self, scalar):
        return self.algebra.lscale(self.algebra.field(scalar), self)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        f = self.algebra.field
        return " + ".join(f"[{f.format(c)}]{p}" for p, c in self.terms)


class SemilinearAlgebra:
    """K_sigma Q / <Z> for K = ``field`` and ``sigma`` arrow -> FrobPower.

    Args:
        pair: the locally gentle pair.
        field: the coefficient field.
        sigma: a Frobenius power per arrow; missing arrows are untwisted.
    """

    def __init__(self, pair: LocallyGentlePair, field: FiniteField, sigma=None):
        self.pair = pair
        self.field = field
        sigma = dict(sigma or {})
        self.sigma = {
            a.name: sigma.get(a.name, FrobPower(0, field)) for a in pair.quiver.arrows
        }

    def _make(self, d: dict[Path, int]) -> AlgebraElement:
        idx = self.pair.quiver.arrow_index
        vidx = self.pair.quiver.vertex_index
        items = [(p, c) for p, c in d.items() if c]
        items.sort(key=lambda pc: (len(pc[0]), [idx[a] for a in pc[0].arrows],
                                   vidx.get(pc[0].vertex, -1)))
        return AlgebraElement(self, tuple(items))

    def element(self, d) -> AlgebraElement:
        out = {}
        for p, c in dict(d).items():
            if not self.pair.is_admissible_path(p):
                raise ValueError(f"path {p} is not admissible")
            code = self.field(c).code if not isinstance(c, FFElem) else c.code
            out[p] = code
        return self._make(out)

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, ())

    @property
    def one(self) -> AlgebraElement:
        return self._make({Path.trivial(v): 1 for v in self.pair.quiver.vertices})

    def e(self, v: str) -> AlgebraElement:
        self.pair.quiver.check_vertex(v)
        return self._make({Path.trivial(v): 1})

    def path(self, *arrows: str) -> AlgebraElement:
        return self.element({Path.of(*arrows): 1})

    def arrow(self, a: str) -> AlgebraElement:
        return self.path(a)

    def scalar(self, lam) -> AlgebraElement:
        return self.lscale(self.field(lam), self.one)

    def twist(self, p: Path, code: int) -> int:
        """``sigma_p(lam)`` where ``p * lam = sigma_p(lam) * p``."""
        for a in reversed(p.arrows):
            code = self.sigma[a].apply_code(code)
        return code

    def concat(self, p: Path, q: Path) -> Path | None:
        """The product path ``p q`` (``q`` first), or ``None`` when it vanishes."""
        Q = self.pair.quiver
        if p.is_trivial and q.is_trivial:
            return p if p.vertex == q.vertex else None
        if p.is_trivial:
            return q if q.head(Q) == p.vertex else None
        if q.is_trivial:
            return p if p.tail(Q) == q.vertex else None
        if Q.tail(p.arrows[-1]) != Q.head(q.arrows[0]):
            return None
        if self.pair.in_z(p.arrows[-1], q.arrows[0]):
            return None
        return Path(p.arrows + q.arrows)

    def add(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out = x.as_dict()
        for p, c in y.terms:
            out[p] = self.field.add(out.get(p, 0), c)
        return self._make(out)

    def lscale(self, lam: FFElem, x: AlgebraElement) -> AlgebraElement:
        return self._make({p: self.field.mul(lam.code, c) for p, c in x.terms})

    def rscale(self, x: AlgebraElement, lam: FFElem) -> AlgebraElement:
        return self._make({p: self.field.mul(c, self.twist(p, lam.code)) for p, c in x.terms})

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        f = self.field
        out: dict[Path, int] = {}
        for p, c in x.terms:
            for q, d in y.terms:
                r = self.concat(p, q)
                if r is None:
                    continue
                term = f.mul(c, self.twist(p, d))
                out[r] = f.add(out.get(r, 0), term)
        return self._make(out)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.algebra.multiply(x, y)
