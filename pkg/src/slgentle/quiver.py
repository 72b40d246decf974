"""Quivers, quadratic zero-relations and locally gentle pairs.

A relation ``Relation(outer=b, inner=a)`` stands for the length-two path
``ba``: first ``a``, then ``b``.  Paths are written the same way, so the
tuple ``("beta", "alpha")`` is the path that runs along ``alpha`` and then
``beta``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple


class Arrow(NamedTuple):
    name: str
    tail: str
    head: str


class Relation(NamedTuple):
    """The zero-relation ``outer * inner`` (``inner`` is traversed first)."""

    outer: str
    inner: str

    def __str__(self) -> str:
        return f"{self.outer}*{self.inner}"


class QuiverError(ValueError):
    """Raised for malformed quivers, relations or unknown identifiers."""


class NotLocallyGentle(ValueError):
    """Raised when a pair violates the locally gentle conditions.

    Attributes:
        violations: list of ``Violation`` records describing every failure.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(str(v) for v in self.violations)
        super().__init__(f"not locally gentle: {msg}")


class Violation(NamedTuple):
    code: str
    where: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with named vertices and arrows.

    Loops and parallel arrows are allowed.  Declaration order is kept and
    used for every deterministic iteration in the package.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex name")
        seen = set()
        vs = set(self.vertices)
        for a in self.arrows:
            if a.name in seen:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            for end in (a.tail, a.head):
                if end not in vs:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {end!r}")

    @cached_property
    def _by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def head(self, name: str) -> str:
        return self.arrow(name).head

    def tail(self, name: str) -> str:
        return self.arrow(name).tail

    def has_vertex(self, v: str) -> bool:
        return v in self.vertex_index

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.tail].append(a.name)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.head].append(a.name)
        return {v: tuple(x) for v, x in inc.items()}

    def out_arrows(self, v: str) -> tuple[str, ...]:
        """Arrows with tail ``v``, in declaration order."""
        self.check_vertex(v)
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[str, ...]:
        """Arrows with head ``v``, in declaration order."""
        self.check_vertex(v)
        return self._in[v]

    def composable_pairs(self) -> list[Relation]:
        """Every length-two path ``ba`` (``tail(b) == head(a)``)."""
        pairs = []
        for a in self.arrows:
            for b in self._out[a.head]:
                pairs.append(Relation(b, a.name))
        return pairs

    def components(self) -> list[tuple[str, ...]]:
        """Vertex sets of the connected components of the underlying graph."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arrows:
            ra, rb = find(a.tail), find(a.head)
            if ra != rb:
                parent[max(ra, rb, key=self.vertex_index.get)] = min(
                    ra, rb, key=self.vertex_index.get
                )
        groups: dict[str, list[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return [tuple(g) for g in groups.values()]

    def subquiver(self, vertices: Iterable[str]) -> "Quiver":
        keep = set(vertices)
        return Quiver(
            tuple(v for v in self.vertices if v in keep),
            tuple(a for a in self.arrows if a.tail in keep and a.head in keep),
        )


@dataclass(frozen=True)
class Path:
    """A path in a quiver, written right to left.

    ``arrows[0]`` is traversed last.  A trivial path has no arrows and
    records its vertex.
    """

    arrows: tuple[str, ...] = ()
    vertex: str | None = None

    @classmethod
    def trivial(cls, v: str) -> "Path":
        return cls((), v)

    @classmethod
    def of(cls, *arrows: str) -> "Path":
        if not arrows:
            raise ValueError("use Path.trivial for length-zero paths")
        return cls(tuple(arrows), None)

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def head(self, q: Quiver) -> str:
        return self.vertex if self.is_trivial else q.head(self.arrows[0])

    def tail(self, q: Quiver) -> str:
        return self.vertex if self.is_trivial else q.tail(self.arrows[-1])

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e_{self.vertex}"
        return "*".join(self.arrows)


@dataclass(frozen=True)
class LocallyGentlePair:
    """A quiver together with a set of quadratic zero-relations ``Z``.

    Build instances through :func:`validate_locally_gentle` (or
    :meth:`build`) so that the locally gentle conditions are enforced.
    """

    quiver: Quiver
    relations: frozenset[Relation] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "relations", frozenset(Relation(*r) for r in self.relations)
        )

    @classmethod
    def build(cls, vertices, arrows, relations=()) -> "LocallyGentlePair":
        return validate_locally_gentle(Quiver(tuple(vertices), tuple(arrows)), relations)

    def in_z(self, outer: str, inner: str) -> bool:
        return Relation(outer, inner) in self.relations

    def sorted_relations(self) -> list[Relation]:
        idx = self.quiver.arrow_index
        return sorted(self.relations, key=lambda r: (idx[r.inner], idx[r.outer]))

    def admissible_successor(self, a: str) -> str | None:
        """The unique arrow ``b`` with ``ba`` composable and not in ``Z``."""
        for b in self.quiver.out_arrows(self.quiver.head(a)):
            if not self.in_z(b, a):
                return b
        return None

    def relational_successor(self, a: str) -> str | None:
        """The unique arrow ``b`` with ``ba`` in ``Z``."""
        for b in self.quiver.out_arrows(self.quiver.head(a)):
            if self.in_z(b, a):
                return b
        return None

    def admissible_predecessor(self, b: str) -> str | None:
        for a in self.quiver.in_arrows(self.quiver.tail(b)):
            if not self.in_z(b, a):
                return a
        return None

    def relational_predecessor(self, b: str) -> str | None:
        for a in self.quiver.in_arrows(self.quiver.tail(b)):
            if self.in_z(b, a):
                return a
        return None

    def relational_vertices(self) -> list[str]:
        mids = {self.quiver.head(r.inner) for r in self.relations}
        return [v for v in self.quiver.vertices if v in mids]

    def is_admissible_path(self, path: Path) -> bool:
        arr = path.arrows
        q = self.quiver
        for b, a in zip(arr, arr[1:]):
            if q.tail(b) != q.head(a) or self.in_z(b, a):
                return False
        return True


def locally_gentle_violations(quiver: Quiver, relations: Iterable) -> list[Violation]:
    """Every failure of the locally gentle conditions, in a stable order.

    Raises:
        QuiverError: a relation names an undeclared arrow or is not composable.
    """
    rels = set()
    for r in relations:
        r = Relation(*r)
        quiver.arrow(r.outer)
        quiver.arrow(r.inner)
        if quiver.tail(r.outer) != quiver.head(r.inner):
            raise QuiverError(f"relation {r} is not composable")
        rels.add(r)

    found = []
    for v in quiver.vertices:
        if len(quiver.in_arrows(v)) > 2:
            found.append(Violation("in-degree", v, f"{len(quiver.in_arrows(v))} arrows end here"))
        if len(quiver.out_arrows(v)) > 2:
            found.append(Violation("out-degree", v, f"{len(quiver.out_arrows(v))} arrows start here"))

    for arr in quiver.arrows:
        b = arr.name
        after = quiver.out_arrows(arr.head)
        n_in = sum(Relation(c, b) in rels for c in after)
        n_out = len(after) - n_in
        if n_in > 1:
            found.append(Violation("two-relations-after", b, "more than one c with cb in Z"))
        if n_out > 1:
            found.append(Violation("two-admissible-after", b, "more than one c with cb not in Z"))
        before = quiver.in_arrows(arr.tail)
        n_in = sum(Relation(b, a) in rels for a in before)
        n_out = len(before) - n_in
        if n_in > 1:
            found.append(Violation("two-relations-before", b, "more than one a with ba in Z"))
        if n_out > 1:
            found.append(Violation("two-admissible-before", b, "more than one a with ba not in Z"))
    return found


def validate_locally_gentle(quiver: Quiver, relations: Iterable = ()) -> LocallyGentlePair:
    """Return the pair ``(quiver, relations)`` or raise ``NotLocallyGentle``."""
    relations = [Relation(*r) for r in relations]
    bad = locally_gentle_violations(quiver, relations)
    if bad:
        raise NotLocallyGentle(bad)
    return LocallyGentlePair(quiver, frozenset(relations))


STREAM = "Stream"
TRIBUTARY = "Tributary"
DISTRIBUTARY = "Distributary"
QUADBUTARY = "Quadbutary"
NON_RELATIONAL = "NonRelational"


@dataclass(frozen=True)
class VertexClass:
    """Type of a vertex with its witnessing arrows.

    For relational vertices ``ba`` is a relation through the vertex, ``c`` is
    the second incoming arrow and ``d`` the second outgoing one (when they
    exist), so that ``bc`` and ``da`` are admissible and ``dc`` is in ``Z``
    in the quadbutary case.
    """

    kind: str
    a: str | None = None
    b: str | None = None
    c: str | None = None
    d: str | None = None

    @property
    def relational(self) -> bool:
        return self.kind != NON_RELATIONAL


def classify_vertex(pair: LocallyGentlePair, v: str) -> VertexClass:
    q = pair.quiver
    q.check_vertex(v)
    outs, ins = q.out_arrows(v), q.in_arrows(v)
    witness = None
    for b in outs:
        for a in ins:
            if pair.in_z(b, a):
                witness = (b, a)
                break
        if witness:
            break
    if witness is None:
        return VertexClass(NON_RELATIONAL)
    b, a = witness
    c = next((x for x in ins if x != a), None) if len(ins) == 2 else None
    d = next((x for x in outs if x != b), None) if len(outs) == 2 else None
    kind = {
        (1, 1): STREAM,
        (1, 2): TRIBUTARY,
        (2, 1): DISTRIBUTARY,
        (2, 2): QUADBUTARY,
    }[(len(outs), len(ins))]
    return VertexClass(kind, a=a, b=b, c=c, d=d)


def cyclic_admissible_threads(pair: LocallyGentlePair) -> list[tuple[str, ...]]:
    """Oriented cycles along which every cyclic composition avoids ``Z``.

    The admissible successor is a partial injection on arrows, so these are
    exactly the cycles of that partial permutation.
    """
    seen: set[str] = set()
    cycles = []
    for arr in pair.quiver.arrows:
        start = arr.name
        if start in seen:
            continue
        walk = [start]
        local = {start}
        nxt = pair.admissible_successor(start)
        while nxt is not None and nxt not in local and nxt not in seen:
            walk.append(nxt)
            local.add(nxt)
            nxt = pair.admissible_successor(nxt)
        if nxt is not None and nxt in local:
            cycles.append(tuple(walk[walk.index(nxt):]))
        seen.update(walk)
    return cycles


def is_gentle(pair: LocallyGentlePair) -> bool:
    """True when only finitely many admissible paths exist."""
    return not cyclic_admissible_threads(pair)


def admissible_paths(pair: LocallyGentlePair, max_len: int) -> list[Path]:
    """All admissible paths of length at most ``max_len``.

    Order: by length, then lexicographically by arrow declaration index
    (trivial paths by vertex declaration order).
    """
    q = pair.quiver
    out = [Path.trivial(v) for v in q.vertices]
    layer = [(a.name,) for a in q.arrows] if max_len >= 1 else []
    length = 1
    while layer and length <= max_len:
        idx = q.arrow_index
        layer.sort(key=lambda p: [idx[x] for x in p])
        out.extend(Path(p) for p in layer)
        if length == max_len:
            break
        nxt = []
        for p in layer:
            # extend on the left: p runs first, then the new arrow
            b = pair.admissible_successor(p[0])
            if b is not None:
                nxt.append((b,) + p)
        layer = nxt
        length += 1
    return out


def random_locally_gentle(seed: int, n_vertices: int, n_arrows: int, max_tries: int = 1000) -> LocallyGentlePair:
    """A pseudo-random locally gentle pair, deterministic in ``seed``.

    Arrows are rejection-sampled under the degree bound; relations are then
    chosen vertex by vertex among the patterns allowed by local gentleness.

    Raises:
        ValueError: "unsatisfiable parameters" when sampling keeps failing.
    """
    rng = random.Random(seed)
    vertices = tuple(str(i + 1) for i in range(n_vertices))
    if n_vertices == 0 and n_arrows > 0:
        raise ValueError("unsatisfiable parameters: arrows need vertices")
    for _ in range(max_tries):
        outdeg = dict.fromkeys(vertices, 0)
        indeg = dict.fromkeys(vertices, 0)
        arrows = []
        ok = True
        for k in range(n_arrows):
            for _ in range(50):
                t, h = rng.choice(vertices), rng.choice(vertices)
                if outdeg[t] < 2 and indeg[h] < 2:
                    break
            else:
                ok = False
                break
            outdeg[t] += 1
            indeg[h] += 1
            arrows.append(Arrow(f"a{k + 1}", t, h))
        if ok:
            break
    else:
        raise ValueError("unsatisfiable parameters")

    q = Quiver(vertices, tuple(arrows))
    rels = []
    for v in vertices:
        ins, outs = list(q.in_arrows(v)), list(q.out_arrows(v))
        if not ins or not outs:
            continue
        if len(ins) == 2 and len(outs) == 2:
            if rng.random() < 0.5:
                outs.reverse()
            rels += [Relation(outs[0], ins[0]), Relation(outs[1], ins[1])]
        elif len(ins) == 2 or len(outs) == 2:
            rels.append(Relation(rng.choice(outs), rng.choice(ins)))
        elif rng.random() < 0.5:
            rels.append(Relation(outs[0], ins[0]))
    return validate_locally_gentle(q, rels)
