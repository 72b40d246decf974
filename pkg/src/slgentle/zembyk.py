"""Levees at relational vertices and the full excision of all relations.

A levee replaces a relational vertex ``v`` by two vertices so that every
relation through ``v`` is cut while admissible compositions through ``v``
survive.  Repeating this at every relational vertex leaves a quiver
without relations whose components are lines and cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .quiver import (
    Arrow,
    LocallyGentlePair,
    Quiver,
    QuiverError,
    classify_vertex,
    validate_locally_gentle,
)

LINE_A = "LineA"
CYCLE_EQUIORIENTED = "CycleEquioriented"
CYCLE_MIXED = "CycleMixed"


@dataclass(frozen=True)
class LeveeResult:
    pair: LocallyGentlePair
    sharp: str
    flat: str
    arrow_map: dict


@dataclass(frozen=True)
class Component:
    quiver: Quiver
    cls: str

    @property
    def arrow_names(self) -> frozenset[str]:
        return frozenset(a.name for a in self.quiver.arrows)


@dataclass(frozen=True)
class ExcisionResult:
    quiver: Quiver
    vertex_map: dict
    arrow_map: dict
    components: tuple[Component, ...]

    @property
    def pair(self) -> LocallyGentlePair:
        return LocallyGentlePair(self.quiver, frozenset())


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def split_incidences(pair: LocallyGentlePair, v: str):
    """Group the arrow ends at ``v`` into two halves that keep admissible pairs.

    Returns ``(sharp_side, flat_side)``, each a list of ``(arrow, end)`` with
    ``end`` in ``{"in", "out"}``.  Every relation through ``v`` has its two
    arrows on different sides.  The half holding the earliest declared
    incidence (incoming before outgoing for a loop) becomes the sharp side.
    """
    q = pair.quiver
    ins, outs = q.in_arrows(v), q.out_arrows(v)
    groups: list[list[tuple[str, str]]] = []
    placed: set[tuple[str, str]] = set()
    for a in ins:
        g = [(a, "in")]
        for b in outs:
            if not pair.in_z(b, a):
                g.append((b, "out"))
        groups.append(g)
        placed.update(g)
    for b in outs:
        if (b, "out") not in placed:
            groups.append([(b, "out")])
    if len(groups) != 2:
        raise QuiverError(f"vertex {v!r} does not split into two halves")
    idx = q.arrow_index

    def first(g):
        return min((idx[a], 0 if end == "in" else 1) for a, end in g)

    groups.sort(key=first)
    return groups[0], groups[1]


def levee(pair: LocallyGentlePair, v: str) -> LeveeResult:
    """Split the relational vertex ``v`` into ``v#`` and ``vb``.

    Raises:
        QuiverError: ``v`` is unknown or not relational.
    """
    q = pair.quiver
    if not classify_vertex(pair, v).relational:
        raise QuiverError(f"vertex {v!r} is not relational")
    sharp_side, flat_side = split_incidences(pair, v)
    taken = set(q.vertices) - {v}
    sharp = _fresh(f"{v}#", taken)
    flat = _fresh(f"{v}b", taken | {sharp})
    where = {}
    for inc in sharp_side:
        where[inc] = sharp
    for inc in flat_side:
        where[inc] = flat

    arrows = []
    for arr in q.arrows:
        t = where.get((arr.name, "out"), arr.tail)
        h = where.get((arr.name, "in"), arr.head)
        arrows.append(Arrow(arr.name, t, h))
    vertices = []
    for u in q.vertices:
        vertices.extend((sharp, flat) if u == v else (u,))
    rels = [r for r in pair.relations if q.tail(r.outer) != v]
    new = validate_locally_gentle(Quiver(tuple(vertices), tuple(arrows)), rels)
    return LeveeResult(new, sharp, flat, {a.name: a.name for a in q.arrows})


def classify_component(q: Quiver) -> str:
    """Dynkin-type shape of a connected relation-free quiver.

    Raises:
        QuiverError: the underlying graph is neither a path nor a cycle.
    """
    nv, na = len(q.vertices), len(q.arrows)
    deg = dict.fromkeys(q.vertices, 0)
    for a in q.arrows:
        deg[a.tail] += 1
        deg[a.head] += 1
    if len(q.components()) != 1:
        raise QuiverError("component is not connected")
    if na == nv - 1 and all(d <= 2 for d in deg.values()):
        return LINE_A
    if na == nv and all(d == 2 for d in deg.values()):
        outdeg = dict.fromkeys(q.vertices, 0)
        for a in q.arrows:
            outdeg[a.tail] += 1
        if all(d == 1 for d in outdeg.values()):
            return CYCLE_EQUIORIENTED
        return CYCLE_MIXED
    raise QuiverError("component is neither a line nor a cycle")


def components_of(q: Quiver) -> tuple[Component, ...]:
    out = []
    for vs in q.components():
        sub = q.subquiver(vs)
        out.append(Component(sub, classify_component(sub)))
    return tuple(out)


def excise_in_order(pair: LocallyGentlePair, order) -> tuple[LocallyGentlePair, dict]:
    """Apply levees at the given relational vertices, one after another."""
    current = pair
    vmap = {v: (v,) for v in pair.quiver.vertices}
    for v in order:
        res = levee(current, v)
        current = res.pair
        vmap[v] = (res.sharp, res.flat)
    return current, vmap


def excision(pair: LocallyGentlePair) -> ExcisionResult:
    """Cut every relation, processing relational vertices in declaration order."""
    current, vmap = excise_in_order(pair, pair.relational_vertices())
    if current.relations:
        raise QuiverError("relations survived excision")
    q = current.quiver
    return ExcisionResult(
        q, vmap, {a.name: a.name for a in q.arrows}, components_of(q)
    )


def to_multidigraph(q: Quiver) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        g.add_edge(a.tail, a.head, name=a.name)
    return g


def quivers_isomorphic(q1: Quiver, q2: Quiver, keep_arrow_names: bool = False) -> bool:
    """Isomorphism of quivers, optionally requiring arrow names to match."""
    g1, g2 = to_multidigraph(q1), to_multidigraph(q2)
    if keep_arrow_names:
        em = nx.algorithms.isomorphism.categorical_multiedge_match("name", None)
        return nx.is_isomorphic(g1, g2, edge_match=em)
    return nx.is_isomorphic(g1, g2)
