"""The marked surface with dissection attached to a locally gentle pair.

Each vertex ``v`` is an arc ``tau_v``.  Each arc has two ends (0 and 1) and
two sides (0 = right of the arc oriented from end 0 to end 1, 1 = left).
An arrow ``a`` is the corner at a marked point where ``tau_h(a)`` follows
``tau_t(a)`` clockwise.  That corner occupies one quarter (end, side) of
each of the two arcs:

* on ``tau_t(a)`` the quarter clockwise of the arc, side ``e``;
* on ``tau_h(a)`` the quarter counter-clockwise of the arc, side ``1 - e``.

Here ``e`` is the end of that arc at the marked point.  Marked points
(fans) come from chains of admissible compositions and faces from chains of
relations.  Quarters not used by any corner touch the boundary, and
matching them up traces the boundary components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .galois import FreeWord
from .quiver import Arrow, LocallyGentlePair, Quiver, validate_locally_gentle
from .words import Word, is_admissible, vertex_sequence

ADMISSIBLE = "admissible"
RELATIONAL = "relational"

POLYGON = "Polygon"
ANNULUS = "Annulus"
ONCE_PUNCTURED_DISK = "OncePuncturedDisk"

PIECE_FOR_COMPONENT = {
    "LineA": POLYGON,
    "CycleMixed": ANNULUS,
    "CycleEquioriented": ONCE_PUNCTURED_DISK,
}


class SurfaceError(RuntimeError):
    """Internal consistency failure while assembling the surface."""


@dataclass(frozen=True)
class Thread:
    """A maximal chain of arrows; empty threads sit in a free (arc, slot)."""

    arrows: tuple[str, ...] = ()
    cyclic: bool = False
    anchor: tuple[str, int] | None = None

    @property
    def is_empty(self) -> bool:
        return not self.arrows

    def weight(self) -> int:
        """Number of arc-end (or arc-side) slots the thread occupies."""
        return len(self.arrows) if self.cyclic else len(self.arrows) + 1


@dataclass(frozen=True)
class _Visit:
    vertex: str
    inc: str | None
    out: str | None


def _chains(pair: LocallyGentlePair, mode: str) -> list[tuple[tuple[str, ...], bool]]:
    if mode == ADMISSIBLE:
        succ, pred = pair.admissible_successor, pair.admissible_predecessor
    elif mode == RELATIONAL:
        succ, pred = pair.relational_successor, pair.relational_predecessor
    else:
        raise ValueError(f"unknown thread mode {mode!r}")
    idx = pair.quiver.arrow_index
    used: set[str] = set()
    out = []
    for arr in pair.quiver.arrows:
        a = arr.name
        if a in used:
            continue
        start, cyclic = a, False
        p = pred(start)
        while p is not None:
            if p == a:
                cyclic = True
                break
            start, p = p, pred(p)
        chain = [start]
        nxt = succ(start)
        while nxt is not None and nxt != start:
            chain.append(nxt)
            nxt = succ(nxt)
        if cyclic:
            m = min(range(len(chain)), key=lambda i: idx[chain[i]])
            chain = chain[m:] + chain[:m]
        used.update(chain)
        out.append((tuple(chain), cyclic))
    return out


def _visits(pair: LocallyGentlePair, chain, cyclic) -> list[_Visit]:
    q = pair.quiver
    k = len(chain)
    vis = []
    if cyclic:
        for m in range(k):
            vis.append(_Visit(q.head(chain[m]), chain[m], chain[(m + 1) % k]))
    else:
        vis.append(_Visit(q.tail(chain[0]), None, chain[0]))
        for m in range(k - 1):
            vis.append(_Visit(q.head(chain[m]), chain[m], chain[m + 1]))
        vis.append(_Visit(q.head(chain[-1]), chain[-1], None))
    return vis


@dataclass
class _Layout:
    """Raw slot bookkeeping shared by the thread listing and the surface."""

    fans: list[Thread]
    faces: list[Thread]
    fan_slots: list[list[tuple[str, int]]]
    face_slots: list[list[tuple[str, int]]]
    end_of: dict  # (arrow, "tail"/"head") -> end
    side_of: dict  # (arrow, "tail"/"head") -> side


def _layout(pair: LocallyGentlePair) -> _Layout:
    q = pair.quiver
    idx = q.arrow_index

    # fans and ends
    fans: list[Thread] = []
    fan_visits: list[list[_Visit]] = []
    for chain, cyclic in _chains(pair, ADMISSIBLE):
        fans.append(Thread(chain, cyclic))
        fan_visits.append(_visits(pair, chain, cyclic))
    at_vertex: dict[str, list[tuple[int, int]]] = {v: [] for v in q.vertices}
    for f, vis in enumerate(fan_visits):
        for j, x in enumerate(vis):
            at_vertex[x.vertex].append((f, j))
    end_of: dict = {}
    fan_slot_map: dict[tuple[int, int], tuple[str, int]] = {}
    empty_fans = []
    for v in q.vertices:
        here = at_vertex[v]
        if len(here) > 2:
            raise SurfaceError(f"arc {v} has more than two fan ends")

        def order(fj):
            x = fan_visits[fj[0]][fj[1]]
            if x.inc is not None:
                return (0, idx[x.inc])
            return (1, idx[x.out])

        here.sort(key=order)
        for end, (f, j) in enumerate(here):
            x = fan_visits[f][j]
            fan_slot_map[(f, j)] = (v, end)
            if x.inc is not None:
                end_of[(x.inc, "head")] = end
            if x.out is not None:
                end_of[(x.out, "tail")] = end
        for end in range(len(here), 2):
            empty_fans.append(Thread((), False, (v, end)))
    fan_slots = [[fan_slot_map[(f, j)] for j in range(len(vis))] for f, vis in enumerate(fan_visits)]
    for t in empty_fans:
        fans.append(t)
        fan_slots.append([t.anchor])

    # faces and sides, forced by the corners
    side_of = {}
    for a in q.arrows:
        side_of[(a.name, "tail")] = end_of[(a.name, "tail")]
        side_of[(a.name, "head")] = 1 - end_of[(a.name, "head")]
    faces: list[Thread] = []
    face_slots: list[list[tuple[str, int]]] = []
    used_sides: dict[str, set[int]] = {v: set() for v in q.vertices}
    for chain, cyclic in _chains(pair, RELATIONAL):
        slots = []
        for x in _visits(pair, chain, cyclic):
            sides = set()
            if x.inc is not None:
                sides.add(side_of[(x.inc, "head")])
            if x.out is not None:
                sides.add(side_of[(x.out, "tail")])
            if len(sides) != 1:
                raise SurfaceError(f"face visit at {x.vertex} sits on both sides")
            s = sides.pop()
            if s in used_sides[x.vertex]:
                raise SurfaceError(f"side {s} of arc {x.vertex} claimed twice")
            used_sides[x.vertex].add(s)
            slots.append((x.vertex, s))
        faces.append(Thread(chain, cyclic))
        face_slots.append(slots)
    for v in q.vertices:
        for s in (0, 1):
            if s not in used_sides[v]:
                faces.append(Thread((), False, (v, s)))
                face_slots.append([(v, s)])
    return _Layout(fans, faces, fan_slots, face_slots, end_of, side_of)


def threads(pair: LocallyGentlePair, mode: str) -> list[Thread]:
    """Fans (``ADMISSIBLE``) or faces (``RELATIONAL``), empty threads last."""
    lay = _layout(pair)
    if mode == ADMISSIBLE:
        return lay.fans
    if mode == RELATIONAL:
        return lay.faces
    raise ValueError(f"unknown thread mode {mode!r}")


@dataclass(frozen=True)
class SurfaceComponent:
    arcs: tuple[str, ...]
    euler_characteristic: int
    genus: int
    boundary_components: int
    punctures_V: int
    punctures_Vstar: int


@dataclass(frozen=True)
class DissectedSurface:
    """Fans, faces, slot data and topological invariants of a pair's surface.

    Boundary walks are lists alternating ``("V", fan_index)`` and
    ``("F", face_index)``, read clockwise.
    """

    pair: LocallyGentlePair
    arcs: tuple[str, ...]
    v_fans: tuple[Thread, ...]
    faces: tuple[Thread, ...]
    fan_slots: tuple[tuple[tuple[str, int], ...], ...]
    face_slots: tuple[tuple[tuple[str, int], ...], ...]
    end_assignment: dict
    side_assignment: dict
    boundary_walks: tuple[tuple[tuple[str, int], ...], ...]
    components: tuple[SurfaceComponent, ...] = field(default=())

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.components)

    @property
    def boundary_components(self) -> int:
        return sum(c.boundary_components for c in self.components)

    @property
    def punctures_V(self) -> int:
        return sum(t.cyclic for t in self.v_fans)

    @property
    def punctures_Vstar(self) -> int:
        return sum(t.cyclic for t in self.faces)

    def face_sides(self, i: int) -> list[str]:
        """Arcs bounding face ``i`` in order along the face."""
        return [v for v, _ in self.face_slots[i]]


def build_surface(pair: LocallyGentlePair) -> DissectedSurface:
    q = pair.quiver
    lay = _layout(pair)

    # quarter ownership
    fan_at = {}
    for f, slots in enumerate(lay.fan_slots):
        for s in slots:
            fan_at[s] = f
    face_at = {}
    for g, slots in enumerate(lay.face_slots):
        for s in slots:
            face_at[s] = g
    quarters = {(v, e, s) for v in q.vertices for e in (0, 1) for s in (0, 1)}
    used = set()
    for a in q.arrows:
        et, eh = lay.end_of[(a.name, "tail")], lay.end_of[(a.name, "head")]
        for qt in ((a.tail, et, et), (a.head, eh, 1 - eh)):
            if qt in used:
                raise SurfaceError(f"quarter {qt} used by two corners")
            used.add(qt)
    free = quarters - used

    fan_free: dict[int, list] = {}
    face_free: dict[int, list] = {}
    for qt in sorted(free):
        v, e, s = qt
        fan_free.setdefault(fan_at[(v, e)], []).append(qt)
        face_free.setdefault(face_at[(v, s)], []).append(qt)
    for kind, threads_, free_map in (("fan", lay.fans, fan_free), ("face", lay.faces, face_free)):
        for i, t in enumerate(threads_):
            want = 0 if t.cyclic else 2
            if len(free_map.get(i, [])) != want:
                raise SurfaceError(f"{kind} {i} touches the boundary {len(free_map.get(i, []))} times")

    def exit_quarter(f: int):
        # the free quarter counter-clockwise of the fan's first arc
        v, e = lay.fan_slots[f][0]
        return (v, e, 1 - e)

    walks = []
    seen_fans: set[int] = set()
    for f, t in enumerate(lay.fans):
        if t.cyclic or f in seen_fans:
            continue
        walk = []
        cur = f
        while True:
            if cur in seen_fans:
                raise SurfaceError("boundary walk revisits a fan")
            seen_fans.add(cur)
            walk.append(("V", cur))
            qt = exit_quarter(cur)
            if qt not in free:
                raise SurfaceError("fan exit quarter is not free")
            g = face_at[(qt[0], qt[2])]
            walk.append(("F", g))
            other = [x for x in face_free[g] if x != qt]
            if len(other) != 1:
                raise SurfaceError("face has no second boundary quarter")
            nxt_q = other[0]
            cur = fan_at[(nxt_q[0], nxt_q[1])]
            back = lay.fan_slots[cur][-1]
            if (back[0], back[1], back[1]) != nxt_q:
                raise SurfaceError("boundary walk enters a fan away from its last arc")
            if cur == f:
                break
        walks.append(tuple(walk))
    face_seen = [x for w in walks for k, x in w if k == "F"]
    linear_faces = [i for i, t in enumerate(lay.faces) if not t.cyclic]
    if sorted(face_seen) != linear_faces:
        raise SurfaceError("boundary walks do not cover every linear face exactly once")

    comps = []
    for arcs in q.components():
        arcset = set(arcs)
        fans_c = [i for i, sl in enumerate(lay.fan_slots) if sl[0][0] in arcset]
        faces_c = [i for i, sl in enumerate(lay.face_slots) if sl[0][0] in arcset]
        walks_c = [w for w in walks if lay.fan_slots[w[0][1]][0][0] in arcset]
        pv = sum(lay.fans[i].cyclic for i in fans_c)
        pvs = sum(lay.faces[i].cyclic for i in faces_c)
        chi = pv - len(arcs) + len(faces_c)
        b = len(walks_c)
        twice_g = 2 - chi - b
        if twice_g < 0 or twice_g % 2:
            raise SurfaceError(f"inconsistent Euler data chi={chi}, b={b}")
        n_bdry_fans = sum(not lay.fans[i].cyclic for i in fans_c)
        n_bdry_faces = sum(not lay.faces[i].cyclic for i in faces_c)
        if n_bdry_fans != n_bdry_faces:
            raise SurfaceError("boundary marked points and boundary faces disagree")
        comps.append(SurfaceComponent(tuple(arcs), chi, twice_g // 2, b, pv, pvs))

    return DissectedSurface(
        pair=pair,
        arcs=q.vertices,
        v_fans=tuple(lay.fans),
        faces=tuple(lay.faces),
        fan_slots=tuple(tuple(s) for s in lay.fan_slots),
        face_slots=tuple(tuple(s) for s in lay.face_slots),
        end_assignment=dict(lay.end_of),
        side_assignment=dict(lay.side_of),
        boundary_walks=tuple(walks),
        components=tuple(comps),
    )


def dual(pair: LocallyGentlePair) -> LocallyGentlePair:
    """Same quiver, relations replaced by their complement among composable pairs."""
    comp = [r for r in pair.quiver.composable_pairs() if r not in pair.relations]
    return validate_locally_gentle(pair.quiver, comp)


def relational_dual_arcs(pair: LocallyGentlePair) -> frozenset[str]:
    """Arcs whose dual arcs form R*: one per relational vertex (by vertex name)."""
    return frozenset(pair.relational_vertices())


# tilings


@dataclass(frozen=True)
class TilingFace:
    """A face of the dissection refined by R*.

    ``sides`` lists the dissection arcs on its boundary with ``"whole"`` or
    ``"half"``; a face with two sides carries the arrow at their corner.
    """

    id: str
    parent: int
    sides: tuple[tuple[str, str], ...]
    arrow: str | None = None

    @property
    def kind(self) -> int:
        return len(self.sides)


@dataclass(frozen=True)
class LabeledTiling:
    surface: DissectedSurface
    rstar: frozenset[str]
    faces: dict
    arrow_face: dict
    face_label: dict

    def identity(self):
        for lab in self.face_label.values():
            return lab.identity()
        return FreeWord()


def _subdivide(surface: DissectedSurface, g: int, rstar) -> list[TilingFace]:
    pair = surface.pair
    q = pair.quiver
    t = surface.faces[g]
    pieces = []
    if t.cyclic:
        for a in t.arrows:
            for v in (q.tail(a), q.head(a)):
                if v not in rstar:
                    raise SurfaceError(f"internal face side {v} is not relational")
            pieces.append(((q.tail(a), "half"), (q.head(a), "half")), )
        return [
            TilingFace(f"F{g}.{i}", g, sides, a)
            for i, (sides, a) in enumerate(zip(pieces, t.arrows))
        ]
    if t.is_empty:
        sides = [t.anchor[0]]
    else:
        sides = [q.tail(t.arrows[0])] + [q.head(a) for a in t.arrows]
    cuts = [j for j, v in enumerate(sides) if v in rstar]
    bounds = [None] + cuts + [None]
    out = []
    for r in range(len(bounds) - 1):
        lo, hi = bounds[r], bounds[r + 1]
        start = 0 if lo is None else lo
        stop = len(sides) - 1 if hi is None else hi
        segment = []
        for j in range(start, stop + 1):
            part = "half" if j in (lo, hi) else "whole"
            segment.append((sides[j], part))
        if len(segment) > 2:
            raise SurfaceError(f"tiling face of face {g} has {len(segment)} dissection sides")
        arrow = t.arrows[start] if len(segment) == 2 else None
        out.append(TilingFace(f"F{g}.{r}", g, tuple(segment), arrow))
    return out


def labeled_tiling(pair: LocallyGentlePair, sigma, surface: DissectedSurface | None = None) -> LabeledTiling:
    """Refine the faces by the dual arcs of relational vertices and label them.

    Each face touching two dissection arcs at a corner gets the automorphism
    of that corner's arrow.
    """
    surface = surface or build_surface(pair)
    rstar = relational_dual_arcs(pair)
    faces = {}
    for g in range(len(surface.faces)):
        for tf in _subdivide(surface, g, rstar):
            faces[tf.id] = tf
    arrow_face = {}
    for tf in faces.values():
        if tf.arrow is not None:
            if tf.arrow in arrow_face:
                raise SurfaceError(f"arrow {tf.arrow} labels two faces")
            arrow_face[tf.arrow] = tf.id
    if set(arrow_face) != {a.name for a in pair.quiver.arrows}:
        raise SurfaceError("type-2 faces do not match the arrows")
    face_label = {fid: sigma[a] for a, fid in arrow_face.items()}
    return LabeledTiling(surface, rstar, faces, arrow_face, face_label)


def arc_semilinearity(tiling: LabeledTiling, word: Word) -> list:
    """Automorphisms sigma_{gamma,0..n} read off the labeled faces crossed.

    Crossing from arc ``rho_i`` to ``rho_{i+1}`` runs through the two-sided
    face at their shared corner.  The face's sides are listed along its
    orientation; when the second one is crossed first the corner lies to
    the right and the inverse label is applied, otherwise the label itself.

    Raises:
        ValueError: ``word`` is not admissible.
    """
    pair = tiling.surface.pair
    if not is_admissible(pair, word):
        raise ValueError("inadmissible word")
    vs = vertex_sequence(pair, word)
    cur = tiling.identity()
    out = [cur]
    for i, letter in enumerate(word.letters):
        fid = tiling.arrow_face[letter.arrow]
        face = tiling.faces[fid]
        if sorted(v for v, _ in face.sides) != sorted((vs[i], vs[i + 1])):
            raise SurfaceError(f"face {fid} does not sit between arcs {vs[i]} and {vs[i + 1]}")
        # sides run along the face's orientation, so the shared corner is on
        # the right exactly when the later side is crossed first
        first, second = face.sides[0][0], face.sides[1][0]
        right = vs[i] == second if first != second else letter.direct
        lab = tiling.face_label[fid]
        cur = (lab.invert() if right else lab).compose(cur)
        out.append(cur)
    return out


# split


@dataclass(frozen=True)
class SplitPiece:
    surface: DissectedSurface
    pair: LocallyGentlePair
    cls: str
    half_of: dict  # piece vertex -> (original vertex, end or None)

    @property
    def arrow_names(self) -> frozenset[str]:
        return frozenset(a.name for a in self.pair.quiver.arrows)


def classify_piece(surface: DissectedSurface) -> str:
    (c,) = surface.components
    punct = c.punctures_V + c.punctures_Vstar
    if c.genus == 0 and c.boundary_components == 1 and punct == 0:
        return POLYGON
    if c.genus == 0 and c.boundary_components == 2 and punct == 0:
        return ANNULUS
    if c.genus == 0 and c.boundary_components == 1 and c.punctures_V == 1 and c.punctures_Vstar == 0:
        return ONCE_PUNCTURED_DISK
    raise SurfaceError(f"split piece is not a polygon, annulus or once-punctured disk: {c}")


def split(pair: LocallyGentlePair) -> list[SplitPiece]:
    """Cut the surface along the dual arcs of relational vertices.

    Cutting across ``tau_v`` separates its two ends, so the pieces' arcs are
    the half-arcs ``v[0]``, ``v[1]`` of relational arcs and the untouched
    arcs; each corner stays at the end of the arcs it occupied.
    """
    surface = build_surface(pair)
    q = pair.quiver
    rel = set(pair.relational_vertices())

    def name(v, e):
        return f"{v}[{e}]" if v in rel else v

    vertices = []
    half_of = {}
    for v in q.vertices:
        if v in rel:
            for e in (0, 1):
                vertices.append(name(v, e))
                half_of[name(v, e)] = (v, e)
        else:
            vertices.append(v)
            half_of[v] = (v, None)
    arrows = []
    for a in q.arrows:
        t = name(a.tail, surface.end_assignment[(a.name, "tail")])
        h = name(a.head, surface.end_assignment[(a.name, "head")])
        arrows.append(Arrow(a.name, t, h))
    cut = Quiver(tuple(vertices), tuple(arrows))
    pieces = []
    for vs in cut.components():
        sub = validate_locally_gentle(cut.subquiver(vs), ())
        s = build_surface(sub)
        pieces.append(SplitPiece(s, sub, classify_piece(s), {v: half_of[v] for v in vs}))
    return pieces
