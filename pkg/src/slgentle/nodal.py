"""The embedding of a semilinear gentle algebra into the path algebra of its excision.

Delta sends ``e_v`` to ``e_v`` for non-relational ``v`` and to
``e_{v#} + e_{vb}`` otherwise, and each arrow to the arrow of the same name.
The checks below verify the three conditions for the image to be nodal:
injectivity, equal radicals and simple modules of tensor length at most 2.
Heredity of the target path algebra is assumed, not verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraElement, NotGentle, SemilinearAlgebra, idempotent_and_radical_basis
from .galois import FiniteField, FrobPower
from .quiver import LocallyGentlePair, Path, admissible_paths, is_gentle
from .zembyk import ExcisionResult, excision


@dataclass
class NodalEmbedding:
    source: SemilinearAlgebra
    target: SemilinearAlgebra
    excised: ExcisionResult

    def path_image(self, p: Path) -> Path | list[Path]:
        """Image of a basis path: a path, or two trivial paths for a split vertex."""
        if p.is_trivial:
            img = self.excised.vertex_map[p.vertex]
            return Path.trivial(img[0]) if len(img) == 1 else [Path.trivial(w) for w in img]
        return Path(p.arrows)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        out = {}
        f = self.target.field
        for p, c in x.terms:
            img = self.path_image(p)
            for r in img if isinstance(img, list) else [img]:
                out[r] = f.add(out.get(r, 0), c)
        return self.target._make(out)


def embedding(pair: LocallyGentlePair, field: FiniteField | None = None, sigma=None) -> NodalEmbedding:
    """Delta for a gentle pair; ``field`` defaults to F_2 with trivial twists.

    Raises:
        NotGentle: the pair is not gentle.
    """
    if not is_gentle(pair):
        raise NotGentle("nodal embedding needs a gentle pair")
    field = field or FiniteField(2, 1)
    sigma = {a: s for a, s in (sigma or {}).items() if isinstance(s, FrobPower)}
    ex = excision(pair)
    src = SemilinearAlgebra(pair, field, sigma)
    tgt = SemilinearAlgebra(ex.pair, field, sigma)
    return NodalEmbedding(src, tgt, ex)


def delta_embed(x: AlgebraElement, emb: NodalEmbedding | None = None) -> AlgebraElement:
    emb = emb or embedding(x.algebra.pair, x.algebra.field, x.algebra.sigma)
    return emb(x)


@dataclass
class NodalReport:
    injective: bool
    rad_equal: bool
    rad_dims: tuple[int, int]
    tensor_lengths: dict = field(default_factory=dict)
    dims: tuple[int, int] = (0, 0)
    hereditary_assumed: bool = True

    @property
    def verdict(self) -> bool:
        return self.injective and self.rad_equal and all(n <= 2 for n in self.tensor_lengths.values())


def check_nodal(pair: LocallyGentlePair, sigma=None, field: FiniteField | None = None) -> NodalReport:
    """Verify the nodal conditions for Delta.

    Raises:
        NotGentle: the pair is not gentle (distinct from a failed verdict).
    """
    emb = embedding(pair, field, sigma)
    idem, rad = idempotent_and_radical_basis(pair)
    gamma_pair = emb.excised.pair
    gamma_paths = admissible_paths(gamma_pair, len(gamma_pair.quiver.arrows))
    gamma_rad = {p for p in gamma_paths if not p.is_trivial}

    # (1) distinct basis elements go to distinct (disjointly supported) images
    images = [emb(emb.source.element({p: 1})) for p in idem + rad]
    supports = [frozenset(p for p, _ in im.terms) for im in images]
    injective = all(supports) and all(
        not (s & t) for i, s in enumerate(supports) for t in supports[i + 1:]
    )
    for p in rad:
        if not gamma_pair.is_admissible_path(emb.path_image(p)):
            injective = False

    # (2) radical of Lambda maps onto the paths of positive length
    rad_images = {emb.path_image(p) for p in rad}
    rad_equal = rad_images == gamma_rad and len(rad) == len(gamma_rad)

    # (3) idempotent count per vertex
    lengths = {}
    for v in pair.quiver.vertices:
        dv = emb(emb.source.e(v))
        lengths[v] = sum(
            not emb.target.multiply(emb.target.e(w), dv).is_zero()
            for w in gamma_pair.quiver.vertices
        )
    return NodalReport(
        injective=injective,
        rad_equal=rad_equal,
        rad_dims=(len(rad), len(gamma_rad)),
        tensor_lengths=lengths,
        dims=(len(idem) + len(rad), len(gamma_paths)),
    )
