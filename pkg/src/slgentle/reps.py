"""Semilinear representations over F_{p^n}: string and band modules, homs.

A representation assigns a dimension to each vertex and to each arrow ``a``
a matrix ``M_a`` together with the automorphism ``sigma_a = Frob^k``; the
arrow acts by ``x -> M_a sigma_a(x)`` on coordinate vectors.  Matrices are
numpy arrays of field-element codes (see :mod:`slgentle.galois`).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .galois import FiniteField, FreeWord, FrobPower, pi_sequence
from .quiver import LocallyGentlePair
from .words import Word, is_admissible, vertex_sequence


class Undecided(RuntimeError):
    """The endomorphism ring is too large to enumerate."""


# matrices over F_{p^n}


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def identity(field: FiniteField, m: int) -> np.ndarray:
    return np.eye(m, dtype=np.int64)


def mat_add(F: FiniteField, A, B) -> np.ndarray:
    return F.add_table[A, B]


def mat_neg(F: FiniteField, A) -> np.ndarray:
    return F.neg_table[A]


def mat_sub(F: FiniteField, A, B) -> np.ndarray:
    return F.add_table[A, F.neg_table[B]]


def mat_mul(F: FiniteField, A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add_table[out, F.mul_table[A[:, k, None], B[None, k, :]]]
    return out


def mat_frob(F: FiniteField, A, k: int) -> np.ndarray:
    return F.frob_table(k)[np.asarray(A)]


def mat_scale(F: FiniteField, lam: int, A) -> np.ndarray:
    return F.mul_table[lam, np.asarray(A)]


def _echelon(F: FiniteField, A):
    """Row echelon form (list of lists) and pivot columns."""
    M = [list(map(int, row)) for row in np.asarray(A)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(F: FiniteField, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(_echelon(F, A)[1])


def inverse(F: FiniteField, A) -> np.ndarray:
    A = np.asarray(A)
    m = A.shape[0]
    aug = np.concatenate([A, identity(F, m)], axis=1)
    M, piv = _echelon(F, aug)
    if piv[:m] != list(range(m)):
        raise ValueError("singular matrix")
    return np.array([row[m:] for row in M], dtype=np.int64).reshape(m, m)


def nullspace_mod_p(A: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of ``{x : A x = 0}`` over F_p."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        for j in others:
            if j != r:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-A[i, f]) % p
        basis.append(x)
    return basis


# representations


@dataclass(frozen=True)
class SemilinearRep:
    field: FiniteField
    dims: dict
    maps: dict  # arrow -> (matrix, frobenius exponent)

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims.values())

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def act(self, a: str, x) -> np.ndarray:
        """``M_a sigma_a(x)`` for a coordinate vector ``x``."""
        M, k = self.maps[a]
        x = np.asarray(x, dtype=np.int64).reshape(-1, 1)
        return mat_mul(self.field, M, mat_frob(self.field, x, k)).ravel()


def _frob_exponents(pair: LocallyGentlePair, sigma, field: FiniteField) -> dict[str, int]:
    out = {}
    for a in pair.quiver.arrows:
        s = (sigma or {}).get(a.name, 0)
        if isinstance(s, FreeWord):
            raise ValueError("modules need concrete Frobenius powers, not symbolic automorphisms")
        if isinstance(s, FrobPower):
            if s.field != field:
                raise ValueError("automorphism over a different field")
            s = s.k
        out[a.name] = int(s) % field.n
    return out


def _concrete_sigma(pair, sigma, field):
    return {a: FrobPower(k, field) for a, k in _frob_exponents(pair, sigma, field).items()}


def string_module(pair: LocallyGentlePair, sigma, field: FiniteField, word: Word) -> SemilinearRep:
    """M(C) for a string or trivial word ``C``.

    Raises:
        ValueError: inadmissible word, a band, or symbolic automorphisms.
    """
    if word.is_band:
        raise ValueError("use band_module for bands")
    if not is_admissible(pair, word):
        raise ValueError("inadmissible word")
    ks = _frob_exponents(pair, sigma, field)
    vs = vertex_sequence(pair, word)
    pos, dims = {}, dict.fromkeys(pair.quiver.vertices, 0)
    for i, v in enumerate(vs):
        pos[i] = dims[v]
        dims[v] += 1
    q = pair.quiver
    maps = {a.name: zeros(dims[a.head], dims[a.tail]) for a in q.arrows}
    for i, x in enumerate(word.letters, start=1):
        h, t = (i - 1, i) if x.direct else (i, i - 1)
        maps[x.arrow][pos[h], pos[t]] = 1
    return SemilinearRep(field, dims, {a: (M, ks[a]) for a, M in maps.items()})


@dataclass(frozen=True)
class BandParameter:
    m: int
    T: np.ndarray

    def __post_init__(self):
        T = np.asarray(self.T, dtype=np.int64).reshape(self.m, self.m)
        object.__setattr__(self, "T", T)


def band_module(pair: LocallyGentlePair, sigma, field: FiniteField, band: Word,
                V: BandParameter) -> SemilinearRep:
    """M(C) tensored over K[t, t^-1; pi_C] with ``V``.

    The basis is ``b_j (x) e_l`` for ``j < n``.  Non-seam letters act by
    identity blocks; the letter ``C_n`` across the seam acts by
    ``pi_{n-1}(T)`` (direct) or ``pi_n(T^-1)`` (inverse).

    Raises:
        ValueError: not a band, inadmissible, singular ``T``.
    """
    if not band.is_band:
        raise ValueError("band_module needs a band")
    if not is_admissible(pair, band):
        raise ValueError("inadmissible band")
    if rank(field, V.T) != V.m:
        raise ValueError("band parameter T is singular")
    ks = _frob_exponents(pair, sigma, field)
    pis = pi_sequence(band, _concrete_sigma(pair, sigma, field))
    n, m = len(band.letters), V.m
    vs = vertex_sequence(pair, band)[:n]
    pos, dims = {}, dict.fromkeys(pair.quiver.vertices, 0)
    for j, v in enumerate(vs):
        pos[j] = dims[v]
        dims[v] += m
    q = pair.quiver
    maps = {a.name: zeros(dims[a.head], dims[a.tail]) for a in q.arrows}
    eye = identity(field, m)
    for i, x in enumerate(band.letters, start=1):
        h, t = (i - 1, i) if x.direct else (i, i - 1)
        block = eye
        if i == n:
            if x.direct:
                block = mat_frob(field, V.T, pis[n - 1].k)
            else:
                block = mat_frob(field, inverse(field, V.T), pis[n].k)
        h, t = h % n, t % n
        M = maps[x.arrow]
        M[pos[h]:pos[h] + m, pos[t]:pos[t] + m] = block
    return SemilinearRep(field, dims, {a: (M, ks[a]) for a, M in maps.items()})


def direct_sum(r1: SemilinearRep, r2: SemilinearRep) -> SemilinearRep:
    F = r1.field
    dims = {v: r1.dims[v] + r2.dims[v] for v in r1.dims}
    maps = {}
    for a, (M1, k1) in r1.maps.items():
        M2, k2 = r2.maps[a]
        if k1 != k2:
            raise ValueError("summands twist the same arrow differently")
        M = zeros(M1.shape[0] + M2.shape[0], M1.shape[1] + M2.shape[1])
        M[: M1.shape[0], : M1.shape[1]] = M1
        M[M1.shape[0]:, M1.shape[1]:] = M2
        maps[a] = (M, k1)
    return SemilinearRep(F, dims, maps)


@dataclass
class RepReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_rep(rep: SemilinearRep, pair: LocallyGentlePair, samples: int = 8, seed: int = 0) -> RepReport:
    """Shapes, relations ``M_b sigma_b(M_a) = 0`` and sampled semilinearity."""
    F = rep.field
    rng = random.Random(seed)
    report = RepReport()
    q = pair.quiver
    for a in q.arrows:
        M, _ = rep.maps[a.name]
        if M.shape != (rep.dims[a.head], rep.dims[a.tail]):
            report.failures.append(f"shape of {a.name}")
    if report.failures:
        return report
    for r in pair.sorted_relations():
        Mb, kb = rep.maps[r.outer]
        Ma, _ = rep.maps[r.inner]
        if np.any(mat_mul(F, Mb, mat_frob(F, Ma, kb))):
            report.failures.append(f"relation {r} does not vanish")
    for a in q.arrows:
        _, k = rep.maps[a.name]
        d = rep.dims[a.tail]
        for _ in range(samples):
            lam = rng.randrange(F.q)
            x = np.array([rng.randrange(F.q) for _ in range(d)], dtype=np.int64)
            lhs = rep.act(a.name, F.mul_table[lam, x])
            rhs = F.mul_table[F.frob(lam, k), rep.act(a.name, x)]
            if not np.array_equal(lhs, rhs):
                report.failures.append(f"semilinearity of {a.name}")
                break
    return report


# homomorphisms


@dataclass(frozen=True)
class HomSpace:
    dim: int
    basis: tuple  # each a dict vertex -> matrix
    prime: int


def hom_space(r1: SemilinearRep, r2: SemilinearRep, pair: LocallyGentlePair) -> HomSpace:
    """Families ``P_u`` with ``P_h M_a = N_a sigma_a(P_t)``, solved over F_p.

    Raises:
        ValueError: different fields, dimension keys or twists.
    """
    F = r1.field
    if r2.field != F:
        raise ValueError("representations over different fields")
    q = pair.quiver
    for a in q.arrows:
        if r1.maps[a.name][1] != r2.maps[a.name][1]:
            raise ValueError(f"arrow {a.name} twisted differently")
    unknowns = []  # (vertex, row, col, power)
    for v in q.vertices:
        for i in range(r2.dims[v]):
            for j in range(r1.dims[v]):
                for e in range(F.n):
                    unknowns.append((v, i, j, e))
    if not unknowns:
        return HomSpace(0, (), F.p)

    def residual(P):
        out = []
        for a in q.arrows:
            M, k = r1.maps[a.name]
            N, _ = r2.maps[a.name]
            lhs = mat_mul(F, P[a.head], M)
            rhs = mat_mul(F, N, mat_frob(F, P[a.tail], k))
            out.append(mat_sub(F, lhs, rhs).ravel())
        codes = np.concatenate(out) if out else np.zeros(0, dtype=np.int64)
        return F._digit_table[codes].ravel()

    def family(vec):
        P = {v: zeros(r2.dims[v], r1.dims[v]) for v in q.vertices}
        for coef, (v, i, j, e) in zip(vec, unknowns):
            if coef:
                P[v][i, j] = F.add(int(P[v][i, j]), F.mul(int(coef) % F.p, F.p**e))
        return P

    cols = []
    for idx in range(len(unknowns)):
        unit = np.zeros(len(unknowns), dtype=np.int64)
        unit[idx] = 1
        cols.append(residual(family(unit)))
    A = np.stack(cols, axis=1) if cols[0].size else np.zeros((0, len(unknowns)), dtype=np.int64)
    null = nullspace_mod_p(A, F.p) if A.shape[0] else [
        np.eye(len(unknowns), dtype=np.int64)[i] for i in range(len(unknowns))]
    return HomSpace(len(null), tuple(family(x) for x in null), F.p)


def _is_nilpotent(F, M) -> bool:
    d = M.shape[0]
    P = M
    for _ in range(max(d - 1, 0)):
        P = mat_mul(F, P, M)
    return not np.any(P)


def _elements(F: FiniteField, hom: HomSpace, verts, limit: int):
    """Every F_p-combination of the basis, as vertex -> matrix."""
    if F.p**hom.dim > limit:
        raise Undecided(f"Hom has {F.p}^{hom.dim} elements; refusing to enumerate")
    if not hom.basis:
        yield {v: None for v in verts}
        return
    digits = {v: np.stack([F._digit_table[B[v]] for B in hom.basis]) for v in verts}
    weights = F._weights
    for coeffs in itertools.product(range(F.p), repeat=hom.dim):
        c = np.array(coeffs, dtype=np.int64)
        yield {v: (np.tensordot(c, digits[v], axes=1) % F.p) @ weights for v in verts}


def is_indecomposable(rep: SemilinearRep, pair: LocallyGentlePair, limit: int = 2**20) -> bool:
    """Local-ring test on the full endomorphism ring.

    Raises:
        Undecided: ``p ** dim End`` exceeds ``limit``.
    """
    if rep.total_dim == 0:
        return False
    F = rep.field
    end = hom_space(rep, rep, pair)
    verts = [v for v in pair.quiver.vertices if rep.dims[v]]
    for mats in _elements(F, end, verts, limit):
        invertible = all(rank(F, mats[v]) == rep.dims[v] for v in verts)
        if invertible:
            continue
        if not all(_is_nilpotent(F, mats[v]) for v in verts):
            return False
    return True


def is_isomorphic(r1: SemilinearRep, r2: SemilinearRep, pair: LocallyGentlePair,
                  limit: int = 2**20) -> bool:
    """Search Hom(r1, r2) for a homomorphism that is bijective at every vertex.

    Raises:
        Undecided: ``p ** dim Hom`` exceeds ``limit``.
    """
    if r1.dims != r2.dims:
        return False
    verts = [v for v in pair.quiver.vertices if r1.dims[v]]
    if not verts:
        return True
    hom = hom_space(r1, r2, pair)
    if not hom.basis:
        return False
    F = r1.field
    return any(
        all(rank(F, mats[v]) == r1.dims[v] for v in verts)
        for mats in _elements(F, hom, verts, limit)
    )
