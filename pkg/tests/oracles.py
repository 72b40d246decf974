"""Brute-force reference computations, written independently of the library.

Everything here works on plain tuples from the quiver description and does
not call the library's path, word or field code.
"""

from __future__ import annotations

import itertools


def quiver_data(pair):
    q = pair.quiver
    arrows = {a.name: (a.tail, a.head) for a in q.arrows}
    rels = {(r.outer, r.inner) for r in pair.relations}
    return arrows, rels


def brute_paths(pair, max_len):
    """All admissible paths as arrow-name tuples, first arrow traversed first."""
    arrows, rels = quiver_data(pair)
    out = [(("e", v),) for v in pair.quiver.vertices]
    for n in range(1, max_len + 1):
        for seq in itertools.product(arrows, repeat=n):
            ok = all(
                arrows[a][1] == arrows[b][0] and (b, a) not in rels
                for a, b in zip(seq, seq[1:])
            )
            if ok:
                out.append(seq)
    return out


def brute_is_gentle(pair):
    """Finite iff no admissible path has more arrows than the quiver.

    A longer path repeats an arrow and so contains an admissible cycle.
    """
    arrows, rels = quiver_data(pair)
    target = len(arrows) + 1

    def extend(last, n):
        if n == target:
            return True
        for b, (t, _) in arrows.items():
            if t == arrows[last][1] and (b, last) not in rels:
                if extend(b, n + 1):
                    return True
        return False

    return not any(extend(a, 1) for a in arrows)


def _letters(arrows):
    return [(a, 1) for a in arrows] + [(a, -1) for a in arrows]


def _ends(letter, arrows):
    """(head, tail) of a letter; inverse letters swap the arrow's ends."""
    a, s = letter
    t, h = arrows[a]
    return (h, t) if s == 1 else (t, h)


def _joins(x, y, arrows, rels):
    """Can letter ``y`` follow letter ``x`` (``t(x) = h(y)``) admissibly."""
    if _ends(x, arrows)[1] != _ends(y, arrows)[0]:
        return False
    if x[0] == y[0] and x[1] != y[1]:
        return False
    if x[1] == 1 and y[1] == 1 and (x[0], y[0]) in rels:
        return False
    if x[1] == -1 and y[1] == -1 and (y[0], x[0]) in rels:
        return False
    return True


def _inv(word):
    return tuple((a, -s) for a, s in reversed(word))


def brute_strings(pair, max_len):
    """Canonical strings of length 1..max_len as tuples of (arrow, +-1)."""
    arrows, rels = quiver_data(pair)
    out = set()
    for n in range(1, max_len + 1):
        for w in itertools.product(_letters(arrows), repeat=n):
            if all(_joins(x, y, arrows, rels) for x, y in zip(w, w[1:])):
                out.add(min(w, _inv(w)))
    return out


def brute_bands(pair, max_period):
    """Band classes (up to rotation and inversion), as frozensets of rotations."""
    arrows, rels = quiver_data(pair)
    out = set()
    for n in range(1, max_period + 1):
        for w in itertools.product(_letters(arrows), repeat=n):
            cyc = list(zip(w, w[1:] + w[:1]))
            if not all(_joins(x, y, arrows, rels) for x, y in cyc):
                continue
            rots = {w[i:] + w[:i] for i in range(n)}
            if len(rots) < n:  # proper power
                continue
            iw = _inv(w)
            rots |= {iw[i:] + iw[:i] for i in range(n)}
            out.add(frozenset(rots))
    return out


def poly_mul_mod(a, b, modulus, p):
    """Product of coefficient lists (low degree first) modulo a monic polynomial."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    n = len(modulus) - 1
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for k in range(n + 1):
                prod[d - n + k] = (prod[d - n + k] - c * modulus[k]) % p
    prod = prod[:n] + [0] * max(0, n - len(prod))
    return prod


def poly_pow_mod(a, e, modulus, p):
    n = len(modulus) - 1
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = poly_mul_mod(out, a, modulus, p)
    return out


def brute_irreducible(coeffs, p):
    """No monic factor of degree 1..n//2, checked by multiplying all pairs."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for f in itertools.product(range(p), repeat=d):
            for g in itertools.product(range(p), repeat=n - d):
                fp, gp = list(f) + [1], list(g) + [1]
                prod = [0] * (n + 1)
                for i, x in enumerate(fp):
                    for j, y in enumerate(gp):
                        prod[i + j] = (prod[i + j] + x * y) % p
                if prod == [c % p for c in coeffs]:
                    return False
    return True
