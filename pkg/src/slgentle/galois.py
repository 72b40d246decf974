"""Finite fields F_{p^n}, field automorphisms and pi-sequences of words.

Field elements are stored as integers ``0 <= code < p**n`` whose base-``p``
digits are the polynomial coefficients, lowest degree first.  ``FFElem``
wraps a code with operator overloading for convenience; the matrix code in
:mod:`slgentle.reps` works on raw codes.

Automorphisms come in two backends:

* ``FreeWord``: a freely reduced word in formal generators, one per arrow.
* ``FrobPower``: ``x -> x**(p**k)`` on a concrete field.

``compose(f, g)`` always means "apply ``g`` first".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .words import Word


class FieldError(ValueError):
    pass


def _poly_divmod(num, den, p):
    """Division with remainder of coefficient lists (low degree first) over F_p."""
    num = list(num)
    dl = len(den) - 1
    while dl > 0 and den[dl] == 0:
        dl -= 1
    inv_lead = pow(den[dl], -1, p)
    quot = [0] * max(len(num) - dl, 1)
    for i in range(len(num) - 1, dl - 1, -1):
        c = num[i] % p
        if c:
            f = c * inv_lead % p
            quot[i - dl] = f
            for j in range(dl + 1):
                num[i - dl + j] = (num[i - dl + j] - f * den[j]) % p
    return quot, [c % p for c in num[:dl]] or [0]


def is_irreducible(coeffs, p) -> bool:
    """Trial division by every monic polynomial of degree 1..n//2."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, rem = _poly_divmod(coeffs, list(low) + [1], p)
            if not any(rem):
                return False
    return True


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


class FiniteField:
    """The field F_p[x]/(modulus) with ``p**n`` elements.

    Args:
        p: prime characteristic.
        n: degree of the extension.
        modulus: ``n + 1`` coefficients, lowest degree first, monic.
    """

    def __init__(self, p: int, n: int, modulus=None):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("degree must be at least 1")
        if modulus is None:
            modulus = self.find_modulus(p, n)
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree n")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.n, self.modulus = p, n, tuple(modulus)
        self.q = p**n

    @staticmethod
    def find_modulus(p: int, n: int):
        """Lexicographically first monic irreducible of degree ``n``."""
        for low in itertools.product(range(p), repeat=n):
            cand = list(low) + [1]
            if is_irreducible(cand, p):
                return cand
        raise FieldError("no irreducible polynomial found")

    def __repr__(self):
        return f"FiniteField({self.p}, {self.n}, {list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # encoding
    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            _, coeffs = _poly_divmod(coeffs, self.modulus, self.p)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return code

    def __call__(self, value) -> "FFElem":
        """Element from an int in F_p (``int``) or a coefficient list."""
        if isinstance(value, FFElem):
            return value
        if isinstance(value, int):
            return FFElem(self, value % self.p)
        return FFElem(self, self.encode(value))

    def element(self, code: int) -> "FFElem":
        return FFElem(self, code)

    @property
    def zero(self) -> "FFElem":
        return FFElem(self, 0)

    @property
    def one(self) -> "FFElem":
        return FFElem(self, 1)

    @property
    def gen(self) -> "FFElem":
        """The class of ``x`` modulo the modulus."""
        return self([0, 1])

    def elements(self):
        return [FFElem(self, c) for c in range(self.q)]

    # tables
    @cached_property
    def _digit_table(self) -> np.ndarray:
        codes = np.arange(self.q)
        d = np.zeros((self.q, self.n), dtype=np.int64)
        for i in range(self.n):
            d[:, i] = codes % self.p
            codes = codes // self.p
        return d

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        d = self._digit_table
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return s @ self._weights

    @cached_property
    def neg_table(self) -> np.ndarray:
        return ((-self._digit_table) % self.p) @ self._weights

    def _mul_codes(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(prod)

    @cached_property
    def mul_table(self) -> np.ndarray:
        # log/antilog tables from a primitive element
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._mul_codes(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:
            raise FieldError("no primitive element found")
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        table = exp_arr[(log[:, None] + log[None, :])]
        table[0, :] = 0
        table[:, 0] = 0
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    def frob_table(self, k: int) -> np.ndarray:
        k %= self.n
        return self._frob_tables[k]

    @cached_property
    def _frob_tables(self) -> list[np.ndarray]:
        ident = np.arange(self.q)
        tables = [ident]
        for _ in range(1, self.n):
            prev = tables[-1]
            # x -> x**p applied once more
            nxt = np.array([self._pow_code(int(c), self.p) for c in prev], dtype=np.int64)
            tables.append(nxt)
        return tables

    def _pow_code(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    # scalar code arithmetic
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.inv_table[a])

    def frob(self, a: int, k: int) -> int:
        return int(self.frob_table(k)[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        return self._pow_code(a, e)

    def format(self, code: int) -> str:
        """Coefficient string, lowest degree first (``"01"`` is ``x``)."""
        sep = "" if self.p <= 10 else ","
        return sep.join(str(d) for d in self.digits(code))

    def parse(self, text: str) -> int:
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        coeffs = [int(c) for c in parts]
        if len(coeffs) > self.n:
            raise FieldError(f"too many coefficients in {text!r}")
        return self.encode(coeffs)


@dataclass(frozen=True)
class FFElem:
    field: FiniteField
    code: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(self.field.digits(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _binary(self, other, op, swap=False):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        a = self.code
        if swap:
            a, b = b, a
        return FFElem(self.field, op(a, b))

    def __add__(self, other):
        return self._binary(other, self.field.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, self.field.sub)

    def __rsub__(self, other):
        return self._binary(other, self.field.sub, swap=True)

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return self._binary(other, self.field.mul)

    __rmul__ = __mul__

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return self * FFElem(self.field, b).inverse()

    def __pow__(self, e: int):
        return FFElem(self.field, self.field.power(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FFElem({self.field.format(self.code)})"


def add(x: FFElem, y: FFElem) -> FFElem:
    return x + y


def mul(x: FFElem, y: FFElem) -> FFElem:
    return x * y


def neg(x: FFElem) -> FFElem:
    return -x


def inv(x: FFElem) -> FFElem:
    return x.inverse()


def frobenius(x: FFElem, k: int = 1) -> FFElem:
    """``x ** (p ** k)``."""
    return FFElem(x.field, x.field.frob(x.code, k))


# automorphisms


class BackendError(TypeError):
    pass


@dataclass(frozen=True)
class FreeWord:
    """A reduced word in formal generators ``g_a^{+-1}``.

    ``letters`` is read left to right as written, so the rightmost letter is
    applied first.
    """

    letters: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def generator(name: str) -> "FreeWord":
        return FreeWord(((name, 1),))

    @staticmethod
    def reduce(letters) -> tuple[tuple[str, int], ...]:
        out: list[tuple[str, int]] = []
        for g, e in letters:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return tuple(out)

    def identity(self) -> "FreeWord":
        return FreeWord()

    def compose(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            raise BackendError("cannot mix FreeWord with another backend")
        return FreeWord(self.reduce(self.letters + other.letters))

    def invert(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def evaluate(self, assignment) -> "FrobPower":
        """Image under the homomorphism ``g_a -> assignment[a]``."""
        items = list(assignment.values())
        if not items:
            raise BackendError("empty assignment")
        result = items[0].identity()
        for g, e in self.letters:
            f = assignment[g]
            result = result.compose(f if e == 1 else f.invert())
        return result

    def __str__(self) -> str:
        if not self.letters:
            return "id"
        return " ".join(f"sigma_{g}" + ("" if e == 1 else "^-1") for g, e in self.letters)


@dataclass(frozen=True)
class FrobPower:
    """The automorphism ``x -> x ** (p ** k)`` of ``field``."""

    k: int
    field: FiniteField

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.field.n)

    def identity(self) -> "FrobPower":
        return FrobPower(0, self.field)

    def compose(self, other: "FrobPower") -> "FrobPower":
        if not isinstance(other, FrobPower) or other.field != self.field:
            raise BackendError("cannot compose automorphisms of different backends or fields")
        return FrobPower(self.k + other.k, self.field)

    def invert(self) -> "FrobPower":
        return FrobPower(-self.k, self.field)

    @property
    def is_identity(self) -> bool:
        return self.k == 0

    def apply(self, e: FFElem) -> FFElem:
        if e.field != self.field:
            raise BackendError("element from another field")
        return frobenius(e, self.k)

    def apply_code(self, code: int) -> int:
        return self.field.frob(code, self.k)

    def __str__(self) -> str:
        return "id" if self.k == 0 else f"Frob^{self.k}"


def compose(f, g):
    """``f`` after ``g``."""
    return f.compose(g)


def invert(f):
    return f.invert()


def apply(f, e: FFElem) -> FFElem:
    if not isinstance(f, FrobPower):
        raise BackendError("only Frobenius powers act on field elements")
    return f.apply(e)


def _identity_like(sigma) -> FreeWord | FrobPower:
    for v in sigma.values():
        return v.identity()
    return FreeWord()


def symbolic_sigma(arrow_names) -> dict[str, FreeWord]:
    return {a: FreeWord.generator(a) for a in arrow_names}


def pi_sequence(word: Word, sigma, pair=None) -> list:
    """The automorphisms pi_0, ..., pi_n along ``word``.

    pi_0 is the identity; a direct letter ``a`` gives
    ``pi_i = sigma_a^-1 pi_{i-1}`` and an inverse letter gives
    ``pi_i = sigma_a pi_{i-1}``.  For a band the sequence covers one period.

    Raises:
        ValueError: ``pair`` is given and the word is not admissible for it.
    """
    if pair is not None:
        from .words import is_admissible

        if not is_admissible(pair, word):
            raise ValueError("inadmissible word")
    cur = _identity_like(sigma)
    out = [cur]
    for letter in word.letters:
        s = sigma[letter.arrow]
        step = s.invert() if letter.direct else s
        cur = step.compose(cur)
        out.append(cur)
    return out


def pi_band(word: Word, sigma, pair=None):
    """pi_C, the inverse of pi_n over one period of the band."""
    if not word.is_band:
        raise ValueError("pi_band needs a band")
    return pi_sequence(word, sigma, pair)[-1].invert()
