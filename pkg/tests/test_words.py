import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_corpus
from oracles import brute_bands, brute_strings
from slgentle.quiver import QuiverError
from slgentle.words import (
    BAND, STRING, Letter, Word, canonical, check_word, enumerate_bands, enumerate_strings,
    equivalent, inverse, is_admissible, letters, shift, vertex_sequence, word_quiver,
)

LONG = ("eta", "delta^-1", "alpha", "nu", "beta", "alpha", "nu", "zeta^-1")


def _tuple(w):
    return tuple((x.arrow, 1 if x.direct else -1) for x in w.letters)


def _inv(t):
    return tuple((a, -s) for a, s in reversed(t))


def test_letter_parsing():
    assert letters("nu", "zeta^-1") == (Letter("nu", True), Letter("zeta", False))
    assert str(Letter("zeta", False)) == "zeta^-1"
    with pytest.raises(ValueError):
        letters("")
    with pytest.raises(ValueError):
        letters("a^2")


def test_word_constructor_rules():
    with pytest.raises(ValueError):
        Word.string("alpha", "alpha^-1")
    with pytest.raises(ValueError):
        Word.band("alpha", "beta", "alpha", "beta")
    with pytest.raises(ValueError):
        Word(STRING, ())
    assert str(Word.band("nu", "beta", "alpha")) == "band:nu,beta,alpha"
    assert str(Word.trivial("3")) == "triv:3"


def test_admissibility(running):
    assert is_admissible(running, Word.string("nu", "zeta^-1"))
    assert is_admissible(running, Word.string(*LONG))
    assert not is_admissible(running, Word.string("beta", "delta"))
    assert not is_admissible(running, Word.string("delta^-1", "beta^-1"))
    assert not is_admissible(running, Word.string("nu", "alpha"))
    assert is_admissible(running, Word.band("nu", "beta", "alpha"))
    with pytest.raises(QuiverError):
        is_admissible(running, Word.string("omega"))
    with pytest.raises(ValueError):
        check_word(running, Word.string("alpha", "beta"))


def test_long_word_vertices(running):
    w = Word.string(*LONG)
    assert vertex_sequence(running, w) == ["6", "5", "2", "1", "3", "2", "1", "3", "4"]
    wq = word_quiver(w, running)
    assert wq.n_vertices == 9 and wq.f_vertices == tuple("652132134")
    # (head, tail) pairs: eta is direct, delta^-1 runs backwards
    assert wq.arrows[:2] == ((0, 1), (2, 1))
    assert word_quiver(Word.string("delta^-1"), running).arrows == ((1, 0),)


def test_band_word_quiver(running):
    wq = word_quiver(Word.band("nu", "beta", "alpha"), running)
    assert wq.wrap and wq.n_vertices == 3
    assert wq.arrows == ((0, 1), (1, 2), (2, 0))
    assert wq.f_vertices == ("1", "3", "2")


def test_running_bands(running):
    bands = enumerate_bands(running, 3)
    assert len(bands) == 1
    assert equivalent(bands[0], Word.band("nu", "beta", "alpha"))
    assert len(brute_bands(running, 3)) == 1


def test_loop_gentle_has_no_bands(z1):
    assert enumerate_bands(z1, 8) == []
    assert brute_bands(z1, 6) == set()


def test_loop_gentle_strings(z1):
    ws = enumerate_strings(z1, 4)
    assert [str(w) for w in ws[:3]] == ["triv:1", "triv:2", "triv:3"]
    assert len(ws) == 14
    assert len(enumerate_strings(z1, 10)) == 14


def test_shift_and_inverse(running):
    b = Word.band("nu", "beta", "alpha")
    assert shift(b, 1) == Word.band("beta", "alpha", "nu")
    assert shift(b, 3) == b
    s = Word.string(*LONG)
    assert shift(s, 2) == s
    assert inverse(inverse(s)) == s
    assert str(inverse(Word.string("nu", "zeta^-1"))) == "zeta,nu^-1"
    assert inverse(Word.trivial("1")).sign == -1
    assert canonical(inverse(Word.trivial("1"))) == Word.trivial("1")


def _random_word(data, pair, band):
    pool = enumerate_bands(pair, 4) if band else enumerate_strings(pair, 4)
    pool = [w for w in pool if not w.is_trivial]
    if not pool:
        return None
    return data.draw(st.sampled_from(pool))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, len(random_corpus()) - 1), st.booleans(), st.data())
def test_equivalence_properties(i, band, data):
    pair = random_corpus()[i]
    w = _random_word(data, pair, band)
    if w is None:
        return
    k = data.draw(st.integers(0, 10))
    assert canonical(w) == w
    assert canonical(inverse(w)) == w
    assert equivalent(shift(w, k), w)
    assert equivalent(inverse(shift(w, k)), w)
    assert is_admissible(pair, inverse(w)) and is_admissible(pair, shift(w, k))
    vs = vertex_sequence(pair, w)
    assert vertex_sequence(pair, inverse(w)) == vs[::-1]
    if w.is_band:
        assert vs[0] == vs[-1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(random_corpus()) - 1))
def test_strings_match_brute_force(i):
    pair = random_corpus()[i]
    if len(pair.quiver.arrows) > 6:
        return
    got = enumerate_strings(pair, 3)
    assert all(w.kind == STRING for w in got if not w.is_trivial)
    classes = {min(_tuple(w), _inv(_tuple(w))) for w in got if not w.is_trivial}
    assert classes == brute_strings(pair, 3)
    assert len(classes) == len(got) - len(pair.quiver.vertices)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(random_corpus()) - 1))
def test_bands_match_brute_force(i):
    pair = random_corpus()[i]
    if len(pair.quiver.arrows) > 6:
        return
    got = enumerate_bands(pair, 4)
    assert all(w.kind == BAND for w in got)
    classes = set()
    for w in got:
        t = _tuple(w)
        n = len(t)
        rots = {t[j:] + t[:j] for j in range(n)} | {_inv(t)[j:] + _inv(t)[:j] for j in range(n)}
        classes.add(frozenset(rots))
    assert classes == brute_bands(pair, 4)
    assert len(classes) == len(got)
