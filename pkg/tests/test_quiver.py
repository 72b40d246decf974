import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_corpus
from oracles import brute_is_gentle, brute_paths
from slgentle import catalog
from slgentle.quiver import (
    DISTRIBUTARY, NON_RELATIONAL, QUADBUTARY, STREAM, TRIBUTARY, LocallyGentlePair,
    NotLocallyGentle, Path, Quiver, QuiverError, Relation, admissible_paths, classify_vertex,
    cyclic_admissible_threads, is_gentle, locally_gentle_violations, random_locally_gentle,
    validate_locally_gentle,
)


def test_running_example_vertex_types(running):
    kinds = {v: classify_vertex(running, v).kind for v in running.quiver.vertices}
    assert kinds == {
        "1": NON_RELATIONAL, "2": TRIBUTARY, "3": DISTRIBUTARY,
        "4": STREAM, "5": DISTRIBUTARY, "6": NON_RELATIONAL,
    }
    c = classify_vertex(running, "2")
    assert running.in_z(c.b, c.a) and not running.in_z(c.b, c.c)


def test_quadbutary_witnesses():
    pair = LocallyGentlePair.build(
        "0 1 2 3 4".split(),
        [("a", "1", "0"), ("c", "2", "0"), ("b", "0", "3"), ("d", "0", "4")],
        [("b", "a"), ("d", "c")],
    )
    c = classify_vertex(pair, "0")
    assert c.kind == QUADBUTARY
    assert pair.in_z(c.b, c.a) and pair.in_z(c.d, c.c)
    assert not pair.in_z(c.b, c.c) and not pair.in_z(c.d, c.a)


def test_relational_vertices_and_successors(running):
    assert running.relational_vertices() == ["2", "3", "4", "5"]
    assert running.admissible_successor("alpha") == "beta"
    assert running.relational_successor("delta") == "beta"
    assert running.admissible_predecessor("beta") == "alpha"
    assert running.relational_predecessor("beta") == "delta"
    assert running.relational_successor("alpha") is None


def test_violations_are_reported():
    q = Quiver(("1", "2"), [("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")])
    codes = {v.code for v in locally_gentle_violations(q, [])}
    assert {"in-degree", "out-degree"} <= codes
    with pytest.raises(NotLocallyGentle) as info:
        validate_locally_gentle(q, [])
    assert info.value.violations


def test_two_admissible_continuations_rejected():
    q = Quiver(("1", "2", "3", "4"), [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "4")])
    codes = [v.code for v in locally_gentle_violations(q, [])]
    assert codes == ["two-admissible-after"]
    assert validate_locally_gentle(q, [("b", "a")])


def test_malformed_input_raises():
    with pytest.raises(QuiverError):
        Quiver(("1",), [("a", "1", "9")])
    with pytest.raises(QuiverError):
        Quiver(("1", "1"))
    q = Quiver(("1", "2"), [("a", "1", "2")])
    with pytest.raises(QuiverError):
        validate_locally_gentle(q, [("x", "a")])
    with pytest.raises(QuiverError):
        validate_locally_gentle(q, [("a", "a")])


def test_gentle_trivial_cases():
    assert is_gentle(catalog.line(4))
    loop = LocallyGentlePair.build(("1",), [("x", "1", "1")])
    assert not is_gentle(loop)
    assert is_gentle(LocallyGentlePair.build(("1",), [("x", "1", "1")], [("x", "x")]))
    assert is_gentle(catalog.loop_gentle())
    assert not is_gentle(catalog.loop_locally_gentle())
    assert not is_gentle(catalog.running_example())
    assert cyclic_admissible_threads(catalog.running_example()) == [("alpha", "beta", "nu")]


def test_path_rendering():
    assert str(Path.trivial("3")) == "e_3"
    assert str(Path.of("beta", "alpha")) == "beta*alpha"
    q = catalog.running_example().quiver
    p = Path.of("beta", "alpha")
    assert (p.tail(q), p.head(q)) == ("1", "3")


def test_loop_gentle_paths(z1):
    # e1 e2 e3, alpha beta nu, beta*alpha nu*beta, nu*beta*alpha
    paths = admissible_paths(z1, 5)
    assert len(paths) == 9
    assert [str(p) for p in paths[3:]] == [
        "alpha", "beta", "nu", "beta*alpha", "nu*beta", "nu*beta*alpha"]


def _as_sequences(paths):
    out = set()
    for p in paths:
        out.add((("e", p.vertex),) if p.is_trivial else tuple(reversed(p.arrows)))
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(random_corpus()) - 1))
def test_admissible_paths_match_brute_force(i):
    pair = random_corpus()[i]
    if len(pair.quiver.arrows) > 8:
        pair = random_locally_gentle(i, 5, 6)
    for n in range(4):
        assert _as_sequences(admissible_paths(pair, n)) == set(brute_paths(pair, n))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.data())
def test_random_pairs_are_locally_gentle_and_deterministic(seed, n, data):
    m = data.draw(st.integers(0, 2 * n - (n > 1)))
    try:
        p = random_locally_gentle(seed, n, m)
    except ValueError:
        return
    assert locally_gentle_violations(p.quiver, p.relations) == []
    assert random_locally_gentle(seed, n, m) == p
    assert is_gentle(p) == brute_is_gentle(p)


def test_random_unsatisfiable():
    with pytest.raises(ValueError, match="unsatisfiable"):
        random_locally_gentle(0, 1, 3, max_tries=5)


def test_components_follow_declaration_order():
    q = Quiver(("a", "b", "c", "d"), [("x", "c", "a")])
    assert q.components() == [("a", "c"), ("b",), ("d",)]


def test_relation_str():
    assert str(Relation("beta", "alpha")) == "beta*alpha"
