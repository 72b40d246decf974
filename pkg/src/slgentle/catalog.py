"""Small named pairs used throughout the docs, CLI examples and tests."""

from __future__ import annotations

from .quiver import LocallyGentlePair

RUNNING_ARROWS = (
    ("alpha", "1", "2"),
    ("beta", "2", "3"),
    ("nu", "3", "1"),
    ("delta", "5", "2"),
    ("epsilon", "4", "5"),
    ("zeta", "3", "4"),
    ("eta", "5", "6"),
)


def running_example() -> LocallyGentlePair:
    """Six vertices, seven arrows, four relations on the square beta/delta/epsilon/zeta."""
    return LocallyGentlePair.build(
        ("1", "2", "3", "4", "5", "6"),
        RUNNING_ARROWS,
        [("beta", "delta"), ("delta", "epsilon"), ("epsilon", "zeta"), ("zeta", "beta")],
    )


LOOP_ARROWS = (("alpha", "1", "2"), ("beta", "2", "2"), ("nu", "2", "3"))


def loop_gentle() -> LocallyGentlePair:
    """Line with a loop at the middle vertex, relations beta*beta and nu*alpha (gentle)."""
    return LocallyGentlePair.build(("1", "2", "3"), LOOP_ARROWS, [("beta", "beta"), ("nu", "alpha")])


def loop_locally_gentle() -> LocallyGentlePair:
    """Same quiver with relations beta*alpha and nu*beta (infinite dimensional)."""
    return LocallyGentlePair.build(("1", "2", "3"), LOOP_ARROWS, [("beta", "alpha"), ("nu", "beta")])


def line(n: int) -> LocallyGentlePair:
    """Linearly oriented A_n without relations: 1 -> 2 -> ... -> n."""
    vs = tuple(str(i + 1) for i in range(n))
    return LocallyGentlePair.build(vs, [(f"a{i + 1}", vs[i], vs[i + 1]) for i in range(n - 1)])


def single_vertex() -> LocallyGentlePair:
    return LocallyGentlePair.build(("1",), ())
