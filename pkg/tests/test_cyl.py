import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.coind import equivalences, is_equivalence
from omegacat.corpus import build, flat_demo
from omegacat.cyl import (
    Cylinder,
    bridge,
    check_projections_trivfib,
    cylinder_boundary,
    cylinder_globular,
    enumerate_cylinders,
    is_valid_cylinder,
)
from omegacat.gset import Cell, validate_globular
from omegacat.scat import globe_cat, restrict_to, terminal, walking_iso

C1 = lambda n: Cell(1, n)


def test_level_zero_is_equivalences():
    W = walking_iso()
    assert {U.edge.name for U in enumerate_cylinders(W, 0)} == {"u", "v", "id_x", "id_y"}
    assert {U.edge.name for U in enumerate_cylinders(globe_cat(1, 1), 0)} == {"id_x", "id_y"}
    X = flat_demo()
    assert {U.edge for U in enumerate_cylinders(X, 0)} == {c for c in equivalences(X) if c.dim == 1}


def test_terminal_has_one_cylinder_per_level():
    for d in range(1, 4):
        T = terminal(d)
        for n in range(d):
            assert len(enumerate_cylinders(T, n)) == 1


def test_boundaries_of_level_one():
    W = restrict_to(walking_iso(), 2)
    cyls = enumerate_cylinders(W, 1)
    assert len(cyls) == 16
    for U in cyls:
        assert is_valid_cylinder(W, U)
        s, t = cylinder_boundary(W, U)
        assert (s.edge, t.edge) == (U.flat, U.sharp)
    with pytest.raises(ValueError):
        cylinder_boundary(W, enumerate_cylinders(W, 0)[0])


def test_identity_cylinder_has_identity_boundaries():
    W = restrict_to(walking_iso(), 2)
    U = bridge(W, C1("id_x"), C1("id_x"), C1("id_x"))
    assert U.flat == U.sharp == C1("id_x")
    s, t = cylinder_boundary(W, U)
    assert s.edge == t.edge == C1("id_x")


def test_bridge_examples():
    W = walking_iso()
    U = bridge(W, C1("u"), C1("v"), C1("u"))
    assert U.level == 1 and U.source == U.target == C1("u")
    assert U.flat == C1("id_x") and U.sharp == C1("id_y")
    assert is_valid_cylinder(W, U)
    with pytest.raises(ValueError):
        bridge(W, C1("u"), C1("u"), C1("u"))
    with pytest.raises(ValueError):
        bridge(globe_cat(1, 1), C1("u"), C1("id_y"), C1("id_y"))


def test_globular_structure_and_projections():
    for X in (restrict_to(walking_iso(), 2), restrict_to(globe_cat(1, 1), 2), flat_demo(), terminal(3)):
        memo = {}
        up = X.d - 1
        assert validate_globular(cylinder_globular(X, up, memo)).ok
        assert check_projections_trivfib(X, up, memo)


def test_non_equivalence_still_has_a_cylinder():
    X = restrict_to(globe_cat(1, 1), 2)
    assert not is_equivalence(X, C1("u"))
    over_u = [U for U in enumerate_cylinders(X, 1) if U.source == U.target == C1("u")]
    assert over_u and all(U.flat == C1("id_x") and U.sharp == C1("id_y") for U in over_u)


def test_invalid_cylinders_are_rejected():
    W = restrict_to(walking_iso(), 2)
    good = bridge(W, C1("u"), C1("v"), C1("u"))
    assert not is_valid_cylinder(W, Cylinder(1, good.source, good.target, flat=C1("u"), sharp=good.sharp, natural=good.natural))
    assert not is_valid_cylinder(W, Cylinder(0, Cell(0, "x"), Cell(0, "y"), edge=C1("v")))


recipes = st.sampled_from([
    ("thin", ("base", "iso"), "codiscrete"), ("thin", ("base", "Z4"), "kernel2"),
    ("thin", ("base", "chain3"), "order"), ("suspend", ("base", "Z2")), ("suspend", ("base", "iso")),
    ("restrict", ("base", "iso"), 2), ("restrict", ("base", "Z3"), 2), ("flat_demo",),
])


@given(recipes)
def test_bridges_over_equivalence_chains(r):
    X = build(r)
    E = equivalences(X)
    cyls = set(enumerate_cylinders(X, 1))
    ones = [c for c in E if c.dim == 1]
    for u in ones:
        for v in ones:
            if X.tgt(u) != X.src(v):
                continue
            for u2 in ones:
                if X.tgt(v) == X.src(u2) and X.src(u) == X.src(u2) and X.tgt(u) == X.tgt(u2):
                    U = bridge(X, u, v, u2)
                    assert is_valid_cylinder(X, U)
                    assert U in cyls
                    s, t = cylinder_boundary(X, U)
                    assert s.edge == X.compose(0, u, v) and t.edge == X.compose(0, v, u2)
