import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.corpus import build, flat_demo, left_zero, saturating
from omegacat.gset import Cell
from omegacat.scat import (
    CompositionError,
    FiniteOmegaCat,
    codiscrete_extension,
    cosep,
    disjoint_union,
    globe_cat,
    hom,
    isomorphic,
    monoid_cat,
    product,
    restrict_to,
    suspend,
    suspension_points,
    terminal,
    validate_category,
    walking_iso,
)

C1 = lambda n: Cell(1, n)


def proper_counts(X):
    """Cells per dimension that are not identities."""
    return tuple(sum(not X.is_identity(c) for c in X.cells(n)) for n in range(X.d + 1))


def test_fixtures_validate():
    for X in (walking_iso(), terminal(3), cosep(2, 4), globe_cat(3), flat_demo()):
        assert validate_category(X).ok, X


def test_walking_iso_shape():
    W = walking_iso()
    assert W.d == 1
    assert W.names(0) == ("x", "y")
    assert W.compose(0, C1("u"), C1("v")) == C1("id_x")
    assert W.compose(0, C1("v"), C1("u")) == C1("id_y")
    assert W.compose(0, C1("id_x"), C1("u")) == C1("u")
    with pytest.raises(CompositionError):
        W.compose(0, C1("u"), C1("u"))


def test_non_associative_table_is_reported():
    # a a = b, a b = b, b a = a, b b = a: (a a) a = a but a (a a) = b
    tbl = {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "a"}
    X = monoid_cat(["e", "a", "b"], lambda p, q: q if p == "e" else p if q == "e" else tbl[(p, q)], "e")
    rep = validate_category(X)
    assert "associativity" in rep.kinds()


def test_terminal_and_globes():
    for d in range(4):
        T = terminal(d)
        assert validate_category(T).ok
        assert T.underlying.counts() == (1,) * (d + 1)
    assert proper_counts(globe_cat(1, 1)) == (2, 1)
    assert globe_cat(1, 1).underlying.counts() == (2, 3)
    # identities above the truncation are implicit
    u = Cell(1, "u")
    assert globe_cat(1, 1).ident_of(u) == Cell(2, "u")


def test_whisker_boundaries():
    X = flat_demo()
    q = Cell(2, "(fv>id_y)")
    u = C1("u")
    r = X.whisker(0, u, q)
    assert X.src(r) == X.compose(0, u, X.src(q))
    assert X.tgt(r) == X.compose(0, u, X.tgt(q))


def test_hom_examples():
    W = walking_iso()
    assert hom(W, "x", "y").names(0) == ("u",)
    # the only object of the endo-hom is the identity of x
    assert hom(globe_cat(1, 1), "x", "x").names(0) == ("id_x",)
    assert hom(terminal(2), "*", "*") == terminal(1)


def test_suspension_examples():
    for n in range(4):
        assert isomorphic(suspend(globe_cat(n, n)), globe_cat(n + 1, n + 1))
    S0 = suspend(terminal(0))
    assert proper_counts(S0) == (2, 1)
    W = walking_iso()
    SW = suspend(W)
    assert SW.d == 2
    a, b = suspension_points(W)
    assert hom(SW, a, b) == W


def test_cosep_shape():
    assert cosep(1, 2).underlying.counts() == (1, 2, 4)
    assert validate_category(cosep(2, 4)).ok
    with pytest.raises(ValueError):
        cosep(0, 2)


def test_isomorphism_is_not_trivial():
    assert not isomorphic(globe_cat(1, 1), walking_iso())
    assert not isomorphic(saturating(2), left_zero(2))


def test_json_round_trip_with_marking():
    X = globe_cat(2).with_marking([Cell(2, "u")])
    doc = json.loads(json.dumps(X.to_json()))
    Y = FiniteOmegaCat.from_json(doc)
    assert Y == X and Y.marking == X.marking


small_recipes = st.sampled_from([
    ("base", "iso"), ("base", "arrow"), ("base", "Z2"), ("base", "Z3"), ("base", "max3"),
    ("base", "sat2"), ("base", "lz1"), ("base", "chain3"), ("base", "pair"), ("base", "letters"),
    ("thin", ("base", "Z4"), "kernel2"), ("thin", ("base", "max3"), "order"),
    ("thin", ("base", "iso"), "codiscrete"), ("suspend", ("base", "Z2")),
])


@given(small_recipes)
def test_constructions_stay_valid(r):
    X = build(r)
    assert validate_category(X).ok
    S = suspend(X)
    assert validate_category(S).ok
    a, b = suspension_points(X)
    assert hom(S, a, b) == X
    assert validate_category(restrict_to(X, X.d + 1)).ok
    assert validate_category(codiscrete_extension(X)).ok
    assert FiniteOmegaCat.from_json(json.loads(json.dumps(X.to_json()))) == X


@given(small_recipes, small_recipes)
def test_products_and_unions_stay_valid(r1, r2):
    X, Y = build(r1), build(r2)
    U = disjoint_union(X, Y)
    assert validate_category(U).ok
    assert U.underlying.counts()[0] == len(X.names(0)) + len(Y.names(0))
    if X.d == Y.d:
        P = product(X, Y)
        assert validate_category(P).ok
        assert len(P.names(1)) == len(X.names(1)) * len(Y.names(1))
