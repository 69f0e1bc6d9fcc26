import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.coind import equivalences, is_equivalence, similar
from omegacat.corpus import build, chain_category
from omegacat.fib import (
    OmegaFunctor,
    enumerate_functors,
    functor_from_names,
    identity_functor,
    is_equifibration,
    is_functor,
    is_gaunt,
    is_trivial_fibration,
    is_weak_equivalence,
    suspend_functor,
    symmetric_lifting_holds,
    to_terminal,
)
from omegacat.gset import BudgetExceeded, Cell
from omegacat.scat import cosep, globe_cat, terminal, walking_iso
from oracles import oracle_fibration_row

C1 = lambda n: Cell(1, n)


def point_into_iso():
    P, W = globe_cat(0, 1), walking_iso()
    return functor_from_names(P, W, {(0, "x"): "x", (1, "id_x"): "id_x"})


def test_is_functor_examples():
    W = walking_iso()
    assert is_functor(identity_functor(W)).ok
    bad = dict(identity_functor(W).mapping)
    bad[C1("u")] = C1("id_x")
    assert not is_functor(OmegaFunctor(W, W, bad)).ok
    # boundaries agree but u o v = id_x is sent to 1 + 0 != 0
    Z2 = build(("base", "Z2"))
    m = {(0, "x"): "o", (0, "y"): "o", (1, "u"): "1", (1, "v"): "0", (1, "id_x"): "0", (1, "id_y"): "0"}
    rep = is_functor(functor_from_names(W, Z2, m))
    assert rep.kinds() == {"composition"}
    for d in range(3):
        assert is_functor(to_terminal(W, terminal(max(d, 1)))).ok


def test_boundary_violation_is_reported():
    W = walking_iso()
    bad = dict(identity_functor(W).mapping)
    bad[C1("u")] = C1("v")
    assert "boundary" in is_functor(OmegaFunctor(W, W, bad)).kinds()


def test_equifibration_examples():
    W = walking_iso()
    assert is_equifibration(to_terminal(W, terminal(1)))
    v = is_equifibration(point_into_iso())
    assert not v and v.counterexample == {"dim": 1, "x": Cell(0, "x"), "u": C1("u")}
    assert is_equifibration(identity_functor(W))


def test_weak_equivalence_examples():
    assert is_weak_equivalence(point_into_iso())
    G = globe_cat(1, 1)
    v = is_weak_equivalence(to_terminal(G, terminal(1)))
    assert not v
    # nothing runs from y back to x
    assert (v.counterexample["x"], v.counterexample["x2"]) == (Cell(0, "y"), Cell(0, "x"))
    assert is_weak_equivalence(identity_functor(G))


def test_trivial_fibration_examples():
    for d in range(1, 4):
        for k in range(1, d + 1):
            X = cosep(k, d)
            assert is_trivial_fibration(to_terminal(X, terminal(d)))
    # every hom of the walking iso is a single cell, so this one holds
    assert is_trivial_fibration(to_terminal(walking_iso(), terminal(1)))
    assert not is_trivial_fibration(point_into_iso())
    assert is_trivial_fibration(identity_functor(globe_cat(2)))


def test_one_dimension_beyond_truncation():
    # at k = d the pair cells are parallel but identified downstairs
    f = to_terminal(cosep(2, 2), terminal(2))
    assert is_trivial_fibration(f)
    assert not is_trivial_fibration(f, beyond_truncation=True)
    assert is_trivial_fibration(to_terminal(cosep(1, 2), terminal(2)), beyond_truncation=True)


def test_gauntness():
    for n in range(4):
        assert is_gaunt(globe_cat(n, n))
    assert not is_gaunt(walking_iso())
    for d in range(4):
        assert is_gaunt(terminal(d))


def test_enumerate_functors_examples():
    W = walking_iso()
    assert len(enumerate_functors(terminal(1), W)) == 2
    assert len(enumerate_functors(globe_cat(1, 1), W)) == 4
    for X in (W, globe_cat(1, 1), cosep(1, 2)):
        assert len(enumerate_functors(X, terminal(X.d))) == 1
    with pytest.raises(BudgetExceeded):
        enumerate_functors(chain_category(3), chain_category(3), budget=5)


def test_suspended_functor_is_a_functor():
    f = point_into_iso()
    g = suspend_functor(f)
    assert is_functor(g).ok
    assert bool(is_equifibration(g)) == bool(is_equifibration(f))


def _recheck(f, v):
    """A reported (x, u) must really lack an equivalence lift."""
    cx = v.counterexample
    x, u = cx["x"], cx["u"]
    return is_equivalence(f.cod, u) and not any(
        f(c) == u for c in f.dom.out_of(x) if is_equivalence(f.dom, c)
    )


pairs = st.sampled_from([
    ("iso", "arrow"), ("arrow", "iso"), ("iso", "Z2"), ("Z2", "Z2"), ("max2", "Z2"), ("sat1", "iso"),
    ("lz1", "Z2"), ("pair", "iso"), ("chain3", "iso"), ("iso", "iso"), ("Z2", "max2"), ("arrow", "pair"),
])


@given(pairs)
def test_truth_table_matches_oracle(pair):
    X, Y = build(("base", pair[0])), build(("base", pair[1]))
    EX, EY = equivalences(X), equivalences(Y)
    for f in enumerate_functors(X, Y):
        row = oracle_fibration_row(f.to_json(), set(EX), set(EY))
        got = (bool(is_trivial_fibration(f)), bool(is_weak_equivalence(f)), bool(is_equifibration(f)))
        assert got == row
        assert got[0] == (got[1] and got[2])
        v = is_equifibration(f)
        if not v:
            assert _recheck(f, v)
        else:
            assert symmetric_lifting_holds(f)
        if is_gaunt(Y):
            assert v
        if got[0]:
            assert all(c in EX for c in X.all_cells(1) if f(c) in EY and c.dim <= X.d)
        for c in X.all_cells(1):
            if c.dim < X.d:
                for c2 in X.between(X.src(c), X.tgt(c)):
                    if similar(X, c, c2):
                        assert similar(Y, f(c), f(c2))
