import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.coind import (
    NonMonotoneError,
    equivalences,
    find_inverse,
    flat_equivalences,
    greatest_fixed_point,
    inverses,
    is_equivalence,
    phi,
    psi,
    rinv,
    similar,
    similarity_classes,
)
from omegacat.corpus import build, flat_demo
from omegacat.fib import enumerate_functors, is_functor
from omegacat.gset import Cell
from omegacat.scat import globe_cat, terminal, walking_iso
from oracles import oracle_equivalences, oracle_flat_equivalences

C1 = lambda n: Cell(1, n)
EMPTY = frozenset()


def ids(X, n=1):
    return {c for c in X.cells(n) if X.is_identity(c)}


def test_fixed_point_extremes():
    W = walking_iso()
    full = W.full_cellset()
    assert greatest_fixed_point(lambda S: S, full) == full
    assert greatest_fixed_point(lambda S: EMPTY, full) == EMPTY
    assert greatest_fixed_point(lambda S: phi(W, S), full) == set(W.cells(1))


def test_growing_operator_is_rejected():
    W = walking_iso()
    with pytest.raises(NonMonotoneError):
        greatest_fixed_point(lambda S: S | {C1("u")}, [C1("v")])


def test_phi_examples():
    W, G = walking_iso(), globe_cat(1, 1)
    assert phi(W, W.full_cellset()) == set(W.cells(1))
    assert phi(G, G.full_cellset()) == ids(G)
    # top-dimensional witnesses are formal identities, present in every set
    assert phi(W, EMPTY) == set(W.cells(1))


def test_psi_examples():
    W = walking_iso()
    assert psi(W, W.full_cellset()) == phi(W, W.full_cellset())
    X = flat_demo()
    assert C1("u") in psi(X, X.full_cellset())
    G = globe_cat(2, 2)
    top = psi(G, G.full_cellset())
    assert all(G.is_identity(c) for c in top)


def test_rinv_examples():
    W, G = walking_iso(), globe_cat(1, 1)
    assert rinv(W, W.full_cellset()) == set(W.cells(1))
    assert rinv(G, G.full_cellset()) == ids(G)
    assert rinv(W, EMPTY) == set(W.cells(1))


def test_equivalence_examples():
    for d in range(4):
        T = terminal(d)
        assert equivalences(T) == T.full_cellset()
    G = globe_cat(2, 2)
    assert equivalences(G) == {c for n in (1, 2) for c in G.cells(n) if G.is_identity(c)}
    X = flat_demo()
    assert flat_equivalences(X) == equivalences(X)


def test_flat_demo_has_distinct_one_sided_inverses():
    X = flat_demo()
    u = C1("u")
    # u o v and u o w both reach id_x, so u has two different inverses
    assert {C1("v"), C1("w")} <= set(inverses(X, u))
    assert similar(X, C1("v"), C1("w"))


def test_similarity_and_inverse_examples():
    W, G = walking_iso(), globe_cat(1, 1)
    for c in W.cells(1):
        assert similar(W, c, c)
    assert find_inverse(W, C1("u")) == C1("v")
    assert find_inverse(G, C1("u")) is None
    with pytest.raises(ValueError):
        similar(W, C1("u"), C1("v"))


def test_oracle_agreement_on_fixtures():
    # the oracle enumerates subsets, so only small fixtures
    for X in (walking_iso(), globe_cat(1, 1), globe_cat(2, 2), terminal(2), build(("base", "Z3"))):
        doc = X.to_json()
        assert equivalences(X) == oracle_equivalences(doc)
        assert flat_equivalences(X) == oracle_flat_equivalences(doc)


recipes = st.sampled_from([
    ("base", "iso"), ("base", "Z3"), ("base", "max2"), ("base", "lz2"), ("base", "sat1"),
    ("base", "letters"), ("thin", ("base", "Z4"), "kernel2"), ("thin", ("base", "chain3"), "order"),
    ("thin", ("base", "letters"), "codiscrete"), ("suspend", ("base", "iso")), ("flat_demo",),
])


@given(recipes, st.integers(0, 2**16))
def test_operators_are_monotone(r, seed):
    X = build(r)
    rng = random.Random(seed)
    full = sorted(X.full_cellset())
    T = frozenset(c for c in full if rng.random() < 0.7)
    S = frozenset(c for c in T if rng.random() < 0.7)
    for op in (phi, psi, rinv):
        assert op(X, S) <= op(X, T)


@given(recipes)
def test_similarity_is_an_equivalence_relation(r):
    X = build(r)
    for n in range(X.d):
        classes = similarity_classes(X, n)
        assert sorted(c for cls in classes for c in cls) == sorted(X.cells(n))
        for cls in classes:
            for a in cls:
                for b in cls:
                    assert n == 0 or similar(X, a, b)


@given(recipes)
def test_invariance_and_inverse_uniqueness(r):
    X = build(r)
    E = equivalences(X)
    for u in X.all_cells(1):
        if X.is_identity(u):
            assert u in E
        if u.dim >= X.d:
            continue
        for v in X.between(X.src(u), X.tgt(u)):
            if similar(X, u, v):
                assert (u in E) == (v in E)
        invs = inverses(X, u)
        for a in invs:
            for b in invs:
                assert similar(X, a, b)


@given(recipes)
def test_congruence(r):
    X = build(r)
    for u in X.cells(1):
        for u2 in X.between(X.src(u), X.tgt(u)):
            if not similar(X, u, u2):
                continue
            for v in X.cells(1):
                if X.tgt(u) != X.src(v):
                    continue
                for v2 in X.between(X.src(v), X.tgt(v)):
                    if similar(X, v, v2):
                        assert similar(X, X.compose(0, u, v), X.compose(0, u2, v2))


def test_functors_preserve_equivalences():
    W, T = walking_iso(), terminal(1)
    for X, Y in ((T, W), (W, W), (flat_demo(), terminal(2))):
        for f in enumerate_functors(X, Y):
            assert is_functor(f).ok
            assert all(is_equivalence(Y, f(c)) for c in equivalences(X))
