import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.gset import Cell
from omegacat.poly import (
    Comp,
    Gen,
    IdLift,
    Polygraph,
    TermError,
    comp,
    emit_EF_ladder,
    emit_EF_witness,
    emit_F,
    emit_H,
    emit_OR,
    eval_term,
    ladder_colimit,
    marked_globe_presentation,
    normalize,
    presentations_isomorphic,
    suspend_presentation,
    term_boundary,
    term_from_json,
    term_to_json,
    validate_polygraph,
)
from omegacat.scat import walking_iso
from oracles import structural_iso

x, y = Gen("x", 0), Gen("y", 0)
u, v, w = Gen("u", 1), Gen("v", 1), Gen("w", 1)


def test_normalize_examples():
    assert normalize(Comp(0, IdLift(x, 1), u)) == u
    assert normalize(Comp(0, u, IdLift(y, 1))) == u
    left = Comp(0, Comp(0, u, v), u)
    right = Comp(0, u, Comp(0, v, u))
    assert normalize(left) == normalize(right) == left
    # identity functoriality
    assert normalize(Comp(0, IdLift(u, 1), IdLift(v, 1))) == IdLift(Comp(0, u, v), 1)
    with pytest.raises(TermError):
        comp(1, u, v)


def test_term_boundary_of_p():
    P = emit_F(1)
    assert term_boundary(P["p"].term, P) == (Comp(0, u, v), IdLift(x, 1))
    assert term_boundary(Comp(0, u, v), P) == (x, x)


def test_term_json_round_trip():
    t = Comp(1, IdLift(u, 1), Comp(0, IdLift(x, 2), IdLift(u, 1)))
    dims = {"x": 0, "u": 1}
    assert term_from_json(json.loads(json.dumps(term_to_json(t))), dims) == t


def test_eval_examples():
    W = walking_iso()
    assign = {"x": Cell(0, "x"), "y": Cell(0, "y"), "u": Cell(1, "u"), "v": Cell(1, "v")}
    assert eval_term(Comp(0, u, v), W, assign) == Cell(1, "id_x")
    # above the truncation identities are formal and keep the base name
    assert eval_term(IdLift(x, 2), W, assign) == Cell(2, "id_x")
    P = emit_F(1)
    src, _ = term_boundary(P["p"].term, P)
    assert eval_term(src, W, assign) == Cell(1, "id_x")


def test_emit_F_and_H():
    F, H = emit_F(1), emit_H(1)
    proper = lambda P: [g for g in P.generators if g.dim > 0]
    assert [g.name for g in proper(F)] == ["u", "v", "w", "p", "q"]
    assert {g.name for g in F.marked()} == {"u", "p", "q"}
    assert [g.name for g in proper(H)] == ["u", "v", "p", "q", "r"]
    assert {g.name for g in H.marked()} == {"u", "p", "q", "r"}
    r = H["r"]
    assert r.src == IdLift(u, 1)
    assert r.tgt == Comp(1, Comp(0, H["p"].term, IdLift(u, 1)), Comp(0, IdLift(u, 1), H["q"].term))
    for P in (F, H, emit_F(3), emit_H(2)):
        assert validate_polygraph(P).ok
    assert not presentations_isomorphic(F, H)
    assert presentations_isomorphic(F, F)


def test_F_and_H_suspend():
    for n in range(1, 4):
        assert presentations_isomorphic(suspend_presentation(emit_F(n)), emit_F(n + 1))
        assert presentations_isomorphic(suspend_presentation(emit_H(n)), emit_H(n + 1))


def test_emit_OR_one():
    P = emit_OR(1)
    assert [g.name for g in P.in_dim(0)] == ["x", "y"]
    assert [g.name for g in P.in_dim(1)] == ["u", "v", "w"]


def test_ladder_census():
    steps = emit_EF_ladder(1, 4)
    assert presentations_isomorphic(steps[0], marked_globe_presentation(1))
    last = steps[-1]
    for m in range(5):
        total, marked = last.census()[1 + m]
        assert marked == 2**m
        # the newest marked cells have no witnesses yet
        assert total == (3 * 2**m if m < 4 else 2**m)


def test_witness_boundaries():
    P = emit_EF_witness(1, 3)
    for g in P.generators:
        if g.address.endswith("p") and g.marked:
            base = P.by_address(g.address[:-1])
            vgen = P.by_address(g.address[:-1] + "v")
            s, t = g.src, g.tgt
            assert s == Comp(base.dim - 1, base.term, vgen.term)
            assert isinstance(t, IdLift) and t.count == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_presentations_agree(n):
    for D in range(n, 6):
        W = emit_EF_witness(n, D)
        assert validate_polygraph(W).ok
        L = ladder_colimit(n, D)
        O = emit_OR(D - n + 1)
        for _ in range(n - 1):
            O = suspend_presentation(O)
        for Q in (L, O):
            assert presentations_isomorphic(W, Q)
            assert structural_iso(W, Q)
        assert presentations_isomorphic(suspend_presentation(W), emit_EF_witness(n + 1, D + 1))


def test_structural_oracle_distinguishes():
    assert not structural_iso(emit_F(1), emit_H(1))
    assert not structural_iso(emit_EF_witness(1, 3), emit_EF_witness(2, 3))


@given(st.integers(1, 3), st.integers(0, 3))
def test_polygraph_json_round_trip(n, extra):
    P = emit_EF_witness(n, n + extra)
    Q = Polygraph.from_json(json.loads(json.dumps(P.to_json())))
    assert Q == P
    assert presentations_isomorphic(P.truncate(n + extra - 1), Q.truncate(n + extra - 1))
