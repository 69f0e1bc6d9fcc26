import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegacat.gset import (
    BudgetExceeded,
    GlobularData,
    boundary_globe,
    brute_force_count_maps,
    count_maps,
    disjoint_union_gset,
    globe,
    hom_gset,
    validate_globular,
)
from omegacat.scat import cosep
from oracles import brute_count_maps


@st.composite
def globular_sets(draw, max_dim=2, max_cells=3):
    d = draw(st.integers(0, max_dim))
    cells = [[f"c0_{i}" for i in range(draw(st.integers(1, max_cells)))]]
    src, tgt = [], []
    for n in range(1, d + 1):
        lower = cells[-1]
        names, s, t = [], {}, {}
        for i in range(draw(st.integers(0, max_cells))):
            a = draw(st.sampled_from(lower))
            if n == 1:
                b = draw(st.sampled_from(lower))
            else:
                par = [c for c in lower if src[-1][c] == src[-1][a] and tgt[-1][c] == tgt[-1][a]]
                b = draw(st.sampled_from(par))
            nm = f"c{n}_{i}"
            names.append(nm)
            s[nm], t[nm] = a, b
        if not names:
            break
        cells.append(names)
        src.append(s)
        tgt.append(t)
    return GlobularData.make(len(cells) - 1, cells, src, tgt)


def test_globe_is_valid_with_expected_counts():
    assert validate_globular(globe(2)).ok
    assert globe(2).counts() == (2, 2, 1)
    assert globe(0).counts() == (1,)


def test_boundary_globe():
    assert validate_globular(boundary_globe(3)).ok
    assert boundary_globe(3).counts() == (2, 2, 2)
    empty = boundary_globe(0)
    assert empty.trunc_dim == -1 and empty.counts() == ()


def test_broken_globularity_names_the_cell():
    g = GlobularData.make(
        2,
        [["x", "y", "z"], ["f", "g"], ["p"]],
        [{"f": "x", "g": "z"}, {"p": "f"}],
        [{"f": "y", "g": "y"}, {"p": "g"}],
    )
    rep = validate_globular(g)
    assert len(rep.violations) == 1
    v = rep.violations[0]
    assert v.kind == "globular" and v.cells == ((2, "p"),)


def test_dangling_and_missing_boundaries():
    g = GlobularData.make(1, [["x"], ["f", "g"]], [{"f": "x", "g": "nope"}], [{"f": "x"}])
    assert validate_globular(g).kinds() == {"dangling", "missing"}


def test_json_round_trip():
    g = globe(3)
    doc = json.loads(json.dumps(g.to_json()))
    assert GlobularData.from_json(doc) == g


def test_count_maps_examples():
    K = cosep(1, 2).underlying
    assert count_maps(globe(1), K) == 2
    assert count_maps(boundary_globe(1), globe(0)) == 1
    assert count_maps(disjoint_union_gset(globe(1), globe(1)), K) == 4
    # the two-fold union against the oracle as well
    two = disjoint_union_gset(globe(1), globe(1))
    assert brute_count_maps(two.to_json(), K.to_json()) == 4


def test_hom_of_globe():
    h = hom_gset(globe(2), "x", "y")
    assert h.counts() == (2, 1)
    assert hom_gset(globe(2), "y", "x").counts() == (0, 0)


def test_count_budget():
    # a connected path of six points
    pts = [f"p{i}" for i in range(6)]
    path = GlobularData.make(
        1, [pts, [f"e{i}" for i in range(5)]],
        [{f"e{i}": pts[i] for i in range(5)}], [{f"e{i}": pts[i + 1] for i in range(5)}],
    )
    # hom counts differ between pairs of points, so nothing factors out
    arrows = {"aa": ("a", "a"), "ab": ("a", "b"), "ba": ("b", "a")}
    golden = GlobularData.make(
        1, [["a", "b"], list(arrows)],
        [{f: e[0] for f, e in arrows.items()}], [{f: e[1] for f, e in arrows.items()}],
    )
    assert count_maps(path, golden) == brute_count_maps(path.to_json(), golden.to_json()) == 21
    with pytest.raises(BudgetExceeded):
        count_maps(path, golden, budget=3)


@given(globular_sets(), globular_sets())
def test_count_maps_matches_oracle(a, b):
    assert validate_globular(a).ok and validate_globular(b).ok
    expected = brute_count_maps(a.to_json(), b.to_json())
    assert count_maps(a, b) == expected
    assert brute_force_count_maps(a, b) == expected


@given(globular_sets())
def test_union_counts_multiply(a):
    K = cosep(1, 2).underlying
    assert count_maps(disjoint_union_gset(a, a), K) == count_maps(a, K) ** 2
