"""Coinductive equivalences: the spherical and flat operators and their greatest fixed points.

Cells above the truncation are formal identities and count as members of
every cell set, so a top-dimensional cell is an equivalence exactly when it
is strictly invertible.
"""
from __future__ import annotations

from typing import Callable, Iterable

from .gset import Cell
from .scat import FiniteOmegaCat


class NonMonotoneError(RuntimeError):
    pass


def greatest_fixed_point(op: Callable[[frozenset], frozenset], top: Iterable[Cell]) -> frozenset:
    """Iterate ``op`` downwards from ``top`` until it stabilizes."""
    S = frozenset(top)
    for _ in range(len(S) + 2):
        T = frozenset(op(S))
        if not T <= S:
            extra = sorted(T - S)[:5]
            raise NonMonotoneError(f"iteration grew the set by {extra}")
        if T == S:
            return S
        S = T
    raise NonMonotoneError("iteration failed to stabilize")


def _member(X: FiniteOmegaCat, S: frozenset, c: Cell) -> bool:
    return c.dim > X.d or c in S


def _witnessed(X: FiniteOmegaCat, S: frozenset, a: Cell, b: Cell) -> bool:
    """Is there a cell a -> b in S (formal identities included)?"""
    return any(_member(X, S, p) for p in X.between(a, b))


def right_inverses(X: FiniteOmegaCat, S: frozenset, u: Cell) -> list[Cell]:
    """All v with some p: u o v -> id in S."""
    n = u.dim
    x, y = X.src(u), X.tgt(u)
    idx = X.ident_of(x)
    return [v for v in X.between(y, x) if _witnessed(X, S, X.compose(n - 1, u, v), idx)]


def left_inverses(X: FiniteOmegaCat, S: frozenset, u: Cell) -> list[Cell]:
    """All w with some q: w o u -> id in S."""
    n = u.dim
    x, y = X.src(u), X.tgt(u)
    idy = X.ident_of(y)
    return [w for w in X.between(y, x) if _witnessed(X, S, X.compose(n - 1, w, u), idy)]


def phi(X: FiniteOmegaCat, S: frozenset) -> frozenset:
    """Spherical step: cells with one two-sided inverse witnessed in S."""
    out = set()
    for u in X.all_cells(1):
        n = u.dim
        x, y = X.src(u), X.tgt(u)
        idx, idy = X.ident_of(x), X.ident_of(y)
        for v in X.between(y, x):
            if _witnessed(X, S, X.compose(n - 1, u, v), idx) and _witnessed(
                X, S, X.compose(n - 1, v, u), idy
            ):
                out.add(u)
                break
    return frozenset(out)


def psi(X: FiniteOmegaCat, S: frozenset) -> frozenset:
    """Flat step: a right inverse and a possibly different left inverse."""
    return frozenset(
        u for u in X.all_cells(1) if right_inverses(X, S, u) and left_inverses(X, S, u)
    )


def rinv(X: FiniteOmegaCat, S: frozenset) -> frozenset:
    """Cells that are right S-inverses of some cell that has a left S-inverse."""
    out = set()
    for u in X.all_cells(1):
        if left_inverses(X, S, u):
            out.update(right_inverses(X, S, u))
    return frozenset(out)


_EQ_CACHE: dict = {}
_FLAT_CACHE: dict = {}


def equivalences(X: FiniteOmegaCat) -> frozenset:
    """The greatest fixed point of the spherical operator."""
    key = X._key
    if key not in _EQ_CACHE:
        _EQ_CACHE[key] = greatest_fixed_point(lambda S: phi(X, S), X.full_cellset())
    return _EQ_CACHE[key]


def flat_equivalences(X: FiniteOmegaCat) -> frozenset:
    key = X._key
    if key not in _FLAT_CACHE:
        _FLAT_CACHE[key] = greatest_fixed_point(lambda S: psi(X, S), X.full_cellset())
    return _FLAT_CACHE[key]


def clear_caches() -> None:
    _EQ_CACHE.clear()
    _FLAT_CACHE.clear()


def is_equivalence(X: FiniteOmegaCat, c: Cell) -> bool:
    if c.dim == 0:
        raise ValueError("0-cells are not candidates for equivalence")
    return c.dim > X.d or c in equivalences(X)


def equivalences_between(X: FiniteOmegaCat, a: Cell, b: Cell) -> list[Cell]:
    E = equivalences(X)
    return [c for c in X.between(a, b) if _member(X, E, c)]


def similar(X: FiniteOmegaCat, a: Cell, b: Cell) -> bool:
    """a ~ b: some equivalence cell a -> b exists."""
    if not X.parallel(a, b):
        raise ValueError(f"{a} and {b} are not parallel")
    return bool(equivalences_between(X, a, b))


def find_inverse(X: FiniteOmegaCat, u: Cell) -> Cell | None:
    """Some v with u o v ~ id, or None when u is not an equivalence."""
    if not is_equivalence(X, u):
        return None
    x, y = X.src(u), X.tgt(u)
    idx = X.ident_of(x)
    for v in X.between(y, x):
        if similar(X, X.compose(u.dim - 1, u, v), idx):
            return v
    return None


def inverses(X: FiniteOmegaCat, u: Cell) -> list[Cell]:
    if not is_equivalence(X, u):
        return []
    idx = X.ident_of(X.src(u))
    return [v for v in X.between(X.tgt(u), X.src(u)) if similar(X, X.compose(u.dim - 1, u, v), idx)]


def similarity_classes(X: FiniteOmegaCat, n: int) -> list[list[Cell]]:
    """Partition of the n-cells into ~-classes (n >= 0; 0-cells via equivalence 1-cells)."""
    cells = X.cells(n)
    classes: list[list[Cell]] = []
    for c in cells:
        for cls in classes:
            r = cls[0]
            if (n == 0 or X.parallel(r, c)) and equivalences_between(X, r, c):
                cls.append(c)
                break
        else:
            classes.append([c])
    return classes
