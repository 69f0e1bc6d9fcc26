"""Cylinders: equivalence-filled squares connecting parallel cells, built recursively through homs."""
from __future__ import annotations

from dataclasses import dataclass

from .coind import equivalences, is_equivalence
from .fib import Verdict
from .gset import Cell, GlobularData
from .scat import FiniteOmegaCat, hom


@dataclass(frozen=True)
class Cylinder:
    """An n-cylinder ``source ~> target`` between n-cells of its ambient category.

    Level 0 carries an equivalence 1-cell ``edge``.  Higher levels carry
    equivalence 1-cells ``flat`` (between the 0-sources) and ``sharp``
    (between the 0-targets) and a cylinder ``natural`` one level down in the
    hom from the 0-source of ``source`` to the 0-target of ``target``; the
    cells of ``natural`` are named as in the ambient category, one dimension
    lower.
    """

    level: int
    source: Cell
    target: Cell
    edge: Cell | None = None
    flat: Cell | None = None
    sharp: Cell | None = None
    natural: "Cylinder | None" = None

    @property
    def ident(self) -> str:
        if self.level == 0:
            return self.edge.name
        return f"[{self.source.name}|{self.target.name}|{self.flat.name}|{self.sharp.name}|{self.natural.ident}]"

    def to_json(self) -> dict:
        doc = {"level": self.level, "source": self.source.name, "target": self.target.name}
        if self.level == 0:
            doc["edge"] = self.edge.name
        else:
            doc.update(flat=self.flat.name, sharp=self.sharp.name, natural=self.natural.to_json())
        return doc


def _down(c: Cell) -> Cell:
    return Cell(c.dim - 1, c.name)


def _hom_of(X: FiniteOmegaCat, a: Cell, b: Cell, memo: dict) -> FiniteOmegaCat:
    key = (X._key, a.name, b.name)
    if key not in memo:
        memo[key] = hom(X, a.name, b.name)
    return memo[key]


def _zero_bounds(X: FiniteOmegaCat, c: Cell) -> tuple[Cell, Cell]:
    return X.src_k(c, 0), X.tgt_k(c, 0)


def enumerate_cylinders(X: FiniteOmegaCat, n: int, memo: dict | None = None) -> list[Cylinder]:
    """Every n-cylinder of X (requires n < X.trunc_dim)."""
    if n >= X.d:
        raise ValueError(f"cylinder level {n} needs trunc_dim > {n}")
    memo = {} if memo is None else memo
    key = ("cyl", X._key, n)
    if key in memo:
        return memo[key]
    E = equivalences(X)
    edges = [e for e in X.cells(1) if e in E]
    if n == 0:
        out = [Cylinder(0, X.src(e), X.tgt(e), edge=e) for e in edges]
        memo[key] = out
        return out
    cells = X.cells(n)
    by_bounds: dict[tuple[Cell, Cell], list[Cell]] = {}
    for c in cells:
        by_bounds.setdefault(_zero_bounds(X, c), []).append(c)
    out = []
    for flat in edges:
        a, b = X.src(flat), X.tgt(flat)
        for sharp in edges:
            c0, e0 = X.src(sharp), X.tgt(sharp)
            H = _hom_of(X, a, e0, memo)
            lefts: dict[Cell, list[Cell]] = {}
            for x in by_bounds.get((a, c0), ()):
                lefts.setdefault(_down(X.whisker(0, x, sharp)), []).append(x)
            rights: dict[Cell, list[Cell]] = {}
            for y in by_bounds.get((b, e0), ()):
                rights.setdefault(_down(X.whisker(0, flat, y)), []).append(y)
            if not lefts or not rights:
                continue
            for N in enumerate_cylinders(H, n - 1, memo):
                for x in lefts.get(N.source, ()):
                    for y in rights.get(N.target, ()):
                        out.append(Cylinder(n, x, y, flat=flat, sharp=sharp, natural=N))
    memo[key] = out
    return out


def cylinder_boundary(X: FiniteOmegaCat, U: Cylinder, memo: dict | None = None) -> tuple[Cylinder, Cylinder]:
    """Source and target (n-1)-cylinders of an n-cylinder, n >= 1."""
    if U.level == 0:
        raise ValueError("0-cylinders have no boundary")
    memo = {} if memo is None else memo
    if U.level == 1:
        xs, ys = U.source, U.target
        return (
            Cylinder(0, X.src(xs), X.src(ys), edge=U.flat),
            Cylinder(0, X.tgt(xs), X.tgt(ys), edge=U.sharp),
        )
    H = _hom_of(X, X.src(U.flat), X.tgt(U.sharp), memo)
    sN, tN = cylinder_boundary(H, U.natural, memo)
    return (
        Cylinder(U.level - 1, X.src(U.source), X.src(U.target), flat=U.flat, sharp=U.sharp, natural=sN),
        Cylinder(U.level - 1, X.tgt(U.source), X.tgt(U.target), flat=U.flat, sharp=U.sharp, natural=tN),
    )


def is_valid_cylinder(X: FiniteOmegaCat, U: Cylinder, memo: dict | None = None) -> bool:
    """Re-check the typing and equivalence conditions of a cylinder."""
    memo = {} if memo is None else memo
    n = U.level
    if U.source.dim != n or U.target.dim != n or not (X.has(U.source) and X.has(U.target)):
        return False
    if n == 0:
        e = U.edge
        return (
            e is not None and e.dim == 1 and X.has(e) and is_equivalence(X, e)
            and X.src(e) == U.source and X.tgt(e) == U.target
        )
    flat, sharp = U.flat, U.sharp
    xb, xs = _zero_bounds(X, U.source)
    yb, ys = _zero_bounds(X, U.target)
    for e, (s, t) in ((flat, (xb, yb)), (sharp, (xs, ys))):
        if e is None or e.dim != 1 or not X.has(e) or not is_equivalence(X, e):
            return False
        if X.src(e) != s or X.tgt(e) != t:
            return False
    N = U.natural
    if N is None or N.level != n - 1:
        return False
    H = _hom_of(X, xb, ys, memo)
    if N.source != _down(X.whisker(0, U.source, sharp)) or N.target != _down(X.whisker(0, flat, U.target)):
        return False
    return is_valid_cylinder(H, N, memo)


def bridge(X: FiniteOmegaCat, u: Cell, v: Cell, u2: Cell) -> Cylinder:
    """Cylinder u ~> u2 through a chain u, v, u2 of composable equivalences."""
    n = u.dim
    if not (u.dim == v.dim == u2.dim >= 1):
        raise ValueError("bridge needs three cells of one positive dimension")
    if X.tgt(u) != X.src(v) or X.tgt(v) != X.src(u2):
        raise ValueError("bridge needs a composable chain u, v, u2")
    if not all(is_equivalence(X, c) for c in (u, v, u2)):
        raise ValueError("bridge needs equivalences")
    if n == 1:
        flat = X.compose(0, u, v)
        sharp = X.compose(0, v, u2)
        m = X.compose(0, u, sharp)
        edge = X.ident_of(m)
        natural = Cylinder(0, _down(m), _down(m), edge=_down(edge))
        return Cylinder(1, u, u2, flat=flat, sharp=sharp, natural=natural)
    xb, xs = _zero_bounds(X, u)
    H = hom(X, xb.name, xs.name)
    natural = bridge(H, _down(u), _down(v), _down(u2))
    return Cylinder(n, u, u2, flat=X.ident_of(xb), sharp=X.ident_of(xs), natural=natural)


def cylinder_globular(X: FiniteOmegaCat, up_to: int, memo: dict | None = None) -> GlobularData:
    """The globular set of cylinders of levels 0..up_to."""
    memo = {} if memo is None else memo
    cells, src, tgt = [], [], []
    for n in range(up_to + 1):
        cyls = enumerate_cylinders(X, n, memo)
        cells.append([U.ident for U in cyls])
        if n > 0:
            s, t = {}, {}
            for U in cyls:
                a, b = cylinder_boundary(X, U, memo)
                s[U.ident], t[U.ident] = a.ident, b.ident
            src.append(s)
            tgt.append(t)
    return GlobularData.make(up_to, cells, src, tgt)


def check_projections_trivfib(X: FiniteOmegaCat, up_to: int, memo: dict | None = None) -> Verdict:
    """Elementwise trivial-fibration test for both endpoint projections of the cylinder set."""
    memo = {} if memo is None else memo
    levels = [enumerate_cylinders(X, n, memo) for n in range(up_to + 1)]
    bounds = {}
    for n in range(1, up_to + 1):
        for U in levels[n]:
            bounds[U] = cylinder_boundary(X, U, memo)
    for side in ("source", "target"):
        proj = (lambda U: U.source) if side == "source" else (lambda U: U.target)
        hit = {proj(U) for U in levels[0]}
        for z in sorted(X.cells(0)):
            if z not in hit:
                return Verdict(False, {"projection": side, "level": 0, "cell": z})
        for n in range(1, up_to + 1):
            have: dict[tuple, set[Cell]] = {}
            for U in levels[n]:
                s, t = bounds[U]
                have.setdefault((s, t), set()).add(proj(U))
            lower = levels[n - 1]
            if n - 1 == 0:
                pairs = [(V, W) for V in lower for W in lower]
            else:
                groups: dict[tuple, list[Cylinder]] = {}
                for V in lower:
                    groups.setdefault(bounds[V], []).append(V)
                pairs = [(V, W) for g in groups.values() for V in g for W in g]
            for V, W in pairs:
                got = have.get((V, W), set())
                for c in X.between(proj(V), proj(W)):
                    if c not in got:
                        return Verdict(
                            False,
                            {"projection": side, "level": n, "from": V.ident, "to": W.ident, "cell": c},
                        )
    return Verdict(True)
