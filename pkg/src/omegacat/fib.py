"""Strict functors and the fibration checks: equifibrations, trivial fibrations, weak equivalences."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coind import equivalences, is_equivalence, similar
from .gset import BudgetExceeded, Cell, ValidationReport
from .scat import FiniteOmegaCat, suspend, suspension_points


@dataclass(frozen=True, eq=False)
class OmegaFunctor:
    dom: FiniteOmegaCat
    cod: FiniteOmegaCat
    mapping: Mapping[Cell, Cell]

    def __call__(self, c: Cell) -> Cell:
        if c.dim <= self.dom.d:
            return self.mapping[c]
        base = self.mapping[Cell(self.dom.d, c.name)]
        return self.cod.lift(base, c.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaFunctor):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and dict(self.mapping) == dict(other.mapping)

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, frozenset(self.mapping.items())))

    def then(self, g: "OmegaFunctor") -> "OmegaFunctor":
        """Composite ``g . self``."""
        return OmegaFunctor(self.dom, g.cod, {c: g(self(c)) for c in self.mapping})

    def to_json(self) -> dict:
        out: dict[str, dict[str, str]] = {}
        for c, v in sorted(self.mapping.items()):
            out.setdefault(str(c.dim), {})[c.name] = v.name
        return {"dom": self.dom.to_json(), "cod": self.cod.to_json(), "map": out}

    @staticmethod
    def from_json(doc: Mapping, dom: FiniteOmegaCat | None = None, cod: FiniteOmegaCat | None = None) -> "OmegaFunctor":
        dom = dom or FiniteOmegaCat.from_json(doc["dom"])
        cod = cod or FiniteOmegaCat.from_json(doc["cod"])
        mapping = {
            Cell(int(n), a): Cell(int(n), b) for n, tbl in doc["map"].items() for a, b in tbl.items()
        }
        return OmegaFunctor(dom, cod, mapping)


def identity_functor(X: FiniteOmegaCat) -> OmegaFunctor:
    return OmegaFunctor(X, X, {c: c for c in X.all_cells()})


def to_terminal(X: FiniteOmegaCat, T: FiniteOmegaCat) -> OmegaFunctor:
    return OmegaFunctor(X, T, {c: Cell(c.dim, "*") for c in X.all_cells()})


def functor_from_names(dom: FiniteOmegaCat, cod: FiniteOmegaCat, mapping: Mapping[tuple[int, str], str]) -> OmegaFunctor:
    return OmegaFunctor(dom, cod, {Cell(n, a): Cell(n, b) for (n, a), b in mapping.items()})


def suspend_functor(f: OmegaFunctor) -> OmegaFunctor:
    SX, SY = suspend(f.dom), suspend(f.cod)
    px, qx = suspension_points(f.dom)
    py, qy = suspension_points(f.cod)
    m = {}
    for n in range(SX.d + 1):
        for c in SX.cells(n):
            if c.name == px:
                m[c] = Cell(n, py)
            elif c.name == qx:
                m[c] = Cell(n, qy)
            else:
                m[c] = Cell(n, f(Cell(n - 1, c.name)).name)
    return OmegaFunctor(SX, SY, m)


def is_functor(f: OmegaFunctor) -> ValidationReport:
    """Exhaustive check that f preserves boundaries, identities and composites."""
    rep = ValidationReport()
    X, Y = f.dom, f.cod
    for c in X.all_cells():
        v = f.mapping.get(c)
        if v is None:
            rep.add("undefined", f"no image for {c}", c)
        elif v.dim != c.dim or not Y.has(v):
            rep.add("dangling", f"image of {c} is not a cell of the codomain", c)
    if not rep.ok:
        return rep
    for c in X.all_cells(1):
        if Y.src(f(c)) != f(X.src(c)) or Y.tgt(f(c)) != f(X.tgt(c)):
            rep.add("boundary", f"f does not preserve the boundary of {c}", c)
    for c in X.all_cells(0, X.d - 1):
        if f(X.ident_of(c)) != Y.ident_of(f(c)):
            rep.add("identity", f"f(id {c.name}) != id f({c.name})", c)
    if not rep.ok:
        return rep
    for (k, n), tbl in X.comp.items():
        for (a, b), r in tbl.items():
            ca, cb = Cell(n, a), Cell(n, b)
            if Y.compose(k, f(ca), f(cb)) != f(Cell(n, r)):
                rep.add("composition", f"f({a} o{k} {b}) != f({a}) o{k} f({b})", ca, cb)
    return rep


@dataclass
class Verdict:
    holds: bool
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        cx = None
        if self.counterexample is not None:
            cx = {k: (list(v) if isinstance(v, Cell) else v) for k, v in self.counterexample.items()}
        return {"holds": self.holds, "counterexample": cx}


def _top(f: OmegaFunctor) -> int:
    return max(f.dom.d, f.cod.d)


def _sorted(cells: Iterable[Cell]) -> list[Cell]:
    return sorted(cells)


def is_equifibration(f: OmegaFunctor) -> Verdict:
    """Every equivalence u: fx -> y lifts to an equivalence out of x over u."""
    X, Y = f.dom, f.cod
    for n in range(1, _top(f) + 1):
        for x in _sorted(X.cells(n - 1)):
            lifted = {f(c) for c in X.out_of(x) if is_equivalence(X, c)}
            for u in _sorted(Y.out_of(f(x))):
                if is_equivalence(Y, u) and u not in lifted:
                    return Verdict(False, {"dim": n, "x": x, "u": u})
    return Verdict(True)


def symmetric_lifting_holds(f: OmegaFunctor) -> Verdict:
    """Every equivalence v: y -> fx lifts to an equivalence into x over v."""
    X, Y = f.dom, f.cod
    for n in range(1, _top(f) + 1):
        for x in _sorted(X.cells(n - 1)):
            lifted = {f(c) for c in X.into(x) if is_equivalence(X, c)}
            for v in _sorted(Y.into(f(x))):
                if is_equivalence(Y, v) and v not in lifted:
                    return Verdict(False, {"dim": n, "x": x, "v": v})
    return Verdict(True)


def _parallel_pairs(X: FiniteOmegaCat, n: int) -> list[tuple[Cell, Cell]]:
    cells = _sorted(X.cells(n))
    if n == 0:
        return [(a, b) for a in cells for b in cells]
    groups: dict[tuple[Cell, Cell], list[Cell]] = {}
    for c in cells:
        groups.setdefault((X.src(c), X.tgt(c)), []).append(c)
    pairs = [(a, b) for grp in groups.values() for a in grp for b in grp]
    return sorted(pairs)


def _lift_dims(f: OmegaFunctor, beyond: bool) -> range:
    return range(1, _top(f) + (2 if beyond else 1))


def is_trivial_fibration(f: OmegaFunctor, beyond_truncation: bool = False) -> Verdict:
    """Surjective on 0-cells and every u: fx -> fx' has an exact lift x -> x'.

    Dimensions run up to the larger truncation.  With ``beyond_truncation``
    one more dimension is checked; there the only cells are formal
    identities, so the extra condition is injectivity on parallel top cells.
    """
    X, Y = f.dom, f.cod
    image0 = {f(c) for c in X.cells(0)}
    for y in _sorted(Y.cells(0)):
        if y not in image0:
            return Verdict(False, {"dim": 0, "y": y})
    for n in _lift_dims(f, beyond_truncation):
        for x, x2 in _parallel_pairs(X, n - 1):
            lifted = {f(c) for c in X.between(x, x2)}
            for u in _sorted(Y.between(f(x), f(x2))):
                if u not in lifted:
                    return Verdict(False, {"dim": n, "x": x, "x2": x2, "u": u})
    return Verdict(True)


def is_weak_equivalence(f: OmegaFunctor, beyond_truncation: bool = False) -> Verdict:
    """Essentially surjective on 0-cells and full up to ~ in every dimension."""
    X, Y = f.dom, f.cod
    image0 = [f(c) for c in X.cells(0)]
    for y in _sorted(Y.cells(0)):
        if not any(similar(Y, z, y) for z in image0):
            return Verdict(False, {"dim": 0, "y": y})
    for n in _lift_dims(f, beyond_truncation):
        for x, x2 in _parallel_pairs(X, n - 1):
            images = {f(c) for c in X.between(x, x2)}
            for u in _sorted(Y.between(f(x), f(x2))):
                if u in images:
                    continue
                if not any(similar(Y, z, u) for z in images):
                    return Verdict(False, {"dim": n, "x": x, "x2": x2, "u": u})
    return Verdict(True)


def is_gaunt(X: FiniteOmegaCat) -> bool:
    return equivalences(X) == X.identities()


DEFAULT_FUNCTOR_BUDGET = 2_000_000


def enumerate_functors(
    X: FiniteOmegaCat,
    Y: FiniteOmegaCat,
    budget: int = DEFAULT_FUNCTOR_BUDGET,
    limit: int | None = None,
) -> list[OmegaFunctor]:
    """All strict functors X -> Y by dimension-increasing backtracking."""
    order = [c for n in range(X.d + 1) for c in sorted(X.cells(n), key=lambda c: (X.is_identity(c), c.name))]
    pos = {c: i for i, c in enumerate(order)}
    checks: dict[int, list[tuple[int, Cell, Cell, Cell]]] = {}
    for (k, n), tbl in X.comp.items():
        for (a, b), r in tbl.items():
            ca, cb, cr = Cell(n, a), Cell(n, b), Cell(n, r)
            checks.setdefault(max(pos[ca], pos[cb], pos[cr]), []).append((k, ca, cb, cr))
    f: dict[Cell, Cell] = {}
    results: list[OmegaFunctor] = []
    steps = 0

    def candidates(c: Cell) -> list[Cell]:
        base = X.identity_base(c)
        if base is not None and base in f:
            return [Y.ident_of(f[base])]
        if c.dim == 0:
            return Y.cells(0)
        return Y.between(f[X.src(c)], f[X.tgt(c)])

    def ok(i: int) -> bool:
        for k, a, b, r in checks.get(i, ()):
            if Y.compose(k, f[a], f[b]) != f[r]:
                return False
        return True

    def go(i: int) -> bool:
        nonlocal steps
        if i == len(order):
            results.append(OmegaFunctor(X, Y, dict(f)))
            return limit is not None and len(results) >= limit
        c = order[i]
        for v in candidates(c):
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"enumerate_functors exceeded {budget} steps")
            f[c] = v
            if ok(i) and go(i + 1):
                return True
        f.pop(c, None)
        return False

    go(0)
    return results
