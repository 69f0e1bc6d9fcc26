"""Quotients by similarity: the category tau1 and the strict 2-category tau2.

Both are built from ~-classes of cells.  Since the input is strict, the
associator and unitors of tau2 are identity classes, so the coherence laws
reduce to strict associativity and unitality, which are checked directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _pairs

from .coind import equivalences_between
from .gset import Cell, ValidationReport
from .scat import FiniteOmegaCat, hom


def _class_partition(Y: FiniteOmegaCat, n: int, log: list[str]) -> dict[Cell, str]:
    """Map each n-cell to a class label (least member name) via union-find over ~."""
    cells = Y.cells(n)
    parent = {c: c for c in cells}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    related = set()
    for a in cells:
        for b in cells:
            if a != b and (n == 0 or Y.parallel(a, b)) and equivalences_between(Y, a, b):
                related.add((a, b))
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    # the relation should already be an equivalence relation
    for a, b in related:
        if (b, a) not in related:
            log.append(f"similarity not symmetric: {a.name} ~ {b.name}")
    for a, b in related:
        for b2, c in related:
            if b == b2 and a != c and (a, c) not in related:
                log.append(f"similarity not transitive: {a.name} ~ {b.name} ~ {c.name}")
    groups: dict[Cell, list[Cell]] = {}
    for c in cells:
        groups.setdefault(find(c), []).append(c)
    label = {}
    for members in groups.values():
        name = min(m.name for m in members)
        for m in members:
            label[m] = name
    return label


@dataclass
class QuotientCategory:
    """A finite 1-category whose morphisms are ~-classes of 1-cells.

    Composition is diagrammatic: ``comp[(p, q)]`` is ``[p] then [q]``.
    """

    objects: list[str]
    homs: dict[tuple[str, str], list[str]]
    members: dict[str, list[str]]
    rep: dict[str, str]
    comp: dict[tuple[str, str], str]
    ident: dict[str, str]
    log: list[str] = field(default_factory=list)

    def src(self, p: str) -> str:
        return self._ends[p][0]

    def tgt(self, p: str) -> str:
        return self._ends[p][1]

    @property
    def _ends(self) -> dict[str, tuple[str, str]]:
        return {p: xy for xy, ps in self.homs.items() for p in ps}

    def morphisms(self) -> list[str]:
        return [p for xy in sorted(self.homs) for p in self.homs[xy]]

    def is_iso(self, p: str) -> bool:
        x, y = self.src(p), self.tgt(p)
        return any(
            self.comp[(p, q)] == self.ident[x] and self.comp[(q, p)] == self.ident[y]
            for q in self.homs.get((y, x), ())
        )

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "homs": {f"{x}->{y}": ps for (x, y), ps in sorted(self.homs.items())},
            "members": dict(sorted(self.members.items())),
            "ident": dict(sorted(self.ident.items())),
            "comp": [[p, q, r] for (p, q), r in sorted(self.comp.items())],
            "log": list(self.log),
        }


def tau1(Y: FiniteOmegaCat) -> QuotientCategory:
    """Objects the 0-cells of Y, morphisms the ~-classes of 1-cells."""
    log: list[str] = []
    label = _class_partition(Y, 1, log)
    objects = list(Y.names(0))
    homs: dict[tuple[str, str], list[str]] = {(x, y): [] for x in objects for y in objects}
    members: dict[str, list[str]] = {}
    for c in Y.cells(1):
        p = label[c]
        if p not in members:
            members[p] = []
            homs[(Y.src(c).name, Y.tgt(c).name)].append(p)
        members[p].append(c.name)
    comp: dict[tuple[str, str], str] = {}
    for (x, y), ps in homs.items():
        for z in objects:
            for p, q in _pairs(ps, homs[(y, z)]):
                seen = {
                    label[Y.compose(0, Cell(1, a), Cell(1, b))]
                    for a in members[p] for b in members[q]
                }
                if len(seen) > 1:
                    log.append(f"composite of [{p}] and [{q}] depends on representatives: {sorted(seen)}")
                comp[(p, q)] = min(seen)
    ident = {x: label[Y.ident_of(Cell(0, x))] for x in objects}
    rep = {c.name: label[c] for c in Y.cells(1)}
    return QuotientCategory(objects, homs, members, rep, comp, ident, log)


def check_category_axioms(Q: QuotientCategory) -> ValidationReport:
    rep = ValidationReport()
    for p in Q.morphisms():
        x, y = Q.src(p), Q.tgt(p)
        if Q.comp[(Q.ident[x], p)] != p or Q.comp[(p, Q.ident[y])] != p:
            rep.add("unit", f"identity law fails at [{p}]")
    by_src: dict[str, list[str]] = {}
    for p in Q.morphisms():
        by_src.setdefault(Q.src(p), []).append(p)
    for p in Q.morphisms():
        for q in by_src.get(Q.tgt(p), ()):
            for r in by_src.get(Q.tgt(q), ()):
                if Q.comp[(Q.comp[(p, q)], r)] != Q.comp[(p, Q.comp[(q, r)])]:
                    rep.add("associativity", f"([{p}][{q}])[{r}] != [{p}]([{q}][{r}])")
    return rep


@dataclass
class QuotientTwoCategory:
    """Strict 2-category: hom categories tau1(X(a, b)) and horizontal composition on classes.

    ``hcomp1`` composes 1-cells, ``hcomp2`` composes 2-cell classes, both
    keyed by ``(left, right)`` in diagrammatic order.  Associator and unitors
    are identity classes and are not stored separately.
    """

    objects: list[str]
    homs: dict[tuple[str, str], QuotientCategory]
    hcomp1: dict[tuple[str, str], str]
    hcomp2: dict[tuple[str, str], str]
    ident: dict[str, str]
    log: list[str] = field(default_factory=list)

    def hom_of(self, u: str) -> tuple[str, str]:
        for xy, Q in self.homs.items():
            if u in Q.objects:
                return xy
        raise KeyError(u)

    def associator(self, u: str, v: str, w: str) -> str:
        """Class of the associativity 2-cell; the identity class since composition is strict."""
        uvw = self.hcomp1[(self.hcomp1[(u, v)], w)]
        return self.homs[self.hom_of(uvw)].ident[uvw]

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "ident": dict(sorted(self.ident.items())),
            "homs": {f"{x}->{y}": Q.to_json() for (x, y), Q in sorted(self.homs.items())},
            "hcomp1": [[u, v, w] for (u, v), w in sorted(self.hcomp1.items())],
            "hcomp2": [[p, q, r] for (p, q), r in sorted(self.hcomp2.items())],
            "log": list(self.log),
        }


def tau2(X: FiniteOmegaCat) -> QuotientTwoCategory:
    if X.d < 1:
        raise ValueError("tau2 needs trunc_dim >= 1")
    objects = list(X.names(0))
    homs = {(a, b): tau1(hom(X, a, b)) for a in objects for b in objects}
    log = [f"hom({a},{b}): {m}" for (a, b), Q in homs.items() for m in Q.log]
    hcomp1: dict[tuple[str, str], str] = {}
    hcomp2: dict[tuple[str, str], str] = {}
    for (a, b), Q in homs.items():
        for c in objects:
            R = homs[(b, c)]
            target = homs[(a, c)]
            for u, v in _pairs(Q.objects, R.objects):
                hcomp1[(u, v)] = X.compose(0, Cell(1, u), Cell(1, v)).name
            for p, q in _pairs(Q.morphisms(), R.morphisms()):
                seen = set()
                for s, t in _pairs(Q.members[p], R.members[q]):
                    r = X.whisker(0, Cell(2, s), Cell(2, t))
                    seen.add(target.rep[r.name])
                if len(seen) > 1:
                    log.append(f"horizontal composite of [{p}] and [{q}] depends on representatives: {sorted(seen)}")
                hcomp2[(p, q)] = min(seen)
    ident = {a: X.ident_of(Cell(0, a)).name for a in objects}
    return QuotientTwoCategory(objects, homs, hcomp1, hcomp2, ident, log)


def check_two_category_axioms(T: QuotientTwoCategory) -> ValidationReport:
    """Hom categories, strict associativity and units of horizontal composition, and interchange."""
    rep = ValidationReport()
    for xy, Q in sorted(T.homs.items()):
        sub = check_category_axioms(Q)
        for v in sub.violations:
            rep.add(v.kind, f"hom {xy}: {v.message}")
    where1 = {u: xy for xy, Q in T.homs.items() for u in Q.objects}
    where2 = {p: (xy, Q) for xy, Q in T.homs.items() for p in Q.morphisms()}
    for u, (a, b) in where1.items():
        if T.hcomp1[(T.ident[a], u)] != u or T.hcomp1[(u, T.ident[b])] != u:
            rep.add("unit", f"identity 1-cells are not units for {u}")
    for (u, v), uv in T.hcomp1.items():
        for w, (b, c) in where1.items():
            if b != where1[v][1]:
                continue
            if T.hcomp1[(uv, w)] != T.hcomp1[(u, T.hcomp1[(v, w)])]:
                rep.add("associativity", f"1-cells ({u} {v}) {w} != {u} ({v} {w})")
    for p, ((a, b), Q) in where2.items():
        ida = T.homs[(a, a)].ident[T.ident[a]]
        idb = T.homs[(b, b)].ident[T.ident[b]]
        if T.hcomp2[(ida, p)] != p or T.hcomp2[(p, idb)] != p:
            rep.add("unit", f"identity 2-cells are not horizontal units for [{p}]")
    for (p, q), pq in T.hcomp2.items():
        for r, ((b, c), _) in where2.items():
            if b != where2[q][0][1]:
                continue
            if T.hcomp2[(pq, r)] != T.hcomp2[(p, T.hcomp2[(q, r)])]:
                rep.add("associativity", f"2-cells ([{p}] [{q}]) [{r}] != [{p}] ([{q}] [{r}])")
    # interchange: ([p][p']) o0 ([q][q']) = ([p] o0 [q]) ([p'] o0 [q'])
    for (a, b), Q in T.homs.items():
        for c in T.objects:
            R, S = T.homs[(b, c)], T.homs[(a, c)]
            for u in Q.objects:
                ident_u = Q.ident[u]
                for v in R.objects:
                    if T.hcomp2[(ident_u, R.ident[v])] != S.ident[T.hcomp1[(u, v)]]:
                        rep.add("identity", f"[id {u}] o0 [id {v}] is not [id {u}{v}]")
            for p in Q.morphisms():
                for p2 in (m for m in Q.morphisms() if Q.src(m) == Q.tgt(p)):
                    for q in R.morphisms():
                        for q2 in (m for m in R.morphisms() if R.src(m) == R.tgt(q)):
                            lhs = T.hcomp2[(Q.comp[(p, p2)], R.comp[(q, q2)])]
                            rhs = S.comp[(T.hcomp2[(p, q)], T.hcomp2[(p2, q2)])]
                            if lhs != rhs:
                                rep.add("interchange", f"interchange fails for [{p}],[{p2}],[{q}],[{q2}]")
    return rep


def iso_in_quotient(X: FiniteOmegaCat, u: Cell, level: int = 1) -> bool:
    """Is [u] invertible in tau1(X) (level 1), or an equivalence 1-cell of tau2(X) (level 2)?

    At level 2 this asks for v with isomorphisms u v => id and v u => id in
    the quotient hom categories.
    """
    if u.dim != 1:
        raise ValueError("iso_in_quotient takes a 1-cell")
    x, y = X.src(u), X.tgt(u)
    if level == 1:
        Q = tau1(X)
        return Q.is_iso(Q.rep[u.name])
    if level != 2:
        raise ValueError("level must be 1 or 2")
    Qx = tau1(hom(X, x, x))
    Qy = tau1(hom(X, y, y))
    idx, idy = X.ident_of(x).name, X.ident_of(y).name

    def iso_to(Q: QuotientCategory, a: str, b: str) -> bool:
        return any(Q.is_iso(p) for p in Q.homs.get((a, b), ()))

    for v in X.between(y, x):
        uv = X.compose(0, u, v).name
        vu = X.compose(0, v, u).name
        if iso_to(Qx, uv, idx) and iso_to(Qy, vu, idy):
            return True
    return False
