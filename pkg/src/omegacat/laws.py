"""Corpus-level laws: each check returns a report with case counts and violations."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _pairs
from typing import Callable, Iterable

from .coind import equivalences, flat_equivalences, rinv
from .corpus import CorpusEntry, small
from .cyl import bridge, check_projections_trivfib, enumerate_cylinders, is_valid_cylinder
from .fib import (
    OmegaFunctor,
    enumerate_functors,
    is_equifibration,
    is_trivial_fibration,
    is_weak_equivalence,
    to_terminal,
)
from .gset import BudgetExceeded, Cell, count_maps
from .lift import check_rlp_JF
from .quot import check_category_axioms, check_two_category_axioms, iso_in_quotient, tau1, tau2
from .scat import FiniteOmegaCat, cosep, terminal

MAX_VIOLATIONS = 20


@dataclass
class LawReport:
    law: str
    instances: int = 0
    cases: int = 0
    skipped: int = 0
    violations: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.violations

    def fail(self, **detail) -> None:
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(detail)
        else:
            self.stats["truncated_violations"] = self.stats.get("truncated_violations", 0) + 1

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "holds": self.holds,
            "instances": self.instances,
            "cases": self.cases,
            "skipped": self.skipped,
            "stats": dict(sorted(self.stats.items())),
            "violations": self.violations,
        }


def _cells(cs: Iterable[Cell]) -> list:
    return [list(c) for c in sorted(cs)]


def spherical_equals_flat(entries: list[CorpusEntry]) -> LawReport:
    rep = LawReport("spherical-flat")
    for e in entries:
        rep.instances += 1
        rep.cases += 1
        S, F = equivalences(e.cat), flat_equivalences(e.cat)
        if S != F:
            rep.fail(instance=e.name, only_spherical=_cells(S - F), only_flat=_cells(F - S))
    return rep


def closure(entries: list[CorpusEntry]) -> LawReport:
    """Composites and whiskerings of equivalences are equivalences, and rinv stays inside."""
    rep = LawReport("closure")
    for e in entries:
        X = e.cat
        rep.instances += 1
        E = flat_equivalences(X)
        inE = lambda c: c.dim > X.d or c in E
        for n in range(1, X.d + 1):
            eqs = [a for a in X.cells(n) if a in E]
            for a, b in _pairs(eqs, eqs):
                for k in range(n):
                    if X.composable(k, a, b):
                        rep.cases += 1
                        if not inE(X.compose(k, a, b)):
                            rep.fail(instance=e.name, kind="composite", k=k, a=list(a), b=list(b))
            for a in eqs:
                for m in range(1, n):
                    for c in X.cells(m):
                        for k in range(m):
                            for left, right in ((a, c), (c, a)):
                                if X.tgt_k(left, k) == X.src_k(right, k):
                                    rep.cases += 1
                                    w = X.whisker(k, left, right)
                                    if not inE(w):
                                        rep.fail(instance=e.name, kind="whisker", k=k, a=list(left), b=list(right))
        R = rinv(X, E)
        rep.cases += 1
        if not R <= E:
            rep.fail(instance=e.name, kind="rinv", outside=_cells(R - E))
    return rep


def corpus_functors(
    entries: list[CorpusEntry],
    max_cells: int = 6,
    cod_max_dim: int | None = None,
    budget: int = 20_000,
    rep: LawReport | None = None,
) -> Iterable[tuple[str, str, OmegaFunctor]]:
    """All functors between pairs of small corpus instances; over-budget pairs are counted as skipped."""
    pool = small(entries, max_cells)
    for a in pool:
        for b in pool:
            if cod_max_dim is not None and b.cat.d > cod_max_dim:
                continue
            try:
                fs = enumerate_functors(a.cat, b.cat, budget=budget)
            except BudgetExceeded:
                if rep is not None:
                    rep.skipped += 1
                continue
            if rep is not None:
                rep.instances += 1
            for f in fs:
                yield a.name, b.name, f


def _fmap(f: OmegaFunctor) -> dict:
    return {f"{c.dim}:{c.name}": v.name for c, v in sorted(f.mapping.items())}


def decomposition(entries: list[CorpusEntry], max_cells: int = 6, budget: int = 20_000,
                  beyond_truncation: bool = False) -> LawReport:
    rep = LawReport("trivfib-decomposition")
    table: dict[str, int] = {}
    for dn, cn, f in corpus_functors(entries, max_cells, None, budget, rep):
        rep.cases += 1
        tf = bool(is_trivial_fibration(f, beyond_truncation))
        we = bool(is_weak_equivalence(f, beyond_truncation))
        eq = bool(is_equifibration(f))
        key = f"trivfib={tf},weq={we},equifib={eq}"
        table[key] = table.get(key, 0) + 1
        if tf != (we and eq):
            rep.fail(dom=dn, cod=cn, trivfib=tf, weq=we, equifib=eq, map=_fmap(f))
    rep.stats = table
    return rep


def rlp_equifib(entries: list[CorpusEntry], max_cells: int = 6, budget: int = 20_000) -> LawReport:
    rep = LawReport("rlp-equifib")
    agree = {"both": 0, "neither": 0}
    for dn, cn, f in corpus_functors(entries, max_cells, 2, budget, rep):
        rep.cases += 1
        r, e = check_rlp_JF(f), is_equifibration(f)
        if bool(r) != bool(e):
            rep.fail(dom=dn, cod=cn, rlp=r.to_json(), equifib=e.to_json(), map=_fmap(f))
        else:
            agree["both" if r else "neither"] += 1
    rep.stats = agree
    return rep


def classifier(entries: list[CorpusEntry]) -> LawReport:
    rep = LawReport("classifier")
    dims = set()
    for e in entries:
        X = e.cat
        rep.instances += 1
        dims.add(X.d)
        for k in range(1, X.d + 1):
            rep.cases += 1
            got = count_maps(X.underlying, cosep(k, X.d).underlying)
            want = 2 ** len(X.names(k))
            if got != want:
                rep.fail(instance=e.name, k=k, maps=got, expected=want)
    for d in sorted(dims):
        for k in range(1, d + 1):
            rep.cases += 1
            v = is_trivial_fibration(to_terminal(cosep(k, d), terminal(d)))
            if not v:
                rep.fail(kind="trivfib", k=k, d=d, verdict=v.to_json())
    return rep


def cylinders(entries: list[CorpusEntry]) -> LawReport:
    rep = LawReport("cylinders")
    for e in entries:
        X = e.cat
        rep.instances += 1
        memo: dict = {}
        top = X.d - 1
        rep.cases += 1
        v = check_projections_trivfib(X, top, memo)
        if not v:
            rep.fail(instance=e.name, kind="projection", verdict=v.to_json())
        E = equivalences(X)
        for n in range(1, top + 1):
            known = {U.ident for U in enumerate_cylinders(X, n, memo)}
            eqs = [c for c in X.cells(n) if c in E]
            for u in eqs:
                for v_ in eqs:
                    if X.tgt(u) != X.src(v_):
                        continue
                    for u2 in eqs:
                        if X.tgt(v_) != X.src(u2):
                            continue
                        rep.cases += 1
                        B = bridge(X, u, v_, u2)
                        if not is_valid_cylinder(X, B, memo) or B.ident not in known:
                            rep.fail(instance=e.name, kind="bridge", chain=[u.name, v_.name, u2.name])
    return rep


def quotient(entries: list[CorpusEntry]) -> LawReport:
    rep = LawReport("quotient")
    for e in entries:
        X = e.cat
        rep.instances += 1
        E = equivalences(X)
        Q = tau1(X)
        ax = check_category_axioms(Q)
        if Q.log or not ax.ok:
            rep.fail(instance=e.name, kind="tau1", log=Q.log, axioms=ax.to_json())
        T = tau2(X)
        ax2 = check_two_category_axioms(T)
        if T.log or not ax2.ok:
            rep.fail(instance=e.name, kind="tau2", log=T.log, axioms=ax2.to_json())
        for u in X.cells(1):
            rep.cases += 1
            want = u in E
            for level in (1, 2):
                if iso_in_quotient(X, u, level) != want:
                    rep.fail(instance=e.name, kind="iso", level=level, cell=u.name, equivalence=want)
    return rep


LAWS: dict[str, Callable[..., LawReport]] = {
    "spherical-flat": spherical_equals_flat,
    "closure": closure,
    "trivfib-decomposition": decomposition,
    "rlp-equifib": rlp_equifib,
    "classifier": classifier,
    "cylinders": cylinders,
    "quotient": quotient,
}
