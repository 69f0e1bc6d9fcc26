"""Models of presentations in table categories, lifting problems, and the truncated J_F check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .fib import OmegaFunctor, Verdict
from .gset import BudgetExceeded, Cell
from .poly import Generator, Polygraph, TermError, emit_EF_witness, eval_term, gens_of
from .scat import FiniteOmegaCat

DEFAULT_LIFT_BUDGET = 5_000_000


def _search_order(P: Polygraph, forced_from: int) -> list[Generator]:
    """Generators by (dimension, address); forced ones right after their last dependency."""
    free = sorted((g for g in P.generators if g.dim < forced_from), key=lambda g: (g.dim, g.address))
    forced = sorted((g for g in P.generators if g.dim >= forced_from), key=lambda g: (g.dim, g.address))
    order = list(free)
    for g in forced:
        deps = gens_of(g.src) | gens_of(g.tgt)
        pos = max((i for i, h in enumerate(order) if h.name in deps), default=-1)
        order.insert(pos + 1, g)
    return order


def _propagate_pins(P: Polygraph, X: FiniteOmegaCat, pins: Mapping[str, Cell]) -> dict[str, Cell] | None:
    """Extend pins to generators that occur as bare boundaries of pinned ones."""
    out = dict(pins)
    todo = list(pins)
    while todo:
        name = todo.pop()
        g = P[name]
        c = out[name]
        if g.dim == 0 or c.dim != g.dim:
            continue
        for term, val in ((g.src, X.src(c)), (g.tgt, X.tgt(c))):
            if type(term).__name__ == "Gen":
                prev = out.get(term.name)
                if prev is None:
                    out[term.name] = val
                    todo.append(term.name)
                elif prev != val:
                    return None
    return out


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} steps")


def iter_models(
    P: Polygraph,
    Y: FiniteOmegaCat,
    pins: Mapping[str, Cell] | None = None,
    budget: int = DEFAULT_LIFT_BUDGET,
) -> Iterator[dict[str, Cell]]:
    """Assignments of generators to cells of Y satisfying every boundary equation.

    Generators above the truncation of Y can only go to formal identities,
    which exist exactly when their two boundaries evaluate to the same cell.
    """
    pins = _propagate_pins(P, Y, pins or {})
    if pins is None:
        return
    order = _search_order(P, Y.d + 1)
    search = _Search(budget)
    assign: dict[str, Cell] = {}

    def candidates(g: Generator) -> list[Cell]:
        if g.dim == 0:
            pool = Y.cells(0)
        else:
            try:
                s = eval_term(g.src, Y, assign)
                t = eval_term(g.tgt, Y, assign)
            except TermError:
                return []
            pool = Y.between(s, t)
        if g.name in pins:
            return [c for c in pool if c == pins[g.name]]
        return pool

    def go(i: int) -> Iterator[dict[str, Cell]]:
        if i == len(order):
            yield dict(assign)
            return
        g = order[i]
        for c in candidates(g):
            search.tick()
            assign[g.name] = c
            yield from go(i + 1)
        assign.pop(g.name, None)

    yield from go(0)


def enumerate_models(
    P: Polygraph,
    Y: FiniteOmegaCat,
    pins: Mapping[str, Cell] | None = None,
    budget: int = DEFAULT_LIFT_BUDGET,
) -> list[dict[str, Cell]]:
    return list(iter_models(P, Y, pins, budget))


def verify_model(P: Polygraph, Y: FiniteOmegaCat, assign: Mapping[str, Cell]) -> bool:
    """Independent re-check of every boundary equation of an assignment."""
    for g in P.generators:
        c = assign.get(g.name)
        if c is None or c.dim != g.dim or not Y.has(c):
            return False
        if g.dim == 0:
            continue
        try:
            if Y.src(c) != eval_term(g.src, Y, assign) or Y.tgt(c) != eval_term(g.tgt, Y, assign):
                return False
        except TermError:
            return False
    return True


@dataclass
class LiftingProblem:
    presentation: Polygraph
    base_assignment: dict[str, Cell]
    f: OmegaFunctor
    target_assignment: dict[str, Cell]

    def check(self) -> list[str]:
        """Violated invariants, empty when the square commutes and the target is a model."""
        errs = []
        if not verify_model(self.presentation, self.f.cod, self.target_assignment):
            errs.append("target assignment is not a model of the presentation")
        for name, c in self.base_assignment.items():
            if self.f(c) != self.target_assignment.get(name):
                errs.append(f"pinned generator {name} does not commute with f")
        return errs


def solve_lift(problem: LiftingProblem, budget: int = DEFAULT_LIFT_BUDGET) -> dict[str, Cell] | None:
    """A model in dom(f) extending the base pins whose f-image is the target model."""
    P, f = problem.presentation, problem.f
    X, target = f.dom, problem.target_assignment
    pins = _propagate_pins(P, X, problem.base_assignment)
    if pins is None:
        return None
    order = _search_order(P, X.d + 1)
    search = _Search(budget)
    assign: dict[str, Cell] = {}

    def candidates(g: Generator) -> list[Cell]:
        want = target[g.name]
        if g.dim == 0:
            pool = X.cells(0)
        else:
            try:
                s = eval_term(g.src, X, assign)
                t = eval_term(g.tgt, X, assign)
            except TermError:
                return []
            pool = X.between(s, t)
        pool = [c for c in pool if f(c) == want]
        if g.name in pins:
            pool = [c for c in pool if c == pins[g.name]]
        return pool

    def go(i: int) -> bool:
        if i == len(order):
            return True
        g = order[i]
        for c in candidates(g):
            search.tick()
            assign[g.name] = c
            if go(i + 1):
                return True
        assign.pop(g.name, None)
        return False

    return dict(assign) if go(0) else None


def check_rlp_JF(f: OmegaFunctor, budget: int = DEFAULT_LIFT_BUDGET) -> Verdict:
    """Right lifting against the walking equivalences, cut one dimension above the truncation."""
    X, Y = f.dom, f.cod
    D = max(X.d, Y.d)
    for n in range(1, D + 1):
        P = emit_EF_witness(n, D + 1)
        models: dict[Cell, list[dict[str, Cell]]] = {}
        for x in sorted(X.cells(n - 1)):
            fx = f(x)
            if fx not in models:
                models[fx] = enumerate_models(P, Y, {"x": fx}, budget)
            for model in models[fx]:
                problem = LiftingProblem(P, {"x": x}, f, model)
                if solve_lift(problem, budget) is None:
                    return Verdict(False, {"dim": n, "x": x, "u": model["u"], "model": {k: list(v) for k, v in sorted(model.items())}})
    return Verdict(True)
