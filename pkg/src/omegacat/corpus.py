"""Seeded corpus of small valid strict categories, built from templates.

Instances come from recipes: nested tuples naming a base category and the
constructions applied to it.  Every candidate is validated and deduplicated
by content, so a seed reproduces an identical corpus.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .gset import Cell
from .scat import (
    FiniteOmegaCat,
    boundary_globe_cat,
    category_from_table,
    codiscrete_extension,
    cosep,
    disjoint_union,
    globe_cat,
    marked_globe,
    monoid_cat,
    product,
    restrict_to,
    suspend,
    terminal,
    thin_extension,
    validate_category,
    walking_iso,
)


def cyclic(n: int) -> FiniteOmegaCat:
    els = [str(i) for i in range(n)]
    return monoid_cat(els, lambda a, b: str((int(a) + int(b)) % n), "0")


def max_chain(n: int) -> FiniteOmegaCat:
    els = [str(i) for i in range(n)]
    return monoid_cat(els, lambda a, b: max(a, b, key=int), "0")


def saturating(cap: int) -> FiniteOmegaCat:
    els = [str(i) for i in range(cap + 1)]
    return monoid_cat(els, lambda a, b: str(min(cap, int(a) + int(b))), "0")


def left_zero(k: int) -> FiniteOmegaCat:
    """Unit e plus k elements with ab = a."""
    els = ["e"] + [f"z{i}" for i in range(k)]
    return monoid_cat(els, lambda a, b: b if a == "e" else a, "e")


def chain_category(n: int) -> FiniteOmegaCat:
    """The poset 0 < 1 < ... < n-1 as a category."""
    objs = [str(i) for i in range(n)]
    arrows = {f"{i}{j}": (str(i), str(j)) for i in range(n) for j in range(i, n)}
    ids = {str(i): f"{i}{i}" for i in range(n)}
    table = {(f"{i}{j}", f"{j}{k}"): f"{i}{k}" for i in range(n) for j in range(i, n) for k in range(j, n)}
    return category_from_table(objs, arrows, ids, table)


def parallel_pair() -> FiniteOmegaCat:
    arrows = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y"), "g": ("x", "y")}
    table = {}
    for a, (s, t) in arrows.items():
        for b, (s2, t2) in arrows.items():
            if t == s2:
                table[(a, b)] = b if a.startswith("id_") else a
    return category_from_table(["x", "y"], arrows, {"x": "id_x", "y": "id_y"}, table)


def first_letter_category() -> FiniteOmegaCat:
    """u: x -> y with two different one-sided inverses v, w: y -> x.

    A composite word is determined by its first letter and its endpoints:
    u v = u w = e, v u = fv, w u = fw, with e, fv, fw idempotent.
    """
    arrows = {
        "id_x": ("x", "x"), "id_y": ("y", "y"), "u": ("x", "y"), "v": ("y", "x"),
        "w": ("y", "x"), "e": ("x", "x"), "fv": ("y", "y"), "fw": ("y", "y"),
    }
    by_letter = {("u", "x"): "e", ("u", "y"): "u", ("v", "x"): "v", ("v", "y"): "fv",
                 ("w", "x"): "w", ("w", "y"): "fw"}
    letter = {"u": "u", "e": "u", "v": "v", "fv": "v", "w": "w", "fw": "w"}
    table = {}
    for a, (s, t) in arrows.items():
        for b, (s2, t2) in arrows.items():
            if t != s2:
                continue
            if a.startswith("id_"):
                table[(a, b)] = b
            elif b.startswith("id_"):
                table[(a, b)] = a
            else:
                table[(a, b)] = by_letter[(letter[a], t2)]
    return category_from_table(["x", "y"], arrows, {"x": "id_x", "y": "id_y"}, table)


def flat_demo() -> FiniteOmegaCat:
    """Codiscrete thickening of the first-letter category: u is an equivalence with two inverses."""
    return codiscrete_extension(first_letter_category())


def _int(c: Cell) -> int | None:
    try:
        return int(c.name)
    except ValueError:
        return None


def _order(a: Cell, b: Cell) -> bool:
    i, j = _int(a), _int(b)
    return i is not None and j is not None and i <= j


def _kernel(m: int) -> Callable[[Cell, Cell], bool]:
    def rel(a: Cell, b: Cell) -> bool:
        i, j = _int(a), _int(b)
        return i is not None and j is not None and i % m == j % m
    return rel


RELATIONS: dict[str, Callable[[Cell, Cell], bool]] = {
    "discrete": lambda a, b: False,
    "codiscrete": lambda a, b: True,
    "order": _order,
    "kernel2": _kernel(2),
    "kernel3": _kernel(3),
}

BASES: dict[str, Callable[[], FiniteOmegaCat]] = {
    "point": lambda: terminal(1),
    "arrow": lambda: globe_cat(1, 1),
    "iso": walking_iso,
    "pair": parallel_pair,
    "chain3": lambda: chain_category(3),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z6": lambda: cyclic(6),
    "max2": lambda: max_chain(2),
    "max3": lambda: max_chain(3),
    "sat1": lambda: saturating(1),
    "sat2": lambda: saturating(2),
    "lz1": lambda: left_zero(1),
    "lz2": lambda: left_zero(2),
    "letters": first_letter_category,
}


def build(recipe) -> FiniteOmegaCat:
    """Evaluate a recipe tuple such as ("thin", ("base", "Z4"), "kernel2")."""
    op, *args = recipe
    if op == "base":
        return BASES[args[0]]()
    if op == "thin":
        return thin_extension(build(args[0]), RELATIONS[args[1]])
    if op == "restrict":
        return restrict_to(build(args[0]), args[1])
    if op == "suspend":
        return suspend(build(args[0]))
    if op == "product":
        return product(build(args[0]), build(args[1]))
    if op == "union":
        return disjoint_union(build(args[0]), build(args[1]))
    if op == "cosep":
        return cosep(args[0], args[1])
    if op == "globe":
        return globe_cat(args[0], args[1])
    if op == "sphere":
        return boundary_globe_cat(args[0], args[1])
    if op == "marked":
        return marked_globe(args[0], args[1])
    if op == "terminal":
        return terminal(args[0])
    if op == "flat_demo":
        return flat_demo()
    raise ValueError(f"unknown recipe op {op!r}")


def recipe_name(recipe) -> str:
    op, *args = recipe
    if op == "base":
        return args[0]
    parts = [recipe_name(a) if isinstance(a, tuple) else str(a) for a in args]
    return f"{op}({','.join(parts)})"


FIXED_RECIPES = [
    ("flat_demo",),
    ("terminal", 2), ("terminal", 3),
    ("globe", 1, 2), ("globe", 2, 2), ("globe", 2, 3), ("globe", 3, 3), ("globe", 0, 2),
    ("sphere", 1, 2), ("sphere", 2, 2), ("sphere", 2, 3),
    ("marked", 1, 2), ("marked", 2, 3),
    ("cosep", 1, 2), ("cosep", 2, 2),
    ("cosep", 1, 3), ("cosep", 2, 3), ("cosep", 3, 3),
]


def _random_recipe(rng: random.Random, depth: int = 0):
    """A recipe whose truncation is usually 2 or 3."""
    base = ("base", rng.choice(sorted(BASES)))
    rel = rng.choice(sorted(RELATIONS))
    shape = rng.randrange(9)
    if shape == 0:
        return ("thin", base, rel)
    if shape == 1:
        return ("thin", ("thin", base, rel), rng.choice(["discrete", "codiscrete"]))
    if shape == 2:
        return ("suspend", base)
    if shape == 3:
        return ("suspend", ("thin", base, rel))
    if shape == 4:
        return ("suspend", ("suspend", base))
    if shape == 5:
        return ("restrict", base, rng.choice([2, 3]))
    if depth == 0 and shape == 6:
        return ("product", _random_recipe(rng, 1), ("thin", ("base", rng.choice(["arrow", "iso", "point", "Z2"])), rel))
    if depth == 0 and shape == 7:
        return ("union", _random_recipe(rng, 1), _random_recipe(rng, 1))
    return ("thin", ("suspend", base), rng.choice(["discrete", "codiscrete"]))


@dataclass
class CorpusEntry:
    name: str
    recipe: tuple
    cat: FiniteOmegaCat


@dataclass
class CorpusSpec:
    seed: int = 0
    count: int = 120
    dims: tuple[int, ...] = (2, 3)
    max_cells: int = 20
    files: list[str] = field(default_factory=list)
    max_attempts: int = 5000

    def __post_init__(self):
        for f in self.files:
            if not Path(f).exists():
                raise FileNotFoundError(f)


def fits(X: FiniteOmegaCat, dims, max_cells: int) -> bool:
    return X.d in dims and all(len(X.names(n)) <= max_cells for n in range(X.d + 1))


def generate_corpus(spec: CorpusSpec | None = None) -> list[CorpusEntry]:
    """Fixed fixtures, then seeded random recipes, until ``spec.count`` distinct valid instances."""
    spec = spec or CorpusSpec()
    rng = random.Random(spec.seed)
    out: list[CorpusEntry] = []
    seen: set = set()

    def offer(name, recipe, X) -> None:
        if X._key in seen or not fits(X, spec.dims, spec.max_cells):
            return
        if not validate_category(X).ok:
            return
        seen.add(X._key)
        out.append(CorpusEntry(name, recipe, X))

    for path in spec.files:
        X = FiniteOmegaCat.from_json(json.loads(Path(path).read_text()))
        offer(Path(path).stem, ("file", path), X)
    for r in FIXED_RECIPES:
        offer(recipe_name(r), r, build(r))
    attempts = 0
    while len(out) < spec.count and attempts < spec.max_attempts:
        attempts += 1
        r = _random_recipe(rng)
        try:
            X = build(r)
        except (ValueError, KeyError):
            continue
        offer(recipe_name(r), r, X)
    return out


def small(entries: list[CorpusEntry], max_cells: int) -> list[CorpusEntry]:
    return [e for e in entries if all(len(e.cat.names(n)) <= max_cells for n in range(e.cat.d + 1))]
