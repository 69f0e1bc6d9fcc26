"""Globular sets, validation, representables and counting of graded maps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured size bound."""


class Cell(NamedTuple):
    """A cell identifier tagged with its dimension.

    Names are unique within a dimension only, so the dimension is part of
    the identity of a cell.
    """

    dim: int
    name: str

    def __str__(self) -> str:
        return f"{self.name}@{self.dim}"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    cells: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "cells": [list(c) for c in self.cells]}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, kind: str, message: str, *cells: Cell) -> None:
        self.violations.append(Violation(kind, message, tuple(cells)))

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.ok, "violations": [v.to_json() for v in self.violations]}


def _freeze(maps: Iterable[Mapping[str, str]]) -> tuple[dict[str, str], ...]:
    return tuple(dict(m) for m in maps)


@dataclass(frozen=True, eq=False)
class GlobularData:
    """Finite globular set truncated at ``trunc_dim``.

    ``cells[n]`` lists the n-cell names; ``src[n]`` and ``tgt[n]`` map the
    names of (n+1)-cells to names of n-cells.  ``trunc_dim == -1`` encodes
    the empty globular set.
    """

    trunc_dim: int
    cells: tuple[tuple[str, ...], ...]
    src: tuple[dict[str, str], ...]
    tgt: tuple[dict[str, str], ...]

    @staticmethod
    def make(trunc_dim: int, cells, src, tgt) -> "GlobularData":
        return GlobularData(
            trunc_dim,
            tuple(tuple(c) for c in cells),
            _freeze(src),
            _freeze(tgt),
        )

    @cached_property
    def _key(self):
        return (
            self.trunc_dim,
            self.cells,
            tuple(tuple(sorted(m.items())) for m in self.src),
            tuple(tuple(sorted(m.items())) for m in self.tgt),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GlobularData):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def dim_cells(self, n: int) -> tuple[str, ...]:
        if 0 <= n <= self.trunc_dim and n < len(self.cells):
            return self.cells[n]
        return ()

    def counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def source(self, n: int, name: str) -> str:
        """Source of the n-cell ``name`` (an (n-1)-cell name)."""
        return self.src[n - 1][name]

    def target(self, n: int, name: str) -> str:
        return self.tgt[n - 1][name]

    def to_json(self) -> dict:
        return {
            "trunc_dim": self.trunc_dim,
            "cells": [list(c) for c in self.cells],
            "src": {str(n + 1): dict(m) for n, m in enumerate(self.src)},
            "tgt": {str(n + 1): dict(m) for n, m in enumerate(self.tgt)},
        }

    @staticmethod
    def from_json(doc: Mapping) -> "GlobularData":
        d = int(doc["trunc_dim"])
        cells = [list(map(str, c)) for c in doc.get("cells", [])]
        while len(cells) < d + 1:
            cells.append([])
        src = [dict(doc.get("src", {}).get(str(n), {})) for n in range(1, d + 1)]
        tgt = [dict(doc.get("tgt", {}).get(str(n), {})) for n in range(1, d + 1)]
        return GlobularData.make(d, cells, src, tgt)


def validate_globular(g: GlobularData) -> ValidationReport:
    """List every violated typing rule or globular identity."""
    rep = ValidationReport()
    d = g.trunc_dim
    if d < -1:
        rep.add("shape", f"trunc_dim {d} is negative")
        return rep
    if len(g.cells) != d + 1:
        rep.add("shape", f"expected {d + 1} cell dimensions, got {len(g.cells)}")
    if len(g.src) != max(d, 0) or len(g.tgt) != max(d, 0):
        rep.add("shape", "boundary maps must be given for dimensions 1..trunc_dim")
        return rep
    for n, names in enumerate(g.cells):
        if len(set(names)) != len(names):
            rep.add("duplicate", f"duplicate cell names in dimension {n}")
    for n in range(1, d + 1):
        lower = set(g.dim_cells(n - 1))
        for side, table in (("src", g.src[n - 1]), ("tgt", g.tgt[n - 1])):
            for name in g.dim_cells(n):
                if name not in table:
                    rep.add("missing", f"{side} of {name} undefined", Cell(n, name))
                elif table[name] not in lower:
                    rep.add("dangling", f"{side} of {name} is unknown cell {table[name]}", Cell(n, name))
            for name in table:
                if name not in g.dim_cells(n):
                    rep.add("dangling", f"{side} given for unknown {n}-cell {name}", Cell(n, name))
    if not rep.ok:
        return rep
    for n in range(2, d + 1):
        for name in g.dim_cells(n):
            s, t = g.source(n, name), g.target(n, name)
            if g.source(n - 1, s) != g.source(n - 1, t):
                rep.add("globular", f"s(s({name})) != s(t({name}))", Cell(n, name))
            if g.target(n - 1, s) != g.target(n - 1, t):
                rep.add("globular", f"t(s({name})) != t(t({name}))", Cell(n, name))
    return rep


def globe_names(n: int) -> list[tuple[str, str]]:
    """Names of the two k-cells of the n-globe for k < n."""
    out = []
    for k in range(n):
        out.append(("x", "y") if k == 0 else (f"s{k}", f"t{k}"))
    return out


def globe(n: int) -> GlobularData:
    """The representable n-globe: two cells below n, one n-cell ``u``."""
    if n < 0:
        raise ValueError("globe dimension must be non-negative")
    pairs = globe_names(n)
    top = "u" if n > 0 else "x"
    cells = [list(p) for p in pairs] + [[top]]
    src, tgt = [], []
    for k in range(1, n + 1):
        lo_s, lo_t = pairs[k - 1]
        names = cells[k]
        src.append({c: lo_s for c in names})
        tgt.append({c: lo_t for c in names})
    return GlobularData.make(n, cells, src, tgt)


def boundary_globe(n: int) -> GlobularData:
    """The n-globe with its top cell removed."""
    g = globe(n)
    if n == 0:
        return GlobularData.make(-1, [], [], [])
    return GlobularData.make(n - 1, g.cells[:n], g.src[: n - 1], g.tgt[: n - 1])


def disjoint_union_gset(a: GlobularData, b: GlobularData, tags=("L", "R")) -> GlobularData:
    d = max(a.trunc_dim, b.trunc_dim)
    la, lb = tags

    def tag(t, x):
        return f"{t}.{x}"

    cells, src, tgt = [], [], []
    for n in range(d + 1):
        cells.append([tag(la, c) for c in a.dim_cells(n)] + [tag(lb, c) for c in b.dim_cells(n)])
    for n in range(1, d + 1):
        s, t = {}, {}
        for g, lab in ((a, la), (b, lb)):
            for c in g.dim_cells(n):
                s[tag(lab, c)] = tag(lab, g.source(n, c))
                t[tag(lab, c)] = tag(lab, g.target(n, c))
        src.append(s)
        tgt.append(t)
    return GlobularData.make(d, cells, src, tgt)


def hom_gset(g: GlobularData, x: str, y: str) -> GlobularData:
    """Cells of dimension >= 1 whose 0-source is ``x`` and 0-target is ``y``, shifted down."""
    d = g.trunc_dim
    if d <= 0:
        return GlobularData.make(-1, [], [], [])
    base0 = {}
    for c in g.dim_cells(1):
        base0[c] = (g.source(1, c), g.target(1, c))
    keep = [[c for c in g.dim_cells(1) if base0[c] == (x, y)]]
    for n in range(2, d + 1):
        prev = set(keep[-1])
        keep.append([c for c in g.dim_cells(n) if g.source(n, c) in prev])
    src = [{c: g.source(n + 2, c) for c in keep[n + 1]} for n in range(d - 1)]
    tgt = [{c: g.target(n + 2, c) for c in keep[n + 1]} for n in range(d - 1)]
    return GlobularData.make(d - 1, keep, src, tgt)


DEFAULT_COUNT_BUDGET = 1_000_000


def count_maps(src: GlobularData, dst: GlobularData, budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Exact number of graded maps ``src -> dst`` commuting with boundaries.

    Every cell of positive dimension lies in exactly one hom ``src(x, y)``,
    so the count factors as a sum over images of 0-cells of a product of
    hom counts; the hom counts are computed recursively and memoized.
    Within each connected component of the 0-cell graph the sum is an
    exhaustive enumeration, capped by ``budget``.
    """
    memo: dict = {}
    return _count(src, dst, memo, budget)


def _count(a: GlobularData, b: GlobularData, memo: dict, budget: int) -> int:
    key = (a, b)
    if key in memo:
        return memo[key]
    xs = a.dim_cells(0)
    ys = b.dim_cells(0)
    if not xs:
        memo[key] = 1
        return 1
    if not ys:
        memo[key] = 0
        return 0
    # factor tables for pairs (x, x') whose hom is non-empty
    factors: list[tuple[str, str, dict]] = []
    homs_b = {}
    for x, x2 in itertools.product(xs, repeat=2):
        h = hom_gset(a, x, x2)
        if not any(h.cells):
            continue
        table = {}
        for y, y2 in itertools.product(ys, repeat=2):
            if (y, y2) not in homs_b:
                homs_b[(y, y2)] = hom_gset(b, y, y2)
            table[(y, y2)] = _count(h, homs_b[(y, y2)], memo, budget)
        factors.append((x, x2, table))
    const = 1
    live = []
    for x, x2, table in factors:
        vals = set(table.values())
        if len(vals) == 1:
            const *= vals.pop()
        else:
            live.append((x, x2, table))
    if const == 0:
        memo[key] = 0
        return 0
    # connected components of the live factor graph
    parent = {x: x for x in xs}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, x2, _ in live:
        parent[find(x)] = find(x2)
    comps: dict[str, list[str]] = {}
    for x in xs:
        comps.setdefault(find(x), []).append(x)
    total = const
    for members in comps.values():
        mset = set(members)
        local = [f for f in live if f[0] in mset]
        if not local:
            total *= len(ys) ** len(members)
            continue
        if len(ys) ** len(members) > budget:
            raise BudgetExceeded(
                f"count_maps: {len(ys)}^{len(members)} assignments exceed budget {budget}"
            )
        acc = 0
        for combo in itertools.product(ys, repeat=len(members)):
            img = dict(zip(members, combo))
            prod = 1
            for x, x2, table in local:
                prod *= table[(img[x], img[x2])]
                if not prod:
                    break
            acc += prod
        total *= acc
    memo[key] = total
    return total


def brute_force_count_maps(a: GlobularData, b: GlobularData, limit: int = 200_000) -> int:
    """Reference count by plain enumeration of every graded map (small inputs only)."""
    d = a.trunc_dim
    if d < 0:
        return 1
    slots = [(n, c) for n in range(d + 1) for c in a.dim_cells(n)]
    choices = [b.dim_cells(n) if n <= b.trunc_dim else () for n, _ in slots]
    total = 1
    for ch in choices:
        total *= len(ch)
    if total > limit:
        raise BudgetExceeded("brute force space too large")
    count = 0
    for combo in itertools.product(*choices):
        img = {slot: v for slot, v in zip(slots, combo)}
        ok = True
        for (n, c), v in img.items():
            if n == 0:
                continue
            if b.source(n, v) != img[(n - 1, a.source(n, c))] or b.target(n, v) != img[(n - 1, a.target(n, c))]:
                ok = False
                break
        count += ok
    return count
