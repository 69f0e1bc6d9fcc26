"""Finite strict omega-categories given by explicit tables.

A category truncated at ``d`` stores cells, boundaries, identities and
composition tables up to dimension ``d``.  Cells above ``d`` are formal
iterated identities; such a cell is represented as ``Cell(n, name)`` where
``name`` is the d-cell it is an identity on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .gset import (
    BudgetExceeded,
    Cell,
    GlobularData,
    ValidationReport,
    globe,
    boundary_globe,
    validate_globular,
)


class CompositionError(ValueError):
    """Raised for composites of cells whose boundaries do not match."""


CellSet = frozenset  # frozenset[Cell]; dimension 0 never occurs


def cellset_to_json(s: Iterable[Cell], d: int) -> list[list[str]]:
    out: list[list[str]] = [[] for _ in range(max(d, 0))]
    for c in sorted(s):
        if 1 <= c.dim <= d:
            out[c.dim - 1].append(c.name)
    return out


def cellset_from_json(doc: list, d: int | None = None) -> frozenset:
    return frozenset(Cell(i + 1, str(n)) for i, names in enumerate(doc) for n in names)


DEFAULT_AXIOM_BUDGET = 64


@dataclass(frozen=True, eq=False)
class FiniteOmegaCat:
    underlying: GlobularData
    ident: tuple[dict[str, str], ...]
    comp: Mapping[tuple[int, int], dict[tuple[str, str], str]]
    marking: frozenset = frozenset()

    # -- identity and hashing -------------------------------------------
    @cached_property
    def _key(self):
        comp = tuple(
            (kn, tuple(sorted(tbl.items()))) for kn, tbl in sorted(self.comp.items())
        )
        ident = tuple(tuple(sorted(m.items())) for m in self.ident)
        return (self.underlying._key, ident, comp, tuple(sorted(self.marking)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteOmegaCat):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FiniteOmegaCat(trunc_dim={self.d}, counts={self.underlying.counts()})"

    # -- basic access -----------------------------------------------------
    @property
    def d(self) -> int:
        return self.underlying.trunc_dim

    trunc_dim = d

    def names(self, n: int) -> tuple[str, ...]:
        if n < 0:
            return ()
        if n <= self.d:
            return self.underlying.dim_cells(n)
        return self.underlying.dim_cells(self.d)

    def cells(self, n: int) -> list[Cell]:
        return [Cell(n, c) for c in self.names(n)]

    def all_cells(self, lo: int = 0, hi: int | None = None) -> list[Cell]:
        hi = self.d if hi is None else hi
        return [c for n in range(lo, hi + 1) for c in self.cells(n)]

    def has(self, c: Cell) -> bool:
        if c.dim < 0 or self.d < 0:
            return False
        return c.name in self._name_sets[min(c.dim, self.d)]

    @cached_property
    def _name_sets(self):
        return [set(self.underlying.dim_cells(n)) for n in range(self.d + 1)]

    def size(self) -> int:
        return sum(self.underlying.counts())

    def src(self, c: Cell) -> Cell:
        n = c.dim
        if n <= 0:
            raise ValueError(f"{c} has no source")
        if n <= self.d:
            return Cell(n - 1, self.underlying.source(n, c.name))
        return Cell(n - 1, c.name)

    def tgt(self, c: Cell) -> Cell:
        n = c.dim
        if n <= 0:
            raise ValueError(f"{c} has no target")
        if n <= self.d:
            return Cell(n - 1, self.underlying.target(n, c.name))
        return Cell(n - 1, c.name)

    def src_k(self, c: Cell, k: int) -> Cell:
        while c.dim > k:
            c = self.src(c)
        return c

    def tgt_k(self, c: Cell, k: int) -> Cell:
        while c.dim > k:
            c = self.tgt(c)
        return c

    def ident_of(self, c: Cell) -> Cell:
        if c.dim < self.d:
            return Cell(c.dim + 1, self.ident[c.dim][c.name])
        return Cell(c.dim + 1, c.name)

    def lift(self, c: Cell, n: int) -> Cell:
        """Iterated identity of ``c`` in dimension ``n``."""
        while c.dim < n:
            c = self.ident_of(c)
        return c

    @cached_property
    def _id_inverse(self):
        return [{v: k for k, v in m.items()} for m in self.ident]

    def identity_base(self, c: Cell) -> Cell | None:
        """The cell that ``c`` is an identity on, if any."""
        if c.dim == 0:
            return None
        if c.dim > self.d:
            return Cell(c.dim - 1, c.name)
        base = self._id_inverse[c.dim - 1].get(c.name)
        return None if base is None else Cell(c.dim - 1, base)

    def is_identity(self, c: Cell) -> bool:
        return self.identity_base(c) is not None

    def is_identity_upto(self, c: Cell, k: int) -> bool:
        """True if ``c`` is an iterated identity on a cell of dimension <= k."""
        while c.dim > k:
            b = self.identity_base(c)
            if b is None:
                return False
            c = b
        return True

    def parallel(self, a: Cell, b: Cell) -> bool:
        if a.dim != b.dim:
            return False
        return a.dim == 0 or (self.src(a) == self.src(b) and self.tgt(a) == self.tgt(b))

    def composable(self, k: int, a: Cell, b: Cell) -> bool:
        return a.dim == b.dim and k < a.dim and self.tgt_k(a, k) == self.src_k(b, k)

    def compose(self, k: int, a: Cell, b: Cell) -> Cell:
        n = a.dim
        if b.dim != n or not 0 <= k < n:
            raise CompositionError(f"cannot compose {a} and {b} along {k}")
        if self.tgt_k(a, k) != self.src_k(b, k):
            raise CompositionError(f"{a} and {b} are not {k}-composable")
        if n <= self.d:
            try:
                return Cell(n, self.comp[(k, n)][(a.name, b.name)])
            except KeyError:
                raise CompositionError(f"table lacks {a} o{k} {b}") from None
        if k >= self.d:
            return a
        r = self.compose(k, Cell(self.d, a.name), Cell(self.d, b.name))
        return Cell(n, r.name)

    def whisker(self, k: int, a: Cell, b: Cell) -> Cell:
        n = max(a.dim, b.dim)
        return self.compose(k, self.lift(a, n), self.lift(b, n))

    # -- indices ------------------------------------------------------------
    @cached_property
    def _between(self):
        idx: dict[tuple[int, str, str], list[str]] = {}
        for n in range(1, self.d + 1):
            for c in self.underlying.dim_cells(n):
                key = (n, self.underlying.source(n, c), self.underlying.target(n, c))
                idx.setdefault(key, []).append(c)
        return idx

    def between(self, a: Cell, b: Cell) -> list[Cell]:
        """(n+1)-cells from ``a`` to ``b``."""
        n = a.dim + 1
        if n > self.d:
            return [Cell(n, a.name)] if a == b else []
        return [Cell(n, c) for c in self._between.get((n, a.name, b.name), ())]

    @cached_property
    def _out_of(self):
        idx: dict[tuple[int, str], list[str]] = {}
        for n in range(1, self.d + 1):
            for c in self.underlying.dim_cells(n):
                idx.setdefault((n, self.underlying.source(n, c)), []).append(c)
        return idx

    def out_of(self, a: Cell) -> list[Cell]:
        n = a.dim + 1
        if n > self.d:
            return [Cell(n, a.name)]
        return [Cell(n, c) for c in self._out_of.get((n, a.name), ())]

    @cached_property
    def _into(self):
        idx: dict[tuple[int, str], list[str]] = {}
        for n in range(1, self.d + 1):
            for c in self.underlying.dim_cells(n):
                idx.setdefault((n, self.underlying.target(n, c)), []).append(c)
        return idx

    def into(self, b: Cell) -> list[Cell]:
        n = b.dim + 1
        if n > self.d:
            return [Cell(n, b.name)]
        return [Cell(n, c) for c in self._into.get((n, b.name), ())]

    def identities(self) -> frozenset:
        return frozenset(c for n in range(1, self.d + 1) for c in self.cells(n) if self.is_identity(c))

    def full_cellset(self) -> frozenset:
        return frozenset(self.all_cells(1))

    def with_marking(self, marking: Iterable[Cell]) -> "FiniteOmegaCat":
        return FiniteOmegaCat(self.underlying, self.ident, self.comp, frozenset(marking))

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        doc = self.underlying.to_json()
        doc["id"] = {str(n): dict(m) for n, m in enumerate(self.ident)}
        doc["comp"] = {
            f"{k},{n}": [[a, b, r] for (a, b), r in tbl.items()]
            for (k, n), tbl in sorted(self.comp.items())
        }
        doc["marking"] = cellset_to_json(self.marking, self.d)
        return doc

    @staticmethod
    def from_json(doc: Mapping) -> "FiniteOmegaCat":
        g = GlobularData.from_json(doc)
        d = g.trunc_dim
        ident = tuple(dict(doc.get("id", {}).get(str(n), {})) for n in range(max(d, 0)))
        comp = {}
        for key, rows in doc.get("comp", {}).items():
            k, n = (int(v) for v in key.split(","))
            comp[(k, n)] = {(str(a), str(b)): str(r) for a, b, r in rows}
        for n in range(1, d + 1):
            for k in range(n):
                comp.setdefault((k, n), {})
        marking = cellset_from_json(doc.get("marking", []))
        return FiniteOmegaCat(g, ident, comp, marking)


# ---------------------------------------------------------------------------
# construction from operations


def from_operations(
    d: int,
    cells: list[list[str]],
    src: Callable[[int, str], str],
    tgt: Callable[[int, str], str],
    ident: Callable[[int, str], str],
    comp: Callable[[int, int, str, str], str | None],
    marking: Iterable[Cell] = (),
) -> FiniteOmegaCat:
    """Tabulate a category from cell-level operations.

    ``src(n, c)``/``tgt(n, c)`` take an n-cell name, ``ident(n, c)`` an
    n-cell name, and ``comp(k, n, a, b)`` two composable n-cell names.
    """
    cells = [list(c) for c in cells]
    srcs = [{c: src(n, c) for c in cells[n]} for n in range(1, d + 1)]
    tgts = [{c: tgt(n, c) for c in cells[n]} for n in range(1, d + 1)]
    g = GlobularData.make(d, cells, srcs, tgts)
    idents = tuple({c: ident(n, c) for c in cells[n]} for n in range(d))

    def bnd(n, c, k, side):
        table = srcs if side == "s" else tgts
        while n > k:
            c = table[n - 1][c]
            n -= 1
        return c

    tables: dict[tuple[int, int], dict] = {}
    for n in range(1, d + 1):
        for k in range(n):
            by_src: dict[str, list[str]] = {}
            for b in cells[n]:
                by_src.setdefault(bnd(n, b, k, "s"), []).append(b)
            tbl = {}
            for a in cells[n]:
                for b in by_src.get(bnd(n, a, k, "t"), ()):
                    r = comp(k, n, a, b)
                    if r is not None:
                        tbl[(a, b)] = r
            tables[(k, n)] = tbl
    return FiniteOmegaCat(g, idents, tables, frozenset(marking))


def restrict_to(X: FiniteOmegaCat, e: int) -> FiniteOmegaCat:
    """Materialize formal identities so that the result is truncated at ``e >= X.d``."""
    if e < X.d:
        raise ValueError("restrict_to only raises the truncation")
    if e == X.d:
        return X
    cells = [list(X.names(n)) for n in range(e + 1)]
    return from_operations(
        e,
        cells,
        lambda n, c: X.src(Cell(n, c)).name,
        lambda n, c: X.tgt(Cell(n, c)).name,
        lambda n, c: X.ident_of(Cell(n, c)).name,
        lambda k, n, a, b: X.compose(k, Cell(n, a), Cell(n, b)).name,
        X.marking,
    )


extend_trunc = restrict_to


def free_on_globular(g: GlobularData, d: int, marking: Iterable[Cell] = ()) -> FiniteOmegaCat:
    """Free strict category on a globular set with no composable non-identity pairs."""
    if d < g.trunc_dim:
        raise ValueError("truncation below the generating data")
    # every cell is id^j(c) for a generator c
    gen_dim: dict[tuple[int, str], tuple[int, str]] = {}
    cells: list[list[str]] = []
    for n in range(d + 1):
        row = []
        for c in g.dim_cells(n):
            row.append(c)
            gen_dim[(n, c)] = (n, c)
        if n > 0:
            for c in cells[n - 1]:
                name = "id_" + c
                row.append(name)
                gen_dim[(n, name)] = gen_dim[(n - 1, c)]
        cells.append(row)

    def gen_of(n, c):
        return gen_dim[(n, c)]

    def bnd(n, c, side):
        gd, gc = gen_of(n, c)
        if gd == n:
            return g.source(n, c) if side == "s" else g.target(n, c)
        # identity: boundary is the cell it lifts
        return c[3:]

    def comp(k, n, a, b):
        ga, gb = gen_of(n, a), gen_of(n, b)
        if ga[0] <= k:
            return b
        if gb[0] <= k:
            return a
        raise CompositionError(f"free_on_globular: {a} and {b} are composable generators")

    return from_operations(
        d,
        cells,
        lambda n, c: bnd(n, c, "s"),
        lambda n, c: bnd(n, c, "t"),
        lambda n, c: "id_" + c,
        comp,
        marking,
    )


def globe_cat(n: int, d: int | None = None) -> FiniteOmegaCat:
    """Free strict category on the n-globe, truncated at ``d`` (default ``n``)."""
    return free_on_globular(globe(n), n if d is None else d)


def boundary_globe_cat(n: int, d: int | None = None) -> FiniteOmegaCat:
    g = boundary_globe(n)
    if d is None:
        d = max(n - 1, 0)
    if g.trunc_dim < 0:
        return FiniteOmegaCat(
            GlobularData.make(d, [[] for _ in range(d + 1)], [{} for _ in range(d)], [{} for _ in range(d)]),
            tuple({} for _ in range(d)),
            {(k, m): {} for m in range(1, d + 1) for k in range(m)},
        )
    return free_on_globular(g, d)


def marked_globe(n: int, d: int | None = None) -> FiniteOmegaCat:
    X = globe_cat(n, d)
    return X.with_marking([Cell(n, "u")]) if n > 0 else X


def terminal(d: int) -> FiniteOmegaCat:
    return from_operations(
        d,
        [["*"] for _ in range(d + 1)],
        lambda n, c: "*",
        lambda n, c: "*",
        lambda n, c: "*",
        lambda k, n, a, b: "*",
    )


def walking_iso() -> FiniteOmegaCat:
    """Objects x, y with u: x -> y and v: y -> x strictly inverse."""
    ends = {"u": ("x", "y"), "v": ("y", "x"), "id_x": ("x", "x"), "id_y": ("y", "y")}
    table = {}
    for a, b in itertools.product(ends, repeat=2):
        if ends[a][1] != ends[b][0]:
            continue
        if a.startswith("id_"):
            table[(a, b)] = b
        elif b.startswith("id_"):
            table[(a, b)] = a
        else:
            table[(a, b)] = "id_" + ends[a][0]
    return category_from_table(["x", "y"], ends, {"x": "id_x", "y": "id_y"}, table)


def category_from_table(
    objects: list[str],
    arrows: Mapping[str, tuple[str, str]],
    identities: Mapping[str, str],
    table: Mapping[tuple[str, str], str],
    d: int = 1,
) -> FiniteOmegaCat:
    """A 1-category given by its composition table (diagrammatic order), truncated at ``d``."""
    base = from_operations(
        1,
        [list(objects), list(arrows)],
        lambda n, c: arrows[c][0],
        lambda n, c: arrows[c][1],
        lambda n, c: identities[c],
        lambda k, n, a, b: table[(a, b)],
    )
    return restrict_to(base, d) if d > 1 else base


def monoid_cat(elements: list[str], mult: Callable[[str, str], str], unit: str, d: int = 1, obj: str = "o") -> FiniteOmegaCat:
    arrows = {e: (obj, obj) for e in elements}
    table = {(a, b): mult(a, b) for a in elements for b in elements}
    return category_from_table([obj], arrows, {obj: unit}, table, d)


def disjoint_union(X: FiniteOmegaCat, Y: FiniteOmegaCat, tags=("L", "R")) -> FiniteOmegaCat:
    d = max(X.d, Y.d)
    X, Y = restrict_to(X, d), restrict_to(Y, d)
    parts = dict(zip(tags, (X, Y)))

    def split(name):
        t, _, rest = name.partition(".")
        return parts[t], t, rest

    def lift1(fn):
        def inner(n, c):
            Z, t, rest = split(c)
            return f"{t}." + fn(Z, Cell(n, rest)).name
        return inner

    def comp(k, n, a, b):
        Za, ta, ra = split(a)
        Zb, tb, rb = split(b)
        if ta != tb:
            return None
        return f"{ta}." + Za.compose(k, Cell(n, ra), Cell(n, rb)).name

    cells = [[f"{t}.{c}" for t, Z in parts.items() for c in Z.names(n)] for n in range(d + 1)]
    marking = [Cell(c.dim, f"{t}.{c.name}") for t, Z in parts.items() for c in Z.marking]
    return from_operations(
        d, cells,
        lift1(lambda Z, c: Z.src(c)),
        lift1(lambda Z, c: Z.tgt(c)),
        lift1(lambda Z, c: Z.ident_of(c)),
        comp, marking,
    )


def product(X: FiniteOmegaCat, Y: FiniteOmegaCat) -> FiniteOmegaCat:
    """Cartesian product; cells are pairs of equal-dimensional cells."""
    d = max(X.d, Y.d)
    enc = {}
    cells = []
    for n in range(d + 1):
        row = []
        for a in X.names(n):
            for b in Y.names(n):
                name = f"({a},{b})"
                enc[(n, name)] = (a, b)
                row.append(name)
        cells.append(row)

    def pair(a: Cell, b: Cell) -> str:
        return f"({a.name},{b.name})"

    def op(fn):
        def inner(n, c):
            a, b = enc[(n, c)]
            return pair(fn(X, Cell(n, a)), fn(Y, Cell(n, b)))
        return inner

    def comp(k, n, p, q):
        a1, b1 = enc[(n, p)]
        a2, b2 = enc[(n, q)]
        return pair(X.compose(k, Cell(n, a1), Cell(n, a2)), Y.compose(k, Cell(n, b1), Cell(n, b2)))

    return from_operations(
        d, cells,
        op(lambda Z, c: Z.src(c)),
        op(lambda Z, c: Z.tgt(c)),
        op(lambda Z, c: Z.ident_of(c)),
        comp,
    )


def thin_extension(X: FiniteOmegaCat, related: Callable[[Cell, Cell], bool]) -> FiniteOmegaCat:
    """Add one dimension whose cells a -> b are the related parallel top cells.

    ``related`` must be a preorder on each set of parallel top cells that is
    compatible with composition; the result is then a strict category
    (checked by ``validate_category`` in callers that need assurance).
    """
    d = X.d
    top = X.cells(d)
    enc = {}
    row = []
    for a in top:
        for b in top:
            if (a == b or related(a, b)) and X.parallel(a, b):
                name = a.name if a == b else f"({a.name}>{b.name})"
                enc[name] = (a, b)
                row.append(name)

    def name_of(a: Cell, b: Cell) -> str | None:
        nm = a.name if a == b else f"({a.name}>{b.name})"
        return nm if nm in enc else None

    cells = [list(X.names(n)) for n in range(d + 1)] + [row]

    def src(n, c):
        return enc[c][0].name if n == d + 1 else X.src(Cell(n, c)).name

    def tgt(n, c):
        return enc[c][1].name if n == d + 1 else X.tgt(Cell(n, c)).name

    def ident(n, c):
        return c if n == d else X.ident_of(Cell(n, c)).name

    def comp(k, n, a, b):
        if n <= d:
            return X.compose(k, Cell(n, a), Cell(n, b)).name
        a1, a2 = enc[a]
        b1, b2 = enc[b]
        if k == d:
            return name_of(a1, b2)
        return name_of(X.compose(k, a1, b1), X.compose(k, a2, b2))

    marking = [c for c in X.marking]
    return from_operations(d + 1, cells, src, tgt, ident, comp, marking)


def codiscrete_extension(X: FiniteOmegaCat) -> FiniteOmegaCat:
    return thin_extension(X, lambda a, b: True)


# ---------------------------------------------------------------------------
# hom, suspension, cosep


def hom(X: FiniteOmegaCat, x: str | Cell, y: str | Cell) -> FiniteOmegaCat:
    """The hom category ``X(x, y)``, truncated one dimension lower."""
    x = x.name if isinstance(x, Cell) else x
    y = y.name if isinstance(y, Cell) else y
    if x not in X.names(0) or y not in X.names(0):
        raise KeyError(f"unknown 0-cells {x!r}, {y!r}")
    if X.d == 0:
        cells = [[x] if x == y else []]
        return from_operations(0, cells, None, None, None, None)
    d = X.d - 1
    keep = [[c.name for c in X.cells(1) if X.src(c).name == x and X.tgt(c).name == y]]
    for n in range(1, d + 1):
        prev = set(keep[-1])
        keep.append([c.name for c in X.cells(n + 1) if X.src(c).name in prev])
    marking = [Cell(c.dim - 1, c.name) for c in X.marking
               if c.dim >= 1 and c.name in set(keep[min(c.dim - 1, d)])]
    return from_operations(
        d, keep,
        lambda n, c: X.src(Cell(n + 1, c)).name,
        lambda n, c: X.tgt(Cell(n + 1, c)).name,
        lambda n, c: X.ident_of(Cell(n + 1, c)).name,
        lambda k, n, a, b: X.compose(k + 1, Cell(n + 1, a), Cell(n + 1, b)).name,
        marking,
    )


def suspension_points(X: FiniteOmegaCat) -> tuple[str, str]:
    used = {c for n in range(X.d + 1) for c in X.names(n)}
    p, q = "⋆", "⋆′"
    while p in used or q in used:
        p, q = p + "'", q + "'"
    return p, q


def suspend(X: FiniteOmegaCat) -> FiniteOmegaCat:
    """Suspension: two new 0-cells and every cell of X shifted up one dimension."""
    p, q = suspension_points(X)
    d = X.d + 1
    cells = [[p, q]] + [list(X.names(n - 1)) + [p, q] for n in range(1, d + 1)]
    pts = {p, q}

    def src(n, c):
        if c in pts:
            return c
        return p if n == 1 else X.src(Cell(n - 1, c)).name

    def tgt(n, c):
        if c in pts:
            return c
        return q if n == 1 else X.tgt(Cell(n - 1, c)).name

    def ident(n, c):
        if c in pts:
            return c
        return X.ident_of(Cell(n - 1, c)).name

    def comp(k, n, a, b):
        if a in pts:
            return b
        if b in pts:
            return a
        if k == 0:
            return None
        return X.compose(k - 1, Cell(n - 1, a), Cell(n - 1, b)).name

    marking = [Cell(c.dim + 1, c.name) for c in X.marking]
    return from_operations(d, cells, src, tgt, ident, comp, marking)


def _pair(a: str, b: str) -> str:
    return f"({a},{b})"


def cosep(k: int, d: int) -> FiniteOmegaCat:
    """Category whose globular maps into it classify sets of k-cells.

    Cells are ``*`` below k, ``w`` and ``*`` at k, and pairs of those above k;
    each cell shares its name with its identity except that the identity of
    a k-cell ``a`` is the pair ``(a,a)``.
    """
    if k < 1:
        raise ValueError("cosep requires k >= 1")
    if d < k:
        raise ValueError("cosep requires k <= d")
    W, S = "w", "*"
    base = [W, S]
    pairs = [_pair(a, b) for a in base for b in base]
    dec = {_pair(a, b): (a, b) for a in base for b in base}
    cells = [[S] if n < k else base if n == k else pairs for n in range(d + 1)]

    def src(n, c):
        if n <= k:
            return S
        if n == k + 1:
            return dec[c][0]
        return c

    def tgt(n, c):
        if n <= k:
            return S
        if n == k + 1:
            return dec[c][1]
        return c

    def ident(n, c):
        return _pair(c, c) if n == k else c

    def join(a, b):
        return S if a == S and b == S else W

    def comp(l, n, a, b):
        if n < k:
            return S
        if n == k:
            return join(a, b)
        if l >= k + 1:
            # both are identities on the same (k+1)-cell
            return a
        (a1, a2), (b1, b2) = dec[a], dec[b]
        if l == k:
            return _pair(a1, b2)
        return _pair(join(a1, b1), join(a2, b2))

    return from_operations(d, cells, src, tgt, ident, comp)


# ---------------------------------------------------------------------------
# validation


def validate_category(X: FiniteOmegaCat, budget: int = DEFAULT_AXIOM_BUDGET) -> ValidationReport:
    """Exhaustive check of typing, unit, associativity, interchange and identity laws."""
    rep = validate_globular(X.underlying)
    if not rep.ok:
        return rep
    d = X.d
    if any(len(X.names(n)) > budget for n in range(d + 1)):
        raise BudgetExceeded(f"more than {budget} cells in some dimension")
    if len(X.ident) != max(d, 0):
        rep.add("shape", "identity maps must cover dimensions 0..d-1")
        return rep
    for n in range(d):
        for c in X.names(n):
            i = X.ident[n].get(c)
            if i is None or i not in X._name_sets[n + 1]:
                rep.add("identity", f"identity of {c} missing or unknown", Cell(n, c))
                continue
            ic = Cell(n + 1, i)
            if n >= 0 and (X.src(ic) != Cell(n, c) or X.tgt(ic) != Cell(n, c)):
                rep.add("identity", f"identity of {c} has wrong boundary", Cell(n, c))
    for c in X.marking:
        if not (1 <= c.dim <= d) or c.name not in X._name_sets[c.dim]:
            rep.add("marking", f"marked cell {c} is not a positive-dimensional cell", c)
    if not rep.ok:
        return rep

    def look(k, n, a, b):
        return X.comp.get((k, n), {}).get((a, b))

    # table typing and totality
    for n in range(1, d + 1):
        for k in range(n):
            tbl = X.comp.get((k, n), {})
            for (a, b), r in tbl.items():
                ca, cb = Cell(n, a), Cell(n, b)
                if not (X.has(ca) and X.has(cb)) or X.tgt_k(ca, k) != X.src_k(cb, k):
                    rep.add("comp-typing", f"entry {a} o{k} {b} for non-composable pair", ca, cb)
                elif r not in X._name_sets[n]:
                    rep.add("comp-typing", f"{a} o{k} {b} = unknown cell {r}", ca, cb)
            for a in X.names(n):
                for b in X.names(n):
                    ca, cb = Cell(n, a), Cell(n, b)
                    if X.tgt_k(ca, k) == X.src_k(cb, k) and (a, b) not in tbl:
                        rep.add("comp-missing", f"{a} o{k} {b} undefined", ca, cb)
    if not rep.ok:
        return rep

    def C(k, a, b):
        return X.compose(k, a, b)

    for n in range(1, d + 1):
        cells = X.cells(n)
        for k in range(n):
            by_src: dict[Cell, list[Cell]] = {}
            for b in cells:
                by_src.setdefault(X.src_k(b, k), []).append(b)
            for a in cells:
                for b in by_src.get(X.tgt_k(a, k), ()):
                    r = C(k, a, b)
                    if k == n - 1:
                        es, et = X.src(a), X.tgt(b)
                    else:
                        es, et = C(k, X.src(a), X.src(b)), C(k, X.tgt(a), X.tgt(b))
                    if X.src(r) != es or X.tgt(r) != et:
                        rep.add("comp-typing", f"boundary of {a.name} o{k} {b.name} is wrong", a, b)
            # units
            for a in cells:
                left = X.lift(X.src_k(a, k), n)
                right = X.lift(X.tgt_k(a, k), n)
                if C(k, left, a) != a or C(k, a, right) != a:
                    rep.add("unit", f"unit law fails for {a.name} along {k}", a)
            # associativity
            for a in cells:
                for b in by_src.get(X.tgt_k(a, k), ()):
                    ab = C(k, a, b)
                    for c in by_src.get(X.tgt_k(b, k), ()):
                        if C(k, ab, c) != C(k, a, C(k, b, c)):
                            rep.add("associativity", f"({a.name} o{k} {b.name}) o{k} {c.name}", a, b, c)
            # identity functoriality
            if n < d:
                for a in cells:
                    for b in by_src.get(X.tgt_k(a, k), ()):
                        if X.ident_of(C(k, a, b)) != C(k, X.ident_of(a), X.ident_of(b)):
                            rep.add("id-functoriality", f"id({a.name} o{k} {b.name})", a, b)
        # interchange for k < l < n
        for l in range(1, n):
            by_src_l: dict[Cell, list[Cell]] = {}
            for b in cells:
                by_src_l.setdefault(X.src_k(b, l), []).append(b)
            for k in range(l):
                by_src_k: dict[Cell, list[Cell]] = {}
                for b in cells:
                    by_src_k.setdefault(X.src_k(b, k), []).append(b)
                for a in cells:
                    for c in by_src_l.get(X.tgt_k(a, l), ()):
                        ac = C(l, a, c)
                        for b in by_src_k.get(X.tgt_k(a, k), ()):
                            ab = C(k, a, b)
                            for e in by_src_l.get(X.tgt_k(b, l), ()):
                                if not X.composable(k, c, e):
                                    continue
                                ce = C(k, c, e)
                                if not X.composable(l, ab, ce):
                                    continue
                                be = C(l, b, e)
                                if not X.composable(k, ac, be):
                                    continue
                                if C(l, ab, ce) != C(k, ac, be):
                                    rep.add(
                                        "interchange",
                                        f"interchange fails for {a.name},{b.name},{c.name},{e.name} (k={k}, l={l})",
                                        a, b, c, e,
                                    )
    return rep


# ---------------------------------------------------------------------------
# isomorphism search


def find_isomorphism(X: FiniteOmegaCat, Y: FiniteOmegaCat) -> dict[Cell, Cell] | None:
    """A structure-preserving bijection of cells up to the common truncation, or None."""
    if X.d != Y.d or X.underlying.counts() != Y.underlying.counts():
        return None
    d = X.d
    order = X.all_cells(0)
    inv_used: set[Cell] = set()
    f: dict[Cell, Cell] = {}

    def sig(Z, c):
        return (Z.is_identity(c), len(Z.out_of(c)) if c.dim < Z.d else 0, len(Z.into(c)) if c.dim < Z.d else 0)

    def candidates(c):
        if c.dim == 0:
            pool = Y.cells(0)
        else:
            ts, tt = f[X.src(c)], f[X.tgt(c)]
            pool = Y.between(ts, tt)
        s = sig(X, c)
        return [y for y in pool if y not in inv_used and sig(Y, y) == s]

    def consistent(c):
        y = f[c]
        if c.dim >= 1:
            b = X.identity_base(c)
            if b is not None and b in f and Y.ident_of(f[b]) != y:
                return False
        if c.dim < d and X.ident_of(c) in f and f[X.ident_of(c)] != Y.ident_of(y):
            return False
        return True

    def check_all():
        for n in range(1, d + 1):
            for k in range(n):
                for (a, b), r in X.comp[(k, n)].items():
                    if Y.compose(k, f[Cell(n, a)], f[Cell(n, b)]) != f[Cell(n, r)]:
                        return False
        return True

    def go(i):
        if i == len(order):
            return check_all()
        c = order[i]
        for y in candidates(c):
            f[c] = y
            inv_used.add(y)
            if consistent(c) and go(i + 1):
                return True
            inv_used.discard(y)
            del f[c]
        return False

    return dict(f) if go(0) else None


def isomorphic(X: FiniteOmegaCat, Y: FiniteOmegaCat) -> bool:
    return find_isomorphism(X, Y) is not None
