"""Polygraph presentations over a small term language, and emitters for walking equivalences.

Terms are ``Gen``, ``IdLift`` (iterated identity) and ``Comp`` (composite
along a codimension).  Generators carry their dimension so that terms can
be normalized without the ambient presentation.  Every emitted generator
records an address: ``s<k>``/``t<k>`` for globe boundary cells and ``@``
followed by a word in p, q (and optionally a trailing v or w) for the
witness cells, ``@`` alone being the equivalence ``u`` itself.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .gset import Cell, ValidationReport
from .scat import CompositionError, FiniteOmegaCat


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    name: str
    dim: int

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class IdLift:
    term: "Term"
    count: int

    def __repr__(self) -> str:
        return f"id{self.count}({self.term!r})"


@dataclass(frozen=True)
class Comp:
    k: int
    left: "Term"
    right: "Term"

    def __repr__(self) -> str:
        return f"({self.left!r} o{self.k} {self.right!r})"


Term = Union[Gen, IdLift, Comp]


@lru_cache(maxsize=None)
def dim(t: Term) -> int:
    if isinstance(t, Gen):
        return t.dim
    if isinstance(t, IdLift):
        return dim(t.term) + t.count
    return dim(t.left)


def lift(t: Term, count: int) -> Term:
    if count == 0:
        return t
    if isinstance(t, IdLift):
        return IdLift(t.term, t.count + count)
    return IdLift(t, count)


def _identity_upto(t: Term, k: int) -> bool:
    """Is t (normalized) an iterated identity on a term of dimension <= k?"""
    return isinstance(t, IdLift) and dim(t.term) <= k


def comp(k: int, a: Term, b: Term) -> Term:
    """Composite of two normal terms, returned in normal form."""
    n = dim(a)
    if dim(b) != n or not 0 <= k < n:
        raise TermError(f"cannot compose {a!r} and {b!r} along {k}")
    if _identity_upto(a, k):
        return b
    if _identity_upto(b, k):
        return a
    if isinstance(a, IdLift) and isinstance(b, IdLift):
        c = min(a.count, b.count)
        if n - c > k:
            inner = comp(k, lift(a.term, a.count - c), lift(b.term, b.count - c))
            return lift(inner, c)
    if isinstance(b, Comp) and b.k == k:
        return comp(k, comp(k, a, b.left), b.right)
    return Comp(k, a, b)


@lru_cache(maxsize=None)
def normalize(t: Term) -> Term:
    """Unit absorption, left-associated bracketing and identity functoriality."""
    if isinstance(t, Gen):
        return t
    if isinstance(t, IdLift):
        return lift(normalize(t.term), t.count)
    return comp(t.k, normalize(t.left), normalize(t.right))


def terms_equal(a: Term, b: Term) -> bool:
    return normalize(a) == normalize(b)


def gens_of(t: Term) -> set[str]:
    if isinstance(t, Gen):
        return {t.name}
    if isinstance(t, IdLift):
        return gens_of(t.term)
    return gens_of(t.left) | gens_of(t.right)


def substitute(t: Term, sub: Mapping[str, Term]) -> Term:
    if isinstance(t, Gen):
        return sub.get(t.name, t)
    if isinstance(t, IdLift):
        return IdLift(substitute(t.term, sub), t.count)
    return Comp(t.k, substitute(t.left, sub), substitute(t.right, sub))


def shift(t: Term, rename: Mapping[str, str] | None = None) -> Term:
    """Suspension of a term: every dimension and composition index goes up by one."""
    rename = rename or {}
    if isinstance(t, Gen):
        return Gen(rename.get(t.name, t.name), t.dim + 1)
    if isinstance(t, IdLift):
        return IdLift(shift(t.term, rename), t.count)
    return Comp(t.k + 1, shift(t.left, rename), shift(t.right, rename))


def term_to_json(t: Term) -> list:
    if isinstance(t, Gen):
        return ["gen", t.name]
    if isinstance(t, IdLift):
        return ["id", term_to_json(t.term), t.count]
    return ["comp", t.k, term_to_json(t.left), term_to_json(t.right)]


def term_from_json(doc: Sequence, dims: Mapping[str, int]) -> Term:
    tag = doc[0]
    if tag == "gen":
        return Gen(doc[1], dims[doc[1]])
    if tag == "id":
        return IdLift(term_from_json(doc[1], dims), int(doc[2]))
    if tag == "comp":
        return Comp(int(doc[1]), term_from_json(doc[2], dims), term_from_json(doc[3], dims))
    raise TermError(f"unknown term tag {tag!r}")


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Generator:
    name: str
    dim: int
    src: Term | None = None
    tgt: Term | None = None
    marked: bool = False
    address: str = ""

    @property
    def term(self) -> Gen:
        return Gen(self.name, self.dim)


@dataclass(frozen=True)
class Polygraph:
    generators: tuple[Generator, ...]
    max_dim: int

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {g.name: g for g in self.generators})

    def __getitem__(self, name: str) -> Generator:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.generators)

    def in_dim(self, n: int) -> list[Generator]:
        return [g for g in self.generators if g.dim == n]

    def marked(self) -> list[Generator]:
        return [g for g in self.generators if g.marked]

    def census(self) -> dict[int, tuple[int, int]]:
        """dimension -> (generator count, marked count)."""
        out: dict[int, tuple[int, int]] = {}
        for g in self.generators:
            t, m = out.get(g.dim, (0, 0))
            out[g.dim] = (t + 1, m + g.marked)
        return dict(sorted(out.items()))

    def by_address(self, addr: str) -> Generator:
        for g in self.generators:
            if g.address == addr:
                return g
        raise KeyError(addr)

    def truncate(self, e: int) -> "Polygraph":
        return Polygraph(tuple(g for g in self.generators if g.dim <= e), min(self.max_dim, e))

    def to_json(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "generators": [
                {
                    "name": g.name,
                    "dim": g.dim,
                    "src": None if g.src is None else term_to_json(g.src),
                    "tgt": None if g.tgt is None else term_to_json(g.tgt),
                    "marked": g.marked,
                    "address": g.address,
                }
                for g in self.generators
            ],
        }

    @staticmethod
    def from_json(doc: Mapping) -> "Polygraph":
        dims = {g["name"]: int(g["dim"]) for g in doc["generators"]}
        gens = []
        for g in doc["generators"]:
            gens.append(
                Generator(
                    g["name"],
                    int(g["dim"]),
                    None if g.get("src") is None else term_from_json(g["src"], dims),
                    None if g.get("tgt") is None else term_from_json(g["tgt"], dims),
                    bool(g.get("marked", False)),
                    str(g.get("address", "")),
                )
            )
        return Polygraph(tuple(gens), int(doc.get("max_dim", max(dims.values(), default=0))))


def term_boundary(t: Term, P: Polygraph) -> tuple[Term, Term]:
    """Source and target terms of a well-formed term of positive dimension."""
    if isinstance(t, Gen):
        g = P[t.name]
        if g.dim == 0:
            raise TermError(f"0-dimensional generator {t.name} has no boundary")
        return g.src, g.tgt
    if isinstance(t, IdLift):
        inner = lift(t.term, t.count - 1)
        return inner, inner
    n = dim(t.left)
    sa, ta = term_boundary(t.left, P)
    sb, tb = term_boundary(t.right, P)
    if t.k == n - 1:
        return sa, tb
    return Comp(t.k, sa, sb), Comp(t.k, ta, tb)


def boundary_k(t: Term, P: Polygraph, k: int, side: str) -> Term:
    while dim(t) > k:
        s, tt = term_boundary(t, P)
        t = s if side == "s" else tt
    return normalize(t)


def well_formed(t: Term, P: Polygraph) -> bool:
    try:
        _check_term(t, P)
    except TermError:
        return False
    return True


def _check_term(t: Term, P: Polygraph) -> None:
    if isinstance(t, Gen):
        if t.name not in P or P[t.name].dim != t.dim:
            raise TermError(f"unknown generator {t.name}")
        return
    if isinstance(t, IdLift):
        if t.count < 1:
            raise TermError("identity lift count must be positive")
        _check_term(t.term, P)
        return
    _check_term(t.left, P)
    _check_term(t.right, P)
    n = dim(t.left)
    if dim(t.right) != n or not 0 <= t.k < n:
        raise TermError(f"bad composite dimensions in {t!r}")
    if boundary_k(t.left, P, t.k, "t") != boundary_k(t.right, P, t.k, "s"):
        raise TermError(f"{t!r}: boundaries do not match along {t.k}")


def validate_polygraph(P: Polygraph) -> ValidationReport:
    rep = ValidationReport()
    names = [g.name for g in P.generators]
    if len(set(names)) != len(names):
        rep.add("duplicate", "generator names repeat")
    addrs = [g.address for g in P.generators]
    if len(set(addrs)) != len(addrs):
        rep.add("duplicate", "generator addresses repeat")
    seen: dict[str, int] = {}
    for g in P.generators:
        if g.dim > P.max_dim:
            rep.add("dimension", f"{g.name} exceeds max_dim")
        if g.dim == 0:
            if g.src is not None or g.tgt is not None or g.marked:
                rep.add("shape", f"0-generator {g.name} carries boundary or marking")
            seen[g.name] = 0
            continue
        ok = True
        for side, t in (("src", g.src), ("tgt", g.tgt)):
            if t is None:
                rep.add("shape", f"{g.name} lacks {side}")
                ok = False
                continue
            if not gens_of(t) <= set(seen):
                rep.add("order", f"{side} of {g.name} uses later generators")
                ok = False
                continue
            try:
                _check_term(t, P)
            except TermError as e:
                rep.add("ill-formed", f"{side} of {g.name}: {e}")
                ok = False
                continue
            if dim(t) != g.dim - 1:
                rep.add("dimension", f"{side} of {g.name} has dimension {dim(t)}")
                ok = False
        if ok and g.dim >= 2:
            ss, st = term_boundary(g.src, P)
            ts, tt = term_boundary(g.tgt, P)
            if normalize(ss) != normalize(ts) or normalize(st) != normalize(tt):
                rep.add("globular", f"boundary of {g.name} is not globular")
        seen[g.name] = g.dim
    return rep


# ---------------------------------------------------------------------------
# emitters


def _globe_boundary(n: int) -> list[Generator]:
    """Generators of the boundary of the n-globe; the (n-1)-cells are x and y."""
    out: list[Generator] = []
    prev: tuple[Gen, Gen] | None = None
    for k in range(n):
        names = ("x", "y") if k == n - 1 else (f"a{k}", f"b{k}")
        pair = []
        for nm, side in zip(names, "st"):
            src, tgt = (prev if prev else (None, None))
            out.append(Generator(nm, k, src, tgt, False, f"{side}{k}"))
            pair.append(Gen(nm, k))
        prev = (pair[0], pair[1])
    return out


def marked_globe_presentation(n: int) -> Polygraph:
    if n < 1:
        raise ValueError("the marked globe needs n >= 1")
    bnd = _globe_boundary(n)
    u = Generator("u", n, Gen("x", n - 1), Gen("y", n - 1), True, "@")
    return Polygraph(tuple(bnd + [u]), n)


def _witness_pair(name_v: str, name_w: str, u: Generator, addr: str) -> list[Generator]:
    return [
        Generator(name_v, u.dim, u.tgt, u.src, False, addr + "v"),
        Generator(name_w, u.dim, u.tgt, u.src, False, addr + "w"),
    ]


def emit_F(n: int) -> Polygraph:
    """u: x -> y with right inverse v, left inverse w and marked witnesses p, q."""
    if n < 1:
        raise ValueError("emit_F needs n >= 1")
    bnd = _globe_boundary(n)
    x, y = Gen("x", n - 1), Gen("y", n - 1)
    u, v, w = Gen("u", n), Gen("v", n), Gen("w", n)
    gens = bnd + [
        Generator("u", n, x, y, True, "@"),
        Generator("v", n, y, x, False, "@v"),
        Generator("w", n, y, x, False, "@w"),
        Generator("p", n + 1, normalize(Comp(n - 1, u, v)), lift(x, 1), True, "@p"),
        Generator("q", n + 1, normalize(Comp(n - 1, w, u)), lift(y, 1), True, "@q"),
    ]
    return Polygraph(tuple(gens), n + 1)


def emit_H(n: int) -> Polygraph:
    """Half-adjoint variant with a triangle cell r; coherence cells are identities."""
    if n < 1:
        raise ValueError("emit_H needs n >= 1")
    bnd = _globe_boundary(n)
    x, y = Gen("x", n - 1), Gen("y", n - 1)
    u, v = Gen("u", n), Gen("v", n)
    p, q = Gen("p", n + 1), Gen("q", n + 1)
    iu = lift(u, 1)
    r_tgt = Comp(n, Comp(n - 1, p, iu), Comp(n - 1, iu, q))
    gens = bnd + [
        Generator("u", n, x, y, True, "@"),
        Generator("v", n, y, x, False, "@v"),
        Generator("p", n + 1, lift(x, 1), normalize(Comp(n - 1, u, v)), True, "@p"),
        Generator("q", n + 1, normalize(Comp(n - 1, v, u)), lift(y, 1), True, "@q"),
        Generator("r", n + 2, iu, normalize(r_tgt), True, "@r"),
    ]
    return Polygraph(tuple(gens), n + 2)


def _instantiate_F(P: Polygraph, g: Generator) -> list[Generator]:
    """Glue a copy of F at the marked generator g (pushout along the globe)."""
    m = g.dim
    F = emit_F(m)
    sub: dict[str, Term] = {"u": g.term}
    # boundary generators of F go to the iterated boundary terms of g
    for b in F.generators:
        if b.address.startswith(("s", "t")):
            k = int(b.address[1:])
            sub[b.name] = boundary_k(g.term, P, k, b.address[0])
    fresh = {nm: f"{nm}[{g.name}]" for nm in ("v", "w", "p", "q")}
    out = []
    for nm in ("v", "w", "p", "q"):
        fg = F[nm]
        sub_all = dict(sub)
        sub_all.update({k: Gen(v, F[k].dim) for k, v in fresh.items()})
        out.append(
            Generator(
                fresh[nm],
                fg.dim,
                normalize(substitute(fg.src, sub_all)),
                normalize(substitute(fg.tgt, sub_all)),
                fg.marked,
                g.address + nm,
            )
        )
    return out


def emit_EF_ladder(n: int, m_max: int) -> list[Polygraph]:
    """The presentations E^{n,0}, ..., E^{n,m_max} built by successive pushouts."""
    steps = [marked_globe_presentation(n)]
    for m in range(m_max):
        P = steps[-1]
        new: list[Generator] = []
        for g in P.generators:
            if g.marked and g.dim == n + m:
                new.extend(_instantiate_F(P, g))
        steps.append(Polygraph(P.generators + tuple(new), n + m + 1))
    return steps


def ladder_colimit(n: int, D: int) -> Polygraph:
    """The union of the ladder cut at dimension D.

    Step m of the ladder tops out with the marked witnesses only; their
    inverses arrive at step m+1, so the cut needs one step more.
    """
    if D < n:
        raise ValueError("ladder_colimit needs D >= n")
    return emit_EF_ladder(n, D - n + 1)[-1].truncate(D)


def _word_name(word: str) -> str:
    return word if word else "u"


def emit_EF_witness(n: int, D: int) -> Polygraph:
    """System of witnesses: x_phi for words phi in {p,q}, each with inverses x_phi v, x_phi w."""
    if n < 1:
        raise ValueError("emit_EF_witness needs n >= 1")
    gens = _globe_boundary(n)
    bounds: dict[str, tuple[Term, Term]] = {"": (Gen("x", n - 1), Gen("y", n - 1))}
    for m in range(0, D - n + 1):
        dm = n + m
        for letters in itertools.product("pq", repeat=m):
            phi = "".join(letters)
            if m > 0:
                psi, last = phi[:-1], phi[-1]
                xs, xt = bounds[psi]
                xp = Gen(_word_name(psi), dm - 1)
                if last == "p":
                    s = Comp(dm - 2, xp, Gen(psi + "v", dm - 1))
                    t = lift(xs, 1)
                else:
                    s = Comp(dm - 2, Gen(psi + "w", dm - 1), xp)
                    t = lift(xt, 1)
                bounds[phi] = (normalize(s), normalize(t))
            s, t = bounds[phi]
            gens.append(Generator(_word_name(phi), dm, s, t, True, "@" + phi))
            gens.append(Generator(phi + "v", dm, t, s, False, "@" + phi + "v"))
            gens.append(Generator(phi + "w", dm, t, s, False, "@" + phi + "w"))
    return Polygraph(tuple(gens), D)


def _fresh_points(names: Iterable[str]) -> tuple[str, str]:
    used = set(names)
    p, q = "⋆", "⋆′"
    while p in used or q in used:
        p, q = p + "'", q + "'"
    return p, q


def _shift_address(addr: str) -> str:
    if addr[:1] in ("s", "t") and addr[1:].isdigit():
        return f"{addr[0]}{int(addr[1:]) + 1}"
    return addr


def suspend_presentation(P: Polygraph) -> Polygraph:
    """Shift every generator up one dimension and add two new 0-generators."""
    a, b = _fresh_points(g.name for g in P.generators)
    gens = [Generator(a, 0, address="s0"), Generator(b, 0, address="t0")]
    for g in P.generators:
        if g.dim == 0:
            src, tgt = Gen(a, 0), Gen(b, 0)
        else:
            src, tgt = shift(g.src), shift(g.tgt)
        gens.append(Generator(g.name, g.dim + 1, src, tgt, g.marked, _shift_address(g.address)))
    return Polygraph(tuple(gens), P.max_dim + 1)


def emit_OR(D: int) -> Polygraph:
    """One-dimensional walking equivalence glued from suspended copies of itself.

    Level 1 adjoins u: x -> y and v, w: y -> x.  Level m+1 adjoins, for each
    generator g new at level m and each letter c in {p, q}, the image of the
    suspension of g under the gluing map for c.  The gluing maps start as
    p: (star, star') -> (x, x), s x -> u v, s y -> id x and
    q: (star, star') -> (y, y), s x -> w u, s y -> id y.
    """
    x, y = Gen("x", 0), Gen("y", 0)
    gens = [Generator("x", 0, address="s0"), Generator("y", 0, address="t0")]
    if D == 0:
        return Polygraph(tuple(gens), 0)
    u, v, w = Gen("u", 1), Gen("v", 1), Gen("w", 1)
    newest = [
        Generator("u", 1, x, y, True, "@"),
        Generator("v", 1, y, x, False, "@v"),
        Generator("w", 1, y, x, False, "@w"),
    ]
    gens.extend(newest)
    # gluing maps on suspended generators, keyed by the original generator name
    glue: dict[str, dict[str, Term]] = {
        "p": {"x": Comp(0, u, v), "y": lift(x, 1)},
        "q": {"x": Comp(0, w, u), "y": lift(y, 1)},
    }
    for m in range(1, D):
        made: list[Generator] = []
        for c in "pq":
            sub = glue[c]
            for g in newest:
                name = c if g.name == "u" else c + g.name
                # shift() keeps names, so sub acts on the suspended generators
                src = normalize(substitute(shift(g.src), sub))
                tgt = normalize(substitute(shift(g.tgt), sub))
                made.append(Generator(name, g.dim + 1, src, tgt, g.marked, "@" + c + g.address[1:]))
            for g, h in zip(newest, made[-len(newest):]):
                sub[g.name] = h.term
        gens.extend(made)
        newest = made
    return Polygraph(tuple(gens), D)


def canonical_form(P: Polygraph) -> tuple:
    addr = {g.name: g.address for g in P.generators}

    def canon(t: Term | None):
        if t is None:
            return None
        t = normalize(t)
        return _rename(t, addr)

    rows = sorted(
        (g.dim, g.address, g.marked, repr(canon(g.src)), repr(canon(g.tgt))) for g in P.generators
    )
    return (P.max_dim, tuple(rows))


def _rename(t: Term, addr: Mapping[str, str]) -> Term:
    if isinstance(t, Gen):
        return Gen(addr[t.name], t.dim)
    if isinstance(t, IdLift):
        return IdLift(_rename(t.term, addr), t.count)
    return Comp(t.k, _rename(t.left, addr), _rename(t.right, addr))


def presentations_isomorphic(P: Polygraph, Q: Polygraph) -> bool:
    """Equality after relabeling every generator by its recorded address."""
    return canonical_form(P) == canonical_form(Q)


def eval_term(t: Term, X: FiniteOmegaCat, assign: Mapping[str, Cell]) -> Cell:
    """Value of a term in X; formal identities above the truncation collapse to their base."""
    if isinstance(t, Gen):
        try:
            c = assign[t.name]
        except KeyError:
            raise TermError(f"generator {t.name} unassigned") from None
        if c.dim != t.dim:
            raise TermError(f"{t.name} assigned a cell of dimension {c.dim}")
        return c
    if isinstance(t, IdLift):
        c = eval_term(t.term, X, assign)
        return X.lift(c, c.dim + t.count)
    a = eval_term(t.left, X, assign)
    b = eval_term(t.right, X, assign)
    try:
        return X.compose(t.k, a, b)
    except CompositionError as e:
        raise TermError(str(e)) from None
