"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success or property holds, 1 violation or property fails,
2 usage error, malformed input or exhausted budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from . import coind, corpus, cyl, fib, laws, lift, poly, quot
from .gset import BudgetExceeded, Cell, GlobularData, validate_globular
from .scat import FiniteOmegaCat, cellset_to_json, validate_category


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None


def _load_cat(path: str) -> FiniteOmegaCat:
    try:
        return FiniteOmegaCat.from_json(_load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a category document: {exc}") from None


def _resolve_cat(ref: Any, base: Path) -> FiniteOmegaCat:
    if isinstance(ref, str):
        p = Path(ref)
        return _load_cat(str(p if p.is_absolute() else base / p))
    return FiniteOmegaCat.from_json(ref)


def _load_functor(path: str) -> fib.OmegaFunctor:
    doc = _load(path)
    base = Path(path).parent
    try:
        dom = _resolve_cat(doc["dom"], base)
        cod = _resolve_cat(doc["cod"], base)
        return fib.OmegaFunctor.from_json(doc, dom, cod)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a functor document: {exc}") from None


def _budget(args) -> dict:
    return {} if args.budget is None else {"budget": args.budget}


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=False, ensure_ascii=False)
    sys.stdout.write("\n")


def cmd_validate(args) -> int:
    doc = _load(args.file)
    if "generators" in doc:
        rep = poly.validate_polygraph(poly.Polygraph.from_json(doc))
        kind = "polygraph"
    elif "map" in doc:
        f = _load_functor(args.file)
        rep = fib.is_functor(f)
        kind = "functor"
    elif "comp" in doc or "id" in doc:
        rep = validate_category(FiniteOmegaCat.from_json(doc), **_budget(args))
        kind = "category"
    else:
        rep = validate_globular(GlobularData.from_json(doc))
        kind = "globular"
    _emit({"kind": kind, **rep.to_json()})
    return 0 if rep.ok else 1


def cmd_equivs(args) -> int:
    X = _load_cat(args.file)
    S, F = coind.equivalences(X), coind.flat_equivalences(X)
    _emit({
        "spherical": cellset_to_json(S, X.d),
        "flat": cellset_to_json(F, X.d),
        "count": len(S),
        "diff": {"only_spherical": cellset_to_json(S - F, X.d), "only_flat": cellset_to_json(F - S, X.d)},
        "equal": S == F,
    })
    return 0 if S == F else 1


def cmd_check_fib(args) -> int:
    if args.mode == "gaunt":
        doc = _load(args.file)
        X = _load_functor(args.file).dom if "map" in doc else FiniteOmegaCat.from_json(doc)
        holds = fib.is_gaunt(X)
        _emit({"mode": "gaunt", "holds": holds})
        return 0 if holds else 1
    f = _load_functor(args.file)
    rep = fib.is_functor(f)
    if not rep.ok:
        _emit({"mode": args.mode, "holds": False, "not_a_functor": rep.to_json()})
        return 1
    if args.mode == "equi":
        v = fib.is_equifibration(f)
    elif args.mode == "weq":
        v = fib.is_weak_equivalence(f, args.beyond_truncation)
    elif args.mode == "trivfib":
        v = fib.is_trivial_fibration(f, args.beyond_truncation)
    else:
        v = lift.check_rlp_JF(f, **_budget(args))
    _emit({"mode": args.mode, **v.to_json()})
    return 0 if v else 1


def cmd_gen_walking(args) -> int:
    n, D = args.n, args.dim
    if args.model == "ladder":
        if D < n:
            raise UsageError("--dim must be at least --n")
        P = poly.ladder_colimit(n, D)
    elif args.model == "witness":
        P = poly.emit_EF_witness(n, D)
    elif args.model == "or":
        if D < n:
            raise UsageError("--dim must be at least --n")
        P = poly.emit_OR(D - n + 1)
        for _ in range(n - 1):
            P = poly.suspend_presentation(P)
    elif args.model == "F":
        P = poly.emit_F(n)
    else:
        P = poly.emit_H(n)
    census = P.census()
    _emit({
        "model": args.model,
        "n": n,
        "census": {str(k): {"generators": t, "marked": m} for k, (t, m) in census.items()},
        "polygraph": P.to_json(),
    })
    return 0


def _parse_pin(P: poly.Polygraph, text: str) -> tuple[str, Cell]:
    if "=" not in text:
        raise UsageError(f"--pin expects name=cell, got {text!r}")
    name, cell = text.split("=", 1)
    if name not in P:
        raise UsageError(f"unknown generator {name!r}")
    return name, Cell(P[name].dim, cell)


def cmd_solve_lift(args) -> int:
    P = poly.Polygraph.from_json(_load(args.pres))
    f = _load_functor(args.functor)
    target_doc = _load(args.target)
    missing = [g.name for g in P.generators if g.name not in target_doc]
    if missing:
        raise UsageError(f"target assignment lacks {missing}")
    target = {g.name: Cell(g.dim, target_doc[g.name]) for g in P.generators}
    pins = dict(_parse_pin(P, t) for t in args.pin)
    problem = lift.LiftingProblem(P, pins, f, target)
    errors = problem.check()
    if errors:
        _emit({"solved": False, "errors": errors})
        return 1
    sol = lift.solve_lift(problem, **_budget(args))
    _emit({"solved": sol is not None, "lift": None if sol is None else {k: v.name for k, v in sorted(sol.items())}})
    return 0 if sol is not None else 1


def cmd_cylinder(args) -> int:
    X = _load_cat(args.file)
    if not 0 <= args.level < X.d:
        raise UsageError(f"--level must lie in 0..{X.d - 1}")
    memo: dict = {}
    cyls = cyl.enumerate_cylinders(X, args.level, memo)
    doc: dict = {"level": args.level, "count": len(cyls), "cylinders": [U.to_json() for U in cyls]}
    code = 0
    if args.check_projections:
        v = cyl.check_projections_trivfib(X, args.level, memo)
        doc["projections"] = v.to_json()
        code = 0 if v else 1
    _emit(doc)
    return code


def cmd_quotient(args) -> int:
    X = _load_cat(args.file)
    if args.level == 1:
        Q = quot.tau1(X)
        ax = quot.check_category_axioms(Q)
        doc = {"level": 1, "quotient": Q.to_json(), "axioms": ax.to_json()}
        ok = ax.ok and not Q.log
    else:
        if X.d < 2:
            raise UsageError("--level 2 needs trunc_dim >= 2")
        T = quot.tau2(X)
        ax = quot.check_two_category_axioms(T)
        doc = {"level": 2, "quotient": T.to_json(), "axioms": ax.to_json()}
        ok = ax.ok and not T.log
    doc["isos"] = {u.name: quot.iso_in_quotient(X, u, args.level) for u in X.cells(1)}
    _emit(doc)
    return 0 if ok else 1


_CORPUS_CHECKS = sorted(laws.LAWS) + ["all"]


def _run_law(job: tuple[str, corpus.CorpusSpec, int]) -> dict:
    name, spec, budget = job
    entries = corpus.generate_corpus(spec)
    fn = laws.LAWS[name]
    if name in ("trivfib-decomposition", "rlp-equifib"):
        return fn(entries, budget=budget).to_json()
    return fn(entries).to_json()


def cmd_corpus(args) -> int:
    spec = corpus.CorpusSpec(seed=args.seed, count=args.count, files=list(args.file))
    names = sorted(laws.LAWS) if args.check == "all" else [args.check]
    jobs = [(n, spec, args.budget or 20_000) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_run_law, jobs))
    else:
        reports = [_run_law(j) for j in jobs]
    entries = corpus.generate_corpus(spec)
    _emit({
        "seed": args.seed,
        "instances": [e.name for e in entries],
        "reports": reports,
        "holds": all(r["holds"] for r in reports),
    })
    return 0 if all(r["holds"] for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="omegacat", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="cap on enumeration or search size")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="validate a globular set, category, functor or polygraph")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("equivs", parents=[common], help="spherical and flat equivalences of a category")
    s.add_argument("file")
    s.set_defaults(run=cmd_equivs)

    s = sub.add_parser("check-fib", parents=[common], help="fibration properties of a functor")
    s.add_argument("file")
    s.add_argument("--mode", choices=["equi", "weq", "trivfib", "gaunt", "rlp"], required=True)
    s.add_argument("--beyond-truncation", action="store_true",
                   help="also check one dimension above the truncation")
    s.set_defaults(run=cmd_check_fib)

    s = sub.add_parser("gen-walking", parents=[common], help="emit a presentation of a walking equivalence")
    s.add_argument("--model", choices=["ladder", "witness", "or", "F", "H"], required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--dim", type=int, default=4)
    s.set_defaults(run=cmd_gen_walking)

    s = sub.add_parser("solve-lift", parents=[common], help="solve a lifting problem against a presentation")
    s.add_argument("--pres", required=True)
    s.add_argument("--functor", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--pin", action="append", default=[], metavar="NAME=CELL")
    s.set_defaults(run=cmd_solve_lift)

    s = sub.add_parser("cylinder", parents=[common], help="enumerate cylinders of a category")
    s.add_argument("file")
    s.add_argument("--level", type=int, default=0)
    s.add_argument("--check-projections", action="store_true")
    s.set_defaults(run=cmd_cylinder)

    s = sub.add_parser("quotient", parents=[common], help="quotient category or 2-category by similarity")
    s.add_argument("file")
    s.add_argument("--level", type=int, choices=[1, 2], default=1)
    s.set_defaults(run=cmd_quotient)

    s = sub.add_parser("corpus", parents=[common], help="run a law over the seeded corpus")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=120)
    s.add_argument("--check", choices=_CORPUS_CHECKS, default="all")
    s.add_argument("--file", action="append", default=[], help="extra category JSON to include")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(run=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except UsageError as exc:
        _emit({"error": "usage", "message": str(exc)})
        return 2
    except BudgetExceeded as exc:
        _emit({"error": "budget", "message": str(exc)})
        return 2
    except FileNotFoundError as exc:
        _emit({"error": "usage", "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
