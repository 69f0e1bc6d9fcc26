"""Run every corpus law over several seeds and write one JSON summary.

    python3 scripts/run_corpus.py --seeds 0 1 2 --out results/laws.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from omegacat.corpus import CorpusSpec, generate_corpus
from omegacat.laws import LAWS


@dataclass
class Experiment:
    seeds: list[int] = field(default_factory=lambda: [0])
    count: int = 120
    laws: list[str] = field(default_factory=lambda: sorted(LAWS))
    functor_budget: int = 20_000


def run(cfg: Experiment) -> dict:
    out = {"config": asdict(cfg), "runs": []}
    for seed in cfg.seeds:
        entries = generate_corpus(CorpusSpec(seed=seed, count=cfg.count))
        for name in cfg.laws:
            t = time.perf_counter()
            if name in ("trivfib-decomposition", "rlp-equifib"):
                rep = LAWS[name](entries, budget=cfg.functor_budget)
            else:
                rep = LAWS[name](entries)
            doc = rep.to_json()
            doc["seed"] = seed
            doc["seconds"] = round(time.perf_counter() - t, 2)
            out["runs"].append(doc)
            print(f"seed {seed:3d}  {name:22s} {'holds' if rep.holds else 'FAILS'}  "
                  f"cases={rep.cases:6d} skipped={rep.skipped}  {doc['seconds']:.1f}s", flush=True)
    out["holds"] = all(r["holds"] for r in out["runs"])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--count", type=int, default=120)
    ap.add_argument("--laws", nargs="+", choices=sorted(LAWS), default=sorted(LAWS))
    ap.add_argument("--budget", type=int, default=20_000)
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    res = run(Experiment(a.seeds, a.count, a.laws, a.budget))
    if a.out:
        a.out.parent.mkdir(parents=True, exist_ok=True)
        a.out.write_text(json.dumps(res, indent=2))
    raise SystemExit(0 if res["holds"] else 1)


if __name__ == "__main__":
    main()
