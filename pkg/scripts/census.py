"""Generator census of the walking-equivalence presentations, and a check that they agree.

    python3 scripts/census.py --n 1 --dim 7
"""
import argparse

from omegacat.poly import (
    emit_EF_witness,
    emit_OR,
    ladder_colimit,
    presentations_isomorphic,
    suspend_presentation,
)


def suspended_or(n, D):
    P = emit_OR(D - n + 1)
    for _ in range(n - 1):
        P = suspend_presentation(P)
    return P


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--dim", type=int, default=7)
    a = ap.parse_args()
    n, D = a.n, a.dim
    models = {"ladder": ladder_colimit(n, D), "witness": emit_EF_witness(n, D), "or": suspended_or(n, D)}
    print(f"{'dim':>4} " + " ".join(f"{k:>16}" for k in models))
    census = {k: P.census() for k, P in models.items()}
    for d in range(D + 1):
        row = " ".join(f"{census[k][d][0]:>8}/{census[k][d][1]:<7}" for k in models)
        print(f"{d:>4} {row}")
    print("(total/marked per dimension)")
    w = models["witness"]
    for k in ("ladder", "or"):
        print(f"witness ~ {k}: {presentations_isomorphic(w, models[k])}")


if __name__ == "__main__":
    main()
