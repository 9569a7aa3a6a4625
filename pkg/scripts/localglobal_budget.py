"""Budget-doubling stability diagnostic for the truncated local-global
distance.  Each row reruns d_lg with both cloud budgets doubled and logs the
change of the estimate."""

import argparse
import json

from hyperfin import generators as gen
from hyperfin.cli import jsonable
from hyperfin.localglobal import d_lg

PAIRS = {
    "cycles": lambda: (gen.cycle(100), gen.disjoint_copies(gen.cycle(50), 2)),
    "grids": lambda: (gen.grid(20, 20), gen.grid(21, 21)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pair", choices=sorted(PAIRS), default="cycles")
    ap.add_argument("--k-max", type=int, default=2)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--budgets", type=int, nargs=2, default=[4, 2])
    ap.add_argument("--doublings", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()

    G, H = PAIRS[a.pair]()
    rows, prev = [], None
    b = tuple(a.budgets)
    for _ in range(a.doublings + 1):
        rep = d_lg(G, H, a.k_max, a.r, b, a.seed)
        rows.append({"budgets": b, "value": rep["value"], "terms": rep["terms"],
                     "delta": None if prev is None else rep["value"] - prev})
        prev = rep["value"]
        b = (2 * b[0], 2 * b[1])
    print(json.dumps(jsonable({"config": vars(a), "runs": rows}), indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
