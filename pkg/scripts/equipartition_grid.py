"""Equipartition check between grid(w, w) and grid(w+1, w+1) over several
seeds: removed fractions and census L1 of the peeled pieces."""

import argparse
import json

from hyperfin import generators as gen
from hyperfin.census import equipartition_check
from hyperfin.cli import jsonable


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w", type=int, default=20)
    ap.add_argument("--eps", type=float, default=1.2)
    ap.add_argument("--K", type=int, default=25)
    ap.add_argument("--delta", type=float, default=0.5)
    ap.add_argument("--seeds", type=int, default=5)
    a = ap.parse_args()

    G, H = gen.grid(a.w, a.w), gen.grid(a.w + 1, a.w + 1)
    rows = []
    for s in range(a.seeds):
        rep = equipartition_check(G, H, a.eps, a.K, a.delta, s)
        rep["types_G"], rep["types_H"] = (len(c.mass) for c in rep.pop("censuses"))
        rep.pop("partitions")
        rows.append(rep)
    l1 = [r["census_l1"] for r in rows]
    out = {"config": vars(a), "runs": rows, "census_l1_max": max(l1), "census_l1_min": min(l1)}
    print(json.dumps(jsonable(out), indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
