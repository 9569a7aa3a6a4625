"""Transfer a peeled partition from a reference torus to a larger one, once
through the vertex-selection rule and once through the subgraph rule."""

import argparse
import json

from hyperfin import generators as gen
from hyperfin.cli import jsonable
from hyperfin.graph import remove_edges
from hyperfin.oracle import apply_subgraph_rule, b_color, encode_subgraph, transfer_partition
from hyperfin.partition import iso_peel
from hyperfin.seeds import derive
from hyperfin.stats import d_stat


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ref", type=int, default=40)
    ap.add_argument("--target", type=int, default=60)
    ap.add_argument("--eps", type=float, default=1.2)
    ap.add_argument("--K", type=int, default=25)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--s", type=int, default=16)
    ap.add_argument("--seeds", type=int, default=3)
    a = ap.parse_args()

    Gref, Gtar = gen.torus(a.ref, a.ref), gen.torus(a.target, a.target)
    vertex_runs = [transfer_partition(Gref, Gtar, a.eps, a.K, a.r, a.s, seed) for seed in range(a.seeds)]
    sub_runs = []
    for seed in range(a.seeds):
        Href = remove_edges(Gref, iso_peel(Gref, a.eps, a.K, derive(seed, "peel")).cut)
        rule = encode_subgraph(Gref, b_color(Gref, 64, derive(seed, "color", "ref")), Href, a.r, 64)
        report = {}
        Htar = apply_subgraph_rule(Gtar, b_color(Gtar, 64, derive(seed, "color", "target")), rule, report)
        sub_runs.append({"seed": seed, "rule_size": len(rule.table), "apply": report,
                         "kept_edge_fraction": f"{Htar.m}/{Gtar.m}", "d_stat_to_reference": d_stat(Href, Htar, 3)})
    out = {"config": vars(a), "vertex_rule": vertex_runs, "subgraph_rule": sub_runs}
    print(json.dumps(jsonable(out), indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
