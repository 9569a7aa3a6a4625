"""Command-line front end.

Every invocation is first turned into an :class:`ExperimentConfig` (command
plus flags), so ``hyperfin run CONFIG.json`` replays any run.  Reports are
deterministic JSON; the only run-dependent field is ``timing``.

Seed split: the root ``--seed`` is used directly by the partitioner and
generators; colorings use ``derive(seed, "color", "ref"|"target")`` and the
transfer peel uses ``derive(seed, "peel")``.
"""

from __future__ import annotations

import argparse
import dataclasses
import inspect
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, seeds
from .census import equipartition_check
from .generators import FAMILIES
from .graph import (GraphError, components, load_edge_list, read_graph, remove_edges,
                    remove_vertex_edges, serialize)
from .localglobal import d_lg
from .matching import d_strong_upper
from .oracle import (SubgraphRule, apply_subgraph_rule, apply_vertex_rule, b_color, collision_mass,
                     encode_subgraph, learn_partition_rule, max_component, vertex_rule_from_json,
                     vertex_rule_to_json)
from .partition import Infeasible, iso_peel, verify_partition
from .schreier import decode_action, encode_action, parse_action, schreier_graph, serialize_action
from .stats import METRIC_NAME, ball_distribution, convergence_report, d_stat, per_radius_tv

SCHEMA_ID = "hyperfin-report/1"
EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


@dataclasses.dataclass
class ExperimentConfig:
    command: str
    args: dict

    def to_json(self) -> dict:
        return {"command": self.command, "args": dict(sorted(self.args.items()))}

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentConfig":
        if "command" not in doc:
            raise ValueError("config needs a 'command'")
        return cls(doc["command"], dict(doc.get("args", {})))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_json(json.loads(Path(path).read_text()))


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bytes):
        return x.hex()
    if isinstance(x, dict):
        return {str(jsonable(k)) if not isinstance(k, str) else k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return jsonable(dataclasses.asdict(x))
    return x


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _graph(args, key):
    return read_graph(args[key], args.get("d"))


# ---- command handlers: (args dict) -> (result dict, seeds dict) ----

def cmd_generate(a):
    fn, params = FAMILIES[a["family"]]
    values = [int(p) for p in a["params"]]
    if len(values) != len(params):
        raise ValueError(f"{a['family']} takes parameters {params}")
    seeded = "seed" in inspect.signature(fn).parameters
    G = fn(*values, a["seed"]) if seeded else fn(*values)
    write_atomic(a["out"], serialize(G))
    return {"family": a["family"], "params": values, "n": G.n, "m": G.m, "d": G.d, "out": a["out"]}, {"seed": a["seed"]}


def cmd_stats(a):
    G = _graph(a, "file")
    dist = ball_distribution(G, a["r"])
    entries = [{"key": k.hex(), "count": dist.counts[k], "prob": p} for k, p in sorted(dist.probs.items())]
    return {"radius": a["r"], "entries": entries, "n": G.n, "d": G.d}, {}


def cmd_dstat(a):
    G, H = _graph(a, "file1"), _graph(a, "file2")
    return {"metric": METRIC_NAME, "radius": a["r"], "distance": d_stat(G, H, a["r"]),
            "per_radius_tv": per_radius_tv(G, H, a["r"])}, {}


def cmd_converge(a):
    graphs = [read_graph(p, a.get("d")) for p in a["files"]]
    rep = convergence_report(graphs, a["r"])
    rep.pop("traces")
    return rep, {}


def cmd_partition(a):
    G = _graph(a, "file")
    P = iso_peel(G, a["eps"], a["K"], a["seed"])
    ver = verify_partition(G, P)
    return {"eps": a["eps"], "K": a["K"], "cut": [list(e) for e in P.cut],
            "verification": ver, "peel_log_digest": P.digest(), "n_peeled_sets": len(P.peel_log)}, {"seed": a["seed"]}


def cmd_equipartition(a):
    G, H = _graph(a, "file1"), _graph(a, "file2")
    rep = equipartition_check(G, H, a["eps"], a["K"], a["delta"], a["seed"])
    if rep.get("infeasible"):
        raise Infeasible(rep["residual"], [], rep["eps"], a["K"])
    rep.pop("partitions")
    cG, cH = rep.pop("censuses")
    rep["census_G"] = {k.decode(): v for k, v in sorted(cG.c.items())}
    rep["census_H"] = {k.decode(): v for k, v in sorted(cH.c.items())}
    return rep, {"seed": a["seed"]}


def cmd_match(a):
    G, H = _graph(a, "file1"), _graph(a, "file2")
    rep = d_strong_upper(G, H, a["eps"], a["K"], a["seed"])
    rho = rep.pop("rho")
    if a.get("permutation"):
        rep["permutation"] = rho.forward
    rep["delta"] = a["delta"]
    rep["pass"] = rep["bound"] < Fraction(str(a["delta"]))
    return rep, {"seed": a["seed"]}


def cmd_localglobal(a):
    G, H = _graph(a, "file1"), _graph(a, "file2")
    rep = d_lg(G, H, a["k_max"], a["r"], (a["budget_random"], a["budget_opt"]), a["seed"])
    return rep, {"seed": a["seed"]}


def cmd_transfer(a):
    if a["action"] == "learn":
        G = _graph(a, "ref")
        col = b_color(G, a["s"], seeds.derive(a["seed"], "color", "ref"))
        P = iso_peel(G, a["eps"], a["K"], seeds.derive(a["seed"], "peel"))
        if a["mode"] == "vertex":
            rule = learn_partition_rule(G, col, P, a["r"], a["s"])
            doc = {"mode": "vertex", **vertex_rule_to_json(rule)}
            size = len(rule.accept)
        else:
            rule = encode_subgraph(G, col, remove_edges(G, P.cut), a["r"], a["s"])
            doc = {"mode": "subgraph", **rule.to_json()}
            size = len(rule.table)
        write_atomic(a["rule"], json.dumps(doc, sort_keys=True) + "\n")
        return {"mode": a["mode"], "rule": a["rule"], "rule_size": size,
                "cut_size": len(P.cut), "collision_mass": collision_mass(G, col, a["r"])}, {"seed": a["seed"]}
    G = _graph(a, "target")
    doc = json.loads(Path(a["rule"]).read_text())
    col = b_color(G, doc["s"], seeds.derive(a["seed"], "color", "target"))
    if doc["mode"] == "vertex":
        rule = vertex_rule_from_json(doc)
        VA = apply_vertex_rule(G, col, rule)
        Gp = remove_vertex_edges(G, VA)
        res = {"mode": "vertex", "selected": len(VA), "selected_fraction": Fraction(len(VA), G.n),
               "max_component": max_component(Gp)}
    else:
        rule = SubgraphRule.from_json(doc)
        diag: dict = {}
        Gp = apply_subgraph_rule(G, col, rule, diag)
        res = {"mode": "subgraph", "edges_kept": Gp.m, "max_component": max_component(Gp), **diag}
    if a.get("out"):
        write_atomic(a["out"], serialize(Gp))
    return res, {"seed": a["seed"]}


def cmd_schreier(a):
    text = Path(a["file"]).read_text()
    if a["action"] == "encode":
        act = parse_action(text)
        mg = encode_action(act)
        if a.get("out"):
            write_atomic(a["out"], serialize(mg.graph))
        return {"m": act.m, "n_gens": act.n_gens, "n": mg.graph.n, "edges": mg.graph.m,
                "degree_bound": mg.degree_bound, "step_counts": mg.step_counts}, {}
    G = load_edge_list(text)
    act = decode_action(G, a["n_gens"])
    if a.get("out"):
        write_atomic(a["out"], serialize_action(act))
    return {"m": act.m, "n_gens": act.n_gens, "action": serialize_action(act),
            "orbits": len(components(schreier_graph(act).graph))}, {}


HANDLERS = {
    "generate": cmd_generate,
    "stats": cmd_stats,
    "dstat": cmd_dstat,
    "converge": cmd_converge,
    "partition": cmd_partition,
    "equipartition": cmd_equipartition,
    "match": cmd_match,
    "localglobal": cmd_localglobal,
    "transfer": cmd_transfer,
    "schreier": cmd_schreier,
}


def run(config: ExperimentConfig) -> tuple[dict, int]:
    """Execute a config; return the report and the exit code."""
    if config.command not in HANDLERS:
        raise ValueError(f"unknown command {config.command!r}")
    t0 = time.perf_counter()
    status, code, used_seeds = "ok", EXIT_OK, {}
    try:
        result, used_seeds = HANDLERS[config.command](config.args)
    except Infeasible as exc:
        status, code = "infeasible", EXIT_INFEASIBLE
        result = {"message": str(exc), "residual": exc.residual}
    report = {
        "schema": SCHEMA_ID,
        "tool_version": __version__,
        "command": config.command,
        "config": config.to_json(),
        "seeds": used_seeds,
        "status": status,
        "exit_code": code,
        "result": result,
        "timing": {"wall_seconds": time.perf_counter() - t0},
    }
    return jsonable(report), code


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperfin", description="Local statistics and hyperfinite partitions of bounded-degree graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        sp.add_argument("--json", action="store_true", help="print the report to stdout")
        sp.add_argument("--report", help="write the report to this path")
        sp.add_argument("--d", type=int, default=None, help="override the degree bound in the file header")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("generate")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("params", nargs="*")
    sp.add_argument("--out", required=True)
    common(sp)

    sp = sub.add_parser("stats")
    sp.add_argument("file")
    sp.add_argument("-r", type=int, default=1)
    common(sp, seed=False)

    sp = sub.add_parser("dstat")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("-r", type=int, default=4)
    common(sp, seed=False)

    sp = sub.add_parser("converge")
    sp.add_argument("files", nargs="+")
    sp.add_argument("-r", type=int, default=4)
    common(sp, seed=False)

    for name in ("partition",):
        sp = sub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--eps", type=float, required=True)
        sp.add_argument("--K", type=int, required=True)
        common(sp)

    for name in ("equipartition", "match"):
        sp = sub.add_parser(name)
        sp.add_argument("file1")
        sp.add_argument("file2")
        sp.add_argument("--eps", type=float, required=True)
        sp.add_argument("--K", type=int, required=True)
        sp.add_argument("--delta", type=float, default=0.1)
        if name == "match":
            sp.add_argument("--permutation", action="store_true", help="include the full permutation")
        common(sp)

    sp = sub.add_parser("localglobal")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--k-max", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--budget-random", type=int, default=8)
    sp.add_argument("--budget-opt", type=int, default=4)
    common(sp)

    sp = sub.add_parser("transfer")
    sp.add_argument("action", choices=["learn", "apply"])
    sp.add_argument("--ref")
    sp.add_argument("--target")
    sp.add_argument("--mode", choices=["vertex", "subgraph"], default="vertex")
    sp.add_argument("--rule", required=True, help="rule JSON written by learn, read by apply")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--s", type=int, default=64)
    sp.add_argument("--eps", type=float, default=1.2)
    sp.add_argument("--K", type=int, default=25)
    sp.add_argument("--out", help="apply: write the resulting graph here")
    common(sp)

    sp = sub.add_parser("schreier")
    sp.add_argument("action", choices=["encode", "decode"])
    sp.add_argument("file")
    sp.add_argument("--n-gens", type=int, help="decode: number of generators")
    sp.add_argument("--out")
    common(sp, seed=False)

    sp = sub.add_parser("run", help="replay a stored ExperimentConfig")
    sp.add_argument("config")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--report")
    return p


def _validate(cfg: ExperimentConfig):
    a = cfg.args
    if cfg.command == "transfer":
        need = "ref" if a.get("action") == "learn" else "target"
        if not a.get(need):
            raise ValueError(f"transfer {a.get('action')} needs --{need}")
    if cfg.command == "schreier" and a.get("action") == "decode" and not a.get("n_gens"):
        raise ValueError("schreier decode needs --n-gens")


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    args = vars(ns)
    command = args.pop("command")
    show, report_path = args.pop("json", False), args.pop("report", None)
    try:
        cfg = ExperimentConfig.load(args["config"]) if command == "run" else ExperimentConfig(command, args)
        _validate(cfg)
        report, code = run(cfg)
    except (GraphError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"hyperfin: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = dump_report(report)
    if report_path:
        write_atomic(report_path, text)
    if show or not report_path:
        sys.stdout.write(text)
    if code == EXIT_INFEASIBLE:
        print(f"hyperfin: infeasible: {report['result']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
