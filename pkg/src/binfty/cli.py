"""Command-line entry points.

Exit codes: 0 when the requested verification fully succeeds (all pairs
eliminated, all checks pass), 2 when survivors / inconclusive pairs / check
failures remain, 1 on errors.  Reports are JSON with sorted keys; the only
fields that vary between identical runs are "timestamp" and "runtime_ms".

Environment overrides: BINFTY_PRIME for the base field, BINFTY_BUDGET for
the per-pair state budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import checker, geom, modp, quiver, strings


def _env_prime():
    return int(os.environ.get("BINFTY_PRIME", modp.DEFAULT_PRIME))


def _env_budget():
    return int(os.environ.get("BINFTY_BUDGET", 10**6))


@dataclass
class RunConfig:
    command: str
    graph: str = "A5"
    dims: str = ""
    word: str = ""
    model: str = "string"
    rank: int = 0
    depth: int = 6
    n: int = 2
    jobs: int = 1
    budget: int = 0
    seed: int = geom.DEFAULT_SEED
    prime: int = 0
    out: str = ""

    def __post_init__(self):
        if not self.prime:
            self.prime = _env_prime()
        if not self.budget:
            self.budget = _env_budget()


def build_parser():
    ap = argparse.ArgumentParser(
        prog="binfty",
        description="crystals on strings and on quiver-variety components, "
                    "with a singular-support checker for type-A Schubert varieties",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=geom.DEFAULT_SEED,
                        help="master seed (default %(default)s)")
        sp.add_argument("--prime", type=int, default=0,
                        help="base field (default BINFTY_PRIME or 2^31-1)")
        sp.add_argument("--out", default="", help="write the JSON report here")

    sp = sub.add_parser("orbits", help="enumerate nilpotent orbit keys")
    sp.add_argument("--graph", default="A5", help="path graph name, e.g. A5")
    sp.add_argument("--dims", required=True, help="comma-separated dimension vector")
    common(sp)

    sp = sub.add_parser("crystal", help="replay an operator word in one model")
    sp.add_argument("--word", required=True,
                    help="f-word, rightmost letter applied first, e.g. '2 1 3 2'")
    sp.add_argument("--model", choices=("string", "geom"), default="string")
    sp.add_argument("--rank", type=int, default=0,
                    help="rank of the path graph (default: largest letter)")
    common(sp)

    sp = sub.add_parser("check", help="run all Schubert pairs for one n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=int, default=0,
                    help="per-pair state budget (default BINFTY_BUDGET or 10^6)")
    common(sp)

    sp = sub.add_parser("verify-a5", help="verify the distinguished A_5 pair")
    sp.add_argument("--budget", type=int, default=0)
    common(sp)

    sp = sub.add_parser("verify-a8", help="verify the SL_8 flag configuration")
    sp.add_argument("--budget", type=int, default=0)
    common(sp)

    sp = sub.add_parser("xcheck", help="cross-check the two crystal models")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--depth", type=int, default=6,
                    help="maximal total weight explored")
    common(sp)

    return ap


def _emit(report, out, started):
    report = dict(report)
    report["runtime_ms"] = int((time.monotonic() - started) * 1000)
    report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    text = json.dumps(report, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def run(config):
    """Execute one subcommand; returns the process exit code."""
    started = time.monotonic()

    if config.command == "orbits":
        rank = int(config.graph.upper().lstrip("A"))
        graph = quiver.type_a(rank)
        dims = tuple(int(x) for x in config.dims.split(","))
        if len(dims) != rank:
            raise ValueError("dims length must match the graph rank")
        keys = geom.enumerate_orbits(graph, quiver.omega0(graph), dims, config.prime)
        report = {
            "graph": config.graph,
            "dims": list(dims),
            "count": len(keys),
            "orbits": [json.loads(k.to_json()) | {"segs": [list(s) for s in k.segs]}
                       for k in keys],
        }
        _emit(report, config.out, started)
        return 0

    if config.command == "crystal":
        word = strings.parse_word(config.word)
        rank = config.rank or (max(word) if word else 1)
        graph = quiver.type_a(rank)
        if config.model == "string":
            seq = strings.CofinalSequence(graph)
            b = strings.element_of_word(seq, word)
            report = {
                "model": "string",
                "word": strings.format_word(word),
                "coeffs": list(b.coeffs),
                "wt": {str(k): v for k, v in sorted(b.wt().items())},
                "eps": [b.eps(i) for i in graph.vertices],
                "phi": [b.phi(i) for i in graph.vertices],
                "eps_star": [strings.star_eps(b, i) for i in graph.vertices],
            }
        else:
            ctx = geom.GeomContext(graph, p=config.prime, seed=config.seed)
            key = geom.apply_word(ctx, word)
            report = {
                "model": "geom",
                "word": strings.format_word(word),
                "key": json.loads(key.to_json()),
                "segs": [list(s) for s in key.segs],
                "eps": [geom.component_eps(ctx, key, i) for i in graph.vertices],
                "eps_star": [geom.component_eps_star(ctx, key, i)
                             for i in graph.vertices],
            }
        _emit(report, config.out, started)
        return 0

    if config.command == "check":
        report = checker.check_conjecture(
            config.n, budget=config.budget, seed=config.seed,
            p=config.prime, jobs=config.jobs,
        )
        _emit(report, config.out, started)
        ok = not report["survivors"] and report["inconclusive"] == 0
        return 0 if ok else 2

    if config.command == "verify-a5":
        report = checker.verify_a5(seed=config.seed, p=config.prime,
                                   budget=config.budget)
        _emit(report, config.out, started)
        # a successful run reports the distinguished pair as a survivor,
        # which the exit-code contract maps to 2 (survivors present)
        return 2 if (report["survivors"] or not report["pass"]) else 0

    if config.command == "verify-a8":
        report = checker.verify_a8(seed=config.seed, p=config.prime,
                                   budget=config.budget)
        _emit(report, config.out, started)
        return 2 if (report["survivors"] or not report["pass"]) else 0

    if config.command == "xcheck":
        graph = quiver.type_a(config.rank)
        ctx = geom.GeomContext(graph, p=config.prime, seed=config.seed)
        seq = strings.CofinalSequence(graph)
        report = geom.model_isomorphism_check(ctx, seq, config.depth)
        report["seeds"] = {"master": config.seed, "prime": config.prime}
        _emit(report, config.out, started)
        return 0 if not report["mismatches"] else 2

    raise ValueError(f"unknown command {config.command}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    fields = {f: getattr(args, f) for f in vars(args) if f in RunConfig.__dataclass_fields__}
    config = RunConfig(**fields)
    try:
        return run(config)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
