"""Command-line front end.

Subcommands: ``solve`` (run one algorithm on one instance), ``verify`` (check
a solution document against an instance), ``reduce`` (build a path instance
from a cubic-graph or Threshold Set file), ``gen`` (random instances),
``distance`` (report the distance to disjoint paths), and ``bench`` (run the
whole solver battery over a corpus and flag disagreements).

Exit codes: 0 success; 2 a structural precondition failed (wrong graph class,
unsupported mode, no deletion set within the bound); 3 path enumeration
overflowed its cap; 1 anything else (bad input, I/O, failed verification).

Solve and bench emit the ``ecpaths-run/1`` JSON document described in the
README; records are deterministic for fixed seeds apart from the
``elapsed_ms`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import corpus
from .color_coding import (
    IdentityStrategy,
    RandomStrategy,
    WitnessStrategy,
    solve_l_cddp,
    solve_l_cdp,
)
from .errors import EnumerationOverflow, ParseError, PreconditionError, SolverError
from .graph import (
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    instance_digest,
    parse_instance,
    serialize_instance,
    solution,
    validate_solution,
)
from .oracle import DEFAULT_PATH_CAP, solve_exact
from .poly import (
    per_color_heuristic,
    solve_disjoint_paths_cdp,
    solve_single_color_flow,
    solve_tree_cddp,
)
from .reductions import (
    ensure_coverage,
    gen_disjoint_paths_instance,
    gen_near_disjoint_paths_instance,
    gen_random_cubic,
    gen_random_instance,
    gen_random_ts,
    gen_tree_instance,
    parse_cubic_graph,
    parse_threshold_set,
    reduce_isc_to_cddp,
    reduce_ts_to_cdp,
    serialize_cubic_graph,
    serialize_threshold_set,
)
from .vertex_cover import approx_cddp_vc, decompose_cdp, solve_cdp_vc
from .xp import find_deletion_set, solve_xp_cdp

RUN_FORMAT = "ecpaths-run/1"
BENCH_FORMAT = "ecpaths-bench/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PRECONDITION = 2
EXIT_OVERFLOW = 3

ALGORITHMS = (
    "oracle",
    "flow",
    "per-color",
    "tree",
    "disjoint-paths",
    "xp",
    "color-coding",
    "vc-fpt",
    "vc-approx",
)


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    mode: str
    params: dict
    value: int
    paths: list
    stats: dict
    elapsed_ms: float
    format: str = RUN_FORMAT

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _paths_payload(sol: PathSolution) -> list:
    return [{"color": p.color, "vertices": list(p.vertices)} for p in sol.sorted_paths()]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _strategy_from_args(args, inst: ProblemInstance):
    if args.strategy == "random":
        return RandomStrategy(trials=args.trials, seed=args.seed)
    if args.strategy == "identity":
        return IdentityStrategy()
    # Witness mode derives the labeling from an exhaustive solve, which makes
    # the run a deterministic cross-check of the tables rather than a search.
    opt = solve_exact(inst)
    return WitnessStrategy(tuple(opt.sorted_paths()))


def _dispatch_solve(args, inst: ProblemInstance) -> tuple[PathSolution, dict]:
    algo = args.algo
    stats: dict = {}
    if algo == "oracle":
        return solve_exact(inst, cap=args.path_cap), stats
    if algo == "flow":
        if inst.mode is not Mode.CDP:
            raise PreconditionError("flow solves the disjoint (cdp) problem only")
        color = args.color
        if color is None:
            if inst.graph.q != 1:
                raise PreconditionError("--color is required unless the graph has one color")
            color = inst.graph.colors[0]
        stats["color"] = color
        return solve_single_color_flow(inst, color), stats
    if algo == "per-color":
        if inst.mode is not Mode.CDP:
            raise PreconditionError("per-color solves the disjoint (cdp) problem only")
        return per_color_heuristic(inst), stats
    if algo == "tree":
        # Accepted for either mode, but the guarantee is for cddp; the value
        # is a lower bound when read as a cdp answer.
        sol = solve_tree_cddp(inst)
        if inst.mode is Mode.CDP:
            stats["note"] = "tree solver optimizes the color-disjoint variant"
        return sol, stats
    if algo == "disjoint-paths":
        if inst.mode is not Mode.CDP:
            raise PreconditionError("disjoint-paths solves the disjoint (cdp) problem only")
        return solve_disjoint_paths_cdp(inst), stats
    if algo == "xp":
        if inst.mode is not Mode.CDP:
            raise PreconditionError("xp solves the disjoint (cdp) problem only")
        ds = find_deletion_set(inst.graph, inst.source, inst.target, args.distance_max)
        if ds is None:
            raise PreconditionError(
                f"no deletion set of size <= {args.distance_max} exists"
            )
        stats["deletion_set"] = sorted(ds.vertices)
        return solve_xp_cdp(inst, ds), stats
    if algo == "color-coding":
        if args.target is None:
            raise PreconditionError("color-coding needs --target")
        l = args.max_len if args.max_len is not None else inst.length_bound
        if l is None:
            raise PreconditionError("color-coding needs --max-len (or an 'l' record)")
        strategy = _strategy_from_args(args, inst)
        runner = solve_l_cddp if inst.mode is Mode.CDDP else solve_l_cdp
        plain = ProblemInstance(inst.graph, inst.source, inst.target, None, inst.mode)
        result = runner(plain, l, args.target, strategy, require_full=args.full_labels)
        stats.update(
            {
                "accepted": result.accepted,
                "labelings_tried": result.labelings_tried,
                "target": args.target,
                "max_len": l,
                "strategy": args.strategy,
            }
        )
        sol = result.witness if result.witness is not None else solution([], inst.mode)
        return sol, stats
    if algo == "vc-fpt":
        if inst.mode is not Mode.CDP:
            raise PreconditionError("vc-fpt solves the disjoint (cdp) problem only")
        dec = decompose_cdp(inst)
        sol = solve_cdp_vc(inst)
        stats.update(
            {
                "greedy_prefix": dec.prefix.value,
                "cover_size": dec.k,
                "residual_length_bound": 2 * dec.k,
            }
        )
        return sol, stats
    if algo == "vc-approx":
        if inst.mode is not Mode.CDDP:
            raise PreconditionError("vc-approx solves the color-disjoint (cddp) problem only")
        sol, cert = approx_cddp_vc(inst)
        stats.update(cert)
        stats["guarantee"] = "value >= ceil(optimum / 2)"
        return sol, stats
    raise PreconditionError(f"unknown algorithm {algo!r}")


def cmd_solve(args) -> int:
    inst = parse_instance(_read_text(args.instance), Mode(args.mode))
    if args.max_len is not None and args.algo != "color-coding":
        inst = ProblemInstance(
            inst.graph, inst.source, inst.target, args.max_len, inst.mode
        )
    started = time.perf_counter()
    sol, stats = _dispatch_solve(args, inst)
    elapsed = (time.perf_counter() - started) * 1000.0
    report = validate_solution(inst, sol)
    if report:  # pragma: no cover - would be a solver bug
        raise SolverError("solver produced an infeasible solution: " + report[0])
    record = RunRecord(
        instance=instance_digest(inst),
        algorithm=args.algo,
        mode=inst.mode.value,
        params={
            "seed": args.seed,
            "trials": args.trials,
            "max_len": args.max_len,
            "target": args.target,
            "distance_max": args.distance_max,
        },
        value=sol.value,
        paths=_paths_payload(sol),
        stats=stats,
        elapsed_ms=round(elapsed, 3),
    )
    print(record.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read_text(args.instance))
    doc = json.loads(_read_text(args.solution))
    mode = Mode(doc.get("mode", "cdp"))
    inst = inst.with_mode(mode)
    paths = [UniColorPath(tuple(p["vertices"]), p["color"]) for p in doc.get("paths", [])]
    sol = solution(paths, mode)
    problems = validate_solution(inst, sol)
    if "value" in doc and doc["value"] != sol.value:
        problems.append(f"declared value {doc['value']} != {sol.value} paths")
    if "instance" in doc and doc["instance"] != instance_digest(inst):
        problems.append("instance digest mismatch")
    if problems:
        for p in problems:
            print(f"FAIL: {p}")
        return EXIT_ERROR
    print(f"OK: {sol.value} feasible {mode.value} path(s)")
    return EXIT_OK


def cmd_reduce(args) -> int:
    text = _read_text(args.input)
    if args.source == "isc":
        inst, cert = reduce_isc_to_cddp(parse_cubic_graph(text))
    else:
        ts = parse_threshold_set(text)
        if args.ensure_coverage:
            ts = ensure_coverage(ts)
        inst, cert = reduce_ts_to_cdp(ts)
    _write_text(args.out, serialize_instance(inst))
    if args.certificate:
        payload = {
            "source_digest": cert.source_digest,
            "vertex_roles": {str(k): list(v) for k, v in sorted(cert.vertex_roles.items())},
            "color_roles": {k: list(v) for k, v in sorted(cert.color_roles.items())},
        }
        _write_text(args.certificate, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "cubic":
        text = serialize_cubic_graph(gen_random_cubic(args.n, args.seed))
    elif kind == "ts":
        ts = gen_random_ts(args.n, args.sets, args.max_weight, args.seed)
        if args.ensure_coverage:
            ts = ensure_coverage(ts)
        text = serialize_threshold_set(ts)
    elif kind == "random":
        inst = gen_random_instance(
            args.n, args.q, args.edge_prob, args.colors_per_edge, args.seed
        )
        text = serialize_instance(inst)
    elif kind == "tree":
        text = serialize_instance(gen_tree_instance(args.n, args.q, args.seed))
    elif kind == "disjoint-paths":
        text = serialize_instance(gen_disjoint_paths_instance(args.n, args.q, args.seed))
    else:
        text = serialize_instance(
            gen_near_disjoint_paths_instance(args.n, args.hubs, args.q, args.seed)
        )
    _write_text(args.out, text)
    return EXIT_OK


def cmd_distance(args) -> int:
    inst = parse_instance(_read_text(args.instance))
    ds = find_deletion_set(inst.graph, inst.source, inst.target, args.distance_max)
    if ds is None:
        print(
            json.dumps(
                {"found": False, "distance_max": args.distance_max}, sort_keys=True
            )
        )
        return EXIT_PRECONDITION
    # Two conventions are in circulation: counting only the deletion set, or
    # also counting the terminals removed for free.  --count-st reports the
    # latter.
    distance = len(ds.vertices) + (2 if args.count_st else 0)
    print(
        json.dumps(
            {
                "found": True,
                "distance": distance,
                "deletion_set": sorted(ds.vertices),
                "count_st": args.count_st,
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


# -- bench -------------------------------------------------------------------


@dataclass
class BenchRow:
    instance: str
    algorithm: str
    mode: str
    value: int | None
    oracle: int | None
    status: str
    note: str = ""


def _bench_corpus(seed_count: int) -> list[tuple[str, ProblemInstance]]:
    out: list[tuple[str, ProblemInstance]] = [
        ("two-route-trap", corpus.two_route_trap(Mode.CDP)),
        ("gadget-k4", corpus.gadget_demo()),
        ("threshold-demo", corpus.threshold_demo()),
    ]
    for seed in range(seed_count):
        out.append(
            (f"random-{seed}", gen_random_instance(9, 3, 0.35, 2, seed, Mode.CDP))
        )
    return out


def _bench_instance(name: str, inst: ProblemInstance) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for mode in (Mode.CDP, Mode.CDDP):
        opt = solve_exact(inst.with_mode(mode)).value
        rows.append(BenchRow(name, "oracle", mode.value, opt, opt, "ok"))
        runners = _mode_runners(mode)
        for algo, fn in runners:
            try:
                sol = fn(inst.with_mode(mode))
            except PreconditionError as exc:
                rows.append(BenchRow(name, algo, mode.value, None, opt, "skipped", str(exc)))
                continue
            bad = validate_solution(inst.with_mode(mode), sol)
            if bad:
                rows.append(BenchRow(name, algo, mode.value, sol.value, opt, "infeasible", bad[0]))
                continue
            status = _judge(algo, sol.value, opt, inst)
            rows.append(BenchRow(name, algo, mode.value, sol.value, opt, status))
    return rows


def _mode_runners(mode: Mode):
    from .color_coding import max_bounded_paths

    def exact_dp(inst: ProblemInstance) -> PathSolution:
        bound = max(inst.graph.vertex_count - 1, 1)
        cap = inst.graph.q if mode is Mode.CDDP else inst.graph.vertex_count
        _, sol = max_bounded_paths(inst, bound, max(cap, 1), mode)
        return sol

    if mode is Mode.CDP:
        return [
            ("per-color", per_color_heuristic),
            ("disjoint-paths", solve_disjoint_paths_cdp),
            ("xp", _bench_xp),
            ("vc-fpt", solve_cdp_vc),
            ("color-coding", exact_dp),
        ]
    return [
        ("tree", solve_tree_cddp),
        ("vc-approx", lambda inst: approx_cddp_vc(inst)[0]),
        ("color-coding", exact_dp),
    ]


def _bench_xp(inst: ProblemInstance) -> PathSolution:
    ds = find_deletion_set(inst.graph, inst.source, inst.target, 2)
    if ds is None:
        raise PreconditionError("no deletion set of size <= 2")
    return solve_xp_cdp(inst, ds)


def _judge(algo: str, value: int, opt: int, inst: ProblemInstance) -> str:
    exact = {"disjoint-paths", "xp", "vc-fpt", "color-coding", "tree"}
    if algo in exact:
        return "ok" if value == opt else "mismatch"
    if algo == "per-color":
        q = max(inst.graph.q, 1)
        return "ok" if value * q >= opt else "ratio-violation"
    if algo == "vc-approx":
        return "ok" if 2 * value >= opt and value <= opt else "ratio-violation"
    return "ok"


def cmd_bench(args) -> int:
    items = _bench_corpus(args.seeds)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(lambda it: _bench_instance(*it), items))
    else:
        chunks = [_bench_instance(name, inst) for name, inst in items]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.instance, r.mode, r.algorithm))
    flagged = [r for r in rows if r.status not in ("ok", "skipped")]
    payload = {
        "format": BENCH_FORMAT,
        "rows": [asdict(r) for r in rows],
        "flagged": len(flagged),
    }
    _write_text(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.out not in (None, "-"):
        print(f"{len(rows)} rows, {len(flagged)} flagged -> {args.out}")
    return EXIT_OK if not flagged else EXIT_ERROR


# -- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecpaths",
        description="Solvers for maximum disjoint uni-color path problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one algorithm on one instance")
    p_solve.add_argument("instance", help="ECG file ('-' for stdin)")
    p_solve.add_argument("--algo", required=True, choices=ALGORITHMS)
    p_solve.add_argument("--mode", default="cdp", choices=["cdp", "cddp"])
    p_solve.add_argument("--color", help="color for --algo flow")
    p_solve.add_argument("--max-len", type=int, default=None, dest="max_len")
    p_solve.add_argument("--target", type=int, default=None)
    p_solve.add_argument("--trials", type=int, default=200)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument(
        "--strategy", default="identity", choices=["identity", "random", "witness"]
    )
    p_solve.add_argument("--full-labels", action="store_true", dest="full_labels")
    p_solve.add_argument("--distance-max", type=int, default=3, dest="distance_max")
    p_solve.add_argument(
        "--path-cap",
        type=int,
        default=DEFAULT_PATH_CAP,
        dest="path_cap",
        help="abort oracle enumeration beyond this many paths (exit 3)",
    )
    p_solve.set_defaults(fn=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a solution document")
    p_verify.add_argument("instance")
    p_verify.add_argument("solution")
    p_verify.set_defaults(fn=cmd_verify)

    p_reduce = sub.add_parser("reduce", help="build an instance from a source problem")
    p_reduce.add_argument("input")
    p_reduce.add_argument("--from", dest="source", required=True, choices=["isc", "thresholdset"])
    p_reduce.add_argument("--out", default=None)
    p_reduce.add_argument("--certificate", default=None)
    p_reduce.add_argument("--ensure-coverage", action="store_true", dest="ensure_coverage")
    p_reduce.set_defaults(fn=cmd_reduce)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument(
        "--kind",
        required=True,
        choices=["cubic", "random", "tree", "disjoint-paths", "near-disjoint-paths", "ts"],
    )
    p_gen.add_argument("--n", type=int, default=10)
    p_gen.add_argument("--q", type=int, default=3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--edge-prob", type=float, default=0.35, dest="edge_prob")
    p_gen.add_argument("--colors-per-edge", type=int, default=2, dest="colors_per_edge")
    p_gen.add_argument("--sets", type=int, default=4)
    p_gen.add_argument("--max-weight", type=int, default=2, dest="max_weight")
    p_gen.add_argument("--hubs", type=int, default=1)
    p_gen.add_argument("--ensure-coverage", action="store_true", dest="ensure_coverage")
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(fn=cmd_gen)

    p_dist = sub.add_parser("distance", help="distance to disjoint paths")
    p_dist.add_argument("instance")
    p_dist.add_argument("--distance-max", type=int, default=4, dest="distance_max")
    p_dist.add_argument("--count-st", action="store_true", dest="count_st")
    p_dist.set_defaults(fn=cmd_distance)

    p_bench = sub.add_parser("bench", help="run the solver battery over a corpus")
    p_bench.add_argument("--seeds", type=int, default=20)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(fn=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except EnumerationOverflow as exc:
        print(f"enumeration overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (ParseError, SolverError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
