"""Hardness-reduction constructions, their solution mappers, and generators.

Two constructions are implemented, each with bidirectional value-preserving
mappers so solutions can be cross-checked against brute force on the source
problem:

* independent set on cubic graphs -> color-disjoint path instances, via a
  per-vertex gadget of four vertices threaded between the terminals;
* Threshold Set -> disjoint path instances, one color per element, with one
  slot vertex per unit of set weight.

The random generators double as the test corpus factory; all of them are
deterministic in their seed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .errors import ParseError, ReductionError, SolverError
from .graph import (
    EdgeColoredGraph,
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    solution,
    validate_solution,
)

# -- source-problem instance types ----------------------------------------


@dataclass(frozen=True)
class CubicGraph:
    """Simple 3-regular graph; neighbor order is ascending vertex index."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def make(cls, vertex_count: int, edges) -> "CubicGraph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ReductionError(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ReductionError(f"edge ({u},{v}) out of range")
            norm.add((min(u, v), max(u, v)))
        return cls(vertex_count, frozenset(norm))

    def neighbors(self, v: int) -> list[int]:
        out = [b if a == v else a for a, b in self.edges if v in (a, b)]
        return sorted(out)

    def is_cubic(self) -> bool:
        return all(len(self.neighbors(v)) == 3 for v in range(self.vertex_count))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class ThresholdSetInstance:
    """Universe, an ordered collection of subsets, and per-set weights."""

    universe: tuple[int, ...]
    sets: tuple[frozenset[int], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.sets) != len(self.weights):
            raise ReductionError("sets and weights differ in length")
        if len(set(self.universe)) != len(self.universe):
            raise ReductionError("duplicate universe element")
        uni = set(self.universe)
        for i, s in enumerate(self.sets):
            if not s <= uni:
                raise ReductionError(f"set {i} contains non-universe elements")
        for i, w in enumerate(self.weights):
            if w < 1:
                raise ReductionError(f"weight of set {i} must be positive")


@dataclass(frozen=True)
class ReductionCertificate:
    """Names the constructed vertices/colors after their source objects."""

    source_digest: str
    vertex_roles: dict[int, tuple]
    color_roles: dict[str, tuple]


# -- independent set on cubic graphs -> color-disjoint paths ---------------


def _vertex_color(i: int) -> str:
    return f"v{i}"


def _edge_color(i: int, j: int) -> str:
    a, b = min(i, j), max(i, j)
    return f"e{a}-{b}"


def reduce_isc_to_cddp(gi: CubicGraph) -> tuple[ProblemInstance, ReductionCertificate]:
    """Build the gadget instance: 4 vertices per source vertex plus s,t.

    Each source vertex i contributes a chain s, entry_i, slot_{i,1..3}, t in
    its own color; each source edge {i,j} contributes one shared color and a
    2-hop route through slot_{i,p} (j the p-th neighbor of i) and another
    through slot_{j,p'}.
    """
    if not gi.is_cubic():
        raise ReductionError("input graph is not cubic")
    n = gi.vertex_count
    s = 0
    t = 4 * n + 1

    def entry(i: int) -> int:
        return 1 + 4 * i

    def slot(i: int, p: int) -> int:
        return 1 + 4 * i + p  # p in 1..3

    colors = [_vertex_color(i) for i in range(n)]
    colors += [_edge_color(i, j) for i, j in gi.sorted_edges()]
    edge_map: dict[tuple[int, int], set[str]] = {}

    def add(u: int, v: int, c: str) -> None:
        key = (min(u, v), max(u, v))
        edge_map.setdefault(key, set()).add(c)

    for i in range(n):
        c = _vertex_color(i)
        chain = [s, entry(i), slot(i, 1), slot(i, 2), slot(i, 3), t]
        for a, b in zip(chain, chain[1:]):
            add(a, b, c)
        for p, j in enumerate(gi.neighbors(i), start=1):
            ce = _edge_color(i, j)
            add(s, slot(i, p), ce)
            add(slot(i, p), t, ce)

    graph = EdgeColoredGraph.make(
        4 * n + 2, colors, [(u, v, sorted(cs)) for (u, v), cs in edge_map.items()]
    )
    inst = ProblemInstance(graph, s, t, mode=Mode.CDDP)

    roles: dict[int, tuple] = {s: ("source",), t: ("target",)}
    for i in range(n):
        roles[entry(i)] = ("entry", i)
        for p in range(1, 4):
            roles[slot(i, p)] = ("slot", i, p)
    color_roles: dict[str, tuple] = {_vertex_color(i): ("vertex", i) for i in range(n)}
    for i, j in gi.sorted_edges():
        color_roles[_edge_color(i, j)] = ("edge", i, j)
    cert = ReductionCertificate(_cubic_digest(gi), roles, color_roles)
    return inst, cert


def _gadget_chain(gi: CubicGraph, i: int) -> tuple[int, ...]:
    n4 = 1 + 4 * i
    return (0, n4, n4 + 1, n4 + 2, n4 + 3, 4 * gi.vertex_count + 1)


def _gadget_slot(gi: CubicGraph, i: int, other: int) -> int:
    p = gi.neighbors(i).index(other) + 1
    return 1 + 4 * i + p


def lift_is_to_paths(gi: CubicGraph, independent_set) -> PathSolution:
    """Independent set of size k -> |E| + k color-disjoint paths."""
    iset = frozenset(independent_set)
    for v in iset:
        if not (0 <= v < gi.vertex_count):
            raise ReductionError(f"vertex {v} out of range")
    for u, v in gi.edges:
        if u in iset and v in iset:
            raise ReductionError(f"input is not independent: edge ({u},{v})")
    t = 4 * gi.vertex_count + 1
    paths = []
    for i in sorted(iset):
        paths.append(UniColorPath(_gadget_chain(gi, i), _vertex_color(i)))
    for i, j in gi.sorted_edges():
        # At least one endpoint is outside the independent set; route the
        # edge color through that endpoint's gadget.
        free = i if i not in iset else j
        other = j if free == i else i
        mid = _gadget_slot(gi, free, other)
        paths.append(UniColorPath((0, mid, t), _edge_color(i, j)))
    return solution(paths, Mode.CDDP)


def project_paths_to_is(gi: CubicGraph, sol: PathSolution) -> frozenset[int]:
    """|E| + k color-disjoint paths -> independent set of size >= k.

    Normalizes first: whenever an edge color has no path, its 2-hop route is
    inserted, displacing at most the vertex-chain path that occupies the slot
    vertex.  After normalization the chain colors present are independent.
    """
    inst, _ = reduce_isc_to_cddp(gi)
    report = validate_solution(inst, PathSolution(sol.paths, Mode.CDDP))
    if report:
        raise ReductionError("infeasible solution: " + report[0])
    edge_count = len(gi.edges)
    if len(sol.paths) < edge_count:
        raise ReductionError(
            f"need at least {edge_count} paths to normalize, got {len(sol.paths)}"
        )
    t = 4 * gi.vertex_count + 1
    current = set(sol.paths)
    for i, j in gi.sorted_edges():
        ce = _edge_color(i, j)
        if any(p.color == ce for p in current):
            continue
        used = {v for p in current for v in p.internal}
        placed = False
        for side, other in ((i, j), (j, i)):
            mid = _gadget_slot(gi, side, other)
            if mid not in used:
                current.add(UniColorPath((0, mid, t), ce))
                placed = True
                break
        if placed:
            continue
        # Both slots occupied: each can only host its vertex-chain path.
        mid = _gadget_slot(gi, i, j)
        blocker = next(p for p in current if mid in p.internal)
        assert blocker.color == _vertex_color(i)
        current.remove(blocker)
        current.add(UniColorPath((0, mid, t), ce))
    chain_colors = {p.color for p in current} - {_edge_color(i, j) for i, j in gi.edges}
    out = {i for i in range(gi.vertex_count) if _vertex_color(i) in chain_colors}
    return frozenset(out)


# -- Threshold Set -> disjoint paths ---------------------------------------


def _element_color(elem: int) -> str:
    return f"u{elem}"


def ensure_coverage(ts: ThresholdSetInstance) -> ThresholdSetInstance:
    """Append a private weight-1 set for every element in no set.

    Uncovered elements would become dead ends in the constructed graph,
    breaking the element-count/path-count correspondence; adding {elem} with
    weight 1 preserves the optimum.
    """
    covered = set().union(*ts.sets) if ts.sets else set()
    extra = [e for e in ts.universe if e not in covered]
    if not extra:
        return ts
    sets = ts.sets + tuple(frozenset({e}) for e in extra)
    weights = ts.weights + tuple(1 for _ in extra)
    return ThresholdSetInstance(ts.universe, sets, weights)


def _ts_layout(ts: ThresholdSetInstance):
    elem_vertex = {e: 1 + i for i, e in enumerate(ts.universe)}
    slot = {}
    nxt = 1 + len(ts.universe)
    for q, w in enumerate(ts.weights):
        for j in range(1, w + 1):
            slot[(q, j)] = nxt
            nxt += 1
    return elem_vertex, slot, nxt  # nxt == index of t


def reduce_ts_to_cdp(ts: ThresholdSetInstance) -> tuple[ProblemInstance, ReductionCertificate]:
    """One color per element; per element, a chain of slot layers through the
    sets containing it, one slot per unit of weight."""
    covered = set().union(*ts.sets) if ts.sets else set()
    for e in ts.universe:
        if e not in covered:
            raise ReductionError(
                f"element {e} appears in no set; apply ensure_coverage() first"
            )
    elem_vertex, slot, t = _ts_layout(ts)
    s = 0
    colors = [_element_color(e) for e in ts.universe]
    edge_map: dict[tuple[int, int], set[str]] = {}

    def add(u: int, v: int, c: str) -> None:
        key = (min(u, v), max(u, v))
        edge_map.setdefault(key, set()).add(c)

    for e in ts.universe:
        c = _element_color(e)
        containing = [q for q in range(len(ts.sets)) if e in ts.sets[q]]
        add(s, elem_vertex[e], c)
        first = containing[0]
        for j in range(1, ts.weights[first] + 1):
            add(elem_vertex[e], slot[(first, j)], c)
        for qa, qb in zip(containing, containing[1:]):
            for j in range(1, ts.weights[qa] + 1):
                for j2 in range(1, ts.weights[qb] + 1):
                    add(slot[(qa, j)], slot[(qb, j2)], c)
        last = containing[-1]
        for j in range(1, ts.weights[last] + 1):
            add(slot[(last, j)], t, c)

    graph = EdgeColoredGraph.make(
        t + 1, colors, [(u, v, sorted(cs)) for (u, v), cs in edge_map.items()]
    )
    inst = ProblemInstance(graph, s, t, mode=Mode.CDP)

    roles: dict[int, tuple] = {s: ("source",), t: ("target",)}
    for e in ts.universe:
        roles[elem_vertex[e]] = ("element", e)
    for (q, j), v in slot.items():
        roles[v] = ("set-slot", q, j)
    color_roles = {_element_color(e): ("element", e) for e in ts.universe}
    cert = ReductionCertificate(_ts_digest(ts), roles, color_roles)
    return inst, cert


def lift_ts_solution(ts: ThresholdSetInstance, chosen) -> PathSolution:
    """Feasible T -> |T| disjoint uni-color paths, one per element of T.

    Within a set, the path of element e uses the slot indexed by e's rank
    (ascending element order) among T's members of that set.
    """
    t_set = frozenset(chosen)
    if not t_set <= set(ts.universe):
        raise ReductionError("solution contains non-universe elements")
    for q, sset in enumerate(ts.sets):
        if len(t_set & sset) > ts.weights[q]:
            raise ReductionError(f"|T ∩ set {q}| exceeds weight {ts.weights[q]}")
    elem_vertex, slot, t = _ts_layout(ts)
    paths = []
    for e in sorted(t_set):
        containing = [q for q in range(len(ts.sets)) if e in ts.sets[q]]
        verts = [0, elem_vertex[e]]
        for q in containing:
            j = sorted(t_set & ts.sets[q]).index(e) + 1
            verts.append(slot[(q, j)])
        verts.append(t)
        paths.append(UniColorPath(tuple(verts), _element_color(e)))
    return solution(paths, Mode.CDP)


def project_paths_to_ts(ts: ThresholdSetInstance, sol: PathSolution) -> frozenset[int]:
    """Disjoint paths -> T = elements whose color certifies a path."""
    inst, _ = reduce_ts_to_cdp(ts)
    report = validate_solution(inst, PathSolution(sol.paths, Mode.CDP))
    if report:
        raise ReductionError("infeasible solution: " + report[0])
    chosen = set()
    for e in ts.universe:
        if any(p.color == _element_color(e) for p in sol.paths):
            chosen.add(e)
    return frozenset(chosen)


# -- digests and companion text formats ------------------------------------


def serialize_cubic_graph(g: CubicGraph) -> str:
    lines = [f"n {g.vertex_count}"]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_cubic_graph(text: str) -> CubicGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n" and len(tokens) == 2:
            n = int(tokens[1])
        elif tokens[0] == "e" and len(tokens) == 3:
            edges.append((int(tokens[1]), int(tokens[2])))
        else:
            raise ParseError(f"unknown record {tokens[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'n' record")
    return CubicGraph.make(n, edges)


def serialize_threshold_set(ts: ThresholdSetInstance) -> str:
    lines = ["elements " + " ".join(str(e) for e in ts.universe)]
    for sset, w in zip(ts.sets, ts.weights):
        lines.append(f"set {w} " + " ".join(str(e) for e in sorted(sset)))
    return "\n".join(lines) + "\n"


def parse_threshold_set(text: str) -> ThresholdSetInstance:
    universe = None
    sets = []
    weights = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "elements":
            universe = tuple(int(x) for x in tokens[1:])
        elif tokens[0] == "set":
            if len(tokens) < 2:
                raise ParseError("'set' record needs a weight", lineno)
            weights.append(int(tokens[1]))
            sets.append(frozenset(int(x) for x in tokens[2:]))
        else:
            raise ParseError(f"unknown record {tokens[0]!r}", lineno)
    if universe is None:
        raise ParseError("missing 'elements' record")
    return ThresholdSetInstance(universe, tuple(sets), tuple(weights))


def _cubic_digest(g: CubicGraph) -> str:
    return hashlib.sha256(serialize_cubic_graph(g).encode()).hexdigest()[:16]


def _ts_digest(ts: ThresholdSetInstance) -> str:
    return hashlib.sha256(serialize_threshold_set(ts).encode()).hexdigest()[:16]


# -- random generators ------------------------------------------------------


def gen_random_cubic(n: int, seed: int, retries: int = 500) -> CubicGraph:
    """Random 3-regular graph by the pairing model, rejecting degeneracies."""
    if n < 4 or n % 2 != 0:
        raise SolverError("cubic graphs need an even vertex count >= 4")
    rng = random.Random(seed)
    for _ in range(retries):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        edges = set()
        ok = True
        for u, v in pairs:
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return CubicGraph.make(n, edges)
    raise SolverError(f"no simple cubic pairing found in {retries} tries")


def _random_edge_colors(rng: random.Random, colors, max_per_edge: int) -> list[str]:
    k = rng.randint(1, max(1, min(max_per_edge, len(colors))))
    return sorted(rng.sample(list(colors), k))


def gen_random_instance(
    n: int,
    q: int,
    edge_prob: float,
    colors_per_edge: int,
    seed: int,
    mode: Mode = Mode.CDP,
) -> ProblemInstance:
    """Erdos-Renyi style instance with s=0, t=n-1."""
    if n < 2 or q < 1:
        raise SolverError("need n >= 2 and q >= 1")
    rng = random.Random(seed)
    colors = tuple(f"c{i}" for i in range(1, q + 1))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v, _random_edge_colors(rng, colors, colors_per_edge)))
    graph = EdgeColoredGraph.make(n, colors, edges)
    return ProblemInstance(graph, 0, n - 1, mode=mode)


def gen_random_ts(
    universe_size: int, set_count: int, max_weight: int, seed: int
) -> ThresholdSetInstance:
    """Random Threshold Set instance; coverage is not enforced here."""
    if universe_size < 1 or set_count < 0 or max_weight < 1:
        raise SolverError("bad Threshold Set generator parameters")
    rng = random.Random(seed)
    universe = tuple(range(1, universe_size + 1))
    sets = []
    weights = []
    for _ in range(set_count):
        members = {e for e in universe if rng.random() < 0.5}
        if not members:
            members = {rng.choice(universe)}
        sets.append(frozenset(members))
        weights.append(rng.randint(1, max_weight))
    return ThresholdSetInstance(universe, tuple(sets), tuple(weights))


def gen_tree_instance(n: int, q: int, seed: int, mode: Mode = Mode.CDDP) -> ProblemInstance:
    """Instance whose graph minus the target is a random tree rooted at s=0."""
    if n < 3 or q < 1:
        raise SolverError("need n >= 3 and q >= 1")
    rng = random.Random(seed)
    colors = tuple(f"c{i}" for i in range(1, q + 1))
    t = n - 1
    edges = []
    for v in range(1, n - 1):
        parent = rng.randrange(0, v)
        edges.append((parent, v, _random_edge_colors(rng, colors, 2)))
    attach = [v for v in range(n - 1) if v != 0 and rng.random() < 0.5]
    if not attach:
        attach = [rng.randrange(1, n - 1)] if n > 3 else [1]
    for v in attach:
        edges.append((v, t, _random_edge_colors(rng, colors, 2)))
    graph = EdgeColoredGraph.make(n, colors, edges)
    return ProblemInstance(graph, 0, t, mode=mode)


def gen_disjoint_paths_instance(
    n: int,
    q: int,
    seed: int,
    st_edge_prob: float = 0.15,
    mode: Mode = Mode.CDP,
) -> ProblemInstance:
    """Instance whose interior induces a disjoint union of simple paths."""
    if n < 3 or q < 1:
        raise SolverError("need n >= 3 and q >= 1")
    rng = random.Random(seed)
    colors = tuple(f"c{i}" for i in range(1, q + 1))
    s, t = 0, n - 1
    interior = list(range(1, n - 1))
    edges = []
    for a, b in zip(interior, interior[1:]):
        if rng.random() < 0.6:  # join consecutive interior vertices into a run
            edges.append((a, b, _random_edge_colors(rng, colors, 2)))
    for v in interior:
        if rng.random() < 0.55:
            edges.append((s, v, _random_edge_colors(rng, colors, 2)))
        if rng.random() < 0.55:
            edges.append((v, t, _random_edge_colors(rng, colors, 2)))
    if rng.random() < st_edge_prob:
        edges.append((s, t, _random_edge_colors(rng, colors, 2)))
    graph = EdgeColoredGraph.make(n, colors, edges)
    return ProblemInstance(graph, s, t, mode=mode)


def gen_near_disjoint_paths_instance(
    n: int, hubs: int, q: int, seed: int, mode: Mode = Mode.CDP
) -> ProblemInstance:
    """Disjoint-path interior plus ``hubs`` extra vertices wired broadly.

    Removing the hub vertices (and the terminals) leaves disjoint paths, so
    the instance sits at distance at most ``hubs`` from that class.
    """
    if hubs < 0 or n - hubs < 3:
        raise SolverError("need hubs >= 0 and n - hubs >= 3")
    rng = random.Random(seed)
    colors = tuple(f"c{i}" for i in range(1, q + 1))
    s, t = 0, n - 1
    interior = list(range(1, n - 1 - hubs))
    hub_verts = list(range(n - 1 - hubs, n - 1))
    edges = []
    for a, b in zip(interior, interior[1:]):
        if rng.random() < 0.6:
            edges.append((a, b, _random_edge_colors(rng, colors, 2)))
    for v in interior:
        if rng.random() < 0.5:
            edges.append((s, v, _random_edge_colors(rng, colors, 2)))
        if rng.random() < 0.5:
            edges.append((v, t, _random_edge_colors(rng, colors, 2)))
    for h in hub_verts:
        targets = [s, t] + interior + [x for x in hub_verts if x < h]
        picked = [v for v in targets if rng.random() < 0.5]
        if len(picked) < 3:
            picked = rng.sample(targets, min(3, len(targets)))
        for v in picked:
            edges.append((min(h, v), max(h, v), _random_edge_colors(rng, colors, 2)))
    graph = EdgeColoredGraph.make(n, colors, edges)
    return ProblemInstance(graph, s, t, mode=mode)
