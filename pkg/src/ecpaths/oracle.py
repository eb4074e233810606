"""Exhaustive ground-truth solvers.

Everything here is deliberately exact and small-scale: uni-color st-paths are
enumerated outright, and the maximum (color-)disjoint subset is found as a
maximum independent set in the conflict graph over the enumerated paths.
Brute-force solvers for maximum independent set and Threshold Set back the
reduction cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EnumerationOverflow, SizeLimitError
from .graph import Mode, PathSolution, ProblemInstance, UniColorPath, solution

DEFAULT_PATH_CAP = 1_000_000
DEFAULT_BRUTE_LIMIT = 24


def enumerate_unicolor_paths(
    inst: ProblemInstance, cap: int | None = DEFAULT_PATH_CAP
) -> list[UniColorPath]:
    """All simple uni-color st-paths, one entry per certifying color.

    A path whose edges all carry several colors appears once for each of
    them.  Enumeration runs per color (DFS over the subgraph of edges
    carrying that color, neighbors in ascending order), so the output order
    is deterministic.  Honors ``inst.length_bound``.  Raises
    ``EnumerationOverflow`` when more than ``cap`` paths would be produced.
    """
    g = inst.graph
    s, t = inst.source, inst.target
    bound = inst.length_bound
    out: list[UniColorPath] = []
    for color in g.colors:
        adj = g.color_subgraph_adjacency(color)
        if not adj[s] or not adj[t]:
            continue
        stack_path = [s]
        on_path = [False] * g.vertex_count
        on_path[s] = True

        def dfs(u: int) -> None:
            if bound is not None and len(stack_path) - 1 > bound:
                return
            for w in adj[u]:
                if w == t:
                    if bound is None or len(stack_path) <= bound:
                        if cap is not None and len(out) >= cap:
                            raise EnumerationOverflow(cap)
                        out.append(UniColorPath(tuple(stack_path) + (t,), color))
                    continue
                if on_path[w]:
                    continue
                on_path[w] = True
                stack_path.append(w)
                dfs(w)
                stack_path.pop()
                on_path[w] = False

        dfs(s)
    return out


def paths_conflict(p: UniColorPath, q: UniColorPath, mode: Mode) -> bool:
    """Whether two enumerated paths cannot coexist in one solution."""
    if set(p.internal) & set(q.internal):
        return True
    if p.vertices == q.vertices:
        return True  # same path (the direct st-edge) under two colors
    if mode is Mode.CDDP and p.color == q.color:
        return True
    return False


@dataclass(frozen=True)
class ConflictGraph:
    """Symmetric conflicts over an enumerated path list, as adjacency bitmasks."""

    path_index: tuple[UniColorPath, ...]
    conflicts: tuple[int, ...]

    @classmethod
    def build(cls, paths: Sequence[UniColorPath], mode: Mode) -> "ConflictGraph":
        n = len(paths)
        adj = [0] * n
        by_vertex: dict[int, int] = {}
        by_sequence: dict[tuple[int, ...], int] = {}
        by_color: dict[str, int] = {}
        for i, p in enumerate(paths):
            bit = 1 << i
            for v in p.internal:
                by_vertex[v] = by_vertex.get(v, 0) | bit
            by_sequence[p.vertices] = by_sequence.get(p.vertices, 0) | bit
            if mode is Mode.CDDP:
                by_color[p.color] = by_color.get(p.color, 0) | bit
        for i, p in enumerate(paths):
            bit = 1 << i
            for group in (by_vertex[v] for v in p.internal):
                adj[i] |= group
            adj[i] |= by_sequence[p.vertices]
            if mode is Mode.CDDP:
                adj[i] |= by_color[p.color]
            adj[i] &= ~bit
        return cls(tuple(paths), tuple(adj))


def _greedy_clique_cover_bound(cand: int, adj: Sequence[int]) -> int:
    """Upper bound for the independent set inside ``cand``: greedy clique count."""
    cliques: list[tuple[int, int]] = []  # (member mask, common neighborhood mask)
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        placed = False
        for idx, (members, common) in enumerate(cliques):
            if common >> v & 1:
                cliques[idx] = (members | 1 << v, common & adj[v])
                placed = True
                break
        if not placed:
            cliques.append((1 << v, adj[v]))
    return len(cliques)


def _max_independent_set(adj: Sequence[int], n: int) -> int:
    """Maximum independent set as a bitmask.

    Branch and bound: include-first DFS in index order with a greedy lower
    bound seeded up front and a clique-cover upper bound for pruning.  Only a
    strictly better solution replaces the incumbent, so the returned optimum
    is the lexicographically smallest path-index set (reproducible tests).
    """
    if n == 0:
        return 0
    best_mask = 0
    best_size = -1

    # Greedy seed keeps early pruning effective; it is replaced, not kept,
    # if the lexicographic DFS finds an equally large set first.
    cand = (1 << n) - 1
    greedy_mask = 0
    while cand:
        v = (cand & -cand).bit_length() - 1
        greedy_mask |= 1 << v
        cand &= ~(adj[v] | 1 << v)
    greedy_size = bin(greedy_mask).count("1")

    def dfs(cand: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if not cand:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + _greedy_clique_cover_bound(cand, adj) <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        dfs(cand & ~(adj[v] | 1 << v), chosen | 1 << v, size + 1)
        dfs(cand & ~(1 << v), chosen, size)

    # Run the exact search first so the lexicographically-least optimum wins;
    # the greedy value only primes the bound when it cannot be optimal.
    best_size = greedy_size - 1
    best_mask = 0
    dfs((1 << n) - 1, 0, 0)
    if best_size < greedy_size:  # pragma: no cover - greedy can never beat opt
        best_size, best_mask = greedy_size, greedy_mask
    return best_mask


def solve_exact(inst: ProblemInstance, cap: int | None = DEFAULT_PATH_CAP) -> PathSolution:
    """Optimal solution for ``inst.mode`` by exhaustive enumeration + MIS."""
    paths = enumerate_unicolor_paths(inst, cap)
    cg = ConflictGraph.build(paths, inst.mode)
    mask = _max_independent_set(cg.conflicts, len(paths))
    chosen = [paths[i] for i in range(len(paths)) if mask >> i & 1]
    return solution(chosen, inst.mode)


def solve_is_bruteforce(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    limit: int = DEFAULT_BRUTE_LIMIT,
) -> frozenset[int]:
    """Maximum independent set of a plain simple graph, exact."""
    if vertex_count > limit:
        raise SizeLimitError(f"{vertex_count} vertices exceeds limit {limit}")
    adj = [0] * vertex_count
    for u, v in edges:
        if u == v:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    mask = _max_independent_set(adj, vertex_count)
    return frozenset(v for v in range(vertex_count) if mask >> v & 1)


def solve_thresholdset_bruteforce(ts, limit: int = DEFAULT_BRUTE_LIMIT) -> frozenset[int]:
    """Maximum-cardinality T with |T ∩ S_i| <= w(S_i) for every set, exact.

    ``ts`` needs ``universe``, ``sets`` and ``weights`` attributes (see
    ``reductions.ThresholdSetInstance``).
    """
    universe = list(ts.universe)
    if len(universe) > limit:
        raise SizeLimitError(f"{len(universe)} elements exceeds limit {limit}")
    sets = [frozenset(s) for s in ts.sets]
    weights = list(ts.weights)
    best: frozenset[int] = frozenset()

    def feasible(chosen: set[int]) -> bool:
        return all(len(chosen & sets[i]) <= weights[i] for i in range(len(sets)))

    order = sorted(universe)

    def dfs(idx: int, chosen: set[int]) -> None:
        nonlocal best
        if len(chosen) + (len(order) - idx) <= len(best):
            return
        if idx == len(order):
            if len(chosen) > len(best):
                best = frozenset(chosen)
            return
        elem = order[idx]
        chosen.add(elem)
        if feasible(chosen):
            dfs(idx + 1, chosen)
        chosen.discard(elem)
        dfs(idx + 1, chosen)

    dfs(0, set())
    return best
