"""Solver for graphs at bounded distance from disjoint paths.

Strategy: find a smallest deletion set X whose removal (together with the
terminals) leaves a disjoint union of simple paths, enumerate the ways an
optimal solution could route paths through X (as piece assignments: interior
subpaths glued through X vertices), and solve what is left of the graph with
the greedy disjoint-paths solver.  Every piece assignment that assembles into
a uni-color st-path is tried; the best total over all guesses wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError
from .graph import (
    Mode,
    PathSolution,
    ProblemInstance,
    UniColorPath,
    remove_vertices,
    solution,
)
from .poly import disjoint_path_components, solve_disjoint_paths_cdp


@dataclass(frozen=True)
class DeletionSet:
    """X plus the disjoint interior paths left after removing X and s,t."""

    vertices: frozenset[int]
    interior_paths: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PathGuess:
    """Pieces of one guessed st-path: interior subpaths plus X connectors."""

    segments: tuple[tuple[int, ...], ...]
    connectors: frozenset[int]

    def vertex_set(self) -> frozenset[int]:
        verts = set(self.connectors)
        for seg in self.segments:
            verts.update(seg)
        return frozenset(verts)


def is_disjoint_paths(g) -> bool:
    """True iff the whole graph is a disjoint union of simple paths."""
    return disjoint_path_components(g, set()) is not None


def find_deletion_set(g, s: int, t: int, d_max: int) -> DeletionSet | None:
    """Smallest X (|X| <= d_max, s,t excluded) leaving disjoint paths.

    Exhaustive search by increasing size, lexicographic within a size, so the
    result is deterministic.  Returns None when no such set exists.
    """
    candidates = [v for v in range(g.vertex_count) if v not in (s, t)]
    for size in range(0, d_max + 1):
        for combo in combinations(candidates, size):
            comps = disjoint_path_components(g, {s, t} | set(combo))
            if comps is not None:
                return DeletionSet(frozenset(combo), tuple(tuple(c) for c in comps))
    return None


def assemble_unicolor_path(
    g, s: int, t: int, guess: PathGuess
) -> UniColorPath | None:
    """Try to order/orient the pieces into one uni-color st-path.

    For each color: interior subpaths must be internally colored by it, and
    consecutive pieces (and the hops from s and to t) must be joined by edges
    carrying it.  Every piece must be used.  Returns the first path found, in
    color declaration order, or None.
    """
    pieces: list[tuple[int, ...]] = [tuple(seg) for seg in guess.segments]
    pieces += [(x,) for x in sorted(guess.connectors)]
    n_pieces = len(pieces)
    for color in g.colors:
        ok = True
        for seg in guess.segments:
            for a, b in zip(seg, seg[1:]):
                if color not in g.edge_colors(a, b):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue

        found: list[int] | None = None

        def extend(cur: int, used: int, seq: list[int]) -> bool:
            nonlocal found
            if used == (1 << n_pieces) - 1:
                if color in g.edge_colors(cur, t):
                    found = seq + [t]
                    return True
                return False
            for idx in range(n_pieces):
                if used >> idx & 1:
                    continue
                piece = pieces[idx]
                orientations = [piece] if len(piece) == 1 else [piece, piece[::-1]]
                for orient in orientations:
                    if color in g.edge_colors(cur, orient[0]):
                        if extend(orient[-1], used | 1 << idx, seq + list(orient)):
                            return True
            return False

        if extend(s, 0, [s]):
            assert found is not None
            return UniColorPath(tuple(found), color)
    return None


def _enumerate_guessed_paths(
    g, s: int, t: int, ds: DeletionSet
) -> dict[frozenset[int], UniColorPath]:
    """All assemblable guessed paths, deduplicated by their vertex set.

    A guessed path uses a nonempty subset of X and at most one more interior
    subpath than it uses X vertices (the subpaths alternate with connectors).
    """
    ranges: list[tuple[int, ...]] = []
    for comp in ds.interior_paths:
        for a in range(len(comp)):
            for b in range(a, len(comp)):
                ranges.append(tuple(comp[a : b + 1]))
    x_sorted = sorted(ds.vertices)
    found: dict[frozenset[int], UniColorPath] = {}

    def try_guess(segs: tuple[tuple[int, ...], ...], xs: tuple[int, ...]) -> None:
        guess = PathGuess(segs, frozenset(xs))
        key = guess.vertex_set()
        if key in found:
            return
        path = assemble_unicolor_path(g, s, t, guess)
        if path is not None:
            found[key] = path

    for r in range(1, len(x_sorted) + 1):
        for xs in combinations(x_sorted, r):
            max_segments = r + 1

            def pick(start: int, chosen: list[tuple[int, ...]], used: set[int]) -> None:
                try_guess(tuple(chosen), xs)
                if len(chosen) == max_segments:
                    return
                for idx in range(start, len(ranges)):
                    seg = ranges[idx]
                    if used & set(seg):
                        continue
                    chosen.append(seg)
                    pick(idx + 1, chosen, used | set(seg))
                    chosen.pop()

            pick(0, [], set())
    return found


def solve_xp_cdp(inst: ProblemInstance, ds: DeletionSet) -> PathSolution:
    """Optimal cdp solution given a valid deletion set.

    Guessed paths cover every way an optimal solution can touch X; X vertices
    not used by any guess cannot lie on the remaining solution paths, so they
    are deleted along with the guessed vertices before the residual greedy
    solve.  The best total over all guesses (including the empty guess) is
    returned.
    """
    if inst.length_bound is not None:
        raise PreconditionError("distance-bounded solver does not support a length bound")
    g = inst.graph
    s, t = inst.source, inst.target
    if ds.vertices & {s, t}:
        raise PreconditionError("deletion set contains a terminal")
    comps = disjoint_path_components(g, {s, t} | set(ds.vertices))
    if comps is None:
        raise PreconditionError("removing the deletion set does not leave disjoint paths")
    ds = DeletionSet(ds.vertices, tuple(tuple(c) for c in comps))

    candidates = _enumerate_guessed_paths(g, s, t, ds)
    ordered = sorted(candidates.items(), key=lambda kv: tuple(sorted(kv[0])))
    x_all = set(ds.vertices)
    residual_cache: dict[frozenset[int], PathSolution] = {}

    def residual(used: frozenset[int]) -> PathSolution:
        if used not in residual_cache:
            reduced = remove_vertices(g, used | x_all)
            rinst = ProblemInstance(reduced, s, t, None, Mode.CDP)
            residual_cache[used] = solve_disjoint_paths_cdp(rinst)
        return residual_cache[used]

    best_total = -1
    best_paths: list[UniColorPath] = []

    def choose(start: int, picked: list[UniColorPath], used: frozenset[int]) -> None:
        nonlocal best_total, best_paths
        rest = residual(used)
        total = len(picked) + rest.value
        if total > best_total:
            best_total = total
            best_paths = picked + rest.sorted_paths()
        if len(picked) >= len(x_all):
            return
        for idx in range(start, len(ordered)):
            key, path = ordered[idx]
            if key & used:
                continue
            choose(idx + 1, picked + [path], used | key)

    choose(0, [], frozenset())
    return solution(best_paths, Mode.CDP)
