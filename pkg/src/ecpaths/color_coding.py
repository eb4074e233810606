"""Color-coding decision procedures for the length-bounded problems.

Labels are assigned to interior vertices (and, for the color-disjoint
variant, to colors).  A path is *perfect* for a label set when its interior
labels are pairwise distinct and drawn from that set; a solution is perfect
when its paths consume disjoint label sets (and distinct color labels).  Two
dynamic programs decide existence:

* the reachability table maps (label subset, endpoint, color) to whether a
  uni-color path from the source ends there using exactly those labels;
* the assembly table maps (label subset, color-label subset, count) to
  whether that many paths exist, jointly perfect, each closed by an edge
  into the target and each at most ``l`` edges long.

A labeling that is injective on vertices and colors is perfect for every
candidate solution at once, so running the tables under it decides exactly;
that is the ``IdentityStrategy`` used wherever an exact answer is needed at
small scale.  ``RandomStrategy`` draws labelings uniformly: accepting runs
are always sound (a witness is extracted and can be validated), and a true
k-solution of length <= l is found with probability at least
exp(-k(l-1)) * exp(-k) per trial, so ceil(ln(1/delta) * e^{k(l-1)} * e^k)
trials push the false-negative rate below delta.  ``WitnessStrategy`` builds
the one labeling that is perfect for a known solution, which turns the
completeness direction of the table lemmas into a deterministic test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import PreconditionError
from .graph import Mode, PathSolution, ProblemInstance, UniColorPath, solution

MAX_LABEL_BITS = 64


@dataclass(frozen=True)
class Labeling:
    """Vertex labels in 1..h_v (terminals carry none), color labels in 1..h_c."""

    vertex_labels: dict[int, int]
    color_labels: dict[str, int]
    h_v: int
    h_c: int


@dataclass(frozen=True)
class RandomStrategy:
    trials: int = 200
    seed: int = 0


@dataclass(frozen=True)
class WitnessStrategy:
    """Labeling derived from a concrete path set (deterministic test hook)."""

    paths: tuple[UniColorPath, ...]


@dataclass(frozen=True)
class IdentityStrategy:
    """Injective labels: one perfect labeling, exact decisions."""


LabelingStrategy = Union[RandomStrategy, WitnessStrategy, IdentityStrategy]


def _check_width(h_v: int) -> None:
    if h_v > MAX_LABEL_BITS:
        raise PreconditionError(
            f"label set of size {h_v} exceeds the {MAX_LABEL_BITS}-bit subset mask"
        )


def identity_labeling(inst: ProblemInstance) -> Labeling:
    interior = inst.interior()
    _check_width(len(interior))
    vlab = {v: i + 1 for i, v in enumerate(interior)}
    clab = {c: i + 1 for i, c in enumerate(inst.graph.colors)}
    return Labeling(vlab, clab, max(len(interior), 1), max(len(clab), 1))


def witness_labeling(inst: ProblemInstance, paths, l: int, k: int) -> Labeling:
    """Distinct labels for the witness's interior vertices and colors;
    everything else collapses onto label 1.  Perfect for the witness by
    construction."""
    h_v = max(k * (l - 1), 1)
    h_c = max(k, 1)
    _check_width(h_v)
    wit_vertices = sorted({v for p in paths for v in p.internal})
    rank = {c: i for i, c in enumerate(inst.graph.colors)}
    wit_colors = sorted({p.color for p in paths}, key=lambda c: rank[c])
    if len(wit_vertices) > h_v or len(wit_colors) > h_c:
        raise PreconditionError("witness larger than the label budget for (l, k)")
    vlab = {v: 1 for v in inst.interior()}
    vlab.update({v: i + 1 for i, v in enumerate(wit_vertices)})
    clab = {c: 1 for c in inst.graph.colors}
    clab.update({c: i + 1 for i, c in enumerate(wit_colors)})
    return Labeling(vlab, clab, h_v, h_c)


def random_labeling(inst: ProblemInstance, l: int, k: int, rng: random.Random) -> Labeling:
    h_v = max(k * (l - 1), 1)
    h_c = max(k, 1)
    _check_width(h_v)
    vlab = {v: rng.randint(1, h_v) for v in inst.interior()}
    clab = {c: rng.randint(1, h_c) for c in inst.graph.colors}
    return Labeling(vlab, clab, h_v, h_c)


def generate_labelings(
    inst: ProblemInstance, l: int, k: int, strategy: LabelingStrategy
) -> Iterator[Labeling]:
    if isinstance(strategy, IdentityStrategy):
        yield identity_labeling(inst)
    elif isinstance(strategy, WitnessStrategy):
        yield witness_labeling(inst, strategy.paths, l, k)
    elif isinstance(strategy, RandomStrategy):
        rng = random.Random(strategy.seed)
        for _ in range(strategy.trials):
            yield random_labeling(inst, l, k, rng)
    else:  # pragma: no cover - defensive
        raise TypeError(f"unknown labeling strategy {strategy!r}")


# -- the two tables ----------------------------------------------------------


def compute_table_s(
    inst: ProblemInstance, labeling: Labeling, color: str, l: int
) -> dict[tuple[int, int], int | None]:
    """Reachability slice for one color.

    Maps (label-mask, endpoint) to a predecessor vertex (None at the source).
    An entry means: a path from the source ends at ``endpoint``, every edge
    carries ``color``, its non-source vertices have pairwise distinct labels
    forming exactly the mask, and it has at most l-1 non-source vertices.
    The target never appears as an intermediate vertex.
    """
    g, s, t = inst.graph, inst.source, inst.target
    adj = g.color_subgraph_adjacency(color)
    table: dict[tuple[int, int], int | None] = {(0, s): None}
    frontier: list[tuple[int, int]] = [(0, s)]
    for _ in range(max(l - 1, 0)):
        nxt: list[tuple[int, int]] = []
        for mask, u in frontier:
            for w in adj[u]:
                if w == t or w == s:
                    continue
                lab = labeling.vertex_labels.get(w)
                if lab is None:
                    continue
                bit = 1 << (lab - 1)
                if mask & bit:
                    continue
                key = (mask | bit, w)
                if key not in table:
                    table[key] = u
                    nxt.append(key)
        frontier = nxt
    return table


PiState = tuple[int, int, bool]  # (vertex-label mask, color-label mask, direct used)
PiParent = tuple[PiState, str, int, int]  # (previous state, color, end vertex, piece mask)


@dataclass
class PiTable:
    """Levels of the assembly table with parent pointers for extraction.

    ``levels[z]`` holds every reachable state after placing z paths.  The
    ``direct used`` flag guards the degenerate two-vertex path: the edge
    {s,t} is a single path regardless of how many colors it carries, so at
    most one placed path may be the direct one.
    """

    inst: ProblemInstance
    labeling: Labeling
    l: int
    k: int
    color_disjoint: bool
    levels: list[dict[PiState, PiParent | None]] = field(default_factory=list)
    s_tables: dict[str, dict[tuple[int, int], int | None]] = field(default_factory=dict)

    def max_accepted(self, require_full: bool = False) -> int:
        full = (1 << self.labeling.h_v) - 1
        for z in range(len(self.levels) - 1, -1, -1):
            states = self.levels[z]
            if require_full:
                if any(vm == full for vm, _, _ in states):
                    return z
            elif states:
                return z
        return 0

    def accepted(self, z: int, require_full: bool = False) -> bool:
        if z == 0:
            return True
        if z >= len(self.levels):
            return False
        if require_full:
            full = (1 << self.labeling.h_v) - 1
            return any(vm == full for vm, _, _ in self.levels[z])
        return bool(self.levels[z])


def compute_table_pi(
    inst: ProblemInstance,
    labeling: Labeling,
    l: int,
    k: int,
    color_disjoint: bool = True,
) -> PiTable:
    """Fill the assembly table up to k paths under the given labeling.

    A transition closes one more path: pick a color, an endpoint u with a
    {u,t} edge in that color, and a reachability mask for the s->u part that
    is disjoint from the labels already consumed.  The base row (zero paths,
    empty masks) is always present; u = s with an empty mask realizes the
    direct {s,t} edge.
    """
    g, s, t = inst.graph, inst.source, inst.target
    pi = PiTable(inst, labeling, l, k, color_disjoint)
    pi.levels.append({(0, 0, False): None})

    relevant = [
        c
        for c in g.colors
        if any(c in g.edge_colors(s, w) for w in g.neighbors(s))
        and any(c in g.edge_colors(w, t) for w in g.neighbors(t))
    ]
    ends: dict[str, list[tuple[int, int]]] = {}
    for c in relevant:
        table = compute_table_s(inst, labeling, c, l)
        pi.s_tables[c] = table
        seen_masks: dict[int, int] = {}
        for (mask, u), _ in table.items():
            if c in g.edge_colors(u, t) and mask not in seen_masks:
                seen_masks[mask] = u
        ends[c] = sorted(seen_masks.items())

    for _z in range(1, k + 1):
        prev = pi.levels[-1]
        cur: dict[PiState, PiParent | None] = {}
        for state in prev:
            vm, cm, du = state
            for c in relevant:
                if color_disjoint:
                    lab = labeling.color_labels.get(c)
                    if lab is None:
                        continue
                    cbit = 1 << (lab - 1)
                    if cm & cbit:
                        continue
                    ncm = cm | cbit
                else:
                    ncm = 0
                for pmask, u in ends[c]:
                    if pmask & vm:
                        continue
                    direct = u == s
                    if direct and du:
                        continue
                    nstate = (vm | pmask, ncm, du or direct)
                    if nstate not in cur:
                        cur[nstate] = (state, c, u, pmask)
        if not cur:
            break
        pi.levels.append(cur)
    return pi


def _reconstruct_path(
    pi: PiTable, color: str, end_vertex: int, pmask: int
) -> UniColorPath:
    table = pi.s_tables[color]
    labels = pi.labeling.vertex_labels
    seq = [end_vertex]
    mask, cur = pmask, end_vertex
    while cur != pi.inst.source:
        prev = table[(mask, cur)]
        assert prev is not None
        mask &= ~(1 << (labels[cur] - 1))
        seq.append(prev)
        cur = prev
    seq.reverse()
    seq.append(pi.inst.target)
    return UniColorPath(tuple(seq), color)


def extract_witness(pi: PiTable, z: int, require_full: bool = False) -> list[UniColorPath]:
    """Walk parent pointers from a deterministic accepted state at level z."""
    if z == 0:
        return []
    full = (1 << pi.labeling.h_v) - 1
    states = [
        st
        for st in pi.levels[z]
        if not require_full or st[0] == full
    ]
    state = min(states)
    out: list[UniColorPath] = []
    for level in range(z, 0, -1):
        parent = pi.levels[level][state]
        assert parent is not None
        state, color, u, pmask = parent
        out.append(_reconstruct_path(pi, color, u, pmask))
    out.reverse()
    return out


# -- decision drivers ---------------------------------------------------------


@dataclass(frozen=True)
class DecisionResult:
    accepted: bool
    witness: PathSolution | None
    labelings_tried: int


def _solve_l(
    inst: ProblemInstance,
    l: int,
    k: int,
    strategy: LabelingStrategy,
    color_disjoint: bool,
    require_full: bool,
) -> DecisionResult:
    if l < 1:
        raise PreconditionError("length bound must be >= 1")
    if k < 0:
        raise PreconditionError("target count must be >= 0")
    mode = Mode.CDDP if color_disjoint else Mode.CDP
    if k == 0:
        return DecisionResult(True, solution([], mode), 0)
    tried = 0
    for labeling in generate_labelings(inst, l, k, strategy):
        tried += 1
        pi = compute_table_pi(inst, labeling, l, k, color_disjoint)
        if pi.accepted(k, require_full):
            paths = extract_witness(pi, k, require_full)
            return DecisionResult(True, solution(paths, mode), tried)
    return DecisionResult(False, None, tried)


def solve_l_cddp(
    inst: ProblemInstance,
    l: int,
    k: int,
    strategy: LabelingStrategy,
    require_full: bool = False,
) -> DecisionResult:
    """Are there k color-disjoint uni-color st-paths of at most l edges?

    No false positives under any strategy (an accepting run carries a
    validatable witness).  Completeness is exact under ``IdentityStrategy``
    and one-sided-error under ``RandomStrategy``.  ``require_full`` switches
    to acceptance on the full vertex-label set only, for cross-checking; the
    default accepts on any label subset, which is equivalent because unused
    labels can be ignored.
    """
    return _solve_l(inst, l, k, strategy, color_disjoint=True, require_full=require_full)


def solve_l_cdp(
    inst: ProblemInstance,
    l: int,
    k: int,
    strategy: LabelingStrategy,
    require_full: bool = False,
) -> DecisionResult:
    """Variant without color labels: path colors may repeat."""
    return _solve_l(inst, l, k, strategy, color_disjoint=False, require_full=require_full)


def max_bounded_paths(
    inst: ProblemInstance, l: int, k_max: int, mode: Mode
) -> tuple[int, PathSolution]:
    """Exact maximum number of (color-)disjoint paths of <= l edges, up to
    k_max, via the injective labeling; returns the count and a witness."""
    labeling = identity_labeling(inst)
    pi = compute_table_pi(inst, labeling, l, k_max, color_disjoint=mode is Mode.CDDP)
    z = pi.max_accepted()
    return z, solution(extract_witness(pi, z), mode)
