from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecpaths.errors import EnumerationOverflow, SizeLimitError
from ecpaths.graph import (
    EdgeColoredGraph,
    Mode,
    ProblemInstance,
    UniColorPath,
    validate_solution,
)
from ecpaths.oracle import (
    ConflictGraph,
    enumerate_unicolor_paths,
    paths_conflict,
    solve_exact,
    solve_is_bruteforce,
    solve_thresholdset_bruteforce,
)
from ecpaths.reductions import (
    ThresholdSetInstance,
    gen_random_cubic,
    gen_random_instance,
    reduce_ts_to_cdp,
)
from ecpaths import corpus


def test_enumerate_trap(trap_cddp):
    paths = enumerate_unicolor_paths(trap_cddp)
    assert sorted((p.vertices, p.color) for p in paths) == [
        ((0, 1, 3), "green"),
        ((0, 1, 3), "red"),
        ((0, 2, 3), "red"),
    ]


def test_enumerate_no_path():
    g = EdgeColoredGraph.make(3, ("c",), [(0, 1, ("c",))])
    inst = ProblemInstance(g, 0, 2)
    assert enumerate_unicolor_paths(inst) == []


def test_enumerate_respects_length_bound(trap_cdp):
    bounded = ProblemInstance(trap_cdp.graph, 0, 3, 1, Mode.CDP)
    assert enumerate_unicolor_paths(bounded) == []


def test_enumerate_threshold_demo_first_color():
    # Element 1 sits in the first and second sets, so its color admits
    # exactly the two chains through the two copies of the first set.
    inst, _ = reduce_ts_to_cdp(corpus.threshold_demo_source())
    per_color = [p for p in enumerate_unicolor_paths(inst) if p.color == "u1"]
    assert sorted(p.vertices for p in per_color) == [(0, 1, 5, 7, 10), (0, 1, 6, 7, 10)]


def test_enumerate_overflow_signal():
    g = EdgeColoredGraph.make(
        6,
        ("c",),
        [(u, v, ("c",)) for u, v in combinations(range(6), 2)],
    )
    inst = ProblemInstance(g, 0, 5)
    with pytest.raises(EnumerationOverflow):
        enumerate_unicolor_paths(inst, cap=5)


def test_enumeration_deterministic(trap_cddp):
    assert enumerate_unicolor_paths(trap_cddp) == enumerate_unicolor_paths(trap_cddp)


def test_solve_exact_trap(trap_cddp, trap_cdp):
    assert solve_exact(trap_cddp).value == 2
    assert solve_exact(trap_cdp).value == 2


def test_solve_exact_single_edge():
    g = EdgeColoredGraph.make(2, ("c",), [(0, 1, ("c",))])
    for mode in Mode:
        assert solve_exact(ProblemInstance(g, 0, 1, mode=mode)).value == 1


def test_solve_exact_multicolor_direct_edge_counts_once():
    g = EdgeColoredGraph.make(2, ("a", "b"), [(0, 1, ("a", "b"))])
    for mode in Mode:
        assert solve_exact(ProblemInstance(g, 0, 1, mode=mode)).value == 1


def test_solve_exact_gadget_value(k4):
    inst = corpus.gadget_demo()
    iset = solve_is_bruteforce(4, k4.edges)
    assert solve_exact(inst).value == len(k4.edges) + len(iset) == 7


def test_solve_exact_solutions_validate(trap_cddp):
    sol = solve_exact(trap_cddp)
    assert validate_solution(trap_cddp, sol) == []


def test_solve_exact_deterministic_tie_break(trap_cdp):
    a = solve_exact(trap_cdp)
    b = solve_exact(trap_cdp)
    assert a.sorted_paths() == b.sorted_paths()


def _naive_best(paths, mode):
    best = 0
    for r in range(len(paths), -1, -1):
        for combo in combinations(range(len(paths)), r):
            ok = all(
                not paths_conflict(paths[i], paths[j], mode)
                for i, j in combinations(combo, 2)
            )
            if ok:
                return r
    return best


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), mode=st.sampled_from([Mode.CDP, Mode.CDDP]))
def test_branch_and_bound_matches_subset_scan(seed, mode):
    inst = gen_random_instance(6, 3, 0.45, 2, seed, mode)
    paths = enumerate_unicolor_paths(inst)
    if len(paths) > 12:
        return
    assert solve_exact(inst).value == _naive_best(paths, mode)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_cddp_at_most_cdp_and_q(seed):
    inst = gen_random_instance(8, 3, 0.4, 2, seed)
    cdp = solve_exact(inst).value
    cddp = solve_exact(inst.with_mode(Mode.CDDP)).value
    assert cddp <= cdp
    assert cddp <= inst.graph.q


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_length_bound_monotone(seed):
    inst = gen_random_instance(8, 2, 0.4, 2, seed)
    values = []
    for bound in (1, 2, 3, None):
        b = ProblemInstance(inst.graph, 0, 7, bound, Mode.CDP)
        values.append(solve_exact(b).value)
    assert values == sorted(values)


# -- plain brute force helpers ------------------------------------------------


def test_is_bruteforce_examples(k4):
    assert len(solve_is_bruteforce(4, k4.edges)) == 1
    cycle4 = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert solve_is_bruteforce(4, cycle4) == frozenset({0, 2})


def test_is_bruteforce_limit():
    with pytest.raises(SizeLimitError):
        solve_is_bruteforce(25, [])


def test_is_bruteforce_matches_subset_scan():
    g = gen_random_cubic(10, seed=3)
    best = 0
    verts = range(g.vertex_count)
    for r in range(g.vertex_count, 0, -1):
        if any(
            all((min(u, v), max(u, v)) not in g.edges for u, v in combinations(c, 2))
            for c in combinations(verts, r)
        ):
            best = r
            break
    assert len(solve_is_bruteforce(g.vertex_count, g.edges)) == best


def test_thresholdset_bruteforce_demo(ts_demo):
    best = solve_thresholdset_bruteforce(ts_demo)
    assert len(best) == 2
    for q, sset in enumerate(ts_demo.sets):
        assert len(best & sset) <= ts_demo.weights[q]


def test_thresholdset_bruteforce_no_constraints():
    ts = ThresholdSetInstance((1, 2, 3), (), ())
    assert solve_thresholdset_bruteforce(ts) == frozenset({1, 2, 3})


def test_thresholdset_bruteforce_zero_like_weight():
    # Weights must be >= 1; the closest degenerate case is one set holding
    # everything with weight 1, which caps the optimum at a single element.
    ts = ThresholdSetInstance((1, 2, 3), (frozenset({1, 2, 3}),), (1,))
    assert len(solve_thresholdset_bruteforce(ts)) == 1


def test_thresholdset_bruteforce_limit():
    ts = ThresholdSetInstance(tuple(range(30)), (), ())
    with pytest.raises(SizeLimitError):
        solve_thresholdset_bruteforce(ts)


def test_conflict_graph_matches_pairwise_rule(trap_cddp):
    paths = enumerate_unicolor_paths(trap_cddp)
    cg = ConflictGraph.build(paths, Mode.CDDP)
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if i == j:
                continue
            assert bool(cg.conflicts[i] >> j & 1) == paths_conflict(p, q, Mode.CDDP)
