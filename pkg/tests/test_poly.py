from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecpaths.errors import GraphError, PreconditionError
from ecpaths.graph import (
    EdgeColoredGraph,
    Mode,
    ProblemInstance,
    validate_solution,
)
from ecpaths.oracle import solve_exact
from ecpaths.poly import (
    build_tree_matching,
    disjoint_path_components,
    maximum_bipartite_matching,
    per_color_heuristic,
    per_color_flow_total,
    solve_disjoint_paths_cdp,
    solve_single_color_flow,
    solve_tree_cddp,
)
from ecpaths.reductions import (
    gen_disjoint_paths_instance,
    gen_random_instance,
    gen_tree_instance,
)


def _mono(n, edges, s=None, t=None):
    g = EdgeColoredGraph.make(n, ("c",), [(u, v, ("c",)) for u, v in edges])
    return ProblemInstance(g, 0 if s is None else s, n - 1 if t is None else t)


# -- single-color flow --------------------------------------------------------


def test_flow_two_parallel_paths():
    inst = _mono(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
    sol = solve_single_color_flow(inst, "c")
    assert sol.value == 2
    assert validate_solution(inst, sol) == []


def test_flow_trap_red(trap_cdp):
    assert solve_single_color_flow(trap_cdp, "red").value == 2


def test_flow_no_path_is_zero():
    inst = _mono(3, [(0, 1)])
    assert solve_single_color_flow(inst, "c").value == 0


def test_flow_unknown_color(trap_cdp):
    with pytest.raises(GraphError):
        solve_single_color_flow(trap_cdp, "blue")


def test_flow_bottleneck_vertex():
    # Two fans forced through one middle vertex: value 1.
    inst = _mono(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)], s=0, t=4)
    assert solve_single_color_flow(inst, "c").value == 1


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_flow_matches_oracle_on_single_color(seed):
    inst = gen_random_instance(9, 1, 0.35, 1, seed)
    sol = solve_single_color_flow(inst, "c1")
    assert sol.value == solve_exact(inst).value
    assert validate_solution(inst, sol) == []


def _min_vertex_cut(inst, color):
    g = inst.graph
    s, t = inst.source, inst.target
    adj = g.color_subgraph_adjacency(color)

    def connected(removed):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return t in seen

    others = [v for v in range(g.vertex_count) if v not in (s, t)]
    if not connected(set()):
        return 0
    for r in range(len(others) + 1):
        for cut in combinations(others, r):
            if not connected(set(cut)):
                return r
    raise AssertionError("disconnection impossible without a direct edge")


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_flow_equals_min_vertex_cut(seed):
    inst = gen_random_instance(8, 1, 0.35, 1, seed)
    if inst.graph.has_edge(inst.source, inst.target):
        return  # no vertex cut separates adjacent terminals
    assert solve_single_color_flow(inst, "c1").value == _min_vertex_cut(inst, "c1")


# -- per-color heuristic ------------------------------------------------------


def test_per_color_trap(trap_cdp):
    assert per_color_heuristic(trap_cdp).value == 2


def test_per_color_worst_case_factor_q():
    # q colors, each carrying one private two-hop route: heuristic 1, optimum q.
    q = 4
    colors = tuple(f"c{i}" for i in range(q))
    edges = []
    for i in range(q):
        edges.append((0, 1 + i, (colors[i],)))
        edges.append((1 + i, q + 1, (colors[i],)))
    g = EdgeColoredGraph.make(q + 2, colors, edges)
    inst = ProblemInstance(g, 0, q + 1)
    assert per_color_heuristic(inst).value == 1
    assert solve_exact(inst).value == q


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_per_color_guarantee(seed):
    inst = gen_random_instance(8, 3, 0.4, 2, seed)
    opt = solve_exact(inst).value
    got = per_color_heuristic(inst).value
    assert got * inst.graph.q >= opt
    assert got <= opt


# -- bipartite matching -------------------------------------------------------


def test_matching_complete_3x3():
    adj = {f"l{i}": [f"r{j}" for j in range(3)] for i in range(3)}
    assert len(maximum_bipartite_matching(adj)) == 3


def test_matching_star():
    adj = {"hub": ["r0", "r1", "r2", "r3"]}
    assert len(maximum_bipartite_matching(adj)) == 1


def _matching_by_edge_subsets(adj):
    edges = [(u, r) for u, rs in adj.items() for r in rs]
    best = 0
    for r in range(len(edges), 0, -1):
        for combo in combinations(edges, r):
            lefts = [e[0] for e in combo]
            rights = [e[1] for e in combo]
            if len(set(lefts)) == r and len(set(rights)) == r:
                return r
    return best


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_matching_matches_bruteforce(data):
    n_left = data.draw(st.integers(1, 5))
    n_right = data.draw(st.integers(1, 5))
    adj = {}
    edge_budget = 0
    for i in range(n_left):
        rights = data.draw(
            st.lists(st.integers(0, n_right - 1), max_size=3, unique=True)
        )
        adj[i] = [f"r{j}" for j in sorted(rights)]
        edge_budget += len(rights)
    if edge_budget > 12:
        return
    assert len(maximum_bipartite_matching(adj)) == _matching_by_edge_subsets(adj)


# -- the tree case ------------------------------------------------------------


def _two_leaf_tree():
    colors = ("c1", "c2")
    edges = [
        (0, 1, ("c1",)),
        (0, 2, ("c2",)),
        (1, 3, ("c1",)),
        (2, 3, ("c2",)),
    ]
    g = EdgeColoredGraph.make(4, colors, edges)
    return ProblemInstance(g, 0, 3, mode=Mode.CDDP)


def test_tree_two_private_branches():
    assert solve_tree_cddp(_two_leaf_tree()).value == 2


def test_tree_shared_branch_capped_by_vertex():
    g = EdgeColoredGraph.make(
        3, ("c1", "c2"), [(0, 1, ("c1", "c2")), (1, 2, ("c1", "c2"))]
    )
    inst = ProblemInstance(g, 0, 2, mode=Mode.CDDP)
    assert solve_tree_cddp(inst).value == 1


def test_tree_precondition_rejected(k4):
    from ecpaths import corpus

    with pytest.raises(PreconditionError):
        solve_tree_cddp(corpus.gadget_demo())


def test_tree_deeper_uni_color_route():
    # The certifying color only pays off two levels below the s-neighbor.
    g = EdgeColoredGraph.make(
        5,
        ("a", "b"),
        [(0, 1, ("a", "b")), (1, 2, ("a",)), (2, 3, ("a",)), (3, 4, ("a",)), (1, 4, ("b",))],
    )
    inst = ProblemInstance(g, 0, 4, mode=Mode.CDDP)
    sol = solve_tree_cddp(inst)
    assert sol.value == 1
    bg = build_tree_matching(inst)
    assert (1, "a") in bg.edges and (1, "b") in bg.edges


def test_tree_value_equals_matching_size():
    for seed in range(25):
        inst = gen_tree_instance(6 + seed % 9, 2 + seed % 5, seed)
        bg = build_tree_matching(inst)
        rank = {c: i for i, c in enumerate(inst.graph.colors)}
        adj = {
            y: sorted((c for (yy, c) in bg.edges if yy == y), key=lambda c: rank[c])
            for y in bg.left
        }
        assert solve_tree_cddp(inst).value == len(maximum_bipartite_matching(adj))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 12), q=st.integers(1, 5))
def test_tree_matches_oracle(seed, n, q):
    inst = gen_tree_instance(n, q, seed)
    sol = solve_tree_cddp(inst)
    assert sol.value == solve_exact(inst).value
    assert validate_solution(inst, sol) == []


def test_tree_with_direct_edge_uses_it():
    g = EdgeColoredGraph.make(
        3, ("a", "b"), [(0, 1, ("a",)), (1, 2, ("a",)), (0, 2, ("b",))]
    )
    inst = ProblemInstance(g, 0, 2, mode=Mode.CDDP)
    assert solve_tree_cddp(inst).value == 2


# -- disjoint-path interiors --------------------------------------------------


def test_components_identified_in_order():
    g = EdgeColoredGraph.make(
        7, ("c",), [(1, 2, ("c",)), (4, 5, ("c",))]
    )
    comps = disjoint_path_components(g, {0, 6})
    assert comps == [[1, 2], [3], [4, 5]]


def test_components_reject_cycle_and_degree():
    cyc = EdgeColoredGraph.make(3, ("c",), [(0, 1, ("c",)), (1, 2, ("c",)), (0, 2, ("c",))])
    assert disjoint_path_components(cyc, set()) is None
    star = EdgeColoredGraph.make(
        4, ("c",), [(0, 1, ("c",)), (0, 2, ("c",)), (0, 3, ("c",))]
    )
    assert disjoint_path_components(star, set()) is None


def test_greedy_prefers_short_paths():
    inst = _mono(4, [(0, 1), (1, 3), (0, 2), (2, 3), (1, 2)])
    sol = solve_disjoint_paths_cdp(inst)
    assert sol.value == 2
    assert all(p.edge_count == 2 for p in sol.paths)


def test_greedy_no_path():
    inst = _mono(4, [(1, 2)])
    assert solve_disjoint_paths_cdp(inst).value == 0


def test_greedy_counts_direct_edge():
    inst = _mono(4, [(0, 3), (0, 1), (1, 3), (0, 2), (2, 3)])
    assert solve_disjoint_paths_cdp(inst).value == 3


def test_greedy_precondition(trap_cdp):
    g = EdgeColoredGraph.make(
        5, ("c",), [(1, 2, ("c",)), (2, 3, ("c",)), (1, 3, ("c",))]
    )
    with pytest.raises(PreconditionError):
        solve_disjoint_paths_cdp(ProblemInstance(g, 0, 4))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 12), q=st.integers(1, 4))
def test_greedy_matches_oracle(seed, n, q):
    inst = gen_disjoint_paths_instance(n, q, seed)
    sol = solve_disjoint_paths_cdp(inst)
    assert sol.value == solve_exact(inst).value
    assert validate_solution(inst, sol) == []


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_per_color_totals_bound_cdp(seed):
    inst = gen_random_instance(8, 3, 0.35, 2, seed)
    assert solve_exact(inst).value <= per_color_flow_total(inst)
