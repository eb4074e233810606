"""Canonical demonstration instances.

These double as documentation and regression fixtures: the greedy trap where
taking the wrong color first loses a path, the gadget instance built from the
complete cubic graph on four vertices, and the instance built from a small
Threshold Set system.  The same graphs ship as ECG files under ``data/``.
"""

from __future__ import annotations

from importlib import resources

from .graph import EdgeColoredGraph, Mode, ProblemInstance, parse_instance
from .reductions import (
    CubicGraph,
    ThresholdSetInstance,
    reduce_isc_to_cddp,
    reduce_ts_to_cdp,
)

RED = "red"
GREEN = "green"


def two_route_trap(mode: Mode = Mode.CDDP) -> ProblemInstance:
    """Two routes s-v-t (red+green) and s-u-t (red only).

    Taking the red s,v,t path first blocks both the green copy (vertex v) and
    the red s,u,t path (color red), so a color-greedy start gets 1 while the
    optimum is 2 in either mode.
    """
    graph = EdgeColoredGraph.make(
        4,
        (RED, GREEN),
        [
            (0, 1, (RED, GREEN)),
            (0, 2, (RED,)),
            (1, 3, (RED, GREEN)),
            (2, 3, (RED,)),
        ],
    )
    return ProblemInstance(graph, 0, 3, mode=mode)


def k4_graph() -> CubicGraph:
    return CubicGraph.make(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def gadget_demo() -> ProblemInstance:
    """The color-disjoint instance constructed from the complete cubic graph
    on four vertices: 18 vertices, 10 colors, optimum 6 + 1."""
    inst, _ = reduce_isc_to_cddp(k4_graph())
    return inst


def threshold_demo_source() -> ThresholdSetInstance:
    """Four elements, three weighted sets; optimum 2 (for example {1,2})."""
    return ThresholdSetInstance(
        universe=(1, 2, 3, 4),
        sets=(frozenset({1, 2, 3}), frozenset({1, 4}), frozenset({2, 3, 4})),
        weights=(2, 1, 2),
    )


def threshold_demo() -> ProblemInstance:
    """The 11-vertex disjoint-path instance built from the demo system."""
    inst, _ = reduce_ts_to_cdp(threshold_demo_source())
    return inst


_DATA_FILES = {
    "two_route_trap": "two_route_trap.ecg",
    "gadget_demo": "gadget_k4.ecg",
    "threshold_demo": "threshold_demo.ecg",
}


def load_packaged(name: str, mode: Mode = Mode.CDP) -> ProblemInstance:
    """Parse one of the ECG files shipped under ``ecpaths/data``."""
    fname = _DATA_FILES[name]
    text = resources.files("ecpaths.data").joinpath(fname).read_text()
    return parse_instance(text, mode)
