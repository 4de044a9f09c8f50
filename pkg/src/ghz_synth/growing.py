"""Unitary GHZ synthesis by breadth-first expansion.

Starts with a star GHZ state at the highest-degree node and repeatedly
entangles every frontier node into the state with a CX from an already
included neighbor. No measurements, no resets: exactly N - 1 CX gates.
"""

from __future__ import annotations

from .circuit import CX, Circuit, Operation
from .layouts import LayoutGraph
from .merging import Star, build_star_ghz

__all__ = ["synthesize_growing"]


def synthesize_growing(g: LayoutGraph, seed: int = 0) -> Circuit:
    """Synthesize the growing circuit for a connected layout.

    The start node is the highest-degree node (ties: lowest index). Frontier
    nodes are processed in breadth-first layers; each picks as parent the
    included neighbor whose qubit frees up earliest under ASAP scheduling
    (ties: lowest index). Deterministic; the seed parameter exists for
    interface uniformity and is unused.
    """
    del seed
    if not g.is_connected():
        raise ValueError("layout graph must be connected")
    n = g.node_count
    start = max(range(n), key=lambda u: (g.degree(u), -u))

    star = Star(start, frozenset(g.neighbors(start)))
    ops: list[Operation] = build_star_ghz(star)

    # incremental ASAP layer tracking, mirroring circuit.depth
    last = [0] * n
    last[start] = 1
    layer = 1
    for leaf in sorted(star.leaves):
        layer += 1
        last[start] = layer
        last[leaf] = layer

    included = star.nodes()
    while len(included) < n:
        frontier = sorted(
            v
            for v in range(n)
            if v not in included and any(w in included for w in g.neighbors(v))
        )
        for v in frontier:
            parents = [w for w in g.neighbors(v) if w in included]
            u = min(parents, key=lambda w: (last[w], w))
            ops.append(CX(u, v))
            lay = max(last[u], last[v]) + 1
            last[u] = lay
            last[v] = lay
        included |= set(frontier)
    return Circuit(qubit_count=n, cbit_count=0, ops=tuple(ops))
