"""Built-in property suite over small instances, behind `ghz-synth verify`.

Every check is deterministic and fast; together they cover layout
invariants, synthesis count identities, exact GHZ preparation for both
protocols, merge corrections on both measurement branches, and agreement
between the stabilizer tableau and the dense state vector.
"""

from __future__ import annotations

from . import layouts
from .circuit import count_2q, count_measurements, depth
from .growing import synthesize_growing
from .merging import HighestDegree, ScalingFactor, select_stars, synthesize_merging
from .metrics import is_ghz
from .rng import derive_seed
from .stabilizer import run
from .statevector import ghz_state, run_dense, state_fidelity
from .testutil import random_clifford_circuit, stabilizers_fix_state

SEED = 20250601


def _small_layouts() -> list[tuple[str, layouts.LayoutGraph]]:
    out = []
    eagle = layouts.eagle_127()
    grid = layouts.rect_grid(4, 3)
    for i in range(3):
        sub, _ = layouts.random_connected_subgraph(eagle, 9, derive_seed(SEED, "eagle", i))
        out.append((f"eagle9_{i}", sub))
    out.append(("grid4x3", grid))
    for i in range(3):
        out.append(
            (f"er10_{i}", layouts.connected_erdos_renyi(10, 0.4, derive_seed(SEED, "er", i)))
        )
    return out


def check_layout_invariants() -> bool:
    for _, g in _small_layouts():
        if not g.is_connected():
            return False
        if any(not (0 <= u < v < g.node_count) for u, v in g.edges):
            return False
    return True


def check_count_identities() -> bool:
    for _, g in _small_layouts():
        grow = synthesize_growing(g)
        if count_2q(grow) != g.node_count - 1 or count_measurements(grow) != 0:
            return False
        for strategy in (HighestDegree(), ScalingFactor(1.0)):
            circ = synthesize_merging(g, strategy)
            stars = select_stars(g, strategy)
            if count_measurements(circ) != len(stars) - 1:
                return False
            if count_2q(circ) != g.node_count - 1 + count_measurements(circ):
                return False
    return True


def check_exact_ghz() -> bool:
    for name, g in _small_layouts():
        for make in (
            lambda g: synthesize_growing(g),
            lambda g: synthesize_merging(g, HighestDegree()),
            lambda g: synthesize_merging(g, ScalingFactor(0.7)),
        ):
            circ = make(g)
            outcome = run(circ, derive_seed(SEED, "ghz", name))
            if not is_ghz(outcome.tableau, g.node_count):
                return False
    return True


def check_merge_branches() -> bool:
    g = layouts.rect_grid(1, 5)
    circ = synthesize_merging(g, ScalingFactor(1.0))
    if count_measurements(circ) == 0:
        return False
    for branch in (0, 1):
        # pin the merge measurement, replay the same branch on the dense sim
        tab_out = run(circ, SEED, forced_outcomes=[branch])
        dense = run_dense(circ, SEED, forced_outcomes=tab_out.outcome_log)
        if abs(state_fidelity(dense.state, ghz_state(g.node_count)) - 1.0) > 1e-10:
            return False
    return True


def check_tableau_vs_dense() -> bool:
    for i in range(25):
        circ = random_clifford_circuit(
            n_qubits=5, n_ops=30, seed=derive_seed(SEED, "clifford", i)
        )
        tab_out = run(circ, derive_seed(SEED, "run", i))
        dense = run_dense(circ, 0, forced_outcomes=tab_out.outcome_log)
        if not stabilizers_fix_state(tab_out.tableau, dense.state):
            return False
    return True


def check_depth_examples() -> bool:
    from .circuit import CX, Circuit, H

    c1 = Circuit(3, 0, (H(0), CX(0, 1), CX(0, 2)))
    c2 = Circuit(4, 0, (H(0), CX(0, 1), CX(2, 3)))
    return depth(c1) == 3 and depth(c2) == 2


def run_all() -> list[tuple[str, bool]]:
    checks = [
        ("layout invariants (simple, connected)", check_layout_invariants),
        ("synthesis count identities", check_count_identities),
        ("noiseless synthesis yields exact GHZ", check_exact_ghz),
        ("merge corrections on both branches", check_merge_branches),
        ("tableau agrees with dense state vector", check_tableau_vs_dense),
        ("ASAP depth hand-scheduled examples", check_depth_examples),
    ]
    results = []
    for name, fn in checks:
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        results.append((name, ok))
    return results
