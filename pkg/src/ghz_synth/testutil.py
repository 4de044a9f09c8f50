"""Helpers for randomized cross-validation of the two simulators."""

from __future__ import annotations

import numpy as np

from .circuit import CX, Circuit, CondX, H, MeasureZ, Operation, Reset, X
from .rng import make_rng
from .stabilizer import Tableau

__all__ = ["random_clifford_circuit", "apply_pauli_dense", "stabilizers_fix_state"]


def random_clifford_circuit(n_qubits: int, n_ops: int, seed: int) -> Circuit:
    """Random circuit over H/X/CX plus measurement, reset, and conditional X.

    Respects the structural invariants: conditional X reads a classical bit
    written by exactly one earlier measurement, and a measured qubit is left
    alone until it is reset.
    """
    rng = make_rng(seed)
    ops: list[Operation] = []
    dead: set[int] = set()
    cbits_written: list[int] = []
    cbit_count = 0

    def alive() -> list[int]:
        return [q for q in range(n_qubits) if q not in dead]

    while len(ops) < n_ops:
        kind = rng.choice(
            ["h", "x", "cx", "measure", "reset", "condx"],
            p=[0.25, 0.15, 0.3, 0.12, 0.1, 0.08],
        )
        live = alive()
        if kind == "h" and live:
            ops.append(H(int(rng.choice(live))))
        elif kind == "x" and live:
            ops.append(X(int(rng.choice(live))))
        elif kind == "cx" and len(live) >= 2:
            a, b = rng.choice(live, size=2, replace=False)
            ops.append(CX(int(a), int(b)))
        elif kind == "measure" and live:
            q = int(rng.choice(live))
            ops.append(MeasureZ(q, cbit_count))
            cbits_written.append(cbit_count)
            cbit_count += 1
            dead.add(q)
        elif kind == "reset":
            q = int(rng.integers(0, n_qubits))
            ops.append(Reset(q))
            dead.discard(q)
        elif kind == "condx" and live and cbits_written:
            k = int(rng.integers(1, len(live) + 1))
            targets = tuple(sorted(int(q) for q in rng.choice(live, size=k, replace=False)))
            cbit = int(rng.choice(cbits_written))
            ops.append(CondX(targets, cbit))
    return Circuit(n_qubits, cbit_count, tuple(ops))


def apply_pauli_dense(
    state: np.ndarray, x: np.ndarray, z: np.ndarray, sign: int
) -> np.ndarray:
    """Apply the Pauli given in symplectic form to a dense state vector.

    Convention: the operator is (-1)^sign * prod_q P_q with P_q read off the
    (x, z) bits, where the x/z pair on one qubit means Y (so the phase
    bookkeeping i*XZ = ... is handled explicitly).
    """
    n = len(x)
    psi = state.reshape((2,) * n).copy()
    phase = complex(-1) ** sign
    for q in range(n):
        if x[q] and z[q]:
            # Y = i X Z
            psi = _apply_z_axis(psi, q)
            psi = np.flip(psi, axis=q)
            phase *= 1j
        elif x[q]:
            psi = np.flip(psi, axis=q)
        elif z[q]:
            psi = _apply_z_axis(psi, q)
    return phase * psi.reshape(-1)


def _apply_z_axis(psi: np.ndarray, q: int) -> np.ndarray:
    idx = [slice(None)] * psi.ndim
    idx[q] = 1
    psi = psi.copy()
    psi[tuple(idx)] *= -1
    return psi


def stabilizers_fix_state(tab: Tableau, state: np.ndarray, atol: float = 1e-10) -> bool:
    """True iff every stabilizer generator fixes the state with eigenvalue +1."""
    sx, sz, sr = tab.stabilizer_rows()
    for i in range(tab.n):
        transformed = apply_pauli_dense(state, sx[i], sz[i], int(sr[i]))
        if not np.allclose(transformed, state, atol=atol):
            return False
    return True
