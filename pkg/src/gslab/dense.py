"""Dense state-vector utilities backing the small-scale oracle checks.

Basis convention throughout: computational index W encodes qubit a in bit a
(little-endian), so W also names the vertex subset it corresponds to.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .graphs import Graph
from .localclifford import LocalClifford
from .pauli import PauliString

DENSE_N_LIMIT = 12


def _check_size(n: int, limit: int = DENSE_N_LIMIT) -> None:
    if n > limit:
        raise ValueError(f"dense path limited to {limit} qubits (got {n})")


def popcount_masked(indices: np.ndarray, mask: int) -> np.ndarray:
    out = np.zeros(len(indices), dtype=np.int64)
    m = mask
    while m:
        low = m & -m
        a = low.bit_length() - 1
        out += (indices >> a) & 1
        m ^= low
    return out


def plus_state(n: int) -> np.ndarray:
    _check_size(n)
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)


def graph_state_vector(g: Graph, z_offset: int = 0) -> np.ndarray:
    """Amplitudes 2^{-N/2} (-1)^{sum_{a<b} Gamma_ab W_a W_b} (-1)^{<z_offset,W>}."""
    _check_size(g.n)
    idx = np.arange(1 << g.n, dtype=np.int64)
    amps = np.full(1 << g.n, 2.0 ** (-g.n / 2), dtype=complex)
    for a, b in g.edges():
        both = ((idx >> a) & 1) & ((idx >> b) & 1)
        amps *= 1.0 - 2.0 * both
    if z_offset:
        amps *= 1.0 - 2.0 * (popcount_masked(idx, z_offset) & 1)
    return amps


def apply_1q(state: np.ndarray, a: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 unitary to qubit a of a state vector."""
    n = state.size.bit_length() - 1
    psi = state.reshape(1 << (n - a - 1), 2, 1 << a)
    return np.einsum("ij,kjl->kil", u, psi).reshape(state.size)


def apply_cz(state: np.ndarray, a: int, b: int) -> np.ndarray:
    idx = np.arange(state.size, dtype=np.int64)
    both = ((idx >> a) & 1) & ((idx >> b) & 1)
    return state * (1.0 - 2.0 * both)


def apply_frame(state: np.ndarray, frame: Sequence[LocalClifford]) -> np.ndarray:
    out = state
    for a, c in enumerate(frame):
        out = apply_1q(out, a, c.unitary)
    return out


def apply_pauli(state: np.ndarray, p: PauliString) -> np.ndarray:
    """P|psi> for P = i^phase X^x Z^z: out[V] = i^ph (-1)^{<z,V^x>} psi[V^x]."""
    idx = np.arange(state.size, dtype=np.int64)
    flipped = idx ^ p.x
    out = state[flipped]
    if p.z:
        out = out * (1.0 - 2.0 * (popcount_masked(flipped, p.z) & 1))
    return (1j ** p.phase) * out


def fidelity_up_to_phase(a: np.ndarray, b: np.ndarray) -> float:
    return abs(np.vdot(a, b))


def expectation(state: np.ndarray, p: PauliString) -> complex:
    return np.vdot(state, p.dense() @ state)


def project_pauli(
    state: np.ndarray, a: int, axis: int, outcome: int
) -> Tuple[np.ndarray, float]:
    """Project qubit a onto the +/-1 eigenspace of sigma_axis; returns
    (normalized post state, branch probability)."""
    paulis = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )
    proj = (np.eye(2, dtype=complex) + outcome * paulis[axis]) / 2
    post = apply_1q(state, a, proj)
    prob = float(np.vdot(post, post).real)
    if prob > 1e-14:
        post = post / np.sqrt(prob)
    return post, prob


def partial_trace_vector(state: np.ndarray, keep_mask: int) -> np.ndarray:
    """Reduced density matrix over the kept qubits of a pure state.

    Row/column index bit k of the result is the k-th smallest kept qubit.
    """
    n = state.size.bit_length() - 1
    keep = [a for a in range(n) if (keep_mask >> a) & 1]
    drop = [a for a in range(n) if not (keep_mask >> a) & 1]
    tensor = state.reshape([2] * n)
    # numpy axis i corresponds to qubit n-1-i; gather kept axes in front with
    # the smallest kept qubit as the least significant output bit.
    axes = [n - 1 - a for a in reversed(keep)] + [n - 1 - a for a in drop]
    moved = np.transpose(tensor, axes)
    m = moved.reshape(1 << len(keep), 1 << len(drop))
    return m @ m.conj().T


def partial_trace_matrix(rho: np.ndarray, keep_mask: int, n: int) -> np.ndarray:
    """Reduced density matrix over kept qubits; output bit k is the k-th
    smallest kept qubit."""
    keep = [a for a in range(n) if (keep_mask >> a) & 1]
    drop = [a for a in range(n) if not (keep_mask >> a) & 1]
    tensor = rho.reshape([2] * (2 * n))
    keep_axes = [n - 1 - a for a in reversed(keep)]
    drop_axes = [n - 1 - a for a in drop]
    perm = keep_axes + drop_axes + [ax + n for ax in keep_axes] + [
        ax + n for ax in drop_axes
    ]
    k, d = len(keep), len(drop)
    t = np.transpose(tensor, perm).reshape(1 << k, 1 << d, 1 << k, 1 << d)
    return np.einsum("ibjb->ij", t)


def pauli_channel_dense(rho: np.ndarray, a: int, probs: Sequence[float], n: int) -> np.ndarray:
    """Apply sum_i p_i sigma_i rho sigma_i on qubit a of a density matrix."""
    mats = [
        np.eye(2, dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    out = np.zeros_like(rho)
    for p_i, m in zip(probs, mats):
        if p_i == 0.0:
            continue
        full = lift_1q(m, a, n)
        out += p_i * (full @ rho @ full.conj().T)
    return out


def lift_1q(u: np.ndarray, a: int, n: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(n - 1, -1, -1):
        out = np.kron(out, u if q == a else np.eye(2, dtype=complex))
    return out


def partial_transpose(rho: np.ndarray, mask_a: int, n: int) -> np.ndarray:
    """Transpose the subsystem given by mask_a of an n-qubit density matrix."""
    tensor = rho.reshape([2] * (2 * n))
    for a in range(n):
        if (mask_a >> a) & 1:
            ax = n - 1 - a
            tensor = np.swapaxes(tensor, ax, ax + n)
    return tensor.reshape(rho.shape)


__all__ = [
    "DENSE_N_LIMIT",
    "plus_state",
    "graph_state_vector",
    "apply_1q",
    "apply_cz",
    "apply_frame",
    "apply_pauli",
    "fidelity_up_to_phase",
    "expectation",
    "project_pauli",
    "partial_trace_vector",
    "partial_trace_matrix",
    "pauli_channel_dense",
    "lift_1q",
    "partial_transpose",
]
