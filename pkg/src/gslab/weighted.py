"""Weighted graph states: Ising interaction patterns with arbitrary phases,
their efficient reduced density matrices (cost exponential only in the kept
subset), and entanglement quantities derived from them."""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .graphs import Graph

WGS_DENSE_LIMIT = 12
REDUCED_A_LIMIT = 10
EIG_FLOOR = 1e-14


class WeightedGraph:
    """Symmetric real phase matrix phi_ab in [0, 2pi), zero diagonal."""

    __slots__ = ("n", "phases")

    def __init__(self, n: int, phases: np.ndarray):
        phases = np.asarray(phases, dtype=float)
        if phases.shape != (n, n):
            raise ValueError("phase matrix shape mismatch")
        if not np.allclose(phases, phases.T, atol=1e-12):
            raise ValueError("phase matrix must be symmetric")
        if np.any(np.abs(np.diag(phases)) > 1e-12):
            raise ValueError("phase matrix must have zero diagonal")
        self.n = n
        self.phases = np.mod(phases, 2 * np.pi)
        np.fill_diagonal(self.phases, 0.0)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Tuple[int, int, float]]
    ) -> "WeightedGraph":
        m = np.zeros((n, n))
        for a, b, phi in edges:
            if a == b:
                raise ValueError("loop edge")
            if m[a, b] != 0.0:
                raise ValueError(f"duplicate edge ({a},{b})")
            m[a, b] = m[b, a] = phi
        return cls(n, m)

    @classmethod
    def from_graph(cls, g: Graph, phase: float = np.pi) -> "WeightedGraph":
        m = np.zeros((g.n, g.n))
        for a, b in g.edges():
            m[a, b] = m[b, a] = phase
        return cls(g.n, m)

    def edges(self) -> List[Tuple[int, int, float]]:
        return [
            (a, b, float(self.phases[a, b]))
            for a in range(self.n)
            for b in range(a + 1, self.n)
            if self.phases[a, b] != 0.0
        ]

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self.edges()})"


def _bit_table(n: int) -> np.ndarray:
    """(2^n, n) matrix of index bits."""
    idx = np.arange(1 << n)
    return ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(float)


def wgs_amplitudes(wg: WeightedGraph) -> np.ndarray:
    """Dense amplitudes 2^{-n/2} exp(i sum_{a<b} phi_ab W_a W_b)."""
    if wg.n > WGS_DENSE_LIMIT:
        raise ValueError(f"dense amplitudes limited to n <= {WGS_DENSE_LIMIT}")
    bits = _bit_table(wg.n)
    quad = 0.5 * np.einsum("wa,ab,wb->w", bits, wg.phases, bits)
    return 2.0 ** (-wg.n / 2) * np.exp(1j * quad)


def reduced_density_matrix(
    wg: WeightedGraph, a_mask: int, chunk: int = 4096
) -> np.ndarray:
    """Reduced state over A: cosine-product coherences from the cross phases,
    conjugated by the intra-A interactions; O(4^{|A|} |B|) time."""
    a_list = [v for v in range(wg.n) if (a_mask >> v) & 1]
    k = len(a_list)
    if k > REDUCED_A_LIMIT:
        raise ValueError(f"reduced state limited to |A| <= {REDUCED_A_LIMIT}")
    b_list = [v for v in range(wg.n) if not (a_mask >> v) & 1]
    bits = _bit_table(k)  # (2^k, k) in reduced labels
    # D[i,j,c] = bits difference of A-subsets i and j at reduced position c
    diff = bits[:, None, :] - bits[None, :, :]
    diff = diff.reshape(-1, k)  # (4^k, k)
    phase_sum = np.zeros(diff.shape[0])
    cos_prod = np.ones(diff.shape[0])
    for start in range(0, len(b_list), chunk):
        cols = np.array(
            [[wg.phases[a, b] for b in b_list[start : start + chunk]] for a in a_list]
        )
        theta = diff @ cols  # (4^k, #chunk)
        phase_sum += theta.sum(axis=1)
        cos_prod *= np.cos(theta / 2).prod(axis=1)
    coeff = (2.0 ** (-k)) * np.exp(0.5j * phase_sum) * cos_prod
    rho = coeff.reshape(1 << k, 1 << k)
    # Conjugate by the intra-A phase unitaries (diagonal).
    diag = np.ones(1 << k, dtype=complex)
    for i in range(k):
        for j in range(i + 1, k):
            phi = wg.phases[a_list[i], a_list[j]]
            if phi != 0.0:
                both = (bits[:, i] * bits[:, j]).astype(bool)
                diag[both] *= np.exp(1j * phi)
    return (diag[:, None] * rho) * diag.conj()[None, :]


def entropy_of_entanglement(wg: WeightedGraph, a_mask: int) -> float:
    """Von Neumann entropy (base 2) of the reduced state over A."""
    rho = reduced_density_matrix(wg, a_mask)
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > EIG_FLOOR]
    return float(-np.sum(evals * np.log2(evals)))


def meyer_wallach(wg: WeightedGraph) -> float:
    """E_MW = 2 [1 - (1/N) sum_a tr(rho_a^2)]."""
    total = 0.0
    for a in range(wg.n):
        rho = reduced_density_matrix(wg, 1 << a)
        total += float(np.trace(rho @ rho).real)
    return 2.0 * (1.0 - total / wg.n)


def pair_correlations(
    wg: WeightedGraph, a: int, b: int
) -> Tuple[np.ndarray, float]:
    """Correlation matrix Q_ij = <s_i^a s_j^b> - <s_i^a><s_j^b> and its
    largest singular value."""
    if a == b:
        raise ValueError("need two distinct vertices")
    paulis = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    rho_ab = reduced_density_matrix(wg, (1 << a) | (1 << b))
    rho_a = reduced_density_matrix(wg, 1 << a)
    rho_b = reduced_density_matrix(wg, 1 << b)
    # In rho_ab the lower index bit is min(a,b).
    first_is_a = a < b
    q = np.zeros((3, 3))
    for i in range(3):
        si = float(np.trace(rho_a @ paulis[i]).real)
        for j in range(3):
            sj = float(np.trace(rho_b @ paulis[j]).real)
            if first_is_a:
                op = np.kron(paulis[j], paulis[i])
            else:
                op = np.kron(paulis[i], paulis[j])
            qij = float(np.trace(rho_ab @ op).real)
            q[i, j] = qij - si * sj
    qmax = float(np.linalg.svd(q, compute_uv=False)[0])
    return q, qmax


# -- text format ---------------------------------------------------------------


def parse_weighted_graph(text: str) -> WeightedGraph:
    """Line 1: N; then '<a> <b> <phase>' per line (1-based, radians)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ValueError(f"line {lineno}: expected vertex count")
            n = int(parts[0])
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'a b phase'")
        a, b = int(parts[0]), int(parts[1])
        phi = float(parts[2])
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"line {lineno}: vertex out of range")
        if a == b:
            raise ValueError(f"line {lineno}: loop edge")
        edges.append((a - 1, b - 1, phi))
    if n is None:
        raise ValueError("empty weighted-graph file")
    try:
        return WeightedGraph.from_edges(n, edges)
    except ValueError as exc:
        raise ValueError(str(exc)) from None


def format_weighted_graph(wg: WeightedGraph) -> str:
    lines = [str(wg.n)]
    lines += [f"{a + 1} {b + 1} {phi!r}" for a, b, phi in wg.edges()]
    return "\n".join(lines) + "\n"


__all__ = [
    "WeightedGraph",
    "wgs_amplitudes",
    "reduced_density_matrix",
    "entropy_of_entanglement",
    "meyer_wallach",
    "pair_correlations",
    "parse_weighted_graph",
    "format_weighted_graph",
]
