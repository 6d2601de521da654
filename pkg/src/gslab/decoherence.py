"""Graph-diagonal mixed states under local Pauli noise: stabilizer twirling,
closed-form channel coefficients, partial-transpose spectra, PPT reports and
distillability lifetime thresholds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import f2linalg
from .f2linalg import BitMatrix
from .graphs import Graph
from .stabilizer import generator_matrix

LAMBDA_FULL_LIMIT = 14
LAMBDA_ENTRY_LIMIT = 20
PPT_TOL = 1e-12


@dataclass(frozen=True)
class PauliChannel:
    """Single-qubit channel rho -> sum_i p_i sigma_i rho sigma_i."""

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        probs = (self.p0, self.p1, self.p2, self.p3)
        if any(p < -1e-12 for p in probs) or abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError("channel probabilities must be nonnegative, sum 1")

    @property
    def probs(self) -> Tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    @classmethod
    def depolarizing(cls, p: float) -> "PauliChannel":
        return cls((1 + 3 * p) / 4, (1 - p) / 4, (1 - p) / 4, (1 - p) / 4)

    @classmethod
    def dephasing(cls, p: float) -> "PauliChannel":
        return cls((1 + p) / 2, 0.0, 0.0, (1 - p) / 2)

    @classmethod
    def bitflip(cls, p: float) -> "PauliChannel":
        return cls((1 + p) / 2, (1 - p) / 2, 0.0, 0.0)


class GraphDiagonalState:
    """Probability vector lambda over sigma_z^U |G> basis states."""

    __slots__ = ("graph", "lam")

    def __init__(self, graph: Graph, lam: np.ndarray, normalize: bool = False):
        lam = np.asarray(lam, dtype=float)
        if lam.size != 1 << graph.n:
            raise ValueError("coefficient vector must have length 2^N")
        if np.any(lam < -1e-12):
            raise ValueError("coefficients must be nonnegative")
        if normalize:
            lam = lam / lam.sum()
        elif abs(lam.sum() - 1.0) > 1e-9:
            raise ValueError("coefficients must sum to 1")
        self.graph = graph
        self.lam = lam

    @classmethod
    def pure(cls, graph: Graph) -> "GraphDiagonalState":
        lam = np.zeros(1 << graph.n)
        lam[0] = 1.0
        return cls(graph, lam)

    def fidelity(self) -> float:
        return float(self.lam[0])

    def dense(self) -> np.ndarray:
        """Dense density matrix (oracle path, small N)."""
        from . import dense as _dense

        n = self.graph.n
        rho = np.zeros((1 << n, 1 << n), dtype=complex)
        for u in range(1 << n):
            if self.lam[u] == 0.0:
                continue
            vec = _dense.graph_state_vector(self.graph, u)
            rho += self.lam[u] * np.outer(vec, vec.conj())
        return rho

    def __repr__(self) -> str:
        return f"GraphDiagonalState(n={self.graph.n}, fidelity={self.fidelity():.6f})"


def twirl_to_graph_diagonal(rho: np.ndarray, g: Graph) -> GraphDiagonalState:
    """Project onto the graph basis: lambda_U = <U|rho|U> (the diagonal is
    what uniform stabilizer twirling preserves)."""
    from . import dense as _dense

    n = g.n
    if n > 10:
        raise ValueError("dense twirl limited to N <= 10")
    if rho.shape != (1 << n, 1 << n):
        raise ValueError("density matrix dimension mismatch")
    basis = np.column_stack(
        [_dense.graph_state_vector(g, u) for u in range(1 << n)]
    )
    lam = np.einsum("iu,ij,ju->u", basis.conj(), rho, basis).real
    return GraphDiagonalState(g, np.clip(lam, 0.0, None), normalize=True)


def _channel_tables(
    g: Graph, channels: Sequence[PauliChannel]
) -> List[np.ndarray]:
    """Per-vertex 2x2 weight tables w[x, z] for the error (x,z) at the vertex."""
    tables = []
    for ch in channels:
        p0, p1, p2, p3 = ch.probs
        tables.append(np.array([[p0, p3], [p1, p2]]))
    return tables


def _resolve_channels(
    g: Graph, ch: "PauliChannel | Sequence[PauliChannel]"
) -> List[PauliChannel]:
    if isinstance(ch, PauliChannel):
        return [ch] * g.n
    ch = list(ch)
    if len(ch) != g.n:
        raise ValueError("need one channel per vertex")
    return ch


def pauli_channel_lambdas(
    g: Graph, ch: "PauliChannel | Sequence[PauliChannel]"
) -> GraphDiagonalState:
    """Graph-basis coefficients of (prod_a D_a)(|G><G|):
    lambda_U = sum_{U'} prod_a w_a(U'_a, (Gamma U' + U)_a).

    The per-vertex weight table makes the depolarizing simplification (equal
    q's) a special case of the same contraction."""
    n = g.n
    if n > LAMBDA_FULL_LIMIT:
        raise ValueError(f"full coefficient vector limited to N <= {LAMBDA_FULL_LIMIT}")
    channels = _resolve_channels(g, ch)
    tables = _channel_tables(g, channels)
    lam = np.zeros(1 << n)
    for uprime in range(1 << n):
        c = 0
        m = uprime
        while m:
            low = m & -m
            c ^= g.adj[low.bit_length() - 1]
            m ^= low
        vec = np.array([1.0])
        for a in range(n - 1, -1, -1):
            x = (uprime >> a) & 1
            cz = (c >> a) & 1
            pair = np.array([tables[a][x, cz], tables[a][x, 1 ^ cz]])
            vec = np.kron(vec, pair)
        lam += vec
    return GraphDiagonalState(g, lam, normalize=False)


def pauli_channel_lambda_entry(
    g: Graph, ch: "PauliChannel | Sequence[PauliChannel]", u: int
) -> float:
    """Single coefficient lambda_U by the direct 2^N-term sum."""
    n = g.n
    if n > LAMBDA_ENTRY_LIMIT:
        raise ValueError(f"single-entry sum limited to N <= {LAMBDA_ENTRY_LIMIT}")
    channels = _resolve_channels(g, ch)
    tables = _channel_tables(g, channels)
    idx = np.arange(1 << n, dtype=np.int64)
    adj = np.array(
        [[(g.adj[a] >> b) & 1 for b in range(n)] for a in range(n)], dtype=np.int64
    )
    bits = ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
    cbits = (bits @ adj) & 1
    zbits = cbits ^ ((u >> np.arange(n)[None, :]) & 1)
    total = np.ones(1 << n)
    for a in range(n):
        total *= np.asarray(tables[a])[bits[:, a], zbits[:, a]]
    return float(total.sum())


def _bits_list(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def partial_transpose_spectrum(
    s: GraphDiagonalState, a_mask: int
) -> np.ndarray:
    """Eigenvalues lambda'_U of rho^{T_A}, again in the graph basis:
    lambda'_U = (|ker G'| / 2^{|A|}) sum_{X,Y} (-1)^{<X, A_Y>} lambda_{U+X+Y}
    with X over (ker G')^perp in F2^A and Y over Im G' in F2^B."""
    g = s.graph
    n = g.n
    full = (1 << n) - 1
    if a_mask == 0 or a_mask == full:
        raise ValueError("bipartition must be a nonempty proper subset")
    a_list = _bits_list(a_mask)
    b_mask = full & ~a_mask
    size_a = len(a_list)

    fast = _pt_fast_path(s, a_mask)
    if fast is not None:
        return fast

    # Gamma' maps F2^A -> F2^B; (ker)^perp is spanned by the A-restricted
    # neighborhoods of B vertices, Im by the B-restricted ones of A vertices.
    perp_rows = []
    for b in _bits_list(b_mask):
        r = g.adj[b] & a_mask
        if r:
            perp_rows.append(r)
    perp_basis = f2linalg.row_space_basis(BitMatrix(perp_rows, n)) if perp_rows else []
    im_rows = [g.adj[a] & b_mask for a in a_list]
    im_basis = f2linalg.row_space_basis(BitMatrix(im_rows, n)) if im_rows else []
    rank = len(im_basis)
    assert len(perp_basis) == rank
    ker_size = 1 << (size_a - rank)

    # Solve Gamma' A_Y = Y: columns indexed by A vertices.
    solve_rows = [g.adj[a] & b_mask for a in a_list]
    mat = BitMatrix(solve_rows, n).transpose()  # n rows (B comps), |A| cols

    lam = s.lam
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n)
    for y in f2linalg.span(im_basis):
        coeffs = f2linalg.solve(mat, y)
        assert coeffs is not None
        a_y = 0
        for i, v in enumerate(a_list):
            if (coeffs >> i) & 1:
                a_y |= 1 << v
        for x in f2linalg.span(perp_basis):
            sign = -1.0 if (bin(x & a_y).count("1") & 1) else 1.0
            out += sign * lam[idx ^ (x | y)]
    return (ker_size / (1 << size_a)) * out


def _pt_fast_path(s: GraphDiagonalState, a_mask: int) -> Optional[np.ndarray]:
    """Closed forms for |A| = 1 and for |A| = 2 with independent neighborhoods
    (adjacent pairs use the neighbor sets restricted off the pair)."""
    g = s.graph
    n = g.n
    lam = s.lam
    idx = np.arange(1 << n, dtype=np.int64)
    a_list = _bits_list(a_mask)
    if len(a_list) == 1:
        a = a_list[0]
        na = g.adj[a]
        if na == 0:
            return None  # isolated: route to the general formula
        bit = 1 << a
        return 0.5 * (lam + lam[idx ^ na] + lam[idx ^ bit] - lam[idx ^ (na | bit)])
    if len(a_list) == 2:
        a, b = a_list
        na, nb = g.adj[a], g.adj[b]
        if g.has_edge(a, b):
            rest = ~a_mask
            na = na & rest
            nb = nb & rest
        if na == 0 or nb == 0 or na == nb:
            return None  # dependent neighborhoods: general formula
        pa, pb = 1 << a, 1 << b
        plus = [0, pa, pb, pa ^ pb, na, nb, na ^ nb, pa ^ nb, pb ^ na,
                pa ^ pb ^ na ^ nb]
        minus = [pa ^ na, pb ^ nb, pa ^ na ^ nb, pb ^ na ^ nb, pa ^ pb ^ na,
                 pa ^ pb ^ nb]
        out = np.zeros(1 << n)
        for x in plus:
            out += lam[idx ^ x]
        for x in minus:
            out -= lam[idx ^ x]
        return 0.25 * out
    return None


@dataclass
class PptReport:
    cuts: Dict[int, float]  # A mask -> min eigenvalue of the partial transpose
    tol: float = PPT_TOL

    @property
    def ppt_cuts(self) -> List[int]:
        return [m for m, v in self.cuts.items() if v >= -self.tol]

    @property
    def any_ppt(self) -> bool:
        return any(v >= -self.tol for v in self.cuts.values())

    @property
    def all_ppt(self) -> bool:
        return all(v >= -self.tol for v in self.cuts.values())


def ppt_report(s: GraphDiagonalState) -> PptReport:
    """Minimum partial-transpose eigenvalue for every bipartition."""
    n = s.graph.n
    if n > 16:
        raise ValueError("per-cut sweep limited to N <= 16")
    if n < 2:
        raise ValueError("need at least two vertices for a bipartition")
    cuts = {}
    for m in range(1, 1 << (n - 1)):
        cuts[m] = float(partial_transpose_spectrum(s, m).min())
    return PptReport(cuts)


def critical_depolarizing_p(
    g: Graph, mode: str = "first-cut-ppt", tol: float = 1e-6
) -> float:
    """Bisection in the depolarizing parameter p of the chosen PPT event
    (some cut PPT, or all cuts PPT); the state is NPT near p=1 and fully
    mixed (PPT) at p=0."""
    if g.n > 10:
        raise ValueError("criticality search limited to N <= 10")
    if mode not in ("first-cut-ppt", "all-cuts-ppt"):
        raise ValueError(f"unknown mode {mode!r}")

    def event(p: float) -> bool:
        s = pauli_channel_lambdas(g, PauliChannel.depolarizing(p))
        rep = ppt_report(s)
        return rep.any_ppt if mode == "first-cut-ppt" else rep.all_ppt

    lo, hi = 0.0, 1.0
    if not event(lo):
        raise ValueError("event does not hold even at p=0")
    if event(hi):
        return 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if event(mid):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def pair_distillability_threshold(g: Graph, a: int, b: int, tol: float = 1e-9) -> float:
    """Root p* of p^(|N_a|+1) + p^(|N_a + N_b|) + p^(|N_b|+1) = 1: for p > p*
    measuring all other vertices in Z leaves the pair in an NPT (distillable)
    two-qubit state.  The pair must be adjacent, otherwise the Z reduction
    disconnects it."""
    if a == b:
        raise ValueError("need two distinct vertices")
    if not g.has_edge(a, b):
        raise ValueError("pair distillability threshold needs an adjacent pair")
    e1 = g.degree(a) + 1
    e2 = bin(g.adj[a] ^ g.adj[b]).count("1")
    e3 = g.degree(b) + 1

    def f(p: float) -> float:
        return p ** e1 + p ** e2 + p ** e3 - 1.0

    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def apply_channel_to_state(
    s: GraphDiagonalState, ch: "PauliChannel | Sequence[PauliChannel]"
) -> GraphDiagonalState:
    """Apply per-qubit Pauli channels to a graph-diagonal state.

    Pauli channels commute with the sigma_z^V basis shifts, so the output is
    the XOR convolution of lambda with the pure-state coefficient kernel."""
    g = s.graph
    kernel = pauli_channel_lambdas(g, ch).lam
    idx = np.arange(1 << g.n, dtype=np.int64)
    out = np.zeros(1 << g.n)
    for v in range(1 << g.n):
        if s.lam[v]:
            out += s.lam[v] * kernel[idx ^ v]
    return GraphDiagonalState(g, out, normalize=True)


def depolarize_state(s: GraphDiagonalState, epsilon: float) -> GraphDiagonalState:
    """Compose with per-qubit depolarizing noise of strength epsilon."""
    if epsilon == 0.0:
        return s
    return apply_channel_to_state(s, PauliChannel.depolarizing(1.0 - epsilon))


__all__ = [
    "PauliChannel",
    "GraphDiagonalState",
    "twirl_to_graph_diagonal",
    "pauli_channel_lambdas",
    "pauli_channel_lambda_entry",
    "partial_transpose_spectrum",
    "PptReport",
    "ppt_report",
    "critical_depolarizing_p",
    "pair_distillability_threshold",
    "apply_channel_to_state",
    "depolarize_state",
]
