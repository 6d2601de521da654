"""Entanglement structure of graph states: Schmidt ranks and rank indices,
Schmidt-measure bounds (persistency, vertex cover), two-party correlations,
localizable entanglement, LHV bounds, witnesses and the GHZ argument."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import clifford_sim as cs
from . import dense as _dense
from . import f2linalg
from .graphs import Graph, canonical_key
from .pauli import PauliString
from .stabilizer import generator_matrix

MAX_SR_SWEEP_N = 24
PP_EXACT_N = 12
VC_EXACT_N = 30
LHV_EXACT_N = 4


def _mask_bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def cross_block_rank(g: Graph, a_mask: int) -> int:
    """F2 rank of the off-diagonal adjacency block Gamma_AB."""
    b_mask = ((1 << g.n) - 1) & ~a_mask
    rows = []
    for v in _mask_bits(a_mask):
        row = g.adj[v] & b_mask
        if row:
            rows.append(row)
    return f2linalg.rank_of_rows(rows, g.n) if rows else 0


def schmidt_rank(g: Graph, a_mask: int) -> int:
    """Schmidt rank across the bipartition (A, complement)."""
    full = (1 << g.n) - 1
    if a_mask == 0 or a_mask == full:
        raise ValueError("bipartition must be a nonempty proper subset")
    return cross_block_rank(g, a_mask)


def rank_index(g: Graph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(RI2, RI3): how often each rank occurs over all 2- and 3-vertex cuts,
    highest rank first; empty tuple when n is too small."""
    ri2: Tuple[int, ...] = ()
    ri3: Tuple[int, ...] = ()
    if g.n >= 4:
        counts = [0, 0]
        for pair in itertools.combinations(range(g.n), 2):
            r = cross_block_rank(g, sum(1 << v for v in pair))
            if r > 0:
                counts[2 - r] += 1
        ri2 = tuple(counts)
    if g.n >= 6:
        counts3 = [0, 0, 0]
        for trip in itertools.combinations(range(g.n), 3):
            r = cross_block_rank(g, sum(1 << v for v in trip))
            if r > 0:
                counts3[3 - r] += 1
        ri3 = tuple(counts3)
    return ri2, ri3


def max_schmidt_rank(g: Graph) -> int:
    """Maximum Schmidt rank over all bipartitions (sweeps 2^(n-1) cuts)."""
    if g.n > MAX_SR_SWEEP_N:
        raise ValueError(f"exact sweep limited to n <= {MAX_SR_SWEEP_N}")
    if g.n < 2:
        return 0
    best = 0
    bound = g.n // 2
    for a_mask in range(1, 1 << (g.n - 1)):
        r = cross_block_rank(g, a_mask)
        if r > best:
            best = r
            if best == bound:
                break
    return best


def max_rank_certificate(g: Graph, a_mask: int) -> bool:
    """Sufficient criterion for SR_A = |A|: every connected component of the
    cross-cut graph G_AB is cycle-free with at most one leaf in the smaller
    partition side."""
    full = (1 << g.n) - 1
    b_mask = full & ~a_mask
    size_a = bin(a_mask).count("1")
    small = a_mask if size_a * 2 <= g.n else b_mask
    cross_adj = [g.adj[v] & (b_mask if (a_mask >> v) & 1 else a_mask) for v in range(g.n)]
    cross = Graph(g.n, cross_adj)
    if cross.edge_count() == 0:
        return False
    for comp in cross.connected_components():
        verts = _mask_bits(comp)
        if len(verts) == 1:
            continue
        edges = sum(len(cross.neighbors(v)) for v in verts) // 2
        if edges >= len(verts):  # has a cycle
            return False
        leaves_small = sum(
            1 for v in verts if (small >> v) & 1 and len(cross.neighbors(v)) == 1
        )
        if leaves_small > 1:
            return False
    return True


def min_vertex_cover(g: Graph) -> int:
    """Exact minimum vertex cover size by branch and bound."""
    if g.n > VC_EXACT_N:
        raise ValueError(f"exact vertex cover limited to n <= {VC_EXACT_N}")
    best = [g.n]

    def drop(adj: List[int], v: int) -> None:
        for u in _mask_bits(adj[v]):
            adj[u] &= ~(1 << v)
        adj[v] = 0

    def recurse(adj: List[int], taken: int) -> None:
        if taken >= best[0]:
            return
        deg, v = max((bin(r).count("1"), i) for i, r in enumerate(adj))
        if deg == 0:
            best[0] = taken
            return
        if deg == 1:
            # Remaining graph is a matching; one endpoint per edge.
            edges = sum(bin(r).count("1") for r in adj) // 2
            best[0] = min(best[0], taken + edges)
            return
        adj_in = list(adj)
        drop(adj_in, v)
        recurse(adj_in, taken + 1)
        nbrs = _mask_bits(adj[v])
        adj_out = list(adj)
        for w in nbrs:
            drop(adj_out, w)
        recurse(adj_out, taken + len(nbrs))

    recurse(list(g.adj), 0)
    return best[0]


def _measure_plus_branch(g: Graph, a: int, basis: int) -> Graph:
    """Graph left on the remaining vertices after a Pauli measurement at a
    (one outcome branch; both branches are LC-equivalent)."""
    if basis == 2:  # Z
        return g.delete_vertex(a)
    if basis == 1:  # Y
        return g.local_complement(a).delete_vertex(a)
    na = g.adj[a]  # X
    if na == 0:
        return g.delete_vertex(a)
    b0 = (na & -na).bit_length() - 1
    h = g.local_complement(b0).local_complement(a).isolate_vertex(a)
    return h.local_complement(b0).delete_vertex(a)


def pauli_persistency(g: Graph) -> int:
    """Minimal number of local Pauli measurements that disentangle |G>.

    Only one outcome branch per measurement is explored (the two residues are
    LC-equivalent, so their persistencies agree), children are deduplicated on
    canonical form, and bounds from the maximal Schmidt rank and the minimal
    vertex cover prune the search."""
    lower = max_schmidt_rank(g) if g.n <= MAX_SR_SWEEP_N else 0
    upper = min_vertex_cover(g)
    if lower == upper:
        return upper
    if g.n > PP_EXACT_N:
        raise ValueError(f"exact persistency search limited to n <= {PP_EXACT_N}")

    memo: Dict[tuple, int] = {}

    def solve(h: Graph, budget: int) -> int:
        """Exact minimum if it is <= budget, else some value > budget."""
        if h.edge_count() == 0:
            return 0
        if budget <= 0:
            return budget + 1
        key = canonical_key(h, max_n=PP_EXACT_N)
        cached = memo.get(key)
        if cached is not None:
            return cached
        lb = max_schmidt_rank(h)
        if lb > budget:
            return lb
        best = budget + 1
        seen_children = set()
        for a in range(h.n):
            if h.adj[a] == 0:
                continue
            for basis in (1, 2, 0):  # Y first: collapses dense neighborhoods
                child = _measure_plus_branch(h, a, basis)
                ck = canonical_key(child, max_n=PP_EXACT_N)
                if ck in seen_children:
                    continue
                seen_children.add(ck)
                sub = solve(child, best - 2)
                if 1 + sub < best:
                    best = 1 + sub
                    if best <= max(lb, 1):
                        memo[key] = best
                        return best
        if best <= budget:
            memo[key] = best
        return best

    result = solve(g, upper)
    assert lower <= result <= upper
    return result


@dataclass
class SchmidtReport:
    lower: int
    upper_pp: int
    upper_vc: int

    @property
    def tight(self) -> bool:
        return self.lower == self.upper_pp


def schmidt_measure_bounds(g: Graph) -> SchmidtReport:
    """SR_max <= E_S <= PP <= VC; exact E_S is claimed only when tight."""
    lower = max_schmidt_rank(g)
    vc = min_vertex_cover(g)
    pp = vc if lower == vc else pauli_persistency(g)
    return SchmidtReport(lower, pp, vc)


def qmax_correlation(g: Graph, a: int, b: int) -> int:
    """Maximal two-point classical correlation of a graph state: 0 iff the
    leftover neighborhoods N_a\\b and N_b\\a are both nonempty and distinct."""
    if a == b:
        raise ValueError("need two distinct vertices")
    if g.adj[a] == 0 or g.adj[b] == 0:
        return 0  # isolated vertex: all correlation functions vanish
    na = g.adj[a] & ~(1 << b)
    nb = g.adj[b] & ~(1 << a)
    if na and nb and na != nb:
        return 0
    return 1


def localize_bell_pair(
    g: Graph, a: int, b: int, seed: int = 0, forced: Optional[Dict[int, int]] = None
) -> Tuple[dict, cs.Register]:
    """Project out a Bell pair between a and b from a connected graph state:
    Z-measure everything off a shortest a-b path, X-measure its interior."""
    if a == b:
        raise ValueError("need two distinct vertices")
    if not g.is_connected():
        raise ValueError("localizable-entanglement protocol needs a connected graph")
    # BFS shortest path.
    prev = {a: None}
    queue = [a]
    while queue and b not in prev:
        v = queue.pop(0)
        for w in g.neighbors(v):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    path = path[::-1]
    off_path = [v for v in range(g.n) if v not in path]
    interior = path[1:-1]

    reg = cs.Register(g.n, seed=seed)
    reg.adj = list(g.adj)
    records = []
    for v in off_path:
        records.append(reg.measure_pauli(v, "Z", (forced or {}).get(v)))
    for v in interior:
        records.append(reg.measure_pauli(v, "X", (forced or {}).get(v)))
    plan = {
        "path": path,
        "z_measured": off_path,
        "x_measured": interior,
        "records": records,
    }
    return plan, reg


def stabilizer_elements(g: Graph) -> List[PauliString]:
    """All 2^n signed stabilizer elements (small n only)."""
    return generator_matrix(g).group_elements()


def lhv_bound(g: Graph) -> int:
    """Max of |sum_sigma value(sigma)| over deterministic local-hidden-variable
    assignments of +/-1 to every sigma_x, sigma_y, sigma_z at every vertex."""
    n = g.n
    if n > LHV_EXACT_N:
        raise ValueError(f"LHV brute force limited to n <= {LHV_EXACT_N}")
    elems = stabilizer_elements(g)
    # Precompute per element: sign and the per-vertex letters.
    compiled = []
    for e in elems:
        letters = [(v, "XYZ".index(e.letter(v))) for v in range(n) if e.letter(v) != "I"]
        compiled.append((e.sign(), letters))
    best = 0
    for assign in range(1 << (3 * n)):
        total = 0
        for sign, letters in compiled:
            val = sign
            for v, ax in letters:
                if (assign >> (3 * v + ax)) & 1:
                    val = -val
            total += val
        if abs(total) > best:
            best = abs(total)
    return best


def correlation_expectations(g: Graph, state: object) -> List[float]:
    """<K_a> for every vertex, for a dense vector, a dense density matrix, or
    a graph-diagonal state (where <K_a> = sum_U (-1)^{U_a} lambda_U)."""
    n = g.n
    lam = getattr(state, "lam", None)
    expev = []
    if lam is not None:
        lam = np.asarray(lam, dtype=float)
        if lam.size != 1 << n:
            raise ValueError("coefficient vector size mismatch")
        idx = np.arange(1 << n)
        for a in range(n):
            expev.append(float(np.sum(lam * (1 - 2 * ((idx >> a) & 1)))))
        return expev
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1 and arr.size == 1 << n:
        for a in range(n):
            k = PauliString(n, 1 << a, g.adj[a])
            expev.append(float(np.vdot(arr, _dense.apply_pauli(arr, k)).real))
    elif arr.ndim == 2 and arr.shape == (1 << n, 1 << n):
        for a in range(n):
            k = PauliString(n, 1 << a, g.adj[a]).dense()
            expev.append(float(np.trace(arr @ k).real))
    else:
        raise ValueError("state dimension does not match the graph")
    return expev


def witness_expectations(
    g: Graph, state: object
) -> Tuple[Dict[Tuple[int, int], float], float]:
    """<W1^{ab}> = 1 - <K_a> - <K_b> per edge and <W2> = (N-1) - sum <K_a>."""
    expev = correlation_expectations(g, state)
    w1 = {}
    for a, b in g.edges():
        w1[(a, b)] = 1.0 - expev[a] - expev[b]
    w2 = (g.n - 1) - sum(expev)
    return w1, w2


@dataclass
class GhzCertificate:
    vertices: Tuple[int, int, int]
    equations: List[dict]  # {'observables': {vertex: 'X'|'Y'|'Z'}, 'rhs': +/-1}

    def product_contradiction(self) -> bool:
        """Classical product of all equations: observables cancel pairwise but
        the signs multiply to -1."""
        letters: Dict[Tuple[int, str], int] = {}
        sgn = 1
        for eq in self.equations:
            sgn *= eq["rhs"]
            for v, basis in eq["observables"].items():
                letters[(v, basis)] = letters.get((v, basis), 0) + 1
        return all(c % 2 == 0 for c in letters.values()) and sgn == -1


def ghz_contradiction_certificate(g: Graph) -> GhzCertificate:
    """Four stabilizer constraints on a connected 3-vertex subgraph whose
    classical product is inconsistent, ruling out local realism."""
    if g.n < 3:
        raise ValueError("need at least three vertices")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    triple = None
    for a, b in g.edges():
        for c in range(g.n):
            if c in (a, b):
                continue
            if g.has_edge(a, c) or g.has_edge(b, c):
                triple = (a, b, c)
                break
        if triple:
            break
    if triple is None:
        raise ValueError("no connected 3-vertex subgraph found")
    gens = generator_matrix(g)
    ks = [gens.rows[v] for v in triple]
    subgroup = [
        (mask, _product([ks[i] for i in range(3) if (mask >> i) & 1], g.n))
        for mask in range(1, 8)
    ]
    # Four elements whose observables pair off at every vertex while the
    # stabilizer signs multiply to -1.
    for combo in itertools.combinations(subgroup, 4):
        sgn = 1
        counts: Dict[Tuple[int, str], int] = {}
        for _, e in combo:
            sgn *= e.sign()
            for v in range(g.n):
                letter = e.letter(v)
                if letter != "I":
                    counts[(v, letter)] = counts.get((v, letter), 0) + 1
        if sgn == -1 and all(c % 2 == 0 for c in counts.values()):
            equations = []
            for _, e in combo:
                obs = {
                    v: e.letter(v) for v in range(g.n) if e.letter(v) != "I"
                }
                equations.append({"observables": obs, "rhs": e.sign()})
            cert = GhzCertificate(triple, equations)
            assert cert.product_contradiction()
            return cert
    raise AssertionError("no GHZ-type contradiction found on a connected graph")


def _product(ps: Sequence[PauliString], n: int) -> PauliString:
    out = PauliString.identity(n)
    for p in ps:
        out = out * p
    return out


__all__ = [
    "schmidt_rank",
    "cross_block_rank",
    "rank_index",
    "max_schmidt_rank",
    "max_rank_certificate",
    "pauli_persistency",
    "min_vertex_cover",
    "SchmidtReport",
    "schmidt_measure_bounds",
    "qmax_correlation",
    "localize_bell_pair",
    "lhv_bound",
    "witness_expectations",
    "GhzCertificate",
    "ghz_contradiction_certificate",
    "stabilizer_elements",
]
