"""Local-Clifford equivalence of graph states: the binary linear system with
the quadratic-constraint search, labeled LC orbits, and the classification of
connected graphs up to LC equivalence plus isomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import entanglement as ent
from . import f2linalg
from . import localclifford as lc
from .f2linalg import BitMatrix
from .graphs import Graph, canonical_key, enumerate_connected_graphs, two_coloring
from .pauli import PauliString
from .stabilizer import GeneratorMatrix, generator_matrix, same_stabilizer

ORBIT_CAP = 10**6


@dataclass
class LcWitness:
    """Per-vertex binary matrices Q_a = [[A,B],[C,D]] (det 1 over F2) plus a
    concrete sign-exact local Clifford frame realizing the equivalence."""

    q_matrices: List[Tuple[Tuple[int, int], Tuple[int, int]]]
    frame: List[lc.LocalClifford]


def _lc_solution_space(g1: Graph, g2: Graph) -> List[int]:
    """Kernel basis of the linear system G2*B*G1 + D*G1 + G2*A + C = 0 with
    diagonal unknowns packed as bits (A | B<<n | C<<2n | D<<3n)."""
    n = g1.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = 0
            # A_j coefficient: Gamma2_ij
            if (g2.adj[i] >> j) & 1:
                row |= 1 << j
            # B_k coefficient: Gamma2_ik Gamma1_kj
            bmask = g2.adj[i] & g1.adj[j]
            row |= bmask << n
            # C_i coefficient: delta_ij
            if i == j:
                row |= 1 << (2 * n + i)
            # D_i coefficient: Gamma1_ij
            if (g1.adj[i] >> j) & 1:
                row |= 1 << (3 * n + i)
            rows.append(row)
    return f2linalg.kernel_basis(BitMatrix(rows, 4 * n))


def _constraints_ok(sol: int, n: int) -> bool:
    """Every per-vertex Q_a must be invertible: A_a D_a + B_a C_a = 1."""
    for a in range(n):
        av = (sol >> a) & 1
        bv = (sol >> (n + a)) & 1
        cv = (sol >> (2 * n + a)) & 1
        dv = (sol >> (3 * n + a)) & 1
        if (av & dv) ^ (bv & cv) != 1:
            return False
    return True


def _frame_from_q(
    g1: Graph, g2: Graph, sol: int
) -> Tuple[List[Tuple[Tuple[int, int], Tuple[int, int]]], List[lc.LocalClifford]]:
    """Lift the binary solution to concrete local Cliffords with exact signs."""
    n = g1.n
    qs = []
    frame: List[lc.LocalClifford] = []
    for a in range(n):
        av = (sol >> a) & 1
        bv = (sol >> (n + a)) & 1
        cv = (sol >> (2 * n + a)) & 1
        dv = (sol >> (3 * n + a)) & 1
        qs.append(((av, bv), (cv, dv)))
        # C sigma_x C^dag must have binary image (x,z) = (A,C); sigma_z -> (B,D).
        target_x = (av, cv)
        target_z = (bv, dv)
        pick = None
        for idx in range(24):
            c = lc.LocalClifford(idx)
            ax, sx = c.image(0)
            az, sz = c.image(2)
            bx = (1 if ax in (0, 1) else 0, 1 if ax in (1, 2) else 0)
            bz = (1 if az in (0, 1) else 0, 1 if az in (1, 2) else 0)
            if bx == target_x and bz == target_z:
                pick = c
                break
        if pick is None:
            raise AssertionError("no Clifford lifts the binary Q matrix")
        frame.append(pick)
    # Fix signs: conjugate S(g1) by the frame, express each K_a of g2 in it,
    # and flip residual minus signs with sigma_z's (X block of g2 is identity).
    m1 = generator_matrix(g1).conjugate_by_frame(frame)
    cols = BitMatrix([r.x | (r.z << n) for r in m1.rows], 2 * n).transpose()
    gens2 = generator_matrix(g2)
    zfix = 0
    for a in range(n):
        target = gens2.rows[a]
        combo = f2linalg.solve(cols, target.x | (target.z << n))
        if combo is None:
            raise AssertionError("witness does not map stabilizer onto target")
        prod = PauliString.identity(n)
        for j in range(n):
            if (combo >> j) & 1:
                prod = prod * m1.rows[j]
        if (prod.x, prod.z) != (target.x, target.z):
            raise AssertionError("binary mismatch after conjugation")
        if prod.sign() != target.sign():
            zfix |= 1 << a
    if zfix:
        frame = [
            (lc.Z * frame[a]) if (zfix >> a) & 1 else frame[a] for a in range(n)
        ]
    return qs, frame


def _connected_witness(g1: Graph, g2: Graph) -> Optional[LcWitness]:
    n = g1.n
    basis = _lc_solution_space(g1, g2)
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(basis[i] ^ basis[j])
    for sol in candidates:
        if _constraints_ok(sol, n):
            qs, frame = _frame_from_q(g1, g2, sol)
            return LcWitness(qs, frame)
    return None


def are_lc_equivalent(g1: Graph, g2: Graph) -> Optional[LcWitness]:
    """Witness that |G2> = (tensor_a C_a)|G1>, or None if not LC-equivalent.

    The pair-sum search over the solution-space basis is complete per
    connected component, so the graphs are decomposed first; LC operations
    cannot change which vertex sets form components."""
    if g1.n != g2.n:
        raise ValueError("vertex counts differ")
    n = g1.n
    if n == 0:
        return LcWitness([], [])
    comps1 = sorted(g1.connected_components())
    comps2 = sorted(g2.connected_components())
    if comps1 != comps2:
        return None
    qs: List[Optional[Tuple[Tuple[int, int], Tuple[int, int]]]] = [None] * n
    frame: List[Optional[lc.LocalClifford]] = [None] * n
    for comp in comps1:
        verts = [v for v in range(n) if (comp >> v) & 1]
        sub = _connected_witness(
            g1.induced_subgraph(comp), g2.induced_subgraph(comp)
        )
        if sub is None:
            return None
        for i, v in enumerate(verts):
            qs[v] = sub.q_matrices[i]
            frame[v] = sub.frame[i]
    witness = LcWitness(qs, frame)  # type: ignore[arg-type]
    if not same_stabilizer(
        generator_matrix(g1).conjugate_by_frame(witness.frame),
        generator_matrix(g2),
    ):
        raise AssertionError("assembled witness failed verification")
    return witness


def lc_orbit(g: Graph, cap: int = ORBIT_CAP) -> Set[Graph]:
    """Closure of {g} under local complementation (labeled graphs)."""
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for a in range(h.n):
                if h.adj[a] == 0:
                    continue
                t = h.local_complement(a)
                if t not in seen:
                    if len(seen) >= cap:
                        raise ValueError(f"orbit exceeds cap {cap}")
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def _iso_orbit_keys(g: Graph, max_n: int) -> Set[Tuple[int, ...]]:
    """Canonical keys of the isomorphism classes in the LC orbit of g."""
    start = canonical_key(g, max_n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for adj in frontier:
            h = Graph(len(adj), adj)
            for a in range(h.n):
                if h.adj[a] == 0:
                    continue
                key = canonical_key(h.local_complement(a), max_n)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return seen


@dataclass
class ClassRecord:
    representative: Graph
    orbit_size: int  # non-isomorphic graphs inside the class
    n: int
    edges: int
    sr_max: int
    ri2: Tuple[int, ...]
    ri3: Tuple[int, ...]
    two_colorable: bool

    def to_json(self) -> dict:
        return {
            "representative_edges": [[a + 1, b + 1] for a, b in self.representative.edges()],
            "orbit_size": self.orbit_size,
            "vertices": self.n,
            "edges": self.edges,
            "sr_max": self.sr_max,
            "ri2": list(self.ri2),
            "ri3": list(self.ri3),
            "two_colorable": self.two_colorable,
        }


def classify(n: int, cross_check: bool = False) -> List[ClassRecord]:
    """Partition connected isomorphism classes on n vertices into LC classes
    via orbit closure over canonical forms; one record per class."""
    if n > 8:
        raise ValueError("classification limited to n <= 8")
    assigned: Dict[Tuple[int, ...], int] = {}
    classes: List[List[Tuple[int, ...]]] = []
    for g in enumerate_connected_graphs(n):
        if g.adj in assigned:
            continue
        keys = _iso_orbit_keys(g, max_n=n)
        idx = len(classes)
        classes.append(sorted(keys))
        for key in keys:
            if key in assigned:
                raise AssertionError("LC orbits of distinct classes collided")
            assigned[key] = idx
    records = []
    for members in classes:
        rep = Graph(n, min(members))
        ri2, ri3 = ent.rank_index(rep)
        records.append(
            ClassRecord(
                representative=rep,
                orbit_size=len(members),
                n=n,
                edges=rep.edge_count(),
                sr_max=ent.max_schmidt_rank(rep),
                ri2=ri2,
                ri3=ri3,
                two_colorable=any(
                    two_coloring(Graph(n, adj)) is not None for adj in members
                ),
            )
        )
    records.sort(key=lambda r: (r.edges, r.representative.adj))
    if cross_check:
        # The algebraic test must confirm that distinct classes are distinct.
        for i in range(len(records)):
            for j in range(i + 1, len(records)):
                if are_lc_equivalent(
                    records[i].representative, records[j].representative
                ):
                    raise AssertionError("distinct orbit classes are LC-equivalent")
    return records


__all__ = [
    "LcWitness",
    "are_lc_equivalent",
    "lc_orbit",
    "ClassRecord",
    "classify",
]
