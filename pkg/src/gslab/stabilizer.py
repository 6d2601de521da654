"""Stabilizer bookkeeping in the binary representation: generator matrices,
signed-group equality, the stabilizer-to-graph standard form, and the dense
reduced states of graph states."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import dense, f2linalg
from . import localclifford as lc
from .f2linalg import BitMatrix
from .graphs import Graph
from .pauli import PauliString


class GeneratorMatrix:
    """N independent commuting Hermitian Pauli strings presenting a stabilizer."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[PauliString], validate: bool = True):
        rows = list(rows)
        if not rows:
            raise ValueError("empty generator set")
        n = rows[0].n
        if any(r.n != n for r in rows):
            raise ValueError("mixed row sizes")
        self.n = n
        self.rows = rows
        if validate:
            self.validate()

    def validate(self) -> None:
        for r in self.rows:
            if not r.is_hermitian():
                raise ValueError(f"non-Hermitian generator {r!r}")
        for i, a in enumerate(self.rows):
            for b in self.rows[i + 1 :]:
                if not a.commutes(b):
                    raise ValueError("generators do not commute")
        if self.binary_rank() != len(self.rows):
            raise ValueError("generators not independent")

    def binary_rows(self) -> List[int]:
        """Rows as 2n-bit masks (x | z << n)."""
        return [r.x | (r.z << self.n) for r in self.rows]

    def binary_rank(self) -> int:
        return f2linalg.rank_of_rows(self.binary_rows(), 2 * self.n)

    def signs(self) -> List[int]:
        return [r.sign() for r in self.rows]

    def conjugate_by_frame(self, frame: Sequence[lc.LocalClifford]) -> "GeneratorMatrix":
        return GeneratorMatrix(
            [r.conjugate_by_frame(list(frame)) for r in self.rows], validate=False
        )

    def group_elements(self) -> List[PauliString]:
        """All 2^k signed elements generated by the rows (small k only)."""
        elems = [PauliString.identity(self.n)]
        for row in self.rows:
            elems += [e * row for e in elems]
        return elems

    def to_labels(self) -> List[str]:
        return [r.to_label() for r in self.rows]

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> "GeneratorMatrix":
        return cls([PauliString.from_label(s) for s in labels])

    def __repr__(self) -> str:
        return f"GeneratorMatrix({self.to_labels()})"


def generator_matrix(g: Graph) -> GeneratorMatrix:
    """Standard form (1|Gamma) with all signs +1: rows K_a = X_a Z_{N_a}."""
    rows = [PauliString(g.n, 1 << a, g.adj[a]) for a in range(g.n)]
    return GeneratorMatrix(rows, validate=False)


def same_stabilizer(a: GeneratorMatrix, b: GeneratorMatrix) -> bool:
    """True iff both generate the identical signed stabilizer group."""
    if a.n != b.n:
        raise ValueError("size mismatch")
    a.validate()
    b.validate()
    # Symplectic orthogonality of every cross pair.
    for ra in a.rows:
        for rb in b.rows:
            if not ra.commutes(rb):
                return False
    # Express each row of b as a product of rows of a and verify exactly.
    cols = BitMatrix(a.binary_rows(), 2 * a.n).transpose()
    for rb in b.rows:
        combo = f2linalg.solve(cols, rb.x | (rb.z << a.n))
        if combo is None:
            return False
        prod = PauliString.identity(a.n)
        for j in range(len(a.rows)):
            if (combo >> j) & 1:
                prod = prod * a.rows[j]
        if prod != rb:
            return False
    return True


def _apply_h(rows: List[PauliString], a: int) -> List[PauliString]:
    """Conjugate every row by H at qubit a: X<->Z, Y -> -Y."""
    out = []
    bit = 1 << a
    for r in rows:
        xb, zb = r.x & bit, r.z & bit
        nx = (r.x & ~bit) | (bit if zb else 0)
        nz = (r.z & ~bit) | (bit if xb else 0)
        out.append(PauliString(r.n, nx, nz, r.phase + (2 if (xb and zb) else 0)))
    return out


def _apply_s(rows: List[PauliString], a: int) -> List[PauliString]:
    """Conjugate every row by S at qubit a: X -> Y (phase +i on XZ form)."""
    out = []
    bit = 1 << a
    for r in rows:
        if r.x & bit:
            out.append(PauliString(r.n, r.x, r.z ^ bit, r.phase + 1))
        else:
            out.append(r)
    return out


def _apply_z(rows: List[PauliString], a: int) -> List[PauliString]:
    bit = 1 << a
    return [
        PauliString(r.n, r.x, r.z, r.phase + (2 if r.x & bit else 0)) for r in rows
    ]


def stabilizer_to_graph(
    m: GeneratorMatrix,
) -> Tuple[Graph, List[lc.LocalClifford]]:
    """Graph G and per-vertex local Clifford C with C S(m) C^dag = S(G).

    Gaussian elimination on the X block; where a pivot column is missing a
    Hadamard swaps that qubit's X/Z columns; the residual Z diagonal is cleared
    with phase gates and signs with Pauli Z's.
    """
    m.validate()
    n = m.n
    rows = list(m.rows)
    frame = [lc.IDENTITY] * n

    def has_x(row: PauliString, col: int) -> bool:
        return bool(row.x & (1 << col))

    pivot_col: List[int] = []
    used = 0
    for r in range(n):
        # Find an X pivot among rows >= r in an unused column.
        found = None
        for col in range(n):
            if used & (1 << col):
                continue
            for i in range(r, n):
                if has_x(rows[i], col):
                    found = (i, col)
                    break
            if found:
                break
        if found is None:
            # Remaining rows are pure Z on unused columns; Hadamard one in.
            for col in range(n):
                if used & (1 << col):
                    continue
                if any(rows[i].z & (1 << col) for i in range(r, n)):
                    rows = _apply_h(rows, col)
                    frame[col] = lc.H * frame[col]
                    for i in range(r, n):
                        if has_x(rows[i], col):
                            found = (i, col)
                            break
                    break
            if found is None:
                raise ValueError("input does not present a full-rank stabilizer")
        i, col = found
        rows[r], rows[i] = rows[i], rows[r]
        for j in range(n):
            if j != r and has_x(rows[j], col):
                rows[j] = rows[j] * rows[r]
        pivot_col.append(col)
        used |= 1 << col

    # Reorder generators so row index matches its pivot qubit.
    order = sorted(range(n), key=lambda r: pivot_col[r])
    rows = [rows[r] for r in order]

    # Clear the Z diagonal with phase gates.
    for a in range(n):
        if rows[a].z & (1 << a):
            rows = _apply_s(rows, a)
            frame[a] = lc.S * frame[a]

    # Now rows must be (1|Gamma) up to signs; build the graph and fix signs.
    adj = [0] * n
    for a in range(n):
        if rows[a].x != (1 << a) or (rows[a].z & (1 << a)):
            raise ValueError("input does not present a full-rank stabilizer")
        adj[a] = rows[a].z
    g = Graph(n, adj)

    for a in range(n):
        if rows[a].sign() < 0:
            rows = _apply_z(rows, a)
            frame[a] = lc.Z * frame[a]
    if any(r.sign() < 0 for r in rows):
        raise ValueError("sign fixing failed")
    return g, frame


def dense_state_vector(g: Graph, z_offset: int = 0) -> np.ndarray:
    """Graph-basis state sigma_z^offset |G> as a dense vector (oracle path)."""
    return dense.graph_state_vector(g, z_offset)


def reduced_density_matrix_simple(g: Graph, a_mask: int) -> np.ndarray:
    """rho_G^A = 2^{-|A|} sum of stabilizer elements supported inside A.

    The subgroup is found from the kernel of the cross-adjacency block: the
    element prod_a K_a^{c_a} lies in S_A iff c is inside A and Gamma_{BA} c = 0.
    """
    a_list = [v for v in range(g.n) if (a_mask >> v) & 1]
    k = len(a_list)
    if k > 10:
        raise ValueError("reduced state limited to |A| <= 10")
    pos = {v: i for i, v in enumerate(a_list)}
    b_list = [v for v in range(g.n) if not (a_mask >> v) & 1]
    # Rows: for each b outside A, the A-restricted neighborhood of b.
    rows = []
    for b in b_list:
        rows.append(sum(((g.adj[b] >> v) & 1) << i for i, v in enumerate(a_list)))
    kern = f2linalg.kernel_basis(BitMatrix(rows, k)) if k else []
    gens = generator_matrix(g)
    rho = np.zeros((1 << k, 1 << k), dtype=complex)
    for c_small in f2linalg.span(kern):
        # Lift the coefficient vector back to full vertex labels.
        elem = PauliString.identity(g.n)
        for i, v in enumerate(a_list):
            if (c_small >> i) & 1:
                elem = elem * gens.rows[v]
        if elem.support & ~a_mask:
            raise AssertionError("kernel element leaks outside A")
        # Restrict to the A qubits.
        x = sum(((elem.x >> v) & 1) << pos[v] for v in a_list)
        z = sum(((elem.z >> v) & 1) << pos[v] for v in a_list)
        ycount_full = bin(elem.x & elem.z).count("1")
        small = PauliString(k, x, z, elem.phase)
        rho += small.dense()
    return rho / (1 << k)


# -- stabilizer text format ---------------------------------------------------


def parse_stabilizer(text: str) -> GeneratorMatrix:
    """One generator per line, sign prefix then letters, e.g. '+XZIIZ'."""
    labels = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            labels.append(line)
    if not labels:
        raise ValueError("empty stabilizer file")
    return GeneratorMatrix.from_labels(labels)


def format_stabilizer(m: GeneratorMatrix) -> str:
    return "\n".join(m.to_labels()) + "\n"


__all__ = [
    "GeneratorMatrix",
    "generator_matrix",
    "same_stabilizer",
    "stabilizer_to_graph",
    "dense_state_vector",
    "reduced_density_matrix_simple",
    "parse_stabilizer",
    "format_stabilizer",
]
