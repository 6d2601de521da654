"""Simple undirected graphs as immutable bitmask adjacency rows, plus the
transformations the graph-state rules are written in: local complementation,
vertex deletion, two-coloring, canonical labeling and small-graph enumeration.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

CANONICAL_N_LIMIT = 8
ENUMERATE_N_LIMIT = 8


class Graph:
    """Simple graph on vertices 0..n-1; adjacency row a is an int bitmask of N_a."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise ValueError("adjacency size mismatch")
        for a, row in enumerate(adj):
            if row >> n:
                raise ValueError("adjacency bits beyond n")
            if row & (1 << a):
                raise ValueError("loop at vertex %d" % a)
        for a in range(n):
            for b in range(a + 1, n):
                if ((adj[a] >> b) & 1) != ((adj[b] >> a) & 1):
                    raise ValueError("adjacency not symmetric")
        self.n = n
        self.adj = tuple(adj)
        self._hash = hash((n, self.adj))

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError("loop edge (%d,%d)" % (a, b))
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("edge (%d,%d) out of range" % (a, b))
            if adj[a] & (1 << b):
                raise ValueError("duplicate edge (%d,%d)" % (a, b))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, adj)

    @classmethod
    def ring(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, n: int, center: int = 0) -> "Graph":
        return cls.from_edges(n, [(center, i) for i in range(n) if i != center])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])

    @classmethod
    def grid(cls, rows: int, cols: int) -> "Graph":
        """Cluster-state lattice; vertex (r,c) is r*cols + c."""
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return cls.from_edges(rows * cols, edges)

    @classmethod
    def grid3d(cls, nx: int, ny: int, nz: int) -> "Graph":
        edges = []
        for x in range(nx):
            for y in range(ny):
                for z in range(nz):
                    v = (x * ny + y) * nz + z
                    if z + 1 < nz:
                        edges.append((v, v + 1))
                    if y + 1 < ny:
                        edges.append((v, v + nz))
                    if x + 1 < nx:
                        edges.append((v, v + ny * nz))
        return cls(nx * ny * nz, _adj_from_edges(nx * ny * nz, edges))

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        return cls.from_edges(10, outer + inner + spokes)

    # -- basic queries -----------------------------------------------------

    def neighbors(self, a: int) -> List[int]:
        return _bits(self.adj[a])

    def neighbor_mask(self, a: int) -> int:
        return self.adj[a]

    def degree(self, a: int) -> int:
        return bin(self.adj[a]).count("1")

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] & (1 << b))

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (a, b)
            for a in range(self.n)
            for b in range(a + 1, self.n)
            if self.adj[a] & (1 << b)
        ]

    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.adj) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for a in _bits(frontier):
                nxt |= self.adj[a]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def connected_components(self) -> List[int]:
        """Vertex-set bitmasks of the connected components."""
        comps = []
        unseen = (1 << self.n) - 1
        while unseen:
            start = unseen & -unseen
            seen = start
            frontier = start
            while frontier:
                nxt = 0
                for a in _bits(frontier):
                    nxt |= self.adj[a]
                frontier = nxt & ~seen
                seen |= frontier
            comps.append(seen)
            unseen &= ~seen
        return comps

    # -- transformations ---------------------------------------------------

    def toggle_edge(self, a: int, b: int) -> "Graph":
        if a == b:
            raise ValueError("cannot toggle a loop")
        adj = list(self.adj)
        adj[a] ^= 1 << b
        adj[b] ^= 1 << a
        return Graph(self.n, adj)

    def local_complement(self, a: int) -> "Graph":
        """Complement the subgraph induced by the neighborhood of a."""
        if not 0 <= a < self.n:
            raise IndexError("vertex out of range")
        na = self.adj[a]
        adj = list(self.adj)
        for v in _bits(na):
            adj[v] ^= na & ~(1 << v)
        return Graph(self.n, adj)

    def delete_vertex(self, a: int) -> "Graph":
        """Remove vertex a; labels above a shift down by one."""
        if not 0 <= a < self.n:
            raise IndexError("vertex out of range")
        low = (1 << a) - 1
        adj = []
        for v in range(self.n):
            if v == a:
                continue
            r = self.adj[v]
            adj.append((r & low) | ((r >> (a + 1)) << a))
        return Graph(self.n - 1, adj)

    def isolate_vertex(self, a: int) -> "Graph":
        """Remove all edges at a, keeping the vertex in place."""
        adj = list(self.adj)
        for v in _bits(adj[a]):
            adj[v] &= ~(1 << a)
        adj[a] = 0
        return Graph(self.n, adj)

    def induced_subgraph(self, mask: int) -> "Graph":
        keep = _bits(mask)
        index = {v: i for i, v in enumerate(keep)}
        adj = [0] * len(keep)
        for v in keep:
            for w in _bits(self.adj[v] & mask):
                adj[index[v]] |= 1 << index[w]
        return Graph(len(keep), adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex a of self becomes perm[a] of the result."""
        adj = [0] * self.n
        for a in range(self.n):
            for b in _bits(self.adj[a]):
                adj[perm[a]] |= 1 << perm[b]
        return Graph(self.n, adj)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _adj_from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> List[int]:
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def local_complement(g: Graph, a: int) -> Graph:
    return g.local_complement(a)


def delete_vertex(g: Graph, a: int) -> Graph:
    return g.delete_vertex(a)


# -- two-coloring ------------------------------------------------------------


def two_coloring(g: Graph) -> Optional[Tuple[int, int]]:
    """Bipartition (as two vertex bitmasks) with no monochromatic edge, or None."""
    color: Dict[int, int] = {}
    for start in range(g.n):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    mask_a = sum(1 << v for v, c in color.items() if c == 0)
    mask_b = sum(1 << v for v, c in color.items() if c == 1)
    return mask_a, mask_b


def find_odd_cycle(g: Graph) -> Optional[List[int]]:
    """An odd cycle witnessing non-two-colorability, or None if bipartite."""
    color: Dict[int, int] = {}
    parent: Dict[int, int] = {}
    for start in range(g.n):
        if start in color:
            continue
        color[start] = 0
        parent[start] = -1
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    # Walk both endpoints up to the meeting point.
                    pv = [v]
                    pw = [w]
                    while pv[-1] != -1:
                        pv.append(parent[pv[-1]])
                    while pw[-1] != -1:
                        pw.append(parent[pw[-1]])
                    common = (set(pv) & set(pw)) - {-1}
                    meet = max(common, key=lambda x: -pv.index(x))
                    cycle = pv[: pv.index(meet) + 1] + pw[: pw.index(meet)][::-1]
                    return cycle
    return None


# -- canonical labeling ------------------------------------------------------


def canonical_form(g: Graph, max_n: int = CANONICAL_N_LIMIT) -> Graph:
    """Permutation-invariant representative: the relabeling minimizing the
    upper-triangular adjacency bitstring, found by lexicographic DFS."""
    perm = canonical_permutation(g, max_n)
    return g.relabel(perm)


def canonical_key(g: Graph, max_n: int = CANONICAL_N_LIMIT) -> Tuple[int, ...]:
    """Hashable canonical invariant: adjacency rows of the canonical form."""
    return canonical_form(g, max_n).adj


def canonical_permutation(g: Graph, max_n: int = CANONICAL_N_LIMIT) -> List[int]:
    """perm with g.relabel(perm) canonical; perm[old] = new position.

    Lexicographic DFS over vertex orderings: at position k only candidates with
    the minimal adjacency chunk against the placed prefix are extended, siblings
    related by a twin transposition are deduplicated, and whole subtrees are cut
    once their chunk prefix exceeds the best complete ordering found so far.
    """
    n = g.n
    if n > max_n:
        raise ValueError(f"canonical_form limited to n <= {max_n} (got {n})")
    if n <= 1:
        return list(range(n))
    adj = g.adj

    best_order: Optional[List[int]] = None
    best_chunks: Optional[List[int]] = None

    def extend(order: List[int], chunks: List[int], used: int) -> None:
        nonlocal best_order, best_chunks
        k = len(order)
        if k == n:
            if best_chunks is None or chunks < best_chunks:
                best_order = list(order)
                best_chunks = list(chunks)
            return
        min_chunk = None
        min_vs: List[int] = []
        for v in range(n):
            if used & (1 << v):
                continue
            row = adj[v]
            chunk = 0
            for u in order:
                chunk = (chunk << 1) | ((row >> u) & 1)
            if min_chunk is None or chunk < min_chunk:
                min_chunk = chunk
                min_vs = [v]
            elif chunk == min_chunk:
                min_vs.append(v)
        if best_chunks is not None:
            prefix = chunks + [min_chunk]
            if prefix > best_chunks[: k + 1]:
                return
        chunks.append(min_chunk)  # type: ignore[arg-type]
        taken: List[int] = []
        for v in min_vs:
            # A twin transposition (u v) is an automorphism; skip duplicates.
            pair_clear = ~(1 << v)
            if any(
                (adj[u] & pair_clear & ~(1 << u)) == (adj[v] & ~(1 << u) & pair_clear)
                for u in taken
            ):
                continue
            taken.append(v)
            extend(order + [v], chunks, used | (1 << v))
        chunks.pop()

    extend([], [], 0)
    assert best_order is not None
    perm = [0] * n
    for newpos, old in enumerate(best_order):
        perm[old] = newpos
    return perm


# -- enumeration -------------------------------------------------------------

_LEVEL_CACHE: Dict[int, List[Graph]] = {}


def _all_graphs_up_to_iso(n: int) -> List[Graph]:
    """All non-isomorphic graphs (connected or not) on n vertices, in canonical
    form, built by one-vertex extensions of the (n-1)-vertex list."""
    if n in _LEVEL_CACHE:
        return _LEVEL_CACHE[n]
    if n == 0:
        result = [Graph.empty(0)]
    elif n == 1:
        result = [Graph.empty(1)]
    else:
        prev = _all_graphs_up_to_iso(n - 1)
        seen = {}
        for base in prev:
            for attach in range(1 << (n - 1)):
                adj = list(base.adj) + [attach]
                for v in _bits(attach):
                    adj[v] |= 1 << (n - 1)
                cand = Graph(n, adj)
                key = canonical_key(cand)
                if key not in seen:
                    seen[key] = Graph(n, key)
        result = sorted(seen.values(), key=lambda h: (h.edge_count(), h.adj))
    _LEVEL_CACHE[n] = result
    return result


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs."""
    if n > ENUMERATE_N_LIMIT:
        raise ValueError(f"enumeration limited to n <= {ENUMERATE_N_LIMIT}")
    for g in _all_graphs_up_to_iso(n):
        if g.is_connected():
            yield g


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class (any connectivity)."""
    if n > ENUMERATE_N_LIMIT:
        raise ValueError(f"enumeration limited to n <= {ENUMERATE_N_LIMIT}")
    yield from _all_graphs_up_to_iso(n)


# -- text format -------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Graph text format: first line N, then one '<a> <b>' (1-based) per line."""
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
            if n < 0:
                raise ValueError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'a b'")
        a, b = int(parts[0]), int(parts[1])
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"line {lineno}: vertex out of range 1..{n}")
        if a == b:
            raise ValueError(f"line {lineno}: loop edge")
        edges.append((a - 1, b - 1))
    if n is None:
        raise ValueError("empty graph file")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise ValueError(str(exc)) from None


def format_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines += [f"{a + 1} {b + 1}" for a, b in g.edges()]
    return "\n".join(lines) + "\n"


__all__ = [
    "Graph",
    "local_complement",
    "delete_vertex",
    "two_coloring",
    "find_odd_cycle",
    "canonical_form",
    "canonical_key",
    "canonical_permutation",
    "enumerate_connected_graphs",
    "enumerate_graphs",
    "parse_graph",
    "format_graph",
]
