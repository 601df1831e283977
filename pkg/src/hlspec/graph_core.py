"""Small immutable graphs, a graph6 codec, and basic structural queries.

Vertices are always 0..n-1.  Graph is simple and undirected; Multigraph
(loops and parallel edges allowed) exists to drive reduction algorithms
that create them.  Everything downstream builds on this module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class Graph6Error(ValueError):
    """Malformed graph6 input.  byte_offset points at the offending byte."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Duplicate edges in the constructor collapse silently (set semantics);
    self-loops are rejected.  Equality and hashing are by labeled content,
    not isomorphism.
    """

    __slots__ = ("n", "_adj", "_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} in a simple graph")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self._mask: tuple[int, ...] = tuple(
            sum(1 << w for w in s) for s in adj
        )
        self.n = n

    # With __slots__ and no setters the instance is immutable in practice;
    # guard against accidental attribute rebinding all the same.
    def __setattr__(self, name, value):
        if hasattr(self, name):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        """Neighbors of v as a bitmask (bit w set iff v~w)."""
        return self._mask[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._adj)

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    def adjacency_rows(self) -> list[list[int]]:
        """Dense 0/1 adjacency matrix as nested lists."""
        return [
            [1 if w in self._adj[v] else 0 for w in range(self.n)]
            for v in range(self.n)
        ]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class EdgeSet:
    """A set of unordered vertex pairs, each an edge of a host graph."""

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, g: Graph, pairs: Iterable[tuple[int, int]]) -> "EdgeSet":
        norm = set()
        for u, v in pairs:
            a, b = (u, v) if u < v else (v, u)
            if not g.has_edge(a, b):
                raise ValueError(f"({u},{v}) is not an edge of the host graph")
            norm.add((a, b))
        return cls(frozenset(norm))

    def complement_in(self, g: Graph) -> "EdgeSet":
        """Edges of g not in this set."""
        return EdgeSet(frozenset(e for e in g.edges() if e not in self.pairs))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        u, v = pair
        return ((u, v) if u < v else (v, u)) in self.pairs


# ---------------------------------------------------------------------------
# graph6 codec (short form, n <= 62)
# ---------------------------------------------------------------------------

_G6_MIN, _G6_MAX = 63, 126


def parse_graph6(text: str) -> Graph:
    """Decode one short-form graph6 string into a Graph.

    Accepted alphabet is ASCII 63..126.  The first byte encodes n; the
    remaining bytes pack the upper triangle of the adjacency matrix in
    column-major order, 6 bits per byte, zero-padded.  Raises Graph6Error
    (with a byte offset) for the long form, bad bytes, wrong length, or
    nonzero padding bits.
    """
    data = text.strip().encode("ascii", errors="replace")
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    for off, byte in enumerate(data):
        if not (_G6_MIN <= byte <= _G6_MAX):
            raise Graph6Error(f"byte {byte!r} outside graph6 alphabet", off)
    if data[0] == 126:
        raise Graph6Error("long-form graph6 (n > 62) is not supported", 0)
    n = data[0] - 63
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 < need:
        raise Graph6Error(
            f"truncated graph6 string: need {need} data bytes, got {len(data) - 1}",
            len(data),
        )
    if len(data) - 1 > need:
        raise Graph6Error(
            f"oversized graph6 string: need {need} data bytes, got {len(data) - 1}",
            1 + need,
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[1 + k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    while k < 6 * need:
        byte = data[1 + k // 6] - 63
        if (byte >> (5 - k % 6)) & 1:
            raise Graph6Error("nonzero padding bit", 1 + k // 6)
        k += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    """Encode a Graph as a short-form graph6 string (requires n <= 62)."""
    if g.n > 62:
        raise ValueError("short-form graph6 requires n <= 62")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------

def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, ordered by smallest member."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def cut_vertices(g: Graph) -> frozenset[int]:
    """Articulation vertices, by the usual depth-first lowpoint computation."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    cuts: set[int] = set()
    timer = 0

    def visit(root: int) -> None:
        nonlocal timer
        # Iterative DFS keeps us clear of recursion limits at n = 62.
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(sorted(g.neighbors(root))))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = u
                    if u == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent[u]:
                    low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)

    for v in range(g.n):
        if disc[v] == -1:
            visit(v)
    return frozenset(cuts)


def induced_delete(g: Graph, deleted: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Delete a vertex set; return the induced remainder and the old->new map.

    Surviving vertices are relabeled contiguously in increasing order, so
    callers can translate names in the reduced graph back to the original.
    """
    dset = set(deleted)
    for v in dset:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in dset]
    old_to_new = {v: i for i, v in enumerate(keep)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges()
        if u in old_to_new and v in old_to_new
    ]
    return Graph(len(keep), edges), old_to_new


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on a kept vertex set, with the old->new map."""
    kset = set(keep)
    return induced_delete(g, (v for v in range(g.n) if v not in kset))


def spanning_subgraph(g: Graph, edge_set: EdgeSet) -> Graph:
    """Same vertex set, edges restricted to edge_set."""
    return Graph(g.n, list(edge_set))


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A 2-coloring as (side0, side1), or None if an odd cycle exists.

    The smallest vertex of each component goes to side0, so the result is
    deterministic.
    """
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return (
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


# ---------------------------------------------------------------------------
# multigraphs
# ---------------------------------------------------------------------------

class Multigraph:
    """Mutable multigraph: loops and parallel edges allowed, vertices deletable.

    Edges are stored as a multiplicity map keyed by sorted pairs; a loop is
    the pair (v, v).  A loop contributes 2 to its vertex's degree.
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self.vertices: set[int] = set(vertices)
        self._mult: dict[tuple[int, int], int] = {}
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_graph(cls, g: Graph) -> "Multigraph":
        mg = cls(range(g.n))
        for u, v in g.edges():
            mg.add_edge(u, v)
        return mg

    @staticmethod
    def _key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u <= v else (v, u)

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        if u not in self.vertices or v not in self.vertices:
            raise ValueError(f"edge ({u},{v}) touches a missing vertex")
        key = self._key(u, v)
        self._mult[key] = self._mult.get(key, 0) + count

    def remove_edge(self, u: int, v: int, count: int = 1) -> None:
        key = self._key(u, v)
        have = self._mult.get(key, 0)
        if have < count:
            raise ValueError(f"removing {count} copies of {key}, only {have} present")
        if have == count:
            del self._mult[key]
        else:
            self._mult[key] = have - count

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get(self._key(u, v), 0)

    def delete_vertex(self, v: int) -> None:
        if v not in self.vertices:
            raise ValueError(f"vertex {v} not present")
        for key in [k for k in self._mult if v in k]:
            del self._mult[key]
        self.vertices.remove(v)

    def degree(self, v: int) -> int:
        d = 0
        for (a, b), mult in self._mult.items():
            if a == v and b == v:
                d += 2 * mult
            elif a == v or b == v:
                d += mult
        return d

    def neighbors(self, v: int) -> set[int]:
        """Distinct neighbors other than v itself."""
        out = set()
        for a, b in self._mult:
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return out

    def loop_count(self, v: int) -> int:
        return self._mult.get((v, v), 0)

    def edge_items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self._mult.items())

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def total_multiplicity(self) -> int:
        return sum(self._mult.values())

    def copy(self) -> "Multigraph":
        mg = Multigraph(self.vertices)
        mg._mult = dict(self._mult)
        return mg

    def signature(self) -> tuple[int, int]:
        """(vertex count, total edge multiplicity): a cheap state fingerprint."""
        return (len(self.vertices), self.total_multiplicity)

    def __repr__(self) -> str:
        return f"Multigraph(vertices={sorted(self.vertices)}, edges={self.edge_items()})"
