"""Immutable simple graphs backed by bit rows.

Vertices are the integers ``0..n-1``.  Row ``v`` of the adjacency matrix is
stored as a Python ``int`` whose bit ``u`` is set iff ``uv`` is an edge, so
neighbourhood intersection is a single ``&`` and cardinality is
``int.bit_count``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

Edge = tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``0..n-1`` stored as a bitmask."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"vertex set has members outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        vs = list(vertices)
        for v in vs:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside 0..{n - 1}")
        return cls(n, mask_of(vs))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.bits >> v & 1)

    def _check(self, other: "VertexSet") -> None:
        if other.n != self.n:
            raise ValueError("vertex sets over different ranges")

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def sorted(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Build one with :meth:`from_edges`, :func:`complete_graph` or
    :func:`generate_random`; "modifying" helpers return new graphs.
    """

    __slots__ = ("_n", "_rows", "_m")

    def __init__(self, n: int, rows: Sequence[int], *, check: bool = True) -> None:
        if n < 0:
            raise ValueError("n must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        rows = tuple(rows)
        if check:
            limit = 1 << n
            for v, r in enumerate(rows):
                if r < 0 or r >= limit:
                    raise ValueError(f"row {v} has bits outside 0..{n - 1}")
                if r >> v & 1:
                    raise ValueError(f"loop at vertex {v}")
                for u in iter_bits(r):
                    if not rows[u] >> v & 1:
                        raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self._n = n
        self._rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n, check=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def neighbors(self, v: int) -> int:
        return self._rows[v]

    def neighbor_set(self, v: int) -> VertexSet:
        return VertexSet(self._n, self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, r in enumerate(self._rows):
            yield from ((u, v) for v in iter_bits(r >> (u + 1) << (u + 1)))

    def edge_list(self) -> list[Edge]:
        return list(self.edges())

    def vertices(self) -> VertexSet:
        return VertexSet.full(self._n)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self._n, rows, check=False)

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self._n, rows, check=False)

    def spanning(self, edges: Iterable[Edge]) -> "Graph":
        """The spanning subgraph with the given edges, which must all be edges here."""
        h = Graph.from_edges(self._n, edges)
        if not self.contains_graph(h):
            raise ValueError("edge set is not contained in the host graph")
        return h

    def contains_graph(self, h: "Graph") -> bool:
        """True iff ``h`` is a spanning subgraph (same ``n``, ``E(h) ⊆ E(self)``)."""
        return h.n == self._n and all(hr & ~gr == 0 for hr, gr in zip(h.rows, self._rows))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..k-1`` in increasing vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        sel = mask_of(vs)
        rows = [0] * len(vs)
        for i, v in enumerate(vs):
            for u in iter_bits(self._rows[v] & sel):
                rows[i] |= 1 << pos[u]
        return Graph(len(vs), rows, check=False)

    def components(self) -> list[VertexSet]:
        """Connected components ordered by their least vertex."""
        seen = 0
        out = []
        for v in range(self._n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self._rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append(VertexSet(self._n, comp))
        return out

    def to_numpy(self) -> np.ndarray:
        return rows_to_numpy(self._rows, self._n)

    @classmethod
    def from_numpy(cls, adj: np.ndarray) -> "Graph":
        adj = np.asarray(adj, dtype=bool)
        n = adj.shape[0]
        if adj.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if np.any(np.diag(adj)):
            raise ValueError("adjacency matrix has loops")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix is not symmetric")
        return cls(n, _pack_rows(adj), check=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def rows_to_numpy(rows: Sequence[int], n: int) -> np.ndarray:
    """Boolean ``n x n`` matrix from bit rows."""
    nbytes = max(1, -(-n // 8))
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    return bits.reshape(n, nbytes * 8)[:, :n].astype(bool)


def _pack_rows(adj: np.ndarray) -> list[int]:
    packed = np.packbits(adj, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class RngSpec:
    """Seed plus stream index.

    The pair is fed to :class:`numpy.random.SeedSequence` as
    ``SeedSequence(seed, spawn_key=(stream,))``, so each stream is an
    independent, reproducible substream of the same seed.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng: "RngSpec | int | np.random.Generator | None") -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        rng = 0
    if isinstance(rng, int):
        rng = RngSpec(rng)
    return rng.generator()


def generate_random(n: int, p: float, rng: "RngSpec | int" = 0) -> Graph:
    """Sample G(n, p).

    One uniform double is drawn per pair ``u < v`` in row-major order from a
    PCG64 stream derived from ``rng``; the pair is an edge iff the draw is
    below ``p``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    gen = as_generator(rng)
    iu = np.triu_indices(n, 1)
    adj = np.zeros((n, n), dtype=bool)
    adj[iu] = gen.random(len(iu[0])) < p
    adj |= adj.T
    return Graph(n, _pack_rows(adj), check=False)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def common_neighborhood(g: Graph, z: VertexSet | Iterable[int]) -> VertexSet:
    """Vertices adjacent to every member of ``z``; all vertices when ``z`` is empty."""
    members = z if isinstance(z, VertexSet) else VertexSet.of(g.n, z)
    if members.n != g.n:
        raise ValueError("vertex set does not match the graph")
    acc = (1 << g.n) - 1
    for v in members:
        acc &= g.rows[v]
    return VertexSet(g.n, acc)


def edges_between(g: Graph, s: VertexSet | Iterable[int], t: VertexSet | Iterable[int]) -> int:
    """``|E_G(S, T)|``: edges with one endpoint in S and the other in T, each counted once."""
    sm = s.bits if isinstance(s, VertexSet) else mask_of(s)
    tm = t.bits if isinstance(t, VertexSet) else mask_of(t)
    rows = g.rows
    ordered = sum((rows[x] & tm).bit_count() for x in iter_bits(sm))
    both = sm & tm
    # edges inside S ∩ T were counted from both ends
    inner = sum((rows[x] & both).bit_count() for x in iter_bits(both)) // 2
    return ordered - inner
