"""Immutable simple graphs stored as adjacency bit rows, plus the graph6 codec.

Vertices are ``0..n-1``.  Row ``v`` is an ``int`` whose bit ``u`` is set when
``uv`` is an edge.  Python integers are unbounded, so there is no width cap;
the desk-scale corpora stay well under 64 vertices anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

GRAPH6_HEADER = b">>graph6<<"


class EmptyRemainder(ValueError):
    """Raised when deleting vertices would leave the empty graph."""


class Graph6Error(ValueError):
    """Malformed graph6 record."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graphs must have at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced on ``within``."""
        left = self.all_mask if within is None else within
        comps = []
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & left & ~comp
                comp |= frontier
            comps.append(comp)
            left &= ~comp
        return comps

    def is_connected(self) -> bool:
        return len(self.component_masks()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count}, g6={encode_graph6(self).decode()!r})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop pair ({u}, {u})")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex out of range in pair ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph(g1.n + g2.n, g1.rows + tuple(r << shift for r in g2.rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts; ``g2`` is shifted by ``g1.n``."""
    shift = g1.n
    m1 = g1.all_mask
    m2 = g2.all_mask << shift
    rows = tuple(r | m2 for r in g1.rows) + tuple((r << shift) | m1 for r in g2.rows)
    return Graph(g1.n + g2.n, rows)


class InducedSubgraph(NamedTuple):
    graph: Graph
    labels: tuple[int, ...]  # labels[new] = old vertex

    def old_to_new(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.labels)}


def induced(g: Graph, keep: Iterable[int] | int) -> InducedSubgraph:
    keep_mask = keep if isinstance(keep, int) else to_mask(keep)
    labels = tuple(bits(keep_mask))
    if not labels:
        raise EmptyRemainder("induced subgraph on the empty set")
    index = {old: new for new, old in enumerate(labels)}
    rows = []
    for old in labels:
        row = 0
        for u in bits(g.rows[old] & keep_mask):
            row |= 1 << index[u]
        rows.append(row)
    return InducedSubgraph(Graph(len(labels), tuple(rows)), labels)


def delete_vertices(g: Graph, s: Iterable[int] | int) -> InducedSubgraph:
    """``G \\ S``: the subgraph induced on the complement of ``s``."""
    s_mask = s if isinstance(s, int) else to_mask(s)
    if s_mask & ~g.all_mask:
        raise ValueError("vertex set references vertices outside the graph")
    rest = g.all_mask & ~s_mask
    if not rest:
        raise EmptyRemainder("deleting every vertex leaves an empty graph")
    return induced(g, rest)


# --- graph6 -------------------------------------------------------------


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_size(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise Graph6Error("empty record")
    for b in data:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside 63..126")
    vals = [b - 63 for b in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    if n < 1:
        raise Graph6Error("graph6 record with zero vertices")
    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} edge bytes, got {len(body)}")
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_file(path) -> list[Graph]:
    with open(path, "rb") as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


def write_graph6_file(path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + b"\n")
            count += 1
    return count
