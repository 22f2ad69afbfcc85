"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

from itertools import combinations, permutations

from circumference.graph import Graph


def brute_circumference(g: Graph) -> int:
    """Longest cycle by permutation enumeration; 2 for a forest with an edge, 1 without edges."""
    adj = g.has_edge
    for k in range(g.n, 2, -1):
        for subset in combinations(range(g.n), k):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue  # each cycle once per orientation
                order = (first,) + perm
                if all(adj(order[i], order[(i + 1) % k]) for i in range(k)):
                    return k
    return 2 if g.edge_count else 1


def brute_connectivity(g: Graph) -> int:
    """Smallest vertex set whose removal disconnects ``g``; ``n - 1`` for complete graphs."""
    if not g.is_connected():
        return 0
    for k in range(0, g.n - 1):
        for s in combinations(range(g.n), k):
            keep = g.all_mask
            for v in s:
                keep &= ~(1 << v)
            if len(g.component_masks(keep)) > 1:
                return k
    return g.n - 1


def brute_longest_path(g: Graph, allowed: int) -> int:
    """Longest path (edges) inside ``allowed``; -1 when empty."""
    verts = [v for v in range(g.n) if allowed >> v & 1]
    best = -1 if not verts else 0
    for k in range(len(verts), 1, -1):
        for perm in permutations(verts, k):
            if perm[0] < perm[-1] and all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
                return k - 1
    return best


def relabel(g: Graph, perm) -> Graph:
    rows = [0] * g.n
    for u, v in g.edges():
        a, b = perm[u], perm[v]
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return Graph(g.n, tuple(rows))
