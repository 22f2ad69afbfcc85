"""Exact graph invariants: minimum degree, vertex connectivity, circumference
with a witness cycle, longest path, and the residual invariants of ``G \\ C``.

Degenerate cycles are first class: a lone vertex is a cycle of length 1 and
an edge a cycle of length 2.  An empty path has length -1.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import EmptyRemainder, Graph, bits, delete_vertices, to_mask

EXHAUSTIVE_CAP = 12


class BudgetExceeded(RuntimeError):
    """The solver ran past its deadline; ``best`` is a valid lower-bound witness."""

    def __init__(self, best):
        super().__init__("time budget exceeded")
        self.best = best


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class CycleWitness:
    kind: str  # "vertex" | "edge" | "proper"
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_vertices(cls, vertices) -> "CycleWitness":
        vs = tuple(vertices)
        kind = {1: "vertex", 2: "edge"}.get(len(vs), "proper")
        if not vs:
            raise ValueError("a cycle has at least one vertex")
        return cls(kind, vs)

    @property
    def mask(self) -> int:
        return to_mask(self.vertices)


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def is_valid_cycle(g: Graph, w: CycleWitness) -> bool:
    vs = w.vertices
    if len(set(vs)) != len(vs) or not vs or any(not 0 <= v < g.n for v in vs):
        return False
    expected = {1: "vertex", 2: "edge"}.get(len(vs), "proper")
    if w.kind != expected:
        return False
    if len(vs) == 1:
        return True
    if len(vs) == 2:
        return g.has_edge(*vs)
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def is_valid_path(g: Graph, w: PathWitness) -> bool:
    vs = w.vertices
    if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
        return False
    return all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))


@dataclass(frozen=True)
class Residual:
    cbar: Optional[int]
    pbar: int
    residual_empty: bool
    cycle: Optional[CycleWitness] = None  # in G's labels
    path: Optional[PathWitness] = None


@dataclass(frozen=True)
class InvariantProfile:
    n: int
    delta: int
    kappa: int
    c: int
    cycle: CycleWitness
    cbar: Optional[int]
    pbar: int
    residual_empty: bool
    residual_cycle: Optional[CycleWitness] = None
    residual_path: Optional[PathWitness] = None
    incomplete: bool = False


# --- degree and connectivity ----------------------------------------------


def min_degree(g: Graph) -> int:
    return min(g.degree(v) for v in range(g.n))


def _local_connectivity(g: Graph, s: int, t: int, limit: int) -> int:
    """Max number of internally disjoint s-t paths (s, t non-adjacent), capped at ``limit``.

    Vertex-split unit-capacity network: node 2v is v_in, 2v+1 is v_out.
    """
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {i: [] for i in range(2 * g.n)}

    def add(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap[(a, b)] = 0
            cap.setdefault((b, a), 0)
        cap[(a, b)] += c

    big = g.n
    for v in range(g.n):
        add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        add(2 * u + 1, 2 * v, big)
        add(2 * v + 1, 2 * u, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Minimum vertex cut size; ``n-1`` for complete graphs, 0 if disconnected or n = 1."""
    n = g.n
    if n == 1 or not g.is_connected():
        return 0
    if g.is_complete():
        return n - 1
    # Esfahanian-Hakimi pair selection around a minimum-degree vertex.
    v = min(range(n), key=lambda x: (g.degree(x), x))
    best = g.degree(v)
    nbrs = g.rows[v]
    for w in range(n):
        if w != v and not nbrs >> w & 1:
            best = min(best, _local_connectivity(g, v, w, best))
    nb = list(bits(nbrs))
    for i, x in enumerate(nb):
        for y in nb[i + 1:]:
            if not g.has_edge(x, y):
                best = min(best, _local_connectivity(g, x, y, best))
    return best


def biconnected_blocks(g: Graph) -> list[int]:
    """Vertex masks of the blocks (biconnected components, bridges included)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    stack: list[tuple[int, int]] = []
    counter = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not g.rows[root]:
            blocks.append(1 << root)
            continue
        work = [(root, -1, iter(g.neighbors(root)))]
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((v, w))
                    work.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    m = 0
                    while True:
                        a, b = stack.pop()
                        m |= (1 << a) | (1 << b)
                        if (a, b) == (parent, v):
                            break
                    blocks.append(m)
    return blocks


def twin_classes(g: Graph) -> list[int]:
    """For each vertex, the mask of its twins (same open or same closed neighbourhood) with smaller index."""
    lower = [0] * g.n
    seen_open: dict[int, int] = {}
    seen_closed: dict[int, int] = {}
    for v in range(g.n):
        o = g.rows[v]
        c = o | (1 << v)
        lower[v] = seen_open.get(o, 0) | seen_closed.get(c, 0)
        seen_open[o] = seen_open.get(o, 0) | (1 << v)
        seen_closed[c] = seen_closed.get(c, 0) | (1 << v)
    return lower


# --- branch and bound ---------------------------------------------------------


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, seconds: Optional[float]):
        self.at = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self, best) -> None:
        if self.at is None:
            return
        self.ticks += 1
        if self.ticks & 1023 == 0 and time.monotonic() > self.at:
            raise BudgetExceeded(best)


def _reach(rows, v: int, free: int) -> int:
    """Vertices reachable from ``v`` through ``free`` (``v`` itself excluded)."""
    seen = 0
    frontier = rows[v] & free
    while frontier:
        seen |= frontier
        nxt = 0
        for w in bits(frontier):
            nxt |= rows[w]
        frontier = nxt & free & ~seen
    return seen


def _greedy_cycle(g: Graph, allowed: int) -> list[int]:
    """Warnsdorff-style path growth; close at the earliest neighbour of the endpoint."""
    rows = g.rows
    best: list[int] = []
    for s in bits(allowed):
        path = [s]
        used = 1 << s
        v = s
        while True:
            cand = rows[v] & allowed & ~used
            if not cand:
                break
            v = min(bits(cand), key=lambda w: ((rows[w] & allowed & ~used).bit_count(), w))
            path.append(v)
            used |= 1 << v
        for end in (path, path[::-1]):
            last = rows[end[-1]]
            for i in range(len(end) - 2):
                if last >> end[i] & 1:
                    if len(end) - i > len(best):
                        best = end[i:]
                    break
    return best


def longest_cycle(g: Graph, time_budget: Optional[float] = None) -> tuple[int, CycleWitness]:
    """Circumference with a witness, under the vertex/edge degenerate conventions."""
    if g.edge_count == 0:
        return 1, CycleWitness.from_vertices([0])
    u, v = g.edges()[0]
    best = [u, v]
    seed = _greedy_cycle(g, g.all_mask)
    if len(seed) >= 3:
        best = seed
    deadline = _Deadline(time_budget)
    rows = g.rows
    smaller_twins = twin_classes(g)
    blocks = sorted(biconnected_blocks(g), key=lambda m: (-m.bit_count(), m & -m))
    for block in blocks:
        if block.bit_count() <= len(best):
            break
        allowed = block
        for s in bits(block):
            if allowed.bit_count() <= len(best):
                break
            if smaller_twins[s] & block:
                allowed &= ~(1 << s)
                continue
            best = _cycles_through(rows, s, allowed, best, smaller_twins, deadline)
            allowed &= ~(1 << s)
    best_w = best
    return len(best_w), CycleWitness.from_vertices(_canonical_rotation(best_w))


def _canonical_rotation(cycle: list[int]) -> tuple[int, ...]:
    if len(cycle) <= 2:
        return tuple(sorted(cycle))
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def _cycles_through(rows, s, allowed, best, smaller_twins, deadline):
    """Search cycles through ``s`` inside ``allowed``; return the best vertex list found."""
    s_bit = 1 << s
    s_nbrs = rows[s] & allowed
    if s_nbrs.bit_count() < 2:
        return best
    state = {"best": best}
    dead: set[tuple[int, int]] = set()
    path = [s]

    def dfs(v: int, visited: int) -> None:
        deadline.check(state["best"])
        key = (visited, v)
        if key in dead:
            return
        dead.add(key)
        k = len(path)
        if k >= 3 and rows[v] & s_bit and k > len(state["best"]):
            state["best"] = list(path)
        free = allowed & ~visited
        reach = _reach(rows, v, free)
        # extensions must be able to return to s
        if not reach & s_nbrs or k + reach.bit_count() <= len(state["best"]):
            return
        for w in bits(rows[v] & free):
            if smaller_twins[w] & free:
                continue
            path.append(w)
            dfs(w, visited | (1 << w))
            path.pop()

    dfs(s, s_bit)
    return state["best"]


def longest_path(g: Graph, time_budget: Optional[float] = None) -> tuple[int, PathWitness]:
    """Longest simple path (edge count); 0 for a single vertex."""
    rows = g.rows
    full = g.all_mask
    smaller_twins = twin_classes(g)
    deadline = _Deadline(time_budget)
    best = [0]
    dead: set[tuple[int, int]] = set()
    path: list[int] = []
    state = {"best": best}

    def dfs(v: int, visited: int) -> None:
        deadline.check(state["best"])
        key = (visited, v)
        if key in dead:
            return
        dead.add(key)
        if len(path) > len(state["best"]):
            state["best"] = list(path)
        free = full & ~visited
        reach = _reach(rows, v, free)
        if len(path) + reach.bit_count() <= len(state["best"]):
            return
        for w in bits(rows[v] & free):
            if smaller_twins[w] & free:
                continue
            path.append(w)
            dfs(w, visited | (1 << w))
            path.pop()

    comps = sorted(g.component_masks(), key=lambda m: -m.bit_count())
    for comp in comps:
        for s in bits(comp):
            if comp.bit_count() <= len(state["best"]):
                break
            if smaller_twins[s] & comp:
                continue
            path.append(s)
            dfs(s, 1 << s)
            path.pop()
    b = state["best"]
    return len(b) - 1, PathWitness(tuple(b))


# --- residual invariants ----------------------------------------------------


def residual_invariants(g: Graph, c: CycleWitness, time_budget: Optional[float] = None) -> Residual:
    """``c̄`` and ``p̄`` of ``G \\ C`` for this specific cycle ``C``."""
    try:
        sub = delete_vertices(g, c.mask)
    except EmptyRemainder:
        return Residual(cbar=None, pbar=-1, residual_empty=True)
    rg, labels = sub.graph, sub.labels
    cbar, cyc = longest_cycle(rg, time_budget)
    pbar, pth = longest_path(rg, time_budget)
    return Residual(
        cbar=cbar,
        pbar=pbar,
        residual_empty=False,
        cycle=CycleWitness(cyc.kind, tuple(labels[v] for v in cyc.vertices)),
        path=PathWitness(tuple(labels[v] for v in pth.vertices)),
    )


def is_dominating_cycle(g: Graph, c: CycleWitness) -> bool:
    rest = g.all_mask & ~c.mask
    return all(not (g.rows[v] & rest) for v in bits(rest))


def every_longest_cycle_dominates(g: Graph, c: Optional[int] = None) -> bool:
    """Whether every longest cycle is dominating, without enumerating them.

    A longest cycle misses an edge ``uv`` exactly when ``G - {u, v}`` still has
    a cycle of length ``c``, so one solver call per edge decides the question.
    """
    if c is None:
        c = longest_cycle(g)[0]
    if c >= g.n - 1:
        return True
    for u, v in g.edges():
        rest = delete_vertices(g, (1 << u) | (1 << v))
        if longest_cycle(rest.graph)[0] >= c:
            return False
    return True


def all_longest_cycles(g: Graph) -> list[CycleWitness]:
    """Every longest cycle up to rotation and reflection (exhaustive, n <= 12)."""
    if g.n > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive cap exceeded: n={g.n} > {EXHAUSTIVE_CAP}")
    c, _ = longest_cycle(g)
    if c == 1:
        return [CycleWitness.from_vertices([v]) for v in range(g.n)]
    if c == 2:
        return [CycleWitness.from_vertices(e) for e in g.edges()]
    rows = g.rows
    out: list[CycleWitness] = []
    for s in range(g.n):
        higher = g.all_mask & ~((2 << s) - 1)
        path = [s]

        def dfs(v: int, visited: int) -> None:
            if len(path) == c:
                if rows[v] >> s & 1 and path[1] < path[-1]:
                    out.append(CycleWitness("proper", tuple(path)))
                return
            free = higher & ~visited
            if len(path) + _reach(rows, v, free).bit_count() < c:
                return
            for w in bits(rows[v] & free):
                path.append(w)
                dfs(w, visited | (1 << w))
                path.pop()

        dfs(s, 1 << s)
    return out


def compute_profile(g: Graph, time_budget: Optional[float] = None) -> InvariantProfile:
    """All Theorem-1 invariants for one graph.

    On budget overrun the returned profile is flagged ``incomplete`` and carries
    the best cycle found so far (a lower bound on the circumference).
    """
    delta = min_degree(g)
    kappa = vertex_connectivity(g)
    incomplete = False
    try:
        c, cyc = longest_cycle(g, time_budget)
    except BudgetExceeded as exc:
        incomplete = True
        cyc = CycleWitness.from_vertices(_canonical_rotation(exc.best))
        c = cyc.length
    try:
        res = residual_invariants(g, cyc, time_budget)
    except BudgetExceeded:
        return InvariantProfile(g.n, delta, kappa, c, cyc, None, -1, False, incomplete=True)
    return InvariantProfile(
        n=g.n,
        delta=delta,
        kappa=kappa,
        c=c,
        cycle=cyc,
        cbar=res.cbar,
        pbar=res.pbar,
        residual_empty=res.residual_empty,
        residual_cycle=res.cycle,
        residual_path=res.path,
        incomplete=incomplete,
    )
