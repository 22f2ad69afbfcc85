"""Graph sources for verification campaigns.

Random graphs use xorshift64* seeded through splitmix64, so a (n, p, seed)
triple names the same graph on every platform:

* splitmix64: ``z += 0x9E3779B97F4A7C15``; ``z = (z ^ z>>30) * 0xBF58476D1CE4E5B9``;
  ``z = (z ^ z>>27) * 0x94D049BB133111EB``; ``z ^= z>>31`` (all mod 2**64).
  The first output becomes the xorshift state (replaced by 1 if zero).
* xorshift64*: ``x ^= x>>12; x ^= x<<25; x ^= x>>27``, output ``x * 0x2545F4914F6CDD1D``.

Pair ``(i, j)``, ``i < j``, is drawn in row-major order (i outer) and kept iff
``draw * den < num * 2**64`` for ``p = num/den``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .graph import Graph, complete, disjoint_union, edgeless, from_edge_list, join

MASK64 = (1 << 64) - 1
DEDUP_CAP = 7
LABELED_CAP = 9


class GeneratorError(ValueError):
    pass


def splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64


def random_gnp(n: int, p, seed: int) -> Graph:
    if n < 1:
        raise GeneratorError("n must be at least 1")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GeneratorError("p must lie in [0, 1]")
    rng = XorShift64Star(seed)
    threshold = p.numerator << 64
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next() * p.denominator < threshold:
                edges.append((i, j))
    return from_edge_list(n, edges)


def random_augmentation(g: Graph, extra: int, p, seed: int) -> Graph:
    """Append ``extra`` vertices; each new vertex joins every earlier vertex with probability ``p``.

    Draws use the same generator and acceptance rule as :func:`random_gnp`,
    new vertex by new vertex, earlier vertices in increasing order.
    """
    p = Fraction(p)
    if not 0 <= p <= 1 or extra < 0:
        raise GeneratorError("need extra >= 0 and 0 <= p <= 1")
    rng = XorShift64Star(seed)
    threshold = p.numerator << 64
    rows = list(g.rows)
    for _ in range(extra):
        v = len(rows)
        rows.append(0)
        for u in range(v):
            if rng.next() * p.denominator < threshold:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(len(rows), tuple(rows))


# --- the sharp family -----------------------------------------------------------


@dataclass(frozen=True)
class FamilyExpectation:
    kappa: int
    delta: int
    n: int
    c: int
    cbar: int


def kappa_family(kappa: int, delta: int) -> Graph:
    """``(κ+1)K_{δ-κ+1} + K_κ``: hub vertices come last."""
    if kappa < 1 or delta < kappa:
        raise GeneratorError(f"need kappa >= 1 and delta >= kappa, got kappa={kappa}, delta={delta}")
    size = delta - kappa + 1
    copies = complete(size)
    for _ in range(kappa):
        copies = disjoint_union(copies, complete(size))
    return join(copies, complete(kappa))


def kappa_family_expectation(kappa: int, delta: int) -> FamilyExpectation:
    size = delta - kappa + 1
    return FamilyExpectation(
        kappa=kappa,
        delta=delta,
        n=(kappa + 1) * size + kappa,
        c=kappa * (delta - kappa + 2),
        cbar=size,
    )


# --- named graphs ---------------------------------------------------------------


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GeneratorError("cycle_k needs k >= 3")
    return from_edge_list(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return from_edge_list(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return join(edgeless(a), edgeless(b))


def named(name: str) -> Graph:
    if name == "petersen":
        return petersen()
    m = re.fullmatch(r"(cycle|path|complete)_(\d+)", name)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise GeneratorError(f"bad size in {name!r}")
        return {"cycle": cycle_graph, "path": path_graph, "complete": complete}[m.group(1)](k)
    m = re.fullmatch(r"complete_bipartite_(\d+)_(\d+)", name)
    if m and int(m.group(1)) >= 1 and int(m.group(2)) >= 1:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    raise GeneratorError(f"unknown graph name {name!r}")


# --- exhaustive enumeration --------------------------------------------------------


def _adjacency_key(g: Graph, perm) -> int:
    """Upper-triangle bit string of ``g`` relabelled by ``perm`` (new i = old perm[i])."""
    key = 0
    rows = g.rows
    for j in range(1, g.n):
        rj = rows[perm[j]]
        for i in range(j):
            key = (key << 1) | (rj >> perm[i] & 1)
    return key


def _refined_cells(g: Graph) -> list[list[int]]:
    """Ordered equitable partition by iterated degree refinement."""
    colour = [0] * g.n
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in g.neighbors(v)))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def canonical_key(g: Graph, brute: bool = False) -> tuple[int, int]:
    """Maximum adjacency string over labelings.

    ``brute=True`` takes all ``n!`` labelings; otherwise only labelings that
    list the refined colour cells in order, which yields the same invariant
    because isomorphisms preserve the refinement.
    """
    if brute:
        return g.n, max(_adjacency_key(g, p) for p in itertools.permutations(range(g.n)))
    cells = _refined_cells(g)
    best = -1
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        perm = [v for cell in choice for v in cell]
        k = _adjacency_key(g, perm)
        if k > best:
            best = k
    return g.n, best


def _all_graphs_up_to_iso(n: int) -> list[Graph]:
    level = {canonical_key(edgeless(1)): edgeless(1)}
    for m in range(2, n + 1):
        nxt: dict[tuple[int, int], Graph] = {}
        for g in level.values():
            for nbrs in range(1 << (m - 1)):
                rows = list(g.rows) + [nbrs]
                for u in range(m - 1):
                    if nbrs >> u & 1:
                        rows[u] |= 1 << (m - 1)
                h = Graph(m, tuple(rows))
                nxt.setdefault(canonical_key(h), h)
        level = nxt
    return [level[k] for k in sorted(level)]


def enumerate_connected(n: int, dedupe: bool = True) -> Iterator[Graph]:
    """Every connected graph on ``n`` vertices; one per isomorphism class when ``dedupe``."""
    if n < 1:
        raise GeneratorError("n must be at least 1")
    if dedupe:
        if n > DEDUP_CAP:
            raise GeneratorError(f"cap exceeded: deduplicated enumeration supports n <= {DEDUP_CAP}")
        for g in _all_graphs_up_to_iso(n):
            if g.is_connected():
                yield g
        return
    if n > LABELED_CAP:
        raise GeneratorError(f"cap exceeded: labeled enumeration supports n <= {LABELED_CAP}")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        g = from_edge_list(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])
        if g.is_connected():
            yield g


# --- textual generator specs --------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str  # kappa_family | gnp | named | enum
    params: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        aliases = {"enum": "enum", "enumerate_connected": "enum", "kappa_family": "kappa_family",
                   "gnp": "gnp", "named": "named"}
        if kind not in aliases:
            raise GeneratorError(f"unknown generator kind {kind!r}")
        kind = aliases[kind]
        if kind == "named":
            if not rest:
                raise GeneratorError("named: needs a graph name")
            return cls(kind, {"name": rest.strip()})
        params = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise GeneratorError(f"expected key=value in {item!r}")
            params[key.strip()] = value.strip()
        spec = cls(kind, _validate(kind, params))
        return spec

    def graphs(self) -> Iterator[tuple[str, Graph, Optional[FamilyExpectation]]]:
        """Yield ``(source id, graph, expectation)``; expectation is set for the sharp family."""
        p = self.params
        if self.kind == "kappa_family":
            k, d = p["k"], p["d"]
            yield f"kappa_family:k={k},d={d}", kappa_family(k, d), kappa_family_expectation(k, d)
        elif self.kind == "named":
            yield f"named:{p['name']}", named(p["name"]), None
        elif self.kind == "enum":
            for i, g in enumerate(enumerate_connected(p["n"], dedupe=p["dedupe"])):
                yield f"enum:n={p['n']}#{i}", g, None
        else:
            for i in range(p["count"]):
                seed = p["seed"] + i
                yield f"gnp:n={p['n']},p={p['p']},seed={seed}", random_gnp(p["n"], p["p"], seed), None

    def __str__(self) -> str:
        if self.kind == "named":
            return f"named:{self.params['name']}"
        if self.kind == "enum":
            return f"enum:n={self.params['n']}" + ("" if self.params["dedupe"] else ",mode=labeled")
        return self.kind + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())


def _validate(kind: str, raw: dict) -> dict:
    def integer(name, default=None):
        if name not in raw:
            if default is None:
                raise GeneratorError(f"{kind}: missing parameter {name!r}")
            return default
        try:
            return int(raw[name])
        except ValueError:
            raise GeneratorError(f"{kind}: {name} must be an integer") from None

    if kind == "kappa_family":
        k, d = integer("k"), integer("d")
        if k < 1 or d < k:
            raise GeneratorError("kappa_family needs k >= 1 and d >= k")
        return {"k": k, "d": d}
    if kind == "enum":
        n = integer("n")
        dedupe = raw.get("mode", "dedupe") != "labeled"
        if n < 1 or n > (DEDUP_CAP if dedupe else LABELED_CAP):
            raise GeneratorError(f"enum: n={n} outside the supported range")
        return {"n": n, "dedupe": dedupe}
    n, seed, count = integer("n"), integer("seed", 0), integer("count", 1)
    try:
        prob = Fraction(raw.get("p", ""))
    except ValueError:
        raise GeneratorError("gnp: p must be a rational in [0, 1]") from None
    if n < 1 or not 0 <= prob <= 1 or count < 1:
        raise GeneratorError("gnp: need n >= 1, 0 <= p <= 1, count >= 1")
    return {"n": n, "p": prob, "seed": seed, "count": count}
