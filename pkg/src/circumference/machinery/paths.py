"""Restricted longest paths (O), their min-over-path-pairs composite (Ω),
the T-transformation of (H, C)-path systems, and the Δ relation.

All lengths are edge counts; ``-1`` signals that no path exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..graph import Graph, bits, to_mask
from ..invariants import CapExceeded
from .extension import HcExtension, MACHINERY_CAP

OMEGA_CAP = 12


class PathSystemError(ValueError):
    pass


def longest_xy_path(g: Graph, x: int, y: int, allowed: int) -> tuple[int, Optional[tuple[int, ...]]]:
    """Longest simple ``x``-``y`` path inside ``allowed`` (which must contain both ends)."""
    if not (allowed >> x & 1 and allowed >> y & 1):
        return -1, None
    if x == y:
        return 0, (x,)
    rows = g.rows
    best: list = [-1, None]
    path = [x]

    def reach(v: int, free: int) -> int:
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for a in bits(frontier):
                nxt |= rows[a]
            frontier = nxt & free & ~seen
            seen |= frontier
        return seen

    def dfs(v: int, visited: int) -> None:
        if v == y:
            if len(path) - 1 > best[0]:
                best[0], best[1] = len(path) - 1, tuple(path)
            return
        free = allowed & ~visited
        r = reach(v, free)
        if not r >> y & 1 or len(path) - 1 + (r.bit_count() - 1) <= best[0]:
            return
        for w in bits(rows[v] & free):
            path.append(w)
            dfs(w, visited | (1 << w))
            path.pop()

    dfs(x, 1 << x)
    return best[0], best[1]


# --- O paths ---------------------------------------------------------------------


def v1_mask(ext: HcExtension, x: int, y: int) -> int:
    m = to_mask((x, y))
    for v in ext.H:
        if v not in (x, y):
            m |= ext.path_mask(v)
    return m


def compute_O(
    ext: HcExtension, x: int, y: int, variant: str = "O", cap: int = MACHINERY_CAP
) -> tuple[int, Optional[tuple[int, ...]]]:
    """Longest restricted path for one of the variants

    ``O``: ``x``-``y`` in ``V_1``;
    ``Ox`` / ``Oy``: ``x``-``y`` in ``V_1 ∪ {ů_x}`` / ``V_1 ∪ {ů_y}``;
    ``O(y,ox)`` / ``O(x,ox)``: from ``ů_x`` to ``y`` / ``x`` inside ``V_1 ∪ {ů_x}``;
    ``O(x,oy)`` / ``O(y,oy)``: from ``ů_y`` to ``x`` / ``y`` inside ``V_1 ∪ {ů_y}``.

    Variants involving ``ů_x`` (``ů_y``) return ``(-1, None)`` when ``T(x)``
    (``T(y)``) is trivial.
    """
    if x == y:
        raise PathSystemError("x and y must be distinct")
    if ext.g.n > cap:
        raise CapExceeded(f"machinery cap exceeded: n={ext.g.n} > {cap}")
    base = v1_mask(ext, x, y)
    if variant == "O":
        return longest_xy_path(ext.g, x, y, base)
    owner, a, b = {
        "Ox": (x, x, y),
        "Oy": (y, x, y),
        "O(y,ox)": (x, None, y),
        "O(x,ox)": (x, None, x),
        "O(x,oy)": (y, None, x),
        "O(y,oy)": (y, None, y),
    }.get(variant, (None, None, None))
    if owner is None:
        raise PathSystemError(f"unknown O variant {variant!r}")
    ring = ext.ring(owner)
    if ring is None:
        return -1, None
    allowed = base | (1 << ring)
    if a is None:
        a = ring
    return longest_xy_path(ext.g, a, b, allowed)


def compute_O_u(
    ext: HcExtension, u: int, x: int, y: int, cap: int = MACHINERY_CAP
) -> tuple[int, Optional[tuple[int, ...]]]:
    """``O_u(x, y)``: ``O_x``/``O_y`` when ``u`` is an end, otherwise ``O`` (``T(u) ⊆ V_1`` already)."""
    variant = "Ox" if u == x else "Oy" if u == y else "O"
    return compute_O(ext, x, y, variant, cap)


# --- (H, C)-paths and the T-transformation ----------------------------------------------


def is_hc_path(ext: HcExtension, p: Sequence[int]) -> bool:
    g = ext.g
    h_mask, c_mask = to_mask(ext.H), ext.C.mask
    if len(p) < 2 or len(set(p)) != len(p):
        return False
    if not (h_mask >> p[0] & 1 and c_mask >> p[-1] & 1):
        return False
    if any((h_mask | c_mask) >> v & 1 for v in p[1:-1]):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def touched_roots(ext: HcExtension, paths: Sequence[Sequence[int]]) -> set[int]:
    owner = ext.owner
    return {owner[v] for p in paths for v in p if v in owner}


@dataclass(frozen=True)
class Transformed:
    paths: tuple[tuple[int, ...], ...]
    starts: tuple[int, ...]
    steps: int


def t_transform(ext: HcExtension, paths: Sequence[Sequence[int]], max_steps: int = 1000) -> Transformed:
    """Reroute (H, C)-paths through extension paths until exactly ``len(paths)`` roots are touched.

    At each step the smallest-indexed untouched-start root ``z`` whose path is
    met is chosen; walking ``T(z)`` from ``z`` the first vertex ``w`` on a path
    ``E_j`` is found and ``E_j``'s prefix up to ``w`` is replaced by ``z →T(z) w``.
    """
    paths = [tuple(p) for p in paths]
    for p in paths:
        if not is_hc_path(ext, p):
            raise PathSystemError(f"{p} is not an (H, C)-path")
    flat = [v for p in paths for v in p]
    if len(flat) != len(set(flat)):
        raise PathSystemError("paths are not vertex-disjoint")
    steps = 0
    while True:
        starts = {p[0] for p in paths}
        hit = touched_roots(ext, paths) - starts
        if not hit:
            break
        if steps >= max_steps:
            raise PathSystemError("T-transformation did not settle within the step cap")
        z = min(hit, key=ext.index)
        tz = ext.path(z)
        where = {v: j for j, p in enumerate(paths) for v in p}
        k = next(k for k, v in enumerate(tz) if v in where)
        w = tz[k]
        j = where[w]
        old = paths[j]
        paths[j] = tz[:k] + old[old.index(w):]
        steps += 1
    return Transformed(tuple(paths), tuple(p[0] for p in paths), steps)


def enumerate_hc_paths(ext: HcExtension, start: int, forbidden: int, limit: int = 100000):
    """All (H, C)-paths from ``start`` avoiding ``forbidden``."""
    g = ext.g
    h_mask, c_mask = to_mask(ext.H), ext.C.mask
    out = []
    stack = [(start, (start,), (1 << start) | forbidden)]
    while stack:
        v, p, vis = stack.pop()
        for w in bits(g.rows[v] & ~vis & ~h_mask):
            if c_mask >> w & 1:
                out.append(p + (w,))
                if len(out) > limit:
                    raise CapExceeded("too many (H, C)-paths")
            else:
                stack.append((w, p + (w,), vis | (1 << w)))
    out.sort()
    return out


def transformed_pairs(ext: HcExtension, x: int, y: int):
    """Vertex-disjoint (H, C)-path pairs ``E`` from ``x`` and ``F`` from ``y`` that are already
    T-transformed, i.e. their union meets no ``T(z)`` with ``z ∉ {x, y}``."""
    forbidden = 0
    for z in ext.H:
        if z not in (x, y):
            forbidden |= ext.path_mask(z)
    for E in enumerate_hc_paths(ext, x, forbidden | (1 << y)):
        e_mask = to_mask(E)
        for F in enumerate_hc_paths(ext, y, forbidden | e_mask):
            yield E, F


# --- Ω ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class OmegaResult:
    defined: bool
    length: int = -1  # edge length of Ω(x, y)
    pairs: int = 0
    witness: Optional[tuple] = None  # (E, F) attaining the minimum


def _omega_side(ext: HcExtension, x: int, y: int, side: int, in_E: bool, in_F: bool, cap: int) -> int:
    """Ω_x (``side == x``) or Ω_y (``side == y``) for a given placement of ``ů_side``."""
    if ext.t_len(side) != 1:
        return compute_O(ext, x, y, "O", cap)[0]
    if side == x:
        variant = "O(y,ox)" if in_E else "O(x,ox)" if in_F else "Ox"
    else:
        variant = "O(x,oy)" if in_F else "O(y,oy)" if in_E else "Oy"
    return compute_O(ext, x, y, variant, cap)[0]


def compute_omega(ext: HcExtension, x: int, y: int, cap: int = OMEGA_CAP) -> OmegaResult:
    if x == y:
        raise PathSystemError("x and y must be distinct")
    if ext.g.n > cap:
        raise CapExceeded(f"Ω cap exceeded: n={ext.g.n} > {cap}")
    rx, ry = ext.ring(x), ext.ring(y)
    o = compute_O(ext, x, y, "O", cap)[0]
    cache: dict = {}
    best = None
    count = 0
    for E, F in transformed_pairs(ext, x, y):
        count += 1
        key = tuple(r is not None and r in P for r in (rx, ry) for P in (E, F))
        if key not in cache:
            ox = _omega_side(ext, x, y, x, key[0], key[1], cap)
            oy = _omega_side(ext, x, y, y, key[2], key[3], cap)
            cache[key] = max(o, ox, oy)
        val = cache[key]
        if best is None or val < best[0]:
            best = (val, (E, F))
    if best is None:
        return OmegaResult(False)
    return OmegaResult(True, best[0], count, best[1])


# --- Δ ------------------------------------------------------------------------------------


def delta_relation(g: Graph, v: int, L: Sequence[int]) -> bool:
    """``(v, L) ∈ Δ``.

    For ``v`` off ``L`` (``L`` with an odd number of vertices) ``v`` must be
    adjacent to every odd-indexed vertex ``v_1, v_3, …``.  For ``v`` on ``L`` it
    must be adjacent to every other vertex of ``L``.
    """
    L = tuple(L)
    if v in L:
        return all(g.has_edge(v, u) for u in L if u != v)
    if len(L) % 2 == 0:
        raise PathSystemError("the off-path form of Δ needs a path with an odd number of vertices")
    return all(g.has_edge(v, L[i]) for i in range(0, len(L), 2))
