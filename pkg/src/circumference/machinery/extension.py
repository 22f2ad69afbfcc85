"""HC-extensions: vertex-disjoint paths ``T(u_i)`` in ``G \\ C`` rooted on the
residual cycle ``H`` whose terminals see only ``V(T) ∪ V(C)``.

Lengths follow the edge-count convention used throughout the package: a path
on ``k`` vertices has length ``k - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from ..graph import Graph, bits, delete_vertices, to_mask
from ..invariants import CapExceeded, CycleWitness, is_valid_cycle, longest_cycle

MACHINERY_CAP = 12


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class HcExtension:
    g: Graph
    C: CycleWitness
    H: tuple[int, ...]  # u_1 … u_h in cyclic order
    T: tuple[tuple[int, ...], ...]  # T[i] starts at H[i]

    @property
    def h(self) -> int:
        return len(self.H)

    def index(self, u: int) -> int:
        return self.H.index(u)

    def path(self, u: int) -> tuple[int, ...]:
        return self.T[self.H.index(u)]

    def hat(self, u: int) -> int:
        return self.path(u)[-1]

    def ring(self, u: int) -> Optional[int]:
        """Successor of ``u`` on ``T(u)``; ``None`` when ``T(u)`` is trivial."""
        p = self.path(u)
        return p[1] if len(p) > 1 else None

    def t_len(self, u: int) -> int:
        """Edge length of ``T(u)``."""
        return len(self.path(u)) - 1

    def succ(self, u: int) -> int:
        return self.H[(self.H.index(u) + 1) % self.h]

    def pred(self, u: int) -> int:
        return self.H[(self.H.index(u) - 1) % self.h]

    @cached_property
    def t_mask(self) -> int:
        return to_mask(v for p in self.T for v in p)

    @cached_property
    def owner(self) -> dict[int, int]:
        """Vertex of ``V(T)`` → the root ``u`` whose path contains it."""
        return {v: p[0] for p in self.T for v in p}

    def path_mask(self, u: int) -> int:
        return to_mask(self.path(u))

    def segment(self, x: int, y: int) -> tuple[int, ...]:
        """``x →H y`` following the orientation of ``H``."""
        i, j = self.H.index(x), self.H.index(y)
        k = (j - i) % self.h
        return tuple(self.H[(i + t) % self.h] for t in range(k + 1))

    @property
    def objective(self) -> int:
        return sum(1 for p in self.T if len(p) > 1)


def validate_extension(ext: HcExtension) -> list[str]:
    """Independent check of every HC-extension invariant; returns the problems found."""
    g = ext.g
    problems = []
    if not is_valid_cycle(g, ext.C):
        problems.append("C is not a cycle of G")
    c_mask = ext.C.mask
    if len(ext.H) < 3 or not is_valid_cycle(g, CycleWitness("proper", ext.H)):
        problems.append("H is not a proper cycle")
    if to_mask(ext.H) & c_mask:
        problems.append("H meets C")
    if len(ext.T) != len(ext.H):
        problems.append("T has the wrong number of paths")
        return problems
    seen = 0
    for u, p in zip(ext.H, ext.T):
        if not p or p[0] != u:
            problems.append(f"T({u}) does not start at {u}")
            continue
        pm = to_mask(p)
        if len(p) != pm.bit_count() or pm & seen:
            problems.append(f"T({u}) repeats a vertex or meets another path")
        if pm & c_mask:
            problems.append(f"T({u}) meets C")
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            problems.append(f"T({u}) is not a path")
        seen |= pm
    for p in ext.T:
        if p and g.rows[p[-1]] & ~(seen | c_mask):
            problems.append(f"terminal {p[-1]} has a neighbour outside V(T) ∪ V(C)")
    rest = delete_vertices(g, c_mask)
    cbar, _ = longest_cycle(rest.graph)
    if cbar != len(ext.H):
        problems.append(f"H has length {len(ext.H)} but the residual circumference is {cbar}")
    return problems


def _check_inputs(g: Graph, C: CycleWitness, H: Sequence[int]) -> None:
    if len(H) < 3:
        raise ExtensionError("H must be a proper cycle (length at least 3)")
    if not is_valid_cycle(g, C):
        raise ExtensionError("C is not a cycle of G")
    if not is_valid_cycle(g, CycleWitness("proper", tuple(H))):
        raise ExtensionError("H is not a cycle of G")
    if to_mask(H) & C.mask:
        raise ExtensionError("H intersects C")


def greedy_hc_extension(g: Graph, C: CycleWitness, H: Sequence[int]) -> HcExtension:
    """Grow trivial paths until every terminal's neighbourhood lies in ``V(T) ∪ V(C)``."""
    _check_inputs(g, C, H)
    paths = [[u] for u in H]
    covered = to_mask(H) | C.mask
    while True:
        for p in paths:
            out = g.rows[p[-1]] & ~covered
            if out:
                w = (out & -out).bit_length() - 1
                p.append(w)
                covered |= 1 << w
                break
        else:
            break
    return HcExtension(g, C, tuple(H), tuple(tuple(p) for p in paths))


def maximal_hc_extension(g: Graph, C: CycleWitness, H: Sequence[int], cap: int = MACHINERY_CAP) -> HcExtension:
    """Exhaustively maximise the number of nontrivial paths.

    Ties go to the lexicographically smallest tuple of paths.
    """
    _check_inputs(g, C, H)
    if g.n > cap:
        raise CapExceeded(f"machinery cap exceeded: n={g.n} > {cap}")
    H = tuple(H)
    rows = g.rows
    c_mask = C.mask
    h_mask = to_mask(H)
    best: list = [None]  # (key, paths)

    def paths_from(u: int, used: int):
        """All simple paths starting at ``u`` inside ``G \\ C`` avoiding ``used``."""
        out = []
        stack = [(u, (u,), used | (1 << u))]
        while stack:
            v, p, vis = stack.pop()
            out.append((p, vis))
            for w in bits(rows[v] & ~vis & ~c_mask):
                stack.append((w, p + (w,), vis | (1 << w)))
        out.sort()
        return out

    def rec(i: int, used: int, chosen: list) -> None:
        if i == len(H):
            cover = used | c_mask
            if any(rows[p[-1]] & ~cover for p in chosen):
                return
            key = (-sum(1 for p in chosen if len(p) > 1), tuple(chosen))
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        for p, vis in paths_from(H[i], used):
            chosen.append(p)
            rec(i + 1, vis, chosen)
            chosen.pop()

    rec(0, h_mask, [])
    if best[0] is None:  # pragma: no cover - greedy growth always yields one
        raise ExtensionError("no HC-extension exists")
    return HcExtension(g, C, H, best[0][1])
