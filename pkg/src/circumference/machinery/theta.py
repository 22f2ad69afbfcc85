"""The Θ path-upgrading procedure.

Given an oriented path ``P = v_0 … v_n`` and disjoint vertex sets ``V_neut``
and ``V_fin`` outside it, Θ produces paths ``P_0, …, P_π`` together with the
growing prefix sets ``X_0 ⊂ X_1 ⊂ …``.  A ``V_neut``-path has both ends
outside ``V_neut`` and every inner vertex inside it.  Only ends in
``V(P) ∪ V_fin`` influence the procedure; ends elsewhere are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..graph import Graph, bits, to_mask


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaResult:
    paths: tuple[tuple[int, ...], ...]  # P_0 … P_π as vertex sequences y_i … z_i
    chain: tuple[frozenset, ...]  # X_0, X_1, … (the final empty X is not stored)
    cases: tuple[str, ...]  # the case ("ii", "iii") that produced P_1 … ; last entry is how Θ stopped

    @property
    def final(self) -> tuple[int, ...]:
        return self.paths[-1]

    @property
    def pi(self) -> int:
        return len(self.paths) - 1


def _lex_min_path(g: Graph, start: int, end: int, inner: int, allow_direct: bool) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest simple ``start``-``end`` path whose inner vertices lie in ``inner``.

    Greedy choice of the smallest next vertex that can still reach ``end`` is
    exact, because every surviving prefix extends to a full path.
    """
    rows = g.rows

    def reaches(v: int, allowed: int) -> bool:
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for a in bits(frontier):
                if rows[a] >> end & 1:
                    return True
                nxt |= rows[a]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return False

    path = [start]
    allowed = inner & ~(1 << start) & ~(1 << end)
    v = start
    while True:
        cands = list(bits(rows[v] & allowed))
        if rows[v] >> end & 1 and (allow_direct or len(path) > 1):
            cands.append(end)
        for w in sorted(cands):
            if w == end:
                return tuple(path) + (end,)
            if reaches(w, allowed & ~(1 << w)):
                path.append(w)
                allowed &= ~(1 << w)
                v = w
                break
        else:
            return None


def neutral_paths(g: Graph, start: int, v_neut: int, targets: int, edges_count: bool = True) -> dict:
    """Map each reachable target to the lexicographically smallest ``V_neut``-path from ``start``."""
    found = {}
    for t in bits(targets & ~(1 << start)):
        p = _lex_min_path(g, start, t, v_neut, edges_count)
        if p is not None:
            found[t] = p
    return found


def theta_procedure(
    g: Graph,
    P: Sequence[int],
    v_neut: int,
    v_fin: int,
    edges_count: bool = True,
) -> ThetaResult:
    """Run Θ(P, V_neut, V_fin); vertex sets are bitmasks.

    ``edges_count`` selects whether a single edge counts as a ``V_neut``-path.
    Case (iii) ties are broken by the lexicographically smallest vertex sequence,
    as are multiple case-(ii) candidates.
    """
    P = tuple(P)
    if len(P) < 2:
        raise ThetaError("Θ needs a path with at least one edge")
    p_mask = to_mask(P)
    if len(P) != p_mask.bit_count() or any(not g.has_edge(a, b) for a, b in zip(P, P[1:])):
        raise ThetaError("P is not a path of G")
    if v_neut & v_fin or (v_neut | v_fin) & p_mask:
        raise ThetaError("V_neut, V_fin and V(P) must be pairwise disjoint")
    pos = {v: i for i, v in enumerate(P)}
    paths = [(P[0], P[1])]
    z_index = 1
    X = set(P[:2])
    chain = [frozenset(X)]
    cases = []
    while True:
        z = P[z_index]
        starts = sorted(X - {z})
        fin_cands = []
        ahead_cands = []
        ahead_mask = to_mask(P[z_index + 1:])
        for s in starts:
            for t, path in neutral_paths(g, s, v_neut, v_fin | ahead_mask, edges_count).items():
                if v_fin >> t & 1:
                    fin_cands.append(path)
                else:
                    ahead_cands.append((-pos[t], path))
        if fin_cands:
            paths.append(min(fin_cands))
            cases.append("ii")
            break
        if not ahead_cands:
            cases.append("i")
            break
        _, best = min(ahead_cands)
        paths.append(best)
        cases.append("iii")
        z_index = pos[best[-1]]
        X = set(P[: z_index + 1])
        chain.append(frozenset(X))
    return ThetaResult(tuple(paths), tuple(chain), tuple(cases))
