"""Inequality checks over (C, H, maximal T) instances.

Each check quantifies internally over the objects its statement ranges over
(roots ``u``, ordered pairs ``x ≠ y``, H-segments, path systems) and reports
the tightest case found, or the first violation.  Path and segment lengths
are edge counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterator, Optional

from ..graph import Graph, bits, delete_vertices, to_mask
from ..invariants import CycleWitness, all_longest_cycles, longest_cycle, residual_invariants
from .extension import HcExtension, maximal_hc_extension
from .paths import OMEGA_CAP, OmegaResult, compute_O, compute_O_u, compute_omega
from .stats import ExtensionStats, compute_stats

LEMMA_IDS = (
    "b1", "b2", "lemma3", "d1", "d2", "d3", "e1", "e2",
    "g1", "g2", "g3", "g5", "g6", "i1", "i7", "i8", "lemma8",
)
LEMMA3_PATH_CAP = 60
LEMMA3_SYSTEM_CAP = 400


class UnsupportedLemma(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    lemma: str
    holds: bool
    checked: int  # number of quantified cases whose premise held
    lhs: Optional[Fraction] = None  # of the tightest (or first violating) case
    rhs: Optional[Fraction] = None
    context: str = ""


class _Tally:
    def __init__(self, lemma: str):
        self.lemma = lemma
        self.checked = 0
        self.worst: Optional[tuple] = None  # (slack, lhs, rhs, context)

    def add(self, lhs, rhs, context: str, ok: Optional[bool] = None) -> None:
        self.checked += 1
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        slack = lhs - rhs
        if ok is None:
            ok = slack >= 0
        key = (0 if not ok else 1, slack)
        if self.worst is None or key < self.worst[0]:
            self.worst = (key, lhs, rhs, context, ok)

    def result(self) -> CheckResult:
        if self.worst is None:
            return CheckResult(self.lemma, True, 0, context="premise never met (vacuous)")
        _, lhs, rhs, ctx, ok = self.worst
        return CheckResult(self.lemma, ok, self.checked, lhs, rhs, ctx)


@dataclass
class LemmaInstance:
    g: Graph
    C: CycleWitness
    ext: Optional[HcExtension] = None
    edges_count: bool = True
    cap: int = OMEGA_CAP
    _o: dict = field(default_factory=dict, repr=False)
    _omega: dict = field(default_factory=dict, repr=False)

    @cached_property
    def stats(self) -> ExtensionStats:
        return compute_stats(self.ext, self.edges_count)

    def O(self, x: int, y: int, variant: str = "O") -> int:
        key = (variant, x, y)
        if key not in self._o:
            self._o[key] = compute_O(self.ext, x, y, variant, self.cap)[0]
        return self._o[key]

    def O_u(self, u: int, x: int, y: int) -> int:
        key = ("Ou", u if u in (x, y) else None, x, y)
        if key not in self._o:
            self._o[key] = compute_O_u(self.ext, u, x, y, self.cap)[0]
        return self._o[key]

    def omega(self, x: int, y: int) -> OmegaResult:
        key = (x, y)
        if key not in self._omega:
            self._omega[key] = compute_omega(self.ext, x, y, self.cap)
        return self._omega[key]

    def pairs(self) -> Iterator[tuple[int, int]]:
        return permutations(self.ext.H, 2)

    def describe(self) -> str:
        if self.ext is None:
            return f"C={self.C.vertices}"
        return f"C={self.C.vertices} H={self.ext.H} T={self.ext.T}"


# --- individual checks -------------------------------------------------------------------


def _b1(inst: LemmaInstance, t: _Tally) -> None:
    ext, st = inst.ext, inst.stats
    for u in ext.H:
        if ext.t_len(u) >= 2:  # u ∈ Ū_0 and û ≠ ů
            r = st[u]
            t.add(0, len(r.Phi & r.B), f"u={u}", ok=not (r.Phi & r.B))


def _b2(inst: LemmaInstance, t: _Tally) -> None:
    ext, st = inst.ext, inst.stats
    lhs = sum(st[u].b for u in ext.H if st[u].cls != "U0")
    rhs = sum(st[u].bstar for u in ext.H if st[u].cls == "U0")
    t.add(lhs, rhs, "sum b over non-U0 vs sum b* over U0", ok=lhs == rhs)
    lhs = sum(st[u].gamma for u in ext.H)
    rhs = sum(st[u].phi_prime for u in ext.H)
    t.add(lhs, rhs, "sum gamma vs sum phi'", ok=lhs == rhs)
    for u in ext.H:
        r = st[u]
        lhs = len(r.Phi | r.B)
        rhs = sum(len(a) for a in r.A.values())
        t.add(lhs, rhs, f"|Phi ∪ B| vs sum |A(v)| at u={u}", ok=lhs == rhs)


def _d(inst: LemmaInstance, t: _Tally, which: str) -> None:
    ext, st = inst.ext, inst.stats
    h = ext.h
    for u in ext.H:
        g_u, tl = st[u].gamma, ext.t_len(u)
        if which == "d1" and tl >= 2:
            t.add(h, 2 * g_u, f"u={u}")
        elif which == "d2" and tl == 1:
            t.add(h, 2 * st[u].phi_prime, f"u={u} (h >= 2phi')")
            t.add(h, g_u + 1, f"u={u} (h >= gamma+1)")
            # the middle link 2φ′ ≥ γ+1 only holds off U_*, where φ′ = 0 by definition
            if st[u].cls != "U*":
                t.add(2 * st[u].phi_prime, g_u + 1, f"u={u} (2phi' >= gamma+1)")
        elif which == "d3":
            t.add(h, g_u + 1, f"u={u}")


def _e(inst: LemmaInstance, t: _Tally, which: str) -> None:
    ext, st = inst.ext, inst.stats
    for u in ext.H:
        tl = ext.t_len(u)
        if (which == "e1" and tl < 2) or (which == "e2" and tl != 1):
            continue
        lam = st[u].Lambda
        for x, y in inst.pairs():
            seg = ext.segment(x, y)
            if not lam <= set(seg):
                continue
            need = st[u].gamma if which == "e1" else st[u].gamma - 1
            t.add(len(seg) - 1, need, f"u={u} x={x} y={y}")


def _g(inst: LemmaInstance, t: _Tally, which: str) -> None:
    ext, st = inst.ext, inst.stats
    for x, y in inst.pairs():
        if which == "g5":
            if ext.t_len(x) == 1:
                lhs = min(inst.O(x, y, "O(x,ox)"), inst.O(x, y, "O(y,ox)"))
                t.add(lhs, st[x].gamma, f"x={x} y={y}")
            continue
        near = {ext.succ(x), ext.pred(x), ext.succ(y), ext.pred(y)}
        for u in ext.H:
            g_u, tl = st[u].gamma, ext.t_len(u)
            if which == "g1" and st[u].cls == "U*":
                t.add(inst.O(x, y), g_u + 1, f"u={u} x={x} y={y}")
            elif which == "g2" and tl >= 2:
                t.add(inst.O(x, y), g_u, f"u={u} x={x} y={y}")
            elif which == "g3" and tl == 1:
                t.add(inst.O_u(u, x, y), g_u - 1, f"u={u} x={x} y={y}")
            elif which == "g6" and u in near:
                t.add(inst.O(x, y), g_u, f"u={u} x={x} y={y}")


def _omega_checks(inst: LemmaInstance, t: _Tally, which: str) -> None:
    ext, st = inst.ext, inst.stats
    if ext.g.n > inst.cap:
        return
    max_beta = max(st.beta.values())
    for x, y in inst.pairs():
        om = inst.omega(x, y)
        if not om.defined:
            continue
        if which == "lemma8":
            terms = [inst.O(x, y)]
            if ext.t_len(x) == 1:
                terms.append(min(inst.O(x, y, "Ox"), inst.O(x, y, "O(y,ox)"), inst.O(x, y, "O(x,ox)")))
            if ext.t_len(y) == 1:
                terms.append(min(inst.O(x, y, "Oy"), inst.O(x, y, "O(x,oy)"), inst.O(x, y, "O(y,oy)")))
            t.add(om.length, max(terms), f"x={x} y={y}")
        elif which == "i1":
            for i, u in enumerate(ext.H):
                v = ext.H[(i + 1) % ext.h]
                if {u, v} & {x, y}:
                    continue
                t.add(om.length, st.beta[u], f"x={x} y={y} i={i + 1}")
        elif which == "i7":
            if st[x].cls != "U0" and st[y].cls != "U0":
                t.add(om.length, max_beta, f"x={x} y={y}")
        elif which == "i8":
            if ext.succ(x) == y:
                t.add(om.length, max_beta, f"x={x} y={y}")


def _lemma3(inst: LemmaInstance, t: _Tally) -> None:
    g, C = inst.g, inst.C
    c_mask = C.mask
    rest = g.all_mask & ~c_mask
    if not rest:
        return
    rows = g.rows

    def simple_paths(start: int, avoid: int):
        out = []
        stack = [((start,), avoid | (1 << start))]
        while stack:
            p, vis = stack.pop()
            out.append(p)
            for w in bits(rows[p[-1]] & rest & ~vis):
                stack.append((p + (w,), vis | (1 << w)))
        out.sort()
        return out

    qs = []
    for s in bits(rest):
        for p in simple_paths(s, 0):
            if p[0] <= p[-1]:  # each path once up to reversal
                qs.append(p)
    qs.sort(key=lambda p: (-len(p), p))
    systems = 0
    for Q in qs[:LEMMA3_PATH_CAP]:
        q_mask = to_mask(Q)
        found: list = []

        def rec(i: int, used: int, ends: list) -> None:
            if len(found) >= LEMMA3_SYSTEM_CAP:
                return
            if i == len(Q):
                if ends:
                    found.append(tuple(ends))
                return
            rec(i + 1, used, ends)
            for p in simple_paths(Q[i], used):
                ends.append((Q[i], p[-1]))
                rec(i + 1, used | to_mask(p), ends)
                ends.pop()

        rec(0, q_mask, [])
        for ends in found:
            zs = [rows[w] & c_mask for _, w in ends]
            union = 0
            for z in zs:
                union |= z
            rhs = sum(z.bit_count() for z in zs) + union.bit_count()
            t.add(C.length, rhs, f"Q={Q} ends={ends}")
            systems += 1


_DISPATCH = {
    "b1": _b1,
    "b2": _b2,
    "lemma3": _lemma3,
    "d1": lambda i, t: _d(i, t, "d1"),
    "d2": lambda i, t: _d(i, t, "d2"),
    "d3": lambda i, t: _d(i, t, "d3"),
    "e1": lambda i, t: _e(i, t, "e1"),
    "e2": lambda i, t: _e(i, t, "e2"),
    "g1": lambda i, t: _g(i, t, "g1"),
    "g2": lambda i, t: _g(i, t, "g2"),
    "g3": lambda i, t: _g(i, t, "g3"),
    "g5": lambda i, t: _g(i, t, "g5"),
    "g6": lambda i, t: _g(i, t, "g6"),
    "i1": lambda i, t: _omega_checks(i, t, "i1"),
    "i7": lambda i, t: _omega_checks(i, t, "i7"),
    "i8": lambda i, t: _omega_checks(i, t, "i8"),
    "lemma8": lambda i, t: _omega_checks(i, t, "lemma8"),
}


def check_lemma(instance: LemmaInstance, lemma_id: str) -> CheckResult:
    if lemma_id not in _DISPATCH:
        raise UnsupportedLemma(f"unsupported lemma id {lemma_id!r}")
    tally = _Tally(lemma_id)
    if lemma_id != "lemma3" and instance.ext is None:
        return CheckResult(lemma_id, True, 0, context="no HC-extension in this instance")
    _DISPATCH[lemma_id](instance, tally)
    res = tally.result()
    if res.context and not res.context.startswith("premise"):
        res = CheckResult(res.lemma, res.holds, res.checked, res.lhs, res.rhs,
                          f"{instance.describe()} {res.context}")
    return res


# --- instance generation ------------------------------------------------------------------


def generate_instances(
    g: Graph, edges_count: bool = True, mode: str = "all", cap: int = OMEGA_CAP
) -> tuple[list[LemmaInstance], list[str]]:
    """(C, H, maximal T) triples of ``g`` with a proper residual cycle ``H``.

    ``mode="all"`` takes every longest cycle ``C`` and every longest cycle ``H``
    of ``G \\ C``; ``mode="witness"`` takes only the solvers' witness pair,
    which keeps graphs above the exhaustive cap usable.  Returns the instances
    and the reasons for skipping when no triple exists.  A cycle whose residual
    is nonempty but has no proper cycle still yields a lemma3-only instance.
    """
    if mode not in ("all", "witness"):
        raise ValueError(f"unknown instance mode {mode!r}")
    c, witness = longest_cycle(g)
    if g.n == c:
        return [], ["residual empty (Hamiltonian)"]
    if g.n - c < 3:
        return [LemmaInstance(g, witness, None, edges_count, cap)], ["residual too small for a proper cycle"]
    out: list[LemmaInstance] = []
    if mode == "witness":
        res = residual_invariants(g, witness)
        if res.cbar < 3:
            out.append(LemmaInstance(g, witness, None, edges_count, cap))
        else:
            ext = maximal_hc_extension(g, witness, res.cycle.vertices, cap)
            out.append(LemmaInstance(g, witness, ext, edges_count, cap))
    else:
        for C in all_longest_cycles(g):
            sub = delete_vertices(g, C.mask)
            residual_cycles = all_longest_cycles(sub.graph)
            if residual_cycles[0].length < 3:
                out.append(LemmaInstance(g, C, None, edges_count, cap))
                continue
            for Hc in residual_cycles:
                H = tuple(sub.labels[v] for v in Hc.vertices)
                out.append(LemmaInstance(g, C, maximal_hc_extension(g, C, H, cap), edges_count, cap))
    skips = [] if any(i.ext is not None for i in out) else ["cbar <= 2 for every longest cycle"]
    return out, skips
