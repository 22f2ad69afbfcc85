"""Per-root bookkeeping for an HC-extension.

For each root ``u`` of ``H`` (with terminal ``û`` and, when ``T(u)`` is
nontrivial, second vertex ``ů``):

* ``Φ_u = N(û) ∩ V(T)`` and ``Ψ_u = N(û) ∩ V(C)``;
* the classes ``U_0`` (trivial path), ``U_1`` (``Φ_u`` leaves ``T(u)``), and
  ``U_2`` / ``U_*`` decided by Θ on the reversed path;
* ``B_u`` (roots in ``U_0`` adjacent to ``ů``) and, for ``u ∈ U_0``, ``B*_u``;
* ``A_u(v)``, ``ρ_u(v)``, ``ρ̄_u(v)`` and ``Λ_u``;
* ``φ′_u``, ``γ_u``, ``β_u`` and the average ``μ(T)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..graph import bits, to_mask
from .extension import HcExtension
from .theta import ThetaResult, theta_procedure


@dataclass(frozen=True)
class RootStats:
    u: int
    Phi: frozenset
    Psi: frozenset
    cls: str  # "U0" | "U1" | "U2" | "U*"
    B: frozenset
    Bstar: frozenset
    A: dict  # root v -> frozenset A_u(v) (only nonempty entries)
    rho: dict  # root v -> ρ_u(v)
    rho_bar: dict  # root v -> ρ̄_u(v)
    Lambda: frozenset
    phi_prime: int
    gamma: int
    theta: Optional[ThetaResult] = None

    @property
    def phi(self) -> int:
        return len(self.Phi)

    @property
    def psi(self) -> int:
        return len(self.Psi)

    @property
    def b(self) -> int:
        return len(self.B)

    @property
    def bstar(self) -> int:
        return len(self.Bstar)


@dataclass(frozen=True)
class ExtensionStats:
    ext: HcExtension
    roots: dict  # u -> RootStats
    beta: dict  # u -> Fraction
    mu: Fraction

    def __getitem__(self, u: int) -> RootStats:
        return self.roots[u]

    def classes(self) -> dict[str, frozenset]:
        out = {k: set() for k in ("U0", "U1", "U2", "U*")}
        for u, r in self.roots.items():
            out[r.cls].add(u)
        return {k: frozenset(v) for k, v in out.items()}


def theta_for_root(ext: HcExtension, u: int, edges_count: bool = True) -> ThetaResult:
    """Θ(reverse T(u), V \\ (V(T) ∪ V(C)), V(T) \\ V(T(u)))."""
    g = ext.g
    v_neut = g.all_mask & ~(ext.t_mask | ext.C.mask)
    v_fin = ext.t_mask & ~ext.path_mask(u)
    return theta_procedure(g, tuple(reversed(ext.path(u))), v_neut, v_fin, edges_count)


def classify_vertices(ext: HcExtension, edges_count: bool = True) -> dict[str, frozenset]:
    return compute_stats(ext, edges_count).classes()


def compute_stats(ext: HcExtension, edges_count: bool = True) -> ExtensionStats:
    g = ext.g
    t_mask = ext.t_mask
    c_mask = ext.C.mask
    u0 = {u for u in ext.H if ext.t_len(u) == 0}

    phi = {u: frozenset(bits(g.rows[ext.hat(u)] & t_mask)) for u in ext.H}
    psi = {u: frozenset(bits(g.rows[ext.hat(u)] & c_mask)) for u in ext.H}
    cls: dict[int, str] = {}
    thetas: dict[int, ThetaResult] = {}
    for u in ext.H:
        if u in u0:
            cls[u] = "U0"
        elif not phi[u] <= set(ext.path(u)):
            cls[u] = "U1"
        else:
            th = theta_for_root(ext, u, edges_count)
            thetas[u] = th
            own = ext.path_mask(u)
            final = th.final
            special = bool(own >> final[0] & 1 and own >> final[-1] & 1)
            cls[u] = "U*" if special else "U2"

    B = {}
    for u in ext.H:
        r = ext.ring(u)
        B[u] = frozenset(v for v in u0 if r is not None and g.has_edge(v, r))
    Bstar = {}
    for u in ext.H:
        if u in u0:
            Bstar[u] = frozenset(v for v in ext.H if ext.ring(v) is not None and g.has_edge(u, ext.ring(v)))
        else:
            Bstar[u] = frozenset()

    roots = {}
    for u in ext.H:
        pool = phi[u] | B[u]
        A, rho, rho_bar = {}, {}, {}
        for v in ext.H:
            pv = ext.path(v)
            a = frozenset(w for w in pv if w in pool)
            if not a:
                continue
            A[v] = a
            far = max(a, key=pv.index)
            rho[v] = far
            # Φ takes priority when ρ lies in both Φ_u and B_u
            rho_bar[v] = ext.hat(u) if far in phi[u] else ext.ring(u)
        phi_prime = 0 if cls[u] == "U*" else len(phi[u])
        gamma = phi_prime + len(B[u]) if u not in u0 else phi_prime - len(Bstar[u])
        roots[u] = RootStats(
            u=u,
            Phi=phi[u],
            Psi=psi[u],
            cls=cls[u],
            B=B[u],
            Bstar=Bstar[u],
            A=A,
            rho=rho,
            rho_bar=rho_bar,
            Lambda=frozenset(A),
            phi_prime=phi_prime,
            gamma=gamma,
            theta=thetas.get(u),
        )
    beta = {u: Fraction(roots[u].gamma + roots[ext.succ(u)].gamma, 2) for u in ext.H}
    mu = sum(beta.values(), Fraction(0)) / ext.h
    return ExtensionStats(ext, roots, beta, mu)


def lambda_path(stats: ExtensionStats, u: int, v: int, w: int) -> Optional[tuple[int, ...]]:
    """``Λ_u(v, w)``: ``v →T(v) ρ_u(v) ρ̄_u(v) →T(u) ρ̄_u(w) ρ_u(w) →T(w) w``.

    Returns ``None`` when ``v`` or ``w`` lies outside ``Λ_u`` or the walk is not a
    simple path of ``G``.
    """
    ext = stats.ext
    r = stats[u]
    if v == w or v not in r.Lambda or w not in r.Lambda:
        return None
    tv, tw, tu = ext.path(v), ext.path(w), ext.path(u)
    first = tv[: tv.index(r.rho[v]) + 1]
    last = tuple(reversed(tw[: tw.index(r.rho[w]) + 1]))
    i, j = tu.index(r.rho_bar[v]), tu.index(r.rho_bar[w])
    middle = tu[i : j + 1] if i <= j else tuple(reversed(tu[j : i + 1]))
    walk = first + middle + last
    g = ext.g
    if len(set(walk)) != len(walk) or any(not g.has_edge(a, b) for a, b in zip(walk, walk[1:])):
        return None
    return walk
