"""Exact-rational lower bounds on the circumference and their comparison
against measured invariants.

Every bound is a :class:`fractions.Fraction`; satisfaction ``c >= bound`` is
therefore an exact integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .graph import Graph
from .invariants import CycleWitness, InvariantProfile, every_longest_cycle_dominates, is_dominating_cycle

BOUND_NAMES = ("theorem1", "dirac", "dirac2", "theoremD", "theoremE", "theoremF", "conjecture1")


def bound_theorem1(delta: int, kappa: int, cbar: int) -> Fraction:
    if cbar < 1:
        raise ValueError("cbar must be at least 1")
    if cbar >= kappa:
        return Fraction((cbar + 1) * kappa * (delta + 2), cbar + kappa + 1)
    return Fraction((cbar + 1) * cbar * (delta + 2), 2 * cbar + 1)


def bound_dirac(delta: int) -> Fraction:
    return Fraction(delta + 1)


def bound_dirac2(n: int, delta: int) -> Fraction:
    return Fraction(min(n, 2 * delta))


def bound_theoremD(n: int, delta: int, kappa: int) -> Fraction:
    return Fraction(min(n, 3 * delta - kappa))


def bound_theoremE(delta: int, pbar: int) -> Fraction:
    if pbar < -1:
        raise ValueError("pbar must be at least -1")
    return Fraction((pbar + 2) * (delta - pbar))


def bound_theoremF(delta: int, cbar: int) -> Fraction:
    if cbar < 1:
        raise ValueError("cbar must be at least 1")
    return Fraction((cbar + 1) * (delta - cbar + 1))


def bound_conjecture1(delta: int, kappa: int, pbar: int) -> Optional[Fraction]:
    """``None`` when the conjectured bound says nothing (empty residual with κ ≥ 1)."""
    if pbar >= kappa - 1:
        return Fraction((pbar + 2) * kappa * (delta + 2), pbar + kappa + 2)
    if pbar < 0:
        return None
    return Fraction((pbar + 2) * pbar * (delta + 2), 2 * pbar + 2)


# --- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class BoundEntry:
    name: str
    applicable: bool
    value: Optional[Fraction] = None
    satisfied: Optional[bool] = None
    slack: Optional[Fraction] = None
    reason: str = ""


@dataclass(frozen=True)
class BoundReport:
    c: int
    entries: tuple[BoundEntry, ...]

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def violations(self) -> list[str]:
        return [e.name for e in self.entries if e.applicable and not e.satisfied]


def _entry(name: str, c: int, value: Optional[Fraction], reason: str = "") -> BoundEntry:
    if value is None:
        return BoundEntry(name, False, reason=reason)
    slack = c - value
    return BoundEntry(name, True, value, slack >= 0, slack)


def evaluate_all(
    profile: InvariantProfile,
    names: Sequence[str] = BOUND_NAMES,
    overrides: Optional[dict[str, Callable[[InvariantProfile], Optional[Fraction]]]] = None,
) -> BoundReport:
    """Evaluate each named bound against ``profile.c``.

    ``overrides`` replaces a bound's formula (used by fault-injection tests).
    """
    p = profile
    hamiltonian = p.residual_empty
    formulas: dict[str, Callable[[InvariantProfile], tuple[Optional[Fraction], str]]] = {
        "theorem1": lambda p: (None, "residual empty (Hamiltonian)") if hamiltonian
        else (bound_theorem1(p.delta, p.kappa, p.cbar), ""),
        "dirac": lambda p: (bound_dirac(p.delta), ""),
        "dirac2": lambda p: (bound_dirac2(p.n, p.delta), "") if p.kappa >= 2
        else (None, "not 2-connected"),
        "theoremD": lambda p: (bound_theoremD(p.n, p.delta, p.kappa), "") if p.kappa >= 2
        else (None, "not 2-connected"),
        "theoremE": lambda p: (bound_theoremE(p.delta, p.pbar), ""),
        "theoremF": lambda p: (None, "residual empty (Hamiltonian)") if hamiltonian
        else (bound_theoremF(p.delta, p.cbar), ""),
        "conjecture1": lambda p: _conj(p),
    }
    entries = []
    for name in names:
        if name not in formulas:
            raise KeyError(f"unknown bound {name!r}")
        if p.incomplete:
            entries.append(BoundEntry(name, False, reason="solver budget exceeded"))
            continue
        if overrides and name in overrides:
            value, reason = overrides[name](p), "overridden formula"
            entries.append(_entry(name, p.c, value, reason))
            continue
        value, reason = formulas[name](p)
        entries.append(_entry(name, p.c, value, reason))
    return BoundReport(p.c, tuple(entries))


def _conj(p: InvariantProfile) -> tuple[Optional[Fraction], str]:
    v = bound_conjecture1(p.delta, p.kappa, p.pbar)
    return v, "" if v is not None else "residual empty (Hamiltonian)"


# --- the 3-connected dichotomy ------------------------------------------------------


@dataclass(frozen=True)
class DichotomyResult:
    applicable: bool
    long_cycle: bool = False  # c >= 3δ - 3
    all_dominating: bool = False  # every longest cycle dominates
    reason: str = ""

    @property
    def violated(self) -> bool:
        return self.applicable and not (self.long_cycle or self.all_dominating)


def check_theoremC(
    g: Graph, profile: InvariantProfile, all_cycles: Optional[Sequence[CycleWitness]] = None
) -> DichotomyResult:
    """Either ``c >= 3δ - 3`` or every longest cycle dominates.

    With ``all_cycles`` the second disjunct is read off the given cycles;
    otherwise it is decided edge by edge, which needs no size cap.
    """
    if profile.kappa < 3:
        return DichotomyResult(False, reason="not 3-connected")
    if profile.incomplete:
        return DichotomyResult(False, reason="solver budget exceeded")
    long_cycle = profile.c >= 3 * profile.delta - 3
    if all_cycles is not None:
        all_dom = all(is_dominating_cycle(g, cyc) for cyc in all_cycles)
    else:
        all_dom = every_longest_cycle_dominates(g, profile.c)
    return DichotomyResult(True, long_cycle, all_dom)
