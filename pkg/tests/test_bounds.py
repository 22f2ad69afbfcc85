from fractions import Fraction

import pytest

from circumference.bounds import (
    BOUND_NAMES,
    bound_conjecture1,
    bound_dirac,
    bound_dirac2,
    bound_theorem1,
    bound_theoremD,
    bound_theoremE,
    bound_theoremF,
    check_theoremC,
    evaluate_all,
)
from circumference.generators import kappa_family, petersen, path_graph
from circumference.graph import complete, edgeless
from circumference.invariants import all_longest_cycles, compute_profile


@pytest.mark.parametrize(
    "args, value",
    [((3, 2, 2), Fraction(6)), ((3, 3, 1), Fraction(10, 3)), ((5, 0, 1), Fraction(0))],
)
def test_theorem1_examples(args, value):
    assert bound_theorem1(*args) == value


def test_theorem1_rejects_undefined_cbar():
    with pytest.raises(ValueError):
        bound_theorem1(3, 2, 0)


def test_classical_examples():
    assert bound_dirac(3) == 4
    assert bound_dirac2(5, 4) == 5
    assert bound_dirac2(10, 3) == 6
    assert bound_theoremD(20, 5, 2) == 13
    assert bound_theoremD(6, 5, 5) == 6
    assert bound_theoremD(8, 3, 2) == 7
    assert bound_theoremE(3, -1) == 4
    assert bound_theoremE(4, 4) == 0
    assert bound_theoremF(3, 2) == 6


def test_conjecture_examples():
    assert bound_conjecture1(5, 2, 3) == 10
    assert bound_conjecture1(3, 2, 1) == 6
    assert bound_conjecture1(3, 3, 0) == 0
    assert bound_conjecture1(3, 2, -1) is None
    assert bound_conjecture1(3, 3, -1) is None


def test_results_are_exact_rationals():
    v = bound_theorem1(4, 3, 3)
    assert isinstance(v, Fraction) and v == Fraction(4 * 3 * 6, 7)


def test_conjecture_matches_theorem_when_pbar_is_cbar_minus_one():
    # only in the first branch of each; the second branches differ
    for d in range(1, 10):
        for k in range(1, d + 1):
            for cbar in range(k, 10):
                assert bound_conjecture1(d, k, cbar - 1) == bound_theorem1(d, k, cbar)


def test_report_slack_and_satisfaction():
    p = compute_profile(petersen())
    r = evaluate_all(p)
    assert [e.name for e in r.entries] == list(BOUND_NAMES)
    t1 = r.get("theorem1")
    assert t1.value == Fraction(10, 3) and t1.slack == Fraction(17, 3) and t1.satisfied
    assert not r.violations()
    for e in r.entries:
        if e.applicable:
            assert e.satisfied == (e.slack >= 0)


def test_hamiltonian_marks_residual_bounds_inapplicable():
    r = evaluate_all(compute_profile(complete(4)))
    for name in ("theorem1", "theoremF", "conjecture1"):
        assert not r.get(name).applicable
    assert r.get("dirac").applicable and r.get("theoremE").value == 4


def test_two_connected_premise_filter():
    r = evaluate_all(compute_profile(path_graph(4)))
    assert not r.get("dirac2").applicable and not r.get("theoremD").applicable


def test_edgeless_vertex_convention():
    r = evaluate_all(compute_profile(edgeless(1)))
    assert r.get("dirac").satisfied and r.get("dirac").slack == 0


def test_family_is_sharp_for_theorem1_and_F():
    p = compute_profile(kappa_family(2, 3))
    r = evaluate_all(p)
    assert r.get("theorem1").slack == 0
    assert r.get("theoremF").slack == 0


def test_theoremD_family_anomaly():
    # the two-connected family with kappa=2, delta=3 has c=6 while min(n, 3 delta - kappa) = 7
    p = compute_profile(kappa_family(2, 3))
    assert (p.n, p.delta, p.kappa, p.c) == (8, 3, 2, 6)
    assert evaluate_all(p).get("theoremD").slack == -1


def test_kappa_one_theorem1_violation_is_real():
    # P_4: kappa=1, delta=1, c=2, cbar=2, and the formula asks for 9/4
    p = compute_profile(path_graph(4))
    entry = evaluate_all(p).get("theorem1")
    assert p.kappa == 1 and entry.value == Fraction(9, 4) and not entry.satisfied


def test_overrides_replace_a_formula():
    p = compute_profile(petersen())
    r = evaluate_all(p, ["conjecture1"], {"conjecture1": lambda q: Fraction(q.c + 1)})
    assert r.violations() == ["conjecture1"]


def test_incomplete_profile_is_never_judged():
    from circumference.generators import random_gnp

    p = compute_profile(random_gnp(40, Fraction(1, 10), 1), time_budget=1e-6)
    assert p.incomplete
    assert all(not e.applicable for e in evaluate_all(p).entries)


def test_theoremC_on_petersen_takes_first_disjunct():
    g = petersen()
    p = compute_profile(g)
    res = check_theoremC(g, p, all_longest_cycles(g))
    assert res.applicable and res.long_cycle and not res.violated


def test_theoremC_edge_test_matches_enumeration():
    from circumference.generators import random_gnp
    from circumference.invariants import every_longest_cycle_dominates, is_dominating_cycle

    for seed in range(80):
        g = random_gnp(6 + seed % 4, Fraction([3, 5, 7][seed % 3], 10), 7000 + seed)
        expected = all(is_dominating_cycle(g, c) for c in all_longest_cycles(g))
        assert every_longest_cycle_dominates(g) == expected
        p = compute_profile(g)
        assert check_theoremC(g, p) == check_theoremC(g, p, all_longest_cycles(g))


def test_theoremC_needs_three_connectivity():
    g = kappa_family(2, 3)
    assert not check_theoremC(g, compute_profile(g)).applicable


def test_monotone_in_each_argument_within_branches():
    for d in range(1, 21):
        for k in range(1, 21):
            for c in range(1, 21):
                v = bound_theorem1(d, k, c)
                assert bound_theorem1(d + 1, k, c) >= v
                if (c >= k) == (c >= k + 1):
                    assert bound_theorem1(d, k + 1, c) >= v
                if (c >= k) == (c + 1 >= k):
                    assert bound_theorem1(d, k, c + 1) >= v
