import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circumference.generators import (
    complete_bipartite,
    cycle_graph,
    kappa_family,
    path_graph,
    petersen,
    random_gnp,
)
from circumference.graph import complete, disjoint_union, edgeless, from_edge_list, parse_graph6
from circumference.invariants import (
    CapExceeded,
    CycleWitness,
    PathWitness,
    all_longest_cycles,
    biconnected_blocks,
    compute_profile,
    is_dominating_cycle,
    is_valid_cycle,
    is_valid_path,
    longest_cycle,
    longest_path,
    min_degree,
    residual_invariants,
    vertex_connectivity,
)
from oracles import brute_circumference, brute_connectivity, brute_longest_path, relabel
from test_graph import graphs


@pytest.mark.parametrize(
    "g, c",
    [
        (edgeless(1), 1),
        (edgeless(3), 1),
        (complete(2), 2),
        (path_graph(3), 2),
        (cycle_graph(5), 5),
        (complete(4), 4),
        (petersen(), 9),
        (complete_bipartite(2, 3), 4),
    ],
)
def test_circumference_examples(g, c):
    got, w = longest_cycle(g)
    assert got == c == w.length
    assert is_valid_cycle(g, w)


@pytest.mark.parametrize(
    "g, kappa",
    [(complete(5), 4), (edgeless(1), 0), (disjoint_union(complete(2), complete(2)), 0),
     (path_graph(4), 1), (petersen(), 3), (complete_bipartite(2, 3), 2)],
)
def test_connectivity_examples(g, kappa):
    assert vertex_connectivity(g) == kappa


def test_min_degree():
    assert min_degree(petersen()) == 3
    assert min_degree(path_graph(4)) == 1
    assert min_degree(edgeless(1)) == 0


def test_profile_petersen():
    p = compute_profile(petersen())
    assert (p.n, p.delta, p.kappa, p.c, p.cbar, p.pbar) == (10, 3, 3, 9, 1, 0)
    assert not p.residual_empty and not p.incomplete


def test_profile_hamiltonian_has_empty_residual():
    p = compute_profile(complete(4))
    assert p.residual_empty and p.cbar is None and p.pbar == -1


def test_profile_family_residual():
    p = compute_profile(kappa_family(2, 3))
    assert (p.n, p.c, p.cbar, p.pbar) == (8, 6, 2, 1)


def test_random_oracle_cycle_small():
    for seed in range(60):
        n = 4 + seed % 5
        g = random_gnp(n, Fraction(2, 5), seed)
        assert longest_cycle(g)[0] == brute_circumference(g)


def test_random_oracle_connectivity_small():
    for seed in range(60):
        g = random_gnp(3 + seed % 6, Fraction(1, 2), seed)
        assert vertex_connectivity(g) == brute_connectivity(g)


def test_longest_path_oracle():
    for seed in range(40):
        g = random_gnp(3 + seed % 5, Fraction(2, 5), seed)
        length, w = longest_path(g)
        assert length == brute_longest_path(g, g.all_mask)
        assert is_valid_path(g, w) and w.length == length


def test_residual_matches_definition():
    g = petersen()
    _, cyc = longest_cycle(g)
    res = residual_invariants(g, cyc)
    assert res.cbar == 1 and res.pbar == 0
    assert is_dominating_cycle(g, cyc)


def test_witness_validators_reject_fakes():
    g = cycle_graph(5)
    assert not is_valid_cycle(g, CycleWitness("proper", (0, 1, 3)))
    assert not is_valid_path(g, PathWitness((0, 2)))


def test_biconnected_blocks_of_bowtie():
    g = from_edge_list(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert sorted(biconnected_blocks(g)) == sorted([0b00111, 0b11100])


def test_all_longest_cycles_counts():
    assert len(all_longest_cycles(complete(4))) == 3
    assert len(all_longest_cycles(cycle_graph(6))) == 1
    assert len(all_longest_cycles(complete_bipartite(2, 3))) == 3
    with pytest.raises(CapExceeded):
        all_longest_cycles(complete(13))


def test_time_budget_marks_incomplete():
    g = random_gnp(40, Fraction(1, 10), 1)
    p = compute_profile(g, time_budget=1e-6)
    assert p.incomplete
    assert is_valid_cycle(g, p.cycle) and p.c == p.cycle.length


def test_no_vertex_cap():
    g = complete(80)
    assert longest_cycle(g)[0] == 80
    assert vertex_connectivity(g) == 79


@given(graphs(max_n=8), st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_invariants_are_label_free(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    assert longest_cycle(g)[0] == longest_cycle(h)[0]
    assert vertex_connectivity(g) == vertex_connectivity(h)


@given(graphs(max_n=9))
@settings(max_examples=120, deadline=None)
def test_basic_inequalities(g):
    c = longest_cycle(g)[0]
    kappa, delta = vertex_connectivity(g), min_degree(g)
    assert kappa <= delta
    assert c >= min(delta + 1, g.n)
    assert c <= g.n


def test_oracles_on_known_graphs():
    assert brute_circumference(petersen()) == 9
    assert brute_circumference(path_graph(3)) == 2
    assert brute_circumference(edgeless(2)) == 1
    assert brute_connectivity(petersen()) == 3
    assert brute_connectivity(complete(5)) == 4
    assert brute_connectivity(complete_bipartite(2, 3)) == 2
