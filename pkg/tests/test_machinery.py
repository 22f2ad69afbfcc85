from fractions import Fraction
from itertools import permutations

import pytest

from circumference.generators import kappa_family, random_augmentation, random_gnp
from circumference.graph import from_edge_list, parse_graph6, to_mask
from circumference.invariants import CapExceeded, CycleWitness, longest_cycle, residual_invariants
from circumference.machinery import (
    ExtensionError,
    compute_O,
    compute_omega,
    compute_stats,
    delta_relation,
    greedy_hc_extension,
    lambda_path,
    longest_xy_path,
    maximal_hc_extension,
    t_transform,
    theta_procedure,
    validate_extension,
)
from circumference.machinery.lemmas import (
    LEMMA_IDS,
    LemmaInstance,
    UnsupportedLemma,
    check_lemma,
    generate_instances,
)
from circumference.machinery.paths import PathSystemError, enumerate_hc_paths, is_hc_path, touched_roots
from circumference.machinery.theta import ThetaError


def _witness_instance(g):
    insts, _ = generate_instances(g, mode="witness")
    (inst,) = insts
    return inst


@pytest.fixture(scope="module")
def family_instance():
    return _witness_instance(kappa_family(2, 4))


@pytest.fixture(scope="module")
def omega_instance():
    return _witness_instance(parse_graph6("KwCW?CB~~~_G"))


def _random_extensions(count=40):
    out = []
    seed = 0
    while len(out) < count:
        g = random_gnp(9 + seed % 2, Fraction(3, 10), seed)
        seed += 1
        if not g.is_connected():
            continue
        _, cyc = longest_cycle(g)
        res = residual_invariants(g, cyc)
        if res.residual_empty or res.cbar < 3:
            continue
        out.append((g, cyc, res.cycle.vertices))
    return out


# --- extensions -----------------------------------------------------------------------------


def test_family_extension_shape(family_instance):
    ext = family_instance.ext
    assert ext.h == 3 and validate_extension(ext) == []
    assert all(len(p) == 1 for p in ext.T)  # every residual vertex already sees only C and H


def test_random_extensions_are_valid_and_maximal():
    for g, C, H in _random_extensions():
        greedy = greedy_hc_extension(g, C, H)
        best = maximal_hc_extension(g, C, H)
        assert validate_extension(greedy) == []
        assert validate_extension(best) == []
        assert best.objective >= greedy.objective


def test_extension_rejects_bad_input():
    g = kappa_family(2, 4)
    _, C = longest_cycle(g)
    with pytest.raises(ExtensionError):
        greedy_hc_extension(g, C, (0, 1))
    with pytest.raises(ExtensionError):
        greedy_hc_extension(g, C, C.vertices[:3])


def test_extension_cap():
    g = kappa_family(2, 6)
    _, C = longest_cycle(g)
    H = residual_invariants(g, C).cycle.vertices
    with pytest.raises(CapExceeded):
        maximal_hc_extension(g, C, H)


def test_validator_catches_a_broken_extension(omega_instance):
    ext = omega_instance.ext
    from circumference.machinery.extension import HcExtension

    broken = HcExtension(ext.g, ext.C, ext.H, tuple((u,) for u in ext.H))
    assert any("terminal" in p for p in validate_extension(broken))


# --- Θ ---------------------------------------------------------------------------------------


def test_theta_chord_example():
    g = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)])
    r = theta_procedure(g, (0, 1, 2, 3), 0, 1 << 4)
    assert r.paths == ((0, 1), (0, 3)) and r.cases == ("iii", "i") and r.pi == 1
    assert r.chain == (frozenset({0, 1}), frozenset({0, 1, 2, 3}))
    # without single edges as neutral paths the chord is invisible
    r = theta_procedure(g, (0, 1, 2, 3), 0, 1 << 4, edges_count=False)
    assert r.paths == ((0, 1),) and r.cases == ("i",)


def test_theta_reaches_final_set():
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 3), (2, 5)])
    r = theta_procedure(g, (0, 1, 2, 3), 1 << 4, 1 << 5)
    assert r.paths == ((0, 1), (0, 4, 3), (2, 5))
    assert r.cases == ("iii", "ii")
    assert theta_procedure(g, (0, 1, 2, 3), 1 << 4, 0).cases == ("iii", "i")


def test_theta_rejects_bad_input():
    g = from_edge_list(3, [(0, 1), (1, 2)])
    with pytest.raises(ThetaError):
        theta_procedure(g, (0,), 0, 0)
    with pytest.raises(ThetaError):
        theta_procedure(g, (0, 2), 0, 0)
    with pytest.raises(ThetaError):
        theta_procedure(g, (0, 1), 1 << 1, 0)


# --- stats -------------------------------------------------------------------------------------


def test_stats_identities_on_random_extensions():
    for g, C, H in _random_extensions(25):
        ext = maximal_hc_extension(g, C, H)
        st = compute_stats(ext)
        assert sum(st[u].gamma for u in ext.H) == sum(st[u].phi_prime for u in ext.H)
        assert st.mu == sum(st.beta.values(), Fraction(0)) / ext.h
        for u in ext.H:
            r = st[u]
            assert (r.cls == "U0") == (ext.t_len(u) == 0)
            assert r.phi_prime == (0 if r.cls == "U*" else r.phi)
            for v in r.Lambda:
                for w in r.Lambda:
                    p = lambda_path(st, u, v, w)
                    if p is not None:
                        assert p[0] == v and p[-1] == w


def test_family_stats(family_instance):
    st = family_instance.stats
    assert set(st.classes()["U0"]) == set(family_instance.ext.H)
    # each trivial root sees the other two roots and no ring vertex, so gamma = 2
    assert all(st[u].gamma == 2 for u in family_instance.ext.H)
    assert st.mu == 2


# --- O, Ω and T-transformation ----------------------------------------------------------------


def _brute_xy(g, x, y, allowed):
    verts = [v for v in range(g.n) if allowed >> v & 1 and v not in (x, y)]
    best = -1
    for k in range(len(verts) + 1):
        for mid in permutations(verts, k):
            p = (x,) + mid + (y,)
            if all(g.has_edge(a, b) for a, b in zip(p, p[1:])):
                best = max(best, k + 1)
    return best


def test_longest_xy_path_oracle():
    for seed in range(30):
        g = random_gnp(7, Fraction(2, 5), seed)
        allowed = g.all_mask & ~(1 << (seed % 7))
        x, y = 0, 1 if seed % 7 != 1 else 2
        if not allowed >> x & 1:
            continue
        got, path = longest_xy_path(g, x, y, allowed)
        assert got == _brute_xy(g, x, y, allowed)
        if path:
            assert path[0] == x and path[-1] == y and len(path) - 1 == got


def test_O_variants(omega_instance):
    ext = omega_instance.ext
    x, y = 6, 7
    assert compute_O(ext, x, y, "O")[0] >= 0
    assert compute_O(ext, x, y, "Ox")[0] == -1  # T(6) is trivial, so no ring vertex
    assert compute_O(ext, x, y, "Oy")[0] >= compute_O(ext, x, y, "O")[0]
    with pytest.raises(PathSystemError):
        compute_O(ext, x, x)
    with pytest.raises(PathSystemError):
        compute_O(ext, x, y, "bogus")


def test_omega_pinned(omega_instance):
    om = compute_omega(omega_instance.ext, 6, 7)
    assert om.defined and om.length == 2 and om.pairs == 2
    E, F = om.witness
    assert E[0] == 6 and F[0] == 7
    assert om.length >= compute_O(omega_instance.ext, 6, 7)[0]


def test_omega_on_the_family(family_instance):
    # the residual triangle reaches C through the two hub vertices, one path each
    ext = family_instance.ext
    om = compute_omega(ext, ext.H[0], ext.H[1])
    assert om.defined and om.length == 2 and om.pairs == 2


def test_omega_undefined_when_paths_cannot_be_disjoint():
    # a residual triangle hanging off a single cut vertex of C
    g = from_edge_list(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4), (0, 4), (0, 5), (0, 6)])
    C = CycleWitness("proper", (0, 1, 2, 3))
    ext = maximal_hc_extension(g, C, (4, 5, 6))
    assert not compute_omega(ext, 4, 5).defined


def test_t_transform_touches_exactly_the_starts(omega_instance):
    ext = omega_instance.ext
    for x in ext.H:
        for p in enumerate_hc_paths(ext, x, 0):
            t = t_transform(ext, [p])
            assert len(t.paths) == 1 and is_hc_path(ext, t.paths[0])
            assert touched_roots(ext, t.paths) == set(t.starts)


def test_t_transform_rejects_bad_systems(omega_instance):
    ext = omega_instance.ext
    with pytest.raises(PathSystemError):
        t_transform(ext, [(ext.H[0],)])


def test_delta_relation():
    g = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 2)])
    assert delta_relation(g, 4, (0, 1, 2))
    assert not delta_relation(g, 4, (1, 2, 3))
    assert delta_relation(g, 1, (0, 1, 2))
    with pytest.raises(PathSystemError):
        delta_relation(g, 4, (0, 1))


# --- lemma checks -----------------------------------------------------------------------------


def test_every_lemma_holds_on_the_omega_instance(omega_instance):
    for lid in LEMMA_IDS:
        r = check_lemma(omega_instance, lid)
        assert r.holds, (lid, r)


def test_omega_lemmas_are_exercised(omega_instance):
    assert check_lemma(omega_instance, "lemma8").checked > 0
    assert check_lemma(omega_instance, "i8").checked > 0


def test_lemma_report_carries_worst_case(family_instance):
    r = check_lemma(family_instance, "d3")
    assert r.holds and r.checked == 3 and r.lhs == 3 and r.rhs == 3


def test_unknown_lemma_rejected(family_instance):
    with pytest.raises(UnsupportedLemma):
        check_lemma(family_instance, "e3")


def test_hamiltonian_graph_has_no_instances():
    insts, reasons = generate_instances(kappa_family(1, 1).__class__(3, (6, 5, 3)))
    assert insts == [] and "Hamiltonian" in reasons[0]


def test_small_residual_gives_lemma3_only():
    insts, reasons = generate_instances(kappa_family(2, 3))
    assert insts and all(i.ext is None for i in insts)
    assert check_lemma(insts[0], "lemma3").checked > 0
    assert check_lemma(insts[0], "d1").checked == 0


def test_literal_d2_chain_fails_for_special_roots():
    # For a U* root with a one-edge path, phi' is 0 by definition, so 2phi' >= gamma + 1 cannot hold;
    # the checker tests h >= 2phi' and h >= gamma + 1, and the middle link only off U*.
    g = parse_graph6("FCQVO")
    for inst in generate_instances(g)[0]:
        if inst.ext is None:
            continue
        specials = [u for u in inst.ext.H if inst.ext.t_len(u) == 1 and inst.stats[u].cls == "U*"]
        if specials:
            u = specials[0]
            r = inst.stats[u]
            assert 2 * r.phi_prime < r.gamma + 1
            assert check_lemma(inst, "d2").holds
            return
    pytest.fail("expected a special root with a one-edge path")
