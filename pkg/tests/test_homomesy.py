from fractions import Fraction

import pytest

from poset_dynamics.asm import AsmPoset
from poset_dynamics.homomesy import (
    GYR_TRANSITIONS,
    Statistic,
    antichain_size_statistic,
    check_homomesy,
    gyr_diagram_holds,
    ideal_size_statistic,
    nonzero_alternates,
    orbit_average,
    row_plus_then_minus,
    toggle_state,
    toggleability_statistic,
    transitions_ok,
)
from poset_dynamics.poset import chain, chain_product, counterexample_poset, random_posets
from poset_dynamics.toggles import GYR, ROW, Action, orbit, orbit_decomposition

X, Y = 0, 1


def test_toggleability_two_chain():
    P = chain(2)
    tx, ty = toggleability_statistic(P, X), toggleability_statistic(P, Y)
    assert tx(0b00) == 1
    assert tx(0b01) == -1
    assert ty(0b11) == -1
    assert tx(0b11) == 0
    assert ty(0b00) == 0


def test_size_statistics():
    P = chain(2)
    size, anti = ideal_size_statistic(), antichain_size_statistic(P)
    assert size(0) == 0
    assert size(0b11) == 2 and anti(0b11) == 1


def test_asm3_global_average_of_size():
    # ideal sizes of J(A_3), counted directly: 0,1,1,2,3,3,4
    A = AsmPoset(3)
    sizes = sorted(bin(I).count("1") for I in A.enumerate_ideals())
    assert sizes == [0, 1, 1, 2, 3, 3, 4]
    rep = check_homomesy(ROW, ideal_size_statistic(), A)
    assert rep.global_average == Fraction(2)


def test_orbit_average_examples():
    P = chain(2)
    o = orbit(ROW, P, 0)
    assert orbit_average(Statistic("one", lambda I: 1), o) == 1
    assert orbit_average(toggleability_statistic(P, X), o) == 0
    assert orbit_average(ideal_size_statistic(), o) == 1
    assert isinstance(orbit_average(ideal_size_statistic(), [0, 1]), Fraction)
    with pytest.raises(ValueError):
        orbit_average(ideal_size_statistic(), [])


def test_report_shape():
    P = chain(2)
    rep = check_homomesy(ROW, toggleability_statistic(P, X), P)
    assert rep.homomesic and rep.c == 0 and rep.witness is None
    data = rep.to_json()
    assert data == {
        "statistic": "toggleability:0",
        "action": "row",
        "orbit_averages": [["0/1", 3]],
        "global_average": "0/1",
        "homomesic": True,
        "c": "0/1",
        "witness": None,
    }


def test_counterexample_not_homomesic():
    P = counterexample_poset()
    rep = check_homomesy(Action.parse("word:0,2,1"), toggleability_statistic(P, 2), P)
    assert not rep.homomesic
    assert rep.c is None
    i, j = rep.witness
    assert rep.orbit_averages[i][0] != rep.orbit_averages[j][0]
    assert rep.to_json()["c"] is None


def test_weighted_averages_recover_global_sum():
    A = AsmPoset(4)
    for stat in (ideal_size_statistic(), antichain_size_statistic(A), toggleability_statistic(A, 3)):
        rep = check_homomesy(GYR, stat, A)
        total = sum(avg * size for avg, size in rep.orbit_averages)
        assert total == sum(stat(I) for I in A.enumerate_ideals())
        assert rep.global_average == total / len(A.enumerate_ideals())


def test_toggleability_zero_mesic_under_row_and_gyr():
    for P in [AsmPoset(n) for n in range(2, 5)] + random_posets(10, seed=8, ranked=True):
        for action in (ROW, GYR):
            orbits = orbit_decomposition(action, P)
            for p in range(P.size):
                rep = check_homomesy(action, toggleability_statistic(P, p), P, orbits=orbits)
                assert rep.homomesic and rep.c == 0


def test_rowmotion_sign_pattern():
    for P in [AsmPoset(4)] + random_posets(20, seed=12):
        orbits = orbit_decomposition(ROW, P)
        for p in range(P.size):
            t = toggleability_statistic(P, p)
            for o in orbits:
                values = [t(I) for I in o]
                assert nonzero_alternates(values)
                assert row_plus_then_minus(values)


def test_gyr_diagram_on_random_ranked():
    for P in [AsmPoset(n) for n in range(2, 5)] + random_posets(20, seed=13, ranked=True):
        orbits = orbit_decomposition(GYR, P)
        for p in range(P.size):
            assert all(gyr_diagram_holds(P, p, o) for o in orbits)


def test_gyr_diagram_is_not_vacuous():
    # odd-rank elements violate the forward diagram somewhere, so the reversal matters
    A = AsmPoset(4)
    rank = A.rank_function()
    orbits = orbit_decomposition(GYR, A)
    odd = [p for p in range(A.size) if rank[p] % 2]
    assert any(
        not transitions_ok([toggle_state(A, p, I) for I in o], GYR_TRANSITIONS) for p in odd for o in orbits
    )


def test_transition_helpers():
    assert nonzero_alternates([1, 0, -1, 0])
    assert not nonzero_alternates([1, 0, 1, -1])
    assert row_plus_then_minus([1, -1, 0])
    assert not row_plus_then_minus([1, 0, -1])


@pytest.mark.parametrize("a", range(1, 5))
@pytest.mark.parametrize("b", range(1, 5))
def test_chain_product_size_homomesy(a, b):
    P = chain_product(a, b)
    rep = check_homomesy(ROW, ideal_size_statistic(), P)
    assert rep.homomesic and rep.c == Fraction(a * b, 2)
    anti = check_homomesy(ROW, antichain_size_statistic(P), P)
    assert anti.homomesic and anti.c == Fraction(a * b, a + b)
