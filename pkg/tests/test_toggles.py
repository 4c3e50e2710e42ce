import pytest
from hypothesis import given, strategies as st

from poset_dynamics.asm import AsmPoset
from poset_dynamics.poset import Poset, PosetError, antichain, chain, chain_product, counterexample_poset, random_posets
from poset_dynamics.toggles import (
    GYR,
    ROW,
    Action,
    NotBijectiveError,
    apply_word,
    gyration,
    gyration_inverse,
    gyration_word,
    orbit,
    orbit_decomposition,
    orbit_multiset_equal,
    orbit_sizes,
    orbits_to_json,
    rowmotion_antichain,
    rowmotion_toggles,
    toggle,
)

X, Y = 0, 1
EMPTY, JUST_X, BOTH = 0b00, 0b01, 0b11


def test_toggle_two_chain():
    P = chain(2)
    assert toggle(P, X, EMPTY) == JUST_X
    assert toggle(P, Y, JUST_X) == BOTH
    assert toggle(P, Y, EMPTY) == EMPTY


def test_apply_word():
    P = chain(2)
    assert apply_word(P, [], JUST_X) == JUST_X
    assert apply_word(P, [X, X], JUST_X) == JUST_X
    with pytest.raises(PosetError):
        apply_word(P, [2], EMPTY)


def test_apply_word_counterexample():
    # {} -t_a-> {a} -t_c-> {a} (b missing) -t_b-> {a, b}
    P = counterexample_poset()
    a, b, c = 0, 1, 2
    assert toggle(P, a, 0) == 0b001
    assert toggle(P, c, 0b001) == 0b001
    assert toggle(P, b, 0b001) == 0b011
    assert apply_word(P, [a, c, b], 0) == 0b011


def test_rowmotion_two_chain():
    P = chain(2)
    for f in (rowmotion_antichain, rowmotion_toggles):
        assert [f(P, I) for I in (EMPTY, JUST_X, BOTH)] == [JUST_X, BOTH, EMPTY]


def test_gyration_two_chain():
    P = chain(2)
    assert gyration(P, EMPTY) == BOTH
    assert gyration(P, BOTH) == JUST_X
    assert gyration(P, JUST_X) == EMPTY
    assert gyration_inverse(P, gyration(P, JUST_X)) == JUST_X


def test_gyration_rejects_unranked():
    pentagon = Poset(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    with pytest.raises(PosetError):
        gyration(pentagon, 0)
    with pytest.raises(PosetError):
        GYR.bind(pentagon)


def test_orbit_examples():
    assert orbit(ROW, chain(2), EMPTY).ideals == (EMPTY, JUST_X, BOTH)
    assert orbit(ROW, chain(2), BOTH).ideals == (EMPTY, JUST_X, BOTH)
    assert len(orbit(GYR, chain(2), JUST_X)) == 3
    assert orbit(ROW, chain(1), 0).ideals == (0, 1)


def test_orbit_detects_non_bijection():
    P = chain(2)
    with pytest.raises(NotBijectiveError):
        orbit(lambda I: BOTH, P, EMPTY)


def test_asm3_orbits():
    A = AsmPoset(3)
    gyr = orbit_decomposition(GYR, A)
    row = orbit_decomposition(ROW, A)
    assert len(gyr) == 3
    assert sorted(len(o) for o in gyr) == [2, 2, 3]
    assert sorted(len(o) for o in row) == [2, 2, 3]


def test_decomposition_is_partition_and_canonical():
    A = AsmPoset(4)
    for action in (ROW, GYR, Action("gyr-inverse"), Action.parse("word:0,3,5")):
        orbits = orbit_decomposition(action, A)
        flat = sorted(I for o in orbits for I in o)
        assert flat == A.enumerate_ideals()
        for o in orbits:
            assert o.ideals[0] == min(o.ideals)
        assert [o.ideals[0] for o in orbits] == sorted(o.ideals[0] for o in orbits)
        step = action.bind(A)
        for o in orbits:
            assert all(step(o.ideals[k]) == o.ideals[(k + 1) % len(o)] for k in range(len(o)))


def test_orbit_multiset_equal():
    A = AsmPoset(4)
    d = orbit_decomposition(ROW, A)
    assert orbit_multiset_equal(d, d)
    assert orbit_multiset_equal(d, orbit_decomposition(GYR, A))
    assert not orbit_multiset_equal(d, orbit_decomposition(ROW, chain(3)))


def test_row_gyr_conjugate_on_random_ranked():
    for P in random_posets(20, seed=5, ranked=True):
        assert orbit_multiset_equal(orbit_decomposition(ROW, P), orbit_decomposition(GYR, P))


def test_rank_permutation_conjugate_to_rowmotion():
    # toggling rank by rank in any order is conjugate to rowmotion
    P = chain_product(3, 3)
    rank = P.rank_function()
    top = max(rank)
    row_sizes = orbit_sizes(orbit_decomposition(ROW, P))
    for perm in ([2, 0, 4, 1, 3], [4, 3, 2, 1, 0], [1, 3, 0, 2, 4]):
        word = [p for r in perm if r <= top for p in range(P.size) if rank[p] == r]
        sizes = orbit_sizes(orbit_decomposition(Action("word", tuple(word)), P))
        assert sizes == row_sizes


@given(st.integers(0, 49), st.data())
def test_toggle_involution_and_commutation(k, data):
    P = random_posets(50, seed=1)[k]
    ideals = P.enumerate_ideals()
    I = data.draw(st.sampled_from(ideals))
    p = data.draw(st.integers(0, P.size - 1))
    q = data.draw(st.integers(0, P.size - 1))
    assert toggle(P, p, toggle(P, p, I)) == I
    if (p, q) not in P.covers and (q, p) not in P.covers:
        assert toggle(P, p, toggle(P, q, I)) == toggle(P, q, toggle(P, p, I))


def test_toggles_do_not_commute_across_a_cover():
    P = chain(2)
    assert any(toggle(P, X, toggle(P, Y, I)) != toggle(P, Y, toggle(P, X, I)) for I in (EMPTY, JUST_X, BOTH))


def test_rowmotion_definitions_agree():
    posets = [AsmPoset(n) for n in range(1, 5)] + random_posets(50, seed=2)
    for P in posets:
        for I in P.enumerate_ideals():
            assert rowmotion_antichain(P, I) == rowmotion_toggles(P, I)


def test_gyration_order_within_parity_irrelevant():
    import random

    rng = random.Random(9)
    for P in [AsmPoset(4)] + random_posets(10, seed=4, ranked=True):
        rank = P.rank_function()
        even = [p for p in range(P.size) if rank[p] % 2 == 0]
        odd = [p for p in range(P.size) if rank[p] % 2 == 1]
        for _ in range(5):
            rng.shuffle(even)
            rng.shuffle(odd)
            for I in P.enumerate_ideals():
                assert apply_word(P, even + odd, I) == gyration(P, I)


def test_gyration_word_parity_blocks():
    A = AsmPoset(4)
    rank = A.rank_function()
    w = gyration_word(A)
    parities = [rank[p] % 2 for p in w]
    assert parities == sorted(parities)


def test_action_parse_and_json():
    assert Action.parse("word:0,2,1") == Action("word", (0, 2, 1))
    assert Action.parse("row").name == "row"
    with pytest.raises(ValueError):
        Action.parse("promotion")
    data = orbits_to_json(orbit_decomposition(ROW, chain(2)))
    assert data == {"action": "row", "orbits": [[0, 1, 3]]}
    assert orbit_decomposition(ROW, antichain(0))[0].ideals == (0,)
