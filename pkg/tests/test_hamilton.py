from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournspan import hamilton
from tournspan.connectivity import connectivity, is_k_strong
from tournspan.core import (
    delete,
    enumerate_all,
    is_strong,
    near_regular_tournament,
    random_tournament,
    reverse,
    transitive,
)
from tournspan.errors import NoSuchArc, NotInsertable, NotStrong, SameVertex, SearchBudgetExceeded
from tournspan.hamilton import (
    augment,
    catalog_closed_under_reversal,
    exceptional_catalog,
    find_ham_path_between,
    find_ham_path_directed,
    ham_path_between_exists,
    hamiltonian_cycle,
    hamiltonian_cycle_through_arc,
    hamiltonian_path_any,
    in_exceptional_catalog,
    is_hamiltonian_cycle,
    is_hamiltonian_path,
)

import oracles


def test_path_any_examples(tt4, c3):
    assert hamiltonian_path_any(tt4) == [0, 1, 2, 3]
    assert is_hamiltonian_path(c3, hamiltonian_path_any(c3))


def test_path_any_all_n5():
    for t in enumerate_all(5):
        assert is_hamiltonian_path(t, hamiltonian_path_any(t))


@given(st.integers(1, 30), st.integers(0, 10**6))
def test_path_any_random(n, seed):
    t = random_tournament(n, seed)
    assert is_hamiltonian_path(t, hamiltonian_path_any(t))


class TestCycle:
    def test_c3(self, c3):
        assert hamiltonian_cycle(c3) == [0, 1, 2]

    def test_tt4(self, tt4):
        with pytest.raises(NotStrong):
            hamiltonian_cycle(tt4)

    def test_small(self):
        with pytest.raises(NotStrong):
            hamiltonian_cycle(transitive(2))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_exhaustive(self, n):
        for t in enumerate_all(n):
            if oracles.is_strong(oracles.matrix(t)):
                assert is_hamiltonian_cycle(t, hamiltonian_cycle(t))
            else:
                with pytest.raises(NotStrong):
                    hamiltonian_cycle(t)

    @settings(max_examples=60)
    @given(st.integers(3, 25), st.integers(0, 10**6))
    def test_random(self, n, seed):
        t = random_tournament(n, seed)
        if is_strong(t):
            assert is_hamiltonian_cycle(t, hamiltonian_cycle(t))


class TestAugment:
    def test_tt4(self, tt4):
        assert augment(tt4, [0, 1, 3], 2) == [0, 1, 2, 3]

    def test_c3(self, c3):
        with pytest.raises(NotInsertable):
            augment(c3, [0, 1], 2)

    @settings(max_examples=100)
    @given(st.integers(0, 10**6), st.data())
    def test_random(self, seed, data):
        t = random_tournament(8, seed)
        x = data.draw(st.integers(0, 7))
        sub = delete(t, [x])
        path = sub.lift(hamiltonian_path_any(sub.tournament))
        # x is insertable iff some vertex dominating x precedes one that x dominates, adjacently
        insertable = any(t.dominates(a, x) and t.dominates(x, b) for a, b in zip(path, path[1:]))
        if insertable:
            out = augment(t, path, x)
            assert is_hamiltonian_path(t, out)
            assert out[0] == path[0] and out[-1] == path[-1]
        else:
            with pytest.raises(NotInsertable):
                augment(t, path, x)


class TestDirected:
    def test_examples(self, tt4, c3):
        assert find_ham_path_directed(tt4, 0, 3) == [0, 1, 2, 3]
        assert find_ham_path_directed(c3, 1, 0) == [1, 2, 0]
        assert find_ham_path_directed(tt4, 3, 0) is None

    def test_same(self, c3):
        with pytest.raises(SameVertex):
            find_ham_path_directed(c3, 0, 0)

    def test_budget(self):
        t = near_regular_tournament(15, 0, 2)
        with pytest.raises(SearchBudgetExceeded):
            # a tiny budget cannot finish a 15-vertex search
            find_ham_path_directed(t, 0, 1, budget=3)

    @pytest.mark.parametrize("n", [4, 5])
    def test_exhaustive(self, n):
        for t in enumerate_all(n):
            A = oracles.matrix(t)
            for x in range(n):
                for y in range(n):
                    if x != y:
                        p = find_ham_path_directed(t, x, y)
                        assert (p is not None) == oracles.ham_path_directed(A, x, y)
                        if p:
                            assert is_hamiltonian_path(t, p) and p[0] == x and p[-1] == y

    @settings(max_examples=40, deadline=None)
    @given(st.integers(6, 10), st.integers(0, 10**6), st.data())
    def test_random(self, n, seed, data):
        t = random_tournament(n, seed)
        x = data.draw(st.integers(0, n - 1))
        y = data.draw(st.integers(0, n - 1).filter(lambda v: v != x))
        p = find_ham_path_directed(t, x, y)
        assert (p is not None) == oracles.ham_path_directed(oracles.matrix(t), x, y)

    def test_within(self, r7):
        within = 0b0001111
        p = find_ham_path_directed(r7, 0, 3, within=within)
        assert p is not None and sorted(p) == [0, 1, 2, 3]

    @pytest.mark.parametrize("n", [11, 13])
    def test_four_strong_guarantee(self, n):
        for seed in range(4):
            t = near_regular_tournament(n, 0, seed)
            assert is_k_strong(t, 4)
            for x in range(n):
                for y in range(n):
                    if x != y:
                        p = find_ham_path_directed(t, x, y)
                        assert p[0] == x and p[-1] == y and is_hamiltonian_path(t, p)


class TestCycleThroughArc:
    def test_c3(self, c3):
        assert hamiltonian_cycle_through_arc(c3, 0, 1) == [0, 1, 2]

    def test_tt3(self, tt3):
        assert hamiltonian_cycle_through_arc(tt3, 0, 1) is None

    def test_no_arc(self, c3):
        with pytest.raises(NoSuchArc):
            hamiltonian_cycle_through_arc(c3, 1, 0)

    @pytest.mark.parametrize("n", [9, 11, 13])
    def test_three_strong(self, n):
        for seed in range(5):
            t = near_regular_tournament(n, 0, seed)
            assert is_k_strong(t, 3)
            for u, v in t.arcs():
                cyc = hamiltonian_cycle_through_arc(t, u, v)
                assert is_hamiltonian_cycle(t, cyc) and cyc[:2] == [u, v]


class TestBetween:
    def test_tt4(self, tt4):
        assert ham_path_between_exists(tt4, 0, 3) == (True, None)
        assert ham_path_between_exists(tt4, 1, 2) == (False, "i")
        assert find_ham_path_between(tt4, 1, 2) is None
        assert find_ham_path_between(tt4, 3, 0) == [0, 1, 2, 3]

    def test_c3(self, c3):
        p = find_ham_path_between(c3, 0, 2)
        assert is_hamiltonian_path(c3, p) and {p[0], p[-1]} == {0, 2}

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive(self, n):
        for t in enumerate_all(n):
            A = oracles.matrix(t)
            for x, y in combinations(range(n), 2):
                ok, code = ham_path_between_exists(t, x, y)
                assert ok == oracles.ham_path_between(A, x, y)
                assert (code is None) == ok
                p = find_ham_path_between(t, x, y)
                assert (p is not None) == ok
                if p:
                    assert is_hamiltonian_path(t, p) and {p[0], p[-1]} == {x, y}

    def test_two_triangles(self, two_triangles):
        assert ham_path_between_exists(two_triangles, 0, 3)[0]
        assert ham_path_between_exists(two_triangles, 0, 1) == (False, "i")

    @settings(max_examples=40, deadline=None)
    @given(st.integers(7, 10), st.integers(0, 10**6), st.data())
    def test_random_larger(self, n, seed, data):
        t = random_tournament(n, seed)
        x = data.draw(st.integers(0, n - 1))
        y = data.draw(st.integers(0, n - 1).filter(lambda v: v != x))
        assert ham_path_between_exists(t, x, y)[0] == oracles.ham_path_between(oracles.matrix(t), x, y)


class TestCatalog:
    def test_shape(self):
        cat = exceptional_catalog()
        assert len(cat) == 2
        for e in cat:
            assert e.tournament.n == 6
            assert connectivity(e.tournament) == 2
            x, y = e.pair
            assert not oracles.ham_path_between(oracles.matrix(e.tournament), x, y)
            assert hamilton._conditions_i_to_iii(e.tournament.rows, e.tournament.full, x, y) is None

    def test_closed_under_reversal(self):
        assert catalog_closed_under_reversal(exceptional_catalog())

    def test_membership(self):
        for e in exceptional_catalog():
            assert in_exceptional_catalog(e.tournament, *e.pair)
            assert in_exceptional_catalog(e.tournament, *reversed(e.pair))
            assert in_exceptional_catalog(reverse(e.tournament), *e.pair)
            assert ham_path_between_exists(e.tournament, *e.pair) == (False, "iv")

    def test_round_trip(self):
        cat = exceptional_catalog()
        assert hamilton.parse_catalog(hamilton.format_catalog(cat)) == list(cat)

    @pytest.mark.slow
    def test_derivation_matches_data_file(self):
        derived = hamilton.derive_exceptional_catalog()
        assert hamilton.format_catalog(derived) == hamilton.format_catalog(exceptional_catalog())


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_strong_triple_has_joined_pair(n):
    # among any three vertices of a strong tournament some pair is Hamiltonian-joined
    for t in enumerate_all(n):
        if not is_strong(t):
            continue
        for a, b, c in combinations(range(n), 3):
            assert any(ham_path_between_exists(t, u, v)[0] for u, v in ((a, b), (a, c), (b, c)))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_two_strong_outside_catalog_is_weakly_joined(n):
    for t in enumerate_all(n):
        if connectivity(t) < 2:
            continue
        for x, y in combinations(range(n), 2):
            if not in_exceptional_catalog(t, x, y):
                assert ham_path_between_exists(t, x, y)[0]


def test_two_strong_n7_samples():
    seen = 0
    for seed in range(400):
        t = random_tournament(7, seed)
        if connectivity(t) < 2:
            continue
        seen += 1
        A = oracles.matrix(t)
        assert all(oracles.ham_path_between(A, x, y) for x, y in combinations(range(7), 2))
    assert seen > 20


def test_three_strong_samples_every_pair_joined():
    for n in (7, 9, 11):
        for seed in range(5):
            t = near_regular_tournament(n, 0, seed)
            assert is_k_strong(t, 3)
            for x, y in combinations(range(n), 2):
                assert find_ham_path_between(t, x, y) is not None
