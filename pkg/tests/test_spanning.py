import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tournspan.containers import Mode
from tournspan.core import enumerate_all, near_regular_tournament, random_tournament, transitive
from tournspan.errors import IrregularityExceeded
from tournspan.spanning import (
    CERTIFIED,
    EXACT,
    HYPOTHESIS_NOT_MET,
    LOWER_BOUND,
    kappa_star,
    spanning_report,
    strong_threshold,
    survey,
    verify_section4,
    weak_threshold,
)

import oracles


class TestKappaStar:
    def test_tt4_strong(self, tt4):
        ks = kappa_star(tt4, Mode.STRONG)
        assert (ks.value, ks.status) == (0, EXACT)

    def test_c3(self, c3):
        assert kappa_star(c3, "weak").value == 2
        assert kappa_star(c3, "strong").value == 1

    def test_r5(self, r5):
        assert kappa_star(r5, "strong").value == oracles.kappa_star(oracles.matrix(r5), "strong")
        assert kappa_star(r5, "weak").value == oracles.kappa_star(oracles.matrix(r5), "weak")

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive(self, n):
        for t in enumerate_all(n):
            A = oracles.matrix(t)
            for mode in ("strong", "weak"):
                assert kappa_star(t, mode).value == oracles.kappa_star(A, mode)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_n6(self, seed):
        t = random_tournament(6, seed)
        A = oracles.matrix(t)
        for mode in ("strong", "weak"):
            assert kappa_star(t, mode).value == oracles.kappa_star(A, mode)

    def test_weak_not_below_strong_small(self):
        # observed on every tournament up to 5 vertices; not a library invariant
        for n in range(2, 6):
            for t in enumerate_all(n):
                assert kappa_star(t, "weak").value >= kappa_star(t, "strong").value

    def test_lower_bound(self):
        t = near_regular_tournament(13, 0, 1)
        ks = kappa_star(t, "strong", max_omega=2)
        assert ks.status == LOWER_BOUND and ks.value == 2

    def test_exact_matches_builders(self):
        t = near_regular_tournament(9, 0, 2)
        exact = kappa_star(t, "weak", max_omega=3)
        built = kappa_star(t, "weak", oracle_bound=0, max_omega=3)
        assert built.status == LOWER_BOUND
        assert built.value <= exact.value


class TestSection4:
    def test_thresholds(self):
        assert strong_threshold(2, 0) == 12
        assert weak_threshold(2, 0) == 9
        assert strong_threshold(2, 3) == 27

    def test_strong(self):
        res = verify_section4(near_regular_tournament(13, 0, 1), 0, 2)
        assert res.strong == CERTIFIED and res.weak == CERTIFIED
        assert res.satisfied() == {"strong": True, "weak": True}

    def test_weak_only(self):
        res = verify_section4(near_regular_tournament(11, 0, 1), 0, 2)
        assert res.strong == HYPOTHESIS_NOT_MET and res.weak == CERTIFIED
        assert res.to_dict()["satisfied"] == {"strong": None, "weak": True}

    def test_hypothesis_not_met(self, tt4):
        res = verify_section4(tt4, 3, 2)
        assert (res.strong, res.weak) == (HYPOTHESIS_NOT_MET, HYPOTHESIS_NOT_MET)
        assert res.pairs == []

    def test_budget_checked(self, tt4):
        with pytest.raises(IrregularityExceeded):
            verify_section4(tt4, 1, 0)

    def test_traces(self):
        res = verify_section4(near_regular_tournament(9, 0, 1), 0, 1, keep_traces=True)
        assert all("trace" in row for row in res.pairs)


class TestReport:
    def test_r7(self, r7):
        rep = spanning_report(r7, k=0)
        d = rep.to_dict()
        assert d["meta"]["kappa"] == 3 and d["meta"]["lemma_bound"] == 3
        assert d["kappa_s_star"]["status"] == EXACT
        assert rep.flags == []

    def test_section4_lower_bounds(self):
        rep = spanning_report(near_regular_tournament(13, 0, 3), seed=3, k=0, t=2)
        assert rep.kappa_s_star.status == LOWER_BOUND and rep.kappa_s_star.value == 2
        assert rep.kappa_w_star.value == 3


class TestSurvey:
    def test_below_threshold(self):
        res = survey([7], [0], [2], range(5))
        assert len(res.reports) == 5
        assert all(r.section4.strong == HYPOTHESIS_NOT_MET for r in res.reports)
        assert all(r.kappa >= 3 and r.irregularity == 0 for r in res.reports)
        assert res.counts()["hypothesis_not_met"] == 5

    def test_certified(self):
        res = survey([13, 15], [0], [2], range(10))
        assert len(res.reports) == 20
        assert all(r.section4.strong == CERTIFIED for r in res.reports)
        assert res.ok

    def test_exact(self):
        res = survey([9], [0], [], range(3))
        assert all(r.kappa_w_star.status == EXACT for r in res.reports)

    def test_infeasible_skipped(self):
        res = survey([6], [0], [1], [0])
        assert res.counts()["skipped"] == 1
