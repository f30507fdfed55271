"""Spanning connectivity: exact values, constructive lower bounds, survey harness."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .connectivity import connectivity, lemma_bound
from .containers import (
    DEFAULT_ORACLE_BOUND,
    Mode,
    PairOracle,
    build_container,
    verify_container,
)
from .core import Tournament, degree_profile, near_regular_tournament
from .errors import InfeasibleBudget, IrregularityExceeded, NotConstructible, SearchBudgetExceeded
from .hamilton import DEFAULT_BUDGET

log = logging.getLogger(__name__)

EXACT = "Exact"
LOWER_BOUND = "LowerBound"


@dataclass(frozen=True)
class KappaStar:
    value: int
    status: str
    per_pair: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {"value": self.value, "status": self.status}


def _prefix(ks: set[int]) -> int:
    j = 0
    while j + 1 in ks:
        j += 1
    return j


def kappa_star(
    t: Tournament,
    mode: Mode | str,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
    max_omega: int | None = None,
) -> KappaStar:
    """Largest ``k`` such that every pair has spanning ``w``-containers of the
    given mode for all ``w <= k``.

    Exact by dynamic-programming search when ``n <= oracle_bound``; above
    that, a :data:`LOWER_BOUND` certified by the constructive builders.
    """
    mode = Mode(mode)
    pairs = list(combinations(range(t.n), 2))
    if not pairs:
        return KappaStar(0, EXACT)
    if t.n <= oracle_bound:
        per_pair = {}
        for x, y in pairs:
            per_pair[(x, y)] = _prefix(PairOracle(t, x, y, oracle_bound).achievable_for(mode))
        return KappaStar(min(per_pair.values()), EXACT, per_pair)

    top = t.n - 1 if max_omega is None else max_omega
    per_pair = {p: 0 for p in pairs}
    value = 0
    for omega in range(1, top + 1):
        ok = True
        for x, y in pairs:
            if _certify(t, x, y, omega, mode, oracle_bound, budget) is None:
                ok = False
                break
            per_pair[(x, y)] = omega
        if not ok:
            break
        value = omega
    return KappaStar(value, LOWER_BOUND, per_pair)


def _certify(t, x, y, omega, mode, oracle_bound, budget):
    try:
        c = build_container(t, x, y, omega, mode, oracle_bound=oracle_bound, budget=budget)
    except (NotConstructible, SearchBudgetExceeded) as exc:
        log.debug("no %s %d-container for (%d, %d): %s", mode.value, omega, x, y, exc)
        return None
    if verify_container(t, c, expect_spanning=True) or len(c) != omega:
        return None
    return c


# ----------------------------------------------------------------------
# irregularity-based lower bounds


HYPOTHESIS_NOT_MET = "HypothesisNotMet"
CERTIFIED = "certified"
FAILED = "failed"


@dataclass
class Section4Result:
    n: int
    t: int
    k: int
    bound_s: int
    bound_w: int
    strong: str
    weak: str
    pairs: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return FAILED in (self.strong, self.weak)

    def satisfied(self) -> dict:
        def flag(status):
            return None if status == HYPOTHESIS_NOT_MET else status == CERTIFIED

        return {"strong": flag(self.strong), "weak": flag(self.weak)}

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "bound_s": self.bound_s,
            "bound_w": self.bound_w,
            "satisfied": self.satisfied(),
            "strong": self.strong,
            "weak": self.weak,
        }


def strong_threshold(t: int, k: int) -> int:
    return 6 * t + 5 * k


def weak_threshold(t: int, k: int) -> int:
    return 6 * t + 5 * k - 3


def verify_section4(
    tour: Tournament,
    k: int,
    t: int,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
    keep_traces: bool = False,
) -> Section4Result:
    """Certify the irregularity lower bounds on one tournament.

    When ``n >= 6t + 5k`` every pair gets a verified strong ``w``-container
    for each ``w <= t``.  When ``n >= 6t + 5k - 3`` every pair gets a weak
    one for each ``w <= t + 1``.  A side whose threshold is not reached is
    reported as :data:`HYPOTHESIS_NOT_MET`.
    """
    irr = degree_profile(tour).irregularity
    if irr > k:
        raise IrregularityExceeded(f"i(T) = {irr} exceeds the budget {k}")
    res = Section4Result(
        tour.n, t, k, strong_threshold(t, k), weak_threshold(t, k), HYPOTHESIS_NOT_MET, HYPOTHESIS_NOT_MET
    )
    for mode, threshold, top in ((Mode.STRONG, res.bound_s, t), (Mode.WEAK, res.bound_w, t + 1)):
        if tour.n < threshold:
            continue
        status = CERTIFIED
        for omega in range(1, top + 1):
            for x, y in combinations(range(tour.n), 2):
                c = _certify(tour, x, y, omega, mode, oracle_bound, budget)
                row = {"x": x, "y": y, "mode": mode.value, "omega": omega, "status": CERTIFIED if c else FAILED}
                if c is not None and keep_traces and c.trace is not None:
                    row["trace"] = c.trace.to_dict()
                res.pairs.append(row)
                if c is None:
                    status = FAILED
                    res.counterexamples.append(row)
        if mode is Mode.STRONG:
            res.strong = status
        else:
            res.weak = status
    return res


# ----------------------------------------------------------------------
# reports


@dataclass
class SpanningReport:
    n: int
    seed: int | None
    budget_k: int | None
    irregularity: int
    kappa: int
    lemma_bound: int | None = None
    kappa_s_star: KappaStar | None = None
    kappa_w_star: KappaStar | None = None
    section4: Section4Result | None = None
    pairs: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    skipped: str | None = None

    def to_dict(self) -> dict:
        return {
            "meta": {
                "n": self.n,
                "seed": self.seed,
                "k": self.budget_k,
                "irregularity": self.irregularity,
                "kappa": self.kappa,
                "lemma_bound": self.lemma_bound,
                "skipped": self.skipped,
            },
            "pairs": self.pairs,
            "kappa_s_star": self.kappa_s_star.to_dict() if self.kappa_s_star else None,
            "kappa_w_star": self.kappa_w_star.to_dict() if self.kappa_w_star else None,
            "section4": self.section4.to_dict() if self.section4 else None,
            "flags": self.flags,
        }


def spanning_report(
    tour: Tournament,
    seed: int | None = None,
    k: int | None = None,
    t: int | None = None,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
    exact: bool | None = None,
    keep_traces: bool = False,
) -> SpanningReport:
    prof = degree_profile(tour)
    kappa = connectivity(tour)
    rep = SpanningReport(tour.n, seed, k, prof.irregularity, kappa)
    if k is not None:
        rep.lemma_bound = lemma_bound(tour.n, k)
        if kappa < rep.lemma_bound:
            rep.flags.append("connectivity below the irregularity bound")
    if exact is None:
        exact = tour.n <= oracle_bound
    if exact:
        rep.kappa_s_star = kappa_star(tour, Mode.STRONG, oracle_bound, budget)
        rep.kappa_w_star = kappa_star(tour, Mode.WEAK, oracle_bound, budget)
        for mode, ks in ((Mode.STRONG, rep.kappa_s_star), (Mode.WEAK, rep.kappa_w_star)):
            for (x, y), omega in sorted(ks.per_pair.items()):
                rep.pairs.append({"x": x, "y": y, "mode": mode.value, "omega": omega, "status": ks.status})
        if rep.kappa_w_star.value < rep.kappa_s_star.value:
            rep.flags.append("kappa_w_star below kappa_s_star")
    if t is not None and k is not None:
        rep.section4 = verify_section4(tour, k, t, oracle_bound, budget, keep_traces)
        if not exact:
            rep.pairs.extend(rep.section4.pairs)
            if rep.section4.strong == CERTIFIED:
                rep.kappa_s_star = KappaStar(t, LOWER_BOUND)
            if rep.section4.weak == CERTIFIED:
                rep.kappa_w_star = KappaStar(t + 1, LOWER_BOUND)
        if rep.section4.failed:
            rep.flags.append("certification failed on a hypothesis-satisfying instance")
    return rep


@dataclass
class SurveyResult:
    reports: list[SpanningReport]

    def counts(self) -> dict:
        c = {"reports": len(self.reports), "skipped": 0, "certified": 0, "failed": 0, "hypothesis_not_met": 0}
        for r in self.reports:
            if r.skipped:
                c["skipped"] += 1
                continue
            if r.section4 is None:
                continue
            statuses = {r.section4.strong, r.section4.weak}
            if FAILED in statuses:
                c["failed"] += 1
            elif CERTIFIED in statuses:
                c["certified"] += 1
            else:
                c["hypothesis_not_met"] += 1
        return c

    @property
    def ok(self) -> bool:
        return all(r.section4 is None or not r.section4.failed for r in self.reports)

    def to_dict(self) -> dict:
        return {"summary": self.counts(), "reports": [r.to_dict() for r in self.reports]}


def survey(
    orders: Iterable[int],
    budgets: Iterable[int],
    ts: Iterable[int],
    seeds: Iterable[int],
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
) -> SurveyResult:
    """One report per ``(n, k, t, seed)`` on ``near_regular_tournament(n, k, seed)``.

    With no ``t`` values, one report per ``(n, k, seed)`` carrying exact
    spanning connectivities where the oracle bound allows.
    """
    ts = list(ts) or [None]
    seeds = list(seeds)
    reports = []
    for n, k, t in product(sorted(orders), sorted(budgets), ts):
        for seed in seeds:
            try:
                tour = near_regular_tournament(n, k, seed)
            except InfeasibleBudget as exc:
                reports.append(SpanningReport(n, seed, k, -1, -1, skipped=str(exc)))
                continue
            log.info("survey n=%d k=%d t=%s seed=%d", n, k, t, seed)
            reports.append(spanning_report(tour, seed, k, t, oracle_bound, budget))
    return SurveyResult(reports)
