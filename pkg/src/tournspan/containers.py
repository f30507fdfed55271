"""Spanning containers: builders, verifier and exact oracle.

A ``k``-container between ``x`` and ``y`` is a family of ``k`` internally
disjoint paths joining them.  In *strong* mode all paths run the same way;
in *weak* mode each path may run either way.  A container is spanning when
its paths cover every vertex.

The builders replay the usual constructive argument.  They pick ``x -> c -> y``
style length-2 paths through common neighbours, pick disjoint length-3
paths ``x -> a -> b -> y`` from a bipartite matching on the ``A -> B`` arcs,
delete all chosen internal vertices and close with a base container of the
remainder.  For weak mode the base is a Hamiltonian cycle split at ``x``
and ``y``.  For strong mode it is the arc ``x -> y`` together with a
Hamiltonian ``(x, y)``-path.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Sequence

from .connectivity import local_connectivity
from .core import Tournament, bits, component_masks, mask_of
from .errors import IndexOutOfRange, NotConstructible, OracleTooLarge, OrderTooLarge, SameVertex, SearchBudgetExceeded
from .hamilton import DEFAULT_BUDGET, _cycle_in, _directed, _Budget, find_ham_path_between

DEFAULT_ORACLE_BOUND = 10


class Mode(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True)
class PartitionABCD:
    """Classes of ``V - {x, y}`` by their arcs with ``x`` and ``y``.

    ``A``: dominated by both, ``B``: dominating both, ``C``: ``x -> c -> y``,
    ``D``: ``y -> d -> x``.
    """

    A: tuple[int, ...]
    B: tuple[int, ...]
    C: tuple[int, ...]
    D: tuple[int, ...]


@dataclass
class BuildTrace:
    case: str
    direction: tuple[int, int]
    length2: list[int] = field(default_factory=list)
    length3: list[tuple[int, int]] = field(default_factory=list)
    extra_paths: list[tuple[int, ...]] = field(default_factory=list)
    deleted: list[int] = field(default_factory=list)
    base: str = ""
    failure: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["direction"] = list(self.direction)
        d["length3"] = [list(p) for p in self.length3]
        d["extra_paths"] = [list(p) for p in self.extra_paths]
        return d


@dataclass(frozen=True)
class Container:
    x: int
    y: int
    mode: Mode
    paths: tuple[tuple[int, ...], ...]
    spanning: bool
    trace: BuildTrace | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.paths)

    @property
    def constructive(self) -> bool:
        return self.trace is None or self.trace.base != "oracle"

    def to_dict(self) -> dict:
        d = {
            "x": self.x,
            "y": self.y,
            "mode": self.mode.value,
            "paths": [list(p) for p in self.paths],
            "spanning": self.spanning,
        }
        if self.trace is not None:
            d["trace"] = self.trace.to_dict()
        return d


@dataclass(frozen=True)
class ProvenAbsent:
    """Exhaustive search found no spanning container of this shape."""

    x: int
    y: int
    k: int
    mode: Mode


@dataclass(frozen=True)
class Insufficient:
    paths: list[tuple[int, ...]]
    maximum: int


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


def _make(t: Tournament, x, y, mode, paths, trace=None) -> Container:
    covered = 0
    for p in paths:
        covered |= mask_of(p)
    return Container(x, y, Mode(mode), tuple(tuple(p) for p in paths), covered == t.full, trace)


def _check(t: Tournament, x: int, y: int) -> None:
    if x == y:
        raise SameVertex(f"vertex {x} given twice")
    for v in (x, y):
        if not 0 <= v < t.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{t.n - 1}")


# ----------------------------------------------------------------------
# partition and length-3 paths


def partition_xy(t: Tournament, x: int, y: int) -> PartitionABCD:
    _check(t, x, y)
    rest = t.full & ~((1 << x) | (1 << y))
    ox, oy = t.rows[x], t.rows[y]
    ix, iy = t.in_mask(x), t.in_mask(y)
    return PartitionABCD(
        tuple(bits(rest & ox & oy)),
        tuple(bits(rest & ix & iy)),
        tuple(bits(rest & ox & iy)),
        tuple(bits(rest & oy & ix)),
    )


def _max_matching(rows, left: Sequence[int], right_mask: int) -> dict[int, int]:
    """Kuhn's augmenting-path matching of ``left`` into ``right_mask`` along arcs
    ``a -> b``; left vertices are tried in the given order, right ones ascending."""
    match_right: dict[int, int] = {}

    def try_assign(a, seen):
        for b in bits(rows[a] & right_mask):
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or try_assign(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    for a in left:
        try_assign(a, set())
    return {a: b for b, a in match_right.items()}


def _order_by_indegree(rows, verts: Sequence[int]) -> list[int]:
    indeg = {v: sum(1 for u in verts if rows[u] >> v & 1) for v in verts}
    return sorted(verts, key=lambda v: (-indeg[v], v))


def disjoint_ab_paths(
    t: Tournament, part: PartitionABCD, x: int, y: int, count: int
) -> list[tuple[int, ...]] | Insufficient:
    """Up to ``count`` vertex-disjoint paths ``x -> a -> b -> y`` with ``a`` in
    ``A`` and ``b`` in ``B``, from a maximum matching of the ``A -> B`` arcs.

    ``A`` is scanned by decreasing in-degree inside ``T[A]``.  When fewer than
    ``count`` disjoint paths exist the result is :class:`Insufficient`.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    order = _order_by_indegree(t.rows, part.A)
    matching = _max_matching(t.rows, order, mask_of(part.B))
    pairs = [(a, matching[a]) for a in order if a in matching]
    paths = [(x, a, b, y) for a, b in pairs[:count]]
    if len(pairs) < count:
        return Insufficient(paths, len(pairs))
    return paths


def _shortcut(rows, path: Sequence[int], forbid_direct: bool) -> tuple[int, ...]:
    out = [path[0]]
    i = 0
    last = len(path) - 1
    while i < last:
        j = last
        while j > i + 1:
            if rows[path[i]] >> path[j] & 1 and not (forbid_direct and i == 0 and j == last):
                break
            j -= 1
        out.append(path[j])
        i = j
    return tuple(out)


def _menger_paths(t: Tournament, x: int, y: int, avoid: int, need: int) -> list[tuple[int, ...]]:
    """Disjoint ``(x, y)``-paths of length at least 2 that avoid ``avoid``,
    each shortened along forward chords, shortest first."""
    allowed = t.full & ~avoid
    family = local_connectivity(t, x, y, allowed).family
    paths = [_shortcut(t.rows, p, True) for p in family.paths if len(p) > 2]
    paths.sort(key=lambda p: (len(p), p))
    return paths[:need]


# ----------------------------------------------------------------------
# builders


def _internal_mask(paths) -> int:
    m = 0
    for p in paths:
        m |= mask_of(p[1:-1])
    return m


def _finish(t, x, y, mode, paths, trace, fallback, oracle_bound, k_target):
    container = _make(t, x, y, mode, paths, trace)
    problems = verify_container(t, container, expect_spanning=True)
    if not problems and len(container) == k_target:
        return container
    trace.failure = "constructed container failed verification: " + "; ".join(v.kind for v in problems)
    return _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound)


def _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound):
    if not fallback:
        raise NotConstructible(f"construction failed at step: {trace.failure}", trace)
    if t.n > oracle_bound:
        raise OracleTooLarge(
            f"construction failed ({trace.failure}) and n = {t.n} exceeds the oracle bound {oracle_bound}", trace
        )
    found = oracle_container(t, x, y, k_target, mode, bound=oracle_bound)
    if isinstance(found, ProvenAbsent):
        trace.notes.append("oracle: proven absent")
        raise NotConstructible(f"no spanning {mode.value} {k_target}-container between {x} and {y}", trace)
    trace.notes.append(f"constructive step failed: {trace.failure}")
    trace.base = "oracle"
    return Container(found.x, found.y, found.mode, found.paths, found.spanning, trace)


def _short_paths(t, x, y, part, k, pool, trace):
    """Choose ``k`` length-2/length-3 paths as in the proof; returns the paths
    or ``None`` (with ``trace.failure`` set)."""
    m = min(k, len(pool))
    chosen = pool[:m]
    trace.length2 = list(chosen)
    paths = []
    for v in chosen:
        if t.dominates(x, v):
            paths.append((x, v, y))
        else:
            paths.append((y, v, x))
    need = k - m
    if need:
        ab = disjoint_ab_paths(t, part, x, y, need)
        if isinstance(ab, Insufficient):
            trace.notes.append(f"A->B matching gave {ab.maximum} of {need} disjoint length-3 paths")
            got = list(ab.paths)
            trace.length3 = [(p[1], p[2]) for p in got]
            avoid = mask_of(chosen) | _internal_mask(got)
            extra = _menger_paths(t, x, y, avoid, need - len(got))
            trace.extra_paths = extra
            got += extra
            if len(got) < need:
                trace.failure = f"only {len(got)} of {need} additional disjoint paths"
                return None
            paths += got
        else:
            trace.length3 = [(p[1], p[2]) for p in ab]
            paths += ab
    return paths


def _case_label(prefix: str, available: int, k: int) -> str:
    if k == 0:
        return f"{prefix}/base"
    if available == 0:
        return f"{prefix}/no-length2"
    if available < k:
        return f"{prefix}/some-length2"
    return f"{prefix}/length2-only"


def build_weak_container(
    t: Tournament,
    x: int,
    y: int,
    k_target: int,
    *,
    fallback: bool = True,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
) -> Container:
    """Spanning weak container with exactly ``k_target`` paths.

    ``k_target = 1`` is a Hamiltonian path between ``x`` and ``y``;
    ``k_target = 2`` splits a Hamiltonian cycle at ``x`` and ``y``.  Larger
    targets first take ``k_target - 2`` short paths (length 2 through ``C``
    or ``D``, then length 3 through matched ``A -> B`` arcs), delete their
    internal vertices and split a Hamiltonian cycle of what is left.
    """
    _check(t, x, y)
    if k_target < 1:
        raise ValueError("k_target must be at least 1")
    mode = Mode.WEAK
    trace = BuildTrace(case="weak/base", direction=(x, y))
    if k_target == 1:
        trace.base = "ham-path-between"
        path = find_ham_path_between(t, x, y, budget)
        if path is None:
            trace.failure = "no Hamiltonian path between the pair"
            return _fallback(t, x, y, 1, mode, trace, fallback, oracle_bound)
        return _finish(t, x, y, mode, [tuple(path)], trace, fallback, oracle_bound, 1)

    k = k_target - 2
    part = partition_xy(t, x, y)
    pool = sorted(part.C + part.D)
    trace.case = _case_label("weak", len(pool), k)
    paths = _short_paths(t, x, y, part, k, pool, trace)
    if paths is None:
        return _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound)
    deleted = _internal_mask(paths)
    trace.deleted = list(bits(deleted))
    rest = t.full & ~deleted
    trace.base = "cycle-split"
    if rest.bit_count() < 3 or len(component_masks(t.rows, rest)) != 1:
        trace.failure = "remainder is not strong"
        return _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound)
    cycle = _cycle_in(t.rows, rest)
    i = cycle.index(x)
    cycle = cycle[i:] + cycle[:i]
    j = cycle.index(y)
    base = [tuple(cycle[: j + 1]), tuple(cycle[j:] + [x])]
    return _finish(t, x, y, mode, base + paths, trace, fallback, oracle_bound, k_target)


def build_strong_container(
    t: Tournament,
    x: int,
    y: int,
    k_target: int,
    *,
    fallback: bool = True,
    oracle_bound: int = DEFAULT_ORACLE_BOUND,
    budget: int = DEFAULT_BUDGET,
    inferred: bool = False,
) -> Container:
    """Spanning strong container with ``k_target`` same-direction paths.

    The pair is relabelled so that ``x -> y`` is an arc.  ``k_target = 1`` is
    a Hamiltonian ``(x, y)``-path, else a Hamiltonian ``(y, x)``-path closing a
    cycle through the arc.  ``k_target = 2`` adds the arc itself to a
    Hamiltonian ``(x, y)``-path.  Larger targets first reserve
    ``k_target - 2`` short ``(x, y)``-paths through ``C`` and matched
    ``A -> B`` arcs.  ``inferred`` tags the trace of runs replaying the
    2-bypass variant of the argument.
    """
    _check(t, x, y)
    if k_target < 1:
        raise ValueError("k_target must be at least 1")
    if not t.dominates(x, y):
        x, y = y, x
    mode = Mode.STRONG
    trace = BuildTrace(case="strong/base", direction=(x, y))
    if inferred:
        trace.notes.append("inferred-case")
    try:
        if k_target == 1:
            trace.base = "ham-path"
            for a, b in ((x, y), (y, x)):
                path = _directed(t.rows, a, b, t.full, _Budget(budget))
                if path is not None:
                    trace.direction = (a, b)
                    return _finish(t, a, b, mode, [tuple(path)], trace, fallback, oracle_bound, 1)
            trace.failure = "no Hamiltonian path in either direction"
            return _fallback(t, x, y, 1, mode, trace, fallback, oracle_bound)

        k = k_target
        part = partition_xy(t, x, y)
        pool = list(part.C)
        trace.case = _case_label("strong", len(pool), k - 2)
        paths = _short_paths(t, x, y, part, k - 2, pool, trace)
        if paths is None:
            return _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound)
        deleted = _internal_mask(paths)
        trace.deleted = list(bits(deleted))
        trace.base = "ham-path+arc"
        rest = t.full & ~deleted
        path = _directed(t.rows, x, y, rest, _Budget(budget))
        if path is None or len(path) == 2:
            trace.failure = "remainder has no Hamiltonian (x, y)-path avoiding the arc"
            return _fallback(t, x, y, k_target, mode, trace, fallback, oracle_bound)
        return _finish(t, x, y, mode, [(x, y), tuple(path)] + paths, trace, fallback, oracle_bound, k_target)
    except SearchBudgetExceeded:
        trace.failure = "Hamiltonian path search exceeded its budget"
        raise NotConstructible(trace.failure, trace) from None


def build_container(t: Tournament, x: int, y: int, k_target: int, mode: Mode | str, **kw) -> Container:
    if Mode(mode) is Mode.STRONG:
        return build_strong_container(t, x, y, k_target, **kw)
    return build_weak_container(t, x, y, k_target, **kw)


# ----------------------------------------------------------------------
# verification


def verify_container(t: Tournament, c: Container, expect_spanning: bool = True) -> list[Violation]:
    """Every broken container invariant; an empty list means the container is valid."""
    out: list[Violation] = []
    x, y = c.x, c.y
    if x == y:
        out.append(Violation("endpoints", "x and y coincide"))
    if not c.paths:
        out.append(Violation("empty", "container has no paths"))
    seen_internal: dict[int, int] = {}
    direct = 0
    directions = set()
    covered = 0
    for i, p in enumerate(c.paths):
        if len(p) < 2 or {p[0], p[-1]} != {x, y} or p[0] == p[-1]:
            out.append(Violation("endpoints", f"path {i} does not join {x} and {y}"))
            continue
        if any(not 0 <= v < t.n for v in p):
            out.append(Violation("range", f"path {i} has a vertex outside 0..{t.n - 1}"))
            continue
        directions.add(p[0])
        if len(set(p)) != len(p):
            out.append(Violation("repeated-vertex", f"path {i} repeats a vertex"))
        for a, b in zip(p, p[1:]):
            if not t.dominates(a, b):
                out.append(Violation("broken-arc", f"path {i} uses missing arc {a}->{b}"))
        if len(p) == 2:
            direct += 1
        for v in p[1:-1]:
            if v in (x, y):
                out.append(Violation("shared-internal", f"path {i} passes through an endpoint"))
            elif v in seen_internal and seen_internal[v] != i:
                out.append(Violation("shared-internal", f"vertex {v} internal to paths {seen_internal[v]} and {i}"))
            else:
                seen_internal[v] = i
        covered |= mask_of(p)
    if c.mode is Mode.STRONG and len(directions) > 1:
        out.append(Violation("direction", "strong container mixes path directions"))
    if direct > 1:
        out.append(Violation("duplicate-direct", f"{direct} paths without internal vertices"))
    spans = covered == t.full
    if c.spanning != spans:
        out.append(Violation("spanning-flag", f"flag says {c.spanning}, coverage says {spans}"))
    if expect_spanning and not spans:
        missing = list(bits(t.full & ~covered))
        out.append(Violation("non-spanning", f"vertices {missing} not covered"))
    return out


# ----------------------------------------------------------------------
# exact oracle


class PairOracle:
    """Exact spanning-container search for one pair by dynamic programming.

    For each subset ``S`` of the internal vertices it records the possible
    last vertices of a path that starts at one terminal and visits exactly
    ``S``; this gives, per subset, whether ``S`` can be the internal vertex
    set of an ``(x, y)``- or ``(y, x)``-path.  A second table records, per
    subset, which numbers of such blocks can partition it.
    """

    def __init__(self, t: Tournament, x: int, y: int, bound: int = DEFAULT_ORACLE_BOUND):
        _check(t, x, y)
        if t.n > bound:
            raise OrderTooLarge(f"oracle limited to n <= {bound}")
        self.t = t
        self.x, self.y = x, y
        self.inner = [v for v in range(t.n) if v not in (x, y)]
        m = len(self.inner)
        self.size = m
        local = [0] * t.n
        for i, v in enumerate(self.inner):
            local[v] = 1 << i
        # arcs between internal vertices, in local indices
        self.adj = [sum(local[w] for w in bits(t.rows[v]) if w not in (x, y)) for v in self.inner]
        self.ends = {(x, y): self._reach(x, y, local), (y, x): self._reach(y, x, local)}
        self._counts: dict[tuple, list[int]] = {}

    def _reach(self, s, e, local):
        m = self.size
        rows = self.t.rows
        start = sum(local[w] for w in bits(rows[s]) if w not in (self.x, self.y))
        into_e = sum(local[w] for w in bits(self.t.in_mask(e)) if w not in (self.x, self.y))
        reach = [0] * (1 << m)
        for S in range(1, 1 << m):
            if S & (S - 1) == 0:
                reach[S] = S & start
                continue
            r = 0
            for i in bits(S):
                prev = reach[S ^ (1 << i)]
                if prev and any(self.adj[j] >> i & 1 for j in bits(prev)):
                    r |= 1 << i
            reach[S] = r
        feasible = [bool(reach[S] & into_e) for S in range(1 << m)]
        feasible[0] = False
        return reach, feasible

    def _feasible(self, S, directions):
        return any(self.ends[d][1][S] for d in directions)

    def counts(self, directions: tuple) -> list[int]:
        if directions in self._counts:
            return self._counts[directions]
        m = self.size
        feas = [self._feasible(S, directions) for S in range(1 << m)]
        cnt = [0] * (1 << m)
        cnt[0] = 1
        for S in range(1, 1 << m):
            low = S & -S
            rest = S ^ low
            acc = 0
            sub = rest
            while True:
                B = sub | low
                if feas[B]:
                    acc |= cnt[S ^ B] << 1
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            cnt[S] = acc
        self._counts[directions] = cnt
        return cnt

    def _direct(self, directions) -> tuple | None:
        for a, b in directions:
            if self.t.dominates(a, b):
                return (a, b)
        return None

    def achievable(self, directions: tuple) -> set[int]:
        full = (1 << self.size) - 1
        c = self.counts(directions)[full]
        ks = {j for j in range(self.size + 1) if c >> j & 1}
        if self._direct(directions) is not None:
            ks |= {j + 1 for j in ks}
        return ks

    def mode_directions(self, mode: Mode) -> list[tuple]:
        x, y = self.x, self.y
        if mode is Mode.STRONG:
            return [((x, y),), ((y, x),)]
        return [((x, y), (y, x))]

    def achievable_for(self, mode: Mode) -> set[int]:
        out: set[int] = set()
        for dirs in self.mode_directions(mode):
            out |= self.achievable(dirs)
        return out

    def _path_for(self, S, direction) -> tuple[int, ...]:
        s, e = direction
        reach, _ = self.ends[direction]
        rows = self.t.rows
        # walk backwards from the end terminal
        seq = []
        cur_set = S
        nxt = e
        while cur_set:
            for i in bits(reach[cur_set]):
                v = self.inner[i]
                if rows[v] >> nxt & 1:
                    seq.append(v)
                    nxt = v
                    cur_set ^= 1 << i
                    break
            else:
                raise AssertionError("inconsistent reach table")
        return (s,) + tuple(reversed(seq)) + (e,)

    def container(self, k: int, mode: Mode) -> Container | None:
        full = (1 << self.size) - 1
        for dirs in self.mode_directions(mode):
            cnt = self.counts(dirs)
            direct = self._direct(dirs)
            blocks = None
            if k >= 1 and cnt[full] >> k & 1:
                blocks = k
                use_direct = False
            elif direct is not None and k >= 1 and cnt[full] >> (k - 1) & 1:
                blocks = k - 1
                use_direct = True
            if blocks is None:
                continue
            paths = [direct] if use_direct else []
            S, j = full, blocks
            while S:
                low = S & -S
                rest = S ^ low
                sub = rest
                while True:
                    B = sub | low
                    if self._feasible(B, dirs) and cnt[S ^ B] >> (j - 1) & 1:
                        d = next(d for d in dirs if self.ends[d][1][B])
                        paths.append(self._path_for(B, d))
                        S ^= B
                        j -= 1
                        break
                    if sub == 0:
                        raise AssertionError("inconsistent partition table")
                    sub = (sub - 1) & rest
            return _make(self.t, self.x, self.y, mode, paths, BuildTrace(case="oracle", direction=dirs[0], base="oracle"))
        return None


def oracle_container(
    t: Tournament, x: int, y: int, k: int, mode: Mode | str, bound: int = DEFAULT_ORACLE_BOUND
) -> Container | ProvenAbsent:
    if k < 1:
        raise ValueError("k must be at least 1")
    mode = Mode(mode)
    found = PairOracle(t, x, y, bound).container(k, mode)
    return ProvenAbsent(x, y, k, mode) if found is None else found
