"""Tournament representation, generators, decomposition and small-order utilities.

A tournament on ``n`` vertices is stored as ``n`` out-neighbourhood bitsets:
bit ``v`` of ``rows[u]`` is set iff ``u`` dominates ``v``.  Every set
operation used by the rest of the package (common out-neighbours, arc scans
between vertex classes, reachability) works on these integers directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path as FilePath
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyVertexSet,
    IndexOutOfRange,
    InfeasibleBudget,
    NotATournament,
    OrderTooLarge,
    ParseError,
    SameVertex,
    SelfLoop,
)

MAX_ENUMERATION_ORDER = 7
MAX_ISOMORPHISM_ORDER = 8


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Tournament:
    """Immutable tournament backed by out-neighbourhood bitsets."""

    __slots__ = ("n", "rows", "full")

    def __init__(self, rows: Sequence[int]):
        rows = tuple(rows)
        n = len(rows)
        if n < 1:
            raise EmptyVertexSet("a tournament needs at least one vertex")
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row & ~full:
                raise IndexOutOfRange(f"row {u} references a vertex >= {n}")
            if row >> u & 1:
                raise SelfLoop(f"vertex {u} dominates itself")
        for u, v in combinations(range(n), 2):
            forward = rows[u] >> v & 1
            backward = rows[v] >> u & 1
            if forward == backward:
                what = "two arcs" if forward else "no arc"
                raise NotATournament(f"pair {{{u},{v}}} has {what}")
        self.n = n
        self.rows = rows
        self.full = full

    @classmethod
    def _trusted(cls, rows: tuple) -> "Tournament":
        # rows already known to satisfy the tournament axioms
        t = object.__new__(cls)
        t.n = len(rows)
        t.rows = rows
        t.full = (1 << t.n) - 1
        return t

    def dominates(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def out_mask(self, v: int) -> int:
        return self.rows[v]

    def in_mask(self, v: int) -> int:
        return self.full ^ self.rows[v] ^ (1 << v)

    def out_degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.n - 1 - self.rows[v].bit_count()

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u])]

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        return isinstance(other, Tournament) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tournament(n={self.n}, rows={list(self.rows)})"


def from_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> Tournament:
    if n < 1:
        raise EmptyVertexSet("n must be at least 1")
    rows = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"arc {u}->{v} outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if rows[u] >> v & 1:
            raise NotATournament(f"arc {u}->{v} given twice")
        rows[u] |= 1 << v
    return Tournament(rows)


def dominates(t: Tournament, u: int, v: int) -> bool:
    if u == v:
        raise SameVertex(f"vertex {u} given twice")
    _check_vertex(t, u)
    _check_vertex(t, v)
    return t.dominates(u, v)


def _check_vertex(t: Tournament, v: int) -> None:
    if not 0 <= v < t.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{t.n - 1}")


def transitive(n: int) -> Tournament:
    """TT_n with ``i`` dominating ``j`` whenever ``i < j``."""
    full = (1 << n) - 1
    return Tournament._trusted(tuple(full & ~((1 << (i + 1)) - 1) for i in range(n)))


def circulant(n: int, connection: Iterable[int]) -> Tournament:
    """Circulant tournament on Z_n: ``i -> i + s`` for every ``s`` in ``connection``."""
    conn = sorted({s % n for s in connection})
    rows = []
    for i in range(n):
        rows.append(mask_of((i + s) % n for s in conn))
    return Tournament(rows)


def reverse(t: Tournament) -> Tournament:
    return Tournament._trusted(tuple(t.in_mask(v) for v in range(t.n)))


def relabel(t: Tournament, perm: Sequence[int]) -> Tournament:
    """Image of ``t`` under the vertex map ``v -> perm[v]``."""
    rows = [0] * t.n
    for u in range(t.n):
        pu = perm[u]
        for v in bits(t.rows[u]):
            rows[pu] |= 1 << perm[v]
    return Tournament._trusted(tuple(rows))


# ----------------------------------------------------------------------
# degrees


@dataclass(frozen=True)
class DegreeProfile:
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    irregularity: int

    @property
    def regular(self) -> bool:
        return self.irregularity == 0


def degree_profile(t: Tournament) -> DegreeProfile:
    outs = tuple(row.bit_count() for row in t.rows)
    ins = tuple(t.n - 1 - d for d in outs)
    irr = max(abs(o - i) for o, i in zip(outs, ins))
    return DegreeProfile(outs, ins, irr)


def irregularity(t: Tournament) -> int:
    return degree_profile(t).irregularity


# ----------------------------------------------------------------------
# induced sub-tournaments


@dataclass(frozen=True)
class SubTournament:
    """An induced sub-tournament together with its vertex mapping.

    ``vertices[i]`` is the original label of new vertex ``i``.
    """

    tournament: Tournament
    vertices: tuple[int, ...]

    def old(self, v: int) -> int:
        return self.vertices[v]

    def new(self, v: int) -> int:
        return self.vertices.index(v)

    def lift(self, path: Sequence[int]) -> list[int]:
        return [self.vertices[v] for v in path]


def induced(t: Tournament, keep: Iterable[int]) -> SubTournament:
    keep = sorted(set(keep))
    if not keep:
        raise EmptyVertexSet("cannot induce on an empty vertex set")
    for v in keep:
        _check_vertex(t, v)
    rows = []
    for v in keep:
        row = t.rows[v]
        rows.append(mask_of(i for i, w in enumerate(keep) if row >> w & 1))
    return SubTournament(Tournament._trusted(tuple(rows)), tuple(keep))


def delete(t: Tournament, removed: Iterable[int]) -> SubTournament:
    gone = set(removed)
    return induced(t, (v for v in range(t.n) if v not in gone))


# ----------------------------------------------------------------------
# strong decomposition


def component_masks(rows: Sequence[int], within: int) -> list[int]:
    """Strong components of the sub-tournament induced by ``within``.

    Returned in domination order (initial component first).  Uses the
    score-sequence characterisation: after sorting by decreasing score inside
    ``within``, a prefix of size ``m`` is a union of initial components iff
    its score sum equals ``C(m, 2) + m * (N - m)``.
    """
    verts = list(bits(within))
    total = len(verts)
    scored = sorted(verts, key=lambda v: (-(rows[v] & within).bit_count(), v))
    comps = []
    current = 0
    acc = 0
    for m, v in enumerate(scored, start=1):
        current |= 1 << v
        acc += (rows[v] & within).bit_count()
        if acc == m * (m - 1) // 2 + m * (total - m):
            comps.append(current)
            current = 0
    return comps


def is_strong_mask(rows: Sequence[int], within: int) -> bool:
    return len(component_masks(rows, within)) == 1


@dataclass(frozen=True)
class StrongDecomposition:
    components: tuple[tuple[int, ...], ...]

    @property
    def initial(self) -> tuple[int, ...]:
        return self.components[0]

    @property
    def terminal(self) -> tuple[int, ...]:
        return self.components[-1]

    @property
    def is_strong(self) -> bool:
        return len(self.components) == 1

    def index_of(self, v: int) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise IndexOutOfRange(f"vertex {v} not in decomposition")


def strong_decomposition(t: Tournament) -> StrongDecomposition:
    comps = component_masks(t.rows, t.full)
    return StrongDecomposition(tuple(tuple(bits(c)) for c in comps))


def is_strong(t: Tournament) -> bool:
    return is_strong_mask(t.rows, t.full)


# ----------------------------------------------------------------------
# generators


def random_tournament(n: int, seed: int) -> Tournament:
    """Orient each pair ``i < j`` (lexicographic order) by one bit of
    ``random.Random(seed).getrandbits(1)``: 1 means ``i -> j``."""
    if n < 1:
        raise EmptyVertexSet("n must be at least 1")
    rng = random.Random(seed)
    rows = [0] * n
    for i, j in combinations(range(n), 2):
        if rng.getrandbits(1):
            rows[i] |= 1 << j
        else:
            rows[j] |= 1 << i
    return Tournament._trusted(tuple(rows))


def _near_regular_base(n: int) -> list[int]:
    half = (n - 1) // 2
    rows = [mask_of((i + s) % n for s in range(1, half + 1)) for i in range(n)]
    if n % 2 == 0:
        # antipodal pairs left unjoined by the circulant; orient low -> high
        for i in range(n // 2):
            rows[i] |= 1 << (i + n // 2)
    return rows


def near_regular_tournament(
    n: int, k: int, seed: int, perturb: bool = True, moves: int | None = None
) -> Tournament:
    """Tournament with irregularity at most ``k``.

    The base is the circulant on Z_n with connection set ``{1..(n-1)/2}``
    (odd ``n``) or that circulant with antipodal pairs oriented low to high
    (even ``n``, irregularity 1).  With ``perturb`` the base is scrambled by
    ``moves`` seeded steps: a random triple is reversed when it is a directed
    3-cycle (scores unchanged), otherwise one of its arcs is flipped when the
    flip keeps the irregularity within ``k``.
    """
    if n < 3:
        raise ValueError("near-regular generator needs n >= 3")
    if k < 0:
        raise InfeasibleBudget("irregularity budget must be non-negative")
    if n % 2 == 0 and k == 0:
        raise InfeasibleBudget(f"no regular tournament on an even number ({n}) of vertices")
    rows = _near_regular_base(n)
    if perturb:
        rng = random.Random(seed)
        steps = 4 * n * n if moves is None else moves
        out = [r.bit_count() for r in rows]
        for _ in range(steps):
            u, v, w = rng.sample(range(n), 3)
            if rows[u] >> v & 1 and rows[v] >> w & 1 and rows[w] >> u & 1:
                _flip(rows, u, v)
                _flip(rows, v, w)
                _flip(rows, w, u)
                continue
            if rows[v] >> u & 1:
                u, v = v, u
            # flipping u->v: out[u] - 1, out[v] + 1
            if abs(2 * (out[u] - 1) - (n - 1)) <= k and abs(2 * (out[v] + 1) - (n - 1)) <= k:
                _flip(rows, u, v)
                out[u] -= 1
                out[v] += 1
    return Tournament._trusted(tuple(rows))


def _flip(rows: list[int], u: int, v: int) -> None:
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u


def pair_index(n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i < j``, in the bit order used by :func:`enumerate_all`."""
    return list(combinations(range(n), 2))


def enumerate_all(n: int, start: int = 0, stop: int | None = None) -> Iterator[Tournament]:
    """Every labelled tournament on ``n`` vertices, in orientation-bitmask order.

    Bit ``p`` of the mask orients the ``p``-th pair ``(i, j)`` of
    :func:`pair_index` as ``i -> j`` when set and ``j -> i`` otherwise.
    ``start``/``stop`` select a slice of the mask range so the enumeration can
    be split between workers.
    """
    if n < 1:
        raise EmptyVertexSet("n must be at least 1")
    if n > MAX_ENUMERATION_ORDER:
        raise OrderTooLarge(f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_ORDER}")
    pairs = pair_index(n)
    total = 1 << len(pairs)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    rows = [0] * n
    for p, (i, j) in enumerate(pairs):
        if start >> p & 1:
            rows[i] |= 1 << j
        else:
            rows[j] |= 1 << i
    pi = [1 << i for i, _ in pairs]
    pj = [1 << j for _, j in pairs]
    ii = [i for i, _ in pairs]
    jj = [j for _, j in pairs]
    make = Tournament._trusted
    prev = start
    yield make(tuple(rows))
    for mask in range(start + 1, stop):
        changed = mask ^ prev
        prev = mask
        while changed:
            low = changed & -changed
            p = low.bit_length() - 1
            rows[ii[p]] ^= pj[p]
            rows[jj[p]] ^= pi[p]
            changed ^= low
        yield make(tuple(rows))


def tournament_from_mask(n: int, mask: int) -> Tournament:
    rows = [0] * n
    for p, (i, j) in enumerate(pair_index(n)):
        if mask >> p & 1:
            rows[i] |= 1 << j
        else:
            rows[j] |= 1 << i
    return Tournament._trusted(tuple(rows))


# ----------------------------------------------------------------------
# isomorphism


def are_isomorphic(t1: Tournament, t2: Tournament) -> tuple[bool, list[int] | None]:
    """Brute-force isomorphism test with score-class pruning.

    Returns ``(True, perm)`` with ``perm[v]`` the image in ``t2`` of vertex
    ``v`` of ``t1``, or ``(False, None)``.
    """
    if max(t1.n, t2.n) > MAX_ISOMORPHISM_ORDER:
        raise OrderTooLarge(f"isomorphism test limited to n <= {MAX_ISOMORPHISM_ORDER}")
    if t1.n != t2.n:
        return False, None
    perm = find_isomorphism(t1, t2)
    return perm is not None, perm


def find_isomorphism(t1: Tournament, t2: Tournament, fixed: dict[int, int] | None = None):
    n = t1.n
    s1 = [r.bit_count() for r in t1.rows]
    s2 = [r.bit_count() for r in t2.rows]
    if sorted(s1) != sorted(s2):
        return None
    fixed = dict(fixed or {})
    for a, b in fixed.items():
        if s1[a] != s2[b]:
            return None
    order = list(fixed) + sorted((v for v in range(n) if v not in fixed), key=lambda v: (s1[v], v))
    image = [-1] * n
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == n:
            return True
        v = order[pos]
        cands = [fixed[v]] if v in fixed else [w for w in range(n) if not used >> w & 1 and s2[w] == s1[v]]
        for w in cands:
            if used >> w & 1:
                continue
            ok = True
            for u in order[:pos]:
                if t1.rows[v] >> u & 1 != t2.rows[w] >> image[u] & 1:
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(pos + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    return list(image) if extend(0) else None


# ----------------------------------------------------------------------
# "tourn-v1" text format


def to_text(t: Tournament) -> str:
    lines = [str(t.n)]
    for u in range(t.n):
        lines.append("".join("1" if t.rows[u] >> v & 1 else "0" for v in range(t.n)))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Tournament:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing order line", line=1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"order {lines[0].strip()!r} is not an integer", line=1) from None
    if n < 1:
        raise ParseError("order must be positive", line=1)
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}", line=len(lines) + 1)
    rows = []
    for i in range(n):
        lineno = i + 2
        row = lines[i + 1].strip()
        if len(row) != n or set(row) - {"0", "1"}:
            raise ParseError(f"row must be {n} characters of 0/1", line=lineno)
        if row[i] != "0":
            raise ParseError("diagonal entry must be 0", line=lineno)
        rows.append(mask_of(j for j, ch in enumerate(row) if ch == "1"))
    for extra, rest in enumerate(lines[n + 1:], start=n + 2):
        if rest.strip():
            raise ParseError("trailing content after matrix", line=extra)
    for i, j in combinations(range(n), 2):
        if (rows[i] >> j & 1) == (rows[j] >> i & 1):
            raise ParseError(f"entries ({i},{j}) and ({j},{i}) must differ", line=i + 2)
    return Tournament(rows)


def read_tournament(path) -> Tournament:
    return from_text(FilePath(path).read_text())


def write_tournament(path, t: Tournament) -> None:
    FilePath(path).write_text(to_text(t))
