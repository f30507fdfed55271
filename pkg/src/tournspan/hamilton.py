"""Hamiltonian paths and cycles in tournaments.

Contents: insertion-built Hamiltonian paths, Moon-style Hamiltonian cycles,
the augmentation primitive, the exact characterisation of pairs joined by a
Hamiltonian path (with its 6-vertex exceptional catalog) and pruned
backtracking for Hamiltonian paths with prescribed ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Sequence

from .core import (
    Tournament,
    bits,
    component_masks,
    enumerate_all,
    find_isomorphism,
    from_text,
    relabel,
    reverse,
    to_text,
)
from .errors import (
    IndexOutOfRange,
    NoSuchArc,
    NotInsertable,
    NotStrong,
    ParseError,
    SameVertex,
    SearchBudgetExceeded,
)

DEFAULT_BUDGET = 2_000_000
CATALOG_RESOURCE = "exceptional6.txt"


def is_path(t: Tournament, seq: Sequence[int]) -> bool:
    if len(set(seq)) != len(seq):
        return False
    rows = t.rows
    return all(0 <= v < t.n for v in seq) and all(rows[a] >> b & 1 for a, b in zip(seq, seq[1:]))


def is_hamiltonian_path(t: Tournament, seq: Sequence[int]) -> bool:
    return len(seq) == t.n and is_path(t, seq)


def is_cycle(t: Tournament, seq: Sequence[int]) -> bool:
    return len(seq) >= 3 and is_path(t, seq) and t.dominates(seq[-1], seq[0])


def is_hamiltonian_cycle(t: Tournament, seq: Sequence[int]) -> bool:
    return len(seq) == t.n and is_cycle(t, seq)


# ----------------------------------------------------------------------
# constructions valid for every (strong) tournament


def _insertion_path(rows, verts) -> list[int]:
    path: list[int] = []
    for v in verts:
        rv = rows[v]
        for idx, u in enumerate(path):
            if rv >> u & 1:
                path.insert(idx, v)
                break
        else:
            path.append(v)
    return path


def hamiltonian_path_any(t: Tournament) -> list[int]:
    """Insert vertices one at a time, each just before the first path vertex
    it dominates (or at the end)."""
    return _insertion_path(t.rows, range(t.n))


def _three_cycle(rows, within: int) -> list[int] | None:
    for a in bits(within):
        for b in bits(rows[a] & within):
            back = rows[b] & within & ~rows[a] & ~(1 << a)
            for c in bits(back):
                if rows[c] >> a & 1:
                    return [a, b, c]
    return None


def _cycle_in(rows, within: int) -> list[int]:
    """Hamiltonian cycle of the strong sub-tournament on ``within``."""
    cycle = _three_cycle(rows, within)
    if cycle is None:
        raise NotStrong("no 3-cycle: sub-tournament is not strong")
    on = 0
    for v in cycle:
        on |= 1 << v
    while on != within:
        outside = within & ~on
        inserted = False
        for v in bits(outside):
            # v is insertable iff it has both an in- and an out-neighbour on the cycle
            if rows[v] & on and ~rows[v] & on:
                m = len(cycle)
                for i in range(m):
                    a, b = cycle[i], cycle[(i + 1) % m]
                    if rows[a] >> v & 1 and rows[v] >> b & 1:
                        cycle.insert(i + 1, v)
                        break
                on |= 1 << v
                inserted = True
                break
        if inserted:
            continue
        dominated = [v for v in bits(outside) if not rows[v] & on]  # cycle -> v
        dominating = 0
        for v in bits(outside):
            if rows[v] & on:
                dominating |= 1 << v
        for u in dominated:
            hit = rows[u] & dominating
            if hit:
                w = (hit & -hit).bit_length() - 1
                cycle.extend([u, w])
                on |= (1 << u) | (1 << w)
                break
        else:
            raise NotStrong("no arc from the dominated to the dominating side")
    return cycle


def hamiltonian_cycle(t: Tournament) -> list[int]:
    """Hamiltonian cycle of a strong tournament by Moon-style extension.

    Start from a 3-cycle; absorb the smallest outside vertex that has both
    an in- and an out-neighbour on the cycle.  When none exists, every
    outside vertex is dominated by the whole cycle or dominates all of it;
    strongness gives an arc ``u -> w`` from the first kind to the second and
    the cycle is closed through ``... -> u -> w -> start``.
    """
    if t.n < 3:
        raise NotStrong(f"a tournament on {t.n} vertices has no Hamiltonian cycle")
    if len(component_masks(t.rows, t.full)) != 1:
        raise NotStrong("tournament is not strong")
    return _cycle_in(t.rows, t.full)


def augment(t: Tournament, path: Sequence[int], x: int) -> list[int]:
    if x in path:
        raise NotInsertable(f"vertex {x} already on the path")
    rows = t.rows
    first_in = next((i for i, v in enumerate(path) if rows[v] >> x & 1), None)
    if first_in is None:
        raise NotInsertable(f"no path vertex dominates {x}")
    for k in range(first_in, len(path) - 1):
        if rows[path[k]] >> x & 1 and rows[x] >> path[k + 1] & 1:
            return list(path[: k + 1]) + [x] + list(path[k + 1:])
    raise NotInsertable(f"{x} dominates no path vertex after one that dominates it")


# ----------------------------------------------------------------------
# directed Hamiltonian paths


def _path_through_components(rows, comps, x, y) -> list[int]:
    path: list[int] = []
    last = len(comps) - 1
    for i, comp in enumerate(comps):
        size = comp.bit_count()
        if size == 1:
            path.append(comp.bit_length() - 1)
            continue
        cyc = _cycle_in(rows, comp)
        if i == 0 and x is not None:
            j = cyc.index(x)
            path.extend(cyc[j:] + cyc[:j])
        elif i == last and y is not None:
            j = cyc.index(y)
            path.extend(cyc[j + 1:] + cyc[: j + 1])
        else:
            path.extend(cyc)
    return path


class _Budget:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise SearchBudgetExceeded("node-expansion budget exhausted")


def _directed(rows, x, y, within, budget: _Budget) -> list[int] | None:
    comps = component_masks(rows, within)
    if len(comps) > 1:
        if not comps[0] >> x & 1 or not comps[-1] >> y & 1:
            return None
        return _path_through_components(rows, comps, x, y)
    full_in = [0] * len(rows)
    for v in bits(within):
        for w in bits(rows[v] & within):
            full_in[w] |= 1 << v
    into_y = full_in[y]
    path = [x]

    def dfs(cur, unvisited):
        budget.spend()
        if not unvisited:
            return bool(rows[cur] >> y & 1)
        if not into_y & unvisited:
            return False
        sub = component_masks(rows, unvisited)
        if not sub[-1] & into_y:
            return False
        cands = rows[cur] & sub[0]
        if not cands:
            return False
        order = sorted(bits(cands), key=lambda v: ((rows[v] & unvisited).bit_count(), v))
        for v in order:
            path.append(v)
            if dfs(v, unvisited & ~(1 << v)):
                return True
            path.pop()
        return False

    if dfs(x, within & ~(1 << x) & ~(1 << y)):
        return path + [y]
    return None


def _check_pair(t: Tournament, x: int, y: int) -> None:
    if x == y:
        raise SameVertex(f"vertex {x} given twice")
    for v in (x, y):
        if not 0 <= v < t.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{t.n - 1}")


def find_ham_path_directed(
    t: Tournament, x: int, y: int, budget: int = DEFAULT_BUDGET, within: int | None = None
) -> list[int] | None:
    """Hamiltonian path from ``x`` to ``y``, or ``None`` when none exists.

    Backtracking extends from ``x``; the next vertex must lie in the initial
    strong component of the unvisited part and fewest-remaining-out-arcs
    candidates are tried first.  Exhausting ``budget`` node expansions
    raises :class:`SearchBudgetExceeded` instead of reporting absence.
    ``within`` restricts the search to the sub-tournament on that mask.
    """
    _check_pair(t, x, y)
    within = t.full if within is None else within
    return _directed(t.rows, x, y, within, _Budget(budget))


def hamiltonian_cycle_through_arc(t: Tournament, u: int, v: int, budget: int = DEFAULT_BUDGET) -> list[int] | None:
    """Hamiltonian cycle using the arc ``u -> v``, listed from ``u``; ``None`` if absent."""
    _check_pair(t, u, v)
    if not t.dominates(u, v):
        raise NoSuchArc(f"no arc {u}->{v}")
    path = find_ham_path_directed(t, v, u, budget)
    if path is None:
        return None
    return [u] + path[:-1]


# ----------------------------------------------------------------------
# pairs joined by a Hamiltonian path in either direction


def _conditions_i_to_iii(rows, full, x, y) -> str | None:
    comps = component_masks(rows, full)
    pair = (1 << x) | (1 << y)
    if len(comps) > 1:
        if not comps[0] & pair or not comps[-1] & pair:
            return "i"
        return None
    for a, b, code in ((x, y, "ii"), (y, x, "iii")):
        sub = component_masks(rows, full & ~(1 << a))
        if len(sub) > 1 and not (sub[0] >> b & 1) and not (sub[-1] >> b & 1):
            return code
    return None


@dataclass(frozen=True)
class CatalogEntry:
    tournament: Tournament
    pair: tuple[int, int]


def derive_exceptional_catalog() -> list[CatalogEntry]:
    """All 6-vertex (tournament, pair) configurations with no Hamiltonian
    path between the pair although none of the structural obstructions
    (non-strong end components, cut-vertex components) applies.

    Found by exhaustive search and reduced modulo isomorphism; the first
    labelled representative in enumeration order is kept.
    """
    entries: list[CatalogEntry] = []
    for t in enumerate_all(6):
        if len(component_masks(t.rows, t.full)) != 1:
            continue
        ends = hamiltonian_endpoints(t)
        for x in range(6):
            for y in range(x + 1, 6):
                if (x, y) in ends or (y, x) in ends:
                    continue
                if _conditions_i_to_iii(t.rows, t.full, x, y) is not None:
                    continue
                if not any(_marked_isomorphic(e, t, (x, y)) for e in entries):
                    entries.append(CatalogEntry(t, (x, y)))
    return entries


def _marked_isomorphic(entry: CatalogEntry, t: Tournament, pair) -> bool:
    a, b = entry.pair
    x, y = pair
    return (
        find_isomorphism(entry.tournament, t, {a: x, b: y}) is not None
        or find_isomorphism(entry.tournament, t, {a: y, b: x}) is not None
    )


def hamiltonian_endpoints(t: Tournament) -> set[tuple[int, int]]:
    """Set of ``(start, end)`` over all Hamiltonian paths, by plain DFS."""
    rows = t.rows
    full = t.full
    found = set()

    def dfs(start, cur, used):
        if used == full:
            found.add((start, cur))
            return
        for w in bits(rows[cur] & ~used):
            dfs(start, w, used | (1 << w))

    for s in range(t.n):
        dfs(s, s, 1 << s)
    return found


def format_catalog(entries: Sequence[CatalogEntry]) -> str:
    out = [f"# exceptional 6-vertex tournaments with their marked pair; {len(entries)} entries"]
    for e in entries:
        out.append(f"pair {e.pair[0]} {e.pair[1]}")
        out.append(to_text(e.tournament).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_catalog(text: str) -> list[CatalogEntry]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    entries = []
    i = 0
    while i < len(lines):
        head = lines[i].split()
        if len(head) != 3 or head[0] != "pair":
            raise ParseError(f"expected 'pair x y', got {lines[i]!r}")
        x, y = int(head[1]), int(head[2])
        n = int(lines[i + 1])
        t = from_text("\n".join(lines[i + 1: i + 2 + n]))
        entries.append(CatalogEntry(t, (x, y)))
        i += n + 2
    return entries


@lru_cache(maxsize=1)
def exceptional_catalog() -> tuple[CatalogEntry, ...]:
    text = resources.files("tournspan.data").joinpath(CATALOG_RESOURCE).read_text()
    return tuple(parse_catalog(text))


@lru_cache(maxsize=1)
def _catalog_orbits() -> frozenset:
    keys = set()
    for e in exceptional_catalog():
        t = e.tournament
        for perm in permutations(range(t.n)):
            image = relabel(t, perm)
            keys.add((image.rows, frozenset((perm[e.pair[0]], perm[e.pair[1]]))))
    return frozenset(keys)


def in_exceptional_catalog(t: Tournament, x: int, y: int) -> bool:
    if t.n != 6:
        return False
    return (t.rows, frozenset((x, y))) in _catalog_orbits()


def catalog_closed_under_reversal(entries: Sequence[CatalogEntry]) -> bool:
    for e in entries:
        rev = CatalogEntry(reverse(e.tournament), e.pair)
        if not any(_marked_isomorphic(f, rev.tournament, rev.pair) for f in entries):
            return False
    return True


def ham_path_between_exists(t: Tournament, x: int, y: int) -> tuple[bool, str | None]:
    """Whether some Hamiltonian path joins ``x`` and ``y`` (either direction).

    Returns ``(False, code)`` with ``code`` in ``i``..``iv`` naming the
    obstruction, else ``(True, None)``:

    * ``i``: not strong, and the initial or terminal component misses both;
    * ``ii``: strong, ``T - x`` not strong, ``y`` inside neither end
      component of ``T - x``;
    * ``iii``: the same with ``x`` and ``y`` swapped;
    * ``iv``: ``(T, {x, y})`` is one of the exceptional 6-vertex configurations.
    """
    _check_pair(t, x, y)
    code = _conditions_i_to_iii(t.rows, t.full, x, y)
    if code is not None:
        return False, code
    if in_exceptional_catalog(t, x, y):
        return False, "iv"
    return True, None


def find_ham_path_between(t: Tournament, x: int, y: int, budget: int = DEFAULT_BUDGET) -> list[int] | None:
    """Witness Hamiltonian path with end set ``{x, y}``, or ``None``."""
    exists, _ = ham_path_between_exists(t, x, y)
    if not exists:
        return None
    comps = component_masks(t.rows, t.full)
    if len(comps) > 1:
        if comps[0] >> y & 1:
            x, y = y, x
        return _path_through_components(t.rows, comps, x, y)
    for a, b in ((x, y), (y, x)):
        path = find_ham_path_directed(t, a, b, budget)
        if path is not None:
            return path
    raise AssertionError(f"decision says a path joins {x} and {y} but none was found")
