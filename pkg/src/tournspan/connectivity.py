"""Vertex connectivity, Menger path families and bypass search.

Local connectivity is a unit-capacity max-flow on the usual vertex-split
network: every vertex other than the terminals becomes an in-node and an
out-node joined by a capacity-1 arc, and tournament arcs get unbounded
capacity so every minimum cut is a set of vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import Tournament, bits, degree_profile
from .errors import IrregularityExceeded, NoSuchArc, SameVertex


@dataclass(frozen=True)
class PathFamily:
    source: int
    sink: int
    paths: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.paths)


@dataclass(frozen=True)
class CutCertificate:
    """Vertex separator for ``source -> sink`` once the direct arc is ignored."""

    separator: frozenset[int]
    side_source: frozenset[int]
    side_sink: frozenset[int]


@dataclass(frozen=True)
class LocalConnectivity:
    count: int
    family: PathFamily
    cut: CutCertificate
    direct_arc: bool


class _Flow:
    """Vertex-disjoint path flow from ``x`` to ``y`` inside ``allowed``."""

    def __init__(self, rows, x, y, allowed):
        self.rows = rows
        self.x = x
        self.y = y
        self.allowed = allowed & ~(1 << x)
        self.succ = {}  # internal vertex -> successor on its flow path
        self.pred = {}  # internal vertex -> predecessor
        self.first = set()  # successors of x carrying flow
        self.value = 0

    def _out_neighbours(self, u):
        m = self.rows[u] & self.allowed
        if u == self.x:
            m &= ~(1 << self.y)
        return m

    def augment(self) -> bool:
        # nodes: (v, 0) = in-node, (v, 1) = out-node
        x, y = self.x, self.y
        parent = {(x, 1): None}
        queue = deque([(x, 1)])
        while queue:
            node = queue.popleft()
            v, side = node
            if side == 1:
                for w in bits(self._out_neighbours(v)):
                    nxt = (w, 0)
                    if nxt not in parent:
                        parent[nxt] = node
                        if w == y:
                            self._apply(parent, nxt)
                            return True
                        queue.append(nxt)
                if v != x and v in self.pred:
                    nxt = (v, 0)
                    if nxt not in parent:
                        parent[nxt] = node
                        queue.append(nxt)
            else:
                if v not in self.pred:
                    nxt = (v, 1)
                    if nxt not in parent:
                        parent[nxt] = node
                        queue.append(nxt)
                else:
                    p = self.pred[v]
                    nxt = (p, 1)
                    if nxt not in parent:
                        parent[nxt] = node
                        queue.append(nxt)
        self._reach = parent
        return False

    def _apply(self, parent, end):
        steps = []
        node = end
        while parent[node] is not None:
            steps.append((parent[node], node))
            node = parent[node]
        for (a, sa), (b, sb) in reversed(steps):
            if sa == 1 and sb == 0:
                if a == b:
                    continue
                # push along arc a -> b
                self._push(a, b)
            elif sa == 0 and sb == 1 and a != b:
                # cancel flow on arc b -> a
                self._cancel(b, a)
        self.value += 1

    def _push(self, a, b):
        if a == self.x:
            self.first.add(b)
        else:
            self.succ[a] = b
        if b != self.y:
            self.pred[b] = a

    def _cancel(self, a, b):
        if a == self.x:
            self.first.discard(b)
        elif self.succ.get(a) == b:
            del self.succ[a]
        if self.pred.get(b) == a:
            del self.pred[b]

    def run(self, limit=None):
        while limit is None or self.value < limit:
            if not self.augment():
                break
        return self.value

    def paths(self):
        out = []
        for f in sorted(self.first):
            path = [self.x, f]
            v = f
            while v != self.y:
                v = self.succ[v]
                path.append(v)
            out.append(tuple(path))
        return out

    def cut(self):
        while self.augment():
            pass
        reach = self._reach
        sep = set()
        src = {self.x}
        for (v, side) in reach:
            if v == self.x:
                continue
            if side == 0 and (v, 1) not in reach:
                sep.add(v)
        for (v, side) in reach:
            if v not in sep:
                src.add(v)
        everything = set(bits(self.allowed | (1 << self.x)))
        sink_side = everything - sep - src
        return CutCertificate(frozenset(sep), frozenset(src), frozenset(sink_side))


def _internal_flow(t: Tournament, x: int, y: int, allowed: int | None = None, limit=None) -> _Flow:
    flow = _Flow(t.rows, x, y, t.full if allowed is None else allowed)
    flow.run(limit)
    return flow


def local_connectivity(t: Tournament, x: int, y: int, allowed: int | None = None) -> LocalConnectivity:
    """Maximum number of internally disjoint ``(x, y)``-paths, with witnesses.

    The direct arc ``x -> y``, when present, counts as one path; the cut
    certificate then separates ``x`` from ``y`` in ``T`` minus that arc.
    ``allowed`` optionally restricts the vertices the paths may use.
    """
    if x == y:
        raise SameVertex(f"vertex {x} given twice")
    flow = _internal_flow(t, x, y, allowed)
    paths = flow.paths()
    direct = t.dominates(x, y)
    if direct:
        paths = [(x, y)] + paths
    count = flow.value + int(direct)
    return LocalConnectivity(count, PathFamily(x, y, tuple(paths)), flow.cut(), direct)


def vertex_connectivity(t: Tournament) -> tuple[int, CutCertificate | None]:
    """Largest ``k`` such that ``t`` is ``k``-strong, with a minimum separator.

    The certificate is ``None`` only for the one-vertex tournament.
    """
    if t.n < 2:
        return 0, None
    best = None
    best_pair = None
    for x in range(t.n):
        for y in bits(t.in_mask(x)):
            # arc y -> x, so x -> y paths are all internal
            flow = _internal_flow(t, x, y, limit=best)
            if best is None or flow.value < best:
                best = flow.value
                best_pair = (x, y)
                if best == 0:
                    break
        if best == 0:
            break
    x, y = best_pair
    flow = _internal_flow(t, x, y)
    return best, flow.cut()


def connectivity(t: Tournament) -> int:
    return vertex_connectivity(t)[0]


def is_k_strong(t: Tournament, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    if t.n < k + 1:
        return False
    if k == 0:
        return True
    for x in range(t.n):
        for y in bits(t.in_mask(x)):
            if _internal_flow(t, x, y, limit=k).value < k:
                return False
    return True


def find_bypass(t: Tournament, u: int, v: int, length: int) -> list[int] | None:
    """A ``(u, v)``-path with exactly ``length`` arcs, or ``None``."""
    if u == v:
        raise SameVertex(f"vertex {u} given twice")
    if not t.dominates(u, v):
        raise NoSuchArc(f"no arc {u}->{v}")
    if length < 2:
        raise ValueError("bypass length must be at least 2")
    if length > t.n - 1:
        return None
    rows = t.rows
    into_v = t.in_mask(v)
    if length == 2:
        common = rows[u] & into_v
        if not common:
            return None
        w = (common & -common).bit_length() - 1
        return [u, w, v]
    path = [u]

    def dfs(cur, used, remaining):
        if remaining == 1:
            return bool(rows[cur] >> v & 1)
        cands = rows[cur] & ~used & ~(1 << v)
        if remaining == 2:
            cands &= into_v
        for w in bits(cands):
            path.append(w)
            if dfs(w, used | (1 << w), remaining - 1):
                return True
            path.pop()
        return False

    if dfs(u, (1 << u) | (1 << v), length):
        return path + [v]
    return None


def has_two_bypass_everywhere(t: Tournament) -> bool:
    return all(t.rows[u] & t.in_mask(v) for u, v in t.arcs())


def has_length2_path_everywhere(t: Tournament) -> bool:
    """Every pair joined by a path of length 2 in one direction or the other."""
    for x in range(t.n):
        for y in range(x + 1, t.n):
            if not (t.rows[x] & t.in_mask(y)) and not (t.rows[y] & t.in_mask(x)):
                return False
    return True


def lemma_bound(n: int, k: int) -> int:
    """Ceiling of ``(n - 2k) / 3``: the connectivity floor for irregularity ``k``."""
    return -((2 * k - n) // 3)


@dataclass(frozen=True)
class IrregularityBound:
    n: int
    k: int
    irregularity: int
    kappa: int
    bound: int
    satisfied: bool
    extra: dict = field(default_factory=dict)


def check_irregularity_bound(t: Tournament, k: int) -> IrregularityBound:
    irr = degree_profile(t).irregularity
    if irr > k:
        raise IrregularityExceeded(f"i(T) = {irr} exceeds the claimed budget {k}")
    kappa = connectivity(t)
    bound = lemma_bound(t.n, k)
    return IrregularityBound(t.n, k, irr, kappa, bound, kappa >= bound)
