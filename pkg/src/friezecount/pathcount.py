"""Path families in E_n, path lifting, and masked transfer-matrix counting.

Counts are computed by pushing a sparse vector of big-integer walk counts
through the adjacency structure, optionally restricted to an allowed vertex
set at every position (a *mask*).  Explicit path lists are only produced by
the DFS enumerators, which prune with backward count tables so they never
visit a dead end.
"""

from __future__ import annotations

import enum
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions import (
    BadAnchor,
    InvalidParams,
    LimitExceeded,
    ModulusMismatch,
    PreconditionViolated,
)
from .fareygraph import FareyGraph, Vertex, build, is_edge, negate, reduce
from .modring import factorize, inverse, Residue, unit_values, valuation

Mask = Optional[frozenset]


@dataclass(frozen=True)
class Path:
    """A walk ``v_0 -> v_1 -> ... -> v_m`` in E_n."""

    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise InvalidParams("a path needs at least one edge")
        n = self.vertices[0].n
        for u, v in zip(self.vertices, self.vertices[1:]):
            if v.n != n:
                raise ModulusMismatch("path vertices live in different graphs")
            if not is_edge(u, v):
                raise InvalidParams(f"{u} -> {v} is not an edge of E_{n}")

    @property
    def n(self) -> int:
        return self.vertices[0].n

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    def reduce(self, m: int) -> "Path":
        return Path(tuple(reduce(v, m) for v in self.vertices))

    def is_semiclosed(self) -> bool:
        return self.end == negate(self.start)

    def __len__(self):
        return self.length

    def __str__(self):
        return "<" + ", ".join(map(str, self.vertices)) + ">"


class Family(str, enum.Enum):
    X = "X"
    Y = "Y"
    OMEGA = "OMEGA"
    Z = "Z"
    Z_T = "Z_T"
    W = "W"


class Method(str, enum.Enum):
    FORMULA = "FORMULA"
    TRANSFER_MATRIX = "TRANSFER_MATRIX"
    DFS = "DFS"


@dataclass(frozen=True)
class PathFamilyQuery:
    family: Family
    n: Optional[int] = None
    m: Optional[int] = None
    p: Optional[int] = None
    r: Optional[int] = None
    k: Optional[int] = None
    t: Optional[int] = None

    def as_dict(self) -> dict:
        out = {"family": self.family.value}
        for name in ("n", "m", "p", "r", "k", "t"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


@dataclass
class CountReport:
    query: dict
    method: Method
    count: int
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self, timing: bool = True) -> dict:
        out = {"query": self.query, "method": self.method.value, "count": str(self.count)}
        if self.detail:
            out["detail"] = {k: str(v) if isinstance(v, int) else v for k, v in self.detail.items()}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def timed_report(query: dict, method: Method, fn: Callable[[], int], **detail) -> CountReport:
    t0 = time.perf_counter()
    count = fn()
    return CountReport(query, method, count, time.perf_counter() - t0, detail)


# ---------------------------------------------------------------------------
# transfer-matrix engine


def propagate(
    graph: FareyGraph, start: Dict[int, int], masks: Sequence[Mask]
) -> Dict[int, int]:
    """Push walk counts through ``len(masks)`` steps.

    ``masks[j]`` restricts the vertex reached after step ``j + 1``; ``None``
    allows every vertex.
    """
    adj = graph.out_adjacency
    cur = {i: c for i, c in start.items() if c}
    for mask in masks:
        nxt: Dict[int, int] = defaultdict(int)
        for i, c in cur.items():
            for j in adj[i]:
                if mask is None or j in mask:
                    nxt[j] += c
        cur = nxt
    return dict(cur)


def masked_count(graph: FareyGraph, masks: Sequence[Mask]) -> int:
    """Number of walks ``v_0..v_m`` with ``v_j`` in ``masks[j]`` for every j."""
    first = masks[0]
    start = dict.fromkeys(range(len(graph)) if first is None else first, 1)
    return sum(propagate(graph, start, masks[1:]).values())


class PathSpace:
    """All walks in ``graph`` whose j-th vertex lies in ``masks[j]``.

    Backward tables make counting, DFS enumeration, and unranking in
    canonical (adjacency-order) DFS order cheap.
    """

    def __init__(self, graph: FareyGraph, masks: Sequence[Mask]):
        if len(masks) < 1:
            raise InvalidParams("a path space needs at least one position")
        self.graph = graph
        self.masks = list(masks)
        size = len(graph)
        adj = graph.out_adjacency
        last = self.masks[-1]
        table = [1 if last is None or i in last else 0 for i in range(size)]
        tables = [table]
        # position 0 is filtered through self.roots instead of a mask
        inner = [None] + self.masks[1:-1] if len(self.masks) > 1 else []
        for mask in reversed(inner):
            prev = [0] * size
            for i in range(size):
                if mask is None or i in mask:
                    prev[i] = sum(table[j] for j in adj[i])
            table = prev
            tables.append(table)
        tables.reverse()
        # tables[j][i]: completions from vertex i sitting at position j
        self.tables = tables
        self.roots = sorted(range(size) if self.masks[0] is None else self.masks[0])

    @property
    def length(self) -> int:
        return len(self.masks) - 1

    def count(self) -> int:
        return sum(self.tables[0][i] for i in self.roots)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        adj, tables, m = self.graph.out_adjacency, self.tables, self.length
        stack: List[int] = []

        def walk(i: int, pos: int):
            stack.append(i)
            if pos == m:
                yield tuple(stack)
            else:
                for j in adj[i]:
                    if tables[pos + 1][j]:
                        yield from walk(j, pos + 1)
            stack.pop()

        for root in self.roots:
            if tables[0][root]:
                yield from walk(root, 0)

    def unrank(self, index: int) -> Tuple[int, ...]:
        """The ``index``-th walk in DFS order, without enumerating its predecessors."""
        if not 0 <= index < self.count():
            raise IndexError(f"index {index} out of range for {self.count()} paths")
        adj, tables = self.graph.out_adjacency, self.tables
        out = []
        candidates = self.roots
        for pos in range(self.length + 1):
            for i in candidates:
                c = tables[pos][i]
                if index < c:
                    out.append(i)
                    candidates = adj[i]
                    break
                index -= c
        return tuple(out)

    def paths(self, limit: Optional[int] = None) -> List[Path]:
        verts = self.graph.vertices
        out = []
        for walk in self:
            if limit is not None and len(out) >= limit:
                raise LimitExceeded(limit, len(out))
            out.append(Path(tuple(verts[i] for i in walk)))
        return out


def _point(graph: FareyGraph, v: Vertex) -> frozenset:
    return frozenset([graph.vertex_index(v)])


def count_paths(graph: FareyGraph, u: Vertex, v: Vertex, m: int) -> int:
    """Number of directed walks of length ``m`` from ``u`` to ``v``."""
    if m < 0:
        raise InvalidParams(f"path length must be >= 0, got {m}")
    i, j = graph.vertex_index(u), graph.vertex_index(v)
    if m == 0:
        return int(i == j)
    return propagate(graph, {i: 1}, [None] * (m - 1) + [frozenset([j])]).get(j, 0)


def enumerate_paths(
    graph: FareyGraph, u: Vertex, v: Vertex, m: int, limit: Optional[int] = None
) -> List[Path]:
    """All walks ``u -> v`` of length ``m`` in canonical DFS order."""
    if m < 1:
        raise InvalidParams(f"enumeration needs m >= 1, got {m}")
    masks = [_point(graph, u)] + [None] * (m - 1) + [_point(graph, v)]
    return PathSpace(graph, masks).paths(limit)


# ---------------------------------------------------------------------------
# the families X_m(n) and Y_m(n)


def _check_nm(n: int, m: int, m_min: int) -> None:
    if n < 2 or m < m_min:
        raise InvalidParams(f"need n >= 2 and m >= {m_min}, got n={n}, m={m}")


def unit_multiples(graph: FareyGraph, v: Vertex) -> frozenset:
    """Indices of the vertices equivalent to ``v``."""
    n = graph.n
    return frozenset(
        graph.vertex_index(Vertex.of(lam * v.a, lam * v.b, n)) for lam in unit_values(n)
    )


def x_space(n: int, m: int) -> PathSpace:
    _check_nm(n, m, 2)
    G = build(n)
    one_zero = Vertex(1, 0, n)
    masks = (
        [_point(G, one_zero), _point(G, Vertex(0, 1, n))]
        + [None] * (m - 2)
        + [unit_multiples(G, one_zero)]
    )
    return PathSpace(G, masks)


def count_X(n: int, m: int) -> int:
    """|X_m(n)|: paths ``1/0, 0/1, ..., lam/0`` of length ``m`` with ``lam`` a unit."""
    _check_nm(n, m, 2)
    G = build(n)
    targets = unit_multiples(G, Vertex(1, 0, n))
    start = {G.vertex_index(Vertex(0, 1, n)): 1}
    final = propagate(G, start, [None] * (m - 2) + [targets])
    return sum(final.values())


def enumerate_X(n: int, m: int, limit: Optional[int] = None) -> List[Path]:
    return x_space(n, m).paths(limit)


def y_space(n: int, m: int) -> PathSpace:
    _check_nm(n, m, 1)
    G = build(n)
    v = Vertex(1, 0, n)
    return PathSpace(G, [_point(G, v)] + [None] * (m - 1) + [_point(G, negate(v))])


def count_Y(n: int, m: int) -> int:
    """|Y_m(n)|: paths of length ``m`` from ``1/0`` to ``-1/0``."""
    _check_nm(n, m, 1)
    G = build(n)
    v = Vertex(1, 0, n)
    return count_paths(G, v, negate(v), m)


def enumerate_Y(n: int, m: int, limit: Optional[int] = None) -> List[Path]:
    return y_space(n, m).paths(limit)


def semiclosed_space(graph: FareyGraph, v: Vertex, m: int) -> PathSpace:
    """Walks of length ``m`` from ``v`` to ``-v``."""
    if m < 1:
        raise InvalidParams(f"need m >= 1, got {m}")
    return PathSpace(graph, [_point(graph, v)] + [None] * (m - 1) + [_point(graph, negate(v))])


# ---------------------------------------------------------------------------
# lifting


class AnchorKind(str, enum.Enum):
    INITIAL = "INITIAL"
    FINAL = "FINAL"


@dataclass(frozen=True)
class Anchor:
    kind: AnchorKind
    vertex: Vertex

    @classmethod
    def initial(cls, v: Vertex) -> "Anchor":
        return cls(AnchorKind.INITIAL, v)

    @classmethod
    def final(cls, v: Vertex) -> "Anchor":
        return cls(AnchorKind.FINAL, v)


def _prime_power(q: int) -> Tuple[int, int]:
    f = factorize(q)
    if len(f) != 1:
        raise InvalidParams(f"{q} is not a prime power")
    return f[0].p, f[0].r


def fiber_masks(graph: FareyGraph, gamma: Path) -> List[frozenset]:
    """Per-position fibers in ``graph`` over the vertices of ``gamma``."""
    cache: Dict[Vertex, frozenset] = {}
    out = []
    for v in gamma.vertices:
        if v not in cache:
            cache[v] = graph.fiber(v)
        out.append(cache[v])
    return out


def lift_space(gamma: Path, r: int, anchor: Optional[Anchor] = None) -> PathSpace:
    p, s = _prime_power(gamma.n)
    if r < s:
        raise InvalidParams(f"cannot lift from E_{p}^{s} down to exponent {r}")
    G = build(p**r)
    masks: List[Mask] = list(fiber_masks(G, gamma))
    if anchor is not None:
        bar = anchor.vertex
        pos = 0 if anchor.kind == AnchorKind.INITIAL else -1
        if bar.n != G.n or reduce(bar, gamma.n) != gamma.vertices[pos]:
            raise BadAnchor(f"{bar} does not lie over {gamma.vertices[pos]}")
        masks[pos] = _point(G, bar)
    return PathSpace(G, masks)


def lift_paths(gamma: Path, r: int, anchor: Anchor) -> List[Path]:
    """All lifts of ``gamma`` (in E_{p^s}) to E_{p^r} with the anchored endpoint fixed."""
    return lift_space(gamma, r, anchor).paths()


def count_lifts(gamma: Path, r: int, anchor: Optional[Anchor] = None) -> int:
    return lift_space(gamma, r, anchor).count()


def count_lifts_into(gamma: Path, r: int, first: Mask, last: Mask, second: Mask = None) -> int:
    """Lifts of ``gamma`` to E_{p^r} whose endpoints (and optionally ``v_1``) lie in given sets."""
    p, _ = _prime_power(gamma.n)
    G = build(p**r)
    masks: List[Mask] = list(fiber_masks(G, gamma))
    masks[0] = masks[0] & first if first is not None else masks[0]
    masks[-1] = masks[-1] & last if last is not None else masks[-1]
    if second is not None:
        masks[1] = masks[1] & second
    return masked_count(G, masks)


def count_lifts_in_X(gamma: Path, r: int) -> int:
    """Number of lifts of ``gamma`` in X_m(p) that lie in X_m(p^r)."""
    p, _ = _prime_power(gamma.n)
    G = build(p**r)
    one_zero = Vertex(1, 0, G.n)
    return count_lifts_into(
        gamma, r, _point(G, one_zero), unit_multiples(G, one_zero), _point(G, Vertex(0, 1, G.n))
    )


def count_lifts_in_Y(gamma: Path, r: int) -> int:
    p, _ = _prime_power(gamma.n)
    G = build(p**r)
    one_zero = Vertex(1, 0, G.n)
    return count_lifts_into(gamma, r, _point(G, one_zero), _point(G, negate(one_zero)))


def middle_vertex(u: Vertex, w: Vertex, p: int) -> Vertex:
    """The unique ``v`` with ``u -> v -> w``.

    With ``u = a/b`` and ``w = c/d`` the two edge conditions form a linear
    system of determinant ``ad - bc``, so ``v`` is unique whenever that is a
    unit; the residue conditions of :func:`has_liftable_subpath` (b, c nonzero
    and a or d zero mod p) are one way to guarantee it.
    """
    if u.n != w.n:
        raise ModulusMismatch("vertices in different graphs")
    a, b, c, d = u.a, u.b, w.a, w.b
    n = u.n
    if (a * d - b * c) % p == 0:
        raise PreconditionViolated(f"{u} -> * -> {w}: ad - bc is not a unit mod {n}")
    mu = inverse(Residue.of(a * d - b * c, n)).value
    return Vertex.of(mu * (a + c), mu * (b + d), n)


def _liftable_window(u: Vertex, w: Vertex, p: int) -> bool:
    return u.b % p != 0 and w.a % p != 0 and (u.a % p == 0 or w.b % p == 0)


def has_liftable_subpath(gamma: Path, p: int) -> bool:
    """True iff some ``a/b -> * -> c/d`` window has b, c units and a or d divisible by p."""
    vs = gamma.vertices
    return any(_liftable_window(vs[i], vs[i + 2], p) for i in range(len(vs) - 2))


def has_unit_approach(gamma: Path, p: int) -> bool:
    """True iff some ``a/b -> c/s -> -s/0`` (``s = +-1``) window has ``b`` nonzero mod p.

    Every such window also satisfies :func:`has_liftable_subpath`.
    """
    vs = gamma.vertices
    for i in range(len(vs) - 2):
        end = vs[i + 2]
        if end.b % p == 0 and (end.a - 1) * (end.a + 1) % p == 0 and vs[i].b % p:
            return True
    return False


# ---------------------------------------------------------------------------
# Omega, Z, W


def _sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def enumerate_Omega(p: int, k: int) -> List[Path]:
    """Paths ``1/0 -> l1/1 -> -1/0 -> l2/-1 -> ... -> eps/0`` of length ``2k`` in E_p."""
    if k < 1:
        raise InvalidParams(f"need k >= 1, got {k}")
    out: List[Path] = []

    def grow(prefix: List[Vertex], i: int):
        if i == k:
            out.append(Path(tuple(prefix)))
            return
        s = _sign(i)
        for lam in range(p):
            grow(prefix + [Vertex.of(lam, s, p), Vertex.of(-s, 0, p)], i + 1)

    grow([Vertex(1, 0, p)], 0)
    return out


def omega_masks(p: int, r: int, k: int) -> List[frozenset]:
    """Fibers in E_{p^r} of the positions of Omega_{2k}(p)."""
    G = build(p**r)
    masks = []
    for i in range(k):
        s = _sign(i)
        masks.append(G.fiber(Vertex.of(s, 0, p)))
        masks.append(frozenset(j for j, v in enumerate(G.vertices) if (v.b - s) % p == 0))
    masks.append(G.fiber(Vertex.of(_sign(k), 0, p)))
    return masks


def _omega_final_counts(p: int, r: int, k: int) -> Dict[int, int]:
    if p < 2 or r < 1 or k < 1:
        raise InvalidParams(f"bad parameters p={p}, r={r}, k={k}")
    G = build(p**r)
    masks = omega_masks(p, r, k)
    start = {G.vertex_index(Vertex(1, 0, G.n)): 1}
    return propagate(G, start, masks[1:])


def count_Z(p: int, r: int, k: int) -> int:
    """|Z_k(r)|: lifts of Omega_{2k}(p) from ``1/0`` ending exactly at ``eps/0``."""
    final = _omega_final_counts(p, r, k)
    G = build(p**r)
    return final.get(G.vertex_index(Vertex.of(_sign(k), 0, G.n)), 0)


def count_Z_t(p: int, r: int, k: int, t: int) -> int:
    """|Z_k(r, t)|: final vertex ``(eps + a)/b`` with ``v_p(b) == t <= v_p(a)``."""
    if not 1 <= t < r:
        raise InvalidParams(f"need 1 <= t < r, got t={t}, r={r}")
    final = _omega_final_counts(p, r, k)
    G = build(p**r)
    eps = _sign(k)
    total = 0
    for i, c in final.items():
        v = G.vertices[i]
        a = (v.a - eps) % G.n
        if valuation(v.b, p) == t and valuation(a, p) >= t:
            total += c
    return total


def count_W(r: int, k: int, p: int = 2) -> int:
    """|W_k(r)|: lifts of Omega_{2k}(2) from ``1/0`` ending at ``-1/0``, k even."""
    if k % 2:
        raise InvalidParams(f"W_k needs k even, got {k}")
    if r < 1:
        raise InvalidParams(f"need r >= 1, got {r}")
    if p != 2:
        raise InvalidParams("W_k is only defined for p = 2")
    if r == 1:
        return 0
    final = _omega_final_counts(p, r, k)
    G = build(p**r)
    return final.get(G.vertex_index(Vertex.of(-1, 0, G.n)), 0)


AUX_MATRIX = ((0, 4, 2, 2), (4, 0, 2, 2), (2, 2, 0, 4), (2, 2, 4, 0))
AUX_LABELS = ("1/0", "-1/0", "-1/2", "1/2")


def aux_graph_counts(k: int, matrix=AUX_MATRIX) -> int:
    """Weighted walks of length ``k`` from ``1/0`` to ``-1/0`` in the 4-vertex auxiliary graph."""
    if k < 1:
        raise InvalidParams(f"need k >= 1, got {k}")
    vec = [1, 0, 0, 0]
    for _ in range(k):
        vec = [sum(vec[i] * matrix[i][j] for i in range(4)) for j in range(4)]
    return vec[1]


def aux_matrix_from_graph() -> Tuple[Tuple[int, ...], ...]:
    """Rebuild the auxiliary weight matrix by counting 2-step walks in E_4."""
    G = build(4)
    verts = [Vertex.parse(s, 4) for s in AUX_LABELS]
    return tuple(tuple(count_paths(G, u, v, 2) for v in verts) for u in verts)
