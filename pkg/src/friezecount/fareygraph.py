"""The Farey graph E_n over Z/nZ and the SL2(Z/nZ) action on it.

Vertices are pairs ``a/b`` with ``gcd(a, b, n) == 1``; there is a directed edge
``a/b -> c/d`` whenever ``ad - bc = 1`` in Z/nZ.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

from .exceptions import (
    InvalidModulus,
    ModuliNotCoprime,
    ModulusMismatch,
    NoTransporter,
    NotADivisor,
    VertexNotInGraph,
)
from .modring import Residue, crt_combine


@dataclass(frozen=True, order=True)
class Vertex:
    """The formal fraction ``a/b`` in E_n."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        if not (0 <= self.a < self.n and 0 <= self.b < self.n):
            raise InvalidModulus(f"{self.a}/{self.b} not reduced mod {self.n}")
        if math.gcd(math.gcd(self.a, self.b), self.n) != 1:
            raise InvalidModulus(f"{self.a}/{self.b} has gcd with {self.n} != 1")

    @classmethod
    def of(cls, a: int, b: int, n: int) -> "Vertex":
        return cls(a % n, b % n, n)

    @classmethod
    def parse(cls, text: str, n: int) -> "Vertex":
        a, b = text.split("/")
        return cls.of(int(a), int(b), n)

    @property
    def residues(self) -> Tuple[Residue, Residue]:
        return Residue(self.a, self.n), Residue(self.b, self.n)

    def __str__(self):
        return f"{self.a}/{self.b}"


class DirectedEdge(NamedTuple):
    source: Vertex
    target: Vertex


@dataclass(frozen=True)
class Mat2:
    """A matrix ``(a, b; c, d)`` in SL2(Z/nZ)."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c - 1) % self.n:
            raise InvalidModulus(f"determinant of {self} is not 1 mod {self.n}")

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int, n: int) -> "Mat2":
        return cls(a % n, b % n, c % n, d % n, n)

    @classmethod
    def identity(cls, n: int) -> "Mat2":
        return cls.of(1, 0, 0, 1, n)

    def reduce(self, m: int) -> "Mat2":
        if self.n % m:
            raise NotADivisor(f"{m} does not divide {self.n}")
        return Mat2.of(self.a, self.b, self.c, self.d, m)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        _same(self.n, other.n)
        return Mat2.of(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.n,
        )

    def __str__(self):
        return f"({self.a},{self.b};{self.c},{self.d}) mod {self.n}"


def _same(n1: int, n2: int) -> None:
    if n1 != n2:
        raise ModulusMismatch(f"moduli {n1} and {n2} differ")


def det(u: Vertex, v: Vertex) -> int:
    """``u.a*v.b - u.b*v.a`` reduced mod n."""
    _same(u.n, v.n)
    return (u.a * v.b - u.b * v.a) % u.n


def is_edge(u: Vertex, v: Vertex) -> bool:
    return det(u, v) == 1 % u.n


def sl2_elements(n: int) -> Iterator[Mat2]:
    """All of SL2(Z/nZ) by exhaustive scan (small n only)."""
    one = 1 % n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c) % n == one:
                        yield Mat2(a, b, c, d, n)


def apply_matrix(A: Mat2, v: Vertex) -> Vertex:
    _same(A.n, v.n)
    return Vertex.of(A.a * v.a + A.b * v.b, A.c * v.a + A.d * v.b, v.n)


def _columns(e: DirectedEdge) -> Mat2:
    # the matrix with columns e.source, e.target; determinant 1 exactly when e is an edge
    return Mat2.of(e.source.a, e.target.a, e.source.b, e.target.b, e.source.n)


def edge_transporter(e1: DirectedEdge, e2: DirectedEdge) -> Mat2:
    """The unique A in SL2(Z/nZ) carrying edge ``e1`` onto edge ``e2``."""
    _same(e1.source.n, e2.source.n)
    try:
        p1, p2 = _columns(e1), _columns(e2)
    except InvalidModulus as exc:
        raise NoTransporter(f"{e1} or {e2} is not an edge") from exc
    p1_inv = Mat2.of(p1.d, -p1.b, -p1.c, p1.a, p1.n)
    A = p2 @ p1_inv
    if apply_matrix(A, e1.source) != e2.source or apply_matrix(A, e1.target) != e2.target:
        raise NoTransporter(f"no transporter from {e1} to {e2}")
    return A


def reduce(v: Vertex, m: int) -> Vertex:
    """Componentwise reduction E_n -> E_m for a divisor ``m`` of ``n``."""
    if m < 1 or v.n % m:
        raise NotADivisor(f"{m} does not divide {v.n}")
    return Vertex(v.a % m, v.b % m, m)


def vertex_lifts(v: Vertex, p: int, r: int) -> List[Vertex]:
    """The ``p**2`` vertices of E_{p^r} reducing to ``v`` in E_{p^(r-1)}."""
    low, high = p ** (r - 1), p**r
    if v.n != low:
        raise ModulusMismatch(f"{v} is not a vertex of E_{low}")
    return sorted(
        Vertex(v.a + i * low, v.b + j * low, high) for i in range(p) for j in range(p)
    )


def equivalent(u: Vertex, v: Vertex) -> bool:
    """True iff ``u == lam * v`` for some unit ``lam``."""
    _same(u.n, v.n)
    n = u.n
    return any(
        (lam * v.a - u.a) % n == 0 and (lam * v.b - u.b) % n == 0
        for lam in range(n)
        if math.gcd(lam, n) == 1
    )


def negate(v: Vertex) -> Vertex:
    return Vertex.of(-v.a, -v.b, v.n)


def _one_successor(a: int, b: int, n: int) -> Tuple[int, int]:
    # solve a*d - b*c = 1 (mod n) through the integer gcd of a and b
    g, x, y = _egcd(a, b)
    g_inv = pow(g, -1, n)
    return (-y * g_inv) % n, (x * g_inv) % n


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class FareyGraph:
    """A fully materialized E_n with vertices in lexicographic ``(a, b)`` order.

    ``out_adjacency[i]`` lists the indices of the successors of vertex ``i``,
    sorted ascending.
    """

    def __init__(self, n: int):
        if n < 2:
            raise InvalidModulus(f"E_n needs n >= 2, got {n}")
        self.n = n
        self.vertices: Tuple[Vertex, ...] = tuple(
            Vertex(a, b, n)
            for a in range(n)
            for b in range(n)
            if math.gcd(math.gcd(a, b), n) == 1
        )
        self.index: Dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        adjacency = []
        for v in self.vertices:
            # successors of a/b are exactly c0/d0 + t*(a/b) for t in Z/nZ
            c0, d0 = _one_successor(v.a, v.b, n)
            succ = sorted(
                self.index[Vertex((c0 + t * v.a) % n, (d0 + t * v.b) % n, n)]
                for t in range(n)
            )
            adjacency.append(tuple(succ))
        self.out_adjacency: Tuple[Tuple[int, ...], ...] = tuple(adjacency)

    def __repr__(self):
        return f"FareyGraph(n={self.n}, vertices={len(self.vertices)})"

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    def vertex_index(self, v: Vertex) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise VertexNotInGraph(f"{v} (mod {v.n}) is not a vertex of E_{self.n}") from None

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.out_adjacency)

    def edges(self) -> Iterator[DirectedEdge]:
        for i, succ in enumerate(self.out_adjacency):
            for j in succ:
                yield DirectedEdge(self.vertices[i], self.vertices[j])

    def successors(self, v: Vertex) -> List[Vertex]:
        return [self.vertices[j] for j in self.out_adjacency[self.vertex_index(v)]]

    def in_degrees(self) -> List[int]:
        deg = [0] * len(self.vertices)
        for succ in self.out_adjacency:
            for j in succ:
                deg[j] += 1
        return deg

    def fiber(self, v: Vertex) -> frozenset:
        """Indices of the vertices reducing to ``v`` (``v.n`` must divide ``n``)."""
        if self.n % v.n:
            raise NotADivisor(f"{v.n} does not divide {self.n}")
        m = v.n
        return frozenset(
            i for i, w in enumerate(self.vertices) if w.a % m == v.a and w.b % m == v.b
        )

    def to_dot(self) -> str:
        lines = [f'digraph "E_{self.n}" {{']
        lines.extend(f'  "{v}";' for v in self.vertices)
        lines.extend(f'  "{e.source}" -> "{e.target}";' for e in self.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "vertices": [str(v) for v in self.vertices],
            "edges": [{"from": str(e.source), "to": str(e.target)} for e in self.edges()],
        }
        return json.dumps(payload, indent=2) + "\n"


@lru_cache(maxsize=64)
def build(n: int) -> FareyGraph:
    """Construct (and memoize) E_n."""
    return FareyGraph(n)


@dataclass(frozen=True)
class TensorProduct:
    """The tensor product of two directed graphs, by vertex index pairs."""

    left: FareyGraph
    right: FareyGraph

    @property
    def vertices(self) -> List[Tuple[Vertex, Vertex]]:
        return [(u, v) for u in self.left.vertices for v in self.right.vertices]

    def successors(self, pair: Tuple[Vertex, Vertex]) -> List[Tuple[Vertex, Vertex]]:
        u, v = pair
        return [(x, y) for x in self.left.successors(u) for y in self.right.successors(v)]

    def has_edge(self, src: Tuple[Vertex, Vertex], dst: Tuple[Vertex, Vertex]) -> bool:
        return is_edge(src[0], dst[0]) and is_edge(src[1], dst[1])

    def edges(self) -> Iterator[Tuple[Tuple[Vertex, Vertex], Tuple[Vertex, Vertex]]]:
        for e in self.left.edges():
            for f in self.right.edges():
                yield (e.source, f.source), (e.target, f.target)

    @property
    def edge_count(self) -> int:
        return self.left.edge_count * self.right.edge_count


def tensor_product(G: FareyGraph, H: FareyGraph) -> TensorProduct:
    return TensorProduct(G, H)


def crt_iso_alpha(v: Vertex, m: int, n: int) -> Tuple[Vertex, Vertex]:
    """Split a vertex of E_{mn} into its components in E_m and E_n."""
    if math.gcd(m, n) != 1:
        raise ModuliNotCoprime(f"gcd({m}, {n}) != 1")
    if v.n != m * n:
        raise ModulusMismatch(f"{v} is not in E_{m * n}")
    return reduce(v, m), reduce(v, n)


def crt_iso_beta(pair: Sequence[Vertex], m: int, n: int) -> Vertex:
    """Inverse of :func:`crt_iso_alpha`."""
    u, w = pair
    if math.gcd(m, n) != 1:
        raise ModuliNotCoprime(f"gcd({m}, {n}) != 1")
    if u.n != m or w.n != n:
        raise ModulusMismatch(f"expected components mod {m} and {n}")
    a = crt_combine(Residue(u.a, m), Residue(w.a, n)).value
    b = crt_combine(Residue(u.b, m), Residue(w.b, n)).value
    return Vertex(a, b, m * n)
