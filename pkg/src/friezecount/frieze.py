"""Finite windows of friezes over Z/nZ: rule checks, rendering, and I/O.

Entry ``E(d, i)`` sits in row ``d`` at horizontal position ``2*i + d``, so a
four-entry diamond centred between rows has

    b = E(d-1, i+1)
    a = E(d, i)       d = E(d, i+1)
    c = E(d+1, i)

Columns wrap modulo the window period.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .exceptions import InvalidParams, NotSemiclosed
from .fareygraph import Vertex, negate
from .pathcount import Path


class Rule(str, enum.Enum):
    DIAMOND = "DIAMOND"
    TAME = "TAME"
    BOUNDARY = "BOUNDARY"


@dataclass(frozen=True)
class RuleViolation:
    rule: Rule
    location: Tuple[int, int]
    detail: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FriezeWindow:
    n: int
    m: int
    period: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.m + 1:
            raise InvalidParams(f"width {self.m} needs {self.m + 1} rows, got {len(self.rows)}")
        for row in self.rows:
            if len(row) != self.period:
                raise InvalidParams(f"row of length {len(row)} for period {self.period}")
            if any(not 0 <= x < self.n for x in row):
                raise InvalidParams(f"row {row} not reduced mod {self.n}")

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence[int]]) -> "FriezeWindow":
        rows = tuple(tuple(x % n for x in row) for row in rows)
        return cls(n, len(rows) - 1, len(rows[0]), rows)

    def entry(self, d: int, i: int) -> int:
        return self.rows[d][i % self.period]

    def to_text(self) -> str:
        lines = [f"frieze n={self.n} m={self.m} period={self.period}"]
        lines.extend(" ".join(map(str, row)) for row in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FriezeWindow":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "frieze":
            raise InvalidParams(f"not a frieze header: {lines[0]!r}")
        fields = dict(tok.split("=", 1) for tok in head[1:])
        n, m, period = int(fields["n"]), int(fields["m"]), int(fields["period"])
        rows = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
        return cls(n, m, period, rows)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "m": self.m, "period": self.period, "rows": [list(r) for r in self.rows]}
        )

    @classmethod
    def from_json(cls, text: str) -> "FriezeWindow":
        obj = json.loads(text)
        return cls(obj["n"], obj["m"], obj["period"], tuple(tuple(r) for r in obj["rows"]))


def check_boundary(w: FriezeWindow) -> List[RuleViolation]:
    out = []
    for d in (0, w.m):
        for i in range(w.period):
            if w.entry(d, i):
                out.append(RuleViolation(Rule.BOUNDARY, (d, i), ((w.entry(d, i),),)))
    return out


def check_diamond(w: FriezeWindow) -> List[RuleViolation]:
    """Positions of interior diamonds with ``a*d - b*c != 1``."""
    out = []
    for d in range(1, w.m):
        for i in range(w.period):
            a, dd = w.entry(d, i), w.entry(d, i + 1)
            b, c = w.entry(d - 1, i + 1), w.entry(d + 1, i)
            if (a * dd - b * c - 1) % w.n:
                out.append(RuleViolation(Rule.DIAMOND, (d, i), ((b,), (a, dd), (c,))))
    return out


def nine_diamond(w: FriezeWindow, d: int, i: int) -> Tuple[Tuple[int, ...], ...]:
    """3x3 matrix of the nine-entry diamond whose top-left entry is ``E(d, i)``.

    Row ``x`` and column ``y`` of the matrix hold ``E(d + y - x, i + x)``; the
    diamond spans rows ``d - 2`` to ``d + 2``.
    """
    return tuple(tuple(w.entry(d + y - x, i + x) for y in range(3)) for x in range(3))


def _det3(M) -> int:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def check_tame(w: FriezeWindow) -> List[RuleViolation]:
    """Nine-entry diamonds lying inside the window with nonzero determinant."""
    if w.m < 2:
        raise InvalidParams(f"tameness needs width >= 2, got {w.m}")
    out = []
    for d in range(2, w.m - 1):
        for i in range(w.period):
            M = nine_diamond(w, d, i)
            if _det3(M) % w.n:
                out.append(RuleViolation(Rule.TAME, (d, i + 1), M))
    return out


def is_regular(w: FriezeWindow) -> bool:
    if w.m < 2:
        raise InvalidParams(f"regularity needs width >= 2, got {w.m}")
    one = 1 % w.n
    return all(x == one for x in w.rows[1]) and all(x == one for x in w.rows[w.m - 1])


def violations(w: FriezeWindow) -> List[RuleViolation]:
    return check_boundary(w) + check_diamond(w) + check_tame(w)


def _det(u: Vertex, v: Vertex) -> int:
    return (u.a * v.b - u.b * v.a) % u.n


def extend_semiclosed(gamma: Path, terms: int) -> List[Vertex]:
    """``v_0, v_1, ...`` continued by ``v_{j+m} = -v_j`` up to ``terms`` vertices."""
    m = gamma.length
    seq = list(gamma.vertices)
    while len(seq) < terms:
        seq.append(negate(seq[len(seq) - m]))
    return seq[:terms]


def render_from_path(gamma: Path, periods: int = 1) -> FriezeWindow:
    """The regular frieze with entries ``E(d, i) = det(v_i, v_{i+d})``.

    The window covers ``periods`` repetitions of the sign-flip cycle of length
    ``2m``.
    """
    m = gamma.length
    if m < 2:
        raise InvalidParams(f"rendering needs width >= 2, got {m}")
    if periods < 1:
        raise InvalidParams(f"periods must be positive, got {periods}")
    if not gamma.is_semiclosed():
        raise NotSemiclosed(f"{gamma} does not end at {negate(gamma.start)}")
    P = 2 * m * periods
    seq = extend_semiclosed(gamma, P + m)
    rows = tuple(tuple(_det(seq[i], seq[i + d]) for i in range(P)) for d in range(m + 1))
    return FriezeWindow(gamma.n, m, P, rows)


# Reference tame frieze over Z/5Z of width 6, rows read in the E(d, i) layout
_FIG1_ROWS = (
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (2, 4, 3, 1),
    (2, 1, 2, 1),
    (4, 2, 1, 3),
    (2, 3, 2, 3),
    (0, 0, 0, 0),
)


def fig1_fixture() -> FriezeWindow:
    """A tame frieze over Z/5Z of width 6 with horizontal period 4."""
    return FriezeWindow(5, 6, 4, _FIG1_ROWS)


def fig1_staggered_source() -> List[Tuple[int, List[int]]]:
    """The same frieze as printed: per row, the column of its first shown entry and the entries."""
    return [
        (1, [0] * 10),
        (2, [1] * 9),
        (1, [1, 2, 4, 3, 1, 2, 4, 3, 1, 2]),
        (2, [1, 2, 1, 2, 1, 2, 1, 2, 1]),
        (1, [1, 3, 4, 2, 1, 3, 4, 2, 1, 3]),
        (2, [2, 3, 2, 3, 2, 3, 2, 3, 2]),
        (1, [0] * 10),
    ]


def window_from_staggered(n: int, source, period: int) -> FriezeWindow:
    """Convert printed staggered rows (entries two columns apart) into the ``E(d, i)`` layout."""
    rows = []
    for d, (col0, entries) in enumerate(source):
        by_i = {}
        for j, x in enumerate(entries):
            pos = col0 - 1 + 2 * j  # printed column -> horizontal position
            i, odd = divmod(pos - d, 2)
            if odd:
                raise InvalidParams(f"row {d} entry {j} is off the lattice")
            by_i[i % period] = x % n
        rows.append(tuple(by_i[i] for i in range(period)))
    return FriezeWindow(n, len(source) - 1, period, tuple(rows))
