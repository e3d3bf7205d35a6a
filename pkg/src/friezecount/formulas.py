"""Closed-form frieze counts over Z/nZ.

All assembly happens over :class:`fractions.Fraction`; a result that fails to
be an integer raises :class:`NonIntegerResult` instead of being rounded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InvalidParams, NonIntegerResult
from .modring import factorize, is_prime, q_binom2, q_bracket


class FriezeKind(str, enum.Enum):
    TAME = "tame"
    REGULAR = "regular"


@dataclass(frozen=True)
class FriezeCountQuery:
    n: int
    m: int
    kind: FriezeKind

    def __post_init__(self):
        if self.m < 2:
            raise InvalidParams(f"width must be >= 2, got {self.m}")
        if self.n < 1:
            raise InvalidParams(f"modulus must be >= 1, got {self.n}")

    def formula(self) -> int:
        if self.kind == FriezeKind.TAME:
            return tame_count_formula(self.n, self.m)
        return regular_count_formula(self.n, self.m)


def _exact(value, context: str) -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise NonIntegerResult(f"{context} evaluated to {value}")
    return value.numerator


def _check_pm(p: int, m: int) -> None:
    if not is_prime(p):
        raise InvalidParams(f"{p} is not prime")
    if m < 2:
        raise InvalidParams(f"width must be >= 2, got {m}")


def _tame_factor(p: int, r: int, m: int) -> int:
    num = p ** ((r - 1) * (m - 1)) * (p ** (m - 1) + (-1) ** m) * (p - 1)
    return _exact(Fraction(num, p + 1), f"tame factor p={p} r={r} m={m}")


def tame_count_formula(n: int, m: int) -> int:
    """Number of tame friezes of width ``m`` over Z/nZ."""
    if n < 1 or m < 2:
        raise InvalidParams(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    out = 1
    for pp in factorize(n):
        out *= _tame_factor(pp.p, pp.r, m)
    return out


def tame_count_field(p: int, m: int) -> int:
    _check_pm(p, m)
    return _exact(Fraction((p ** (m - 1) + (-1) ** m) * (p - 1), p + 1), f"field count p={p}")


def phi_m(p: int, r: int, m: int) -> int:
    """Tame regular friezes of width ``m`` over Z/p^rZ."""
    _check_pm(p, m)
    if r < 1:
        raise InvalidParams(f"need r >= 1, got {r}")
    # the leading power has a negative exponent when m == 2
    lead = Fraction(p) ** ((r - 1) * (m - 3))
    if m % 2:
        value = lead * q_bracket((m - 1) // 2, p * p)
    else:
        k = m // 2
        binom = q_binom2(k, p)
        if k % 2 == 0 and p != 2:
            value = lead * (p - 1) * binom
        elif k % 2 == 0 and p == 2 and r != 1:
            value = lead * ((p - 1) * binom + p ** (k - 1) - 1)
        else:
            bracket = q_bracket(r - 1, Fraction(p) ** (2 - k))
            value = lead * ((p - 1) * (binom + bracket) + p ** (k - 1))
    return _exact(value, f"Phi_{m}({p}^{r})")


def lead_times_bracket_sum(p: int, r: int, k: int) -> Fraction:
    """``p^((r-1)(2k-3)) * [r-1]_{p^(2-k)}`` as an explicit sum of powers of p."""
    return sum(
        (Fraction(p) ** ((r - 1) * (2 * k - 3) - (k - 2) * j) for j in range(r - 1)),
        Fraction(0),
    )


def regular_count_formula(n: int, m: int) -> int:
    """Number of tame regular friezes of width ``m`` over Z/nZ."""
    if n < 1 or m < 2:
        raise InvalidParams(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    out = 1
    for pp in factorize(n):
        out *= phi_m(pp.p, pp.r, m)
    return out


def phi_field(p: int, m: int) -> int:
    """Tame regular friezes of width ``m`` over the field Z/pZ."""
    _check_pm(p, m)
    if m % 2:
        return _exact(q_bracket((m - 1) // 2, p * p), "odd width")
    k = m // 2
    if k % 2 == 0 and p != 2:
        return (p - 1) * q_binom2(k, p)
    return (p - 1) * q_binom2(k, p) + p ** (k - 1)


def z_closed_form(p: int, r: int, k: int) -> int:
    """Closed form for the number of Omega-lifts ending at ``eps/0`` in E_{p^r}."""
    if not is_prime(p):
        raise InvalidParams(f"{p} is not prime")
    if r < 1 or k < 1:
        raise InvalidParams(f"need r, k >= 1, got r={r}, k={k}")
    bracket = q_bracket(r - 1, Fraction(p) ** (2 - k))
    value = Fraction(p) ** ((r - 1) * (2 * k - 2) + 1) * ((p - 1) * bracket + p ** (k - 1))
    return _exact(value, f"Z_{k}({r}) at p={p}")


def w_closed_form(r: int, k: int) -> int:
    """Closed form for the W-family count (p = 2, k even, r > 1)."""
    if k % 2 or r < 2:
        raise InvalidParams(f"need k even and r >= 2, got r={r}, k={k}")
    return 2 ** ((r - 2) * (2 * k - 2)) * 2 ** (2 * k - 1) * (2 ** (k - 1) - 1)
