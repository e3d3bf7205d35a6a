"""Exact arithmetic in Z/nZ: factorization, units, CRT, valuations, q-analogues.

Everything here works on Python ints and :class:`fractions.Fraction`, so no
count or intermediate value is ever rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from .exceptions import InvalidParams, ModuliNotCoprime, NotAUnit

INFINITY = math.inf


@dataclass(frozen=True, order=True)
class Residue:
    """An element of Z/nZ stored as its least non-negative representative."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidParams(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise InvalidParams(f"{self.value} is not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True, order=True)
class PrimePower:
    p: int
    r: int

    @property
    def value(self) -> int:
        return self.p**self.r


Factorization = List[PrimePower]


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` by trial division, primes ascending."""
    if n < 1:
        raise InvalidParams(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            r = 0
            while n % d == 0:
                n //= d
                r += 1
            out.append(PrimePower(d, r))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(PrimePower(n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [PrimePower(n, 1)]


def prime_divisors(n: int) -> List[int]:
    return [pp.p for pp in factorize(n)]


def valuation(a: int, p: int) -> Union[int, float]:
    """Exponent of ``p`` in ``a``; :data:`INFINITY` for ``a == 0``."""
    if a == 0:
        return INFINITY
    a = abs(a)
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return e


def totient(n: int) -> int:
    if n < 1:
        raise InvalidParams(f"totient undefined for {n}")
    out = n
    for pp in factorize(n):
        out = out // pp.p * (pp.p - 1)
    return out


def unit_values(n: int) -> List[int]:
    """Integers in ``range(n)`` coprime to ``n`` (``[0]`` for ``n == 1``)."""
    if n == 1:
        return [0]
    return [a for a in range(n) if math.gcd(a, n) == 1]


def units(n: int) -> List[Residue]:
    return [Residue(a, n) for a in unit_values(n)]


def inverse(a: Residue) -> Residue:
    if math.gcd(a.value, a.modulus) != 1:
        raise NotAUnit(f"{a} is not invertible")
    if a.modulus == 1:
        return a
    return Residue(pow(a.value, -1, a.modulus), a.modulus)


def crt_combine(a1: Residue, a2: Residue) -> Residue:
    """The unique residue mod ``m*n`` congruent to ``a1`` mod m and ``a2`` mod n."""
    m, n = a1.modulus, a2.modulus
    if math.gcd(m, n) != 1:
        raise ModuliNotCoprime(f"gcd({m}, {n}) != 1")
    if m == 1 or n == 1:
        return Residue.of(a1.value if n == 1 else a2.value, m * n)
    # x = a1 + m * t with m*t = a2 - a1 (mod n)
    t = (a2.value - a1.value) * pow(m, -1, n) % n
    return Residue(a1.value + m * t, m * n)


def q_bracket(k: int, q) -> Fraction:
    """``[k]_q = (q^k - 1)/(q - 1)``, equal to ``k`` at ``q == 1``.

    ``q`` may be any positive rational; the result is an exact Fraction.
    """
    if k < 0:
        raise InvalidParams(f"q_bracket needs k >= 0, got {k}")
    q = Fraction(q)
    if q <= 0:
        raise InvalidParams(f"q_bracket needs q > 0, got {q}")
    if q == 1:
        return Fraction(k)
    return (q**k - 1) / (q - 1)


def q_binom2(k: int, q: int) -> int:
    """Gaussian binomial ``binom(k, 2)_q`` for integer ``q >= 1``."""
    if k < 1:
        raise InvalidParams(f"q_binom2 needs k >= 1, got {k}")
    if q < 1:
        raise InvalidParams(f"q_binom2 needs integer q >= 1, got {q}")
    if q == 1:
        return k * (k - 1) // 2
    num = (q**k - 1) * (q ** (k - 1) - 1)
    den = (q - 1) * (q * q - 1)
    quo, rem = divmod(num, den)
    assert rem == 0, (k, q)
    return quo
