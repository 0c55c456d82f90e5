"""Exact integer arithmetic: factorization, multiplicative splits, totients.

Everything here is pure and exact (plain integers and fractions.Fraction).
Levels in this package are desk-scale, so trial division is plenty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Factored",
    "factor",
    "parts",
    "euler_phi",
    "omega",
    "divisors_of",
    "valuation",
    "numerator_of",
    "is_prime",
    "prime_divisors",
    "primes_upto",
]


@dataclass(frozen=True)
class Factored:
    """A positive integer with its prime factorization, primes ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@lru_cache(maxsize=None)
def factor(n: int) -> Factored:
    """Factor a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}: expected a positive integer")
    m, p = n, 2
    fs: list[tuple[int, int]] = []
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fs.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        fs.append((m, 1))
    return Factored(n, tuple(fs))


def parts(n: int | Factored) -> tuple[int, int, int]:
    """Split n into (squarefree part, square support, radical).

    The squarefree part multiplies the primes of valuation exactly 1, the
    square support the primes of valuation >= 2 (each once), and the radical
    every prime divisor; radical = squarefree * square support.
    """
    f = n if isinstance(n, Factored) else factor(n)
    sf = math.prod(p for p, e in f.factors if e == 1)
    sq = math.prod(p for p, e in f.factors if e >= 2)
    return sf, sq, sf * sq


def euler_phi(n: int) -> int:
    """Euler's totient."""
    return math.prod(p ** (e - 1) * (p - 1) for p, e in factor(n).factors)


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factor(n).factors)


@lru_cache(maxsize=None)
def divisors_of(n: int) -> tuple[int, ...]:
    """All divisors of n, ascending."""
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def valuation(n: int, p: int) -> int:
    """Exponent of the prime p in n >= 1."""
    if n < 1:
        raise ValueError(f"valuation of {n} undefined; expected n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def numerator_of(r: Fraction | int) -> int:
    """Positive numerator of r in lowest terms (the order of the associated cyclic group)."""
    return abs(Fraction(r).numerator)


def is_prime(n: int) -> bool:
    return n >= 2 and factor(n).factors == ((n, 1),)


def prime_divisors(n: int) -> tuple[int, ...]:
    return factor(n).primes


def primes_upto(limit: int) -> tuple[int, ...]:
    """Primes <= limit, ascending."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)
