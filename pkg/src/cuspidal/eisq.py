"""Weight-2 Eisenstein q-expansions and their residues at the cusps of X0(N).

Series are built prime by prime from the level-p base series, each new
prime acting through one of five level-raising substitutions; residues
follow the same recursion through the ramification of the two coverings.
Truncations carry their precision, and operators shrink it explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors_of, euler_phi, factor, is_prime, omega, parts, prime_divisors, primes_upto, valuation
from .cusps import ConsistencyError
from .heckediv import EisensteinDatum, epsilon

__all__ = [
    "QExpansion",
    "ResidueTable",
    "base_epp",
    "build_qexp",
    "hecke_on_qexp",
    "level_map",
    "eigen_check",
    "EigenReport",
    "residue_table",
    "residue_closed",
]


@dataclass(frozen=True)
class QExpansion:
    """Exact rational q-expansion a_0 + a_1 q + ... + a_prec q^prec at one level."""

    n: int
    prec: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.prec < 0 or len(self.coeffs) != self.prec + 1:
            raise ValueError("coefficient count must equal prec + 1")

    def a(self, k: int) -> Fraction:
        return self.coeffs[k]

    def truncate(self, prec: int) -> "QExpansion":
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return QExpansion(self.n, prec, self.coeffs[: prec + 1])

    def _combine(self, other: "QExpansion", sign: int) -> "QExpansion":
        if self.n != other.n:
            raise ValueError("series live at different levels")
        prec = min(self.prec, other.prec)
        return QExpansion(
            self.n, prec,
            tuple(a + sign * b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __add__(self, other: "QExpansion") -> "QExpansion":
        return self._combine(other, 1)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self._combine(other, -1)

    def __rmul__(self, k) -> "QExpansion":
        s = Fraction(k)
        return QExpansion(self.n, self.prec, tuple(s * a for a in self.coeffs))


def _dilate(coeffs: tuple[Fraction, ...], m: int) -> tuple[Fraction, ...]:
    """Coefficients of f(q^m) to the same precision: a_{k/m}, zero off multiples."""
    return tuple(coeffs[k // m] if k % m == 0 else Fraction(0) for k in range(len(coeffs)))


def base_epp(p: int, prec: int) -> QExpansion:
    """The weight-2 Eisenstein series at prime level p normalized to
    (p-1)/24 + sum_{n>=1} (sum of divisors of n coprime to p) q^n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = [Fraction(p - 1, 24)]
    for k in range(1, prec + 1):
        coeffs.append(Fraction(sum(d for d in divisors_of(k) if d % p)))
    return QExpansion(p, prec, tuple(coeffs))


def build_qexp(datum: EisensteinDatum, prec: int) -> QExpansion:
    """q-expansion of the Eisenstein series attached to a datum.

    The base is the prime-power series of the smallest prime dividing m*L;
    the remaining primes of n are adjoined in ascending order, each through
    the substitution matching its eigenvalue pattern.
    """
    n, m, dp = datum.n, datum.m, datum.d_part
    base = min(prime_divisors(m * datum.l_part))
    coeffs = base_epp(base, prec).coeffs
    if valuation(n, base) >= 2 and m % base:
        coeffs = tuple(a - b for a, b in zip(coeffs, _dilate(coeffs, base)))
    for q, r in factor(n).factors:
        if q == base:
            continue
        dil = _dilate(coeffs, q)
        if r == 1 and m % q == 0:
            coeffs = tuple(a - q * b for a, b in zip(coeffs, dil))
        elif r == 1:
            coeffs = tuple(a - b for a, b in zip(coeffs, dil))
        elif dp % q:
            dil2 = _dilate(coeffs, q * q)
            coeffs = tuple(a - (q + 1) * b + q * c for a, b, c in zip(coeffs, dil, dil2))
        elif m % q == 0:
            coeffs = tuple(a - q * b for a, b in zip(coeffs, dil))
        else:
            coeffs = tuple(a - b for a, b in zip(coeffs, dil))
    return QExpansion(n, prec, coeffs)


def hecke_on_qexp(f: QExpansion, q: int) -> QExpansion:
    """Level-q Hecke operator on a q-expansion: b_k = a_{qk} + q a_{k/q} off
    the level, b_k = a_{qk} on it.  Output precision is floor(prec / q)."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    prec = f.prec // q
    if f.n % q == 0:
        coeffs = tuple(f.coeffs[q * k] for k in range(prec + 1))
    else:
        coeffs = tuple(
            f.coeffs[q * k] + q * (f.coeffs[k // q] if k % q == 0 else Fraction(0))
            for k in range(prec + 1)
        )
    return QExpansion(f.n, prec, coeffs)


def level_map(kind: str, f: QExpansion, p: int) -> QExpansion:
    """The level-raising maps on forms: plus sends f(z) to f(z) - p f(pz),
    minus to f(z) - f(pz), plain leaves the expansion unchanged."""
    dil = _dilate(f.coeffs, p)
    if kind == "plus":
        coeffs = tuple(a - p * b for a, b in zip(f.coeffs, dil))
    elif kind == "minus":
        coeffs = tuple(a - b for a, b in zip(f.coeffs, dil))
    elif kind == "plain":
        coeffs = f.coeffs
    else:
        raise ValueError(f"unknown map kind {kind!r}")
    return QExpansion(f.n * p, f.prec, coeffs)


@dataclass(frozen=True)
class EigenFact:
    prime: int
    on_level: bool
    eigenvalue: int
    checked_prec: int
    first_bad: int | None

    @property
    def ok(self) -> bool:
        return self.first_bad is None


@dataclass(frozen=True)
class EigenReport:
    datum: EisensteinDatum
    prec: int
    checks: tuple[EigenFact, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


def eigen_check(datum: EisensteinDatum, prec: int = 60, qmax: int = 13) -> EigenReport:
    """Verify the eigenvalue pattern on the series: q+1 for primes q off the
    level (q <= qmax), and the datum's eigenvalue at every prime of the level."""
    if prec < 2 * qmax:
        raise ValueError("need prec >= 2 * qmax for a meaningful check")
    f = build_qexp(datum, prec)
    checks = []
    for q in primes_upto(qmax):
        if datum.n % q == 0:
            continue
        checks.append(_eigen_fact(f, q, q + 1, on_level=False))
    for p in prime_divisors(datum.n):
        checks.append(_eigen_fact(f, p, epsilon(datum, p), on_level=True))
    return EigenReport(datum, prec, tuple(checks))


def _eigen_fact(f: QExpansion, q: int, eigenvalue: int, on_level: bool) -> EigenFact:
    g = hecke_on_qexp(f, q)
    bad = None
    for k in range(g.prec + 1):
        if g.coeffs[k] != eigenvalue * f.coeffs[k]:
            bad = k
            break
    return EigenFact(q, on_level, eigenvalue, g.prec, bad)


@dataclass(frozen=True)
class ResidueTable:
    """Residue of a series at the cusps of X0(n), one value per level."""

    n: int
    res: tuple[tuple[int, Fraction], ...]

    def at_level(self, d: int) -> Fraction:
        for dd, v in self.res:
            if dd == d:
                return v
        raise KeyError(f"{d} is not a level of X0({self.n})")

    def weighted_sum(self) -> Fraction:
        return sum(
            (euler_phi(math.gcd(d, self.n // d)) * v for d, v in self.res), Fraction(0)
        )


def residue_table(datum: EisensteinDatum) -> ResidueTable:
    """Residues of the datum's series at every cusp level, built prime by
    prime with the same classification as build_qexp.  The weighted residue
    sum over all cusps must vanish and is checked on construction."""
    n, m, dp = datum.n, datum.m, datum.d_part
    table: dict[int, Fraction] = {1: Fraction(1)}
    for q, r in factor(n).factors:
        new: dict[int, Fraction] = {}
        for d, prev in table.items():
            if r == 1 and m % q == 0:
                new[d] = (q - 1) * prev
                new[q * d] = (1 - q) * prev
            elif r == 1:
                new[d] = Fraction(q * q - 1, q) * prev
                new[q * d] = Fraction(0)
            elif dp % q:
                new[d] = q ** (r - 2) * Fraction((q * q - 1) * (q - 1), q) * prev
                new[q * d] = q ** (r - 2) * Fraction(1 - q * q, q) * prev
                for a in range(2, r + 1):
                    new[q**a * d] = Fraction(0)
            elif m % q == 0:
                new[d] = q ** (r - 1) * (q - 1) * prev
                new[q * d] = q ** (r - 2) * (1 - q) * prev
                for a in range(2, r + 1):
                    new[q**a * d] = q ** max(r - 2 * a, 0) * (1 - q) * prev
            else:
                new[d] = q ** (r - 2) * (q * q - 1) * prev
                for a in range(1, r + 1):
                    new[q**a * d] = Fraction(0)
        table = new
    out = ResidueTable(n, tuple(sorted((d, Fraction(v)) for d, v in table.items())))
    if out.weighted_sum() != 0:
        raise ConsistencyError(f"weighted residue sum is nonzero for {datum}")
    return out


def residue_closed(datum: EisensteinDatum) -> tuple[Fraction, Fraction]:
    """Closed residues at the cusp at infinity (level n) and at level m*L.

    At infinity the residue vanishes unless m is the full radical, where it
    is the product of (1 - p) over the primes of n.
    """
    n, m = datum.n, datum.m
    sf, sq, rad = parts(n)
    if m == rad:
        at_inf = Fraction(math.prod(1 - p for p in prime_divisors(n)))
    else:
        at_inf = Fraction(0)
    num = 1
    for p in prime_divisors(m):
        num *= p - 1
    for p in prime_divisors(rad // m):
        num *= p * p - 1
    for p in prime_divisors(sq):
        num *= p ** (valuation(n, p) - 2)
    den = math.prod(prime_divisors((sf // math.gcd(m, sf)) * datum.l_part))
    at_ml = (-1) ** omega(m * datum.l_part) * Fraction(num, den)
    return at_inf, at_ml
