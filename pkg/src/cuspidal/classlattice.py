"""Exact class-order engine for rational cuspidal divisors.

The divisor-indexed matrix Lambda(N) translates eta-quotient exponent
vectors into cuspidal divisor coefficients.  A degree-0 divisor class has
order k, the least positive integer such that k * Lambda(N)^{-1} * C
satisfies the eta-quotient conditions: integrality, two congruences mod 24,
weight zero, and even valuation of the associated product of levels.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .arith import (
    divisors_of,
    euler_phi,
    factor,
    is_prime,
    numerator_of,
    parts,
    prime_divisors,
    valuation,
)
from .cusps import ConsistencyError, RationalCuspDivisor
from .heckediv import EisensteinDatum, NotCovered, build_c_divisor, deg_map

__all__ = [
    "lambda_matrix",
    "lambda_inverse",
    "solve_lambda",
    "mat_vec",
    "mat_mul",
    "r_vector",
    "class_order",
    "is_principal",
    "closed_form_order",
    "kernel_intersection_order",
]

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


@lru_cache(maxsize=None)
def lambda_matrix(n: int) -> Matrix:
    """Lambda(n)_{ij} = (1/24) * n/gcd(d_i, n/d_i) * gcd(d_i, d_j)^2/(d_i d_j),
    indexed by the ascending divisors of n."""
    divs = divisors_of(n)
    rows = []
    for di in divs:
        w = Fraction(n, 24 * math.gcd(di, n // di))
        rows.append(tuple(w * Fraction(math.gcd(di, dj) ** 2, di * dj) for dj in divs))
    return tuple(rows)


def _block_entry(q: int, r: int, m: int, k: int) -> Fraction:
    """Entry (m, k), 1-based, of the prime-power block inverse at q^r."""
    g = q ** min(k - 1, r + 1 - k)
    if m == k:
        kappa = q * q if m in (1, r + 1) else q * q + 1
    elif abs(m - k) == 1:
        kappa = -q
    else:
        kappa = 0
    return Fraction(g * kappa, q**r * (q * q - 1))


@lru_cache(maxsize=None)
def lambda_inverse(n: int) -> Matrix:
    """Lambda(n)^{-1}, built by adjoining one prime power at a time.

    Each prime power q^r contributes a tridiagonal (r+1) x (r+1) block
    pattern scaled against the smaller inverse; the block divisor order
    d_i * q^j is permuted back to ascending divisors at the end.
    """
    inv: list[list[Fraction]] = [[Fraction(24)]]
    divs: list[int] = [1]
    for q, r in factor(n).factors:
        w = len(divs)
        blocks = [[_block_entry(q, r, m, k) for k in range(1, r + 2)] for m in range(1, r + 2)]
        size = w * (r + 1)
        new = [[Fraction(0)] * size for _ in range(size)]
        for bm in range(r + 1):
            for bk in range(r + 1):
                b = blocks[bm][bk]
                if not b:
                    continue
                for i in range(w):
                    row = new[bm * w + i]
                    src = inv[i]
                    for j in range(w):
                        row[bk * w + j] = b * src[j]
        divs = [d * q**j for j in range(r + 1) for d in divs]
        inv = new
    order = sorted(range(len(divs)), key=lambda k: divs[k])
    return tuple(tuple(inv[i][j] for j in order) for i in order)


def solve_lambda(n: int, a: Sequence[Fraction | int]) -> Vector:
    """Solve Lambda(n) x = a by Gaussian elimination over exact rationals.

    Kept as an independent oracle against lambda_inverse.
    """
    divs = divisors_of(n)
    if len(a) != len(divs):
        raise ValueError(f"vector length {len(a)} != number of divisors {len(divs)}")
    size = len(divs)
    m = [list(row) + [Fraction(a[i])] for i, row in enumerate(lambda_matrix(n))]
    for col in range(size):
        piv = next(r for r in range(col, size) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv_p = 1 / m[col][col]
        m[col] = [v * inv_p for v in m[col]]
        for r in range(size):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return tuple(row[size] for row in m)


def mat_vec(m: Matrix, v: Sequence[Fraction | int]) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(size)), Fraction(0)) for j in range(size))
        for i in range(size)
    )


def _as_vector(n: int, a) -> Vector:
    divs = divisors_of(n)
    if isinstance(a, RationalCuspDivisor):
        if a.n != n:
            raise ValueError(f"divisor lives on X0({a.n}), not X0({n})")
        return tuple(Fraction(c) for c in a.as_vector())
    if isinstance(a, Mapping):
        if any(d not in divs for d in a):
            raise ValueError("coefficient keys must divide the level")
        return tuple(Fraction(a.get(d, 0)) for d in divs)
    vec = tuple(Fraction(x) for x in a)
    if len(vec) != len(divs):
        raise ValueError(f"vector length {len(vec)} != number of divisors {len(divs)}")
    return vec


def _exponent_data(datum: EisensteinDatum) -> Fraction:
    """The rational 1/24 * prod(p-1, p|M) * prod(p^2-1, p|rad/M) * (N/rad) / prod(p|L)."""
    n, m = datum.n, datum.m
    _, _, rad = parts(n)
    val = Fraction(1, 24) * (n // rad)
    for p in prime_divisors(m):
        val *= p - 1
    for p in prime_divisors(rad // m):
        val *= p * p - 1
    for p in prime_divisors(datum.l_part):
        val /= p
    return val


def r_vector(datum: EisensteinDatum) -> Vector:
    """Lambda(N)^{-1} applied to the datum's divisor, for m coprime to the
    square support.

    Computed three ways -- per-divisor closed entries, a prime-by-prime
    recursion, and a generic linear solve -- which must agree exactly.
    """
    n, m, dp = datum.n, datum.m, datum.d_part
    sf, sq, _ = parts(n)
    if math.gcd(m, sq) != 1:
        raise ValueError("closed entries need m coprime to the square support")

    scale = _exponent_data(datum)
    big_l = sq // dp
    closed = []
    for delta in divisors_of(n):
        val = 1
        for p in prime_divisors(m):
            val *= 1 if delta % p else -1
        for p in prime_divisors((sf // m) * dp):
            e = valuation(delta, p)
            val *= p if e == 0 else (-1 if e == 1 else 0)
        for p in prime_divisors(big_l):
            e = valuation(delta, p)
            val *= (p, -(p + 1), 1, 0)[min(e, 3)]
        closed.append(Fraction(val) / scale)
    closed_vec = tuple(closed)

    vec: list[Fraction] = [Fraction(24)]
    divs: list[int] = [1]
    for q, r in factor(n).factors:
        if r == 1 and m % q == 0:
            s = Fraction(1, q - 1)
            vec = [x * s for x in vec] + [-x * s for x in vec]
        elif r == 1:
            s = Fraction(1, q * q - 1)
            vec = [q * x * s for x in vec] + [-x * s for x in vec]
        elif dp % q:
            s = Fraction(1, q ** (r - 2) * (q * q - 1))
            vec = (
                [q * x * s for x in vec]
                + [-(q + 1) * x * s for x in vec]
                + [x * s for x in vec]
                + [Fraction(0)] * (len(vec) * (r - 2))
            )
        else:
            s = Fraction(1, q ** (r - 1) * (q * q - 1))
            vec = (
                [q * x * s for x in vec]
                + [-x * s for x in vec]
                + [Fraction(0)] * (len(vec) * (r - 1))
            )
        divs = [d * q**j for j in range(r + 1) for d in divs]
    order = sorted(range(len(divs)), key=lambda k: divs[k])
    recursive_vec = tuple(vec[i] for i in order)

    solved_vec = solve_lambda(n, _as_vector(n, build_c_divisor(datum)))

    if not (closed_vec == recursive_vec == solved_vec):
        raise ConsistencyError(f"exponent-vector paths disagree for {datum}")
    return closed_vec


def class_order(n: int, a) -> int:
    """Order of the class of a degree-0 divisor sum a_d (P_d) on X0(n).

    Every eta-quotient condition admits the multiples of one modulus, so the
    order is the lcm of the per-condition minimal moduli for Lambda^{-1} a.
    """
    vec = _as_vector(n, a)
    divs = divisors_of(n)
    degree = sum(vec[i] * euler_phi(math.gcd(d, n // d)) for i, d in enumerate(divs))
    if degree != 0:
        raise ValueError(f"divisor has degree {degree}, expected 0")
    r = mat_vec(lambda_inverse(n), vec)
    if sum(r) != 0:
        raise ValueError("exponent vector has nonzero weight; no multiple is principal")
    k = math.lcm(*(x.denominator for x in r))
    s1 = sum((x * d for x, d in zip(r, divs)), Fraction(0)) / 24
    k = math.lcm(k, s1.denominator)
    s2 = sum((x * (n // d) for x, d in zip(r, divs)), Fraction(0)) / 24
    k = math.lcm(k, s2.denominator)
    for p in prime_divisors(n):
        v = sum((x * valuation(d, p) for x, d in zip(r, divs)), Fraction(0)) / 2
        k = math.lcm(k, v.denominator)
    return k


def is_principal(n: int, a) -> bool:
    return class_order(n, a) == 1


def closed_form_order(datum: EisensteinDatum) -> int:
    """Closed-form order of the datum's divisor class, where available.

    Raises NotCovered in the one excluded regime: after reducing the primes
    shared by m and the square support, L = 1 while the reduced level is
    still not squarefree.
    """
    n, m, dp = datum.n, datum.m, datum.d_part
    _, sq, _ = parts(n)
    a = math.gcd(m, sq)
    b = math.prod(p ** (valuation(n, p) - 1) for p in prime_divisors(a))
    n2, d2 = n // b, dp // a
    k2 = valuation(n2, 2)
    if n2 == 2**k2 and k2 >= 2:
        return numerator_of(Fraction(2) ** (k2 - 4))
    reduced = EisensteinDatum(n2, m, d2)
    _, sq2, _ = parts(n2)
    if reduced.l_part == 1 and sq2 != 1:
        raise NotCovered(f"no closed form for {datum}: L = 1 at non-squarefree level {n2}")
    h = 2 if (is_prime(m) and m % 8 == 1 and n2 in (m, 2 * m)) else 1
    return numerator_of(_exponent_data(reduced) * h)


def _kernel_prediction(kind: str, datum: EisensteinDatum, p: int) -> int:
    m, n = datum.m, datum.n
    special = is_prime(m) and m % 8 == 1
    if kind == "minus":
        return 2 if special and n in (m, 2 * m) else 1
    if kind == "plus":
        return 2 if special and n == 2 * m else 1
    return 1


def kernel_intersection_order(kind: str, datum: EisensteinDatum, p: int) -> int:
    """Order of ker(level-raising map) meet the cyclic group of the datum's class.

    Computed as order(C) / order(image class); cross-checked against the
    2-versus-1 prediction and raising on any mismatch.
    """
    if datum.d_part != 1:
        raise ValueError("kernel intersections are stated for d_part = 1 data")
    n, m = datum.n, datum.m
    sf, sq, _ = parts(n)
    compatible = {
        "minus": m % p == 0,
        "plus": (sf % p == 0) and (m % p != 0),
        "plain": sq % p == 0,
    }
    if kind not in compatible:
        raise ValueError(f"unknown map kind {kind!r}")
    if not compatible[kind]:
        raise ValueError(f"map {kind!r} is not compatible with p={p} for {datum}")
    div = build_c_divisor(datum)
    n1 = class_order(n, div)
    n2 = class_order(n * p, deg_map(kind, div, p))
    if n1 % n2:
        raise ConsistencyError(f"image order {n2} does not divide source order {n1}")
    k = n1 // n2
    expected = _kernel_prediction(kind, datum, p)
    if k != expected:
        raise ConsistencyError(
            f"kernel intersection for {kind} at {datum}, p={p}: got {k}, predicted {expected}"
        )
    return k
