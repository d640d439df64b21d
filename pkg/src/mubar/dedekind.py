"""Dedekind sums, Dedekind-Rademacher sums and the integers c(q, p).

Every sum runs over the residue system mu = 0, 1, ..., p - 1. Terms are
accumulated as integer numerators over a common denominator, so the result
is exact; the sawtooth function in :mod:`mubar.numeric` is only used by the
test oracles, which sum the definition term by term.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .exceptions import ConsistencyError, InputError
from .numeric import RationalLike, as_rational, fractional_part

__all__ = [
    "c_invariant",
    "c_invariant_cotangent",
    "dedekind_rademacher_sum",
    "dedekind_sum",
]

# Below this modulus a plain Python loop beats numpy's call overhead.
_VECTOR_THRESHOLD = 64
# Products of numerators must stay clear of int64 overflow.
_INT64_SAFE = 2**62


def _require_int(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InputError(f"{name} must be an integer, got {value!r}")
    return int(value)


def _check_modulus(p: int) -> int:
    p = _require_int("p", p)
    if p <= 0:
        raise InputError(f"modulus must be positive, got p={p}")
    return p


def _check_coprime(q: int, p: int) -> None:
    if math.gcd(q, p) != 1:
        raise InputError(f"arguments not coprime: gcd({q}, {p}) = {math.gcd(q, p)}")


def _paired_sawtooth_sum(p: int, first: tuple[int, int, int], second: tuple[int, int, int]) -> int:
    """Sum of ``S1(mu) * S2(mu)`` for mu in range(p), scaled by ``4 * M1 * M2``.

    ``first = (k, c, M)`` stands for the sawtooth of ``(k*mu + c) / M``, whose
    value is ``(2r - M) / (2M)`` with ``r = (k*mu + c) mod M``, or 0 if r = 0.
    """
    k1, c1, m1 = first
    k2, c2, m2 = second
    if p >= _VECTOR_THRESHOLD and p * m1 * m2 < _INT64_SAFE and max(k1, k2) * p + max(c1, c2) < _INT64_SAFE:
        mu = np.arange(p, dtype=np.int64)
        r1 = (k1 * mu + c1) % m1
        r2 = (k2 * mu + c2) % m2
        n1 = np.where(r1 == 0, 0, 2 * r1 - m1)
        n2 = np.where(r2 == 0, 0, 2 * r2 - m2)
        return int(np.dot(n1, n2))
    total = 0
    for mu in range(p):
        r1 = (k1 * mu + c1) % m1
        if r1 == 0:
            continue
        r2 = (k2 * mu + c2) % m2
        if r2 == 0:
            continue
        total += (2 * r1 - m1) * (2 * r2 - m2)
    return total


def dedekind_sum(q: int, p: int) -> Fraction:
    """Classical Dedekind sum ``s(q, p)``, extended to negative q as an odd function."""
    q = _require_int("q", q)
    p = _check_modulus(p)
    if q == 0 and p != 1:
        raise InputError(f"arguments not coprime: gcd(0, {p}) = {p}")
    _check_coprime(q, p)
    if q < 0:
        return -dedekind_sum(-q, p)
    if p == 1:
        return Fraction(0)
    # s(q, p) only depends on q mod p.
    q %= p
    total = _paired_sawtooth_sum(p, (1, 0, p), (q, 0, p))
    return Fraction(total, 4 * p * p)


def dedekind_rademacher_sum(q: int, p: int, x: RationalLike, y: RationalLike) -> Fraction:
    """Dedekind-Rademacher sum ``s(q, p; x, y)`` for rational shifts x, y.

    Only the classes of x and y mod 1 matter; both are reduced before the
    summation.
    """
    q = _require_int("q", q)
    p = _check_modulus(p)
    if q <= 0:
        raise InputError(f"q must be positive, got q={q}")
    _check_coprime(q, p)
    x = fractional_part(as_rational(x))
    y = fractional_part(as_rational(y))
    u, v = y.numerator, y.denominator
    s_, t = x.numerator, x.denominator
    # (mu + y)/p = (v*mu + u)/(p*v)
    # q(mu + y)/p + x = (q*t*v*mu + q*t*u + s*p*v)/(p*v*t)
    first = (v, u, p * v)
    second = ((q * t * v) % (p * v * t), (q * t * u + s_ * p * v) % (p * v * t), p * v * t)
    total = _paired_sawtooth_sum(p, first, second)
    return Fraction(total, 4 * (p * v) * (p * v * t))


def c_invariant(q: int, p: int) -> int:
    """The integer ``c(q, p) = -4 s(q, p) + 8 s(q, 2p)`` for odd q.

    Signs extend by ``c(q, p) = sign(pq) c(|q|, |p|)``.
    """
    q = _require_int("q", q)
    p = _require_int("p", p)
    if q % 2 == 0:
        raise InputError(f"c(q, p) needs odd q, got q={q}")
    if p == 0:
        raise InputError("c(q, p) needs p != 0")
    _check_coprime(q, p)
    sign = 1 if (p > 0) == (q > 0) else -1
    aq, ap = abs(q), abs(p)
    value = -4 * dedekind_sum(aq, ap) + 8 * dedekind_sum(aq % (2 * ap), 2 * ap)
    if value.denominator != 1:
        raise ConsistencyError(f"c({q}, {p}) = {value} is not an integer")
    return sign * value.numerator


def c_invariant_cotangent(q: int, p: int) -> float:
    """Floating cotangent-sum evaluation of ``c(q, p)`` for positive q, p.

    Kept as an independent cross-check of :func:`c_invariant`.
    """
    q = _require_int("q", q)
    p = _check_modulus(p)
    if q <= 0 or q % 2 == 0:
        raise InputError(f"q must be odd and positive, got q={q}")
    _check_coprime(q, p)
    two_p = 2 * p
    total = 0.0
    for k in range(1, two_p, 2):
        theta1 = math.pi * k / two_p
        theta2 = math.pi * ((q * k) % two_p) / two_p
        total += (math.cos(theta1) / math.sin(theta1)) * (math.cos(theta2) / math.sin(theta2))
    return total / p
