"""Seifert data, solutions of the coefficient equation and corpus enumeration."""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .exceptions import ConsistencyError, InputError

__all__ = [
    "CoefficientVector",
    "SeifertData",
    "alternate_coefficients",
    "enumerate_corpus",
    "normalize_even",
    "solve_coefficients",
    "validate",
]


@dataclass(frozen=True)
class SeifertData:
    """Multiplicities of a Seifert fibered homology sphere Sigma(a1, ..., an).

    Build instances with :func:`validate`; the constructor does not re-check.
    If one multiplicity is even it sits in position 0.
    """

    a: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def product(self) -> int:
        return math.prod(self.a)

    @property
    def is_even(self) -> bool:
        return self.a[0] % 2 == 0

    @property
    def case(self) -> str:
        return "even" if self.is_even else "odd"

    def complement(self, i: int) -> int:
        """``a1 * ... * an / a_i``."""
        return self.product // self.a[i]

    def __str__(self) -> str:
        return "Sigma(" + ",".join(str(x) for x in self.a) + ")"


@dataclass(frozen=True)
class CoefficientVector:
    """Integers b with ``sum(b_i * A / a_i) == 1``, A the product of the a_i."""

    b: tuple[int, ...]
    even_normalized: bool = False

    def __iter__(self) -> Iterator[int]:
        return iter(self.b)

    def __len__(self) -> int:
        return len(self.b)

    def __getitem__(self, i: int) -> int:
        return self.b[i]


def validate(raw: Sequence[int]) -> SeifertData:
    """Check the multiplicities and move the even one (if any) to the front."""
    a = []
    for x in raw:
        if isinstance(x, bool) or not isinstance(x, int):
            raise InputError(f"multiplicities must be integers, got {x!r}")
        a.append(int(x))
    if len(a) < 3:
        raise InputError(f"need at least 3 multiplicities, got {len(a)}")
    for x in a:
        if x < 2:
            raise InputError(f"multiplicities must be >= 2, got {x}")
    for (i, x), (j, y) in itertools.combinations(enumerate(a), 2):
        g = math.gcd(x, y)
        if g != 1:
            raise InputError(f"multiplicities not pairwise coprime: gcd({x}, {y}) = {g}")
    evens = [i for i, x in enumerate(a) if x % 2 == 0]
    if evens:
        i = evens[0]
        a = [a[i]] + a[:i] + a[i + 1:]
    return SeifertData(tuple(a))


def _residual_first(Y: SeifertData, b_rest: Sequence[int]) -> int:
    """Solve the coefficient equation for b_1 given b_2, ..., b_n."""
    rest = sum(bi * Y.complement(i) for i, bi in enumerate(b_rest, start=1))
    q, r = divmod(1 - rest, Y.complement(0))
    if r:
        raise ConsistencyError(f"{Y}: b_1 is not integral for b_2.. = {tuple(b_rest)}")
    return q


def _is_even_normalized(Y: SeifertData, b: Sequence[int]) -> bool:
    return Y.is_even and all((ai - bi) % 2 == 1 for ai, bi in zip(Y.a, b))


def _check_equation(Y: SeifertData, b: Sequence[int]) -> None:
    total = sum(bi * Y.complement(i) for i, bi in enumerate(b))
    if total != 1:
        raise ConsistencyError(f"{Y}: sum b_i A/a_i = {total}, expected 1")


def solve_coefficients(Y: SeifertData) -> CoefficientVector:
    """Canonical solution: b_i in (0, a_i) for i >= 2, b_1 solved exactly."""
    rest = [pow(Y.complement(i) % Y.a[i], -1, Y.a[i]) for i in range(1, Y.n)]
    b = (_residual_first(Y, rest), *rest)
    _check_equation(Y, b)
    return CoefficientVector(b, _is_even_normalized(Y, b))


def normalize_even(Y: SeifertData, b: CoefficientVector) -> CoefficientVector:
    """Shift b_2, ..., b_n by +-a_i until every a_i - b_i is odd (even case only)."""
    if not Y.is_even:
        raise InputError(f"{Y} has no even multiplicity; normalization applies to the even case")
    rest = []
    for ai, bi in zip(Y.a[1:], b.b[1:]):
        if bi % 2:
            # a_i is odd, so either shift flips parity; keep |b_i| small.
            bi = bi - ai if abs(bi - ai) < abs(bi + ai) else bi + ai
        rest.append(bi)
    new = (_residual_first(Y, rest), *rest)
    _check_equation(Y, new)
    if not _is_even_normalized(Y, new):
        raise ConsistencyError(f"{Y}: normalization left an even a_i - b_i in {new}")
    return CoefficientVector(new, True)


def alternate_coefficients(Y: SeifertData, b: CoefficientVector, shifts: Sequence[int]) -> CoefficientVector:
    """Another solution: b_i -> b_i + k_i a_i for i >= 2, with b_1 re-solved.

    ``shifts`` has one entry per multiplicity; the first must be 0 since
    b_1 is determined by the others.
    """
    if len(shifts) != Y.n or len(b) != Y.n:
        raise InputError(f"expected {Y.n} shifts and coefficients")
    if shifts[0] != 0:
        raise InputError("the first shift must be 0; b_1 is re-solved from the rest")
    rest = [bi + ki * ai for ai, bi, ki in zip(Y.a[1:], b.b[1:], shifts[1:])]
    new = (_residual_first(Y, rest), *rest)
    _check_equation(Y, new)
    return CoefficientVector(new, _is_even_normalized(Y, new))


def enumerate_corpus(n: int, max_a: int) -> Iterator[SeifertData]:
    """Every valid Sigma(a1..an) with all a_i <= max_a.

    Increasing tuples are generated in lexicographic order, filtered for
    pairwise coprimality, then put in canonical (even-first) order.
    """
    if n < 3:
        raise InputError(f"need n >= 3, got {n}")
    yield from _coprime_chains((), 2, n, max_a)


def _coprime_chains(prefix: tuple[int, ...], start: int, n: int, max_a: int) -> Iterator[SeifertData]:
    if len(prefix) == n:
        yield validate(prefix)
        return
    has_even = any(x % 2 == 0 for x in prefix)
    for x in range(start, max_a + 1):
        if has_even and x % 2 == 0:
            continue
        if all(math.gcd(x, y) == 1 for y in prefix):
            yield from _coprime_chains(prefix + (x,), x + 1, n, max_a)
