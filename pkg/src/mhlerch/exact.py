"""Exact-rational kernel for the combinatorial identities behind the
accelerated series.

Everything in this module is computed with `fractions.Fraction`, so equality
checks are bit-exact.  The central object is the multiple harmonic sum over
nondecreasing index tuples,

    S_a^b(t) = sum_{a <= i_1 <= ... <= i_t <= b}  prod_{r=1}^{t} 1/(beta + i_r),
    S_a^b(0) = 1,

together with the two sides of the alternating binomial identity it resolves:

    L(q, beta) = sum_{m=0}^{q} C(q, m) (-1)^m / (beta + m)^s,
    R(q, beta) = q! / (beta)_{q+1} * S_0^q(s - 1),

where (x)_p is the rising product x (x+1) ... (x+p-1).  The coefficient of
z^p in the half-plane power series of the shifted polylogarithm is the same
object reindexed (beta = alpha + 1, q = p - 1):

    c_p = -(p-1)! / (alpha+1)_p * S_1^p(s - 1)   with f_i = 1/(alpha + i).

S_a^b(t) is never expanded tuple by tuple here; it is built by the triangular
recurrence

    S_a^n(t) = S_a^{n-1}(t) + f_n * S_a^n(t - 1),

which costs O((b - a + 1) * t) rational multiplications.  The tuple
enumerator is retained only as an independent oracle for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Union

from .errors import EnumerationCapError, InvalidShiftError

#: Exact rational carrier.  `fractions.Fraction` keeps values canonical
#: (positive denominator, gcd 1) after every operation, so `==` is
#: structural equality of canonical forms.
Rational = Fraction

RationalLike = Union[Fraction, int]

#: Default ceiling on the number of tuples `multi_sum_bruteforce` will expand.
DEFAULT_ENUMERATION_CAP = 10**6


def _check_beta(beta: Fraction) -> None:
    # beta must avoid {0, -1, -2, ...}: there the denominators beta + m vanish.
    if beta.denominator == 1 and beta <= 0:
        raise InvalidShiftError(f"beta = {beta} is a nonpositive integer")


def _check_alpha(alpha: Fraction) -> None:
    # alpha must avoid {-1, -2, ...} (equivalently beta = alpha + 1 is valid).
    _check_beta(alpha + 1)


@dataclass(frozen=True)
class LemmaParams:
    """Grid point (q, s, beta) for the alternating binomial identity."""

    q: int
    s: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.q < 0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        _check_beta(self.beta)


@dataclass(frozen=True)
class MultiSumSpec:
    """Index range [a, b], depth t and shift beta of a multiple harmonic sum."""

    a: int
    b: int
    t: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 <= self.a <= self.b:
            raise ValueError(f"need 0 <= a <= b, got a={self.a}, b={self.b}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        if self.beta.denominator == 1 and self.a <= -self.beta <= self.b:
            raise ZeroDivisionError(
                f"beta + n vanishes at n = {-self.beta} in [{self.a}, {self.b}]"
            )


def pochhammer(x: RationalLike, p: int) -> Fraction:
    """Rising product x (x+1) ... (x+p-1); the empty product (p = 0) is 1."""
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    x = Fraction(x)
    out = Fraction(1)
    for j in range(p):
        out *= x + j
    return out


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention that out-of-range k (k < 0 or k > n) gives 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multi_sum(spec: MultiSumSpec) -> Fraction:
    """S_a^b(t), exactly, via the triangular recurrence (never by enumeration)."""
    col = [Fraction(1)] + [Fraction(0)] * spec.t
    for n in range(spec.a, spec.b + 1):
        f_n = Fraction(1) / (spec.beta + n)
        for t in range(1, spec.t + 1):
            col[t] += f_n * col[t - 1]
    return col[spec.t]


def multi_sum_bruteforce(
    spec: MultiSumSpec, cap: int = DEFAULT_ENUMERATION_CAP
) -> Fraction:
    """S_a^b(t) by explicit enumeration of all nondecreasing tuples.

    Independent oracle for `multi_sum`; refuses to expand more than `cap`
    tuples (the count is C(b - a + t, t)).
    """
    count = math.comb(spec.b - spec.a + spec.t, spec.t)
    if count > cap:
        raise EnumerationCapError(count, cap)
    f = {n: Fraction(1) / (spec.beta + n) for n in range(spec.a, spec.b + 1)}
    total = Fraction(0)
    for tup in combinations_with_replacement(range(spec.a, spec.b + 1), spec.t):
        term = Fraction(1)
        for i in tup:
            term *= f[i]
        total += term
    return total


def lemma_lhs(params: LemmaParams) -> Fraction:
    """L(q, beta) = sum_{m=0}^{q} C(q, m) (-1)^m / (beta + m)^s."""
    total = Fraction(0)
    sign = 1
    for m in range(params.q + 1):
        total += sign * binomial(params.q, m) / (params.beta + m) ** params.s
        sign = -sign
    return total


def lemma_rhs(params: LemmaParams) -> Fraction:
    """R(q, beta) = q! / (beta)_{q+1} * S_0^q(s - 1).

    The depth-(s-1) sum degenerates to 1 at s = 1, so a single formula covers
    all s >= 1.
    """
    prefactor = Fraction(math.factorial(params.q)) / pochhammer(params.beta, params.q + 1)
    return prefactor * multi_sum(MultiSumSpec(0, params.q, params.s - 1, params.beta))


def coefficient_exact(p: int, alpha: RationalLike, s: int) -> Fraction:
    """Exact coefficient of z^p in the half-plane series:

        c_p = -(p-1)! / (alpha+1)_p * S_1^p(s - 1)   with f_i = 1/(alpha + i).

    Strictly negative for rational alpha > -1.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    alpha = Fraction(alpha)
    _check_alpha(alpha)
    prefactor = Fraction(math.factorial(p - 1)) / pochhammer(alpha + 1, p)
    return -prefactor * multi_sum(MultiSumSpec(1, p, s - 1, alpha))


def alternating_coefficient_sum(p: int, alpha: RationalLike, s: int) -> Fraction:
    """Inner alternating binomial sum of the transformed series at index p:

        sum_{n=1}^{p} C(p-1, n-1) (-1)^n / (alpha + n)^s.

    Equals `coefficient_exact(p, alpha, s)` (it is L(p-1, alpha+1) up to sign),
    but is computed by the alternating route, so the two form an exact
    cross-check of the identity.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    alpha = Fraction(alpha)
    _check_alpha(alpha)
    total = Fraction(0)
    sign = -1
    for n in range(1, p + 1):
        total += sign * binomial(p - 1, n - 1) / (alpha + n) ** s
        sign = -sign
    return total


def coefficient_stream(alpha: RationalLike, s: int) -> Iterator[Fraction]:
    """Yield c_1, c_2, ... incrementally (one column update per index).

    Amortises the prefactor and the depth column across successive p, so a
    whole prefix costs O(p_max * s) rational operations instead of O(p_max^2 * s).
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    alpha = Fraction(alpha)
    _check_alpha(alpha)
    col = [Fraction(1)] + [Fraction(0)] * (s - 1)
    prefactor = Fraction(1)
    p = 0
    while True:
        p += 1
        prefactor *= Fraction(p - 1 if p > 1 else 1) / (alpha + p)
        f_p = Fraction(1) / (alpha + p)
        for t in range(1, s):
            col[t] += f_p * col[t - 1]
        yield -prefactor * col[s - 1]
