"""Exact counts and probabilities of smooth polynomials over F_q.

N_q(b; d) counts monic degree-d polynomials whose irreducible factors all
have degree <= b. The count is the z^d coefficient of
prod_{k=1..b} (1 - z^k)^(-I_q(k)) and is computed by exact integer DP,
incrementally in b so one pass serves a whole table column. Floating
point enters only at the final log2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import intutil
from .errors import BadParameters, DomainError


@dataclass(frozen=True)
class SmoothProbQuery:
    """q given as (p, extension degree); paired is an optional second degree."""

    q: tuple[int, int]
    d: int
    b: int
    paired: int | None = None

    def q_value(self) -> int:
        p, k = self.q
        if p < 2 or k < 1:
            raise BadParameters(f"bad prime power ({p}, {k})")
        return p**k


@dataclass(frozen=True)
class LParams:
    """L_Q[alpha, c] with the o(1) term fixed to zero; Q given as log2."""

    alpha: float
    c: float
    log2_q: float


def irreducible_count(q: int, k: int) -> int:
    """I_q(k): monic irreducible polynomials of degree k over F_q."""
    if k < 1:
        raise BadParameters("degree must be >= 1")
    if q < 2:
        raise BadParameters("q must be >= 2")
    total = 0
    for e in intutil.divisors(k):
        total += intutil.moebius(e) * q ** (k // e)
    assert total % k == 0
    return total // k


@lru_cache(maxsize=256)
def _smooth_row(q: int, b: int, d: int) -> tuple[int, ...]:
    """Coefficients z^0..z^d of prod_{k<=b} (1 - z^k)^(-I_q(k))."""
    if b == 0:
        return (1,) + (0,) * d
    prev = _smooth_row(q, b - 1, d)
    count = irreducible_count(q, b)
    out = []
    for m in range(d + 1):
        total = 0
        j = 0
        while j * b <= m:
            total += comb(count + j - 1, j) * prev[m - j * b]
            j += 1
        out.append(total)
    return tuple(out)


def smooth_count(q: int, b: int, d: int) -> int:
    """N_q(b; d), exact."""
    if b < 1:
        raise BadParameters("smoothness bound must be >= 1")
    if d < 0:
        raise BadParameters("degree must be >= 0")
    if q < 2:
        raise BadParameters("q must be >= 2")
    if b >= d:
        return q**d
    return _smooth_row(q, b, d)[d]


def smooth_prob(q: int, b: int, d: int) -> Fraction:
    """Pr_q(b; d) = N_q(b; d) / q^d as an exact rational."""
    return Fraction(smooth_count(q, b, d), q**d)


def _log2_fraction(fr: Fraction) -> float:
    if fr <= 0:
        raise DomainError("log2 of a nonpositive rational")
    num, den = fr.numerator, fr.denominator
    shift = num.bit_length() - den.bit_length()
    if shift > 0:
        den <<= shift
    else:
        num <<= -shift
    return shift + math.log2(num / den)


def smooth_prob_log2(query: SmoothProbQuery) -> float:
    """log2 of the smoothness probability; paired queries use the
    coprime-pair estimate (1 - 1/q) * Pr(b; d) * Pr(b; d2)."""
    qv = query.q_value()
    pr = smooth_prob(qv, query.b, query.d)
    if query.paired is None:
        return _log2_fraction(pr)
    pr2 = smooth_prob(qv, query.b, query.paired)
    return _log2_fraction(Fraction(qv - 1, qv) * pr * pr2)


def l_eval(params: LParams) -> float:
    """log2 of L_Q[alpha, c] = exp(c (ln Q)^alpha (ln ln Q)^(1-alpha)).

    An estimate, not a bound: the o(1) in the exponent is taken as zero.
    """
    if not 0.0 <= params.alpha <= 1.0:
        raise BadParameters("alpha must lie in [0, 1]")
    if params.c == 0:
        raise BadParameters("c must be nonzero")
    ln_q = params.log2_q * math.log(2.0)
    if ln_q <= 1.0:
        raise DomainError("log log Q <= 0: field too small for L-notation")
    lnln_q = math.log(ln_q)
    return (
        params.c
        * math.pow(ln_q, params.alpha)
        * math.pow(lnln_q, 1.0 - params.alpha)
        / math.log(2.0)
    )
