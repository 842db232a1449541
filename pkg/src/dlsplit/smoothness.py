"""Integer smooth-part extraction and early-abort smoothness testing.

A candidate integer is fed through staged smooth-part extraction with
growing bounds; after each stage the unfactored residual is compared
against a shrinking power of the input and the candidate is dropped
early when the residual is too large to recover. Stage exponents and
abort thresholds follow the optimized k-test schedule, and the module
also emits the matching L-notation cost predictions for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import intutil
from .errors import BadParameters
from .probability import LParams, l_eval

BACKENDS = ("trial-division", "rho-assisted")

_RHO_TRIAL_LIMIT = 1 << 20
_TRIAL_BACKEND_LIMIT = 1 << 22


@dataclass(frozen=True)
class EasParams:
    """Stage schedule for the k-test early-abort strategy.

    theta holds the stage exponents (theta[k] = 1, increasing); b the
    abort budget shares (positive, summing to 1 exactly); b1_bits the
    full smoothness bound as a bit size, so stage i tests against
    2^floor(b1_bits * theta[i]).
    """

    k: int
    theta: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    b1_bits: int
    c: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if self.k < 0 or len(self.theta) != self.k + 1 or len(self.b) != self.k + 1:
            raise BadParameters("need k + 1 theta and b entries")
        if self.theta[-1] != 1:
            raise BadParameters("last stage exponent must be 1")
        if any(t2 <= t1 for t1, t2 in zip(self.theta, self.theta[1:])):
            raise BadParameters("stage exponents must increase")
        if any(x <= 0 for x in self.b) or sum(self.b) != 1:
            raise BadParameters("budget shares must be positive and sum to 1")
        if self.b1_bits < 1:
            raise BadParameters("b1_bits must be >= 1")

    def stage_bound(self, i: int) -> int:
        """2^floor(b1_bits * theta_i), exact via an integer root."""
        return max(2, intutil.floor_pow2(Fraction(self.b1_bits) * self.theta[i]))


@dataclass
class SmoothnessOutcome:
    verdict: str
    stage_parts: list[int]
    residual: int
    factors: dict[int, int] | None

    @property
    def smooth(self) -> bool:
        return self.verdict == "smooth"

    def reassembles(self, m: int) -> bool:
        prod = self.residual
        for s in self.stage_parts:
            prod *= s
        return prod == m


@lru_cache(maxsize=32)
def _prime_batches(bound: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Primes <= bound grouped with their product, for batched gcd."""
    primes = intutil.sieve_primes(bound)
    out = []
    step = 512
    for i in range(0, len(primes), step):
        chunk = tuple(primes[i : i + step])
        prod = 1
        for q in chunk:
            prod *= q
        out.append((chunk, prod))
    return tuple(out)


def _trial_split(m: int, bound: int) -> tuple[int, int, dict[int, int]]:
    smooth = 1
    factors: dict[int, int] = {}
    exhausted = False
    for chunk, prod in _prime_batches(bound):
        if m == 1 or exhausted:
            break
        if math.gcd(m, prod) == 1:
            continue
        for q in chunk:
            while m % q == 0:
                m //= q
                smooth *= q
                factors[q] = factors.get(q, 0) + 1
            if q * q > m:
                # all smaller primes removed: m is now 1 or prime
                exhausted = True
                break
    if 1 < m <= bound and intutil.is_probable_prime(m):
        smooth *= m
        factors[m] = factors.get(m, 0) + 1
        m = 1
    return smooth, m, factors


# Shared rho step budget per smoothness query. Finding a prime factor near
# 2^2k costs about 2^k steps, so this finds factors well past 2^36 while a
# composite of two 60-bit primes expires quickly into the rough cofactor
# (a false negative the contract allows, never a false positive).
_RHO_STEP_BUDGET = 1 << 20


def _rho_split(m: int, bound: int) -> tuple[int, int, dict[int, int]]:
    smooth, rest, factors = _trial_split(m, min(bound, _RHO_TRIAL_LIMIT))
    if rest == 1 or bound <= _RHO_TRIAL_LIMIT:
        return smooth, rest, factors
    budget = _RHO_STEP_BUDGET
    stack = [rest]
    rough = 1
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if intutil.is_probable_prime(v):
            if v <= bound:
                smooth *= v
                factors[v] = factors.get(v, 0) + 1
            else:
                rough *= v
            continue
        share = budget
        d = intutil.bounded_rho(v, share) if share > 0 else None
        # cost accounting is coarse: charge the full share on failure,
        # a token amount on success (the walk stopped at the factor)
        budget -= share if d is None else min(share, 1 << 12)
        if d is None:
            rough *= v
        else:
            stack.append(d)
            stack.append(v // d)
    return smooth, rough, factors


def _split(m: int, bound: int, backend: str) -> tuple[int, int, dict[int, int]]:
    if m < 1:
        raise BadParameters("smooth_part needs m >= 1")
    if bound < 2:
        raise BadParameters("smoothness bound must be >= 2")
    if backend == "trial-division":
        if bound > _TRIAL_BACKEND_LIMIT:
            raise BadParameters(
                "trial-division backend supports bounds up to 2^22; "
                "use rho-assisted above that"
            )
        return _trial_split(m, bound)
    if backend == "rho-assisted":
        return _rho_split(m, bound)
    raise BadParameters(f"unknown backend {backend!r}")


def smooth_part(
    m: int, bound: int, backend: str = "trial-division"
) -> tuple[int, int]:
    """(smooth, cofactor) with smooth * cofactor = m and smooth
    bound-smooth. Trial division is complete: the cofactor keeps no
    prime <= bound. The rho-assisted backend may miss factors of a
    composite it fails to split, never the reverse."""
    smooth, rest, factors = _split(m, bound, backend)
    assert smooth * rest == m
    for q in factors:
        assert q <= bound
    return smooth, rest


def _exceeds_power(m_i: int, m: int, beta: Fraction) -> bool:
    """m_i > m^beta, decided exactly (integer powers, certified fallback)."""
    if beta < 0 or beta > 1:
        raise BadParameters("abort exponent must lie in [0, 1]")
    return (
        intutil.compare_powers(m_i, beta.denominator, m, beta.numerator) > 0
    )


def k_eas(
    m: int, params: EasParams, backend: str = "trial-division"
) -> SmoothnessOutcome:
    """Early-abort smoothness test with k intermediate abort checks.

    Stage i extracts the 2^floor(b1_bits*theta_i)-smooth part of the
    current residual; the run aborts as soon as the residual exceeds
    m^(1 - sum of the spent budget shares). Smooth verdicts are
    re-verified by multiplying everything back together.
    """
    if m < 1:
        raise BadParameters("k_eas needs m >= 1")
    parts: list[int] = []
    all_factors: dict[int, int] = {}
    m_i = m
    i = 0
    aborted_at = None
    while True:
        s_i, m_next, facs = _split(m_i, params.stage_bound(i), backend)
        parts.append(s_i)
        for q, e in facs.items():
            all_factors[q] = all_factors.get(q, 0) + e
        m_i = m_next
        i += 1
        if i > params.k or m_i == 1:
            break
        if _exceeds_power(m_i, m, 1 - sum(params.b[:i])):
            aborted_at = i - 1
            break
    if m_i == 1:
        verdict = "smooth"
        factors = all_factors
    elif aborted_at is not None:
        verdict = f"aborted-at-stage-{aborted_at}"
        factors = None
    else:
        verdict = "not-smooth"
        factors = None
    out = SmoothnessOutcome(
        verdict=verdict, stage_parts=parts, residual=m_i, factors=factors
    )
    assert out.reassembles(m)
    if out.smooth:
        bound = params.stage_bound(params.k)
        prod = 1
        for q, e in out.factors.items():
            assert q <= bound
            prod *= q**e
        assert prod == m
    return out


def eas(
    m: int,
    b1_bits: int,
    theta: Fraction = Fraction(4, 9),
    b: Fraction = Fraction(8, 23),
    backend: str = "trial-division",
) -> SmoothnessOutcome:
    """Single-abort variant: one partial stage, one threshold, one
    finishing stage. Equivalent to k_eas with k = 1 and schedule
    ([theta, 1], [b, 1-b])."""
    params = EasParams(
        k=1, theta=(theta, Fraction(1)), b=(b, 1 - b), b1_bits=b1_bits
    )
    return k_eas(m, params, backend)


def eas_params(k: int, e: Fraction | int, log2_q: float) -> EasParams:
    """Optimized schedule for inputs of size q^e with k abort tests.

    theta_i = (4/9)^(k-i); b_i proportional to (2/3)^(3(k-i)); the
    predicted cost constant is c = (3e)^(1/3) * ((15+4(2/3)^(3k))/19)^(2/3)
    with smoothness bound 2^l_eval(2/3, e/c) (bits, alpha = 2/3).
    """
    if k < 0:
        raise BadParameters("k must be >= 0")
    e = Fraction(e)
    if e <= 0:
        raise BadParameters("size exponent e must be positive")
    theta = tuple(Fraction(4, 9) ** (k - i) for i in range(k + 1))
    denom = 15 + 4 * Fraction(2, 3) ** (3 * k)
    # the closed form covers stages 0..k-1; the final share is the rest
    head = [Fraction(2, 3) ** (3 * (k - i)) * 19 / denom for i in range(k)]
    b = tuple(head + [1 - sum(head)])
    c = (3 * float(e)) ** (1 / 3) * float(denom / 19) ** (2 / 3)
    gamma = float(e) / c
    b1_bits = max(2, round(l_eval(LParams(2 / 3, gamma, log2_q))))
    return EasParams(
        k=k, theta=theta, b=b, b1_bits=b1_bits, c=c, gamma=gamma
    )


def expected_cost_log2(k: int, e: Fraction | int, log2_q: float) -> float:
    """log2 of the predicted smoothing cost L_q[1/3, c] (o(1) set to 0;
    an estimate for reporting, never asserted)."""
    params = eas_params(k, e, max(log2_q, 3.0))
    return l_eval(LParams(1 / 3, params.c, log2_q))
