"""Integer utilities: primality, factoring, roots, Moebius, cyclotomic values.

All routines are deterministic. The factoring engine here is shared by the
oracle module (which adds budget enforcement) and by tower construction.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from .errors import BadParameters

# Deterministic Miller-Rabin witness set, sufficient for n < 3.3 * 10^24
# (covers every 64-bit integer with a wide margin).
_SMALL_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def _miller_rabin(n: int, base: int) -> bool:
    """One strong-pseudoprime round. n odd, > 2, base reduced mod n."""
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Deterministic below 2^64; 64 fixed-base strong rounds above.

    Bases above 2^64 are the first 64 primes, so the answer is reproducible.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < 2**64:
        witnesses = _SMALL_WITNESSES
    else:
        witnesses = _first_primes(64)
    return all(_miller_rabin(n, a % n) for a in witnesses if a % n)


def _first_primes(k: int) -> tuple[int, ...]:
    out = []
    cand = 2
    while len(out) < k:
        if all(cand % q for q in out):
            out.append(cand)
        cand += 1
    return tuple(out)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by Eratosthenes."""
    if limit < 2:
        return []
    size = limit + 1
    flags = bytearray([1]) * size
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, size, i)))
    return [i for i in range(size) if flags[i]]


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise BadParameters(f"iroot domain: n={n}, k={k}")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def floor_pow2(exponent: Fraction, exact_limit: int = 1 << 17) -> int:
    """floor(2^exponent) for a nonnegative rational exponent.

    Exact via an integer root when the scaled exponent is moderate; otherwise
    falls back to 2^floor(exponent), which can only under-shoot.
    """
    if exponent < 0:
        raise BadParameters("floor_pow2 needs a nonnegative exponent")
    a, b = exponent.numerator, exponent.denominator
    if b == 1:
        return 1 << a
    if a <= exact_limit:
        return iroot(1 << a, b)
    return 1 << (a // b)


def _brent_rho(n: int, c: int) -> int:
    """Brent's cycle variant of Pollard rho with batched gcd.

    Returns a nontrivial factor or n on failure for this constant c.
    Arithmetic runs on gmpy2 integers; the walk itself is the cost.
    """
    if n % 2 == 0:
        return 2
    n = gmpy2.mpz(n)
    y = gmpy2.mpz(2)
    m = 128
    g = q = gmpy2.mpz(1)
    r = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = gmpy2.gcd(q, n)
            k += m
        r <<= 1
    if g == n:
        g = gmpy2.mpz(1)
        while g == 1:
            ys = (ys * ys + c) % n
            g = gmpy2.gcd(x - ys, n)
    return int(g)


def bounded_rho(n: int, max_steps: int) -> int | None:
    """Brent rho with a step budget; None once the budget is spent.

    A None outcome is a statement about effort, not about n: the caller
    must treat the input as unsplit, not as prime. Deterministic for a
    fixed (n, max_steps).
    """
    if n % 2 == 0:
        return 2
    n = gmpy2.mpz(n)
    steps = 0
    for c in (1, 2, 3):
        y = gmpy2.mpz(2)
        m = 128
        g = q = gmpy2.mpz(1)
        r = 1
        x = ys = y
        while g == 1:
            if steps >= max_steps:
                return None
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                g = gmpy2.gcd(q, n)
                k += m
            steps += 2 * r
            r <<= 1
        if g == n:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(x - ys, n)
        if g != n:
            return int(g)
        # batched gcd collapsed (factor hit exactly); retry with next c
    return None


_TRIAL_PRIMES = None


def _trial_primes() -> list[int]:
    global _TRIAL_PRIMES
    if _TRIAL_PRIMES is None:
        _TRIAL_PRIMES = sieve_primes(1 << 16)
    return _TRIAL_PRIMES


_PM1_BOUND = 2_000_000
_PM1_EXPONENT = None


def _pm1_exponent() -> "gmpy2.mpz":
    """lcm-style exponent prod q^floor(log_q B) over primes q <= B, cached."""
    global _PM1_EXPONENT
    if _PM1_EXPONENT is None:
        parts = []
        for q in sieve_primes(_PM1_BOUND):
            e = 1
            while q ** (e + 1) <= _PM1_BOUND:
                e += 1
            parts.append(gmpy2.mpz(q**e))
        while len(parts) > 1:  # product tree keeps operands balanced
            parts = [
                parts[i] * parts[i + 1] if i + 1 < len(parts) else parts[i]
                for i in range(0, len(parts), 2)
            ]
        _PM1_EXPONENT = parts[0]
    return _PM1_EXPONENT


def _pollard_pm1(n: int) -> int | None:
    """One stage-1 p-1 attempt: finds p | n when p-1 is power-smooth
    past the fixed bound. Deterministic bases; None on failure."""
    e = _pm1_exponent()
    nz = gmpy2.mpz(n)
    residue = None
    for base in (2, 3):
        a = gmpy2.powmod(base, e, nz)
        g = int(gmpy2.gcd(a - 1, nz))
        if 1 < g < n:
            return g
        # g == n means every prime factor was pulled at once; a different
        # base usually separates them, otherwise rho takes over
        if residue is None:
            residue = a
    return _pm1_stage2(nz, residue)


_PM1_STAGE2_BOUND = 20_000_000
_PM1_STAGE2_PRIMES = None


def _pm1_stage2_primes() -> list[int]:
    global _PM1_STAGE2_PRIMES
    if _PM1_STAGE2_PRIMES is None:
        _PM1_STAGE2_PRIMES = [
            q for q in sieve_primes(_PM1_STAGE2_BOUND) if q > _PM1_BOUND
        ]
    return _PM1_STAGE2_PRIMES


def _pm1_stage2(nz: "gmpy2.mpz", a: "gmpy2.mpz") -> int | None:
    """Stage-2 continuation: catches p-1 = (stage-1 smooth) * r with one
    prime r up to the stage-2 bound. a is the stage-1 residue base^E."""
    primes = _pm1_stage2_primes()
    if not primes or a <= 1:
        return None
    n = int(nz)
    # a^r walks the prime list via gap powers a^(r'-r), all gaps are even
    gaps: dict[int, "gmpy2.mpz"] = {}
    a2 = (a * a) % nz
    step = a2
    for d in range(2, 256, 2):
        gaps[d] = step
        step = (step * a2) % nz
    cur = gmpy2.powmod(a, primes[0], nz)
    acc = (cur - 1) % nz
    prev = primes[0]
    for r in primes[1:]:
        d = r - prev
        g = gaps.get(d)
        if g is None:
            g = gmpy2.powmod(a, d, nz)
            gaps[d] = g
        cur = (cur * g) % nz
        acc = acc * (cur - 1) % nz
        prev = r
    g = int(gmpy2.gcd(acc, nz))
    if 1 < g < n:
        return g
    if g == n:
        # every factor responded in the same window; redo with per-prime
        # gcd to separate them (rare, cost bounded by one extra pass)
        cur = gmpy2.powmod(a, primes[0], nz)
        g = int(gmpy2.gcd(cur - 1, nz))
        if 1 < g < n:
            return g
        prev = primes[0]
        for r in primes[1:]:
            d = r - prev
            cur = (cur * gaps[d]) % nz
            prev = r
            g = int(gmpy2.gcd(cur - 1, nz))
            if 1 < g < n:
                return g
    return None


_PP1_BOUND = 5_000_000
_PP1_EXPONENT = None


def _pp1_exponent() -> "gmpy2.mpz":
    global _PP1_EXPONENT
    if _PP1_EXPONENT is None:
        parts = []
        for q in sieve_primes(_PP1_BOUND):
            e = 1
            while q ** (e + 1) <= _PP1_BOUND:
                e += 1
            parts.append(gmpy2.mpz(q**e))
        while len(parts) > 1:
            parts = [
                parts[i] * parts[i + 1] if i + 1 < len(parts) else parts[i]
                for i in range(0, len(parts), 2)
            ]
        _PP1_EXPONENT = parts[0]
    return _PP1_EXPONENT


def _williams_pp1(n: int) -> int | None:
    """One stage-1 p+1 attempt (Lucas ladder): finds p | n when p+1 is
    power-smooth past the fixed bound and the seed discriminant is a
    nonresidue mod p. Deterministic seeds; None on failure."""
    e = _pp1_exponent()
    bits = e.bit_length()
    nz = gmpy2.mpz(n)
    # three seeds with pairwise-distinct discriminants: each prime factor is
    # missed only if every v0*v0 - 4 happens to be a square mod it
    for v0 in (5, 7, 11):
        x = gmpy2.mpz(v0)
        y = (x * x - 2) % nz
        for i in range(bits - 2, -1, -1):
            if gmpy2.bit_test(e, i):
                x = (x * y - v0) % nz
                y = (y * y - 2) % nz
            else:
                y = (x * y - v0) % nz
                x = (x * x - 2) % nz
        g = int(gmpy2.gcd(x - 2, nz))
        if 1 < g < n:
            return g
    return None


def factorize(n: int, rho_retries: int = 20) -> dict[int, int]:
    """Full factorization of n >= 1 as {prime: multiplicity}.

    Trial division to 2^16, then deterministic Brent rho with incrementing
    polynomial constants. Raises BadParameters if a composite survives all
    retries (practically unreachable at desk scale).
    """
    if n < 1:
        raise BadParameters("factorize needs n >= 1")
    out: dict[int, int] = {}
    for q in _trial_primes():
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = m
        if m > 2**64:
            # cheap stages first: p-1 (one powmod), a short rho pass for
            # mid-size factors, then p+1; full rho only when all miss
            d = (
                _pollard_pm1(m)
                or bounded_rho(m, 1 << 22)
                or _williams_pp1(m)
                or m
            )
        if not 1 < d < m:
            for c in range(1, rho_retries + 1):
                d = _brent_rho(m, c)
                if 1 < d < m:
                    break
        if not 1 < d < m:
            raise BadParameters(f"factoring stalled on {m}")
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def moebius(n: int) -> int:
    """Moebius function for n >= 1."""
    if n < 1:
        raise BadParameters("moebius needs n >= 1")
    mu = 1
    for _, e in factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    fac = factorize(n)
    out = [1]
    for q, e in fac.items():
        out = [d * q**i for d in out for i in range(e + 1)]
    return sorted(out)


def cyclotomic_value(n: int, x: int) -> int:
    """Value of the n-th cyclotomic polynomial at integer x >= 2, n >= 1.

    Computed from the Moebius product over divisors; exact integer division.
    """
    if n < 1 or x < 2:
        raise BadParameters("cyclotomic_value needs n >= 1, x >= 2")
    num = 1
    den = 1
    for d in divisors(n):
        mu = moebius(d)
        if mu == 1:
            num *= x ** (n // d) - 1
        elif mu == -1:
            den *= x ** (n // d) - 1
    value, rem = divmod(num, den)
    if rem:
        raise BadParameters("cyclotomic product did not divide exactly")
    return value


_POW_EXACT_BITS = 1 << 25


def compare_powers(a: int, x: int, b: int, y: int) -> int:
    """Sign of a^x - b^y without floating point on the main path.

    Bit-length bounds settle most cases; comparable sizes fall back to
    exact integer powers up to ~4 MB operands, then to certified interval
    logarithms with escalating precision (outward rounding keeps the
    decision exact), and finally to a perfect-power equality test.
    """
    if a < 1 or b < 1 or x < 0 or y < 0:
        raise BadParameters("compare_powers needs a, b >= 1 and x, y >= 0")
    left_one = a == 1 or x == 0
    right_one = b == 1 or y == 0
    if left_one or right_one:
        if left_one and right_one:
            return 0
        if left_one:
            return -1
        return 1
    abl, bbl = a.bit_length(), b.bit_length()
    lo_l, hi_l = (abl - 1) * x, abl * x
    lo_r, hi_r = (bbl - 1) * y, bbl * y
    if lo_l >= hi_r:
        return 1
    if hi_l <= lo_r:
        return -1
    if hi_l <= _POW_EXACT_BITS and hi_r <= _POW_EXACT_BITS:
        pa, pb = a**x, b**y
        return (pa > pb) - (pa < pb)
    from mpmath import iv

    saved = iv.prec
    try:
        prec = 128
        while prec <= 1 << 16:
            iv.prec = prec
            left = iv.log(iv.mpf(a)) * x
            right = iv.log(iv.mpf(b)) * y
            if left > right:
                return 1
            if left < right:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    ra, ea = _primitive_power(a)
    rb, eb = _primitive_power(b)
    if ra == rb:
        la, lb = ea * x, eb * y
        return (la > lb) - (la < lb)
    raise BadParameters("power comparison unresolved at maximum precision")


def _primitive_power(v: int) -> tuple[int, int]:
    """(r, e) with v = r^e and r not itself a perfect power."""
    if v < 2:
        return v, 1
    for e in range(v.bit_length(), 1, -1):
        r = iroot(v, e)
        if r**e == v:
            rr, ee = _primitive_power(r)
            return rr, ee * e
    return v, 1
