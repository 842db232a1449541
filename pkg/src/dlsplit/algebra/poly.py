"""Polynomial arithmetic and factorization over F_q.

Polynomials are lists of field elements (ints), constant term first, with
no trailing zeros; [] is the zero polynomial and has degree -1. All
functions take the coefficient field context F as first argument.

Factorization is the classic squarefree / distinct-degree / equal-degree
(Cantor-Zassenhaus) chain, with a trace-map splitter in characteristic 2.
The smoothness test reuses the distinct-degree stage and stops as soon as
the verdict is decided, which is the point of the early abort.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from ..errors import BadParameters, DegreeOutOfRange, ZeroPolynomial
from .field import CoeffField


def ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pdeg(a: list[int]) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def padd(F: CoeffField, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return ptrim(out)


def pneg(F: CoeffField, a: list[int]) -> list[int]:
    return [F.neg(c) for c in a]


def psub(F: CoeffField, a: list[int], b: list[int]) -> list[int]:
    return padd(F, a, pneg(F, b))


def pscale(F: CoeffField, a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return ptrim([F.mul(x, c) for x in a])


def pmul(F: CoeffField, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(F: CoeffField, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroPolynomial("division by zero polynomial")
    if len(a) < len(b):
        return [], a[:]
    r = a[:]
    q = [0] * (len(a) - len(b) + 1)
    inv_lc = F.inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1]
        if c:
            c = F.mul(c, inv_lc)
            q[i] = c
            for j, bc in enumerate(b):
                r[i + j] = F.sub(r[i + j], F.mul(c, bc))
    return ptrim(q), ptrim(r)


def pmod(F: CoeffField, a: list[int], b: list[int]) -> list[int]:
    return pdivmod(F, a, b)[1]


def pmonic(F: CoeffField, a: list[int]) -> list[int]:
    if not a:
        return []
    if a[-1] == 1:
        return a[:]
    return pscale(F, a, F.inv(a[-1]))


def peval(F: CoeffField, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pgcd(F: CoeffField, a: list[int], b: list[int]) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pxgcd(
    F: CoeffField, a: list[int], b: list[int]
) -> tuple[list[int], list[int], list[int]]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if r0 and r0[-1] != 1:
        c = F.inv(r0[-1])
        r0, s0, t0 = pscale(F, r0, c), pscale(F, s0, c), pscale(F, t0, c)
    return r0, s0, t0


def ppowmod(F: CoeffField, base: list[int], e: int, mod: list[int]) -> list[int]:
    r = [1]
    b = pmod(F, base, mod)
    while e:
        if e & 1:
            r = pmod(F, pmul(F, r, b), mod)
        b = pmod(F, pmul(F, b, b), mod)
        e >>= 1
    return r


def pderiv(F: CoeffField, a: list[int]) -> list[int]:
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], i % F.p))
    return ptrim(out)


def _pth_root_poly(F: CoeffField, a: list[int]) -> list[int]:
    # a must be a polynomial in x^p: a = sum c_i x^(i*p)
    p = F.p
    out = []
    for i in range(0, len(a), p):
        out.append(F.pth_root(a[i]))
    return ptrim(out)


def pirreducible(F: CoeffField, f: list[int]) -> bool:
    """Rabin's irreducibility test over F_q."""
    m = pdeg(f)
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    from .. import intutil

    x = [0, 1]
    w = x
    for _ in range(m):
        w = ppowmod(F, w, F.q, f)
    if psub(F, w, x):
        return False
    for r in intutil.factorize(m):
        w = x
        for _ in range(m // r):
            w = ppowmod(F, w, F.q, f)
        if pdeg(pgcd(F, psub(F, w, x), f)) != 0:
            return False
    return True


def find_irreducible(F: CoeffField, deg: int) -> list[int]:
    """First monic irreducible of the given degree.

    Candidates x^deg + c_{deg-1}x^{deg-1} + ... + c_0 are enumerated in
    lexicographic order of (c_0, c_1, ..., c_{deg-1}), constant term most
    significant, each coordinate running 0..q-1.
    """
    if deg < 1:
        raise DegreeOutOfRange("degree must be >= 1")
    q = F.q
    # a zero constant term means x divides f, so for deg >= 2 the whole
    # leading block of the enumeration is reducible; start past it
    start = q ** (deg - 1) if deg > 1 else 0
    for counter in range(start, q**deg):
        coeffs = []
        rest = counter
        for pos in range(deg):
            digit = rest // q ** (deg - 1 - pos)
            rest -= digit * q ** (deg - 1 - pos)
            coeffs.append(digit)
        f = coeffs + [1]
        if pirreducible(F, f):
            return f
    raise BadParameters("no irreducible polynomial found")  # unreachable


# -- factorization ------------------------------------------------------------


def psqf(F: CoeffField, f: list[int]) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of monic f (characteristic-p aware).

    Returns [(g_i, m_i)] with f = prod g_i^{m_i}, the g_i monic squarefree
    and pairwise coprime.
    """
    if pdeg(f) <= 0:
        return []
    d = pderiv(F, f)
    if not d:
        return [(g, m * F.p) for g, m in psqf(F, _pth_root_poly(F, f))]
    out = []
    c = pgcd(F, f, d)
    w = pdivmod(F, f, c)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if pdeg(z) > 0:
            out.append((z, i))
        w = y
        c = pdivmod(F, c, y)[0]
        i += 1
    if pdeg(c) > 0:
        out.extend((g, m * F.p) for g, m in psqf(F, _pth_root_poly(F, c)))
    return sorted(out, key=lambda gm: (gm[1], pdeg(gm[0]), tuple(gm[0])))


def pddf(F: CoeffField, f: list[int]) -> list[tuple[list[int], int]]:
    """Distinct-degree split of monic squarefree f: [(product, degree)]."""
    out = []
    h = f[:]
    w = [0, 1]
    k = 0
    while pdeg(h) > 2 * (k + 1) - 1:
        k += 1
        w = ppowmod(F, w, F.q, h)
        g = pgcd(F, psub(F, w, [0, 1]), h)
        if pdeg(g) > 0:
            out.append((g, k))
            h = pdivmod(F, h, g)[0]
            w = pmod(F, w, h)
    if pdeg(h) > 0:
        out.append((h, pdeg(h)))
    return out


def _edf_rng(F: CoeffField, f: list[int], seed: int) -> random.Random:
    material = hashlib.blake2b(
        repr((F.p, F.h, tuple(f), seed)).encode(), digest_size=16
    ).digest()
    return random.Random(int.from_bytes(material, "big"))


def pedf(F: CoeffField, f: list[int], k: int, seed: int = 0) -> list[list[int]]:
    """Split monic squarefree f (all factors of degree k) into irreducibles."""
    n = pdeg(f)
    if n == k:
        return [f[:]]
    rng = _edf_rng(F, f, seed)
    while True:
        a = ptrim([rng.randrange(F.q) for _ in range(n)])
        if pdeg(a) < 1:
            continue
        if F.p == 2:
            # trace map over F_2: a + a^2 + a^4 + ... splits in char 2
            t = a[:]
            acc = a[:]
            for _ in range(F.n1 * k - 1):
                acc = pmod(F, pmul(F, acc, acc), f)
                t = padd(F, t, acc)
            g = pgcd(F, t, f)
        else:
            b = ppowmod(F, a, (F.q**k - 1) // 2, f)
            g = pgcd(F, psub(F, b, [1]), f)
        if 0 < pdeg(g) < n:
            return pedf(F, g, k, seed) + pedf(F, pdivmod(F, f, g)[0], k, seed)


def factor_fq(
    F: CoeffField, f: list[int], seed: int = 0
) -> list[tuple[list[int], int]]:
    """Full factorization of nonzero f into monic irreducibles.

    Sorted by (degree, coefficient tuple). The leading unit is f's leading
    coefficient; prod factors^mult * lc(f) = f.
    """
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    out: dict[tuple[int, ...], int] = {}
    for part, mult in psqf(F, pmonic(F, f)):
        for prod, k in pddf(F, part):
            for irr in pedf(F, prod, k, seed):
                key = tuple(irr)
                out[key] = out.get(key, 0) + mult
    return sorted(
        ((list(g), m) for g, m in out.items()),
        key=lambda gm: (pdeg(gm[0]), tuple(gm[0])),
    )


@dataclass
class PolySmoothness:
    """Verdict of a degree-b smoothness test.

    factors is complete when smooth; otherwise it holds the factors of
    degree <= b that were split off before the abort, and cofactor is the
    unfactored remainder (product of all irreducible factors of degree > b).
    """

    smooth: bool
    factors: list[tuple[list[int], int]]
    cofactor: list[int] | None


def psmooth_test(
    F: CoeffField, f: list[int], b: int, seed: int = 0
) -> PolySmoothness:
    """Is every irreducible factor of f of degree <= b?

    The distinct-degree stage runs only up to degree b and stops at the
    first point where the verdict is forced, so non-smooth candidates are
    rejected without completing a factorization.
    """
    if not f:
        raise ZeroPolynomial("cannot test the zero polynomial")
    if b < 1:
        raise BadParameters("smoothness bound must be >= 1")
    found: dict[tuple[int, ...], int] = {}
    rough: list[tuple[list[int], int]] = []
    for part, mult in psqf(F, pmonic(F, f)):
        h = part
        w = [0, 1]
        k = 0
        while pdeg(h) > 0 and k < b:
            if pdeg(h) < 2 * (k + 1):
                # no factor of degree <= k+1 remains and h cannot split:
                # h is irreducible, verdict decided by its degree
                break
            k += 1
            w = ppowmod(F, w, F.q, h)
            g = pgcd(F, psub(F, w, [0, 1]), h)
            if pdeg(g) > 0:
                for irr in pedf(F, g, k, seed):
                    key = tuple(irr)
                    found[key] = found.get(key, 0) + mult
                h = pdivmod(F, h, g)[0]
                w = pmod(F, w, h)
        if pdeg(h) > 0:
            if pdeg(h) <= b:
                # only possible via the irreducibility shortcut above
                key = tuple(h)
                found[key] = found.get(key, 0) + mult
            else:
                rough.append((h, mult))
    factors = sorted(
        ((list(g), m) for g, m in found.items()),
        key=lambda gm: (pdeg(gm[0]), tuple(gm[0])),
    )
    if not rough:
        return PolySmoothness(True, factors, None)
    cof = [1]
    for h, mult in rough:
        for _ in range(mult):
            cof = pmul(F, cof, h)
    return PolySmoothness(False, factors, cof)


def proots(F: CoeffField, f: list[int], seed: int = 0) -> list[int]:
    """Distinct roots of f in F_q, ascending by element encoding."""
    if not f:
        raise ZeroPolynomial("zero polynomial has every root")
    if pdeg(f) == 0:
        return []
    xq = ppowmod(F, [0, 1], F.q, f)
    lin = pgcd(F, psub(F, xq, [0, 1]), f)
    if pdeg(lin) < 1:
        return []
    roots = []
    for irr in pedf(F, lin, 1, seed):
        roots.append(F.neg(irr[0]))
    return sorted(roots)
