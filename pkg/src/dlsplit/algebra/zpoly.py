"""Exact integer polynomial resultants, univariate and bivariate.

Univariate polynomials over Z are constant-first int lists, matching the
finite-field layer. Bivariate polynomials use IntBiPoly, whose coefficient
of x^i is itself a constant-first list in y. Resultants run the
subresultant PRS so no fractions appear; sylvester_resultant is a slow
cross-check via fraction-free elimination.
"""

from __future__ import annotations

from math import comb

from ..errors import BadParameters, ZeroPolynomial


def _ztrim(c: list[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


class _IntRing:
    """Z as the coefficient ring of the PRS."""

    zero = 0
    one = 1

    def is_zero(self, a: int) -> bool:
        return a == 0

    def neg(self, a: int) -> int:
        return -a

    def sub(self, a: int, b: int) -> int:
        return a - b

    def mul(self, a: int, b: int) -> int:
        return a * b

    def power(self, a: int, e: int) -> int:
        return a**e

    def exact_div(self, a: int, b: int) -> int:
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in PRS")
        return q


class _IntPolyRing:
    """Z[y] as the coefficient ring, elements constant-first tuples."""

    zero = ()
    one = (1,)

    def is_zero(self, a: tuple) -> bool:
        return not a

    def neg(self, a: tuple) -> tuple:
        return tuple(-c for c in a)

    def sub(self, a: tuple, b: tuple) -> tuple:
        la, lb = list(a), list(b)
        out = la + [0] * (len(lb) - len(la))
        for i, c in enumerate(lb):
            out[i] -= c
        return tuple(_ztrim(out))

    def mul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return tuple(_ztrim(out))

    def power(self, a: tuple, e: int) -> tuple:
        r: tuple = self.one
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def exact_div(self, a: tuple, b: tuple) -> tuple:
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(a)
        db = len(b) - 1
        lead = b[-1]
        q = [0] * max(len(rem) - db, 0)
        while len(_ztrim(rem)) - 1 >= db and any(rem):
            rem = _ztrim(rem)
            dr = len(rem) - 1
            c, r0 = divmod(rem[-1], lead)
            if r0:
                raise ArithmeticError("inexact division in PRS")
            q[dr - db] = c
            for j in range(db + 1):
                rem[dr - db + j] -= c * b[j]
        if _ztrim(rem):
            raise ArithmeticError("inexact division in PRS")
        return tuple(_ztrim(q))


def _prem(ring, a: list, b: list) -> list:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    e = len(rem) - 1 - db + 1
    while len(rem) - 1 >= db:
        top = rem[-1]
        rem = [ring.mul(lead, c) for c in rem[:-1]]
        for j in range(db):
            idx = len(rem) - db + j
            rem[idx] = ring.sub(rem[idx], ring.mul(top, b[j]))
        e -= 1
        while rem and ring.is_zero(rem[-1]):
            rem.pop()
    scale = ring.power(lead, e)
    return [ring.mul(scale, c) for c in rem]


def _prs_resultant(ring, a: list, b: list):
    """Res(a, b) for polynomials with coefficients in ring."""
    a = list(a)
    b = list(b)
    while a and ring.is_zero(a[-1]):
        a.pop()
    while b and ring.is_zero(b[-1]):
        b.pop()
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial")
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if da % 2 and db % 2:
            sign = -sign
    if da == 0:
        return ring.one if sign == 1 else ring.neg(ring.one)
    g = ring.one
    h = ring.one
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _prem(ring, a, b)
        a, da = b, db
        divisor = ring.mul(g, ring.power(h, delta))
        b = [ring.exact_div(c, divisor) for c in r]
        while b and ring.is_zero(b[-1]):
            b.pop()
        if not b:
            return ring.zero
        db = len(b) - 1
        g = a[-1]
        if delta:
            h = ring.exact_div(ring.power(g, delta), ring.power(h, delta - 1))
    res = ring.exact_div(ring.power(b[0], da), ring.power(h, da - 1))
    return res if sign == 1 else ring.neg(res)


def resultant_zz(a: list[int], b: list[int]) -> int:
    """Resultant of two integer polynomials, exact."""
    return _prs_resultant(_IntRing(), a, b)


def sylvester_resultant(a: list[int], b: list[int]) -> int:
    """Resultant as a Sylvester determinant (Bareiss). Cross-check oracle."""
    a = _ztrim(a)
    b = _ztrim(b)
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial")
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    arev = a[::-1]
    brev = b[::-1]
    for i in range(n):
        rows.append([0] * i + arev + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + brev + [0] * (m - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    size = len(m)
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[size - 1][size - 1]


class IntBiPoly:
    """Integer polynomial in x and y; coeffs[i] is the y-poly on x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: list):
        rows = []
        for row in coeffs:
            if isinstance(row, int):
                row = [row]
            rows.append(tuple(_ztrim([int(c) for c in row])))
        while rows and not rows[-1]:
            rows.pop()
        self.coeffs = tuple(rows)

    @property
    def deg_x(self) -> int:
        return len(self.coeffs) - 1

    @property
    def deg_y(self) -> int:
        return max((len(r) - 1 for r in self.coeffs if r), default=-1)

    def height(self) -> int:
        """Max absolute coefficient (sup norm)."""
        return max((abs(c) for r in self.coeffs for c in r), default=0)

    def evaluate(self, x: int, y: int) -> int:
        total = 0
        for row in reversed(self.coeffs):
            ry = 0
            for c in reversed(row):
                ry = ry * y + c
            total = total * x + ry
        return total

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.coeffs]

    def __repr__(self) -> str:
        return f"IntBiPoly(deg_x={self.deg_x}, deg_y={self.deg_y})"


def resultant_int(
    p_poly, f: list[int], h: list[int] | None = None
) -> int:
    """Integer pseudonorm resultant of the splitting pipeline.

    Without h: p_poly is univariate in x; returns Res_x(p_poly, f).
    With h: p_poly may involve y; f is lifted to Z[y] with constant
    coefficients and the result is Res_y(Res_x(p_poly, f), h).
    """
    if not isinstance(p_poly, IntBiPoly):
        p_poly = IntBiPoly(list(p_poly))
    if p_poly.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    if h is None:
        if p_poly.deg_y > 0:
            raise BadParameters("p involves y but no tower polynomial given")
        pa = [r[0] if r else 0 for r in p_poly.coeffs]
        return resultant_zz(pa, f)
    ring = _IntPolyRing()
    pa = list(p_poly.coeffs)
    fb = [tuple(_ztrim([c])) for c in _ztrim(f)]
    ry = _prs_resultant(ring, pa, fb)
    if ring.is_zero(ry):
        return 0
    return resultant_zz(list(ry), h)


def kalkbrener_kappa(n: int, m: int) -> int:
    """Combinatorial factor C(n+m, n) * C(n+m-1, n) in the resultant bound."""
    return comb(n + m, n) * comb(n + m - 1, n)
