"""Exact integer LLL and lattice membership.

Everything runs over exact rationals: Gram-Schmidt, the Lovasz tests,
and the first-vector guarantee. Slow compared to floating LLL, fine at
the desk-scale dimensions used here (<= 40), and the certificate is
unconditional.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    BadParameters,
    DimensionMismatch,
    RankDeficient,
)

DEFAULT_DELTA = Fraction(99, 100)
DEFAULT_ETA = Fraction(501, 1000)


class IntMatrix:
    """Row-major integer matrix; rows are the lattice basis vectors."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: list[list[int]]):
        if not rows:
            raise BadParameters("matrix needs at least one row")
        width = len(rows[0])
        if width == 0:
            raise BadParameters("matrix needs at least one column")
        out = []
        for r in rows:
            if len(r) != width:
                raise BadParameters("ragged rows")
            out.append([int(x) for x in r])
        self.rows = out
        self.nrows = len(out)
        self.ncols = width

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols})"

    def det(self) -> int:
        """Exact determinant (square matrices), fraction-free elimination."""
        if self.nrows != self.ncols:
            raise BadParameters("determinant of a nonsquare matrix")
        m = [r[:] for r in self.rows]
        size = self.nrows
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

    def gram_det(self) -> int:
        """det(B B^T) = det(L)^2; works for nonsquare full-row-rank bases."""
        g = [
            [sum(a * b for a, b in zip(r1, r2)) for r2 in self.rows]
            for r1 in self.rows
        ]
        return IntMatrix(g).det()


def _gso(rows: list[list[int]]):
    """Exact Gram-Schmidt: returns (mu, squared norms of the B* vectors)."""
    m = len(rows)
    width = len(rows[0])
    mu = [[Fraction(0)] * m for _ in range(m)]
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for i in range(m):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            dot = sum(Fraction(rows[i][k]) * star[j][k] for k in range(width))
            if norms[j] == 0:
                raise RankDeficient("basis rows are linearly dependent")
            mu[i][j] = dot / norms[j]
            v = [v[k] - mu[i][j] * star[j][k] for k in range(width)]
        star.append(v)
        norms.append(sum(x * x for x in v))
    if norms and norms[-1] == 0:
        raise RankDeficient("basis rows are linearly dependent")
    return mu, norms


def lll_reduce(
    basis: IntMatrix,
    delta: Fraction = DEFAULT_DELTA,
    eta: Fraction = DEFAULT_ETA,
    verify: bool = True,
) -> IntMatrix:
    """(delta, eta)-reduced basis of the lattice spanned by the rows.

    With verify=True the output is checked exactly: size reduction,
    Lovasz conditions, and the first-vector bound
    ||v1|| <= (delta - eta^2)^(-(m-1)/4) det(L)^(1/m).
    """
    delta = Fraction(delta)
    eta = Fraction(eta)
    if not Fraction(1, 4) < delta < 1:
        raise BadParameters("delta must lie in (1/4, 1)")
    if not (Fraction(1, 2) < eta and eta * eta < delta):
        raise BadParameters("eta must satisfy 1/2 < eta < sqrt(delta)")
    rows = [r[:] for r in basis.rows]
    m = len(rows)
    mu, norms = _gso(rows)  # raises RankDeficient on dependent rows
    half = Fraction(1, 2)
    k = 1
    while k < m:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > half:
                r = round(mu[k][j])
                rows[k] = [a - r * b for a, b in zip(rows[k], rows[j])]
                for l in range(j):
                    mu[k][l] -= r * mu[j][l]
                mu[k][j] -= r
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            rows[k - 1], rows[k] = rows[k], rows[k - 1]
            mu, norms = _gso(rows)
            k = max(k - 1, 1)
    out = IntMatrix(rows)
    if verify:
        _verify_reduced(out, delta, eta)
    return out


def _verify_reduced(basis: IntMatrix, delta: Fraction, eta: Fraction) -> None:
    rows = basis.rows
    m = len(rows)
    mu, norms = _gso(rows)
    for i in range(m):
        for j in range(i):
            assert abs(mu[i][j]) <= eta, "size reduction violated"
    for k in range(1, m):
        assert norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1], (
            "Lovasz condition violated"
        )
    # ||v1||^(2m) * (delta - eta^2)^(m(m-1)/2) <= det(G), all exact
    v1_sq = sum(x * x for x in rows[0])
    lhs = Fraction(v1_sq) ** m * (delta - eta * eta) ** (m * (m - 1) // 2)
    assert lhs <= basis.gram_det(), "first-vector guarantee violated"


def coeff_bound_holds(
    sup_norm: int,
    dim: int,
    rhs_base: int,
    rhs_exp_times4: int,
    delta: Fraction = DEFAULT_DELTA,
    eta: Fraction = DEFAULT_ETA,
) -> bool:
    """Exact test of sup_norm <= C * rhs_base^(rhs_exp_times4 / (4*dim))
    with C = (delta - eta^2)^(-(dim-1)/4), cleared to integer powers."""
    if dim < 1:
        raise BadParameters("dimension must be >= 1")
    delta = Fraction(delta)
    eta = Fraction(eta)
    lhs = Fraction(sup_norm) ** (4 * dim) * (delta - eta * eta) ** (
        dim * (dim - 1)
    )
    return lhs <= Fraction(rhs_base) ** rhs_exp_times4


def lattice_membership(
    basis: IntMatrix, v: list[int]
) -> tuple[bool, list[int] | None]:
    """Is v an integer combination of the rows? Exact rational solve."""
    if len(v) != basis.ncols:
        raise DimensionMismatch(
            f"vector length {len(v)} != basis width {basis.ncols}"
        )
    rows = basis.rows
    m = len(rows)
    # x G = v B^T with G = B B^T; G invertible iff full row rank
    g = [
        [Fraction(sum(a * b for a, b in zip(r1, r2))) for r2 in rows]
        for r1 in rows
    ]
    rhs = [Fraction(sum(a * b for a, b in zip(v, r))) for r in rows]
    coords = _solve_linear(g, rhs)
    if coords is None:
        raise RankDeficient("basis rows are linearly dependent")
    ints = []
    for c in coords:
        if c.denominator != 1:
            return False, None
        ints.append(c.numerator)
    for col in range(basis.ncols):
        if sum(ints[i] * rows[i][col] for i in range(m)) != v[col]:
            return False, None
    return True, ints


def _solve_linear(
    a: list[list[Fraction]], b: list[Fraction]
) -> list[Fraction] | None:
    """Gaussian elimination over Q; None when the matrix is singular."""
    m = len(a)
    aug = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(m):
        piv = None
        for i in range(col, m):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(m):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][m] for i in range(m)]


