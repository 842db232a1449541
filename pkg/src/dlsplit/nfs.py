"""Medium/large-characteristic initial splitting through lattice reduction.

A preimage P in Z[y][x] of the shifted target g^t * T0 is read off a
short vector of an integer lattice whose rows encode relations that are
invisible mod ell: multiples of p, the echelon span of the subfield
multiples U^i * T, and x/y shifts of the modulus psi. Short vectors give
preimages with small pseudonorm Res_y(Res_x(P, f), h), hence a realistic
chance of smoothness. The module also carries the pseudonorm size
estimates behind the choice of preimage degree and side, and the
quadratic-preimage compression available in F_{p^6}.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import search, smallchar
from .algebra import CoeffField, FieldTower, TowerElement, poly
from .algebra.zpoly import IntBiPoly, kalkbrener_kappa, resultant_int
from .errors import (
    BadParameters,
    BudgetExhausted,
    DegreeOutOfRange,
    DimensionMismatch,
    NoSolution,
    RankDeficient,
    SubfieldTarget,
    TargetInSubfield,
)
from .lattice import (
    DEFAULT_DELTA,
    DEFAULT_ETA,
    IntMatrix,
    coeff_bound_holds,
    lll_reduce,
)
from .smoothness import EasParams, k_eas

_CLASSIC_FAMILIES = (
    "jlsv1",
    "jlsv2",
    "gjl",
    "conjugation",
    "joux-pierrot",
    "sarkar-singh",
)
_TOWER_FAMILIES = (
    "tnfs-base-m",
    "tower-jlsv1",
    "tower-jlsv2",
    "tower-gjl",
    "tower-conjugation",
    "tower-joux-pierrot",
    "tower-sarkar-singh",
)
FAMILY_NAMES = _CLASSIC_FAMILIES + _TOWER_FAMILIES


@dataclass(frozen=True)
class FamilyMetadata:
    """Degree and coefficient-size profile of a polynomial selection family.

    Norm exponents are powers of Q = p^n; None marks coefficient sizes
    polynomial in log p, negligible against any power of Q.
    """

    name: str
    deg_f0: int
    deg_f1: int
    norm0_exponent: Fraction | None
    norm1_exponent: Fraction | None
    D: int | None = None
    deg_px: int | None = None
    split: tuple[int, int] | None = None


def family_metadata(
    name: str,
    n: int,
    n1: int = 1,
    D: int | None = None,
    deg_px: int | None = None,
    split: tuple[int, int] | None = None,
) -> FamilyMetadata:
    if n1 < 1 or n % n1:
        raise BadParameters("n1 must divide n")
    n2 = n // n1
    if name in _CLASSIC_FAMILIES and n1 != 1:
        raise BadParameters(f"{name} requires n1 = 1")
    if name in _TOWER_FAMILIES and name != "tnfs-base-m" and n1 < 2:
        raise BadParameters(f"{name} requires a nontrivial tower (n1 > 1)")
    if name == "jlsv1":
        e = Fraction(1, 2 * n)
        return FamilyMetadata(name, n, n, e, e)
    if name == "jlsv2":
        if D is None or D <= n:
            raise BadParameters("jlsv2 needs D > n")
        e = Fraction(1, D + 1)
        return FamilyMetadata(name, n, D, e, e, D=D)
    if name == "gjl":
        if D is None or D < n:
            raise BadParameters("gjl needs D >= n")
        return FamilyMetadata(name, D + 1, D, None, Fraction(1, D + 1), D=D)
    if name == "conjugation":
        return FamilyMetadata(name, 2 * n, n, None, Fraction(1, 2 * n))
    if name == "joux-pierrot":
        if deg_px is None or deg_px < 1:
            raise BadParameters("joux-pierrot needs deg_px >= 1")
        e = Fraction(1, n * deg_px)
        return FamilyMetadata(name, n * deg_px, n, None, e, deg_px=deg_px)
    if name == "sarkar-singh":
        if split is None or len(split) != 2:
            raise BadParameters("sarkar-singh needs split=(n1s, n2s)")
        n1s, n2s = split
        if n1s < 1 or n2s < 1 or n1s * n2s != n:
            raise BadParameters("split must factor n")
        if D is None or D < n2s:
            raise BadParameters("sarkar-singh needs D >= n2s")
        e = Fraction(1, n1s * (D + 1))
        return FamilyMetadata(
            name, (D + 1) * n1s, D * n1s, None, e, D=D, split=(n1s, n2s)
        )
    if name == "tnfs-base-m":
        if n1 != n:
            raise BadParameters("tnfs-base-m requires deg h = n (n2 = 1)")
        if D is None or D < 2:
            raise BadParameters("tnfs-base-m needs D >= 2")
        e = Fraction(1, n * D)
        return FamilyMetadata(name, D, 1, e, e, D=D)
    if name == "tower-jlsv1":
        e = Fraction(1, 2 * n)
        return FamilyMetadata(name, n2, n2, e, e)
    if name == "tower-jlsv2":
        if D is None or D < n2:
            raise BadParameters("tower-jlsv2 needs D >= n2")
        e = Fraction(1, n1 * (D + 1))
        return FamilyMetadata(name, n2, D, e, e, D=D)
    if name == "tower-gjl":
        if D is None or D < n2:
            raise BadParameters("tower-gjl needs D >= n2")
        e = Fraction(1, n1 * (D + 1))
        return FamilyMetadata(name, D + 1, D, None, e, D=D)
    if name == "tower-conjugation":
        return FamilyMetadata(name, 2 * n2, n2, None, Fraction(1, 2 * n))
    if name == "tower-joux-pierrot":
        if deg_px is None or deg_px < 1:
            raise BadParameters("tower-joux-pierrot needs deg_px >= 1")
        e = Fraction(1, n * deg_px)
        return FamilyMetadata(name, n2 * deg_px, n2, None, e, deg_px=deg_px)
    if name == "tower-sarkar-singh":
        if split is None or len(split) != 2:
            raise BadParameters("tower-sarkar-singh needs split=(n2s, n3)")
        n2s, n3 = split
        if n2s < 1 or n3 < 1 or n1 * n2s * n3 != n:
            raise BadParameters("split must factor n alongside n1")
        if D is None or D < n3:
            raise BadParameters("tower-sarkar-singh needs D >= n3")
        e = Fraction(1, n1 * n2s * (D + 1))
        return FamilyMetadata(
            name, (D + 1) * n2s, D * n2s, None, e, D=D, split=(n2s, n3)
        )
    raise BadParameters(f"unknown selection family {name!r}")


@dataclass
class NfsPolySpec:
    """One side's selection polynomial with its family profile."""

    side: int
    f: tuple[int, ...]
    family: FamilyMetadata | None = None

    def __post_init__(self):
        if self.side not in (0, 1):
            raise BadParameters("side must be 0 or 1")
        f = tuple(int(c) for c in self.f)
        while f and f[-1] == 0:
            f = f[:-1]
        if len(f) < 2:
            raise BadParameters("f must have degree >= 1")
        self.f = f
        if self.family is not None:
            expected = (
                self.family.deg_f0 if self.side == 0 else self.family.deg_f1
            )
            if self.deg_f != expected:
                raise BadParameters(
                    f"deg f = {self.deg_f} but family {self.family.name} "
                    f"expects {expected} on side {self.side}"
                )

    @property
    def deg_f(self) -> int:
        return len(self.f) - 1

    @property
    def norm_inf(self) -> int:
        return max(abs(c) for c in self.f)

    @property
    def norm_exponent(self) -> Fraction | None:
        if self.family is None:
            return None
        if self.side == 0:
            return self.family.norm0_exponent
        return self.family.norm1_exponent


def validate_poly_pair(
    tower: FieldTower, spec0: NfsPolySpec, spec1: NfsPolySpec
) -> list[int]:
    """psi must divide gcd(f0, f1) mod (p, h); returns the common factor."""
    Fq = tower.base
    a = poly.ptrim([c % tower.p for c in spec0.f])
    b = poly.ptrim([c % tower.p for c in spec1.f])
    if not a or not b:
        raise BadParameters("a selection polynomial vanishes mod p")
    common = poly.pgcd(Fq, a, b)
    if poly.pmod(Fq, common, list(tower.psi)):
        raise BadParameters("psi does not divide gcd(f0, f1) mod (p, h)")
    return common


def preimage_degree_range(
    tower: FieldTower, d: int, spec: NfsPolySpec | None = None
) -> tuple[int, int | None]:
    """Degrees the relation lattice supports: lower bound keeps at least
    one echelon row inside the width, upper bound keeps deg P < deg f."""
    lower = tower.n2 - -(-d // tower.n1)
    upper = spec.deg_f - 1 if spec is not None else None
    return lower, upper


def build_alg5_lattice(
    target: TowerElement,
    basis: smallchar.SubfieldBasis,
    deg_p: int,
    spec: NfsPolySpec | None = None,
) -> IntMatrix:
    """Integer relation lattice whose short vectors are preimages of target.

    Rows: p on the diagonal of the first n - d columns; the echelon rows
    of the F_p-span of {U^i * target} whose trailing support fits the
    width; for deg_p >= n2, the digit rows of x^i * (y^j * psi mod h).
    Columns are x-major, y-digit minor; entries lifted to [0, p). The
    matrix is square of dimension n1 * (deg_p + 1) with determinant
    +-p^(n-d).
    """
    tower = basis.tower
    if basis.scalar_field_degree != 1:
        raise BadParameters("lattice rows need a prime-scalar subfield basis")
    n, n1, n2, d = tower.n, tower.n1, tower.n2, basis.d
    p = tower.p
    lower, upper = preimage_degree_range(tower, d, spec)
    if deg_p < lower or (upper is not None and deg_p > upper):
        hi = "deg f - 1" if upper is None else str(upper)
        raise DegreeOutOfRange(f"deg_p = {deg_p} outside [{lower}, {hi}]")
    width = n1 * (deg_p + 1)
    ech, pivots = smallchar._echelon_right(
        tower.base, smallchar._target_rows(basis, target)
    )
    if len(pivots) != d or sorted(pivots.values()) != list(range(n - d, n)):
        raise RankDeficient("target span lacks the generic pivot columns")
    # rows past `keep` have pivots beyond the last column and cannot fit
    keep = min(d, width - (n - d))
    rows = []
    for c in range(n - d):
        row = [0] * width
        row[c] = p
        rows.append(row)
    for i in range(keep):
        src = [int(x) for x in ech[i]]
        assert not any(src[width:]), "kept echelon row exceeds the width"
        rows.append(src[:width] + [0] * max(0, width - n))
    Fq = tower.base
    for i in range(deg_p - n2 + 1):
        for j in range(n1):
            yj = Fq.encode([0] * j + [1])
            shifted = [Fq.mul(yj, c) for c in tower.psi]
            row = [0] * width
            for k, c in enumerate(shifted):
                for jj, digit in enumerate(Fq.decode(c)):
                    row[(i + k) * n1 + jj] = digit
            rows.append(row)
    assert len(rows) == width
    return IntMatrix(rows)


def row_to_bipoly(row: list[int], n1: int) -> IntBiPoly:
    """Lattice vector to Z[y][x]: consecutive blocks of n1 y-digits."""
    if n1 < 1 or len(row) % n1:
        raise DimensionMismatch("row length is not a multiple of n1")
    return IntBiPoly([list(row[i : i + n1]) for i in range(0, len(row), n1)])


def bipoly_to_element(tower: FieldTower, bipoly: IntBiPoly) -> TowerElement:
    """Reduction mod (p, h, psi) of an integer polynomial in x and y."""
    Fq = tower.base
    packed = []
    for row in bipoly.coeffs:
        digits = [c % tower.p for c in row]
        if len(digits) > tower.n1:
            if Fq.h is None:
                raise BadParameters("y appears but the tower has n1 = 1")
            Fp = CoeffField(tower.p, _validate=False)
            digits = poly.pmod(Fp, digits, list(Fq.h))
        packed.append(Fq.encode(digits))
    lifted = poly.pmod(Fq, poly.ptrim(packed), list(tower.psi))
    return tower.element(lifted)


def prime_ideal_tags(
    bipoly: IntBiPoly, f: list[int], factors: dict[int, int]
) -> list[tuple[int, int]]:
    """(prime, c) tags of the ideals above each pseudonorm prime.

    Classic case only: each monic linear factor x + c common to P and f
    mod a prime tags the degree-one ideal (prime, x + c). The tag stores
    the constant coefficient c, not the root -c.
    """
    if bipoly.deg_y > 0:
        return []
    p_x = [r[0] if r else 0 for r in bipoly.coeffs]
    out = []
    for prime in sorted(factors):
        F = CoeffField(prime, _validate=False)
        a = poly.ptrim([c % prime for c in p_x])
        b = poly.ptrim([c % prime for c in f])
        if not a or not b:
            continue
        common = poly.pgcd(F, a, b)
        if poly.pdeg(common) < 1:
            continue
        for tag in sorted((-root) % prime for root in poly.proots(F, common)):
            out.append((prime, tag))
    return out


@dataclass
class NfsSplitResult:
    t: int
    P: IntBiPoly
    pseudonorm: int
    factors: list[tuple[int, int]]
    coeff_bound_ok: bool
    row_index: int
    ideals: list[tuple[int, int]]
    trials_used: int = 0


def evaluate_nfs_trial(
    tower: FieldTower,
    basis: smallchar.SubfieldBasis,
    spec: NfsPolySpec,
    target0: TowerElement,
    deg_p: int,
    eas: EasParams,
    backend: str,
    t: int,
) -> NfsSplitResult | None:
    """One exponent: build the lattice, reduce, scan every reduced row."""
    target = tower.gen_pow(t) * target0
    try:
        lat = build_alg5_lattice(target, basis, deg_p, spec)
    except RankDeficient:
        return None  # degenerate shift; the caller moves to the next t
    reduced = lll_reduce(lat)
    dim = reduced.nrows
    f = list(spec.f)
    h = list(tower.base.h) if tower.n1 > 1 else None
    for row_index, row in enumerate(reduced.rows):
        candidate = row_to_bipoly(row, tower.n1)
        element = bipoly_to_element(tower, candidate)
        if element.is_zero():
            continue
        pseudonorm = abs(resultant_int(candidate, f, h))
        if pseudonorm == 0:
            continue
        outcome = k_eas(pseudonorm, eas, backend=backend)
        if not outcome.smooth:
            continue
        sup = max(abs(x) for x in row)
        ok = coeff_bound_holds(sup, dim, tower.p, 4 * (tower.n - basis.d))
        # every lattice vector maps to a subfield multiple of the target
        assert tower.has_trivial_ell_log(element / target)
        return NfsSplitResult(
            t=t,
            P=candidate,
            pseudonorm=pseudonorm,
            factors=sorted(outcome.factors.items()),
            coeff_bound_ok=ok,
            row_index=row_index,
            ideals=prime_ideal_tags(candidate, f, outcome.factors),
        )
    return None


def split_nfs_search(
    tower: FieldTower,
    target0: TowerElement,
    spec: NfsPolySpec,
    deg_p: int,
    eas: EasParams,
    seed: int,
    d: int | None = None,
    max_trials: int = 10_000,
    backend: str = "trial-division",
    workers: int = 1,
) -> NfsSplitResult:
    """First exponent (in deterministic order) whose reduced lattice
    yields a preimage with an eas-smooth pseudonorm."""
    if target0.is_zero() or tower.in_proper_subfield(target0):
        raise TargetInSubfield("target lies in a proper subfield")
    if d is None:
        d = smallchar.default_subfield_degree(tower)
    basis = smallchar.subfield_basis(tower, d, scalars="prime")
    hit = search.first_success(
        functools.partial(
            evaluate_nfs_trial, tower, basis, spec, target0, deg_p, eas, backend
        ),
        functools.partial(smallchar.trial_exponent, seed, ell=tower.ell),
        max_trials,
        workers,
    )
    if hit is None:
        raise BudgetExhausted(f"no smooth pseudonorm in {max_trials} trials")
    index, _, result = hit
    result.trials_used = index + 1
    return result


def lll_factor_log2(
    dim: int, delta: Fraction = DEFAULT_DELTA, eta: Fraction = DEFAULT_ETA
) -> float:
    """log2 of the first-vector constant (delta - eta^2)^(-(dim-1)/4)."""
    return -(dim - 1) / 4 * math.log2(float(delta - eta * eta))


def chain_resultant_factor_log2(d1: int, d2: int) -> float:
    """log2 of the combinatorial growth of the two-stage resultant,
    ((2d2-1)(d1-1)+1)^(d1/2) (d1+1)^((2d2-1)(d1-1)/2) ((2d2-1)! d1^(2d2))^d1."""
    m = 2 * d2 - 1
    return (
        0.5 * d1 * math.log2(m * (d1 - 1) + 1)
        + 0.5 * m * (d1 - 1) * math.log2(d1 + 1)
        + d1 * (math.log2(math.factorial(m)) + 2 * d2 * math.log2(d1))
    )


@dataclass
class PseudonormBound:
    """All figures are log2. The objective drops combinatorial terms and
    the LLL constant; the full bounds keep them."""

    log2_objective: float
    log2_family_objective: float | None
    log2_coeff_bound: float
    log2_kalkbrener_full: float
    log2_kalkbrener_factorial: float
    log2_tower_full: float
    log2_combinatorial: float
    coeff_log2: float


def pseudonorm_bound(
    spec: NfsPolySpec,
    deg_p: int,
    tower: FieldTower,
    d: int,
    coeff_log2: float | None = None,
) -> PseudonormBound:
    """Size estimates for the pseudonorm at a given preimage degree.

    coeff_log2 overrides the expected preimage coefficient size; the
    default is the lattice estimate (1 - d/n) log2(Q) / ((deg_p+1) n1).
    """
    n, n1 = tower.n, tower.n1
    deg_f = spec.deg_f
    q_log2 = n * math.log2(tower.p)
    if coeff_log2 is None:
        coeff_log2 = (1 - d / n) * q_log2 / ((deg_p + 1) * n1)
    f_log2 = math.log2(spec.norm_inf)
    objective = n1 * deg_p * f_log2 + n1 * deg_f * coeff_log2
    family_objective = None
    if spec.family is not None:
        e = spec.norm_exponent
        fam_log2 = float(e) * q_log2 if e is not None else 0.0
        family_objective = n1 * deg_p * fam_log2 + n1 * deg_f * coeff_log2
    dim = n1 * (deg_p + 1)
    cb = lll_factor_log2(dim) + coeff_log2
    kappa = kalkbrener_kappa(deg_f, deg_p)
    kalk = math.log2(kappa) + deg_p * f_log2 + deg_f * cb
    kalk_fact = (
        math.log2(math.factorial(deg_f + deg_p)) + deg_p * f_log2 + deg_f * cb
    )
    if n1 > 1:
        h_sup = max(
            (min(c, tower.p - c) for c in tower.base.h if c), default=1
        )
        h_log2 = math.log2(max(h_sup, 1))
    else:
        h_log2 = 0.0
    comb = chain_resultant_factor_log2(n1, deg_f)
    tower_full = (
        n1 * deg_f * cb
        + n1 * deg_p * f_log2
        + (deg_p + deg_f) * (n1 - 1) * h_log2
        + comb
    )
    return PseudonormBound(
        log2_objective=objective,
        log2_family_objective=family_objective,
        log2_coeff_bound=cb,
        log2_kalkbrener_full=kalk,
        log2_kalkbrener_factorial=kalk_fact,
        log2_tower_full=tower_full,
        log2_combinatorial=comb if n1 > 1 else math.log2(kappa),
        coeff_log2=coeff_log2,
    )


@dataclass
class AdvisorChoice:
    side: int
    deg_p: int
    log2_objective: float
    log2_with_combinatorial: float


def degree_advisor(
    spec0: NfsPolySpec, spec1: NfsPolySpec, tower: FieldTower, d: int
) -> AdvisorChoice:
    """Argmin of the size objective over side and preimage degree.

    Uses the family's nominal coefficient sizes. Ties prefer the smaller
    degree, then side 0. The second figure adds the combinatorial
    resultant factor, which the minimization itself ignores.
    """
    if spec0.side != 0 or spec1.side != 1:
        raise BadParameters("advisor expects side-0 and side-1 specs")
    n, n1 = tower.n, tower.n1
    q_log2 = n * math.log2(tower.p)
    lower = tower.n2 - -(-d // n1)
    best: tuple[float, AdvisorChoice] | None = None
    for spec in (spec0, spec1):
        if spec.family is None:
            raise BadParameters("advisor needs family metadata on both sides")
        e = spec.norm_exponent
        fam_log2 = float(e) * q_log2 if e is not None else 0.0
        for deg_p in range(lower, spec.deg_f):
            coeff_log2 = (1 - d / n) * q_log2 / ((deg_p + 1) * n1)
            obj = n1 * deg_p * fam_log2 + n1 * spec.deg_f * coeff_log2
            if best is not None and obj >= best[0]:
                continue
            if n1 > 1:
                comb = chain_resultant_factor_log2(n1, spec.deg_f)
            else:
                comb = math.log2(kalkbrener_kappa(spec.deg_f, deg_p))
            best = (obj, AdvisorChoice(spec.side, deg_p, obj, obj + comb))
    assert best is not None  # deg_f > lower holds for every valid spec
    return best[1]


_FP6_UNITS: dict[tuple, tuple[TowerElement, TowerElement]] = {}


def _fp6_units(tower: FieldTower) -> tuple[TowerElement, TowerElement]:
    """U = g^((p^6-1)/(p^3-1)) in F_{p^3}, V = g^((p^6-1)/(p^2-1)) in F_{p^2}."""
    got = _FP6_UNITS.get(tower.key)
    if got is None:
        p = tower.p
        got = (tower.gen_pow(1 + p**3), tower.gen_pow(1 + p**2 + p**4))
        _FP6_UNITS[tower.key] = got
    return got


@dataclass
class Fp6Compression:
    u0: int
    u1: int
    v0: int
    w: int
    P: list[int]


def fp6_compress(tower: FieldTower, target: TowerElement) -> Fp6Compression:
    """Monic quadratic preimage of a degree-6 target over the prime field.

    Finds (u0, u1, v0) with u = u0 + u1 U + U^2 and v = v0 + V such that
    u v T drops to degree 2; w rescales to a monic polynomial. All of
    u, v, w lie in proper subfields, so the log class mod ell is kept.
    Eliminating u0, then u1, leaves one univariate polynomial in v0 whose
    F_p-roots are tried in ascending order. NoSolution signals that this
    target admits none (pick the next shift), not a failure.
    """
    if tower.n != 6 or tower.n1 != 1:
        raise BadParameters("compression needs F_{p^6} built directly on F_p")
    if target.is_zero() or tower.in_proper_subfield(target):
        raise SubfieldTarget("target lies in a proper subfield")
    Fp = tower.base
    U, V = _fp6_units(tower)
    ta = target.coeffs
    tb = (V * target).coeffs
    tc = (U * target).coeffs
    td = (U * V * target).coeffs
    te = (U * U * target).coeffs
    tf = (U * U * V * target).coeffs
    # coefficient of x^k must vanish for k in {3, 4, 5}:
    #   u0 (v0 ta_k + tb_k) + u1 (v0 tc_k + td_k) + (v0 te_k + tf_k) = 0
    # each bracket is linear in v0, stored constant-first
    lin_u0 = {k: [tb[k], ta[k]] for k in (3, 4, 5)}
    lin_u1 = {k: [td[k], tc[k]] for k in (3, 4, 5)}
    lin_c = {k: [tf[k], te[k]] for k in (3, 4, 5)}

    def cross(table: dict[int, list[int]], k: int) -> list[int]:
        return poly.psub(
            Fp,
            poly.pmul(Fp, lin_u0[3], table[k]),
            poly.pmul(Fp, lin_u0[k], table[3]),
        )

    p1, q1 = cross(lin_u1, 4), cross(lin_c, 4)
    p2, q2 = cross(lin_u1, 5), cross(lin_c, 5)
    final = poly.ptrim(
        poly.psub(Fp, poly.pmul(Fp, p1, q2), poly.pmul(Fp, p2, q1))
    )
    if not final:
        raise NoSolution("elimination degenerated for this target")
    for v0 in sorted(poly.proots(Fp, final)):
        den1 = poly.peval(Fp, p1, v0)
        den0 = poly.peval(Fp, lin_u0[3], v0)
        if den1 == 0 or den0 == 0:
            continue
        u1 = Fp.mul(Fp.neg(poly.peval(Fp, q1, v0)), Fp.inv(den1))
        num = Fp.add(
            Fp.mul(u1, poly.peval(Fp, lin_u1[3], v0)),
            poly.peval(Fp, lin_c[3], v0),
        )
        u0 = Fp.mul(Fp.neg(num), Fp.inv(den0))
        u_elem = tower.element([u0]) + tower.element([u1]) * U + U * U
        v_elem = tower.element([v0]) + V
        s = (u_elem * v_elem * target).coeffs
        if s[3] or s[4] or s[5] or s[2] == 0:
            continue
        w = Fp.inv(s[2])
        quad = [Fp.mul(s[0], w), Fp.mul(s[1], w), 1]
        assert tower.has_trivial_ell_log(tower.element(quad) / target)
        return Fp6Compression(u0=u0, u1=u1, v0=v0, w=w, P=quad)
    raise NoSolution("no consistent root for this target")


def fp6_degree2_lattice(quad: list[int], p: int) -> IntMatrix:
    """Reduced basis of the vectors congruent to a scalar multiple of the
    monic quadratic mod p; every row stays in the target's log class."""
    if len(quad) != 3 or quad[2] != 1:
        raise BadParameters("expected a monic quadratic [a0, a1, 1]")
    a0, a1 = int(quad[0]), int(quad[1])
    if not (0 <= a0 < p and 0 <= a1 < p):
        raise BadParameters("coefficients must be lifted to [0, p)")
    return lll_reduce(IntMatrix([[p, 0, 0], [0, p, 0], [a0, a1, 1]]))


@dataclass
class CompressSearchResult:
    t: int
    compression: Fp6Compression
    R: IntBiPoly
    pseudonorm: int
    factors: list[tuple[int, int]]
    coeff_bound_ok: bool
    row_index: int
    ideals: list[tuple[int, int]]
    trials_used: int = 0


def evaluate_compress_trial(
    tower: FieldTower,
    spec: NfsPolySpec,
    target0: TowerElement,
    eas: EasParams,
    backend: str,
    t: int,
) -> CompressSearchResult | None:
    """One exponent through compress, 3x3 reduce, row smoothness scan."""
    target = tower.gen_pow(t) * target0
    try:
        comp = fp6_compress(tower, target)
    except NoSolution:
        return None
    reduced = fp6_degree2_lattice(comp.P, tower.p)
    f = list(spec.f)
    for row_index, row in enumerate(reduced.rows):
        candidate = row_to_bipoly(row, 1)
        element = bipoly_to_element(tower, candidate)
        if element.is_zero():
            continue
        pseudonorm = abs(resultant_int(candidate, f, None))
        if pseudonorm == 0:
            continue
        outcome = k_eas(pseudonorm, eas, backend=backend)
        if not outcome.smooth:
            continue
        sup = max(abs(x) for x in row)
        ok = coeff_bound_holds(sup, 3, tower.p, 8)
        assert tower.has_trivial_ell_log(element / target)
        return CompressSearchResult(
            t=t,
            compression=comp,
            R=candidate,
            pseudonorm=pseudonorm,
            factors=sorted(outcome.factors.items()),
            coeff_bound_ok=ok,
            row_index=row_index,
            ideals=prime_ideal_tags(candidate, f, outcome.factors),
        )
    return None


def compress_p6_search(
    tower: FieldTower,
    target0: TowerElement,
    spec: NfsPolySpec,
    eas: EasParams,
    seed: int,
    max_trials: int = 10_000,
    backend: str = "trial-division",
    workers: int = 1,
) -> CompressSearchResult:
    """First exponent whose compression exists and yields a smooth row."""
    if target0.is_zero() or tower.in_proper_subfield(target0):
        raise TargetInSubfield("target lies in a proper subfield")
    hit = search.first_success(
        functools.partial(evaluate_compress_trial, tower, spec, target0, eas, backend),
        functools.partial(smallchar.trial_exponent, seed, ell=tower.ell),
        max_trials,
        workers,
    )
    if hit is None:
        raise BudgetExhausted(f"no smooth compressed row in {max_trials} trials")
    index, _, result = hit
    result.trials_used = index + 1
    return result
