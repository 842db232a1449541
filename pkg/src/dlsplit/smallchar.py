"""Small-characteristic initial splitting via subfield multiples.

Multiplying a target T by elements u of a proper subfield F_{p^d} keeps
its discrete log unchanged mod ell. The row space of
{coeffs(U^i T) : i < d'} over the scalar field F_{p^w} (w = gcd(n1, d))
contains such multiples of every achievable degree; row echelon from the
right finds the minimal-degree one, a second echelon pass from the left
adds x-power-shifted candidates, and short scalar combinations widen the
pool further. The Waterloo split (halted XGCD) is the classical baseline.
"""

from __future__ import annotations

import functools
import hashlib
from dataclasses import dataclass, field as dc_field

from . import search
from .algebra import CoeffField, FieldTower, TowerElement, poly
from .errors import (
    BadParameters,
    BudgetExhausted,
    NoBasisFound,
    RankDeficient,
    TargetInSubfield,
)


class SubfieldExpansion:
    """Rewrites F_{p^n1} entries as length-(n1/w) vectors over F_{p^w}.

    The F_{p^w}-basis of F_{p^n1} is {1, y, ..., y^(n1/w - 1)}; the
    coordinates are themselves packed field elements lying in F_{p^w},
    so all downstream row operations can reuse F_{p^n1} arithmetic.
    """

    def __init__(self, fq: CoeffField, w: int):
        if fq.n1 % w:
            raise BadParameters("scalar degree must divide n1")
        self.fq = fq
        self.w = w
        self.group = fq.n1 // w
        if self.group == 1:
            return
        p, n1 = fq.p, fq.n1
        s = fq.subfield_generator(w) if w > 1 else 1
        self.sub_elements = self._subfield_elements(s)
        # columns: digits of s^a * y^j, index j * w + a
        cols = []
        for j in range(self.group):
            yj = fq.encode([0] * j + [1])
            sa = 1
            for _ in range(w):
                cols.append(fq.decode(fq.mul(sa, yj)))
                sa = fq.mul(sa, s)
        self._solve_rows = _invert_mod_p(
            [[cols[c][r] for c in range(n1)] for r in range(n1)], p
        )
        self._s_powers = []
        sa = 1
        for _ in range(w):
            self._s_powers.append(sa)
            sa = fq.mul(sa, s)
        self._y_powers = [fq.encode([0] * j + [1]) for j in range(self.group)]

    def _subfield_elements(self, s: int) -> list[int]:
        """All of F_{p^w} as packed values: 0 then powers of s."""
        out = [0]
        cur = 1
        size = self.fq.p**self.w - 1
        for _ in range(size):
            out.append(cur)
            cur = self.fq.mul(cur, s)
        return out

    def expand(self, c: int) -> list[int]:
        if self.group == 1:
            return [c]
        p = self.fq.p
        digits = self.fq.decode(c)
        coords = [
            sum(row[i] * digits[i] for i in range(len(digits))) % p
            for row in self._solve_rows
        ]
        out = []
        for j in range(self.group):
            acc = 0
            for a in range(self.w):
                x = coords[j * self.w + a]
                if x:
                    acc = self.fq.add(acc, self.fq.mul(x, self._s_powers[a]))
            out.append(acc)
        return out

    def contract(self, coords: list[int]) -> int:
        if self.group == 1:
            return coords[0]
        acc = 0
        for j, c in enumerate(coords):
            if c:
                acc = self.fq.add(acc, self.fq.mul(c, self._y_powers[j]))
        return acc


def _invert_mod_p(m: list[list[int]], p: int) -> list[list[int]]:
    size = len(m)
    aug = [row[:] + [1 if i == j else 0 for j in range(size)] for i, row in enumerate(m)]
    for col in range(size):
        piv = next((i for i in range(col, size) if aug[i][col] % p), None)
        if piv is None:
            raise RankDeficient("basis change matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for i in range(size):
            if i != col and aug[i][col] % p:
                c = aug[i][col]
                aug[i] = [(x - c * y) % p for x, y in zip(aug[i], aug[col])]
    return [row[size:] for row in aug]


@dataclass
class SubfieldBasis:
    tower: FieldTower
    d: int
    d_prime: int
    scalar_field_degree: int
    U: TowerElement
    powers: list[TowerElement]
    expansion: SubfieldExpansion

    @property
    def base_degree_bound(self) -> int:
        return self.tower.n2 - -(-self.d // self.tower.n1)


@dataclass
class EchelonCandidate:
    """x^e_i * poly is a subfield multiple of the target."""

    e_i: int
    poly: list[int]
    degree_excess: int = 0


@dataclass
class SplitResult:
    t: int
    poly: list[int]
    e_i: int
    factors: list[tuple[list[int], int]]
    subfield_unit_checked: bool
    strategy: str
    trials_used: int
    denominator: list[int] | None = None
    denominator_factors: list[tuple[list[int], int]] = dc_field(
        default_factory=list
    )


def subfield_basis(
    tower: FieldTower, d: int, scalars: str = "auto"
) -> SubfieldBasis:
    """Power basis of the degree-d subfield, ready for row reduction.

    scalars="auto" restricts row-operation scalars to F_{p^gcd(n1,d)}
    (d' = d/gcd rows); scalars="prime" forces F_p scalars and d rows,
    as the lattice construction of the NFS search expects.
    """
    n = tower.n
    if n % d or not 1 <= d < n:
        raise BadParameters("d must be a proper divisor of n (1 <= d < n)")
    if scalars == "auto":
        w = _gcd(tower.n1, d)
    elif scalars == "prime":
        w = 1
    else:
        raise BadParameters(f"unknown scalar mode {scalars!r}")
    d_prime = d // w
    expansion = SubfieldExpansion(tower.base, w)
    # U in F_{p^d'} when its powers can stay independent, else in F_{p^d}
    if _gcd(tower.n1, d_prime) == 1:
        exponent = (tower.order) // (tower.p**d_prime - 1)
    else:
        exponent = (tower.order) // (tower.p**d - 1)
    g = tower.g
    for trial in range(tower.p):
        base_g = g if trial == 0 else g * _enum_element(tower, trial + 1)
        cand_u = base_g**exponent
        powers = [tower.one()]
        for _ in range(d_prime - 1):
            powers.append(powers[-1] * cand_u)
        if _powers_independent(tower, powers, expansion):
            return SubfieldBasis(
                tower=tower,
                d=d,
                d_prime=d_prime,
                scalar_field_degree=w,
                U=cand_u,
                powers=powers,
                expansion=expansion,
            )
    raise NoBasisFound(
        f"no independent power basis after {tower.p} generator tweaks"
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _enum_element(tower: FieldTower, idx: int) -> TowerElement:
    """Deterministic nonzero element enumeration for basis retries."""
    q = tower.base.q
    coeffs = []
    k = idx
    while k:
        coeffs.append(k % q)
        k //= q
    if not coeffs:
        coeffs = [1]
    return tower.element(coeffs[: tower.n2])


def _powers_independent(
    tower: FieldTower, powers: list[TowerElement], expansion: SubfieldExpansion
) -> bool:
    rows = [_expand_row(expansion, u.coeffs) for u in powers]
    reduced, pivots = _echelon_right(tower.base, rows)
    return len(pivots) == len(powers)


def _expand_row(expansion: SubfieldExpansion, coeffs) -> list[int]:
    out = []
    for c in coeffs:
        out.extend(expansion.expand(c))
    return out


def _echelon_right(fq: CoeffField, rows: list[list[int]]):
    """Echelon from the right: pivots fill slots bottom-up as columns are
    scanned right to left; elimination is upward only. Row 0 ends up with
    the smallest trailing support (= lowest polynomial degree)."""
    rows = [r[:] for r in rows]
    m = len(rows)
    width = len(rows[0])
    slot = m - 1
    pivots: dict[int, int] = {}
    for col in range(width - 1, -1, -1):
        piv = None
        for i in range(slot, -1, -1):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[slot], rows[piv] = rows[piv], rows[slot]
        inv = fq.inv(rows[slot][col])
        rows[slot] = [fq.mul(x, inv) for x in rows[slot]]
        for i in range(slot):
            c = rows[i][col]
            if c:
                top, base = rows[i], rows[slot]
                rows[i] = [
                    fq.sub(top[k], fq.mul(c, base[k])) for k in range(width)
                ]
        pivots[slot] = col
        slot -= 1
        if slot < 0:
            break
    return rows, pivots


def _echelon_left_down(fq: CoeffField, rows: list[list[int]]):
    """Forward pass from the left with downward elimination only; keeps
    the trailing structure of the right pass intact on undisturbed rows."""
    rows = [r[:] for r in rows]
    m = len(rows)
    width = len(rows[0])
    slot = 0
    leads: list[int | None] = [None] * m
    for col in range(width):
        piv = None
        for i in range(slot, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[slot], rows[piv] = rows[piv], rows[slot]
        inv = fq.inv(rows[slot][col])
        rows[slot] = [fq.mul(x, inv) for x in rows[slot]]
        for i in range(slot + 1, m):
            c = rows[i][col]
            if c:
                low, base = rows[i], rows[slot]
                rows[i] = [
                    fq.sub(low[k], fq.mul(c, base[k])) for k in range(width)
                ]
        leads[slot] = col
        slot += 1
        if slot >= m:
            break
    return rows, leads


def _target_rows(basis: SubfieldBasis, target: TowerElement) -> list[list[int]]:
    return [
        _expand_row(basis.expansion, (u * target).coeffs)
        for u in basis.powers
    ]


def _repack(basis: SubfieldBasis, row: list[int]) -> list[int]:
    g = basis.expansion.group
    coeffs = [
        basis.expansion.contract(row[i : i + g]) for i in range(0, len(row), g)
    ]
    return poly.ptrim(coeffs)


def _check_not_in_subfield(tower: FieldTower, target: TowerElement) -> None:
    if target.is_zero() or tower.in_proper_subfield(target):
        raise TargetInSubfield("target lies in a proper subfield")


def reduce_degree(target: TowerElement, basis: SubfieldBasis) -> list[int]:
    """Lowest-degree subfield multiple: coefficients of P with
    rho(P) = u * target, u in F_{p^d}, deg P <= n2 - ceil(d/n1)."""
    tower = basis.tower
    _check_not_in_subfield(tower, target)
    rows = _target_rows(basis, target)
    reduced, pivots = _echelon_right(tower.base, rows)
    if len(pivots) != basis.d_prime:
        raise RankDeficient("target rows lost rank against a valid basis")
    out = _repack(basis, reduced[0])
    assert poly.pdeg(out) <= basis.base_degree_bound
    return out


def double_echelon_candidates(
    target: TowerElement, basis: SubfieldBasis
) -> list[EchelonCandidate]:
    """d' candidates (e_i, P_i) with rho(x^e_i * P_i) = u_i * target.

    Rows disturbed by pivot swaps in the left pass may exceed the base
    degree bound (typically by 1 or 2); the excess is recorded per row,
    not asserted.
    """
    tower = basis.tower
    _check_not_in_subfield(tower, target)
    rows = _target_rows(basis, target)
    reduced, pivots = _echelon_right(tower.base, rows)
    if len(pivots) != basis.d_prime:
        raise RankDeficient("target rows lost rank against a valid basis")
    rows2, leads = _echelon_left_down(tower.base, reduced)
    g = basis.expansion.group
    out = []
    for i, row in enumerate(rows2):
        if leads[i] is None:
            continue
        packed = _repack(basis, row)
        e_i = 0
        while packed[e_i] == 0:
            e_i += 1
        shifted = packed[e_i:]
        excess = max(0, poly.pdeg(shifted) - basis.base_degree_bound)
        out.append(EchelonCandidate(e_i=e_i, poly=shifted, degree_excess=excess))
    return out


def expand_candidates(
    basis: SubfieldBasis,
    candidates: list[EchelonCandidate],
    max_extra_degree: int,
    limit: int = 512,
) -> list[EchelonCandidate]:
    """Scalar combinations of same-degree-group rows (window n1/w).

    Scalars run over F_{p^w}; the first nonzero scalar is normalized to 1
    so associate combinations appear once. Output degree is capped at the
    base bound plus max_extra_degree.
    """
    if max_extra_degree not in (0, 1, 2):
        raise BadParameters("max_extra_degree must be 0, 1 or 2")
    group = basis.expansion.group
    if max_extra_degree == 0 or group < 2 or len(candidates) < 2:
        return []
    fq = basis.tower.base
    scalars = basis.expansion.sub_elements
    out: list[EchelonCandidate] = []
    bound = basis.base_degree_bound + max_extra_degree
    for start in range(len(candidates) - group + 1):
        window = candidates[start : start + group]
        fulls = [[0] * c.e_i + c.poly for c in window]
        for combo in _scalar_combos(scalars, group):
            if len(out) >= limit:
                return out
            acc: list[int] = []
            for lam, fp in zip(combo, fulls):
                if lam == 0:
                    continue
                term = [fq.mul(lam, x) for x in fp]
                acc = poly.padd(fq, acc, term)
            if not acc:
                continue
            e_i = 0
            while acc[e_i] == 0:
                e_i += 1
            shifted = acc[e_i:]
            deg = poly.pdeg(shifted)
            if deg > bound:
                continue
            out.append(
                EchelonCandidate(
                    e_i=e_i,
                    poly=shifted,
                    degree_excess=max(0, deg - basis.base_degree_bound),
                )
            )
    return out


def _scalar_combos(scalars: list[int], size: int):
    """Tuples over the scalar set, first nonzero entry = scalars[1] (=1),
    at least two nonzero entries, deterministic counter order."""
    counts = [0] * size
    total = len(scalars) ** size
    for _ in range(total):
        combo = tuple(scalars[c] for c in counts)
        nz = [i for i, v in enumerate(combo) if v]
        if len(nz) >= 2 and combo[nz[0]] == scalars[1]:
            yield combo
        i = 0
        while i < size:
            counts[i] += 1
            if counts[i] < len(scalars):
                break
            counts[i] = 0
            i += 1
        else:
            return


def waterloo_split(
    tower: FieldTower, target: TowerElement
) -> tuple[list[int], list[int]]:
    """(U, V) with target * V = U mod psi, via XGCD halted at half degree.

    deg U <= floor((n2-1)/2) and deg V <= ceil((n2-1)/2); for even n2 - 1
    both bounds coincide, otherwise V may carry the extra degree.
    """
    if target.is_zero():
        raise BadParameters("waterloo split of zero")
    fq = tower.base
    half = (tower.n2 - 1) // 2
    r0, r1 = list(tower.psi), target.lift()
    s0, s1 = [], [1]
    if poly.pdeg(r1) <= half:
        return r1, [1]
    while poly.pdeg(r1) > half:
        q, r = poly.pdivmod(fq, r0, r1)
        s_new = poly.psub(fq, s0, poly.pmul(fq, q, s1))
        r0, r1 = r1, r
        s0, s1 = s1, s_new
    u, v = r1, s1
    # psi irreducible and target nonzero: the sequence cannot reach zero
    # before a constant remainder
    assert u
    assert poly.pdeg(u) <= half
    assert poly.pdeg(v) <= tower.n2 - 1 - half
    return u, v


STRATEGIES = (
    "subfield",
    "subfield+double",
    "subfield+double+expand",
    "waterloo",
)


def trial_exponent(seed: int, index: int, ell: int) -> int:
    """Deterministic t in [1, ell-1] for a (seed, trial index) pair."""
    digest = hashlib.blake2b(
        f"{seed}:{index}".encode(), digest_size=64
    ).digest()
    return 1 + int.from_bytes(digest, "big") % (ell - 1)


def candidates_for_trial(
    tower: FieldTower,
    basis: SubfieldBasis | None,
    target: TowerElement,
    strategy: str,
) -> list[EchelonCandidate]:
    if strategy == "subfield":
        p = reduce_degree(target, basis)
        return [EchelonCandidate(e_i=0, poly=p)]
    cands = double_echelon_candidates(target, basis)
    if strategy == "subfield+double":
        return cands
    return cands + expand_candidates(basis, cands, max_extra_degree=2)


def initial_split_search(
    tower: FieldTower,
    target0: TowerElement,
    b1: int,
    strategy: str,
    seed: int,
    max_trials: int = 100_000,
    d: int | None = None,
    workers: int = 1,
) -> SplitResult:
    """Search over t for a B1-smooth splitting of g^t * target0.

    Deterministic given the seed: trial t values come from a counter
    hash, candidates are tested in construction order, the smallest
    trial index with a smooth hit wins regardless of worker count.
    """
    if b1 < 1:
        raise BadParameters("b1 must be >= 1")
    if strategy not in STRATEGIES:
        raise BadParameters(f"unknown strategy {strategy!r}")
    basis = None
    if strategy != "waterloo":
        if d is None:
            d = default_subfield_degree(tower)
        basis = subfield_basis(tower, d)
    hit = search.first_success(
        functools.partial(evaluate_trial, tower, basis, target0, b1, strategy),
        functools.partial(trial_exponent, seed, ell=tower.ell),
        max_trials,
        workers,
    )
    if hit is None:
        raise BudgetExhausted(f"no {b1}-smooth splitting in {max_trials} trials")
    idx, _, result = hit
    result.trials_used = idx + 1
    return result


def default_subfield_degree(tower: FieldTower) -> int:
    """Largest proper divisor of n."""
    n = tower.n
    for r in range(2, n + 1):
        if n % r == 0:
            return n // r
    raise BadParameters("n is 1, no proper subfield")


def evaluate_trial(
    tower: FieldTower,
    basis: SubfieldBasis | None,
    target0: TowerElement,
    b1: int,
    strategy: str,
    t: int,
) -> SplitResult | None:
    """Test one exponent; returns a fully checked result or None."""
    fq = tower.base
    target = tower.gen_pow(t) * target0
    if strategy == "waterloo":
        u, v = waterloo_split(tower, target)
        su = poly.psmooth_test(fq, u, b1)
        if not su.smooth:
            return None
        sv = poly.psmooth_test(fq, v, b1)
        if not sv.smooth:
            return None
        checked = _waterloo_identity_holds(tower, target, u, v)
        return SplitResult(
            t=t,
            poly=u,
            e_i=0,
            factors=su.factors,
            subfield_unit_checked=checked,
            strategy=strategy,
            trials_used=0,
            denominator=v,
            denominator_factors=sv.factors,
        )
    for cand in candidates_for_trial(tower, basis, target, strategy):
        st = poly.psmooth_test(fq, cand.poly, b1)
        if st.smooth:
            checked = subfield_unit_check(tower, target, cand)
            return SplitResult(
                t=t,
                poly=cand.poly,
                e_i=cand.e_i,
                factors=st.factors,
                subfield_unit_checked=checked,
                strategy=strategy,
                trials_used=0,
            )
    return None


def _waterloo_identity_holds(
    tower: FieldTower, target: TowerElement, u: list[int], v: list[int]
) -> bool:
    ue = tower.element(u)
    ve = tower.element(v)
    return target * ve == ue


def subfield_unit_check(
    tower: FieldTower, target: TowerElement, cand: EchelonCandidate
) -> bool:
    """(rho(x^e * P) / target)^((p^n - 1)/ell) = 1."""
    lifted = [0] * cand.e_i + list(cand.poly)
    if poly.pdeg(lifted) > tower.n2 - 1:
        raise BadParameters("candidate degree exceeds n2 - 1")
    elem = tower.element(lifted)
    ratio = elem / target
    return tower.has_trivial_ell_log(ratio)
