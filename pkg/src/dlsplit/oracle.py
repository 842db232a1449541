"""Brute-force ground truth for desk-scale verification.

Everything here is intentionally naive: BSGS logs, exhaustive smoothness
counting, exhaustive subfield sweeps, and full integer factorization.
Budgets make the refusal explicit instead of letting a call quietly take
hours.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intutil
from .algebra import CoeffField, FieldTower, TowerElement, poly
from .errors import BudgetExceeded, NotInSubgroup, SubfieldTarget


@dataclass(frozen=True)
class OracleBudget:
    max_group_order: int = 1 << 30
    max_enumeration: int = 1 << 22
    max_factor_bits: int = 128


DEFAULT_BUDGET = OracleBudget()


def bsgs_log(
    tower: FieldTower,
    base: TowerElement,
    target: TowerElement,
    order: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> int:
    """x with base^x = target, 0 <= x < order. Baby-step giant-step."""
    if order > budget.max_group_order:
        raise BudgetExceeded(
            f"group order {order} exceeds BSGS budget {budget.max_group_order}"
        )
    m = intutil.iroot(order - 1, 2) + 1 if order > 1 else 1
    table: dict[tuple[int, ...], int] = {}
    cur = tower.one().coeffs
    for j in range(m):
        table.setdefault(cur, j)
        cur = tower._mul(cur, base.coeffs)
    # cur is now base^m
    giant = tower._inv(cur) if m else tower.one().coeffs
    pos = target.coeffs
    for i in range(m + 1):
        j = table.get(pos)
        if j is not None:
            x = (i * m + j) % order
            if tower._pow(base.coeffs, x) == target.coeffs:
                return x
        pos = tower._mul(pos, giant)
    raise NotInSubgroup("target is not a power of base")


def brute_smooth_count(
    q: int, b: int, d: int, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Count b-smooth monic degree-d polynomials over F_q by enumeration."""
    if q**d > budget.max_enumeration:
        raise BudgetExceeded(
            f"enumeration size {q**d} exceeds budget {budget.max_enumeration}"
        )
    field = _field_of_order(q)
    count = 0
    for low in _all_coeff_vectors(field, d):
        f = low + [1]
        st = poly.psmooth_test(field, f, b)
        if st.smooth:
            count += 1
    return count


def brute_coprime_smooth_pairs(
    q: int, b: int, d1: int, d2: int, budget: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Count coprime pairs of b-smooth monic polynomials of degrees d1, d2."""
    if q ** (d1 + d2) > budget.max_enumeration:
        raise BudgetExceeded(
            f"enumeration size {q**(d1 + d2)} exceeds budget "
            f"{budget.max_enumeration}"
        )
    field = _field_of_order(q)
    smooth1 = [
        low + [1]
        for low in _all_coeff_vectors(field, d1)
        if poly.psmooth_test(field, low + [1], b).smooth
    ]
    smooth2 = [
        low + [1]
        for low in _all_coeff_vectors(field, d2)
        if poly.psmooth_test(field, low + [1], b).smooth
    ]
    count = 0
    for f in smooth1:
        for g in smooth2:
            if poly.pdeg(poly.pgcd(field, f, g)) == 0:
                count += 1
    return count


def _field_of_order(q: int) -> CoeffField:
    fac = intutil.factorize(q)
    if len(fac) != 1:
        raise BudgetExceeded(f"{q} is not a prime power")
    ((p, k),) = fac.items()
    if k == 1:
        return CoeffField(p)
    h = poly.find_irreducible(CoeffField(p), k)
    return CoeffField(p, h)


def _all_coeff_vectors(field: CoeffField, d: int):
    """Yield all length-d lists of field elements (packed ints)."""
    qn = field.q
    vec = [0] * d
    while True:
        yield list(vec)
        i = 0
        while i < d:
            vec[i] += 1
            if vec[i] < qn:
                break
            vec[i] = 0
            i += 1
        else:
            return


def brute_subfield_multiple(
    tower: FieldTower,
    target: TowerElement,
    d: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> int:
    """Minimal degree of the lift of u*T over all nonzero u in F_{p^d}."""
    if tower.p**d > budget.max_enumeration:
        raise BudgetExceeded(
            f"subfield size {tower.p**d} exceeds budget "
            f"{budget.max_enumeration}"
        )
    if tower.in_subfield(target, d):
        raise SubfieldTarget("target already lies in the sweep subfield")
    u = _subfield_enumerator(tower, d)
    best = tower.n2 - 1
    one = tower.one()
    cur = one
    for _ in range(tower.p**d - 1):
        cand = cur * target
        deg = poly.pdeg(cand.lift())
        if deg < best:
            best = deg
        cur = cur * u
    return best


def _subfield_enumerator(tower: FieldTower, d: int) -> TowerElement:
    """A generator of F_{p^d}* inside the tower.

    x -> x^((p^n-1)/(p^d-1)) surjects onto F_{p^d}*, so a short scan over
    x + c finds a generator; the order check only needs factors of p^d - 1.
    """
    sub_order = tower.p**d - 1
    e = tower.order // sub_order
    one = tower.one().coeffs
    prime_factors = list(intutil.factorize(sub_order))
    seen = 0
    for vec in _all_coeff_vectors(tower.base, tower.n2):
        if all(c == 0 for c in vec):
            continue
        cand = tower._pow(tuple(vec), e)
        if cand == one and sub_order > 1:
            continue
        if all(
            tower._pow(cand, sub_order // r) != one for r in prime_factors
        ):
            return TowerElement(tower, cand)
        seen += 1
        if seen > 1 << 16:
            break
    raise SubfieldTarget("no subfield generator found")


def full_factor(
    m: int, budget: OracleBudget = DEFAULT_BUDGET
) -> dict[int, int]:
    """Complete prime factorization {prime: multiplicity}, keys ascending.

    The budget bounds the prime factors the oracle is willing to certify,
    not the input size: a long input made of small primes is fine, one
    large certified prime is not.
    """
    fac = intutil.factorize(m)
    for prime in fac:
        if prime.bit_length() > budget.max_factor_bits:
            raise BudgetExceeded(
                f"prime factor {prime} exceeds {budget.max_factor_bits} bits"
            )
    return fac
