"""Tower field F_{(p^n1)^n2} = F_p[y]/(h) then F_{p^n1}[x]/(psi).

Elements are tuples of n2 packed base-field integers (coefficients of
powers of x). The tower object carries the subgroup data (ell, generator g)
used by the splitting searches.
"""

from __future__ import annotations

from .. import intutil
from ..errors import (
    BadParameters,
    DivisionByZero,
    EllDoesNotDivide,
    FieldMismatch,
    GeneratorOrderTooSmall,
    NotIrreducible,
    NotPrime,
)
from . import poly
from .field import CoeffField


class TowerElement:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: "FieldTower", coeffs: tuple[int, ...]):
        self.tower = tower
        self.coeffs = coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TowerElement)
            and self.tower.key == other.tower.key
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TowerElement{self.coeffs}"

    def __add__(self, other) -> "TowerElement":
        t = self.tower
        t._check(other)
        return TowerElement(t, t._add(self.coeffs, other.coeffs))

    def __sub__(self, other) -> "TowerElement":
        t = self.tower
        t._check(other)
        return TowerElement(t, t._sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "TowerElement":
        t = self.tower
        return TowerElement(t, tuple(t.base.neg(c) for c in self.coeffs))

    def __mul__(self, other) -> "TowerElement":
        t = self.tower
        t._check(other)
        return TowerElement(t, t._mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> "TowerElement":
        t = self.tower
        return TowerElement(t, t._pow(self.coeffs, e))

    def __truediv__(self, other) -> "TowerElement":
        t = self.tower
        t._check(other)
        return TowerElement(t, t._mul(self.coeffs, t._inv(other.coeffs)))

    def inverse(self) -> "TowerElement":
        t = self.tower
        return TowerElement(t, t._inv(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_lists(self) -> list[list[int]]:
        """Nested [x-coeff][y-coeff] integer lists."""
        return [self.tower.base.decode(c) for c in self.coeffs]

    def lift(self) -> list[int]:
        """Coefficient list over F_{p^n1} (an FqPoly), trailing zeros cut."""
        out = list(self.coeffs)
        while out and out[-1] == 0:
            out.pop()
        return out


class FieldTower:
    """Validated description of F_{(p^n1)^n2} with its order-ell subgroup."""

    def __init__(
        self,
        base: CoeffField,
        psi: list[int],
        g: tuple[int, ...] | None = None,
        ell: int | None = None,
        _validate: bool = True,
    ):
        self.base = base
        self.p = base.p
        self.n1 = base.n1
        psi = poly.ptrim([c % base.q if isinstance(c, int) else c for c in psi])
        if not psi or psi[-1] != 1:
            raise BadParameters("psi must be monic")
        self.n2 = poly.pdeg(psi)
        if self.n2 < 1:
            raise BadParameters("psi must have degree >= 1")
        self.psi = tuple(psi)
        self.n = self.n1 * self.n2
        self.order = self.p**self.n - 1
        if _validate and not poly.pirreducible(base, list(psi)):
            raise NotIrreducible("psi is reducible over the base field")
        self.phi_n = intutil.cyclotomic_value(self.n, self.p)
        # x^(n2+k) mod psi rows for reduction
        self._red = self._reduction_rows()
        if ell is None:
            ell = self._default_ell()
        if _validate:
            if not intutil.is_probable_prime(ell):
                raise NotPrime(f"ell = {ell} is not prime")
            if self.phi_n % ell:
                raise EllDoesNotDivide("ell does not divide Phi_n(p)")
        self.ell = ell
        if g is None:
            g = self._default_generator()
        else:
            g = tuple(g)
            if len(g) != self.n2:
                raise BadParameters("generator coefficient length must be n2")
            if _validate and not self._order_multiple_of_ell(g):
                raise GeneratorOrderTooSmall(
                    "generator order is not a multiple of ell"
                )
        self.g = TowerElement(self, g)
        self._gpow2: list[tuple[int, ...]] | None = None

    # -- setup ----------------------------------------------------------------

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        Fq, n2 = self.base, self.n2
        top = [Fq.neg(c) for c in self.psi[:n2]]
        rows = [tuple(top)]
        for _ in range(n2 - 2):
            prev = rows[-1]
            carry = prev[n2 - 1]
            row = [Fq.mul(carry, top[0])]
            for j in range(1, n2):
                row.append(Fq.add(prev[j - 1], Fq.mul(carry, top[j])))
            rows.append(tuple(row))
        return rows

    def _default_ell(self) -> int:
        from .. import oracle

        fac = oracle.full_factor(self.phi_n)
        return max(fac)

    def _order_multiple_of_ell(self, coeffs: tuple[int, ...]) -> bool:
        if all(c == 0 for c in coeffs):
            return False
        return self._pow(coeffs, (self.order) // self.ell) != self.one().coeffs

    def _default_generator(self) -> tuple[int, ...]:
        # first x + c whose order is a multiple of ell
        if self.n2 == 1:
            raise BadParameters("n2 = 1 towers need an explicit generator")
        for c in range(self.base.q):
            cand = self.element([c, 1]).coeffs
            if self._order_multiple_of_ell(cand):
                return cand
        raise GeneratorOrderTooSmall("no degree-1 generator found")

    def __reduce__(self):
        return (
            _rebuild_tower,
            (
                self.p,
                list(self.base.h) if self.base.h else None,
                list(self.psi),
                tuple(self.g.coeffs),
                self.ell,
            ),
        )

    @property
    def key(self) -> tuple:
        return (self.p, self.base.h, self.psi)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, n1={self.n1}, n2={self.n2})"

    def _check(self, other) -> None:
        if not isinstance(other, TowerElement) or other.tower.key != self.key:
            raise FieldMismatch("operands belong to different towers")

    # -- element constructors --------------------------------------------------

    def element(self, coeffs: list) -> TowerElement:
        """Build an element from Fq ints or nested [y-coeff] lists."""
        if len(coeffs) > self.n2:
            raise BadParameters("coefficient list longer than n2")
        packed = []
        for c in coeffs:
            if isinstance(c, (list, tuple)):
                packed.append(self.base.encode(list(c)))
            else:
                packed.append(c % self.base.q)
        packed.extend([0] * (self.n2 - len(packed)))
        return TowerElement(self, tuple(packed))

    def zero(self) -> TowerElement:
        return TowerElement(self, (0,) * self.n2)

    def one(self) -> TowerElement:
        return self.element([1])

    def gen_x(self) -> TowerElement:
        return self.element([0, 1])

    # -- raw tuple arithmetic --------------------------------------------------

    def _add(self, a: tuple, b: tuple) -> tuple:
        Fq = self.base
        return tuple(Fq.add(x, y) for x, y in zip(a, b))

    def _sub(self, a: tuple, b: tuple) -> tuple:
        Fq = self.base
        return tuple(Fq.sub(x, y) for x, y in zip(a, b))

    def _mul(self, a: tuple, b: tuple) -> tuple:
        Fq, n2 = self.base, self.n2
        if n2 == 1:
            return (Fq.mul(a[0], b[0]),)
        conv = [0] * (2 * n2 - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] = Fq.add(conv[i + j], Fq.mul(x, y))
        for k in range(2 * n2 - 2, n2 - 1, -1):
            c = conv[k]
            if c:
                row = self._red[k - n2]
                for j in range(n2):
                    conv[j] = Fq.add(conv[j], Fq.mul(c, row[j]))
        return tuple(conv[:n2])

    def _pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self._pow(self._inv(a), -e)
        r = self.one().coeffs
        b = a
        while e:
            if e & 1:
                r = self._mul(r, b)
            b = self._mul(b, b)
            e >>= 1
        return r

    def _inv(self, a: tuple) -> tuple:
        lifted = list(a)
        while lifted and lifted[-1] == 0:
            lifted.pop()
        if not lifted:
            raise DivisionByZero("inverse of zero tower element")
        gpoly, s, _ = poly.pxgcd(self.base, lifted, list(self.psi))
        if poly.pdeg(gpoly) != 0:
            raise BadParameters("psi not irreducible: gcd has positive degree")
        s = poly.pscale(self.base, s, self.base.inv(gpoly[0]))
        s.extend([0] * (self.n2 - len(s)))
        return tuple(s[: self.n2])

    # -- subgroup / subfield queries ------------------------------------------

    def gen_pow(self, e: int) -> TowerElement:
        """g^e via a cached powers-of-two table."""
        if self._gpow2 is None:
            bits = max(self.order.bit_length(), 1)
            tab = [self.g.coeffs]
            for _ in range(bits):
                tab.append(self._mul(tab[-1], tab[-1]))
            self._gpow2 = tab
        e %= self.order
        r = self.one().coeffs
        i = 0
        while e:
            if e & 1:
                r = self._mul(r, self._gpow2[i])
            e >>= 1
            i += 1
        return TowerElement(self, r)

    def in_subfield(self, a: TowerElement, d: int) -> bool:
        """Is a in F_{p^d}? (d | n)"""
        if self.n % d:
            raise BadParameters("subfield degree must divide n")
        return self._pow(a.coeffs, self.p**d) == a.coeffs

    def in_proper_subfield(self, a: TowerElement) -> bool:
        for r in intutil.factorize(self.n):
            if self.in_subfield(a, self.n // r):
                return True
        return False

    def has_trivial_ell_log(self, a: TowerElement) -> bool:
        """Is a an ell-th power, i.e. log_g(a) = 0 mod ell?

        This is the operational form of log preservation: a candidate C
        for target T passes when rho(C)/T satisfies this check.
        """
        if a.is_zero():
            return False
        return self._pow(a.coeffs, self.order // self.ell) == self.one().coeffs

    def to_spec(self) -> dict:
        out = {
            "p": str(self.p),
            "n1": self.n1,
            "n2": self.n2,
            "psi": [
                [str(d) for d in self.base.decode(c)] if self.n1 > 1 else str(c)
                for c in self.psi
            ],
            "g": [
                [str(d) for d in self.base.decode(c)] if self.n1 > 1 else str(c)
                for c in self.g.coeffs
            ],
            "ell": str(self.ell),
        }
        if self.base.h is not None:
            out["h"] = [str(c) for c in self.base.h]
        return out


def _rebuild_tower(p, h, psi, g, ell) -> FieldTower:
    return FieldTower(CoeffField(p, h, _validate=False), psi, g, ell, _validate=False)


def _parse_int(v) -> int:
    if isinstance(v, str):
        return int(v)
    if isinstance(v, int):
        return v
    raise BadParameters(f"expected integer or decimal string, got {v!r}")


def _parse_fq_coeff(Fq: CoeffField, v) -> int:
    if isinstance(v, (list, tuple)):
        return Fq.encode([_parse_int(c) for c in v])
    return _parse_int(v) % Fq.q


def tower_from_spec(spec: dict) -> FieldTower:
    """Build and validate a FieldTower from a plain description record.

    Recognized keys: p, n1, n2, h (list over F_p, absent means n1 = 1),
    psi (list over F_{p^n1}; searched lexicographically when absent),
    g (element coefficient list; defaults to the first suitable x + c),
    ell (defaults to the largest prime factor of Phi_n(p); desk scale only).
    Integers may be given as decimal strings throughout.
    """
    p = _parse_int(spec["p"])
    if not intutil.is_probable_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    n1 = int(spec.get("n1", 1))
    n2 = int(spec["n2"])
    if n1 < 1 or n2 < 1:
        raise BadParameters("n1 and n2 must be positive")
    if n1 > 1:
        if "h" in spec:
            h = [_parse_int(c) for c in spec["h"]]
        else:
            h = poly.find_irreducible(CoeffField(p, _validate=False), n1)
        Fq = CoeffField(p, h)
    else:
        if "h" in spec:
            raise BadParameters("h given but n1 = 1")
        Fq = CoeffField(p)
    if "psi" in spec:
        psi = [_parse_fq_coeff(Fq, c) for c in spec["psi"]]
    else:
        psi = find_irreducible_psi(Fq, n2)
    if poly.pdeg(psi) != n2:
        raise BadParameters("psi degree does not match n2")
    g = None
    if "g" in spec:
        g_coeffs = [_parse_fq_coeff(Fq, c) for c in spec["g"]]
        g_coeffs.extend([0] * (n2 - len(g_coeffs)))
        g = tuple(g_coeffs)
    ell = _parse_int(spec["ell"]) if "ell" in spec else None
    return FieldTower(Fq, psi, g, ell)


def find_irreducible_psi(Fq: CoeffField, n2: int) -> list[int]:
    return poly.find_irreducible(Fq, n2)
