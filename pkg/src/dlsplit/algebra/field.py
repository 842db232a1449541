"""Coefficient field F_q, q = p^n1, with packed-integer elements.

An element is an integer in [0, q): its base-p digits are the coefficients
of the residue polynomial in y, constant term first. For n1 = 1 this is
plain arithmetic mod p. Small extension fields additionally build discrete
exp/log tables so multiplication and inversion are table lookups.
"""

from __future__ import annotations

from .. import intutil
from ..errors import BadParameters, DivisionByZero, NotIrreducible, NotPrime

# Fields up to this size get exp/log multiplication tables.
_TABLE_LIMIT = 1 << 12


class CoeffField:
    """Arithmetic context for F_{p^n1}. Elements are ints in [0, p^n1)."""

    def __init__(self, p: int, h: list[int] | None = None, _validate: bool = True):
        if _validate and not intutil.is_probable_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        self.p = p
        if h is None:
            self.n1 = 1
            self.h = None
            self.q = p
        else:
            hh = [c % p for c in h]
            while hh and hh[-1] == 0:
                hh.pop()
            if len(hh) < 2:
                raise BadParameters("h must have degree >= 1")
            if hh[-1] != 1:
                raise BadParameters("h must be monic")
            self.n1 = len(hh) - 1
            self.h = tuple(hh)
            self.q = p ** self.n1
            # y^(n1+k) mod h as digit tuples, for reduction after convolution
            self._red = self._reduction_rows()
            if _validate:
                from . import poly

                if not poly.pirreducible(CoeffField(p, _validate=False), list(hh)):
                    raise NotIrreducible(f"h = {hh} is reducible over F_{p}")
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.n1 > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _reduction_rows(self) -> list[tuple[int, ...]]:
        p, n1 = self.p, self.n1
        top = [(-c) % p for c in self.h[:n1]]
        rows = [tuple(top)]
        for _ in range(n1 - 2):
            prev = rows[-1]
            carry = prev[n1 - 1]
            row = [carry * top[0] % p]
            for j in range(1, n1):
                row.append((prev[j - 1] + carry * top[j]) % p)
            rows.append(tuple(row))
        return rows

    def _build_tables(self) -> None:
        q = self.q
        z = self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self._mul_generic(acc, z)
        if acc != 1:
            raise BadParameters("generator order mismatch while building tables")
        self._exp = exp
        self._log = log

    def _find_generator(self) -> int:
        q = self.q
        prime_factors = list(intutil.factorize(q - 1))
        for cand in range(2, q):
            if all(
                self._pow_generic(cand, (q - 1) // r) != 1 for r in prime_factors
            ):
                return cand
        raise BadParameters("no multiplicative generator found")

    def __reduce__(self):
        return (CoeffField, (self.p, list(self.h) if self.h else None, False))

    @property
    def key(self) -> tuple:
        return (self.p, self.h)

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.n1 == 1:
            return f"CoeffField(p={self.p})"
        return f"CoeffField(p={self.p}, n1={self.n1})"

    # -- encoding -------------------------------------------------------------

    def encode(self, coeffs: list[int]) -> int:
        """Pack y-coefficients (constant first) into an element integer."""
        if len(coeffs) > self.n1:
            raise BadParameters("too many coefficients for this field")
        acc = 0
        for c in reversed(coeffs):
            acc = acc * self.p + c % self.p
        return acc

    def decode(self, a: int) -> list[int]:
        """Base-p digits of a, constant term first, length n1."""
        out = []
        for _ in range(self.n1):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n1 == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.n1):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * shift
            shift *= p
        return out

    def neg(self, a: int) -> int:
        if self.n1 == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.n1):
            a, da = divmod(a, p)
            out += ((-da) % p) * shift
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_generic(self, a: int, b: int) -> int:
        p, n1 = self.p, self.n1
        da = self.decode(a)
        db = self.decode(b)
        conv = [0] * (2 * n1 - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        for k in range(2 * n1 - 2, n1 - 1, -1):
            c = conv[k] % p
            if c:
                row = self._red[k - n1]
                for j in range(n1):
                    conv[j] += c * row[j]
            conv[k] = 0
        return self.encode([c % p for c in conv[:n1]])

    def mul(self, a: int, b: int) -> int:
        if self.n1 == 1:
            return a * b % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_generic(a, b)

    def _pow_generic(self, a: int, e: int) -> int:
        r = 1
        b = a
        while e:
            if e & 1:
                r = self._mul_generic(r, b)
            b = self._mul_generic(b, b)
            e >>= 1
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.n1 == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[self._log[a] * (e % (self.q - 1)) % (self.q - 1)]
        return self._pow_generic(a, e % (self.q - 1))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.n1 == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        return self._pow_generic(a, self.q - 2)

    # -- structure ------------------------------------------------------------

    def pth_root(self, a: int) -> int:
        """Inverse of the Frobenius x -> x^p (a^(q/p))."""
        return self.pow(a, self.q // self.p)

    def in_subfield(self, a: int, e: int) -> bool:
        """Membership in F_{p^e} for e | n1."""
        return self.pow(a, self.p**e) == a

    def generator(self) -> int:
        """A fixed multiplicative generator of F_q^* (smallest by encoding)."""
        if self.n1 == 1:
            for cand in range(2, self.p):
                if all(
                    pow(cand, (self.p - 1) // r, self.p) != 1
                    for r in intutil.factorize(self.p - 1)
                ):
                    return cand
            return 1  # p = 2 or p = 3 handled by the loop; p = 2 -> 1
        if self._log is not None:
            return self._exp[1]
        return self._find_generator()

    def subfield_generator(self, e: int) -> int:
        """Generator of F_{p^e}^* inside F_q, e | n1."""
        if self.n1 % e:
            raise BadParameters("subfield degree must divide n1")
        z = self.generator()
        return self.pow(z, (self.q - 1) // (self.p**e - 1))
