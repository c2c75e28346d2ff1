"""Exact fields: the rationals and finite fields F_{p^e}.

Both field types expose the same small interface (zero, one, add, sub,
mul, neg, inv, div, eq, is_zero, coerce) so that the linear algebra in
``linalg`` can be written once.  Finite field elements are plain ints in
``range(q)``; an element with base-p digits (c_0, ..., c_{e-1}) stands for
c_0 + c_1 t + ... + c_{e-1} t^{e-1} modulo the defining polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from ..errors import DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def parse_rational(s) -> Fraction:
    """Parse "a/b", "a" or a number into a Fraction."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        raise DomainError(f"refusing inexact float entry {s!r}")
    text = str(s).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed rational entry {s!r}") from exc


class RationalField:
    """The field Q, elements are ``fractions.Fraction``."""

    characteristic = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def coerce(self, x) -> Fraction:
        return parse_rational(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


QQ = RationalField()


# --- polynomials over F_p as coefficient lists, lowest degree first ---

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_poly_trim(a)) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
    return a


def _monic_polys(p, deg):
    for tail in product(range(p), repeat=deg):
        yield list(reversed(tail)) + [1] if deg else [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for cand in _monic_polys(p, k):
            if not _poly_trim(_poly_mod(poly, cand, p)):
                return False
    return True


def conway_free_modulus(p: int, e: int):
    """Lexicographically least monic irreducible of degree e over F_p.

    Candidates x^e + c_{e-1}x^{e-1} + ... + c_0 are ordered by the integer
    sum c_i p^i, smallest first.
    """
    for code in range(p ** e):
        coeffs = [(code // p ** i) % p for i in range(e)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise DomainError(f"no irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """F_q with q = p^e.  Use ``GF(p, e)`` to get a cached instance."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p ** e
        self.characteristic = p
        self.order = self.q
        self.zero = 0
        self.one = 1
        if e == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = conway_free_modulus(p, e)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree e")
            if not is_irreducible(list(modulus), p):
                raise DomainError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    # -- element <-> coefficient conversions (e > 1) --
    def digits(self, a: int):
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for c in reversed(list(ds)):
            v = v * self.p + (c % self.p)
        return v

    def _poly_mulmod(self, a: int, b: int) -> int:
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _poly_mod(prod, list(self.modulus), p)
        return self.from_digits(r + [0] * (self.e - len(r)))

    def _build_tables(self):
        q = self.q
        # multiplicative group via a primitive element: exp/log tables
        order = q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        gen = None
        for g in range(2, q):
            if all(self._poly_pow(g, order // r) != 1 for r in primes):
                gen = g
                break
        if gen is None:  # q == 2 cannot happen here since e > 1
            raise DomainError("no primitive element found")
        exp = [0] * (2 * order)
        x = 1
        for i in range(order):
            exp[i] = x
            x = self._poly_mulmod(x, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        log = [0] * q
        for i in range(order):
            log[exp[i]] = i
        self._exp, self._log, self.generator = exp, log, gen
        if self.p == 2:
            self._add = None
        else:
            dig = [self.digits(a) for a in range(q)]
            self._dig = dig
            self._neg = [self.from_digits([-c for c in dig[a]]) for a in range(q)]
        self._frob = [self.pow(a, self.p) for a in range(q)]

    def _poly_pow(self, a, n):
        r, b = 1, a
        while n:
            if n & 1:
                r = self._poly_mulmod(r, b)
            b = self._poly_mulmod(b, b)
            n >>= 1
        return r

    # -- field interface --
    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no reduction mod {self.p}")
            return self.div(self.coerce(x.numerator), self.coerce(x.denominator))
        if isinstance(x, str):
            return self.coerce(parse_rational(x))
        x = int(x)
        if self.e == 1:
            return x % self.p
        return x % self.p  # integers embed through the prime field

    def element(self, x: int) -> int:
        """Interpret an int in range(q) as a field element (digit encoding)."""
        if not 0 <= x < self.q:
            raise DomainError(f"{x} is not an element code of {self!r}")
        return x

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = self._dig[a], self._dig[b]
        v = 0
        for i in range(self.e - 1, -1, -1):
            v = v * p + (da[i] + db[i]) % p
        return v

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if self.e == 1:
            return pow(a, n, self.p) if n >= 0 else pow(self.inv(a), -n, self.p)
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a, k: int = 1):
        """a -> a^(p^k)."""
        if self.e == 1:
            return a
        for _ in range(k % self.e):
            a = self._frob[a]
        return a

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self):
        return range(self.q)

    def to_str(self, a) -> str:
        return str(a)


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)


def make_field(desc) -> RationalField | FiniteField:
    """Accept "QQ", a prime power q (int or str) or a (p, e) pair."""
    if isinstance(desc, (RationalField, FiniteField)):
        return desc
    if isinstance(desc, (tuple, list)):
        return GF(int(desc[0]), int(desc[1]))
    if isinstance(desc, str) and desc.strip().upper() in ("QQ", "Q"):
        return QQ
    try:
        q = int(desc)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"unrecognized field {desc!r}") from exc
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1 or not is_prime(p):
                raise DomainError(f"{q} is not a prime power")
            return GF(p, e)
    raise DomainError(f"{q} is not a prime power")
