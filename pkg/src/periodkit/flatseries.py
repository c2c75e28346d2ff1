"""Flat sections of a connection as truncated power series, their p-adic
coefficient valuations, and truncated polynomial relations among series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .core import linalg
from .core.fields import QQ, parse_rational
from .errors import DomainError


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 z + ... + c_k z^k, arithmetic modulo z^{k+1}."""

    coeffs: tuple

    @classmethod
    def make(cls, coeffs, order=None):
        c = [parse_rational(x) for x in coeffs]
        if order is not None:
            c = (c + [Fraction(0)] * (order + 1))[:order + 1]
        if not c:
            raise DomainError("empty series")
        return cls(tuple(c))

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, m):
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else Fraction(0)

    def _align(self, other):
        k = min(self.order, other.order)
        return k

    def __add__(self, other):
        k = self._align(other)
        return TruncatedSeries(tuple(self[m] + other[m] for m in range(k + 1)))

    def __sub__(self, other):
        k = self._align(other)
        return TruncatedSeries(tuple(self[m] - other[m] for m in range(k + 1)))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = parse_rational(other)
            return TruncatedSeries(tuple(c * x for x in self.coeffs))
        k = self._align(other)
        out = [Fraction(0)] * (k + 1)
        nz = [(a, x) for a, x in enumerate(self.coeffs[:k + 1]) if x]
        for b, y in enumerate(other.coeffs[:k + 1]):
            if not y:
                continue
            for a, x in nz:
                if a + b > k:
                    break
                out[a + b] += x * y
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def derivative(self):
        """Derivative, valid to order k-1."""
        return TruncatedSeries(tuple(m * self.coeffs[m] for m in range(1, len(self.coeffs))) or (Fraction(0),))

    def truncate(self, k):
        return TruncatedSeries(tuple(self[m] for m in range(k + 1)))

    def is_zero(self):
        return all(x == 0 for x in self.coeffs)

    def to_strings(self):
        return [str(x) for x in self.coeffs]


@dataclass(frozen=True)
class TruncatedSeriesConnection:
    """nabla v_i = sum_j A_ij v_j dz, entries truncated at a common order."""

    A: tuple
    order: int

    @classmethod
    def make(cls, A, order):
        r = len(A)
        if r == 0 or any(len(row) != r for row in A):
            raise DomainError("connection matrix must be square")
        rows = []
        for row in A:
            rows.append(tuple(
                x.truncate(order) if isinstance(x, TruncatedSeries) and x.order >= order
                else TruncatedSeries.make(x.coeffs if isinstance(x, TruncatedSeries) else x, order)
                for x in row))
        return cls(tuple(rows), order)

    @property
    def r(self):
        return len(self.A)


def solve_flat_sections(conn: TruncatedSeriesConnection, init):
    """Formal solution of f_i' = -sum_j A_ji f_j with f(0) = init."""
    k = conn.order
    if k < 1:
        raise DomainError("order must be >= 1")
    r = conn.r
    init = [parse_rational(x) for x in init]
    if len(init) != r:
        raise DomainError(f"initial vector must have {r} entries")
    f = [[Fraction(0)] * (k + 1) for _ in range(r)]
    for i in range(r):
        f[i][0] = init[i]
    # sparse view of A^{(a)}_{ji}
    terms = [[(j, [(a, c) for a, c in enumerate(conn.A[j][i].coeffs) if c]) for j in range(r)] for i in range(r)]
    for m in range(k):
        for i in range(r):
            s = Fraction(0)
            for j, nz in terms[i]:
                fj = f[j]
                for a, c in nz:
                    if a > m:
                        break
                    b = fj[m - a]
                    if b:
                        s += c * b
            f[i][m + 1] = -s / (m + 1)
    return [TruncatedSeries(tuple(x)) for x in f]


def flat_residual(conn: TruncatedSeriesConnection, f):
    """f_i' + sum_j A_ji f_j, which vanishes to order k-1 for a flat section."""
    k = conn.order
    out = []
    for i in range(conn.r):
        acc = f[i].derivative()
        for j in range(conn.r):
            acc = acc + (conn.A[j][i] * f[j]).truncate(k - 1)
        out.append(acc.truncate(k - 1))
    return out


def val_p(x: Fraction, p: int):
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def padic_valuation_profile(f: TruncatedSeries, p: int):
    """[(m, val_p(c_m) + ceil(m/(p-1)))] over nonzero coefficients, and its minimum."""
    if p < 2:
        raise DomainError("p must be >= 2")
    prof = []
    for m, c in enumerate(f.coeffs):
        v = val_p(c, p)
        if v is None:
            continue
        prof.append((m, v + -(-m // (p - 1))))
    return prof, (min(v for _, v in prof) if prof else None)


def monomials(nvars: int, D: int):
    """Exponent vectors of degree-D monomials in graded order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), D):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _eval_monomial(B, e, k):
    acc = TruncatedSeries.make([1], k)
    for s, power in zip(B, e):
        for _ in range(power):
            acc = (acc * s).truncate(k)
    return acc


def truncated_relations(B, D: int, order=None):
    """Kernel of Q -> Q(B_0..B_N) mod z^{k+1} on degree-D forms Q.

    Each relation is a dict {exponent vector: coefficient}, scaled to
    coprime integers with a positive leading coefficient.
    """
    if not B:
        raise DomainError("need at least one series")
    k = min(s.order for s in B) if order is None else order
    mons = monomials(len(B), D)
    cols = [_eval_monomial(B, e, k) for e in mons]
    rows = [[cols[j][m] for j in range(len(mons))] for m in range(k + 1)]
    out = []
    for v in linalg.kernel(QQ, rows, len(mons)):
        out.append(_normalize({e: c for e, c in zip(mons, v) if c}))
    return out


def _normalize(poly):
    from math import gcd, lcm
    den = 1
    for c in poly.values():
        den = lcm(den, c.denominator)
    ints = {e: int(c * den) for e, c in poly.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    lead = ints[max(ints)]
    sign = 1 if lead > 0 else -1
    return {e: Fraction(sign * c // g) for e, c in ints.items()}


def relation_vanishes(B, poly, k):
    acc = TruncatedSeries.make([0], k)
    for e, c in poly.items():
        acc = acc + _eval_monomial(B, e, k) * c
    return acc.is_zero()


def format_polynomial(poly) -> str:
    terms = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        mono = "*".join(f"x{i}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
        mono = mono or "1"
        if c == 1:
            t = mono
        elif c == -1:
            t = "-" + mono
        else:
            t = f"{c}*{mono}"
        terms.append(t)
    s = " + ".join(terms)
    return s.replace("+ -", "- ")


def random_connection(r: int, order: int, rng, p: int | None = None, degree: int = 2, height: int = 3):
    """Polynomial connection with small entries; p-integral when p is given."""
    A = []
    for _ in range(r):
        row = []
        for _ in range(r):
            coeffs = []
            for _ in range(degree + 1):
                num = rng.randint(-height, height)
                den = 1
                if p is None:
                    den = rng.randint(1, height)
                else:
                    den = rng.choice([d for d in range(1, height + 2) if d % p])
                coeffs.append(Fraction(num, den))
            row.append(TruncatedSeries.make(coeffs, order))
        A.append(row)
    return TruncatedSeriesConnection.make(A, order)
