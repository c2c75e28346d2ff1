"""Bounding the Frobenius centralizer from point counts.

If the eigenvalue angles of Frobenius satisfy the point-count constraint
|sum m_s e(j theta_s)| <= q^{(n/2+1) j} for small j, a Fejer-type kernel
shows sum m_s^2 <= 3 b^2 / N.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .core.fields import parse_rational
from .errors import DomainError, LemmaViolation

SLACK = mpmath.mpf("1e-9")


@dataclass(frozen=True)
class CountBoundInput:
    q: int
    n: int
    b: int

    def __post_init__(self):
        if self.q < 2 or self.n < 2 or self.b < 1:
            raise DomainError("need q >= 2, n >= 2, b >= 1")


@dataclass(frozen=True)
class CentralizerBound:
    N: int
    bound: Fraction
    vacuous: bool

    def to_dict(self):
        return {"N": self.N, "bound": _rat(self.bound), "vacuous": self.vacuous}


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def largest_N(q: int, n: int, b: int) -> int:
    """Largest N >= 0 with q^{(n/2+1)N} < b/3, compared as 9 q^{(n+2)N} < b^2."""
    N = 0
    b2 = b * b
    step = q ** (n + 2)
    val = step
    while 9 * val < b2:
        N += 1
        val *= step
    return N


def centralizer_bound(inp: CountBoundInput) -> CentralizerBound:
    N = largest_N(inp.q, inp.n, inp.b)
    if N == 0:
        return CentralizerBound(0, Fraction(inp.b * inp.b), True)
    return CentralizerBound(N, Fraction(3 * inp.b * inp.b, N), False)


def fejer_norm(N: int) -> int:
    """Squared L2 norm of g_N = |sum_{r=-N}^{N} e(r t)|^2: (2N+1)^2 + 2 sum_{i<=2N} i^2."""
    if N < 1:
        raise DomainError("N must be >= 1")
    M = 2 * N
    return (2 * N + 1) ** 2 + M * (M + 1) * (2 * M + 1) // 3


def fejer_norm_fourier(N: int) -> int:
    """Same norm from the Fourier coefficients 2N+1-|r| of g_N."""
    return sum((2 * N + 1 - abs(r)) ** 2 for r in range(-2 * N, 2 * N + 1))


def factor_inequality(N: int) -> bool:
    """(2N+1)^2 / fejer_norm(N) <= 3/(4N), exactly."""
    return Fraction((2 * N + 1) ** 2, fejer_norm(N)) <= Fraction(3, 4 * N)


@dataclass(frozen=True)
class Spectrum:
    angles: tuple  # of (Fraction theta in [0,1), multiplicity)

    def __post_init__(self):
        for theta, m in self.angles:
            if not 0 <= theta < 1:
                raise DomainError(f"angle {theta} outside [0,1)")
            if m < 1:
                raise DomainError("multiplicities must be >= 1")

    @classmethod
    def from_json(cls, obj):
        # angles are taken mod 1, so -1/8 and 7/8 name the same eigenvalue
        return cls(tuple((parse_rational(a["theta"]) % 1, int(a["m"])) for a in obj["angles"]))

    @property
    def b(self):
        return sum(m for _, m in self.angles)

    def dim_Z(self):
        return sum(m * m for _, m in self.angles)


def verify_spectrum_bound(s: Spectrum, q: int, n: int, J: int):
    """Check the point-count constraint up to J, then dim Z <= 3 b^2 / N."""
    b = s.b
    cb = centralizer_bound(CountBoundInput(q, n, b))
    with mpmath.workdps(30):
        violations = []
        for j in range(1, J + 1):
            total = mpmath.mpc(0)
            for theta, m in s.angles:
                total += m * mpmath.expjpi(2 * j * mpmath.mpf(theta.numerator) / theta.denominator)
            lhs = abs(total)
            rhs = mpmath.sqrt(mpmath.mpf(q) ** ((n + 2) * j))
            if lhs > rhs + SLACK:
                violations.append({"j": j, "lhs": mpmath.nstr(lhs, 15), "rhs": mpmath.nstr(rhs, 15)})
    dimZ = s.dim_Z()
    report = {
        "b": b, "J": J, "N": cb.N, "vacuous": cb.vacuous, "bound": _rat(cb.bound),
        "dim_Z": dimZ, "precondition_ok": not violations, "violations": violations,
        "J_covers_2N": J >= 2 * cb.N,
    }
    holds = Fraction(dimZ) <= cb.bound
    report["holds"] = holds
    if not b <= dimZ <= b * b:
        raise LemmaViolation("sum of squared multiplicities outside [b, b^2]")
    if not violations and J >= 2 * cb.N and not holds:
        raise LemmaViolation(f"dim Z = {dimZ} exceeds 3b^2/N = {cb.bound}")
    return report
