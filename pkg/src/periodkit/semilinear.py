"""phi-modules over F_{p^e} and the centralizer dimension identity.

A module is a matrix M over E = F_{p^e}; phi(v) = M sigma(v) with sigma the
p-power Frobenius applied entrywise.  An E-linear f commutes with phi iff
f M = M sigma(f).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import linalg
from .core.fields import GF, FiniteField
from .core.rng import stream
from .errors import DomainError, LemmaViolation


def _frob_matrix(E, A, k=1):
    return [[E.frobenius(x, k) for x in r] for r in A]


@dataclass(frozen=True)
class SemilinearModule:
    field: FiniteField
    M: tuple

    def __post_init__(self):
        d = len(self.M)
        if d == 0 or any(len(r) != d for r in self.M):
            raise DomainError("M must be a nonempty square matrix")
        if self.field.is_zero(linalg.det(self.field, self.M)):
            raise DomainError("M must be invertible")

    @property
    def dim(self):
        return len(self.M)

    def apply(self, v):
        E = self.field
        return linalg.matvec(E, self.M, [E.frobenius(x) for x in v])


def phi_power_e(m: SemilinearModule):
    """Matrix of the E-linear map phi^e: M sigma(M) ... sigma^{e-1}(M)."""
    E = m.field
    P = [list(r) for r in m.M]
    for k in range(1, E.e):
        P = linalg.matmul(E, P, _frob_matrix(E, m.M, k))
    return P


def _commutation_system(m: SemilinearModule):
    """F_p-matrix of f -> f M - M sigma(f) on the e d^2 coordinates of f."""
    E = m.field
    d, e = m.dim, E.e
    cols = []
    basis_elems = [E.from_digits([int(i == k) for i in range(e)]) if e > 1 else 1 for k in range(e)]
    for i in range(d):
        for j in range(d):
            for k in range(e):
                f = [[E.zero] * d for _ in range(d)]
                f[i][j] = basis_elems[k]
                L = linalg.matsub(E, linalg.matmul(E, f, m.M), linalg.matmul(E, m.M, _frob_matrix(E, f)))
                col = []
                for r in L:
                    for x in r:
                        col.extend(E.digits(x) if e > 1 else [x])
                cols.append(col)
    return linalg.transpose(cols)


def centralizer_dim_F(m: SemilinearModule) -> int:
    """dim over F_p of {E-linear f : f phi = phi f}."""
    Fp = GF(m.field.p)
    A = _commutation_system(m)
    return len(A[0]) - linalg.rank(Fp, A)


def centralizer_basis_F(m: SemilinearModule):
    """A basis of Z(phi) over F_p, as d x d matrices over E."""
    E = m.field
    Fp = GF(E.p)
    d, e = m.dim, E.e
    A = _commutation_system(m)
    out = []
    for v in linalg.kernel(Fp, A):
        f = [[E.zero] * d for _ in range(d)]
        idx = 0
        for i in range(d):
            for j in range(d):
                digits = v[idx:idx + e]
                f[i][j] = E.from_digits(digits) if e > 1 else digits[0]
                idx += e
        out.append(f)
    return out


def centralizer_dim_E(A, E) -> int:
    """dim over E of {X : X A = A X}."""
    d = len(A)
    rows = []
    # unknown X_{ij} at index i*d + j; entry (r, s) of XA - AX
    for r in range(d):
        for s in range(d):
            row = [E.zero] * (d * d)
            for k in range(d):
                row[r * d + k] = E.add(row[r * d + k], A[k][s])
                row[k * d + s] = E.sub(row[k * d + s], A[r][k])
            rows.append(row)
    return d * d - linalg.rank(E, rows)


@dataclass(frozen=True)
class CentralizerReport:
    dim_F: int
    dim_E: int
    d: int

    @property
    def ok(self):
        return self.dim_F == self.dim_E and self.dim_F <= self.d ** 2


def verify_centralizer_lemma(m: SemilinearModule) -> CentralizerReport:
    rep = CentralizerReport(centralizer_dim_F(m), centralizer_dim_E(phi_power_e(m), m.field), m.dim)
    if not rep.ok:
        raise LemmaViolation(f"centralizer dimensions disagree: {rep}")
    return rep


def random_invertible(E, d, rng):
    while True:
        M = [[rng.randrange(E.order) for _ in range(d)] for _ in range(d)]
        if not E.is_zero(linalg.det(E, M)):
            return M


def random_module(E, d, rng) -> SemilinearModule:
    return SemilinearModule(E, tuple(tuple(r) for r in random_invertible(E, d, rng)))


def conjugate_module(m: SemilinearModule, P) -> SemilinearModule:
    """The isomorphic module P phi P^{-1}, with matrix P M sigma(P)^{-1}."""
    E = m.field
    Pi = linalg.inverse(E, _frob_matrix(E, P))
    M2 = linalg.matmul(E, linalg.matmul(E, P, m.M), Pi)
    return SemilinearModule(E, tuple(tuple(r) for r in M2))


def run_trials(trials: int, seed: int, primes=(2, 3, 5), e_values=(1, 2, 3, 4), d_values=(1, 2, 3, 4)):
    """Random modules over F_{p^e}; p, e, d drawn from the given choices.

    Returns a summary listing every trial where the two dimensions differ
    or exceed d^2.
    """
    rng = stream(seed, "centralizer-trials")
    failures = []
    hist = {}
    for t in range(trials):
        p = rng.choice(primes)
        e = rng.choice(list(e_values))
        d = rng.choice(list(d_values))
        m = random_module(GF(p, e), d, rng)
        dim_F = centralizer_dim_F(m)
        dim_E = centralizer_dim_E(phi_power_e(m), m.field)
        if dim_F != dim_E or dim_F > d * d:
            failures.append({"trial": t, "p": p, "e": e, "d": d, "dim_F": dim_F, "dim_E": dim_E})
        hist[dim_F] = hist.get(dim_F, 0) + 1
    return {"trials": trials, "seed": seed, "failures": failures,
            "dim_histogram": {str(k): v for k, v in sorted(hist.items())}}
