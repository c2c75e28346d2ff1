"""Symplectic spaces, transvections, density certificates and bad Lagrangians.

Coordinates on a 2d-dimensional space are ordered (e_1..e_d, e_1'..e_d')
with <e_i, e_i'> = 1 = -<e_i', e_i>.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import linalg
from .core.fields import QQ, GF, FiniteField, is_prime
from .core.rng import stream
from .core.subspaces import iter_rref_subspaces, span_codes
from .errors import BudgetError, DomainError, SizeLimitError


@dataclass(frozen=True)
class SymplecticSpace:
    d: int
    field: object = QQ

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("half-dimension must be >= 1")

    @property
    def dim(self):
        return 2 * self.d

    def pairing(self, x, y):
        F, d = self.field, self.d
        s = F.zero
        for i in range(d):
            s = F.add(s, F.sub(F.mul(x[i], y[d + i]), F.mul(x[d + i], y[i])))
        return s

    def gram(self):
        F, n = self.field, self.dim
        G = [[F.zero] * n for _ in range(n)]
        for i in range(self.d):
            G[i][self.d + i] = F.one
            G[self.d + i][i] = F.neg(F.one)
        return G

    def basis_vector(self, i, primed=False):
        v = [self.field.zero] * self.dim
        v[i + (self.d if primed else 0)] = self.field.one
        return tuple(v)

    def vector(self, entries):
        if len(entries) != self.dim:
            raise DomainError(f"vector must have {self.dim} entries")
        return tuple(self.field.coerce(x) for x in entries)

    def is_isotropic(self, basis) -> bool:
        F = self.field
        return all(F.is_zero(self.pairing(u, v)) for u in basis for v in basis)

    def is_lagrangian(self, basis) -> bool:
        return (len(basis) == self.d and linalg.rank(self.field, basis) == self.d
                and self.is_isotropic(basis))

    def preserves_form(self, A) -> bool:
        F = self.field
        G = self.gram()
        return linalg.matmul(F, linalg.matmul(F, linalg.transpose(A), G), A) == G


@dataclass(frozen=True)
class Transvection:
    space: SymplecticSpace
    center: tuple
    scale: object = None

    def __call__(self, x):
        return apply_transvection(self, x)

    def matrix(self):
        n = self.space.dim
        F = self.space.field
        cols = [apply_transvection(self, [F.one if i == j else F.zero for i in range(n)]) for j in range(n)]
        return linalg.transpose(cols)


def apply_transvection(t: Transvection, x):
    F = t.space.field
    r = F.one if t.scale is None else t.scale
    c = F.mul(r, t.space.pairing(t.center, x))
    return tuple(F.add(xi, F.mul(c, vi)) for xi, vi in zip(x, t.center))


def transvection_graph_certificate(space: SymplecticSpace, S):
    """Graph on S with an edge when two centers pair nontrivially.

    A connected graph whose vectors span V certifies (by the cited
    criterion) that the Zariski closure of the generated group is Sp(V).
    """
    F = space.field
    S = [tuple(v) for v in S]
    for v in S:
        if all(F.is_zero(x) for x in v):
            raise DomainError("zero vector in transvection set")
    n = len(S)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if not F.is_zero(space.pairing(S[i], S[j])):
                parent[find(i)] = find(j)
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    components = sorted(comps.values())
    span_dim = linalg.rank(F, S) if S else 0
    connected = len(components) <= 1 and n > 0
    return {
        "connected": connected,
        "span_dim": span_dim,
        "components": components,
        "certifies_full": connected and span_dim == space.dim,
    }


def fixed_space_dim(F, u) -> int:
    n = len(u)
    return n - linalg.rank(F, linalg.matsub(F, u, linalg.identity(F, n)))


def is_unipotent(F, u) -> bool:
    n = len(u)
    N = linalg.matsub(F, u, linalg.identity(F, n))
    return linalg.is_zero_matrix(F, linalg.matpow(F, N, n))


def goursat_witness_check(F, per_factor_certs, pair_witnesses, n_factors=None):
    """Which hypotheses of the Goursat-type criterion are witnessed.

    per_factor_certs: list of certificate dicts (from
    ``transvection_graph_certificate``), one per factor.
    pair_witnesses: list of (i, j, element) with element a list of
    per-factor matrices; a pair is witnessed when components i and j are
    unipotent with fixed spaces of different dimension.
    """
    N = len(per_factor_certs) if n_factors is None else n_factors
    factors_ok = [bool(c.get("certifies_full")) for c in per_factor_certs]
    witnessed = set()
    details = []
    for i, j, element in pair_witnesses:
        if not (0 <= i < N and 0 <= j < N) or i == j:
            raise DomainError(f"bad factor pair ({i}, {j})")
        ui, uj = element[i], element[j]
        for u in (ui, uj):
            if not is_unipotent(F, u):
                raise DomainError("witness component is not unipotent")
        di, dj = fixed_space_dim(F, ui), fixed_space_dim(F, uj)
        ok = di != dj
        details.append({"pair": [i, j], "fixed_dims": [di, dj], "witnessed": ok})
        if ok:
            witnessed.add((min(i, j), max(i, j)))
    required = [(i, j) for i in range(N) for j in range(i + 1, N)]
    missing = [list(p) for p in required if p not in witnessed]
    return {
        "factors_certified": factors_ok,
        "pairs_witnessed": sorted(list(p) for p in witnessed),
        "pairs_missing": missing,
        "details": details,
        "all_witnessed": all(factors_ok) and not missing,
    }


# --- bad Lagrangian search ---

def validate_tuple(space: SymplecticSpace, tup):
    out = []
    for k, basis in enumerate(tup):
        basis = [space.vector(v) for v in basis]
        if not space.is_lagrangian(basis):
            raise DomainError(f"F_{k + 1} is not Lagrangian")
        out.append(basis)
    return out


def _satisfies(F, W, tup) -> bool:
    w = len(W)
    for Fj in tup:
        if 2 * _int_dim(F, W, Fj) < w:
            return False
    return True


def _int_dim(F, A, B):
    return len(A) + len(B) - linalg.rank(F, list(A) + list(B))


def _transverse(F, A, B) -> bool:
    return linalg.rank(F, list(A) + list(B)) == len(A) + len(B)


def _composite(F, tup, d):
    """Coordinates of Phi_{12;3} and C = Phi_{12;4}^{-1} Phi_{12;3} on F_1."""
    B = linalg.transpose(list(tup[0]) + list(tup[1]))  # columns: F1 basis then F2 basis
    Binv = linalg.inverse(F, B)

    def split(Fj):
        coords = linalg.matmul(F, Binv, linalg.transpose(Fj))
        return coords[:d], coords[d:]

    A3, C3 = split(tup[2])
    A4, C4 = split(tup[3])
    phi3 = linalg.matmul(F, C3, linalg.inverse(F, A3))
    phi4 = linalg.matmul(F, C4, linalg.inverse(F, A4))
    return phi3, linalg.matmul(F, linalg.inverse(F, phi4), phi3)


def _candidate_W(F, tup, d, phi3, U):
    """W = U + Phi_{12;3}(U) in ambient coordinates, as an RREF basis."""
    f1, f2 = tup[0], tup[1]
    vecs = []
    for u in U:
        vecs.append([sum_(F, [F.mul(c, x) for c, x in zip(u, col)]) for col in zip(*f1)])
        pu = linalg.matvec(F, phi3, list(u))
        vecs.append([sum_(F, [F.mul(c, x) for c, x in zip(pu, col)]) for col in zip(*f2)])
    return linalg.row_space_basis(F, vecs)


def sum_(F, xs):
    s = F.zero
    for x in xs:
        s = F.add(s, x)
    return s


def _invariant_subspaces_finite(F, C, d):
    for k in range(1, d):
        for U in iter_rref_subspaces(F, d, k):
            CU = [linalg.matvec(F, C, list(u)) for u in U]
            if linalg.rank(F, list(U) + CU) == k:
                yield U


def _rational_roots(coeffs):
    """Rational roots of a polynomial with Fraction coefficients (lowest first)."""
    from math import lcm
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = {Fraction(0)} if len(ints) < len(coeffs) else set()
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    if max(a0, an) > 10 ** 12:
        raise BudgetError("characteristic polynomial coefficients too large for root search")
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return roots


def _divisors(n):
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def _structured(F, tup, d):
    """Complete search when r >= 4 and F_1..F_4 are pairwise transverse.

    Returns (W or None, True) when conclusive, (None, False) when the
    composite map is outside the exact path (Q with repeated or
    irrational eigenvalues).
    """
    phi3, C = _composite(F, tup, d)
    if isinstance(F, FiniteField):
        cands = _invariant_subspaces_finite(F, C, d)
    else:
        roots = sorted(_rational_roots(linalg.charpoly(F, C)))
        if len(roots) < d:
            return None, False
        eig = []
        for lam in roots:
            shifted = linalg.matsub(F, C, linalg.scalar_mul(F, lam, linalg.identity(F, d)))
            ker = linalg.kernel(F, shifted)
            eig.append(ker[0])
        cands = (tuple(eig[i] for i in idx) for k in range(1, d) for idx in combinations(range(d), k))
    for U in cands:
        W = _candidate_W(F, tup, d, phi3, U)
        if _satisfies(F, W, tup):
            return [tuple(r) for r in W], True
    return None, True


def _pairwise_transverse(F, tup, k=4):
    return all(_transverse(F, tup[i], tup[j]) for i in range(k) for j in range(i + 1, k))


_BRUTE_CACHE = {}


def _all_proper_subspaces(F, n):
    key = (F.order, F.p, n)
    if key not in _BRUTE_CACHE:
        subs = []
        for k in range(1, n):
            for W in iter_rref_subspaces(F, n, k):
                subs.append((W, span_codes(F, W)))
        _BRUTE_CACHE[key] = subs
    return _BRUTE_CACHE[key]


def bad_lagrangian_bruteforce(space: SymplecticSpace, tup):
    """Exhaustive scan over all proper nonzero subspaces (q <= 5, 2d <= 4)."""
    F = space.field
    if not isinstance(F, FiniteField) or F.order > 5 or space.dim > 4:
        raise SizeLimitError("brute force limited to fields of order <= 5 and 2d <= 4")
    tup = validate_tuple(space, tup)
    q = F.order
    spans = [span_codes(F, Fj) for Fj in tup]
    for W, wspan in _all_proper_subspaces(F, space.dim):
        w = len(W)
        ok = True
        for s in spans:
            inter = len(s & wspan)
            k = 0
            while q ** (k + 1) <= inter:
                k += 1
            if 2 * k < w:
                ok = False
                break
        if ok:
            return [tuple(r) for r in W]
    return None


def _heuristic_candidates(F, tup, d):
    """Cheap explicit candidates tried over Q outside the structured path."""
    seen = []
    for Fj in tup:
        seen.append(linalg.row_space_basis(F, Fj))
    r = len(tup)
    for a in range(r):
        for b in range(r):
            if a != b and _transverse(F, tup[a], tup[b]):
                seen.append(linalg.row_space_basis(F, [tup[a][0], tup[b][0]]))
    if r >= 3 and _pairwise_transverse(F, tup, 3):
        phi3, _ = _composite(F, list(tup[:3]) + [tup[2]], d)
        e1 = [F.one] + [F.zero] * (d - 1)
        seen.append(_candidate_W(F, tup, d, phi3, [e1]))
    if r == 0:
        seen.append([tuple(F.one if i == 0 else F.zero for i in range(2 * d))])
    return seen


def _reduce_tuple(tup, p):
    Fp = GF(p)
    out = []
    for basis in tup:
        rows = []
        for v in basis:
            row = []
            for x in v:
                x = Fraction(x)
                if x.denominator % p == 0:
                    return None
                row.append(Fp.coerce(x))
            rows.append(tuple(row))
        if linalg.rank(Fp, rows) != len(rows):
            return None
        out.append(rows)
    return out


MODULAR_PRIMES = [p for p in range(101, 200) if is_prime(p)]


def _modular_certificate(tup, d, seed=0, n_primes=3):
    """Decide the Q-question through three good reductions.

    A rational W reduces to a W mod p with intersections at least as
    large, so a complete search finding nothing mod p rules out W over Q.
    All primes must agree on "none"; otherwise the answer is left open.
    """
    if d > 3:
        raise BudgetError("modular fallback limited to d <= 3")
    rng = stream(seed, "bad-lagrangian-primes")
    pool = list(MODULAR_PRIMES)
    rng.shuffle(pool)
    verdicts = []
    for p in pool:
        red = _reduce_tuple(tup, p)
        if red is None or len(red) < 4 or not _pairwise_transverse(GF(p), red):
            continue
        W, _ = _structured(GF(p), red, d)
        verdicts.append((p, W is None))
        if len(verdicts) == n_primes:
            break
    if len(verdicts) < n_primes:
        raise BudgetError("not enough primes of good reduction")
    if all(none for _, none in verdicts):
        return verdicts
    raise BudgetError(f"modular reductions inconclusive: {verdicts}")


def bad_lagrangian_search_report(space: SymplecticSpace, tup, seed: int = 0):
    """Search for W with dim(F_j cap W) >= dim(W)/2 for every j.

    Returns a dict {W, method, primes}; W is None when no W exists.
    """
    F = space.field
    d = space.d
    tup = validate_tuple(space, tup)
    r = len(tup)
    structured_ok = r >= 4 and _pairwise_transverse(F, tup)
    if structured_ok:
        W, conclusive = _structured(F, tup, d)
        if conclusive:
            return {"W": W, "method": "structured", "primes": []}
    if isinstance(F, FiniteField):
        if F.order <= 5 and space.dim <= 4:
            return {"W": bad_lagrangian_bruteforce(space, tup), "method": "bruteforce", "primes": []}
        raise BudgetError("input outside both the structured path and the brute-force limits")
    for W in _heuristic_candidates(F, tup, d):
        if W and len(W) < 2 * d and _satisfies(F, W, tup):
            return {"W": [tuple(x) for x in W], "method": "explicit-candidate", "primes": []}
    if not structured_ok:
        raise BudgetError("non-transverse input over Q with no explicit W found")
    verdicts = _modular_certificate(tup, d, seed)
    return {"W": None, "method": "modular", "primes": [p for p, _ in verdicts]}


def bad_lagrangian_search(space: SymplecticSpace, tup, seed: int = 0):
    return bad_lagrangian_search_report(space, tup, seed)["W"]


def explicit_tuple(d: int, field=QQ):
    """The tuple F_1..F_5 of the general-position argument.

    F_4 is spanned by e_i + 2i e_i'; F_5 is the graph of the all-ones
    symmetric matrix, spanned by e_i + sum_j e_j'.
    """
    F = field
    n = 2 * d

    def vec(pairs):
        v = [F.zero] * n
        for idx, c in pairs:
            v[idx] = F.add(v[idx], F.coerce(c))
        return tuple(v)

    F1 = [vec([(i, 1)]) for i in range(d)]
    F2 = [vec([(d + i, 1)]) for i in range(d)]
    F3 = [vec([(i, 1), (d + i, 1)]) for i in range(d)]
    F4 = [vec([(i, 1), (d + i, 2 * (i + 1))]) for i in range(d)]
    F5 = [vec([(i, 1)] + [(d + j, 1) for j in range(d)]) for i in range(d)]
    return [F1, F2, F3, F4, F5]


def all_lagrangians(space: SymplecticSpace):
    F = space.field
    return [list(W) for W in iter_rref_subspaces(F, space.dim, space.d) if space.is_isotropic(W)]


def random_tuples(space: SymplecticSpace, count: int, seed: int, r_choices=(4, 5)):
    rng = stream(seed, "lagrangian-tuples")
    lag = all_lagrangians(space)
    out = []
    for _ in range(count):
        r = rng.choice(r_choices)
        out.append([lag[rng.randrange(len(lag))] for _ in range(r)])
    return out
