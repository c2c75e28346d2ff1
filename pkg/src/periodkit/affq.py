"""The affine group Aff(q), the commutator fiber census, size_v, and the
prime/place parameter search for the Kodaira-Parshin argument."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from .core.fields import is_prime
from .errors import DomainError, LemmaViolation, NotFoundError, SizeLimitError

CENSUS_BUDGET = 10 ** 8
ORBIT_CENSUS_BUDGET = 10 ** 7


@dataclass(frozen=True)
class AffElem:
    """The map x -> a x + b on F_q."""

    a: int
    b: int
    q: int

    def __post_init__(self):
        if self.a % self.q == 0:
            raise DomainError("a must be nonzero in F_q")

    def __mul__(self, other):
        # (a,b) o (a',b') = (aa', ab' + b)
        q = self.q
        return AffElem(self.a * other.a % q, (self.a * other.b + self.b) % q, q)

    def inverse(self):
        ai = pow(self.a, -1, self.q)
        return AffElem(ai, (-ai * self.b) % self.q, self.q)

    def __call__(self, x):
        return (self.a * x + self.b) % self.q

    @staticmethod
    def identity(q):
        return AffElem(1, 0, q)


def aff_elements(q):
    return [AffElem(a, b, q) for a in range(1, q) for b in range(q)]


def commutator(g: AffElem, h: AffElem) -> AffElem:
    return g * h * g.inverse() * h.inverse()


class _AffTables:
    """Aff(q) encoded as ints a*q + b (a in 1..q-1), with a multiplication table."""

    def __init__(self, q):
        self.q = q
        self.codes = [a * q + b for a in range(1, q) for b in range(q)]
        self.order = len(self.codes)
        self.mul = {}
        for x in self.codes:
            a, b = divmod(x, q)
            for y in self.codes:
                c, d = divmod(y, q)
                self.mul[x, y] = (a * c % q) * q + (a * d + b) % q
        self._gen_cache = {}

    def generates(self, gens) -> bool:
        key = frozenset(gens)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        seen = set(key)
        frontier = list(key)
        mul = self.mul
        while frontier:
            nxt = []
            for x in frontier:
                for g in key:
                    y = mul[x, g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        ok = len(seen) == self.order
        self._gen_cache[key] = ok
        return ok


def _units_generated(q, avals) -> bool:
    """Do the given elements generate F_q^* (closure in the cyclic group)?"""
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for a in avals:
                y = x * a % q
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == q - 1


def com_fiber_census(q: int, s: int):
    """Enumerate Aff(q)^{2s} and count fibers of the projection to (F_q^*)^{2s}.

    Kept tuples have a nonzero product of commutators and generate Aff(q).
    """
    if not is_prime(q) or q < 3:
        raise DomainError(f"q={q} must be a prime >= 3")
    if s < 1:
        raise DomainError("s must be >= 1")
    size = (q * (q - 1)) ** (2 * s)
    if size > CENSUS_BUDGET:
        raise SizeLimitError(f"|Aff({q})|^{2 * s} = {size} exceeds budget {CENSUS_BUDGET}")
    tab = _AffTables(q)
    codes = tab.codes
    # translation part of [g, h]; commutators land in the translation subgroup
    comm_t = {}
    for x in codes:
        gx = AffElem(*divmod(x, q), q)
        for y in codes:
            c = commutator(gx, AffElem(*divmod(y, q), q))
            if c.a != 1:
                raise LemmaViolation("commutator is not a translation")
            comm_t[x, y] = c.b
    pairs = [(x, y) for x in codes for y in codes]
    fibers = Counter()
    for combo in product(pairs, repeat=s):
        t = 0
        for x, y in combo:
            t += comm_t[x, y]
        if t % q == 0:
            continue
        gens = [z for pair in combo for z in pair]
        if not tab.generates(gens):
            continue
        fibers[tuple(z // q for z in gens)] += 1
    image = sorted(fibers)
    expected_image = sorted(t for t in product(range(1, q), repeat=2 * s) if _units_generated(q, t))
    expected_fiber = q ** (2 * s - 1) * (q - 1)
    sizes = Counter(fibers.values())
    return {
        "q": q,
        "s": s,
        "image": [list(t) for t in image],
        "image_size": len(image),
        "fiber_histogram": {str(k): v for k, v in sorted(sizes.items())},
        "expected_fiber": expected_fiber,
        "image_matches": image == expected_image,
        "uniform": set(sizes) == {expected_fiber},
    }


@dataclass(frozen=True)
class OrbitProfile:
    sizes: tuple

    def __post_init__(self):
        if not self.sizes:
            raise DomainError("empty orbit profile")
        if any(int(x) < 1 for x in self.sizes):
            raise DomainError("orbit sizes must be positive")

    @property
    def total(self):
        return sum(self.sizes)


def size_v(profile: OrbitProfile, threshold: int) -> Fraction:
    """Fraction of elements lying in orbits of size < threshold."""
    if not isinstance(profile, OrbitProfile):
        profile = OrbitProfile(tuple(profile))
    if threshold < 1:
        raise DomainError("threshold must be >= 1")
    small = sum(x for x in profile.sizes if x < threshold)
    return Fraction(small, profile.total)


@dataclass(frozen=True)
class KPBound:
    bound: Fraction
    target: Fraction
    holds: bool


def kp_size_bound(g: int, q: int, c: int = 5) -> KPBound:
    """c 2^{g+1} / (q-1)^g against 1/((g - 1/2)(q-1) + 1)."""
    if g < 2 or q < 3:
        raise DomainError("need g >= 2 and q >= 3")
    bound = Fraction(c * 2 ** (g + 1), (q - 1) ** g)
    target = 1 / ((g - Fraction(1, 2)) * (q - 1) + 1)
    return KPBound(bound, target, bound < target)


def odd_prime_factors(n: int):
    out = []
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return [r for r in out if r % 2]


@dataclass(frozen=True)
class KPParams:
    g: int
    degK: int
    c: int
    q: int
    forbidden_primes: tuple = field(default_factory=tuple)

    def to_dict(self):
        b = kp_size_bound(self.g, self.q, self.c)
        return {
            "g": self.g, "degK": self.degK, "c": self.c, "q": self.q,
            "forbidden_primes": list(self.forbidden_primes),
            "bound": str(b.bound), "target": str(b.target), "bound_holds": b.holds,
        }


def kp_prime_ok(q: int, g: int, degK: int, c: int, forbidden=()) -> bool:
    if not is_prime(q) or q < 3:
        return False
    if (q - 1) % 4 == 0:
        return False
    for r in odd_prime_factors(q - 1):
        if r < c * degK:
            return False
    if any((q - 1) % ell == 0 for ell in forbidden):
        return False
    return kp_size_bound(g, q, c).holds


def find_kp_prime(g: int, degK: int, c: int = 5, forbidden_primes=(), cap: int = 10 ** 6) -> KPParams:
    """Smallest prime q passing the divisibility filters and the size bound."""
    if g < 2:
        raise DomainError("genus must be >= 2")
    if degK < 1:
        raise DomainError("degK must be >= 1")
    forbidden = tuple(sorted(set(int(x) for x in forbidden_primes)))
    for q in range(3, cap + 1):
        if kp_prime_ok(q, g, degK, c, forbidden):
            return KPParams(g, degK, c, q, forbidden)
    raise NotFoundError(f"no qualifying prime q <= {cap}")


def multiplicative_order(a: int, r: int) -> int:
    if gcd(a, r) != 1:
        raise DomainError(f"{a} is not a unit mod {r}")
    k, x = 1, a % r
    while x != 1 % r:
        x = x * a % r
        k += 1
    return k


def primitive_root(r: int) -> int:
    for a in range(1, r):
        if multiplicative_order(a, r) == r - 1:
            return a
    raise DomainError(f"no primitive root mod {r}")


def find_place_residue(q: int, c: int = 5, degK: int = 1):
    """A unit a mod q-1 that is a primitive root mod every odd prime r | q-1.

    Built by CRT from the least primitive root mod each r (and a = 1 on
    the remaining cofactor).  Returns (a, per-prime report).
    """
    m = q - 1
    if m < 1:
        raise DomainError("q must be >= 2")
    primes = odd_prime_factors(m)
    a, mod = 0, 1
    for r in primes:
        rk = 1
        while m % (rk * r) == 0:
            rk *= r
        g = primitive_root(r)
        a, mod = _crt(a, mod, g, rk)
    rest = m // mod
    a, mod = _crt(a, mod, 1, rest)
    a %= m
    if m == 1:
        a = 0
    if gcd(a, m) != 1 and m > 1:
        raise LemmaViolation(f"CRT residue {a} is not a unit mod {m}")
    report = []
    for r in primes:
        order = multiplicative_order(a, r)
        guaranteed = -(-(r - 1) // degK)
        report.append({"r": r, "order": order, "primitive": order == r - 1,
                       "guaranteed_order": guaranteed, "meets_c": guaranteed >= c})
    return (a if m > 1 else 1), report


def _crt(a1, m1, a2, m2):
    if m2 == 1:
        return a1 % m1, m1
    inv = pow(m1, -1, m2)
    t = (a2 - a1) * inv % m2
    return a1 + m1 * t, m1 * m2


# --- Frobenius orbit census on (Z/N)^{2g} ---

def _diag_mod(A, N):
    """Diagonalize A over Z by unimodular row/column operations, entries mod N."""
    M = [[x % N for x in r] for r in A]
    n, m = len(M), len(M[0])
    diag = []
    t = 0
    while t < min(n, m):
        # pick the smallest nonzero entry in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if M[i][j] and (best is None or M[i][j] < M[best[0]][best[1]]):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for r in M:
            r[t], r[j] = r[j], r[t]
        done = True
        p = M[t][t]
        for i in range(t + 1, n):
            if M[i][t]:
                f = M[i][t] // p
                M[i] = [(x - f * y) % N for x, y in zip(M[i], M[t])]
                if M[i][t]:
                    done = False
        for j in range(t + 1, m):
            if M[t][j]:
                f = M[t][j] // p
                for r in M:
                    r[j] = (r[j] - f * r[t]) % N
                if M[t][j]:
                    done = False
        if done:
            diag.append(p)
            t += 1
    diag += [0] * (min(n, m) - len(diag))
    return diag


def kernel_size_mod(A, N) -> int:
    """|{x in (Z/N)^n : A x = 0}| for a square integer matrix A."""
    n = len(A[0])
    d = _diag_mod(A, N)
    size = 1
    for x in d:
        size *= gcd(x, N)
    size *= N ** (n - len(d))
    return size


def _matmul_mod(A, B, N):
    return [[sum(a * b for a, b in zip(r, c)) % N for c in zip(*B)] for r in A]


def symplectic_multiplier(T, N, g):
    """m with T^t J T = m J mod N, or None."""
    n = 2 * g
    J = [[0] * n for _ in range(n)]
    for i in range(g):
        J[i][g + i] = 1
        J[g + i][i] = N - 1
    Tt = [list(r) for r in zip(*T)]
    P = _matmul_mod(_matmul_mod(Tt, J, N), T, N)
    m = P[0][g] % N
    for i in range(n):
        for j in range(n):
            if P[i][j] % N != m * J[i][j] % N:
                return None
    return m


def frobenius_orbit_census(g: int, N: int, T, c: int = 5):
    """Kernel sizes |ker(T^i - 1)| for 1 <= i < c and the small-orbit mass."""
    n = 2 * g
    T = [[int(x) % N for x in r] for r in T]
    if len(T) != n or any(len(r) != n for r in T):
        raise DomainError(f"T must be {n}x{n}")
    if N ** n > ORBIT_CENSUS_BUDGET:
        raise SizeLimitError(f"N^(2g) = {N ** n} exceeds budget")
    if gcd(_det_int(T), N) != 1:
        raise DomainError("T is not invertible mod N")
    m = symplectic_multiplier(T, N, g)
    if m is None:
        raise DomainError("T does not preserve the symplectic pairing up to a scalar")
    odd = odd_prime_factors(N)
    I = [[int(i == j) for j in range(n)] for i in range(n)]
    P = I
    kernels = []
    for i in range(1, c):
        P = _matmul_mod(P, T, N)
        A = [[(P[r][s] - I[r][s]) % N for s in range(n)] for r in range(n)]
        size = kernel_size_mod(A, N)
        hyp = N % 4 != 0 and all(pow(m, i, r) != 1 for r in odd)
        bound = 2 ** g * N ** g
        if hyp and size > bound:
            raise LemmaViolation(f"|ker(T^{i}-1)| = {size} exceeds 2^g N^g = {bound}")
        kernels.append({"i": i, "size": size, "hypotheses": hyp, "bound": bound})
    # small-orbit mass by direct enumeration
    mass = 0
    for v in product(range(N), repeat=n):
        w = list(v)
        for i in range(1, c):
            w = [sum(a * b for a, b in zip(r, w)) % N for r in T]
            if tuple(w) == v:
                mass += 1
                break
    return {"g": g, "N": N, "c": c, "multiplier": m, "kernel_sizes": kernels,
            "small_orbit_mass": mass, "mass_bound": c * 2 ** g * N ** g}


def _det_int(A):
    n = len(A)
    M = [[Fraction(x) for x in r] for r in A]
    d = Fraction(1)
    for cidx in range(n):
        piv = next((i for i in range(cidx, n) if M[i][cidx] != 0), None)
        if piv is None:
            return 0
        if piv != cidx:
            M[cidx], M[piv] = M[piv], M[cidx]
            d = -d
        d *= M[cidx][cidx]
        for i in range(cidx + 1, n):
            f = M[i][cidx] / M[cidx][cidx]
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[cidx])]
    return int(d)


def random_similitude(g: int, N: int, multiplier: int, rng, n_transvections: int = 8):
    """Product of random symplectic transvections times diag(1,..,1, m,..,m)."""
    n = 2 * g
    T = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(n_transvections):
        v = [rng.randrange(N) for _ in range(n)]
        r = rng.randrange(1, N)
        # x -> x + r <v, x> v, with <x, y> = sum x_i y_{g+i} - x_{g+i} y_i
        Tv = []
        for i in range(n):
            row = []
            for j in range(n):
                pair = -v[j + g] if j < g else v[j - g]  # <v, e_j>
                row.append((int(i == j) + r * pair * v[i]) % N)
            Tv.append(row)
        T = _matmul_mod(Tv, T, N)
    D = [[0] * n for _ in range(n)]
    for i in range(n):
        D[i][i] = 1 if i < g else multiplier % N
    return _matmul_mod(T, D, N)


def generating_tuple_count(N: int, m: int) -> int:
    """Number of m-tuples in (Z/N)^m whose entries generate Z/N.

    Direct count, organized as a running-gcd tally over coordinates so it
    visits N * (number of divisors) states per coordinate.
    """
    states = Counter({N: 1})
    for _ in range(m):
        nxt = Counter()
        for gval, cnt in states.items():
            for v in range(N):
                nxt[gcd(gval, v)] += cnt
        states = nxt
    return states.get(1, 0)
