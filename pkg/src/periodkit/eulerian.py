"""Eulerian numbers and the descent statistics behind the large-n estimate."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import ConsistencyError, SizeLimitError

MAX_N = 600


@lru_cache(maxsize=None)
def eulerian_row(n: int) -> tuple:
    """A(n, p) for p = 0..n-1: permutations of {1..n} with exactly p ascents."""
    if n < 1 or n > MAX_N:
        raise SizeLimitError(f"eulerian numbers supported for 1 <= n <= {MAX_N}")
    row = [1]
    for m in range(2, n + 1):
        prev = row
        row = [0] * m
        for p in range(m):
            a = (p + 1) * prev[p] if p < m - 1 else 0
            b = (m - p) * prev[p - 1] if p >= 1 else 0
            row[p] = a + b
    return tuple(row)


@dataclass(frozen=True)
class EulerianTable:
    n: int
    A: tuple
    alpha: tuple
    beta: dict

    def beta_variance(self) -> Fraction:
        return sum((p * p * b for p, b in self.beta.items()), Fraction(0))


def _log_concave(seq) -> bool:
    return all(seq[i] * seq[i] >= seq[i - 1] * seq[i + 1] for i in range(1, len(seq) - 1))


def eulerian(n: int) -> EulerianTable:
    A = eulerian_row(n)
    nf = factorial(n)
    if sum(A) != nf:
        raise ConsistencyError("Eulerian row does not sum to n!")
    alpha = tuple(Fraction(a, nf) for a in A)
    # beta_p = sum over p1 - p2 = p of alpha_{p1} alpha_{p2}; work in integers over (n!)^2
    beta_num = {}
    for p in range(-(n - 1), n):
        s = 0
        for p1 in range(max(0, p), min(n - 1, n - 1 + p) + 1):
            s += A[p1] * A[p1 - p]
        beta_num[p] = s
    den = nf * nf
    beta = {p: Fraction(v, den) for p, v in beta_num.items()}
    if sum(beta_num.values()) != den:
        raise ConsistencyError("beta does not sum to 1")
    if any(beta_num[p] != beta_num[-p] for p in beta_num):
        raise ConsistencyError("beta not symmetric")
    seq = [beta_num[p] for p in range(-(n - 1), n)]
    if not _log_concave(seq):
        raise ConsistencyError("beta not log-concave")
    return EulerianTable(n, A, alpha, beta)


def beta0_bound_check(n_min: int, n_max: int, constant: int = 40):
    """Every n in range with beta_0^2 >= constant^2 / n (exact comparison)."""
    bad = []
    for n in range(n_min, n_max + 1):
        A = eulerian_row(n)
        nf = factorial(n)
        b0_num = sum(a * a for a in A)
        # beta_0 = b0_num / nf^2;  beta_0^2 >= c^2/n  <=>  n b0_num^2 >= c^2 nf^4
        if n * b0_num * b0_num >= constant * constant * nf ** 4:
            bad.append(n)
    return bad


def is_log_concave(n: int) -> bool:
    return _log_concave(eulerian_row(n))


def ascent_counts_bruteforce(n: int):
    counts = [0] * n
    for perm in permutations(range(n)):
        counts[sum(1 for i in range(n - 1) if perm[i] < perm[i + 1])] += 1
    return counts


def descent_variance_bruteforce(n: int) -> Fraction:
    """Variance of the descent count over all permutations of {1..n}."""
    counts = ascent_counts_bruteforce(n)  # ascents and descents are equidistributed
    nf = factorial(n)
    mean = Fraction(sum(p * c for p, c in enumerate(counts)), nf)
    return Fraction(sum((p - mean) ** 2 * c for p, c in enumerate(counts)), nf)
