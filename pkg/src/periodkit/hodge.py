"""Hodge numbers of smooth hypersurfaces, adjoint spectra and the T-function.

The raw spectrum of a degree-d hypersurface in P^n is indexed by p with
p + q = n - 1; the adjoint spectrum of the generalized automorphism group
of the intersection form is indexed by -(n-1) .. n-1.

Binomials go through gmpy2 because the n0 scan evaluates millions of them
and ``math.comb`` is an order of magnitude slower at these sizes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import comb as _comb

from .errors import ConsistencyError, DomainError

RAW = "raw-middle"
ADJOINT = "adjoint"


@dataclass(frozen=True)
class HodgeSpectrum:
    entries: dict
    kind: str = RAW
    weight: int = 0  # n - 1 for raw spectra, 0 for adjoint ones

    def __post_init__(self):
        if any(v < 0 for v in self.entries.values()):
            raise DomainError("negative Hodge number")
        if self.kind == RAW:
            for p, v in self.entries.items():
                if self.entries.get(self.weight - p, 0) != v:
                    raise ConsistencyError(f"raw spectrum not symmetric at p={p}")
        elif self.kind == ADJOINT:
            for p, v in self.entries.items():
                if self.entries.get(-p, 0) != v:
                    raise ConsistencyError(f"adjoint spectrum not symmetric at p={p}")
        else:
            raise DomainError(f"unknown spectrum kind {self.kind!r}")

    def __getitem__(self, p):
        return self.entries.get(p, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def positive_sum(self) -> int:
        return sum(v for p, v in self.entries.items() if p > 0)

    def weighted_sum(self) -> int:
        return sum(p * v for p, v in self.entries.items() if p > 0)

    def slopes(self):
        """(p, multiplicity) pairs in descending p, zero multiplicities dropped."""
        return [(p, self.entries[p]) for p in sorted(self.entries, reverse=True) if self.entries[p]]

    def T(self, y) -> Fraction:
        return T_function(self, y)


def hypersurface_hodge_numbers(n: int, d: int) -> HodgeSpectrum:
    """Primitive middle Hodge numbers of a smooth degree-d hypersurface in P^n.

    h^{p,q} counts degree (q+1)d - n - 1 monomials in n+1 variables with
    every exponent <= d-2 (a basis of the Jacobian ring in that degree).
    """
    if n < 2 or d < 2:
        raise DomainError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    raw = _raw_numbers(n, d)
    return HodgeSpectrum({p: int(raw[p]) for p in range(n)}, RAW, n - 1)


def _raw_numbers(n, d):
    # h^{p,q} with q = n-1-p; only half is computed, the rest by symmetry
    half = (n - 1) // 2
    vals = []
    for q in range(half + 1):
        m = (q + 1) * d - n - 1
        s = 0
        sign = 1
        top = m + n
        for k in range(n + 2):
            if top < n:
                break
            s += sign * _comb(n + 1, k) * _comb(top, n)
            sign = -sign
            top -= d - 1
        vals.append(s)
    return [vals[min(q, n - 1 - q)] for q in range(n)]


def middle_betti(n: int, d: int) -> int:
    """Primitive middle Betti number ((d-1)^{n+1} + (-1)^{n+1}(d-1))/d."""
    return ((d - 1) ** (n + 1) + (-1) ** (n + 1) * (d - 1)) // d


def _adjoint_values(h, N):
    """Adjoint multiplicities for p = 0..N from the raw list h[0..N]."""
    alternating = N % 2 == 1
    out = []
    for p in range(N + 1):
        s = 0
        for p1 in range(p, N + 1):
            s += h[p1] * h[p + N - p1]
        if (p + N) % 2 == 0:
            mid = h[(p + N) // 2]
            s = s + mid if alternating else s - mid
        if s % 2:
            raise ConsistencyError(f"odd value 2h^{p} = {s} in adjoint construction")
        out.append(s // 2)
    out[0] += 1
    return out


def adjoint_spectrum(h: HodgeSpectrum, n: int | None = None) -> HodgeSpectrum:
    """Adjoint spectrum: Sym^2 for alternating forms, wedge^2 for symmetric ones, plus the center."""
    if h.kind != RAW:
        raise DomainError("adjoint_spectrum expects a raw-middle spectrum")
    N = h.weight if n is None else n - 1
    if n is not None and h.weight != N:
        raise DomainError(f"spectrum weight {h.weight} does not match n={n}")
    vals = _adjoint_values([h[p] for p in range(N + 1)], N)
    entries = {}
    for p, v in enumerate(vals):
        entries[p] = int(v)
        entries[-p] = int(v)
    return HodgeSpectrum(entries, ADJOINT, 0)


def T_function(h: HodgeSpectrum, y) -> Fraction:
    """Sum of the topmost y Hodge numbers, linearly interpolated."""
    y = Fraction(y)
    total = h.total()
    if y < 0 or y > total:
        raise DomainError(f"T argument {y} outside [0, {total}]")
    acc = Fraction(0)
    for p, mult in h.slopes():
        if y <= mult:
            return acc + p * y
        acc += p * mult
        y -= mult
    return acc


def moduli_dim(n: int, d: int, formula: str = "paper") -> int:
    """Dimension of the parameter space of degree-d hypersurfaces in P^n.

    ``formula="paper"`` gives C(n+d, d-1) - 1; ``formula="full"`` gives the
    projective space of all degree-d forms, C(n+d, d) - 1.
    """
    if n < 2 or d < 2:
        raise DomainError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    if formula == "paper":
        return int(_comb(n + d, d - 1)) - 1
    if formula == "full":
        return int(_comb(n + d, d)) - 1
    raise DomainError(f"unknown moduli formula {formula!r}")


@dataclass(frozen=True)
class ConditionReport:
    n: int
    d: int
    dimY: int
    h0: int
    sum_pos: int
    weighted_sum: int
    T1: Fraction | None
    T2: Fraction | None
    weak: bool
    strong: bool

    def to_dict(self):
        def rat(x):
            if x is None:
                return None
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return {
            "n": self.n, "d": self.d, "dimY": str(self.dimY), "h0": str(self.h0),
            "sum_pos": str(self.sum_pos), "weighted_sum": str(self.weighted_sum),
            "T1": rat(self.T1), "T2": rat(self.T2), "weak": self.weak, "strong": self.strong,
        }


def _T2x(adj, N, a):
    """2*T(a/2) on the adjoint list adj[0..N] (symmetric), a an integer."""
    tot = 0
    order = [(p, adj[p]) for p in range(N, 0, -1)] + [(0, adj[0])]
    order += [(-p, adj[p]) for p in range(1, N + 1)]
    for p, m in order:
        m2 = 2 * m
        if a <= m2:
            return tot + p * a
        tot += p * m2
        a -= m2
    return tot


def check_conditions(n: int, d: int, moduli_formula: str = "paper") -> ConditionReport:
    """Evaluate the weak and strong inequalities for the (n, d) family.

    A T argument beyond the total adjoint dimension makes the strong
    inequality meaningless; it is then reported as False with T set to None.
    """
    N = n - 1
    h = hypersurface_hodge_numbers(n, d)
    adj = _adjoint_values([h[p] for p in range(n)], N)
    total = adj[0] + 2 * sum(adj[1:])
    dimY = moduli_dim(n, d, moduli_formula)
    h0 = adj[0]
    pos = sum(adj[1:])
    ws = sum(p * adj[p] for p in range(1, N + 1))
    weak = pos >= h0 + dimY
    a1 = 2 * (h0 + dimY)          # twice the arguments, so both are integers
    a2 = 3 * h0 + 2 * dimY
    if a1 > 2 * total or a2 > 2 * total:
        T1 = T2 = None
        strong = False
    else:
        t1, t2 = _T2x(adj, N, a1), _T2x(adj, N, a2)
        T1, T2 = Fraction(int(t1), 2), Fraction(int(t2), 2)
        strong = 2 * ws > t1 + t2
    return ConditionReport(n, d, int(dimY), int(h0), int(pos), int(ws), T1, T2, bool(weak), bool(strong))


def _holds(n, d, moduli_formula):
    r = check_conditions(n, d, moduli_formula)
    return r.weak and r.strong


def scan_row(n: int, d_max: int, persistence: int = 3, moduli_formula: str = "paper", d_min: int = 2):
    """One row of the n0 scan: least d <= d_max with weak and strong, plus probes at 2d, 4d, ...

    Probes are capped at d_max; the row records whether each probe holds
    (an empirical monotonicity check, not asserted).
    """
    first = None
    for d in range(d_min, d_max + 1):
        if _holds(n, d, moduli_formula):
            first = d
            break
    row = {"n": n, "first_d": first, "probes": [], "persistent": None}
    if first is None:
        return row
    probes = []
    k = 1
    while len(probes) < persistence:
        dd = min(first * 2 ** k, d_max)
        if probes and dd == probes[-1][0] or dd == first:
            break
        probes.append((dd, _holds(n, dd, moduli_formula)))
        k += 1
    row["probes"] = [{"d": dd, "holds": ok} for dd, ok in probes]
    row["persistent"] = all(ok for _, ok in probes)
    row["report"] = check_conditions(n, first, moduli_formula).to_dict()
    return row


def _scan_task(args):
    return scan_row(*args)


def scan_n0(n_range, d_max: int, persistence: int = 3, moduli_formula: str = "paper", map_fn=map):
    """Scan each n in n_range for the least qualifying d.

    ``map_fn`` lets a caller substitute a parallel map; rows are sorted by
    n afterwards so the result does not depend on evaluation order.
    Returns (rows, minimal n with a hit or None).
    """
    tasks = [(n, d_max, persistence, moduli_formula) for n in n_range]
    rows = sorted(map_fn(_scan_task, tasks), key=lambda r: r["n"])
    hits = [r["n"] for r in rows if r["first_d"] is not None]
    return rows, (min(hits) if hits else None)
