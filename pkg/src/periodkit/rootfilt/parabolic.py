"""Parabolic pairs, minimal double coset representatives, bad Weyl elements
and the codimension harness."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from ..errors import DomainError, LemmaViolation, UnsupportedModeError
from ..hodge import ADJOINT, HodgeSpectrum, T_function
from .roots import RootDatum, WeylElement, dot, is_positive


def canonical_mu(datum: RootDatum, dq):
    """A dominant cocharacter orthogonal exactly to the simple roots in dq.

    Solves <mu, alpha_i> = 0 for i in dq and 1 otherwise, then scales to
    integers.  In type A the solution is normalized to sum 0.
    """
    from ..core import linalg
    from ..core.fields import QQ
    rows = [list(map(QQ.coerce, a)) for a in datum.simple]
    rhs = [QQ.zero if i in dq else QQ.one for i in range(datum.rank)]
    if datum.kind == "A":
        rows.append([QQ.one] * datum.ambient)
        rhs.append(QQ.zero)
    x = linalg.solve(QQ, rows, rhs)
    from math import lcm
    den = 1
    for c in x:
        den = lcm(den, c.denominator)
    return tuple(int(c * den) for c in x)


@dataclass(frozen=True)
class ParabolicPair:
    datum: RootDatum
    dp: frozenset
    dq: frozenset
    mu: tuple

    def __post_init__(self):
        r = self.datum.rank
        if not set(self.dp) <= set(range(r)) or not set(self.dq) <= set(range(r)):
            raise DomainError("simple root indices out of range")
        if len(self.mu) != self.datum.ambient:
            raise DomainError(f"mu must have {self.datum.ambient} entries")
        for i, a in enumerate(self.datum.simple):
            v = dot(self.mu, a)
            if v < 0:
                raise DomainError("mu is not dominant")
            if (v == 0) != (i in self.dq):
                raise DomainError(
                    f"mu pairs to {v} with simple root {i + 1}, inconsistent with Delta_Q")

    @classmethod
    def from_mu(cls, datum, dp, mu):
        mu = tuple(int(x) for x in mu)
        dq = frozenset(i for i, a in enumerate(datum.simple) if dot(mu, a) == 0)
        return cls(datum, frozenset(dp), dq, mu)

    @classmethod
    def from_subsets(cls, datum, dp, dq):
        dq = frozenset(dq)
        return cls(datum, frozenset(dp), dq, canonical_mu(datum, dq))

    def pairing(self, root):
        return dot(self.mu, root)

    def in_sigma_P(self, root) -> bool:
        if is_positive(root):
            return True
        return self.datum.supports[root] <= self.dp

    def in_sigma_Q(self, root) -> bool:
        return self.pairing(root) >= 0

    @property
    def sigma_minus_P(self):
        return [r for r in self.datum.roots if not self.in_sigma_P(r)]

    @property
    def sigma_minus_Q(self):
        return [r for r in self.datum.roots if not self.in_sigma_Q(r)]

    def dim_G_mod_Q(self) -> int:
        return sum(1 for r in self.datum.roots if self.pairing(r) > 0)

    def hodge_spectrum(self) -> HodgeSpectrum:
        entries = {}
        for r in self.datum.roots:
            v = self.pairing(r)
            entries[v] = entries.get(v, 0) + 1
        entries[0] = entries.get(0, 0) + self.datum.rank
        return HodgeSpectrum(entries, ADJOINT)


def in_wpq(w: WeylElement, pair: ParabolicPair) -> bool:
    D = pair.datum
    winv = w.inverse()
    return (all(is_positive(winv.act(D.simple[i])) for i in pair.dp)
            and all(is_positive(w.act(D.simple[i])) for i in pair.dq))


def double_coset_partition(datum: RootDatum, dp, dq):
    """Partition W into W_P w W_Q double cosets by closure under simple reflections."""
    W = datum.weyl_group()
    left = datum.simple_reflections(dp)
    right = datum.simple_reflections(dq)
    assigned = set()
    cosets = []
    for w in W:
        if w in assigned:
            continue
        block = {w}
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for s in left:
                    y = s * x
                    if y not in block:
                        block.add(y)
                        nxt.append(y)
                for s in right:
                    y = x * s
                    if y not in block:
                        block.add(y)
                        nxt.append(y)
            frontier = nxt
        assigned |= block
        cosets.append(block)
    return cosets


def double_coset_representatives(datum: RootDatum, dp, dq):
    """Minimal-length element of each double coset (brute force)."""
    reps = []
    for block in double_coset_partition(datum, dp, dq):
        lens = {w: datum.length(w) for w in block}
        m = min(lens.values())
        mins = [w for w, l in lens.items() if l == m]
        if len(mins) != 1:
            raise LemmaViolation("double coset with several minimal-length elements")
        reps.append(mins[0])
    return reps


def wpq_enumerate(pair: ParabolicPair, verify: bool = True):
    """All w with w^{-1} Delta_P > 0 and w Delta_Q > 0, sorted by (length, signed perm)."""
    D = pair.datum
    out = [w for w in D.weyl_group() if in_wpq(w, pair)]
    out.sort(key=lambda w: (D.length(w), w.to_list()))
    if verify:
        reps = set(double_coset_representatives(D, pair.dp, pair.dq))
        if reps != set(out):
            raise LemmaViolation("W_PQ differs from the double coset representatives")
    return out


def root_lemma_check(w: WeylElement, pair: ParabolicPair):
    """x -> -w(x) maps {beta in S-S_Q : w beta > 0} onto {alpha in S-S_P : w^{-1} alpha > 0}."""
    if not in_wpq(w, pair):
        raise DomainError("w is not in W_PQ")
    D = pair.datum
    winv = w.inverse()
    A = [b for b in pair.sigma_minus_Q if is_positive(w.act(b))]
    B = [a for a in pair.sigma_minus_P if is_positive(winv.act(a))]
    image = {tuple(-x for x in w.act(b)) for b in A}
    length = D.length(w)
    bijective = image == set(B) and len(image) == len(A)
    # parts (i) and (ii) as stated
    part_i = all(is_positive(w.act(b)) == (not pair.in_sigma_P(tuple(-x for x in w.act(b))))
                 for b in pair.sigma_minus_Q)
    part_ii = all(is_positive(winv.act(a)) == (not pair.in_sigma_Q(tuple(-x for x in winv.act(a))))
                  for a in pair.sigma_minus_P)
    ok = bijective and len(A) == length and part_i and part_ii
    return {"source_size": len(A), "target_size": len(B), "length": length,
            "bijective": bijective, "part_i": part_i, "part_ii": part_ii, "ok": ok}


def _levi_blocks(datum: RootDatum, dp):
    """Index blocks of the Levi of P in types A and C; the middle block is flagged for C."""
    n = datum.ambient
    blocks = []
    cur = [0]
    for i in range(1, n):
        if (i - 1) in dp and (i - 1) < (datum.rank if datum.kind == "A" else datum.rank - 1):
            cur.append(i)
        else:
            blocks.append(cur)
            cur = [i]
    blocks.append(cur)
    middle = None
    if datum.kind == "C" and (datum.rank - 1) in dp:
        middle = len(blocks) - 1
    return blocks, middle


def is_bad(w: WeylElement, pair: ParabolicPair, mode: str = "aggregate") -> bool:
    D = pair.datum
    wmu = w.act(pair.mu)
    if mode == "aggregate":
        return sum(dot(wmu, g) for g in pair.sigma_minus_P) == 0
    if mode == "exact-blocks":
        if D.kind not in "AC":
            raise UnsupportedModeError(f"exact-blocks mode is not available for type {D.kind}")
        blocks, middle = _levi_blocks(D, pair.dp)
        if D.kind == "A":
            n = D.ambient
            total = sum(wmu)
            # block average equals global average, compared without division
            return all(n * sum(wmu[i] for i in b) == total * len(b) for b in blocks)
        return all(sum(wmu[i] for i in b) == 0 for k, b in enumerate(blocks) if k != middle)
    raise DomainError(f"unknown mode {mode!r}")


def fiber_codim(w: WeylElement, pair: ParabolicPair) -> int:
    """dim(G/Q) - #X with X = {beta in S-S_P : w^{-1} beta > 0}."""
    winv = w.inverse()
    X = [b for b in pair.sigma_minus_P if is_positive(winv.act(b))]
    return pair.dim_G_mod_Q() - len(X)


def lw2_hypothesis(pair: ParabolicPair, e: int):
    """(holds, lhs, rhs) for the strict inequality of the codimension proposition."""
    h = pair.hodge_spectrum()
    a0 = h[0]
    lhs = sum(p * m for p, m in h.entries.items() if p > 0)
    rhs = T_function(h, e) + T_function(h, Fraction(a0, 2) + e)
    return lhs > rhs, lhs, rhs


def dominant_mus(datum: RootDatum, bound: int = 3):
    """Dominant integer cocharacters with entries in [-bound, bound]."""
    n = datum.ambient
    if datum.kind == "A":
        for c in combinations_with_replacement(range(bound, -bound - 1, -1), n):
            yield tuple(c)
        return
    for mu in product(range(-bound, bound + 1), repeat=n):
        if all(dot(mu, a) >= 0 for a in datum.simple):
            yield mu


def lw2_harness(datum: RootDatum, configs=None, e_values=None, bound: int = 3):
    """Sweep (Delta_P, mu, e); collect counterexamples to the codimension claim.

    configs: iterable of (dp, mu); default is every subset of simple roots
    times every dominant mu with entries in [-bound, bound].  For each e in
    1..dim(G/Q) (or e_values) where the hypothesis holds, every bad w must
    have fiber codimension > e.
    """
    if configs is None:
        subsets = [frozenset(c) for k in range(datum.rank + 1) for c in combinations(range(datum.rank), k)]
        mus = list(dominant_mus(datum, bound))
        configs = [(dp, mu) for dp in subsets for mu in mus]
    stats = {"configs": 0, "checked": 0, "skipped": 0, "bad_elements": 0, "full_e_checked": 0}
    violations = []
    for dp, mu in configs:
        pair = ParabolicPair.from_mu(datum, dp, mu)
        dimGQ = pair.dim_G_mod_Q()
        stats["configs"] += 1
        if dimGQ == 0:
            continue
        bad = [(w, fiber_codim(w, pair)) for w in wpq_enumerate(pair, verify=False) if is_bad(w, pair)]
        stats["bad_elements"] += len(bad)
        es = range(1, dimGQ + 1) if e_values is None else [e for e in e_values if 1 <= e <= dimGQ]
        for e in es:
            holds, lhs, rhs = lw2_hypothesis(pair, e)
            if not holds:
                stats["skipped"] += 1
                continue
            stats["checked"] += 1
            if e == dimGQ:
                stats["full_e_checked"] += 1
            for w, codim in bad:
                if codim <= e:
                    violations.append({
                        "dp": sorted(i + 1 for i in dp), "mu": list(mu), "e": e,
                        "w": w.to_list(), "codim": codim, "lhs": lhs, "rhs": str(rhs),
                    })
    return violations, stats
