"""Finite-field counting shadow of the bad-filtration codimension claim.

Over F_q with the standard symplectic form on F_q^{2d}, enumerate the
self-dual flags F of a given type and call F bad when some nontrivial
phi-stable self-dual filtration f has, on every graded piece, induced
F-weight equal to the global weight of F.  Condition (c) of the
proposition (a fixed isomorphism class of the graded pieces) is replaced
by a grouping key: graded dimensions plus the characteristic polynomial of
phi on each piece.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from ..core import linalg
from ..core.fields import GF
from ..core.subspaces import iter_rref_subspaces
from ..errors import DomainError, SizeLimitError
from ..symplectic import SymplecticSpace


def _perp(space, basis):
    F = space.field
    if not basis:
        return [space.basis_vector(i) for i in range(space.d)] + \
               [space.basis_vector(i, True) for i in range(space.d)]
    G = space.gram()
    rows = [linalg.matvec(F, linalg.transpose(G), list(v)) for v in basis]  # v^T G
    return [tuple(x) for x in linalg.kernel(F, rows)]


def _contains(F, big, small):
    if not small:
        return True
    return linalg.rank(F, list(big) + list(small)) == len(big)


def _stable(F, phi, basis):
    if not basis:
        return True
    img = [linalg.matvec(F, phi, list(v)) for v in basis]
    return linalg.rank(F, list(basis) + img) == len(basis)


def _canon(F, basis):
    return tuple(tuple(r) for r in linalg.row_space_basis(F, basis)) if basis else ()


def self_dual_flags(space, flag_type):
    """All self-dual flags F^1 > ... > F^w with dim F^p = flag_type[p-1].

    Self-duality means (F^p)^perp = F^{w+1-p}.
    """
    F = space.field
    n = space.dim
    w = len(flag_type)
    dims = list(flag_type)
    for p in range(w):
        if dims[p] + dims[w - 1 - p] != n:
            raise DomainError(f"flag type {flag_type} is not self-dual in dimension {n}")
    if any(dims[i] < dims[i + 1] for i in range(w - 1)):
        raise DomainError("flag dimensions must be nonincreasing")
    # choose F^p for p > w/2 (isotropic part, smallest first), the rest by perps
    upper = [p for p in range(w) if 2 * (p + 1) >= w + 1]
    subspace_lists = {}
    for p in upper:
        k = dims[p]
        subspace_lists[p] = [W for W in iter_rref_subspaces(F, n, k) if space.is_isotropic(W)]
    flags = []

    def extend(idx, chosen):
        if idx < 0:
            full = [None] * w
            for p in upper:
                full[p] = chosen[p]
            for p in range(w):
                if full[p] is None:
                    full[p] = _canon(F, _perp(space, chosen[w - 1 - p]))
            flags.append(tuple(full))
            return
        p = upper[idx]
        for W in subspace_lists[p]:
            if idx + 1 < len(upper) and not _contains(F, W, chosen[upper[idx + 1]]):
                continue
            chosen[p] = W
            extend(idx - 1, chosen)
        chosen.pop(p, None)

    extend(len(upper) - 1, {})
    return flags


def stable_isotropic_chains(space, phi):
    """Nonempty strictly increasing chains of nonzero phi-stable isotropic subspaces."""
    F = space.field
    n = space.dim
    stable = []
    for k in range(1, space.d + 1):
        for W in iter_rref_subspaces(F, n, k):
            if space.is_isotropic(W) and _stable(F, phi, W):
                stable.append(W)
    chains = []

    def grow(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for W in stable:
            if len(W) > len(last) and _contains(F, W, last):
                grow(chain + [W])

    for W in stable:
        grow([W])
    return chains


def _self_dual_filtration(space, chain):
    """0 < I_1 < ... < I_m <= I_m^perp < ... < I_1^perp < V, duplicates removed."""
    F = space.field
    perps = [_canon(F, _perp(space, I)) for I in reversed(chain)]
    full = [tuple(r) for r in linalg.identity(F, space.dim)]
    steps = [()] + list(chain) + perps + [tuple(full)]
    out = [steps[0]]
    for s in steps[1:]:
        if len(s) != len(out[-1]):
            out.append(s)
    return out


def _int_dim(F, A, B):
    if not A or not B:
        return 0
    return len(A) + len(B) - linalg.rank(F, list(A) + list(B))


def _induced_charpoly(F, phi, lower, upper):
    """Characteristic polynomial of phi on upper/lower."""
    n = len(upper[0])
    # extend a basis of lower to a basis of upper
    basis = list(lower)
    for v in upper:
        if linalg.rank(F, basis + [v]) > len(basis):
            basis.append(v)
    k0, k1 = len(lower), len(basis)
    # express phi(b_j) for the new vectors in the basis, keep the quotient block
    B = linalg.transpose(basis)
    block = []
    for j in range(k0, k1):
        img = linalg.matvec(F, phi, list(basis[j]))
        coords = linalg.solve(F, B, img)
        block.append(coords[k0:k1])
    block = linalg.transpose(block)
    return tuple(linalg.charpoly(F, block))


def linalg_census(q: int, d: int, flag_type, phi, max_flags: int = 20000):
    """Count bad self-dual flags for a similitude phi of F_q^{2d}.

    Returns {total_flags, bad_flags, bad_by_key, chains}.
    """
    if q not in (2, 3, 5, 7) or d > 2:
        raise SizeLimitError("census limited to q <= 7 and 2d <= 4")
    Fq = GF(q)
    space = SymplecticSpace(d, Fq)
    phi = linalg.coerce_matrix(Fq, phi)
    if len(phi) != 2 * d:
        raise DomainError(f"phi must be {2 * d}x{2 * d}")
    G = space.gram()
    lhs = linalg.matmul(Fq, linalg.matmul(Fq, linalg.transpose(phi), G), phi)
    c = lhs[0][d]
    if Fq.is_zero(c) or lhs != linalg.scalar_mul(Fq, c, G):
        raise DomainError("phi is not a symplectic similitude")
    w = len(flag_type)
    flags = self_dual_flags(space, flag_type)
    if len(flags) > max_flags:
        raise SizeLimitError(f"{len(flags)} flags exceed the limit {max_flags}")
    chains = stable_isotropic_chains(space, phi)
    filtrations = []
    for chain in chains:
        filt = _self_dual_filtration(space, chain)
        key = []
        for lo, hi in zip(filt, filt[1:]):
            key.append((len(hi) - len(lo), _induced_charpoly(Fq, phi, lo, hi) if lo else
                        _induced_charpoly(Fq, phi, (), hi)))
        filtrations.append((filt, tuple(key)))
    bad_by_key = Counter()
    bad_total = 0
    for flag in flags:
        keys = set()
        for filt, key in filtrations:
            ok = True
            for lo, hi in zip(filt, filt[1:]):
                g = len(hi) - len(lo)
                s = 0
                for Fp in flag:
                    s += _int_dim(Fq, Fp, hi) - _int_dim(Fq, Fp, lo)
                if 2 * s != w * g:
                    ok = False
                    break
            if ok:
                keys.add(key)
        if keys:
            bad_total += 1
            for k in keys:
                bad_by_key[k] += 1
    return {
        "q": q, "d": d, "flag_type": list(flag_type),
        "total_flags": len(flags), "bad_flags": bad_total,
        "bad_fraction": Fraction(bad_total, len(flags)) if flags else Fraction(0),
        "stable_chains": len(chains),
        "bad_by_key": [{"graded": [[g, list(cp)] for g, cp in k], "count": v}
                       for k, v in sorted(bad_by_key.items())],
    }


def regular_split_phi(q: int, lambdas, c: int):
    """diag(l_1, .., l_d, c/l_1, .., c/l_d), a split similitude with multiplier c."""
    Fq = GF(q)
    d = len(lambdas)
    n = 2 * d
    M = [[0] * n for _ in range(n)]
    for i, l in enumerate(lambdas):
        M[i][i] = l % q
        M[d + i][d + i] = Fq.div(c % q, l % q)
    return M
