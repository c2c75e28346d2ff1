"""Subspace enumeration over small finite fields, in canonical RREF form."""
from __future__ import annotations

from itertools import combinations, product

from ..errors import SizeLimitError
from . import linalg

MAX_ORDER = 9
MAX_DIM = 6


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_rref_subspaces(field, dim_V: int, dim_W: int):
    """Yield every dim_W-dimensional subspace of field^dim_V once.

    Each subspace is a tuple of dim_W row tuples in reduced row echelon
    form.  No size guard; callers own the budget.
    """
    elems = list(field.elements())
    zero, one = field.zero, field.one
    for pivots in combinations(range(dim_V), dim_W):
        pset = set(pivots)
        slots = [(i, c) for i, pc in enumerate(pivots)
                 for c in range(pc + 1, dim_V) if c not in pset]
        for vals in product(elems, repeat=len(slots)):
            rows = [[zero] * dim_V for _ in range(dim_W)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = one
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(dim_V: int, dim_W: int, field):
    """All dim_W-subspaces of field^dim_V as RREF bases.

    Guarded to fields of order <= 9 and dim_V <= 6.
    """
    q = getattr(field, "order", None)
    if q is None:
        raise SizeLimitError("subspace enumeration needs a finite field")
    if q > MAX_ORDER or dim_V > MAX_DIM:
        raise SizeLimitError(
            f"enumeration over GF({q}) in dimension {dim_V} exceeds the limit "
            f"(order <= {MAX_ORDER}, dimension <= {MAX_DIM})")
    return list(iter_rref_subspaces(field, dim_V, dim_W))


def intersection_dim(field, A, B) -> int:
    """dim(span A  cap  span B) for bases A, B of the same ambient space."""
    ra = linalg.rank(field, A) if A else 0
    rb = linalg.rank(field, B) if B else 0
    rs = linalg.rank(field, list(A) + list(B)) if (A or B) else 0
    return ra + rb - rs


def span_codes(field, basis):
    """The set of all vectors in span(basis), each encoded as an int."""
    q = field.order
    dim_V = len(basis[0])
    vecs = {tuple([field.zero] * dim_V)}
    for b in basis:
        new = set()
        for v in vecs:
            for c in field.elements():
                new.add(tuple(field.add(x, field.mul(c, y)) for x, y in zip(v, b)))
        vecs = new
    out = set()
    for v in vecs:
        code = 0
        for x in v:
            code = code * q + x
        out.add(code)
    return frozenset(out)
