"""Dense exact linear algebra over a field object from ``fields``.

Matrices are lists (or tuples) of rows.  All routines are pure and
return fresh lists; ``Matrix`` is a thin immutable wrapper used at API
boundaries and for CSV input.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError


def zeros(F, n, m):
    return [[F.zero] * m for _ in range(n)]


def identity(F, n):
    out = zeros(F, n, n)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def matmul(F, A, B):
    if not A:
        return []
    if len(A[0]) != len(B):
        raise DomainError(f"shape mismatch {len(A)}x{len(A[0])} * {len(B)}x?")
    Bt = transpose(B)
    add, mul, zero = F.add, F.mul, F.zero
    out = []
    for row in A:
        new = []
        for col in Bt:
            s = zero
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(new)
    return out


def matvec(F, A, v):
    add, mul, zero = F.add, F.mul, F.zero
    out = []
    for row in A:
        s = zero
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return out


def matadd(F, A, B):
    return [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)]


def matsub(F, A, B):
    return [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(A, B)]


def scalar_mul(F, c, A):
    return [[F.mul(c, x) for x in r] for r in A]


def matpow(F, A, n):
    R = identity(F, len(A))
    B = [list(r) for r in A]
    while n:
        if n & 1:
            R = matmul(F, R, B)
        B = matmul(F, B, B)
        n >>= 1
    return R


def is_zero_matrix(F, A) -> bool:
    return all(F.is_zero(x) for r in A for x in r)


def rref(F, A):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    M = [list(r) for r in A]
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not F.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F, A) -> int:
    if not A:
        return 0
    return len(rref(F, A)[1])


def row_space_basis(F, vectors):
    """RREF basis of the span of the given vectors (as tuples)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    R, _ = rref(F, vectors)
    return [tuple(r) for r in R]


def kernel(F, A, ncols=None):
    """Basis of {x : A x = 0}."""
    if not A:
        n = ncols if ncols is not None else 0
        return [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
    n = len(A[0])
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def solve(F, A, b):
    """One solution x of A x = b, or None if inconsistent."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [F.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def inverse(F, A):
    n = len(A)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(A)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DomainError("matrix is singular")
    return [r[n:] for r in R]


def det(F, A):
    M = [list(r) for r in A]
    n = len(M)
    d = F.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not F.is_zero(M[i][c]):
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if not F.is_zero(M[i][c]):
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def charpoly(F, A):
    """Characteristic polynomial det(xI - A), coefficients lowest first.

    Hessenberg reduction followed by the standard recurrence, so it works
    over any field.
    """
    n = len(A)
    H = [list(r) for r in A]
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if not F.is_zero(H[i][m - 1]):
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in H:
                r[m], r[piv] = r[piv], r[m]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            if F.is_zero(H[i][m - 1]):
                continue
            t = F.mul(H[i][m - 1], inv)
            H[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(H[i], H[m])]
            for r in H:
                r[m] = F.add(r[m], F.mul(t, r[i]))
    # p_k = charpoly of leading k x k block
    polys = [[F.one]]
    for k in range(1, n + 1):
        a = H[k - 1][k - 1]
        prev = polys[k - 1]
        p = [F.zero] + list(prev)
        for i, c in enumerate(prev):
            p[i] = F.sub(p[i], F.mul(a, c))
        t = F.one
        for i in range(1, k):
            t = F.mul(t, H[k - i][k - i - 1])
            coef = F.mul(t, H[k - i - 1][k - 1])
            base = polys[k - i - 1]
            for j, c in enumerate(base):
                p[j] = F.sub(p[j], F.mul(coef, c))
        polys.append(p)
    return polys[n]


def poly_eval(F, coeffs, x):
    v = F.zero
    for c in reversed(coeffs):
        v = F.add(F.mul(v, x), c)
    return v


def hstack(*blocks):
    return [sum((list(b[i]) for b in blocks), []) for i in range(len(blocks[0]))]


def vstack(*blocks):
    return [list(r) for b in blocks for r in b]


def coerce_matrix(F, A):
    return [[F.coerce(x) for x in r] for r in A]


@dataclass(frozen=True)
class Matrix:
    """Immutable matrix over an exact field."""

    field: object
    rows: tuple

    @classmethod
    def from_rows(cls, field, rows):
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise DomainError("ragged matrix rows")
        return cls(field, rows)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def to_lists(self):
        return [list(r) for r in self.rows]

    def rank(self):
        return rank(self.field, self.rows)

    def kernel(self):
        return kernel(self.field, self.rows, self.shape[1])

    def det(self):
        return det(self.field, self.rows)

    def inverse(self):
        return Matrix(self.field, tuple(map(tuple, inverse(self.field, self.rows))))

    def charpoly(self):
        return charpoly(self.field, self.rows)

    def __matmul__(self, other):
        return Matrix(self.field, tuple(map(tuple, matmul(self.field, self.rows, other.rows))))

    def T(self):
        return Matrix(self.field, tuple(map(tuple, transpose(self.rows))))
