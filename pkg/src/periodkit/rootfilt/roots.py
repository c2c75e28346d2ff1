"""Classical root data in explicit coordinates and their Weyl groups.

Type A_k lives in Z^{k+1} (GL-style coordinates); B_k, C_k, D_k live in
Z^k.  Weyl group elements are signed permutations: w(e_i) = s_i e_{p(i)},
with all signs +1 in type A and an even number of -1 in type D.  These act
orthogonally, so the pairing of a cocharacter with a root is the dot
product.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

from ..core import linalg
from ..core.fields import QQ
from ..errors import DomainError, SizeLimitError

MAX_RANK = 5


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class WeylElement:
    perm: tuple
    signs: tuple

    def act(self, v):
        out = [0] * len(v)
        for i, x in enumerate(v):
            out[self.perm[i]] += self.signs[i] * x
        return tuple(out)

    def __mul__(self, other):
        # (self o other)(e_i) = other.s_i * self(e_{other.p(i)})
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(self.perm)))
        return WeylElement(perm, signs)

    def inverse(self):
        n = len(self.perm)
        perm = [0] * n
        signs = [0] * n
        for i in range(n):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))

    def is_identity(self):
        return all(p == i for i, p in enumerate(self.perm)) and all(s == 1 for s in self.signs)

    def to_list(self):
        return [s * (p + 1) for p, s in zip(self.perm, self.signs)]


def is_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


class RootDatum:
    """One of A_k, B_k, C_k, D_k."""

    def __init__(self, kind: str, rank: int):
        kind = kind.upper()
        if kind not in "ABCD" or len(kind) != 1:
            raise DomainError(f"unsupported root system type {kind!r}")
        if rank < 1 or (kind == "D" and rank < 2) or (kind in "BC" and rank < 1):
            raise DomainError(f"invalid rank {rank} for type {kind}")
        self.kind = kind
        self.rank = rank
        self.ambient = rank + 1 if kind == "A" else rank
        self.roots = self._build_roots()
        self.positive = [r for r in self.roots if is_positive(r)]
        self.simple = self._build_simple()
        self._check()

    @classmethod
    def parse(cls, label: str):
        label = label.strip().upper()
        try:
            return cls(label[0], int(label[1:]))
        except (ValueError, IndexError) as exc:
            raise DomainError(f"bad root system label {label!r}") from exc

    def __repr__(self):
        return f"{self.kind}{self.rank}"

    @property
    def label(self):
        return f"{self.kind}{self.rank}"

    def _unit(self, i, c=1):
        v = [0] * self.ambient
        v[i] = c
        return v

    def _build_roots(self):
        n = self.ambient
        roots = set()
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                v = [0] * n
                v[i], v[j] = 1, -1
                roots.add(tuple(v))
                if self.kind != "A":
                    for s in (1, -1):
                        v = [0] * n
                        v[i], v[j] = s, s
                        roots.add(tuple(v))
        if self.kind in "BC":
            c = 1 if self.kind == "B" else 2
            for i in range(n):
                for s in (1, -1):
                    roots.add(tuple(self._unit(i, s * c)))
        return sorted(roots, reverse=True)

    def _build_simple(self):
        k, n = self.rank, self.ambient
        out = []
        for i in range(k - 1 if self.kind != "A" else k):
            v = [0] * n
            v[i], v[i + 1] = 1, -1
            out.append(tuple(v))
        if self.kind == "B":
            out.append(tuple(self._unit(k - 1)))
        elif self.kind == "C":
            out.append(tuple(self._unit(k - 1, 2)))
        elif self.kind == "D":
            v = [0] * n
            v[k - 2], v[k - 1] = 1, 1
            out.append(tuple(v))
        return out

    def expected_count(self):
        k = self.rank
        return {"A": k * (k + 1), "B": 2 * k * k, "C": 2 * k * k, "D": 2 * k * (k - 1)}[self.kind]

    def _check(self):
        if len(self.roots) != self.expected_count():
            raise DomainError("root count mismatch")
        for r in self.positive:
            coeffs = self.simple_coordinates(r)
            if any(c < 0 or c.denominator != 1 for c in coeffs):
                raise DomainError(f"positive root {r} is not a nonnegative integer combination")

    @cached_property
    def _simple_system(self):
        return linalg.transpose([list(map(QQ.coerce, a)) for a in self.simple])

    def simple_coordinates(self, root):
        """Coefficients c with root = sum c_i alpha_i (exact)."""
        x = linalg.solve(QQ, self._simple_system, [QQ.coerce(v) for v in root])
        if x is None:
            raise DomainError(f"{root} not in the root lattice span")
        return x

    def support(self, root):
        return frozenset(i for i, c in enumerate(self.simple_coordinates(root)) if c != 0)

    @cached_property
    def supports(self):
        return {r: self.support(r) for r in self.roots}

    # -- Weyl group --
    def weyl_group(self):
        if self.rank > MAX_RANK:
            raise SizeLimitError(f"Weyl groups limited to rank <= {MAX_RANK}")
        return self._weyl

    @cached_property
    def _weyl(self):
        n = self.ambient
        out = []
        for perm in permutations(range(n)):
            if self.kind == "A":
                out.append(WeylElement(perm, (1,) * n))
                continue
            for signs in product((1, -1), repeat=n):
                if self.kind == "D" and signs.count(-1) % 2:
                    continue
                out.append(WeylElement(perm, signs))
        return out

    def identity(self):
        return WeylElement(tuple(range(self.ambient)), (1,) * self.ambient)

    def reflection(self, alpha) -> WeylElement:
        """s_alpha as a signed permutation."""
        n = self.ambient
        nz = [i for i, x in enumerate(alpha) if x]
        perm = list(range(n))
        signs = [1] * n
        if len(nz) == 1:
            signs[nz[0]] = -1
        else:
            i, j = nz
            perm[i], perm[j] = j, i
            if alpha[i] == alpha[j]:  # e_i + e_j type: swap with sign change
                signs[i] = signs[j] = -1
        w = WeylElement(tuple(perm), tuple(signs))
        # sanity: s_alpha(alpha) = -alpha
        if w.act(alpha) != tuple(-x for x in alpha):
            raise DomainError("reflection construction failed")
        return w

    def simple_reflections(self, indices=None):
        idx = range(self.rank) if indices is None else sorted(indices)
        return [self.reflection(self.simple[i]) for i in idx]

    def length(self, w: WeylElement) -> int:
        return sum(1 for a in self.positive if not is_positive(w.act(a)))

    def reduced_word_lengths(self):
        """BFS distances from the identity in the Cayley graph on simple reflections."""
        gens = self.simple_reflections()
        start = self.identity()
        dist = {start: 0}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for s in gens:
                x = w * s
                if x not in dist:
                    dist[x] = dist[w] + 1
                    queue.append(x)
        return dist

    def subgroup(self, indices):
        """Parabolic subgroup generated by the simple reflections in indices."""
        gens = self.simple_reflections(indices)
        start = self.identity()
        seen = {start}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for s in gens:
                x = w * s
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen
