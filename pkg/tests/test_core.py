from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from periodkit.core import linalg
from periodkit.core.fields import GF, QQ, make_field, is_irreducible, parse_rational
from periodkit.core.matio import parse_matrix_text
from periodkit.core.rng import stream
from periodkit.core.subspaces import enumerate_subspaces, gaussian_binomial, iter_rref_subspaces
from periodkit.errors import DomainError, SizeLimitError

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2)]


def test_f9_modulus_is_least_irreducible():
    F = GF(3, 2)
    assert F.modulus == (1, 0, 1)
    # every lexicographically smaller monic quadratic factors
    for c0 in range(3):
        for c1 in range(3):
            if (c0, c1) < (1, 0):
                assert not is_irreducible([c0, c1, 1], 3)


def test_frobenius_prime_field_fixed():
    F = GF(3, 2)
    for x in range(3):
        assert F.frobenius(x) == x


def test_frobenius_is_cube_on_f9():
    F = GF(3, 2)
    g = F.generator
    assert F.frobenius(g) == F.pow(g, 3)
    assert F.frobenius(g) != g


def test_frobenius_order_e_on_f16():
    F = GF(2, 4)
    for x in F.elements():
        assert F.frobenius(x, 4) == x
    assert any(F.frobenius(x, 2) != x for x in F.elements())


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms_random(p, e):
    F = GF(p, e)
    rng = stream(7, f"axioms-{p}-{e}")
    for _ in range(1000):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (2, 3)])
def test_multiplicative_group_cyclic(p, e):
    F = GF(p, e)
    g = F.generator
    seen = {F.pow(g, k) for k in range(F.order - 1)}
    assert seen == set(range(1, F.order))


def test_make_field():
    assert make_field("QQ") is QQ
    assert make_field(9) == GF(3, 2)
    assert make_field("5") == GF(5)
    with pytest.raises(DomainError):
        make_field(6)


def test_coerce_rational_mod_p():
    F = GF(5)
    assert F.coerce(Fraction(1, 2)) == 3
    with pytest.raises(DomainError):
        F.coerce(Fraction(1, 5))


def test_parse_rational_refuses_float():
    assert parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(DomainError):
        parse_rational(0.5)
    with pytest.raises(DomainError):
        parse_rational("1/0")


def test_kernel_identity_empty():
    assert linalg.kernel(QQ, linalg.identity(QQ, 3)) == []


def test_kernel_zero_matrix():
    assert len(linalg.kernel(QQ, linalg.zeros(QQ, 2, 3))) == 3


def test_kernel_rank_one():
    ker = linalg.kernel(QQ, [[1, 2], [2, 4]])
    assert len(ker) == 1
    v = ker[0]
    # proportional to (-2, 1)
    assert v[0] * 1 == v[1] * -2


def test_inverse_and_det():
    A = [[Fraction(2), Fraction(1)], [Fraction(7), Fraction(4)]]
    assert linalg.det(QQ, A) == 1
    Ai = linalg.inverse(QQ, A)
    assert linalg.matmul(QQ, A, Ai) == linalg.identity(QQ, 2)
    with pytest.raises(DomainError):
        linalg.inverse(QQ, [[1, 2], [2, 4]])


def test_charpoly_companion():
    # x^2 - 3x + 2 has roots 1, 2
    cp = linalg.charpoly(QQ, [[Fraction(1), Fraction(5)], [Fraction(0), Fraction(2)]])
    assert cp == [2, -3, 1]


def test_solve_inconsistent():
    assert linalg.solve(QQ, [[1, 1], [1, 1]], [1, 2]) is None


matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from(["QQ", 2, 3, 4, 9]))
def test_rank_nullity(A, desc):
    F = make_field(desc)
    M = linalg.coerce_matrix(F, A)
    ker = linalg.kernel(F, M, len(A[0]))
    assert linalg.rank(F, M) + len(ker) == len(A[0])
    for v in ker:
        assert all(F.is_zero(x) for x in linalg.matvec(F, M, v))


def test_gaussian_binomial_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 0, 3) == 1
    assert gaussian_binomial(4, 2, 2) == 35


def test_enumerate_examples():
    assert len(enumerate_subspaces(2, 1, GF(2))) == 3
    assert len(enumerate_subspaces(3, 0, GF(3))) == 1
    assert len(enumerate_subspaces(4, 2, GF(2))) == 35


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_enumeration_matches_gaussian_binomial(q):
    F = make_field(q)
    for n in range(5):
        for k in range(n + 1):
            subs = list(iter_rref_subspaces(F, n, k))
            assert len(subs) == gaussian_binomial(n, k, q)
            assert len(set(subs)) == len(subs)


def test_enumerate_size_guard():
    with pytest.raises(SizeLimitError):
        enumerate_subspaces(8, 4, GF(7))


def test_matrix_text_parsing():
    M = parse_matrix_text("# comment\n1, 2/3\n-1,0\n")
    assert M == [[1, Fraction(2, 3)], [-1, 0]]
    with pytest.raises(DomainError):
        parse_matrix_text("1,2\n3\n")


def test_named_streams_independent_and_reproducible():
    a = [stream(1, "x").random() for _ in range(2)]
    assert a[0] == a[1]
    assert stream(1, "x").random() != stream(1, "y").random()
