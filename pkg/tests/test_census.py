from fractions import Fraction

import pytest

from periodkit.errors import DomainError, SizeLimitError
from periodkit.rootfilt.census import linalg_census, regular_split_phi, self_dual_flags
from periodkit.symplectic import SymplecticSpace
from periodkit.core.fields import GF
from periodkit.core.subspaces import gaussian_binomial


def test_no_stable_filtration_no_bad_flags():
    # x^2 + 1 is irreducible over F_3, so no line is stable
    out = linalg_census(3, 1, [1], [[0, 2], [1, 0]])
    assert out["stable_chains"] == 0 and out["bad_flags"] == 0


def test_scalar_similitude_d1():
    out = linalg_census(3, 1, [1], [[2, 0], [0, 2]])
    assert out["total_flags"] == 4
    assert out["bad_fraction"] == Fraction(out["bad_flags"], 4)


def test_lagrangian_flag_count():
    # |LG(2,4)(F_q)| = (q+1)(q^2+1)
    assert len(self_dual_flags(SymplecticSpace(2, GF(3)), [2])) == 4 * 10
    assert len(self_dual_flags(SymplecticSpace(2, GF(3)), [3, 1])) == 40
    assert len(self_dual_flags(SymplecticSpace(1, GF(5)), [1])) == gaussian_binomial(2, 1, 5)


def test_regular_split_census_values():
    a = linalg_census(5, 2, [2], regular_split_phi(5, [1, 3], 2))
    b = linalg_census(7, 2, [2], regular_split_phi(7, [1, 2], 3))
    assert (a["total_flags"], a["bad_flags"]) == (156, 92)
    assert (b["total_flags"], b["bad_flags"]) == (400, 184)


def test_bad_fraction_trend():
    # codimension >= 1: going from q to q' should scale the fraction by about q/q'
    a = linalg_census(5, 2, [2], regular_split_phi(5, [1, 3], 2))["bad_fraction"]
    b = linalg_census(7, 2, [2], regular_split_phi(7, [1, 2], 3))["bad_fraction"]
    expected = a * Fraction(5, 7)
    assert expected / 2 <= b <= 2 * expected


def test_rejects_non_similitude():
    with pytest.raises(DomainError):
        linalg_census(3, 2, [2], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])


def test_size_guard():
    with pytest.raises(SizeLimitError):
        linalg_census(11, 1, [1], [[1, 0], [0, 1]])
    with pytest.raises(SizeLimitError):
        linalg_census(3, 3, [3], [[1 if i == j else 0 for j in range(6)] for i in range(6)])


def test_non_self_dual_type():
    with pytest.raises(DomainError):
        self_dual_flags(SymplecticSpace(2, GF(3)), [3])
