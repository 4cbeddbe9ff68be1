from math import factorial

import pytest

from charstat.errors import DomainError
from charstat.partitions import partitions_of
from charstat.pathpower import (
    p_to_path,
    p_to_path_by_set_partitions,
    path_multiply,
    path_to_m,
    path_to_p,
    path_to_p_by_set_partitions,
    path_to_s,
    stable_path_expansion,
)
from charstat.poly import Poly, binomial
from charstat.symfunc import Basis, SymFunc, convert, p, s

n = Poly.var("n")


def vp(*parts, coeff=1):
    return SymFunc.single(Basis.PATH, parts, coeff)


def test_path_to_p_examples():
    assert path_to_p((3, 2, 1)) == p(3, 2, 1) + p(5, 1) + p(4, 2) + p(3, 3) + p(6) * 2
    assert path_to_p((4,)) == p(4)
    assert path_to_p((1, 1)) == p(1, 1) + p(2)


@pytest.mark.parametrize("size", range(1, 8))
def test_path_to_p_matches_set_partitions(size):
    for mu in partitions_of(size):
        assert path_to_p(mu) == path_to_p_by_set_partitions(mu)


def test_p_to_path_three_parts():
    # p_abc = vp_abc - vp_(a+b)c - vp_(a+c)b - vp_(b+c)a + vp_(a+b+c)
    got = p_to_path((5, 3, 2))
    expected = vp(5, 3, 2) - vp(8, 2) - vp(7, 3) - vp(5, 5) + vp(10)
    assert got == expected
    assert p_to_path((4,)) == vp(4)


@pytest.mark.parametrize("size", range(1, 8))
def test_p_to_path_inverts_path_to_p(size):
    for mu in partitions_of(size):
        assert p_to_path(mu) == p_to_path_by_set_partitions(mu)
        assert convert(convert(path_to_p(mu), Basis.PATH), Basis.POWER) == path_to_p(mu)
        assert convert(path_to_p(mu), Basis.PATH) == vp(*mu)


def test_path_multiply():
    assert path_multiply(1, (1,)) == vp(1, 1) - vp(2)
    assert path_multiply(2, (2, 1)) == vp(2, 2, 1) - vp(4, 1) - vp(3, 2)
    assert path_multiply(3, ()) == vp(3)
    with pytest.raises(DomainError):
        path_multiply(0, (1,))


@pytest.mark.parametrize("size", range(1, 6))
def test_path_multiply_is_the_power_sum_product(size):
    for mu in partitions_of(size):
        for a in (1, 2, 3):
            assert convert(path_multiply(a, mu), Basis.POWER) == p(a) * path_to_p(mu)


def test_path_to_m():
    assert path_to_m((3, 2, 2, 1)).coefficient((5, 3)) == 14
    assert path_to_m((4,)) == convert(p(4), Basis.MONOMIAL)
    assert path_to_m(()) == SymFunc.single(Basis.MONOMIAL, ())


@pytest.mark.parametrize("size", range(1, 7))
def test_path_to_m_matches_conversion(size):
    for mu in partitions_of(size):
        assert path_to_m(mu) == convert(path_to_p(mu), Basis.MONOMIAL)


def test_path_to_s_examples():
    assert path_to_s((3, 2, 1)) == s(6) * 6 - s(5, 1) * 4 + s(4, 1, 1) * 2 + s(3, 3) * 2 - s(3, 2, 1)
    assert path_to_s((3, 1, 1, 1)) == (s(4, 1, 1) - s(5, 1) - s(4, 2) + s(6) * 4) * 6
    for k in range(1, 7):
        assert path_to_s((1,) * k) == s(k) * factorial(k)


def test_stable_expansion_of_a_three_path():
    st = stable_path_expansion((3,))
    assert st.entries == {(1, 1): Poly.const(1), (1,): Poly.const(-1), (2,): Poly.const(-1), (): n - 2}
    assert st.normalizer == "(n-3)!"


def test_stable_expansion_of_a_two_path():
    st = stable_path_expansion((2,))
    assert st.entries == {(): n - 1, (1,): Poly.const(-1)}


def test_stable_expansion_of_two_two_paths():
    st = stable_path_expansion((2, 2))
    assert st.entries == {(2,): Poly.const(1), (1,): -(n - 3), (): binomial(n - 2, 2)}
    assert st.normalizer == "2*(n-4)!"


@pytest.mark.parametrize("mu_bar", [(3,), (2,), (2, 2), (3, 2), ()])
def test_stable_expansion_reproduces_finite_n(mu_bar):
    st = stable_path_expansion(mu_bar)
    for k in range(st.valid_from, st.valid_from + 5):
        if k < sum(mu_bar):
            continue
        full = mu_bar + (1,) * (k - sum(mu_bar))
        assert st.evaluate(k) == path_to_s(full)


def test_stable_expansion_rejects_unit_parts():
    with pytest.raises(DomainError):
        stable_path_expansion((2, 1))
