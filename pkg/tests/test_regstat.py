from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest

from charstat.errors import DomainError
from charstat.oracle import TEXTBOOK, brute_ch, brute_conditional_moment, brute_matching_moment, cycle_type
from charstat.partitions import partitions_of
from charstat.poly import Poly
from charstat.regstat import (
    BUILTIN_NAMES,
    ClassPolynomial,
    PackedTriple,
    RegularStatistic,
    bivincular,
    builtin,
    closed_translate_ch,
    expectation_poly,
    leading_limit,
    matching_moment,
    matching_stat,
    moment_poly,
    reynolds_poly,
    stable_class_coefficients,
    schur_at,
    stat_ch,
    translate_ch,
    translate_product,
    triple,
    variance_poly,
    vincular_sum_poly,
    vincular_sum_values,
    x,
)
from charstat.symfunc import Basis, multiply, p, s

n, m1, m2, m3, m4 = (Poly.var(v) for v in ("n", "m1", "m2", "m3", "m4"))
alpha = Poly.var("alpha")
EXC = triple((1,), (2,))
FIX = triple((1,), (1,))


def perms(k):
    return permutations(range(1, k + 1))


# packed triples and statistics ------------------------------------------------------

def test_triples_are_canonical_and_validated():
    assert triple((2, 1), (1, 2)) == triple((1, 2), (2, 1))
    with pytest.raises(DomainError):
        triple((1,), (3,))
    with pytest.raises(DomainError):
        triple((1,), (2,), C=(2,))
    with pytest.raises(DomainError):
        triple((1,), (2,), f=x(3))
    t = triple((1, 2), (2, 1), C=(1,), f=x(1))
    assert (t.m, t.size, t.shift, t.power) == (2, 2, 1, 2)
    assert PackedTriple.from_json(t.to_json()) == t


def test_statistic_json_and_parameters():
    for name in BUILTIN_NAMES:
        stat = builtin(name)
        assert RegularStatistic.from_json(stat.to_json()) == stat
    expected = {"exc": (1, 0, 1), "inv": (2, 0, 2), "des": (2, 1, 1), "maj": (2, 1, 2), "peak": (3, 2, 1)}
    for name, params in expected.items():
        assert builtin(name).parameters() == params


def test_builtin_term_counts():
    assert [len(builtin(name)) for name in ("exc", "inv", "des", "maj", "peak")] == [1, 13, 8, 8, 40]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_match_textbook_definitions(name):
    stat = builtin(name)
    for k in range(1, 7):
        for w in perms(k):
            assert stat.evaluate(w) == TEXTBOOK[name](w)


def test_builtin_spot_values():
    assert builtin("maj").evaluate((3, 1, 2)) == 1
    assert builtin("des").evaluate(tuple(range(1, 8))) == 0
    with pytest.raises(DomainError):
        builtin("nope")


# vincular sums -----------------------------------------------------------------------

def test_vincular_sums():
    one = Poly.const(1)
    for m, C in [(1, ()), (2, ()), (2, (1,)), (3, (1, 2)), (3, (2,))]:
        assert vincular_sum_poly(one, m, C) == one
    assert vincular_sum_poly(x(1), 1) == (n + 1) / 2


def test_vincular_sum_against_direct_sums():
    from itertools import combinations
    f = x(1) * x(3) + 2 * x(2) ** 2
    for k in range(3, 8):
        direct = sum(
            (f.evaluate({"x1": L[0], "x2": L[1], "x3": L[2]}) for L in combinations(range(1, k + 1), 3) if L[2] == L[1] + 1),
            Fraction(0),
        )
        assert vincular_sum_values(f, 3, (2,), k) == direct
        assert vincular_sum_poly(f, 3, (2,)).evaluate({"n": k}) * comb(k - 1, 2) == direct


# characteristic images ------------------------------------------------------------------

def test_translate_images():
    assert translate_ch(EXC, 6) == s(6) * Fraction(5, 2) - s(5, 1) / 2
    for k in range(2, 8):
        assert translate_ch(FIX, k) == s(k) + s(k - 1, 1)
    assert translate_ch(EXC.with_weight(Poly()), 5).is_zero()


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_characteristic_image_against_brute_force(name):
    for k in range(1, 7):
        assert stat_ch(builtin(name), k) == brute_ch(TEXTBOOK[name], k)


def test_closed_translates():
    for k in range(3, 8):
        assert closed_translate_ch((1,), (), 1, k) == s(k) + s(k - 1, 1)
    swap = closed_translate_ch((2, 1), (), 1, 6)
    assert swap == multiply(s(4), p(2)) / 2
    m2_count = lambda w: cycle_type(w).count(2)
    assert swap == brute_ch(m2_count, 6)
    with pytest.raises(DomainError):
        closed_translate_ch((1, 1), (), 1, 4)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_cycle_counts_are_closed(i):
    cycles = [v for v in perms(i) if cycle_type(v) == (i,)]
    stat = RegularStatistic.of(*(triple(tuple(range(1, i + 1)), v) for v in cycles))
    for k in range(1, 7):
        for w in perms(k):
            assert stat.evaluate(w) == cycle_type(w).count(i)


def test_stable_coefficients_reproduce_finite_images():
    for name in ("exc", "inv", "maj", "peak"):
        coeffs = stable_class_coefficients(builtin(name))
        for k in range(6, 9):
            assert schur_at(coeffs, k) == stat_ch(builtin(name), k)


# products ------------------------------------------------------------------------------

def test_exc_squared_expansion():
    expected = RegularStatistic([
        (triple((1,), (2,)), 1),
        (triple((1, 2), (2, 3)), 2),
        (triple((1, 2), (3, 4)), 2),
        (triple((1, 2), (4, 3)), 2),
        (triple((1, 3), (2, 4)), 2),
    ])
    assert translate_product(EXC, EXC) == expected


def test_product_with_the_unit_triple():
    unit = triple((), ())
    for t in (EXC, FIX, triple((1, 2), (2, 1), (1,), x(1))):
        assert translate_product(t, unit) == RegularStatistic.of(t)


def test_products_are_pointwise():
    triples = [EXC, FIX, triple((1, 2), (2, 1), (1,), x(1)), triple((1, 2), (3, 1))]
    for a in triples:
        for b in triples:
            prod = translate_product(a, b)
            for w in perms(6):
                assert prod.evaluate(w) == a.evaluate(w) * b.evaluate(w)


# class polynomials ------------------------------------------------------------------------

def test_reynolds_of_builtins():
    assert reynolds_poly(builtin("exc")).reduced() == ClassPolynomial((n - m1) / 2)
    assert reynolds_poly(builtin("maj")) == n * (n - 1) / 4 - m1**2 / 4 + m2 / 2 + m1 / 4
    assert reynolds_poly(builtin("inv")) == (3 * n**2 - 2 * n * m1 - m1**2 + 2 * m2 - n + m1) / 12
    des = reynolds_poly(builtin("des"))
    assert des.denom_order == 1
    assert des == ClassPolynomial((n**2 - m1**2 + 2 * m2 - n + m1) / 2, (0,))
    assert reynolds_poly(builtin("fix")) == ClassPolynomial(m1)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_reynolds_against_brute_force(name):
    r = reynolds_poly(builtin(name))
    for k in range(1, 7):
        for lam in partitions_of(k):
            if k < r.denom_order:
                with pytest.raises(DomainError):
                    r.at(lam)
                continue
            assert r.at(lam) == brute_conditional_moment(TEXTBOOK[name], lam)


def test_second_moments():
    assert moment_poly(builtin("exc"), 2) == (3 * m1**2 - 6 * m1 * n + 3 * n**2 - 2 * m2 - m1 + n) / 12
    maj2 = (
        m1**4 / 16 - m1**2 * n**2 / 8 + n**4 / 16 - Fraction(11, 72) * m1**3 - m1**2 * m2 / 4 + m1**2 * n / 8
        + m1 * n**2 / 8 + m2 * n**2 / 4 - Fraction(7, 72) * n**3 + m1**2 / 48 + m1 * m2 / 4 + Fraction(3, 4) * m2**2
        - m1 * n / 8 - m2 * n / 4 + Fraction(5, 48) * n**2 + Fraction(5, 72) * m1 - Fraction(3, 4) * m2
        - Fraction(2, 3) * m3 - m4 / 2 - Fraction(5, 72) * n
    )
    assert moment_poly(builtin("maj"), 2) == maj2
    assert moment_poly(builtin("inv"), 1) == reynolds_poly(builtin("inv"))
    with pytest.raises(DomainError):
        moment_poly(builtin("exc"), 0)


@pytest.mark.parametrize("name", ["exc", "des", "fix"])
def test_second_moments_against_brute_force(name):
    r = moment_poly(builtin(name), 2)
    for k in range(2, 7):
        for lam in partitions_of(k):
            assert r.at(lam) == brute_conditional_moment(TEXTBOOK[name], lam, 2)


def test_variances():
    assert variance_poly(builtin("exc")) == (n - m1 - 2 * m2) / 12
    maj = (
        -m1**3 / 36 + n**3 / 36 - m1**2 / 24 + m2**2 / 2 + n**2 / 24 + Fraction(5, 72) * m1
        - Fraction(3, 4) * m2 - Fraction(2, 3) * m3 - m4 / 2 - Fraction(5, 72) * n
    )
    assert variance_poly(builtin("maj")) == maj
    constant = RegularStatistic.of(triple((), (), (), 3))
    assert variance_poly(constant) == 0


def test_expectations():
    assert expectation_poly(builtin("exc")) == (n - 1) / 2
    assert expectation_poly(builtin("maj")) == n * (n - 1) / 4
    assert expectation_poly(builtin("peak")) == (n - 2) / 3
    assert expectation_poly(builtin("inv")) == expectation_poly(builtin("maj"))


def test_leading_limits():
    exc = leading_limit(builtin("exc"))
    assert exc.expectation == (1 - alpha) / 2
    assert exc.variance_g == (1 - alpha) / 12
    assert exc.variance_h == Poly.const(Fraction(-1, 6))
    maj = leading_limit(builtin("maj"))
    assert maj.expectation == (1 - alpha**2) / 4
    assert maj.variance_g == (1 - alpha**3) / 36
    assert maj.variance_h.is_zero()


def test_class_polynomial_arithmetic_and_text():
    r = ClassPolynomial(n * (n - 1), (0, 1))
    assert r.reduced() == ClassPolynomial(1)
    assert r.reduced().roots == ()
    assert str(ClassPolynomial((n - m1) / 3, (0, 1))) == "(n - m1)/(3*(n)_2)"
    total = ClassPolynomial(1, (0,)) + ClassPolynomial(1, (1,))
    assert total == ClassPolynomial(2 * n - 1, (0, 1))
    with pytest.raises(DomainError):
        ClassPolynomial(1, (0,)).at(())


# patterns ----------------------------------------------------------------------------------

def test_bivincular_expansions():
    assert bivincular((2, 1)) == builtin("inv")
    assert bivincular((2, 1), A={1}) == builtin("des")
    with pytest.raises(DomainError):
        bivincular((1, 1))


@pytest.mark.parametrize("v", [(1, 2), (2, 1), (1, 3, 2), (2, 3, 1)])
def test_bivincular_mean_over_the_group(v):
    stat = bivincular(v)
    k = len(v)
    for size in range(k, 7):
        total = sum(stat.evaluate(w) for w in perms(size))
        assert Fraction(total, factorial(size)) == Fraction(comb(size, k), factorial(k))


def test_bivincular_with_value_adjacency():
    # occurrences of 21 whose values are consecutive: w(i) = w(j) + 1 for i < j
    stat = bivincular((2, 1), B={1})
    for w in perms(5):
        count = sum(1 for i in range(5) for j in range(i + 1, 5) if w[i] == w[j] + 1)
        assert stat.evaluate(w) == count


def test_matching_statistics():
    stat = matching_stat([(1, 2)], 2)
    r = reynolds_poly(stat)
    for k in range(2, 5):
        assert r.at((2,) * k) == k == brute_matching_moment([(1, 2)], 2, (), k)
    assert matching_moment([(1, 2)], 2) == ClassPolynomial(n)
    with pytest.raises(DomainError):
        matching_stat([], 1)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@pytest.mark.parametrize(
    "A, k, C, d",
    [
        ([(1, 2)], 2, (1,), 1),
        ([(1, 2)], 2, (1,), 2),
        ([(1, 2)], 2, (), 2),
        ([(1, 3)], 3, (1,), 1),
        ([(1, 3)], 3, (1,), 2),
        ([(2, 3)], 3, (1,), 1),
        ([(1, 4)], 4, (1, 2), 1),
    ],
)
def test_matching_moments_against_enumeration(A, k, C, d):
    closed = matching_moment(A, k, C, d=d)
    for size in range(2, 5):
        assert closed.evaluate({"n": size}) == brute_matching_moment(A, k, C, size, d)


@pytest.mark.xfail(strict=True, reason="the regular expansion of peak needs 40 translates, not 76")
def test_peak_expansion_has_76_terms():
    assert len(builtin("peak")) == 76


def test_large_moments_warn(monkeypatch):
    import charstat.regstat as regstat
    monkeypatch.setattr(regstat, "SLOW_LOCALITY", 0)
    with pytest.warns(RuntimeWarning):
        moment_poly(builtin("exc"), 1)


def test_peak_second_moment_against_brute_force():
    r = moment_poly(builtin("peak"), 2)
    for k in range(4, 7):
        for lam in partitions_of(k):
            assert r.at(lam) == brute_conditional_moment(TEXTBOOK["peak"], lam, 2)
