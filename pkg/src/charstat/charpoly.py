"""Irreducible characters on cycle types and character polynomials."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import DomainError
from .partitions import mult_vector, pad, partition, partitions_of
from .poly import Poly, binomial, class_weight
from .ribbons import chi_by_rim_hooks


def char_value(lam, mu):
    """chi^lam evaluated on the class of cycle type mu."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise DomainError(f"character needs |lam| == |mu|, got {sum(lam)} and {sum(mu)}")
    # longest hooks first keeps the recursion narrow on padded shapes
    return chi_by_rim_hooks(lam, mu)


def mult_var(i):
    return f"m{i}"


@dataclass(frozen=True)
class CharacterPolynomial:
    lam: tuple
    poly: Poly

    @property
    def k(self):
        return sum(self.lam)

    def __call__(self, mu):
        return eval_class_poly(self.poly, mu)

    def __str__(self):
        return str(self.poly)


def _exponent_vectors(k):
    """All (a_1..a_k) with sum i*a_i <= k."""
    ranges = [range(k // i + 1) for i in range(1, k + 1)]
    return [a for a in product(*ranges) if sum((i + 1) * x for i, x in enumerate(a)) <= k]


def _binomial_basis(a):
    out = Poly.const(1)
    for i, x in enumerate(a, start=1):
        if x:
            out = out * binomial(mult_var(i), x)
    return out


def _basis_value(a, b):
    value = 1
    for x, y in zip(a, b):
        if x > y:
            return 0
        value *= _int_binomial(y, x)
    return value


def _int_binomial(top, j):
    if j > top:
        return 0
    out = 1
    for i in range(j):
        out = out * (top - i) // (i + 1)
    return out


def _point(b, total):
    """Cycle type with multiplicities b among parts <= k, padded by one long cycle."""
    parts = [i for i, x in enumerate(b, start=1) for _ in range(x)]
    rest = total - sum(parts)
    return partition(parts + ([rest] if rest else []))


def _solve_unitriangular(vectors, values):
    """Solve sum_a c_a C(b, a) = value(b) over b in ``vectors`` (ordered by size)."""
    order = sorted(vectors, key=sum)
    coeffs = {}
    for b in order:
        acc = Fraction(values[b])
        for a, c in coeffs.items():
            acc -= c * _basis_value(a, b)
        diag = _basis_value(b, b)
        if diag == 0:
            raise ArithmeticError("rank deficiency in character polynomial system")
        coeffs[b] = acc / diag
    return coeffs


def _verify(coeffs, lam, n):
    """Check the binomial-basis coefficients against every class of S_n."""
    k = sum(lam)
    target = pad(lam, n)
    terms = [(a, c) for a, c in coeffs.items() if c]
    predicted = {}
    for mu in partitions_of(n):
        vector = mult_vector(mu, k)
        if vector not in predicted:
            predicted[vector] = sum(c * _basis_value(a, vector) for a, c in terms)
        if predicted[vector] != char_value(target, mu):
            return False
    return True


@lru_cache(maxsize=None)
def _character_polynomial(lam):
    k = sum(lam)
    if k == 0:
        return Poly.const(1)
    vectors = _exponent_vectors(k)
    # the padding cycle must exceed k so it never counts toward m_1..m_k
    for big in range(2 * k + 1, 2 * k + 5):
        values = {b: char_value(pad(lam, big), _point(b, big)) for b in vectors}
        coeffs = _solve_unitriangular(vectors, values)
        if _verify(coeffs, lam, big + 1):
            poly = Poly()
            for a, c in coeffs.items():
                if c:
                    poly = poly + _binomial_basis(a) * c
            return poly
    raise ArithmeticError(f"character polynomial of {lam} failed verification")


def character_polynomial(lam):
    """q_lam in m1..mk with chi^{lam[n]}(w) = q_lam(m(w)) whenever lam[n] is a partition."""
    lam = partition(lam)
    return CharacterPolynomial(lam, _character_polynomial(lam))


def eval_class_poly(q, lam):
    """Evaluate a polynomial in n, m1, m2, ... at the cycle type lam."""
    lam = partition(lam)
    n = sum(lam)
    names = q.variables()
    values = {"n": n}
    for name in names:
        if name.startswith("m") and name[1:].isdigit():
            i = int(name[1:])
            values[name] = sum(1 for part in lam if part == i)
        elif name != "n":
            raise DomainError(f"class polynomial has unexpected variable {name!r}")
    return q.evaluate(values)


def weighted_degree(poly):
    return poly.degree(class_weight)
