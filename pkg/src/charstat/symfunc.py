"""Homogeneous symmetric functions with exact rational coefficients.

Every basis converts through the power sums.  Schur conversions read the
character table built by ribbon additions; monomial, homogeneous and
elementary conversions use cached transition matrices inverted exactly.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError
from .partitions import format_partition, partitions_of, z_value
from .ribbons import character_table, multiply_by_power_sum


class Basis(Enum):
    POWER = "power"
    SCHUR = "schur"
    MONOMIAL = "monomial"
    HOMOGENEOUS = "homogeneous"
    ELEMENTARY = "elementary"
    PATH = "path"

    @property
    def symbol(self):
        return _SYMBOLS[self]

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        for b in cls:
            if text in (b.value, b.symbol.lower()):
                return b
        raise DomainError(f"unknown basis {text!r}")


_SYMBOLS = {
    Basis.POWER: "p",
    Basis.SCHUR: "s",
    Basis.MONOMIAL: "m",
    Basis.HOMOGENEOUS: "h",
    Basis.ELEMENTARY: "e",
    Basis.PATH: "vp",
}


class SymFunc:
    """A degree-n symmetric function as a sparse map partition -> Fraction."""

    __slots__ = ("basis", "degree", "_terms")

    def __init__(self, basis, degree, terms=None):
        self.basis = basis
        self.degree = degree
        clean = {}
        for lam, c in (terms or {}).items():
            lam = tuple(lam)
            if sum(lam) != degree:
                raise DomainError(f"partition {lam} does not have size {degree}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
                if not clean[lam]:
                    del clean[lam]
        self._terms = clean

    @classmethod
    def single(cls, basis, lam, coeff=1):
        lam = tuple(lam)
        return cls(basis, sum(lam), {lam: coeff})

    @classmethod
    def zero(cls, basis, degree):
        return cls(basis, degree)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, lam):
        return self._terms.get(tuple(lam), Fraction(0))

    def is_zero(self):
        return not self._terms

    def support(self):
        return sorted(self._terms, reverse=True)

    def to(self, basis):
        return convert(self, basis)

    def __add__(self, other):
        other = _compatible(self, other)
        terms = dict(self._terms)
        for lam, c in other._terms.items():
            terms[lam] = terms.get(lam, 0) + c
        return SymFunc(self.basis, self.degree, terms)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-_compatible(self, other))

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        c = Fraction(other)
        return SymFunc(self.basis, self.degree, {lam: c * v for lam, v in self._terms.items()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        if other.basis != self.basis:
            other = convert(other, self.basis)
        return self._terms == other._terms

    __hash__ = None

    def __str__(self):
        return format_symfunc(self)

    def __repr__(self):
        return f"SymFunc({self.basis.value}, {self.degree}, {self})"

    def to_json(self):
        return {
            "basis": self.basis.value,
            "degree": self.degree,
            "terms": [
                {"partition": list(lam), "num": str(c.numerator), "den": str(c.denominator)}
                for lam, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        terms = {tuple(t["partition"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]}
        return cls(Basis(data["basis"]), data["degree"], terms)


def _compatible(f, g):
    if not isinstance(g, SymFunc):
        raise TypeError("expected a SymFunc")
    if f.degree != g.degree:
        if g.is_zero():
            return SymFunc.zero(f.basis, f.degree)
        raise DomainError(f"cannot add degree {f.degree} and degree {g.degree}")
    return g if g.basis == f.basis else convert(g, f.basis)


def format_symfunc(f):
    """Text form such as ``6*s(6) - 4*s(5,1) + 2*s(4,1,1)``."""
    if f.is_zero():
        return "0"
    sym = f.basis.symbol
    chunks = []
    for i, (lam, c) in enumerate(f.items()):
        mag = abs(c)
        body = f"{sym}({format_partition(lam)})"
        if mag != 1:
            body = f"{mag}*{body}"
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" {'+' if c > 0 else '-'} {body}")
    return "".join(chunks)


# transition rows to and from the power sums --------------------------------------

@lru_cache(maxsize=None)
def _schur_to_p(n):
    table = character_table(n)
    return {
        lam: {mu: Fraction(table[mu][lam], z_value(mu)) for mu in partitions_of(n) if table[mu][lam]}
        for lam in partitions_of(n)
    }


@lru_cache(maxsize=None)
def _p_to_schur(n):
    table = character_table(n)
    return {mu: {lam: Fraction(v) for lam, v in table[mu].items() if v} for mu in partitions_of(n)}


def _row_sum_assignments(mu, lam):
    """Ways to send each part of mu to a row of lam so that row sums equal lam."""
    @lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(mu):
            return 1 if not any(remaining) else 0
        total = 0
        for r, room in enumerate(remaining):
            if mu[i] <= room:
                nxt = remaining[:r] + (room - mu[i],) + remaining[r + 1:]
                total += count(i + 1, nxt)
        return total

    return count(0, tuple(lam))


@lru_cache(maxsize=None)
def _p_to_monomial(n):
    parts = partitions_of(n)
    return {
        mu: {lam: Fraction(c) for lam in parts if (c := _row_sum_assignments(mu, lam))}
        for mu in parts
    }


def _invert(rows, n):
    """Invert a transition {key: {col: coeff}} on partitions of n exactly."""
    keys = list(partitions_of(n))
    index = {k: i for i, k in enumerate(keys)}
    size = len(keys)
    mat = [[Fraction(0)] * size + [Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for k, row in rows.items():
        for col, c in row.items():
            mat[index[k]][index[col]] = Fraction(c)
    for col in range(size):
        pivot = next(r for r in range(col, size) if mat[r][col])
        mat[col], mat[pivot] = mat[pivot], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [v * inv for v in mat[col]]
        for r in range(size):
            if r != col and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    # rows[k] expresses basis-k element in cols; inverse rows express cols in keys
    return {
        keys[i]: {keys[j]: mat[i][size + j] for j in range(size) if mat[i][size + j]}
        for i in range(size)
    }


@lru_cache(maxsize=None)
def _monomial_to_p(n):
    return _invert(_p_to_monomial(n), n)


def _single_to_p(r, signed):
    out = {}
    for rho in partitions_of(r):
        c = Fraction(1, z_value(rho))
        if signed and (r - len(rho)) % 2:
            c = -c
        out[rho] = c
    return out


def _product_rows(lam, signed):
    acc = {(): Fraction(1)}
    for r in lam:
        single = _single_to_p(r, signed)
        nxt = {}
        for a, ca in acc.items():
            for b, cb in single.items():
                key = tuple(sorted(a + b, reverse=True))
                nxt[key] = nxt.get(key, 0) + ca * cb
        acc = nxt
    return {k: v for k, v in acc.items() if v}


@lru_cache(maxsize=None)
def _homogeneous_to_p(n):
    return {lam: _product_rows(lam, False) for lam in partitions_of(n)}


@lru_cache(maxsize=None)
def _elementary_to_p(n):
    return {lam: _product_rows(lam, True) for lam in partitions_of(n)}


@lru_cache(maxsize=None)
def _p_to_homogeneous(n):
    return _invert(_homogeneous_to_p(n), n)


@lru_cache(maxsize=None)
def _p_to_elementary(n):
    return _invert(_elementary_to_p(n), n)


def _path_to_p_row(lam):
    from .pathpower import path_to_p_terms
    return path_to_p_terms(lam)


def _p_to_path_row(mu):
    from .pathpower import p_to_path_terms
    return p_to_path_terms(mu)


_TO_P = {
    Basis.SCHUR: _schur_to_p,
    Basis.MONOMIAL: _monomial_to_p,
    Basis.HOMOGENEOUS: _homogeneous_to_p,
    Basis.ELEMENTARY: _elementary_to_p,
}

_FROM_P = {
    Basis.SCHUR: _p_to_schur,
    Basis.MONOMIAL: _p_to_monomial,
    Basis.HOMOGENEOUS: _p_to_homogeneous,
    Basis.ELEMENTARY: _p_to_elementary,
}


def _apply(terms, row_of, basis, degree):
    out = {}
    for lam, c in terms.items():
        for mu, v in row_of(lam).items():
            out[mu] = out.get(mu, 0) + c * v
    return SymFunc(basis, degree, out)


def convert(f, target):
    """Exact change of basis."""
    if f.basis == target:
        return f
    n = f.degree
    if f.basis == Basis.POWER:
        p = f
    elif f.basis == Basis.PATH:
        p = _apply(f._terms, _path_to_p_row, Basis.POWER, n)
    else:
        p = _apply(f._terms, _TO_P[f.basis](n).__getitem__, Basis.POWER, n)
    if target == Basis.POWER:
        return p
    if target == Basis.PATH:
        return _apply(p._terms, _p_to_path_row, Basis.PATH, n)
    return _apply(p._terms, _FROM_P[target](n).__getitem__, target, n)


def p(*parts):
    return SymFunc.single(Basis.POWER, sorted(parts, reverse=True))


def s(*parts):
    return SymFunc.single(Basis.SCHUR, sorted(parts, reverse=True))


def m(*parts):
    return SymFunc.single(Basis.MONOMIAL, sorted(parts, reverse=True))


def h(*parts):
    return SymFunc.single(Basis.HOMOGENEOUS, sorted(parts, reverse=True))


def e(*parts):
    return SymFunc.single(Basis.ELEMENTARY, sorted(parts, reverse=True))


def one(basis=Basis.SCHUR):
    return SymFunc.single(basis, ())


# products and adjoints ------------------------------------------------------------

def multiply(f, g):
    """Product in the basis of f.

    When f is in the Schur basis and g is a single power-sum monomial the
    product is formed by ribbon additions; otherwise via the power sums.
    """
    degree = f.degree + g.degree
    if f.basis == Basis.SCHUR:
        gp = convert(g, Basis.POWER)
        if len(gp._terms) == 1:
            (mu, c), = gp._terms.items()
            terms = dict(f._terms)
            for part in mu:
                terms = multiply_by_power_sum(terms, part)
            return SymFunc(Basis.SCHUR, degree, terms) * c
    fp = convert(f, Basis.POWER)
    gp = convert(g, Basis.POWER)
    out = {}
    for a, ca in fp._terms.items():
        for b, cb in gp._terms.items():
            key = tuple(sorted(a + b, reverse=True))
            out[key] = out.get(key, 0) + ca * cb
    return convert(SymFunc(Basis.POWER, degree, out), f.basis)


def hall_inner(f, g):
    """Hall inner product: <p_lam, p_mu> = z_lam delta."""
    if f.degree != g.degree:
        raise DomainError(f"inner product needs equal degrees, got {f.degree} and {g.degree}")
    if f.basis == g.basis == Basis.SCHUR:
        return sum((c * g.coefficient(lam) for lam, c in f._terms.items()), Fraction(0))
    fp = convert(f, Basis.POWER)
    gp = convert(g, Basis.POWER)
    return sum((c * gp.coefficient(lam) * z_value(lam) for lam, c in fp._terms.items()), Fraction(0))


def _p_skew(rho, lam):
    """p_rho^perp p_lam as (partition, coefficient) or None."""
    rest = list(lam)
    coeff = 1
    for part in rho:
        count = rest.count(part)
        if not count:
            return None
        coeff *= part * count
        rest.remove(part)
    return tuple(rest), coeff


def skew_adjoint(f, g):
    """f^perp g, using p_j^perp = j d/dp_j; result in g's basis.

    Returns the zero function of degree 0 when deg f > deg g.
    """
    if f.degree > g.degree:
        return SymFunc.zero(g.basis, 0)
    degree = g.degree - f.degree
    fp = convert(f, Basis.POWER)
    gp = convert(g, Basis.POWER)
    out = {}
    for rho, a in fp._terms.items():
        for lam, b in gp._terms.items():
            hit = _p_skew(rho, lam)
            if hit is not None:
                key, c = hit
                out[key] = out.get(key, 0) + a * b * c
    return convert(SymFunc(Basis.POWER, degree, out), g.basis)


def factorial_schur(n):
    """n! s_(n), the image of the full-group sum."""
    return s(n) * factorial(n) if n else one()
