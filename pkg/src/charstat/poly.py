"""Sparse multivariate polynomials with exact rational coefficients.

Variables are plain strings.  The engine uses ``n`` for the ambient size,
``m1, m2, ...`` for cycle multiplicities and ``x1, x2, ...`` for the
positional weights of constrained translates.  A monomial is a tuple of
``(variable, exponent)`` pairs sorted by :func:`var_key`.
"""

from fractions import Fraction
from functools import reduce
from math import factorial, lcm
import re

_PREFIX_RANK = {"n": 0, "m": 1, "x": 2}
_VAR_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


def var_key(name):
    match = _VAR_RE.match(name)
    if not match:
        return (9, name, 0)
    prefix, digits = match.groups()
    return (_PREFIX_RANK.get(prefix, 5), prefix, int(digits) if digits else 0)


def class_weight(name):
    """Grading used for class polynomials: deg n = 1, deg m_i = i."""
    if name.startswith("m") and name[1:].isdigit():
        return int(name[1:])
    return 1


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda item: var_key(item[0])))


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


class Poly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _as_fraction(c)
                if c:
                    mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda item: var_key(item[0])))
                    clean[mono] = clean.get(mono, 0) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name, power=1):
        return cls({((name, power),): 1})

    @classmethod
    def coerce(cls, other):
        if isinstance(other, Poly):
            return other
        return cls.const(other)

    # inspection ---------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not mono for mono in self._terms)

    def constant_term(self):
        return self._terms.get((), Fraction(0))

    def variables(self):
        names = {v for mono in self._terms for v, _ in mono}
        return sorted(names, key=var_key)

    def degree(self, weight=None):
        """Total degree; ``weight`` maps a variable name to its degree."""
        if not self._terms:
            return -1
        weight = weight or (lambda _name: 1)
        return max(sum(weight(v) * e for v, e in mono) for mono in self._terms)

    def degree_in(self, name):
        if not self._terms:
            return -1
        return max(dict(mono).get(name, 0) for mono in self._terms)

    def coefficients_in(self, name):
        """Collect by powers of ``name``; returns {exponent: Poly}."""
        out = {}
        for mono, c in self._terms.items():
            rest = tuple((v, e) for v, e in mono if v != name)
            k = dict(mono).get(name, 0)
            out.setdefault(k, {})
            out[k][rest] = out[k].get(rest, 0) + c
        return {k: Poly(t) for k, t in out.items()}

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = Poly.coerce(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            return Poly({m: c * v for m, v in self._terms.items()})
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return Poly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise TypeError("division only by nonzero constants")
            other = other.constant_term()
        return self * (1 / _as_fraction(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("nonnegative integer powers only")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation ---------------------------------------------------------
    def evaluate(self, values):
        powers = {}
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = 1
            for v, e in mono:
                key = (v, e)
                if key not in powers:
                    try:
                        base = values[v]
                    except KeyError:
                        raise KeyError(f"no value supplied for variable {v!r}") from None
                    powers[key] = (base if isinstance(base, int) else Fraction(base)) ** e
                term *= powers[key]
            total += c * term
        return total

    def subs(self, mapping):
        """Substitute polynomials or numbers for some variables."""
        mapping = {k: Poly.coerce(v) for k, v in mapping.items()}
        result = Poly()
        cache = {}
        for mono, c in self._terms.items():
            term = Poly.const(c)
            keep = []
            for v, e in mono:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            result = result + term * Poly({tuple(keep): 1})
        return result

    def rename(self, mapping):
        terms = {}
        for mono, c in self._terms.items():
            new = _merge(tuple((mapping.get(v, v), e) for v, e in mono))
            terms[new] = terms.get(new, 0) + c
        return Poly(terms)

    # display ------------------------------------------------------------
    def sorted_terms(self):
        def key(item):
            mono, _ = item
            wdeg = sum(class_weight(v) * e for v, e in mono)
            vec = tuple((var_key(v), -e) for v, e in mono)
            return (-wdeg, vec)

        return sorted(self._terms.items(), key=key)

    def __str__(self):
        if not self._terms:
            return "0"
        den = reduce(lcm, (c.denominator for c in self._terms.values()), 1)
        if den > 1:
            return f"({_format_terms((self * den).sorted_terms())})/{den}"
        return _format_terms(self.sorted_terms())

    def __repr__(self):
        return f"Poly({self})"

    # serialization ------------------------------------------------------
    def to_json(self, variables=None):
        variables = list(variables) if variables is not None else self.variables()
        index = {v: i for i, v in enumerate(variables)}
        monos = []
        for mono, c in self.sorted_terms():
            exps = [0] * len(variables)
            for v, e in mono:
                exps[index[v]] = e
            monos.append({"exps": exps, "num": str(c.numerator), "den": str(c.denominator)})
        return {"vars": variables, "monomials": monos}

    @classmethod
    def from_json(cls, data):
        variables = data["vars"]
        terms = {}
        for entry in data["monomials"]:
            mono = tuple((v, e) for v, e in zip(variables, entry["exps"]) if e)
            terms[mono] = Fraction(int(entry["num"]), int(entry["den"]))
        return cls(terms)


def _merge(mono):
    """Fold a possibly repeated variable list into canonical form."""
    out = ()
    for v, e in mono:
        out = _mono_mul(out, ((v, e),))
    return out


def _format_mono(mono):
    parts = []
    for v, e in mono:
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _format_terms(items):
    chunks = []
    for i, (mono, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = _format_mono(mono)
        else:
            body = f"{mag}*{_format_mono(mono)}"
        if i == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


# constructors used throughout ------------------------------------------------

def falling(x, j):
    """Falling factorial (x)_j = x(x-1)...(x-j+1) of a polynomial or variable name."""
    x = Poly.var(x) if isinstance(x, str) else Poly.coerce(x)
    result = Poly.const(1)
    for i in range(j):
        result = result * (x - i)
    return result


def binomial(x, j):
    """Binomial coefficient C(x, j) as a polynomial in x."""
    return falling(x, j) / factorial(j)


def falling_value(n, j):
    out = 1
    for i in range(j):
        out *= n - i
    return out


def interpolate(points, name="n"):
    """Exact interpolating polynomial in ``name`` through (x, y) pairs (Newton form)."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    size = len(xs)
    for level in range(1, size):
        for i in range(size - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    var = Poly.var(name)
    result = Poly()
    basis = Poly.const(1)
    for i in range(size):
        result = result + basis * coef[i]
        basis = basis * (var - xs[i])
    return result


def divide_linear(poly, name, root):
    """Quotient of ``poly`` by (name - root) if exact, else None."""
    by_power = poly.coefficients_in(name)
    if not by_power:
        return Poly()
    top = max(by_power)
    var = Poly.var(name)
    quotient = Poly()
    carry = Poly()
    # synthetic division on coefficients in the other variables
    for k in range(top, 0, -1):
        carry = by_power.get(k, Poly()) + carry * root
        quotient = quotient + carry * var ** (k - 1)
    remainder = by_power.get(0, Poly()) + carry * root
    if not remainder.is_zero():
        return None
    return quotient
