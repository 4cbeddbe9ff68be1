"""Regular permutation statistics and their class-function closed forms.

A packed triple ((U, V), C, f) defines the constrained translate

    T(w) = sum over L = {l_1 < ... < l_m} with l_{c+1} = l_c + 1 for c in C
           of f(l_1, ..., l_m) * [w(l_{U_t}) = l_{V_t} for all t],

where U u V = {1, ..., m}.  A regular statistic is a rational linear
combination of such translates.  Its conditional expectation on a conjugacy
class is a polynomial in n, m_1, m_2, ... divided by a falling factorial in n.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial

from .atomic import (
    PartialPermutation,
    atomic_s_from_type,
    packed_type,
    stable_atomic_by_type,
    stable_atomic_expansion,
    type_at,
)
from .charpoly import character_polynomial
from .errors import DomainError
from .partitions import pad
from .poly import Poly, class_weight, divide_linear, falling, interpolate
from .symfunc import Basis, SymFunc, multiply, p, s


def x(i):
    return Poly.var(f"x{i}")


def _weight_indices(f):
    out = set()
    for name in f.variables():
        if not (name.startswith("x") and name[1:].isdigit()):
            raise DomainError(f"weights are polynomials in x1, x2, ...; got variable {name!r}")
        out.add(int(name[1:]))
    return out


def _compile_weight(f):
    """f as a list of (coefficient, ((index, exponent), ...)) for fast evaluation."""
    return [
        (c, tuple((int(v[1:]), e) for v, e in mono))
        for mono, c in f.items()
    ]


def _eval_compiled(compiled, positions):
    total = 0
    for c, mono in compiled:
        term = c
        for idx, e in mono:
            term *= positions[idx] ** e
        total += term
    return total


# packed triples ----------------------------------------------------------------------

@dataclass(frozen=True)
class PackedTriple:
    U: tuple
    V: tuple
    C: tuple = ()
    f: Poly = Poly.const(1)

    def __post_init__(self):
        U, V = tuple(self.U), tuple(self.V)
        if len(U) != len(V):
            raise DomainError("U and V must have equal length")
        cols = sorted(zip(U, V))
        U = tuple(u for u, _ in cols)
        V = tuple(v for _, v in cols)
        if len(set(U)) != len(U) or len(set(V)) != len(V):
            raise DomainError("U and V entries must be distinct")
        m = len(set(U) | set(V))
        if set(U) | set(V) != set(range(1, m + 1)):
            raise DomainError(f"triple is not packed: U u V = {sorted(set(U) | set(V))}")
        C = tuple(sorted(set(self.C)))
        if any(c < 1 or c >= m for c in C):
            raise DomainError(f"constraint set {C} not inside [1, {m - 1}]")
        f = Poly.coerce(self.f)
        if any(i < 1 or i > m for i in _weight_indices(f)):
            raise DomainError(f"weight uses variables outside x1..x{m}")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "f", f)

    @property
    def m(self):
        return len(set(self.U) | set(self.V))

    @property
    def size(self):
        return len(self.U)

    @property
    def shift(self):
        return len(self.C)

    @property
    def power(self):
        return self.size + max(self.f.degree(), 0) - self.shift

    def packed_pp(self):
        return PartialPermutation(self.U, self.V, self.m)

    def sort_key(self):
        return (self.m, self.U, self.V, self.C, str(self.f))

    def with_weight(self, f):
        return PackedTriple(self.U, self.V, self.C, f)

    def evaluate(self, w):
        """T(w) for w in one-line notation (a sequence of 1..n)."""
        return _evaluate_triple(self, tuple(w))

    def __str__(self):
        def seq(t):
            return ",".join(map(str, t))
        body = f"T[{seq(self.U)} -> {seq(self.V)}"
        if self.C:
            body += f"; C={{{seq(self.C)}}}"
        body += "]"
        if self.f != 1:
            body += f"^({self.f})"
        return body

    def to_json(self):
        m = self.m
        names = [f"x{i}" for i in range(1, m + 1)]
        weight = self.f.to_json(names)
        return {"U": list(self.U), "V": list(self.V), "C": list(self.C),
                "f": {"vars": m, "monomials": weight["monomials"]}}

    @classmethod
    def from_json(cls, data):
        m = data["f"]["vars"]
        names = [f"x{i}" for i in range(1, m + 1)]
        f = Poly.from_json({"vars": names, "monomials": data["f"]["monomials"]})
        return cls(tuple(data["U"]), tuple(data["V"]), tuple(data["C"]), f)


def triple(U, V, C=(), f=1):
    return PackedTriple(tuple(U), tuple(V), tuple(C), Poly.coerce(f))


def _evaluate_triple(t, w):
    n = len(w)
    m = t.m
    winv = [0] * (n + 1)
    for i, v in enumerate(w, start=1):
        winv[v] = i
    fwd = dict(zip(t.U, t.V))
    back = {v: u for u, v in fwd.items()}
    cset = set(t.C)
    compiled = _compile_weight(t.f)
    positions = [0] * (m + 1)
    total = 0

    def place(a):
        nonlocal total
        if a > m:
            total += _eval_compiled(compiled, positions)
            return
        lo = positions[a - 1] + 1
        hi = n - (m - a)
        forced = None
        if a - 1 in cset:
            forced = lo
        u = back.get(a)
        if u is not None and u < a:
            val = w[positions[u] - 1]
            if forced is not None and forced != val:
                return
            forced = val
        v = fwd.get(a)
        if v is not None and v < a:
            val = winv[positions[v]]
            if forced is not None and forced != val:
                return
            forced = val
        candidates = (forced,) if forced is not None else range(lo, hi + 1)
        for val in candidates:
            if val < lo or val > hi:
                continue
            if v == a and w[val - 1] != val:
                continue
            positions[a] = val
            place(a + 1)
        positions[a] = 0

    place(1)
    return total


# regular statistics -------------------------------------------------------------------

class RegularStatistic:
    """Rational combination of packed triples, stored canonically."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for t, c in items:
            c = Fraction(c)
            if t.f.is_zero() or not c:
                continue
            t, c = _normalize_weight(t, c)
            clean[t] = clean.get(t, 0) + c
            if not clean[t]:
                del clean[t]
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @classmethod
    def of(cls, *triples):
        return cls([(t, 1) for t in triples])

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    @property
    def size(self):
        return max((t.size for t in self._terms), default=0)

    @property
    def shift(self):
        return max((t.shift for t in self._terms), default=0)

    @property
    def power(self):
        return max((t.power for t in self._terms), default=0)

    def parameters(self):
        return self.size, self.shift, self.power

    def evaluate(self, w):
        return sum((c * t.evaluate(w) for t, c in self._terms.items()), Fraction(0))

    def __call__(self, w):
        return self.evaluate(w)

    def __add__(self, other):
        merged = list(self._terms.items()) + list(other._terms.items())
        return RegularStatistic(merged)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, RegularStatistic):
            return stat_product(self, other)
        c = Fraction(other)
        return RegularStatistic([(t, c * v) for t, v in self._terms.items()])

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, RegularStatistic):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        lines = []
        for t, c in self._terms.items():
            lines.append(f"{c} * {t}" if c != 1 else str(t))
        return "\n".join(lines)

    def to_json(self):
        return {"terms": [
            {"coeff": {"num": str(c.numerator), "den": str(c.denominator)}, **t.to_json()}
            for t, c in self._terms.items()
        ]}

    @classmethod
    def from_json(cls, data):
        return cls([
            (PackedTriple.from_json(entry), Fraction(int(entry["coeff"]["num"]), int(entry["coeff"]["den"])))
            for entry in data["terms"]
        ])


def _normalize_weight(t, c):
    """Move the rational content of the weight into the coefficient."""
    coeffs = [v for _, v in t.f.sorted_terms()]
    lead = coeffs[0]
    if lead == 1:
        return t, c
    return t.with_weight(t.f / lead), c * lead


# vincular sums ------------------------------------------------------------------------

def _monomial_sum(exps, m, cset, n):
    """Sum over C-constrained m-subsets of [n] of prod l_a^{e_a} (DP over positions)."""
    prev = [0] * (n + 1)
    for v in range(1, n + 1):
        prev[v] = v ** exps.get(1, 0)
    for a in range(2, m + 1):
        cur = [0] * (n + 1)
        e = exps.get(a, 0)
        running = 0
        for v in range(1, n + 1):
            if a - 1 in cset:
                cur[v] = prev[v - 1] * v**e if v >= 2 else 0
            else:
                cur[v] = running * v**e
            running += prev[v]
        prev = cur
    return sum(prev)


def vincular_sum_values(f, m, C, n):
    """Sum of f(L) over C-constrained m-subsets of [n]."""
    cset = set(C)
    if m == 0:
        return f.constant_term()
    total = Fraction(0)
    for c, mono in _compile_weight(f):
        total += c * _monomial_sum(dict(mono), m, cset, n)
    return total


@lru_cache(maxsize=None)
def _vincular_sum_poly(f, m, C):
    q = len(C)
    deg = max(f.degree(), 0)
    points = [(n, vincular_sum_values(f, m, C, n) / comb(n - q, m - q)) for n in range(m, m + deg + 2)]
    poly = interpolate(points[:-1])
    last_n, last_v = points[-1]
    if poly.evaluate({"n": last_n}) != last_v:
        raise ArithmeticError("vincular sum is not polynomial of the expected degree")
    return poly


def vincular_sum_poly(f, m, C=()):
    """f_bar(n) with sum_L f(L) = f_bar(n) * C(n - |C|, m - |C|)."""
    f = Poly.coerce(f)
    C = tuple(sorted(set(C)))
    if any(c < 1 or c >= m for c in C):
        raise DomainError(f"constraint set {C} must lie in [1, {m - 1}]")
    if any(i > m for i in _weight_indices(f)):
        raise DomainError(f"weight uses variables beyond x{m}")
    return _vincular_sum_poly(f, m, C)


# characteristic images ----------------------------------------------------------------

def translate_ch(t, n):
    """ch_n(R T) in the Schur basis."""
    if n < t.m:
        return SymFunc.zero(Basis.SCHUR, n)
    q = t.shift
    scale = Fraction(comb(n - q, t.m - q), factorial(n)) * vincular_sum_poly(t.f, t.m, t.C).evaluate({"n": n})
    return atomic_s_from_type(type_at(t.packed_pp(), n)) * scale


def stat_ch(stat, n):
    total = SymFunc.zero(Basis.SCHUR, n)
    for t, c in stat.items():
        total = total + translate_ch(t, n) * c
    return total


# products -----------------------------------------------------------------------------

def _overlaps(m, l):
    """Order-preserving alpha: [m] -> [r], beta: [l] -> [r] jointly covering [r]."""
    def walk(i, j, pos, alpha, beta):
        if i == m and j == l:
            yield pos, tuple(alpha), tuple(beta)
            return
        nxt = pos + 1
        if i < m:
            yield from walk(i + 1, j, nxt, alpha + [nxt], beta)
        if j < l:
            yield from walk(i, j + 1, nxt, alpha, beta + [nxt])
        if i < m and j < l:
            yield from walk(i + 1, j + 1, nxt, alpha + [nxt], beta + [nxt])

    yield from walk(0, 0, 0, [], [])


def _merge_constraints(C, alpha, out):
    for c in C:
        if alpha[c] != alpha[c - 1] + 1:
            return False
        out.add(alpha[c - 1])
    return True


def translate_product(t1, t2):
    """Regular expansion of the pointwise product T1 * T2."""
    out = {}
    for r, alpha, beta in _overlaps(t1.m, t2.m):
        pairs = {}
        targets = {}
        ok = True
        for (U, V), emb in (((t1.U, t1.V), alpha), ((t2.U, t2.V), beta)):
            for u, v in zip(U, V):
                a, b = emb[u - 1], emb[v - 1]
                if pairs.get(a, b) != b or targets.get(b, a) != a:
                    ok = False
                    break
                pairs[a] = b
                targets[b] = a
            if not ok:
                break
        if not ok:
            continue
        cset = set()
        if not (_merge_constraints(t1.C, alpha, cset) and _merge_constraints(t2.C, beta, cset)):
            continue
        f = t1.f.rename({f"x{i}": f"x{alpha[i - 1]}" for i in range(1, t1.m + 1)})
        g = t2.f.rename({f"x{i}": f"x{beta[i - 1]}" for i in range(1, t2.m + 1)})
        key = PackedTriple(tuple(pairs), tuple(pairs.values()), tuple(cset), f * g)
        out[key] = out.get(key, 0) + 1
    return RegularStatistic(out)


def stat_product(a, b):
    out = []
    for t1, c1 in a.items():
        for t2, c2 in b.items():
            for t, c in translate_product(t1, t2).items():
                out.append((t, c * c1 * c2))
    return RegularStatistic(out)


@lru_cache(maxsize=None)
def stat_power(stat, d):
    if d < 1:
        raise DomainError(f"power must be >= 1, got {d}")
    if d == 1:
        return stat
    return stat_product(stat_power(stat, d - 1), stat)


# class polynomials --------------------------------------------------------------------

class ClassPolynomial:
    """numerator(n, m1, m2, ...) / prod over roots r of (n - r)."""

    __slots__ = ("numerator", "roots")

    def __init__(self, numerator, roots=()):
        self.numerator = Poly.coerce(numerator)
        self.roots = tuple(sorted(roots))

    @classmethod
    def over_falling(cls, numerator, q):
        return cls(numerator, tuple(range(q)))

    @property
    def denom_order(self):
        """q when the denominator is (n)_q, else None."""
        return len(self.roots) if self.roots == tuple(range(len(self.roots))) else None

    def denominator(self):
        out = Poly.const(1)
        for r in self.roots:
            out = out * (Poly.var("n") - r)
        return out

    def _lift(self, roots):
        extra = list(roots)
        for r in self.roots:
            extra.remove(r)
        num = self.numerator
        for r in extra:
            num = num * (Poly.var("n") - r)
        return num

    def _common(self, other):
        roots = list(self.roots)
        pool = list(self.roots)
        for r in other.roots:
            if r in pool:
                pool.remove(r)
            else:
                roots.append(r)
        return tuple(sorted(roots))

    def __add__(self, other):
        other = _as_class_poly(other)
        roots = self._common(other)
        return ClassPolynomial(self._lift(roots) + other._lift(roots), roots)

    __radd__ = __add__

    def __neg__(self):
        return ClassPolynomial(-self.numerator, self.roots)

    def __sub__(self, other):
        return self + (-_as_class_poly(other))

    def __rsub__(self, other):
        return _as_class_poly(other) - self

    def __mul__(self, other):
        other = _as_class_poly(other)
        return ClassPolynomial(self.numerator * other.numerator, self.roots + other.roots)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = ClassPolynomial(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = ClassPolynomial(other)
        if not isinstance(other, ClassPolynomial):
            return NotImplemented
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    __hash__ = None

    def reduced(self):
        num = self.numerator
        kept = []
        for r in self.roots:
            quotient = divide_linear(num, "n", r)
            if quotient is None:
                kept.append(r)
            else:
                num = quotient
        return ClassPolynomial(num, kept)

    def is_polynomial(self):
        return not self.reduced().roots

    def evaluate(self, values):
        n = values["n"]
        den = 1
        for r in self.roots:
            den *= n - r
        if den == 0:
            raise DomainError(f"class polynomial denominator vanishes at n={n}")
        return self.numerator.evaluate(values) / den

    def at(self, lam):
        """Value on the conjugacy class of cycle type lam."""
        from .charpoly import eval_class_poly
        lam = tuple(lam)
        n = sum(lam)
        den = 1
        for r in self.roots:
            den *= n - r
        if den == 0:
            raise DomainError(f"class polynomial denominator vanishes at n={n}")
        return eval_class_poly(self.numerator, lam) / den

    def weighted_degree(self):
        return self.numerator.degree(class_weight)

    def __str__(self):
        if not self.roots:
            return str(self.numerator)
        num = str(self.numerator)
        den_int = 1
        if num.startswith("(") and ")/" in num and num.rsplit(")/", 1)[1].isdigit():
            num, den_str = num[1:].rsplit(")/", 1)
            den_int = int(den_str)
        q = self.denom_order
        den = f"(n)_{q}" if q is not None else "*".join(
            "n" if r == 0 else f"(n - {r})" if r > 0 else f"(n + {-r})" for r in self.roots
        )
        if den_int != 1:
            den = f"{den_int}*{den}"
        return f"({num})/({den})"

    def __repr__(self):
        return f"ClassPolynomial({self})"

    def to_json(self):
        return {
            "numerator": self.numerator.to_json(),
            "denominator_roots": list(self.roots),
            "denom_order": self.denom_order,
            "text": str(self),
        }


def _as_class_poly(x):
    return x if isinstance(x, ClassPolynomial) else ClassPolynomial(Poly.coerce(x))


@lru_cache(maxsize=None)
def _type_numerator(cycles, paths):
    """sum over lam_bar of g_lam_bar(n) * q_lam_bar for one packed graph type."""
    total = Poly()
    for lam_bar, g in stable_atomic_by_type(cycles, paths).entries.items():
        total = total + g * character_polynomial(lam_bar).poly
    return total


@lru_cache(maxsize=None)
def _triple_scale(t):
    return vincular_sum_poly(t.f, t.m, t.C) / factorial(t.m - t.shift)


def reynolds_poly(stat):
    """R stat as numerator / (n)_q with q the largest stored shift."""
    q = stat.shift
    n = Poly.var("n")
    # triples sharing a graph type share the class-function part; sum their n-only factors first
    by_type = {}
    for t, c in stat.items():
        key = packed_type(t.packed_pp())
        lift = falling(n - t.shift, q - t.shift)
        by_type[key] = by_type.get(key, Poly()) + _triple_scale(t) * lift * c
    num = Poly()
    for key, scale in by_type.items():
        if not scale.is_zero():
            num = num + scale * _type_numerator(*key)
    return ClassPolynomial.over_falling(num, q)


SLOW_LOCALITY = 6


def moment_poly(stat, d):
    if d < 1:
        raise DomainError(f"moment degree must be >= 1, got {d}")
    if d * stat.size > SLOW_LOCALITY:
        warnings.warn(
            f"moment of degree {d} of a {stat.size}-local statistic involves translates of size "
            f"{d * stat.size}; expect a long runtime",
            RuntimeWarning,
            stacklevel=2,
        )
    return reynolds_poly(stat_power(stat, d))


def variance_poly(stat):
    """Second moment minus squared mean, over the least common denominator, reduced."""
    r = reynolds_poly(stat)
    return (moment_poly(stat, 2) - r * r).reduced()


def expectation_poly(stat):
    """Mean over the uniform S_n, from the s_(n) coefficient route."""
    q = stat.shift
    n = Poly.var("n")
    num = Poly()
    for t, c in stat.items():
        fbar = vincular_sum_poly(t.f, t.m, t.C)
        g0 = stable_atomic_expansion(t.packed_pp()).entries.get((), Poly())
        num = num + g0 * fbar * falling(n - t.shift, q - t.shift) * (Fraction(c) / factorial(t.m - t.shift))
    return ClassPolynomial.over_falling(num, q)


# asymptotics ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LeadingTerms:
    expectation: Poly
    variance_g: Poly
    variance_h: Poly


def _limit_in_n(numerator, denominator, order):
    """lim numerator / (denominator * n^order) with coefficients kept symbolic."""
    by_n = numerator.coefficients_in("n")
    den_by_n = denominator.coefficients_in("n")
    top_den = max(den_by_n)
    lead_den = den_by_n[top_den]
    if not lead_den.is_constant():
        raise DomainError("denominator must be a polynomial in n alone")
    target = order + top_den
    if by_n and max(k for k, c in by_n.items() if not c.is_zero()) > target:
        raise ArithmeticError("scaling order too small: the limit diverges")
    return by_n.get(target, Poly()) / lead_den.constant_term()


def leading_limit(stat):
    """Top-order behaviour as n -> infinity with m1 ~ alpha n, m2 ~ beta n."""
    n = Poly.var("n")
    alpha, beta = Poly.var("alpha"), Poly.var("beta")
    p_ = stat.power
    r = reynolds_poly(stat)
    mvars = [v for v in r.numerator.variables() if v.startswith("m")]
    sub = {v: (alpha * n if v == "m1" else Poly()) for v in mvars}
    expectation = _limit_in_n(r.numerator.subs(sub), r.denominator(), p_)

    var = variance_poly(stat)
    vvars = [v for v in var.numerator.variables() if v.startswith("m")]
    sub = {}
    for v in vvars:
        i = int(v[1:])
        sub[v] = alpha * n if i == 1 else beta * n if i == 2 else Poly.var(f"gamma{i}") * n
    limit = _limit_in_n(var.numerator.subs(sub), var.denominator(), 2 * p_ - 1)
    if any(v.startswith("gamma") for v in limit.variables()):
        raise ArithmeticError("variance limit depends on long-cycle densities")
    by_beta = limit.coefficients_in("beta")
    if any(k > 1 and not c.is_zero() for k, c in by_beta.items()):
        raise ArithmeticError("variance limit is not linear in beta")
    return LeadingTerms(expectation, by_beta.get(0, Poly()), by_beta.get(1, Poly()))


# builders -------------------------------------------------------------------------------

def bivincular(v, A=(), B=(), f=1, g=1):
    """Regular expansion of the weighted bivincular pattern count N^{f,g}_{v,A,B}.

    Occurrences are position sets i_1 < ... < i_k whose values follow v;
    a in A forces i_{a+1} = i_a + 1, b in B forces the values of rank b and
    b + 1 to be consecutive.  The weight is f(i_1..i_k) g(w(i_1)..w(i_k)).
    """
    v = tuple(v)
    k = len(v)
    if sorted(v) != list(range(1, k + 1)):
        raise DomainError(f"{v} is not a permutation")
    A, B = set(A), set(B)
    if any(a < 1 or a >= k for a in A | B):
        raise DomainError(f"vincular sets must lie in [1, {k - 1}]")
    f, g = Poly.coerce(f), Poly.coerce(g)
    out = {}
    for r in range(k, 2 * k + 1):
        universe = range(1, r + 1)
        for iset in combinations(universe, k):
            for jset in combinations(universe, k):
                if len(set(iset) | set(jset)) != r:
                    continue
                J = tuple(jset[v[a] - 1] for a in range(k))
                cset = set()
                ok = True
                for a in A:
                    if iset[a] != iset[a - 1] + 1:
                        ok = False
                        break
                    cset.add(iset[a - 1])
                for b in B:
                    if not ok or jset[b] != jset[b - 1] + 1:
                        ok = False
                        break
                    cset.add(jset[b - 1])
                if not ok:
                    continue
                weight = f.rename({f"x{a}": f"x{iset[a - 1]}" for a in range(1, k + 1)}) * g.rename(
                    {f"x{a}": f"x{J[a - 1]}" for a in range(1, k + 1)}
                )
                key = PackedTriple(iset, J, tuple(cset), weight)
                out[key] = out.get(key, 0) + 1
    return RegularStatistic(out)


def _builtins():
    exc = RegularStatistic.of(triple((1,), (2,)))
    fix = RegularStatistic.of(triple((1,), (1,)))
    inv = bivincular((2, 1))
    des = bivincular((2, 1), A={1})
    maj = bivincular((2, 1), A={1}, f=x(1))
    peak = bivincular((1, 3, 2), A={1, 2}) + bivincular((2, 3, 1), A={1, 2})
    return {"exc": exc, "fix": fix, "inv": inv, "des": des, "maj": maj, "peak": peak}


BUILTIN_NAMES = ("exc", "inv", "des", "maj", "peak", "fix")


@lru_cache(maxsize=None)
def builtin(name):
    table = _builtins()
    if name not in table:
        raise DomainError(f"unknown statistic {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return table[name]


def closed_translate_ch(v, C=(), f=1, n=None):
    """ch_n(R T^f_{v,C}) for a genuine permutation v via s_{n-k} p_nu."""
    v = tuple(v)
    k = len(v)
    if sorted(v) != list(range(1, k + 1)):
        raise DomainError(f"{v} is not a permutation, so the triple is not closed")
    t = PackedTriple(tuple(range(1, k + 1)), v, tuple(C), Poly.coerce(f))
    if n is None:
        raise DomainError("ambient n is required")
    if n < k:
        return SymFunc.zero(Basis.SCHUR, n)
    from .atomic import cycle_path_type
    nu = cycle_path_type(t.packed_pp()).cycles
    q = t.shift
    scale = vincular_sum_poly(t.f, k, t.C).evaluate({"n": n}) * Fraction(
        factorial(n - k) * comb(n - q, k - q), factorial(n)
    )
    head = s(n - k) if n > k else SymFunc.single(Basis.SCHUR, ())
    return multiply(head, p(*nu)) * scale


def matching_stat(A, k, C=(), f=1):
    """Closed regular expansion of a vincular matching-pattern count.

    ``A`` is a partial matching on [k] (a collection of disjoint pairs).
    Each unmatched entry is completed either by pairing it with another
    unmatched entry or with a point outside the pattern; outside points are
    interleaved with the pattern positions in every possible way.
    """
    pairs = [tuple(sorted(pr)) for pr in A]
    used = [x for pr in pairs for x in pr]
    if len(set(used)) != len(used) or any(x < 1 or x > k for x in used):
        raise DomainError(f"{A} is not a partial matching on [{k}]")
    C = tuple(sorted(set(C)))
    if any(c < 1 or c >= k for c in C):
        raise DomainError(f"constraint set must lie in [1, {k - 1}]")
    if k not in used and (k - 1) not in C:
        raise DomainError("pattern needs k matched or k-1 in C")
    f = Poly.coerce(f)
    free = [x for x in range(1, k + 1) if x not in used]
    out = {}
    for inner, outer in _completions(free):
        extra = len(outer)
        r = k + extra
        for ext_pos in combinations(range(1, r + 1), extra):
            ext_set = set(ext_pos)
            alpha = [pos for pos in range(1, r + 1) if pos not in ext_set]
            cset = set()
            if not _merge_constraints(C, alpha, cset):
                continue
            base = {}
            for a, b in pairs + inner:
                base[alpha[a - 1]], base[alpha[b - 1]] = alpha[b - 1], alpha[a - 1]
            for assign in permutations(ext_pos):
                inv = dict(base)
                for entry, pos in zip(outer, assign):
                    inv[alpha[entry - 1]], inv[pos] = pos, alpha[entry - 1]
                weight = f.rename({f"x{i}": f"x{alpha[i - 1]}" for i in range(1, k + 1)})
                U = tuple(sorted(inv))
                key = PackedTriple(U, tuple(inv[u] for u in U), tuple(cset), weight)
                out[key] = out.get(key, 0) + 1
    return RegularStatistic(out)


def _completions(free):
    """Split ``free`` into pairs among themselves plus singles paired outside."""
    if not free:
        yield [], []
        return
    first, rest = free[0], free[1:]
    for inner, outer in _completions(rest):
        yield inner, [first] + outer
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for inner, outer in _completions(remaining):
            yield [(first, partner)] + inner, outer


def stable_class_coefficients(stat):
    """{lam_bar: polynomial in n} with ch_n(R stat) = sum c(n) s_{lam_bar[n]} / (n)_q."""
    q = stat.shift
    n = Poly.var("n")
    out = {}
    for t, c in stat.items():
        fbar = vincular_sum_poly(t.f, t.m, t.C)
        lift = falling(n - t.shift, q - t.shift) * (Fraction(c) / factorial(t.m - t.shift))
        for lam_bar, g in stable_atomic_expansion(t.packed_pp()).entries.items():
            out[lam_bar] = out.get(lam_bar, Poly()) + g * fbar * lift
    return {k: ClassPolynomial.over_falling(v, q) for k, v in out.items() if not v.is_zero()}


def schur_at(coefficients, n):
    """Evaluate stable class coefficients at a concrete n."""
    terms = {}
    for lam_bar, cp in coefficients.items():
        value = cp.evaluate({"n": n})
        if value:
            terms[pad(lam_bar, n)] = value
    return SymFunc(Basis.SCHUR, n, terms)


def matching_moment(A, k, C=(), f=1, d=1):
    """E over perfect matchings of [2n] of the d-th power of a matching-pattern count, in n.

    The class polynomial of the power is restricted to the class (2^n):
    the ambient size becomes 2n, m2 becomes n and every other m_i vanishes.
    """
    r = moment_poly(matching_stat(A, k, C, f), d)
    n = Poly.var("n")
    sub = {v: (n if v == "m2" else Poly()) for v in r.numerator.variables() if v.startswith("m")}
    sub["n"] = 2 * n
    numerator = r.numerator.subs(sub) / (2 ** len(r.roots))
    return ClassPolynomial(numerator, tuple(Fraction(root, 2) for root in r.roots)).reduced()
