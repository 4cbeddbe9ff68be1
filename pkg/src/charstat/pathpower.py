"""Path power sums: the atomic functions of disjoint unions of directed paths.

Every expansion returned here has the m(mu)! multiplicity factor folded into
its coefficients.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError
from .partitions import mult_factorial, pad, partition, partitions_of, set_partitions
from .poly import Poly, interpolate
from .ribbons import monotonic_tilings
from .symfunc import Basis, SymFunc


def _sorted(parts):
    return tuple(sorted(parts, reverse=True))


def _bump(mu, i, a):
    """mu with its i-th part increased by a, re-sorted."""
    return _sorted(mu[:i] + (mu[i] + a,) + mu[i + 1:])


@lru_cache(maxsize=None)
def _path_to_p(mu):
    # vec-p_(a, nu) = p_a vec-p_nu + sum_i vec-p_(nu with nu_i + a)
    if not mu:
        return {(): Fraction(1)}
    a, nu = mu[-1], mu[:-1]
    out = {}
    for lam, c in _path_to_p(nu).items():
        key = _sorted(lam + (a,))
        out[key] = out.get(key, 0) + c
    for i in range(len(nu)):
        for lam, c in _path_to_p(_bump(nu, i, a)).items():
            out[lam] = out.get(lam, 0) + c
    return {k: v for k, v in out.items() if v}


def path_to_p_terms(mu):
    return dict(_path_to_p(_sorted(mu)))


def path_to_p(mu):
    """vec-p_mu in the power-sum basis."""
    mu = partition(mu)
    return SymFunc(Basis.POWER, sum(mu), _path_to_p(mu))


def path_to_p_by_set_partitions(mu):
    """Oracle: sum over set partitions of the parts, weight prod (|B|-1)!."""
    mu = partition(mu)
    out = {}
    for blocks in set_partitions(range(len(mu))):
        lam = _sorted(sum(mu[i] for i in b) for b in blocks)
        w = 1
        for b in blocks:
            w *= factorial(len(b) - 1)
        out[lam] = out.get(lam, 0) + w
    return SymFunc(Basis.POWER, sum(mu), out)


@lru_cache(maxsize=None)
def _p_to_path(mu):
    # p_a p_nu = sum c_rho p_a vec-p_rho and p_a vec-p_rho = vec-p_(a,rho) - sum_i vec-p_(rho_i + a)
    if not mu:
        return {(): Fraction(1)}
    a, nu = mu[-1], mu[:-1]
    out = {}
    for rho, c in _p_to_path(nu).items():
        for key, sign in _path_multiply_terms(a, rho):
            out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def _path_multiply_terms(a, rho):
    yield _sorted(rho + (a,)), 1
    for i in range(len(rho)):
        yield _bump(rho, i, a), -1


def p_to_path_terms(mu):
    return dict(_p_to_path(_sorted(mu)))


def p_to_path(mu):
    """p_mu as a combination of path power sums."""
    mu = partition(mu)
    return SymFunc(Basis.PATH, sum(mu), _p_to_path(mu))


def p_to_path_by_set_partitions(mu):
    """Oracle: signed sum over set partitions of a single vec-p of block sums."""
    mu = partition(mu)
    out = {}
    for blocks in set_partitions(range(len(mu))):
        lam = _sorted(sum(mu[i] for i in b) for b in blocks)
        out[lam] = out.get(lam, 0) + (-1) ** (len(mu) - len(blocks))
    return SymFunc(Basis.PATH, sum(mu), out)


def path_multiply(a, mu):
    """vec-p_a * vec-p_mu = vec-p_(a,mu) - sum_i vec-p_(mu with mu_i + a)."""
    if a < 1:
        raise DomainError(f"path multiply needs a >= 1, got {a}")
    mu = partition(mu)
    out = {}
    for key, sign in _path_multiply_terms(a, mu):
        out[key] = out.get(key, 0) + sign
    return SymFunc(Basis.PATH, sum(mu) + a, out)


def _row_fillings(lam, sizes):
    """Ways to tile each row of lam by horizontal ribbons using exactly ``sizes``."""
    @lru_cache(maxsize=None)
    def rows(i, remaining):
        if i == len(lam):
            return 1 if not remaining else 0
        total = 0
        for chosen, rest, arrangements in _sub_multisets(remaining, lam[i]):
            total += arrangements * rows(i + 1, rest)
        return total

    return rows(0, tuple(sorted(sizes)))


def _sub_multisets(items, target):
    """(chosen, rest, #orderings of chosen) for sub-multisets summing to target."""
    counts = sorted(Counter(items).items())
    out = []

    def walk(idx, left, picked):
        if left == 0:
            chosen = Counter()
            for v, c in picked:
                chosen[v] += c
            rest = Counter(items) - chosen
            num = factorial(sum(chosen.values()))
            for c in chosen.values():
                num //= factorial(c)
            out.append((chosen, tuple(sorted(rest.elements())), num))
            return
        if idx == len(counts):
            return
        v, c = counts[idx]
        for take in range(min(c, left // v) + 1):
            walk(idx + 1, left - take * v, picked + ([(v, take)] if take else []))

    walk(0, target, [])
    return out


def path_to_m(mu):
    """vec-p_mu in the monomial basis: m(mu)! times row tilings by horizontal ribbons."""
    mu = partition(mu)
    scale = mult_factorial(mu)
    out = {}
    for lam in partitions_of(sum(mu)):
        d = _row_fillings(lam, mu)
        if d:
            out[lam] = scale * d
    return SymFunc(Basis.MONOMIAL, sum(mu), out)


def path_to_s(mu):
    """vec-p_mu in the Schur basis via signed monotonic ribbon tilings."""
    mu = partition(mu)
    scale = mult_factorial(mu)
    return SymFunc(Basis.SCHUR, sum(mu), {lam: scale * c for lam, c in monotonic_tilings(mu).items()})


# stable expansions --------------------------------------------------------------

@dataclass(frozen=True)
class StableSchurExpansion:
    """Entries lam_bar -> polynomial in n with F_n / normalizer(n) = sum entry(n) s_{lam_bar[n]}."""

    entries: dict
    valid_from: int
    normalizer: str
    normalizer_fn: object = None

    def coefficient(self, lam_bar, n):
        poly = self.entries.get(tuple(lam_bar))
        return poly.evaluate({"n": n}) if poly is not None else Fraction(0)

    def evaluate(self, n, scaled=True):
        """The finite-n Schur expansion; ``scaled`` multiplies the normalizer back."""
        if n < self.valid_from:
            raise DomainError(f"stable expansion valid from n={self.valid_from}, got {n}")
        scale = self.normalizer_fn(n) if (scaled and self.normalizer_fn) else 1
        terms = {}
        for lam_bar, poly in self.entries.items():
            c = poly.evaluate({"n": n})
            if c:
                terms[pad(lam_bar, n)] = c * scale
        return SymFunc(Basis.SCHUR, n, terms)

    def degree(self, lam_bar=()):
        poly = self.entries.get(tuple(lam_bar))
        return poly.degree() if poly is not None else -1

    def to_json(self):
        return {
            "valid_from": self.valid_from,
            "normalizer": self.normalizer,
            "entries": [
                {"partition": list(lam), "poly": {"coeffs": _coeff_strings(poly)}}
                for lam, poly in sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }

    def __str__(self):
        lines = [f"normalizer {self.normalizer}, valid for n >= {self.valid_from}"]
        for lam, poly in sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            label = ",".join(map(str, lam)) or "-"
            lines.append(f"  [{label}]  {poly}")
        return "\n".join(lines)


def _coeff_strings(poly):
    by = poly.coefficients_in("n")
    top = max(by) if by else 0
    out = []
    for k in range(top + 1):
        c = by.get(k, Poly()).constant_term()
        out.append(str(c))
    return out


def _fit_stable(sample, points, degree, what):
    """Interpolate each lam_bar coefficient over ``points`` and check one more point."""
    values = {n: sample(n) for n in points + [points[-1] + 1]}
    keys = {tuple(lam[1:]) for terms in values.values() for lam in terms}
    entries = {}
    for key in keys:
        pts = [(n, values[n].get(pad(key, n), 0)) for n in points]
        poly = interpolate(pts)
        if poly.degree() > degree:
            raise ArithmeticError(f"{what}: coefficient of {key} exceeds degree bound {degree}")
        check = points[-1] + 1
        if poly.evaluate({"n": check}) != values[check].get(pad(key, check), 0):
            raise ArithmeticError(f"{what}: interpolation fails validation at n={check}")
        if not poly.is_zero():
            entries[key] = poly
    return entries


def stable_path_expansion(mu_bar):
    """Stable Schur expansion of vec-p_{mu_bar 1^(n-|mu_bar|)} / m(mu_bar(n))!."""
    mu_bar = partition(mu_bar)
    if any(part == 1 for part in mu_bar):
        raise DomainError("parts equal to 1 belong to the padding; pass the reduced partition")
    size, length = sum(mu_bar), len(mu_bar)
    valid_from = 2 * size - 2 * length
    base = mult_factorial(mu_bar)

    def norm(n):
        return base * factorial(n - size)

    def sample(n):
        full = mu_bar + (1,) * (n - size)
        return {lam: c / norm(n) for lam, c in path_to_s(full).terms.items()}

    points = list(range(valid_from, valid_from + length + 1))
    entries = _fit_stable(sample, points, length, f"stable expansion of {mu_bar}")
    label = f"(n-{size})!" if size else "n!"
    if base > 1:
        label = f"{base}*{label}"
    return StableSchurExpansion(entries, valid_from, label, norm)
