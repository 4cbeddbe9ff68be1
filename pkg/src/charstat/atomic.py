"""Partial permutations, their cycle-path types and atomic symmetric functions.

The atomic function of (I, J) in S_n is the class-sum generating function
A = sum_lam #{w in K_lam : w(I) = J} p_lam.  It depends only on the
cycle-path type of the graph i_t -> j_t on [n], and factors as a path power
sum in the paths times a power sum in the cycles.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import DomainError
from .partitions import partition
from .pathpower import StableSchurExpansion, _fit_stable, path_to_p, path_to_s
from .ribbons import skew_chi
from .symfunc import Basis, SymFunc, convert, multiply, p


@dataclass(frozen=True)
class PartialPermutation:
    source: tuple
    target: tuple
    ambient: int

    def __post_init__(self):
        source, target = tuple(self.source), tuple(self.target)
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        if len(source) != len(target):
            raise DomainError("source and target must have equal length")
        if len(set(source)) != len(source) or len(set(target)) != len(target):
            raise DomainError("source and target entries must be distinct")
        if any(not isinstance(x, int) or x < 1 or x > self.ambient for x in source + target):
            raise DomainError(f"entries must lie in [1, {self.ambient}]")

    @property
    def size(self):
        return len(self.source)

    def mapping(self):
        return dict(zip(self.source, self.target))

    def relabel(self, w):
        """(w(I), w(J)) for a permutation w given in one-line notation."""
        return PartialPermutation(
            tuple(w[i - 1] for i in self.source), tuple(w[j - 1] for j in self.target), self.ambient
        )

    def is_packed(self):
        support = set(self.source) | set(self.target)
        return support == set(range(1, len(support) + 1))

    def to_json(self):
        return {"n": self.ambient, "I": list(self.source), "J": list(self.target)}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["I"]), tuple(data["J"]), data["n"])


def partial_perm(source, target, n=None):
    if n is None:
        n = max(tuple(source) + tuple(target), default=0)
    return PartialPermutation(tuple(source), tuple(target), n)


@dataclass(frozen=True)
class CyclePathType:
    cycles: tuple
    paths: tuple

    @property
    def ambient(self):
        return sum(self.cycles) + sum(self.paths)

    @property
    def reduced_paths(self):
        return tuple(p for p in self.paths if p > 1)

    @property
    def size(self):
        """Number of arrows: |nu| + |mu| - l(mu)."""
        return sum(self.cycles) + sum(self.paths) - len(self.paths)

    @property
    def domcyc(self):
        return partition(self.cycles + ((sum(self.paths),) if self.paths else ()))

    def sort_key(self):
        return (-sum(self.cycles), self.cycles, self.paths)

    def __str__(self):
        nu = ",".join(map(str, self.cycles))
        mu = ",".join(map(str, self.paths))
        return f"[{nu}|{mu}]"


def components(pp):
    """Components of G_n(I,J) as (kind, vertices) with kind 'path' or 'cycle'."""
    succ = pp.mapping()
    pred = {j: i for i, j in succ.items()}
    seen = set()
    out = []
    for v in range(1, pp.ambient + 1):
        if v in seen or v in pred:
            continue
        walk = [v]
        while walk[-1] in succ:
            walk.append(succ[walk[-1]])
        seen.update(walk)
        out.append(("path", tuple(walk)))
    for v in range(1, pp.ambient + 1):
        if v in seen:
            continue
        walk = [v]
        while succ[walk[-1]] != v:
            walk.append(succ[walk[-1]])
        seen.update(walk)
        out.append(("cycle", tuple(walk)))
    return out


def cycle_path_type(pp):
    nu, mu = [], []
    for kind, verts in components(pp):
        (nu if kind == "cycle" else mu).append(len(verts))
    return CyclePathType(partition(nu), partition(mu))


def type_of(nu, mu):
    return CyclePathType(partition(nu), partition(mu))


@lru_cache(maxsize=None)
def _p_expansion(nu, mu):
    return multiply(path_to_p(mu), p(*nu)) if nu else path_to_p(mu)


@lru_cache(maxsize=None)
def _s_expansion(nu, mu):
    return multiply(path_to_s(mu), p(*nu)) if nu else path_to_s(mu)


def atomic_p_from_type(cpt):
    return _p_expansion(cpt.cycles, cpt.paths)


def atomic_s_from_type(cpt, cross_check=False):
    if cross_check:
        return _s_double_sum(cpt.cycles, cpt.paths)
    return _s_expansion(cpt.cycles, cpt.paths)


def atomic_p_expansion(pp):
    """sum_lam #{w in K_lam : w(I) = J} p_lam."""
    return atomic_p_from_type(cycle_path_type(pp))


def atomic_s_expansion(pp, cross_check=False):
    """Schur expansion of the atomic function.

    The default route multiplies the Path MN expansion of the paths by the
    cycle power sum with ribbon additions.  ``cross_check=True`` instead uses
    the double sum over path shapes rho and skew characters chi^{lam/rho}_nu.
    """
    return atomic_s_from_type(cycle_path_type(pp), cross_check)


def _s_double_sum(nu, mu):
    from .partitions import partitions_of
    n = sum(nu) + sum(mu)
    inner = path_to_s(mu)
    out = {}
    for lam in partitions_of(n):
        total = Fraction(0)
        for rho, c in inner.terms.items():
            if len(rho) <= len(lam) and all(rho[i] <= lam[i] for i in range(len(rho))):
                total += c * skew_chi(lam, rho, nu)
        if total:
            out[lam] = total
    return SymFunc(Basis.SCHUR, n, out)


def char_on_partial_perm(lam, pp):
    """chi^lam of the coset sum [I,J], an integer."""
    lam = partition(lam)
    if sum(lam) != pp.ambient:
        raise DomainError(f"|lam| = {sum(lam)} but ambient n = {pp.ambient}")
    return atomic_s_expansion(pp).coefficient(lam)


# graph skewing --------------------------------------------------------------------

def _component_sizes(pp):
    return [(kind, len(verts)) for kind, verts in components(pp)]


def _remaining_type(comps, removed):
    nu = [s for i, (k, s) in enumerate(comps) if k == "cycle" and i not in removed]
    mu = [s for i, (k, s) in enumerate(comps) if k == "path" and i not in removed]
    return type_of(nu, mu)


def skew_h_graph(pp, j):
    """h_j^perp of the atomic function as {CyclePathType: coefficient}.

    Each set of components holding j vertices in total is removed with weight
    (number of removed paths)!; the remaining graph lives on n - j vertices.
    """
    if j < 0 or j > pp.ambient:
        raise DomainError(f"skew degree {j} outside [0, {pp.ambient}]")
    comps = _component_sizes(pp)
    out = {}
    for r in range(len(comps) + 1):
        for removed in combinations(range(len(comps)), r):
            if sum(comps[i][1] for i in removed) != j:
                continue
            paths = sum(1 for i in removed if comps[i][0] == "path")
            key = _remaining_type(comps, set(removed))
            out[key] = out.get(key, 0) + factorial(paths)
    return _sorted_combination(out)


def skew_p_graph(pp, j):
    """p_j^perp of the atomic function as {CyclePathType: coefficient}.

    Removing a single j-cycle weighs j; removing a nonempty set S of paths
    with j vertices in total weighs j (|S| - 1)!.
    """
    if j < 1 or j > pp.ambient:
        raise DomainError(f"skew degree {j} outside [1, {pp.ambient}]")
    comps = _component_sizes(pp)
    out = {}
    for i, (kind, size) in enumerate(comps):
        if kind == "cycle" and size == j:
            key = _remaining_type(comps, {i})
            out[key] = out.get(key, 0) + j
    path_idx = [i for i, (kind, _) in enumerate(comps) if kind == "path"]
    for r in range(1, len(path_idx) + 1):
        for removed in combinations(path_idx, r):
            if sum(comps[i][1] for i in removed) == j:
                key = _remaining_type(comps, set(removed))
                out[key] = out.get(key, 0) + j * factorial(r - 1)
    return _sorted_combination(out)


def _sorted_combination(combo):
    return {k: Fraction(v) for k, v in sorted(combo.items(), key=lambda kv: kv[0].sort_key()) if v}


def combination_to_symfunc(combo, degree, basis=Basis.POWER):
    """Evaluate {CyclePathType: coeff} as a symmetric function."""
    total = SymFunc.zero(Basis.POWER, degree)
    for cpt, c in combo.items():
        total = total + atomic_p_from_type(cpt) * c
    return convert(total, basis)


def format_combination(combo):
    """Text form like ``6*p(2)*vp(1,1) + 3*vp(2,1,1)``."""
    if not combo:
        return "0"
    # cycles descending, then paths ascending
    items = sorted(combo.items(), key=lambda item: item[0].paths)
    items.sort(key=lambda item: item[0].cycles, reverse=True)
    chunks = []
    for i, (cpt, c) in enumerate(items):
        factors = []
        if cpt.cycles:
            factors.append(f"p({','.join(map(str, cpt.cycles))})")
        if cpt.paths or not factors:
            factors.append(f"vp({','.join(map(str, cpt.paths))})")
        body = "*".join(factors)
        mag = abs(c)
        if mag != 1:
            body = f"{mag}*{body}"
        sign = "-" if c < 0 else "+"
        chunks.append((f"-{body}" if c < 0 else body) if i == 0 else f" {sign} {body}")
    return "".join(chunks)


# stable expansions ----------------------------------------------------------------

def type_at(packed, n):
    """Cycle-path type of a packed pp placed in [n] (extra vertices are 1-paths)."""
    m = max(packed.source + packed.target, default=0)
    if n < m:
        raise DomainError(f"ambient {n} below support size {m}")
    base = cycle_path_type(PartialPermutation(packed.source, packed.target, m))
    return type_of(base.cycles, base.paths + (1,) * (n - m))


@lru_cache(maxsize=None)
def _stable_atomic(cycles, paths):
    # a packed graph has no 1-paths, so its type determines the expansion
    base = CyclePathType(cycles, paths)
    m = base.ambient
    k = base.size

    def sample(n):
        expansion = atomic_s_from_type(type_of(cycles, paths + (1,) * (n - m)))
        scale = factorial(n - m)
        return {lam: c / scale for lam, c in expansion.terms.items()}

    start = max(2 * k, m)
    points = list(range(start, start + k + 1))
    entries = _fit_stable(sample, points, k, f"stable atomic expansion of type {base}")
    label = f"(n-{m})!" if m else "n!"
    return StableSchurExpansion(entries, start, label, lambda n: factorial(n - m))


def packed_type(packed):
    """(cycles, paths) of a packed partial permutation, the key of its stable expansion."""
    if not packed.is_packed():
        raise DomainError("stable expansion needs a packed partial permutation (I u J = [m])")
    base = cycle_path_type(PartialPermutation(packed.source, packed.target, len(set(packed.source) | set(packed.target))))
    return base.cycles, base.paths


def stable_atomic_by_type(cycles, paths):
    return _stable_atomic(tuple(cycles), tuple(paths))


def stable_atomic_expansion(packed):
    """g_lam(n) with A_n / (n - m)! = sum g_lam(n) s_{lam[n]}, m = |I u J|."""
    return _stable_atomic(*packed_type(packed))
