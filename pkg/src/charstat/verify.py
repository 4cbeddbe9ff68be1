"""Self-checks that compare every pipeline with an independent route."""

from dataclasses import dataclass
from itertools import combinations, permutations

from .atomic import (
    PartialPermutation,
    atomic_p_expansion,
    atomic_s_expansion,
    char_on_partial_perm,
    combination_to_symfunc,
    cycle_path_type,
    skew_h_graph,
    skew_p_graph,
)
from .errors import DomainError
from .oracle import (
    TEXTBOOK,
    brute_atomic_counts,
    brute_ch,
    brute_char_partial,
    brute_conditional_moment,
    enumerate_matchings,
    literal_value,
    loc_dim,
    shadow_corners,
)
from .partitions import partitions_of
from .pathpower import p_to_path, path_to_p, path_to_p_by_set_partitions, path_to_s
from .regstat import BUILTIN_NAMES, builtin, reynolds_poly, stat_ch
from .ribbons import character_table, chi_by_rim_hooks, chi_via_tableaux
from .symfunc import Basis, SymFunc, convert, h, p, skew_adjoint

SUITES = ("mn", "atomic", "regstat", "oracle")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}: {self.name}{extra}"


def partial_perms(n):
    """Every partial permutation of [n]."""
    points = range(1, n + 1)
    for k in range(n + 1):
        for source in combinations(points, k):
            for target in permutations(points, k):
                yield PartialPermutation(source, target, n)


def type_representatives(n):
    """One partial permutation of [n] per cycle-path type."""
    out = {}
    for pp in partial_perms(n):
        out.setdefault(cycle_path_type(pp), pp)
    return out


def _first_failure(items, predicate):
    for item in items:
        if not predicate(item):
            return item
    return None


def _check(suite, name, items, predicate):
    bad = _first_failure(items, predicate)
    return Check(suite, name, bad is None, "" if bad is None else f"first failure at {bad}")


def suite_mn(n_max):
    mus = [mu for n in range(1, n_max + 1) for mu in partitions_of(n)]
    pairs = [(lam, mu) for n in range(1, n_max + 1) for lam in partitions_of(n) for mu in partitions_of(n)]
    small = [(lam, mu) for lam, mu in pairs if sum(lam) <= min(n_max, 6)]
    return [
        _check("mn", "path MN equals Schur conversion of the power-sum expansion", mus,
               lambda mu: path_to_s(mu) == convert(path_to_p(mu), Basis.SCHUR)),
        _check("mn", "path power recursion equals the set-partition sum", mus,
               lambda mu: path_to_p(mu) == path_to_p_by_set_partitions(mu)),
        _check("mn", "power sums round-trip through path power sums", mus,
               lambda mu: convert(p_to_path(mu), Basis.POWER) == p(*mu)),
        _check("mn", "ribbon table equals the abacus rule", pairs,
               lambda pair: character_table(sum(pair[0]))[pair[1]][pair[0]] == chi_by_rim_hooks(*pair)),
        _check("mn", "ribbon tableaux equal the abacus rule", small,
               lambda pair: chi_via_tableaux(*pair) == chi_by_rim_hooks(*pair)),
    ]


def _skew_agrees(pp):
    degree = pp.ambient
    atomic = atomic_p_expansion(pp)
    for j in range(1, degree + 1):
        rest = degree - j
        if combination_to_symfunc(skew_h_graph(pp, j), rest) != skew_adjoint(h(j), atomic):
            return False
        if combination_to_symfunc(skew_p_graph(pp, j), rest) != skew_adjoint(p(j), atomic):
            return False
    return True


def suite_atomic(n_max):
    top = min(n_max, 6)
    reps = [pp for n in range(1, top + 1) for pp in type_representatives(n).values()]

    def counts_agree(pp):
        expected = SymFunc(Basis.POWER, pp.ambient, brute_atomic_counts(pp))
        return atomic_p_expansion(pp) == expected

    return [
        _check("atomic", "power-sum expansion equals class counts", reps, counts_agree),
        _check("atomic", "path MN route equals the skew-character double sum", reps,
               lambda pp: atomic_s_expansion(pp) == atomic_s_expansion(pp, cross_check=True)),
        _check("atomic", "graph skewing equals the Hall adjoint", reps, _skew_agrees),
        _check("atomic", "coset characters equal brute sums", [pp for pp in reps if pp.ambient <= 5],
               lambda pp: all(char_on_partial_perm(lam, pp) == brute_char_partial(lam, pp)
                              for lam in partitions_of(pp.ambient))),
    ]


def _moments_agree(name, n):
    r = reynolds_poly(builtin(name))
    for lam in partitions_of(n):
        try:
            value = r.at(lam)
        except DomainError:
            continue
        if value != brute_conditional_moment(TEXTBOOK[name], lam):
            return False
    return True


def suite_regstat(n_max):
    top = min(n_max, 7)
    cases = [(name, n) for name in BUILTIN_NAMES for n in range(1, top + 1)]
    small = [(name, n) for name, n in cases if n <= min(n_max, 5)]

    def literal_agrees(case):
        name, n = case
        stat = builtin(name)
        return all(literal_value(stat, w) == stat.evaluate(w) == TEXTBOOK[name](w)
                   for w in permutations(range(1, n + 1)))

    return [
        _check("regstat", "translate expansions equal textbook counts", small, literal_agrees),
        _check("regstat", "characteristic image equals the brute class sum", cases,
               lambda case: stat_ch(builtin(case[0]), case[1]) == brute_ch(TEXTBOOK[case[0]], case[1])),
        _check("regstat", "class polynomial equals brute conditional mean", cases,
               lambda case: _moments_agree(*case)),
    ]


def suite_oracle(n_max):
    top = min(n_max, 7)
    grid = [(n, k) for n in range(1, top + 1) for k in range(n)]
    sizes = range(1, min(n_max // 2, 5) + 1)

    def double_factorial(n):
        out = 1
        for v in range(2 * n - 1, 0, -2):
            out *= v
        return out

    return [
        _check("oracle", "locality dimension agrees three ways", grid, lambda nk: loc_dim(*nk).agree),
        _check("oracle", "locality dimension at k=1 is n^2-2n+2", [n for n in range(2, top + 1)],
               lambda n: loc_dim(n, 1).value == n * n - 2 * n + 2),
        _check("oracle", "matching count is (2n-1)!!", sizes,
               lambda n: sum(1 for _ in enumerate_matchings(n)) == double_factorial(n)),
        Check("oracle", "shadow corners of 41853627",
              shadow_corners((4, 1, 8, 5, 3, 6, 2, 7)) == ((2, 4, 5, 7), (4, 8, 5, 3), 4)),
    ]


_RUNNERS = {"mn": suite_mn, "atomic": suite_atomic, "regstat": suite_regstat, "oracle": suite_oracle}


def run_suites(suite="all", n_max=7):
    """Run one suite or all of them; yields Check records as they finish."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise DomainError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
        yield from _RUNNERS[name](n_max)
