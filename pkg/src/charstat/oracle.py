"""Ground truth by exhaustion and sampling over small symmetric groups."""

from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

import numpy as np

from .errors import DomainError, check_cap
from .partitions import hook_dimension, partition, partitions_of
from .ribbons import chi
from .symfunc import Basis, SymFunc


# permutations --------------------------------------------------------------------

def cycle_type(w):
    n = len(w)
    seen = [False] * (n + 1)
    parts = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = w[v - 1]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))


def all_permutations(n):
    check_cap(n, "S_n enumeration")
    return permutations(range(1, n + 1))


@lru_cache(maxsize=16)
def _classes(n):
    check_cap(n, "S_n enumeration")
    out = defaultdict(list)
    for w in permutations(range(1, n + 1)):
        out[cycle_type(w)].append(w)
    return dict(out)


def conjugacy_class(lam):
    lam = partition(lam)
    return _classes(sum(lam)).get(lam, [])


# textbook statistics --------------------------------------------------------------

def exc(w):
    return sum(1 for i, v in enumerate(w, start=1) if v > i)


def fix(w):
    return sum(1 for i, v in enumerate(w, start=1) if v == i)


def inv(w):
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def des(w):
    return sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def maj(w):
    return sum(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def peak(w):
    return sum(1 for i in range(1, len(w) - 1) if w[i - 1] < w[i] > w[i + 1])


TEXTBOOK = {"exc": exc, "fix": fix, "inv": inv, "des": des, "maj": maj, "peak": peak}


def literal_triple_value(t, w):
    """A translate evaluated straight from its definition by scanning all m-subsets."""
    n = len(w)
    total = Fraction(0)
    for L in combinations(range(1, n + 1), t.m):
        if any(L[c] != L[c - 1] + 1 for c in t.C):
            continue
        if all(w[L[u - 1] - 1] == L[v - 1] for u, v in zip(t.U, t.V)):
            total += t.f.evaluate({f"x{i}": L[i - 1] for i in range(1, t.m + 1)})
    return total


def literal_value(stat, w):
    return sum((c * literal_triple_value(t, w) for t, c in stat.items()), Fraction(0))


def _as_callable(stat):
    return stat if callable(stat) else stat.evaluate


# brute force class functions -------------------------------------------------------

def brute_conditional_moment(stat, lam, d=1):
    """Mean of stat^d over the conjugacy class of cycle type lam."""
    lam = partition(lam)
    check_cap(sum(lam), "conditional moment")
    fn = _as_callable(stat)
    members = conjugacy_class(lam)
    total = sum((Fraction(fn(w)) ** d for w in members), Fraction(0))
    return total / len(members)


def brute_ch(stat, n):
    """(1/n!) sum_w stat(w) p_{type(w)}."""
    check_cap(n, "characteristic map")
    fn = _as_callable(stat)
    terms = {}
    for lam, members in _classes(n).items():
        terms[lam] = sum((Fraction(fn(w)) for w in members), Fraction(0)) / factorial(n)
    return SymFunc(Basis.POWER, n, terms)


def brute_atomic_counts(pp):
    """{lam: #{w in K_lam : w(I) = J}} by enumeration."""
    check_cap(pp.ambient, "atomic count")
    out = defaultdict(int)
    for lam, members in _classes(pp.ambient).items():
        for w in members:
            if all(w[i - 1] == j for i, j in zip(pp.source, pp.target)):
                out[lam] += 1
    return dict(out)


def brute_char_partial(lam, pp):
    """sum over completions w of (I, J) of chi^lam(w)."""
    lam = partition(lam)
    if sum(lam) != pp.ambient:
        raise DomainError(f"|lam| = {sum(lam)} but ambient n = {pp.ambient}")
    return sum(count * chi(lam, mu) for mu, count in brute_atomic_counts(pp).items())


# matchings ----------------------------------------------------------------------------

def enumerate_matchings(n):
    """All fixed-point-free involutions of [2n] in one-line notation."""
    if n > 5:
        raise DomainError("matching enumeration is limited to n <= 5")
    check_cap(2 * n, "matching enumeration")

    def build(free, w):
        if not free:
            yield tuple(w[1:])
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            w[a], w[b] = b, a
            yield from build(free[1:i] + free[i + 1:], w)
        w[a] = 0

    yield from build(list(range(1, 2 * n + 1)), [0] * (2 * n + 1))


def matching_pattern_count(t, A, k, C=(), f=None):
    """Weighted occurrences of the vincular matching pattern (A, C) in t."""
    n = len(t)
    total = Fraction(0)
    for L in combinations(range(1, n + 1), k):
        if any(L[c] != L[c - 1] + 1 for c in C):
            continue
        if all(t[L[a - 1] - 1] == L[b - 1] for a, b in A):
            total += 1 if f is None else f.evaluate({f"x{i}": L[i - 1] for i in range(1, k + 1)})
    return total


def brute_matching_moment(A, k, C, n, d=1, f=None):
    total = Fraction(0)
    count = 0
    for t in enumerate_matchings(n):
        total += matching_pattern_count(t, A, k, C, f) ** d
        count += 1
    return total / count


# shadows and locality --------------------------------------------------------------------

def shadow_corners(w):
    """Northeast corners of the first Viennot shadow lines of w.

    Each shadow line is the sequence of left-to-right minima of the points
    not yet used; consecutive minima (x_i, y_i), (x_{i+1}, y_{i+1}) give the
    corner (x_{i+1}, y_i).  Corners are returned sorted by x as (I, J, s).
    """
    points = [(i, v) for i, v in enumerate(w, start=1)]
    corners = []
    while points:
        line, rest = [], []
        low = None
        for x, y in points:
            if low is None or y < low:
                line.append((x, y))
                low = y
            else:
                rest.append((x, y))
        for (x0, y0), (x1, _) in zip(line, line[1:]):
            corners.append((x1, y0))
        points = rest
    corners.sort()
    I = tuple(x for x, _ in corners)
    J = tuple(y for _, y in corners)
    return I, J, len(corners)


def lis(w):
    tails = []
    for v in w:
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


@dataclass(frozen=True)
class LocDim:
    by_lis: int
    by_shadow: int
    by_hooks: int

    @property
    def agree(self):
        return self.by_lis == self.by_shadow == self.by_hooks

    @property
    def value(self):
        if not self.agree:
            raise ArithmeticError(f"loc_dim routes disagree: {self}")
        return self.by_lis


def loc_dim(n, k):
    """dim Loc_k(S_n) three ways: longest increasing subsequences, shadow corners, hooks."""
    if k < 0 or n < 0:
        raise DomainError("n and k must be nonnegative")
    check_cap(n, "locality dimension")
    by_lis = by_shadow = 0
    for w in permutations(range(1, n + 1)):
        if lis(w) >= n - k:
            by_lis += 1
        if shadow_corners(w)[2] <= k:
            by_shadow += 1
    by_hooks = sum(hook_dimension(lam) ** 2 for lam in partitions_of(n) if (lam[0] if lam else 0) >= n - k)
    return LocDim(by_lis, by_shadow, by_hooks)


# sampling --------------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleSpec:
    cycle_type: tuple
    seed: int
    count: int

    def __post_init__(self):
        object.__setattr__(self, "cycle_type", partition(self.cycle_type))
        if self.count < 1:
            raise DomainError("sample count must be at least 1")


def _skeleton(lam):
    """Index arrays (src, dst) so that w[arr[src]] = arr[dst] builds the cycles."""
    src, dst = [], []
    start = 0
    for part in lam:
        block = list(range(start, start + part))
        src.extend(block)
        dst.extend(block[1:] + block[:1])
        start += part
    return np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)


def sample_cycle_type_array(spec, worker=0):
    """(count, n) array of one-line permutations uniform on the class, PCG64-seeded.

    A uniformly random arrangement of [n] is poured into a fixed cycle
    skeleton; each class element arises from exactly z_lam arrangements.
    Worker streams are split with PCG64 jumps, so results do not depend on
    how many workers run.
    """
    lam = spec.cycle_type
    n = sum(lam)
    bitgen = np.random.PCG64(spec.seed)
    if worker:
        bitgen = bitgen.jumped(worker)
    rng = np.random.Generator(bitgen)
    src, dst = _skeleton(lam)
    arrangement = rng.permuted(np.tile(np.arange(1, n + 1, dtype=np.int64), (spec.count, 1)), axis=1)
    out = np.empty_like(arrangement)
    rows = np.arange(spec.count)[:, None]
    out[rows, arrangement[:, src] - 1] = arrangement[:, dst]
    return out


def sample_cycle_type(spec, worker=0):
    """Stream of permutations (tuples) uniform on the conjugacy class."""
    for row in sample_cycle_type_array(spec, worker):
        yield tuple(int(v) for v in row)


# vectorised statistics on (count, n) arrays of one-line permutations -----------------

def _positions(n):
    return np.arange(1, n + 1, dtype=np.int64)


def _exc_rows(arr):
    return (arr > _positions(arr.shape[1])).sum(axis=1)


def _fix_rows(arr):
    return (arr == _positions(arr.shape[1])).sum(axis=1)


def _des_mask(arr):
    return arr[:, :-1] > arr[:, 1:]


def _des_rows(arr):
    return _des_mask(arr).sum(axis=1)


def _maj_rows(arr):
    return (_des_mask(arr) * _positions(arr.shape[1] - 1)).sum(axis=1)


def _inv_rows(arr):
    total = np.zeros(len(arr), dtype=np.int64)
    for i in range(arr.shape[1] - 1):
        total += (arr[:, i:i + 1] > arr[:, i + 1:]).sum(axis=1)
    return total


def _peak_rows(arr):
    return ((arr[:, 1:-1] > arr[:, :-2]) & (arr[:, 1:-1] > arr[:, 2:])).sum(axis=1)


VECTORISED = {"exc": _exc_rows, "fix": _fix_rows, "inv": _inv_rows, "des": _des_rows, "maj": _maj_rows, "peak": _peak_rows}

SAMPLE_BLOCK = 10_000


def _block_values(spec, stat, block, size):
    rows = sample_cycle_type_array(SampleSpec(spec.cycle_type, spec.seed, size), worker=block)
    if stat in VECTORISED:
        return VECTORISED[stat](rows).astype(np.int64)
    fn = TEXTBOOK[stat] if isinstance(stat, str) else _as_callable(stat)
    return np.array([fn(tuple(int(v) for v in row)) for row in rows], dtype=object)


def sample_statistic(spec, stat, threads=1):
    """Values of stat on spec.count uniform draws from the class.

    Draws come in blocks of SAMPLE_BLOCK; block b uses PCG64 stream b, so the
    output is the same for any thread count.
    """
    if isinstance(stat, str) and stat not in TEXTBOOK:
        raise DomainError(f"unknown statistic {stat!r}; choose from {', '.join(TEXTBOOK)}")
    sizes = [min(SAMPLE_BLOCK, spec.count - start) for start in range(0, spec.count, SAMPLE_BLOCK)]
    jobs = list(enumerate(sizes))
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda job: _block_values(spec, stat, *job), jobs))
    else:
        parts = [_block_values(spec, stat, *job) for job in jobs]
    return np.concatenate(parts)
