"""Ribbon geometry: single ribbon additions, ribbon tableaux and monotonic tilings.

Rows and columns are 1-indexed; row 1 is the top (longest) row.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ResourceError
from .partitions import partitions_of

DEFAULT_TILING_CAP = 64


@dataclass(frozen=True)
class Ribbon:
    cells: frozenset

    @property
    def size(self):
        return len(self.cells)

    @property
    def height(self):
        rows = {r for r, _ in self.cells}
        return max(rows) - min(rows)

    @property
    def sign(self):
        return -1 if self.height % 2 else 1

    @property
    def tail(self):
        """Southwesternmost cell."""
        return max(self.cells, key=lambda rc: (rc[0], -rc[1]))


@dataclass(frozen=True)
class RibbonTiling:
    ribbons: tuple
    shape: tuple

    @property
    def sign(self):
        s = 1
        for rib in self.ribbons:
            s *= rib.sign
        return s

    @property
    def sizes(self):
        return tuple(r.size for r in self.ribbons)


def _row(lam, i):
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def add_ribbon(lam, k, tail_row):
    """Add a size-k ribbon whose tail sits in ``tail_row``.

    Returns ``(new_shape, sign)`` or ``None`` when no such ribbon keeps the
    union a partition.  The tail cell is forced to be (tail_row, lam_i + 1);
    every row strictly above the tail that the ribbon enters is filled to one
    past the row above it, which leaves exactly one candidate top row.
    """
    if k < 1 or tail_row < 1:
        raise DomainError("ribbon size and tail row must be positive")
    i = tail_row
    used = 0
    for h in range(i, 0, -1):
        if h < i:
            used += _row(lam, h) + 1 - _row(lam, h + 1)
        r = k - used
        if r < 1:
            return None
        if h == 1 or _row(lam, h) + r <= _row(lam, h - 1):
            rows = list(lam) + [0] * max(0, i - len(lam))
            rows[h - 1] += r
            for j in range(h + 1, i + 1):
                rows[j - 1] = _row(lam, j - 1) + 1
            new = tuple(p for p in rows if p)
            return new, (-1 if (i - h) % 2 else 1)
    return None


def ribbon_between(outer, inner):
    """The cells of outer/inner as a Ribbon (caller guarantees it is one)."""
    cells = frozenset(
        (r + 1, c + 1)
        for r in range(len(outer))
        for c in range(_row(inner, r + 1), outer[r])
    )
    return Ribbon(cells)


def ribbon_additions(lam, k):
    """All (shape, sign, tail_row) obtained by adding one k-ribbon to lam."""
    out = []
    for i in range(1, len(lam) + k + 1):
        res = add_ribbon(lam, k, i)
        if res is not None:
            out.append((res[0], res[1], i))
    return out


def multiply_by_power_sum(terms, k):
    """Apply s_lam -> s_lam * p_k (classical MN) to a {shape: coeff} map."""
    out = {}
    for lam, c in terms.items():
        for shape, sign, _ in ribbon_additions(lam, k):
            out[shape] = out.get(shape, 0) + sign * c
    return {s: c for s, c in out.items() if c}


@lru_cache(maxsize=None)
def _power_sum_row(mu):
    terms = {(): 1}
    for part in mu:
        terms = multiply_by_power_sum(terms, part)
    return terms


@lru_cache(maxsize=None)
def character_table(n):
    """{mu: {lam: chi^lam_mu}} for all partitions of n, by ribbon additions."""
    table = {}
    for mu in partitions_of(n):
        row = _power_sum_row(mu)
        table[mu] = {lam: row.get(lam, 0) for lam in partitions_of(n)}
    return table


def chi(lam, mu):
    if sum(lam) != sum(mu):
        raise DomainError(f"character needs |lam| == |mu|, got {sum(lam)} and {sum(mu)}")
    return character_table(sum(lam))[tuple(sorted(mu, reverse=True))][tuple(lam)]


def chi_via_tableaux(lam, mu):
    """Signed count of standard ribbon tableaux of shape lam and type mu.

    Ribbons are placed in the given order of mu, keeping only shapes inside
    lam, so the count is computed for that particular ordering.
    """
    lam = tuple(lam)
    if sum(lam) != sum(mu):
        raise DomainError(f"shape size {sum(lam)} differs from type size {sum(mu)}")
    terms = {(): 1}
    for part in mu:
        nxt = {}
        for shape, c in terms.items():
            for new, sign, _ in ribbon_additions(shape, part):
                if len(new) <= len(lam) and all(new[i] <= lam[i] for i in range(len(new))):
                    nxt[new] = nxt.get(new, 0) + sign * c
        terms = {s: c for s, c in nxt.items() if c}
    return terms.get(lam, 0)


# independent route: rim hook removal on beta numbers --------------------------

def _beta(lam, length):
    return tuple(lam[i] + length - 1 - i if i < len(lam) else length - 1 - i for i in range(length))


def _unbeta(beta):
    beads = sorted(beta, reverse=True)
    length = len(beads)
    return tuple(p for p in (b - (length - 1 - i) for i, b in enumerate(beads)) if p)


@lru_cache(maxsize=None)
def chi_by_rim_hooks(lam, mu):
    """chi^lam_mu by repeatedly stripping rim hooks of size mu[0] (abacus moves)."""
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    beta = set(_beta(lam, len(lam)))
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beta:
            between = sum(1 for x in beta if b - k < x < b)
            smaller = _unbeta((beta - {b}) | {b - k})
            total += (-1) ** between * chi_by_rim_hooks(smaller, rest)
    return total


def skew_chi(outer, inner, nu):
    """chi^{outer/inner}_nu by stripping rim hooks of outer until inner is reached."""
    return _skew_chi(tuple(outer), tuple(inner), tuple(nu))


@lru_cache(maxsize=None)
def _skew_chi(outer, inner, nu):
    if not nu:
        return 1 if outer == inner else 0
    k, rest = nu[0], nu[1:]
    length = len(outer)
    beta = set(_beta(outer, length))
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beta:
            smaller = _unbeta((beta - {b}) | {b - k})
            if len(inner) <= len(smaller) and all(inner[i] <= smaller[i] for i in range(len(inner))):
                between = sum(1 for x in beta if b - k < x < b)
                total += (-1) ** between * _skew_chi(smaller, inner, rest)
    return total


# monotonic tilings -------------------------------------------------------------

def _check_total(sizes, cap):
    total = sum(sizes)
    if any(s < 1 for s in sizes):
        raise DomainError(f"ribbon sizes must be positive, got {sizes}")
    if cap is not None and total > cap:
        raise ResourceError(f"monotonic tilings of total size {total} exceed cap {cap}")


def monotonic_tilings(sizes, cap=DEFAULT_TILING_CAP):
    """{shape: signed count} over monotonic ribbon tilings using the multiset ``sizes``.

    Ribbons are added west to east; each new tail column must be strictly to
    the right of the previous one and every prefix is a partition.
    """
    sizes = tuple(sorted(sizes, reverse=True))
    _check_total(sizes, cap)
    return dict(_tilings((), 0, sizes))


@lru_cache(maxsize=None)
def _tilings(shape, last_col, remaining):
    if not remaining:
        return ((shape, 1),)
    out = {}
    for k in sorted(set(remaining), reverse=True):
        idx = remaining.index(k)
        rest = remaining[:idx] + remaining[idx + 1:]
        for new, sign, row in ribbon_additions(shape, k):
            col = _row(shape, row) + 1
            if col <= last_col:
                continue
            for final, c in _tilings(new, col, rest):
                out[final] = out.get(final, 0) + sign * c
    return tuple((s, c) for s, c in sorted(out.items(), reverse=True) if c)


def iter_monotonic_tilings(sizes, cap=DEFAULT_TILING_CAP):
    """Yield every monotonic tiling explicitly (for inspection and tests)."""
    sizes = tuple(sorted(sizes, reverse=True))
    _check_total(sizes, cap)

    def walk(shape, last_col, remaining, ribbons):
        if not remaining:
            yield RibbonTiling(tuple(ribbons), shape)
            return
        for k in sorted(set(remaining), reverse=True):
            idx = remaining.index(k)
            rest = remaining[:idx] + remaining[idx + 1:]
            for new, _, row in ribbon_additions(shape, k):
                col = _row(shape, row) + 1
                if col > last_col:
                    ribbons.append(ribbon_between(new, shape))
                    yield from walk(new, col, rest, ribbons)
                    ribbons.pop()

    yield from walk((), 0, sizes, [])
