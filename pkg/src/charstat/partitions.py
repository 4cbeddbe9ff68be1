"""Integer partitions, compositions and skew shapes.

A partition is a plain tuple of positive integers in weakly decreasing
order; ``()`` is the empty partition.  Constructors sort and validate, so
every mathematical partition has exactly one representation.
"""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import DomainError


def partition(parts=()):
    """Canonical partition from any iterable of positive integers."""
    parts = tuple(parts)
    for p in parts:
        if not isinstance(p, int) or isinstance(p, bool) or p <= 0:
            raise DomainError(f"partition parts must be positive integers, got {parts!r}")
    return tuple(sorted(parts, reverse=True))


def is_partition(parts):
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def composition(parts):
    """Validate an ordered sequence of positive integers."""
    parts = tuple(parts)
    if any(not isinstance(p, int) or p <= 0 for p in parts):
        raise DomainError(f"composition parts must be positive integers, got {parts!r}")
    return parts


def size(lam):
    return sum(lam)


@lru_cache(maxsize=None)
def partitions_of(n, max_part=None):
    """All partitions of n in reverse lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if n < 0:
        return ()
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def multiplicities(lam):
    """{part: m_part(lam)}"""
    return dict(Counter(lam))


def mult_vector(lam, k):
    """(m_1, ..., m_k) for the partition lam."""
    counts = Counter(lam)
    return tuple(counts.get(i, 0) for i in range(1, k + 1))


def mult_factorial(lam):
    """m(lam)! = product of m_i(lam)! over all i."""
    return prod(factorial(c) for c in Counter(lam).values())


def z_value(lam):
    """Centralizer size z_lam = prod i^{m_i} m_i!."""
    return prod(i**c * factorial(c) for i, c in Counter(lam).items())


def class_size(lam):
    return factorial(sum(lam)) // z_value(lam)


def conjugate(lam):
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominance_leq(mu, lam):
    """True when mu is dominated by lam (both partitions of the same n)."""
    if sum(mu) != sum(lam):
        raise DomainError(f"dominance needs equal sizes, got |{mu}|={sum(mu)} and |{lam}|={sum(lam)}")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def pad(lam, n):
    """lam[n] = (n - |lam|, lam_1, lam_2, ...); needs n >= |lam| + lam_1."""
    first = lam[0] if lam else 0
    if n < sum(lam) + first:
        raise DomainError(f"pad({lam}, {n}) needs n >= {sum(lam) + first}")
    head = n - sum(lam)
    return ((head,) if head else ()) + tuple(lam)


def unpad(lam):
    """Inverse of pad: drop the first row."""
    return tuple(lam[1:])


def append_ones(lam, n):
    """lam(n) = lam followed by n - |lam| ones."""
    if n < sum(lam):
        raise DomainError(f"append_ones({lam}, {n}) needs n >= {sum(lam)}")
    return tuple(lam) + (1,) * (n - sum(lam))


def contains(outer, inner):
    return len(inner) <= len(outer) and all(inner[i] <= outer[i] for i in range(len(inner)))


@dataclass(frozen=True)
class SkewShape:
    outer: tuple
    inner: tuple = ()

    def __post_init__(self):
        if not (is_partition(self.outer) and is_partition(self.inner)):
            raise DomainError("skew shape needs two partitions")
        if not contains(self.outer, self.inner):
            raise DomainError(f"{self.inner} is not contained in {self.outer}")

    @property
    def size(self):
        return sum(self.outer) - sum(self.inner)

    def cells(self):
        return {
            (r + 1, c + 1)
            for r, row in enumerate(self.outer)
            for c in range(self.inner[r] if r < len(self.inner) else 0, row)
        }


def hook_dimension(lam):
    """f^lam, the number of standard Young tableaux, by the hook length formula."""
    n = sum(lam)
    conj = conjugate(lam)
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(n) // hooks


def set_partitions(items):
    """Yield all set partitions of a list as lists of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for blocks in set_partitions(rest):
        yield [[first]] + blocks
        for i in range(len(blocks)):
            yield blocks[:i] + [[first] + blocks[i]] + blocks[i + 1:]


def parse_partition(text):
    """'3,2,1' -> (3, 2, 1); the empty string is the empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"cannot parse partition {text!r}") from exc
    return partition(parts)


def format_partition(lam):
    return ",".join(str(p) for p in lam)
