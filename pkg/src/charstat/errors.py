"""Exception types shared by every module."""

import os


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """A configured enumeration cap would be exceeded."""


DEFAULT_MAX_N = 8


def max_n():
    """Enumeration cap for brute-force routines; CHARSTAT_MAX_N overrides."""
    raw = os.environ.get("CHARSTAT_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"CHARSTAT_MAX_N must be an integer, got {raw!r}") from exc


def check_cap(n, what="enumeration"):
    cap = max_n()
    if n > cap:
        raise ResourceError(f"{what} at n={n} exceeds cap {cap} (set CHARSTAT_MAX_N)")
