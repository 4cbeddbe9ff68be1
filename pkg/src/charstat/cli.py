"""Command-line front end: charstat <subcommand> [flags]."""

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .atomic import PartialPermutation, atomic_p_expansion, atomic_s_expansion, char_on_partial_perm, cycle_path_type
from .charpoly import char_value, character_polynomial
from .errors import DomainError, ResourceError
from .oracle import SampleSpec, loc_dim, sample_statistic, shadow_corners
from .partitions import format_partition, parse_partition
from .pathpower import path_to_m, path_to_p, path_to_s
from .regstat import (
    BUILTIN_NAMES,
    RegularStatistic,
    builtin,
    leading_limit,
    moment_poly,
    reynolds_poly,
    stat_ch,
    variance_poly,
)
from .verify import SUITES, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3

_PATH_BASES = {"schur": path_to_s, "p": path_to_p, "m": path_to_m}
_ATOMIC_BASES = {"schur": atomic_s_expansion, "p": atomic_p_expansion}


def _ints(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from exc


def _partial(text):
    """Parse 'n=7;I=1,4,5,6,7;J=2,5,6,4,7'."""
    fields = {}
    for chunk in text.split(";"):
        key, sep, value = chunk.partition("=")
        if not sep:
            raise DomainError(f"bad partial permutation field {chunk!r}")
        fields[key.strip()] = value
    missing = {"n", "I", "J"} - fields.keys()
    if missing:
        raise DomainError(f"partial permutation is missing {', '.join(sorted(missing))}")
    return PartialPermutation(_ints(fields["I"]), _ints(fields["J"]), int(fields["n"]))


def _statistic(text):
    """A builtin name, an inline JSON statistic, or a path to a JSON file."""
    if text in BUILTIN_NAMES:
        return builtin(text)
    source = text if text.lstrip().startswith("{") else None
    if source is None:
        path = Path(text)
        if not path.is_file():
            raise DomainError(f"unknown statistic {text!r}; use one of {', '.join(BUILTIN_NAMES)} or a JSON file")
        source = path.read_text()
    try:
        return RegularStatistic.from_json(json.loads(source))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"cannot read statistic: {exc}") from exc


def _number(value):
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class Output:
    def __init__(self, fmt):
        self.fmt = fmt

    def emit(self, text, data):
        if self.fmt == "json":
            print(json.dumps(data, sort_keys=True))
        else:
            print(text)


# subcommands ----------------------------------------------------------------------------

def cmd_expand_path(args, out):
    mu = parse_partition(args.mu)
    f = _PATH_BASES[args.basis](mu)
    out.emit(str(f), {"mu": list(mu), "expansion": f.to_json()})


def cmd_atomic(args, out):
    pp = PartialPermutation(_ints(args.I), _ints(args.J), args.n)
    cpt = cycle_path_type(pp)
    f = _ATOMIC_BASES[args.basis](pp)
    out.emit(f"type {cpt}\n{f}", {"pp": pp.to_json(), "type": {"cycles": list(cpt.cycles), "paths": list(cpt.paths)},
                                   "expansion": f.to_json()})


def cmd_char(args, out):
    lam = parse_partition(args.lam)
    if (args.mu is None) == (args.partial is None):
        raise DomainError("give exactly one of --mu and --partial")
    if args.mu is not None:
        mu = parse_partition(args.mu)
        value = char_value(lam, mu)
        data = {"lambda": list(lam), "mu": list(mu), "value": _number(value)}
    else:
        pp = _partial(args.partial)
        value = char_on_partial_perm(lam, pp)
        data = {"lambda": list(lam), "pp": pp.to_json(), "value": _number(value)}
    out.emit(_number(value), data)


def cmd_char_poly(args, out):
    q = character_polynomial(parse_partition(args.lam))
    out.emit(str(q), {"lambda": list(q.lam), "poly": q.poly.to_json(), "text": str(q)})


def _class_value(cp, cycle_type):
    lam = parse_partition(cycle_type)
    return lam, cp.at(lam)


def cmd_reynolds(args, out):
    stat = _statistic(args.stat)
    if args.n is not None:
        f = stat_ch(stat, args.n)
        out.emit(str(f), {"stat": args.stat, "n": args.n, "expansion": f.to_json()})
        return
    _emit_class_poly(out, args, reynolds_poly(stat))


def _emit_class_poly(out, args, cp, **extra):
    data = {"stat": args.stat, **extra}
    if getattr(args, "cycle_type", None):
        lam, value = _class_value(cp, args.cycle_type)
        data.update({"cycle_type": list(lam), "value": _number(value)})
        out.emit(_number(value), data)
        return
    cp = cp.reduced()
    data["class_polynomial"] = cp.to_json()
    out.emit(str(cp), data)


def cmd_moment(args, out):
    _emit_class_poly(out, args, moment_poly(_statistic(args.stat), args.degree), degree=args.degree)


def cmd_variance(args, out):
    _emit_class_poly(out, args, variance_poly(_statistic(args.stat)))


def cmd_limit(args, out):
    lead = leading_limit(_statistic(args.stat))
    text = "\n".join([
        f"mean/n^p -> {lead.expectation}",
        f"variance/n^(2p-1) -> g + h*beta with g = {lead.variance_g}, h = {lead.variance_h}",
    ])
    out.emit(text, {"stat": args.stat, "expectation": str(lead.expectation),
                    "variance_g": str(lead.variance_g), "variance_h": str(lead.variance_h)})


def cmd_loc_dim(args, out):
    d = loc_dim(args.n, args.k)
    data = {"n": args.n, "k": args.k, "by_lis": d.by_lis, "by_shadow": d.by_shadow, "by_hooks": d.by_hooks}
    out.emit(str(d.value), data)


def cmd_shadow(args, out):
    w = _ints(args.w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise DomainError(f"{args.w} is not a permutation in one-line notation")
    I, J, count = shadow_corners(w)
    out.emit(f"I={format_partition(I)} J={format_partition(J)} s={count}", {"I": list(I), "J": list(J), "s": count})


def cmd_sample(args, out):
    spec = SampleSpec(parse_partition(args.cycle_type), args.seed, args.count)
    values = sample_statistic(spec, args.stat, threads=args.threads)
    n = sum(spec.cycle_type)
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["seed", "n", "cycle_type", "stat", "value"])
            label = format_partition(spec.cycle_type)
            for v in values:
                writer.writerow([spec.seed, n, label, args.stat, int(v)])
    mean = float(np.mean(values))
    var = float(np.var(values.astype(float), ddof=1)) if len(values) > 1 else 0.0
    stderr = (var / len(values)) ** 0.5
    text = f"count={len(values)} mean={mean:.6f} variance={var:.6f} stderr={stderr:.6f}"
    out.emit(text, {"cycle_type": list(spec.cycle_type), "seed": spec.seed, "count": len(values),
                    "stat": args.stat, "mean": mean, "variance": var, "stderr": stderr})


def cmd_verify(args, out):
    checks = []
    for check in run_suites(args.suite, args.n_max):
        checks.append(check)
        if out.fmt == "text":
            print(check.line(), flush=True)
    ok = all(c.ok for c in checks)
    if out.fmt == "json":
        out.emit("", {"ok": ok, "checks": [c.__dict__ for c in checks]})
    else:
        print(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    return EXIT_OK if ok else EXIT_VERIFY


# parser -----------------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="charstat", description="Exact class-function moments of permutation statistics.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--threads", type=int, default=1, help="worker cap for sampling")
    # the same flags after the subcommand; SUPPRESS keeps the top-level defaults
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    a = command("expand-path", "expand a path power sum")
    a.add_argument("--mu", required=True)
    a.add_argument("--basis", choices=tuple(_PATH_BASES), default="schur")
    a.set_defaults(run=cmd_expand_path)

    a = command("atomic", "expand the atomic function of a partial permutation")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--I", required=True)
    a.add_argument("--J", required=True)
    a.add_argument("--basis", choices=tuple(_ATOMIC_BASES), default="schur")
    a.set_defaults(run=cmd_atomic)

    a = command("char", "irreducible character on a class or a coset")
    a.add_argument("--lambda", dest="lam", required=True)
    a.add_argument("--mu")
    a.add_argument("--partial", help="'n=7;I=1,4,5,6,7;J=2,5,6,4,7'")
    a.set_defaults(run=cmd_char)

    a = command("char-poly", "character polynomial of lambda")
    a.add_argument("--lambda", dest="lam", required=True)
    a.set_defaults(run=cmd_char_poly)

    a = command("reynolds", "class average of a statistic")
    a.add_argument("--stat", required=True)
    mode = a.add_mutually_exclusive_group()
    mode.add_argument("--n", type=int, help="Schur expansion of the characteristic image at this n")
    mode.add_argument("--symbolic", action="store_true", help="class polynomial (default)")
    mode.add_argument("--cycle-type", help="value on one conjugacy class")
    a.set_defaults(run=cmd_reynolds)

    a = command("moment", "d-th conditional moment")
    a.add_argument("--stat", required=True)
    a.add_argument("--degree", type=int, default=1)
    a.add_argument("--cycle-type")
    a.set_defaults(run=cmd_moment)

    a = command("variance", "conditional variance")
    a.add_argument("--stat", required=True)
    a.add_argument("--cycle-type")
    a.set_defaults(run=cmd_variance)

    a = command("limit", "leading asymptotics of mean and variance")
    a.add_argument("--stat", required=True)
    a.set_defaults(run=cmd_limit)

    a = command("loc-dim", "dimension of the k-local class functions on S_n")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--k", type=int, required=True)
    a.set_defaults(run=cmd_loc_dim)

    a = command("shadow", "shadow-line corners of a permutation")
    a.add_argument("--w", required=True)
    a.set_defaults(run=cmd_shadow)

    a = command("sample", "Monte Carlo over a conjugacy class")
    a.add_argument("--cycle-type", required=True)
    a.add_argument("--count", type=int, default=100_000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--stat", default="exc", choices=BUILTIN_NAMES)
    a.add_argument("--csv", help="write per-sample rows to this file")
    a.set_defaults(run=cmd_sample)

    a = command("verify", "cross-check every pipeline against its oracle")
    a.add_argument("--suite", choices=("all",) + SUITES, default="all")
    a.add_argument("--n-max", type=int, default=7)
    a.set_defaults(run=cmd_verify)
    return parser


def run(argv=None):
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        code = args.run(args, out)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


def main(argv=None):
    sys.exit(run(argv))
