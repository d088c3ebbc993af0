"""Command line: ``qbmeasure table | verify SUITE | integrate``.

Exit codes: 0 all checks pass, 1 an identity was violated, 2 bad usage.
"""
from __future__ import annotations

import argparse
import os
import random
import re
import sys
from fractions import Fraction
from math import gcd

from .characters import character, character_from_exponents, enumerate_characters, generalized_beta
from .errors import DegenerateEquation, PoleAtOne
from .integral import RiemannSumSpec, riemann_sum_exact, witt_convergence
from .padic import INF, QPoint, vp
from .qbernoulli import family_table
from .report import document, render_csv, render_json, results_csv
from .suites import SUITES, chi_params, run_suite

DEFAULT_PREC = 12


class ConfigError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"invalid --{field}: {message}")
        self.field = field


# ---------------------------------------------------------------------------
# value parsers


def parse_range(text: str, field: str, minimum: int | None = None) -> list[int]:
    """'1..3,5' -> [1, 2, 3, 5] (order kept, duplicates dropped)."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        try:
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if hi < lo:
                    raise ConfigError(field, f"empty range {part!r}")
                vals = range(lo, hi + 1)
            else:
                vals = [int(part)]
        except ValueError:
            raise ConfigError(field, f"cannot parse {part!r}") from None
        for v in vals:
            if minimum is not None and v < minimum:
                raise ConfigError(field, f"value {v} is below {minimum}")
            if v not in out:
                out.append(v)
    if not out:
        raise ConfigError(field, "grid is empty")
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def parse_primes(text: str) -> list[int]:
    ps = parse_range(text, "p")
    for p in ps:
        if not _is_prime(p):
            raise ConfigError("p", f"{p} is not prime")
    return ps


def parse_q(text: str, p: int) -> Fraction:
    """Exact base point: '1+3', '1+p', '4', '7/4'.  Floats are refused."""
    s = text.replace(" ", "").replace("p", str(p))
    m = re.fullmatch(r"(-?\d+)\+(-?\d+)", s)
    try:
        if m:
            q = Fraction(int(m.group(1)) + int(m.group(2)))
        elif re.fullmatch(r"-?\d+(/\d+)?", s):
            q = Fraction(s)
        else:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise ConfigError("q", f"{text!r} is not an exact rational like '1+3' or 'a/b'") from None
    if vp(q - 1, p) < 1:
        raise ConfigError("q", f"q = {q} does not satisfy |q - 1|_{p} < 1")
    return q


def parse_chi(labels: list[str], tables: list[str]) -> list[dict]:
    chars = []
    for token in labels or []:
        m = re.fullmatch(r"(\d+):(\d+|\*)", token.strip())
        if not m:
            raise ConfigError("chi", f"expected d:j or d:*, got {token!r}")
        d = int(m.group(1))
        if d < 1:
            raise ConfigError("chi", "modulus must be positive")
        if m.group(2) == "*":
            chars.extend(enumerate_characters(d))
        else:
            try:
                chars.append(character(d, int(m.group(2))))
            except ValueError as exc:
                raise ConfigError("chi", str(exc)) from None
    for token in tables or []:
        m = re.fullmatch(r"(\d+):(-?\d+(?:,-?\d+)*)?", token.strip())
        if not m:
            raise ConfigError("chi-table", f"expected d:e1,e2,..., got {token!r}")
        exps = [int(e) for e in m.group(2).split(",")] if m.group(2) else []
        try:
            chars.append(character_from_exponents(int(m.group(1)), exps))
        except ValueError as exc:
            raise ConfigError("chi-table", str(exc)) from None
    return [chi_params(c) for c in chars]


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(name, f"environment value {raw!r} is not an integer") from None


# ---------------------------------------------------------------------------
# argument parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbmeasure", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="tables of numbers and polynomials")
    t.add_argument("--family", required=True,
                   choices=("xi", "carlitz", "extended", "weighted", "polynomial", "generalized"))
    t.add_argument("--alpha", type=int, default=1)
    t.add_argument("--h", type=int, default=1)
    t.add_argument("--max-n", type=int, default=4)
    t.add_argument("--x", type=int, default=0, help="argument of the polynomial family")
    t.add_argument("--chi", action="append", help="character d:j (generalized family)")
    t.add_argument("--chi-table", action="append")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite over a grid")
    v.add_argument("suite", choices=SUITES)
    for flag in ("p", "alpha", "k", "n", "d", "x", "y", "levels", "beta", "q"):
        v.add_argument(f"--{flag}")
    v.add_argument("--chi", action="append")
    v.add_argument("--chi-table", action="append")
    v.add_argument("--seed-function", choices=("beta", "constant"), default="beta",
                   help="seed of the candidate measure (additivity, theorem2)")
    v.add_argument("--prec", type=int, help="certified target precision (env QBM_PREC)")
    v.add_argument("--guard", type=int, default=10)
    v.add_argument("--workers", type=int, help="worker processes (env QBM_WORKERS)")
    v.add_argument("--sample", type=int, help="run a random subset of this many cases")
    v.add_argument("--seed", type=int, default=0, help="RNG seed used by --sample")

    i = sub.add_parser("integrate", parents=[common], help="truncated Riemann sums and Witt profiles")
    i.add_argument("--p", required=True)
    i.add_argument("--q", default="1+p")
    i.add_argument("--alpha", type=int, default=1)
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--shift", type=int, default=0)
    i.add_argument("--levels", default="1..5")
    i.add_argument("--floor-offset", type=int, default=2)
    return parser


# ---------------------------------------------------------------------------
# commands


def cmd_table(args) -> tuple[int, str]:
    fam = args.family
    if args.max_n < 0:
        raise ConfigError("max-n", "must be nonnegative")
    if fam in ("weighted", "polynomial", "generalized") and args.alpha < 1:
        raise ConfigError("alpha", "weight must be a positive integer")
    cyc = 1
    if fam == "generalized":
        chars = parse_chi(args.chi, args.chi_table)
        if len(chars) != 1:
            raise ConfigError("chi", "the generalized family needs exactly one character")
        c = chars[0]
        chi = character_from_exponents(c["modulus"], c["components"], c["index"])
        cyc = chi.order
        rows = []
        for n in range(args.max_n + 1):
            value = generalized_beta(chi, args.alpha, n)
            try:
                limit = str(value.eval_at_one())
            except PoleAtOne:
                limit = "pole"
            rows.append({"family": fam, "param": args.alpha, "n": n, "value": str(value), "limit": limit})
        grid = {"family": fam, "alpha": args.alpha, "max_n": args.max_n, "chi": c}
    else:
        param = {"xi": None, "carlitz": None, "extended": args.h}.get(fam, args.alpha)
        if fam == "extended" and args.h == 0:
            raise ConfigError("h", "must be nonzero")
        kind = "weighted" if fam == "polynomial" else fam
        x = args.x if fam == "polynomial" else None
        try:
            rows = family_table(kind, param, args.max_n, x)
        except DegenerateEquation as exc:
            raise ConfigError("h", str(exc)) from None
        for r in rows:
            r["family"] = fam
        grid = {"family": fam, "param": param, "max_n": args.max_n}
        if x is not None:
            grid["x"] = x
    if args.format == "csv":
        return 0, render_csv(rows, ["family", "param", "n", "value", "limit"])
    doc = {"command": "table", "grid": grid, "cyclotomic_order": cyc, "rows": rows}
    return 0, render_json(doc)


_DEFAULTS = {
    "distribution": {"alpha": "1..3", "n": "0..5", "d": "1..4", "x": "0"},
    "additivity": {"p": "2,3,5", "d": "1,2,4", "levels": "0,1", "k": "0..4", "alpha": "1,2"},
    "theorem2": {"p": "2,3,5", "levels": "0,1", "k": "0..4", "alpha": "1,2"},
    "mass": {"p": "2,3,5", "d": "1,2,4", "levels": "0..3", "k": "0..4", "alpha": "1,2"},
    "theorem5": {"p": "3", "levels": "0..2", "k": "0..3", "alpha": "1,2"},
    "composition": {"x": "2..5", "y": "2..5", "k": "0..3", "alpha": "1,2"},
    "eq22": {"p": "3", "q": "1+p", "beta": "5", "k": "0..3", "alpha": "1,2"},
}
_DEFAULT_CHI = {"theorem5": ["4:*", "5:*"], "composition": ["4:*"], "eq22": ["4:*"]}
_MINIMUM = {"alpha": 1, "n": 0, "k": 0, "d": 1, "x": 0, "y": 1, "levels": 0, "beta": 1}


def resolve_grid(args) -> dict:
    suite = args.suite
    defaults = _DEFAULTS[suite]
    grid: dict = {}
    for name in ("p", "alpha", "k", "n", "d", "x", "y", "levels", "beta"):
        raw = getattr(args, name)
        if raw is None and name not in defaults:
            continue
        raw = raw if raw is not None else defaults[name]
        grid[name] = parse_primes(raw) if name == "p" else parse_range(raw, name, _MINIMUM[name])
    if suite in ("additivity", "theorem2"):
        grid["seed"] = args.seed_function
    if suite in _DEFAULT_CHI:
        chars = parse_chi(args.chi, args.chi_table)
        grid["chi"] = chars or parse_chi(_DEFAULT_CHI[suite], [])
    prec = args.prec if args.prec is not None else _env_int("QBM_PREC", DEFAULT_PREC)
    if prec < 1:
        raise ConfigError("prec", "precision must be at least 1")
    q_text = args.q if args.q is not None else defaults.get("q")
    if q_text is not None:
        grid["q"] = {p: str(parse_q(q_text, p)) for p in grid.get("p", [])}
        grid["prec"] = prec
        grid["guard"] = args.guard
    if suite == "eq22":
        if grid["guard"] < 0:
            raise ConfigError("guard", "must be nonnegative")
        for b in grid["beta"]:
            for c in grid["chi"]:
                if gcd(b, c["modulus"]) != 1:
                    raise ConfigError("beta", f"{b} is not a unit mod {c['modulus']}")
            for p in grid["p"]:
                if b % p == 0:
                    raise ConfigError("beta", f"{b} is divisible by p = {p}")
    _filter_coprime(suite, grid)
    return grid


def _filter_coprime(suite: str, grid: dict):
    """Drop (d, p) pairs with a common factor, recording what was skipped."""
    if "p" not in grid:
        return
    if suite in ("additivity", "mass"):
        skipped = [[d, p] for p in grid["p"] for d in grid["d"] if gcd(d, p) != 1]
        left = len(grid["p"]) * len(grid["d"]) - len(skipped)
        field = "d"
    elif suite in ("theorem5", "eq22"):
        skipped = [[c["modulus"], p] for p in grid["p"] for c in grid["chi"] if gcd(c["modulus"], p) != 1]
        left = len(grid["p"]) * len(grid["chi"]) - len(skipped)
        field = "chi"
        if suite == "eq22" and skipped:
            raise ConfigError("chi", f"modulus/prime pairs {skipped} are not coprime")
    else:
        return
    if left == 0:
        raise ConfigError(field, "no (modulus, p) pair in the grid is coprime")
    if skipped:
        grid["skipped_pairs"] = skipped


def cmd_verify(args) -> tuple[int, str]:
    grid = resolve_grid(args)
    workers = args.workers if args.workers is not None else _env_int("QBM_WORKERS", 1)
    if workers < 1:
        raise ConfigError("workers", "must be at least 1")
    if args.sample is not None:
        if args.sample < 1:
            raise ConfigError("sample", "must be positive")
        grid["sample"] = {"size": args.sample, "seed": args.seed}
    results = run_suite(args.suite, grid, workers, sample=_sampler(args))
    cyc = 1
    for c in grid.get("chi", []):
        o = character_from_exponents(c["modulus"], c["components"]).order
        cyc = cyc * o // gcd(cyc, o)
    doc = document("verify", args.suite, grid, results, cyc)
    code = 0 if doc["summary"]["failures"] == 0 else 1
    return code, results_csv(doc) if args.format == "csv" else render_json(doc)


def _sampler(args):
    if args.sample is None:
        return None
    rng = random.Random(args.seed)

    def pick(cases):
        if args.sample >= len(cases):
            return cases
        keep = sorted(rng.sample(range(len(cases)), args.sample))
        return [cases[i] for i in keep]

    return pick


def cmd_integrate(args) -> tuple[int, str]:
    ps = parse_primes(args.p)
    if len(ps) != 1:
        raise ConfigError("p", "integrate takes a single prime")
    p = ps[0]
    q = parse_q(args.q, p)
    if args.alpha < 1:
        raise ConfigError("alpha", "weight must be a positive integer")
    if args.n < 0:
        raise ConfigError("n", "must be nonnegative")
    if args.shift < 0:
        raise ConfigError("shift", "must be nonnegative")
    levels = parse_range(args.levels, "levels", 1)
    prof = witt_convergence(args.alpha, args.n, args.shift, p, QPoint.of(p, q), max(levels),
                            args.floor_offset, levels)
    rows = []
    for N, v in prof.levels:
        s = riemann_sum_exact(RiemannSumSpec(p, N, args.n, args.alpha, args.shift), q).to_fraction()
        rows.append({"N": N, "S_N": str(s), "valuation": "inf" if v == INF else v})
    grid = {"p": p, "q": str(q), "alpha": args.alpha, "n": args.n, "shift": args.shift,
            "levels": levels, "floor_offset": args.floor_offset}
    code = 0 if prof.above_floor else 1
    if args.format == "csv":
        return code, render_csv(rows, ["N", "S_N", "valuation"])
    doc = {
        "command": "integrate",
        "grid": grid,
        "cyclotomic_order": 1,
        "target": str(prof.target),
        "target_at_q": str(prof.target.eval_rational(q).to_fraction()),
        "levels": rows,
        "nondecreasing": prof.nondecreasing,
        "above_floor": prof.above_floor,
    }
    return code, render_json(doc)


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "integrate": cmd_integrate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        code, text = COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"qbmeasure: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
