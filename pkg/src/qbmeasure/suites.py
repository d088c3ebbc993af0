"""Verification suites: grid expansion and one runner per case.

Runners are module-level functions of a plain ``params`` dict so that grid
cases can be shipped to worker processes.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from .characters import DirichletChar, character_from_exponents, generalized_beta
from .measure import (
    BETA_SEED,
    CONSTANT_SEED,
    Ball,
    additivity_check,
    chi_operator,
    eq22_check,
    integral_char_pX,
    integral_char_X,
    partial_sum_pX,
    partial_sum_X,
    theorem2_criterion,
    total_mass,
)
from .padic import QPoint
from .qbernoulli import distribution_check
from .report import EXACT_ZERO, FAIL, ZERO_TO_PRECISION, CheckResult

SUITES = ("distribution", "additivity", "theorem2", "mass", "theorem5", "composition", "eq22")
SEEDS = {"beta": BETA_SEED, "constant": CONSTANT_SEED}


def chi_params(chi: DirichletChar) -> dict:
    return {"modulus": chi.modulus, "components": list(chi.components), "index": chi.index}


def _chi(params: dict) -> DirichletChar:
    c = params["chi"]
    return character_from_exponents(c["modulus"], c["components"], c.get("index"))


def _exact(check: str, params: dict, diffs) -> CheckResult:
    """diffs: iterable of (label, FieldElem); first nonzero one is the witness."""
    for label, diff in diffs:
        if not diff.is_zero():
            return CheckResult(check, params, FAIL, f"{label}: {diff}" if label else str(diff))
    return CheckResult(check, params, EXACT_ZERO, "0")


# ---------------------------------------------------------------------------
# runners


def run_distribution(params: dict) -> CheckResult:
    diff = distribution_check(params["alpha"], params["n"], params["d"], params["x"])
    return _exact("distribution", params, [("", diff)])


def run_additivity(params: dict) -> CheckResult:
    p, d, N = params["p"], params["d"], params["N"]
    seed = SEEDS[params.get("seed", "beta")]
    diffs = (
        (f"a={a}", additivity_check(params["k"], params["alpha"], Ball(p, d, N, a), seed))
        for a in range(d * p**N)
    )
    return _exact("additivity", params, diffs)


def run_theorem2(params: dict) -> CheckResult:
    p, n = params["p"], params["n"]
    seed = SEEDS[params.get("seed", "beta")]
    diffs = ((f"a={a}", theorem2_criterion(params["k"], params["alpha"], p, n, a, seed)) for a in range(p**n))
    return _exact("theorem2", params, diffs)


def run_mass(params: dict) -> CheckResult:
    q = None
    if params.get("q") is not None:
        q = QPoint.of(params["p"], Fraction(params["q"]))
    report = total_mass(params["k"], params["alpha"], params["p"], params["d"], params["levels"], q, params.get("prec"))
    diffs = ((f"N={N}", s - report.target) for N, s in report.level_sums)
    result = _exact("mass", params, diffs)
    if report.level_valuations is not None:
        result.level_valuations = [v for _, v in report.level_valuations]
    return result


def run_theorem5(params: dict) -> CheckResult:
    chi = _chi(params)
    k, alpha, p = params["k"], params["alpha"], params["p"]
    closed_X = integral_char_X(chi, k, alpha)
    closed_pX = integral_char_pX(chi, k, alpha, p)
    diffs = [("X closed form vs attached number", closed_X - generalized_beta(chi, alpha, k))]
    for N in params["levels"]:
        diffs.append((f"X partial N={N}", partial_sum_X(chi, k, alpha, p, N) - closed_X))
        if N >= 1:
            diffs.append((f"pX partial N={N}", partial_sum_pX(chi, k, alpha, p, N) - closed_pX))
    return _exact("theorem5", params, diffs)


def run_composition(params: dict) -> CheckResult:
    chi = _chi(params)
    k, alpha, x, y = params["k"], params["alpha"], params["x"], params["y"]
    f = generalized_beta(chi, alpha, k)
    composed = chi_operator(chi, x, k, alpha, chi_operator(chi, y, k, alpha, f))
    direct = chi_operator(chi, x * y, k, alpha, f)
    return _exact("composition", params, [("", composed - direct)])


def run_eq22(params: dict) -> CheckResult:
    chi = _chi(params)
    q = QPoint.of(params["p"], Fraction(params["q"]))
    res = eq22_check(chi, params["k"], params["alpha"], params["beta"], q, params["prec"], params["guard"])
    status = ZERO_TO_PRECISION if res.passed else FAIL
    witness = {"difference": res.difference.to_json(), "lhs": res.lhs.to_json()}
    return CheckResult("eq22", params, status, witness, [res.certified_valuation])


RUNNERS = {
    "distribution": run_distribution,
    "additivity": run_additivity,
    "theorem2": run_theorem2,
    "mass": run_mass,
    "theorem5": run_theorem5,
    "composition": run_composition,
    "eq22": run_eq22,
}


# ---------------------------------------------------------------------------
# grids


def expand_grid(suite: str, grid: dict) -> list[dict]:
    """Deterministic list of case parameter dicts for a resolved grid."""
    cases = []
    if suite == "distribution":
        for alpha in grid["alpha"]:
            for n in grid["n"]:
                for d in grid["d"]:
                    for x in grid["x"]:
                        cases.append({"alpha": alpha, "n": n, "d": d, "x": x})
    elif suite == "additivity":
        for p in grid["p"]:
            for d in grid["d"]:
                if gcd(d, p) != 1:
                    continue
                for N in grid["levels"]:
                    for k in grid["k"]:
                        for alpha in grid["alpha"]:
                            cases.append({"p": p, "d": d, "N": N, "k": k, "alpha": alpha, "seed": grid["seed"]})
    elif suite == "theorem2":
        for p in grid["p"]:
            for n in grid["levels"]:
                for k in grid["k"]:
                    for alpha in grid["alpha"]:
                        cases.append({"p": p, "n": n, "k": k, "alpha": alpha, "seed": grid["seed"]})
    elif suite == "mass":
        for p in grid["p"]:
            for d in grid["d"]:
                if gcd(d, p) != 1:
                    continue
                for k in grid["k"]:
                    for alpha in grid["alpha"]:
                        case = {"p": p, "d": d, "k": k, "alpha": alpha, "levels": list(grid["levels"])}
                        if grid.get("q") is not None:
                            case.update(q=grid["q"].get(p), prec=grid["prec"])
                        cases.append(case)
    elif suite == "theorem5":
        for p in grid["p"]:
            for chi in grid["chi"]:
                if gcd(chi["modulus"], p) != 1:
                    continue
                for k in grid["k"]:
                    for alpha in grid["alpha"]:
                        cases.append({"p": p, "chi": chi, "k": k, "alpha": alpha, "levels": list(grid["levels"])})
    elif suite == "composition":
        for chi in grid["chi"]:
            for x in grid["x"]:
                for y in grid["y"]:
                    for k in grid["k"]:
                        for alpha in grid["alpha"]:
                            cases.append({"chi": chi, "x": x, "y": y, "k": k, "alpha": alpha})
    elif suite == "eq22":
        for p in grid["p"]:
            for chi in grid["chi"]:
                for beta in grid["beta"]:
                    for k in grid["k"]:
                        for alpha in grid["alpha"]:
                            cases.append(
                                {"p": p, "q": grid["q"][p], "chi": chi, "beta": beta, "k": k, "alpha": alpha,
                                 "prec": grid["prec"], "guard": grid["guard"]}
                            )
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return cases


def _dispatch(item):
    suite, params = item
    return RUNNERS[suite](params)


def run_suite(suite: str, grid: dict, workers: int | None = None, sample=None) -> list[CheckResult]:
    """Run every case; results are in grid order whatever the completion order.

    ``sample`` optionally maps the expanded case list to the subset to run.
    """
    cases = expand_grid(suite, grid)
    if sample is not None:
        cases = sample(cases)
    workers = workers or int(os.environ.get("QBM_WORKERS", "1"))
    items = [(suite, c) for c in cases]
    if workers <= 1 or len(items) <= 1:
        return [_dispatch(i) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_dispatch, items))
