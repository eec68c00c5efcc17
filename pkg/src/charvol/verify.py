"""Deterministic verification scenarios over randomized representations.

Each scenario draws fresh inputs per trial from a seed derived by
hashing (master_seed, trial_index), so runs are reproducible and
trial-level parallelism cannot change the report: records are collected
in trial order and serialized without timing data.

Two scenario kinds:

* ratio-sign: lhs/rhs must have modulus 1 within tolerance and the
  rounded signed ratio must be the same element of {+1, -1} in every
  trial of a run;
* identity: a scenario-specific residual must stay below tolerance.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, SizeMismatch
from .matcore import (companion_section, draw_group_element, frame_coords,
                      is_regular, sigma, sigma_derivative_cocycle,
                      standard_frame)
from .repcoh import (Cocycle, Representation, bending_cocycle,
                     circle_cohomology, evaluate, h1_basis_rose, is_good,
                     margin_values, random_good_rep, relative_tangent_basis,
                     surface_config)
from .torsion import (nu_squared_via_torsion, nu_via_sigma, rose_volume_eval,
                      su_nu_check, vandermonde_newton_values, witten_check)
from .traces import (coordinate_volume, d_t, f3_quadratic_check,
                     fricke_identity_check, goldman_bracket,
                     sl3_invariant_pair, t, variation_sl2)

REPORT_SCHEMA = "charvol-report-v1"


@dataclass
class TrialResult:
    lhs: complex
    rhs: complex
    ratio: complex
    residual: float
    passed: bool
    margins: dict
    wall_time_s: float = 0.0


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str  # "ratio-sign" or "identity"
    description: str
    default_trials: int
    tolerance: float
    runner: object

    def run_trial(self, seed: int, tol: float) -> TrialResult:
        start = time.perf_counter()
        result = self.runner(seed, tol)
        result.wall_time_s = time.perf_counter() - start
        return result


def derive_seed(master_seed: int, trial: int) -> int:
    """Stable per-trial seed: first 8 bytes of sha256('master:trial')."""
    digest = hashlib.sha256(f"{int(master_seed)}:{int(trial)}".encode())
    return int.from_bytes(digest.digest()[:8], "little")


def _ratio_result(lhs, rhs, tol, margins) -> TrialResult:
    ratio = lhs / rhs
    residual = abs(abs(ratio) - 1.0)
    return TrialResult(lhs=complex(lhs), rhs=complex(rhs),
                       ratio=complex(ratio), residual=float(residual),
                       passed=bool(residual <= tol), margins=margins)


def _volume_runner(key, n, k, margin_names):
    margins = {name: 0.1 for name in margin_names}

    def run(seed, tol):
        rep = random_good_rep(n, k, margins=margins, seed=seed)
        basis = h1_basis_rose(rep)
        lhs = rose_volume_eval(rep, basis.classes).value
        rhs = coordinate_volume(rep, key, basis.classes)
        return _ratio_result(lhs, rhs, tol, margin_values(rep, margin_names))
    return run


def _witten_runner(kind, n, margin_names):
    cfg = surface_config(kind)
    margins = {name: 0.1 for name in margin_names}

    def run(seed, tol):
        rep = random_good_rep(n, cfg.k, cfg=cfg, margins=margins, seed=seed)
        out = witten_check(rep, cfg)
        return _ratio_result(out["lhs"], out["rhs"], tol, out["margins"])
    return run


def _draw_regular(rng, n):
    for _ in range(200):
        a = draw_group_element(rng, n)
        if is_regular(a):
            return a
    raise BudgetExceeded(f"no regular SL{n} element in 200 draws")


def _nu_consistency_runner(seed, tol):
    rng = np.random.default_rng(seed)
    worst = 0.0
    lhs = rhs = 1.0 + 0j
    for n in (2, 3, 4):
        a = _draw_regular(rng, n)
        _, h1 = circle_cohomology(a)
        via_torsion = nu_squared_via_torsion(a, h1)
        via_sigma = nu_via_sigma(a, h1) ** 2
        rel = abs(via_sigma - via_torsion) / max(abs(via_torsion), 1e-300)
        if rel >= worst:
            worst, lhs, rhs = rel, via_sigma, via_torsion
    return TrialResult(lhs=lhs, rhs=rhs, ratio=lhs / rhs,
                       residual=float(worst), passed=bool(worst <= tol),
                       margins={})


def _su_nu_runner(seed, tol):
    rng = np.random.default_rng(seed)
    worst = 0.0
    lhs = rhs = 1.0 + 0j
    for n in (2, 3):
        for _ in range(50):
            th = rng.uniform(-np.pi, np.pi, n - 1)
            th = np.concatenate([th, [-th.sum()]])
            if min(abs(np.exp(1j * th[i]) - np.exp(1j * th[j]))
                   for i in range(n) for j in range(i)) > 1e-2:
                break
        route_a, route_b = su_nu_check(th)
        rel = abs(abs(route_a) - abs(route_b)) / max(abs(route_b), 1e-300)
        if rel >= worst:
            worst, lhs, rhs = rel, route_a, route_b
    return TrialResult(lhs=lhs, rhs=rhs, ratio=lhs / rhs,
                       residual=float(worst), passed=bool(worst <= tol),
                       margins={})


_S04 = surface_config("s04")
_S11 = surface_config("s11")
_S03 = surface_config("s03")
_S03_SL3 = surface_config("s03_sl3")


def _goldman_runner(seed, tol):
    rng = np.random.default_rng(seed)
    a = draw_group_element(rng, 2)
    b = draw_group_element(rng, 2)
    pair = Representation((a, b))
    lhs_var = complex(np.trace(variation_sl2(a) @ variation_sl2(b)))
    rhs_var = (t(pair, (1, 2)) - t(pair, (1, -2))) / 2.0
    res_var = abs(lhs_var - rhs_var)
    rep = random_good_rep(2, 3, cfg=_S04, margins={"s04_chart": 0.1},
                          seed=derive_seed(seed, 1))
    bracket = goldman_bracket(rep, "s04")
    gap = t(rep, (1, 2, 2, 3)) - t(rep, (1, 2, 3, 2))
    res_bracket = abs(abs(bracket) - abs(gap)) / abs(gap)
    passed = res_var <= 1e-10 and res_bracket <= tol
    return TrialResult(lhs=complex(bracket), rhs=complex(gap),
                       ratio=bracket / gap,
                       residual=float(max(res_var, res_bracket)),
                       passed=bool(passed),
                       margins=margin_values(rep, ("s04_chart",)))


def _bending_runner(seed, tol):
    rep = random_good_rep(2, 3, cfg=_S04, margins={"s04_chart": 0.1},
                          seed=seed)
    lam = evaluate(rep, (1, 2))
    a = 0.5 * (lam - np.linalg.inv(lam))
    beta = bending_cocycle(rep, {3}, a, invariant_under=(1, 2))
    killed = abs(d_t(rep, (1, 2), beta))
    lhs = d_t(rep, (2, 3), beta)
    rhs = t(rep, (1, 2, 3, 2)) - t(rep, (1, 2, 2, 3))
    rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    passed = killed <= 1e-9 and rel <= tol
    return TrialResult(lhs=complex(lhs), rhs=complex(rhs), ratio=lhs / rhs,
                       residual=float(max(killed, rel)), passed=bool(passed),
                       margins=margin_values(rep, ("s04_chart",)))


_FIXED_A = np.array([[2.0, 1.0], [1.0, 1.0]], dtype=complex)
_FIXED_B = np.array([[1.0, 1.0], [1.0, 2.0]], dtype=complex)


def _trace_identity_runner(seed, tol):
    rng = np.random.default_rng(seed)
    fixed = Representation((_FIXED_A, _FIXED_B))
    res = list(fricke_identity_check(_FIXED_A, _FIXED_B))
    res.append(abs(t(fixed, (1, 2, -1, -2)) - (-2.0)))
    a = draw_group_element(rng, 2)
    b = draw_group_element(rng, 2)
    res.extend(fricke_identity_check(a, b))
    rep = random_good_rep(2, 3, seed=derive_seed(seed, 1))
    quad = f3_quadratic_check(rep)
    res.extend(quad.values())
    worst = max(res)
    lhs = t(rep, (1, 2, 3)) + t(rep, (2, 1, 3))
    rhs = (t(rep, (1,)) * t(rep, (2, 3)) + t(rep, (2,)) * t(rep, (1, 3))
           + t(rep, (3,)) * t(rep, (1, 2))
           - t(rep, (1,)) * t(rep, (2,)) * t(rep, (3,)))
    return TrialResult(lhs=complex(lhs), rhs=complex(rhs), ratio=lhs / rhs,
                       residual=float(worst), passed=bool(worst <= tol),
                       margins={})


_EXPECTED_RELATIVE = ((_S03, 2, {}, 0),
                      (_S11, 2, {"s11_chart": 0.1}, 2),
                      (_S04, 2, {"s04_chart": 0.1}, 2),
                      (_S03_SL3, 3, {"sl3_comm_12": 0.1}, 2))


def _dimensions_runner(seed, tol):
    observed = expected = 0
    sub = 0
    for n in (2, 3):
        for k in (2, 3, 4, 5):
            rep = random_good_rep(n, k, seed=derive_seed(seed, sub))
            sub += 1
            observed += len(h1_basis_rose(rep).classes)
            expected += (k - 1) * (n * n - 1)
    for cfg, n, margins, dim in _EXPECTED_RELATIVE:
        rep = random_good_rep(n, cfg.k, cfg=cfg, margins=margins,
                              seed=derive_seed(seed, sub))
        sub += 1
        observed += len(relative_tangent_basis(rep, cfg).classes)
        expected += dim
    ok = observed == expected
    return TrialResult(lhs=complex(observed), rhs=complex(expected),
                       ratio=complex(1.0 if ok else 0.0),
                       residual=float(abs(observed - expected)),
                       passed=bool(ok), margins={})


def _subspace_gap(frame, span_a, span_b) -> float:
    qa, _ = np.linalg.qr(np.column_stack([frame_coords(frame, x)
                                          for x in span_a]))
    qb, _ = np.linalg.qr(np.column_stack([frame_coords(frame, x)
                                          for x in span_b]))
    return float(np.linalg.norm(qa @ qa.conj().T - qb @ qb.conj().T, 2))


def _regularity_runner(seed, tol):
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        a = draw_group_element(rng, 3)
        b = draw_group_element(rng, 3)
        rep = Representation((a, b))
        comm_gap = abs(t(rep, (1, 2, -1, -2)) - t(rep, (2, 1, -2, -1)))
        if comm_gap > 0.1:
            break
    else:
        raise BudgetExceeded("no SL3 pair with commutator-trace margin")
    counterexample = not (is_regular(a) and is_regular(b) and is_good(rep))
    frame = standard_frame(3)
    x, y = sl3_invariant_pair(a)
    h0, _ = circle_cohomology(a, frame=frame)
    gap = _subspace_gap(frame, [x, y], h0)
    companion_worst = 0.0
    for n in range(2, 7):
        p = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        companion_worst = max(companion_worst,
                              float(np.abs(sigma(companion_section(p))
                                           - p).max()))
    passed = (not counterexample) and gap <= tol and companion_worst <= 1e-10
    return TrialResult(lhs=complex(gap), rhs=0j,
                       ratio=complex(0.0 if counterexample else 1.0),
                       residual=float(max(gap, companion_worst,
                                          1.0 if counterexample else 0.0)),
                       passed=bool(passed),
                       margins={"sl3_comm_12": float(comm_gap)})


def _word_product(mats, inverses, word):
    out = np.eye(mats[0].shape[0], dtype=complex)
    for l in word:
        out = out @ (mats[l - 1] if l > 0 else inverses[-l - 1])
    return out


def _derivative_runner(seed, tol):
    rng = np.random.default_rng(seed)
    eps = 1e-5
    n = int(rng.choice([2, 3]))
    k = 2
    gens = [draw_group_element(rng, n) for _ in range(k)]
    rep = Representation(tuple(gens))

    def rand_traceless():
        v = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        return v - (np.trace(v) / n) * np.eye(n)

    vals = tuple(rand_traceless() for _ in range(k))
    coc = Cocycle(vals)
    letters = [i for i in range(-k, k + 1) if i]
    word = tuple(int(l) for l in rng.choice(letters,
                                            size=int(rng.integers(2, 7))))
    analytic = d_t(rep, word, coc)
    traces = []
    for sgn in (+1, -1):
        eye = np.eye(n)
        mats = [(eye + sgn * eps * v) @ g for v, g in zip(vals, gens)]
        invs = [np.linalg.inv(m) for m in mats]
        traces.append(np.trace(_word_product(mats, invs, word)))
    numeric = (traces[0] - traces[1]) / (2 * eps)
    res_t = abs(analytic - numeric) / max(1.0, abs(analytic))

    m = int(rng.choice([2, 3, 4]))
    a = draw_group_element(rng, m)
    v = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    v = v - (np.trace(v) / m) * np.eye(m)
    d_an = sigma_derivative_cocycle(a, v)
    d_num = (sigma((np.eye(m) + eps * v) @ a)
             - sigma((np.eye(m) - eps * v) @ a)) / (2 * eps)
    res_s = float(np.max(np.abs(d_an - d_num)
                         / np.maximum(1.0, np.abs(d_an))))
    worst = max(float(res_t), res_s)
    return TrialResult(lhs=complex(analytic), rhs=complex(numeric),
                       ratio=complex(analytic / numeric),
                       residual=worst, passed=bool(worst <= tol), margins={})


def _vandermonde_runner(seed, tol):
    rng = np.random.default_rng(seed)
    worst = 0.0
    lhs = rhs = 1.0 + 0j
    for n in (2, 3, 4):
        u = rng.normal(size=n) + 1j * rng.normal(size=n)
        u = u - u.mean()
        l, r = vandermonde_newton_values(u)
        rel = abs(abs(l) - abs(r)) / max(abs(l), abs(r), 1e-300)
        if rel >= worst:
            worst, lhs, rhs = rel, l, r
    return TrialResult(lhs=lhs, rhs=rhs, ratio=lhs / rhs,
                       residual=float(worst), passed=bool(worst <= tol),
                       margins={})


SCENARIOS = {}


def _register(scenario: Scenario):
    SCENARIOS[scenario.name] = scenario


_register(Scenario("volume-f2-sl2", "ratio-sign",
                   "rose torsion vs 2*sqrt2 dt1^dt2^dt12 (SL2, rank 2)",
                   50, 1e-7, _volume_runner("f2_sl2", 2, 2, ())))
_register(Scenario("volume-f3-sl2", "ratio-sign",
                   "rose torsion vs six-trace chart with quadratic-gap "
                   "denominator (SL2, rank 3)",
                   50, 1e-7, _volume_runner("f3_sl2", 2, 3, ("f3_chart",))))
_register(Scenario("volume-f4-sl2", "ratio-sign",
                   "rose torsion vs petal-product chart (SL2, rank 4)",
                   50, 1e-7, _volume_runner("fk_sl2:4", 2, 4,
                                            ("f3_chart", "f4_chart"))))
_register(Scenario("volume-f2-sl3", "ratio-sign",
                   "rose torsion vs eight-trace chart (SL3, rank 2)",
                   50, 1e-6, _volume_runner("f2_sl3", 3, 2,
                                            ("sl3_comm_12",))))
_register(Scenario("volume-f3-sl3", "ratio-sign",
                   "rose torsion vs sixteen-trace chart (SL3, rank 3)",
                   50, 1e-6, _volume_runner("fk_sl3:3", 3, 3,
                                            ("sl3_comm_12", "sl3_comm_13",
                                             "sl3_delta_23"))))
_register(Scenario("witten-s11-sl2", "ratio-sign",
                   "factorization omega ^ nu on the one-holed torus (SL2)",
                   50, 1e-6, _witten_runner("s11", 2, ("s11_chart",))))
_register(Scenario("witten-s04-sl2", "ratio-sign",
                   "factorization omega ^ nu^4 on the four-holed sphere "
                   "(SL2)",
                   50, 1e-6, _witten_runner("s04", 2, ("s04_chart",))))
_register(Scenario("witten-s03-sl2", "ratio-sign",
                   "factorization nu^3 on the three-holed sphere (SL2)",
                   50, 1e-6, _witten_runner("s03", 2, ())))
_register(Scenario("witten-s03-sl3", "ratio-sign",
                   "factorization omega ^ nu^3 on the three-holed sphere "
                   "(SL3)",
                   50, 1e-6, _witten_runner("s03_sl3", 3, ("sl3_comm_12",))))
_register(Scenario("nu-consistency", "identity",
                   "nu^2 via torsion equals nu via characters squared "
                   "(N = 2, 3, 4)",
                   100, 1e-8, _nu_consistency_runner))
_register(Scenario("goldman-identities", "identity",
                   "variation trace identity and two-point bracket "
                   "magnitude",
                   100, 1e-8, _goldman_runner))
_register(Scenario("bending", "identity",
                   "bending kills the split trace and pairs to the chart "
                   "gap",
                   50, 1e-8, _bending_runner))
_register(Scenario("trace-identities", "identity",
                   "product rule, commutator polynomial, rank-3 quadratic",
                   100, 1e-8, _trace_identity_runner))
_register(Scenario("su-nu", "identity",
                   "nu via characters vs sine product on unitary diagonals",
                   50, 1e-6, _su_nu_runner))
_register(Scenario("dimensions", "identity",
                   "H^1 and relative tangent dimensions (k <= 5, N <= 3)",
                   5, 0.0, _dimensions_runner))
_register(Scenario("regularity-lemmas", "identity",
                   "commutator-gap implies regular+good; centralizer span; "
                   "companion round-trip",
                   200, 1e-8, _regularity_runner))
_register(Scenario("derivative-oracle", "identity",
                   "analytic trace/character derivatives vs central "
                   "differences",
                   100, 1e-5, _derivative_runner))
_register(Scenario("vandermonde-newton", "identity",
                   "symmetric-function Jacobian vs Vandermonde product",
                   50, 1e-8, _vandermonde_runner))


def thread_count(explicit=None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("CHARVOL_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _record(scenario: Scenario, trial: int, seed: int,
            result: TrialResult) -> dict:
    return {
        "scenario": scenario.name,
        "trial": trial,
        "seed": seed,
        "lhs": [result.lhs.real, result.lhs.imag],
        "rhs": [result.rhs.real, result.rhs.imag],
        "ratio": [result.ratio.real, result.ratio.imag],
        "residual": result.residual,
        "pass": result.passed,
        "margins": result.margins,
    }


def run_scenario(name: str, master_seed: int = 0, trials: int | None = None,
                 tolerance: float | None = None,
                 threads: int | None = None) -> tuple[dict, float]:
    """Run one scenario; returns (report dict, elapsed seconds).

    The report is canonical: identical (master_seed, trials, tolerance)
    give byte-identical serializations regardless of thread count.
    """
    if name not in SCENARIOS:
        raise SizeMismatch(f"unknown scenario {name!r}")
    scenario = SCENARIOS[name]
    trials = scenario.default_trials if trials is None else int(trials)
    tol = scenario.tolerance if tolerance is None else float(tolerance)
    seeds = [derive_seed(master_seed, i) for i in range(trials)]
    start = time.perf_counter()
    workers = thread_count(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: scenario.run_trial(s, tol),
                                    seeds))
    else:
        results = [scenario.run_trial(s, tol) for s in seeds]
    elapsed = time.perf_counter() - start
    records = [_record(scenario, i, seeds[i], r)
               for i, r in enumerate(results)]
    passed = sum(1 for r in results if r.passed)
    summary = {
        "scenario": scenario.name,
        "kind": scenario.kind,
        "master_seed": int(master_seed),
        "trials": trials,
        "tolerance": tol,
        "passed": passed,
        "failed": trials - passed,
    }
    if scenario.kind == "ratio-sign":
        signs = {int(round(r.ratio.real)) for r in results}
        constant = (len(signs) == 1 and signs <= {1, -1}
                    and all(abs(r.ratio.imag) <= 10 * max(tol, 1e-12)
                            for r in results))
        summary["sign"] = signs.pop() if constant else None
        summary["sign_constant"] = bool(constant)
        summary["all_pass"] = bool(passed == trials and constant)
    else:
        summary["all_pass"] = bool(passed == trials)
    report = {
        "schema": REPORT_SCHEMA,
        "scenario": scenario.name,
        "description": scenario.description,
        "records": records,
        "summary": summary,
    }
    return report, elapsed


def report_json(report: dict) -> str:
    """Canonical serialization used for files and byte-level comparisons."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
