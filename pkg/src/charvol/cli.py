"""Command-line interface: list scenarios, verify, sample, eval forms.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CharvolError
from .jsonio import representation_from_json, representation_to_json
from .repcoh import (h1_basis_rose, random_good_rep, relative_tangent_basis,
                     surface_config)
from .traces import (SYMPLECTIC_KEYS, VOLUME_KEY_EXAMPLES, coordinate_volume,
                     symplectic_eval, volume_group_rank, volume_prefactor)
from .verify import SCENARIOS, report_json, run_scenario

USAGE_ERROR = 2

# symplectic coordinate key -> surface whose relative tangent basis it eats
_SYMPLECTIC_SURFACE = {
    "s11_sl2": "s11",
    "s04_sl2": "s04",
    "s03rel_sl3": "s03_sl3",
}

# surface -> margin gates used when sampling on that surface
_SAMPLE_MARGINS = {
    "s03": {},
    "s11": {"s11_chart": 0.1},
    "s04": {"s04_chart": 0.1},
    "s03_sl3": {"sl3_comm_12": 0.1},
    "s04_sl3": {"sl3_comm_12": 0.1},
}


def _cmd_list(args) -> int:
    width = max(len(name) for name in SCENARIOS)
    for name, scenario in SCENARIOS.items():
        head = (f"[{scenario.kind}] trials={scenario.default_trials} "
                f"tol={scenario.tolerance:g}")
        print(f"{name:<{width}}  {head}")
        print(f"{'':<{width}}  {scenario.description}")
    print()
    print("volume form keys:", ", ".join(VOLUME_KEY_EXAMPLES))
    print("symplectic keys:", ", ".join(sorted(SYMPLECTIC_KEYS)))
    return 0


def _scenario_line(report: dict, elapsed: float) -> str:
    summary = report["summary"]
    worst = max((r["residual"] for r in report["records"]), default=0.0)
    flag = "PASS" if summary["all_pass"] else "FAIL"
    extra = ""
    if summary["kind"] == "ratio-sign":
        sign = summary["sign"]
        extra = (f" sign={sign:+d}" if summary["sign_constant"]
                 else " sign=UNSTABLE")
    return (f"[{flag}] {summary['scenario']}: {summary['passed']}/"
            f"{summary['trials']} trials{extra} "
            f"max_residual={worst:.3e} ({elapsed:.1f}s)")


def _cmd_verify(args) -> int:
    if args.scenario == "all":
        names = list(SCENARIOS)
    elif args.scenario in SCENARIOS:
        names = [args.scenario]
    else:
        print(f"unknown scenario {args.scenario!r}; "
              "run 'charvol list'", file=sys.stderr)
        return USAGE_ERROR
    reports = []
    ok = True
    for name in names:
        report, elapsed = run_scenario(name, master_seed=args.seed,
                                       trials=args.trials,
                                       tolerance=args.tol,
                                       threads=args.threads)
        print(_scenario_line(report, elapsed))
        ok = ok and report["summary"]["all_pass"]
        reports.append(report)
    if args.out:
        payload = reports[0] if len(reports) == 1 else {
            "schema": reports[0]["schema"],
            "reports": reports,
        }
        with open(args.out, "w") as fh:
            fh.write(report_json(payload))
        print(f"report written to {args.out}")
    return 0 if ok else 1


def _parse_group(text: str) -> int:
    if text.startswith("sl"):
        try:
            return int(text[2:])
        except ValueError:
            pass
    raise CharvolError(f"group must look like sl2, sl3, ..., got {text!r}")


def _cmd_sample(args) -> int:
    n = _parse_group(args.group)
    cfg = None
    margins = {}
    k = args.rank
    if args.surface:
        cfg = surface_config(args.surface)
        margins = _SAMPLE_MARGINS.get(args.surface, {})
        k = cfg.k
    elif k is None:
        print("sample needs --rank or --surface", file=sys.stderr)
        return USAGE_ERROR
    rep = random_good_rep(n, k, cfg=cfg, margins=margins, seed=args.seed)
    payload = representation_to_json(rep)
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"representation written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _fmt(z: complex) -> str:
    return f"{z.real:+.12e}{z.imag:+.12e}j"


def _cmd_eval(args) -> int:
    with open(args.rep) as fh:
        rep = representation_from_json(json.load(fh))
    key = args.form
    if key in _SYMPLECTIC_SURFACE:
        cfg = surface_config(_SYMPLECTIC_SURFACE[key])
        if rep.k != cfg.k:
            print(f"form {key} expects rank {cfg.k}, "
                  f"representation has rank {rep.k}", file=sys.stderr)
            return USAGE_ERROR
        basis = relative_tangent_basis(rep, cfg)
        if len(basis.classes) != 2:
            print(f"relative tangent space is {len(basis.classes)}-"
                  "dimensional, expected 2", file=sys.stderr)
            return USAGE_ERROR
        x, y = basis.classes
        value = symplectic_eval(rep, key, x, y)
        print(f"form\t{key}")
        print(f"surface\t{_SYMPLECTIC_SURFACE[key]}")
        print(f"omega(e1,e2)\t{_fmt(complex(value))}")
        return 0
    expected_n, expected_k = volume_group_rank(key)
    if (rep.n, rep.k) != (expected_n, expected_k):
        print(f"form {key} expects SL{expected_n} rank {expected_k}, "
              f"representation is SL{rep.n} rank {rep.k}", file=sys.stderr)
        return USAGE_ERROR
    basis = h1_basis_rose(rep)
    pref = volume_prefactor(rep, key)
    value = coordinate_volume(rep, key, basis.classes)
    print(f"form\t{key}")
    print(f"prefactor\t{_fmt(complex(pref))}")
    print(f"determinant\t{_fmt(complex(value / pref))}")
    print(f"value\t{_fmt(complex(value))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charvol",
        description="volume, peripheral, and symplectic form checks on "
                    "SL(N) character varieties of free groups")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios and form keys")

    verify = sub.add_parser("verify", help="run a verification scenario")
    verify.add_argument("--scenario", required=True,
                        help="scenario name or 'all'")
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--threads", type=int, default=None,
                        help="trial threads (default: CHARVOL_THREADS or 1)")
    verify.add_argument("--out", default=None, help="write report JSON here")

    sample = sub.add_parser("sample", help="sample a good representation")
    sample.add_argument("--group", required=True, help="sl2, sl3, ...")
    sample.add_argument("--rank", type=int, default=None,
                        help="number of free generators")
    sample.add_argument("--surface", default=None,
                        help="surface key fixing rank and margin gates")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--out", default=None)

    evalp = sub.add_parser("eval", help="evaluate a coordinate form")
    evalp.add_argument("--form", required=True,
                       help="volume key (f2_sl2, fk_sl2:4, ...) or "
                            "symplectic key (s11_sl2, ...)")
    evalp.add_argument("--rep", required=True,
                       help="representation JSON file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "list": _cmd_list,
        "verify": _cmd_verify,
        "sample": _cmd_sample,
        "eval": _cmd_eval,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CharvolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
