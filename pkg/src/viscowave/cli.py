"""Command line interface.

    viscowave simulate --config cfg.json --out outdir
    viscowave sweep --config cfg.json --param 0.c1 --values 0.75,1,2.75 --out outdir
    viscowave weights --model zener --c0 1.5 --c1 2.75 --a 0.5 --nu 1 \
        --k 0.004 --steps 64 --out weights.csv
    viscowave laplace-probe --config cfg.json --re 0.5,1,2 --im 0,1 --out probe.csv
    viscowave check --hypotheses --seed 7

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import laplace_probe, scenarios
from .config import ConfigError, load_config
from .cq import CQScheme, weights
from .fem1d import build_mesh
from .material import (MaterialRegion, ModelKind, eval_transfer,
                       fractional_power_bound_check, verify_hypotheses)
from .presets import TABLE_MODEL_BATTERY


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="viscowave",
                                 description="1D viscoelastic wave engine")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one configured scenario")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", required=True)

    sw = sub.add_parser("sweep", help="parameter sweep over one region field")
    sw.add_argument("--config", required=True)
    sw.add_argument("--param", required=True,
                    help="<region index>.<field>, e.g. 0.c1")
    sw.add_argument("--values", required=True, help="comma separated values")
    sw.add_argument("--out", required=True)

    wt = sub.add_parser("weights", help="dump a CQ weight sequence as CSV")
    wt.add_argument("--model", default="zener",
                    choices=[k.value for k in ModelKind])
    wt.add_argument("--c0", type=float, default=1.5)
    wt.add_argument("--c1", type=float, default=2.75)
    wt.add_argument("--a", type=float, default=0.5)
    wt.add_argument("--nu", type=float, default=1.0)
    wt.add_argument("--k", type=float, required=True, help="time step")
    wt.add_argument("--steps", type=int, required=True)
    wt.add_argument("--out", required=True)

    lp = sub.add_parser("laplace-probe", help="frequency-domain sweep")
    lp.add_argument("--config", required=True)
    lp.add_argument("--re", required=True, help="comma separated Re s values")
    lp.add_argument("--im", default="0", help="comma separated Im s values")
    lp.add_argument("--trials", type=int, default=32,
                    help="random fields per s for the coercivity margin")
    lp.add_argument("--out", required=True)

    ck = sub.add_parser("check", help="run the material-law verifiers")
    ck.add_argument("--hypotheses", action="store_true")
    ck.add_argument("--samples", type=int, default=10_000)
    ck.add_argument("--seed", type=int, default=0)
    return ap


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    res = scenarios.run_scenario(cfg, args.out)
    for f in res.files:
        print(f)
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    values = [float(v) for v in args.values.split(",") if v]
    path = scenarios.sweep(cfg, args.param, values, args.out)
    print(path)
    return 0


def _cmd_weights(args) -> int:
    region = MaterialRegion(x_lo=0.0, x_hi=1.0, kind=ModelKind(args.model),
                            c0=args.c0, c1=args.c1, a=args.a, nu=args.nu)
    scheme = CQScheme(k=args.k, N=args.steps)
    w = weights(lambda s: eval_transfer(region, s), scheme)
    scenarios.write_csv(args.out, ["j", "omega"],
                        [np.arange(len(w.omega)), w.omega])
    print(args.out)
    return 0


def _cmd_laplace(args) -> int:
    cfg = load_config(args.config)
    mesh = build_mesh(cfg.model, cfg.elements_per_unit, cfg.degree)
    re_vals = [float(v) for v in args.re.split(",") if v]
    im_vals = [float(v) for v in args.im.split(",") if v]
    rows = {"re": [], "im": [], "norm": [], "margin": [], "ratio": []}
    for re in re_vals:
        for im in im_vals:
            s = complex(re, im)
            sol = laplace_probe.solve_at(s, cfg.model, mesh, beta=1.0)
            rep = laplace_probe.coercivity_check(cfg.model, mesh,
                                                 trials=args.trials,
                                                 rng_seed=0, s=s)
            rows["re"].append(re)
            rows["im"].append(im)
            rows["norm"].append(sol.energy_norm)
            rows["margin"].append(rep.worst_positivity_margin)
            rows["ratio"].append(sol.stability_ratio)
    scenarios.write_csv(args.out, ["re_s", "im_s", "energy_norm",
                                   "coercivity_margin", "stability_ratio"],
                        [np.array(rows["re"]), np.array(rows["im"]),
                         np.array(rows["norm"]), np.array(rows["margin"]),
                         np.array(rows["ratio"])])
    print(args.out)
    return 0


def _cmd_check(args) -> int:
    ok = True
    for label, region in TABLE_MODEL_BATTERY:
        rep = verify_hypotheses(region, sample_count=args.samples,
                                rng_seed=args.seed)
        status = "ok" if rep.passed else f"FAILED ({len(rep.violations)} violations)"
        print(f"{label:38s} pos_margin={rep.worst_positivity_margin:+.3e} "
              f"bnd_margin={rep.worst_boundedness_margin:+.3e}  {status}")
        ok = ok and rep.passed
    rep = fractional_power_bound_check(sample_count=args.samples,
                                       rng_seed=args.seed)
    print(f"{'fractional power bound':38s} "
          f"margin={rep.worst_positivity_margin:+.3e}  "
          f"{'ok' if rep.passed else 'FAILED'}")
    ok = ok and rep.passed
    return 0 if ok else 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "simulate": _cmd_simulate,
        "sweep": _cmd_sweep,
        "weights": _cmd_weights,
        "laplace-probe": _cmd_laplace,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FloatingPointError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
