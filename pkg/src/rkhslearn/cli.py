"""Command-line front end.

Subcommands: gen-data (reverse learning), fit, verify (formula-vs-oracle
reports), evolve (free Schrodinger snapshots), figure (figure datasets).
Outputs are deterministic for a fixed seed (default 42).
"""

import argparse
import json
import os
import sys

import numpy as np

from . import closed_forms, evolution, serialize, superosc
from .kernels import GAMMA_DEFAULT, KernelSpec
from .regression import LabeledDataset, fit as fit_expansion

GEN_FAMILIES = ("fock-classical", "rbf-first", "rbf-second", "ml", "touchard", "blaschke")

FIGURE_CONFIGS = {
    "ex1": ("fock-classical", {}),
    "rbf-first": ("rbf-first", {}),
    "rbf-second": ("rbf-second", {}),
    "touchard": ("touchard", {"p": 1}),
    "blaschke-real": ("blaschke", {"roots": "real"}),
    "blaschke-imag": ("blaschke", {"roots": "imag"}),
}


def _limit_threads():
    threads = os.environ.get("RKHS_THREADS")
    if not threads:
        return
    try:
        from threadpoolctl import threadpool_limits

        threadpool_limits(int(threads))
    except (ImportError, ValueError):
        pass


def _blaschke_roots(n, seed, constraint=None):
    rng = np.random.default_rng(seed)
    if constraint == "real":
        vals = rng.uniform(-0.9, 0.9, size=n)
        vals = np.where(np.abs(vals) < 0.05, vals + np.sign(vals + 0.5) * 0.1, vals)
        return vals.astype(np.complex128)
    if constraint == "imag":
        vals = rng.uniform(-0.9, 0.9, size=n)
        vals = np.where(np.abs(vals) < 0.05, vals + np.sign(vals + 0.5) * 0.1, vals)
        return 1j * vals
    return closed_forms.random_blaschke_product(n, rng).roots


def _generate_dataset(args):
    lam = args.lam
    if args.family == "blaschke":
        roots = _blaschke_roots(min(args.n, 10), args.seed, getattr(args, "roots", None))
        B = closed_forms.BlaschkeProduct(roots=roots)
        w = closed_forms.blaschke_outputs(B, lam)
        return LabeledDataset(inputs=B.roots, outputs=w, lam=lam)
    params = superosc.classical_params(args.n, args.a)
    if args.family == "fock-classical":
        w = closed_forms.fock_outputs_classical(args.n, args.a, lam)
    elif args.family == "rbf-first":
        w = closed_forms.rbf_outputs_first_resolved(params, lam)
    elif args.family == "rbf-second":
        w = closed_forms.rbf_outputs_second_resolved(params, lam)
    elif args.family == "ml":
        w = closed_forms.ml_outputs(params, args.q, lam)
    elif args.family == "touchard":
        w = closed_forms.touchard_outputs(params, args.p, lam)
    else:
        raise ValueError(f"unknown family {args.family!r}")
    return LabeledDataset(inputs=params.centers, outputs=w, lam=lam)


def cmd_gen_data(args):
    data = _generate_dataset(args)
    meta = {"family": args.family, "n": str(args.n), "a": repr(args.a), "seed": str(args.seed)}
    if args.format == "csv":
        serialize.dataset_to_csv(args.out, data, extra_metadata=meta)
    else:
        obj = serialize.dataset_to_json(data)
        obj.update({"family": args.family, "n": args.n, "a": args.a, "seed": args.seed})
        _write_json(args.out, obj)
    return 0


def cmd_fit(args):
    data = serialize.dataset_from_csv(args.data, lam=args.lam)
    kernel = KernelSpec(family=args.kernel, gamma=args.gamma, q=args.q, p=args.p)
    expansion = fit_expansion(data, kernel)
    if args.format == "csv":
        serialize.expansion_to_csv(args.out, expansion)
    else:
        _write_json(args.out, serialize.expansion_to_json(expansion))
    return 0


def cmd_verify(args):
    families = closed_forms.VERIFY_FAMILIES if args.family == "all" else (args.family,)
    reports = []
    for family in families:
        rng = np.random.default_rng(args.seed)
        report = closed_forms.verify_family(
            family, args.n, args.a, args.lam, q=args.q, p=args.p, rng=rng
        )
        reports.append(report.to_json())
    _write_json(args.out, reports if args.family == "all" else reports[0])
    return 0


def cmd_evolve(args):
    params = superosc.classical_params(args.n, args.a)
    x = evolution.uniform_grid(args.xmin, args.xmax, args.points)
    if args.k == 0:
        closed = evolution.psi_free(x, args.t, params)
        initial = evolution.psi_free(x, 0.0, params)
    else:
        closed = evolution.phi_free(x, args.t, args.k, params)
        initial = evolution.phi_free(x, 0.0, args.k, params)
    field0 = evolution.EvolutionField(x_grid=x, t=0.0, values=initial)
    propagated = evolution.fourier_propagate(field0, args.t)
    denom = max(1.0, float(np.max(np.abs(propagated.values))))
    gap = float(np.max(np.abs(closed - propagated.values))) / denom
    field = evolution.EvolutionField(x_grid=x, t=args.t, values=closed)
    serialize.field_to_csv(
        args.out,
        field,
        extra_columns={
            "re_prop": propagated.values.real,
            "im_prop": propagated.values.imag,
        },
        extra_metadata={
            "n": str(args.n),
            "a": repr(args.a),
            "k": str(args.k),
            "grid": f"[{args.xmin},{args.xmax}]x{args.points}",
            "max_rel_gap": repr(gap),
        },
    )
    return 0


def cmd_figure(args):
    family, overrides = FIGURE_CONFIGS[args.which]
    ns = argparse.Namespace(
        family=family,
        n=args.n,
        a=args.a,
        lam=args.lam,
        q=overrides.get("q", 2.0),
        p=overrides.get("p", 1),
        seed=args.seed,
        roots=overrides.get("roots"),
    )
    data = _generate_dataset(ns)
    serialize.dataset_to_csv(
        args.out,
        data,
        extra_metadata={"figure": args.which, "family": family, "n": str(args.n),
                        "a": repr(args.a), "seed": str(args.seed)},
    )
    if args.gnuplot:
        script = (
            f"set datafile separator ','\n"
            f"set title '{args.which}'\n"
            f"plot '{args.out}' skip 1 using 2:3 with points title 'data'\n"
        )
        with open(args.gnuplot, "w") as fh:
            fh.write(script)
    return 0


def _write_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _add_common(parser):
    parser.add_argument("--n", type=int, default=100)
    parser.add_argument("--a", type=float, default=2.0)
    parser.add_argument("--lambda", dest="lam", type=float, default=1.0)
    parser.add_argument("--q", type=float, default=2.0)
    parser.add_argument("--p", type=int, default=1)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", required=True)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rkhslearn",
        description="Complex kernel ridge regression, reverse learning, and "
        "superoscillation tooling",
    )
    parser.add_argument("--config", help="JSON file supplying arguments for a subcommand")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("gen-data", help="emit a reverse-learning dataset")
    p.add_argument("--family", choices=GEN_FAMILIES, required=True)
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("fit", help="fit a kernel ridge expansion to a dataset CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--kernel", choices=("fock", "rbf", "ml", "touchard", "szego"),
                   default="fock")
    p.add_argument("--gamma", type=float, default=GAMMA_DEFAULT)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="formula-vs-oracle verification report")
    p.add_argument("--family", default="all",
                   choices=("all",) + closed_forms.VERIFY_FAMILIES)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("evolve", help="free-particle evolution snapshot")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--xmin", type=float, default=-16.0)
    p.add_argument("--xmax", type=float, default=16.0)
    p.add_argument("--points", type=int, default=2048)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("figure", help="emit figure datasets (data only)")
    p.add_argument("--which", choices=tuple(FIGURE_CONFIGS), required=True)
    _add_common(p)
    p.add_argument("--gnuplot", help="optional path for a gnuplot script")
    p.set_defaults(func=cmd_figure)

    return parser


def main(argv=None):
    _limit_threads()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            conf = json.load(fh)
        merged = [conf.pop("command")]
        for key, value in conf.items():
            merged.append(f"--{key}")
            if not isinstance(value, bool):
                merged.append(str(value))
        args = parser.parse_args(merged)
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except Exception as exc:  # module errors -> machine-readable stderr
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
