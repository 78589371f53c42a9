"""Command-line front end: validate, simulate, verify, catalog.

Exit codes: 0 success, 1 domain or tolerance failure, 2 usage or parse
error. Output is CSV or a JSON tree; identical configuration and seed
produce byte-identical output on a platform. The default tolerance can
be overridden with the HOMOFIBER_TOL environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .catalog import (
    catalog_names,
    export_entry,
    get_entry,
    load_custom,
    make_system,
)
from .field import metric_norm
from .linalg import DomainError, StructureError
from .motion import build_motion, perturb_motion, sample_trajectory
from .oracle import (
    ResidualConfig,
    algebraic_identity_check,
    conservation_sweep,
    great_circle_check,
    lambda_collapse_check,
    velocity_agreement_sweep,
    magnetic_circle_check,
    metric_probe_basis,
    module_invariance_sweep,
    residual_sweep,
)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad invocation: unknown space, missing file, malformed flags."""


def _parse_pair(text):
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 2:
        raise UsageError(f"--pair wants 'a,b' or 'a', got {text!r}")
    try:
        a = int(parts[0])
        b = int(parts[1]) if len(parts) == 2 and parts[1] else None
    except ValueError:
        raise UsageError(f"--pair wants integers, got {text!r}")
    return a, b


def _parse_coeffs(text):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad coefficient list {text!r}")


def _resolve_space(name):
    if name in catalog_names():
        return get_entry(name)
    if os.path.exists(name):
        try:
            with open(name) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse {name}: {exc}")
        return load_custom(doc)
    raise UsageError(
        f"unknown space {name!r}: not a catalog name "
        f"({', '.join(catalog_names())}) and not a file"
    )


def _write(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _f(x):
    return f"{float(x):.17g}"


def _system_from_args(args):
    entry = _resolve_space(args.space)
    pair = _parse_pair(args.pair) if args.pair else None
    weights = tuple(args.weights) if args.weights else None
    return entry, make_system(
        entry, weights=weights, k=args.k, w_scale=args.w_scale, pair=pair
    )


def _initial_data(system, args):
    rng = np.random.default_rng(args.seed)
    ma, mb = system.ma, system.mb

    def build(space, coeffs, name):
        if coeffs is not None:
            if len(coeffs) != space.dim:
                raise UsageError(
                    f"{name} wants {space.dim} coefficients, got {len(coeffs)}"
                )
            return sum(c * e for c, e in zip(coeffs, space.basis))
        raw = rng.standard_normal(space.dim)
        X = sum(c * e for c, e in zip(raw, space.basis))
        return X / metric_norm(system, X)

    xa = _parse_coeffs(args.xa) if args.xa else None
    xb = _parse_coeffs(args.xb) if args.xb else None
    Xa = build(ma, xa, "--xa")
    if mb is None or mb.dim == 0:
        if xb:
            raise UsageError("this space has no second module; drop --xb")
        return Xa, None
    return Xa, build(mb, xb, "--xb")


def _motion_from_args(args):
    entry, system = _system_from_args(args)
    Xa, Xb = _initial_data(system, args)
    motion = build_motion(system, Xa, Xb)
    if args.perturb:
        motion = perturb_motion(motion, eps=args.perturb, seed=args.seed)
    return entry, system, motion


def cmd_validate(args):
    try:
        entry = _resolve_space(args.space)
    except (StructureError, ValueError) as exc:
        sys.stderr.write(f"validation failed: {exc}\n")
        _write(_json_text({"passed": False, "error": str(exc)}), args.out)
        return FAIL
    rep = entry.validation_report()
    for line in rep.lines():
        print(line)
    doc = {
        "space": entry.name,
        "passed": rep.passed,
        "checks": {
            name: {"passed": c.passed, "residual": c.residual}
            for name, c in rep.checks.items()
        },
    }
    _write(_json_text(doc), args.out)
    return OK if rep.passed else FAIL


def _sample_rows(samples, n):
    header = ["t"]
    for i in range(n):
        for j in range(n):
            header += [f"rep_{i}{j}_re", f"rep_{i}{j}_im"]
    pos0 = samples[0].position
    if pos0 is not None:
        if np.iscomplexobj(pos0):
            for i in range(len(pos0)):
                header += [f"pos_{i}_re", f"pos_{i}_im"]
        else:
            header += [f"pos_{i}" for i in range(len(pos0))]
    header.append("speed")
    rows = [header]
    for s in samples:
        row = [_f(s.t)]
        for z in np.asarray(s.representative).ravel():
            row += [_f(z.real), _f(z.imag)]
        if s.position is not None:
            if np.iscomplexobj(s.position):
                for z in s.position:
                    row += [_f(z.real), _f(z.imag)]
            else:
                row += [_f(x) for x in s.position]
        row.append(_f(s.speed))
        rows.append(row)
    return rows


def cmd_simulate(args):
    entry, system, motion = _motion_from_args(args)
    samples = sample_trajectory(motion, args.t0, args.t1, args.samples)
    if args.format == "csv":
        rows = _sample_rows(samples, system.split.n)
        text = "\n".join(",".join(r) for r in rows) + "\n"
    else:
        doc = {
            "space": entry.name,
            "samples": [
                {
                    "t": s.t,
                    "representative": [
                        [[z.real, z.imag] for z in row] for row in s.representative
                    ],
                    "position": None
                    if s.position is None
                    else (
                        [[z.real, z.imag] for z in s.position]
                        if np.iscomplexobj(s.position)
                        else [float(x) for x in s.position]
                    ),
                    "speed": s.speed,
                }
                for s in samples
            ],
        }
        text = _json_text(doc)
    _write(text, args.out)
    return OK


def cmd_verify(args):
    entry, system, motion = _motion_from_args(args)
    ts = np.linspace(args.t0, args.t1, args.samples)
    probes = metric_probe_basis(system)
    cfg = ResidualConfig(fd_step=args.fd_step, tolerance=args.tol)
    res = residual_sweep(motion, ts, probes, cfg)
    alg = max(
        algebraic_identity_check(motion, t, Z) for t in ts for Z in probes
    )
    cons = conservation_sweep(motion, ts)
    minv = module_invariance_sweep(motion, ts)
    agree = velocity_agreement_sweep(motion, ts)
    failures = []
    if res.max_abs > cfg.tolerance:
        failures.append(f"koszul residual {res.max_abs:.3e} > {cfg.tolerance:.1e}")
    if alg > 1e-11:
        failures.append(f"bracket identity {alg:.3e} > 1e-11")
    if cons.max_drift > 1e-10:
        failures.append(f"speed drift {cons.max_drift:.3e} > 1e-10")
    if minv > 1e-10:
        failures.append(f"module invariance {minv:.3e} > 1e-10")
    if agree > 1e-11:
        failures.append(f"velocity agreement {agree:.3e} > 1e-11")
    special = {}
    if system.lam == 1.0 and motion.exact:
        col = lambda_collapse_check(motion, ts)
        special["collapse"] = {"max_frobenius": col.max_frobenius}
        if not col.passed():
            failures.append(f"collapse {col.max_frobenius:.3e} > 1e-12")
    if (
        system.model is not None
        and getattr(system.model, "kind", None) == "vector"
        and system.k == 0.0
        and motion.exact
    ):
        try:
            gc = great_circle_check(motion)
        except DomainError:
            pass
        else:
            special["great_circle"] = {
                "max_radius_dev": gc.max_radius_dev,
                "max_planarity": gc.max_planarity,
            }
            if not gc.passed():
                failures.append("great-circle check failed")
    if (
        system.model is not None
        and getattr(system.model, "kind", None) == "orbit"
        and system.split.s == 1
        and motion.exact
    ):
        mc = magnetic_circle_check(system, motion.Xa)
        special["magnetic_circle"] = {
            "entries": [
                {"k": e.k, "kappa_mean": e.kappa_mean, "variation": e.kappa_variation}
                for e in mc.entries
            ],
            "constant": mc.constant,
            "increasing": mc.increasing,
        }
        if not mc.passed():
            failures.append("magnetic-circle check failed")
    doc = {
        "space": entry.name,
        "weights": list(system.metric.weights),
        "pair": [system.a, system.b],
        "k": system.k,
        "seed": args.seed,
        "perturb": args.perturb,
        "fd_step": cfg.fd_step,
        "tolerance": cfg.tolerance,
        "koszul": {
            "max_abs": res.max_abs,
            "argmax_t": res.argmax[0],
            "argmax_probe": res.argmax[1],
        },
        "bracket_identity_max": alg,
        "speed_drift": cons.max_drift,
        "module_invariance_max": minv,
        "velocity_agreement_max": agree,
        "special": special,
        "failures": failures,
        "passed": not failures,
    }
    if args.format == "csv":
        rows = [["t", "probe", "t1", "t2", "t3", "rhs", "residual"]]
        for e in res.entries:
            rows.append(
                [_f(e.t), str(e.probe), _f(e.t1), _f(e.t2), _f(e.t3), _f(e.rhs), _f(e.residual)]
            )
        text = "\n".join(",".join(r) for r in rows) + "\n"
    else:
        text = _json_text(doc)
    _write(text, args.out)
    if failures:
        sys.stderr.write("verification failed: " + "; ".join(failures) + "\n")
        return FAIL
    return OK


def cmd_catalog(args):
    if args.action == "list":
        lines = []
        for name in catalog_names():
            e = get_entry(name)
            kind = e.model.kind if e.model is not None else "none"
            b = e.pair[1] if e.pair[1] is not None else "-"
            lines.append(
                f"{name:14s} dims={e.split.dims} weights={e.weights} "
                f"pair=({e.pair[0]},{b}) model={kind}"
            )
        _write("\n".join(lines) + "\n", args.out)
        return OK
    if not args.name:
        raise UsageError("catalog export needs a name")
    try:
        entry = get_entry(args.name)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0]}\n")
        return FAIL
    _write(_json_text(export_entry(entry)), args.out)
    return OK


def _add_space_flags(p):
    p.add_argument("--space", required=True, help="catalog name or space document path")
    p.add_argument(
        "--lambda",
        dest="weights",
        action="append",
        type=float,
        metavar="WEIGHT",
        help="metric weight, once per module (in order)",
    )
    p.add_argument("--pair", default=None, help="module pair 'a,b' (or 'a' for no b)")
    p.add_argument("--k", type=float, default=0.0, help="charge")
    p.add_argument("--W-scale", dest="w_scale", type=float, default=1.0)
    p.add_argument("--xa", default=None, help="comma-separated coefficients in the m_a basis")
    p.add_argument("--xb", default=None, help="comma-separated coefficients in the m_b basis")
    p.add_argument("--t0", type=float, default=-2.0)
    p.add_argument("--t1", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--fd-step", dest="fd_step", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb", type=float, default=0.0, metavar="EPS")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="homofiber",
        description=(
            "Homogeneous fibrations of compact matrix groups: closed-form "
            "charged-particle trajectories and independent verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", help="run structural validators on a space")
    pv.add_argument("--space", required=True)
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=cmd_validate)

    ps = sub.add_parser("simulate", help="sample a closed-form trajectory")
    _add_space_flags(ps)
    ps.add_argument("--out", default=None)
    ps.add_argument("--format", choices=("csv", "json-tree"), default="csv")
    ps.set_defaults(func=cmd_simulate)

    pf = sub.add_parser("verify", help="run the residual oracle and all checks")
    _add_space_flags(pf)
    pf.add_argument("--out", default=None)
    pf.add_argument("--format", choices=("csv", "json-tree"), default="json-tree")
    pf.set_defaults(func=cmd_verify)

    pc = sub.add_parser("catalog", help="list entries or export one")
    pc.add_argument("action", choices=("list", "export"))
    pc.add_argument("name", nargs="?", default=None)
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    if getattr(args, "tol", None) is None and hasattr(args, "tol"):
        args.tol = float(os.environ.get("HOMOFIBER_TOL", "1e-6"))
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE
    except (DomainError, StructureError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return FAIL
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
