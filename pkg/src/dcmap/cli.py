"""Command-line interface.

Subcommands: generate, check, fit, render, dual, painleve.  Exit codes:
0 success / check passed, 1 check failed or generation error, 2 usage or
parse error, 3 insufficient data for an asymptotic analysis.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .asymptotics import (
    check_diagonal_growth,
    check_lemma_bounds,
    check_painleve_asymptote,
    check_xy_decay,
    fit_radius_growth,
)
from .errors import DcmapError, DegenerateQuad, EquiViolation, InsufficientData
from .geometry import circles, incidence_check, is_embedded, is_immersed
from .lattice import (
    ConformalLattice,
    LatticeIndex,
    LatticeKind,
    constraint_residual,
    dual_map,
    generate,
    generate_naive,
)
from .numerics import ToleranceConfig, cross_ratio
from .painleve import alpha_from_lattice, dpii_solve
from .radii import dual_radii, extract_radii, sign_condition, xy_from_radii
from .render import RenderOptions, render_svg
from .serialize import (
    lattice_to_json,
    load_lattice,
    painleve_to_csv,
    radii_from_csv,
    radii_to_csv,
)

__all__ = ["main"]


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _write_report(report: dict, path: str | None) -> None:
    _write(json.dumps(report, indent=2, default=str), path)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# handlers


def cmd_generate(args, tol: ToleranceConfig) -> int:
    size = args.size if args.size is not None else args.seed_size
    if args.kind == "zc":
        if args.c is None:
            return _usage_error("--kind zc requires --c")
        if not 0.0 < args.c < 2.0:
            return _usage_error(f"--c must lie in (0, 2), got {args.c}")
    elif args.c is not None:
        fixed = 2.0 if args.kind == "z2" else 0.0
        if args.c != fixed:
            return _usage_error(f"--kind {args.kind} has fixed exponent {fixed}")
    if args.naive:
        if args.kind != "zc":
            return _usage_error("--naive applies to --kind zc only")
        lat = generate_naive(args.c, size)
    else:
        lat = generate(args.kind, args.c, size)
    _write(lattice_to_json(lat), args.output)
    return 0


def _check_residuals(lat: ConformalLattice, tol: ToleranceConfig) -> dict:
    grid = lat.complex_grid()
    G = lat.size
    worst_quad = 0.0
    worst_constraint = 0.0
    violations = []
    for n in range(G):
        for m in range(G):
            try:
                q = cross_ratio(lat.at(n, m), lat.at(n + 1, m),
                                lat.at(n + 1, m + 1), lat.at(n, m + 1), tol)
            except DegenerateQuad:
                continue
            if not q.is_finite:
                violations.append(["cross-ratio", [n, m], "inf"])
                continue
            defect = abs(q.value + 1.0)
            worst_quad = max(worst_quad, defect)
            if defect > tol.rel_tol:
                violations.append(["cross-ratio", [n, m], defect])
    for n in range(1, G):
        for m in range(1, G):
            stencil = (grid[n][m], grid[n + 1][m], grid[n - 1][m],
                       grid[n][m + 1], grid[n][m - 1])
            if any(v is None for v in stencil):
                continue
            res = constraint_residual(lat, LatticeIndex(n, m))
            worst_constraint = max(worst_constraint, res)
            if res > tol.rel_tol:
                violations.append(["constraint", [n, m], res])
    return {
        "worst_cross_ratio_defect": worst_quad,
        "worst_constraint_residual": worst_constraint,
        "violations": violations,
        "ok": not violations,
    }


def _check_sign(lat: ConformalLattice, tol: ToleranceConfig) -> dict:
    fld = extract_radii(lat, tol)
    violations = []
    checked = 0
    for z in fld.values:
        N, M = z
        needed = [(N, M), (N, M - 1), (N + 1, M)]
        rs = [fld.values.get(w) for w in needed]
        if any(r is None or not math.isfinite(r) for r in rs):
            continue
        checked += 1
        if not sign_condition(fld, z, tol):
            violations.append([list(z)])
    return {"checked": checked, "violations": violations, "ok": not violations}


def cmd_check(args, tol: ToleranceConfig) -> int:
    lat = load_lattice(args.input)
    which = args.which
    if which == "residuals":
        details = _check_residuals(lat, tol)
    elif which == "sign":
        try:
            details = _check_sign(lat, tol)
        except EquiViolation as exc:
            details = {"ok": False, "error": str(exc), "index": list(exc.index)}
    elif which == "incidence":
        try:
            pat = circles(lat, tol)
            rep = incidence_check(pat, tol)
            details = {
                "ok": rep.ok,
                "orthogonal_checked": rep.orthogonal_checked,
                "tangent_checked": rep.tangent_checked,
                "violations": [[kind, list(z1), list(z2), defect]
                               for kind, z1, z2, defect in rep.violations],
                "excluded_pairs": len(rep.excluded),
            }
        except EquiViolation as exc:
            details = {"ok": False, "error": str(exc), "index": list(exc.index)}
    else:  # embedded / immersed
        rep = is_embedded(lat, tol) if which == "embedded" else is_immersed(lat, tol)
        details = {
            "ok": rep.ok,
            "witness": None if rep.witness is None else
            [list(rep.witness[0]), list(rep.witness[1])],
            "pairs_checked": rep.pairs_checked,
            "degenerate_cells": [list(i) for i in rep.degenerate],
            "excluded_cells": [list(i) for i in rep.excluded],
        }
    report = {"check": which, "input": args.input, **details}
    _write_report(report, args.output)
    return 0 if details["ok"] else 1


def cmd_fit(args, tol: ToleranceConfig) -> int:
    analysis = args.analysis
    if analysis == "painleve":
        if args.input is not None:
            c = load_lattice(args.input).c
        elif args.c is not None:
            c = args.c
        else:
            return _usage_error("fit painleve needs an input lattice or --c")
        sol = dpii_solve(c, args.steps)
        rep = check_painleve_asymptote(sol)
        report = {
            "analysis": analysis, "c": c, "steps": args.steps,
            "dev_near": rep.dev_near, "dev_mid": rep.dev_mid, "dev_far": rep.dev_far,
            "samples": {str(rep.n_near): rep.dev_near, str(rep.n_far): rep.dev_far},
            "max_drift": max(sol.drifts),
            "passed": rep.passed,
        }
        if args.seed_size > 1:
            lat = generate(LatticeKind.ZC, c, args.seed_size)
            dev = max(abs(alpha_from_lattice(lat, n) - sol.alphas[n])
                      for n in range(min(args.seed_size - 1, sol.steps)))
            report["lattice_alpha_dev"] = dev
            report["passed"] = report["passed"] and dev < 1e-8
        _write_report(report, args.output)
        return 0 if report["passed"] else 1

    if args.input is None:
        return _usage_error(f"fit {analysis} requires an input lattice")
    lat = load_lattice(args.input)

    if analysis == "diagonal":
        n_far = min(args.n_far or 100, lat.size - max(args.n0, args.m0))
        rep = check_diagonal_growth(lat, lat.c, n0=args.n0, m0=args.m0,
                                    n_near=max(25, n_far // 2), n_far=n_far)
        report = {
            "analysis": analysis, "c": lat.c, "n0": args.n0, "m0": args.m0,
            "target_arg": rep.target_arg,
            "arg_dev_near": rep.arg_dev_near, "arg_dev_far": rep.arg_dev_far,
            "growth_estimate": rep.growth_estimate,
            "growth_extrapolated": rep.growth_extrapolated,
            "column_constant": rep.scaled_constant,
            "passed": rep.passed,
        }
        _write_report(report, args.output)
        return 0 if rep.passed else 1

    fld = extract_radii(lat, tol)

    if analysis == "radius-growth":
        if args.m_max is not None:
            m_max = args.m_max
        else:
            column = [z.M for z in fld.values if z.N == args.n0]
            m_max = min(200, max(column, default=0))
        fit = fit_radius_growth(fld, args.n0, lat.c, m_max=m_max)
        report = {
            "analysis": analysis, "c": lat.c, "n0": args.n0, "m_max": m_max,
            "K_estimate": fit.K_estimate,
            "K_extrapolated": fit.K_extrapolated,
            "band": fit.band,
            "band_threshold": fit.band_threshold,
            "product_model_max_defect": fit.max_abs_defect,
            "samples": [[M, K] for M, K in fit.samples[:: max(1, len(fit.samples) // 20)]],
            "passed": fit.passed,
        }
        _write_report(report, args.output)
        return 0 if fit.passed else 1

    xy = xy_from_radii(fld)

    if analysis == "xy-decay":
        n_far = args.n_far or 200
        rep = check_xy_decay(xy, lat.c, args.n0, n_near=max(25, n_far // 4), n_far=n_far)
        report = {
            "analysis": analysis, "c": lat.c, "n0": args.n0,
            "target": rep.target,
            "dev_near": rep.dev_near, "dev_far": rep.dev_far,
            "x_scaled_near_max": rep.x_scaled_near_max,
            "x_scaled_far_max": rep.x_scaled_far_max,
            "passed": rep.passed,
        }
        _write_report(report, args.output)
        return 0 if rep.passed else 1

    if analysis == "lemma-bounds":
        if lat.c <= 1.0:
            return _usage_error("lemma-bounds applies to exponents c > 1; use "
                                "the dual field for c < 1")
        rep = check_lemma_bounds(xy, lat.c, tol)
        report = {
            "analysis": analysis, "c": lat.c,
            "checked": rep.checked,
            "min_slack": rep.min_slack,
            "violations": [[list(z), which, slack] for z, which, slack in rep.violations],
            "passed": rep.ok,
        }
        _write_report(report, args.output)
        return 0 if rep.ok else 1

    return _usage_error(f"unknown analysis {analysis!r}")


def cmd_render(args, tol: ToleranceConfig) -> int:
    lat = load_lattice(args.input)
    options = RenderOptions(
        stroke_width=args.stroke_width,
        padding=args.padding,
        draw_circles=not args.no_circles,
        draw_quads=not args.no_quads,
        scheme=args.scheme,
    )
    _write(render_svg(lat, options), args.output)
    return 0


def cmd_dual(args, tol: ToleranceConfig) -> int:
    if args.radii:
        if args.c is None:
            return _usage_error("--radii needs --c (the CSV does not carry it)")
        with open(args.input, encoding="utf-8") as fh:
            fld = radii_from_csv(fh.read(), c=args.c)
        _write(radii_to_csv(dual_radii(fld)), args.output)
        return 0
    lat = load_lattice(args.input)
    dual = dual_map(
        lat,
        anchor=complex(args.anchor_re, args.anchor_im),
        anchor_index=LatticeIndex(args.anchor_n, args.anchor_m),
        tol=tol,
    )
    _write(lattice_to_json(dual), args.output)
    return 0


def cmd_painleve(args, tol: ToleranceConfig) -> int:
    sol = dpii_solve(args.c, args.steps)
    _write(painleve_to_csv(sol), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcmap",
        description="Discrete conformal lattices and their circle patterns: "
                    "generation, structural checks, asymptotic fits, rendering.",
    )
    parser.add_argument("--rel-tol", type=float, default=1e-9,
                        help="relative tolerance for consistency checks")
    parser.add_argument("--abs-tol", type=float, default=1e-12,
                        help="absolute tolerance for geometric predicates")
    parser.add_argument("--seed-size", type=int, default=32,
                        help="size of internally generated reference lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a lattice JSON document")
    p.add_argument("--kind", choices=[k.value for k in LatticeKind], required=True)
    p.add_argument("--c", type=float, default=None, help="exponent (zc only)")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--naive", action="store_true",
                   help="equidistant-axis comparison construction (no constraint)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("check", help="run a structural check, exit 1 on violations")
    p.add_argument("which", choices=["embedded", "immersed", "incidence",
                                     "residuals", "sign"])
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("fit", help="run an asymptotic analysis")
    p.add_argument("analysis", choices=["radius-growth", "xy-decay", "diagonal",
                                        "painleve", "lemma-bounds"])
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--n0", type=int, default=0)
    p.add_argument("--m0", type=int, default=0)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--n-far", type=int, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("render", help="render a lattice to SVG")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--stroke-width", type=float, default=1.0)
    p.add_argument("--padding", type=float, default=0.05)
    p.add_argument("--no-circles", action="store_true")
    p.add_argument("--no-quads", action="store_true")
    p.add_argument("--scheme", default="default", choices=["default", "print"])
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("dual", help="edge-reciprocal dual of a lattice, or "
                                    "reciprocal of a radii CSV")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--anchor-n", type=int, default=0)
    p.add_argument("--anchor-m", type=int, default=0)
    p.add_argument("--anchor-re", type=float, default=0.0)
    p.add_argument("--anchor-im", type=float, default=0.0)
    p.add_argument("--radii", action="store_true")
    p.add_argument("--c", type=float, default=None)
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("painleve", help="unitary branch angles as CSV")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_painleve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    tol = ToleranceConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    try:
        return args.handler(args, tol)
    except InsufficientData as exc:
        print(f"insufficient data: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DcmapError as exc:
        index = getattr(exc, "index", None) or getattr(exc, "label", None)
        where = f" at {index}" if index is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
