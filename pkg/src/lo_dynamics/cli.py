"""Command-line surface: classification tables, orbit runs, certificate
verification, geometry and density reports, and the witness-map check.

Exit codes (public contract):
    0  success
    2  usage / invalid arguments
    3  inadmissible triple without --allow-inadmissible
    4  integration blowup
    5  certificate (barrier) failure
    6  wrong stability type for the requested report

Configuration: a flat key = value text file (one pair per line, '#'
comments allowed), pointed to by --config or the LO_DYNAMICS_CONFIG
environment variable; command-line flags win over the file.  Keys match
the RunConfig field names; the formats value is a comma list such as
"json,csv,svg".

All numbers are serialized with 17 significant digits; CSV columns are
fixed (trajectory.csv: t,phi,psi; profile.csv: r,rho,rho_r,rho_rr,residual)
and always carry headers.  SVG plots are static polyline renderings with
a viewBox computed from the data extents plus a 5% margin.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import analysis, barrier, geometry, hopf, radial
from .errors import (
    BlowupDetected,
    DomainError,
    InadmissibleTriple,
    InsufficientHits,
    NotTypeII,
)
from .integrate import (
    CrossingReport,
    PhiHit,
    PsiZero,
    Trajectory,
    crossing_report,
    detect_psi_zeros,
    shoot_unstable_manifold,
)
from .params import LomseParams, StabilityType, build_params, enumerate_admissible

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INADMISSIBLE = 3
EXIT_BLOWUP = 4
EXIT_BARRIER_FAILURE = 5
EXIT_WRONG_TYPE = 6

CONFIG_ENV_VAR = "LO_DYNAMICS_CONFIG"
_FORMATS = ("json", "csv", "svg")


@dataclass
class RunConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    conv_tol: float = 1e-8
    event_tol: float = 1e-12
    eps_start: float = 1e-6
    t_max: float = 400.0
    max_crossings: int = 40
    grid_points: int = 10_000
    cycle_grid: int = 200
    quad_panels: int = 8192
    sample_count: int = 100
    fd_step: float = 1e-5
    seed: int = 0
    jobs: int = 1
    out_dir: str = "."
    formats: tuple[str, ...] = ("json", "csv")

    def validate(self) -> None:
        for name in ("rel_tol", "abs_tol", "conv_tol", "event_tol", "eps_start", "t_max"):
            if getattr(self, name) < 0.0 or (name != "abs_tol" and getattr(self, name) == 0.0):
                raise ValueError(f"{name} must be positive")
        if not self.formats:
            raise ValueError("formats must be nonempty")
        for f in self.formats:
            if f not in _FORMATS:
                raise ValueError(f"unknown format {f!r}; choose from {_FORMATS}")


def load_config_file(path: str | Path) -> dict[str, str]:
    """Parse the flat key = value grammar; later keys win."""
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        pairs[key.strip()] = value.strip()
    return pairs


def _coerce(cfg: RunConfig, key: str, value: str) -> None:
    if not hasattr(cfg, key):
        raise ValueError(f"unknown config key {key!r}")
    current = getattr(cfg, key)
    if key == "formats":
        setattr(cfg, key, tuple(v.strip() for v in value.split(",") if v.strip()))
    elif isinstance(current, int):
        setattr(cfg, key, int(value))
    elif isinstance(current, float):
        setattr(cfg, key, float(value))
    else:
        setattr(cfg, key, value)


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV_VAR)
    if path:
        for key, value in load_config_file(path).items():
            _coerce(cfg, key, value)
    for key in vars(cfg):
        flag = getattr(args, key, None)
        if flag is not None:
            if key == "formats":
                _coerce(cfg, key, flag)
            else:
                setattr(cfg, key, flag)
    cfg.validate()
    return cfg


# ----------------------------------------------------------------------
# serialization (17 significant digits everywhere)

def fmt17(x: float) -> str:
    return format(float(x), ".17g")


def _json_encode(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_json_encode(v, indent + 1)}'
            for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{pad}  {_json_encode(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt17(obj)
    return json.dumps(obj)


def dumps_json(obj) -> str:
    return _json_encode(obj) + "\n"


def params_to_dict(params: LomseParams) -> dict:
    return {"n": params.n, "p": params.p, "k": params.k}


def params_from_dict(d: dict) -> LomseParams:
    return build_params(int(d["n"]), int(d["p"]), int(d["k"]), allow_inadmissible=True)


def crossing_report_to_dict(report: CrossingReport) -> dict:
    return {
        "target": report.target,
        "psi_zeros": [
            {"t": z.t, "phi": z.phi, "phi_offset": z.phi_offset, "direction": z.direction}
            for z in report.psi_zeros
        ],
        "phi_hits": [{"t": h.t, "dilation": h.dilation} for h in report.phi_hits],
    }


def crossing_report_from_dict(d: dict) -> CrossingReport:
    return CrossingReport(
        psi_zeros=[
            PsiZero(t=z["t"], phi=z["phi"], phi_offset=z["phi_offset"],
                    direction=int(z["direction"]))
            for z in d["psi_zeros"]
        ],
        phi_hits=[PhiHit(t=h["t"], dilation=h["dilation"]) for h in d["phi_hits"]],
        target=d["target"],
    )


def barrier1_to_dict(r: barrier.BarrierCase1Report) -> dict:
    return {
        "params": params_to_dict(r.params),
        "case": 1,
        "c": r.c,
        "f0": r.f0,
        "g0": r.g0,
        "g_end": r.g_end,
        "grid_margin": r.grid_margin,
        "passed": r.passed,
    }


def barrier1_from_dict(d: dict) -> barrier.BarrierCase1Report:
    return barrier.BarrierCase1Report(
        params=params_from_dict(d["params"]), c=d["c"], f0=d["f0"], g0=d["g0"],
        g_end=d["g_end"], grid_margin=d["grid_margin"], passed=bool(d["passed"]),
    )


def barrier2_to_dict(r: barrier.BarrierCase2Report) -> dict:
    return {
        "params": params_to_dict(r.params),
        "case": 2,
        "g_grid_margin": r.g_grid_margin,
        "fs_min": r.fs_min,
        "fs_argmin": r.fs_argmin,
        "cycle_margin": r.cycle_margin,
        "passed": r.passed,
    }


def barrier2_from_dict(d: dict) -> barrier.BarrierCase2Report:
    return barrier.BarrierCase2Report(
        params=params_from_dict(d["params"]), g_grid_margin=d["g_grid_margin"],
        fs_min=d["fs_min"], fs_argmin=d["fs_argmin"], cycle_margin=d["cycle_margin"],
        passed=bool(d["passed"]),
    )


def geometry_to_dict(r: geometry.GeometryReport) -> dict:
    return {
        "params": params_to_dict(r.params),
        "cos_alpha": r.cos_alpha,
        "volume_ratio": r.volume_ratio,
        "jordan_angles": [[a, m] for a, m in r.jordan_angles],
        "slope_w": r.slope_w,
    }


def geometry_from_dict(d: dict) -> geometry.GeometryReport:
    return geometry.GeometryReport(
        params=params_from_dict(d["params"]),
        cos_alpha=d["cos_alpha"],
        volume_ratio=d["volume_ratio"],
        jordan_angles=[(a, int(m)) for a, m in d["jordan_angles"]],
        slope_w=d["slope_w"],
    )


def density_to_dict(r: analysis.DensityReport) -> dict:
    return {
        "params": params_to_dict(r.params),
        "radii": list(r.radii),
        "thetas": list(r.thetas),
        "theta_infinity": r.theta_infinity,
        "strictly_below_cone": r.strictly_below_cone,
    }


def density_from_dict(d: dict) -> analysis.DensityReport:
    return analysis.DensityReport(
        params=params_from_dict(d["params"]), radii=list(d["radii"]),
        thetas=list(d["thetas"]), theta_infinity=d["theta_infinity"],
        strictly_below_cone=bool(d["strictly_below_cone"]),
    )


def family_to_dict(r: analysis.SolutionFamilyReport) -> dict:
    return {
        "params": params_to_dict(r.params),
        "boundary_slope": r.boundary_slope,
        "dilations": list(r.dilations),
        "count_is_lower_bound": r.count_is_lower_bound,
        "includes_singular_cone": r.includes_singular_cone,
    }


def family_from_dict(d: dict) -> analysis.SolutionFamilyReport:
    return analysis.SolutionFamilyReport(
        params=params_from_dict(d["params"]), boundary_slope=d["boundary_slope"],
        dilations=list(d["dilations"]),
        count_is_lower_bound=bool(d["count_is_lower_bound"]),
        includes_singular_cone=bool(d["includes_singular_cone"]),
    )


# ----------------------------------------------------------------------
# file emitters

def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt17(v) if isinstance(v, float) else v for v in row])


def write_svg(path: Path, series: list[tuple[list[float], list[float], str]],
              markers: list[tuple[float, float]] | None = None,
              width: int = 800, height: int = 600) -> None:
    """Static polyline plot; viewBox from data extents plus a 5% margin."""
    xs_all = [x for xs, _, _ in series for x in xs]
    ys_all = [y for _, ys, _ in series for y in ys]
    if markers:
        xs_all += [m[0] for m in markers]
        ys_all += [m[1] for m in markers]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    dx = (x_hi - x_lo) or 1.0
    dy = (y_hi - y_lo) or 1.0
    x_lo -= 0.05 * dx
    x_hi += 0.05 * dx
    y_lo -= 0.05 * dy
    y_hi += 0.05 * dy

    def sx(x):
        return (x - x_lo) / (x_hi - x_lo) * width

    def sy(y):
        return height - (y - y_lo) / (y_hi - y_lo) * height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if y_lo < 0.0 < y_hi:
        parts.append(f'<line x1="0" y1="{sy(0):.6g}" x2="{width}" y2="{sy(0):.6g}" '
                     'stroke="#cccccc" stroke-width="1"/>')
    if x_lo < 0.0 < x_hi:
        parts.append(f'<line x1="{sx(0):.6g}" y1="0" x2="{sx(0):.6g}" y2="{height}" '
                     'stroke="#cccccc" stroke-width="1"/>')
    for xs, ys, color in series:
        pts = " ".join(f"{sx(x):.6g},{sy(y):.6g}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     'stroke-width="1.5"/>')
    for mx, my in markers or []:
        parts.append(f'<circle cx="{sx(mx):.6g}" cy="{sy(my):.6g}" r="4" fill="black"/>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n", encoding="utf-8")


# ----------------------------------------------------------------------
# commands

def _build(args) -> LomseParams:
    return build_params(args.n, args.p, args.k,
                        allow_inadmissible=getattr(args, "allow_inadmissible", False))


def _classify_row(params: LomseParams) -> str:
    kind = "center(I)" if params.stability is StabilityType.CENTER_TYPE_I else "spiral(II)"
    return (f"{params.n:>3} {params.p:>3} {params.k:>3}  "
            f"{'yes' if params.admissible else 'no ':<3}  "
            f"{params.lam:<20.12g} {params.theta:<20.12g} {params.phi0:<20.12g} {kind}")


_CLASSIFY_HEADER = (f"{'n':>3} {'p':>3} {'k':>3}  adm  "
                    f"{'lambda':<20} {'theta':<20} {'phi0':<20} type")


def cmd_classify(args) -> int:
    cfg = build_config(args)
    if args.sweep:
        n_max, k_max = args.sweep
        all_params = enumerate_admissible(n_max, k_max)
        print(_CLASSIFY_HEADER)
        if cfg.jobs > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                rows = list(pool.map(_classify_row, all_params))
        else:
            rows = [_classify_row(p) for p in all_params]
        for row in rows:
            print(row)
        return EXIT_OK
    if args.n is None or args.p is None or args.k is None:
        print("classify: provide n p k or --sweep N_MAX K_MAX", file=sys.stderr)
        return EXIT_USAGE
    params = _build(args)
    print(_CLASSIFY_HEADER)
    print(_classify_row(params))
    return EXIT_OK


def _orbit_svgs(out: Path, traj: Trajectory, profile) -> None:
    params = traj.params
    phi = traj.phi
    psi = traj.psi
    write_svg(out / "phase.svg",
              [(list(phi), list(psi), "#1f77b4")],
              markers=[(0.0, 0.0), (params.phi0, 0.0)])
    # limit the profile plot to the first few oscillations; the radial scale
    # grows by e^2.8 per half-turn of the spiral and a full-span linear plot
    # collapses everything interesting to the origin
    if params.stability is StabilityType.SPIRAL_TYPE_II:
        zeros = detect_psi_zeros(traj)
        t_cut = zeros[3].t if len(zeros) >= 4 else traj.t_end
    else:
        t_cut = traj.t_end
    rs = []
    rhos = []
    for s, t in zip(profile, traj.t):
        if t > t_cut:
            break
        rs.append(s.r)
        rhos.append(s.rho)
    ray = [params.phi0 * r for r in rs]
    write_svg(out / "profile.svg",
              [(rs, rhos, "#1f77b4"), (rs, ray, "#d62728")])


def cmd_orbit(args) -> int:
    cfg = build_config(args)
    params = _build(args)
    traj = shoot_unstable_manifold(
        params,
        eps=cfg.eps_start,
        t_max=cfg.t_max,
        max_crossings=cfg.max_crossings,
        rel_tol=cfg.rel_tol,
        conv_tol=cfg.conv_tol,
    )
    target = args.target_phi if args.target_phi is not None else params.phi0
    report = crossing_report(traj, target)
    profile = radial.to_profile(traj)

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if "csv" in cfg.formats:
        write_csv(out / "trajectory.csv", ["t", "phi", "psi"],
                  zip(traj.t.tolist(), traj.phi.tolist(), traj.psi.tolist()))
        write_csv(out / "profile.csv", ["r", "rho", "rho_r", "rho_rr", "residual"],
                  ((s.r, s.rho, s.rho_r, s.rho_rr, radial.ode1_residual(s, params))
                   for s in profile))
    if "json" in cfg.formats:
        (out / "events.json").write_text(dumps_json(crossing_report_to_dict(report)), encoding="utf-8")
    if "svg" in cfg.formats:
        _orbit_svgs(out, traj, profile)
    print(f"orbit ({params.n},{params.p},{params.k}): {len(traj)} states, "
          f"terminated_by={traj.terminated_by.value}, "
          f"{len(report.psi_zeros)} psi zeros, {len(report.phi_hits)} hits of "
          f"phi={fmt17(target)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = build_config(args)
    params = _build(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if params.stability is StabilityType.CENTER_TYPE_I:
        report = barrier.case1_check(params, c=args.c, grid_points=cfg.grid_points)
        payload = barrier1_to_dict(report)
        print(f"invariant region ({params.n},{params.p},{params.k}) with c={fmt17(report.c)}:")
        print(f"  F(0) = {fmt17(report.f0)}")
        print(f"  G(0) = {fmt17(report.g0)}")
        print(f"  G(lambda^2 phi0^2) = {fmt17(report.g_end)}")
        print(f"  grid margin = {fmt17(report.grid_margin)}")
        ok = report.passed and report.grid_margin > 0.0
    else:
        report = barrier.case2_check(params, grid_points=cfg.grid_points,
                                     cycle_grid=(cfg.cycle_grid, cfg.cycle_grid))
        payload = barrier2_to_dict(report)
        print(f"spiral certificates ({params.n},{params.p},{params.k}):")
        print(f"  min F(s) = {fmt17(report.fs_min)} at s = {fmt17(report.fs_argmin)}")
        print(f"  step-1 grid margin = {fmt17(report.g_grid_margin)}")
        print(f"  no-limit-cycle margin (max Y2+X2) = {fmt17(report.cycle_margin)}")
        ok = report.passed
    if "json" in cfg.formats:
        (out / "barrier.json").write_text(dumps_json(payload), encoding="utf-8")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_BARRIER_FAILURE


def cmd_geometry(args) -> int:
    cfg = build_config(args)
    params = _build(args)
    report = geometry.geometry_report(params)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in cfg.formats:
        (out / "geometry.json").write_text(dumps_json(geometry_to_dict(report)), encoding="utf-8")
    print(f"geometry ({params.n},{params.p},{params.k}):")
    print(f"  cos_alpha    = {fmt17(report.cos_alpha)}")
    print(f"  volume_ratio = {fmt17(report.volume_ratio)}")
    print(f"  slope_w      = {fmt17(report.slope_w)}")
    for angle, mult in report.jordan_angles:
        print(f"  jordan angle {fmt17(angle)} x{mult}")
    return EXIT_OK


def cmd_density(args) -> int:
    cfg = build_config(args)
    params = _build(args)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if args.radii:
        radii = [float(v) for v in args.radii.split(",")]
        traj = shoot_unstable_manifold(params, eps=cfg.eps_start, t_max=cfg.t_max,
                                       max_crossings=cfg.max_crossings,
                                       rel_tol=cfg.rel_tol, conv_tol=cfg.conv_tol)
        profile = radial.to_profile(traj)
        thetas = [analysis.theta_of_radius(profile, params, r, n_panels=cfg.quad_panels)
                  for r in radii]
        payload = {
            "params": params_to_dict(params),
            "radii": radii,
            "thetas": thetas,
            "theta_infinity": analysis.theta_infinity(params),
        }
        if "json" in cfg.formats:
            (out / "density.json").write_text(dumps_json(payload), encoding="utf-8")
        for r, th in zip(radii, thetas):
            print(f"Theta({fmt17(r)}) = {fmt17(th)}")
        print(f"Theta_infinity = {fmt17(payload['theta_infinity'])}")
        return EXIT_OK
    traj = shoot_unstable_manifold(params, eps=cfg.eps_start, t_max=cfg.t_max,
                                   max_crossings=cfg.max_crossings,
                                   rel_tol=cfg.rel_tol, conv_tol=cfg.conv_tol)
    report = analysis.density_report(traj, params, n_panels=cfg.quad_panels)
    if "json" in cfg.formats:
        (out / "density.json").write_text(dumps_json(density_to_dict(report)), encoding="utf-8")
    print(f"density ({params.n},{params.p},{params.k}): {len(report.thetas)} crossings")
    print(f"  Theta_1 = {fmt17(report.thetas[0])}")
    print(f"  Theta_infinity = {fmt17(report.theta_infinity)}")
    print(f"  strictly_below_cone = {report.strictly_below_cone}")
    return EXIT_OK


def cmd_maps_check(args) -> int:
    cfg = build_config(args)
    params = build_params(3, 2, 2)
    import numpy as np

    pts = hopf.random_sphere_points(4, cfg.sample_count, seed=cfg.seed)
    sv_dev = 0.0
    for x in pts:
        sv = hopf.numeric_singular_values(hopf.hopf_map, x, h=cfg.fd_step)
        sv_dev = max(sv_dev, float(np.max(np.abs(sv - np.array([2.0, 2.0, 0.0])))))
    sum_dev = hopf.condition_b_check(hopf.hopf_map, params, cfg.sample_count,
                                     h=cfg.fd_step, seed=cfg.seed)
    payload = {
        "params": params_to_dict(params),
        "samples": cfg.sample_count,
        "fd_step": cfg.fd_step,
        "seed": cfg.seed,
        "max_singular_value_deviation": sv_dev,
        "max_angle_sum_deviation": sum_dev,
    }
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in cfg.formats:
        (out / "maps_check.json").write_text(dumps_json(payload), encoding="utf-8")
    print(f"witness map over {cfg.sample_count} points:")
    print(f"  max |singular values - (2,2,0)| = {fmt17(sv_dev)}")
    print(f"  max deviation of the angle sum  = {fmt17(sum_dev)}")
    return EXIT_OK


# ----------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, with_triple: bool = True) -> None:
    if with_triple:
        sub.add_argument("n", type=int)
        sub.add_argument("p", type=int)
        sub.add_argument("k", type=int)
        sub.add_argument("--allow-inadmissible", action="store_true")
    sub.add_argument("--config", help=f"config file (or set {CONFIG_ENV_VAR})")
    sub.add_argument("--out-dir", dest="out_dir")
    sub.add_argument("--formats", help="comma list from json,csv,svg")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--jobs", type=int)
    sub.add_argument("--rel-tol", dest="rel_tol", type=float)
    sub.add_argument("--abs-tol", dest="abs_tol", type=float)
    sub.add_argument("--conv-tol", dest="conv_tol", type=float)
    sub.add_argument("--event-tol", dest="event_tol", type=float)
    sub.add_argument("--eps", dest="eps_start", type=float)
    sub.add_argument("--t-max", dest="t_max", type=float)
    sub.add_argument("--max-crossings", dest="max_crossings", type=int)
    sub.add_argument("--grid-points", dest="grid_points", type=int)
    sub.add_argument("--quad-panels", dest="quad_panels", type=int)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lo-dynamics",
        description="Phase-plane dynamics and invariants of equivariant minimal cone graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="admissibility, constants and stability type")
    p_cls.add_argument("n", type=int, nargs="?")
    p_cls.add_argument("p", type=int, nargs="?")
    p_cls.add_argument("k", type=int, nargs="?")
    p_cls.add_argument("--allow-inadmissible", action="store_true")
    p_cls.add_argument("--sweep", nargs=2, type=int, metavar=("N_MAX", "K_MAX"))
    _add_common(p_cls, with_triple=False)
    p_cls.set_defaults(func=cmd_classify)

    p_orb = sub.add_parser("orbit", help="shoot the connecting orbit and emit data files")
    _add_common(p_orb)
    p_orb.add_argument("--target-phi", dest="target_phi", type=float,
                       help="slope for crossing detection (default: phi0)")
    p_orb.set_defaults(func=cmd_orbit)

    p_ver = sub.add_parser("verify", help="run the certificate suite for the type")
    _add_common(p_ver)
    p_ver.add_argument("-c", type=float, default=None,
                       help="barrier constant override (real-eigenvalue type)")
    p_ver.set_defaults(func=cmd_verify)

    p_geo = sub.add_parser("geometry", help="closed-form geometric invariants")
    _add_common(p_geo)
    p_geo.set_defaults(func=cmd_geometry)

    p_den = sub.add_parser("density", help="density report (spiral type) or Theta(R) sweep")
    _add_common(p_den)
    p_den.add_argument("--radii", help="comma list of radii for a Theta(R) sweep")
    p_den.set_defaults(func=cmd_density)

    p_map = sub.add_parser("maps-check", help="witness-map singular values and angle sum")
    _add_common(p_map, with_triple=False)
    p_map.add_argument("--samples", dest="sample_count", type=int)
    p_map.add_argument("--step", dest="fd_step", type=float)
    p_map.set_defaults(func=cmd_maps_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InadmissibleTriple as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except BlowupDetected as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (NotTypeII, InsufficientHits) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WRONG_TYPE
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
