"""Command line front end emitting CSV/JSON artifacts.

One run per invocation: pick a mode, optionally load defaults from a
JSON config file, override with flags, and write deterministic artifacts
(eigenvalue dumps, sweep curves, convergence histories, a JSON run
report echoing the configuration, and a gnuplot script for the data).

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import interval1d, line1d, spectra
from .bem2d import (KernelParams, assemble_calderon_2d, assemble_coupling,
                    assemble_operators, make_circle, make_square,
                    make_three_domain)
from .linalg import SingularMatrixError, eig_dense

MODES = ("1d-2dom", "1d-3dom", "1d-bounded", "schwarz-equiv",
         "spectrum-2d", "spectrum-2d-3dom", "sweep")
SWEEP_KINDS = ("1d", "1d-3dom", "2d", "2d-3dom")
GEOMETRIES = ("circle", "square", "annulus")

_DEFAULTS = {
    "a": [1.0],
    "sigma": [0.1],
    "geometry": None,
    "n_elements": 128,
    "radii": [0.5, 1.0],
    "gamma": 0.5,
    "alpha": 1.0,
    "beta": 0.0,
    "alpha2": 0.0,
    "beta2": 1.0,
    "start": [1.0, -0.4, 0.3, 2.0],
    "steps": 12,
    "sigma_min": -0.95,
    "sigma_max": 3.0,
    "eps": 0.05,
    "quad_order": 8,
    "kind": "1d",
    "out": "mtf-out",
}


class ConfigError(Exception):
    """Invalid or incomplete run configuration."""


@dataclass
class RunConfig:
    mode: str
    a: list
    sigma: list
    geometry: str
    n_elements: int
    radii: list
    gamma: float
    alpha: float
    beta: float
    alpha2: float
    beta2: float
    start: list
    steps: int
    sigma_min: float
    sigma_max: float
    eps: float
    quad_order: int
    kind: str
    out: str

    def run_id(self):
        payload = json.dumps(_jsonable(asdict(self)), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


@dataclass
class RunReport:
    run_id: str
    config: dict
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    files: list = field(default_factory=list)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return obj.real if obj.imag == 0 else {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _parse_complex_list(values):
    out = []
    for v in values:
        try:
            c = complex(str(v).replace(" ", ""))
        except ValueError as exc:
            raise ConfigError(f"cannot parse relaxation parameter {v!r}") from exc
        out.append(c if c.imag != 0 else c.real)
    return out


def _build_parser():
    p = argparse.ArgumentParser(
        prog="mtf",
        description="Multitrace transmission-problem experiments "
                    "(1D exact engines, 2D boundary elements, spectra)")
    p.add_argument("mode", nargs="?", choices=MODES,
                   help="run mode; may also come from --config")
    p.add_argument("--config", help="JSON file with configuration values "
                                    "(flags override file values)")
    p.add_argument("--a", help="material constant(s), comma separated per subdomain")
    p.add_argument("--sigma", help="relaxation parameter(s), comma separated "
                                   "(complex literals accepted)")
    p.add_argument("--geometry", choices=GEOMETRIES)
    p.add_argument("--n", dest="n_elements", type=int,
                   help="elements per curve (spectrum/sweep modes)")
    p.add_argument("--radii", help="inner,outer radii of the annulus preset")
    p.add_argument("--gamma", type=float, help="interface location in (0, 1)")
    p.add_argument("--alpha", type=float, help="solution jump (first interface)")
    p.add_argument("--beta", type=float, help="derivative jump (first interface)")
    p.add_argument("--alpha2", type=float, help="solution jump (second interface)")
    p.add_argument("--beta2", type=float, help="derivative jump (second interface)")
    p.add_argument("--start", help="start state, comma separated")
    p.add_argument("--steps", type=int,
                   help="iteration count, or grid size in sweep mode")
    p.add_argument("--sigma-min", dest="sigma_min", type=float)
    p.add_argument("--sigma-max", dest="sigma_max", type=float)
    p.add_argument("--eps", type=float, help="cluster radius")
    p.add_argument("--quad-order", dest="quad_order", type=int)
    p.add_argument("--kind", choices=SWEEP_KINDS, help="sweep operator family")
    p.add_argument("--out", help="output directory")
    return p


def _split_list(text, cast):
    if isinstance(text, (list, tuple)):
        return [cast(v) for v in text]
    return [cast(tok) for tok in str(text).split(",") if tok != ""]


# flags whose values may start with a minus sign (negative numbers,
# comma lists, complex literals), which argparse would mistake for options
_NUMERIC_FLAGS = ("--sigma", "--a", "--radii", "--start", "--alpha",
                  "--beta", "--alpha2", "--beta2", "--gamma",
                  "--sigma-min", "--sigma-max")


def _join_negative_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok in _NUMERIC_FLAGS and nxt is not None
                and nxt.startswith("-") and nxt[1:2] in "0123456789."):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_config(argv):
    """Merge defaults, config file and flags into a validated RunConfig."""
    ns = _build_parser().parse_args(_join_negative_values(list(argv)))
    merged = dict(_DEFAULTS)
    mode = ns.mode
    if ns.config:
        try:
            with open(ns.config) as fh:
                file_values = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        mode = mode or file_values.pop("mode", None)
        file_values.pop("mode", None)
        unknown = set(file_values) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_values)
    if mode is None:
        raise ConfigError("missing required field 'mode' "
                          "(give it on the command line or in the config file)")
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; choose from {MODES}")
    for key in ("a", "sigma", "geometry", "n_elements", "radii", "gamma",
                "alpha", "beta", "alpha2", "beta2", "start", "steps",
                "sigma_min", "sigma_max", "eps", "quad_order", "kind", "out"):
        val = getattr(ns, key, None)
        if val is not None:
            merged[key] = val

    cfg = RunConfig(
        mode=mode,
        a=_split_list(merged["a"], float),
        sigma=_parse_complex_list(_split_list(merged["sigma"], str)),
        geometry=merged["geometry"],
        n_elements=int(merged["n_elements"]),
        radii=_split_list(merged["radii"], float),
        gamma=float(merged["gamma"]),
        alpha=float(merged["alpha"]),
        beta=float(merged["beta"]),
        alpha2=float(merged["alpha2"]),
        beta2=float(merged["beta2"]),
        start=_split_list(merged["start"], float),
        steps=int(merged["steps"]),
        sigma_min=float(merged["sigma_min"]),
        sigma_max=float(merged["sigma_max"]),
        eps=float(merged["eps"]),
        quad_order=int(merged["quad_order"]),
        kind=str(merged["kind"]),
        out=str(merged["out"]),
    )
    _validate(cfg)
    return cfg


def _sigmas_for(cfg, count):
    s = cfg.sigma
    if len(s) == 1:
        return list(s) * count
    if len(s) != count:
        raise ConfigError(f"mode {cfg.mode!r} needs {count} relaxation "
                          f"parameter(s), got {len(s)}")
    return list(s)


def _a_for(cfg, count):
    a = cfg.a
    if len(a) == 1:
        return list(a) * count
    if len(a) != count:
        raise ConfigError(f"mode {cfg.mode!r} needs {count} material "
                          f"constant(s), got {len(a)}")
    return list(a)


def _validate(cfg):
    if any(v <= 0 for v in cfg.a):
        raise ConfigError("material constant a must be positive")
    if any(complex(s) == -1 for s in cfg.sigma):
        raise ConfigError("relaxation parameter -1 is rejected: the diagonal "
                          "multitrace block (1 + sigma) Id - P is not invertible")
    if cfg.mode == "spectrum-2d" and cfg.geometry is None:
        raise ConfigError("missing required field 'geometry' for mode "
                          "'spectrum-2d' (circle or square)")
    if cfg.mode == "spectrum-2d" and cfg.geometry == "annulus":
        raise ConfigError("mode 'spectrum-2d' expects geometry circle or "
                          "square; use spectrum-2d-3dom for the annulus")
    if not 0 < cfg.gamma < 1:
        raise ConfigError("gamma must lie in (0, 1)")
    if cfg.mode == "sweep":
        if cfg.kind not in SWEEP_KINDS:
            raise ConfigError(f"unknown sweep kind {cfg.kind!r}")
        if cfg.steps < 2:
            raise ConfigError("sweep needs at least 2 grid points")
    if cfg.n_elements < 3:
        raise ConfigError("need at least 3 elements per curve")
    if len(cfg.radii) != 2 or not 0 < cfg.radii[0] < cfg.radii[1]:
        raise ConfigError("radii must be an increasing positive pair")


def _sigma_grid(cfg):
    grid = np.linspace(cfg.sigma_min, cfg.sigma_max, cfg.steps)
    return grid[np.abs(grid + 1.0) > 1e-9]     # -1 excluded by construction


def _write_convergence(path, errors):
    with open(path, "w") as fh:
        fh.write("step,error\n")
        for k, e in enumerate(errors):
            fh.write(f"{k},{e:.16e}\n")


def _gnuplot_script(path, lines):
    with open(path, "w") as fh:
        fh.write("# gnuplot script generated alongside the data files\n")
        fh.write("\n".join(lines) + "\n")


def _mesh_for(cfg):
    if cfg.geometry == "circle":
        return make_circle(cfg.n_elements)
    if cfg.geometry == "square":
        n_side, rem = divmod(cfg.n_elements, 4)
        if rem:
            raise ConfigError("square geometry needs n divisible by 4")
        return make_square(n_side)
    raise ConfigError(f"unsupported geometry {cfg.geometry!r}")


def _spectrum_payload(result):
    return {
        "spectral_radius": result.spectral_radius,
        "theoretical_points": _jsonable(result.theoretical_points),
        "cluster_fractions": _jsonable(result.cluster_fractions),
        "remainder_fraction": result.remainder_fraction,
        "n_eigenvalues": len(result.eigenvalues),
    }


def run(cfg):
    """Execute one configured run, writing artifacts into ``cfg.out``."""
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    report = RunReport(run_id=cfg.run_id(), config=_jsonable(asdict(cfg)))
    clock = time.perf_counter
    t_start = clock()

    def record(path):
        report.files.append(str(path))
        return path

    if cfg.mode == "1d-2dom":
        (a,) = _a_for(cfg, 1)
        s1, s2 = _sigmas_for(cfg, 2)
        jump = line1d.JumpData(cfg.alpha, cfg.beta)
        op = line1d.jacobi_operator_2dom(a, s1, s2, jump)
        hist = line1d.block_jacobi_run(op, np.zeros(4), cfg.steps)
        eigs = eig_dense(op.matrix).eigenvalues
        _write_convergence(record(out / "convergence.csv"), hist.errors)
        report.results = {
            "eigenvalues": _jsonable(eigs),
            "spectral_radius": float(np.max(np.abs(eigs))),
            "errors": _jsonable(hist.errors),
            "converged_in": int(np.argmax(hist.errors <= 1e-12))
            if np.any(hist.errors <= 1e-12) else None,
            "fixed_point": _jsonable(hist.fixed_point),
        }
        _gnuplot_script(record(out / "plot.gp"), [
            "set logscale y", 'set xlabel "iteration"', 'set ylabel "error"',
            f'plot "{out / "convergence.csv"}" every ::1 using 1:2 '
            'with linespoints title "block Jacobi error"'])

    elif cfg.mode == "1d-3dom":
        (a,) = _a_for(cfg, 1)
        s0, s1, s2 = _sigmas_for(cfg, 3)
        op = line1d.jacobi_operator_3dom(
            a, s0, s1, s2, line1d.JumpData(cfg.alpha, cfg.beta),
            line1d.JumpData(cfg.alpha2, cfg.beta2))
        hist = line1d.block_jacobi_run(op, np.zeros(8), cfg.steps)
        eigs = eig_dense(op.matrix).eigenvalues
        _write_convergence(record(out / "convergence.csv"), hist.errors)
        report.results = {
            "eigenvalues": _jsonable(eigs),
            "spectral_radius": float(np.max(np.abs(eigs))),
            "errors": _jsonable(hist.errors),
            "converged_in": int(np.argmax(hist.errors <= 1e-12))
            if np.any(hist.errors <= 1e-12) else None,
        }

    elif cfg.mode == "1d-bounded":
        (a,) = _a_for(cfg, 1)
        geom = interval1d.BoundedGeometry(cfg.gamma, a)
        P1, P2 = interval1d.calderon_bounded(geom)
        pair = interval1d.dtn_operators(geom)
        P1d, P2d = interval1d.calderon_from_dtn(pair)
        c1, c2, evaluate = interval1d.transmission_solve_bounded(
            geom, line1d.JumpData(cfg.alpha, cfg.beta))
        xs = np.linspace(0.0, 1.0, 401)
        with open(record(out / "solution.csv"), "w") as fh:
            fh.write("x,u\n")
            for x, u in zip(xs, evaluate(xs)):
                fh.write(f"{x:.6f},{u:.16e}\n")
        report.results = {
            "dtn": {"dtn1": pair.dtn1, "dtn2": pair.dtn2,
                    "ntd1": pair.ntd1, "ntd2": pair.ntd2},
            "projector_residuals": [
                float(np.max(np.abs(P1 @ P1 - P1))),
                float(np.max(np.abs(P2 @ P2 - P2)))],
            "dtn_rebuild_residual": float(max(np.max(np.abs(P1 - P1d)),
                                              np.max(np.abs(P2 - P2d)))),
            "coefficients": [c1, c2],
        }

    elif cfg.mode == "schwarz-equiv":
        (a,) = _a_for(cfg, 1)
        if len(cfg.start) != 4:
            raise ConfigError("start state needs 4 values (u1, du1, u2, du2)")
        geom = interval1d.BoundedGeometry(cfg.gamma, a)
        rep = interval1d.equivalence_check(
            geom, interval1d.SchwarzState(*cfg.start), cfg.steps)
        _write_convergence(record(out / "deviation.csv"), rep.deviations)
        report.results = {
            "max_deviation": rep.max_deviation,
            "schwarz_norms": _jsonable(
                np.max(np.abs(rep.schwarz_history), axis=1)),
            "jacobi_norms": _jsonable(
                np.max(np.abs(rep.jacobi_history), axis=1)),
        }

    elif cfg.mode == "spectrum-2d":
        a1, a2 = _a_for(cfg, 2)
        s1, s2 = _sigmas_for(cfg, 2)
        mesh = _mesh_for(cfg)
        t0 = clock()
        par1 = KernelParams(a1, cfg.quad_order)
        ops1 = assemble_operators(mesh, par1)
        P1 = assemble_calderon_2d(mesh, par1, "interior", operators=ops1)
        if a2 == a1:
            P2 = assemble_calderon_2d(mesh, par1, "exterior", operators=ops1)
        else:
            P2 = assemble_calderon_2d(mesh, KernelParams(a2, cfg.quad_order),
                                      "exterior")
        report.timings["assembly_s"] = clock() - t0
        t0 = clock()
        cfgr = spectra.RelaxationConfig((s1, s2))
        A, B = spectra.jacobi_2d_2dom(P1, P2, cfgr)
        result = spectra.pencil_spectrum(A, B, cfgr.sigmas, cfg.eps)
        report.timings["eigensolve_s"] = clock() - t0
        spectra.write_eigenvalues_csv(record(out / "eigenvalues.csv"),
                                      result.eigenvalues)
        report.results = _spectrum_payload(result)
        _gnuplot_script(record(out / "plot.gp"), [
            "set size ratio -1", 'set xlabel "Re"', 'set ylabel "Im"',
            f'plot "{out / "eigenvalues.csv"}" every ::1 using 1:2 '
            'with points pt 7 ps 0.5 title "Jacobi spectrum"'])

    elif cfg.mode == "spectrum-2d-3dom":
        a0, a1, a2 = _a_for(cfg, 3)
        s0, s1, s2 = _sigmas_for(cfg, 3)
        inner, outer = make_three_domain(cfg.n_elements, cfg.n_elements,
                                         cfg.radii[0], cfg.radii[1])
        t0 = clock()
        P1 = assemble_calderon_2d(inner, KernelParams(a1, cfg.quad_order),
                                  "interior")
        P2 = assemble_calderon_2d(outer, KernelParams(a2, cfg.quad_order),
                                  "exterior")
        coupling = assemble_coupling(inner, outer,
                                     KernelParams(a0, cfg.quad_order))
        report.timings["assembly_s"] = clock() - t0
        t0 = clock()
        cfgr = spectra.RelaxationConfig((s0, s1, s2))
        A, B = spectra.jacobi_2d_3dom(P1, P2, coupling, cfgr)
        result = spectra.pencil_spectrum(A, B, cfgr.sigmas, cfg.eps)
        report.timings["eigensolve_s"] = clock() - t0
        spectra.write_eigenvalues_csv(record(out / "eigenvalues.csv"),
                                      result.eigenvalues)
        report.results = _spectrum_payload(result)

    elif cfg.mode == "sweep":
        grid = _sigma_grid(cfg)
        builder, label = _sweep_builder(cfg)
        rows = spectra.sigma_sweep(builder, grid, cfg.eps)
        spectra.write_sweep_csv(record(out / "sweep.csv"), rows)
        radii = [r.spectral_radius for r in rows]
        report.results = {
            "kind": label,
            "n_grid": len(rows),
            "max_radius": max(radii),
            "min_radius": min(radii),
            "analytic_radius_max_error": float(max(
                abs(r.spectral_radius - spectra.spectral_radius_formula(r.sigma))
                for r in rows)) if cfg.kind in ("1d", "1d-3dom") else None,
        }
        _gnuplot_script(record(out / "plot.gp"), [
            'set xlabel "sigma"', 'set ylabel "spectral radius"',
            f'plot "{out / "sweep.csv"}" every ::1 using 1:2 '
            'with lines title "rho(J)", 1 with lines dt 2 title "1"'])

    report.timings["total_s"] = clock() - t_start
    with open(out / "run_report.json", "w") as fh:
        json.dump(_jsonable(asdict(report)), fh, indent=2)
    report.files.append(str(out / "run_report.json"))
    return report


def _sweep_builder(cfg):
    (a,) = _a_for(cfg, 1)
    if cfg.kind == "1d":
        def builder(s):
            op = line1d.jacobi_operator_2dom(a, s, s, line1d.JumpData(0, 0))
            return eig_dense(op.matrix).eigenvalues
        return builder, "analytic line, 2 subdomains"
    if cfg.kind == "1d-3dom":
        def builder(s):
            op = line1d.jacobi_operator_3dom(a, s, s, s, line1d.JumpData(0, 0),
                                             line1d.JumpData(0, 0))
            return eig_dense(op.matrix).eigenvalues
        return builder, "analytic line, 3 subdomains"
    if cfg.kind == "2d":
        if cfg.geometry is None:
            raise ConfigError("missing required field 'geometry' for 2d sweep")
        mesh = _mesh_for(cfg)
        par = KernelParams(a, cfg.quad_order)
        ops = assemble_operators(mesh, par)
        P1 = assemble_calderon_2d(mesh, par, "interior", operators=ops)
        P2 = assemble_calderon_2d(mesh, par, "exterior", operators=ops)

        def builder(s):
            A, B = spectra.jacobi_2d_2dom(
                P1, P2, spectra.RelaxationConfig((s, s)))
            return spectra.pencil_spectrum(A, B, (s, s)).eigenvalues
        return builder, "boundary elements, 2 subdomains"
    if cfg.kind == "2d-3dom":
        inner, outer = make_three_domain(cfg.n_elements, cfg.n_elements,
                                         cfg.radii[0], cfg.radii[1])
        par = KernelParams(a, cfg.quad_order)
        P1 = assemble_calderon_2d(inner, par, "interior")
        P2 = assemble_calderon_2d(outer, par, "exterior")
        coupling = assemble_coupling(inner, outer, par)

        def builder(s):
            A, B = spectra.jacobi_2d_3dom(
                P1, P2, coupling, spectra.RelaxationConfig((s, s, s)))
            return spectra.pencil_spectrum(A, B, (s, s, s)).eigenvalues
        return builder, "boundary elements, 3 subdomains"
    raise ConfigError(f"unknown sweep kind {cfg.kind!r}")


def main(argv=None):
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (SingularMatrixError, np.linalg.LinAlgError, FloatingPointError,
            ValueError) as exc:
        print(f"numerical failure [{type(exc).__name__}]: {exc}",
              file=sys.stderr)
        return 3
    print(f"run {report.run_id} ({cfg.mode}) finished in "
          f"{report.timings['total_s']:.2f}s; artifacts in {cfg.out}")
    for key, val in sorted(report.results.items()):
        if isinstance(val, (int, float, str)) or val is None:
            print(f"  {key}: {val}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
