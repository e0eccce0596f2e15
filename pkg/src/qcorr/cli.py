"""Command-line surface: single-point reports, deterministic 2-D parameter
sweeps, entanglement band-edge finding, and the self-validation harness.

Subcommands
-----------
point      one parameter set -> full correlation report
sweep      1-D or 2-D grid -> CSV/JSON, one row per grid point
band       scan omega2 for the entanglement band, bisect its edges
validate   run the internal cross-checks, exit nonzero on failure

Exit codes: 0 ok (including an empty band), 1 validation-suite failure,
2 bad input, 3 numerical failure.

Sweep output is byte-deterministic: identical invocations produce identical
files regardless of worker count, and run metadata lives in '#' comment
headers only.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, asdict
from typing import Optional, Sequence

import numpy as np

from . import approx, gaussian, spectral
from .errors import (
    NumericalError,
    ParameterError,
    QcorrError,
    ResonantParams,
)
from .gaussian import CorrelationReport, correlation_report
from .model import ModelParams, validate_params
from .spectral import covariance_analytic, covariance_quadrature

SWEEP_AXES = ("k", "omega2", "temperature", "gamma")
CSV_COLUMNS = (
    "axis1", "axis2", "E_N", "discord2", "nu_tilde_minus", "nu_minus", "nu_plus",
    "mu", "mu1", "mu2", "eta_plus_var", "eta_minus_var", "pi_plus_var",
    "pi_minus_var", "method", "status",
)
METHOD_AGREEMENT_TOL = 1e-7
SPOT_CHECK_EVERY = 50

TOL_OVERRIDE_ENV = "QCORR_TOL_OVERRIDES"  # test hook, "name=value,name=value"


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepGrid:
    """Rectangular sweep specification.

    axis2 may be None for 1-D sweeps.  Points are emitted axis2-major: the
    second axis is the outer (slow) loop.
    """

    axis1: str
    lo1: float
    hi1: float
    n1: int
    base: ModelParams
    axis2: Optional[str] = None
    lo2: float = 0.0
    hi2: float = 0.0
    n2: int = 0
    method: str = "analytic"

    def __post_init__(self):
        if self.axis1 not in SWEEP_AXES:
            raise ParameterError(f"unknown sweep axis {self.axis1!r}; choose from {SWEEP_AXES}")
        if self.axis2 is not None and self.axis2 not in SWEEP_AXES:
            raise ParameterError(f"unknown sweep axis {self.axis2!r}; choose from {SWEEP_AXES}")
        if self.axis2 == self.axis1:
            raise ParameterError("the two sweep axes must differ")
        if self.n1 < 2 or (self.axis2 is not None and self.n2 < 2):
            raise ParameterError("grid point counts must be >= 2")

    def axis_values(self):
        v1 = np.linspace(self.lo1, self.hi1, self.n1)
        v2 = np.linspace(self.lo2, self.hi2, self.n2) if self.axis2 else np.array([math.nan])
        return v1, v2

    def points(self):
        """(axis1_value, axis2_value, params) in deterministic emission order."""
        v1, v2 = self.axis_values()
        for b in v2:
            for a in v1:
                over = {self.axis1: float(a)}
                if self.axis2:
                    over[self.axis2] = float(b)
                yield float(a), float(b), self.base.replace(**over)


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep; numeric fields are None unless status is ok."""

    axis1: float
    axis2: float
    report: Optional[CorrelationReport]
    method: str
    status: str
    message: str = ""


@dataclass(frozen=True)
class BandResult:
    """Entanglement band in omega2 at otherwise fixed parameters."""

    empty: bool
    omega_prime: float = math.nan
    omega_double_prime: float = math.nan
    max_log_negativity: float = 0.0
    bisect_tol: float = math.nan

    def validate(self, logneg_at) -> "BandResult":
        if self.empty:
            return self
        if not (self.omega_prime < self.omega_double_prime):
            raise NumericalError("band edges out of order")
        mid = 0.5 * (self.omega_prime + self.omega_double_prime)
        if logneg_at(mid) <= 0.0:
            raise NumericalError("no entanglement at the band midpoint")
        if logneg_at(self.omega_prime - 10.0 * self.bisect_tol) != 0.0 or \
                logneg_at(self.omega_double_prime + 10.0 * self.bisect_tol) != 0.0:
            raise NumericalError("entanglement does not vanish outside the reported band")
        return self


# ---------------------------------------------------------------------------
# engine plumbing
# ---------------------------------------------------------------------------

def _covariance(p: ModelParams, method: str):
    if method == "analytic":
        return covariance_analytic(p)
    if method == "quadrature":
        return covariance_quadrature(p)
    raise ParameterError(f"unknown method {method!r}")


def _eval_point(task):
    """Worker entry: returns a SweepRecord for one (a, b, params, method)."""
    a, b, p, method = task
    try:
        validate_params(p)
    except ResonantParams as exc:
        return SweepRecord(a, b, None, method, "skipped_resonant", str(exc))
    except QcorrError as exc:
        return SweepRecord(a, b, None, method, "failed", str(exc))
    try:
        rep = correlation_report(_covariance(p, method))
        return SweepRecord(a, b, rep, method, "ok")
    except QcorrError as exc:
        return SweepRecord(a, b, None, method, "failed", str(exc))


def run_sweep(grid: SweepGrid, workers: int = 1, seed: int = 0, progress=None):
    """Evaluate the grid, preserving emission order regardless of workers.

    With the default analytic method, roughly one ok-point in fifty is
    re-evaluated by quadrature as a continuous cross-validation; mismatches
    are reported through ``progress`` (and never change the records).
    """
    methods = ("analytic", "quadrature") if grid.method == "both" else (grid.method,)
    tasks = [(a, b, p, m) for (a, b, p) in grid.points() for m in methods]

    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_eval_point, tasks, chunksize=8))
    else:
        records = []
        for i, t in enumerate(tasks):
            records.append(_eval_point(t))
            if progress and (i + 1) % 200 == 0:
                progress(f"{i + 1}/{len(tasks)} points done")

    if grid.method == "analytic":
        ok_idx = [i for i, r in enumerate(records) if r.status == "ok"]
        rng = np.random.default_rng(seed)
        n_spot = max(1, len(ok_idx) // SPOT_CHECK_EVERY) if ok_idx else 0
        for i in map(int, rng.choice(ok_idx, size=n_spot, replace=False) if n_spot else []):
            rec = records[i]
            check = _eval_point((rec.axis1, rec.axis2, tasks[i][2], "quadrature"))
            if check.status == "ok":
                diff = abs(check.report.log_negativity - rec.report.log_negativity)
                if diff > METHOD_AGREEMENT_TOL and progress:
                    progress(f"spot check MISMATCH at ({rec.axis1}, {rec.axis2}): |dE_N| = {diff:.3e}")
            elif progress:
                progress(f"spot check could not run at ({rec.axis1}, {rec.axis2}): {check.message}")
    return records


def _fmt(x) -> str:
    return repr(float(x))


def sweep_csv(grid: SweepGrid, records, seed: int) -> str:
    """Render records as CSV with a '#' metadata header (no timestamps)."""
    buf = io.StringIO()
    b = grid.base
    buf.write("# qcorr sweep\n")
    buf.write(f"# fixed: omega1={_fmt(b.omega1)} omega2={_fmt(b.omega2)} k={_fmt(b.k)} "
              f"gamma={_fmt(b.gamma)} omega_c={_fmt(b.omega_c)} temperature={_fmt(b.temperature)}\n")
    buf.write(f"# axis1: {grid.axis1} in [{_fmt(grid.lo1)}, {_fmt(grid.hi1)}] x {grid.n1}\n")
    if grid.axis2:
        buf.write(f"# axis2: {grid.axis2} in [{_fmt(grid.lo2)}, {_fmt(grid.hi2)}] x {grid.n2} (outer loop)\n")
    buf.write(f"# method: {grid.method}; seed: {seed}\n")
    buf.write("# note: axis ranges for figure-style sweeps are package defaults, not published values\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        row = [_fmt(r.axis1), "" if math.isnan(r.axis2) else _fmt(r.axis2)]
        if r.report is None:
            row += [""] * 12
        else:
            rep = r.report
            row += [_fmt(v) for v in (
                rep.log_negativity, rep.discord_mode2, rep.nu_tilde_minus,
                rep.nu_minus, rep.nu_plus, rep.mu, rep.mu1, rep.mu2,
                rep.eta_plus_var, rep.eta_minus_var, rep.pi_plus_var, rep.pi_minus_var,
            )]
        row += [r.method, r.status]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def sweep_json(grid: SweepGrid, records, seed: int) -> str:
    payload = {
        "fixed": asdict(grid.base),
        "axis1": {"name": grid.axis1, "lo": grid.lo1, "hi": grid.hi1, "n": grid.n1},
        "axis2": None if grid.axis2 is None else
                 {"name": grid.axis2, "lo": grid.lo2, "hi": grid.hi2, "n": grid.n2},
        "method": grid.method,
        "seed": seed,
        "records": [
            {
                "axis1": r.axis1,
                "axis2": None if math.isnan(r.axis2) else r.axis2,
                "method": r.method,
                "status": r.status,
                "message": r.message,
                "report": None if r.report is None else asdict(r.report),
            }
            for r in records
        ],
    }
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# band finding
# ---------------------------------------------------------------------------

def find_band(
    p: ModelParams,
    lo: float,
    hi: float,
    n_coarse: int = 200,
    bisect_tol: float = 1e-4,
) -> BandResult:
    """Locate the entanglement band in omega2 on [lo, hi].

    Dense coarse scan brackets the sign changes of E_N, then each edge is
    bisected to ``bisect_tol``.  An empty result is a valid outcome.  Grid
    points falling into the resonance exclusion zone are skipped.
    """

    def logneg_at(w2: float) -> float:
        q = p.replace(omega2=float(w2))
        try:
            validate_params(q)
        except ResonantParams:
            return math.nan
        return gaussian.log_negativity(covariance_analytic(q))

    xs = np.linspace(lo, hi, n_coarse)
    vals = np.array([logneg_at(x) for x in xs])
    good = ~np.isnan(vals)
    xs, vals = xs[good], vals[good]
    pos = vals > 0.0
    if not pos.any():
        return BandResult(empty=True, bisect_tol=bisect_tol)

    def bisect(a: float, b: float) -> float:
        # invariant: exactly one endpoint entangled
        fa = logneg_at(a) > 0.0
        while b - a > bisect_tol:
            mid = 0.5 * (a + b)
            fm = logneg_at(mid)
            if math.isnan(fm):  # resonance pocket; nudge deterministically
                mid = mid + 0.25 * (b - a)
                fm = logneg_at(mid)
            if (fm > 0.0) == fa:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    first, last = np.where(pos)[0][[0, -1]]
    w_lo = xs[first] if first == 0 else bisect(xs[first - 1], xs[first])
    w_hi = xs[last] if last == len(xs) - 1 else bisect(xs[last], xs[last + 1])
    max_en = float(vals.max())
    res = BandResult(empty=False, omega_prime=float(w_lo), omega_double_prime=float(w_hi),
                     max_log_negativity=max_en, bisect_tol=bisect_tol)
    if first > 0 and last < len(xs) - 1:
        res.validate(lambda w: logneg_at(w))
    return res


# ---------------------------------------------------------------------------
# validation harness
# ---------------------------------------------------------------------------

def _tolerances():
    tols = {
        "method_rel": 1e-8,
        "method_abs": 1e-10,
        "measure_abs": 1e-7,
        "symplectic": 1e-9,
        "equipartition_p": 1e-2,
        "equipartition_x": 2e-2,
        "weak_ratio_min": 3.0,
        "discord_oracle": 1e-4,
    }
    raw = os.environ.get(TOL_OVERRIDE_ENV, "")
    for item in filter(None, (s.strip() for s in raw.split(","))):
        name, _, val = item.partition("=")
        if name.strip() in tols:
            tols[name.strip()] = float(val)
    return tols


def run_validation(seed: int = 7, n_cases: int = 24, log=print):
    """Cross-method lattice, positivity scan, equipartition, weak-dissipation
    convergence and the discord grid oracle; returns (all_passed, rows)."""
    tols = _tolerances()
    rows = []

    def record(name: str, passed: bool, detail: str):
        rows.append((name, passed, detail))
        log(f"{'PASS' if passed else 'FAIL'}  {name:28s} {detail}")

    if n_cases <= 0:
        return True, rows

    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < n_cases:
        w2 = float(rng.uniform(1.0, 9.0))
        if abs(w2 - 10.0) < 1e-3:
            continue
        cases.append(ModelParams(
            omega1=10.0, omega2=w2, k=float(rng.uniform(0.0, 100.0)),
            gamma=float(rng.uniform(0.01, 0.5)), omega_c=500.0,
            temperature=float(rng.choice([0.1, 0.5, 5.0])),
        ))

    worst_rel, worst_meas, worst_nu = 0.0, 0.0, math.inf
    for p in cases:
        ga = covariance_analytic(p)
        gq = covariance_quadrature(p)
        scale = np.maximum(np.abs(gq.matrix), tols["method_abs"] / tols["method_rel"])
        worst_rel = max(worst_rel, float(np.max(np.abs(ga.matrix - gq.matrix) / scale)))
        ra, rq = correlation_report(ga), correlation_report(gq)
        worst_meas = max(worst_meas,
                         abs(ra.log_negativity - rq.log_negativity),
                         abs(ra.discord_mode2 - rq.discord_mode2))
        worst_nu = min(worst_nu, ra.nu_minus, rq.nu_minus)
    record("method_agreement", worst_rel <= tols["method_rel"],
           f"worst entry dev {worst_rel:.3e} (tol {tols['method_rel']:.1e})")
    record("measure_agreement", worst_meas <= tols["measure_abs"],
           f"worst E_N/discord dev {worst_meas:.3e} (tol {tols['measure_abs']:.1e})")
    record("symplectic_positivity", worst_nu >= 1.0 - tols["symplectic"],
           f"min nu_minus {worst_nu:.12f}")

    p_hot = ModelParams(10.0, 4.0, 10.0, 0.01, 500.0, 1e4)
    g_hot = covariance_analytic(p_hot)
    t = p_hot.temperature
    p_dev = max(abs(g_hot.matrix[1, 1] / t - 1.0), abs(g_hot.matrix[3, 3] / t - 1.0))
    v_s = np.array([[p_hot.omega1**2 + p_hot.k, -p_hot.k],
                    [-p_hot.k, p_hot.omega2**2 + p_hot.k]])
    x_dev = float(np.max(np.abs(g_hot.position_block @ v_s / t - np.eye(2))))
    record("equipartition", p_dev <= tols["equipartition_p"] and x_dev <= tols["equipartition_x"],
           f"<p^2>/T dev {p_dev:.3e}, x-block dev {x_dev:.3e}")

    errs = []
    for g in (1e-2, 1e-3, 1e-4):
        p = ModelParams(10.0, 4.0, 0.0, g, 500.0, 0.01)
        import warnings as _warnings
        with _warnings.catch_warnings():
            _warnings.simplefilter("ignore")
            wk = approx.weak_dissipation_covariances(p)
        ex = covariance_analytic(p).matrix
        mask = wk != 0.0
        errs.append(float(np.max(np.abs((wk[mask] - ex[mask]) / ex[mask]))))
    ratios = [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
    record("weak_dissipation_decay", all(r >= tols["weak_ratio_min"] for r in ratios),
           f"errors {['%.2e' % e for e in errs]}, ratios {['%.1f' % r for r in ratios]}")

    rng2 = np.random.default_rng(seed + 1)
    worst_disc = 0.0
    for _ in range(min(n_cases, 10)):
        gm = gaussian.random_physical_covariance(rng2)
        worst_disc = max(worst_disc, abs(
            gaussian.gaussian_discord_mode2(gm) - gaussian.discord_measurement_scan(gm)
        ))
    record("discord_grid_oracle", worst_disc <= tols["discord_oracle"],
           f"worst |closed - scan| {worst_disc:.3e} (tol {tols['discord_oracle']:.1e})")

    return all(r[1] for r in rows), rows


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _read_config(path: str) -> dict:
    """Flat 'key = value' file, '#' comments; 'grid' may repeat."""
    conf: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ParameterError(f"{path}:{lineno}: expected 'key = value'")
            key, val = key.strip(), val.strip()
            if key == "grid":
                conf.setdefault("grid", []).append(val)
            else:
                conf[key] = val
    return conf


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qcorr",
        description="Stationary quantum correlations of two detuned oscillators in a common Ohmic bath",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--omega1", type=float, default=None, help="first oscillator frequency")
        sp.add_argument("--omega2", type=float, default=None, help="second oscillator frequency")
        sp.add_argument("--k", type=float, default=None, help="spring coupling (frequency^2)")
        sp.add_argument("--gamma", type=float, default=None, help="dissipation rate")
        sp.add_argument("--omega-c", type=float, default=None, help="Lorentz-Drude cutoff")
        sp.add_argument("--temp", type=float, default=None, help="bath temperature")
        sp.add_argument("--config", type=str, default=None, help="flat key = value config file")
        sp.add_argument("--out", type=str, default=None, help="output file path")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("point", help="evaluate one parameter set")
    add_common(sp)
    sp.add_argument("--method", choices=("analytic", "quadrature", "both"), default=None)

    sp = sub.add_parser("sweep", help="1-D/2-D parameter sweep to CSV/JSON")
    add_common(sp)
    sp.add_argument("--method", choices=("analytic", "quadrature", "both"), default=None)
    sp.add_argument("--grid", action="append", default=None, metavar="axis:lo:hi:n",
                    help="sweep axis spec, repeatable twice (second = outer loop)")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--figure", choices=("fig1", "fig2a", "fig2c"), default=None,
                    help="preset grids reproducing the figure-style sweeps")

    sp = sub.add_parser("band", help="entanglement band edges in omega2")
    add_common(sp)
    sp.add_argument("--scan-lo", type=float, default=None)
    sp.add_argument("--scan-hi", type=float, default=None)
    sp.add_argument("--scan-points", type=int, default=None)
    sp.add_argument("--bisect-tol", type=float, default=None)

    sp = sub.add_parser("validate", help="run the internal validation suite")
    add_common(sp)
    sp.add_argument("--n-cases", type=int, default=None)

    return ap


_DEFAULTS = {
    "omega1": 10.0, "omega2": 4.0, "k": 0.0, "gamma": 0.01,
    "omega_c": 500.0, "temp": 0.5, "method": "analytic", "format": "csv",
    "workers": 1, "seed": 0, "n_cases": 24,
    "scan_lo": None, "scan_hi": None, "scan_points": 200, "bisect_tol": 1e-4,
}

_CONVERTERS = {
    "omega1": float, "omega2": float, "k": float, "gamma": float,
    "omega_c": float, "temp": float, "method": str, "format": str,
    "workers": int, "seed": int, "n_cases": int,
    "scan_lo": float, "scan_hi": float, "scan_points": int, "bisect_tol": float,
}

_FIGURE_GRIDS = {
    # judgment-call axis ranges; recorded in the output header
    "fig1": ("k:0:200:100", "omega2:0.1:9.9:99"),
    "fig2a": ("k:0:200:100", "omega2:0.1:9.9:99"),
    "fig2c": ("k:0:50:101", "omega2:0.1:9.9:99"),
}


def _resolve(args: argparse.Namespace) -> dict:
    conf = _read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, default in _DEFAULTS.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            out[key] = cli_val
        elif key in conf:
            out[key] = _CONVERTERS[key](conf[key])
        else:
            out[key] = default
    grids = getattr(args, "grid", None) or conf.get("grid")
    out["grid"] = grids
    out["figure"] = getattr(args, "figure", None)
    return out


def _params_from(opts: dict) -> ModelParams:
    return validate_params(ModelParams(
        omega1=opts["omega1"], omega2=opts["omega2"], k=opts["k"],
        gamma=opts["gamma"], omega_c=opts["omega_c"], temperature=opts["temp"],
    ))


def _parse_grid_spec(spec: str):
    parts = spec.split(":")
    if len(parts) != 4:
        raise ParameterError(f"grid spec {spec!r} must be axis:lo:hi:n")
    axis, lo, hi, n = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    return axis, lo, hi, n


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_point(opts: dict) -> int:
    p = _params_from(opts)
    methods = ("analytic", "quadrature") if opts["method"] == "both" else (opts["method"],)
    reports = {m: correlation_report(_covariance(p, m)) for m in methods}
    for m, rep in reports.items():
        print(f"method: {m}")
        for name, val in asdict(rep).items():
            print(f"  {name:16s} = {val:.12g}")
    if len(reports) == 2:
        d = abs(reports["analytic"].log_negativity - reports["quadrature"].log_negativity)
        dd = abs(reports["analytic"].discord_mode2 - reports["quadrature"].discord_mode2)
        print(f"method agreement: |dE_N| = {d:.3e}, |d discord| = {dd:.3e}")
        if max(d, dd) > METHOD_AGREEMENT_TOL:
            raise NumericalError(f"analytic and quadrature disagree: {max(d, dd):.3e}")
    if opts["out"]:
        payload = {m: asdict(rep) for m, rep in reports.items()}
        _write(json.dumps(payload, indent=1, sort_keys=True) + "\n", opts["out"])
    return 0


def cmd_sweep(opts: dict) -> int:
    base = _params_from(opts)
    specs = _FIGURE_GRIDS[opts["figure"]] if opts["figure"] else opts["grid"]
    if not specs:
        raise ParameterError("sweep needs --grid axis:lo:hi:n (repeatable) or --figure")
    if len(specs) > 2:
        raise ParameterError("at most two --grid axes")
    ax1 = _parse_grid_spec(specs[0])
    ax2 = _parse_grid_spec(specs[1]) if len(specs) == 2 else None
    grid = SweepGrid(
        axis1=ax1[0], lo1=ax1[1], hi1=ax1[2], n1=ax1[3], base=base,
        axis2=None if ax2 is None else ax2[0],
        lo2=0.0 if ax2 is None else ax2[1],
        hi2=0.0 if ax2 is None else ax2[2],
        n2=0 if ax2 is None else ax2[3],
        method=opts["method"],
    )
    records = run_sweep(grid, workers=opts["workers"], seed=opts["seed"],
                        progress=lambda msg: print(msg, file=sys.stderr))
    text = sweep_csv(grid, records, opts["seed"]) if opts["format"] == "csv" \
        else sweep_json(grid, records, opts["seed"])
    _write(text, opts["out"])
    n_failed = sum(r.status == "failed" for r in records)
    print(f"sweep done: {len(records)} records, {n_failed} failed, "
          f"{sum(r.status == 'skipped_resonant' for r in records)} resonant-skipped",
          file=sys.stderr)
    return 0 if n_failed <= 0.1 * len(records) else 3


def cmd_band(opts: dict) -> int:
    p = _params_from(opts)
    lo = opts["scan_lo"] if opts["scan_lo"] is not None else 0.02 * p.omega1
    hi = opts["scan_hi"] if opts["scan_hi"] is not None else 0.95 * p.omega_c
    res = find_band(p, lo, hi, n_coarse=opts["scan_points"], bisect_tol=opts["bisect_tol"])
    if res.empty:
        print("band: EMPTY (no stationary entanglement in the scanned range)")
    else:
        print(f"band: omega' = {res.omega_prime:.6f}, omega'' = {res.omega_double_prime:.6f}, "
              f"width = {res.omega_double_prime - res.omega_prime:.6f}, "
              f"max E_N = {res.max_log_negativity:.8f} (bisect tol {res.bisect_tol:g})")
    if opts["out"]:
        _write(json.dumps({
            "empty": res.empty,
            "omega_prime": None if res.empty else res.omega_prime,
            "omega_double_prime": None if res.empty else res.omega_double_prime,
            "max_log_negativity": res.max_log_negativity,
            "bisect_tol": res.bisect_tol,
            "scan": {"lo": lo, "hi": hi, "points": opts["scan_points"]},
        }, indent=1, sort_keys=True) + "\n", opts["out"])
    return 0


def cmd_validate(opts: dict) -> int:
    passed, _rows = run_validation(seed=opts["seed"] or 7, n_cases=opts["n_cases"])
    print("validation: " + ("ALL PASS" if passed else "FAILURES PRESENT"))
    return 0 if passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _resolve(args)
        handler = {"point": cmd_point, "sweep": cmd_sweep,
                   "band": cmd_band, "validate": cmd_validate}[args.command]
        return handler(opts)
    except ParameterError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 3
    except OSError as exc:
        print(json.dumps({"error": "OSError", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
