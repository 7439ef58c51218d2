"""Command-line entry point: ``sdwave {symbols-table,norm,evolve,verify}``.

Options may also come from ``--config FILE`` holding ``key = value`` lines
(keys are the long flag names); flags given on the command line win.
Exit codes: 0 success / all claims pass, 1 runtime or I/O failure,
2 usage error, 3 at least one claim failed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import asymptotics, gridlab, quadrature, symbols
from .asymptotics import CLAIMS, ClaimConfig, TimeLadder
from .profiles import KINDS, make_profile, sample_on_grid
from .quadrature import MULTIPLIER_IDS, QuadratureSpec
from .symbols import SymbolParams

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_CLAIM = 0, 1, 2, 3
SUBCOMMANDS = ("symbols-table", "norm", "evolve", "verify")
FLOAT_FMT = "%.17g"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    nu: float = 1.0
    beta: float = 1.0
    n: int = 1
    profile: str = "gaussian:1:1"
    u0: str = "gaussian:1:1"
    ladder: str = ""
    times: str = ""
    radii: str = "0:4:41"
    multiplier: str = "D"
    claim: str = "all"
    out: str = ""
    panel_order: int = 16
    panel_width: float = 0.05
    tail_digits: int = 12
    mode: str = "filon"
    points: int = 4096
    half_width: float = 128.0
    wave: bool = False

    def canonical(self) -> str:
        """``key = value`` lines that reproduce this configuration."""
        lines = [f"subcommand = {self.subcommand}"]
        for f in fields(self):
            if f.name in ("subcommand", "out"):
                continue
            lines.append(f"{f.name.replace('_', '-')} = {_fmt_value(getattr(self, f.name))}")
        return "\n".join(lines) + "\n"

    def quadrature_spec(self) -> QuadratureSpec:
        return QuadratureSpec(self.panel_order, self.panel_width, self.tail_digits, self.mode)

    def claim_config(self) -> ClaimConfig:
        kind, amp, sigma = _profile_parts(self.profile)
        return ClaimConfig(nu=self.nu, beta=self.beta, profile_kind=kind, amplitude=amp, sigma=sigma,
                           ladder=TimeLadder.parse(self.ladder) if self.ladder else None,
                           spec=self.quadrature_spec(), grid_points=self.points, grid_half_width=self.half_width)


def _fmt_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _profile_parts(text: str):
    """``kind[:amplitude[:sigma]]``"""
    parts = text.split(":")
    if parts[0] not in KINDS or len(parts) > 3:
        raise UsageError(f"--profile must look like kind:amplitude:sigma with kind in {KINDS}, got {text!r}")
    try:
        amp = float(parts[1]) if len(parts) > 1 else 1.0
        sigma = float(parts[2]) if len(parts) > 2 else 1.0
    except ValueError:
        raise UsageError(f"--profile has a non-numeric field: {text!r}") from None
    if not (sigma > 0 and math.isfinite(sigma) and math.isfinite(amp)):
        raise UsageError(f"--profile sigma must be positive and finite, got {text!r}")
    return parts[0], amp, sigma


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of key = value lines; flags override it")
    common.add_argument("--nu", type=float, help="viscosity (> 0)")
    common.add_argument("--beta", type=float, help="Gaussian smoothing parameter (> 0)")
    common.add_argument("--out", help="output directory")

    quad = argparse.ArgumentParser(add_help=False)
    quad.add_argument("--panel-order", type=int)
    quad.add_argument("--panel-width", type=float)
    quad.add_argument("--tail-digits", type=int)
    quad.add_argument("--mode", choices=("filon", "brute"))

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--points", type=int, help="grid points per dimension (power of two)")
    grid.add_argument("--half-width", type=float, help="half width L of the periodic box")

    parser = argparse.ArgumentParser(prog="sdwave", description="strongly damped wave equation lab")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("symbols-table", parents=[common], help="tabulate the Fourier symbols")
    p.add_argument("--n", type=int)
    p.add_argument("--times", help="comma separated times (default 0,1,10)")
    p.add_argument("--radii", help="r_min:r_max:points, linear")

    p = sub.add_parser("norm", parents=[common, quad], help="L2 norms along a time ladder")
    p.add_argument("--multiplier", choices=MULTIPLIER_IDS)
    p.add_argument("--n", type=int)
    p.add_argument("--profile", help="kind:amplitude:sigma or 'unit'")
    p.add_argument("--ladder", help="t_min:t_max:points, geometric")
    p.add_argument("--times", help="comma separated times instead of a ladder")

    p = sub.add_parser("evolve", parents=[common, grid], help="FFT grid evolution")
    p.add_argument("--n", type=int)
    p.add_argument("--profile", help="initial velocity u1, kind:amplitude:sigma")
    p.add_argument("--u0", help="initial position, kind:amplitude:sigma")
    p.add_argument("--times", help="comma separated output times")
    p.add_argument("--wave", action="store_const", const="true", help="free wave instead of the damped equation")

    p = sub.add_parser("verify", parents=[common, quad, grid], help="verify the rate claims")
    p.add_argument("--claim", help="claim id or 'all'")
    p.add_argument("--profile", help="kind:amplitude:sigma")
    p.add_argument("--ladder", help="t_min:t_max:points overriding every default ladder")
    return parser


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key, value):
    kind = _FIELD_TYPES[key]
    try:
        if kind == "float":
            return float(value)
        if kind == "int":
            return int(value)
        if kind == "bool":
            return _parse_bool(value)
    except ValueError:
        raise UsageError(f"--{key.replace('_', '-')}: cannot parse {value!r}") from None
    return str(value)


def _read_config_file(path):
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config line {num}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELD_TYPES:
            raise UsageError(f"--config line {num}: unknown key {key!r}")
        out[key] = value
    return out


def _validate(cfg: RunConfig):
    def bad(flag, msg):
        raise UsageError(f"--{flag}: {msg}")

    if not (cfg.nu > 0 and math.isfinite(cfg.nu)):
        bad("nu", f"must be positive, got {cfg.nu}")
    if not (cfg.beta > 0 and math.isfinite(cfg.beta)):
        bad("beta", f"must be positive, got {cfg.beta}")
    if cfg.n not in (1, 2, 3):
        bad("n", f"must be 1, 2 or 3, got {cfg.n}")
    if cfg.panel_order < 4:
        bad("panel-order", "must be >= 4")
    if not cfg.panel_width > 0:
        bad("panel-width", "must be positive")
    if not 1 <= cfg.tail_digits <= 15:
        bad("tail-digits", "must be between 1 and 15")
    if cfg.mode not in ("filon", "brute"):
        bad("mode", "must be filon or brute")
    if cfg.points < 16 or cfg.points & (cfg.points - 1):
        bad("points", "must be a power of two >= 16")
    if not cfg.half_width > 0:
        bad("half-width", "must be positive")
    if cfg.multiplier not in MULTIPLIER_IDS:
        bad("multiplier", f"must be one of {MULTIPLIER_IDS}")
    if cfg.claim != "all" and cfg.claim not in CLAIMS:
        bad("claim", f"unknown claim {cfg.claim!r}")
    if not (cfg.subcommand == "norm" and cfg.profile == "unit"):
        try:
            _profile_parts(cfg.profile)
        except UsageError as exc:
            bad("profile", str(exc))
    _profile_parts(cfg.u0)
    if cfg.ladder:
        try:
            TimeLadder.parse(cfg.ladder)
        except (ValueError, symbols.DomainError) as exc:
            bad("ladder", str(exc))
    if cfg.times:
        try:
            ts = _times(cfg.times)
        except ValueError:
            bad("times", f"cannot parse {cfg.times!r}")
        if any(not (t >= 0 and math.isfinite(t)) for t in ts):
            bad("times", "times must be finite and >= 0")
    try:
        _radii(cfg.radii)
    except (ValueError, UsageError) as exc:
        bad("radii", str(exc))


def _times(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _radii(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("expected r_min:r_max:points")
    lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    if not (0 <= lo <= hi and pts >= 1):
        raise UsageError("need 0 <= r_min <= r_max and points >= 1")
    return np.linspace(lo, hi, pts)


def parse_args(argv) -> RunConfig:
    """Parse argv into a validated RunConfig; usage problems raise SystemExit(2)."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        values = {}
        if ns.config:
            values.update(_read_config_file(ns.config))
            file_sub = values.pop("subcommand", ns.subcommand)
            if file_sub != ns.subcommand:
                raise UsageError(f"--config is for {file_sub!r}, not {ns.subcommand!r}")
        for key, value in vars(ns).items():
            if key in ("config", "subcommand") or value is None:
                continue
            values[key] = value
        kwargs = {k: _coerce(k, v) for k, v in values.items()}
        cfg = RunConfig(subcommand=ns.subcommand, **kwargs)
        _validate(cfg)
    except UsageError as exc:
        parser.error(str(exc))
    return cfg


# ------------------------------------------------------------------ output


def _fmt(x) -> str:
    # + 0.0 folds -0.0 into 0.0
    return FLOAT_FMT % (float(x) + 0.0)


def _write_text(path, text):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else (str(v) if isinstance(v, (int, np.integer)) else _fmt(v))
                              for v in row))
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit_report(reports, out_dir) -> list:
    """Write curve CSVs, plot-data files, one JSON per claim and summary.json.

    Returns the written paths (relative to ``out_dir``) in writing order.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []
    claims = []
    for rep in reports:
        curve_files = []
        for curve in rep.curves:
            csv_name = f"{curve.label}.csv"
            plot_name = f"{curve.label}.plot"
            rows = [(t, y, e) for t, y, e in curve.samples]
            _write_text(os.path.join(out_dir, csv_name), _csv(("t", "value", "abs_error_estimate"), rows))
            ref = rep.references.get(curve.label, "none")
            plot = [f"# reference: {ref}", f"# quantity: {curve.quantity_id} profile: {curve.profile}",
                    "# t value"]
            plot += [f"{_fmt(t)} {_fmt(y)}" for t, y, _ in curve.samples]
            _write_text(os.path.join(out_dir, plot_name), "\n".join(plot) + "\n")
            curve_files.append(csv_name)
            written += [csv_name, plot_name]
        doc = {
            "claim_id": rep.claim_id,
            "pass": rep.passed,
            "measured": rep.measured,
            "expected": rep.expected,
            "tolerance": rep.tolerance,
            "checks": rep.checks,
            "notes": rep.notes,
            "curves": curve_files,
        }
        name = f"{rep.claim_id}.json"
        _write_text(os.path.join(out_dir, name), _json(doc))
        written.append(name)
        claims.append({"claim_id": rep.claim_id, "pass": rep.passed, "report": name})
    summary = {
        "claims": claims,
        "n_claims": len(claims),
        "n_passed": sum(c["pass"] for c in claims),
        "all_pass": all(c["pass"] for c in claims),
    }
    _write_text(os.path.join(out_dir, "summary.json"), _json(summary))
    written.append("summary.json")
    return written


# ------------------------------------------------------------------ commands


def _emit_table(cfg: RunConfig, name: str, text: str):
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        _write_text(os.path.join(cfg.out, name), text)
        _write_text(os.path.join(cfg.out, "run_config.txt"), cfg.canonical())
    else:
        sys.stdout.write(text)


def _cmd_symbols(cfg: RunConfig) -> int:
    p = SymbolParams(nu=cfg.nu, dim=cfg.n, beta=cfg.beta)
    times = _times(cfg.times) if cfg.times else [0.0, 1.0, 10.0]
    rows = []
    for t in times:
        for r in _radii(cfg.radii):
            rows.append((t, r, symbols.k0_hat(t, r, p), symbols.k1_hat(t, r, p), symbols.g_hat(t, r, p),
                         symbols.omega(t, r), symbols.d_hat(t, r, p), symbols.j_beta_hat(t, r, p)))
    text = _csv(("t", "r", "K0", "K1", "G", "omega", "D", "Jbeta"), rows)
    _emit_table(cfg, "symbols.csv", text)
    return EXIT_OK


def _cmd_norm(cfg: RunConfig) -> int:
    p = SymbolParams(nu=cfg.nu, dim=cfg.n, beta=cfg.beta)
    if cfg.times:
        times = _times(cfg.times)
    else:
        times = TimeLadder.parse(cfg.ladder or "100:1e8:25").values
    weight = "unit" if cfg.profile == "unit" else make_profile(*_profile_parts(cfg.profile), cfg.n)
    spec = cfg.quadrature_spec()
    rows = []
    for t in times:
        res = quadrature.plancherel_norm(cfg.multiplier, float(t), p, weight, spec)
        rows.append((float(t), res.value, res.abs_error_estimate, int(res.panels_used)))
    text = _csv(("t", "value", "abs_error_estimate", "panels_used"), rows)
    _emit_table(cfg, f"norm_{cfg.multiplier}_n{cfg.n}.csv", text)
    return EXIT_OK


def _cmd_evolve(cfg: RunConfig) -> int:
    if cfg.n not in (1, 2):
        raise UsageError("--n: grid evolution supports n = 1 or 2")
    spec = gridlab.GridSpec(cfg.n, cfg.points, cfg.half_width)
    u0 = sample_on_grid(make_profile(*_profile_parts(cfg.u0), cfg.n), spec)
    u1 = sample_on_grid(make_profile(*_profile_parts(cfg.profile), cfg.n), spec)
    times = _times(cfg.times) if cfg.times else [1.0]
    rows, fields_out = [], []
    for t in times:
        ev = gridlab.evolve_wave(u0, u1, t) if cfg.wave else gridlab.evolve_damped(u0, u1, t, cfg.nu)
        diss = 0.0 if cfg.wave else gridlab.dissipation_rate(ev.ut, cfg.nu)
        flag = "true" if ev.within_horizon else "false"
        rows.append((t, gridlab.l2_norm(ev.u), gridlab.energy(ev.u, ev.ut), diss, flag))
        fields_out.append((t, ev))
    text = _csv(("t", "l2_norm", "energy", "dissipation", "within_horizon"), rows)
    if cfg.out:
        os.makedirs(cfg.out, exist_ok=True)
        for k, (t, ev) in enumerate(fields_out):
            gridlab.write_field(os.path.join(cfg.out, f"u_{k:03d}.bin"), ev.u)
            gridlab.write_field(os.path.join(cfg.out, f"ut_{k:03d}.bin"), ev.ut)
    _emit_table(cfg, "evolve.csv", text)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    ccfg = cfg.claim_config()
    ids = list(CLAIMS) if cfg.claim == "all" else [cfg.claim]
    reports = [asymptotics.verify(c, ccfg) for c in ids]
    out = cfg.out or "sdwave_out"
    emit_report(reports, out)
    _write_text(os.path.join(out, "run_config.txt"), cfg.canonical())
    for rep in reports:
        sys.stdout.write(f"{rep.claim_id}: {'PASS' if rep.passed else 'FAIL'}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CLAIM


COMMANDS = {
    "symbols-table": _cmd_symbols,
    "norm": _cmd_norm,
    "evolve": _cmd_evolve,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except (UsageError, symbols.DomainError) as exc:
        sys.stderr.write(f"sdwave: error: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"sdwave: error: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
