"""Command-line front end: exact tables, asymptotic predictions, comparisons and checks.

Exit codes: 0 success, 1 internal error, 2 usage, 3 unsupported parameters
(24 | R), 4 a check exceeded its tolerance.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import click
import mpmath

from . import __version__
from .asymptotics import (
    antisymmetric_3_1_explicit,
    corollary_1_3_eval,
    corollary_1_4_eval,
    corollary_1_5_eval,
)
from .circle import theorem_1_2_eval
from .errors import DomainError, UnsupportedParameterError, check_not_multiple_of_24
from .partitions import check_residue_class, exact_parts_count
from .qseries import (
    TruncationParams,
    antisymmetric_transform_residual,
    dedekind_eta,
    lemma_pv_bound,
    pv_laplace_pole,
    prop_3_1_check,
    verify_theorem_1_1,
)
from .specfun import (
    bernoulli_fourier,
    bernoulli_poly,
    bessel_I_3half,
    bessel_I_half,
    bessel_I_order_derivative_half,
    bessel_I_series,
    euler_maclaurin_check,
)
from .transform import eta_multiplier, frames

OUTPUT_DIR_ENV = "PARTITION_AP_OUTPUT_DIR"
SCHEMA_VERSION = "1.0"
EXIT_UNSUPPORTED = 3
EXIT_TOLERANCE = 4

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"partition-ap/report/{SCHEMA_VERSION}",
    "type": "object",
    "required": ["config", "rows", "meta"],
    "additionalProperties": False,
    "properties": {
        "config": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": {"type": ["string", "number", "boolean", "null"]},
            },
        },
        "meta": {
            "type": "object",
            "required": ["version", "schema_version", "runtime_ms"],
            "properties": {
                "version": {"type": "string"},
                "schema_version": {"const": SCHEMA_VERSION},
                "runtime_ms": {"type": ["number", "null"]},
            },
        },
    },
}


@dataclass
class RunConfig:
    command: str
    R: int = 1
    r: int = 1
    n: list[int] = field(default_factory=list)
    fmt: str = "json"
    output: str | None = None
    seed: int = 0
    tol: float = 1e-9
    q_order: int = 400
    lattice_radius: int = 60
    panels: int = 64
    extra: dict = field(default_factory=dict)

    def truncation(self) -> TruncationParams:
        return TruncationParams(self.q_order, self.lattice_radius, self.panels, 40.0, self.tol)


# --- helpers ---------------------------------------------------------------

def parse_n_spec(spec: str) -> list[int]:
    """'a..b' (inclusive), 'a,b,c' or a single integer."""
    spec = spec.strip()
    try:
        if ".." in spec:
            lo, hi = (int(p) for p in spec.split(".."))
            values = list(range(lo, hi + 1))
        else:
            values = [int(p) for p in spec.split(",") if p.strip()]
    except ValueError:
        raise click.BadParameter(f"cannot parse n specification {spec!r}")
    if not values:
        raise click.BadParameter(f"n specification {spec!r} is empty")
    if min(values) < 0:
        raise click.BadParameter("n must be nonnegative")
    return values


def _num(value, digits: int = 30) -> str:
    """Deterministic decimal text for floats and mpmath reals."""
    if value is None:
        return None
    if isinstance(value, int):
        return str(value)
    return mpmath.nstr(mpmath.mpf(value), digits, strip_zeros=False)


def _emit(config: RunConfig, rows: list[dict], started: float, timing: bool) -> str:
    if config.fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        text = buf.getvalue()
    else:
        cfg = asdict(config)
        cfg.pop("output")
        doc = {
            "config": cfg,
            "rows": rows,
            "meta": {
                "version": __version__,
                "schema_version": SCHEMA_VERSION,
                "runtime_ms": round((time.perf_counter() - started) * 1000, 3) if timing else None,
            },
        }
        text = json.dumps(doc, indent=2) + "\n"
    target = _target_path(config)
    if target is None:
        click.echo(text, nl=False)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8", newline="\n")
    return text


def _target_path(config: RunConfig) -> Path | None:
    if config.output:
        return Path(config.output)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        return Path(env) / f"{config.command}.{config.fmt}"
    return None


def _write_plot_data(config: RunConfig, points: list[tuple[int, float]]) -> Path | None:
    target = _target_path(config)
    if target is None:
        return None
    plot = target.with_name(target.stem + "_plot.csv")
    lines = ["n,rel_error,log10_rel_error"]
    for n, err in points:
        log_err = _num(math.log10(err), 17) if err and err > 0 else ""
        lines.append(f"{n},{_num(err, 17)},{log_err}")
    plot.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return plot


def _fail_unsupported(err: Exception):
    click.echo(f"error: {err}", err=True)
    sys.exit(EXIT_UNSUPPORTED)


def common_options(fn):
    options = [
        click.option("--R", "R", type=int, default=1, show_default=True, help="Modulus R."),
        click.option("--r", "r", type=int, default=1, show_default=True, help="Residue r in [1, R]."),
        click.option("--n", "n_spec", default="1..20", show_default=True, help="n values: a..b or a,b,c."),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True),
        click.option("--output", type=click.Path(dir_okay=False), default=None, help="Output file (default: stdout)."),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--tol", type=float, default=1e-9, show_default=True),
        click.option("--q-order", type=int, default=400, show_default=True),
        click.option("--lattice-radius", type=int, default=60, show_default=True),
        click.option("--panels", type=int, default=64, show_default=True),
        click.option("--timing", is_flag=True, help="Record runtime_ms (otherwise null, keeping output reproducible)."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _config(command: str, R, r, n_spec, fmt, output, seed, tol, q_order, lattice_radius, panels, **extra) -> RunConfig:
    if R < 1 or not 1 <= r <= R:
        raise click.BadParameter(f"need 1 <= r <= R, got R={R}, r={r}")
    if min(q_order, lattice_radius, panels) < 1 or not 0 < tol < 1:
        raise click.BadParameter("truncation overrides must be positive and tol < 1")
    return RunConfig(command, R, r, parse_n_spec(n_spec), fmt, output, seed, tol, q_order, lattice_radius, panels, extra)


# --- commands --------------------------------------------------------------

@click.group(invoke_without_command=True)
@click.version_option(__version__)
@click.option("--schema", is_flag=True, help="Print the JSON report schema and exit.")
@click.pass_context
def main(ctx, schema):
    """Parts of partitions in residue classes: exact counts and asymptotics."""
    if schema:
        click.echo(json.dumps(REPORT_SCHEMA, indent=2))
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@main.command()
@common_options
def exact(timing, **kw):
    """Exact p(n) and T_{R,r}(n)."""
    started = time.perf_counter()
    config = _config("exact", **kw)
    table = exact_parts_count(config.R, config.r, max(config.n))
    rows = [{"n": str(n), "p": str(table.p[n]), "t": str(table.t[n])} for n in config.n]
    _emit(config, rows, started, timing)


@main.command()
@common_options
def table(timing, **kw):
    """Exact T_{R,r}(n) for every residue r = 1..R side by side."""
    started = time.perf_counter()
    config = _config("table", **kw)
    cap = max(config.n)
    tabs = [exact_parts_count(config.R, rr, cap) for rr in range(1, config.R + 1)]
    rows = []
    for n in config.n:
        row = {"n": str(n), "p": str(tabs[0].p[n])}
        row.update({f"t_r{rr}": str(tabs[rr - 1].t[n]) for rr in range(1, config.R + 1)})
        rows.append(row)
    _emit(config, rows, started, timing)


@main.command()
@common_options
@click.option("--L", "L", type=int, default=4, show_default=True, help="Order of the power-series form.")
def asymptotic(timing, L, **kw):
    """Leading-exponential predictions for T_{R,r}(n)."""
    started = time.perf_counter()
    config = _config("asymptotic", L=L, **kw)
    try:
        check_not_multiple_of_24(config.R)
        rows = []
        for n in config.n:
            if n < 1:
                raise click.BadParameter("asymptotic predictions need n >= 1")
            pred = corollary_1_3_eval(config.R, config.r, n, config.truncation())
            series = corollary_1_4_eval(config.R, config.r, n, L)
            rows.append(
                {
                    "n": str(n),
                    "exponent": _num(pred.exponent, 17),
                    "mantissa": _num(pred.mantissa, 17),
                    "prediction": _num(pred.value),
                    "series_prediction": _num(series.value),
                    **{f"term_{k}": _num(v, 17) for k, v in pred.terms.items()},
                }
            )
    except UnsupportedParameterError as err:
        _fail_unsupported(err)
    _emit(config, rows, started, timing)


@main.command()
@common_options
@click.option("--L", "L", type=int, default=4, show_default=True)
@click.option("--diff", is_flag=True, help="Compare T_{R,r} - T_{R,R-r} with its antisymmetric expansion.")
def compare(timing, L, diff, **kw):
    """Exact values against the five-series expansion and the closed forms."""
    started = time.perf_counter()
    config = _config("compare", L=L, diff=diff, **kw)
    if min(config.n) < 1:
        raise click.BadParameter("compare needs n >= 1")
    try:
        rows, points = (_compare_diff if diff else _compare_full)(config, L)
    except UnsupportedParameterError as err:
        _fail_unsupported(err)
    _emit(config, rows, started, timing)
    _write_plot_data(config, points)


def _compare_full(config: RunConfig, L: int):
    check_not_multiple_of_24(config.R)
    rows, points = [], []
    for n in config.n:
        br = theorem_1_2_eval(config.R, config.r, n)
        pred = corollary_1_3_eval(config.R, config.r, n, config.truncation())
        series = corollary_1_4_eval(config.R, config.r, n, L)
        with mpmath.workdps(60):
            exact = mpmath.mpf(br.exact)
            rel13 = abs(exact - pred.value) / exact if br.exact else None
            rel14 = abs(exact - series.value) / exact if br.exact else None
        rows.append(
            {
                "n": str(n),
                "exact": str(br.exact),
                **{f"t{j}": _num(c) for j, c in enumerate(br.components, 1)},
                "expansion_total": _num(br.sum),
                "expansion_rel_error": _num(br.rel_error, 17),
                "leading_prediction": _num(pred.value),
                "leading_rel_error": _num(rel13, 17),
                "series_prediction": _num(series.value),
                "series_rel_error": _num(rel14, 17),
            }
        )
        points.append((n, br.rel_error))
    return rows, points


def _compare_diff(config: RunConfig, L: int):
    R, r = config.R, config.r
    if r == R:
        raise click.BadParameter("--diff needs r < R")
    cap = max(config.n)
    a, b = exact_parts_count(R, r, cap), exact_parts_count(R, R - r, cap)
    rows, points = [], []
    for n in config.n:
        with mpmath.workdps(int(math.pi * math.sqrt(2 * n / 3) / math.log(10)) + 25):
            d = a.t[n] - b.t[n]
            pred = corollary_1_5_eval(R, r, n)
            ns = mpmath.mpf(24 * n - 1) / 24
            scale = mpmath.exp(mpmath.pi * mpmath.sqrt(ns / 6))
            row = {
                "n": str(n),
                "exact_difference": str(d),
                "prediction": _num(pred),
                "scaled_error": _num((d - pred) / scale, 17),
            }
            if (R, r) == (3, 1):
                explicit = antisymmetric_3_1_explicit(n)
                row["explicit_formula"] = _num(explicit)
                row["explicit_scaled_error"] = _num((d - explicit) / scale, 17)
            rel = float(abs(d - pred) / abs(d)) if d else None
        row["rel_error"] = _num(rel, 17)
        rows.append(row)
        points.append((n, rel))
    return rows, points


TRANSFORM_GRID = {
    "pairs": [(1, 1), (3, 1), (3, 2), (5, 2)],
    "frames": [(0, 1), (1, 2), (1, 3), (2, 3)],
    "z": [1.0, 1.2 + 0.4j],
}
PROP31_GRID = [
    (3, 1, Fraction(1, 3), 2.0),
    (1, 0, Fraction(1, 2), 1.0),
    (1, 0, Fraction(1), 1.0),
    (2, 4, Fraction(1), 0.7),
    (4, 1, Fraction(3, 5), 0.5),
    (5, 2, Fraction(1, 4), 5.0),
    (6, 0, Fraction(2, 3), 3.0),
]


@main.command("transform-check")
@common_options
@click.option(
    "--identity",
    type=click.Choice(["all", "theorem", "antisymmetric", "prop31", "eta"]),
    default="all",
    show_default=True,
)
@click.option("--max-residual", type=float, default=1e-6, show_default=True)
def transform_check(timing, identity, max_residual, **kw):
    """Residuals of the modular transformation, the Euler-Maclaurin identity and the eta multiplier."""
    started = time.perf_counter()
    config = _config("transform-check", identity=identity, max_residual=max_residual, **kw)
    tp = config.truncation()
    rows = []
    if identity in ("all", "theorem"):
        worst = max(
            verify_theorem_1_1(R, r, h, k, z, tp)
            for R, r in TRANSFORM_GRID["pairs"]
            for h, k in TRANSFORM_GRID["frames"]
            for z in TRANSFORM_GRID["z"]
        )
        rows.append(_check_row("transformation", worst, max_residual))
    if identity in ("all", "antisymmetric"):
        worst = max(
            antisymmetric_transform_residual(3, 1, h, k, z, tp)
            for h, k in TRANSFORM_GRID["frames"]
            for z in TRANSFORM_GRID["z"]
        )
        rows.append(_check_row("antisymmetric_transformation", worst, max_residual))
    if identity in ("all", "prop31"):
        worst = max(prop_3_1_check(*args, tp=tp) for args in PROP31_GRID)
        rows.append(_check_row("euler_maclaurin_mordell", worst, min(max_residual, 1e-7)))
    if identity in ("all", "eta"):
        rows.append(_check_row("eta_multiplier", eta_convention_residual(12, tp), max_residual))
    _emit(config, rows, started, timing)
    if not all(row["passed"] for row in rows):
        sys.exit(EXIT_TOLERANCE)


def eta_convention_residual(k_max: int, tp: TruncationParams) -> float:
    """max over frames with k <= k_max of |eta(M tau) - nu_eta sqrt(c tau + d) eta(tau)| / |eta(M tau)|."""
    import cmath

    worst = 0.0
    for k in range(1, k_max + 1):
        for frame in frames(k):
            (a, b), (c, d) = frame.matrix
            tau = frame.hp / k + 0.1 + 1j / 1.3
            image = (a * tau + b) / (c * tau + d)
            lhs = dedekind_eta(image, tp)
            rhs = eta_multiplier(frame) * cmath.sqrt(c * tau + d) * dedekind_eta(tau, tp)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return worst


def _check_row(name: str, residual: float, tol: float) -> dict:
    return {"identity": name, "max_residual": _num(residual, 6), "tolerance": _num(tol, 6), "passed": residual <= tol}


@main.command("specfun-check")
@common_options
def specfun_check(timing, **kw):
    """Special-function self-checks against independent oracles."""
    started = time.perf_counter()
    config = _config("specfun-check", **kw)
    rows = [_check_row(name, res, tol) for name, res, tol in specfun_residuals(config.seed)]
    _emit(config, rows, started, timing)
    if not all(row["passed"] for row in rows):
        sys.exit(EXIT_TOLERANCE)


def specfun_residuals(seed: int) -> list[tuple[str, float, float]]:
    """(name, residual, tolerance) for each special-function check."""
    rng = random.Random(seed)
    grid = [0.1 + 29.9 * i / 200 for i in range(201)]
    bessel = max(
        max(abs(bessel_I_half(x) / bessel_I_series(0.5, x) - 1), abs(bessel_I_3half(x) / bessel_I_series(1.5, x) - 1))
        for x in grid
    )
    h = 1e-4
    order_der = max(
        abs(
            bessel_I_order_derivative_half(x)
            - (bessel_I_series(0.5 + h, x) - bessel_I_series(0.5 - h, x)) / (2 * h)
        )
        / max(1.0, abs(bessel_I_order_derivative_half(x)))
        for x in (0.3, 1.0, 2.5, 7.0, 15.0)
    )
    fourier = max(
        abs(float(bernoulli_poly(ell, x, periodic=True)) - bernoulli_fourier(ell, x))
        for ell in (2, 3, 4, 5)
        for x in (0.1, 0.37, 0.5, 0.81)
    )
    violations = 0
    for _ in range(200):
        w = complex(rng.uniform(0.5, 5), rng.uniform(-5, 5))
        alpha = rng.choice((-1, 1)) * rng.uniform(0.2, 10)
        if abs(pv_laplace_pole(w, alpha)) > lemma_pv_bound(w, alpha) * (1 + 1e-12):
            violations += 1

    def f(x, j):
        # e^{-x/3} and its derivatives
        return (-1 / 3) ** j * math.exp(-x / 3)

    em = max(euler_maclaurin_check(f, a, 0, 12, L) for a in (0.0, 0.25, 0.5, 1.0) for L in (1, 2, 3))
    return [
        ("bessel_half_integer", bessel, 1e-12),
        ("bessel_order_derivative", order_der, 1e-6),
        ("bernoulli_fourier", fourier, 1e-8),
        ("pv_bound_violations", float(violations), 0.0),
        ("euler_maclaurin", em, 1e-9),
    ]


def run() -> None:
    try:
        main(standalone_mode=True)
    except DomainError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    run()
