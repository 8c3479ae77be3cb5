"""The nine experiments behind the CLI subcommands.

Each experiment takes a validated :class:`ExperimentConfig`, reads its
``params`` (every key has a default), runs the engines and returns an
:class:`ExperimentResult`: verdict records plus named tables.  Writing files
is left to :class:`mehlerlab.runner.runner.ExperimentRunner`.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from mehlerlab.core.config import ExperimentConfig, param
from mehlerlab.core.constants import (
    APPROX_BOUND_SLACK,
    APPROX_POINTWISE_TOLERANCE,
    CAUCHY_TOLERANCE,
    CHAPMAN_KOLMOGOROV_TOLERANCE,
    CHAR_CHECK_TOLERANCE,
    D0_TOLERANCE,
    DEFAULT_APPROX_SCHEDULE,
    DEFAULT_FPK_PATHS,
    DEFAULT_HORIZON,
    DEFAULT_SHELL_RADII,
    DEFAULT_SIM_PATHS,
    DEFAULT_SIM_SNAPSHOTS,
    DEFAULT_SMALL_JUMP_CUT,
    DEFAULT_SNAPSHOTS,
    DEFAULT_SWEEP_DIMS,
    DEFAULT_TRUNCATION_LEVELS,
    MIN_MC_PATHS,
    PHI_GENERATOR_TOLERANCE,
    PHI_IDENTITY_TOLERANCE,
    SCHEME_BIAS_ALLOWANCE,
    STDERR_MULTIPLIER,
    SWEEP_CHANGE_TOLERANCE,
    SWEEP_TOLERANCE,
)
from mehlerlab.core.exceptions import ConfigError
from mehlerlab.cores.fpk import FPK_COLUMNS, FPKFunction, fpk_residual
from mehlerlab.cores.phi import D1Function, phi_generator_gap, phi_semigroup_identity
from mehlerlab.dynamics.flow import chapman_kolmogorov_residual, marginal_char
from mehlerlab.dynamics.simulator import simulate_paths
from mehlerlab.functions.approximation import approximate
from mehlerlab.functions.bump import function_from_dict
from mehlerlab.functions.membership import d0_membership
from mehlerlab.levy.exponent import char_exponent, quadrature_exponent
from mehlerlab.levy.integration import check_levy_measure
from mehlerlab.levy.sampling import small_jump_bias_bound
from mehlerlab.models.functions import SmoothFunction, TrigPolynomial
from mehlerlab.models.ou import OUModel, PathEnsemble
from mehlerlab.models.spectral import SequenceRecipe, SpectralModel
from mehlerlab.models.verdict import INCONCLUSIVE, Verdict
from mehlerlab.semigroup.checks import (
    cauchy_check,
    commutation_check,
    continuity_profile,
    core_identity_check,
    integral_forms_check,
    ito_truncation_gap,
    support_spread,
)
from mehlerlab.semigroup.engine import semigroup_law_residual
from mehlerlab.spectral.truncation import ca_membership, dimension_sweep

logger = logging.getLogger(__name__)

CHAR_IDENTITY = "ψ closed form = Lévy–Khintchine quadrature"
CHAPMAN_IDENTITY = "μ̂_{t+s}(h) = μ̂_s(h) μ̂_t(e^{sA*}h)"
EMPIRICAL_CHAR_IDENTITY = "E e^{i⟨h,X_t^x⟩} = μ̂_t^x(h)"
SEMIGROUP_LAW_IDENTITY = "P_{t+s} = P_t P_s"
APPROX_BOUND_IDENTITY = "‖f_nm‖₀ + ‖Df_nm‖₀ + ‖D²f_nm‖₀ ≤ M"
APPROX_POINTWISE_IDENTITY = "f_nm(x) → f(x)"
D0_IDENTITY = "f, Df, D²f, ⟨A·, Df⟩ vanish at infinity"
PHI_IDENTITY = "P_t φ_{a,h} = φ_{a+t,h} - φ_{t,h}"
PHI_GENERATOR_IDENTITY = "L₀φ_{a,h} = P_a e_h - e_h"


@dataclass(frozen=True)
class Table:
    """A named CSV table: ``<out>/<experiment>/<name>.csv``."""

    name: str
    header: list[str]
    rows: list[list[Any]]


@dataclass
class ExperimentResult:
    verdicts: list[Verdict] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)
    ensemble: PathEnsemble | None = None


Experiment = Callable[[ExperimentConfig], ExperimentResult]


# ----- Internal helpers ------------------------------------------------------


def _coords(prefix: str, dim: int) -> list[str]:
    return [f"{prefix}_{i + 1}" for i in range(dim)]


def _vector(params: dict[str, Any], key: str, default: Any, dim: int) -> np.ndarray:
    raw = params.get(key, default)
    try:
        vec = np.asarray(raw, dtype=float).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise ConfigError("invalid config", [f"params.{key}: expected a list of numbers"]) from exc
    if vec.size != dim:
        raise ConfigError("invalid config", [f"params.{key}: expected {dim} numbers, got {vec.size}"])
    return vec


def _vectors(params: dict[str, Any], key: str, default: Any, dim: int) -> np.ndarray:
    raw = params.get(key, default)
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError("invalid config", [f"params.{key}: expected a list of points"]) from exc
    if arr.ndim == 1 and dim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[1] != dim or arr.shape[0] == 0:
        raise ConfigError("invalid config", [f"params.{key}: expected a non-empty list of {dim}-vectors"])
    return arr


def _axis(dim: int, scale: float = 1.0) -> np.ndarray:
    e = np.zeros(dim)
    e[0] = scale
    return e


def _model(cfg: ExperimentConfig) -> OUModel:
    return OUModel.from_dict(cfg.model, "model")


def _trig(cfg: ExperimentConfig, dim: int, key: str = "f") -> TrigPolynomial:
    raw = cfg.params.get(key)
    if raw is None:
        return TrigPolynomial.cosine(_axis(dim))
    p = TrigPolynomial.from_dict(raw, f"params.{key}")
    if p.dim != dim:
        raise ConfigError("invalid config", [f"params.{key}: frequencies have dimension {p.dim}, model has {dim}"])
    return p


def _smooth(cfg: ExperimentConfig, dim: int, key: str = "f", radius: float = 1.0) -> SmoothFunction:
    raw = cfg.params.get(key, {"type": "bump", "center": [0.0] * dim, "radius": radius})
    return function_from_dict(raw, dim, f"params.{key}")


def _eps(cfg: ExperimentConfig) -> float:
    eps = param(cfg.params, "eps", DEFAULT_SMALL_JUMP_CUT)
    if not 0.0 < eps <= 1.0:
        raise ConfigError("invalid config", [f"params.eps: {eps!r} must lie in (0, 1]"])
    return eps


def _unresolved(verdict: Verdict, estimate: float, tolerance: float) -> Verdict:
    """Inconclusive when the quadrature error estimate alone exceeds *tolerance*."""
    if estimate <= tolerance:
        return verdict
    logger.warning("%s: quadrature estimate %.2e exceeds %.2e; verdict inconclusive", verdict.check, estimate, tolerance)
    return replace(verdict, status=INCONCLUSIVE)


def _complex_stderr(values: np.ndarray) -> float:
    if values.size < 2:
        return math.inf
    spread = np.var(values.real, ddof=1) + np.var(values.imag, ddof=1)
    return float(np.sqrt(spread / values.size))


# -- char-check -----------------------------------------------------------------


def run_char_check(cfg: ExperimentConfig) -> ExperimentResult:
    """Closed-form exponent against forced quadrature, plus the Chapman–Kolmogorov law."""
    model = _model(cfg)
    d = model.dim
    default_u = [_axis(d).tolist(), _axis(d, 2.0).tolist(), [0.5] * d, (-_axis(d, 3.0)).tolist()]
    us = _vectors(cfg.params, "frequencies", default_u, d)
    tolerance = param(cfg.params, "tolerance", CHAR_CHECK_TOLERANCE)

    closed = np.asarray(char_exponent(model.triplet, us))
    quad_values, quad_err = quadrature_exponent(model.triplet, us, strict=False)
    quad = np.asarray(quad_values)
    diff = np.abs(closed - quad)
    rows = [
        [*u.tolist(), c.real, c.imag, q.real, q.imag, float(e)]
        for u, c, q, e in zip(us, closed, quad, diff)
    ]
    scale = max(1.0, float(np.max(np.abs(quad))))
    report = check_levy_measure(model.triplet.nu)
    inputs = {"frequencies": us, "model": model.to_dict()}
    details = {
        "measure": report.to_dict(),
        "max_abs_imag": float(np.max(np.abs(closed.imag))),
        "quadrature_error": quad_err,
    }
    exponent_verdict = Verdict.compare(
        "char_exponent", CHAR_IDENTITY, inputs, float(np.max(diff)), tolerance * scale + quad_err, details
    )
    verdicts = [_unresolved(exponent_verdict, quad_err, tolerance * scale)]

    s = param(cfg.params, "s", 0.5)
    t = param(cfg.params, "t", DEFAULT_HORIZON)
    ck = max(chapman_kolmogorov_residual(model, s, t, u) for u in us)
    verdicts.append(
        Verdict.compare("chapman_kolmogorov", CHAPMAN_IDENTITY, {"s": s, "t": t}, ck, CHAPMAN_KOLMOGOROV_TOLERANCE)
    )
    header = [*_coords("u", d), "psi_re", "psi_im", "psi_quad_re", "psi_quad_im", "abs_diff"]
    return ExperimentResult(verdicts, [Table("char_check", header, rows)])


# -- simulate -------------------------------------------------------------------


def run_simulate(cfg: ExperimentConfig) -> ExperimentResult:
    """Simulate an ensemble and compare its empirical characteristic function with μ̂_t^x."""
    model = _model(cfg)
    d = model.dim
    x = _vector(cfg.params, "x", [0.0] * d, d)
    t = param(cfg.params, "t", DEFAULT_HORIZON)
    n_paths = param(cfg.params, "n_paths", DEFAULT_SIM_PATHS)
    snapshots = param(cfg.params, "snapshots", DEFAULT_SIM_SNAPSHOTS)
    truncation = param(cfg.params, "truncation", None)
    truncation = math.inf if truncation is None else float(truncation)
    eps = _eps(cfg)
    hs = _vectors(cfg.params, "frequencies", [_axis(d).tolist(), _axis(d, 0.5).tolist()], d)
    problems = [] if t > 0 else ["params.t: must be positive"]
    if snapshots < 1:
        problems.append("params.snapshots: must be >= 1")
    if problems:
        raise ConfigError("invalid config", problems)

    grid = np.linspace(0.0, t, snapshots + 1)
    ens = simulate_paths(model, x, grid, n_paths, eps, truncation, cfg.seed, threads=cfg.threads)

    rows: list[list[Any]] = []
    worst = budget = 0.0
    growth = math.exp(t * float(np.linalg.norm(model.A, 2)))
    for h in hs:
        samples = np.exp(1j * (ens.final @ h))
        emp = complex(samples.mean())
        exact = complex(marginal_char(model, t, x, h))
        diff = abs(emp - exact)
        bias = small_jump_bias_bound(model.triplet, eps, t, h * growth)
        rows.append([*h.tolist(), emp.real, emp.imag, exact.real, exact.imag, diff])
        worst = max(worst, diff)
        budget = max(budget, STDERR_MULTIPLIER * _complex_stderr(samples) + min(bias, SCHEME_BIAS_ALLOWANCE))
    if math.isfinite(truncation):
        # truncated ensembles are compared against the untruncated law
        budget += 2.0 * t * model.triplet.nu.mass_outside(truncation)

    inputs = {"x": x, "t": t, "n_paths": n_paths, "truncation": truncation, "eps": eps}
    verdict = Verdict.compare(
        "empirical_characteristic", EMPIRICAL_CHAR_IDENTITY, inputs, worst, budget,
        {"internal_steps": ens.steps, "gaussian_substitution": ens.meta.gaussian_substitution},
    )
    header = [*_coords("h", d), "emp_re", "emp_im", "exact_re", "exact_im", "abs_diff"]
    return ExperimentResult([verdict], [Table("characteristic", header, rows)], ensemble=ens)


# -- cauchy ---------------------------------------------------------------------


def run_cauchy(cfg: ExperimentConfig) -> ExperimentResult:
    """Cauchy identity on a trig polynomial; optional continuity and semigroup-law checks."""
    model = _model(cfg)
    d = model.dim
    p = _trig(cfg, d)
    x = _vector(cfg.params, "x", [0.0] * d, d)
    tolerance = param(cfg.params, "tolerance", CAUCHY_TOLERANCE)
    times = param(cfg.params, "times", [param(cfg.params, "t", DEFAULT_HORIZON)])

    verdicts: list[Verdict] = []
    rows: list[list[Any]] = []
    for t in times:
        v = cauchy_check(model, p, float(t), x, tolerance=tolerance)
        verdicts.append(v)
        rows.append([float(t), v.discrepancy, v.budget])
    tables = [Table("cauchy", ["t", "residual", "budget"], rows)]

    continuity_times = param(cfg.params, "continuity_times", None)
    if continuity_times:
        crows, cverdict = continuity_profile(model, p, x, continuity_times)
        verdicts.append(cverdict)
        tables.append(Table("continuity", ["t", "abs_change", "bound"], crows))

    split = param(cfg.params, "law_split", None)
    if split is not None:
        t = float(times[-1])
        law = semigroup_law_residual(model, p, float(split), t, x)
        verdicts.append(
            Verdict.compare(
                "semigroup_law", SEMIGROUP_LAW_IDENTITY, {"s": split, "t": t, "x": x}, law, CHAPMAN_KOLMOGOROV_TOLERANCE
            )
        )
    return ExperimentResult(verdicts, tables)


# -- commutation ----------------------------------------------------------------


def run_commutation(cfg: ExperimentConfig) -> ExperimentResult:
    """Commutation on a grid plus the two integral forms of the core identity."""
    model = _model(cfg)
    d = model.dim
    f = _smooth(cfg, d)
    t = param(cfg.params, "t", 0.5)
    default_grid = [(_axis(d, s)).tolist() for s in (-0.5, 0.0, 0.5)]
    x_grid = _vectors(cfg.params, "x_grid", default_grid, d)
    n_paths = param(cfg.params, "n_paths", 4 * MIN_MC_PATHS)
    method = param(cfg.params, "method", "auto")
    tolerance = param(cfg.params, "tolerance", None)
    eps = _eps(cfg)

    rows, verdict = commutation_check(
        model, f, t, x_grid,
        n_paths=n_paths, master_seed=cfg.seed, method=method, tolerance=tolerance, threads=cfg.threads,
    )
    verdicts = [verdict]
    tables = [Table("commutation", [*_coords("x", d), "lhs", "rhs", "discrepancy", "budget"], rows)]

    if param(cfg.params, "core_identities", True):
        snapshots = param(cfg.params, "snapshots", DEFAULT_SNAPSHOTS // 5)
        kwargs = {"n_paths": n_paths, "master_seed": cfg.seed, "snapshots": snapshots, "eps": eps, "threads": cfg.threads}
        verdicts.append(core_identity_check(model, f, t, x_grid[0], **kwargs))
        verdicts.append(integral_forms_check(model, f, t, x_grid[0], **kwargs))

    far = cfg.params.get("far_points")
    if far is not None:
        far_points = _vectors(cfg.params, "far_points", far, d)
        srows, sverdict = support_spread(
            model, f, t, far_points, n_paths=10 * n_paths, master_seed=cfg.seed, threads=cfg.threads
        )
        verdicts.append(sverdict)
        tables.append(Table("support_spread", [*_coords("x", d), "estimate", "stderr", "significant"], srows))
    return ExperimentResult(verdicts, tables)


# -- ito-gap --------------------------------------------------------------------


def run_ito_gap(cfg: ExperimentConfig) -> ExperimentResult:
    model = _model(cfg)
    d = model.dim
    f = _smooth(cfg, d)
    rows, verdict = ito_truncation_gap(
        model,
        f,
        param(cfg.params, "t", DEFAULT_HORIZON),
        _vector(cfg.params, "x", [0.0] * d, d),
        [float(n) for n in param(cfg.params, "n_levels", list(DEFAULT_TRUNCATION_LEVELS))],
        n_paths=param(cfg.params, "n_paths", 10 * MIN_MC_PATHS),
        master_seed=cfg.seed,
        eps=_eps(cfg),
        threads=cfg.threads,
    )
    return ExperimentResult([verdict], [Table("ito_gap", ["n", "gap", "stderr", "bound"], rows)])


# -- approx ---------------------------------------------------------------------


def run_approx(cfg: ExperimentConfig) -> ExperimentResult:
    """Mollify-periodize-truncate schedule: uniform bound, pointwise convergence, 𝒟₀ sampling."""
    model = _model(cfg)
    d = model.dim
    # mollification error scales like ‖D²f‖₀/n²
    f = _smooth(cfg, d, radius=6.0)
    schedule = param(cfg.params, "schedule", [list(p) for p in DEFAULT_APPROX_SCHEDULE])
    if not all(isinstance(s, list) and len(s) == 2 for s in schedule):
        raise ConfigError("invalid config", ["params.schedule: expected a list of [n, m] pairs"])
    direction = np.ones(d) / math.sqrt(d)
    default_points = [(r * direction).tolist() for r in (-1.5, -0.6, 0.0, 0.3, 1.1)]
    points = _vectors(cfg.params, "points", default_points, d)
    exact = np.asarray(f.value(points), dtype=float)

    point_rows: list[list[Any]] = []
    bound_rows: list[list[Any]] = []
    ratio = 0.0
    last_error = math.inf
    for n, m in schedule:
        approx = approximate(f, int(n), int(m))
        values = np.asarray(approx.polynomial.value(points)).real
        errors = np.abs(values - exact)
        for k, (xk, vk, ek, err) in enumerate(zip(points, values, exact, errors)):
            point_rows.append([int(n), int(m), k, *xk.tolist(), float(vk), float(ek), float(err)])
        lhs = approx.norm_sum()
        bound_rows.append([int(n), int(m), lhs, approx.bound])
        ratio = max(ratio, lhs / approx.bound)
        last_error = float(np.max(errors))
        logger.info("approx n=%d m=%d: %d terms, pointwise error %.2e", n, m, approx.polynomial.n_terms, last_error)

    inputs = {"schedule": schedule, "f": f.name}
    verdicts = [
        Verdict.compare("approx_uniform_bound", APPROX_BOUND_IDENTITY, inputs, ratio, 1.0 + APPROX_BOUND_SLACK),
        Verdict.compare(
            "approx_pointwise",
            APPROX_POINTWISE_IDENTITY,
            inputs | {"points": points},
            last_error,
            APPROX_POINTWISE_TOLERANCE,
        ),
    ]
    radii = [float(r) for r in param(cfg.params, "shell_radii", list(DEFAULT_SHELL_RADII))]
    report = d0_membership(f, model.A, radii)
    verdicts.append(
        Verdict.compare("d0_membership", D0_IDENTITY, {"shell_radii": radii}, report.shells[-1].worst, D0_TOLERANCE)
    )
    point_header = ["n", "m", "point_index", *_coords("x", d), "value", "exact", "abs_error"]
    return ExperimentResult(
        verdicts,
        [
            Table("approx_points", point_header, point_rows),
            Table("approx_bounds", ["n", "m", "lhs", "M"], bound_rows),
            Table("d0_shells", ["r", "value", "gradient", "hessian", "transport"], report.rows()),
        ],
    )


# -- phi-core -------------------------------------------------------------------


def run_phi_core(cfg: ExperimentConfig) -> ExperimentResult:
    """Semigroup invariance and the generator closed form of ``φ_{a,h}``."""
    model = _model(cfg)
    d = model.dim
    h = _vector(cfg.params, "h", _axis(d).tolist(), d)
    a_values = [float(a) for a in param(cfg.params, "a", [0.5, 1.0])]
    times = [float(t) for t in param(cfg.params, "times", [0.0, 0.25, 0.5])]
    xs = _vectors(cfg.params, "x", [[0.0] * d, [0.5] * d], d)
    check_generator = param(cfg.params, "generator", True)

    rows: list[list[Any]] = []
    gen_rows: list[list[Any]] = []
    worst = worst_gap = worst_err = 0.0
    for a in a_values:
        phi = D1Function(model, a, h)
        for x in xs:
            for t in times:
                residual = phi_semigroup_identity(phi, t, x)
                rows.append([a, t, *x.tolist(), residual])
                worst = max(worst, residual)
            if check_generator:
                gap, err = phi_generator_gap(phi, x)
                gen_rows.append([a, *x.tolist(), gap, err])
                worst_gap = max(worst_gap, gap)
                worst_err = max(worst_err, err)

    inputs = {"a": a_values, "h": h, "times": times, "x": xs}
    verdicts = [Verdict.compare("phi_semigroup_identity", PHI_IDENTITY, inputs, worst, PHI_IDENTITY_TOLERANCE)]
    tables = [Table("phi_core", ["a", "t", *_coords("x", d), "residual"], rows)]
    if check_generator:
        generator_verdict = Verdict.compare(
            "phi_generator", PHI_GENERATOR_IDENTITY, inputs, worst_gap, PHI_GENERATOR_TOLERANCE + worst_err,
            {"quadrature_error": worst_err},
        )
        verdicts.append(_unresolved(generator_verdict, worst_err, PHI_GENERATOR_TOLERANCE))
        tables.append(Table("phi_generator", ["a", *_coords("x", d), "gap", "quad_error"], gen_rows))
    return ExperimentResult(verdicts, tables)


# -- fpk ------------------------------------------------------------------------


def _fpk_functions(cfg: ExperimentConfig, model: OUModel) -> list[tuple[str, FPKFunction]]:
    d = model.dim
    raw = cfg.params.get(
        "functions",
        [
            {"type": "trig", "terms": [{"coefficient": [1.0, 0.0], "frequency": _axis(d).tolist()}]},
            {"type": "phi", "a": 1.0, "h": _axis(d).tolist()},
        ],
    )
    if not isinstance(raw, list) or not raw:
        raise ConfigError("invalid config", ["params.functions: expected a non-empty list"])
    out: list[tuple[str, FPKFunction]] = []
    for i, entry in enumerate(raw):
        path = f"params.functions[{i}]"
        kind = entry.get("type") if isinstance(entry, dict) else None
        if kind == "trig":
            p = TrigPolynomial.from_dict(entry, path)
            if p.dim != d:
                raise ConfigError("invalid config", [f"{path}: frequencies have dimension {p.dim}, model has {d}"])
            out.append((f"fpk_{i}_trig", p))
        elif kind == "phi":
            a = entry.get("a", 1.0)
            if not isinstance(a, (int, float)) or a <= 0:
                raise ConfigError("invalid config", [f"{path}.a: must be a positive number"])
            h = _vector(entry, "h", _axis(d).tolist(), d)
            out.append((f"fpk_{i}_phi", D1Function(model, float(a), h)))
        else:
            raise ConfigError("invalid config", [f"{path}.type: expected 'trig' or 'phi'"])
    return out


def run_fpk(cfg: ExperimentConfig) -> ExperimentResult:
    model = _model(cfg)
    d = model.dim
    x = _vector(cfg.params, "x", [0.0] * d, d)
    t = param(cfg.params, "t", DEFAULT_HORIZON)
    n_paths = param(cfg.params, "n_paths", DEFAULT_FPK_PATHS)
    snapshots = param(cfg.params, "snapshots", DEFAULT_SNAPSHOTS)
    eps = _eps(cfg)

    result = ExperimentResult()
    for name, f in _fpk_functions(cfg, model):
        report = fpk_residual(
            model, f, x, t, n_paths, cfg.seed, snapshots=snapshots, eps=eps, threads=cfg.threads
        )
        label = f.to_dict() if isinstance(f, TrigPolynomial) else {"phi": {"a": f.a, "h": f.h}}
        result.verdicts.append(report.verdict({"x": x, "t": t, "n_paths": n_paths, "f": label}))
        result.tables.append(Table(name, list(FPK_COLUMNS), report.rows))
    return result


# -- dim-sweep ------------------------------------------------------------------


def run_dim_sweep(cfg: ExperimentConfig) -> ExperimentResult:
    """Galerkin truncations of a spectral model; the trace-class gate runs at parse time."""
    sm = SpectralModel.from_dict(cfg.spectral, "spectral")
    x_recipe = SequenceRecipe.from_dict(cfg.params.get("x", {"family": "zero"}), "params.x")
    dims = [int(d) for d in param(cfg.params, "dims", list(DEFAULT_SWEEP_DIMS))]
    raw_f = cfg.params.get("f")
    f = TrigPolynomial.cosine([1.0]) if raw_f is None else TrigPolynomial.from_dict(raw_f, "params.f")
    t = param(cfg.params, "t", DEFAULT_HORIZON)
    tolerance = param(cfg.params, "tolerance", SWEEP_TOLERANCE)
    change_tolerance = param(cfg.params, "change_tolerance", SWEEP_CHANGE_TOLERANCE)

    rows, verdicts = dimension_sweep(
        sm, x_recipe, f, t, dims, tolerance=tolerance, change_tolerance=change_tolerance, threads=cfg.threads
    )
    tables = [Table("dim_sweep", ["d", "residual", "residual_change", "x_in_domain", "ca_sup"], rows)]
    radii = param(cfg.params, "radii", None)
    if radii:
        h_active = f.frequencies[0]
        ca_rows = ca_membership(sm, h_active, dims, [float(r) for r in radii])
        tables.append(Table("ca_membership", ["d", "r", "sampled_sup", "bound"], ca_rows))
    return ExperimentResult(verdicts, tables)


EXPERIMENT_HANDLERS: dict[str, Experiment] = {
    "char-check": run_char_check,
    "simulate": run_simulate,
    "cauchy": run_cauchy,
    "commutation": run_commutation,
    "ito-gap": run_ito_gap,
    "approx": run_approx,
    "phi-core": run_phi_core,
    "fpk": run_fpk,
    "dim-sweep": run_dim_sweep,
}
