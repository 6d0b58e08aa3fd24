"""Experiment runner behind the command line: target catalog, grid parsing,
convergence sweeps, the kernel-identity audit, and the negative-control
probes, each serialized as CSV or versioned JSON."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Tuple

import numpy as np

from .debranges import (
    cos_case_probe,
    dilation_failure,
    example_sinh,
    kernel_K,
    theorem2_convergence,
)
from .errors import (
    DomainError,
    HypothesisError,
    UsageError,
    WitnessNotFoundError,
)
from .homogeneous import (
    HomogeneousWeight,
    TargetFunction,
    gruenwald_G,
    gruenwald_H,
    interpolation_kernel,
    sup_error,
    wrong_operator_probe,
)
from .reports import (
    ConvergenceReport,
    ExperimentConfig,
    ReportRow,
    TARGET_IDS,
    fmt17,
    write_text,
)
from .series import DEFAULT_POLICY, TruncationPolicy, eval_series
from .special import Order, zero_table

# Block length for the chunked kernel-identity sums; keeps peak memory flat
# while leaving the summation order fixed.
_CHUNK = 262144

# Default half-width, in node units, of the kernel-identity audit window.
# The truncated tail of the diagonal identity behaves like c/(tau * radius)
# with c < 2, so 4e6/tau keeps the relative residual safely under 1e-6.
_KERNEL_CHECK_SPAN = 4.0e6

_PROBE_EXPERIMENTS = ("wrong-operator", "cos-case", "dilation-failure")


def make_grid(spec: str) -> np.ndarray:
    """Parse 'min:max:step' into a deterministic grid.

    The step may be a fraction 'p/q'; the grid is built as min + k*p/q so
    that rational steps reproduce exactly across runs.
    """
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise UsageError("grid must be 'min:max:step', got %r" % (spec,))
    try:
        gmin = float(parts[0])
        gmax = float(parts[1])
        step_text = parts[2]
        if "/" in step_text:
            num_text, den_text = step_text.split("/", 1)
            num = float(num_text)
            den = float(den_text)
        else:
            num = float(step_text)
            den = 1.0
    except ValueError:
        raise UsageError("grid must be numeric 'min:max:step', got %r" % (spec,))
    if den == 0.0 or not (num / den > 0.0):
        raise UsageError("grid step must be positive")
    if not (gmax > gmin):
        raise UsageError("grid max must exceed grid min")
    span = (gmax - gmin) * den / num
    count = int(math.floor(span * (1.0 + 1e-12) + 1e-9)) + 1
    return gmin + np.arange(count) * num / den


def parse_ladder(spec: str) -> Tuple[float, ...]:
    """Parse a comma-separated, strictly increasing list of tau values."""
    try:
        ladder = tuple(float(part) for part in str(spec).split(","))
    except ValueError:
        raise UsageError("tau ladder must be comma-separated numbers, got %r" % (spec,))
    if not ladder:
        raise UsageError("tau ladder must be non-empty")
    if any(t <= 0.0 for t in ladder):
        raise UsageError("tau values must be positive")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise UsageError("tau ladder must be strictly increasing")
    return ladder


def _f_gaussian(x):
    return math.exp(-float(x) * float(x))


def _f_gaussian_x2(x):
    x = float(x)
    return x * x * math.exp(-x * x)


def _f_poisson_recip(x):
    x = float(x)
    return 1.0 / (x * x + 1.0)


def _f_one(x):
    return 1.0


_SCALAR_TARGETS = {
    "gaussian": _f_gaussian,
    "gaussian-times-x2": _f_gaussian_x2,
    "poisson-recip": _f_poisson_recip,
    "constant-one": _f_one,
}


def target_callable(target_id: str) -> Callable[[float], float]:
    """The bare scalar function behind a catalog id (no weight metadata)."""
    if target_id in _SCALAR_TARGETS:
        return _SCALAR_TARGETS[target_id]
    if target_id == "recip-weight":
        raise UsageError(
            "recip-weight depends on the homogeneous order; build it with "
            "make_target(order=...)"
        )
    if target_id == "custom-samples":
        raise UsageError(
            "custom-samples is only available through the eval command "
            "with --samples"
        )
    raise UsageError(
        "unknown target %r; expected one of %s" % (target_id, ", ".join(TARGET_IDS))
    )


def make_target(target_id: str, order: Optional[Order] = None) -> TargetFunction:
    """Build a catalog target with regime-correct weighted-limit metadata.

    The metadata describes f * w for the homogeneous weight of `order` (or
    for no weight when order is None): its value or limit at the origin,
    whether it is bounded and uniformly continuous, and whether it vanishes
    at the origin.  These are the hypotheses the convergence statements
    consume; the callables themselves are plain scalar functions.
    """
    if order is None or order.is_classical:
        regime = "classical"
    elif order.nu > -0.5:
        regime = "G-regime"
    else:
        regime = "H-regime"

    if target_id == "recip-weight":
        if order is None:
            raise UsageError("recip-weight requires a homogeneous order")
        weight = HomogeneousWeight(order)
        return TargetFunction(
            f=weight.reciprocal,
            origin_limit=1.0,
            fw_bounded=True,
            fw_uniformly_continuous=True,
            fw_vanishes_at_origin=False,
        )

    base = target_callable(target_id)

    if target_id == "gaussian":
        if regime == "G-regime":
            return TargetFunction(base, 0.0, True, True, True)
        if regime == "H-regime":
            return TargetFunction(base, None, False, False, False)
        return TargetFunction(base, 1.0, True, True, False)

    if target_id == "gaussian-times-x2":
        # x**2 absorbs the weight singularity in every regime.
        return TargetFunction(base, 0.0, True, True, True)

    if target_id == "poisson-recip":
        if regime == "G-regime":
            return TargetFunction(base, 0.0, True, True, True)
        if regime == "H-regime":
            return TargetFunction(base, None, False, False, False)
        return TargetFunction(base, 1.0, True, True, False)

    # constant-one: f*w is the weight itself.
    if regime == "G-regime":
        exponent = 2.0 * order.nu + 1.0
        return TargetFunction(base, 0.0, False, exponent <= 1.0, True)
    if regime == "H-regime":
        return TargetFunction(base, None, False, False, False)
    return TargetFunction(base, 1.0, True, True, False)


def _grid_from_config(config: ExperimentConfig) -> np.ndarray:
    count = int(round((config.grid_max - config.grid_min) / config.grid_step)) + 1
    return config.grid_min + np.arange(count) * config.grid_step


def run_converge(
    config: ExperimentConfig,
    grid: Optional[np.ndarray] = None,
) -> ConvergenceReport:
    """Run one convergence experiment.

    theorem1 sweeps the homogeneous-weight operator matched to the sign of
    2 nu + 1; theorem2-sinh sweeps the explicit Hermite-Biehler family
    against w(x) = x^2 + 1.  A hypothesis-check failure is recorded in the
    report note (failing its verdict) instead of raising.
    """
    if grid is None:
        grid = _grid_from_config(config)
    grid = np.asarray(grid, dtype=float)

    if config.experiment == "theorem1":
        if config.nu is None:
            raise UsageError("theorem1 requires --nu")
        order = Order(config.nu)
        target = make_target(config.target, order)
        which = "H" if (not order.is_classical and order.nu < -0.5) else "G"
        rows = []
        for tau in config.tau_ladder:
            result = sup_error(order, target, tau, grid, which, config.policy)
            rows.append(
                ReportRow(
                    tau=tau,
                    sup_error=result.value,
                    argmax=result.argmax,
                    nodes_used=result.nodes_used,
                    tail_estimate=result.tail_estimate,
                )
            )
        return ConvergenceReport(
            experiment=config.experiment,
            nu=config.nu,
            target=config.target,
            grid_min=config.grid_min,
            grid_max=config.grid_max,
            grid_step=config.grid_step,
            tail_tolerance=config.policy.tail_tolerance,
            rows=tuple(rows),
        )

    # theorem2-sinh
    if config.target == "recip-weight":
        raise UsageError(
            "theorem2-sinh measures against w(x) = x^2 + 1; use poisson-recip"
        )
    f = target_callable(config.target)
    try:
        return theorem2_convergence(
            example_sinh,
            f,
            _f_weight_poisson,
            config.tau_ladder,
            grid,
            config.policy,
            target_id=config.target,
        )
    except HypothesisError as exc:
        return ConvergenceReport(
            experiment=config.experiment,
            nu=config.nu,
            target=config.target,
            grid_min=config.grid_min,
            grid_max=config.grid_max,
            grid_step=config.grid_step,
            tail_tolerance=config.policy.tail_tolerance,
            rows=(),
            family_id="sinh",
            note="hypothesis check failed: %s" % exc,
        )


def _f_weight_poisson(x):
    x = float(x)
    return x * x + 1.0


def cli_zeros(
    nu: float,
    kind: str,
    count: int,
    out: Optional[str] = None,
    out_format: str = "csv",
):
    """Zero table for the even or odd generating family; returns the text."""
    if count < 1:
        raise UsageError("count must be at least 1")
    if out_format not in ("csv", "json"):
        raise UsageError("format must be 'csv' or 'json'")
    table = zero_table(Order(nu), kind, count)
    if out_format == "csv":
        text = table.csv_text()
    else:
        payload = {
            "schema": 1,
            "nu": nu,
            "kind": table.kind,
            "zeros": list(table.zeros),
            "derivs": list(table.derivs),
            "second_derivs": list(table.second_derivs),
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out is not None:
        write_text(out, text)
    return table, text


def cli_converge(config: ExperimentConfig, grid: Optional[np.ndarray] = None):
    """Run the experiment, serialize it per the config, and judge it.

    Returns (report, text, exit_code): 0 when the verdict passes, 1 when it
    fails (including hypothesis-check aborts recorded in the note).
    """
    report = run_converge(config, grid)
    text = report.serialize(config.out_format)
    if config.out is not None:
        write_text(config.out, text)
    code = 0 if report.verdicts()["pass"] else 1
    return report, text, code


@dataclass(frozen=True)
class TableReport:
    """A small rectangular report with pass/fail, serializable as CSV or
    schema-versioned JSON.  Cells are floats, ints, bools, or strings."""

    experiment: str
    meta: dict
    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]
    passed: bool

    @staticmethod
    def _cell(value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return fmt17(value)
        return str(value)

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(self._cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "schema": 1,
            "experiment": self.experiment,
            "columns": list(self.columns),
            "rows": [list(row) for row in self.rows],
            "pass": self.passed,
        }
        payload.update(self.meta)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def serialize(self, out_format: str) -> str:
        if out_format == "csv":
            return self.to_csv()
        if out_format == "json":
            return self.to_json()
        raise UsageError("format must be 'csv' or 'json'")


def _sinh_closed_forms(tau: float):
    """Vectorized diagonal quantities for the explicit family: given node
    arrays, return K(t,t) and A'(t) without any series evaluation."""
    th = math.tanh(tau)
    ch = math.cosh(tau)
    sh = math.sinh(tau)
    sinh2 = math.sinh(2.0 * tau)
    cnorm = math.sqrt(2.0 / sinh2)

    def phi_prime_vec(t: np.ndarray) -> np.ndarray:
        if 2.0 * tau > 350.0:
            base = tau
        else:
            base = tau * sinh2 / (math.cosh(2.0 * tau) - np.cos(2.0 * tau * t))
        return base - 1.0 / (1.0 + t * t)

    def abs_e2_vec(t: np.ndarray) -> np.ndarray:
        s = np.sin(tau * t)
        return (2.0 * s * s / sinh2 + th) / (t * t + 1.0)

    def a_deriv_at_nodes(t: np.ndarray) -> np.ndarray:
        s = np.sin(tau * t)
        c = np.cos(tau * t)
        n_prime = ch * s + tau * t * ch * c - tau * sh * s
        return cnorm * n_prime / (t * t + 1.0)

    def k_diag_vec(t: np.ndarray) -> np.ndarray:
        return phi_prime_vec(t) * abs_e2_vec(t) / math.pi

    return phi_prime_vec, abs_e2_vec, a_deriv_at_nodes, k_diag_vec


def cli_kernel_check(
    tau: float,
    grid=None,
    out: Optional[str] = None,
    out_format: str = "csv",
    radius: Optional[float] = None,
    identity_tol: float = 1e-6,
):
    """Audit the diagonal reproducing identity for the explicit family.

    For each grid point x this compares the node sum
    sum_t K(t,t) A(x)^2 / (A'(t)^2 (x-t)^2) against the directly computed
    K(x,x), checks pi K(x,x) = phi'(x) |E(x)|^2, and checks the two-sided
    envelope tanh(tau) <= (x^2+1)|E(x)|^2 <= coth(tau).  Returns
    (TableReport, text, exit_code).
    """
    tau = float(tau)
    if not (tau > 0.0):
        raise UsageError("tau must be positive")
    if grid is None:
        grid = np.asarray([0.0, 0.5, 2.0])
    grid = np.asarray(grid, dtype=float)
    if radius is None:
        radius = _KERNEL_CHECK_SPAN / tau
    if not (radius > 0.0):
        raise UsageError("radius must be positive")

    member = example_sinh(tau)
    hb = member.hb
    nodes = member.nodes((-radius, radius))
    _, abs_e2_vec, a_deriv_vec, k_diag_vec = _sinh_closed_forms(tau)
    term_weights = np.empty(nodes.size)
    for start in range(0, nodes.size, _CHUNK):
        block = nodes[start : start + _CHUNK]
        term_weights[start : start + _CHUNK] = k_diag_vec(block) / (
            a_deriv_vec(block) ** 2
        )

    low = member.sandwich_low
    high = member.sandwich_high
    slack = 1e-13
    rows = []
    all_ok = True
    for x in grid:
        x = float(x)
        ax = hb.A(x)
        partials = []
        hit = None
        for start in range(0, nodes.size, _CHUNK):
            block = nodes[start : start + _CHUNK]
            delta = x - block
            exact = delta == 0.0
            if np.any(exact):
                hit = int(np.flatnonzero(exact)[0]) + start
                delta = np.where(exact, 1.0, delta)
            partials.append(
                float(
                    np.add.reduce(
                        term_weights[start : start + _CHUNK] * (ax / delta) ** 2
                    )
                )
            )
        series_sum = math.fsum(partials)
        if hit is not None:
            # At a node every other term carries A(x) = 0 and the singular
            # term's limit is K(t,t) itself.
            series_sum += float(k_diag_vec(nodes[hit : hit + 1])[0])
        k_direct = kernel_K(hb, x, x)
        k_direct = k_direct.real if isinstance(k_direct, complex) else float(k_direct)
        identity_resid = abs(series_sum - k_direct) / abs(k_direct)
        phi_e2 = member.phase.phase_deriv(x) * member.abs_E_squared(x)
        phase_resid = abs(math.pi * k_direct - phi_e2) / abs(phi_e2)
        envelope = (x * x + 1.0) * member.abs_E_squared(x)
        row_ok = (
            identity_resid < identity_tol
            and phase_resid < 1e-10
            and low - slack <= envelope <= high + slack
        )
        all_ok = all_ok and row_ok
        rows.append(
            (x, k_direct, series_sum, identity_resid, phase_resid, envelope, row_ok)
        )

    report = TableReport(
        experiment="kernel-check",
        meta={
            "tau": tau,
            "radius": radius,
            "identity_tol": identity_tol,
            "envelope_low": low,
            "envelope_high": high,
            "nodes_used": int(nodes.size),
        },
        columns=(
            "x",
            "kernel_diag",
            "series_sum",
            "identity_resid",
            "phase_resid",
            "envelope_value",
            "ok",
        ),
        rows=tuple(rows),
        passed=all_ok,
    )
    text = report.serialize(out_format)
    if out is not None:
        write_text(out, text)
    return report, text, 0 if all_ok else 1


def cli_probe(
    experiment: str,
    nu: Optional[float] = None,
    tau: Optional[float] = None,
    tau_ladder: Optional[Tuple[float, ...]] = None,
    grid=None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    out: Optional[str] = None,
    out_format: str = "csv",
):
    """Dispatch one of the negative-control probes.

    wrong-operator: scan for a point where the regime-mismatched operator
    applied to the reciprocal weight exceeds it (exit 1 when no witness
    clears the certification floor).  cos-case: bound tau * |w G(1/w) - 1|
    for the cosine kernel, bound 2.05.  dilation-failure: the dilated-sinc
    sequence must increase and more than double across the ladder.
    """
    if experiment == "wrong-operator":
        if nu is None:
            raise UsageError("wrong-operator requires --nu")
        if tau is None:
            tau = 5.0
        order = Order(nu)
        try:
            witness = wrong_operator_probe(order, tau, policy)
            rows = ((nu, tau, witness.mismatched_kind, witness.x, witness.excess, True),)
            passed = True
            note = ""
        except WitnessNotFoundError as exc:
            rows = ()
            passed = False
            note = str(exc)
        report = TableReport(
            experiment=experiment,
            meta={"nu": nu, "tau": tau, "note": note},
            columns=("nu", "tau", "mismatched_kind", "x", "excess", "found"),
            rows=rows,
            passed=passed,
        )
    elif experiment == "cos-case":
        if tau is None:
            tau = 5.0
        if grid is None:
            grid = np.linspace(-10.0, 10.0, 401)
        grid = np.asarray(grid, dtype=float)
        bound = 2.05
        worst = cos_case_probe(tau, grid, policy)
        passed = worst <= bound
        report = TableReport(
            experiment=experiment,
            meta={
                "tau": tau,
                "grid_min": float(grid[0]),
                "grid_max": float(grid[-1]),
                "bound": bound,
            },
            columns=("tau", "max_abs_p", "bound", "ok"),
            rows=((tau, worst, bound, passed),),
            passed=passed,
        )
    elif experiment == "dilation-failure":
        ladder = tau_ladder if tau_ladder is not None else (4.0, 16.0, 64.0, 256.0)
        ladder = tuple(float(t) for t in ladder)
        if any(b <= a for a, b in zip(ladder, ladder[1:])) or not ladder:
            raise UsageError("tau ladder must be non-empty and strictly increasing")
        values = dilation_failure(ladder)
        increasing = all(b > a for a, b in zip(values, values[1:]))
        doubled = len(values) >= 2 and values[-1] > 2.0 * values[0]
        passed = increasing and doubled
        report = TableReport(
            experiment=experiment,
            meta={"increasing": increasing, "last_over_double_first": doubled},
            columns=("tau", "value"),
            rows=tuple((t, v) for t, v in zip(ladder, values)),
            passed=passed,
        )
    else:
        raise UsageError(
            "unknown probe %r; expected one of %s"
            % (experiment, ", ".join(_PROBE_EXPERIMENTS))
        )

    text = report.serialize(out_format)
    if out is not None:
        write_text(out, text)
    return report, text, 0 if report.passed else 1


def read_samples_csv(path: str) -> dict:
    """Node -> value mapping from a two-column CSV (header optional).

    Keys are node abscissae exactly as the zeros command prints them (17
    significant digits round-trip bit-for-bit); values are the target
    sampled at node/tau.  Only nodes inside the evaluation window need to
    be present.
    """
    samples = {}
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) < 2:
                raise UsageError(
                    "%s:%d: expected 'node,value' columns" % (path, line_no)
                )
            try:
                node = float(parts[0])
                value = float(parts[1])
            except ValueError:
                if line_no == 1:
                    continue  # header row
                raise UsageError(
                    "%s:%d: expected numeric 'node,value'" % (path, line_no)
                )
            samples[node] = value
    if not samples:
        raise UsageError("%s: no samples found" % path)
    return samples


def cli_eval(
    nu: float,
    tau: float,
    x: float,
    which: Optional[str] = None,
    target: str = "gaussian",
    samples_path: Optional[str] = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    out: Optional[str] = None,
    out_format: str = "csv",
):
    """Evaluate one operator value at one point; returns (value, text, 0).

    With --samples the interpolation data come from a node->value CSV
    (catalog id custom-samples); otherwise the named catalog target is
    sampled at the kernel nodes.
    """
    order = Order(nu)
    if which is None:
        which = "H" if (not order.is_classical and order.nu < -0.5) else "G"
    if which not in ("G", "H"):
        raise UsageError("which must be 'G' or 'H'")
    x = float(x)
    if samples_path is not None:
        mapping = read_samples_csv(samples_path)
        target = "custom-samples"
        kernel = interpolation_kernel(order, tau, abs(x) * tau, which, policy)
        value = eval_series(kernel, mapping, x, policy).value
    else:
        if target == "custom-samples":
            raise UsageError("custom-samples requires --samples FILE")
        data = make_target(target, order)
        operator = gruenwald_G if which == "G" else gruenwald_H
        value = operator(order, data, tau, x, policy)
    value = value.real if isinstance(value, complex) and value.imag == 0.0 else value
    if isinstance(value, complex):
        rendered = "%s%+sj" % (fmt17(value.real), fmt17(value.imag))
    else:
        rendered = fmt17(float(value))
    if out_format == "csv":
        text = "which,nu,tau,x,value\n%s,%s,%s,%s,%s\n" % (
            which,
            fmt17(nu),
            fmt17(tau),
            fmt17(float(x)),
            rendered,
        )
    elif out_format == "json":
        payload = {
            "schema": 1,
            "which": which,
            "nu": nu,
            "tau": tau,
            "x": float(x),
            "target": target,
            "value": rendered,
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        raise UsageError("format must be 'csv' or 'json'")
    if out is not None:
        write_text(out, text)
    return value, text, 0
