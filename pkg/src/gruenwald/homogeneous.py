"""Weighted interpolation for power weights w(x) = |x|**(2*nu + 1).

For an order nu > -1 the two quadratic interpolation operators are built on
the zero sets of the even oscillatory function A (operator G) and of its odd
companion B (operator H, whose node set includes the origin).  Convergence
in the weighted uniform norm holds for G when 2*nu + 1 > 0 and for H when
2*nu + 1 < 0; at the boundary order both reduce to classical band-limited
interpolation with weight 1.  The module also exposes the one-sided minorant
series for the reciprocal weight, the closed-form envelope that bounds its
deficiency, a scan that hunts for domination failures of the regime-mismatched
operator, and an exact error decomposition used to cross-check evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, WitnessNotFoundError
from .series import (
    DEFAULT_POLICY,
    GruenwaldKernel,
    TruncationPolicy,
    eval_series,
)
from .special import Order, a_nu, b_nu, b_nu_prime, zero_table


@dataclass(frozen=True)
class HomogeneousWeight:
    """The weight w(x) = |x|**(2*nu + 1) attached to an order."""

    order: Order

    @property
    def exponent(self) -> float:
        return 2.0 * self.order.nu + 1.0

    def __call__(self, x: float) -> float:
        p = self.exponent
        ax = abs(float(x))
        if ax == 0.0:
            if p > 0.0:
                return 0.0
            if p < 0.0:
                return math.inf
            return 1.0
        return ax ** p

    def reciprocal(self, x: float) -> float:
        p = self.exponent
        ax = abs(float(x))
        if ax == 0.0:
            if p > 0.0:
                return math.inf
            if p < 0.0:
                return 0.0
            return 1.0
        return ax ** (-p)


@dataclass(frozen=True)
class TargetFunction:
    """A target f together with the properties of f*w the theory needs.

    origin_limit is the limit of f(x)*w(x) as x -> 0; the three flags state
    whether f*w is bounded, uniformly continuous, and vanishing at the origin.
    """

    f: Callable[[float], complex]
    origin_limit: complex
    fw_bounded: bool = True
    fw_uniformly_continuous: bool = True
    fw_vanishes_at_origin: bool = False

    def __post_init__(self) -> None:
        if self.fw_vanishes_at_origin and self.origin_limit != 0:
            raise DomainError(
                "fw_vanishes_at_origin requires origin_limit 0"
            )

    def __call__(self, x: float):
        return self.f(x)


# Kernel caches keyed by (nu, kind, tau); each entry keeps the widest kernel
# built so far so repeated scans reuse the same node tables.
_G_CACHE: dict = {}
_H_CACHE: dict = {}


def _required_count(mu: float, umax: float, policy: TruncationPolicy) -> int:
    per_gap = (umax + policy.radius) / math.pi
    return max(16, int(math.ceil(per_gap + abs(mu) + 0.5 * policy.min_nodes + 8)))


def _g_kernel(order: Order, tau: float, umax: float, policy: TruncationPolicy) -> GruenwaldKernel:
    key = (order.nu, tau)
    count = _required_count(order.nu, umax, policy)
    cached = _G_CACHE.get(key)
    if cached is not None and len(cached.nodes) >= 2 * count:
        return cached
    tab = zero_table(order, "A", count)
    nodes = np.concatenate([-tab.zeros[::-1], tab.zeros])
    derivs = np.concatenate([-tab.derivs[::-1], tab.derivs])
    second = np.concatenate([tab.second_derivs[::-1], tab.second_derivs])
    kernel = GruenwaldKernel(
        nodes=nodes,
        gen=lambda u, _o=order: a_nu(_o, u),
        gen_deriv_at_nodes=derivs,
        tau=tau,
        gen_second_deriv_at_nodes=second,
    )
    _G_CACHE[key] = kernel
    return kernel


def _h_kernel(
    order: Order,
    tau: float,
    umax: float,
    policy: TruncationPolicy,
    include_origin: bool = True,
) -> GruenwaldKernel:
    key = (order.nu, tau, include_origin)
    count = _required_count(order.nu + 1.0, umax, policy)
    cached = _H_CACHE.get(key)
    if cached is not None and len(cached.nodes) >= 2 * count:
        return cached
    tab = zero_table(order, "B", count)
    parts_n = [-tab.zeros[::-1], tab.zeros]
    parts_d = [tab.derivs[::-1], tab.derivs]
    parts_s = [-tab.second_derivs[::-1], tab.second_derivs]
    if include_origin:
        parts_n.insert(1, np.array([0.0]))
        parts_d.insert(1, np.array([b_nu_prime(order, 0.0)]))
        parts_s.insert(1, np.array([0.0]))
    kernel = GruenwaldKernel(
        nodes=np.concatenate(parts_n),
        gen=lambda u, _o=order: b_nu(_o, u),
        gen_deriv_at_nodes=np.concatenate(parts_d),
        tau=tau,
        gen_second_deriv_at_nodes=np.concatenate(parts_s),
    )
    _H_CACHE[key] = kernel
    return kernel


def _samples_on(kernel: GruenwaldKernel, f: Callable) -> np.ndarray:
    tau = kernel.tau
    vals = np.asarray([f(t / tau) for t in kernel.nodes])
    if not np.all(np.isfinite(vals)):
        bad = kernel.nodes[~np.isfinite(vals)][0]
        raise DomainError(
            "target sample is not finite at node %.17g" % (bad / tau)
        )
    return vals


def _as_callable(f) -> Callable:
    return f.f if isinstance(f, TargetFunction) else f


def gruenwald_G(
    order: Order,
    f,
    tau: float,
    z,
    policy: TruncationPolicy = DEFAULT_POLICY,
):
    """Quadratic interpolation of f on the even-family nodes scaled by tau.

    Real inputs yield a real-valued result; complex z is supported.  The
    declared boundedness of f*w is trusted, not checked; a sample that is not
    finite raises DomainError.
    """
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    center = abs(z.real if isinstance(z, complex) else float(z)) * tau
    kernel = _g_kernel(order, tau, center, policy)
    samples = _samples_on(kernel, _as_callable(f))
    return eval_series(kernel, samples, z, policy).value


def gruenwald_H(
    order: Order,
    f,
    tau: float,
    z,
    policy: TruncationPolicy = DEFAULT_POLICY,
):
    """Quadratic interpolation of f on the odd-family nodes scaled by tau.

    The origin is a node of this family, so f(0) must be finite; targets
    singular at 0 raise DomainError here (the mismatched-operator probe
    handles that case explicitly with the origin node removed).
    """
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    center = abs(z.real if isinstance(z, complex) else float(z)) * tau
    kernel = _h_kernel(order, tau, center, policy)
    samples = _samples_on(kernel, _as_callable(f))
    return eval_series(kernel, samples, z, policy).value


def interpolation_kernel(
    order: Order,
    tau: float,
    umax: float,
    which: str = "G",
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> GruenwaldKernel:
    """The node kernel either operator would use to evaluate near |u| <= umax.

    Exposed so callers holding raw samples keyed by node (rather than a
    target function) can run eval_series themselves.
    """
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    if which == "G":
        return _g_kernel(order, tau, umax, policy)
    if which == "H":
        return _h_kernel(order, tau, umax, policy)
    raise DomainError("which must be 'G' or 'H'")


@dataclass(frozen=True)
class MinorantSeries:
    """Reciprocal-weight interpolation series; a one-sided minorant of 1/w
    in the operator's convergence regime."""

    order: Order
    tau: float
    kernel: GruenwaldKernel

    def __call__(self, x, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
        weight = HomogeneousWeight(self.order)
        samples = np.asarray(
            [weight.reciprocal(t / self.tau) for t in self.kernel.nodes]
        )
        ev = eval_series(self.kernel, samples, x, policy)
        v = ev.value
        return v.real if isinstance(v, complex) else float(v)


def _minorant_kernel(order: Order, tau: float, umax: float, policy: TruncationPolicy) -> GruenwaldKernel:
    if order.regime == "H-regime":
        # The origin node carries reciprocal weight 0 there; drop it so the
        # sample array stays finite for every order.
        return _h_kernel(order, tau, umax, policy, include_origin=False)
    return _g_kernel(order, tau, umax, policy)


def minorant_L(
    order: Order,
    tau: float,
    x,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Value at x of the reciprocal-weight series on the regime's node family.

    In the matching regime this never exceeds 1/w(x); the gap is controlled
    by the envelope from lemma_error_shape.
    """
    if order.is_classical:
        raise DomainError("minorant series is not defined at the classical order")
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    xr = float(x)
    kernel = _minorant_kernel(order, tau, abs(xr) * tau, policy)
    weight = HomogeneousWeight(order)
    samples = np.asarray([weight.reciprocal(t / tau) for t in kernel.nodes])
    ev = eval_series(kernel, samples, xr, policy)
    v = ev.value
    return v.real if isinstance(v, complex) else float(v)


def _shape_h_factor(u: float, u0: float, p: float) -> float:
    """(u**p - u0**p) / (u0**2 - u**2) with its removable value at u = u0."""
    if abs(u - u0) < 1e-6 * u0:
        return -0.5 * p * u0 ** (p - 2.0)
    return (u ** p - u0 ** p) / (u0 * u0 - u * u)


def lemma_error_shape(
    order: Order,
    tau: float,
    xs,
    policy: TruncationPolicy = DEFAULT_POLICY,
):
    """Deficiency 1/w - L on a grid together with its closed-form envelope.

    Returns (x, deficiency, bound_shape) as parallel arrays.  The envelope is
    reported with leading constant 1; in the even-family regime the true
    bound carries an unspecified order-dependent constant, so meaningful
    checks compare ratios across tau rather than absolute domination.
    """
    if order.is_classical:
        raise DomainError("bound shape is degenerate for the classical order")
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    xs = np.asarray(xs, dtype=float)
    weight = HomogeneousWeight(order)
    p = -2.0 * order.nu - 1.0
    if order.regime == "G-regime":
        u0 = 0.5 * zero_table(order, "A", 1).zeros[0]
    else:
        u0 = 0.5 * zero_table(order, "B", 1).zeros[0]
    deficiency = np.empty(xs.size)
    shape = np.empty(xs.size)
    scale = tau ** (-p)
    for i, x in enumerate(xs):
        u = tau * abs(x)
        if u == 0.0:
            if order.regime == "G-regime":
                deficiency[i] = math.inf
                shape[i] = math.inf
                continue
            deficiency[i] = 0.0
        else:
            deficiency[i] = weight.reciprocal(x) - minorant_L(order, tau, x, policy)
        if order.regime == "G-regime":
            core = a_nu(order, u)
            shape[i] = core * core * scale * _shape_h_factor(u, u0, p)
        else:
            if u < 1e-6:
                ratio = b_nu_prime(order, 0.0)
            else:
                ratio = b_nu(order, u) / u
            env = u0 ** p / (u0 * u0) - _shape_h_factor(u, u0, p)
            shape[i] = ratio * ratio * scale * env
    return xs, deficiency, shape


@dataclass(frozen=True)
class SupErrorResult:
    """Supremum of the weighted error over a grid, with the attaining point
    and the worst-case truncation metadata seen during the scan."""

    value: float
    argmax: float
    nodes_used: int
    tail_estimate: float


def sup_error(
    order: Order,
    f: TargetFunction,
    tau: float,
    grid,
    which: str = "G",
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> SupErrorResult:
    """sup over the grid of |(operator f  -  f) * w|.

    At x = 0 the weighted error is |origin_limit| for the even-family
    operator (the node family omits the origin, so the operator term carries
    weight zero there) and 0 for the odd-family operator (the origin is an
    interpolation node).  The classical order evaluates directly.
    """
    if which not in ("G", "H"):
        raise DomainError("which must be 'G' or 'H'")
    if not isinstance(f, TargetFunction):
        raise DomainError("sup_error needs a TargetFunction with origin data")
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be non-empty")
    umax = float(np.max(np.abs(grid))) * tau
    if which == "G":
        kernel = _g_kernel(order, tau, umax, policy)
    else:
        kernel = _h_kernel(order, tau, umax, policy)
    samples = _samples_on(kernel, f.f)
    weight = HomogeneousWeight(order)
    best = -1.0
    best_x = grid[0]
    worst_nodes = 0
    worst_tail = 0.0
    for x in grid:
        if x == 0.0 and not order.is_classical:
            if order.regime == "G-regime" and which == "G":
                err = abs(f.origin_limit)
            elif order.regime == "H-regime" and which == "H":
                err = 0.0
            else:
                # Mismatched operator at the origin: skip; domination
                # failures are the probe's job.
                continue
        else:
            ev = eval_series(kernel, samples, float(x), policy)
            v = ev.value
            v = v.real if isinstance(v, complex) else float(v)
            err = abs(v - f.f(float(x))) * weight(x)
            worst_nodes = max(worst_nodes, ev.nodes_used)
            worst_tail = max(worst_tail, ev.tail_estimate)
        if err > best:
            best = err
            best_x = float(x)
    return SupErrorResult(
        value=best, argmax=best_x, nodes_used=worst_nodes, tail_estimate=worst_tail
    )


@dataclass(frozen=True)
class ProbeWitness:
    """A point where the regime-mismatched operator exceeds the reciprocal
    weight it is supposed to stay below."""

    x: float
    excess: float
    mismatched_kind: str


# Relative excess below this is indistinguishable from node-placement
# roundoff amplified by the quadratic pole and does not certify a failure.
_PROBE_FLOOR = 1e-6


def _probe_grid() -> np.ndarray:
    fine = 10.0 ** (-4.0 + 2.0 * np.arange(50) / 49.0)
    coarse = np.arange(1, 3971) / 397.0
    return np.concatenate([fine, coarse])


def wrong_operator_probe(
    order: Order,
    tau: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ProbeWitness:
    """Scan for a failure of the one-sided bound when the operator from the
    opposite regime is applied to the reciprocal weight.

    Returns the first scan point whose normalized excess
    (operator value) * w(x) - 1 clears the certification floor; raises
    WitnessNotFoundError (reporting the largest excess seen) otherwise.
    """
    if order.is_classical:
        raise DomainError("the classical order has no mismatched regime")
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    grid = _probe_grid()
    umax = float(grid[-1]) * tau
    if order.regime == "G-regime":
        kind = "H"
        kernel = _h_kernel(order, tau, umax, policy, include_origin=False)
    else:
        kind = "G"
        kernel = _g_kernel(order, tau, umax, policy)
    weight = HomogeneousWeight(order)
    samples = np.asarray([weight.reciprocal(t / tau) for t in kernel.nodes])
    worst = -math.inf
    for x in grid:
        ev = eval_series(kernel, samples, float(x), policy)
        v = ev.value
        v = v.real if isinstance(v, complex) else float(v)
        excess = v * weight(x) - 1.0
        if excess > _PROBE_FLOOR:
            return ProbeWitness(x=float(x), excess=excess, mismatched_kind=kind)
        worst = max(worst, excess)
    raise WitnessNotFoundError(
        "no domination failure found for the mismatched %s operator at "
        "nu=%.6g tau=%.6g; largest normalized excess observed was %.3e"
        % (kind, order.nu, tau, worst)
    )


def decomposition_check(
    order: Order,
    f: TargetFunction,
    tau: float,
    x: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
):
    """Split the weighted error at x into its sample-difference part and its
    minorant-deficiency part.

    Returns (lhs, rhs_sum, rhs_weight_term) where lhs is (Op f - f)(x) * w(x),
    rhs_sum collects (fw(node/tau) - fw(x)) against the normalized kernel,
    and rhs_weight_term is fw(x) * (L(x) * w(x) - 1).  The identity
    lhs = rhs_sum + rhs_weight_term holds exactly term by term.
    """
    if not isinstance(f, TargetFunction):
        raise DomainError("decomposition_check needs a TargetFunction")
    if order.is_classical:
        raise DomainError("decomposition requires a non-classical order")
    x = float(x)
    if x == 0.0:
        raise DomainError("decompose at a nonzero point")
    weight = HomogeneousWeight(order)
    umax = abs(x) * tau
    if order.regime == "H-regime":
        kernel = _h_kernel(order, tau, umax, policy)
    else:
        kernel = _g_kernel(order, tau, umax, policy)
    fvals = _samples_on(kernel, f.f)
    recors = np.asarray([weight.reciprocal(t / tau) for t in kernel.nodes])
    wx = weight(x)
    fx = f.f(x)
    fwx = fx * wx

    op = eval_series(kernel, fvals, x, policy).value
    op = op.real if isinstance(op, complex) else float(op)
    lhs = (op - fx) * wx

    # fw at the nodes; the origin node of the odd family has w = inf there,
    # so fw is the recorded origin limit and the reciprocal factor is 0.
    fw_nodes = np.empty(kernel.nodes.size)
    for i, t in enumerate(kernel.nodes):
        if t == 0.0:
            fw_nodes[i] = f.origin_limit
        else:
            fw_nodes[i] = fvals[i] * weight(t / tau)
    diff_samples = (fw_nodes - fwx) * recors
    ev_diff = eval_series(kernel, diff_samples, x, policy)
    vd = ev_diff.value
    rhs_sum = (vd.real if isinstance(vd, complex) else float(vd)) * wx

    lx = eval_series(kernel, recors, x, policy).value
    lx = lx.real if isinstance(lx, complex) else float(lx)
    rhs_weight_term = fwx * (lx * wx - 1.0)
    return lhs, rhs_sum, rhs_weight_term
