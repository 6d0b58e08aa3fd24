"""Evaluation engine for quadratic-node interpolation series.

A kernel holds a node set, an even entire generating function S vanishing at
the nodes, and the values S'(t) at the nodes.  The engine evaluates

    sum over nodes t of  samples(t) * S(u)**2 / (S'(t)**2 * (u - t)**2),

with u = tau * z, factoring S(u)**2 out of the far sum and replacing terms
with |u - t| below a small threshold by their second-order Taylor limit.
The truncation window, the recorded tail estimate, and the summation order
are all deterministic functions of the inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, MissingSampleError, TypeEstimateError

# Distance from a node (in u = tau*z units) below which the quadratic
# denominator would lose too many digits; the Taylor limit is used instead.
NEAR_NODE_THRESHOLD = 1e-6
# Step for the central second difference used when a kernel does not carry
# second-derivative values at its nodes.
_CURVATURE_STEP = 1e-4
# Residual allowance for the spot check that S vanishes at the nodes.
_NODE_RESIDUAL_TOL = 1e-10
# Magnitudes beyond this are treated as overflow in type estimation.
_OVERFLOW_MAGNITUDE = 1e300


@dataclass(frozen=True)
class TruncationPolicy:
    """Window and tail-reporting policy for series evaluation.

    radius is measured in u = tau*z units around the evaluation point; the
    window is widened node by node until at least min_nodes enter (or the
    kernel is exhausted).  Every evaluation reports a Riemann-sum tail
    estimate; exceeding tail_tolerance flags the result but is not fatal.
    """

    radius: float = 60.0 * math.pi
    tail_tolerance: float = 1e-3
    min_nodes: int = 500

    def __post_init__(self) -> None:
        if not (self.radius > 0.0):
            raise DomainError("truncation radius must be positive")
        if not (self.tail_tolerance > 0.0):
            raise DomainError("tail tolerance must be positive")
        if self.min_nodes < 1:
            raise DomainError("min_nodes must be a positive integer")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class SeriesEvaluation:
    """Value of a truncated series together with truncation metadata."""

    value: complex
    tail_estimate: float
    nodes_used: int
    tail_ok: bool


@dataclass(eq=False)
class GruenwaldKernel:
    """Node set plus generating function data for the interpolation series.

    nodes are stored sorted by absolute value (a possible node at 0 first);
    gen_deriv_at_nodes and the optional gen_second_deriv_at_nodes are aligned
    with the stored node order.  Origin-centered kernels are symmetric under
    negation; windowed kernels (for example around a far evaluation point)
    may set expect_symmetric=False.  Instances are treated as immutable.
    """

    nodes: np.ndarray
    gen: Callable
    gen_deriv_at_nodes: np.ndarray
    tau: float
    gen_second_deriv_at_nodes: Optional[np.ndarray] = None
    expect_symmetric: bool = True
    _by_value: np.ndarray = field(init=False, repr=False)
    _nodes_v: np.ndarray = field(init=False, repr=False)
    _derivs_v: np.ndarray = field(init=False, repr=False)
    _second_v: Optional[np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        derivs = np.asarray(self.gen_deriv_at_nodes, dtype=float)
        if nodes.shape != derivs.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DomainError("nodes and derivative arrays must align")
        if not (self.tau > 0.0):
            raise DomainError("tau must be positive")
        order = np.lexsort((nodes, np.abs(nodes)))
        nodes = nodes[order]
        derivs = derivs[order]
        second = self.gen_second_deriv_at_nodes
        if second is not None:
            second = np.asarray(second, dtype=float)[order]
        if np.unique(nodes).size != nodes.size:
            raise DomainError("nodes must be distinct")
        if np.any(derivs == 0.0):
            raise DomainError("generating function derivative vanishes at a node")
        self.nodes = nodes
        self.gen_deriv_at_nodes = derivs
        self.gen_second_deriv_at_nodes = second
        if self.expect_symmetric:
            self._check_symmetry()
        self._spot_check_vanishing()
        by_value = np.argsort(nodes, kind="stable")
        self._by_value = by_value
        self._nodes_v = nodes[by_value]
        self._derivs_v = derivs[by_value]
        self._second_v = None if second is None else second[by_value]

    def _check_symmetry(self) -> None:
        start = 1 if self.nodes[0] == 0.0 else 0
        tail = self.nodes[start:]
        if tail.size % 2 != 0:
            raise DomainError("node set is not symmetric under negation")
        if not np.all(tail[0::2] == -tail[1::2]):
            raise DomainError("node set is not symmetric under negation")

    def _spot_check_vanishing(self) -> None:
        n = self.nodes.size
        picks = sorted(set(range(min(8, n))) | set(range(max(0, n - 8), n)))
        for i in picks:
            t = self.nodes[i]
            resid = abs(self.gen(t))
            scale = max(1.0, abs(self.gen_deriv_at_nodes[i] * t))
            if resid > _NODE_RESIDUAL_TOL * scale:
                raise DomainError(
                    "generating function does not vanish at node %.17g "
                    "(residual %.3e)" % (t, resid)
                )

    def curvature_ratio(self, index_v: int) -> float:
        """S''(t)/S'(t) at the node with value-order index index_v."""
        if self._second_v is not None:
            return self._second_v[index_v] / self._derivs_v[index_v]
        t = self._nodes_v[index_v]
        h = _CURVATURE_STEP
        second = (self.gen(t + h) - 2.0 * self.gen(t) + self.gen(t - h)) / (h * h)
        return second / self._derivs_v[index_v]


SampleMap = Union[Mapping, Sequence, np.ndarray]


def _samples_for(kernel: GruenwaldKernel, samples: SampleMap, idx_v: np.ndarray):
    """Sample values for the value-order indices idx_v, as an ndarray."""
    if isinstance(samples, Mapping):
        out = []
        for i in idx_v:
            t = kernel._nodes_v[i]
            try:
                out.append(samples[t])
            except KeyError as exc:
                raise MissingSampleError(
                    "no sample for in-window node %.17g" % t
                ) from exc
        return np.asarray(out)
    arr = np.asarray(samples)
    if arr.shape != kernel.nodes.shape:
        raise DomainError("sample array must align with kernel.nodes")
    return arr[kernel._by_value[idx_v]]


def _window(kernel: GruenwaldKernel, center: float, policy: TruncationPolicy):
    vs = kernel._nodes_v
    lo = int(np.searchsorted(vs, center - policy.radius, side="left"))
    hi = int(np.searchsorted(vs, center + policy.radius, side="right"))
    target = min(policy.min_nodes, vs.size)
    while hi - lo < target:
        if lo == 0:
            hi += 1
        elif hi == vs.size:
            lo -= 1
        elif abs(vs[lo - 1] - center) <= abs(vs[hi] - center):
            lo -= 1
        else:
            hi += 1
    return lo, hi


def _side_tail(su_sq: float, svals, derivs, dist: float, gap: float) -> float:
    """Riemann-sum bound M * gap**-1 * dist**-1 for one excluded side."""
    k = min(5, len(svals))
    if k == 0 or dist <= 0.0:
        return 0.0
    m = float(np.max(np.abs(svals[:k]) / derivs[:k] ** 2))
    return su_sq * m / (gap * dist)


def eval_series(
    kernel: GruenwaldKernel,
    samples: SampleMap,
    z,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> SeriesEvaluation:
    """Evaluate the interpolation series at z with truncation metadata.

    samples may be a mapping from node value to sample, or an array aligned
    with kernel.nodes.  A mapping missing an in-window node raises
    MissingSampleError.
    """
    u = kernel.tau * (complex(z) if isinstance(z, complex) else float(z))
    if isinstance(u, complex) and u.imag == 0.0:
        u = u.real
    center = u.real if isinstance(u, complex) else u
    lo, hi = _window(kernel, center, policy)
    idx_v = np.arange(lo, hi)
    t = kernel._nodes_v[lo:hi]
    d = kernel._derivs_v[lo:hi]
    s = _samples_for(kernel, samples, idx_v)

    delta = u - t
    near = np.abs(delta) < NEAR_NODE_THRESHOLD
    far = ~near

    su = kernel.gen(u)
    order = np.lexsort((t[far], np.abs(t[far])))
    terms = (s[far] / (d[far] * delta[far]) ** 2)[order]
    if np.iscomplexobj(terms) or isinstance(u, complex):
        far_sum = math.fsum(terms.real) + 1j * math.fsum(terms.imag)
        value = su * su * far_sum
    else:
        far_sum = math.fsum(terms)
        value = su * su * far_sum

    for j in np.nonzero(near)[0]:
        rho = kernel.curvature_ratio(lo + int(j))
        value = value + s[j] * (1.0 + 0.5 * rho * delta[j]) ** 2

    su_sq = abs(su) ** 2
    vs = kernel._nodes_v
    default_gap = math.pi
    if t.size >= 2:
        left_gap = max(t[1] - t[0], 1e-12)
        right_gap = max(t[-1] - t[-2], 1e-12)
    else:
        left_gap = right_gap = default_gap
    left_dist = center - vs[lo - 1] if lo > 0 else center - (t[0] - left_gap)
    right_dist = vs[hi] - center if hi < vs.size else (t[-1] + right_gap) - center
    tail = _side_tail(su_sq, s, d, left_dist, left_gap) + _side_tail(
        su_sq, s[::-1], d[::-1], right_dist, right_gap
    )
    return SeriesEvaluation(
        value=value,
        tail_estimate=tail,
        nodes_used=int(hi - lo),
        tail_ok=tail <= policy.tail_tolerance,
    )


def _sin_generic(u):
    if isinstance(u, complex):
        return cmath.sin(u)
    return math.sin(u)


def fejer_kernel(tau: float, center: float, policy: TruncationPolicy) -> GruenwaldKernel:
    """Windowed sine kernel with nodes k*pi around tau*center."""
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    k0 = int(round(tau * center / math.pi))
    half = int(math.ceil(policy.radius / math.pi)) + (policy.min_nodes + 1) // 2 + 2
    ks = np.arange(k0 - half, k0 + half + 1)
    nodes = ks * math.pi
    derivs = np.where(ks % 2 == 0, 1.0, -1.0)
    return GruenwaldKernel(
        nodes=nodes,
        gen=_sin_generic,
        gen_deriv_at_nodes=derivs,
        tau=tau,
        gen_second_deriv_at_nodes=np.zeros(nodes.size),
        expect_symmetric=False,
    )


def fejer_operator(f, tau: float, z, policy: TruncationPolicy = DEFAULT_POLICY):
    """Classical band-limited interpolation sum_k f(k pi/tau) sin(tau z)**2 /
    (tau z - k pi)**2; interpolates f at the lattice k pi / tau."""
    center = z.real if isinstance(z, complex) else float(z)
    kernel = fejer_kernel(tau, center, policy)
    samples = np.asarray([f(t / tau) for t in kernel.nodes])
    return eval_series(kernel, samples, z, policy).value


def estimate_type(F, y_ladder) -> float:
    """Least-squares slope of log|F(iy)| over the ladder, a numerical witness
    for the exponential type of F (heuristic, not a proof)."""
    ys = []
    ls = []
    for y in y_ladder:
        y = float(y)
        if y <= 0.0:
            raise DomainError("ladder points must be positive")
        try:
            v = F(1j * y)
        except OverflowError:
            continue
        mag = abs(v)
        if mag == 0.0 or not math.isfinite(mag) or mag > _OVERFLOW_MAGNITUDE:
            continue
        ys.append(y)
        ls.append(math.log(mag))
    if len(ys) < 3:
        raise TypeEstimateError(
            "need at least 3 usable ladder points, have %d" % len(ys)
        )
    ybar = math.fsum(ys) / len(ys)
    lbar = math.fsum(ls) / len(ls)
    num = math.fsum((y - ybar) * (l - lbar) for y, l in zip(ys, ls))
    den = math.fsum((y - ybar) ** 2 for y in ys)
    return num / den
