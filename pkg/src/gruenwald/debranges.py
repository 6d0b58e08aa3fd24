"""Hermite-Biehler structures, reproducing kernels, and explicit families.

A Hermite-Biehler function E = A - iB (A, B real entire) with |E(z)| larger
in the upper half plane generates a space with reproducing kernel

    K(w, z) = [A(conj w) B(z) - A(z) B(conj w)] / (pi (z - conj w)),

whose diagonal equals phase_derivative * |E|**2 / pi.  Interpolation on the
zeros of the rotated part A_alpha = A cos(alpha) + B sin(alpha) is run
through the generic series engine.  The module also provides the explicit
sinh-normalized family E_tau(z) = sqrt(2/sinh 2tau) sin(tau(z+i))/(z+i),
the cosine-kernel probe for the weight x**2 + 1, and the dilated-sinc
divergence experiment.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, HypothesisError, ZeroFindingError
from .reports import ConvergenceReport, ReportRow
from .series import (
    DEFAULT_POLICY,
    GruenwaldKernel,
    TruncationPolicy,
    eval_series,
)

# Phase-derivative slack accepted when comparing against the declared type.
PHASE_BOUND_C = 1.5
# Largest tolerated ratio max/min of |E(x)|**2 w(x) for part-(b) runs.
SANDWICH_RATIO_CAP = 100.0
# Near-diagonal threshold for the kernel limit form.
_DIAGONAL_THRESHOLD = 1e-8

_HB_PROBES = (0.5 + 0.8j, -1.3 + 0.6j, 2.7 + 2.1j, 0.1 + 3.0j)


@dataclass(frozen=True)
class HermiteBiehler:
    """Real-entire pair (A, B) with derivatives, E = A - iB derived.

    type_tau is the declared exponential type and node_hint the expected
    node spacing (about pi/type_tau); both steer root scans, neither is
    verified symbolically.
    """

    A: Callable
    B: Callable
    A_deriv: Callable
    B_deriv: Callable
    type_tau: float
    node_hint: float

    def E(self, z):
        if isinstance(z, complex):
            return self.A(z) - 1j * self.B(z)
        return complex(self.A(z), -self.B(z))

    def rotated(self, alpha: float):
        """Callables (A_alpha, A_alpha_deriv) for e^{i alpha} E = A_a - iB_a."""
        ca = math.cos(alpha)
        sa = math.sin(alpha)

        def a_alpha(x):
            return self.A(x) * ca + self.B(x) * sa

        def a_alpha_deriv(x):
            return self.A_deriv(x) * ca + self.B_deriv(x) * sa

        return a_alpha, a_alpha_deriv


@dataclass(frozen=True)
class PhaseData:
    """Phase derivative of E plus the rotation offset alpha in use.

    bound_C, when set, records the constant in |phase_deriv - type| <= C
    that the family is expected to satisfy.
    """

    phase_deriv: Callable[[float], float]
    offset: float = 0.0
    bound_C: Optional[float] = None


def phase_derivative(hb: HermiteBiehler) -> Callable[[float], float]:
    """phi' from the diagonal-kernel identity pi K(x,x) = phi'(x) |E(x)|^2."""

    def deriv(x: float) -> float:
        a = hb.A(x)
        b = hb.B(x)
        return (a * hb.B_deriv(x) - hb.A_deriv(x) * b) / (a * a + b * b)

    return deriv


def verify_hermite_biehler(
    hb: HermiteBiehler,
    grid: Optional[Sequence[float]] = None,
    probes: Sequence[complex] = _HB_PROBES,
) -> None:
    """Sampled structure checks; necessary, not sufficient.

    Verifies |E(z)| > |E(conj z)| at the upper-half-plane probes, that E has
    no zero on the real scan grid, and that E agrees with A - iB there.
    Violations raise HypothesisError.
    """
    if grid is None:
        grid = np.linspace(-20.0, 20.0, 41)
    for z in probes:
        if z.imag <= 0:
            raise DomainError("probe points must lie in the upper half plane")
        up = abs(hb.E(z))
        down = abs(hb.E(z.conjugate()))
        if not (up > down):
            raise HypothesisError(
                "|E| fails to dominate its reflection at probe %s" % (z,)
            )
    for x in grid:
        x = float(x)
        e = hb.E(x)
        if abs(e) == 0.0:
            raise HypothesisError("E vanishes on the real axis at x=%.17g" % x)
        recomposed = complex(hb.A(x), -hb.B(x))
        if abs(e - recomposed) > 1e-9 * (1.0 + abs(e)):
            raise HypothesisError(
                "E disagrees with A - iB at x=%.17g" % x
            )


def kernel_K(hb: HermiteBiehler, w, z):
    """Reproducing kernel K(w, z); limit form within 1e-8 of the diagonal."""
    w = complex(w)
    z = complex(z)
    wbar = w.conjugate()
    gap = z - wbar
    if abs(gap) < _DIAGONAL_THRESHOLD:
        m = 0.5 * (z + wbar)
        if m.imag == 0.0:
            x = m.real
            return (hb.A(x) * hb.B_deriv(x) - hb.A_deriv(x) * hb.B(x)) / math.pi
        return (hb.A(m) * hb.B_deriv(m) - hb.A_deriv(m) * hb.B(m)) / math.pi
    num = hb.A(wbar) * hb.B(z) - hb.A(z) * hb.B(wbar)
    value = num / (math.pi * gap)
    if z.imag == 0.0 and w.imag == 0.0:
        return value.real
    return value


def _continuous_phase_increment(
    hb: HermiteBiehler, a: float, b: float, samples: int
) -> float:
    """Integral of phi' over [a, b] by composite Simpson on a fixed grid."""
    deriv = phase_derivative(hb)
    if samples % 2 == 1:
        samples += 1
    xs = np.linspace(a, b, samples + 1)
    vals = np.asarray([deriv(float(x)) for x in xs])
    h = (b - a) / samples
    return float(
        h / 3.0 * (vals[0] + vals[-1] + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-1:2].sum())
    )


def node_set(hb: HermiteBiehler, alpha: float, window) -> np.ndarray:
    """All zeros of A_alpha in the window, cross-checked against the phase.

    Zeros are bracketed by sign changes at spacing pi/(type + C), refined by
    bisection and Newton polish.  The count must match the phase increment
    over pi exactly; a mismatch (a missed or spurious node) raises
    ZeroFindingError.
    """
    w0, w1 = float(window[0]), float(window[1])
    if not (w0 < w1):
        raise DomainError("window must satisfy w0 < w1")
    a_fn, a_deriv_fn = hb.rotated(alpha)
    step = math.pi / (hb.type_tau + 2.0)
    count = int(math.ceil((w1 - w0) / step))
    xs = np.linspace(w0, w1, count + 1)
    vals = np.asarray([a_fn(float(x)) for x in xs])
    if np.any(vals == 0.0):
        # Nudge exact hits so every zero sits strictly inside a bracket.
        hits = np.nonzero(vals == 0.0)[0]
        for i in hits:
            shifted = float(xs[i]) + 1e-9 * step
            xs[i] = shifted
            vals[i] = a_fn(shifted)
    roots = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        lo, hi = float(xs[i]), float(xs[i + 1])
        flo = float(vals[i])
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = a_fn(mid)
            if fmid == 0.0:
                lo = hi = mid
                break
            if (flo < 0.0) == (fmid < 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
            if hi - lo < 1e-13 * (1.0 + abs(mid)):
                break
        root = 0.5 * (lo + hi)
        for _ in range(3):
            d = a_deriv_fn(root)
            if d == 0.0:
                break
            nxt = root - a_fn(root) / d
            if abs(nxt - root) > step:
                break
            root = nxt
        roots.append(root)
    nodes = np.asarray(sorted(roots))

    theta = alpha + 0.5 * math.pi
    phi0 = math.atan2(hb.B(w0), hb.A(w0))
    # The Simpson integral only needs to resolve the 2-pi winding count; the
    # endpoint phase itself is snapped to its atan2 value.
    dphi = _continuous_phase_increment(hb, w0, w1, 4 * count)
    phi1_mod = math.atan2(hb.B(w1), hb.A(w1))
    winding = round((phi0 + dphi - phi1_mod) / (2.0 * math.pi))
    phi1 = phi1_mod + 2.0 * math.pi * winding
    a = (phi0 - theta) / math.pi
    b = (phi1 - theta) / math.pi
    expected = math.floor(b) - math.floor(a)
    on_boundary = (
        abs(a - round(a)) < 1e-9 or abs(b - round(b)) < 1e-9
    )
    if expected != nodes.size and not (
        on_boundary and abs(expected - nodes.size) <= 1
    ):
        raise ZeroFindingError(
            "found %d nodes in [%.6g, %.6g] but the phase increment "
            "predicts %d" % (nodes.size, w0, w1, expected)
        )
    return nodes


def _node_window(z, policy: TruncationPolicy, spacing: float):
    center = z.real if isinstance(z, complex) else float(z)
    half = policy.radius + (0.5 * policy.min_nodes + 2.0) * spacing
    return center - half, center + half


def gruenwald_E(
    hb: HermiteBiehler,
    alpha: float,
    f: Callable,
    z,
    policy: TruncationPolicy = DEFAULT_POLICY,
):
    """Quadratic interpolation of f on the zeros of A_alpha near z."""
    spacing = hb.node_hint
    window = _node_window(z, policy, spacing)
    nodes = node_set(hb, alpha, window)
    if nodes.size == 0:
        raise ZeroFindingError("no interpolation nodes in the window")
    a_fn, a_deriv_fn = hb.rotated(alpha)
    derivs = np.asarray([a_deriv_fn(float(t)) for t in nodes])
    kernel = GruenwaldKernel(
        nodes=nodes,
        gen=a_fn,
        gen_deriv_at_nodes=derivs,
        tau=1.0,
        expect_symmetric=False,
    )
    samples = np.asarray([f(float(t)) for t in kernel.nodes])
    if not np.all(np.isfinite(samples)):
        raise DomainError("target sample is not finite at a node")
    return eval_series(kernel, samples, z, policy).value


@dataclass(frozen=True)
class SinhExample:
    """The explicit family E(z) = sqrt(2/sinh 2 tau) sin(tau(z+i))/(z+i)
    with closed forms for everything the experiments need."""

    tau: float
    hb: HermiteBiehler
    phase: PhaseData
    family_id: str = "sinh"

    @property
    def sandwich_low(self) -> float:
        return math.tanh(self.tau)

    @property
    def sandwich_high(self) -> float:
        return 1.0 / math.tanh(self.tau)

    def abs_E_squared(self, x: float) -> float:
        tau = self.tau
        c2 = 2.0 / math.sinh(2.0 * tau)
        s = math.sin(tau * x)
        return (c2 * s * s + math.tanh(tau)) / (x * x + 1.0)

    def continuous_phase(self, x: float) -> float:
        """Closed-form continuous phase with phase(0) = 0; its derivative is
        phase_deriv.  Nodes of A sit exactly at odd multiples of pi/2."""
        tau = self.tau
        coth = 1.0 / math.tanh(tau)
        branch = math.floor(tau * x / math.pi + 0.5)
        return (
            math.atan(coth * math.tan(tau * x))
            + math.pi * branch
            - math.atan(x)
        )

    def nodes(self, window) -> np.ndarray:
        """Vectorized zeros of A in the window.

        A is even; the k-th positive node solves tau*t = (k+1)*pi -
        atan(tanh(tau)/t) exactly, a contraction solved by fixed-point
        iteration and polished by Newton on x sin(tau x) + tanh cos(tau x).
        The count is cross-checked against the closed-form phase.
        """
        w0, w1 = float(window[0]), float(window[1])
        if not (w0 < w1):
            raise DomainError("window must satisfy w0 < w1")
        tau = self.tau
        th = math.tanh(tau)
        xmax = max(abs(w0), abs(w1))
        if xmax == 0.0:
            return np.asarray([])
        kcount = int(math.ceil(tau * xmax / math.pi)) + 2
        target = (np.arange(kcount) + 1.0) * math.pi
        t = target / tau
        for _ in range(4):
            t = (target - np.arctan(th / t)) / tau
        for _ in range(3):
            s = np.sin(tau * t)
            c = np.cos(tau * t)
            g = t * s + th * c
            gp = s + tau * t * c - tau * th * s
            t = t - g / gp
        s = np.sin(tau * t)
        c = np.cos(tau * t)
        resid = np.abs(t * s + th * c)
        if np.any(resid > 1e-9 * (1.0 + tau * t)):
            raise ZeroFindingError("sinh-family node refinement did not converge")
        if np.any(np.diff(t) <= 0.0):
            raise ZeroFindingError("sinh-family nodes are not strictly increasing")
        inside = int(np.count_nonzero(t <= xmax))
        marker = self.continuous_phase(xmax) / math.pi + 0.5
        expected = math.floor(marker)
        if inside != expected and not (
            abs(marker - round(marker)) < 1e-9 and abs(inside - expected) <= 1
        ):
            raise ZeroFindingError(
                "sinh-family node count %d disagrees with the phase "
                "prediction %d up to x=%.6g" % (inside, expected, xmax)
            )
        pos = t
        nodes = np.concatenate([-pos[::-1], pos])
        return nodes[(nodes >= w0) & (nodes <= w1)]


def _sinc(w):
    if isinstance(w, complex):
        if abs(w) < 1e-4:
            w2 = w * w
            return 1.0 - w2 / 6.0 + w2 * w2 / 120.0
        return cmath.sin(w) / w
    if abs(w) < 1e-4:
        w2 = w * w
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0
    return math.sin(w) / w


def _zsin(w):
    return cmath.sin(w) if isinstance(w, complex) else math.sin(w)


def _zcos(w):
    return cmath.cos(w) if isinstance(w, complex) else math.cos(w)


def example_sinh(tau: float) -> SinhExample:
    """Construct the sinh-normalized Hermite-Biehler family at type tau."""
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    ch = math.cosh(tau)
    sh = math.sinh(tau)
    cnorm = math.sqrt(2.0 / math.sinh(2.0 * tau))

    def n_poly(z):
        return z * ch * _zsin(tau * z) + sh * _zcos(tau * z)

    def n_prime(z):
        return ch * _zsin(tau * z) + tau * z * ch * _zcos(tau * z) - tau * sh * _zsin(tau * z)

    def n_second(z):
        return (
            2.0 * tau * ch * _zcos(tau * z)
            - tau * tau * z * ch * _zsin(tau * z)
            - tau * tau * sh * _zcos(tau * z)
        )

    def n_third(z):
        return (
            -3.0 * tau * tau * ch * _zsin(tau * z)
            - tau ** 3 * z * ch * _zcos(tau * z)
            + tau ** 3 * sh * _zsin(tau * z)
        )

    def m_poly(z):
        return ch * _zsin(tau * z) - z * sh * _zcos(tau * z)

    def m_prime(z):
        return tau * ch * _zcos(tau * z) - sh * _zcos(tau * z) + tau * z * sh * _zsin(tau * z)

    def m_second(z):
        return (
            -tau * tau * ch * _zsin(tau * z)
            + 2.0 * tau * sh * _zsin(tau * z)
            + tau * tau * z * sh * _zcos(tau * z)
        )

    def m_third(z):
        return (
            -tau ** 3 * ch * _zcos(tau * z)
            + 3.0 * tau * tau * sh * _zcos(tau * z)
            - tau ** 3 * z * sh * _zsin(tau * z)
        )

    def _over_poles(z, poly, p1, p2, p3):
        """poly(z)/(z**2+1); poly vanishes at the poles +-i, so near them the
        removable factor is replaced by a short Taylor expansion."""
        if isinstance(z, complex):
            for pole in (1j, -1j):
                delta = z - pole
                if abs(delta) < 1e-6:
                    tilde = (
                        p1(pole)
                        + 0.5 * p2(pole) * delta
                        + p3(pole) * delta * delta / 6.0
                    )
                    other = -pole
                    return tilde / (z - other)
            return poly(z) / (z * z + 1.0)
        x = float(z)
        return poly(x) / (x * x + 1.0)

    def a_fn(z):
        return cnorm * _over_poles(z, n_poly, n_prime, n_second, n_third)

    def b_fn(z):
        return cnorm * _over_poles(z, m_poly, m_prime, m_second, m_third)

    def a_deriv(z):
        if isinstance(z, complex):
            den = z * z + 1.0
            return cnorm * (n_prime(z) * den - 2.0 * z * n_poly(z)) / (den * den)
        x = float(z)
        den = x * x + 1.0
        return cnorm * (n_prime(x) * den - 2.0 * x * n_poly(x)) / (den * den)

    def b_deriv(z):
        if isinstance(z, complex):
            den = z * z + 1.0
            return cnorm * (m_prime(z) * den - 2.0 * z * m_poly(z)) / (den * den)
        x = float(z)
        den = x * x + 1.0
        return cnorm * (m_prime(x) * den - 2.0 * x * m_poly(x)) / (den * den)

    def phi_prime(x: float) -> float:
        x = float(x)
        return tau * math.sinh(2.0 * tau) / (
            math.cosh(2.0 * tau) - math.cos(2.0 * tau * x)
        ) - 1.0 / (x * x + 1.0)

    hb = HermiteBiehler(
        A=a_fn,
        B=b_fn,
        A_deriv=a_deriv,
        B_deriv=b_deriv,
        type_tau=tau,
        node_hint=math.pi / tau,
    )
    phase = PhaseData(phase_deriv=phi_prime, offset=0.0, bound_C=PHASE_BOUND_C)
    return SinhExample(tau=tau, hb=hb, phase=phase)


def _cos_generic(u):
    return cmath.cos(u) if isinstance(u, complex) else math.cos(u)


def cos_case_probe(
    tau: float,
    grid,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """max over the grid of |p(x)| where
    (x**2+1) * G_cos(1/(t**2+1))(x) = 1 + p(x)/tau for the cosine kernel."""
    if not (tau > 0.0):
        raise DomainError("tau must be positive")
    grid = np.asarray(grid, dtype=float)
    umax = float(np.max(np.abs(grid))) * tau
    half = int(math.ceil((umax + policy.radius) / math.pi)) + (
        policy.min_nodes + 1
    ) // 2 + 2
    ks = np.arange(-half, half)
    nodes = (ks + 0.5) * math.pi
    derivs = np.where(ks % 2 == 0, -1.0, 1.0)
    kernel = GruenwaldKernel(
        nodes=nodes,
        gen=_cos_generic,
        gen_deriv_at_nodes=derivs,
        tau=tau,
        gen_second_deriv_at_nodes=np.zeros(nodes.size),
    )
    samples = np.asarray([1.0 / ((t / tau) ** 2 + 1.0) for t in kernel.nodes])
    worst = 0.0
    for x in grid:
        x = float(x)
        value = eval_series(kernel, samples, x, policy).value
        value = value.real if isinstance(value, complex) else float(value)
        p = tau * ((x * x + 1.0) * value - 1.0)
        worst = max(worst, abs(p))
    return worst


def dilation_failure(
    tau_ladder,
    nodes_per_side_factor: int = 40,
) -> list:
    """G applied to 1/(x**2+1) at 0 for the dilated sinc kernel sin(tau z)/(tau z).

    The returned sequence increases without bound along the ladder; this is
    the counterpoint to the non-dilated family, which stays bounded.
    """
    values = []
    for tau in tau_ladder:
        tau = float(tau)
        if tau <= 0.0:
            raise DomainError("tau values must be positive")
        per_side = int(nodes_per_side_factor * tau)
        ks = np.arange(1, per_side + 1)
        pos = ks * math.pi
        sign = np.where(ks % 2 == 0, 1.0, -1.0)
        derivs_pos = sign / pos
        second_pos = -2.0 * sign / pos ** 2
        nodes = np.concatenate([-pos[::-1], pos])
        derivs = np.concatenate([-derivs_pos[::-1], derivs_pos])
        second = np.concatenate([second_pos[::-1], second_pos])
        kernel = GruenwaldKernel(
            nodes=nodes,
            gen=_sinc,
            gen_deriv_at_nodes=derivs,
            tau=tau,
            gen_second_deriv_at_nodes=second,
        )
        samples = np.asarray([1.0 / ((t / tau) ** 2 + 1.0) for t in kernel.nodes])
        policy = TruncationPolicy(
            radius=(per_side + 2) * math.pi,
            tail_tolerance=math.inf,
            min_nodes=1,
        )
        value = eval_series(kernel, samples, 0.0, policy).value
        values.append(value.real if isinstance(value, complex) else float(value))
    return values


def _family_of(family_member):
    if isinstance(family_member, SinhExample):
        return family_member.hb, family_member.phase.phase_deriv, family_member
    if isinstance(family_member, HermiteBiehler):
        return family_member, phase_derivative(family_member), None
    raise DomainError("family must yield HermiteBiehler or SinhExample values")


def theorem2_convergence(
    family: Callable,
    f: Callable,
    w: Optional[Callable],
    tau_ladder,
    grid,
    policy: TruncationPolicy = DEFAULT_POLICY,
    target_id: str = "poisson-recip",
) -> ConvergenceReport:
    """Per-tau sup of the weighted interpolation error for an HB family.

    With w given the error is measured against w (part b, after checking
    that |E|**2 w is comparable to 1 across the grid); without w it is
    measured against |E|**-2 (part a).  Hypothesis violations (phase
    derivative sign or distance to the declared type, sandwich comparability)
    raise HypothesisError naming the failed bound.
    """
    taus = [float(t) for t in tau_ladder]
    if any(b <= a for a, b in zip(taus, taus[1:])) or not taus:
        raise DomainError("tau ladder must be non-empty and strictly increasing")
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise DomainError("grid must contain at least 2 points")
    rows = []
    family_id = None
    for tau in taus:
        member = family(tau)
        hb, phi_prime, sinh_member = _family_of(member)
        family_id = sinh_member.family_id if sinh_member is not None else "custom"
        verify_hermite_biehler(hb, grid=np.linspace(grid[0], grid[-1], 17))
        phis = np.asarray([phi_prime(float(x)) for x in grid])
        if np.any(phis <= 0.0):
            raise HypothesisError(
                "phase derivative is not positive at x=%.6g"
                % float(grid[np.argmin(phis)])
            )
        gap = np.max(np.abs(phis - hb.type_tau))
        if gap > PHASE_BOUND_C:
            raise HypothesisError(
                "phase derivative strays %.3g from the declared type "
                "(cap %.3g)" % (float(gap), PHASE_BOUND_C)
            )
        abs_e2 = (
            sinh_member.abs_E_squared
            if sinh_member is not None
            else (lambda x: abs(hb.E(float(x))) ** 2)
        )
        if w is not None:
            combo = np.asarray([abs_e2(float(x)) * w(float(x)) for x in grid])
            ratio = float(np.max(combo) / np.min(combo))
            if ratio > SANDWICH_RATIO_CAP:
                raise HypothesisError(
                    "|E|^2 w spans a ratio of %.3g across the grid "
                    "(cap %.3g); part (b) needs two-sided comparability"
                    % (ratio, SANDWICH_RATIO_CAP)
                )
            weight_fn = w
        else:
            weight_fn = lambda x, _a=abs_e2: 1.0 / _a(x)
        window = _node_window(
            0.5 * (float(grid[0]) + float(grid[-1])), policy, hb.node_hint
        )
        window = (
            min(window[0], float(grid[0]) - policy.radius - 2.0 * hb.node_hint),
            max(window[1], float(grid[-1]) + policy.radius + 2.0 * hb.node_hint),
        )
        if sinh_member is not None:
            nodes = sinh_member.nodes(window)
        else:
            nodes = node_set(hb, 0.0, window)
        a_fn, a_deriv_fn = hb.rotated(0.0)
        derivs = np.asarray([a_deriv_fn(float(t)) for t in nodes])
        kernel = GruenwaldKernel(
            nodes=nodes,
            gen=a_fn,
            gen_deriv_at_nodes=derivs,
            tau=1.0,
            expect_symmetric=False,
        )
        samples = np.asarray([f(float(t)) for t in kernel.nodes])
        if not np.all(np.isfinite(samples)):
            raise DomainError("target sample is not finite at a node")
        best = -1.0
        best_x = float(grid[0])
        worst_nodes = 0
        worst_tail = 0.0
        for x in grid:
            x = float(x)
            ev = eval_series(kernel, samples, x, policy)
            v = ev.value
            v = v.real if isinstance(v, complex) else float(v)
            err = abs(v - f(x)) * weight_fn(x)
            worst_nodes = max(worst_nodes, ev.nodes_used)
            worst_tail = max(worst_tail, ev.tail_estimate)
            if err > best:
                best = err
                best_x = x
        rows.append(
            ReportRow(
                tau=tau,
                sup_error=best,
                argmax=best_x,
                nodes_used=worst_nodes,
                tail_estimate=worst_tail,
            )
        )
    step = float(grid[1] - grid[0]) if grid.size > 1 else 0.0
    return ConvergenceReport(
        experiment="theorem2-sinh",
        nu=None,
        target=target_id,
        grid_min=float(grid[0]),
        grid_max=float(grid[-1]),
        grid_step=step,
        tail_tolerance=policy.tail_tolerance,
        rows=tuple(rows),
        family_id=family_id,
    )


def node_table_csv(nodes: np.ndarray, derivs: np.ndarray) -> str:
    """CSV text (index, node, A_deriv) at 17 significant digits."""
    lines = ["index,node,A_deriv"]
    for i, (t, d) in enumerate(zip(nodes, derivs)):
        lines.append("%d,%.17g,%.17g" % (i, t, d))
    return "\n".join(lines) + "\n"
