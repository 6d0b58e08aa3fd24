"""Truncated interpolation-series engine: windows, tails, near-node limits,
sample mappings, and the exponential-type diagnostic."""

import cmath
import math

import numpy as np
import pytest

from gruenwald import (
    DEFAULT_POLICY,
    DomainError,
    GruenwaldKernel,
    MissingSampleError,
    TruncationPolicy,
    TypeEstimateError,
    estimate_type,
    eval_series,
    fejer_kernel,
    fejer_operator,
)


def _sin(u):
    return cmath.sin(u) if isinstance(u, complex) else math.sin(u)


def _sin_kernel(half: int, tau: float = 1.0) -> GruenwaldKernel:
    ks = np.arange(-half, half + 1)
    nodes = ks * math.pi
    derivs = np.where(ks % 2 == 0, 1.0, -1.0)
    return GruenwaldKernel(
        nodes=nodes,
        gen=_sin,
        gen_deriv_at_nodes=derivs,
        tau=tau,
        gen_second_deriv_at_nodes=np.zeros(nodes.size),
    )


def test_policy_validation():
    with pytest.raises(DomainError):
        TruncationPolicy(radius=0.0)
    with pytest.raises(DomainError):
        TruncationPolicy(tail_tolerance=-1.0)
    with pytest.raises(DomainError):
        TruncationPolicy(min_nodes=0)


def test_kernel_validation_rejects_bad_node_data():
    nodes = np.asarray([-math.pi, 0.0, math.pi])
    derivs = np.asarray([-1.0, 1.0, -1.0])
    with pytest.raises(DomainError):
        GruenwaldKernel(
            nodes=np.asarray([0.0, 0.0, math.pi]),
            gen=math.sin,
            gen_deriv_at_nodes=derivs,
            tau=1.0,
        )
    with pytest.raises(DomainError):
        GruenwaldKernel(
            nodes=nodes,
            gen=math.sin,
            gen_deriv_at_nodes=np.asarray([-1.0, 0.0, -1.0]),
            tau=1.0,
        )
    with pytest.raises(DomainError):
        GruenwaldKernel(
            nodes=np.asarray([-math.pi, 0.0, 2.0 * math.pi]),
            gen=math.sin,
            gen_deriv_at_nodes=derivs,
            tau=1.0,
        )


def test_interpolates_samples_at_nodes_exactly():
    kernel = _sin_kernel(40)
    samples = np.asarray([math.exp(-((t / 10.0) ** 2)) for t in kernel.nodes])
    policy = TruncationPolicy(radius=60.0, tail_tolerance=1.0, min_nodes=8)
    for i, t in enumerate(kernel.nodes[:10]):
        got = eval_series(kernel, samples, float(t), policy).value
        assert got == pytest.approx(samples[i], rel=1e-12, abs=1e-15)


def test_near_node_quadratic_branch():
    kernel = _sin_kernel(40)
    samples = np.ones(kernel.nodes.size)
    policy = TruncationPolicy(radius=60.0, tail_tolerance=1.0, min_nodes=8)
    at_node = eval_series(kernel, samples, math.pi, policy).value
    nearby = eval_series(kernel, samples, math.pi + 1e-9, policy).value
    assert abs(nearby - at_node) < 1e-9


def test_mapping_samples_match_array_samples():
    kernel = _sin_kernel(30)
    arr = np.asarray([1.0 / (1.0 + t * t) for t in kernel.nodes])
    mapping = {float(t): float(v) for t, v in zip(kernel.nodes, arr)}
    policy = TruncationPolicy(radius=40.0, tail_tolerance=1.0, min_nodes=8)
    for x in (0.3, 2.9, -7.7):
        a = eval_series(kernel, arr, x, policy)
        b = eval_series(kernel, mapping, x, policy)
        assert a.value == b.value
        assert a.nodes_used == b.nodes_used


def test_mapping_missing_node_raises():
    kernel = _sin_kernel(30)
    mapping = {float(t): 1.0 for t in kernel.nodes[:-5]}
    policy = TruncationPolicy(radius=40.0, tail_tolerance=1.0, min_nodes=8)
    with pytest.raises(MissingSampleError):
        eval_series(kernel, mapping, 80.0, policy)


def test_sample_array_shape_must_align():
    kernel = _sin_kernel(10)
    with pytest.raises(DomainError):
        eval_series(kernel, np.ones(3), 0.5, DEFAULT_POLICY)


def test_determinism_repeated_evaluation():
    kernel = _sin_kernel(200)
    samples = np.asarray([math.cos(t / 7.0) for t in kernel.nodes])
    first = eval_series(kernel, samples, 1.234, DEFAULT_POLICY).value
    for _ in range(3):
        again = eval_series(kernel, samples, 1.234, DEFAULT_POLICY).value
        assert again == first


def test_tail_estimate_flags_narrow_windows():
    kernel = _sin_kernel(300)
    samples = np.ones(kernel.nodes.size)
    wide = TruncationPolicy(radius=900.0, tail_tolerance=1e-3, min_nodes=8)
    narrow = TruncationPolicy(radius=12.0, tail_tolerance=1e-6, min_nodes=4)
    ev_wide = eval_series(kernel, samples, 0.4, wide)
    ev_narrow = eval_series(kernel, samples, 0.4, narrow)
    assert ev_wide.tail_ok
    assert not ev_narrow.tail_ok
    assert ev_narrow.tail_estimate > ev_wide.tail_estimate


def test_truncation_error_halves_when_radius_doubles():
    # The one-sided tail of the constant-sample series behaves like 1/R, so
    # doubling the window radius should halve the defect from 1.
    errors = []
    for radius in (40.0 * math.pi, 80.0 * math.pi, 160.0 * math.pi):
        policy = TruncationPolicy(radius=radius, tail_tolerance=1.0, min_nodes=8)
        value = fejer_operator(lambda x: 1.0, 2.0, 0.4, policy)
        errors.append(abs(value - 1.0))
    assert errors[0] / errors[1] == pytest.approx(2.0, rel=1e-3)
    assert errors[1] / errors[2] == pytest.approx(2.0, rel=1e-3)


def test_fejer_operator_interpolates_lattice():
    tau = 3.0
    f = lambda x: 1.0 / (1.0 + x * x)
    policy = TruncationPolicy(radius=50.0, tail_tolerance=1.0, min_nodes=8)
    for k in (-2, 0, 5):
        x = k * math.pi / tau
        assert fejer_operator(f, tau, x, policy) == pytest.approx(
            f(x), rel=1e-12, abs=1e-15
        )


def test_fejer_kernel_grows_with_radius():
    small = fejer_kernel(1.0, 0.0, TruncationPolicy(radius=30.0, min_nodes=8))
    large = fejer_kernel(1.0, 0.0, TruncationPolicy(radius=120.0, min_nodes=8))
    assert large.nodes.size > small.nodes.size


def test_complex_argument_continuous_with_real_axis():
    kernel = _sin_kernel(60)
    samples = np.asarray([math.exp(-((t / 9.0) ** 2)) for t in kernel.nodes])
    policy = TruncationPolicy(radius=80.0, tail_tolerance=1.0, min_nodes=8)
    on_axis = eval_series(kernel, samples, 0.8, policy).value
    lifted = eval_series(kernel, samples, complex(0.8, 0.0), policy).value
    assert lifted == pytest.approx(on_axis, rel=1e-13)
    off_axis = eval_series(kernel, samples, complex(0.8, 1e-8), policy).value
    assert abs(off_axis - on_axis) < 1e-6


def test_estimate_type_of_sine_is_one():
    est = estimate_type(lambda z: np.sin(z), (6.0, 12.0, 24.0, 48.0))
    assert est == pytest.approx(1.0, rel=1e-3)


def test_estimate_type_needs_three_points():
    with pytest.raises(TypeEstimateError):
        estimate_type(lambda z: float("inf"), (1.0, 2.0, 4.0))
    with pytest.raises(DomainError):
        estimate_type(lambda z: np.sin(z), (-1.0, 2.0, 4.0))
