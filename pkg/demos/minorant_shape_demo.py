#!/usr/bin/env python3
"""Entire minorants of the reciprocal homogeneous weight.

The interpolation series applied to 1/w produces an entire function L of
exponential type that sits below 1/w everywhere and touches it on the node
set.  This demo prints the two-sided check L >= 0 and L w <= 1 on a sample
grid, the deficiency profile 1/w - L against its closed-form shape, and the
exact dilation covariance L_tau(x) = tau^(2 nu + 1) L_1(tau x).
"""

import numpy as np

from gruenwald import HomogeneousWeight, Order, lemma_error_shape, minorant_L


def main() -> None:
    for nu in (0.7, -0.75):
        order = Order(nu)
        weight = HomogeneousWeight(order)
        tau = 4.0
        print("order nu = %g, dilation tau = %g" % (nu, tau))
        print("%-8s %-16s %-16s %-14s" % ("x", "L(x)", "1/w(x)", "slack"))
        for x in (0.25, 0.7, 1.3, 2.9, 6.5):
            val = minorant_L(order, tau, x)
            recip = weight.reciprocal(x)
            print("%-8g %-16.8e %-16.8e %-14.3e" % (x, val, recip, recip - val))

        us = np.linspace(0.5, 20.0, 8)
        xs = us / tau
        _, deficiency, shape = lemma_error_shape(order, tau, xs)
        print("deficiency (1/w - L) against the closed-form shape, u = tau x")
        print("%-8s %-16s %-16s %-10s" % ("u", "deficiency", "shape", "ratio"))
        for u, d, s in zip(us, deficiency, shape):
            print("%-8g %-16.6e %-16.6e %-10.4f" % (u, d, s, d / s))

        p = 2.0 * nu + 1.0
        print("dilation covariance, max rel error over x in {0.3, 1.1, 2.7}:")
        worst = max(
            abs(minorant_L(order, tau, x) - tau ** p * minorant_L(order, 1.0, tau * x))
            / abs(minorant_L(order, tau, x))
            for x in (0.3, 1.1, 2.7)
        )
        print("  %.2e" % worst)
        print()


if __name__ == "__main__":
    main()
