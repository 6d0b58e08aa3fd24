#!/usr/bin/env python3
"""The explicit structure-function family E_tau(z) = sin(tau(z + i))/(c(z + i)).

Walks through the verified structure-function properties: the lower
half-plane inequality, the two-sided envelope for (x^2 + 1)|E(x)|^2, the
diagonal reproducing-kernel identity written as a node sum, and the
exponential type of the even part recovered from imaginary-axis growth.
"""

import numpy as np

from gruenwald import (
    cli_kernel_check,
    estimate_type,
    example_sinh,
    kernel_K,
    verify_hermite_biehler,
)


def main() -> None:
    tau = 4.0
    member = example_sinh(tau)
    hb = member.hb
    verify_hermite_biehler(hb)
    print("structure-function checks pass for tau = %g" % tau)

    print()
    print("two-sided envelope tanh(tau) <= (x^2+1)|E(x)|^2 <= coth(tau)")
    print("%-8s %-18s %-12s %-12s" % ("x", "(x^2+1)|E|^2", "lower", "upper"))
    for x in (0.0, 0.5, 1.0, 2.0):
        val = member.abs_E_squared(x) * (x * x + 1.0)
        print("%-8g %-18.12f %-12.6f %-12.6f" % (x, val, member.sandwich_low, member.sandwich_high))

    print()
    print("node counts from the exact phase: window [-R, R]")
    for radius in (5.0, 20.0, 80.0):
        nodes = member.nodes((-radius, radius))
        print("  R=%-6g nodes=%d spacing~pi/tau=%.4f" % (radius, nodes.size, np.pi / tau))

    print()
    print("diagonal identity sum_t K(t,t) A(x)^2 / (A'(t)^2 (x-t)^2) = K(x,x)")
    report, text, code = cli_kernel_check(tau)
    print(text)
    print("exit code %d" % code)

    print()
    print("kernel diagonal at the origin: pi K(0,0) = tau - tanh(tau)")
    for t in (1.0, 4.0, 16.0):
        m = example_sinh(t)
        got = np.pi * complex(kernel_K(m.hb, 0.0, 0.0)).real
        closed = t - np.tanh(t)
        print("  tau=%-4g pi K(0,0) = %.9f closed form = %.9f" % (t, got, closed))

    print()
    print("exponential type of A recovered from growth along the imaginary axis")
    for t, ladder in ((1.0, (20.0, 40.0, 80.0, 160.0)), (4.0, (5.0, 10.0, 20.0, 40.0))):
        est = estimate_type(example_sinh(t).hb.A, ladder)
        print("  tau=%-4g estimate=%.4f" % (t, est))


if __name__ == "__main__":
    main()
