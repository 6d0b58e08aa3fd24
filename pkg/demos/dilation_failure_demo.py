#!/usr/bin/env python3
"""Why plain dilation breaks interpolation at general structure-function nodes.

Dilating a fixed node set looks like the natural way to refine an
interpolation scheme, but for a general structure function the dilated
family loses the uniform boundedness that drives convergence.  This demo
prints the sup of the dilated cosine-node interpolant of the constant 1
against a weight that grows with the dilation, next to the bounded behavior
of the matched family, where the same target stays uniformly close to 1.
"""

from gruenwald import dilation_failure, example_sinh, gruenwald_E


def main() -> None:
    ladder = (4.0, 16.0, 64.0, 256.0)
    print("dilated scheme: weighted sup of the interpolant of 1 (grows like tau)")
    values = dilation_failure(ladder)
    print("%-8s %-16s %-12s" % ("tau", "weighted sup", "ratio"))
    prev = None
    for tau, value in zip(ladder, values):
        ratio = "" if prev is None else "%.3f" % (value / prev)
        print("%-8g %-16.6f %-12s" % (tau, value, ratio))
        prev = value

    print()
    print("matched family: same target evaluated at the origin stays bounded")
    print("%-8s %-16s" % ("tau", "operator of 1/w at 0"))
    for tau in ladder:
        member = example_sinh(tau)
        value = gruenwald_E(member.hb, 0.0, lambda t: 1.0 / (t * t + 1.0), 0.0)
        value = value.real if isinstance(value, complex) else value
        print("%-8g %-16.6f" % (tau, value))
    print("the matched values approach 1 while the dilated sups grow without bound")


if __name__ == "__main__":
    main()
