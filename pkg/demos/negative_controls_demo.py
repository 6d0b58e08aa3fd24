#!/usr/bin/env python3
"""Negative controls: where the convergence theorem does not apply.

Three checks that the hypotheses are sharp rather than cosmetic.

1. The reciprocal weight itself: f w = 1 everywhere, so f w cannot vanish
   at the origin the way the even regime requires.  The weighted error
   stalls near 1 no matter how large the dilation.

2. The mismatched operator: applying the odd-family operator to the
   even-regime reciprocal weight.  At order -3/4 the probe certifies a
   point where the operator output exceeds the reciprocal weight, so no
   domination bound can hold.  At order 0 the probe finds no witness; the
   output is dominated everywhere (a closed-form argument is in the
   README), so the failure there is of a different kind.

3. The classical cosine-node interpolant of a bounded target stays
   uniformly bounded (by about 2 in sup norm on a compact window), which
   is the boundedness half of the picture: negative controls are about
   convergence, not blowup.
"""

import numpy as np

from gruenwald import (
    ExperimentConfig,
    Order,
    WitnessNotFoundError,
    cos_case_probe,
    make_grid,
    run_converge,
    wrong_operator_probe,
)


def main() -> None:
    print("1. reciprocal-weight target, even regime nu = 0")
    config = ExperimentConfig(
        experiment="theorem1",
        nu=0.0,
        tau_ladder=(4.0, 16.0, 64.0, 256.0),
        grid_min=-5.0,
        grid_max=5.0,
        grid_step=1.0 / 97.0,
        target="recip-weight",
    )
    report = run_converge(config, make_grid("-5:5:1/97"))
    for row in report.rows:
        print("   tau=%-6g weighted sup error = %.6f" % (row.tau, row.sup_error))
    verdict = report.verdicts()
    print("   verdict[%s]: %s" % (verdict["rule"], "pass" if verdict["pass"] else "fail"))

    print()
    print("2. odd-family operator applied to the even-regime reciprocal weight")
    for nu in (-0.75, 0.0):
        for tau in (5.0, 20.0):
            try:
                w = wrong_operator_probe(Order(nu), tau)
                print(
                    "   nu=%-6g tau=%-4g witness: x=%.3e excess=%.6e"
                    % (nu, tau, w.x, w.excess)
                )
            except WitnessNotFoundError:
                print(
                    "   nu=%-6g tau=%-4g no witness: output dominated everywhere"
                    % (nu, tau)
                )

    print()
    print("3. cosine-node interpolant of a bounded target stays bounded")
    grid = np.linspace(-10.0, 10.0, 201)
    for tau in (5.0, 20.0):
        sup = cos_case_probe(tau, grid)
        print("   tau=%-4g max |p| on [-10, 10] = %.6f (bound 2.05)" % (tau, sup))


if __name__ == "__main__":
    main()
