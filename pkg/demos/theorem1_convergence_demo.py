#!/usr/bin/env python3
"""Weighted uniform convergence of the homogeneous-weight operators.

Runs a small dilation ladder in both regimes and prints the weighted sup
error on a symmetric grid.  The even regime (nu > -1/2) uses the operator
built on zeros of the even family; the odd regime (nu < -1/2) uses the odd
family, whose node set contains the origin.  Errors decrease along the
ladder for targets that respect the weight at the origin and at infinity.
"""

from gruenwald import ExperimentConfig, make_grid, run_converge


def run(nu: float, target: str) -> None:
    config = ExperimentConfig(
        experiment="theorem1",
        nu=nu,
        tau_ladder=(4.0, 8.0, 16.0, 32.0),
        grid_min=-4.0,
        grid_max=4.0,
        grid_step=0.02,
        target=target,
    )
    report = run_converge(config, make_grid("-4:4:0.02"))
    print("nu = %g, target = %s" % (nu, target))
    print("%-8s %-14s %-12s %-10s" % ("tau", "sup error", "argmax", "nodes"))
    for row in report.rows:
        print(
            "%-8g %-14.6e %-12.4f %-10d"
            % (row.tau, row.sup_error, row.argmax, row.nodes_used)
        )
    verdict = report.verdicts()
    print("verdict[%s]: %s" % (verdict["rule"], "pass" if verdict["pass"] else "fail"))
    print()


def main() -> None:
    run(0.0, "gaussian")
    run(0.7, "gaussian")
    run(-0.75, "gaussian-times-x2")


if __name__ == "__main__":
    main()
