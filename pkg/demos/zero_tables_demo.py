#!/usr/bin/env python3
"""Zero tables of the two generating families.

Prints the first zeros of the even member A and the odd member B for a few
orders, checks the classical order where both reduce to cosine and sine, and
verifies the node identity ratio second/first derivative = -(2 nu + 1)/t
that makes the interpolation weights computable in closed form.
"""

import math

from gruenwald import Order, a_nu, b_nu, zero_table


def main() -> None:
    print("first zeros of the even family A (J-type, order nu)")
    print("%-8s %-22s %-22s %-22s" % ("nu", "t1", "t2", "t3"))
    for nu in (-0.9, -0.5, 0.0, 0.7, 2.5):
        table = zero_table(Order(nu), "A", 3)
        print("%-8g %-22.15g %-22.15g %-22.15g" % (nu, *table.zeros))

    print()
    print("classical order nu = -1/2: zeros against (k + 1/2) pi and (k + 1) pi")
    table_a = zero_table(Order(-0.5), "A", 4)
    table_b = zero_table(Order(-0.5), "B", 4)
    for k in range(4):
        ref_a = (k + 0.5) * math.pi
        ref_b = (k + 1.0) * math.pi
        print(
            "k=%d  A: %.15g (err %.1e)   B: %.15g (err %.1e)"
            % (
                k,
                table_a.zeros[k],
                abs(table_a.zeros[k] - ref_a),
                table_b.zeros[k],
                abs(table_b.zeros[k] - ref_b),
            )
        )

    print()
    print("node identity u''(t)/u'(t) = -(2 nu + 1)/t at the first 5 zeros")
    nu = 0.7
    order = Order(nu)
    table = zero_table(order, "A", 5)
    print("%-22s %-22s %-12s" % ("t", "ratio", "rel error"))
    for t, d1, d2 in zip(table.zeros, table.derivs, table.second_derivs):
        target = -(2.0 * nu + 1.0) / t
        print("%-22.15g %-22.15g %-12.2e" % (t, d2 / d1, abs(d2 / d1 - target) / abs(target)))

    print()
    print("sanity: function values vanish at the tabulated zeros")
    worst = max(abs(a_nu(order, t)) for t in table.zeros)
    table_b = zero_table(order, "B", 5)
    worst = max(worst, max(abs(b_nu(order, t)) for t in table_b.zeros))
    print("max |u(t)| over both tables: %.2e" % worst)


if __name__ == "__main__":
    main()
