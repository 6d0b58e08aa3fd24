"""Bessel-type special functions, their zeros, and node-derivative tables.

The module evaluates the even entire functions

    A(x) = c * (x/2)**(-nu) * J_nu(x),      normalized so A(0) = 1,
    B(x) = c * (x/2)**(-nu) * J_{nu+1}(x),  odd, with B = -A',

where c = Gamma(nu + 1) and J is the Bessel function of the first kind.
Two independent evaluation routes are used:

* an ascending even power series accumulated in compensated double-double
  arithmetic for real arguments (plain complex arithmetic off the axis), and
* a large-argument asymptotic expansion whose amplitude sums are
  differentiated term by term, so first and second derivatives never pass
  through the defining differential equation.

Because the second route never calls the first, agreement between them and
the node identities exercised by the test suite are genuine cross-checks
rather than tautologies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroFindingError


@dataclass(frozen=True)
class ToleranceConfig:
    """All numeric thresholds used by this module, in one record."""

    classical_window: float = 1e-12
    zero_tolerance: float = 1e-10
    residual_tolerance: float = 1e-12
    series_crossover_base: float = 16.0
    series_term_cap: int = 320
    newton_iteration_cap: int = 60


TOLERANCES = ToleranceConfig()

_PI = math.pi
# Splitter constant for Dekker's exact product (2**27 + 1).
_SPLITTER = 134217729.0


@dataclass(frozen=True)
class Order:
    """A real order nu > -1 with its convergence-regime classification."""

    nu: float

    def __post_init__(self) -> None:
        nu = self.nu
        if not isinstance(nu, (int, float)) or isinstance(nu, bool):
            raise DomainError("order must be a real number")
        nu = float(nu)
        if not math.isfinite(nu) or nu <= -1.0:
            raise DomainError("order must exceed -1")
        object.__setattr__(self, "nu", nu)

    @property
    def is_classical(self) -> bool:
        return abs(self.nu + 0.5) <= TOLERANCES.classical_window

    @property
    def regime(self) -> str:
        if self.is_classical:
            return "classical"
        if self.nu > -0.5:
            return "G-regime"
        return "H-regime"


def _as_order(order) -> Order:
    if isinstance(order, Order):
        return order
    return Order(float(order))


# ---------------------------------------------------------------------------
# Double-double primitives (error-free transformations).
# ---------------------------------------------------------------------------


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float):
    p = a * b
    t = _SPLITTER * a
    ahi = t - (t - a)
    alo = a - ahi
    t = _SPLITTER * b
    bhi = t - (t - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(xhi: float, xlo: float, yhi: float, ylo: float):
    s, e = _two_sum(xhi, yhi)
    e += xlo + ylo
    return _quick_two_sum(s, e)


def _dd_mul(xhi: float, xlo: float, yhi: float, ylo: float):
    p, e = _two_prod(xhi, yhi)
    e += xhi * ylo + xlo * yhi
    return _quick_two_sum(p, e)


def _dd_div(xhi: float, xlo: float, yhi: float, ylo: float):
    q1 = xhi / yhi
    phi, plo = _dd_mul(q1, 0.0, yhi, ylo)
    rhi, rlo = _dd_add(xhi, xlo, -phi, -plo)
    q2 = (rhi + rlo) / yhi
    return _quick_two_sum(q1, q2)


# ---------------------------------------------------------------------------
# Ascending even series.  S(mu, x) = sum_m (-1)^m (x/2)^{2m} / (m! (mu+1)_m)
# so that A = S(nu, .), and derivatives reduce to S at shifted parameters.
# ---------------------------------------------------------------------------


def _even_core_dd(mu: float, x: float) -> float:
    half = 0.5 * x
    qhi, qlo = _two_prod(half, half)
    thi, tlo = 1.0, 0.0
    shi, slo = 1.0, 0.0
    peak = 1.0
    for m in range(1, TOLERANCES.series_term_cap + 1):
        fm = float(m)
        # The divisor m*(m + mu) must itself be carried in double-double:
        # its rounding would otherwise be amplified by series cancellation.
        phi, plo = _two_sum(fm, mu)
        dhi, dlo = _two_prod(fm, phi)
        dlo += fm * plo
        dhi, dlo = _quick_two_sum(dhi, dlo)
        thi, tlo = _dd_mul(thi, tlo, -qhi, -qlo)
        thi, tlo = _dd_div(thi, tlo, dhi, dlo)
        shi, slo = _dd_add(shi, slo, thi, tlo)
        mag = abs(thi)
        if mag > peak:
            peak = mag
        elif mag < 1e-34 * peak:
            break
    return shi + slo


def _even_core_complex(mu: float, z: complex) -> complex:
    q = (0.5 * z) * (0.5 * z)
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    peak = 1.0
    for m in range(1, 4 * TOLERANCES.series_term_cap + 1):
        term = term * (-q) / (m * (mu + m))
        total += term
        mag = abs(term)
        if mag > peak:
            peak = mag
        elif mag < 1e-20 * peak:
            break
    return total


def _family_small_real(nu: float, x: float):
    """(A, A', A'', B, B', B'') at real x via four independent series."""
    s0 = _even_core_dd(nu, x)
    s1 = _even_core_dd(nu + 1.0, x)
    s2 = _even_core_dd(nu + 2.0, x)
    s3 = _even_core_dd(nu + 3.0, x)
    c1 = nu + 1.0
    c2 = c1 * (nu + 2.0)
    c3 = c2 * (nu + 3.0)
    x2 = x * x
    b = 0.5 * x * s1 / c1
    bp = 0.5 * s1 / c1 - 0.25 * x2 * s2 / c2
    bpp = -0.75 * x * s2 / c2 + 0.125 * x2 * x * s3 / c3
    return s0, -b, -bp, b, bp, bpp


def _family_small_complex(nu: float, z: complex):
    s0 = _even_core_complex(nu, z)
    s1 = _even_core_complex(nu + 1.0, z)
    s2 = _even_core_complex(nu + 2.0, z)
    s3 = _even_core_complex(nu + 3.0, z)
    c1 = nu + 1.0
    c2 = c1 * (nu + 2.0)
    c3 = c2 * (nu + 3.0)
    z2 = z * z
    b = 0.5 * z * s1 / c1
    bp = 0.5 * s1 / c1 - 0.25 * z2 * s2 / c2
    bpp = -0.75 * z * s2 / c2 + 0.125 * z2 * z * s3 / c3
    return s0, -b, -bp, b, bp, bpp


# ---------------------------------------------------------------------------
# Large-argument expansion with termwise-differentiated amplitude sums.
# ---------------------------------------------------------------------------


def _hankel_pq(nu: float, z):
    """Amplitude sums P, Q of the large-argument expansion of J_nu and their
    first two derivatives, differentiated term by term."""
    mu4 = 4.0 * nu * nu
    p = p1 = p2 = 0.0
    q = q1 = q2 = 0.0
    term = 1.0 + 0.0j if isinstance(z, complex) else 1.0
    prev_mag = abs(term)
    for j in range(0, 44):
        if j > 0:
            term = term * (mu4 - (2.0 * j - 1.0) ** 2) / (8.0 * j * z)
            mag = abs(term)
            if mag < 1e-18:
                break
            if mag >= prev_mag and j > 2:
                break
            prev_mag = mag
        d1 = -j * term / z
        d2 = j * (j + 1) * term / (z * z)
        r = j % 4
        if r == 0:
            p += term
            p1 += d1
            p2 += d2
        elif r == 1:
            q += term
            q1 += d1
            q2 += d2
        elif r == 2:
            p -= term
            p1 -= d1
            p2 -= d2
        else:
            q -= term
            q1 -= d1
            q2 -= d2
    return p, p1, p2, q, q1, q2


def _hankel_jjj(nu: float, z):
    """(J, J', J'') for large |z| with Re z > 0, real or complex."""
    is_c = isinstance(z, complex)
    cm = cmath if is_c else math
    p, p1, p2, q, q1, q2 = _hankel_pq(nu, z)
    amp = cm.sqrt(2.0 / (_PI * z))
    chi = z - (0.5 * nu + 0.25) * _PI
    c = cm.cos(chi)
    s = cm.sin(chi)
    u = p1 - q - p / (2.0 * z)
    v = p + q1 - q / (2.0 * z)
    u1 = p2 - q1 - p1 / (2.0 * z) + p / (2.0 * z * z)
    v1 = p1 + q2 - q1 / (2.0 * z) + q / (2.0 * z * z)
    jv = amp * (p * c - q * s)
    jd = amp * (u * c - v * s)
    jdd = amp * ((u1 - v - u / (2.0 * z)) * c - (v1 + u - v / (2.0 * z)) * s)
    return jv, jd, jdd


def _family_large(nu: float, z):
    """(A, A', A'', B, B', B'') via the asymptotic route, Re z > 0."""
    is_c = isinstance(z, complex)
    if is_c:
        scale = math.gamma(nu + 1.0) * cmath.exp(-nu * cmath.log(0.5 * z))
    else:
        scale = math.gamma(nu + 1.0) * math.pow(0.5 * z, -nu)
    ja, jad, jadd = _hankel_jjj(nu, z)
    jb, jbd, jbdd = _hankel_jjj(nu + 1.0, z)
    rn = nu / z
    rnn = nu * (nu + 1.0) / (z * z)
    a = scale * ja
    ap = scale * (jad - rn * ja)
    app = scale * (jadd - 2.0 * rn * jad + rnn * ja)
    b = scale * jb
    bp = scale * (jbd - rn * jb)
    bpp = scale * (jbdd - 2.0 * rn * jbd + rnn * jb)
    return a, ap, app, b, bp, bpp


def _crossover(nu: float) -> float:
    return TOLERANCES.series_crossover_base + 2.0 * abs(nu)


def _family_values(nu: float, z):
    """Dispatch (A, A', A'', B, B', B'') over both routes and both axes."""
    if isinstance(z, complex) and z.imag != 0.0:
        w = -z if z.real < 0.0 else z
        flip = -1.0 if z.real < 0.0 else 1.0
        if abs(w) <= _crossover(nu) or abs(w.real) < abs(w.imag):
            a, ap, app, b, bp, bpp = _family_small_complex(nu, w)
        else:
            a, ap, app, b, bp, bpp = _family_large(nu, w)
        return a, flip * ap, app, flip * b, bp, flip * bpp
    x = z.real if isinstance(z, complex) else float(z)
    ax = abs(x)
    if ax <= _crossover(nu):
        a, ap, app, b, bp, bpp = _family_small_real(nu, ax)
    else:
        a, ap, app, b, bp, bpp = _family_large(nu, ax)
    if x < 0.0:
        return a, -ap, app, -b, bp, -bpp
    return a, ap, app, b, bp, bpp


def _classical_family(z):
    is_c = isinstance(z, complex) and z.imag != 0.0
    cm = cmath if is_c else math
    x = z if is_c else (z.real if isinstance(z, complex) else float(z))
    c = cm.cos(x)
    s = cm.sin(x)
    return c, -s, -c, s, c, -s


def _family(order: Order, z):
    if order.is_classical:
        return _classical_family(z)
    return _family_values(order.nu, z)


# ---------------------------------------------------------------------------
# Public evaluators.
# ---------------------------------------------------------------------------


def a_nu(order, z):
    """The even normalized function A with A(0) = 1."""
    return _family(_as_order(order), z)[0]


def a_nu_prime(order, z):
    """Derivative A'; equals -B identically."""
    return _family(_as_order(order), z)[1]


def a_nu_second(order, z):
    """Second derivative A'', evaluated by its own series combination."""
    return _family(_as_order(order), z)[2]


def b_nu(order, z):
    """The odd companion function B = -A', vanishing at the origin."""
    return _family(_as_order(order), z)[3]


def b_nu_prime(order, z):
    """Derivative B'."""
    return _family(_as_order(order), z)[4]


def b_nu_second(order, z):
    """Second derivative B''."""
    return _family(_as_order(order), z)[5]


def bessel_j(nu, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu > -1 and real x >= 0."""
    order = _as_order(nu)
    x = float(x)
    if x < 0.0:
        raise DomainError("bessel_j requires x >= 0")
    if x == 0.0:
        if order.nu == 0.0:
            return 1.0
        if order.nu > 0.0:
            return 0.0
        raise DomainError("J_nu is singular at 0 for negative order")
    if order.is_classical:
        return math.sqrt(2.0 / (_PI * x)) * math.cos(x)
    n = order.nu
    if x <= _crossover(n):
        return _even_core_dd(n, x) * math.pow(0.5 * x, n) / math.gamma(n + 1.0)
    return _hankel_jjj(n, x)[0]


def _bessel_j_prime(nu: float, x: float) -> float:
    """J_nu'(x) through the order-raising recurrence, staying above order -1."""
    order = Order(nu)
    if order.is_classical:
        mag = math.sqrt(2.0 / (_PI * x))
        return -mag * math.sin(x) - 0.5 * mag * math.cos(x) / x
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x)


# ---------------------------------------------------------------------------
# Zero tables.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroTable:
    """Ordered positive zeros of J_mu with values of the generating function's
    first and second derivatives at each zero.

    kind "A": mu = nu, derivatives of A.  kind "B": mu = nu + 1,
    derivatives of B.  Arrays are treated as immutable.
    """

    order: Order
    kind: str
    zeros: np.ndarray
    derivs: np.ndarray
    second_derivs: np.ndarray

    def __len__(self) -> int:
        return len(self.zeros)

    def head(self, count: int) -> "ZeroTable":
        if count > len(self):
            raise DomainError("head() cannot extend a table")
        return ZeroTable(
            self.order,
            self.kind,
            self.zeros[:count],
            self.derivs[:count],
            self.second_derivs[:count],
        )

    def csv_text(self) -> str:
        lines = ["index,zero,deriv,second_deriv"]
        for i in range(len(self.zeros)):
            lines.append(
                "%d,%.17g,%.17g,%.17g"
                % (
                    i + 1,
                    self.zeros[i],
                    self.derivs[i],
                    self.second_derivs[i],
                )
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.csv_text())


_ZERO_CACHE: dict = {}


def _mcmahon_guess(mu: float, j: int) -> float:
    beta = (j + 0.5 * mu - 0.25) * _PI
    m = 4.0 * mu * mu
    guess = beta - (m - 1.0) / (8.0 * beta)
    guess -= 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * (8.0 * beta) ** 3)
    return guess


def _refine_zero(mu: float, lo: float, hi: float) -> float:
    """Bisection to a safe width, then Newton polish inside the bracket."""
    flo = bessel_j(mu, lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = bessel_j(mu, mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    x = 0.5 * (lo + hi)
    for _ in range(4):
        f = bessel_j(mu, x)
        fp = _bessel_j_prime(mu, x)
        if fp == 0.0:
            break
        step = f / fp
        if not (lo - 1e-9 <= x - step <= hi + 1e-9):
            break
        x -= step
        if abs(step) <= 1e-15 * max(1.0, x):
            break
    return x


def _bracket_scan(mu: float, start: float) -> tuple:
    """Walk right from `start` until J_mu changes sign."""
    step = _PI / 8.0
    a = start
    fa = bessel_j(mu, a)
    for _ in range(200):
        b = a + step
        fb = bessel_j(mu, b)
        if fa == 0.0:
            return a - 1e-9, a + 1e-9
        if (fa > 0.0) != (fb > 0.0):
            return a, b
        a, fa = b, fb
    raise ZeroFindingError("no sign change found while scanning for a zero")


def _next_zero(mu: float, j: int, prev: float) -> float:
    guess = _mcmahon_guess(mu, j)
    if j <= 3 or guess <= prev + 0.3:
        lo, hi = _bracket_scan(mu, prev + 1e-3 if prev > 0.0 else 1e-6)
        return _refine_zero(mu, lo, hi)
    x = guess
    converged = False
    for _ in range(TOLERANCES.newton_iteration_cap):
        f = bessel_j(mu, x)
        fp = _bessel_j_prime(mu, x)
        if fp == 0.0:
            break
        step = f / fp
        nxt = x - step
        if nxt <= prev + 0.2 or nxt >= guess + 2.0 * _PI:
            break
        x = nxt
        if abs(step) <= 1e-14 * max(1.0, x):
            converged = True
            break
    if converged and prev + 0.4 < x < prev + 2.2 * _PI:
        return x
    lo, hi = _bracket_scan(mu, prev + 1e-3)
    return _refine_zero(mu, lo, hi)


def _classical_table(order: Order, kind: str, count: int) -> ZeroTable:
    k = np.arange(1, count + 1, dtype=float)
    sign = np.where(k.astype(int) % 2 == 0, 1.0, -1.0)
    if kind == "A":
        zeros = (k - 0.5) * _PI
    else:
        zeros = k * _PI
    derivs = sign
    second = np.zeros(count)
    return ZeroTable(order, kind, zeros, derivs, second, )


def _validate_table(mu: float, zeros, derivs) -> None:
    prev = 0.0
    for j, z in enumerate(zeros):
        if z <= prev:
            raise ZeroFindingError("zero table is not strictly increasing")
        prev = z
        resid = abs(bessel_j(mu, z))
        scale = max(1.0, abs(_bessel_j_prime(mu, z)) * z)
        if resid > TOLERANCES.residual_tolerance * scale:
            raise ZeroFindingError(
                "zero %d failed the residual check (%.3e)" % (j + 1, resid)
            )
        if derivs[j] == 0.0:
            raise ZeroFindingError("vanishing derivative at zero %d" % (j + 1))


def zero_table(order, kind: str, count: int) -> ZeroTable:
    """First `count` positive zeros of J_nu (kind "A") or J_{nu+1} (kind "B")
    together with A'/A'' (resp. B'/B'') values at each zero."""
    order = _as_order(order)
    kind = str(kind).upper()
    if kind not in ("A", "B"):
        raise DomainError('kind must be "A" or "B"')
    if not isinstance(count, int) or count <= 0:
        raise DomainError("count must be a positive integer")
    if order.is_classical:
        return _classical_table(order, kind, count)
    key = (order.nu, kind)
    cached = _ZERO_CACHE.get(key)
    if cached is None or len(cached.zeros) < count:
        mu = order.nu if kind == "A" else order.nu + 1.0
        if cached is None:
            zeros = []
        else:
            zeros = list(cached.zeros)
        prev = zeros[-1] if zeros else 0.0
        for j in range(len(zeros) + 1, count + 1):
            z = _next_zero(mu, j, prev)
            zeros.append(z)
            prev = z
        new = len(zeros) - (0 if cached is None else len(cached.zeros))
        _validate_table(mu, zeros[-new:], np.ones(new))
        fam_index = (1, 2) if kind == "A" else (4, 5)
        derivs = np.empty(len(zeros))
        second = np.empty(len(zeros))
        if cached is not None:
            n0 = len(cached.zeros)
            derivs[:n0] = cached.derivs
            second[:n0] = cached.second_derivs
        else:
            n0 = 0
        for j in range(n0, len(zeros)):
            vals = _family_values(order.nu, zeros[j])
            derivs[j] = vals[fam_index[0]]
            second[j] = vals[fam_index[1]]
            if derivs[j] == 0.0:
                raise ZeroFindingError("vanishing derivative at zero %d" % (j + 1))
        cached = ZeroTable(order, kind, np.array(zeros), derivs, second)
        _ZERO_CACHE[key] = cached
    return cached.head(count)


def magnitude_profile(order, xs) -> list:
    """Rows (x, A(x)**2 + B(x)**2); the sum decays like |x|**(-2 nu - 1)."""
    order = _as_order(order)
    rows = []
    for x in xs:
        vals = _family(order, float(x))
        rows.append((float(x), vals[0] * vals[0] + vals[3] * vals[3]))
    return rows
