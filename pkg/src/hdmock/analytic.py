"""
Double precision evaluation on the upper half plane.

q-series evaluation, slash-invariance residuals, period polynomials of
cusp forms, the non-holomorphic Eichler integral g* and the completed
E2.  Every numeric routine reports a truncation estimate next to its
value.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cohomology import S, T, U, GammaMatrix, h1_coordinates, rep_matrix_float
from .modforms import eisenstein

GUARD = 40.0
TWO_PI = 2 * math.pi
TWO_PI_LO = 2.4492935982947064e-16  # 2 pi - TWO_PI


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("point %r is not in the upper half plane" % (complex(self.x, self.y),))

    @property
    def tau(self):
        return complex(self.x, self.y)


def as_tau(tau):
    if isinstance(tau, HPoint):
        return tau.tau
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("point %r is not in the upper half plane" % (tau,))
    return tau


def prec_for(*taus, guard=GUARD, extra=10):
    """Series precision that passes the evaluation guard at every point given."""
    y = min(as_tau(t).imag for t in taus)
    return int(math.ceil(guard / (TWO_PI * y))) + extra


class Evaluation(NamedTuple):
    value: complex
    error_bound: float


def _fsum_complex(terms):
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def eval_series(f, tau):
    """
    Sum of c_n e^{2 pi i n tau} over the stored range, with an estimate
    (not a rigorous enclosure) of the truncated tail.
    """
    tau = as_tau(tau)
    y = tau.imag
    if TWO_PI * y * f.prec < GUARD:
        raise ValueError(
            "insufficient precision for this tau: prec %d at Im(tau) = %g" % (f.prec, y)
        )
    n = np.arange(f.valuation, f.prec)
    c = np.array(f.float_coeffs)
    # e^{2 pi i n tau} split into modulus and phase; x reduced mod 1 first
    x = tau.real - math.floor(tau.real)
    terms = c * _decay(n, y) * _phase(n, x)
    value = _fsum_complex(terms)
    tail = _tail(c, y, f.prec)
    return Evaluation(value, float(tail))


def _split(a):
    t = 134217729.0 * a  # 2^27 + 1
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    """p, e with p = fl(a b) and a b = p + e exactly (Dekker)."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _decay(n, y):
    """
    exp(-2 pi n y) to a few ulps.  The argument reaches the hundreds, so
    the roundings of 2 pi and n y are carried as a low-order correction.
    """
    n = n.astype(float)
    ny, ny_lo = _two_prod(n, y)
    a, a_lo = _two_prod(TWO_PI, ny)
    a_lo = a_lo + TWO_PI * ny_lo + TWO_PI_LO * ny
    return np.exp(-a) * (1.0 - a_lo)


def _phase(n, x):
    """exp(2 pi i n x) with n x reduced mod 1 exactly and the angle compensated like _decay."""
    n = n.astype(float)
    nx, nx_lo = _two_prod(n, x)
    f = nx - np.floor(nx)
    f, f_lo = f + nx_lo, nx_lo - ((f + nx_lo) - f)
    a, a_lo = _two_prod(TWO_PI, f)
    a_lo = a_lo + TWO_PI * f_lo + TWO_PI_LO * f
    return np.exp(1j * a) * (1.0 + 1j * a_lo)


def _tail(c, y, prec):
    """
    Estimate of sum_{n >= prec} |c_n| |q|^n.  The per-step growth g of
    |c_n| is read off the last two windows of four coefficients; the next
    coefficient is taken as (max of the last window) * g^4 and the rest
    as a geometric series in g|q|, with a factor 2 of slack.
    """
    r = math.exp(-TWO_PI * y)
    c = np.abs(c)
    a1 = c[-4:].max(initial=0.0)
    a0 = c[-8:-4].max(initial=0.0)
    g = max(1.0, (a1 / a0) ** 0.25) if a0 > 0 else 2.0
    if g * r >= 0.5:
        return math.inf
    return 2 * a1 * g**4 * math.exp(-TWO_PI * y * prec) / (1 - g * r)


def modular_residual(f, k, gamma, tau):
    """|f(gamma tau) - (c tau + d)^k f(tau)|."""
    tau = as_tau(tau)
    lhs = eval_series(f, gamma.act(tau)).value
    rhs = gamma.automorphy(tau) ** k * eval_series(f, tau).value
    return abs(lhs - rhs)


def e2_completed(tau, N=None):
    tau = as_tau(tau)
    if N is None:
        N = prec_for(tau)
    return eval_series(eisenstein(2, N), tau).value - 3 / (math.pi * tau.imag)


def e2_completion_residual(gamma, tau, N=None):
    """|E2^(gamma tau) - (c tau + d)^2 E2^(tau)| with E2^ = E2 - 3/(pi y)."""
    tau = as_tau(tau)
    gt = gamma.act(tau)
    if N is None:
        N = prec_for(tau, gt)
    return abs(e2_completed(gt, N) - gamma.automorphy(tau) ** 2 * e2_completed(tau, N))


# -- incomplete gamma for integer order --------------------------------

def upper_gamma_int(m, x):
    """Gamma(m+1, x) = m! e^{-x} sum_{j<=m} x^j / j! for integer m >= 0."""
    term = 1.0
    s = 1.0
    for j in range(1, m + 1):
        term *= x / j
        s += term
    return math.factorial(m) * math.exp(-x) * s


def _scaled_upper_gamma(m, x):
    """e^{x} Gamma(m+1, x), for arguments where e^{-x} alone would underflow."""
    term = 1.0
    s = 1.0
    for j in range(1, m + 1):
        term *= x / j
        s += term
    return math.factorial(m) * s


def _cusp_check(g):
    if g.is_zero():
        return
    n = g.order()
    if n < 1:
        raise ValueError("expected a cusp form (order >= 1), got order %d" % n)


def _segment_moments(g, k, s0, s1):
    """
    I_m = int_{i s0}^{i s1} g(tau) tau^m dtau for m = 0..k along the
    imaginary axis, 1 <= s0 < s1 <= inf, term by term:
    i^{m+1} (Gamma(m+1, 2 pi n s0) - Gamma(m+1, 2 pi n s1)) / (2 pi n)^{m+1}.
    """
    I = np.zeros(k + 1, dtype=complex)
    for n, c in zip(range(g.valuation, g.prec), g.float_coeffs):
        if n < 1 or not c:
            continue
        lam = TWO_PI * n
        for m in range(k + 1):
            val = upper_gamma_int(m, lam * s0)
            if s1 != math.inf:
                val -= upper_gamma_int(m, lam * s1)
            I[m] += c * val / lam ** (m + 1)
    return I * np.array([1j ** (m + 1) for m in range(k + 1)])


def segment_integral(g, k, t0, t1):
    """
    Coefficients (of X^{k-j} Y^j) of int_{i t0}^{i t1} g(tau) (X - tau Y)^k dtau
    for a cusp form g of weight k+2.  The part below i is moved above i by
    tau -> -1/tau, where it becomes -int g(w) (Y + X w)^k dw.
    """
    _cusp_check(g)
    binom = np.array([math.comb(k, j) for j in range(k + 1)], dtype=float)
    sign = np.array([(-1) ** j for j in range(k + 1)], dtype=float)
    r = np.zeros(k + 1, dtype=complex)
    if t1 > 1:
        I = _segment_moments(g, k, max(t0, 1.0), t1)
        r += binom * sign * I
    if t0 < 1:
        lo = 1.0 / min(t1, 1.0)
        hi = math.inf if t0 == 0 else 1.0 / t0
        I = _segment_moments(g, k, lo, hi)
        r -= binom * I[::-1]
    return r


def slash_numeric(coeffs, k, gamma):
    return np.asarray(coeffs) @ rep_matrix_float(k, gamma)


@dataclass(frozen=True)
class PeriodPolynomial:
    degree: int
    coeffs: np.ndarray
    tolerance: float
    s_residual: float
    u_residual: float

    def cocycle_vector(self):
        """(z(S) | z(U)) for the cocycle with z(T) = 0, z(S) = r."""
        k = self.degree
        return np.concatenate([self.coeffs, slash_numeric(self.coeffs, k, T)])

    def to_dict(self):
        return {
            "degree": self.degree,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "tolerance": self.tolerance,
            "s_residual": self.s_residual,
            "u_residual": self.u_residual,
        }


def relator_residuals(coeffs, k):
    rs = coeffs + slash_numeric(coeffs, k, S)
    ru = coeffs + slash_numeric(coeffs, k, U) + slash_numeric(coeffs, k, U @ U)
    return float(np.max(np.abs(rs))), float(np.max(np.abs(ru)))


def _tail_estimate(g, k, s0):
    """Rough size of the omitted terms n >= prec in a moment sum starting at i s0."""
    if g.is_zero():
        return 0.0
    a = max(abs(c) for c in g.float_coeffs[-3:])
    lam = TWO_PI * g.prec
    return a * math.comb(k, k // 2) * upper_gamma_int(k, lam * s0) / lam ** (k + 1) * 10


def period_polynomial(g, k):
    """r_g(X, Y) = int_0^{i inf} g(tau) (X - tau Y)^k dtau for g in S_{k+2}."""
    if k % 2:
        raise ValueError("k must be even")
    _cusp_check(g)
    coeffs = segment_integral(g, k, 0.0, math.inf)
    s_res, u_res = relator_residuals(coeffs, k)
    tol = max(s_res, u_res, _tail_estimate(g, k, 1.0))
    return PeriodPolynomial(k, coeffs, tol, s_res, u_res)


def period_rank_in_h1(r, threshold=1e-6):
    """
    Project the real and imaginary parts of a period cocycle into exact
    H^1 coordinates; returns (rank, singular values, projection misfit).
    """
    k = r.degree
    vec = r.cocycle_vector()
    rows = []
    misfit = 0.0
    for part in (vec.real, vec.imag):
        beta, res = h1_coordinates(k, part)
        rows.append(beta)
        misfit = max(misfit, res)
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(sv > threshold)), sv, misfit


# -- non-holomorphic Eichler integral ---------------------------------

def eichler_star(g, k, tau):
    """
    g*(tau) = (2i)^{-k} int_{-conj(tau)}^{i inf} conj(g(-conj z)) (z + tau)^k dz
            = (2i)^{-k} i^{k+1} sum_n conj(a_n) e^{-2 pi i n tau}
              Gamma(k+1, 4 pi n y) / (2 pi n)^{k+1},
    normalized so that d g*/d(conj tau) = y^k conj(g(tau)).
    """
    _cusp_check(g)
    tau = as_tau(tau)
    x, y = tau.real, tau.imag
    if TWO_PI * y * g.prec < GUARD:
        raise ValueError("insufficient precision for this tau: prec %d at Im(tau) = %g" % (g.prec, y))
    terms = []
    for n, c in zip(range(g.valuation, g.prec), g.float_coeffs):
        if n < 1 or not c:
            continue
        lam = TWO_PI * n
        # e^{2 pi n y} Gamma(k+1, 4 pi n y) = e^{-2 pi n y} * scaled
        mag = math.exp(-lam * y) * _scaled_upper_gamma(k, 2 * lam * y) / lam ** (k + 1)
        phase = complex(math.cos(lam * x), -math.sin(lam * x))
        terms.append(c * mag * phase)
    pref = (2j) ** (-k) * 1j ** (k + 1)
    value = pref * _fsum_complex(terms) if terms else 0j
    return Evaluation(value, eichler_star_tail(g, k, y))


def eichler_star_tail(g, k, y):
    if g.is_zero():
        return 0.0
    lam = TWO_PI * g.prec
    a = max(abs(c) for c in g.float_coeffs[-3:])
    return a * math.exp(-lam * y) * _scaled_upper_gamma(k, 2 * lam * y) / lam ** (k + 1) * 10


def dbar(fn, tau, h):
    """Central difference of (d/dx + i d/dy)/2."""
    tau = as_tau(tau)
    dx = (fn(tau + h) - fn(tau - h)) / (2 * h)
    dy = (fn(tau + 1j * h) - fn(tau - 1j * h)) / (2 * h)
    return 0.5 * (dx + 1j * dy)


def dbar_residual(g, k, tau, h=1e-4):
    """|dbar g*(tau) - y^k conj(g(tau))| with a central difference of step h."""
    tau = as_tau(tau)
    lhs = dbar(lambda t: eichler_star(g, k, t).value, tau, h)
    rhs = tau.imag**k * eval_series(g, tau).value.conjugate()
    return abs(lhs - rhs)


class CocycleFit(NamedTuple):
    residual: float
    coeffs: np.ndarray  # in powers of (tau - center) / radius
    center: complex
    radius: float


def star_cocycle_fit(g, k, gamma=S, center=1j, radius=0.3, npoints=None):
    """
    Fit (g*|_{-k} gamma - g*)(tau) = (c tau + d)^k g*(gamma tau) - g*(tau)
    by a polynomial of degree <= k in tau, sampled at 3(k+1) points on a
    circle around center (so 2(k+1) redundant samples); returns the max misfit.
    """
    if npoints is None:
        npoints = 3 * (k + 1)
    phis = 2 * math.pi * np.arange(npoints) / npoints
    pts = center + radius * np.exp(1j * phis)
    vals = np.array([
        gamma.automorphy(t) ** k * eichler_star(g, k, gamma.act(t)).value
        - eichler_star(g, k, t).value
        for t in pts
    ])
    z = (pts - center) / radius
    V = np.vander(z, k + 1, increasing=True)
    sol, *_ = np.linalg.lstsq(V, vals, rcond=None)
    return CocycleFit(float(np.max(np.abs(V @ sol - vals))), sol, center, radius)
