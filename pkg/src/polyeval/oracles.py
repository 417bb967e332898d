"""Closed-form oracles and error bounds for the evaluation schemes.

Chebyshev polynomials of the first and second kinds tie Goertzel's
recurrence to explicit sums: with t = Re(z)/|z| the intermediates satisfy

    b_n = sum_{k=n}^{N} a_k |z|^{k-n} U_{k-n}(t),       n = 1..N,
    u   = sum_{k=0}^{N} a_k |z|^k T_k(t),               v = Im(z) b_1,

and the powers of z obey the rotation identity

    z^k / |z|^k = T_k(t) + i (Im(z)/|z|) U_{k-1}(t),    U_{-1} = 0,

where Im(z)/|z| is the sine of arg z.  Evaluating the sums in extended
precision gives an independent check of the working-precision recurrence,
of the magnitude bound |b_n| <= (N - n + 1) g_n with the majorants
g_n = sum_{k=n}^{N} |a_k| |z|^{k-n}, and of the forward error bounds in
:func:`forward_error_bound`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import gmpy2
import numpy as np

from .core import CMUL_BOUND, EPS, ensure_finite
from .evaluators import DegreeTooSmall, GoertzelTrace, Polynomial, horner
from .reference import PRECISION_BITS


@dataclass
class ChebPair:
    """Chebyshev values T_0..T_K and U_0..U_K at one point t in [-1, 1]."""

    t: float
    T: np.ndarray
    U: np.ndarray


def cheb_sequences(t: float, K: int) -> ChebPair:
    """Fill T_k and U_k by the recurrence x_k = 2t x_{k-1} - x_{k-2}.

    Seeds are T_0 = U_0 = 1, T_1 = t, U_1 = 2t.  On [-1, 1] the exact
    values satisfy |T_k| <= 1 and |U_k| <= k + 1; the computed ones obey
    the same bounds up to accumulated rounding.
    """
    if not -1.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [-1, 1], got {t}")
    if K < 0:
        raise ValueError("K must be >= 0")
    T = [0.0] * (K + 1)
    U = [0.0] * (K + 1)
    T[0] = U[0] = 1.0
    if K >= 1:
        T[1] = t
        U[1] = 2.0 * t
    tt = 2.0 * t
    for k in range(2, K + 1):
        T[k] = tt * T[k - 1] - T[k - 2]
        U[k] = tt * U[k - 1] - U[k - 2]
    return ChebPair(t=t, T=np.array(T), U=np.array(U))


def goertzel_closed_form(poly: Polynomial, z: complex) -> GoertzelTrace:
    """Goertzel intermediates computed from the Chebyshev closed forms.

    Every b_n is an explicit weighted sum of the coefficients rather than
    a recurrence, evaluated entirely in extended precision and rounded
    once at the end, so the returned trace is exact for all practical
    purposes.  Requires z != 0 (t is undefined there) and degree >= 2.
    """
    z = ensure_finite(z, "evaluation point")
    if z == 0:
        raise ValueError("closed form undefined at z = 0")
    N = poly.degree
    if N < 2:
        raise DegreeTooSmall(f"closed form needs degree >= 2, got {N}")
    are, aim = poly.parts()
    real_coeffs = poly.is_real()
    x, y = z.real, z.imag
    with gmpy2.context(precision=PRECISION_BITS):
        mpfr = gmpy2.mpfr
        xe = mpfr(x)
        ye = mpfr(y)
        r = gmpy2.sqrt(xe * xe + ye * ye)
        t = xe / r
        # T_0..T_N and U_0..U_{N-1}, then scale by the powers of |z|
        T = [mpfr(1)] * (N + 1)
        U = [mpfr(1)] * N
        T[1] = t
        if N >= 2:
            U[1] = 2 * t
        tt = 2 * t
        for k in range(2, N + 1):
            T[k] = tt * T[k - 1] - T[k - 2]
        for k in range(2, N):
            U[k] = tt * U[k - 1] - U[k - 2]
        rp = [mpfr(1)] * (N + 1)
        for k in range(1, N + 1):
            rp[k] = rp[k - 1] * r
        mU = [rp[j] * U[j] for j in range(N)]
        wT = [rp[k] * T[k] for k in range(N + 1)]

        zero = mpfr(0)
        bre = np.empty(N)
        bim = np.empty(N)
        b1re = b1im = zero
        for n in range(1, N + 1):
            accr = zero
            acci = zero
            for j in range(N - n + 1):
                accr += are[n + j] * mU[j]
            if not real_coeffs:
                for j in range(N - n + 1):
                    acci += aim[n + j] * mU[j]
            if n == 1:
                b1re, b1im = accr, acci
            bre[n - 1] = float(accr)
            bim[n - 1] = float(acci)

        ur = zero
        ui = zero
        for k in range(N + 1):
            ur += are[k] * wT[k]
        if not real_coeffs:
            for k in range(N + 1):
                ui += aim[k] * wT[k]

        u = complex(float(ur), float(ui))
        v = complex(float(ye * b1re), float(ye * b1im))
        q_hat = float(-(xe * xe + ye * ye))
    return GoertzelTrace(p_hat=2.0 * x, q_hat=q_hat, b=bre + 1j * bim, u=u, v=v)


def majorant_sequence(poly: Polynomial, z: complex) -> np.ndarray:
    """g_n = sum_{k=n}^{N} |a_k| |z|^(k-n) for n = 0..N.

    Computed by the exact backward recurrence g_N = |a_N|,
    g_n = |a_n| + |z| g_{n+1}, in extended precision; each entry is
    rounded to binary64.  g_0 majorizes |w(z)| and the g_n majorize the
    Goertzel intermediates via |b_n| <= (N - n + 1) g_n.
    """
    z = ensure_finite(z, "evaluation point")
    are, aim = poly.parts()
    N = poly.degree
    real_coeffs = poly.is_real()
    out = np.empty(N + 1)
    with gmpy2.context(precision=PRECISION_BITS):
        mpfr = gmpy2.mpfr
        xe = mpfr(z.real)
        ye = mpfr(z.imag)
        r = gmpy2.sqrt(xe * xe + ye * ye)
        acc = mpfr(0)
        if real_coeffs:
            for n in range(N, -1, -1):
                acc = abs(are[n]) + r * acc
                out[n] = float(acc)
        else:
            for n in range(N, -1, -1):
                an = gmpy2.sqrt(mpfr(are[n]) ** 2 + mpfr(aim[n]) ** 2)
                acc = an + r * acc
                out[n] = float(acc)
    return out


def rotation_identity_residual(z: complex, K: int) -> float:
    """max_k | z^k/|z|^k - (T_k(t) + i sigma U_{k-1}(t)) | over k = 0..K.

    t = Re(z)/|z| and sigma = Im(z)/|z|.  The powers, the scaling and the
    recurrences all run in working precision, so the residual measures
    their combined rounding; for |z| = 1 it stays within a small multiple
    of K*EPS.  Im(z) must be nonzero (the identity's imaginary factor
    degenerates on the real axis).
    """
    z = ensure_finite(z, "evaluation point")
    if z.imag == 0:
        raise ValueError("rotation identity needs Im(z) != 0")
    if K < 0:
        raise ValueError("K must be >= 0")
    x, y = z.real, z.imag
    r = math.hypot(x, y)
    # x/r may land half an ulp outside [-1, 1]; clamp for the recurrence
    t = min(1.0, max(-1.0, x / r))
    sigma = y / r
    pair = cheb_sequences(t, K)
    T = pair.T.tolist()
    U = pair.U.tolist()
    worst = 0.0
    wr, wi = 1.0, 0.0
    rp = 1.0
    for k in range(K + 1):
        er = wr / rp - T[k]
        ei = wi / rp - (sigma * U[k - 1] if k >= 1 else 0.0)
        d = math.hypot(er, ei)
        if d > worst:
            worst = d
        wr, wi = wr * x - wi * y, wr * y + wi * x
        rp *= r
    return worst


@dataclass
class BoundReport:
    """Audit of one observed Goertzel error against its proven bound."""

    g: np.ndarray
    A_N: float
    bound: float
    observed: float
    trace_bound_ok: Optional[bool] = None


def error_bound_report(
    poly: Polynomial,
    z: complex,
    observed_error: float,
    trace: Optional[GoertzelTrace] = None,
) -> BoundReport:
    """Compare an observed error with the quadratic growth bound.

    The certified inequality for Goertzel's scheme is

        |computed - exact| <= A_N * EPS * g_0,   A_N = 10 (N + 1)^2

    (the constant folds a per-step rounding factor of 5, which is known to
    be generous; the check is one-sided so that is safe).  When a trace is
    supplied, the intermediate magnitude bound |b_n| <= (N - n + 1) g_n is
    verified as well and reported in ``trace_bound_ok``.
    """
    g = majorant_sequence(poly, z)
    N = poly.degree
    A = 10.0 * (N + 1) ** 2
    ok = None
    if trace is not None:
        n = np.arange(1, N + 1)
        ok = bool(np.all(np.abs(trace.b) <= (N - n + 1) * g[1:]))
    return BoundReport(
        g=g,
        A_N=A,
        bound=A * EPS * float(g[0]),
        observed=float(observed_error),
        trace_bound_ok=ok,
    )


def forward_error_bound(algo: str, poly: Polynomial, z: complex, plan=None) -> float:
    """Absolute forward bound EPS * (A g_0 + Z |z| |w'(z)|) at one point.

    A and Z are the per-scheme growth constants, with c = 1 + sqrt(2) for
    complex data and c = 1 for all-real data:

        horner          A = (c + 1) N           Z = 0
        goertzel        A = 10 N^2              Z = 0
        pema-horner     A = p s (2c + 1)        Z = c
        pema-goertzel   A = p (10 s^2 + s c)    Z = c

    The split schemes trade coefficient-perturbation growth (A shrinks
    from order N to order p*sqrt-ish terms) for a small argument
    perturbation (Z = c instead of 0).  |w'(z)| is evaluated in working
    precision, which is plenty for a bound term of size EPS.
    """
    z = ensure_finite(z, "evaluation point")
    N = poly.degree
    c = CMUL_BOUND if (z.imag != 0 or not poly.is_real()) else 1.0
    if algo == "horner":
        A, Z = (c + 1.0) * N, 0.0
    elif algo == "goertzel":
        A, Z = 10.0 * N * N, 0.0
    elif algo in ("pema-horner", "pema-goertzel"):
        if plan is None:
            raise ValueError("the split schemes need their plan for the bound")
        s, p = plan.s, plan.p
        A = p * s * (2.0 * c + 1.0) if algo == "pema-horner" else p * (10.0 * s * s + s * c)
        Z = c
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    g0 = float(majorant_sequence(poly, z)[0])
    if Z == 0.0:
        return EPS * A * g0
    zwp = abs(z) * abs(horner(poly.derivative(), z).value)
    return EPS * (A * g0 + Z * zwp)
