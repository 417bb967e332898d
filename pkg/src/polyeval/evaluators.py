"""Polynomial evaluation schemes: Horner, Goertzel, and block splitting.

Three ways to compute w(z) = sum_{n=0}^{N} a_n z^n:

* ``horner``   -- nested multiplication, w := a_n + z*w for n = N..0.
* ``goertzel`` -- division by the real quadratic (x - z)(x - conj(z)),
  which yields a three-term recurrence b_n := a_n + p*b_{n+1} + q*b_{n+2}
  with real p = 2*Re(z), q = -|z|^2, then w(z) = u + i*v with
  u = a_0 + Re(z)*b_1 + q*b_2 and v = Im(z)*b_1.
* ``pema``     -- divide and conquer: group the coefficients into radix-s
  blocks, evaluate each degree-(s-1) block with a base scheme (Horner or
  Goertzel), and repeat on the block results against z^s, z^(s^2), ...
  The rounding-error growth of the base scheme then applies to the small
  block degree instead of the full degree, which is what makes the scheme
  markedly more accurate for large N.

All loops inline the canonical componentwise arithmetic of
:mod:`polyeval.core` on local floats; results are bit-identical to
composing ``cmul``/``rcmul`` by hand.  Operation counts are accumulated in
bulk from the fixed loop shapes, matching per-operation counting exactly.

Counting convention: a degree-N Horner evaluation performs exactly N
complex multiplications.  The multiply into the zero-initialised
accumulator (which is exactly zero) is skipped, and skipped in the counts
as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import OpCounter, cmul, ensure_finite


class DegreeTooSmall(ValueError):
    """The Goertzel recurrence needs degree >= 2."""


class PlanMismatch(ValueError):
    """A split plan does not cover the polynomial it is applied to."""


class Polynomial:
    """Coefficients a_0..a_N (constant term first) of w(z) = sum a_n z^n.

    Coefficients are stored as a complex128 array; they must be finite and
    the sequence non-empty.  Instances are immutable by convention and may
    be shared freely between concurrent evaluations.
    """

    __slots__ = ("coeffs", "_parts")

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("need a non-empty 1-D coefficient sequence")
        if not (np.isfinite(arr.real).all() and np.isfinite(arr.imag).all()):
            raise ValueError("coefficients must be finite")
        self.coeffs = arr
        self._parts = None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_real(self) -> bool:
        return not self.coeffs.imag.any()

    def derivative(self) -> "Polynomial":
        """Coefficient sequence of w'(z), i.e. n*a_n for n = 1..N."""
        if self.degree == 0:
            return Polynomial([0.0])
        n = np.arange(1, len(self.coeffs))
        return Polynomial(self.coeffs[1:] * n)

    def parts(self):
        """Cached (real, imag) component lists for the evaluation kernels."""
        if self._parts is None:
            self._parts = (self.coeffs.real.tolist(), self.coeffs.imag.tolist())
        return self._parts

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"Polynomial(degree={self.degree})"


@dataclass
class PemaPlan:
    """Radix/depth schedule for the block-split evaluator.

    The polynomial is padded with exact zero coefficients up to degree
    s**p; padding does not change the value.
    """

    s: int
    p: int
    padded_degree: int
    original_degree: int

    def __post_init__(self):
        if self.s < 2 or self.p < 1:
            raise ValueError("need radix s >= 2 and depth p >= 1")
        if self.padded_degree != self.s**self.p:
            raise ValueError("padded_degree must equal s**p")
        if self.original_degree < 0 or self.padded_degree < self.original_degree:
            raise ValueError("padded degree cannot be below the original degree")

    @property
    def padding(self) -> int:
        return self.padded_degree - self.original_degree


@dataclass
class EvalOutcome:
    """Computed value plus the operation counts of this evaluation.

    ``stages`` is only populated when an evaluator is asked to keep its
    intermediate block coefficients (a verification aid).
    """

    value: complex
    counts: OpCounter
    stages: Optional[list] = field(default=None, repr=False)


@dataclass
class GoertzelTrace:
    """Every intermediate of one Goertzel evaluation.

    ``b[n-1]`` holds b_n for n = 1..N (the recurrence runs from b_N down
    to b_1).  ``u`` and ``v`` are complex because the coefficients may be;
    the evaluated value is u + i*v.
    """

    p_hat: float
    q_hat: float
    b: np.ndarray
    u: complex
    v: complex

    @property
    def value(self) -> complex:
        return complex(self.u.real - self.v.imag, self.u.imag + self.v.real)


def pema_plan(N: int, *, p: Optional[int] = None, s: Optional[int] = None) -> PemaPlan:
    """Choose the (s, p) split for a degree-N polynomial.

    Exactly one of ``p`` (fixed depth: the smallest radix s >= 2 with
    s**p >= N) or ``s`` (fixed radix: the smallest depth p >= 1 with
    s**p >= N) must be given.  The benchmark default is p = 2, i.e.
    s ~ sqrt(N).
    """
    if N < 0:
        raise ValueError("degree must be non-negative")
    if (p is None) == (s is None):
        raise ValueError("give exactly one of p= (fixed depth) or s= (fixed radix)")
    if p is not None:
        if p < 1:
            raise ValueError("depth p must be >= 1")
        r = max(2, round(N ** (1.0 / p)) if N > 0 else 2)
        while r**p < N:
            r += 1
        while r > 2 and (r - 1) ** p >= N:
            r -= 1
        return PemaPlan(s=r, p=p, padded_degree=r**p, original_degree=N)
    if s < 2:
        raise ValueError("radix s must be >= 2")
    d = 1
    while s**d < N:
        d += 1
    return PemaPlan(s=s, p=d, padded_degree=s**d, original_degree=N)


# ---------------------------------------------------------------------------
# kernels
#
# Each kernel evaluates sum_k c[lo+k] * z**k over the half-open coefficient
# range [lo, hi).  They are shared verbatim by the public evaluators and by
# the block loop of pema, so block evaluations are bit-identical to calling
# the public evaluator on the block.

def _horner_kernel(cre, cim, lo, hi, zr, zi):
    wr = cre[hi - 1]
    wi = cim[hi - 1]
    for n in range(hi - 2, lo - 1, -1):
        tr = zr * wr - zi * wi
        ti = zr * wi + zi * wr
        wr = cre[n] + tr
        wi = cim[n] + ti
    return wr, wi


def _goertzel_kernel(cre, cim, lo, hi, x, y):
    # requires degree hi - lo - 1 >= 2
    p = 2.0 * x
    q = -(x * x + y * y)
    br1 = cre[hi - 1]
    bi1 = cim[hi - 1]
    br2 = 0.0
    bi2 = 0.0
    for n in range(hi - 2, lo, -1):
        br = (cre[n] + p * br1) + q * br2
        bi = (cim[n] + p * bi1) + q * bi2
        br2 = br1
        bi2 = bi1
        br1 = br
        bi1 = bi
    ur = (cre[lo] + x * br1) + q * br2
    ui = (cim[lo] + x * bi1) + q * bi2
    vr = y * br1
    vi = y * bi1
    return ur - vi, ui + vr


def _goertzel_or_direct(cre, cim, lo, hi, x, y):
    # degree < 2 falls back to the direct formula (a_0, or a_0 + a_1*z)
    d = hi - lo - 1
    if d >= 2:
        return _goertzel_kernel(cre, cim, lo, hi, x, y)
    if d == 1:
        ar = cre[lo + 1]
        ai = cim[lo + 1]
        tr = ar * x - ai * y
        ti = ar * y + ai * x
        return cre[lo] + tr, cim[lo] + ti
    return cre[lo], cim[lo]


def _goertzel_unit_kernel(cre, lo, hi, x, y):
    # real coefficients on the unit circle: q = -1 exactly, all b_n real
    p = 2.0 * x
    br1 = cre[hi - 1]
    br2 = 0.0
    for n in range(hi - 2, lo, -1):
        br = (cre[n] + p * br1) - br2
        br2 = br1
        br1 = br
    u = (cre[lo] + x * br1) - br2
    v = y * br1
    return u, v


def _horner_cost(degree):
    return degree, 4 * degree, 4 * degree  # complex_mults, real_mults, real_adds


def _goertzel_cost(degree):
    if degree >= 2:
        return 0, 4 * degree + 5, 4 * degree + 3
    if degree == 1:
        return 1, 4, 4
    return 0, 0, 0


def _tally(ctr, cost):
    cm, rm, ra = cost
    ctr.complex_mults += cm
    ctr.real_mults += rm
    ctr.real_adds += ra


# ---------------------------------------------------------------------------
# public evaluators

def horner(poly: Polynomial, z: complex, ctr: Optional[OpCounter] = None) -> EvalOutcome:
    """Evaluate by Horner's rule; exactly N complex multiplications."""
    ctr = OpCounter() if ctr is None else ctr
    z = ensure_finite(z, "evaluation point")
    cre, cim = poly.parts()
    wr, wi = _horner_kernel(cre, cim, 0, len(cre), z.real, z.imag)
    _tally(ctr, _horner_cost(poly.degree))
    return EvalOutcome(complex(wr, wi), ctr)


def goertzel(
    poly: Polynomial,
    z: complex,
    ctr: Optional[OpCounter] = None,
    *,
    real_unit_fast_path: bool = False,
) -> EvalOutcome:
    """Evaluate by Goertzel's recurrence.

    Degrees 0 and 1 cannot feed the three-term recurrence and are handled
    by the documented direct fallback (a_0, or a_0 + a_1*z with one
    complex multiplication).

    ``real_unit_fast_path`` enables the reduced-cost specialisation for
    real coefficients and |z| = 1, where every b_n is real and q is taken
    as exactly -1.  The caller asserts |z| = 1; real coefficients are
    checked.  Off by default.
    """
    ctr = OpCounter() if ctr is None else ctr
    z = ensure_finite(z, "evaluation point")
    cre, cim = poly.parts()
    x, y = z.real, z.imag
    if real_unit_fast_path:
        if not poly.is_real():
            raise ValueError("the unit-circle fast path requires real coefficients")
        if poly.degree < 2:
            wr, wi = _goertzel_or_direct(cre, cim, 0, len(cre), x, y)
            _tally(ctr, _goertzel_cost(poly.degree))
            return EvalOutcome(complex(wr, wi), ctr)
        u, v = _goertzel_unit_kernel(cre, 0, len(cre), x, y)
        d = poly.degree
        _tally(ctr, (0, d + 2, 2 * d))
        return EvalOutcome(complex(u, v), ctr)
    wr, wi = _goertzel_or_direct(cre, cim, 0, len(cre), x, y)
    _tally(ctr, _goertzel_cost(poly.degree))
    return EvalOutcome(complex(wr, wi), ctr)


def goertzel_traced(poly: Polynomial, z: complex) -> GoertzelTrace:
    """Goertzel's recurrence keeping every b_n, for oracle comparison.

    Runs the identical arithmetic as :func:`goertzel`; the returned trace
    satisfies ``trace.value == goertzel(poly, z).value`` bit for bit.
    """
    z = ensure_finite(z, "evaluation point")
    N = poly.degree
    if N < 2:
        raise DegreeTooSmall(f"traced recurrence needs degree >= 2, got {N}")
    cre, cim = poly.parts()
    x, y = z.real, z.imag
    p = 2.0 * x
    q = -(x * x + y * y)
    br = np.empty(N)
    bi = np.empty(N)
    br1 = cre[N]
    bi1 = cim[N]
    br2 = 0.0
    bi2 = 0.0
    br[N - 1] = br1
    bi[N - 1] = bi1
    for n in range(N - 1, 0, -1):
        r = (cre[n] + p * br1) + q * br2
        i = (cim[n] + p * bi1) + q * bi2
        br2 = br1
        bi2 = bi1
        br1 = r
        bi1 = i
        br[n - 1] = r
        bi[n - 1] = i
    ur = (cre[0] + x * br1) + q * br2
    ui = (cim[0] + x * bi1) + q * bi2
    return GoertzelTrace(
        p_hat=p,
        q_hat=q,
        b=br + 1j * bi,
        u=complex(ur, ui),
        v=complex(y * br1, y * bi1),
    )


def natural_power(base: complex, s: int, ctr: Optional[OpCounter] = None) -> complex:
    """base**s by the consecutive products base, base^2, ..., base^s.

    Exactly s - 1 complex multiplications; deliberately not binary
    powering, so the rounding error grows linearly and predictably in s.
    """
    if s < 1:
        raise ValueError("exponent must be >= 1")
    ctr = OpCounter() if ctr is None else ctr
    base = ensure_finite(base, "base")
    w = base
    for _ in range(s - 1):
        w = cmul(w, base, ctr)
    return w


def pema(
    poly: Polynomial,
    z: complex,
    plan: PemaPlan,
    base: str = "horner",
    ctr: Optional[OpCounter] = None,
    *,
    keep_stages: bool = False,
) -> EvalOutcome:
    """Divide-and-conquer evaluation over the plan's radix-s blocks.

    Stage m maps the stage-(m-1) coefficients onto blocks of s via the
    base scheme at the point z_{m-1}, carries the top coefficient through
    unchanged, and advances the point to z_m = z_{m-1}**s by consecutive
    powers.  After p - 1 stages the remaining degree-s polynomial is
    evaluated by the base scheme at z_{p-1}.  With depth p = 1 this is
    exactly the base scheme applied to the (padded) polynomial.

    With base Horner and N = s**p, the total complex-multiplication count
    is exactly N + (s - 1)(p - 1).

    ``keep_stages`` records each stage's coefficient list on the outcome
    for verification against the exact block sums.
    """
    ctr = OpCounter() if ctr is None else ctr
    z = ensure_finite(z, "evaluation point")
    if plan.padded_degree < poly.degree:
        raise PlanMismatch(
            f"plan covers degree {plan.padded_degree} < polynomial degree {poly.degree}"
        )
    if base == "horner":
        block = _horner_kernel
        cost = _horner_cost
    elif base == "goertzel":
        block = _goertzel_or_direct
        cost = _goertzel_cost
    else:
        raise ValueError(f"unknown base evaluator {base!r}")

    s, p = plan.s, plan.p
    pad = plan.padded_degree - poly.degree
    cre0, cim0 = poly.parts()
    cre = cre0 + [0.0] * pad
    cim = cim0 + [0.0] * pad

    zr, zi = z.real, z.imag
    stages = [] if keep_stages else None
    cm = rm = ra = 0
    for m in range(1, p):
        blocks = s ** (p - m)
        nre = [0.0] * (blocks + 1)
        nim = [0.0] * (blocks + 1)
        for j in range(blocks):
            lo = j * s
            wr, wi = block(cre, cim, lo, lo + s, zr, zi)
            nre[j] = wr
            nim[j] = wi
        # carry the top coefficient through the stage unchanged
        nre[blocks] = cre[blocks * s]
        nim[blocks] = cim[blocks * s]
        bc, bm, ba = cost(s - 1)
        cm += blocks * bc
        rm += blocks * bm
        ra += blocks * ba
        # z_m = z_{m-1}**s by consecutive powers: s - 1 complex products
        wr, wi = zr, zi
        for _ in range(s - 1):
            wr, wi = wr * zr - wi * zi, wr * zi + wi * zr
        cm += s - 1
        rm += 4 * (s - 1)
        ra += 2 * (s - 1)
        zr, zi = wr, wi
        cre, cim = nre, nim
        if keep_stages:
            stages.append([complex(r, i) for r, i in zip(nre, nim)])

    wr, wi = block(cre, cim, 0, len(cre), zr, zi)
    bc, bm, ba = cost(len(cre) - 1)
    cm += bc
    rm += bm
    ra += ba
    ctr.complex_mults += cm
    ctr.real_mults += rm
    ctr.real_adds += ra
    return EvalOutcome(complex(wr, wi), ctr, stages=stages)
