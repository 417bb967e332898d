"""Ground-truth evaluation in extended precision, and the error metric.

The reference evaluator runs Horner's rule in MPFR arithmetic (via gmpy2)
at ``PRECISION_BITS`` bits, more than twice the 53-bit binary64
significand.  Promotion binary64 -> extended is exact; the single rounding
back to binary64 happens at the very end.  At this precision the
reference's own relative error stays below ``EPS**2 * N`` times the result
scale for every degree this library targets, which is negligible against
the working-precision errors it is used to measure.

``ExtendedComplex`` is gmpy2's ``mpc`` type: a pair of extended-precision
real components, accessible as ``.real``/``.imag``.
"""

from __future__ import annotations

import numbers

import gmpy2
import numpy as np

#: Extended working precision in bits, comfortably above the 106-bit
#: double-double floor (2 x 53).
PRECISION_BITS = 120

ExtendedComplex = gmpy2.mpc


def _context(precision_bits=None):
    return gmpy2.context(precision=precision_bits or PRECISION_BITS)


def to_extended(z) -> "gmpy2.mpc":
    """Exact promotion of a binary64 complex (or real) scalar."""
    with _context():
        return gmpy2.mpc(complex(z))


def to_complex(x) -> complex:
    """Round an extended value back to binary64, once per component."""
    return complex(x)


def _coefficient_array(poly) -> np.ndarray:
    coeffs = getattr(poly, "coeffs", poly)
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if arr.size == 0:
        raise ValueError("empty coefficient sequence")
    return arr


def reference_eval_many(poly, points, precision_bits=None) -> list[complex]:
    """Evaluate ``poly`` at several points by extended-precision Horner.

    Coefficients are promoted to extended precision once and reused for
    every point; each result is rounded to binary64 once per component.
    """
    arr = _coefficient_array(poly)
    with _context(precision_bits):
        mpc = gmpy2.mpc
        ce = [mpc(c) for c in arr.tolist()]
        out = []
        for z in points:
            ze = mpc(complex(z))
            w = ce[-1]
            for n in range(len(ce) - 2, -1, -1):
                w = ce[n] + ze * w
            out.append(complex(w))
    return out


def reference_eval(poly, z, precision_bits=None) -> complex:
    """Extended-precision value of the polynomial at one point."""
    return reference_eval_many(poly, [z], precision_bits)[0]


def relative_error(y, y_ref) -> float:
    """2-norm relative error ||y - y_ref|| / ||y_ref||.

    The squared magnitudes are accumulated in extended precision, so the
    metric itself adds no measurable noise.  Raises ValueError when the
    reference vector has zero norm.
    """
    ya = np.atleast_1d(np.asarray(y, dtype=np.complex128))
    ra = np.atleast_1d(np.asarray(y_ref, dtype=np.complex128))
    if ya.shape != ra.shape or ya.size == 0:
        raise ValueError("need two equal-length non-empty vectors")
    with _context():
        mpc = gmpy2.mpc
        num = gmpy2.mpfr(0)
        den = gmpy2.mpfr(0)
        for a, b in zip(ya.tolist(), ra.tolist()):
            num += gmpy2.norm(mpc(a) - mpc(b))
            den += gmpy2.norm(mpc(b))
        if den == 0:
            raise ValueError("reference vector has zero norm")
        return float(gmpy2.sqrt(num / den))


def exact_integer_eval(coeffs, z) -> tuple[int, int]:
    """Brute-force power sum over exact Gaussian integers.

    ``coeffs`` is a sequence of values with integral real/imaginary parts
    (ints, floats or complex); ``z`` likewise.  Arithmetic is done with
    Python integers, so the result is exact at any magnitude.  Returns the
    (real, imag) integer pair of sum a_n * z**n.
    """

    def gauss(v):
        if isinstance(v, numbers.Complex):
            re, im = v.real, v.imag
        else:
            re, im = v, 0
        ire, iim = int(re), int(im)
        if ire != re or iim != im:
            raise ValueError(f"non-integral value {v!r}")
        return ire, iim

    zr, zi = gauss(complex(z))
    sr = si = 0
    pr, pi = 1, 0
    for c in coeffs:
        ar, ai = gauss(c)
        sr += ar * pr - ai * pi
        si += ar * pi + ai * pr
        pr, pi = pr * zr - pi * zi, pr * zi + pi * zr
    return sr, si
