"""Working-precision complex arithmetic with a fixed operation order.

Scalar values throughout the library are plain Python ``complex`` numbers
(IEEE binary64 components).  The counted primitives below expand every
complex operation into individually rounded binary64 operations in one
canonical order: no fused multiply-add, no reassociation.  That makes all
evaluations bit-reproducible and keeps the rounding behaviour inside the
standard complex error model

    fl(x + y) = (x + y)(1 + delta),   |delta| <= EPS,
    fl(x * y) = (x * y)(1 + eta),     |eta|  <= c * EPS,

with c = 1 when one factor is real and c = 1 + sqrt(2) for a fully complex
product computed componentwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Machine epsilon of binary64 (2**-52 ~ 2.22e-16).  Every error bound in
#: this library is expressed as a multiple of EPS.
EPS = float(np.finfo(np.float64).eps)

#: Rounding constant for a componentwise complex*complex product.
CMUL_BOUND = 1.0 + math.sqrt(2.0)


@dataclass
class OpCounter:
    """Tally of real/complex operations performed by an evaluation.

    Convention: a complex*complex product costs 4 real multiplications,
    2 real additions and 1 complex multiplication; a real*complex product
    costs 2 real multiplications; a complex addition costs 2 real
    additions.  Counts only ever increase while an evaluation runs.
    Evaluators may add their (fixed, shape-determined) totals in bulk; the
    totals are identical to per-operation increments.

    A counter may be reused across sequential evaluations to accumulate
    totals, but must not be shared by evaluations running concurrently.
    """

    real_mults: int = 0
    real_adds: int = 0
    complex_mults: int = 0

    def __post_init__(self):
        if min(self.real_mults, self.real_adds, self.complex_mults) < 0:
            raise ValueError("operation counts must be non-negative")


def cmul(a: complex, b: complex, ctr: OpCounter) -> complex:
    """Complex*complex product in the canonical component order.

    (x1 + i*y1)(x2 + i*y2) = (x1*x2 - y1*y2) + i*(x1*y2 + y1*x2), evaluated
    as exactly four real multiplications and two real additions, each
    rounded separately.  Finite inputs are a caller guarantee (checked at
    the library's API boundaries, not here).
    """
    re = a.real * b.real - a.imag * b.imag
    im = a.real * b.imag + a.imag * b.real
    ctr.real_mults += 4
    ctr.real_adds += 2
    ctr.complex_mults += 1
    return complex(re, im)


def rcmul(r: float, b: complex, ctr: OpCounter) -> complex:
    """Real*complex product: componentwise scaling, two real multiplications."""
    ctr.real_mults += 2
    return complex(r * b.real, r * b.imag)


def ensure_finite(z: complex, what: str = "value") -> complex:
    """Reject NaN/Inf at API boundaries; returns the value as ``complex``."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z
