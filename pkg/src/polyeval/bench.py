"""Coefficient families, unit-circle points, and the error-growth benchmark.

The benchmark evaluates each scheme over a fixed set of points on the
unit circle, compares against the extended-precision reference, and
reports one aggregate relative error per (family, degree, algorithm),
plus timing and the complex-multiplication count of a single evaluation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .evaluators import Polynomial, goertzel, horner, pema, pema_plan
from .reference import reference_eval_many, relative_error

#: Algorithm names accepted everywhere (CLI, benchmark, CSV).
ALGORITHMS = ("horner", "goertzel", "pema-horner", "pema-goertzel")

#: Point indices used by the benchmark (filtered to <= N for small N).
DEFAULT_POINT_INDICES = (0, 1, 9, 99, 199, 256, 299, 399, 499, 699)

CSV_HEADER = "family,N,algo,s,p,error,elapsed_s,complex_mults"


def evaluate(poly, z, algo, plan=None, ctr=None):
    """Dispatch to an evaluator by its public name.

    The split schemes default to the depth-2 plan (radix ~ sqrt(N)) when
    no plan is supplied.
    """
    if algo == "horner":
        return horner(poly, z, ctr)
    if algo == "goertzel":
        return goertzel(poly, z, ctr)
    if algo in ("pema-horner", "pema-goertzel"):
        if plan is None:
            plan = pema_plan(poly.degree, p=2)
        return pema(poly, z, plan, base=algo.split("-", 1)[1], ctr=ctr)
    raise ValueError(f"unknown algorithm {algo!r}")


def parse_coefficient_file(path) -> np.ndarray:
    """Read one coefficient per line: ``<re>`` or ``<re> <im>``, a_0 first.

    Blank lines and lines starting with ``#`` are ignored.
    """
    coeffs = []
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            try:
                if len(parts) == 1:
                    coeffs.append(complex(float(parts[0]), 0.0))
                elif len(parts) == 2:
                    coeffs.append(complex(float(parts[0]), float(parts[1])))
                else:
                    raise ValueError
            except ValueError:
                raise ValueError(
                    f"{path}:{ln}: expected one or two real literals, got {text!r}"
                ) from None
    if not coeffs:
        raise ValueError(f"{path}: no coefficients found")
    return np.array(coeffs, dtype=np.complex128)


@dataclass(frozen=True)
class CoefficientFamily:
    """Named coefficient generators for the benchmark.

    * ``random`` -- independent uniform [0, 1) draws from a seeded PCG64
      generator; the same seed always yields the same coefficients.
    * ``trig``   -- a_k = sin t + sin 100t + sin 1000t at t = 0.001 k.
    * ``sqrt``   -- a_k = sqrt(k).
    * ``file``   -- fixed coefficients read from ``path``.
    """

    kind: str
    seed: int = 0
    path: Optional[str] = None

    @property
    def name(self) -> str:
        return self.kind

    def coefficients(self, N: int) -> np.ndarray:
        if N < 0:
            raise ValueError("degree must be non-negative")
        if self.kind == "random":
            return np.random.default_rng(self.seed).random(N + 1)
        if self.kind == "trig":
            t = 0.001 * np.arange(N + 1)
            return np.sin(t) + np.sin(100.0 * t) + np.sin(1000.0 * t)
        if self.kind == "sqrt":
            return np.sqrt(np.arange(N + 1, dtype=np.float64))
        if self.kind == "file":
            arr = parse_coefficient_file(self.path)
            if len(arr) != N + 1:
                raise ValueError(
                    f"{self.path} holds degree {len(arr) - 1}, not the requested {N}"
                )
            return arr
        raise ValueError(f"unknown family kind {self.kind!r}")


def default_indices(N: int) -> list:
    """The standard ten-point index set, filtered to indices <= N."""
    return [k for k in DEFAULT_POINT_INDICES if k <= N]


def unit_circle_points(N: int, indices: Sequence[int]) -> list:
    """z_k = cos(k t) - i sin(k t) with t = 2 pi / (N + 1), per-index direct call.

    Each point comes from its own cos/sin evaluation; there is no
    recurrence from point to point, so no error accumulates across k.
    """
    t = 2.0 * math.pi / (N + 1)
    pts = []
    for k in indices:
        if not 0 <= k <= N:
            raise ValueError(f"point index {k} outside 0..{N}")
        a = k * t
        pts.append(complex(math.cos(a), -math.sin(a)))
    return pts


@dataclass
class ExperimentRecord:
    """One benchmark row: aggregate error of one scheme at one degree.

    ``complex_mults`` is the count for a single point evaluation (the
    count is shape-determined, so it is the same at every point); ``s``
    and ``p`` are None for the non-split schemes.
    """

    family: str
    N: int
    algo: str
    s: Optional[int]
    p: Optional[int]
    error: float
    elapsed_s: float
    complex_mults: int


def run_benchmark(
    family: CoefficientFamily,
    degrees: Sequence[int],
    algos: Sequence[str] = ALGORITHMS,
    plan_p: int = 2,
) -> list:
    """Evaluate every (degree, algorithm) cell of the error benchmark.

    For each degree: generate the family's coefficients, evaluate at the
    default unit-circle points with each scheme and with the reference,
    and record the 2-norm relative error over the point set.  Output is
    sorted by (family, N, algo); given the same family seed the records
    are fully deterministic (except the elapsed timings).
    """
    if not degrees:
        raise ValueError("need at least one degree")
    for a in algos:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    records = []
    for N in sorted({int(d) for d in degrees}):
        poly = Polynomial(family.coefficients(N))
        pts = unit_circle_points(N, default_indices(N))
        yref = reference_eval_many(poly, pts)
        plan = pema_plan(N, p=plan_p)
        for algo in algos:
            t0 = time.perf_counter()
            ys = []
            counts = None
            for z in pts:
                out = evaluate(poly, z, algo, plan)
                if counts is None:
                    counts = out.counts
                ys.append(out.value)
            elapsed = time.perf_counter() - t0
            err = relative_error(ys, yref)
            split = algo.startswith("pema")
            records.append(
                ExperimentRecord(
                    family=family.name,
                    N=N,
                    algo=algo,
                    s=plan.s if split else None,
                    p=plan.p if split else None,
                    error=err,
                    elapsed_s=elapsed,
                    complex_mults=counts.complex_mults,
                )
            )
    records.sort(key=lambda r: (r.family, r.N, r.algo))
    return records


def emit_csv(records: Sequence[ExperimentRecord], destination) -> None:
    """Write records under the exact header ``family,N,algo,s,p,error,elapsed_s,complex_mults``.

    Errors use scientific notation with six significant digits; s and p
    are blank for the non-split schemes.  Output is plain ASCII with
    newline-terminated rows.
    """
    if not records:
        raise ValueError("no records to write")
    with open(destination, "w", encoding="ascii", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in records:
            s = "" if r.s is None else str(r.s)
            p = "" if r.p is None else str(r.p)
            fh.write(
                f"{r.family},{r.N},{r.algo},{s},{p},"
                f"{r.error:.5e},{r.elapsed_s:.6f},{r.complex_mults}\n"
            )
