"""Inverse map: recover the canonical quartic from an admissible (u, v, w)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .characterization import (MembershipVerdict, R_TOL, eval_d, eval_k,
                               is_ratio_vector, _point)
from .errors import FormulaDegenerate, NotARatioVector
from .fields import Surd, collapse, is_exact, to_float
from .polynomial import table
from .quartic import (DEFAULT_TOL, CanonicalQuartic, derivative_at,
                      forward_ratio_vector)


@dataclass(frozen=True)
class ReconstructionResult:
    r: object
    s: object
    coefficients: tuple
    critical_points: tuple
    s_alternative: object = None
    off_variety: bool = False

    @property
    def quartic(self) -> CanonicalQuartic:
        return CanonicalQuartic(self.r, self.s)


def _closed_forms(u, v, w):
    k = eval_k(u, v, w)
    five_b = -4 * v * w + 4 * v * w * u + 1
    r_den = 2 * v * (1 - 2 * u) * (1 - w)
    s_den = five_b * v * (1 - 2 * u)
    if r_den == 0:
        raise FormulaDegenerate(f"2v(1-2u)(1-w) vanishes at ({u}, {v}, {w})")
    if s_den == 0:
        raise FormulaDegenerate(f"(-4vw+4vwu+1)v(1-2u) vanishes at ({u}, {v}, {w})")
    r = collapse(k / r_den)
    s = collapse(2 * (1 - u) * v * k / s_den)
    d = eval_d(u, v, w)
    s_alt = None if d == 0 else collapse(4 * v * (4 * u - 1) * (1 - u) * (1 - w) / d)
    return r, s, s_alt


def reconstruct(u, v, w, unchecked: bool = False, R_tol=R_TOL) -> ReconstructionResult:
    """Unique ``0 < r < s`` such that ``(x+1)x(x-r)(x-s)`` has ratio vector (u, v, w).

    ``r = k / (2v(1-2u)(1-w))`` and ``s = 2(1-u)v k / ((-4vw+4vwu+1) v (1-2u))``.
    With ``unchecked=True`` the membership test is skipped and the formulas
    are applied anyway; the result is then flagged ``off_variety`` unless the
    point happens to be a ratio vector.
    """
    u, v, w, exact = _point(u, v, w)
    verdict = is_ratio_vector(u, v, w, R_tol=R_tol)
    if not verdict.is_ratio_vector and not unchecked:
        raise NotARatioVector(f"({u}, {v}, {w}) is not a ratio vector "
                              f"(region {verdict.region}, R = {verdict.R_value})")
    r, s, s_alt = _closed_forms(u, v, w)
    crits = (collapse(u - 1), collapse(r * v), collapse((s - r) * w + r))
    coeffs = (1, collapse(1 - r - s), collapse(r * s - r - s), collapse(r * s), 0)
    return ReconstructionResult(r, s, coeffs, crits, s_alt,
                                off_variety=not verdict.is_ratio_vector)


def quadratic_in_w(u, v) -> tuple:
    """Coefficients ``(A, B, C)`` with ``R(u, v, w) = A w^2 + B w + C``."""
    u, v, _, _ = _point(u, v, 0)
    parts = table("R").collect("w")
    out = []
    for e in (2, 1, 0):
        poly = parts.get(e)
        out.append(collapse(poly.evaluate(u=u, v=v, horner="v")) if poly is not None else 0)
    return tuple(out)


def solve_w(u, v, R_tol=R_TOL) -> List[Tuple[object, MembershipVerdict]]:
    """All real ``w`` with ``R(u, v, w) = 0``, each with its membership verdict.

    Rational ``u, v`` give exact surds; float inputs give floats. Roots are
    returned in increasing order.
    """
    u, v, _, exact = _point(u, v, 0)
    A, B, C = quadratic_in_w(u, v)
    if A == 0:
        if B == 0:
            return []
        roots = [collapse(-C / B)]
    else:
        disc = B * B - 4 * A * C
        if disc < 0:
            return []
        if exact:
            sq = Surd.sqrt(disc)
        else:
            sq = disc ** 0.5
        roots = sorted({collapse((-B - sq) / (2 * A)), collapse((-B + sq) / (2 * A))})
    return [(w, is_ratio_vector(u, v, w, R_tol=R_tol)) for w in roots]


@dataclass(frozen=True)
class LineFamilyResult:
    point: tuple
    verdict: MembershipVerdict
    reconstruction: Optional[ReconstructionResult]
    k_formula: object


def line_family(C) -> LineFamilyResult:
    """The point ``(C, 1/2, 1 - C)`` on the family of lines inside the surface."""
    C = collapse(C)
    half = Fraction(1, 2) if is_exact(C) else 0.5
    point = (C, half, collapse(1 - C))
    verdict = is_ratio_vector(*point)
    rec = reconstruct(*point) if verdict.is_ratio_vector else None
    return LineFamilyResult(point, verdict, rec, collapse(C * (-1 + 4 * C - 2 * C * C)))


@dataclass(frozen=True)
class RoundTripReport:
    reconstruction: ReconstructionResult
    forward: tuple
    deviation: tuple
    derivative_residuals: tuple
    exact: bool
    diagnostics: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def max_deviation(self):
        return max(abs(to_float(d)) for d in self.deviation)

    @property
    def critical_points_exact(self) -> bool:
        return self.exact and all(x == 0 for x in self.derivative_residuals)


def round_trip(u, v, w, tol=DEFAULT_TOL, R_tol=R_TOL) -> RoundTripReport:
    """Reconstruct, run the forward map on ``(-1, 0, r, s)``, and compare.

    In exact arithmetic the predicted critical points ``u - 1``, ``r v`` and
    ``(s - r) w + r`` are also checked to be zeros of ``p'``; when they are,
    and they interlace the roots, they are the critical points and the
    forward ratio vector equals ``(u, v, w)`` exactly.
    """
    u, v, w, exact = _point(u, v, w)
    rec = reconstruct(u, v, w, R_tol=R_tol)
    roots = CanonicalQuartic(rec.r, rec.s).roots()
    residuals = tuple(collapse(derivative_at(roots, x)) for x in rec.critical_points)
    diagnostics = []
    rs = tuple(roots)
    interlaced = all(rs[i] < rec.critical_points[i] < rs[i + 1] for i in range(3))
    if exact and interlaced and all(x == 0 for x in residuals):
        forward = (u, v, w)
        # certified through p'(x_k) = 0 and interlacing
        diagnostics.append("critical points certified exactly by p'(x) = 0")
        rv = forward_ratio_vector(roots, tol)
        if rv.exact:
            forward = rv.as_tuple()
        else:
            gap = max(abs(to_float(a) - to_float(b)) for a, b in zip(rv, (u, v, w)))
            if gap > to_float(rv.error_bound):
                diagnostics.append("bisection enclosure disagrees with the exact check")
    else:
        forward = forward_ratio_vector(roots, tol).as_tuple()
        if exact and not interlaced:
            diagnostics.append("predicted critical points do not interlace the roots")
    deviation = tuple(collapse(a - b) if exact and is_exact(a) else to_float(a) - to_float(b)
                      for a, b in zip(forward, (u, v, w)))
    return RoundTripReport(rec, tuple(forward), deviation, residuals, exact, tuple(diagnostics))
