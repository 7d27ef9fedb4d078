"""Roots-side computations for quartics with four distinct real roots."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Tuple

from .errors import DegenerateRoots, NoConvergence
from .fields import Surd, collapse, is_exact, sign

DEFAULT_TOL = 1e-12
MIN_RELATIVE_GAP = 1e-9
MAX_BISECTIONS = 200
# largest integer leading coefficient for which rational-root recovery is tried
_MAX_LEADING_BITS = 96


@dataclass(frozen=True)
class QuarticRoots:
    r1: object
    r2: object
    r3: object
    r4: object

    def __post_init__(self):
        for name in ("r1", "r2", "r3", "r4"):
            object.__setattr__(self, name, collapse(getattr(self, name)))
        rs = self.as_tuple()
        if not all(a < b for a, b in zip(rs, rs[1:])):
            raise DegenerateRoots(f"roots must be strictly increasing, got {rs}")
        if not self.exact:
            span = float(rs[3]) - float(rs[0])
            for a, b in zip(rs, rs[1:]):
                if float(b) - float(a) < MIN_RELATIVE_GAP * span:
                    raise DegenerateRoots(f"root gap {float(b) - float(a):g} below "
                                          f"{MIN_RELATIVE_GAP:g} of the root span")

    @classmethod
    def of(cls, values: Sequence) -> QuarticRoots:
        if len(values) != 4:
            raise DegenerateRoots(f"a quartic needs exactly 4 roots, got {len(values)}")
        values = [collapse(x) for x in values]
        if not all(is_exact(x) for x in values):
            values = [float(x) for x in values]
        return cls(*values)

    def as_tuple(self) -> tuple:
        return (self.r1, self.r2, self.r3, self.r4)

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for x in self.as_tuple())

    def __iter__(self):
        return iter(self.as_tuple())

    def reflected(self) -> QuarticRoots:
        return QuarticRoots(-self.r4, -self.r3, -self.r2, -self.r1)


@dataclass(frozen=True)
class CanonicalQuartic:
    """``p(x) = (x + 1) x (x - r)(x - s)`` with ``0 < r < s``."""

    r: object
    s: object

    def __post_init__(self):
        object.__setattr__(self, "r", collapse(self.r))
        object.__setattr__(self, "s", collapse(self.s))
        if not 0 < self.r < self.s:
            raise DegenerateRoots(f"canonical quartic needs 0 < r < s, got r={self.r}, s={self.s}")

    def roots(self) -> QuarticRoots:
        zero = 0.0 if isinstance(self.r, float) else Fraction(0)
        return QuarticRoots(zero - 1, zero, self.r, self.s)

    def coefficients(self) -> tuple:
        """Monic coefficients, highest degree first."""
        r, s = self.r, self.s
        return (1, 1 - r - s, r * s - r - s, r * s, 0)


@dataclass(frozen=True)
class AffineMap:
    """Increasing affine change of variable ``x -> scale*x + shift``."""

    scale: object
    shift: object

    def __call__(self, x):
        return self.scale * x + self.shift


@dataclass(frozen=True)
class CriticalPoints:
    x1: object
    x2: object
    x3: object
    # 0 when the points are exact; otherwise the widest certified bracket
    certified_interval_width: object = 0

    def as_tuple(self) -> tuple:
        return (self.x1, self.x2, self.x3)

    def __iter__(self):
        return iter(self.as_tuple())


@dataclass(frozen=True)
class RatioVector:
    u: object
    v: object
    w: object
    # componentwise bound on |reported - true|; 0 for exact values
    error_bound: object = 0

    def as_tuple(self) -> tuple:
        return (self.u, self.v, self.w)

    def __iter__(self):
        return iter(self.as_tuple())

    @property
    def exact(self) -> bool:
        return self.error_bound == 0 and all(is_exact(x) for x in self.as_tuple())


def normalize_roots(roots: QuarticRoots) -> Tuple[CanonicalQuartic, AffineMap]:
    """Move the roots to ``(-1, 0, r, s)`` by an increasing affine map."""
    if not isinstance(roots, QuarticRoots):
        roots = QuarticRoots.of(roots)
    r1, r2, r3, r4 = roots
    gap = r2 - r1
    t = AffineMap(collapse(1 / gap), collapse(-r2 / gap))
    return CanonicalQuartic(collapse(t(r3)), collapse(t(r4))), t


def derivative_at(roots, x):
    """``p'(x)`` for the monic quartic with the given roots (product form)."""
    rs = tuple(roots)
    total = 0
    for i in range(4):
        term = 1
        for j in range(4):
            if j != i:
                term = term * (x - rs[j])
        total = total + term
    return total


def elementary_symmetric(values: Sequence) -> list:
    """``[e_1, ..., e_n]`` of the given values."""
    e = [1]
    for x in values:
        e = [1] + [e[j] + x * e[j - 1] for j in range(1, len(e))] + [x * e[-1]]
    return e[1:]


def derivative_coefficients(roots) -> tuple:
    """Coefficients of ``p'`` highest degree first: ``4x^3 - 3e1 x^2 + 2e2 x - e3``."""
    e1, e2, e3, _ = elementary_symmetric(tuple(roots))
    return (4, -3 * e1, 2 * e2, -e3)


def _bisect(roots, k: int, tol, exact: bool):
    """Shrink the bracket ``(r_k, r_{k+1})`` around the root of ``p'`` inside it."""
    rs = tuple(roots)
    lo, hi = rs[k], rs[k + 1]
    width = hi - lo
    target = width * (Fraction(tol) if exact else tol)
    left_sign = -1 if k % 2 == 0 else 1  # p'(r1) < 0, p'(r2) > 0, p'(r3) < 0
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= target:
            return lo, hi
        mid = (lo + hi) / 2
        if not exact and (mid <= lo or mid >= hi):
            return lo, hi
        sg = sign(derivative_at(rs, mid))
        if sg == 0:
            return mid, mid
        if sg == left_sign:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(f"bisection on interval {k + 1} did not reach tolerance "
                        f"after {MAX_BISECTIONS} steps")


def _rational_critical_points(roots) -> tuple | None:
    """Closed-form critical points when ``p'`` has a rational root.

    A rational root ``a/b`` of the primitive integer cubic has ``b`` dividing
    the leading coefficient ``L``; once a bracket is narrower than
    ``1/(2 L^2)`` the best approximation with denominator at most ``L`` is the
    only candidate, and it is checked exactly.
    """
    coeffs = [Fraction(c) for c in derivative_coefficients(roots)]
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    lead = abs(ints[0])
    if lead.bit_length() > _MAX_LEADING_BITS:
        return None
    limit = Fraction(1, 2 * lead * lead)
    rs = tuple(roots)
    for k in range(3):
        lo, hi = rs[k], rs[k + 1]
        left_sign = -1 if k % 2 == 0 else 1
        found = None
        for _ in range(4 * _MAX_LEADING_BITS + 64):
            if hi - lo < limit:
                break
            mid = (lo + hi) / 2
            sg = sign(derivative_at(rs, mid))
            if sg == 0:
                found = mid
                break
            if sg == left_sign:
                lo = mid
            else:
                hi = mid
        if found is None:
            cand = ((lo + hi) / 2).limit_denominator(lead)
            if lo <= cand <= hi and derivative_at(rs, cand) == 0:
                found = cand
        if found is not None:
            return _deflate(coeffs, found)
    return None


def _deflate(coeffs, root) -> tuple:
    a3, a2, a1, _ = coeffs
    # p'(x) = (x - root) * (a3 x^2 + b1 x + b0)
    b1 = a2 + a3 * root
    b0 = a1 + b1 * root
    disc = b1 * b1 - 4 * a3 * b0
    sq = Surd.sqrt(disc)
    pair = [collapse((-b1 - sq) / (2 * a3)), collapse((-b1 + sq) / (2 * a3))]
    return tuple(sorted([root] + pair))


def critical_points(roots, tol=DEFAULT_TOL) -> CriticalPoints:
    """The three zeros of ``p'``, one in each gap between consecutive roots.

    Float roots are bracketed by bisection until each bracket is at most
    ``tol`` times its root gap. Rational roots first try an exact closed form
    (a rational zero of ``p'`` plus the quadratic cofactor); failing that,
    and for surd roots, bisection runs in exact arithmetic and the result
    carries the certified bracket width.
    """
    if not isinstance(roots, QuarticRoots):
        roots = QuarticRoots.of(roots)
    if tol <= 0:
        raise ValueError("tol must be positive")
    exact = roots.exact
    if exact and all(isinstance(collapse(x), Fraction) for x in roots):
        closed = _rational_critical_points(tuple(collapse(x) for x in roots))
        if closed is not None:
            return CriticalPoints(*closed, certified_interval_width=0)
    points, width = [], 0
    for k in range(3):
        lo, hi = _bisect(roots, k, tol, exact)
        points.append(collapse((lo + hi) / 2) if exact else (lo + hi) / 2)
        width = max(width, collapse(hi - lo) if exact else hi - lo)
    return CriticalPoints(*points, certified_interval_width=width)


def ratios_from_critical_points(roots, crits: CriticalPoints) -> RatioVector:
    rs = tuple(roots)
    xs = crits.as_tuple()
    sig = [collapse((xs[k] - rs[k]) / (rs[k + 1] - rs[k])) for k in range(3)]
    err = 0
    if crits.certified_interval_width:
        # midpoint of a bracket is within half its width of the true point
        err = max(collapse(crits.certified_interval_width / (2 * (rs[k + 1] - rs[k])))
                  for k in range(3))
    return RatioVector(*sig, error_bound=err)


def forward_ratio_vector(roots, tol=DEFAULT_TOL) -> RatioVector:
    """Ratio vector ``((x_k - r_k) / (r_{k+1} - r_k))_{k=1..3}`` of the roots."""
    if not isinstance(roots, QuarticRoots):
        roots = QuarticRoots.of(roots)
    return ratios_from_critical_points(roots, critical_points(roots, tol))


def symmetric_check(roots, crits, tol=None) -> tuple:
    """Residuals ``|E_j(roots) - E_j(crits)|`` for ``j = 1, 2, 3``.

    ``E_j`` is the ``j``-th elementary symmetric function divided by the
    binomial coefficient, taken with ``n = 4`` on the roots and ``n = 3`` on
    the critical points. ``tol`` is accepted for interface symmetry; callers
    compare the residuals against it.
    """
    er = elementary_symmetric(tuple(roots))
    ex = elementary_symmetric(tuple(crits))
    out = []
    for j in range(1, 4):
        diff = er[j - 1] / comb(4, j) - ex[j - 1] / comb(3, j)
        out.append(collapse(abs(diff)))
    return tuple(out)
