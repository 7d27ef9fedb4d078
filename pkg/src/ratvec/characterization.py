"""Membership test for quartic ratio vectors on the (u, v, w) side."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import InvalidIndex, InvalidPoint
from .fields import collapse, is_exact, to_float
from .polynomial import table

R_TOL = 1e-9
BOUNDARY_TOL = 1e-12

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
QUARTER = Fraction(1, 4)


class Region(str, enum.Enum):
    Z1 = "Z1"
    Z2 = "Z2"
    Z3 = "Z3"
    OUTSIDE = "Outside"
    INDETERMINATE = "BoundaryIndeterminate"

    def __str__(self):
        return self.value

    @property
    def admissible(self) -> bool:
        return self in (Region.Z1, Region.Z2, Region.Z3)


@dataclass(frozen=True)
class Bound:
    name: str
    value: object
    satisfied: bool
    # signed slack, positive when the strict inequality holds
    margin: object


@dataclass(frozen=True)
class MembershipVerdict:
    is_ratio_vector: bool
    region: Region
    R_value: object
    k_value: object
    bound_report: Tuple[Bound, ...] = ()
    exact: bool = True
    diagnostics: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def k_positive(self) -> bool:
        return self.k_value > 0


def _point(u, v, w):
    """Coerce to one realization: all exact, or all float."""
    pt = [collapse(x) for x in (u, v, w)]
    if all(is_exact(x) for x in pt):
        return pt[0], pt[1], pt[2], True
    return to_float(pt[0]), to_float(pt[1]), to_float(pt[2]), False


def eval_R(u, v, w):
    u, v, w, _ = _point(u, v, w)
    return collapse(table("R").evaluate(u=u, v=v, w=w))


def eval_k(u, v, w):
    u, v, w, _ = _point(u, v, w)
    return collapse(table("k").evaluate(u=u, v=v, w=w))


def eval_d(u, v, w):
    u, v, w, _ = _point(u, v, w)
    return collapse(table("d").evaluate(u=u, v=v, w=w))


def eval_Q(u, v, w):
    """``Q = (1 - 4v + 4uv) R``, the degree-9 necessary condition."""
    u, v, w, _ = _point(u, v, w)
    return collapse((1 - 4 * v + 4 * u * v) * table("R").evaluate(u=u, v=v, w=w))


def eval_H(u, v):
    u, v, _, _ = _point(u, v, 0)
    return collapse(table("H").evaluate(u=u, v=v, horner="v"))


def peyser_bounds(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Universal strict bounds ``1/(n-k+1) < sigma_k < k/(k+1)``."""
    if n < 2:
        raise InvalidIndex(f"degree n must be at least 2, got {n}")
    if not 1 <= k <= n - 1:
        raise InvalidIndex(f"ratio index k must lie in 1..{n - 1}, got {k}")
    return Fraction(1, n - k + 1), Fraction(k, k + 1)


def in_box(u, v, w) -> bool:
    """Strict membership in the box of Peyser bounds for n = 4."""
    u, v, w, _ = _point(u, v, w)
    return all(lo < x < hi for x, (lo, hi) in zip((u, v, w), (peyser_bounds(4, k) for k in (1, 2, 3))))


def l1_bounds(u, v, w) -> Tuple[Bound, ...]:
    """Necessary inequalities satisfied by every ratio vector.

    Returns, in order: the lower and upper bounds on ``v``, the lower and
    upper bounds on ``w`` in terms of ``u`` and ``v``, and ``w < 1/(2(1-u))``.
    """
    u, v, w, _ = _point(u, v, w)
    if u == 1 or v == 1 or w == 0:
        raise InvalidPoint(f"bounds undefined at u={u}, v={v}, w={w}")
    one_u, one_v = 1 - u, 1 - v
    lower_v = collapse(1 / (4 * one_u))
    upper_v = collapse(1 / (4 * one_u * w))
    lower_w = collapse(1 / (4 * one_v))
    upper_w = collapse(1 / (4 * one_u * one_v))
    upper_w7 = collapse(1 / (2 * one_u))
    return (
        Bound("v_lower", lower_v, lower_v < v, collapse(v - lower_v)),
        Bound("v_upper", upper_v, v < upper_v, collapse(upper_v - v)),
        Bound("w_lower", lower_w, lower_w < w, collapse(w - lower_w)),
        Bound("w_upper", upper_w, w < upper_w, collapse(upper_w - w)),
        Bound("w_upper_half", upper_w7, w < upper_w7, collapse(upper_w7 - w)),
    )


# three-valued comparisons: True, False, or None (too close to call)

def _lt(a, b, tol) -> Optional[bool]:
    if tol is None:
        return a < b
    diff = b - a
    if diff > tol:
        return True
    if diff < -tol:
        return False
    return None


def _le(a, b, tol) -> Optional[bool]:
    if tol is None:
        return a <= b
    return _lt(a, b, tol)


def _conj(conditions) -> Optional[bool]:
    """Lazily AND thunks; stop at the first certain False."""
    unknown = False
    for cond in conditions:
        val = cond()
        if val is False:
            return False
        if val is None:
            unknown = True
    return None if unknown else True


def _predicates(u, v, w, tol):
    z1 = (
        lambda: _lt(QUARTER, u, tol),
        lambda: _le(u, THIRD, tol),
        lambda: _lt(1 / (4 * (1 - u)), v, tol),
        lambda: _lt(v, HALF, tol),
        lambda: _lt(HALF, w, tol),
        lambda: _lt(w, 1 / (4 * (1 - u) * (1 - v)), tol),
    )
    z2 = (
        lambda: _lt(QUARTER, u, tol),
        lambda: _le(u, THIRD, tol),
        lambda: _lt(HALF, w, tol),
        lambda: _lt(w, 1 / (2 * (1 - u)), tol),
        lambda: _le(HALF, v, tol),
        lambda: _lt(v, 1 / (4 * (1 - u) * w), tol),
        lambda: _lt(v, 2 * THIRD, tol),
    )
    z3 = (
        lambda: _lt(THIRD, u, tol),
        lambda: _lt(u, HALF, tol),
        lambda: _lt(HALF, w, tol),
        lambda: _lt(w, 3 * QUARTER, tol),
        lambda: _lt(1 / (4 * (1 - u)), v, tol),
        lambda: _lt(v, 1 / (4 * (1 - u) * w), tol),
        lambda: _lt(v, 2 * THIRD, tol),
    )
    return {Region.Z1: z1, Region.Z2: z2, Region.Z3: z3}


def region_predicates(u, v, w, boundary_tol=BOUNDARY_TOL) -> dict:
    """Truth value of each region's defining inequalities (None = undecided)."""
    u, v, w, exact = _point(u, v, w)
    tol = None if exact else boundary_tol
    return {label: _conj(conds) for label, conds in _predicates(u, v, w, tol).items()}


def classify_region(u, v, w, boundary_tol=BOUNDARY_TOL) -> Region:
    """Which of Z1, Z2, Z3 contains the point, if any.

    Boundaries are closed at ``u = 1/3`` in Z1 and Z2 and at ``v = 1/2``
    in Z2; all others are strict. Float points that sit
    within ``boundary_tol`` of a deciding boundary come back as
    ``Region.INDETERMINATE``; exact points are always decided.
    """
    preds = region_predicates(u, v, w, boundary_tol)
    for label, val in preds.items():
        if val:
            return label
    if any(val is None for val in preds.values()):
        return _resolve_seam(u, v, w, boundary_tol)
    return Region.OUTSIDE


def _strict_region(u, v, w) -> Region:
    for label, conds in _predicates(u, v, w, None).items():
        if all(c() for c in conds):
            return label
    return Region.OUTSIDE


def _resolve_seam(u, v, w, tol) -> Region:
    """Settle a point near a boundary shared by two regions (e.g. v = 1/2).

    If the point and every corner of its tolerance box agree on being
    admissible (or on being outside), that answer stands.
    """
    u, v, w = float(u), float(v), float(w)
    here = _strict_region(u, v, w)
    corners = [_strict_region(u + a * tol, v + b * tol, w + c * tol)
               for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]
    if here.admissible and all(c.admissible for c in corners):
        return here
    if not here.admissible and not any(c.admissible for c in corners):
        return Region.OUTSIDE
    return Region.INDETERMINATE


def is_ratio_vector(u, v, w, R_tol=R_TOL, boundary_tol=BOUNDARY_TOL) -> MembershipVerdict:
    """Decide whether ``(u, v, w)`` is the ratio vector of some quartic.

    Exact scalars test ``R = 0`` exactly; floats accept ``|R| <= R_tol``.
    """
    u, v, w, exact = _point(u, v, w)
    R_val = eval_R(u, v, w)
    k_val = eval_k(u, v, w)
    region = classify_region(u, v, w, boundary_tol)
    on_surface = R_val == 0 if exact else abs(R_val) <= R_tol
    try:
        bounds = l1_bounds(u, v, w)
    except InvalidPoint:
        bounds = ()
    diagnostics = []
    if not exact:
        diagnostics.append(f"float path: R = 0 accepted as |R| <= {R_tol:g}; "
                           "not a certificate of lying on the surface")
    member = bool(on_surface) and region.admissible
    if member and not k_val > 0:
        diagnostics.append("k <= 0 at an accepted point; expected k > 0 on every ratio vector")
    if region is Region.INDETERMINATE:
        diagnostics.append(f"point within {boundary_tol:g} of a region boundary")
    return MembershipVerdict(member, region, R_val, k_val, bounds, exact, tuple(diagnostics))


def equivalent_condition(u, v, w) -> bool:
    """Second route to membership: surface, box, the v bounds, and ``k > 0``.

    Exact points only; this is an independent cross-check of
    :func:`is_ratio_vector`.
    """
    u, v, w, exact = _point(u, v, w)
    if not exact:
        raise TypeError("equivalent_condition needs exact scalars")
    if not in_box(u, v, w):
        return False
    if eval_R(u, v, w) != 0:
        return False
    if not 1 / (4 * (1 - u)) < v < 1 / (4 * (1 - u) * w):
        return False
    return eval_k(u, v, w) > 0
