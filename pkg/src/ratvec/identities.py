"""Machine checks of the algebraic identities behind the characterization.

Every identity is reduced to one or more pairs of polynomials that must be
equal. Identities that only hold on the surface ``R = 0`` are checked by
exact division: the left side is divided by ``R`` and the pair becomes
``(numerator, quotient * R)`` with a zero remainder required.

All polynomials come from the packaged coefficient tables; pass ``tables``
to run an identity against modified tables.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .polynomial import MultiPoly, load_tables, reduce_mod, substitute

u, v, w, r, s = (MultiPoly.var(n) for n in ("u", "v", "w", "r", "s"))
ONE = MultiPoly.const(1)

FIVE_B = -4 * v * w + 4 * v * w * u + 1
FIVE_A = -1 + 4 * v - 4 * v * u


@dataclass(frozen=True)
class Check:
    label: str
    lhs: MultiPoly
    rhs: MultiPoly
    # cofactor found by division, when the check is "lhs is a multiple of R"
    quotient: Optional[MultiPoly] = None
    modulo_surface: bool = False

    @property
    def difference(self) -> MultiPoly:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class IdentityResult:
    name: str
    description: str
    checks: Tuple[Check, ...]
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.difference.is_zero() for c in self.checks)

    @property
    def witness(self) -> MultiPoly:
        """First nonzero difference, or the zero polynomial on success."""
        for c in self.checks:
            diff = c.difference
            if not diff.is_zero():
                return diff
        return MultiPoly()


def _tables(tables: Optional[Mapping[str, MultiPoly]]) -> Dict[str, MultiPoly]:
    out = dict(load_tables())
    if tables:
        out.update(tables)
    return out


def _multiple_of(label: str, numerator: MultiPoly, divisor: MultiPoly) -> Check:
    quotient, remainder = reduce_mod(numerator, divisor)
    # lhs - rhs == remainder, so the check passes iff the remainder is zero
    return Check(label, numerator, numerator - remainder, quotient, modulo_surface=True)


def _substitute_fraction(p: MultiPoly, var: str, num: MultiPoly, den: MultiPoly) -> MultiPoly:
    return substitute(p, var, (num, den)).numerator


def _is_nonvanishing_factor(q: MultiPoly) -> bool:
    """Nonzero constant, or a constant times a power of r (r > 0 canonically)."""
    if len(q) != 1:
        return False
    (mono, _), = q.terms.items()
    return mono[0] == mono[1] == mono[2] == mono[4] == 0


# -- the suite --------------------------------------------------------------

def _i1(t):
    R, k, d = t["R"], t["k"], t["d"]
    rhs = 2 * v * (4 * u - 1) * (1 - w) * (1 - 2 * u) * FIVE_B + FIVE_A * R
    return [Check("d*k", d * k, rhs)], []


def _i2(t):
    sub = substitute(t["R"], "v", Fraction(1, 2)).numerator
    return [Check("R(u,1/2,w)", sub, (1 - w - u) * (2 * w * u - 2 * w + 1))], []


def _i3(t):
    den = 4 * (1 - u) * (1 - v)
    res = substitute(t["k"], "w", (ONE, den))
    # k(...) = N / den^p must equal (1-2v)(4u-1) / (2(1-v))
    lhs = 2 * (1 - v) * res.numerator
    rhs = (1 - 2 * v) * (4 * u - 1) * res.denominator ** res.power
    return [Check("k(u,v,1/(4(1-u)(1-v)))", lhs, rhs)], [f"cleared power {res.power}"]


def _i4(t):
    den = 2 * (1 - u)
    res = substitute(t["k"], "w", (ONE, den))
    rhs = 2 * (2 * v - 1) * (v - u * v - u) * res.denominator ** res.power
    return [Check("k(u,v,1/(2(1-u)))", res.numerator, rhs)], [f"cleared power {res.power}"]


def _i5(t):
    sub = substitute(t["k"], "w", Fraction(3, 4)).numerator
    return [Check("2k(u,v,3/4)", 2 * sub, t["H"])], []


def _i6(t):
    x1, x2, x3 = u - 1, r * v, (s - r) * w + r
    system = [
        ("4x1x2x3 + rs", 4 * x1 * x2 * x3 + r * s, t["f"]),
        ("4(x1+x2+x3) - 3(-1+r+s)", 4 * (x1 + x2 + x3) - 3 * (-1 + r + s), t["g"]),
        ("2(x1x2+x1x3+x2x3) - (-r-s+rs)", 2 * (x1 * x2 + x1 * x3 + x2 * x3) - (-r - s + r * s), t["h"]),
    ]
    checks, notes = [], []
    for label, expr, target in system:
        q, rem = reduce_mod(expr, target)
        checks.append(Check(label, expr, q * target, q))
        ok = rem.is_zero() and _is_nonvanishing_factor(q)
        notes.append(f"{label} = ({q}) * equation" if ok else
                     f"{label}: no nonvanishing cofactor (quotient {q}, remainder {rem})")
        if rem.is_zero() and not _is_nonvanishing_factor(q):
            checks.append(Check(f"{label} cofactor", q, MultiPoly.const(1)))
    return checks, notes


def _closed_form_r(t):
    return t["k"], 2 * v * (1 - 2 * u) * (1 - w)


def _closed_form_s(t):
    return 2 * (1 - u) * v * t["k"], FIVE_B * v * (1 - 2 * u)


def _i7(t):
    r_num, r_den = _closed_form_r(t)
    s_num, s_den = _closed_form_s(t)
    checks, notes = [], []
    for name in ("f", "g", "h"):
        step = _substitute_fraction(t[name], "r", r_num, r_den)
        cleared = _substitute_fraction(step, "s", s_num, s_den)
        chk = _multiple_of(f"{name}(r*, s*) numerator", cleared, t["R"])
        checks.append(chk)
        notes.append(f"{name}: numerator = ({chk.quotient}) * R")
    return checks, notes


def _i8(t):
    lhs = 2 * (1 - u) * v * t["k"] * t["d"] - 4 * v * (4 * u - 1) * (1 - u) * (1 - w) * v * (1 - 2 * u) * FIVE_B
    chk = _multiple_of("s formulas cross-multiplied", lhs, t["R"])
    return [chk], [f"quotient {chk.quotient}"]


def _i9(t):
    lhs = 4 * (1 - u) * v * (1 - w) - FIVE_B
    return [Check("s/r gap", lhs, 4 * v - 4 * u * v - 1)], []


def _i10(t):
    k = t["k"]
    A = -2 * v * (2 * u - 1) * (w - 1) * r + k
    r_num, r_den = _closed_form_r(t)
    checks = [_multiple_of("A(r*) numerator", _substitute_fraction(A, "r", r_num, r_den), t["R"])]
    # solve the two linear equations f = g = 0 for r, s by Cramer's rule
    f_r = t["f"].collect("r").get(1, MultiPoly())
    f_s = t["f"].collect("s").get(1, MultiPoly())
    g0 = substitute(substitute(t["g"], "r", 0).numerator, "s", 0).numerator
    g_r = t["g"].collect("r").get(1, MultiPoly())
    g_s = t["g"].collect("s").get(1, MultiPoly())
    det = f_r * g_s - f_s * g_r
    r_lin, s_lin = f_s * g0, -f_r * g0
    a_lin = _substitute_fraction(A, "r", r_lin, det)
    chk_a = _multiple_of("A at f=g=0 numerator", a_lin, t["R"])
    h_lin = _substitute_fraction(_substitute_fraction(t["h"], "r", r_lin, det), "s", s_lin, det)
    chk_h = _multiple_of("h at f=g=0 numerator", h_lin, t["R"])
    checks += [chk_a, chk_h]
    notes = [f"A(r*) numerator quotient {checks[0].quotient}",
             f"A at f=g=0: quotient {chk_a.quotient}",
             f"h at f=g=0: quotient {chk_h.quotient}"]
    return checks, notes


_SUITE: Dict[str, Tuple[str, Callable]] = {
    "I1": ("d*k = 2v(4u-1)(1-w)(1-2u)(-4vw+4vwu+1) + (-1+4v-4uv) R", _i1),
    "I2": ("R(u,1/2,w) = (1-w-u)(2wu-2w+1)", _i2),
    "I3": ("k(u,v,1/(4(1-u)(1-v))) = (1-2v)(4u-1)/(2(1-v))", _i3),
    "I4": ("k(u,v,1/(2(1-u))) = 2(2v-1)(v-uv-u)", _i4),
    "I5": ("2k(u,v,3/4) = H(u,v)", _i5),
    "I6": ("critical-point substitution turns the symmetric system into f, g, h", _i6),
    "I7": ("closed-form r, s solve f = g = h = 0 on R = 0", _i7),
    "I8": ("both closed forms for s agree on R = 0", _i8),
    "I9": ("4(1-u)v(1-w) - (-4vw+4vwu+1) = 4v - 4uv - 1", _i9),
    "I10": ("A = -2v(2u-1)(w-1)r + k vanishes on the solutions of f, g, h", _i10),
}

IDENTITY_NAMES = tuple(_SUITE)


def verify_identity(name: str, tables: Optional[Mapping[str, MultiPoly]] = None) -> IdentityResult:
    """Run one identity; ``passed`` is False and ``witness`` nonzero on failure."""
    try:
        description, fn = _SUITE[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; choose from {IDENTITY_NAMES}") from None
    checks, notes = fn(_tables(tables))
    return IdentityResult(name, description, tuple(checks), tuple(notes))


def verify_all(tables: Optional[Mapping[str, MultiPoly]] = None) -> List[IdentityResult]:
    return [verify_identity(name, tables) for name in IDENTITY_NAMES]


def random_box_point(rng: random.Random) -> dict:
    """Uniform float point of the Peyser box, plus 0 < r < s."""
    rr = rng.uniform(0.01, 5.0)
    return {
        "u": rng.uniform(0.25, 0.5),
        "v": rng.uniform(1 / 3, 2 / 3),
        "w": rng.uniform(0.5, 0.75),
        "r": rr,
        "s": rr + rng.uniform(0.01, 5.0),
    }


def random_surface_point(rng: random.Random) -> dict:
    """Ratio vector of a random canonical quartic, so ``R(u, v, w) = 0``."""
    from .quartic import forward_ratio_vector

    rr = rng.uniform(0.05, 5.0)
    ss = rr + rng.uniform(0.05, 5.0)
    rv = forward_ratio_vector((-1.0, 0.0, rr, ss), tol=1e-15)
    return {"u": rv.u, "v": rv.v, "w": rv.w, "r": rr, "s": ss}


def _magnitude(poly: MultiPoly, point: Mapping[str, float]) -> float:
    """Sum of absolute term values: the natural rounding scale of ``poly``."""
    absolute = MultiPoly({m: abs(c) for m, c in poly.terms.items()})
    return float(absolute.evaluate({k: abs(x) for k, x in point.items()}))


def numeric_residual(result: IdentityResult, point: Mapping[str, float]) -> float:
    """Worst scaled float mismatch of the identity's checks at ``point``.

    Plain identities compare both sides anywhere. Checks that only hold on
    the surface evaluate their left side alone, so ``point`` must then
    satisfy ``R = 0`` (see :func:`random_surface_point`).
    """
    worst = 0.0
    for chk in result.checks:
        if chk.modulo_surface:
            val = float(chk.lhs.evaluate(point))
            scale = _magnitude(chk.lhs, point)
        else:
            val = float(chk.lhs.evaluate(point)) - float(chk.rhs.evaluate(point))
            scale = max(_magnitude(chk.lhs, point), _magnitude(chk.rhs, point))
        worst = max(worst, abs(val) / max(scale, 1e-300))
    return worst
