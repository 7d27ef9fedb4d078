"""Scalar tower: exact rationals, the quadratic field Q(sqrt d), and floats.

Rationals are :class:`fractions.Fraction`. :class:`Surd` holds numbers of the
form ``(a + b*sqrt(d)) / c`` and supports exact field arithmetic and exact
ordering as long as every irrational operand shares one square class.
Floats pass through untouched; helpers here let the other modules treat the
three realizations uniformly.
"""
from __future__ import annotations

import functools
import math
import numbers
import re
from fractions import Fraction
from typing import Union

from .errors import IncompatibleRadicands, InvalidDenominator, NegativeRadicand

TRIAL_DIVISION_BOUND = 10**6

Scalar = Union[int, Fraction, float, "Surd"]


@functools.lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_DIVISION_BOUND + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(TRIAL_DIVISION_BOUND) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, TRIAL_DIVISION_BOUND + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@functools.lru_cache(maxsize=4096)
def _squarefree_split(d: int) -> tuple[int, int]:
    """Return ``(m, rest)`` with ``d == m*m*rest``.

    Square factors are pulled out by trial division up to
    ``TRIAL_DIVISION_BOUND``; a leftover perfect square is caught by ``isqrt``.
    """
    if d < 2:
        return 1, d
    root = math.isqrt(d)
    if root * root == d:
        return root, 1
    m = 1
    for p in _trial_primes():
        pp = p * p
        if pp > d:
            break
        while d % pp == 0:
            d //= pp
            m *= p
    root = math.isqrt(d)
    if root * root == d:
        return m * root, 1
    return m, d


class Surd:
    """Exact quadratic surd ``(a + b*sqrt(d)) / c``.

    Canonical form: ``a``, ``b``, ``c`` are integral with ``c > 0`` and
    ``gcd(a, b, c) == 1``; ``d`` has no square factor below the trial bound
    and is never a perfect square. Rational values always carry ``b == 0``
    and ``d == 0``.
    """

    __slots__ = ("a", "b", "d", "c")

    a: Fraction
    b: Fraction
    d: int
    c: Fraction

    def __init__(self, a=0, b=0, d=0, c=1):
        na, nb, nd, nc = _normalize(a, b, d, c)
        object.__setattr__(self, "a", na)
        object.__setattr__(self, "b", nb)
        object.__setattr__(self, "d", nd)
        object.__setattr__(self, "c", nc)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def _from_pq(cls, p: Fraction, q: Fraction, d: int) -> Surd:
        return cls(p, q, d, 1)

    @classmethod
    def sqrt(cls, q) -> Surd:
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise NegativeRadicand(f"sqrt of negative rational {q}")
        return cls(0, 1, q.numerator * q.denominator, q.denominator)

    # -- views ---------------------------------------------------------
    @property
    def p(self) -> Fraction:
        """Rational part ``a/c``."""
        return self.a / self.c

    @property
    def q(self) -> Fraction:
        """Coefficient of ``sqrt(d)`` in ``a/c + (b/c)*sqrt(d)``."""
        return self.b / self.c

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a / self.c

    def conjugate(self) -> Surd:
        return Surd(self.a, -self.b, self.d, self.c)

    def sign(self) -> int:
        return _sign_pq(self.p, self.q, self.d)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p1, q1, p2, q2, d = _align(self, o)
        return Surd._from_pq(p1 + p2, q1 + q2, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d, self.c)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p1, q1, p2, q2, d = _align(self, o)
        return Surd._from_pq(p1 * p2 + q1 * q2 * d, p1 * q2 + p2 * q1, d)

    __rmul__ = __mul__

    def _inverse(self) -> Surd:
        p, q, d = self.p, self.q, self.d
        norm = p * p - q * q * d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        return Surd._from_pq(p / norm, -q / norm, d)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self._inverse()

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        if n < 0:
            return (self._inverse()) ** (-n)
        result = Surd(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering ------------------------------------------------------
    def _cmp(self, other) -> int:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p1, q1, p2, q2, d = _align(self, o)
        return _sign_pq(p1 - p2, q1 - q2, d)

    def __eq__(self, other):
        if isinstance(other, float):
            return NotImplemented
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a / self.c)
        return hash((self.a, self.b, self.d, self.c))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return approximate(self, Fraction(1, 2**60))[0]

    def __repr__(self):
        if self.b == 0:
            return f"Surd({rational_to_str(self.a / self.c)})"
        return (f"Surd(a={rational_to_str(self.a)}, b={rational_to_str(self.b)}, "
                f"d={self.d}, c={rational_to_str(self.c)})")

    def __str__(self):
        if self.b == 0:
            return rational_to_str(self.a / self.c)
        sgn = "-" if self.b < 0 else "+"
        mag = abs(self.b)
        coef = "" if mag == 1 else rational_to_str(mag) + "*"
        head = f"{rational_to_str(self.a)} {sgn} " if self.a else ("-" if self.b < 0 else "")
        body = f"{head}{coef}sqrt({self.d})"
        if self.c == 1:
            return body
        return f"({body})/{rational_to_str(self.c)}"

    def to_json(self) -> dict:
        return {"a": rational_to_str(self.a), "b": rational_to_str(self.b),
                "d": str(self.d), "c": rational_to_str(self.c)}

    @classmethod
    def from_json(cls, obj: dict) -> Surd:
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]),
                   int(obj["d"]), parse_rational(obj["c"]))


def _normalize(a, b, d, c):
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if not isinstance(d, numbers.Integral):
        raise TypeError(f"radicand must be an integer, got {d!r}")
    d = int(d)
    if c == 0:
        raise InvalidDenominator("surd denominator c must be nonzero")
    if d < 0:
        raise NegativeRadicand(f"radicand {d} < 0")
    m, d = _squarefree_split(d)
    b *= m
    if d == 1:
        a, b, d = a + b, Fraction(0), 0
    elif d == 0 or b == 0:
        b, d = Fraction(0), 0
    p, q = a / c, b / c
    den = math.lcm(p.denominator, q.denominator)
    A, B = p.numerator * (den // p.denominator), q.numerator * (den // q.denominator)
    g = math.gcd(math.gcd(A, B), den)
    return Fraction(A // g), Fraction(B // g), d, Fraction(den // g)


def surd_normalize(a, b, d: int, c) -> Surd:
    """Canonical surd for ``(a + b*sqrt(d)) / c``."""
    return Surd(a, b, d, c)


def _coerce(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (numbers.Rational,)):
        return Surd(Fraction(x))
    return NotImplemented


def _align(x: Surd, y: Surd):
    """Express both operands over one radicand: ``(p1, q1, p2, q2, d)``."""
    if y.b == 0:
        return x.p, x.q, y.p, Fraction(0), x.d
    if x.b == 0:
        return x.p, Fraction(0), y.p, y.q, y.d
    if x.d == y.d:
        return x.p, x.q, y.p, y.q, x.d
    # sqrt(d2) = sqrt(d1*d2)/d1 * sqrt(d1) when d1*d2 is a square
    prod = x.d * y.d
    root = math.isqrt(prod)
    if root * root == prod:
        return x.p, x.q, y.p, y.q * Fraction(root, x.d), x.d
    raise IncompatibleRadicands(f"cannot combine sqrt({x.d}) with sqrt({y.d})")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_pq(p: Fraction, q: Fraction, d: int) -> int:
    """Exact sign of ``p + q*sqrt(d)`` with ``d >= 0``."""
    sp, sq = _sign(p), _sign(q) if d else 0
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p^2 against q^2*d
    return sp * _sign(p * p - q * q * d)


def surd_compare(x, y) -> int:
    """Exact three-way comparison; returns -1, 0 or 1.

    Raises :class:`IncompatibleRadicands` when both operands are irrational
    over different square classes.
    """
    return Surd._cmp(_as_surd(x), y)


def _as_surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    if isinstance(x, float):
        raise TypeError("surd_compare is exact-only; got a float")
    return Surd(Fraction(x))


def approximate(x, abs_err) -> tuple[float, Fraction]:
    """Float value of ``x`` together with a guaranteed error bound.

    The radical is enclosed by integer square roots at a scale chosen so the
    enclosure contributes at most ``abs_err/2``; the returned bound also
    accounts exactly for the final rounding to binary64.  The bound can only
    exceed ``abs_err`` when ``abs_err`` is below half an ulp of the value.
    """
    abs_err = Fraction(abs_err)
    if abs_err <= 0:
        raise ValueError("abs_err must be positive")
    if isinstance(x, float):
        return x, Fraction(0)
    if not isinstance(x, Surd):
        x = Fraction(x)
        f = float(x)
        return f, abs(Fraction(f) - x)
    if x.b == 0:
        val = x.a / x.c
        f = float(val)
        return f, abs(Fraction(f) - val)
    scale = abs(x.q)
    # width of sqrt enclosure is 2^-k; need scale * 2^-k <= abs_err / 2
    k = 0
    while scale / (1 << k) > abs_err / 2:
        k += 1
    lo_root = math.isqrt(x.d << (2 * k))
    lo = Fraction(lo_root, 1 << k)
    hi = Fraction(lo_root + 1, 1 << k)
    mid_root = (lo + hi) / 2
    mid = x.p + x.q * mid_root
    f = float(mid)
    bound = scale * (hi - lo) / 2 + abs(Fraction(f) - mid)
    return f, bound


# -- generic helpers over the tower ----------------------------------------

def is_exact(x) -> bool:
    return isinstance(x, (Surd, numbers.Rational))


def to_float(x) -> float:
    if isinstance(x, Surd):
        return approximate(x, Fraction(1, 2**60))[0]
    return float(x)


def collapse(x):
    """Rational-valued surds become Fractions; everything else is returned."""
    if isinstance(x, Surd) and x.b == 0:
        return x.a / x.c
    if isinstance(x, numbers.Integral) and not isinstance(x, bool):
        return Fraction(x)
    return x


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def rational_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string; decimals are rejected."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        den_i = int(den)
        if den_i == 0:
            raise InvalidDenominator(f"zero denominator in {text!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(text))


_Q = r"\d+(?:/\d+)?"
_SURD_RE = re.compile(
    rf"^\(?\s*(?P<a>[+-]?\s*{_Q})?\s*(?P<sign>[+-])?\s*(?:(?P<b>{_Q})\s*\*?\s*)?"
    rf"sqrt\(\s*(?P<d>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<c>{_Q}))?$")


def parse_surd(text: str) -> Surd:
    """Parse the printed surd form, e.g. ``(156303 - 9*sqrt(10054801))/211888``."""
    m = _SURD_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a surd literal: {text!r}")
    a = parse_rational(m["a"].replace(" ", "")) if m["a"] else Fraction(0)
    b = parse_rational(m["b"]) if m["b"] else Fraction(1)
    if m["sign"] == "-":
        b = -b
    elif m["sign"] is None and m["a"] is not None and not m["b"]:
        # "-sqrt(d)" style: the captured a was the sign-only prefix
        raise ValueError(f"ambiguous surd literal: {text!r}")
    c = parse_rational(m["c"]) if m["c"] else Fraction(1)
    return Surd(a, b, int(m["d"]), c)


def parse_scalar(text: str):
    """``"p/q"`` and integers parse exactly, as do surd literals such as
    ``(a - b*sqrt(d))/c``; anything else becomes a float."""
    text = text.strip()
    try:
        return parse_rational(text)
    except ValueError as exc:
        if isinstance(exc, InvalidDenominator):
            raise
    if "sqrt" in text:
        return collapse(parse_surd(text))
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite scalar {text!r}")
    return value


def scalar_to_json(x):
    """Serialize a scalar: rationals as strings, surds as objects, floats as-is."""
    if isinstance(x, Surd):
        if x.b == 0:
            return rational_to_str(x.a / x.c)
        return x.to_json()
    if isinstance(x, numbers.Rational):
        return rational_to_str(x)
    return float(x)
