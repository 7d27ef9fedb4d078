"""Sparse multivariate polynomials over Q in the variables u, v, w, r, s.

Terms live in a dict keyed by exponent 5-tuples; zero coefficients are never
stored. The term order is graded lexicographic with u > v > w > r > s.
"""
from __future__ import annotations

import functools
import numbers
from fractions import Fraction
from importlib import resources
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union

from .errors import InvalidDivisor, InvalidSubstitution

VARIABLES = ("u", "v", "w", "r", "s")
NVARS = len(VARIABLES)

Monomial = Tuple[int, ...]


def _index(var: str) -> int:
    try:
        return VARIABLES.index(var)
    except ValueError:
        raise KeyError(f"unknown variable {var!r}; expected one of {VARIABLES}") from None


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    __slots__ = ("terms", "_evaluators")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self._evaluators = {}
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != NVARS:
                raise ValueError(f"monomial {mono} must have {NVARS} exponents")
            c = Fraction(coeff)
            if c:
                clean[tuple(int(e) for e in mono)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def const(cls, c) -> MultiPoly:
        return cls({(0,) * NVARS: c})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        mono = [0] * NVARS
        mono[_index(name)] = 1
        return cls({tuple(mono): 1})

    @classmethod
    def _wrap(cls, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, numbers.Rational):
            return cls.const(x)
        return NotImplemented

    # -- inspection ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in descending grlex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = _index(var)
        return max(m[i] for m in self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        used = [False] * NVARS
        for mono in self.terms:
            for i, e in enumerate(mono):
                used[i] = used[i] or e > 0
        return tuple(name for name, flag in zip(VARIABLES, used) if flag)

    # -- ring arithmetic -----------------------------------------------
    def __add__(self, other):
        other = MultiPoly._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = MultiPoly._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = MultiPoly._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = MultiPoly._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, numbers.Integral) or n < 0:
            return NotImplemented
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = MultiPoly._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation ----------------------------------------------------
    def collect(self, var: str) -> Dict[int, MultiPoly]:
        """Split into ``{power: coefficient polynomial}`` with respect to ``var``."""
        i = _index(var)
        groups: Dict[int, Dict[Monomial, Fraction]] = {}
        for mono, c in self.terms.items():
            rest = mono[:i] + (0,) + mono[i + 1:]
            groups.setdefault(mono[i], {})[rest] = c
        return {e: MultiPoly(t) for e, t in groups.items()}

    def evaluate(self, point: Mapping[str, object] | None = None, horner: str = "w", **values):
        """Evaluate at a point; works for Fractions, Surds and floats alike.

        Terms are collected by powers of ``horner`` and combined with Horner's
        rule, so the exact and float paths share one evaluation order.
        """
        vals = dict(point or {})
        vals.update(values)
        fn = self._evaluators.get(horner)
        if fn is None:
            fn = self._evaluators[horner] = _compile(self, horner)
        return fn(vals)

    # -- text form -----------------------------------------------------
    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(VARIABLES, mono) if e]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = _qstr(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{_qstr(mag)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + text)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def to_table(self) -> list[str]:
        return [" ".join(map(str, m)) + " : " + _qstr(c) for m, c in self.sorted_terms()]

    @classmethod
    def from_table(cls, lines: Iterable[str]) -> MultiPoly:
        terms: Dict[Monomial, Fraction] = {}
        for raw in lines:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            exps, _, coeff = line.partition(":")
            mono = tuple(int(e) for e in exps.split())
            if mono in terms:
                raise ValueError(f"duplicate monomial {mono}")
            terms[mono] = Fraction(coeff.strip())
        return cls(terms)


def _qstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _compile(poly: MultiPoly, horner: str):
    hi = _index(horner)
    groups = poly.collect(horner)
    top = max(groups) if groups else 0
    # integral coefficients stay ints so float evaluation avoids Fraction maths
    table = []
    for e in range(top, -1, -1):
        g = groups.get(e)
        entries = []
        if g is not None:
            for mono, c in g.sorted_terms():
                coeff = c.numerator if c.denominator == 1 else c
                powers = tuple((VARIABLES[i], p) for i, p in enumerate(mono) if p and i != hi)
                entries.append((coeff, powers))
        table.append(entries)

    def run(vals):
        def term_sum(entries):
            total = 0
            for coeff, powers in entries:
                t = coeff
                for name, p in powers:
                    t = t * (_lookup(vals, name) ** p if p > 1 else _lookup(vals, name))
                total = total + t
            return total

        if top == 0 and len(table) == 1:
            return term_sum(table[0])
        x = _lookup(vals, horner)
        acc = term_sum(table[0])
        for entries in table[1:]:
            acc = acc * x + term_sum(entries)
        return acc

    return run


def _lookup(vals, name):
    try:
        return vals[name]
    except KeyError:
        raise KeyError(f"no value supplied for variable {name!r}") from None


_OPS = {"add": MultiPoly.__add__, "sub": MultiPoly.__sub__, "mul": MultiPoly.__mul__}


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    """``p op q`` for ``op`` in ``add``, ``sub``, ``mul``."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; choose add, sub or mul") from None
    return fn(MultiPoly._wrap(p), MultiPoly._wrap(q))


# -- substitution and division ---------------------------------------------

class Substitution(NamedTuple):
    """Result of substituting ``var := numerator/denominator``.

    ``numerator`` equals ``denominator**power * p(..., var=value, ...)``.
    """

    numerator: MultiPoly
    denominator: MultiPoly
    power: int


Substitutable = Union[MultiPoly, numbers.Rational, Tuple[MultiPoly, MultiPoly]]


def substitute(p: MultiPoly, var: str, value: Substitutable) -> Substitution:
    """Replace ``var`` by a polynomial, a rational, or a declared fraction.

    A fraction is passed as ``(numerator, denominator)``; the result is the
    numerator after multiplying through by ``denominator**deg_var(p)``.
    """
    if isinstance(value, tuple):
        if len(value) != 2:
            raise InvalidSubstitution("fraction must be a (numerator, denominator) pair")
        num, den = (MultiPoly._wrap(x) for x in value)
        if num is NotImplemented or den is NotImplemented:
            raise InvalidSubstitution("fraction parts must be polynomials or rationals")
        if den.is_zero():
            raise InvalidSubstitution("declared denominator is the zero polynomial")
    else:
        num = MultiPoly._wrap(value)
        if num is NotImplemented:
            raise InvalidSubstitution(
                f"cannot substitute {type(value).__name__}; declare rational "
                "functions as (numerator, denominator)")
        den = MultiPoly.const(1)
    power = p.degree(var) if isinstance(value, tuple) else 0
    power = max(power, 0)
    out = MultiPoly()
    num_pows = [MultiPoly.const(1)]
    den_pows = [MultiPoly.const(1)]
    for _ in range(max(p.degree(var), 0)):
        num_pows.append(num_pows[-1] * num)
        if power:
            den_pows.append(den_pows[-1] * den)
    for e, coeff in p.collect(var).items():
        piece = coeff * num_pows[e]
        if power:
            piece = piece * den_pows[power - e]
        out = out + piece
    return Substitution(out, den, power)


def reduce_mod(p: MultiPoly, divisor: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Multivariate division by one divisor in grlex order.

    Returns ``(quotient, remainder)`` with ``p == quotient*divisor + remainder``
    and no remainder term divisible by the divisor's leading monomial.
    """
    if divisor.is_zero():
        raise InvalidDivisor("division by the zero polynomial")
    lead_mono, lead_coeff = divisor.leading_term()
    quotient: Dict[Monomial, Fraction] = {}
    remainder: Dict[Monomial, Fraction] = {}
    work = dict(p.terms)
    div_terms = list(divisor.terms.items())
    while work:
        mono = max(work, key=_grlex_key)
        c = work[mono]
        if all(a >= b for a, b in zip(mono, lead_mono)):
            shift = tuple(a - b for a, b in zip(mono, lead_mono))
            factor = c / lead_coeff
            quotient[shift] = quotient.get(shift, 0) + factor
            for dm, dc in div_terms:
                m = tuple(a + b for a, b in zip(dm, shift))
                val = work.get(m, 0) - factor * dc
                if val:
                    work[m] = val
                else:
                    work.pop(m, None)
        else:
            remainder[mono] = c
            del work[mono]
    return MultiPoly(quotient), MultiPoly(remainder)


# -- coefficient tables -----------------------------------------------------

@functools.lru_cache(maxsize=None)
def load_tables(text: str | None = None) -> Dict[str, MultiPoly]:
    """Parse the packaged coefficient file (or ``text``) into named polynomials."""
    if text is None:
        text = resources.files("ratvec").joinpath("data/coefficients.txt").read_text()
    sections: Dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current in sections:
                raise ValueError(f"duplicate section [{current}]")
            sections[current] = []
        elif current is not None:
            sections[current].append(line)
        elif line and not line.startswith("#"):
            raise ValueError(f"entry outside any section: {raw!r}")
    return {name: MultiPoly.from_table(lines) for name, lines in sections.items()}


def table(name: str) -> MultiPoly:
    return load_tables()[name]


u, v, w, r, s = (MultiPoly.var(n) for n in VARIABLES)
