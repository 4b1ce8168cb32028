"""Exact rationals extended by the two symbolic infinities.

Column widths and strip heights of a glued grid are positive extended
rationals; only the outermost column pair and the two open strips are
allowed to be infinite.  Arithmetic is deliberately partial: any
operation whose result would be indeterminate (inf - inf) raises.
"""

from __future__ import annotations

from fractions import Fraction


class XRat:
    """A Fraction, +inf or -inf.  Immutable, totally ordered."""

    __slots__ = ("_value", "_sign")

    def __init__(self, value=0, _sign=0):
        if _sign:
            self._value = None
            self._sign = _sign
            return
        if isinstance(value, XRat):
            self._value = value._value
            self._sign = value._sign
            return
        self._value = Fraction(value)
        self._sign = 0

    @property
    def is_finite(self):
        return self._sign == 0

    @property
    def finite(self) -> Fraction:
        if self._sign:
            raise ValueError("infinite value has no finite part")
        return self._value

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._sign == other._sign and self._value == other._value

    def __hash__(self):
        return hash((self._sign, self._value))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._sign != other._sign:
            return self._sign < other._sign
        if self._sign:
            return False
        return self._value < other._value

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other < self

    def __ge__(self, other):
        return self == other or self > other

    def __neg__(self):
        if self._sign:
            return XRat(_sign=-self._sign)
        return XRat(-self._value)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._sign and other._sign:
            if self._sign != other._sign:
                raise ValueError("indeterminate sum inf + (-inf)")
            return XRat(_sign=self._sign)
        if self._sign:
            return XRat(_sign=self._sign)
        if other._sign:
            return XRat(_sign=other._sign)
        return XRat(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __repr__(self):
        if self._sign > 0:
            return "XRat(+inf)"
        if self._sign < 0:
            return "XRat(-inf)"
        return "XRat(%s)" % self._value

    def __str__(self):
        return format_xrat(self)


POS_INF = XRat(_sign=1)
NEG_INF = XRat(_sign=-1)


def _coerce(x):
    if isinstance(x, XRat):
        return x
    if isinstance(x, (int, Fraction)):
        return XRat(x)
    return NotImplemented


def parse_rational(text) -> Fraction:
    """Parse an exact rational from an int or a 'p/q' (or 'p') string."""
    if isinstance(text, bool):
        raise ValueError("not a rational: %r" % (text,))
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError("not a rational: %r" % (text,))


def parse_xrat(text) -> XRat:
    if isinstance(text, XRat):
        return text
    if isinstance(text, str):
        stripped = text.strip()
        if stripped in ("inf", "+inf"):
            return POS_INF
        if stripped == "-inf":
            return NEG_INF
    return XRat(parse_rational(text))


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def format_xrat(x: XRat) -> str:
    if not isinstance(x, XRat):
        return format_rational(x)
    if x._sign > 0:
        return "inf"
    if x._sign < 0:
        return "-inf"
    return format_rational(x._value)
