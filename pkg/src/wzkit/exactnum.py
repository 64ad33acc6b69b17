"""Exact scalar arithmetic: arbitrary-precision integers and rationals.

Python's ``int`` is already a signed arbitrary-precision integer and
``fractions.Fraction`` keeps every value as a canonical ``p/q`` with
``q > 0`` and ``gcd(|p|, q) = 1``, so the stdlib types are used directly
as the scalar carriers.  This module pins down the conventions the rest
of the package leans on: the binomial zero convention for out-of-range
bottom arguments, the hard error for negative top arguments, and the
``rat_arith`` dispatch surface.  No floating point appears anywhere in
results; every comparison downstream is an exact equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

#: The one rational scalar type used in results.
Rational = Fraction


class UnsupportedArgumentError(ValueError):
    """An argument lies outside a deliberately unsupported domain."""


def rational(num: int, den: int = 1) -> Fraction:
    """Exact rational ``num/den`` in canonical form."""
    return Fraction(num, den)


def rat_arith(lhs: Fraction, op: str, rhs: Fraction) -> Fraction:
    """Apply one of ``+ - * /`` to two exact rationals.

    Division by zero raises ``ZeroDivisionError``.  Results are always
    canonical (``Fraction`` reduces and fixes the denominator sign).
    """
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if op in ("+",):
        return lhs + rhs
    if op in ("-", "−"):
        return lhs - rhs
    if op in ("*", "×"):
        return lhs * rhs
    if op in ("/", "÷"):
        return lhs / rhs
    raise UnsupportedArgumentError(f"unknown operator {op!r}")


def binomial(a: int, b: int) -> int:
    """Binomial coefficient with the zero convention.

    Returns 0 when ``b < 0`` or ``b > a``; several registry sums have
    upper limits that overshoot the binomial's top argument and rely on
    those terms vanishing exactly.  Negative ``a`` is rejected rather
    than silently extended to one of the competing generalized
    conventions, since no supported identity needs it.
    """
    if a < 0:
        raise UnsupportedArgumentError(f"binomial top must be >= 0, got {a}")
    if b < 0 or b > a:
        return 0
    return comb(a, b)
