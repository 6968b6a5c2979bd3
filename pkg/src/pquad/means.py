"""Arithmetic and n-logarithmic means, and the mean inequalities obtained by
applying the preset bounds to ``f(x) = x**n``.

``L_n(a, b)**n`` is the mean value of ``x**n`` over ``[a, b]``, so each
inequality below is a preset bound with ``|f'(x)|**q = n**q |x|**((n-1)q)``:

===  ==========================================  ======================
key  left-hand side                              bound
===  ==========================================  ======================
1    |A(a^n,b^n)/3 + 2A(a,b)^n/3 - L_n^n|         power mean, Simpson
2a   |A(a,b)^n - L_n^n|                           power mean, midpoint
2b   |A(a^n,b^n) - L_n^n|                         power mean, trapezoid
3    as 1                                         Holder, Simpson
4a   as 2a                                        Holder, midpoint
4b   as 2b                                        Holder, trapezoid
===  ==========================================  ======================

A common statement of 4b drops the factor ``n`` and uses ``(b-a)/4`` in place
of ``n(b-a)/4``. That variant is not a valid bound for ``n > 1``;
:func:`proposition` returns the derived bound as ``rhs`` and reports the
variant as ``rhs_as_printed`` for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, ParameterError
from .quadrature import ASSERT_TOL

KEYS = ("1", "2a", "2b", "3", "4a", "4b")
_HOLDER_KEYS = ("3", "4a", "4b")


@dataclass(frozen=True)
class MeansCase:
    a: float
    b: float
    n: int
    q: float = 1.0
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ParameterError(f"need a < b, got a={self.a}, b={self.b}")
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"n must be an integer >= 2, got {self.n}")
        if not self.q >= 1:
            raise ParameterError(f"q must be >= 1, got {self.q}")
        if self.p is not None:
            if not self.p > 1:
                raise ParameterError(f"p must exceed 1, got {self.p}")
            if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
                raise ParameterError(f"1/p + 1/q != 1 for p={self.p}, q={self.q}")

    @classmethod
    def holder(cls, a: float, b: float, n: int, p: float) -> "MeansCase":
        return cls(a, b, n, q=p / (p - 1.0), p=p)


@dataclass(frozen=True)
class PropResult:
    lhs: float
    rhs: float
    holds: bool
    rhs_as_printed: Optional[float] = None
    holds_as_printed: Optional[bool] = None


def arithmetic_mean(a: float, b: float) -> float:
    return (a + b) / 2.0


def log_mean_power(a: float, b: float, n: int) -> float:
    """``L_n(a, b)**n = (b^(n+1) - a^(n+1)) / ((n+1)(b-a))``, no root taken."""
    if not a < b:
        raise ParameterError(f"need a < b, got a={a}, b={b}")
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


def log_mean_n(a: float, b: float, n: int) -> float:
    """n-logarithmic mean ``L_n(a, b)``.

    For odd ``n`` a negative radicand takes the real root; for even ``n`` it
    raises :class:`DomainError`.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    r = log_mean_power(a, b, n)
    if r >= 0:
        return r ** (1.0 / n)
    if n % 2 == 0:
        raise DomainError(f"L_{n}({a}, {b}) has negative radicand {r!r}")
    return -((-r) ** (1.0 / n))


def _lhs(key: str, a: float, b: float, n: int) -> float:
    ln = log_mean_power(a, b, n)
    a_pow = arithmetic_mean(a**n, b**n)
    pow_a = arithmetic_mean(a, b) ** n
    if key in ("1", "3"):
        return abs(a_pow / 3.0 + 2.0 * pow_a / 3.0 - ln)
    if key in ("2a", "4a"):
        return abs(pow_a - ln)
    return abs(a_pow - ln)


def _rhs(key: str, mc: MeansCase) -> tuple[float, Optional[float]]:
    a, b, n, q = mc.a, mc.b, mc.n, mc.q
    w = b - a
    e = (n - 1) * q
    if key not in _HOLDER_KEYS:
        s = (abs(b) ** e + abs(a) ** e) ** (1.0 / q)
        const = 5.0 / 36.0 if key == "1" else 0.25
        return const * n * w * s, None

    p = mc.p
    m = abs(arithmetic_mean(a, b)) ** e
    terms = (m + abs(a) ** e) ** (1.0 / q) + (m + abs(b) ** e) ** (1.0 / q)
    if key == "3":
        const = ((1.0 + 2.0 ** (p + 1.0)) / (3.0 * (p + 1.0))) ** (1.0 / p) / 12.0
    else:
        const = (1.0 / (p + 1.0)) ** (1.0 / p) / 4.0
    derived = const * n * w * terms
    printed = const * w * terms if key == "4b" else None
    return derived, printed


def proposition(k: str, mc: MeansCase, tol: float = ASSERT_TOL) -> PropResult:
    """Evaluate one of the mean inequalities for ``mc``.

    Raises:
        ParameterError: for an unknown key, or a Holder key without ``p``.
    """
    k = str(k)
    if k not in KEYS:
        raise ParameterError(f"unknown proposition {k!r}; choose from {KEYS}")
    if k in _HOLDER_KEYS and mc.p is None:
        raise ParameterError(f"proposition {k} needs a Holder exponent p")
    lhs = _lhs(k, mc.a, mc.b, mc.n)
    rhs, printed = _rhs(k, mc)

    def ok(bound: float) -> bool:
        return lhs <= bound + tol * max(1.0, bound)

    return PropResult(
        lhs=lhs,
        rhs=rhs,
        holds=ok(rhs),
        rhs_as_printed=printed,
        holds_as_printed=None if printed is None else ok(printed),
    )
