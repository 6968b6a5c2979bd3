"""The three-point quadrature functional and its reference integral oracle.

For ``alpha, lam`` in ``[0, 1]`` the functional is

    I_f = lam*(alpha*f(a) + (1-alpha)*f(b)) + (1-lam)*f(alpha*a + (1-alpha)*b)
          - 1/(b-a) * int_a^b f(x) dx

``alpha = 1/2`` with ``lam = 1/3, 0, 1`` gives the Simpson, midpoint and
trapezoid errors. :func:`lemma_identity_rhs` evaluates the kernel
representation of ``I_f`` as an integral of ``f'``, which is the starting
point of both bound families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .catalog import Func1D, Interval
from .errors import IntegrationError, ParameterError

ORACLE_TOL = 1e-10
ORACLE_MAX_DEPTH = 50
_ROUNDOFF = 64 * 2.220446049250313e-16
# Absolute tolerance, scaled by max(1, |value|), for every asserted inequality.
ASSERT_TOL = 1e-9


@dataclass(frozen=True)
class RuleParams:
    alpha: float
    lam: float

    def __post_init__(self) -> None:
        for name, v in (("alpha", self.alpha), ("lambda", self.lam)):
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise ParameterError(f"{name} must lie in [0, 1], got {v!r}")


@dataclass(frozen=True)
class QuadResult:
    i_f: float
    ref_integral: float
    ref_error_est: float


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def reference_integral(
    g: Callable[[float], float],
    iv: Interval,
    tol: float = ORACLE_TOL,
    max_depth: int = ORACLE_MAX_DEPTH,
) -> tuple[float, float]:
    """Adaptive Simpson integration with Richardson extrapolation.

    Each panel compares Simpson's rule against the composite rule on its two
    halves; the extrapolated value ``S2 + (S2 - S1)/15`` is Boole's rule, so
    accepted panels are sixth-order accurate.

    A panel is also accepted once its correction is at the rounding level of
    its own value, so integrands of large magnitude need a ``tol`` scaled to
    that magnitude for the estimate to stay below ``tol``.

    Returns:
        ``(value, error_estimate)``.

    Raises:
        ParameterError: if ``tol < 1e-13``.
        IntegrationError: if a panel is still unresolved at ``max_depth``.
    """
    if not tol >= 1e-13:
        raise ParameterError(f"tol must be >= 1e-13, got {tol!r}")

    def adapt(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = g(lm)
        frm = g(rm)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if not math.isfinite(delta):
            raise IntegrationError("non-finite integrand", (a, b))
        # second test: delta is at the rounding level of the panel sum
        if abs(delta) <= 15.0 * tol or abs(delta) <= _ROUNDOFF * (abs(left) + abs(right)):
            return left + right + delta / 15.0, abs(delta) / 15.0
        if depth >= max_depth:
            raise IntegrationError(f"no convergence within depth {max_depth}", (a, b))
        lv, le = adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        rv, re = adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
        return lv + rv, le + re

    a, b = iv.a, iv.b
    fa, fm, fb = g(a), g(iv.mid), g(b)
    return adapt(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), tol, 0)


def _integral(
    g: Callable[[float], float], lo: float, hi: float, tol: float
) -> float:
    if hi <= lo:
        return 0.0
    return reference_integral(g, Interval(lo, hi), tol)[0]


def _piecewise(
    g: Callable[[float], float], lo: float, hi: float, cuts: tuple[float, ...], tol: float
) -> float:
    pts = [lo] + sorted(c for c in cuts if lo < c < hi) + [hi]
    return sum(_integral(g, u, v, tol) for u, v in zip(pts, pts[1:]))


def integral_of(f: Func1D, iv: Interval, tol: float = ORACLE_TOL) -> tuple[float, float]:
    """``int_a^b f``, from the closed form when ``f`` carries one."""
    if f.antiderivative is not None:
        return f.antiderivative(iv.b) - f.antiderivative(iv.a), 0.0
    return reference_integral(f.value, iv, tol)


def _require_valid(f: Func1D, iv: Interval) -> None:
    if not f.valid_domain.contains(iv):
        raise ParameterError(f"{iv} is outside the domain {f.valid_domain} of {f.name}")


def compute_If(
    f: Func1D,
    iv: Interval,
    rp: RuleParams,
    *,
    use_closed_form: bool = True,
    tol: float = ORACLE_TOL,
) -> QuadResult:
    """Signed value of the quadrature functional ``I_f(lam, alpha, a, b)``."""
    _require_valid(f, iv)
    a, b = iv.a, iv.b
    alpha, lam = rp.alpha, rp.lam
    if use_closed_form:
        integral, err = integral_of(f, iv, tol)
    else:
        integral, err = reference_integral(f.value, iv, tol)
    node = alpha * a + (1.0 - alpha) * b
    rule = lam * (alpha * f(a) + (1.0 - alpha) * f(b)) + (1.0 - lam) * f(node)
    return QuadResult(rule - integral / (b - a), integral, err)


def lemma_identity_rhs(
    f: Func1D, iv: Interval, rp: RuleParams, tol: float = ORACLE_TOL
) -> float:
    """Kernel form of ``I_f``:

    ``(b-a) * [ int_0^{1-alpha} (t - alpha*lam) f'(tb + (1-t)a) dt
              + int_{1-alpha}^1 (t - 1 + lam(1-alpha)) f'(tb + (1-t)a) dt ]``

    Each piece is split at ``t = alpha*lam`` and ``t = 1 - lam(1-alpha)``.
    """
    _require_valid(f, iv)
    a, b = iv.a, iv.b
    alpha, lam = rp.alpha, rp.lam
    d = f.derivative
    split = 1.0 - alpha
    c1 = alpha * lam
    c2 = 1.0 - lam * (1.0 - alpha)
    cuts = (c1, c2)

    def k1(t: float) -> float:
        return (t - c1) * d(t * b + (1.0 - t) * a)

    def k2(t: float) -> float:
        return (t - c2) * d(t * b + (1.0 - t) * a)

    first = _piecewise(k1, 0.0, split, cuts, tol)
    second = _piecewise(k2, split, 1.0, cuts, tol)
    return (b - a) * (first + second)
