"""Certified error bounds for the quadrature functional.

Two bound families are implemented, both valid when ``|f'|**q`` is a
P-function on ``[a, b]``:

* :func:`bound_power_mean` (q >= 1): ``(b-a) * (|f'(b)|^q + |f'(a)|^q)^(1/q)``
  times the sum of the two kernel integrals ``int |t - alpha*lam| dt`` over
  ``[0, 1-alpha]`` and ``int |t - 1 + lam(1-alpha)| dt`` over ``[1-alpha, 1]``.
* :func:`bound_holder` (conjugate p, q > 1): Holder on each kernel piece, with
  the derivative mean on each sub-interval controlled by the P-function
  Hadamard inequality.

Both kernel integrals take one of two closed forms depending on whether the
kink of ``|.|`` lies inside the range; :func:`classify_case` resolves that
choice for both pieces at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .catalog import Func1D, Interval
from .errors import ParameterError
from .quadrature import ASSERT_TOL, RuleParams, compute_If

_CLAMP = 1e-15


class CaseTag(str, enum.Enum):
    """Ordering of ``alpha*lam``, ``1-alpha`` and ``1-lam(1-alpha)``.

    C1: alpha*lam <= 1-alpha <= 1-lam(1-alpha)
    C2: alpha*lam <= 1-lam(1-alpha) <= 1-alpha
    C3: 1-alpha <= alpha*lam <= 1-lam(1-alpha)
    """

    C1 = "C1"
    C2 = "C2"
    C3 = "C3"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GammaPair:
    gamma1: float
    gamma2: float


@dataclass(frozen=True)
class EpsilonPair:
    """``eps1`` is nan when ``alpha*lam > 1-alpha``; ``eps2`` is nan when
    ``alpha*lam < 1-alpha``. Each is only meaningful on its own side."""

    eps1: float
    eps2: float


@dataclass(frozen=True)
class CKPair:
    c_f: float
    k_f: float


@dataclass(frozen=True)
class HolderPair:
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (self.p > 1 and self.q > 1):
            raise ParameterError(f"Holder exponents must exceed 1, got p={self.p}, q={self.q}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
            raise ParameterError(f"1/p + 1/q != 1 for p={self.p}, q={self.q}")

    @classmethod
    def from_p(cls, p: float) -> "HolderPair":
        if not p > 1:
            raise ParameterError(f"p must exceed 1, got {p}")
        return cls(p, p / (p - 1.0))


@dataclass(frozen=True)
class BoundReport:
    i_f_abs: float
    bound22: float
    q: float
    case: CaseTag
    ratio22: float
    bound23: Optional[float] = None
    holder: Optional[HolderPair] = None
    ratio23: Optional[float] = None

    @property
    def holds22(self) -> bool:
        return dominated(self.i_f_abs, self.bound22)

    @property
    def holds23(self) -> bool:
        return self.bound23 is None or dominated(self.i_f_abs, self.bound23)

    @property
    def passed(self) -> bool:
        return self.holds22 and self.holds23


def dominated(value: float, bound: float, tol: float = ASSERT_TOL) -> bool:
    """``value <= bound`` up to ``tol * max(1, bound)``."""
    return value <= bound + tol * max(1.0, bound)


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def _pow(base: float, e: float) -> float:
    if base < 0.0:
        if base < -_CLAMP:
            return math.nan
        base = 0.0
    return base**e


# --- kernel constants ----------------------------------------------------------


def gamma(alpha: float, lam: float) -> GammaPair:
    """``gamma1 = (1-alpha)(alpha*lam - (1-alpha)/2)``,
    ``gamma2 = (alpha*lam)^2 - gamma1``."""
    g1 = (1.0 - alpha) * (alpha * lam - 0.5 * (1.0 - alpha))
    return GammaPair(g1, (alpha * lam) ** 2 - g1)


def epsilon(alpha: float, lam: float, p: float) -> EpsilonPair:
    """``eps1 = (alpha*lam)^(p+1) + (1-alpha-alpha*lam)^(p+1)``,
    ``eps2 = (alpha*lam)^(p+1) - (alpha*lam-1+alpha)^(p+1)``."""
    al = alpha * lam
    head = al ** (p + 1.0)
    e1 = head + _pow(1.0 - alpha - al, p + 1.0)
    e2 = head - _pow(al - 1.0 + alpha, p + 1.0)
    if -_CLAMP < e2 < 0.0:
        e2 = 0.0
    return EpsilonPair(e1, e2)


def _first_is_inner(alpha: float, lam: float) -> bool:
    # kink t = alpha*lam inside [0, 1-alpha]; ties go to the inner branch
    return alpha * lam <= 1.0 - alpha


def _second_is_inner(alpha: float, lam: float) -> bool:
    # kink t = 1-lam(1-alpha) inside [1-alpha, 1]
    return lam * (1.0 - alpha) <= alpha


def classify_case(rp: RuleParams) -> CaseTag:
    first = _first_is_inner(rp.alpha, rp.lam)
    second = _second_is_inner(rp.alpha, rp.lam)
    if first and not second:
        return CaseTag.C2
    if second and not first:
        return CaseTag.C3
    # Both outer only through rounding at lam = 1, alpha = 1/2 where C1 is exact.
    return CaseTag.C1


def kernel_l1(rp: RuleParams) -> float:
    """``int_0^1`` of the absolute kernel, the factor multiplying the
    power-mean bound."""
    a, lam = rp.alpha, rp.lam
    g_left = gamma(a, lam)
    g_right = gamma(1.0 - a, lam)
    case = classify_case(rp)
    if case is CaseTag.C1:
        return g_left.gamma2 + g_right.gamma2
    if case is CaseTag.C2:
        return g_left.gamma2 + g_right.gamma1
    return g_left.gamma1 + g_right.gamma2


def ck(f: Func1D, iv: Interval, alpha: float, q: float) -> CKPair:
    """Hadamard-type majorants of ``int |f'|^q`` over ``[a, node]`` and
    ``[node, b]``, with ``node = (1-alpha)b + alpha*a``."""
    d = f.derivative
    node = (1.0 - alpha) * iv.b + alpha * iv.a
    gn = _powq(d(node), q)
    return CKPair(
        (1.0 - alpha) * (gn + _powq(d(iv.a), q)),
        alpha * (gn + _powq(d(iv.b), q)),
    )


def _powq(x: float, q: float) -> float:
    try:
        return abs(x) ** q
    except OverflowError:
        return math.inf


def _lq_sum(u: float, v: float, q: float) -> float:
    """``(|u|^q + |v|^q)^(1/q)`` without overflow for large ``q``."""
    m = max(abs(u), abs(v))
    if m == 0.0 or not math.isfinite(m):
        return m
    return m * ((abs(u) / m) ** q + (abs(v) / m) ** q) ** (1.0 / q)


def _endpoint_norm(f: Func1D, iv: Interval, q: float) -> float:
    return _lq_sum(f.derivative(iv.b), f.derivative(iv.a), q)


# --- bounds ------------------------------------------------------------------


def bound_power_mean(
    f: Func1D, iv: Interval, rp: RuleParams, q: float = 1.0, *, unsafe: bool = False
) -> float:
    """Power-mean bound on ``|I_f|``, valid for ``q >= 1``.

    Raises:
        ParameterError: if ``q < 1``.
        CertificationError: if ``iv`` is not inside ``f.p_cert_domain`` and
            ``unsafe`` is false.
    """
    if not q >= 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if not unsafe:
        f.require_certified(iv)
    return iv.width * _endpoint_norm(f, iv, q) * kernel_l1(rp)


def bound_holder(
    f: Func1D, iv: Interval, rp: RuleParams, hp: HolderPair, *, unsafe: bool = False
) -> float:
    """Holder bound on ``|I_f|`` for conjugate exponents ``p, q > 1``."""
    if not isinstance(hp, HolderPair):
        raise ParameterError("bound_holder needs a HolderPair")
    if not unsafe:
        f.require_certified(iv)
    p, q = hp.p, hp.q
    alpha, lam = rp.alpha, rp.lam
    e_left = epsilon(alpha, lam, p)
    e_right = epsilon(1.0 - alpha, lam, p)
    d = f.derivative
    dn = d((1.0 - alpha) * iv.b + alpha * iv.a)
    # c_f^(1/q) and k_f^(1/q), scaled so that large q cannot overflow
    c_root = (1.0 - alpha) ** (1.0 / q) * _lq_sum(dn, d(iv.a), q)
    k_root = alpha ** (1.0 / q) * _lq_sum(dn, d(iv.b), q)
    case = classify_case(rp)
    if case is CaseTag.C1:
        el, er = e_left.eps1, e_right.eps1
    elif case is CaseTag.C2:
        el, er = e_left.eps1, e_right.eps2
    else:
        el, er = e_left.eps2, e_right.eps1
    inv_p = 1.0 / p
    total = _pow(el, inv_p) * c_root + _pow(er, inv_p) * k_root
    return iv.width * (1.0 / (p + 1.0)) ** inv_p * total


def midpoint_bound_endpoints_only(
    f: Func1D, iv: Interval, hp: HolderPair, *, unsafe: bool = False
) -> float:
    """Midpoint Holder bound with ``|f'(mid)|^q`` replaced by
    ``|f'(a)|^q + |f'(b)|^q``; never smaller than the midpoint
    :func:`bound_holder`."""
    if not unsafe:
        f.require_certified(iv)
    p, q = hp.p, hp.q
    ga = abs(f.derivative(iv.a)) ** q
    gb = abs(f.derivative(iv.b)) ** q
    return (
        iv.width
        / 4.0
        * (1.0 / (p + 1.0)) ** (1.0 / p)
        * ((gb + 2.0 * ga) ** (1.0 / q) + (ga + 2.0 * gb) ** (1.0 / q))
    )


PRESETS = {
    "simpson": RuleParams(0.5, 1.0 / 3.0),
    "midpoint": RuleParams(0.5, 0.0),
    "trapezoid": RuleParams(0.5, 1.0),
}


def preset(name: str) -> RuleParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def classical_simpson_bound(sup_f4: float, iv: Interval) -> float:
    """``sup|f''''| (b-a)^4 / 2880``, the fourth-derivative Simpson bound."""
    if not sup_f4 >= 0:
        raise ParameterError(f"sup |f''''| must be >= 0, got {sup_f4}")
    return sup_f4 * iv.width**4 / 2880.0


def evaluate(
    f: Func1D,
    iv: Interval,
    rp: RuleParams,
    q: float = 1.0,
    hp: Optional[HolderPair] = None,
    *,
    unsafe: bool = False,
) -> BoundReport:
    i_f_abs = abs(compute_If(f, iv, rp).i_f)
    b22 = bound_power_mean(f, iv, rp, q, unsafe=unsafe)
    b23 = None if hp is None else bound_holder(f, iv, rp, hp, unsafe=unsafe)
    return BoundReport(
        i_f_abs=i_f_abs,
        bound22=b22,
        q=q,
        case=classify_case(rp),
        ratio22=_ratio(i_f_abs, b22),
        bound23=b23,
        holder=hp,
        ratio23=None if b23 is None else _ratio(i_f_abs, b23),
    )


# Alternate names for the two bounds.
bound_thm22 = bound_power_mean
bound_thm23 = bound_holder
