"""Scalar test functions and an executable P-function check.

A function ``g`` is a P-function on ``[a, b]`` when it is nonnegative and
``g(t*x + (1-t)*y) <= g(x) + g(y)`` for every ``x, y`` in the interval and
``t`` in ``[0, 1]``. The bounds in :mod:`pquad.bounds` require ``|f'|**q`` to
be a P-function, so every catalog entry declares the interval on which that
holds for all ``q >= 1``. The declaration is validated by sampling in the
test suite; sampling can refute a declaration but never prove it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CertificationError, EvaluationError, ParameterError

RealFn = Callable[[float], float]

P_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ParameterError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise ParameterError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def mid(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, other: "Interval") -> bool:
        return self.a <= other.a and other.b <= self.b

    def __str__(self) -> str:
        return f"[{self.a!r}, {self.b!r}]"


@dataclass(frozen=True)
class Func1D:
    """A differentiable test function.

    ``p_cert_domain`` is the interval on which ``|f'|**q`` is asserted to be a
    P-function for every ``q >= 1``. ``antiderivative``, when present, is a
    closed form used in place of the numerical oracle.
    """

    name: str
    value: RealFn
    derivative: RealFn
    valid_domain: Interval
    p_cert_domain: Interval
    antiderivative: Optional[RealFn] = None
    description: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.valid_domain.contains(self.p_cert_domain):
            raise ParameterError(
                f"{self.name}: p_cert_domain {self.p_cert_domain} not inside "
                f"valid_domain {self.valid_domain}"
            )

    def __call__(self, x: float) -> float:
        return self.value(x)

    def derivative_power(self, q: float) -> RealFn:
        """Return ``x -> |f'(x)|**q``."""
        d = self.derivative
        return lambda x: abs(d(x)) ** q

    def require_certified(self, iv: Interval) -> None:
        if not self.p_cert_domain.contains(iv):
            raise CertificationError(
                f"{self.name}: {iv} is outside the P-certified domain {self.p_cert_domain}"
            )


@dataclass(frozen=True)
class PWitness:
    """A sample refuting the P-property.

    ``kind`` is ``"negative"`` when ``g(x) < 0`` (then ``y == x``, ``lhs`` is
    ``g(x)`` and ``rhs`` is 0) and ``"mixing"`` when
    ``g(t*x + (1-t)*y) > g(x) + g(y)``.
    """

    x: float
    y: float
    t: float
    lhs: float
    rhs: float
    kind: str = "mixing"


def _checked(g: RealFn, x: float) -> float:
    v = float(g(x))
    if not math.isfinite(v):
        raise EvaluationError(x, v)
    return v


def _stratified_triples(iv: Interval) -> list[tuple[float, float, float]]:
    a, b, m = iv.a, iv.b, iv.mid
    return [
        (a, b, 0.5),
        (a, b, 0.25),
        (a, b, 0.75),
        (a, m, 0.5),
        (m, b, 0.5),
        (a, b, 0.0),
        (a, b, 1.0),
    ]


def is_p_function_sampled(
    g: RealFn,
    iv: Interval,
    n_samples: int = 1000,
    seed: int = 0,
) -> tuple[bool, Optional[PWitness]]:
    """Sampled check of the P-function definition on ``iv``.

    Endpoints and the midpoint are tried first, then ``n_samples`` seeded
    uniform triples ``(x, y, t)``. Returns ``(True, None)`` or
    ``(False, witness)`` for the first violation found.

    Raises:
        ParameterError: if ``n_samples < 1``.
        EvaluationError: if ``g`` is not finite at a sample point.
    """
    if n_samples < 1:
        raise ParameterError(f"n_samples must be >= 1, got {n_samples}")

    for x in (iv.a, iv.b, iv.mid):
        gx = _checked(g, x)
        if gx < -P_CHECK_TOL * max(1.0, abs(gx)):
            return False, PWitness(x, x, 1.0, gx, 0.0, kind="negative")

    rng = np.random.default_rng(seed)
    cloud = rng.uniform(iv.a, iv.b, size=(n_samples, 2))
    ts = rng.uniform(0.0, 1.0, size=n_samples)
    triples = _stratified_triples(iv) + [
        (float(x), float(y), float(t)) for (x, y), t in zip(cloud, ts)
    ]

    for x, y, t in triples:
        gx = _checked(g, x)
        gy = _checked(g, y)
        for p, gp in ((x, gx), (y, gy)):
            if gp < -P_CHECK_TOL * max(1.0, abs(gp)):
                return False, PWitness(p, p, 1.0, gp, 0.0, kind="negative")
        lhs = _checked(g, t * x + (1.0 - t) * y)
        rhs = gx + gy
        if lhs > rhs + P_CHECK_TOL * max(1.0, abs(gx) + abs(gy)):
            return False, PWitness(x, y, t, lhs, rhs)
    return True, None


@dataclass(frozen=True)
class HHCheck:
    left: float
    middle: float
    right: float
    holds: bool


def hh_p_check(f: Func1D, iv: Interval, q: float, *, unsafe: bool = False) -> HHCheck:
    """Hadamard-type sandwich for ``g = |f'|**q`` on ``iv``.

    ``left = g(mid)``, ``middle = 2/(b-a) * int g``, ``right = 2*(g(a)+g(b))``.
    For a P-function ``left <= middle <= right``.
    """
    from .quadrature import ASSERT_TOL, ORACLE_TOL, reference_integral

    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if not unsafe:
        f.require_certified(iv)
    g = f.derivative_power(q)
    left = g(iv.mid)
    right = 2.0 * (g(iv.a) + g(iv.b))
    # P-functions are bounded by g(a) + g(b), so this is a relative tolerance
    scale = max(1.0, 0.5 * right) * iv.width
    integral, _ = reference_integral(g, iv, ORACLE_TOL * scale)
    middle = 2.0 * integral / iv.width
    holds = (
        left <= middle + ASSERT_TOL * max(1.0, abs(middle))
        and middle <= right + ASSERT_TOL * max(1.0, abs(right))
    )
    return HHCheck(left, middle, right, holds)


# --- catalog -----------------------------------------------------------------

_VALID_REAL = Interval(-100.0, 100.0)


def power(n: int, radius: float = 3.0) -> Func1D:
    """``x**n`` certified on ``[-radius, radius]``.

    ``|n x**(n-1)|**q`` is quasi-convex on the whole line, so any finite
    interval can be certified; the catalog uses ``radius=3``.
    """
    if n < 1:
        raise ParameterError(f"power needs n >= 1, got {n}")
    valid = _VALID_REAL if radius <= 100.0 else Interval(-radius, radius)
    return Func1D(
        name=f"pow{n}",
        value=lambda x: x**n,
        derivative=lambda x: n * x ** (n - 1),
        antiderivative=lambda x: x ** (n + 1) / (n + 1),
        valid_domain=valid,
        p_cert_domain=Interval(-radius, radius),
        description=f"x^{n}",
    )


def _xlogx_anti(x: float) -> float:
    return 0.5 * x * x * math.log(x) - 0.25 * x * x


def catalog() -> list[Func1D]:
    """All built-in test functions, in a stable order."""
    entries = [
        Func1D(
            name="const1",
            value=lambda x: 1.0,
            derivative=lambda x: 0.0,
            antiderivative=lambda x: x,
            valid_domain=_VALID_REAL,
            p_cert_domain=Interval(-3.0, 3.0),
            description="1",
        ),
        Func1D(
            name="affine",
            value=lambda x: 2.0 * x + 1.0,
            derivative=lambda x: 2.0,
            antiderivative=lambda x: x * x + x,
            valid_domain=_VALID_REAL,
            p_cert_domain=Interval(-3.0, 3.0),
            description="2x+1",
        ),
    ]
    entries += [power(n) for n in range(2, 7)]
    entries += [
        Func1D(
            name="exp",
            value=math.exp,
            derivative=math.exp,
            antiderivative=math.exp,
            valid_domain=Interval(-50.0, 50.0),
            p_cert_domain=Interval(0.0, 3.0),
            description="e^x",
        ),
        Func1D(
            name="recip",
            value=lambda x: 1.0 / x,
            derivative=lambda x: -1.0 / (x * x),
            antiderivative=math.log,
            valid_domain=Interval(1e-3, 1e3),
            p_cert_domain=Interval(0.25, 4.0),
            description="1/x",
        ),
        Func1D(
            name="xlogx",
            value=lambda x: x * math.log(x),
            derivative=lambda x: math.log(x) + 1.0,
            antiderivative=_xlogx_anti,
            valid_domain=Interval(1e-3, 1e3),
            p_cert_domain=Interval(1.0, 5.0),
            description="x log x",
        ),
        Func1D(
            name="sin",
            value=math.sin,
            derivative=math.cos,
            antiderivative=lambda x: -math.cos(x),
            valid_domain=_VALID_REAL,
            p_cert_domain=Interval(0.0, math.pi),
            description="sin x",
        ),
    ]
    return entries


def lookup(name: str) -> Func1D:
    for f in catalog():
        if f.name == name:
            return f
    known = ", ".join(f.name for f in catalog())
    raise KeyError(f"unknown function {name!r}; known: {known}")
