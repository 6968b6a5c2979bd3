"""Parameter sweeps, Holder-exponent optimisation and seeded fuzzing.

Every routine here is deterministic in its inputs and seed. Fuzz trial ``i``
draws from ``numpy.random.default_rng([seed, i])`` so a trial's inputs do not
depend on which trials ran before it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .bounds import (
    HolderPair,
    bound_holder,
    bound_power_mean,
    dominated,
    evaluate,
)
from .catalog import Func1D, Interval
from .errors import ParameterError, PQuadError
from .quadrature import RuleParams

CSV_COLUMNS = (
    "function", "a", "b", "alpha", "lambda", "q", "p", "case",
    "i_f_abs", "bound22", "bound23", "ratio22", "ratio23", "pass",
)

FUZZ_MIN_WIDTH = 1e-3
FUZZ_Q_RANGE = (1.0, 4.0)
FUZZ_P_RANGE = (1.1, 8.0)
GOLDEN_TOL = 1e-6
PROBE_POINTS = 32


@dataclass(frozen=True)
class SweepGrid:
    alpha_steps: int = 5
    lambda_steps: int = 5
    q_values: Sequence[float] = (1.0,)
    p_values: Sequence[float] = ()

    def __post_init__(self) -> None:
        if self.alpha_steps < 2 or self.lambda_steps < 2:
            raise ParameterError("grid needs at least 2 steps per axis")
        if any(not q >= 1 for q in self.q_values):
            raise ParameterError(f"q values must be >= 1, got {list(self.q_values)}")
        if any(not p > 1 for p in self.p_values):
            raise ParameterError(f"p values must exceed 1, got {list(self.p_values)}")

    @staticmethod
    def axis(steps: int) -> list[float]:
        # i/(n-1) keeps 1/2 and 1/3 bit-identical to the preset values
        return [i / (steps - 1) for i in range(steps)]


@dataclass(frozen=True)
class TrialRecord:
    function: str
    a: float
    b: float
    alpha: float
    lam: float
    q: float
    p: Optional[float]
    case: str
    i_f_abs: float
    bound22: float
    bound23: Optional[float]
    ratio22: float
    ratio23: Optional[float]
    passed: bool
    error: Optional[str] = field(default=None, compare=False)

    def as_row(self) -> dict[str, object]:
        return dict(zip(CSV_COLUMNS, (
            self.function, self.a, self.b, self.alpha, self.lam, self.q, self.p,
            self.case, self.i_f_abs, self.bound22, self.bound23, self.ratio22,
            self.ratio23, self.passed,
        )))


@dataclass(frozen=True)
class OptResult:
    best_exponent: float
    best_bound: float
    evaluations: int
    trace: list[tuple[float, float]]


class SearchAborted(PQuadError):
    """A bound evaluation failed mid-search; ``trace`` holds what was done."""

    def __init__(self, message: str, trace: list[tuple[float, float]]) -> None:
        super().__init__(message)
        self.trace = trace


def trial(
    f: Func1D,
    iv: Interval,
    rp: RuleParams,
    q: float,
    p: Optional[float] = None,
    *,
    unsafe: bool = False,
) -> TrialRecord:
    """Evaluate both bounds at one point; failures become a record."""
    try:
        hp = None if p is None else HolderPair.from_p(p)
        rep = evaluate(f, iv, rp, q, hp, unsafe=unsafe)
    except PQuadError as exc:
        nan = math.nan
        return TrialRecord(
            f.name, iv.a, iv.b, rp.alpha, rp.lam, q, p, "", nan, nan,
            None if p is None else nan, nan, None if p is None else nan,
            False, error=str(exc),
        )
    return TrialRecord(
        function=f.name,
        a=iv.a,
        b=iv.b,
        alpha=rp.alpha,
        lam=rp.lam,
        q=q,
        p=p,
        case=rep.case.value,
        i_f_abs=rep.i_f_abs,
        bound22=rep.bound22,
        bound23=rep.bound23,
        ratio22=rep.ratio22,
        ratio23=rep.ratio23,
        passed=rep.passed,
    )


def sweep(
    f: Func1D, iv: Interval, grid: SweepGrid, *, unsafe: bool = False
) -> list[TrialRecord]:
    """One record per grid point, ordered alpha, then lambda, then q, then p."""
    ps: list[Optional[float]] = list(grid.p_values) or [None]
    return [
        trial(f, iv, RuleParams(alpha, lam), q, p, unsafe=unsafe)
        for alpha in grid.axis(grid.alpha_steps)
        for lam in grid.axis(grid.lambda_steps)
        for q in grid.q_values
        for p in ps
    ]


def q_profile(
    f: Func1D, iv: Interval, rp: RuleParams, q_values: Iterable[float], *, unsafe: bool = False
) -> list[tuple[float, float]]:
    """Power-mean bound for each ``q``.

    The bound is nonincreasing in ``q`` and tends to
    ``(b-a) * max(|f'(a)|, |f'(b)|) * kernel_l1`` as ``q -> inf``.
    """
    qs = list(q_values)
    if qs != sorted(qs):
        raise ParameterError("q_values must be sorted ascending")
    return [(q, bound_power_mean(f, iv, rp, q, unsafe=unsafe)) for q in qs]


def probe_p(
    f: Func1D,
    iv: Interval,
    rp: RuleParams,
    p_range: tuple[float, float],
    points: int = PROBE_POINTS,
    *,
    unsafe: bool = False,
) -> list[tuple[float, float]]:
    """Holder bound on a log-spaced grid of ``points`` exponents."""
    lo, hi = _check_range(p_range)
    return [(p, bound_holder(f, iv, rp, HolderPair.from_p(p), unsafe=unsafe)) for p in _log_grid(lo, hi, points)]


def _log_grid(lo: float, hi: float, points: int) -> list[float]:
    xs = np.linspace(math.log(lo), math.log(hi), points)
    return [lo] + [math.exp(x) for x in xs[1:-1]] + [hi]


def _check_range(p_range: tuple[float, float]) -> tuple[float, float]:
    lo, hi = p_range
    if not lo > 1:
        raise ParameterError(f"p_lo must exceed 1, got {lo}")
    if not hi > lo:
        raise ParameterError(f"p_hi must exceed p_lo, got [{lo}, {hi}]")
    return float(lo), float(hi)


def optimize_p(
    f: Func1D,
    iv: Interval,
    rp: RuleParams,
    p_range: tuple[float, float],
    tol: float = GOLDEN_TOL,
    *,
    unsafe: bool = False,
) -> OptResult:
    """Minimise the Holder bound over ``p`` in ``p_range``.

    A 32-point log-spaced probe picks a bracket around its best point, then
    golden-section search in ``log p`` refines it until the bracket is below
    ``tol`` relative to ``p``. Unimodality is not known, so the probe is what
    guards against a poor local minimum. Ties resolve to the smallest ``p``,
    which makes ``p_lo`` the answer when the bound is identically zero.
    """
    lo, hi = _check_range(p_range)
    trace: list[tuple[float, float]] = []

    def bound_at(p: float) -> float:
        try:
            val = bound_holder(f, iv, rp, HolderPair.from_p(p), unsafe=unsafe)
        except PQuadError as exc:
            raise SearchAborted(f"bound failed at p={p!r}: {exc}", trace) from exc
        trace.append((p, val))
        return val

    ps = _log_grid(lo, hi, PROBE_POINTS)
    vals = [bound_at(p) for p in ps]
    i = int(np.argmin(vals))
    left = math.log(ps[max(i - 1, 0)])
    right = math.log(ps[min(i + 1, len(ps) - 1)])

    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = right - inv_phi * (right - left)
    d = left + inv_phi * (right - left)
    fc, fd = bound_at(math.exp(c)), bound_at(math.exp(d))
    while right - left > tol:
        if fc <= fd:
            right, d, fd = d, c, fc
            c = right - inv_phi * (right - left)
            fc = bound_at(math.exp(c))
        else:
            left, c, fc = c, d, fd
            d = left + inv_phi * (right - left)
            fd = bound_at(math.exp(d))

    best_p, best = min(trace, key=lambda pb: (pb[1], pb[0]))
    return OptResult(best_p, best, len(trace), list(trace))


def _draw_interval(rng: np.random.Generator, dom: Interval) -> Interval:
    width = min(FUZZ_MIN_WIDTH, 0.5 * dom.width)
    while True:
        x, y = sorted(rng.uniform(dom.a, dom.b, size=2))
        if y - x >= width:
            return Interval(float(x), float(y))


def fuzz_trial(functions: Sequence[Func1D], seed: int, index: int) -> TrialRecord:
    """Trial ``index`` of a fuzz run; depends only on ``(seed, index)``."""
    rng = np.random.default_rng([seed, index])
    f = functions[int(rng.integers(len(functions)))]
    iv = _draw_interval(rng, f.p_cert_domain)
    alpha, lam = rng.uniform(0.0, 1.0, size=2)
    q = float(rng.uniform(*FUZZ_Q_RANGE))
    # maps [0, 1) onto (p_lo, p_hi]
    p_lo, p_hi = FUZZ_P_RANGE
    p = p_hi - (p_hi - p_lo) * float(rng.uniform())
    return trial(f, iv, RuleParams(float(alpha), float(lam)), q, p)


def run_trials(functions: Sequence[Func1D], trials: int, seed: int) -> list[TrialRecord]:
    """All records of a fuzz run, in trial order."""
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    if not functions:
        raise ParameterError("fuzz needs at least one function")
    return [fuzz_trial(functions, seed, i) for i in range(trials)]


def fuzz(functions: Sequence[Func1D], trials: int, seed: int) -> list[TrialRecord]:
    """Failing records of a fuzz run (empty when both bounds always hold)."""
    return [r for r in run_trials(functions, trials, seed) if not r.passed]


__all__ = [
    "CSV_COLUMNS",
    "OptResult",
    "SearchAborted",
    "SweepGrid",
    "TrialRecord",
    "dominated",
    "fuzz",
    "fuzz_trial",
    "optimize_p",
    "probe_p",
    "q_profile",
    "run_trials",
    "sweep",
    "trial",
]
