"""Independent oracles shared by the test modules.

Everything here goes through scipy/mpmath quadrature or exact fractions,
never through ``pquad``'s own integrator or closed-form kernel constants.
"""

import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from pquad.catalog import catalog


def quad(g, lo, hi, points=()):
    if hi <= lo:
        return 0.0
    inner = [c for c in points if lo < c < hi]
    with warnings.catch_warnings():
        # very short ranges near a kink trip scipy's roundoff heuristics
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(g, lo, hi, points=inner or None, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def kernel_abs_integrals(alpha, lam, power=1.0):
    """``int |t - alpha*lam|^power`` over ``[0, 1-alpha]`` and
    ``int |t - 1 + lam(1-alpha)|^power`` over ``[1-alpha, 1]``."""
    c1, c2 = alpha * lam, 1 - lam * (1 - alpha)
    left = quad(lambda t: abs(t - c1) ** power, 0.0, 1 - alpha, (c1,))
    right = quad(lambda t: abs(t - c2) ** power, 1 - alpha, 1.0, (c2,))
    return left, right


def holder_chain(f, a, b, alpha, lam, p):
    """Holder-type bound rebuilt from numerical kernel integrals."""
    q = p / (p - 1)
    k1, k2 = kernel_abs_integrals(alpha, lam, p)
    d = f.derivative
    node = (1 - alpha) * b + alpha * a
    c = (1 - alpha) * (abs(d(node)) ** q + abs(d(a)) ** q)
    k = alpha * (abs(d(node)) ** q + abs(d(b)) ** q)
    return (b - a) * (k1 ** (1 / p) * c ** (1 / q) + k2 ** (1 / p) * k ** (1 / q))


def brute_If(f, a, b, alpha, lam):
    mean = quad(f.value, a, b) / (b - a)
    node = alpha * a + (1 - alpha) * b
    return lam * (alpha * f(a) + (1 - alpha) * f(b)) + (1 - lam) * f(node) - mean


@pytest.fixture(scope="session")
def funcs():
    return catalog()


def random_subinterval(rng, dom, min_width=1e-2):
    while True:
        x, y = sorted(rng.uniform(dom.a, dom.b, size=2))
        if y - x >= min_width:
            return float(x), float(y)


def rel_err(x, y):
    return abs(x - y) / max(abs(y), 1e-300) if y != 0 else abs(x)


__all__ = ["quad", "kernel_abs_integrals", "holder_chain", "brute_If", "random_subinterval", "rel_err", "math", "np"]
