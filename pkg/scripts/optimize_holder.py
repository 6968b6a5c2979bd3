"""Best Holder exponent per catalog function at a preset rule.

Compares the optimised Holder bound with the power-mean bound at ``q = 1``.

    python scripts/optimize_holder.py --preset simpson
"""

import argparse

from pquad.bounds import PRESETS, bound_power_mean, preset
from pquad.catalog import catalog
from pquad.quadrature import compute_If
from pquad.search import optimize_p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", choices=sorted(PRESETS), default="simpson")
    ap.add_argument("--p-lo", type=float, default=1.01)
    ap.add_argument("--p-hi", type=float, default=50.0)
    args = ap.parse_args()

    rp = preset(args.preset)
    print(f"{'function':<8} {'|I_f|':>11} {'power-mean':>11} {'best p':>8} {'holder':>11}")
    for f in catalog():
        iv = f.p_cert_domain
        res = optimize_p(f, iv, rp, (args.p_lo, args.p_hi))
        i_f = abs(compute_If(f, iv, rp).i_f)
        b22 = bound_power_mean(f, iv, rp, 1.0)
        print(f"{f.name:<8} {i_f:11.4e} {b22:11.4e} {res.best_exponent:8.3f} {res.best_bound:11.4e}")


if __name__ == "__main__":
    main()
