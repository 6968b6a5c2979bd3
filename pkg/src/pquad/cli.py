"""Command-line front end.

Usage:
    pquad verify   --function pow2 --a 0 --b 1 --preset simpson --q 1 [--p 2]
    pquad identity --function pow3 --trials 100 --seed 7
    pquad sweep    --function pow2 --a 0 --b 1 --alpha-steps 5 --lambda-steps 5 --q 1
    pquad fuzz     --trials 10000 --seed 42
    pquad means    --k 1 --a 1 --b 2 --n 2 --q 1
    pquad optp     --function pow2 --a 0 --b 1 --preset midpoint --p-lo 1.01 --p-hi 50

Exit codes: 0 every asserted inequality holds, 1 at least one violation,
2 configuration rejected before any computation.

``--config FILE`` reads ``key = value`` lines using the flag names
(``alpha-steps = 7``); flags given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import bounds, catalog, means, quadrature, search
from .catalog import Interval
from .errors import PQuadError
from .quadrature import RuleParams

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

IDENTITY_COLUMNS = (
    "function", "a", "b", "alpha", "lambda", "i_f", "identity_rhs", "residual", "pass",
)
MEANS_COLUMNS = (
    "k", "a", "b", "n", "q", "p", "lhs", "rhs", "holds", "rhs_as_printed", "holds_as_printed",
)
OPTP_COLUMNS = ("p", "q", "bound23", "best")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    function: Optional[str] = None
    a: Optional[float] = None
    b: Optional[float] = None
    alpha: Optional[float] = None
    lam: Optional[float] = None
    preset: Optional[str] = None
    q: list[float] = field(default_factory=list)
    p: list[float] = field(default_factory=list)
    alpha_steps: int = 5
    lambda_steps: int = 5
    trials: int = 100
    seed: int = 0
    functions: Optional[str] = None
    k: Optional[str] = None
    n: Optional[int] = None
    p_lo: float = 1.01
    p_hi: float = 50.0
    fmt: str = "csv"
    output: Optional[str] = None
    tol: Optional[float] = None
    unsafe: bool = False
    failures_only: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        def listify(v: Any) -> list[float]:
            if v is None:
                return []
            return list(v) if isinstance(v, (list, tuple)) else [v]

        return cls(
            command=ns.command,
            function=getattr(ns, "function", None),
            a=getattr(ns, "a", None),
            b=getattr(ns, "b", None),
            alpha=getattr(ns, "alpha", None),
            lam=getattr(ns, "lam", None),
            preset=getattr(ns, "preset", None),
            q=listify(getattr(ns, "q", None)),
            p=listify(getattr(ns, "p", None)),
            alpha_steps=getattr(ns, "alpha_steps", 5),
            lambda_steps=getattr(ns, "lambda_steps", 5),
            trials=getattr(ns, "trials", 100),
            seed=getattr(ns, "seed", 0),
            functions=getattr(ns, "functions", None),
            k=getattr(ns, "k", None),
            n=getattr(ns, "n", None),
            p_lo=getattr(ns, "p_lo", 1.01),
            p_hi=getattr(ns, "p_hi", 50.0),
            fmt=ns.format,
            output=ns.output,
            tol=getattr(ns, "tol", None),
            unsafe=getattr(ns, "unsafe", False),
            failures_only=getattr(ns, "failures_only", False),
        )

    def func(self) -> catalog.Func1D:
        if self.function is None:
            raise UsageError("--function is required")
        try:
            return catalog.lookup(self.function)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None

    def interval(self, f: catalog.Func1D) -> Interval:
        if (self.a is None) != (self.b is None):
            raise UsageError("give both --a and --b, or neither")
        if self.a is None:
            return f.p_cert_domain
        return Interval(self.a, self.b)

    def rule_params(self) -> RuleParams:
        explicit = self.alpha is not None or self.lam is not None
        if explicit == (self.preset is not None):
            raise UsageError("give exactly one of --preset or (--alpha, --lambda)")
        if self.preset is not None:
            return bounds.preset(self.preset)
        if self.alpha is None or self.lam is None:
            raise UsageError("--alpha and --lambda must be given together")
        return RuleParams(self.alpha, self.lam)

    def single(self, values: list[float], name: str, default: Optional[float]) -> Optional[float]:
        if len(values) > 1:
            raise UsageError(f"--{name} takes one value for {self.command}")
        return values[0] if values else default


# --- serialization -----------------------------------------------------------


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def render(rows: Iterable[dict[str, Any]], columns: Sequence[str], fmt: str) -> str:
    """CSV with a fixed header, or a JSON array of objects keyed by column.

    Floats are written in shortest round-trip form, so both formats carry the
    same values.
    """
    rows = list(rows)
    if fmt == "json":
        payload = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _status(msg: str) -> None:
    print(msg, file=sys.stderr)


# --- subcommands -------------------------------------------------------------


def cmd_verify(cfg: RunConfig) -> int:
    f = cfg.func()
    iv = cfg.interval(f)
    rp = cfg.rule_params()
    q = cfg.single(cfg.q, "q", 1.0)
    p = cfg.single(cfg.p, "p", None)
    rec = search.trial(f, iv, rp, q, p, unsafe=cfg.unsafe)
    if rec.error:
        raise UsageError(rec.error)
    _emit(cfg, render([rec.as_row()], search.CSV_COLUMNS, cfg.fmt))
    return EXIT_OK if rec.passed else EXIT_VIOLATION


def cmd_identity(cfg: RunConfig) -> int:
    f = cfg.func()
    iv = cfg.interval(f)
    tol = 1e-8 if cfg.tol is None else cfg.tol
    rows = []
    worst = 0.0
    for i in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, i])
        alpha, lam = (float(x) for x in rng.uniform(0.0, 1.0, size=2))
        rp = RuleParams(alpha, lam)
        i_f = quadrature.compute_If(f, iv, rp).i_f
        rhs = quadrature.lemma_identity_rhs(f, iv, rp)
        res = abs(i_f - rhs)
        worst = max(worst, res / max(1.0, abs(i_f)))
        rows.append(dict(zip(IDENTITY_COLUMNS, (
            f.name, iv.a, iv.b, alpha, lam, i_f, rhs, res, res <= tol * max(1.0, abs(i_f)),
        ))))
    _emit(cfg, render(rows, IDENTITY_COLUMNS, cfg.fmt))
    bad = sum(not r["pass"] for r in rows)
    _status(f"max scaled residual {worst:.3e}; {bad} violations")
    return EXIT_OK if bad == 0 else EXIT_VIOLATION


def _records_exit(cfg: RunConfig, records: list[search.TrialRecord]) -> int:
    bad = [r for r in records if not r.passed]
    shown = bad if cfg.failures_only else records
    _emit(cfg, render((r.as_row() for r in shown), search.CSV_COLUMNS, cfg.fmt))
    _status(f"{len(bad)} violations")
    return EXIT_OK if not bad else EXIT_VIOLATION


def cmd_sweep(cfg: RunConfig) -> int:
    f = cfg.func()
    iv = cfg.interval(f)
    grid = search.SweepGrid(
        alpha_steps=cfg.alpha_steps,
        lambda_steps=cfg.lambda_steps,
        q_values=tuple(cfg.q) or (1.0,),
        p_values=tuple(cfg.p),
    )
    if not cfg.unsafe:
        f.require_certified(iv)
    return _records_exit(cfg, search.sweep(f, iv, grid, unsafe=cfg.unsafe))


def cmd_fuzz(cfg: RunConfig) -> int:
    funcs = catalog.catalog()
    if cfg.functions:
        names = [s.strip() for s in cfg.functions.split(",") if s.strip()]
        try:
            funcs = [catalog.lookup(n) for n in names]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    return _records_exit(cfg, search.run_trials(funcs, cfg.trials, cfg.seed))


def cmd_means(cfg: RunConfig) -> int:
    if cfg.k is None or cfg.a is None or cfg.b is None or cfg.n is None:
        raise UsageError("means needs --k, --a, --b and --n")
    p = cfg.single(cfg.p, "p", None)
    q = cfg.single(cfg.q, "q", None)
    if q is None:
        q = 1.0 if p is None else p / (p - 1.0)
    mc = means.MeansCase(cfg.a, cfg.b, cfg.n, q, p)
    res = means.proposition(cfg.k, mc)
    row = dict(zip(MEANS_COLUMNS, (
        cfg.k, mc.a, mc.b, mc.n, mc.q, mc.p, res.lhs, res.rhs, res.holds,
        res.rhs_as_printed, res.holds_as_printed,
    )))
    _emit(cfg, render([row], MEANS_COLUMNS, cfg.fmt))
    return EXIT_OK if res.holds else EXIT_VIOLATION


def cmd_optp(cfg: RunConfig) -> int:
    f = cfg.func()
    iv = cfg.interval(f)
    rp = cfg.rule_params()
    res = search.optimize_p(f, iv, rp, (cfg.p_lo, cfg.p_hi), unsafe=cfg.unsafe)
    rows = [
        dict(zip(OPTP_COLUMNS, (p, p / (p - 1.0), b, p == res.best_exponent)))
        for p, b in sorted(res.trace)
    ]
    _emit(cfg, render(rows, OPTP_COLUMNS, cfg.fmt))
    _status(f"best p={res.best_exponent!r} bound={res.best_bound!r} ({res.evaluations} evaluations)")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "identity": cmd_identity,
    "sweep": cmd_sweep,
    "fuzz": cmd_fuzz,
    "means": cmd_means,
    "optp": cmd_optp,
}


# --- argument parsing --------------------------------------------------------


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="pquad", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs: dict[str, argparse.ArgumentParser] = {}

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", help="write the table here instead of stdout")
        sp.add_argument("--config", help="key = value file; flags override it")

    def func_iv(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--function", help="catalog name, e.g. pow3")
        sp.add_argument("--a", type=float)
        sp.add_argument("--b", type=float)
        sp.add_argument("--unsafe", action="store_true", help="skip the P-certification gate")

    def rule(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--lambda", dest="lam", type=float)
        sp.add_argument("--preset", choices=sorted(bounds.PRESETS))

    sp = sub.add_parser("verify", help="evaluate |I_f| against both bounds")
    func_iv(sp)
    rule(sp)
    sp.add_argument("--q", type=float, nargs="+")
    sp.add_argument("--p", type=float, nargs="+")
    subs["verify"] = sp

    sp = sub.add_parser("identity", help="check the kernel identity on random rules")
    func_iv(sp)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float)
    subs["identity"] = sp

    sp = sub.add_parser("sweep", help="grid over (alpha, lambda, q, p)")
    func_iv(sp)
    sp.add_argument("--alpha-steps", type=int, default=5)
    sp.add_argument("--lambda-steps", type=int, default=5)
    sp.add_argument("--q", type=float, nargs="+")
    sp.add_argument("--p", type=float, nargs="+")
    sp.add_argument("--failures-only", action="store_true")
    subs["sweep"] = sp

    sp = sub.add_parser("fuzz", help="seeded random dominance trials")
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--functions", help="comma-separated catalog names (default: all)")
    sp.add_argument("--failures-only", action="store_true")
    subs["fuzz"] = sp

    sp = sub.add_parser("means", help="mean inequality for f(x) = x^n")
    sp.add_argument("--k", choices=means.KEYS)
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", type=float, nargs="+")
    sp.add_argument("--p", type=float, nargs="+")
    subs["means"] = sp

    sp = sub.add_parser("optp", help="minimise the Holder bound over p")
    func_iv(sp)
    rule(sp)
    sp.add_argument("--p-lo", type=float, default=1.01)
    sp.add_argument("--p-hi", type=float, default=50.0)
    subs["optp"] = sp

    for sp in subs.values():
        common(sp)
    return parser, subs


def read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def _apply_config(sp: argparse.ArgumentParser, values: dict[str, str]) -> None:
    actions = {a.dest: a for a in sp._actions}
    aliases = {"lambda": "lam"}
    defaults: dict[str, Any] = {}
    for key, raw in values.items():
        dest = aliases.get(key, key)
        act = actions.get(dest)
        if act is None or dest in ("help", "config"):
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(act, argparse._StoreTrueAction):
            defaults[dest] = raw.lower() in ("1", "true", "yes", "on")
            continue
        conv = act.type or str
        try:
            if act.nargs == "+":
                defaults[dest] = [conv(v) for v in raw.replace(",", " ").split()]
            else:
                defaults[dest] = conv(raw)
        except ValueError:
            raise UsageError(f"bad value for {key}: {raw!r}") from None
        if act.choices is not None and defaults[dest] not in act.choices:
            raise UsageError(f"{key} must be one of {sorted(act.choices)}")
    sp.set_defaults(**defaults)


def parse(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser, subs = build_parser()
    ns = parser.parse_args(argv)
    if ns.config:
        _apply_config(subs[ns.command], read_config(ns.config))
        ns = parser.parse_args(argv)
    return RunConfig.from_namespace(ns)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, OSError) as exc:
        _status(f"error: {exc}")
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, PQuadError, ValueError, ArithmeticError) as exc:
        _status(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
