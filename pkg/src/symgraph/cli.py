"""Command-line surface: every transform, tables, and the verification suites.

Output is machine readable: a JSON object {command, params, inputs, outputs,
diagnostics} where each output row carries the key, the exact ring value as
text when one exists, and a float.  CSV emits the same rows.  Exit codes:
0 pass, 1 failed verification/inequality, 2 usage error.

Outputs are deterministic given the flags and seed; the one exception is
diagnostics.runtime_ms, which reports wall time.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import AlgebraicValue, parse_value, sqrt_q
from .boundary import BoundaryRay
from .checks import grid_params, run_suite
from .spectral import (
    VertexFun,
    gamma_atom,
    helgason_transform,
    invert_helgason,
    invert_spherical,
    kunze_stein_check,
    phi_oracle,
    plancherel_density,
    plancherel_norm,
    spherical_phi,
    spherical_transform,
    gamma_of,
)
from .transforms import (
    EvenSeq,
    RadialSeq,
    abel,
    abel_inv,
    dual_abel,
    dual_abel_inv,
)
from .wave import CauchyData, wave_closed_at, wave_direct
from .words import GraphParams, ReducedWord, ball, parse_word, sphere

__all__ = ["main", "RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    k: int
    r: int
    seed: int = 0
    tol: float = 1e-9
    threads: int = 1
    fmt: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.k < 2 or self.r < 2:
            raise ValueError("k and r must be >= 2")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def params(self) -> GraphParams:
        return GraphParams(self.k, self.r)


def _rows(key: str, value) -> list[dict]:
    if isinstance(value, AlgebraicValue):
        return [{"key": key, "exact": str(value), "float": float(value)}]
    if isinstance(value, (int, Fraction)):
        return [{"key": key, "exact": str(value), "float": float(value)}]
    if isinstance(value, complex):
        if value.imag == 0.0:
            return [{"key": key, "exact": None, "float": value.real}]
        return [
            {"key": f"{key}.re", "exact": None, "float": value.real},
            {"key": f"{key}.im", "exact": None, "float": value.imag},
        ]
    if value is None:
        return [{"key": key, "exact": None, "float": None}]
    return [{"key": key, "exact": None, "float": float(value)}]


def _emit(config: RunConfig | None, command: str, inputs: dict, outputs: list[dict],
          diagnostics: dict, started: float) -> str:
    diagnostics = dict(diagnostics)
    diagnostics["runtime_ms"] = round(1000.0 * (time.perf_counter() - started), 3)
    params = {"k": config.k, "r": config.r, "q": config.params.q} if config else {}
    if config and config.fmt == "csv":
        lines = ["key,exact,float"]
        for row in outputs:
            exact = "" if row["exact"] is None else row["exact"]
            fl = "" if row["float"] is None else repr(row["float"])
            lines.append(f"{row['key']},{exact},{fl}")
        return "\n".join(lines) + "\n"
    payload = {
        "command": command,
        "params": params,
        "inputs": inputs,
        "outputs": outputs,
        "diagnostics": diagnostics,
    }
    return json.dumps(payload, sort_keys=True, default=str) + "\n"


def _parse_seq(params: GraphParams, text: str) -> list[AlgebraicValue]:
    return [parse_value(part.strip(), params.q) for part in text.split(",")]


def _parse_vertex_fun(params: GraphParams, text: str) -> VertexFun:
    data = {}
    if text.strip():
        for item in text.split(";"):
            word_text, _, value_text = item.partition(":")
            if not value_text:
                raise ValueError(f"expected 'word:value', got {item!r}")
            data[parse_word(params, word_text.strip())] = parse_value(value_text.strip(), params.q)
    return VertexFun.of(params, data)


# -- command handlers -------------------------------------------------------------


def cmd_info(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    deg = params.degree
    outputs = []
    outputs += _rows("q", params.q)
    outputs += _rows("sigma", params.sigma)
    outputs += _rows("degree", deg)
    outputs += _rows("alpha", AlgebraicValue(params.alpha, 0, params.q))
    if params.q >= 2:
        gamma0 = (sqrt_q(params.q) * 2 + params.sigma) * Fraction(1, deg)
        lo = (AlgebraicValue(params.sigma, 0, params.q) - sqrt_q(params.q) * 2) * Fraction(1, deg)
        outputs += _rows("tau", params.tau)
        outputs += _rows("beta", params.beta)
        outputs += _rows("spectral_gap", params.spectral_gap)
        outputs += _rows("gamma0", gamma0)
        outputs += _rows("segment_lo", lo)
        outputs += _rows("segment_hi", gamma0)
    else:
        for key in ("tau", "beta", "spectral_gap", "gamma0", "segment_lo", "segment_hi"):
            outputs += _rows(key, None)
    if params.k > params.r:
        outputs += _rows("gamma_atom", AlgebraicValue(gamma_atom(params), 0, params.q))
        outputs += _rows("atom_mass", Fraction(params.k - params.r, params.k))
    return {}, outputs, {}, 0


def cmd_table(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    outputs = []
    if args.table == "delta":
        for n in range(args.nmax + 1):
            outputs += _rows(f"delta[{n}]", params.delta(n))
    elif args.table == "b":
        from .boundary import sphere_horocycle_count

        for n in range(args.nmax + 1):
            for h in range(-args.hmax, args.hmax + 1):
                outputs += _rows(f"b[{n},{h}]", sphere_horocycle_count(params, n, h))
    elif args.table == "phi":
        table = spherical_phi(params, gamma_of(params, args.lam), args.nmax)
        for n, value in enumerate(table):
            outputs += _rows(f"phi[{n}]", float(value))
    else:  # c2
        half = params.tau / 2.0
        for j in range(args.grid):
            lam = half * j / (args.grid - 1) if args.grid > 1 else 0.0
            outputs += _rows(f"density[{j}]", plancherel_density(params, lam))
    inputs = {"table": args.table, "nmax": args.nmax, "hmax": args.hmax,
              "grid": args.grid, "lambda": args.lam}
    return inputs, outputs, {}, 0


def cmd_abel(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    f = RadialSeq.of(params, _parse_seq(params, args.radial))
    g = abel(f)
    outputs = []
    for h, value in enumerate(g.values):
        outputs += _rows(f"A[{h}]", value)
    return {"radial": args.radial}, outputs, {}, 0


def cmd_abel_inv(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    g = EvenSeq.of(params, _parse_seq(params, args.even))
    f = abel_inv(g)
    outputs = []
    for n, value in enumerate(f.values):
        outputs += _rows(f"f[{n}]", value)
    return {"even": args.even}, outputs, {}, 0


def cmd_dual(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    g = EvenSeq.of(params, _parse_seq(params, args.even))
    f = dual_abel(g, n_max=args.nmax if args.nmax is not None else g.support_radius)
    outputs = []
    for n, value in enumerate(f.values):
        outputs += _rows(f"dual[{n}]", value)
    return {"even": args.even, "nmax": args.nmax}, outputs, {}, 0


def cmd_dual_inv(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    f = RadialSeq.of(params, _parse_seq(params, args.radial))
    g = dual_abel_inv(f)
    outputs = []
    for n, value in enumerate(g.values):
        outputs += _rows(f"g[{n}]", value)
    return {"radial": args.radial}, outputs, {}, 0


def cmd_spherical(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    table = spherical_phi(params, gamma_of(params, args.lam), args.nmax)
    outputs = []
    for n, value in enumerate(table):
        outputs += _rows(f"phi[{n}]", float(value))
    diagnostics = {}
    if args.oracle_depth is not None:
        worst = 0.0
        for n in range(min(args.nmax, args.oracle_depth - 1) + 1):
            x = next(iter(sphere(params, n)))
            oracle = phi_oracle(params, args.lam, x, args.oracle_depth)
            outputs += _rows(f"oracle[{n}]", oracle)
            worst = max(worst, abs(oracle - table[n]))
        diagnostics["oracle_max_deviation"] = worst
    return {"lambda": args.lam, "nmax": args.nmax}, outputs, diagnostics, 0


def cmd_transform(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    f = RadialSeq.of(params, _parse_seq(params, args.radial))
    half = params.tau / 2.0
    outputs = []
    for j in range(args.grid):
        lam = half * j / (args.grid - 1) if args.grid > 1 else 0.0
        outputs += _rows(f"H[{j}]", complex(spherical_transform(f, lam)))
    inputs = {"radial": args.radial, "grid": args.grid, "lambda_max": half}
    return inputs, outputs, {}, 0


def cmd_plancherel(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    f = RadialSeq.of(params, _parse_seq(params, args.radial))
    direct = f.norm_sq()
    spectral = plancherel_norm(f, tol=config.tol)
    outputs = _rows("norm_sq_direct", direct) + _rows("norm_sq_spectral", spectral.value)
    diagnostics = {"quadrature_error": spectral.error,
                   "mismatch": abs(spectral.value - float(direct))}
    return {"radial": args.radial}, outputs, diagnostics, 0


def cmd_helgason(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    f = _parse_vertex_fun(params, args.values)
    ray = BoundaryRay(parse_word(params, args.ray))
    value = helgason_transform(f, args.lam, ray)
    outputs = _rows("fhat", value)
    return {"values": args.values, "lambda": args.lam, "ray": args.ray}, outputs, {}, 0


def cmd_invert(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    x = parse_word(params, args.at)
    if args.radial is None and args.values is None:
        raise ValueError("invert needs --radial (spherical) or --values (boundary transform)")
    if args.radial is not None:
        f = RadialSeq.of(params, _parse_seq(params, args.radial))
        res = invert_spherical(f, x, tol=config.tol)
        direct = f.value(len(x))
    else:
        fun = _parse_vertex_fun(params, args.values)
        depth = args.depth if args.depth else max(fun.support_radius(), len(x)) + 1
        res = invert_helgason(fun, x, depth, tol=config.tol)
        direct = fun.value(x)
    outputs = _rows("recovered", res.value) + _rows("direct", direct)
    diagnostics = {"quadrature_error": res.error,
                   "mismatch": abs(res.value - float(direct))}
    return {"at": args.at}, outputs, diagnostics, 0


def cmd_ks_check(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    if params.k > params.r:
        raise ValueError("the smoothing inequality is checked for k <= r only")
    rng = random.Random(config.seed)
    worst = {"core": 0.0, "young": 0.0, "holder": 0.0}
    witness = None
    for trial in range(args.trials):
        pool = list(ball(params, 1))
        f = VertexFun.of(
            params, {w: rng.uniform(-1, 1) for w in pool if rng.random() < 0.8}, exact=False
        )
        chi = RadialSeq.of(params, [rng.uniform(0, 1) for _ in range(3)], exact=False)
        report = kunze_stein_check(f, chi)
        ratios = {"core": report.core_ratio, "young": report.young_ratio,
                  "holder": report.holder_ratio}
        for name, value in ratios.items():
            if value > worst[name]:
                worst[name] = value
            if value > 1.0 + 1e-12 and witness is None:
                witness = {"trial": trial, "ratio": name, "value": value}
    outputs = [row for name in ("core", "young", "holder")
               for row in _rows(f"worst_{name}_ratio", worst[name])]
    diagnostics = {}
    code = 0
    if witness:
        diagnostics["witness"] = witness
        code = 1
    return {"trials": args.trials, "seed": config.seed}, outputs, diagnostics, code


def cmd_wave(config: RunConfig, args) -> tuple[dict, list, dict, int]:
    params = config.params
    data = CauchyData(
        _parse_vertex_fun(params, args.f),
        _parse_vertex_fun(params, args.g),
    )
    targets: list[tuple[ReducedWord, int]] = []
    if args.at:
        word_text, _, n_text = args.at.rpartition(",")
        targets.append((parse_word(params, word_text), int(n_text)))
        observe = max(len(t[0]) for t in targets)
    else:
        observe = data.support_radius + args.steps
        for n in range(-args.steps, args.steps + 1):
            for x in ball(params, data.support_radius + abs(n)):
                targets.append((x, n))
    diagnostics = {}
    outputs = []
    field = None
    if args.method in ("direct", "both"):
        field = wave_direct(params, data, args.steps, observe_radius=observe)
    worst = 0.0
    for x, n in targets:
        if abs(n) > args.steps:
            raise ValueError(f"time {n} beyond --steps {args.steps}")
        if args.method == "direct":
            value = field.at(x, n)
        else:
            value = wave_closed_at(params, data, x, n)
            if args.method == "both":
                worst = max(worst, abs(value - field.at(x, n)))
        outputs += _rows(f"u[{n}][{x}]", value)
    if args.method == "both":
        diagnostics["max_discrepancy"] = worst
    inputs = {"f": args.f, "g": args.g, "steps": args.steps, "method": args.method}
    return inputs, outputs, diagnostics, 0


def cmd_verify(config_args, args) -> tuple[dict, list, dict, int]:
    if args.k is not None and args.r is not None:
        grid = [GraphParams(args.k, args.r)]
    else:
        grid = grid_params()
    ok, collected = run_suite(args.suite, grid, args.seed)
    outputs = []
    diagnostics = {}
    for params, suite_name, result in collected:
        key = f"{suite_name}[k={params.k},r={params.r}]:{result.name}"
        outputs.append({"key": key, "exact": None, "float": 1.0 if result.ok else 0.0})
        if not result.ok and "witness" not in diagnostics:
            diagnostics["witness"] = {
                "suite": suite_name, "k": params.k, "r": params.r,
                "check": result.name, **result.witness,
            }
    return {"suite": args.suite, "seed": args.seed}, outputs, diagnostics, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symgraph",
        description="harmonic analysis on polygon-symmetric graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_params=True):
        p.add_argument("--k", type=int, required=need_params, help="polygon side count (>= 2)")
        p.add_argument("--r", type=int, required=need_params, help="polygons per vertex (>= 2)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--threads", type=int,
                       default=int(os.environ.get("SYMGRAPH_THREADS", "1")))
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    common(sub.add_parser("info", help="derived constants of the (k, r) graph"))

    p = sub.add_parser("table", help="tabulate sphere counts, horocycle counts, phi or the density")
    common(p)
    p.add_argument("table", choices=("delta", "b", "phi", "c2"))
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--hmax", type=int, default=6)
    p.add_argument("--grid", type=int, default=16)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)

    p = sub.add_parser("abel", help="Abel transform of a radial sequence")
    common(p)
    p.add_argument("--radial", required=True, help='comma list, e.g. "1,1/2,0"')

    p = sub.add_parser("abel-inv", help="inverse Abel transform of an even sequence")
    common(p)
    p.add_argument("--even", required=True)

    p = sub.add_parser("dual", help="dual Abel transform of an even sequence")
    common(p)
    p.add_argument("--even", required=True)
    p.add_argument("--nmax", type=int, default=None)

    p = sub.add_parser("dual-inv", help="inverse dual Abel transform of a radial sequence")
    common(p)
    p.add_argument("--radial", required=True)

    p = sub.add_parser("spherical", help="spherical function values, optionally vs the boundary oracle")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--oracle-depth", type=int, default=None)

    p = sub.add_parser("transform", help="spherical transform on a lambda grid")
    common(p)
    p.add_argument("--radial", required=True)
    p.add_argument("--grid", type=int, default=33)

    p = sub.add_parser("plancherel", help="compare direct and spectral L2 norms")
    common(p)
    p.add_argument("--radial", required=True)

    p = sub.add_parser("helgason", help="boundary Fourier transform of a vertex function")
    common(p)
    p.add_argument("--values", required=True, help='semicolon list, e.g. "e:1;a0^1:1/2"')
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--ray", required=True, help='ray prefix word, e.g. "a0^1.a1^1.a0^1"')

    p = sub.add_parser("invert", help="recover a function value from its transform")
    common(p)
    p.add_argument("--at", required=True, help="target word")
    p.add_argument("--radial", default=None)
    p.add_argument("--values", default=None)
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("ks-check", help="measure the convolution-smoothing ratios")
    common(p)
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("wave", help="solve the shifted wave equation")
    common(p)
    p.add_argument("--f", default="", help="initial value, word:value list")
    p.add_argument("--g", default="", help="initial velocity, word:value list")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--method", choices=("closed", "direct", "both"), default="both")
    p.add_argument("--at", default=None, help='evaluation point "word,n"')

    p = sub.add_parser("verify", help="run an invariant suite (exit 1 on failure)")
    common(p, need_params=False)
    p.add_argument("--suite", default="all",
                   choices=("group", "boundary", "abel", "dual", "spectral", "wave", "all"))

    return parser


_HANDLERS = {
    "info": cmd_info,
    "table": cmd_table,
    "abel": cmd_abel,
    "abel-inv": cmd_abel_inv,
    "dual": cmd_dual,
    "dual-inv": cmd_dual_inv,
    "spherical": cmd_spherical,
    "transform": cmd_transform,
    "plancherel": cmd_plancherel,
    "helgason": cmd_helgason,
    "invert": cmd_invert,
    "ks-check": cmd_ks_check,
    "wave": cmd_wave,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()

    if args.command == "table":
        if args.nmax > 12 or args.hmax > 12 or args.grid > 1024:
            parser.error("table ranges capped at nmax, hmax <= 12 and grid <= 1024")

    config = None
    if args.k is not None and args.r is not None:
        try:
            config = RunConfig(k=args.k, r=args.r, seed=args.seed, tol=args.tol,
                               threads=args.threads, fmt=args.fmt, out=args.out)
        except ValueError as exc:
            parser.error(str(exc))
    elif args.command != "verify":
        parser.error("--k and --r are required")

    try:
        if args.command == "verify":
            inputs, outputs, diagnostics, code = cmd_verify(None, args)
            text = _emit(config, args.command, inputs, outputs, diagnostics, started)
        else:
            inputs, outputs, diagnostics, code = _HANDLERS[args.command](config, args)
            text = _emit(config, args.command, inputs, outputs, diagnostics, started)
    except (ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
