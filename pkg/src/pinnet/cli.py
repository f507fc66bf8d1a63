"""Command-line front-end: spectra, bounds, thresholds, selection, simulation.

Commands: spectrum, bounds, kappa, select, simulate. Every command accepts
--json (emit one JSON document on stdout and nothing else) and --tol.

Exit codes: 0 success including negative findings, 2 input or validation
problems, 3 precondition-undefined outcomes, 4 numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import criteria, dynamics, selection
from .bounds import lili_term
from .errors import (
    DivergenceError,
    NumericalError,
    PinnetError,
    PreconditionError,
    ValidationError,
)
from .graphs import Graph, degrees, is_connected, laplacian, parse_edge_list
from .spectral import SymMatrix, eig_sym, lambda_max, lambda_min_gt0

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4


def _load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read graph file {path}: {exc}") from exc
    return parse_edge_list(text)


def _parse_pinned(raw: str | None) -> tuple[int, ...]:
    if not raw:
        return ()
    try:
        return tuple(int(tok) for tok in raw.replace(",", " ").split())
    except ValueError as exc:
        raise ValidationError(f"bad pinned list {raw!r}") from exc


def _emit(args, lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _fmt(value, digits=12):
    if value is None:
        return "undefined"
    return f"{value:.{digits}g}"


# ---------------------------------------------------------------------------
# config loading


def _matrix_from(cfg: dict, key: str, n: int) -> np.ndarray:
    try:
        arr = np.asarray(cfg[key], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"config field {key!r} missing or malformed") from exc
    if arr.shape != (n, n):
        raise ValidationError(f"config field {key!r} must be {n}x{n}, got {arr.shape}")
    return arr


def _dynamics_from(cfg: dict) -> dynamics.NodeDynamics:
    try:
        kind = cfg["kind"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("dynamics descriptor needs a 'kind'") from exc
    if kind == "linear":
        if "matrix" not in cfg:
            raise ValidationError("linear dynamics needs a 'matrix'")
        return dynamics.LinearDynamics(np.asarray(cfg["matrix"], dtype=float))
    if kind == "scalar_saturated":
        try:
            return dynamics.ScalarSaturatedDynamics(float(cfg["a"]), float(cfg["b"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("scalar_saturated dynamics needs 'a' and 'b'") from exc
    raise ValidationError(f"unknown dynamics kind {kind!r}")


def load_analysis_config(path: str):
    """Parse the analysis config JSON into (spec, dynamics, sim block or None)."""
    cfg_path = Path(path)
    try:
        cfg = json.loads(cfg_path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc

    for field in ("graph_path", "sigma", "kappa", "pinned", "n"):
        if field not in cfg:
            raise ValidationError(f"config missing required field {field!r}")
    graph_path = Path(cfg["graph_path"])
    if not graph_path.is_absolute():
        graph_path = cfg_path.parent / graph_path
    g = _load_graph(str(graph_path))

    n = int(cfg["n"])
    dyn = _dynamics_from(cfg.get("dynamics", {}))
    f_bound = dynamics.f_bound_of(dyn)
    override = cfg.get("f_bound_override")
    if override is not None:
        override = float(override)
        if override < f_bound - 1e-12:
            print(
                f"warning: f_bound_override {override:.6g} is below the "
                f"closed-form bound {f_bound:.6g}",
                file=sys.stderr,
            )
        f_bound = override

    spec = criteria.PinnedSystemSpec(
        graph=g,
        sigma=float(cfg["sigma"]),
        kappa=float(cfg["kappa"]),
        b_matrix=_matrix_from(cfg, "b", n),
        k_matrix=_matrix_from(cfg, "k", n),
        q_matrix=SymMatrix(_matrix_from(cfg, "q", n)),
        pinned=tuple(int(i) for i in cfg["pinned"]),
        f_bound=f_bound,
    )
    return spec, dyn, cfg.get("sim")


def _sim_config_from(spec, dyn, sim_cfg: dict) -> dynamics.SimConfig:
    for field in ("t0", "t_end", "dt", "s0"):
        if field not in sim_cfg:
            raise ValidationError(f"sim block missing required field {field!r}")
    n = spec.state_dim
    n_nodes = spec.graph.num_nodes
    x0_cfg = sim_cfg.get("x0")
    if x0_cfg is None:
        raise ValidationError("sim block missing required field 'x0'")
    if isinstance(x0_cfg, dict):
        if "seed" not in x0_cfg:
            raise ValidationError("random x0 needs a 'seed' for reproducibility")
        rng = np.random.default_rng(int(x0_cfg["seed"]))
        low = float(x0_cfg.get("low", -1.0))
        high = float(x0_cfg.get("high", 1.0))
        x0 = rng.uniform(low, high, size=(n_nodes, n))
    else:
        x0 = np.asarray(x0_cfg, dtype=float)
    return dynamics.SimConfig(
        system=spec,
        dynamics=dyn,
        x0=x0,
        s0=np.asarray(sim_cfg["s0"], dtype=float),
        t0=float(sim_cfg["t0"]),
        t_end=float(sim_cfg["t_end"]),
        dt=float(sim_cfg["dt"]),
    )


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args) -> int:
    g = _load_graph(args.graph)
    lap = laplacian(g)
    pinned = _parse_pinned(args.pinned)
    op = criteria.pinned_operator(g, args.sigma, args.kappa, pinned)
    payload = {
        "num_nodes": g.num_nodes,
        "num_edges": g.num_edges,
        "connected": is_connected(g),
        "lambda_min_gt0_laplacian": lambda_min_gt0(lap),
        "lambda_max_laplacian": lambda_max(lap),
        "sigma": args.sigma,
        "kappa": args.kappa,
        "pinned": list(pinned),
        "lambda_min_gt0_pinned": lambda_min_gt0(op),
    }
    lines = [
        f"nodes: {g.num_nodes}  edges: {g.num_edges}  connected: {payload['connected']}",
        f"lambda_min>0(L) = {_fmt(payload['lambda_min_gt0_laplacian'])}",
        f"lambda_max(L)   = {_fmt(payload['lambda_max_laplacian'])}",
        f"lambda_min>0(sigma L + kappa P) = {_fmt(payload['lambda_min_gt0_pinned'])}"
        f"  (sigma={args.sigma:g}, kappa={args.kappa:g}, pinned={list(pinned)})",
    ]
    if args.full:
        spectrum = eig_sym(op).eigenvalues.tolist()
        payload["spectrum_pinned"] = spectrum
        lines.append("spectrum(sigma L + kappa P): " + ", ".join(f"{v:.9g}" for v in spectrum))
    _emit(args, lines, payload)
    return EXIT_OK


def _step_rows(g, sigma, kappa, pinned):
    deg = degrees(g)
    mu_prev = sigma * lambda_min_gt0(laplacian(g))
    rows = []
    acc: list[int] = []
    for step, node in enumerate(pinned, start=1):
        acc.append(node)
        w = sigma * kappa * float(deg[node])
        eta = abs(kappa - mu_prev)
        base = min(kappa, mu_prev)
        lili = base - lili_term(eta, w)
        weyl = base - np.sqrt(w)
        mathias = base - w / eta if eta > 1e-12 else None
        exact = lambda_min_gt0(criteria.pinned_operator(g, sigma, kappa, acc))
        rows.append(
            {
                "step": step,
                "node": node,
                "degree": int(deg[node]),
                "lili": float(lili),
                "weyl": float(weyl),
                "mathias": None if mathias is None else float(mathias),
                "exact": float(exact),
            }
        )
        mu_prev = exact
    return rows


def cmd_bounds(args) -> int:
    g = _load_graph(args.graph)
    pinned = _parse_pinned(args.pinned)
    sigma, kappa = args.sigma, args.kappa
    s = sigma * lambda_min_gt0(laplacian(g))
    exact = lambda_min_gt0(criteria.pinned_operator(g, sigma, kappa, pinned))
    deg = degrees(g)
    payload = {
        "sigma": sigma,
        "kappa": kappa,
        "pinned": list(pinned),
        "sigma_lambda_min_gt0": s,
        "exact_lambda_min_gt0": exact,
    }
    lines = [
        f"sigma*lambda_min>0(L) = {_fmt(s)}",
        f"exact lambda_min>0(sigma L + kappa P) = {_fmt(exact)}",
    ]
    if pinned and kappa <= s:
        payload["iterative_bound"] = None
        payload["iterative_bound_reason"] = (
            f"undefined (kappa {kappa:g} <= sigma*lambda_min>0(L) {s:g})"
        )
        lines.append(f"iterative bound: {payload['iterative_bound_reason']}")
    else:
        eta = kappa - s
        bound = s - sum(lili_term(eta, sigma * kappa * float(deg[i])) for i in pinned)
        payload["iterative_bound"] = bound
        payload["iterative_bound_slack"] = exact - bound
        lines.append(
            f"iterative bound = {_fmt(bound)}   slack = {_fmt(exact - bound)}"
        )
    rows = _step_rows(g, sigma, kappa, pinned)
    payload["steps"] = rows
    if rows:
        lines.append("per-step bounds (from the column-append sequence):")
        lines.append(f"{'step':>4} {'node':>4} {'deg':>4} {'weyl':>14} {'mathias':>14} {'lili':>14} {'exact':>14}")
        for r in rows:
            mathias_txt = f"{r['mathias']:>14.6g}" if r["mathias"] is not None else f"{'-':>14}"
            lines.append(
                f"{r['step']:>4} {r['node']:>4} {r['degree']:>4} "
                f"{r['weyl']:>14.6g} {mathias_txt} "
                f"{r['lili']:>14.6g} {r['exact']:>14.6g}"
            )
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_kappa(args) -> int:
    spec, _, _ = load_analysis_config(args.config)
    report = criteria.evaluate(spec, tol=args.tol)
    payload = report.to_dict()
    lines = [
        f"structural_ok: {report.structural_ok}"
        f"  (identity residual {_fmt(report.identity_residual, 6)},"
        f" lambda_min(QB+B^TQ^T) {_fmt(report.qb_lambda_min, 6)})",
        f"connected: {report.connected}   flags: {list(report.flags)}",
        f"sigma*lambda_min>0(L): {_fmt(report.sigma_lambda)}",
        f"rhs_threshold: {_fmt(report.rhs_threshold)}",
        f"f_condition_ok: {report.f_condition_ok}",
        f"iterative_bound at kappa={spec.kappa:g}: {_fmt(report.iterative_bound)}",
        f"kappa_threshold: {_fmt(report.kappa_threshold)}",
        f"exact lambda_min>0(sigma L + kappa P): {_fmt(report.exact_lambda)}",
        f"verdict_theorem: {report.verdict_theorem}",
        f"verdict_exact: {report.verdict_exact}",
    ]
    for name, reason in report.reasons.items():
        lines.append(f"  {name}: {reason}")
    _emit(args, lines, payload)
    if report.kappa_threshold is None:
        reason = report.reasons.get("kappa_threshold", "kappa_threshold undefined")
        print(f"kappa_threshold undefined: {reason}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def cmd_select(args) -> int:
    g = _load_graph(args.graph)
    fn = {
        selection.GREEDY: selection.greedy_select,
        selection.DEGREE: selection.degree_select,
        selection.EXHAUSTIVE: selection.exhaustive_select,
    }[args.method]
    result = fn(g, args.sigma, args.kappa, args.budget)
    payload = {
        "method": result.method,
        "pinned": list(result.pinned),
        "objective": result.objective,
        "evaluations": result.evaluations,
    }
    lines = [
        f"method: {result.method}",
        f"pinned: {list(result.pinned)}",
        f"objective lambda_min>0(sigma L + kappa P) = {_fmt(result.objective)}",
        f"eigensolves: {result.evaluations}",
    ]
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec, dyn, sim_cfg = load_analysis_config(args.config)
    if sim_cfg is None:
        raise ValidationError("config has no 'sim' block")
    config = _sim_config_from(spec, dyn, sim_cfg)
    report = criteria.evaluate(spec, tol=args.tol)
    diverged = False
    last_time = None
    try:
        traj = dynamics.simulate(config)
    except DivergenceError as exc:
        diverged = True
        last_time = exc.time
        traj = exc.trajectory
    if traj is not None and args.out:
        dynamics.write_trajectory_csv(traj, args.out)
    summary = {
        "decayed": bool(dynamics.check_decay(traj)) if traj is not None else False,
        "final_error_norm": traj.final_error_norm() if traj is not None else None,
        "steps": traj.steps if traj is not None else 0,
        "diverged": diverged,
        "diverged_at": last_time,
        "verdict_theorem": report.verdict_theorem,
        "verdict_exact": report.verdict_exact,
        "csv": args.out,
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--tol", type=float, default=1e-9, help="structural tolerance")

    parser = argparse.ArgumentParser(
        prog="pinnet",
        description="Pinning-controllability analysis of coupled oscillator networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="Laplacian and pinned spectra")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=0.0)
    p.add_argument("--pinned", default="", help="comma-separated node indices")
    p.add_argument("--full", action="store_true", help="print the full pinned spectrum")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("bounds", parents=[common], help="certificate bounds vs exact values")
    p.add_argument("graph")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--pinned", default="")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("kappa", parents=[common], help="criterion report and gain threshold")
    p.add_argument("config", help="analysis config JSON")
    p.set_defaults(handler=cmd_kappa)

    p = sub.add_parser("select", parents=[common], help="choose pinned nodes under a budget")
    p.add_argument("graph")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument(
        "--method",
        choices=[selection.GREEDY, selection.DEGREE, selection.EXHAUSTIVE],
        default=selection.GREEDY,
    )
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser("simulate", parents=[common], help="integrate and verify decay")
    p.add_argument("config")
    p.add_argument("--out", default=None, help="trajectory CSV path")
    p.set_defaults(handler=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PinnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
