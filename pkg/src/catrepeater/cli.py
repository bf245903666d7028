"""Command-line front end: figure datasets, Monte Carlo timing and oracle checks.

Every command writes a table (CSV or JSON) whose ``#`` header lines record
the command and all parameter values, defaults included. Output is a pure
function of the arguments, so repeated runs are byte-identical.

Exit codes: 0 success, 1 usage or parameter error, 2 oracle verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .errors import DegenerateInputError, UndefinedFidelityError
from .herald import LinkConfig, heralded_fidelity, ratio_for_zeta, success_prob
from .link_gen import PairSymmetry, outcome_probs
from .photodetect import RelayStateLabel, parity_prob
from .teleport import success_equal_amplitudes, success_fixed_bob, truth_table
from .timing import (
    FIBER_SPEED,
    VACUUM_SPEED,
    AttemptModel,
    FiberModel,
    attempt_stats,
    link_success_from_distance,
    simulate_attempts,
)

OUTPUT_DIR_ENV = "CATREPEATER_OUTPUT_DIR"
DEFAULTS = {"r_bs": "0.2", "xi": 0.9, "eta": "0.95", "kappa": 0.2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_grid(raw) -> list[float]:
    """``"0.1,0.5"``, ``"start:stop:num"`` (inclusive linspace), a number or a list."""
    if isinstance(raw, (int, float)):
        return [float(raw)]
    if isinstance(raw, (list, tuple)):
        return [float(x) for x in raw]
    text = str(raw).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range {text!r} must be start:stop:num")
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
        if num < 1:
            raise UsageError("range needs num >= 1")
        return [float(x) for x in np.linspace(start, stop, num)]
    values = [float(x) for x in text.split(",") if x.strip()]
    if not values:
        raise UsageError("empty parameter grid")
    return values


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _check_unit_interval(columns, rows) -> None:
    for j, col in enumerate(columns):
        if col.startswith(("p_", "f_")):
            for row in rows:
                v = row[j]
                if isinstance(v, float) and not math.isnan(v) and not 0.0 <= v <= 1.0:
                    raise ValueError(f"column {col} left [0, 1]: {v}")


def emit(name: str, params: dict, columns: list[str], rows: list[list], fmt: str, output: str | None) -> str:
    _check_unit_interval(columns, rows)
    if fmt == "json":
        doc = {
            "command": name,
            "version": __version__,
            "parameters": params,
            "columns": columns,
            "rows": [[r if not isinstance(r, float) or math.isfinite(r) else None for r in row] for row in rows],
        }
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        lines = [f"# catrepeater {__version__} {name}"]
        for key in sorted(params):
            lines.append(f"# {key} = {json.dumps(params[key], sort_keys=True)}")
        lines.append(",".join(columns))
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if output is None and os.environ.get(OUTPUT_DIR_ENV):
        output = os.path.join(os.environ[OUTPUT_DIR_ENV], name.replace(" ", "_") + "." + fmt)
    if output is None:
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(os.path.abspath(output)), exist_ok=True)
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def _pairs(raw: str) -> list[PairSymmetry]:
    return [PairSymmetry.parse(p) for p in str(raw).split(",")]


def _parities(raw: str) -> list[str]:
    out = [p.strip().lower() for p in str(raw).split(",")]
    for p in out:
        if p not in ("even", "odd"):
            raise UsageError(f"parity must be even or odd, got {p!r}")
    return out


def _r_values(args, eta: float) -> list[float]:
    """``r_bs`` grid; the token ``half`` means the ratio giving ``zeta = 1/2``."""
    vals = []
    for tok in str(args.r_bs).split(","):
        tok = tok.strip()
        if tok.startswith("half"):
            shift = float(tok[4:] or 0.0)
            vals.append(ratio_for_zeta(0.5, eta, args.xi) + shift)
        else:
            vals.extend(parse_grid(tok))
    return vals


def fig_link_probs(args):
    cols = ["pair", "r_bs [1]", "a [photons]", "p_plus [1]", "p_minus [1]", "p_vac [1]"]
    rows = []
    for pair in _pairs(args.pair):
        for r in parse_grid(args.r_bs):
            for a in parse_grid(args.a):
                try:
                    pr = outcome_probs(pair, r, a)
                    rows.append([pair.label, r, a, pr.p_plus, pr.p_minus, pr.p_vac])
                except DegenerateInputError:
                    rows.append([pair.label, r, a, math.nan, math.nan, math.nan])
    return cols, rows


def fig_click_probs(args):
    cols = ["relay_cat", "a [photons]", "r_bs [1]", "eta [1]", "xi [1]", "n_relay [photons]",
            "p_noclick [1]", "p_even [1]", "p_odd [1]"]
    rows = []
    for sign in (1, -1):
        state = RelayStateLabel.from_sign(sign)
        for eta in parse_grid(args.eta):
            for r in parse_grid(args.r_bs):
                for a in parse_grid(args.a):
                    n = 2.0 * r * a
                    try:
                        vals = [parity_prob(p, state, n, eta, args.xi) for p in ("noclick", "even", "odd")]
                    except DegenerateInputError:
                        vals = [math.nan] * 3
                    rows.append([state.value, a, r, eta, args.xi, n] + vals)
    return cols, rows


def fig_success(args):
    both = not args.per_detector
    cols = ["pair", "parity", "a [photons]", "r_bs [1]", "eta [1]", "xi [1]", "zeta [1]", "p_success [1]"]
    rows = []
    for pair in _pairs(args.pair):
        for parity in _parities(args.parity):
            for eta in parse_grid(args.eta):
                for r in _r_values(args, eta):
                    for a in parse_grid(args.a):
                        cfg = LinkConfig(a, r, eta, args.xi)
                        rows.append([pair.label, parity, a, r, eta, args.xi, cfg.zeta,
                                     success_prob(pair, parity, cfg, both_detectors=both)])
    return cols, rows


def fig_fidelity(args):
    cols = ["pair", "parity", "a [photons]", "r_bs [1]", "eta [1]", "xi [1]", "zeta [1]", "f_plus [1]", "f_minus [1]"]
    rows = []
    for pair in _pairs(args.pair):
        for parity in _parities(args.parity):
            for eta in parse_grid(args.eta):
                for r in _r_values(args, eta):
                    for a in parse_grid(args.a):
                        cfg = LinkConfig(a, r, eta, args.xi)
                        try:
                            fp, fm = heralded_fidelity(pair, parity, cfg)
                        except UndefinedFidelityError:
                            fp = fm = math.nan
                        rows.append([pair.label, parity, a, r, eta, args.xi, cfg.zeta, fp, fm])
    return cols, rows


def fig_timing(args):
    cols = ["pair", "L [km]", "link_length [km]", "eta [1]", "zeta [1]", "p_link [1]", "n_w [attempts]",
            "n_t [attempts]", "n_max [attempts]", "n_min [attempts]", "t_prep [s]", "t_wait [s]",
            f"t_prep_v{VACUUM_SPEED:.0e} [s]", f"t_wait_v{VACUUM_SPEED:.0e} [s]"]
    if args.lifetime is not None:
        cols.append("within_lifetime")
    rows = []
    r = parse_grid(args.r_bs)[0]
    for pair in _pairs(args.pair):
        for L in parse_grid(args.L):
            fiber = FiberModel(L, args.kappa, args.v)
            cfg = LinkConfig(args.a, r, 1.0, args.xi)
            p = link_success_from_distance(cfg, fiber, pair, args.parity)
            st = attempt_stats(AttemptModel(p, p), fiber)
            alt = attempt_stats(AttemptModel(p, p), FiberModel(L, args.kappa, VACUUM_SPEED))
            row = [pair.label, L, fiber.link_length, fiber.eta, cfg.replace(eta=fiber.eta).zeta, p,
                   st.n_w, st.n_t, st.n_max, st.n_min, st.t_prep, st.t_wait, alt.t_prep, alt.t_wait]
            if args.lifetime is not None:
                row.append(st.within_lifetime(args.lifetime))
            rows.append(row)
    return cols, rows


def fig_teleport(args):
    if args.table:
        cols = ["phase_offset [rad]", "detector", "sideband", "bob_state", "fidelity [1]"]
        rows = [[e.phase_offset, e.detector, e.sideband, e.label_text, e.fidelity]
                for e in truth_table(args.alpha, 0.0, args.m)]
        return cols, rows
    cols = ["a [photons]", "p_plus_equal [1]", "p_minus_equal [1]", "b_fixed [photons]",
            "p_plus_fixed [1]", "p_minus_fixed [1]"]
    rows = []
    for a in parse_grid(args.a):
        rows.append([a, success_equal_amplitudes(a, 1), success_equal_amplitudes(a, -1), args.b,
                     success_fixed_bob(a, args.b, 1), success_fixed_bob(a, args.b, -1)])
    return cols, rows


def cmd_simulate(args):
    if args.p1 is not None:
        p1 = args.p1
        p2 = args.p2 if args.p2 is not None else p1
    else:
        lengths = parse_grid(args.L)
        if len(lengths) != 1:
            raise UsageError("simulate takes a single --L value")
        fiber = FiberModel(lengths[0], args.kappa, args.v)
        ratios = _r_values(args, fiber.eta)
        if len(ratios) != 1:
            raise UsageError("simulate takes a single --r-bs value")
        cfg = LinkConfig(args.a, ratios[0], 1.0, args.xi)
        p1 = p2 = link_success_from_distance(cfg, fiber, "--", "odd")
    model = AttemptModel(p1, p2)
    mc = simulate_attempts(model, args.trials, args.seed, args.workers)
    exact = attempt_stats(model)
    cols = ["quantity", "analytic [attempts]", "mc_mean [attempts]", "mc_stderr [attempts]", "z_score"]
    rows = []
    for name, m, se in zip(mc.names, mc.mean, mc.stderr):
        ref = getattr(exact, name)
        z = (m - ref) / se if se > 0 else (0.0 if m == ref else math.inf)
        rows.append([name, ref, m, se, z])
    return cols, rows, {"p1": p1, "p2": p2}


DEFAULT_SUITE = [
    ("link_probs", {"pair": "--", "r_bs": 0.2, "a": 1.0}),
    ("link_probs", {"pair": "++", "r_bs": 0.5, "a": 2.0}),
    ("link_probs", {"pair": "+-", "r_bs": 0.2, "a": 1.0}),
    ("parity_probs", {"sign": 1, "a": 1.0, "eta": 0.8, "xi": 0.9}),
    ("parity_probs", {"sign": -1, "a": 1.0, "eta": 0.8, "xi": 0.9}),
    ("photocounts", {"sign": -1, "a": 1.0, "eta": 0.8, "xi": 0.9}),
    ("swap", {"link1": [0.7, 0.3], "link2": [0.6, 0.4], "parity": "odd", "a": 0.5, "r_bs": 0.2,
              "eta_m": 0.8, "xi": 0.9}),
    ("teleport_exact", {"gamma_mag": 0.2, "alpha_mag": 0.2, "phi_c": 1.0, "nu": "+", "m": 1.0, "mu": 1}),
    ("teleport_state", {"gamma_mag": 0.2, "alpha_mag": 0.2, "phi_c": 1.0, "nu": "+", "m": 1.0, "mu": 1}),
]


def cmd_verify(args):
    from .fock_oracle import verify  # scipy.stats is slow to import; only verify needs it

    if args.selector:
        suite = [(args.selector, json.loads(args.params or "{}"))]
    else:
        suite = DEFAULT_SUITE
    cols = ["quantity", "params", "abs_diff", "tolerance", "feasible", "passed", "message"]
    rows = []
    ok = True
    for sel, params in suite:
        tol = 5e-3 if sel == "teleport_state" else args.tol
        rep = verify(sel, params, tol)
        ok &= rep.passed
        rows.append([sel, json.dumps(params, sort_keys=True).replace(",", ";"), rep.abs_diff, tol,
                     rep.feasible, rep.passed, rep.message.replace(",", ";")])
    return cols, rows, ok


def _add_common(p, grids=True):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None, help=f"output file (default stdout or ${OUTPUT_DIR_ENV})")
    p.add_argument("--config", default=None, help="JSON file with option values")


def _add_link(p, a_default="0:3:31", pair_default="minus,plus,cross", parity_default="odd,even"):
    p.add_argument("--a", default=a_default, help="|alpha|^2 grid per node [photons]")
    p.add_argument("--r-bs", dest="r_bs", default=DEFAULTS["r_bs"],
                   help="split ratio grid; 'half', 'half+0.2' give zeta = 1/2 (+shift)")
    p.add_argument("--eta", default=DEFAULTS["eta"], help="channel transmittance grid")
    p.add_argument("--xi", type=float, default=DEFAULTS["xi"], help="detector efficiency")
    p.add_argument("--pair", default=pair_default, help="symmetry pairs: minus (--), plus (++), cross (+-)")
    p.add_argument("--parity", default=parity_default)


def _add_fiber(p):
    p.add_argument("--L", default="10:60:11", help="node-to-relay distance grid [km]; link length is 2L")
    p.add_argument("--kappa", type=float, default=DEFAULTS["kappa"], help="attenuation [dB/km]")
    p.add_argument("--v", type=float, default=FIBER_SPEED, help="signal speed [km/s]")
    p.add_argument("--xi", type=float, default=DEFAULTS["xi"])
    p.add_argument("--r-bs", dest="r_bs", default=DEFAULTS["r_bs"])
    p.add_argument("--a", type=float, default=0.01, help="|alpha|^2 per node [photons]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catrepeater", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fig = sub.add_parser("fig", help="figure datasets")
    figs = fig.add_subparsers(dest="figure", required=True, parser_class=_Parser)
    p = figs.add_parser("link-probs", help="relay outcome probabilities")
    _add_link(p)
    _add_common(p)
    p = figs.add_parser("click-probs", help="click parity probabilities of the relay cats")
    _add_link(p)
    _add_common(p)
    p = figs.add_parser("success", help="heralded success probabilities")
    _add_link(p, a_default="0:10:51")
    p.add_argument("--per-detector", action="store_true", help="report one port instead of both")
    _add_common(p)
    p = figs.add_parser("fidelity", help="heralded fidelities")
    _add_link(p, a_default="0:10:51")
    _add_common(p)
    for target in (figs.add_parser("timing", help="waiting and preparation times"),
                   sub.add_parser("timing", help="alias of 'fig timing'")):
        _add_fiber(target)
        target.add_argument("--pair", default="minus,cross")
        target.add_argument("--parity", default="odd")
        target.add_argument("--lifetime", type=float, default=None, help="memory lifetime [s]")
        _add_common(target)
    p = figs.add_parser("teleport", help="teleportation success curves or truth table")
    p.add_argument("--a", default="0:1:21", help="|alpha|^2 grid [photons]")
    p.add_argument("--b", type=float, default=0.04, help="fixed |beta|^2 [photons]")
    p.add_argument("--table", action="store_true", help="emit the 16-entry truth table")
    p.add_argument("--alpha", type=float, default=0.2, help="|alpha| for the truth table")
    p.add_argument("--m", type=float, default=1.0, help="modulation index")
    _add_common(p)

    p = sub.add_parser("simulate", help="Monte Carlo attempt statistics")
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    _add_fiber(p)
    p.set_defaults(L="50")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("verify", help="analytic vs Fock-oracle checks")
    p.add_argument("--selector", default=None)
    p.add_argument("--params", default=None, help="JSON parameters for --selector")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)
    return parser


def _leaf(parser: argparse.ArgumentParser, path: list[str]) -> argparse.ArgumentParser:
    for name in path:
        for action in parser._actions:
            if isinstance(action, argparse._SubParsersAction) and name in action.choices:
                parser = action.choices[name]
                break
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Parse ``argv``; values from ``--config`` become defaults, so explicit flags win."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}")
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    path = [args.command] + ([args.figure] if getattr(args, "figure", None) else [])
    leaf = _leaf(parser, path)
    known = {a.dest for a in leaf._actions} - {"help", "config"}
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    leaf.set_defaults(**cfg)
    return parser.parse_args(argv)


_FIGS = {
    "link-probs": fig_link_probs,
    "click-probs": fig_click_probs,
    "success": fig_success,
    "fidelity": fig_fidelity,
    "timing": fig_timing,
    "teleport": fig_teleport,
}


def _params(args) -> dict:
    skip = {"config", "output", "format", "command", "figure"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        params = _params(args)
        if args.command == "fig" or args.command == "timing":
            name = args.figure if args.command == "fig" else "timing"
            cols, rows = _FIGS[name](args)
            emit(f"fig {name}", params, cols, rows, args.format, args.output)
            return 0
        if args.command == "simulate":
            cols, rows, extra = cmd_simulate(args)
            emit("simulate", {**params, **extra}, cols, rows, args.format, args.output)
            return 0
        if args.command == "verify":
            cols, rows, ok = cmd_verify(args)
            emit("verify", params, cols, rows, args.format, args.output)
            return 0 if ok else 2
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"catrepeater: error: {exc}\n")
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
