"""Batch command-line harness.

    incentive-dynamics simulate CONFIG [--out-dir DIR] [--quiet]
    incentive-dynamics check --mode {iss,ess,validity} CONFIG [--seed N] [--out-dir DIR]
    incentive-dynamics plotdata TRAJECTORY.csv [--out-dir DIR]

Exit codes: 0 success or true verdict, 1 false verdict, 2 configuration or
input error, 3 runtime failure during integration.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from .dynamics import SolverConfig, Trajectory, integrate_many
from .errors import ConfigError, IncentiveDynamicsError, LeftSimplex, NonFinite
from .games import Game
from .geometry import StateProfile
from .incentives import Incentive, best_reply, projection, replicator, validate_incentive
from .stability import check_ess, check_iss

EXIT_OK, EXIT_FALSE, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3

_SECTIONS = {
    "game": {"populations", "payoff", "payoff_a", "payoff_b"},
    "incentive": {"kind", "g_shift", "tiebreak", "interior_eps"},
    "solver": {"method", "h", "t_end", "record_every", "boundary_policy", "eps"},
    "initial_states": None,
    "monitor": {"target"},
    "check": {"candidate", "radius", "samples", "seed", "min_component", "validity_samples"},
    "output": {"dir", "prefix"},
}


@dataclass
class RunConfig:
    game: Game
    incentive: Incentive
    solver: SolverConfig
    initial_states: list
    target: Optional[StateProfile]
    candidate: Optional[StateProfile]
    radius: float = 0.1
    samples: int = 1000
    seed: int = 0
    min_component: float = 1e-6
    validity_samples: int = 200
    out_dir: Optional[str] = None
    prefix: str = "run"
    sha256: str = ""
    raw: dict = field(default_factory=dict)


def _number(v, what: str) -> float:
    if isinstance(v, bool):
        raise ConfigError(f"{what}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            pass
    raise ConfigError(f"{what}: expected a number, got {v!r}")


def _matrix(v, what: str) -> np.ndarray:
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise ConfigError(f"{what}: expected a row-major list of rows")
    if len({len(r) for r in v}) != 1:
        raise ConfigError(f"{what}: rows have different lengths")
    return np.array([[_number(e, what) for e in r] for r in v])


def _profile(v, game: Game, what: str) -> StateProfile:
    if v == "barycenter":
        return StateProfile(tuple(np.full(n, 1.0 / n) for n in game.strategy_counts))
    if not isinstance(v, list) or not v:
        raise ConfigError(f"{what}: expected a list of weights or 'barycenter'")
    rows = v if all(isinstance(r, list) for r in v) else [v]
    try:
        prof = StateProfile.normalized(*[[_number(e, what) for e in r] for r in rows])
    except IncentiveDynamicsError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    if prof.sizes != game.strategy_counts:
        raise ConfigError(f"{what}: sizes {prof.sizes} do not match the game {game.strategy_counts}")
    return prof


def _section(doc: dict, name: str, required: bool = False) -> dict:
    sec = doc.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing section [{name}]")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"section [{name}] must be a mapping")
    unknown = set(sec) - _SECTIONS[name]
    if unknown:
        raise ConfigError(f"unknown keys in [{name}]: {sorted(unknown)}")
    return sec


def _game(sec: dict) -> Game:
    pops = sec.get("populations", 1)
    if pops not in (1, 2):
        raise ConfigError("game.populations must be 1 or 2")
    try:
        if pops == 1:
            if "payoff" not in sec:
                raise ConfigError("game.payoff is required for one population")
            return Game.symmetric(_matrix(sec["payoff"], "game.payoff"))
        if "payoff_a" not in sec or "payoff_b" not in sec:
            raise ConfigError("game.payoff_a and game.payoff_b are required for two populations")
        return Game.bimatrix(_matrix(sec["payoff_a"], "game.payoff_a"), _matrix(sec["payoff_b"], "game.payoff_b"))
    except (IncentiveDynamicsError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _incentive(sec: dict) -> Incentive:
    kind = sec.get("kind", "replicator")
    params = set(sec) - {"kind"}
    allowed = {"replicator": {"g_shift"}, "best-reply": {"tiebreak"}, "projection": {"interior_eps"}}
    if kind not in allowed:
        raise ConfigError(f"incentive.kind must be one of {sorted(allowed)}")
    if params - allowed[kind]:
        raise ConfigError(f"incentive {kind} does not take {sorted(params - allowed[kind])}")
    try:
        if kind == "replicator":
            g = sec.get("g_shift")
            return replicator(None if g is None else _number(g, "incentive.g_shift"))
        if kind == "best-reply":
            return best_reply(sec.get("tiebreak", "lowest-index"))
        return projection(_number(sec.get("interior_eps", 1e-12), "incentive.interior_eps"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> RunConfig:
    """Parse and validate a YAML run configuration."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    try:
        doc = yaml.safe_load(data)
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping of sections")
    unknown = set(doc) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown sections: {sorted(unknown)}")

    game = _game(_section(doc, "game", required=True))
    inc = _incentive(_section(doc, "incentive", required=True))
    s = _section(doc, "solver")
    try:
        solver = SolverConfig(
            method=s.get("method", "rk4-fixed"),
            h=_number(s.get("h", 1e-3), "solver.h"),
            t_end=_number(s.get("t_end", 10.0), "solver.t_end"),
            record_every=s.get("record_every", 1),
            boundary_policy=s.get("boundary_policy", "clamp"),
            eps=_number(s.get("eps", 1e-12), "solver.eps"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"solver: {exc}") from None

    raw_states = doc.get("initial_states") or []
    if not isinstance(raw_states, list):
        raise ConfigError("initial_states must be a list")
    states = [_profile(v, game, f"initial_states[{i}]") for i, v in enumerate(raw_states)]

    mon = _section(doc, "monitor")
    target = _profile(mon["target"], game, "monitor.target") if "target" in mon else None
    if target is not None and target.min() <= 0:
        raise ConfigError("monitor.target must be strictly interior")

    chk = _section(doc, "check")
    candidate = _profile(chk["candidate"], game, "check.candidate") if "candidate" in chk else None
    seed = chk.get("seed", 0)
    samples = chk.get("samples", 1000)
    vsamples = chk.get("validity_samples", 200)
    for name, v in (("seed", seed), ("samples", samples), ("validity_samples", vsamples)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ConfigError(f"check.{name} must be a nonnegative integer")
    radius = _number(chk.get("radius", 0.1), "check.radius")
    if radius <= 0:
        raise ConfigError("check.radius must be positive")

    out = _section(doc, "output")
    return RunConfig(
        game=game, incentive=inc, solver=solver, initial_states=states, target=target,
        candidate=candidate, radius=radius, samples=samples, seed=seed,
        min_component=_number(chk.get("min_component", 1e-6), "check.min_component"),
        validity_samples=vsamples, out_dir=out.get("dir"), prefix=str(out.get("prefix", "run")),
        sha256=hashlib.sha256(data).hexdigest(), raw=doc,
    )


def trajectory_header(traj: Trajectory) -> list[str]:
    cols = ["t"] + [f"x_{i}_{a}" for i, n in enumerate(traj.sizes) for a in range(n)]
    if traj.V is not None:
        cols += ["V", "Vdot"]
    return cols


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Write ``t, x_i_a..., [V, Vdot]`` with 17 significant digits."""
    cols = [np.asarray(traj.times)[:, None], traj.flat]
    if traj.V is not None:
        cols += [np.asarray(traj.V)[:, None], np.asarray(traj.Vdot)[:, None]]
    np.savetxt(path, np.hstack(cols), fmt="%.17g", delimiter=",",
               header=",".join(trajectory_header(traj)), comments="")


_COLUMN = re.compile(r"x_(\d+)_(\d+)$")


def read_trajectory_csv(path):
    """Read a trajectory CSV; returns ``(times, states, sizes, V or None)``."""
    path = Path(path)
    try:
        with path.open() as fh:
            header = fh.readline().strip().split(",")
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read trajectory {path}: {exc}") from None
    if not header or header[0] != "t":
        raise ConfigError("trajectory CSV must start with a 't' column")
    rest = header[1:]
    monitored = rest[-2:] == ["V", "Vdot"]
    xcols = rest[:-2] if monitored else rest
    idx = [_COLUMN.match(c) for c in xcols]
    if not xcols or not all(idx):
        raise ConfigError(f"unexpected trajectory columns {rest}")
    pairs = [(int(m.group(1)), int(m.group(2))) for m in idx]
    sizes = []
    for i, a in pairs:
        if a == 0:
            if i != len(sizes):
                raise ConfigError("population columns out of order")
            sizes.append(0)
        elif not sizes or i != len(sizes) - 1 or a != sizes[-1]:
            raise ConfigError("strategy columns out of order")
        sizes[-1] += 1
    if data.shape[0] == 0 or data.shape[1] != len(header):
        raise ConfigError("trajectory rows do not match the header")
    V = data[:, -2] if monitored else None
    return data[:, 0], data[:, 1:1 + len(xcols)], tuple(sizes), V


def _emit(msg: str, quiet: bool) -> None:
    if not quiet:
        print(msg)


def _out_dir(args, cfg_dir: Optional[str], default: Path) -> Path:
    out = Path(args.out_dir) if args.out_dir else Path(cfg_dir) if cfg_dir else default
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    if not cfg.initial_states:
        raise ConfigError("simulate needs at least one entry in initial_states")
    out = _out_dir(args, cfg.out_dir, Path("."))
    try:
        trajs = integrate_many(cfg.game, cfg.incentive, cfg.initial_states, cfg.solver, cfg.target)
    except (LeftSimplex, NonFinite) as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    lines = [f"config_sha256: {cfg.sha256}", f"game: {cfg.game.identifier}",
             f"incentive: {cfg.incentive.identifier}", f"solver: {cfg.solver}"]
    for k, traj in enumerate(trajs):
        path = out / f"{cfg.prefix}_{k}.csv"
        write_trajectory_csv(traj, path)
        lines.append(f"[{k}] {path.name}: t_end={float(traj.times[-1])!r} records={len(traj)}")
        lines.append(f"    initial: {traj.state(0).tolist()}")
        lines.append(f"    final:   {traj.final.tolist()}")
        if traj.V is not None:
            lines.append(f"    V: {float(traj.V[0])!r} -> {float(traj.V[-1])!r}")
    summary = "\n".join(lines) + "\n"
    (out / f"{cfg.prefix}_summary.txt").write_text(summary)
    _emit(summary.rstrip(), args.quiet)
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    seed = cfg.seed if args.seed is None else args.seed
    out = _out_dir(args, cfg.out_dir, Path("."))
    if args.mode in ("iss", "ess") and cfg.candidate is None:
        raise ConfigError(f"{args.mode} check needs check.candidate")
    try:
        if args.mode == "iss":
            cert = check_iss(cfg.game, cfg.incentive, cfg.candidate, cfg.radius, cfg.samples, seed, cfg.min_component)
        elif args.mode == "ess":
            cert = check_ess(cfg.game, cfg.candidate, cfg.radius, cfg.samples, seed, cfg.min_component)
        else:
            cert = validate_incentive(cfg.incentive, cfg.game, max(cfg.validity_samples, 1), seed)
    except IncentiveDynamicsError as exc:
        raise ConfigError(str(exc)) from None
    doc = cert.to_dict()
    doc["config_sha256"] = cfg.sha256
    path = out / f"{cfg.prefix}_{args.mode}_certificate.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _emit(f"{args.mode}: verdict={'true' if cert.verdict else 'false'} -> {path}", args.quiet)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def ternary_coordinates(x: np.ndarray) -> np.ndarray:
    """Map rows of 3-strategy weights to the plane; vertices go to (0,0), (1,0), (1/2, sqrt(3)/2)."""
    x = np.asarray(x, dtype=float)
    return np.column_stack([x[:, 1] + 0.5 * x[:, 2], (np.sqrt(3.0) / 2.0) * x[:, 2]])


def cmd_plotdata(args) -> int:
    src = Path(args.trajectory)
    t, states, sizes, V = read_trajectory_csv(src)
    out = _out_dir(args, None, src.parent)
    if sizes == (3,):
        uv = ternary_coordinates(states)
        path = out / f"{src.stem}_ternary.tsv"
        np.savetxt(path, np.column_stack([t, uv]), fmt="%.17g", delimiter="\t", header="t\tu\tv", comments="")
        _emit(f"ternary data -> {path}", args.quiet)
    else:
        _emit(f"notice: ternary data needs one population with 3 strategies, got sizes {sizes}; skipped", args.quiet)
    if V is not None:
        path = out / f"{src.stem}_V.tsv"
        np.savetxt(path, np.column_stack([t, V]), fmt="%.17g", delimiter="\t", header="t\tV", comments="")
        _emit(f"V data -> {path}", args.quiet)
    else:
        _emit("notice: trajectory has no V column; V data skipped", args.quiet)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incentive-dynamics", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", help="directory for output files")
    common.add_argument("--quiet", action="store_true", help="suppress console output")
    common.add_argument("--seed", type=int, help="override check.seed")

    p = sub.add_parser("simulate", parents=[common], help="integrate every initial state in a config")
    p.add_argument("config")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check", parents=[common], help="ISS/ESS certificate or incentive validity report")
    p.add_argument("--mode", choices=("iss", "ess", "validity"), required=True)
    p.add_argument("config")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("plotdata", parents=[common], help="ternary and V(t) tables from a trajectory CSV")
    p.add_argument("trajectory")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IncentiveDynamicsError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
