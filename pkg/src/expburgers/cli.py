"""Configuration-driven command line front end.

Experiments are described by small ``key = value`` files and emit plain CSV
tables. The same config always produces byte-identical output, so results
can be diffed directly against stored reference tables.
"""

import argparse
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .analysis import convergence_table, linf_error, search_p, track_maxima
from .exceptions import ConfigError, SingularSystemError, ValidationError
from .problems import problem1, problem2, problem3
from .splines import knots, make_params, nodal_values_grid, nodal_weights
from .stepping import run

logger = logging.getLogger(__name__)

_ENV_OUT = "EXPBURGERS_OUT"
_MODES = ("errors", "maxima", "convergence", "profile")
_KEYS = (
    "problem",
    "k1",
    "k2",
    "k3",
    "N",
    "dt",
    "p",
    "p_lo",
    "p_hi",
    "tfinal",
    "snapshots",
    "mode",
    "out",
)
_REQUIRED = ("problem", "N", "dt", "tfinal")


@dataclass(frozen=True)
class ExperimentConfig:
    """One validated experiment description.

    ``p`` is None exactly when ``search`` is set; ``n_list`` has several
    entries only in convergence mode.
    """

    problem: int
    k1: float | None
    k2: float | None
    k3: float | None
    n_list: tuple[int, ...]
    dt: float
    p: float | None
    search: bool
    p_lo: float
    p_hi: float
    t_final: float
    snapshots: tuple[float, ...]
    mode: str
    out: str | None


def _to_float(value: str, key: str, line: int | None) -> float:
    try:
        parsed = float(value)
    except ValueError:
        raise ConfigError(f"invalid number for '{key}': '{value}'", line) from None
    if not math.isfinite(parsed):
        raise ConfigError(f"'{key}' must be finite, got '{value}'", line)
    return parsed


def _to_int(value: str, key: str, line: int | None) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"invalid integer for '{key}': '{value}'", line) from None


def _steps_of(t: float, dt: float) -> int | None:
    """Step count when t is an integer multiple of dt, else None."""
    k = int(round(t / dt))
    if abs(k * dt - t) > 1e-9 * max(abs(t), dt):
        return None
    return k


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a ``key = value`` experiment description.

    Comments start at ``#`` anywhere on a line. Unknown and duplicate keys
    are rejected; diagnostics carry the offending line number.
    """
    raw: dict[str, str] = {}
    lines: dict[str, int] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError("expected 'key = value'", line_no)
        key, _, value = body.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ConfigError(f"unknown key '{key}'", line_no)
        if key in raw:
            raise ConfigError(f"duplicate key '{key}'", line_no)
        if not value:
            raise ConfigError(f"empty value for '{key}'", line_no)
        raw[key] = value
        lines[key] = line_no

    for key in _REQUIRED:
        if key not in raw:
            raise ConfigError(f"missing required key '{key}'")

    problem = _to_int(raw["problem"], "problem", lines["problem"])
    if problem not in (1, 2, 3):
        raise ConfigError(f"'problem' must be 1, 2 or 3, got {problem}", lines["problem"])

    constants: dict[str, float | None] = {}
    for key in ("k1", "k2", "k3"):
        constants[key] = _to_float(raw[key], key, lines[key]) if key in raw else None

    n_list = tuple(
        _to_int(tok.strip(), "N", lines["N"]) for tok in raw["N"].split(",") if tok.strip()
    )
    if not n_list:
        raise ConfigError("'N' must hold at least one value", lines["N"])
    if len(n_list) > 1 and any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("'N' values must be strictly increasing", lines["N"])

    dt = _to_float(raw["dt"], "dt", lines["dt"])
    if dt <= 0.0:
        raise ConfigError(f"'dt' must be positive, got {dt}", lines["dt"])

    t_final = _to_float(raw["tfinal"], "tfinal", lines["tfinal"])
    if t_final < 0.0:
        raise ConfigError(f"'tfinal' must be nonnegative, got {t_final}", lines["tfinal"])
    final_steps = _steps_of(t_final, dt)
    if final_steps is None:
        raise ConfigError(
            f"'tfinal' = {t_final} is not an integer multiple of dt = {dt}", lines["tfinal"]
        )

    search = False
    p: float | None = 1.0
    if "p" in raw:
        if raw["p"] == "search":
            search = True
            p = None
        else:
            p = _to_float(raw["p"], "p", lines["p"])
            if p <= 0.0:
                raise ConfigError(f"'p' must be positive, got {p}", lines["p"])

    for key in ("p_lo", "p_hi"):
        if key in raw and not search:
            raise ConfigError(f"'{key}' requires p = search", lines[key])
    p_lo = _to_float(raw["p_lo"], "p_lo", lines["p_lo"]) if "p_lo" in raw else 1e-8
    p_hi = _to_float(raw["p_hi"], "p_hi", lines["p_hi"]) if "p_hi" in raw else 10.0
    if search and not (0.0 < p_lo < p_hi):
        at = lines.get("p_lo", lines.get("p_hi", lines["p"]))
        raise ConfigError(f"need 0 < p_lo < p_hi, got [{p_lo}, {p_hi}]", at)

    snapshots: tuple[float, ...] = ()
    if "snapshots" in raw:
        at = lines["snapshots"]
        snapshots = tuple(
            _to_float(tok.strip(), "snapshots", at)
            for tok in raw["snapshots"].split(",")
            if tok.strip()
        )
        if not snapshots:
            raise ConfigError("'snapshots' must hold at least one time", at)
        for s in snapshots:
            if s < 0.0:
                raise ConfigError(f"snapshot time {s} is negative", at)
            k = _steps_of(s, dt)
            if k is None:
                raise ConfigError(
                    f"snapshot time {s} is not an integer multiple of dt = {dt}", at
                )
            if k > final_steps:
                raise ConfigError(f"snapshot time {s} lies beyond tfinal = {t_final}", at)

    mode = raw.get("mode", "errors")
    if mode not in _MODES:
        raise ConfigError(f"'mode' must be one of {', '.join(_MODES)}", lines.get("mode"))

    if len(n_list) > 1 and mode != "convergence":
        raise ConfigError("an 'N' list is only allowed in convergence mode", lines["N"])
    if mode == "convergence" and len(n_list) < 2:
        raise ConfigError("convergence mode needs at least two 'N' values", lines["N"])
    if search and mode != "errors":
        raise ConfigError("p = search is only supported in errors mode", lines["p"])
    if mode in ("errors", "convergence") and problem == 3:
        raise ConfigError(
            f"problem 3 has no exact solution; {mode} mode is unavailable", lines["problem"]
        )
    if mode == "maxima" and not snapshots:
        raise ConfigError("maxima mode needs 'snapshots'", lines.get("mode"))

    if problem == 2:
        if constants["k2"] is None or constants["k3"] is None:
            raise ConfigError("problem 2 requires k2 and k3", lines["problem"])
        if constants["k1"] is not None and constants["k1"] != 2.0:
            raise ConfigError("problem 2 fixes k1 = 2", lines["k1"])
    if problem == 3 and any(constants[key] is None for key in ("k1", "k2", "k3")):
        raise ConfigError("problem 3 requires k1, k2 and k3", lines["problem"])

    return ExperimentConfig(
        problem=problem,
        k1=constants["k1"],
        k2=constants["k2"],
        k3=constants["k3"],
        n_list=n_list,
        dt=dt,
        p=p,
        search=search,
        p_lo=p_lo,
        p_hi=p_hi,
        t_final=t_final,
        snapshots=snapshots,
        mode=mode,
        out=raw.get("out"),
    )


def build_problem(config: ExperimentConfig):
    """Instantiate the configured benchmark problem."""
    if config.problem == 1:
        overrides = {
            key: value
            for key, value in (("k1", config.k1), ("k2", config.k2), ("k3", config.k3))
            if value is not None
        }
        return problem1(**overrides)
    if config.problem == 2:
        return problem2(config.k2, config.k3)
    return problem3(config.k1, config.k2, config.k3)


def resolve_out_dir(config: ExperimentConfig, override: str | None = None) -> Path:
    """Output directory: --out wins, then the config, then the environment."""
    if override:
        return Path(override)
    if config.out:
        return Path(config.out)
    env = os.environ.get(_ENV_OUT)
    if env:
        return Path(env)
    return Path(".")


def _sci(value: float) -> str:
    return f"{value:.11e}"


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(row) + "\n")
    logger.info("wrote %s", path)


def _distinct_states(snaps, final):
    states = []
    seen = set()
    for state in [*snaps, final]:
        if state.t not in seen:
            seen.add(state.t)
            states.append(state)
    return states


def _run_errors(config: ExperimentConfig, problem, out: Path) -> None:
    n = config.n_list[0]
    if config.search:
        p_use, best = search_p(
            problem, n, config.dt, config.t_final, config.p_lo, config.p_hi
        )
        logger.info("search found p = %.6g with error %.6g", p_use, best)
    else:
        p_use = config.p
    params = make_params(problem.a, problem.b, n, p_use)
    final, snaps = run(problem, params, config.dt, config.t_final, config.snapshots)
    rows = []
    for state in _distinct_states(snaps, final):
        report = linf_error(state, problem, params, state.t, dt=config.dt)
        rows.append(
            [
                _sci(n),
                _sci(config.dt),
                _sci(p_use),
                _sci(state.t),
                _sci(report.linf_u),
                _sci(report.linf_v),
            ]
        )
    _write_csv(out / "errors.csv", ["N", "dt", "p", "t", "linf_u", "linf_v"], rows)


def _run_convergence(config: ExperimentConfig, problem, out: Path) -> None:
    table = convergence_table(problem, config.n_list, config.dt, config.p, config.t_final)
    rows = [
        [_sci(n), _sci(linf), _sci(order) if order is not None else ""]
        for n, linf, order in table
    ]
    _write_csv(out / "convergence.csv", ["N", "linf", "order"], rows)


def _run_maxima(config: ExperimentConfig, problem, out: Path) -> None:
    params = make_params(problem.a, problem.b, config.n_list[0], config.p)
    report = track_maxima(problem, params, config.dt, config.snapshots)
    rows = [
        [
            _sci(report.t[j]),
            _sci(report.max_u[j]),
            _sci(report.x_u[j]),
            _sci(report.max_v[j]),
            _sci(report.x_v[j]),
        ]
        for j in range(report.t.shape[0])
    ]
    _write_csv(out / "maxima.csv", ["t", "max_u", "x_u", "max_v", "x_v"], rows)


def _run_profile(config: ExperimentConfig, problem, out: Path) -> None:
    params = make_params(problem.a, problem.b, config.n_list[0], config.p)
    final, snaps = run(problem, params, config.dt, config.t_final, config.snapshots)
    x = knots(params)
    w = nodal_weights(params)
    for state in _distinct_states(snaps, final):
        u, _, _ = nodal_values_grid(state.delta, w)
        v, _, _ = nodal_values_grid(state.phi, w)
        rows = [[_sci(x[j]), _sci(u[j]), _sci(v[j])] for j in range(x.shape[0])]
        _write_csv(out / f"profile_t{state.t:g}.csv", ["x", "u", "v"], rows)


def run_experiment(config: ExperimentConfig, out_dir: str | Path | None = None) -> int:
    """Run one configured experiment and write its CSV outputs."""
    out = Path(out_dir) if out_dir is not None else resolve_out_dir(config)
    out.mkdir(parents=True, exist_ok=True)
    problem = build_problem(config)
    handler = {
        "errors": _run_errors,
        "convergence": _run_convergence,
        "maxima": _run_maxima,
        "profile": _run_profile,
    }[config.mode]
    handler(config, problem, out)
    return 0


def main(argv: list[str] | None = None) -> int:
    """Entry point: 0 on success, 1 on bad input, 2 on solver failure."""
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = argparse.ArgumentParser(
        prog="solve",
        description="Run a tension-spline collocation experiment from a config file.",
    )
    parser.add_argument("--config", required=True, help="path to a key = value config file")
    parser.add_argument("--out", default=None, help="output directory for CSV files")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        logger.error("cannot read config: %s", exc)
        return 1
    try:
        config = parse_config(text)
        out_dir = resolve_out_dir(config, args.out)
        return run_experiment(config, out_dir)
    except ConfigError as exc:
        logger.error("config: %s", exc)
        return 1
    except ValidationError as exc:
        logger.error("%s", exc)
        return 1
    except SingularSystemError as exc:
        logger.error("solver failure: %s", exc)
        return 2
    except OSError as exc:
        logger.error("%s", exc)
        return 1
