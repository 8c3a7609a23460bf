"""Command-line driver: parameter scans and figure data.

Configuration files are INI-style with flat sections::

    [system]
    kind = kaon            ; kaon | yb171 | yb172
    gamma_s = 11.17        ; 1/ns
    gamma_l = 0.01957      ; 1/ns (kaon only)
    omega = 5.296          ; 1/ns
    epsilon = 0.0

    [witness]
    kind = chsh            ; chsh | scg
    mode = analytic        ; analytic | lindblad
    schedule = paper-chsh  ; named template, or "explicit"
    alice = 1.5708 3.1416 0 1; 1.5708 3.1416 0 0
    bob = 1.5708 3.1416 0 0; 1.5708 3.1416 0 1
    trace = false          ; also report Tr(W rho) for the singlet

    [scan]
    tau_start = 0
    tau_stop = 2
    tau_steps = 201
    epsilon_start = 0
    epsilon_stop = 0.2
    epsilon_steps = 11
    margin = 0.001

    [trotter]
    dt = 0.001
    order = 2

    [output]
    path = -
    format = csv           ; csv | plotdata | svg

Explicit settings are ``alpha phi t0 [scale]`` separated by ``;`` and give
the measurement time ``t0 + scale * tau``.
"""
import argparse
import configparser
import io
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import bell, ionsim, kaon
from .effop import MeasurementSetting, effective_operator

CSV_HEADER = "epsilon,tau_ns,lambda_min,lambda_max,trace_value,bound,violated"
LIFETIME_HEADER = "epsilon,lifetime_ns,lifetime_10ns"
ION_HEADER = "epsilon,lifetime_pure_decay_ns,lifetime_with_dephasing_ns"
FORMATS = ("csv", "plotdata", "svg")
SYSTEMS = ("kaon", "yb171", "yb172")

OMEGA_NOTE = (
    "omega defaults to 0.474 * gamma_s, the standard kaon mass splitting; "
    "set [system] omega to override"
)


class ConfigError(ValueError):
    """Invalid configuration; ``key`` is the ``section.option`` path."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    system: str = "kaon"
    gamma_s: float = kaon.GAMMA_S
    gamma_l: float = kaon.GAMMA_L
    omega: float = kaon.OMEGA
    epsilon: float = 0.0
    mode: str = "analytic"
    witness: str = "chsh"
    schedule: object = "paper-chsh"
    trace: bool = False
    tau_start: float = 0.0
    tau_stop: float = 2.0
    tau_steps: int = 201
    epsilons: Optional[tuple] = None
    margin: float = bell.LIFETIME_MARGIN
    trotter: Optional[ionsim.TrotterConfig] = None
    output: str = "-"
    format: str = "csv"
    notes: tuple = field(default=(), compare=False)

    @property
    def taus(self):
        return np.linspace(self.tau_start, self.tau_stop, self.tau_steps)

    @property
    def epsilon_list(self):
        return list(self.epsilons) if self.epsilons is not None else [self.epsilon]

    @property
    def bound(self):
        return bell.CLASSICAL_BOUND[self.witness.upper()]

    def kaon_params(self, epsilon=None):
        eps = self.epsilon if epsilon is None else epsilon
        return kaon.KaonParams(self.gamma_s, self.gamma_l, self.omega, eps)

    def build_system(self, epsilon=None):
        eps = self.epsilon if epsilon is None else epsilon
        if self.system == "kaon":
            return self.kaon_params(eps)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ionsim.ValidityWarning)
            return ionsim.yb_model(
                "Yb171" if self.system == "yb171" else "Yb172",
                self.gamma_s,
                eps,
                self.omega,
                self.trotter,
            )

    @property
    def effective_mode(self):
        return "lindblad" if self.system != "kaon" else self.mode


@dataclass(frozen=True)
class ScanRow:
    epsilon: float
    tau_ns: float
    lambda_min: float
    lambda_max: float
    trace_value: Optional[float]
    bound: float
    violated: bool


@dataclass(frozen=True)
class LifetimeRow:
    epsilon: float
    lifetime_ns: float


_SCHEMA = {
    "system": {
        "kind": str,
        "gamma_s": float,
        "gamma_l": float,
        "omega": float,
        "epsilon": float,
    },
    "witness": {
        "kind": str,
        "mode": str,
        "schedule": str,
        "alice": str,
        "bob": str,
        "trace": bool,
    },
    "scan": {
        "tau_start": float,
        "tau_stop": float,
        "tau_steps": int,
        "epsilon_start": float,
        "epsilon_stop": float,
        "epsilon_steps": int,
        "epsilons": str,
        "margin": float,
    },
    "trotter": {"dt": float, "order": int},
    "output": {"path": str, "format": str},
}


def _convert(key, kind, raw):
    raw = raw.strip()
    try:
        if kind is bool:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is int:
            return int(raw)
        if kind is float:
            val = float(raw)
            if not math.isfinite(val):
                raise ValueError(raw)
            return val
    except ValueError:
        raise ConfigError(key, f"expected {kind.__name__}, got {raw!r}") from None
    return raw


def _parse_explicit(key, text):
    out = []
    for chunk in text.split(";"):
        parts = chunk.replace(",", " ").split()
        if not parts:
            continue
        if len(parts) not in (3, 4):
            raise ConfigError(key, f"expected 'alpha phi t0 [scale]', got {chunk.strip()!r}")
        try:
            alpha, phi, t0 = (float(x) for x in parts[:3])
            scale = float(parts[3]) if len(parts) == 4 else 0.0
            direction = kaon.QuasiSpin(alpha, phi)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
        if t0 < 0:
            raise ConfigError(key, "measurement times must be non-negative")
        out.append(bell.SettingTemplate(direction, scale, t0))
    return tuple(out)


def _flatten(sections):
    values = {}
    for section, options in sections.items():
        if section not in _SCHEMA:
            raise ConfigError(section, "unknown section")
        for option, raw in options.items():
            key = f"{section}.{option}"
            if option not in _SCHEMA[section]:
                raise ConfigError(key, "unknown key")
            values[key] = _convert(key, _SCHEMA[section][option], raw)
    return values


def parse_config(text="", overrides=None):
    """Parse INI text (plus ``section.option`` overrides) into a RunConfig."""
    parser = configparser.ConfigParser(
        inline_comment_prefixes=(";", "#"), interpolation=None, default_section="__none__"
    )
    parser.optionxform = str
    try:
        parser.read_string(text or "")
    except configparser.Error as exc:
        raise ConfigError("<config>", str(exc).splitlines()[0]) from None
    sections = {s: dict(parser.items(s)) for s in parser.sections()}
    values = _flatten(sections)
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        section, _, option = key.partition(".")
        if section not in _SCHEMA or option not in _SCHEMA[section]:
            raise ConfigError(key, "unknown key")
        values[key] = raw if not isinstance(raw, str) else _convert(key, _SCHEMA[section][option], raw)
    return _build(values)


def _build(v):
    notes = []
    system = v.get("system.kind", "kaon").lower()
    if system not in SYSTEMS:
        raise ConfigError("system.kind", f"expected one of {SYSTEMS}, got {system!r}")
    gamma_s = v.get("system.gamma_s", kaon.GAMMA_S)
    gamma_l = v.get("system.gamma_l", kaon.GAMMA_L if system == "kaon" else 0.0)
    if "system.omega" in v:
        omega = v["system.omega"]
    else:
        omega = kaon.DELTA_M_OVER_GAMMA_S * gamma_s
        notes.append(OMEGA_NOTE)
    epsilon = v.get("system.epsilon", 0.0)
    if not gamma_s > 0:
        raise ConfigError("system.gamma_s", f"must be positive, got {gamma_s}")
    if gamma_l < 0:
        raise ConfigError("system.gamma_l", f"must be non-negative, got {gamma_l}")
    if system == "kaon" and not gamma_l < gamma_s:
        raise ConfigError("system.gamma_l", "must be smaller than gamma_s")
    if omega < 0:
        raise ConfigError("system.omega", f"must be non-negative, got {omega}")
    if system != "kaon" and not omega > 0:
        raise ConfigError("system.omega", "ion models need a positive omega")
    if not 0 <= epsilon < 1:
        raise ConfigError("system.epsilon", f"must lie in [0, 1), got {epsilon}")

    mode = v.get("witness.mode", "analytic").lower()
    if mode not in ("analytic", "lindblad"):
        raise ConfigError("witness.mode", f"expected analytic or lindblad, got {mode!r}")
    if system != "kaon" and "witness.mode" in v and mode != "lindblad":
        raise ConfigError("witness.mode", "ion systems only support lindblad mode")

    witness = v.get("witness.kind")
    schedule_name = v.get("witness.schedule")
    if witness is not None:
        witness = witness.lower()
        if witness not in ("chsh", "scg"):
            raise ConfigError("witness.kind", f"expected chsh or scg, got {witness!r}")
    if schedule_name is None:
        schedule_name = "paper-scg" if witness == "scg" else "paper-chsh"
    witness = witness or ("scg" if schedule_name in ("paper-scg", "scg-alt") else "chsh")

    if schedule_name == "explicit":
        if "witness.alice" not in v or "witness.bob" not in v:
            raise ConfigError("witness.schedule", "explicit schedule needs alice and bob")
        alice = _parse_explicit("witness.alice", v["witness.alice"])
        bob = _parse_explicit("witness.bob", v["witness.bob"])
        try:
            schedule = bell.Schedule("explicit", witness.upper(), alice, bob)
        except ValueError as exc:
            raise ConfigError("witness.alice", str(exc)) from None
    else:
        if schedule_name not in bell.SCHEDULES:
            raise ConfigError(
                "witness.schedule",
                f"unknown schedule {schedule_name!r}; known: explicit, {', '.join(bell.SCHEDULES)}",
            )
        schedule = schedule_name
        if bell.SCHEDULES[schedule_name].kind.lower() != witness:
            raise ConfigError(
                "witness.schedule", f"schedule {schedule_name!r} is not a {witness} schedule"
            )

    tau_start = v.get("scan.tau_start", 0.0)
    tau_stop = v.get("scan.tau_stop", 2.0)
    tau_steps = v.get("scan.tau_steps", 201)
    if tau_start < 0:
        raise ConfigError("scan.tau_start", "must be non-negative")
    if tau_steps < 1:
        raise ConfigError("scan.tau_steps", "must be at least 1")
    if tau_steps >= 2 and not tau_stop > tau_start:
        raise ConfigError("scan.tau_stop", "tau grid must be ascending")

    epsilons = None
    if "scan.epsilons" in v:
        try:
            epsilons = tuple(float(x) for x in v["scan.epsilons"].replace(",", " ").split())
        except ValueError:
            raise ConfigError("scan.epsilons", "expected a list of numbers") from None
        if not epsilons or any(b <= a for a, b in zip(epsilons, epsilons[1:])):
            raise ConfigError("scan.epsilons", "must be a non-empty ascending list")
    elif any(k in v for k in ("scan.epsilon_start", "scan.epsilon_stop", "scan.epsilon_steps")):
        e0 = v.get("scan.epsilon_start", 0.0)
        e1 = v.get("scan.epsilon_stop", 0.2)
        n = v.get("scan.epsilon_steps", 11)
        if n < 2:
            raise ConfigError("scan.epsilon_steps", "must be at least 2")
        if not e1 > e0:
            raise ConfigError("scan.epsilon_stop", "epsilon grid must be ascending")
        epsilons = tuple(float(x) for x in np.linspace(e0, e1, n))
    if epsilons is not None and any(not 0 <= e < 1 for e in epsilons):
        raise ConfigError("scan.epsilons", "values must lie in [0, 1)")

    margin = v.get("scan.margin", bell.LIFETIME_MARGIN)
    if margin < 0:
        raise ConfigError("scan.margin", "must be non-negative")

    trotter = None
    if "trotter.dt" in v or "trotter.order" in v:
        dt = v.get("trotter.dt", 1.0 / (50 * max(omega, gamma_s)))
        try:
            trotter = ionsim.TrotterConfig(dt, v.get("trotter.order", 2))
        except ValueError as exc:
            raise ConfigError("trotter.dt" if dt <= 0 else "trotter.order", str(exc)) from None

    fmt = v.get("output.format", "csv").lower()
    if fmt not in FORMATS:
        raise ConfigError("output.format", f"expected one of {FORMATS}, got {fmt!r}")

    return RunConfig(
        system=system,
        gamma_s=gamma_s,
        gamma_l=gamma_l,
        omega=omega,
        epsilon=epsilon,
        mode=mode if system == "kaon" else "lindblad",
        witness=witness,
        schedule=schedule,
        trace=v.get("witness.trace", False),
        tau_start=tau_start,
        tau_stop=tau_stop,
        tau_steps=tau_steps,
        epsilons=epsilons,
        margin=margin,
        trotter=trotter,
        output=v.get("output.path", "-"),
        format=fmt,
        notes=tuple(notes),
    )


def _initial_state(config, system):
    if not config.trace:
        return None
    if config.system != "kaon":
        return system.singlet_state()
    return kaon.singlet_state(embedded=config.effective_mode == "lindblad")


def _row(config, result):
    return ScanRow(
        epsilon=float(result.epsilon),
        tau_ns=float(result.tau),
        lambda_min=result.lambda_min,
        lambda_max=result.lambda_max,
        trace_value=result.trace_value,
        bound=config.bound,
        violated=result.violated,
    )


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def run(config, workers=1):
    """Evaluate the witness over ``epsilons x taus`` (epsilon-major)."""
    points = [(eps, float(tau)) for eps in config.epsilon_list for tau in config.taus]
    systems = {eps: config.build_system(eps) for eps in config.epsilon_list}
    states = {eps: _initial_state(config, systems[eps]) for eps in config.epsilon_list}

    def one(point):
        eps, tau = point
        return _row(
            config,
            bell.evaluate(config.schedule, systems[eps], tau, config.effective_mode, states[eps]),
        )

    return _map(one, points, workers)


def run_epsilon_scan(config, workers=1):
    """Strongest violation over the tau grid for each epsilon."""

    def one(eps):
        system = config.build_system(eps)
        best = bell.extremal_violation(config.schedule, system, config.taus, config.effective_mode)
        state = _initial_state(config, system)
        if state is not None:
            best = bell.evaluate(config.schedule, system, best.tau, config.effective_mode, state)
        return _row(config, best)

    return _map(one, config.epsilon_list, workers)


def run_lifetimes(config, workers=1):
    grid = config.taus if config.tau_steps >= 2 else None

    def one(eps):
        return LifetimeRow(
            eps,
            bell.violation_lifetime(
                config.schedule,
                config.build_system(eps),
                grid=grid,
                mode=config.effective_mode,
                margin=config.margin,
            ),
        )

    return _map(one, config.epsilon_list, workers)


def run_ion_compare(config):
    grid = config.taus if config.tau_steps >= 2 else None
    return ionsim.compare_lifetimes(
        config.epsilon_list,
        gamma_s=config.gamma_s,
        omega=config.omega,
        schedule=config.schedule,
        grid=grid,
        margin=config.margin,
        trotter=config.trotter,
    )


def fmt_float(x):
    """Shortest decimal string that round-trips to the same double."""
    return repr(float(x))


def _csv_line(row):
    trace = "" if row.trace_value is None else fmt_float(row.trace_value)
    return ",".join(
        [
            fmt_float(row.epsilon),
            fmt_float(row.tau_ns),
            fmt_float(row.lambda_min),
            fmt_float(row.lambda_max),
            trace,
            fmt_float(row.bound),
            "true" if row.violated else "false",
        ]
    )


def format_csv(rows):
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    if isinstance(rows[0], ScanRow):
        lines = [CSV_HEADER] + [_csv_line(r) for r in rows]
    elif isinstance(rows[0], LifetimeRow):
        lines = [LIFETIME_HEADER] + [
            f"{fmt_float(r.epsilon)},{fmt_float(r.lifetime_ns)},{fmt_float(r.lifetime_ns / 10)}"
            for r in rows
        ]
    else:
        lines = [ION_HEADER] + [
            f"{fmt_float(r.epsilon)},{fmt_float(r.lifetime_pure_decay)},"
            f"{fmt_float(r.lifetime_with_dephasing)}"
            for r in rows
        ]
    return "\n".join(lines) + "\n"


def parse_csv(text):
    """Read rows written by :func:`format_csv` for scan output."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("not a scan CSV")
    rows = []
    for line in lines[1:]:
        e, tau, lmin, lmax, trace, bound, violated = line.split(",")
        rows.append(
            ScanRow(
                float(e),
                float(tau),
                float(lmin),
                float(lmax),
                float(trace) if trace else None,
                float(bound),
                violated == "true",
            )
        )
    return rows


def _series(rows):
    """Named ``(x, y)`` series in output order."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    out = []
    if isinstance(rows[0], ScanRow):
        epsilons = list(dict.fromkeys(r.epsilon for r in rows))
        fields = ["lambda_min", "lambda_max"]
        if any(r.trace_value is not None for r in rows):
            fields.append("trace_value")
        for name in fields:
            for eps in epsilons:
                pts = [
                    (r.tau_ns, getattr(r, name))
                    for r in rows
                    if r.epsilon == eps and getattr(r, name) is not None
                ]
                out.append((f"{name} epsilon={fmt_float(eps)}", "tau_ns", pts))
    elif isinstance(rows[0], LifetimeRow):
        out.append(
            ("lifetime_10ns", "epsilon", [(r.epsilon, r.lifetime_ns / 10) for r in rows])
        )
    else:
        out.append(
            (
                "lifetime_pure_decay_10ns",
                "epsilon",
                [(r.epsilon, r.lifetime_pure_decay / 10) for r in rows],
            )
        )
        out.append(
            (
                "lifetime_with_dephasing_10ns",
                "epsilon",
                [(r.epsilon, r.lifetime_with_dephasing / 10) for r in rows],
            )
        )
    return out


def format_plotdata(rows):
    """gnuplot data: one two-column block per series, blocks separated by two
    blank lines so that each is addressable with ``index``."""
    blocks = []
    for name, xlabel, pts in _series(rows):
        lines = [f"# {name}", f"# {xlabel} value"]
        lines += [f"{fmt_float(x)} {fmt_float(y)}" for x, y in pts]
        blocks.append("\n".join(lines))
    return "\n\n\n".join(blocks) + "\n"


def format_svg(rows, title=None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = _series(rows)
    with matplotlib.rc_context({"svg.hashsalt": "decayop", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        for name, _, pts in series:
            if pts:
                xs, ys = zip(*pts)
                ax.plot(xs, ys, label=name)
        first = list(rows)[0]
        if isinstance(first, ScanRow):
            ax.axhline(first.bound, color="red", lw=0.8, ls="--", label="classical bound")
            ax.set_xlabel("tau [ns]")
        else:
            ax.set_xlabel("epsilon")
            ax.set_ylabel("lifetime [10 ns]")
        if title:
            ax.set_title(title)
        ax.legend(fontsize="small")
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def emit(rows, path="-", fmt="csv"):
    text = {"csv": format_csv, "plotdata": format_plotdata, "svg": format_svg}[fmt](rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    return text


def emit_csv(rows, path):
    return emit(rows, path, "csv")


def emit_plotdata(rows, path):
    return emit(rows, path, "plotdata")


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI configuration file")
    common.add_argument("--system", choices=SYSTEMS)
    common.add_argument("--gamma-s", type=float)
    common.add_argument("--gamma-l", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--epsilons", help="comma-separated epsilon list")
    common.add_argument("--epsilon-start", type=float)
    common.add_argument("--epsilon-stop", type=float)
    common.add_argument("--epsilon-steps", type=int)
    common.add_argument("--mode", choices=("analytic", "lindblad"))
    common.add_argument("--witness", choices=("chsh", "scg"))
    common.add_argument("--schedule")
    common.add_argument("--tau-start", type=float)
    common.add_argument("--tau-stop", type=float)
    common.add_argument("--tau-steps", type=int)
    common.add_argument("--margin", type=float)
    common.add_argument("--trace", action="store_true", default=None)
    common.add_argument("--trotter-dt", type=float)
    common.add_argument("--trotter-order", type=int)
    common.add_argument("--output", help="output path, '-' for stdout")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="decayop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("effop", parents=[common], help="print one effective operator")
    p.add_argument("--alpha", type=float, default=kaon.ANTIKAON.alpha)
    p.add_argument("--phi", type=float, default=kaon.ANTIKAON.phi)
    p.add_argument("--time", type=float, default=0.0)
    p = sub.add_parser("witness", parents=[common], help="witness extremes at one tau")
    p.add_argument("--tau", type=float, default=0.0)
    sub.add_parser("scan-tau", parents=[common], help="scan tau for each epsilon")
    sub.add_parser("scan-epsilon", parents=[common], help="strongest violation per epsilon")
    sub.add_parser("lifetime", parents=[common], help="violation lifetime per epsilon")
    sub.add_parser("ion-compare", parents=[common], help="ion decay vs dephasing lifetimes")
    return parser


_OVERRIDES = {
    "system": "system.kind",
    "gamma_s": "system.gamma_s",
    "gamma_l": "system.gamma_l",
    "omega": "system.omega",
    "epsilon": "system.epsilon",
    "epsilons": "scan.epsilons",
    "epsilon_start": "scan.epsilon_start",
    "epsilon_stop": "scan.epsilon_stop",
    "epsilon_steps": "scan.epsilon_steps",
    "mode": "witness.mode",
    "witness": "witness.kind",
    "schedule": "witness.schedule",
    "trace": "witness.trace",
    "tau_start": "scan.tau_start",
    "tau_stop": "scan.tau_stop",
    "tau_steps": "scan.tau_steps",
    "margin": "scan.margin",
    "trotter_dt": "trotter.dt",
    "trotter_order": "trotter.order",
    "output": "output.path",
    "format": "output.format",
}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        text = ""
        if args.config:
            try:
                with open(args.config) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError("--config", str(exc)) from None
        overrides = {key: getattr(args, attr) for attr, key in _OVERRIDES.items()}
        config = parse_config(text, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    for note in config.notes:
        print(f"note: {note}", file=sys.stderr)

    try:
        if args.command == "effop":
            setting = MeasurementSetting(
                kaon.QuasiSpin(args.alpha, args.phi), args.time, config.effective_mode
            )
            op = effective_operator(config.build_system(), setting)
            with np.printoptions(precision=12, suppress=True):
                print(op.matrix)
            return 0
        if args.command == "witness":
            system = config.build_system()
            result = bell.evaluate(
                config.schedule,
                system,
                args.tau,
                config.effective_mode,
                _initial_state(config, system),
            )
            rows = [_row(config, result)]
        elif args.command == "scan-tau":
            rows = run(config, args.workers)
        elif args.command == "scan-epsilon":
            rows = run_epsilon_scan(config, args.workers)
        elif args.command == "lifetime":
            rows = run_lifetimes(config, args.workers)
        else:
            if config.system == "kaon":
                config = replace(config, system="yb172")
            rows = run_ion_compare(config)
        emit(rows, config.output, config.format)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
