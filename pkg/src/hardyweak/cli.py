"""Command line front end for the simulator scenarios.

Exit codes: 0 on success, 1 for configuration problems (flags, config
file), 2 when a scenario rejects its inputs at run time.  Output is
deterministic byte for byte so runs can be diffed and frozen.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .pointer import (
    PointerSpec,
    build_pointer_profile,
    pointer_moments,
    weak_limit_sweep,
)
from .scenarios import (
    CONSTRAINT_NAMES,
    DEFAULT_SWAP_CALIBRATION,
    HARDY_OUTCOMES,
    HardyConfig,
    analyzer_post_selection,
    counterfactual_check,
    entangled_target_state,
    run_entanglement_swap,
    run_hardy_gedanken,
    run_photonic_weak,
)
from .weakvalues import arrival_time_operator, weak_value

SCENARIOS = (
    "hardy",
    "counterfactual",
    "swap",
    "photonic-weak",
    "pointer",
    "pointer-sweep",
)
FORMATS = ("table", "json", "csv")
SWAP_MODES = ("coherent", "decohered")

DEFAULT_SWEEP_MULTIPLES = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0)

# Keys a rational annotation is attached to when the value sits within
# 1e-9 of a small fraction; larger denominators stay purely decimal.
RATIONAL_DENOMINATOR_LIMIT = 64
RATIONAL_TOLERANCE = 1e-9


class ConfigError(ValueError):
    """Bad flags or config file contents; maps to exit code 1."""


@dataclass(frozen=True)
class Parameters:
    gamma: float = 0.0
    epsilon: float = 1.0
    sigma: float = 8.0
    phi: float = -math.pi / 4.0
    bs2_plus: bool = True
    bs2_minus: bool = True
    swap_mode: str = "coherent"
    grid_points: int = 4096


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    parameters: Parameters = Parameters()
    sweep: tuple[float, ...] | None = None
    output_format: str = "table"
    output_path: str | None = None


# --------------------------------------------------------------- parsing

CONFIG_KEYS = (
    "scenario", "gamma", "epsilon", "sigma", "phi",
    "bs2_plus", "bs2_minus", "swap_mode", "grid_points",
    "sweep", "format", "out",
)


def _check_number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _check_sweep_values(values: Sequence[Any]) -> tuple[float, ...]:
    if not values:
        raise ConfigError("sweep needs at least one value")
    floats = tuple(_check_number("sweep value", v) for v in values)
    if any(v <= 0 for v in floats):
        raise ConfigError("sweep values must be positive")
    if any(b <= a for a, b in zip(floats, floats[1:])):
        raise ConfigError("sweep values must be strictly ascending")
    return floats


def _check_field(key: str, value: Any) -> Any:
    if key == "scenario":
        if value not in SCENARIOS:
            raise ConfigError(f"unknown scenario {value!r}")
        return value
    if key in ("gamma", "phi"):
        return _check_number(key, value)
    if key == "epsilon":
        number = _check_number(key, value)
        if number < 0:
            raise ConfigError("epsilon must be nonnegative")
        return number
    if key == "sigma":
        number = _check_number(key, value)
        if number <= 0:
            raise ConfigError("sigma must be positive")
        return number
    if key in ("bs2_plus", "bs2_minus"):
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false, got {value!r}")
        return value
    if key == "swap_mode":
        if value not in SWAP_MODES:
            raise ConfigError(f"swap_mode must be one of {SWAP_MODES}")
        return value
    if key == "grid_points":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"grid_points must be an integer, got {value!r}")
        if value < 64:
            raise ConfigError("grid_points must be at least 64")
        return value
    if key == "sweep":
        if isinstance(value, dict):
            if set(value) != {"sigma"}:
                raise ConfigError("only sigma can be swept")
            value = value["sigma"]
        if not isinstance(value, (list, tuple)):
            raise ConfigError("sweep must be a list of values")
        return _check_sweep_values(value)
    if key == "format":
        if value not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        return value
    if key == "out":
        if not isinstance(value, str) or not value:
            raise ConfigError("out must be a nonempty path")
        return value
    raise ConfigError(f"unknown config key {key!r}")


def parse_config(text: str) -> dict[str, Any]:
    """Validate a JSON config document into a flat key/value mapping."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"parse error at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    return {key: _check_field(key, value) for key, value in raw.items()}


def _parse_bool(flag: str, text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"{flag} expects true or false, got {text!r}")


def _parse_sweep_flag(text: str) -> tuple[float, ...]:
    name, sep, tail = text.partition("=")
    if not sep:
        raise ConfigError("sweep must look like sigma=v1,v2,...")
    if name != "sigma":
        raise ConfigError(f"only sigma can be swept, not {name!r}")
    try:
        values = [float(piece) for piece in tail.split(",")]
    except ValueError:
        raise ConfigError(f"sweep values must be numbers, got {tail!r}") from None
    return _check_sweep_values(values)


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; that slot is reserved for
    # run-time domain errors here, so surface them as config errors.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hardyweak", add_help=True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    run = sub.add_parser("run", help="run one scenario and print its report")
    run.add_argument("--scenario", choices=SCENARIOS)
    run.add_argument("--config", help="JSON config file; flags override it")
    run.add_argument("--gamma", type=float, help="arrival delay of an H photon")
    run.add_argument("--epsilon", type=float, help="arrival delay of a V photon")
    run.add_argument("--sigma", type=float, help="pointer width")
    run.add_argument("--phi", type=float, help="analyzer angle, pointer scenarios")
    run.add_argument(
        "--bs2-plus", nargs="?", const="true", metavar="BOOL",
        help="install the + exit beamsplitter (default true)",
    )
    run.add_argument(
        "--bs2-minus", nargs="?", const="true", metavar="BOOL",
        help="install the - exit beamsplitter (default true)",
    )
    run.add_argument("--swap-mode", choices=SWAP_MODES)
    run.add_argument(
        "--sweep", metavar="NAME=V1,V2,...",
        help="pointer widths for pointer-sweep, e.g. sigma=1,2,4",
    )
    run.add_argument("--format", choices=FORMATS)
    run.add_argument("--out", help="write the report to this file instead of stdout")
    run.add_argument("--grid-points", type=int, help="grid resolution per axis")
    return parser


def assemble_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    if ns.command != "run":
        raise ConfigError("expected the run command")
    merged: dict[str, Any] = {}
    if ns.config is not None:
        try:
            text = Path(ns.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        merged.update(parse_config(text))
    flag_values: dict[str, Any] = {
        "scenario": ns.scenario,
        "gamma": ns.gamma,
        "epsilon": ns.epsilon,
        "sigma": ns.sigma,
        "phi": ns.phi,
        "swap_mode": ns.swap_mode,
        "grid_points": ns.grid_points,
        "format": ns.format,
        "out": ns.out,
    }
    if ns.bs2_plus is not None:
        flag_values["bs2_plus"] = _parse_bool("--bs2-plus", ns.bs2_plus)
    if ns.bs2_minus is not None:
        flag_values["bs2_minus"] = _parse_bool("--bs2-minus", ns.bs2_minus)
    if ns.sweep is not None:
        flag_values["sweep"] = _parse_sweep_flag(ns.sweep)
    for key, value in flag_values.items():
        if value is not None:
            merged[key] = _check_field(key, value)
    scenario = merged.get("scenario")
    if scenario is None:
        raise ConfigError("no scenario selected; pass --scenario or a config file")
    if "sweep" in merged and scenario != "pointer-sweep":
        raise ConfigError("sweep only applies to the pointer-sweep scenario")
    output_format = merged.get("format", "table")
    if output_format == "csv" and scenario != "pointer-sweep":
        raise ConfigError("csv output only applies to the pointer-sweep scenario")
    defaults = Parameters()
    parameters = Parameters(
        gamma=merged.get("gamma", defaults.gamma),
        epsilon=merged.get("epsilon", defaults.epsilon),
        sigma=merged.get("sigma", defaults.sigma),
        phi=merged.get("phi", defaults.phi),
        bs2_plus=merged.get("bs2_plus", defaults.bs2_plus),
        bs2_minus=merged.get("bs2_minus", defaults.bs2_minus),
        swap_mode=merged.get("swap_mode", defaults.swap_mode),
        grid_points=merged.get("grid_points", defaults.grid_points),
    )
    return RunConfig(
        scenario=scenario,
        parameters=parameters,
        sweep=merged.get("sweep"),
        output_format=output_format,
        output_path=merged.get("out"),
    )


# -------------------------------------------------------------- payloads


# Quarter-turn trim phases leave cos dust around 1e-16 in otherwise
# exact amplitudes; anything below this is reported as a clean zero.
DUST_THRESHOLD = 1e-12


def _clean_float(x: float) -> float:
    """Report a float with cascade dust removed.

    Splitter cascades build provably rational probabilities out of
    repeated 1/sqrt(2) factors, so they arrive a few ulps off; values
    within 1e-9 of a small fraction are pinned to it.  Grid-route
    numbers sit far from any small fraction and pass through raw.
    """
    value = float(x)
    if abs(value) < DUST_THRESHOLD:
        return 0.0
    approx = Fraction(value).limit_denominator(RATIONAL_DENOMINATOR_LIMIT)
    snapped = float(approx)
    if abs(snapped - value) <= RATIONAL_TOLERANCE:
        return snapped
    return value


def _complex_json(z: complex) -> dict[str, float]:
    return {"re": _clean_float(z.real), "im": _clean_float(z.imag)}


def _rational(value: float) -> str | None:
    approx = Fraction(value).limit_denominator(RATIONAL_DENOMINATOR_LIMIT)
    if abs(float(approx) - value) <= RATIONAL_TOLERANCE:
        return str(approx)
    return None


def _put_with_rational(out: dict[str, Any], key: str, value: float) -> None:
    out[key] = _clean_float(value)
    text = _rational(out[key])
    if text is not None:
        out[f"{key}_rational"] = text


HARDY_SHORT_KEYS = {
    "gamma": "p_gamma",
    "c+c-": "p_cc",
    "c+d-": "p_cd",
    "d+c-": "p_dc",
    "d+d-": "p_dd",
}


def _hardy_payload(p: Parameters) -> dict[str, Any]:
    result = run_hardy_gedanken(HardyConfig(p.bs2_plus, p.bs2_minus))
    probabilities: dict[str, Any] = {}
    for name in HARDY_OUTCOMES:
        _put_with_rational(
            probabilities, HARDY_SHORT_KEYS[name], result.probabilities[name]
        )
    amplitudes = {
        str(label): _complex_json(amp) for label, amp in result.state.items()
    }
    return {
        "scenario": "hardy",
        "bs2_plus": p.bs2_plus,
        "bs2_minus": p.bs2_minus,
        "probabilities": probabilities,
        "amplitudes": amplitudes,
    }


def _assignment_json(assignment) -> dict[str, bool]:
    return {
        "c_plus": assignment.c_plus,
        "c_minus": assignment.c_minus,
        "d_plus": assignment.d_plus,
        "d_minus": assignment.d_minus,
    }


def _counterfactual_payload() -> dict[str, Any]:
    full = counterfactual_check()
    relaxed_names = tuple(
        name for name in CONSTRAINT_NAMES if name != "joint-dark-click"
    )
    relaxed = counterfactual_check(include=relaxed_names)
    return {
        "scenario": "counterfactual",
        "constraints": list(full.constraints),
        "satisfying_count": len(full.satisfying),
        "satisfying_assignments": [
            _assignment_json(a) for a in full.satisfying
        ],
        "without_joint_click": {
            "constraints": list(relaxed.constraints),
            "satisfying_count": len(relaxed.satisfying),
            "satisfying_assignments": [
                _assignment_json(a) for a in relaxed.satisfying
            ],
        },
    }


def _swap_payload(p: Parameters) -> dict[str, Any]:
    result = run_entanglement_swap(p.swap_mode)
    out: dict[str, Any] = {
        "scenario": "swap",
        "mode": result.mode,
        "phase_calibration": [float(x) for x in DEFAULT_SWAP_CALIBRATION],
    }
    _put_with_rational(out, "success_probability", result.success_probability)
    if result.mode == "coherent":
        _put_with_rational(
            out, "fidelity_to_target", result.fidelity_to(entangled_target_state())
        )
    branches = []
    for label, sub in result.branches:
        branch: dict[str, Any] = {"label": label}
        _put_with_rational(branch, "weight", sub.weight)
        branch["amplitudes"] = {
            str(lab): _complex_json(amp) for lab, amp in sub.state.items()
        }
        branches.append(branch)
    out["branches"] = branches
    return out


def _photonic_weak_payload(p: Parameters) -> dict[str, Any]:
    report = run_photonic_weak(p.gamma, p.epsilon)
    out: dict[str, Any] = {
        "scenario": "photonic-weak",
        "gamma": _clean_float(report.gamma),
        "epsilon": _clean_float(report.epsilon),
        "overlap": _complex_json(report.overlap),
    }
    _put_with_rational(out, "success_probability", report.success_probability)
    out["A2_w"] = _complex_json(report.photon2.scalar)
    out["A4_w"] = _complex_json(report.photon4.scalar)
    out["A24_w"] = [_complex_json(z) for z in report.joint.value]
    out["decomposition"] = [
        {
            "label": str(row.label),
            "weight": [_clean_float(w) for w in row.weight],
            "weak_value": _complex_json(row.value),
        }
        for row in report.decomposition
    ]
    out["occupations"] = [
        {
            "photonic": row.photonic,
            "path": row.path,
            "weak_value": _complex_json(row.value),
        }
        for row in report.occupations
    ]
    return out


def _pointer_block(pre, post, measured, p: Parameters) -> dict[str, Any]:
    spec = PointerSpec.default(p.gamma, p.epsilon, p.sigma, p.grid_points)
    profile = build_pointer_profile(pre, post, measured, spec)
    moments = pointer_moments(profile)
    op = arrival_time_operator(pre.structure, measured, p.gamma, p.epsilon)
    prediction = weak_value(op, pre, post).value
    deviation = tuple(
        abs(m - w.real) for m, w in zip(moments.mean, prediction)
    )
    if len(measured) == 1:
        return {
            "mean": _clean_float(moments.mean[0]),
            "variance": _clean_float(moments.variance[0]),
            "success_probability": _clean_float(moments.success_probability),
            "weak_value": _clean_float(prediction[0].real),
            "deviation": _clean_float(deviation[0]),
        }
    return {
        "mean": [_clean_float(m) for m in moments.mean],
        "variance": [_clean_float(v) for v in moments.variance],
        "success_probability": _clean_float(moments.success_probability),
        "weak_value": [_clean_float(w.real) for w in prediction],
        "deviation": [_clean_float(d) for d in deviation],
    }


def _pointer_payload(p: Parameters) -> dict[str, Any]:
    pre = run_entanglement_swap().conditional_state()
    post = analyzer_post_selection(p.phi)
    spec = PointerSpec.default(p.gamma, p.epsilon, p.sigma, p.grid_points)
    return {
        "scenario": "pointer",
        "gamma": _clean_float(p.gamma),
        "epsilon": _clean_float(p.epsilon),
        "sigma": _clean_float(p.sigma),
        "phi": _clean_float(p.phi),
        "grid_points": p.grid_points,
        "weakness_ratio": _clean_float(spec.weakness_ratio),
        "photon2": _pointer_block(pre, post, ("2",), p),
        "photon4": _pointer_block(pre, post, ("4",), p),
        "joint": _pointer_block(pre, post, ("2", "4"), p),
    }


def _sweep_sigmas(config: RunConfig) -> tuple[float, ...]:
    if config.sweep is not None:
        return config.sweep
    epsilon = config.parameters.epsilon
    return tuple(k * epsilon for k in DEFAULT_SWEEP_MULTIPLES)


def _pointer_sweep_payload(config: RunConfig) -> dict[str, Any]:
    p = config.parameters
    pre = run_entanglement_swap().conditional_state()
    post = analyzer_post_selection(p.phi)
    rows = weak_limit_sweep(
        pre, post, ("2", "4"), p.gamma, p.epsilon,
        _sweep_sigmas(config), n_points=p.grid_points,
    )
    return {
        "scenario": "pointer-sweep",
        "gamma": _clean_float(p.gamma),
        "epsilon": _clean_float(p.epsilon),
        "phi": _clean_float(p.phi),
        "grid_points": p.grid_points,
        "measured": ["2", "4"],
        "rows": [
            {
                "sigma": _clean_float(row.sigma),
                "r": _clean_float(row.weakness_ratio),
                "mean": [_clean_float(m) for m in row.mean],
                "deviation": [_clean_float(d) for d in row.deviation],
            }
            for row in rows
        ],
    }


def build_payload(config: RunConfig) -> dict[str, Any]:
    p = config.parameters
    if config.scenario == "hardy":
        body = _hardy_payload(p)
    elif config.scenario == "counterfactual":
        body = _counterfactual_payload()
    elif config.scenario == "swap":
        body = _swap_payload(p)
    elif config.scenario == "photonic-weak":
        body = _photonic_weak_payload(p)
    elif config.scenario == "pointer":
        body = _pointer_payload(p)
    else:
        body = _pointer_sweep_payload(config)
    return {"meta": {"tool": "hardyweak", "version": __version__}, **body}


# ------------------------------------------------------------- rendering


def _fmt_float(x: float) -> str:
    return f"{_clean_float(x):g}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _fmt_complex(z: complex | dict[str, float]) -> str:
    if isinstance(z, dict):
        z = complex(z["re"], z["im"])
    re = _clean_float(z.real)
    im = _clean_float(z.imag)
    return f"{re:g}{im:+g}i"


def _fmt_complex_tuple(values) -> str:
    return "(" + ", ".join(_fmt_complex(z) for z in values) + ")"


def _fmt_prob(payload: dict[str, Any], key: str) -> str:
    text = _fmt_float(payload[key])
    rational = payload.get(f"{key}_rational")
    return f"{text} ({rational})" if rational is not None else text


def _hardy_table(payload: dict[str, Any]) -> list[str]:
    lines = [
        "scenario=hardy",
        f"bs2_plus={_fmt_bool(payload['bs2_plus'])}",
        f"bs2_minus={_fmt_bool(payload['bs2_minus'])}",
    ]
    probabilities = payload["probabilities"]
    for key in ("p_gamma", "p_cc", "p_cd", "p_dc", "p_dd"):
        lines.append(f"{key}={_fmt_prob(probabilities, key)}")
    lines.append("amplitudes:")
    for label, amp in payload["amplitudes"].items():
        lines.append(f"  {label}  {_fmt_complex(amp)}")
    return lines


def _assignment_line(entry: dict[str, bool]) -> str:
    return " ".join(f"{key}={_fmt_bool(value)}" for key, value in entry.items())


def _counterfactual_table(payload: dict[str, Any]) -> list[str]:
    lines = [
        "scenario=counterfactual",
        "constraints=" + ",".join(payload["constraints"]),
        f"satisfying_count={payload['satisfying_count']}",
    ]
    for entry in payload["satisfying_assignments"]:
        lines.append("  " + _assignment_line(entry))
    relaxed = payload["without_joint_click"]
    lines.append("without joint-dark-click:")
    lines.append(f"  satisfying_count={relaxed['satisfying_count']}")
    for entry in relaxed["satisfying_assignments"]:
        lines.append("    " + _assignment_line(entry))
    return lines


def _swap_table(payload: dict[str, Any]) -> list[str]:
    calibration = ", ".join(_fmt_float(x) for x in payload["phase_calibration"])
    lines = [
        "scenario=swap",
        f"mode={payload['mode']}",
        f"phase_calibration=({calibration})",
        f"success_probability={_fmt_prob(payload, 'success_probability')}",
    ]
    if "fidelity_to_target" in payload:
        lines.append(f"fidelity_to_target={_fmt_prob(payload, 'fidelity_to_target')}")
    lines.append("branches:")
    for branch in payload["branches"]:
        lines.append(f"  {branch['label']}  weight={_fmt_prob(branch, 'weight')}")
        for label, amp in branch["amplitudes"].items():
            lines.append(f"    {label}  {_fmt_complex(amp)}")
    return lines


def _photonic_weak_table(payload: dict[str, Any]) -> list[str]:
    lines = [
        "scenario=photonic-weak",
        f"gamma={_fmt_float(payload['gamma'])}",
        f"epsilon={_fmt_float(payload['epsilon'])}",
        f"overlap={_fmt_complex(payload['overlap'])}",
        f"success_probability={_fmt_prob(payload, 'success_probability')}",
        f"A2_w={_fmt_complex(payload['A2_w'])}",
        f"A4_w={_fmt_complex(payload['A4_w'])}",
        f"A24_w={_fmt_complex_tuple(payload['A24_w'])}",
        "decomposition:",
    ]
    for row in payload["decomposition"]:
        weight = ", ".join(_fmt_float(w) for w in row["weight"])
        lines.append(
            f"  {row['label']}  weight=({weight})  "
            f"value={_fmt_complex(row['weak_value'])}"
        )
    lines.append("occupations:")
    for row in payload["occupations"]:
        lines.append(
            f"  {row['photonic']} -> {row['path']}  "
            f"value={_fmt_complex(row['weak_value'])}"
        )
    return lines


def _pointer_block_table(name: str, block: dict[str, Any]) -> list[str]:
    def fmt(field: str) -> str:
        value = block[field]
        if isinstance(value, list):
            return "(" + ", ".join(_fmt_float(v) for v in value) + ")"
        return _fmt_float(value)

    return [
        f"{name}:",
        f"  mean={fmt('mean')}",
        f"  variance={fmt('variance')}",
        f"  success_probability={fmt('success_probability')}",
        f"  weak_value={fmt('weak_value')}",
        f"  deviation={fmt('deviation')}",
    ]


def _pointer_table(payload: dict[str, Any]) -> list[str]:
    lines = [
        "scenario=pointer",
        f"gamma={_fmt_float(payload['gamma'])}",
        f"epsilon={_fmt_float(payload['epsilon'])}",
        f"sigma={_fmt_float(payload['sigma'])}",
        f"phi={_fmt_float(payload['phi'])}",
        f"grid_points={payload['grid_points']}",
        f"weakness_ratio={_fmt_float(payload['weakness_ratio'])}",
    ]
    for name in ("photon2", "photon4", "joint"):
        lines.extend(_pointer_block_table(name, payload[name]))
    return lines


def _pointer_sweep_table(payload: dict[str, Any]) -> list[str]:
    lines = [
        "scenario=pointer-sweep",
        f"gamma={_fmt_float(payload['gamma'])}",
        f"epsilon={_fmt_float(payload['epsilon'])}",
        f"phi={_fmt_float(payload['phi'])}",
        f"grid_points={payload['grid_points']}",
        "rows:",
    ]
    for row in payload["rows"]:
        mean = ", ".join(_fmt_float(m) for m in row["mean"])
        deviation = ", ".join(_fmt_float(d) for d in row["deviation"])
        lines.append(
            f"  sigma={_fmt_float(row['sigma'])}  r={_fmt_float(row['r'])}  "
            f"mean=({mean})  deviation=({deviation})"
        )
    return lines


TABLE_RENDERERS = {
    "hardy": _hardy_table,
    "counterfactual": _counterfactual_table,
    "swap": _swap_table,
    "photonic-weak": _photonic_weak_table,
    "pointer": _pointer_table,
    "pointer-sweep": _pointer_sweep_table,
}

CSV_HEADER = "sigma,r,mean_t2,mean_t4,deviation_t2,deviation_t4"


def _render_csv(payload: dict[str, Any]) -> str:
    lines = [CSV_HEADER]
    for row in payload["rows"]:
        fields = [
            row["sigma"], row["r"],
            row["mean"][0], row["mean"][1],
            row["deviation"][0], row["deviation"][1],
        ]
        lines.append(",".join(repr(float(x)) for x in fields))
    return "\n".join(lines)


def render(payload: dict[str, Any], output_format: str) -> str:
    if output_format == "json":
        return json.dumps(payload, indent=2)
    if output_format == "csv":
        return _render_csv(payload)
    return "\n".join(TABLE_RENDERERS[payload["scenario"]](payload))


# --------------------------------------------------------------- driving


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        config = assemble_config(argv)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1
    try:
        payload = build_payload(config)
    except ValueError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2
    text = render(payload, config.output_format)
    if config.output_path is not None:
        Path(config.output_path).write_text(text + "\n")
    else:
        print(text)
    return 0


def main() -> None:
    sys.exit(run_cli())
