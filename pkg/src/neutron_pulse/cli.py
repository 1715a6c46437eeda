"""
Command-line front end.

Every command takes typed ``key=value`` parameters, given either as
``--key value`` flags or as lines of a ``--config`` file (flags win).  Output
goes to ``--out`` or standard output.  Exit status: 0 success, 1 invalid
configuration or input, 2 numerical-quality failure.

    neutron-pulse figure1 --b_max 6 --step 0.01 --out fig1.csv
    neutron-pulse oracle --bx 0.3 --profile gaussian --widths 1,0.1
    neutron-pulse laser --config jkarenp.cfg
"""

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import laser, oracle, spatial, transfer
from .errors import BadRange, ConfigError, NumericalQualityError, ValidationError
from .spinor import SPIN_DOWN, SPIN_UP, apply, bloch_vector, max_entry_distance, norm_squared, unitarity_defect

FIGURE1_COLUMNS = ("b", "S_y", "S_z")
SWEEP_COLUMNS = (
    "b",
    "spin_flip_probability",
    "S_x",
    "S_y",
    "S_z",
    "larmor_S_y",
    "rotation_angle",
    "exponential_angle_gap",
    "norm_ratio",
)
ORACLE_COLUMNS = ("width", "unitarity_defect", "gap_to_exponential", "gap_to_delta")
SPECTRUM_COLUMNS = ("mode", "momentum", "weight")


def fmt(value: float) -> str:
    # "+ 0.0" folds negative zero into zero
    return f"{float(value) + 0.0:.8e}"


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"{text!r} not one of {', '.join(options)}")
        return text

    return parse


_COUPLING = {"bx": (float, "0"), "by": (float, "0"), "bz": (float, "0")}

# command -> {key: (parser, default text)}
SCHEMAS: dict[str, dict[str, tuple[Callable, str]]] = {
    "transfer": {**_COUPLING, "a": (float, "0.5"), "flip": (_parse_bool, "false"), "max_defect": (float, "1e-12")},
    "sweep": {"b_min": (float, "0"), "b_max": (float, "6"), "step": (float, "0.01"), "a": (float, "0.5")},
    "oracle": {
        **_COUPLING,
        "bx": (float, "0.3"),
        "profile": (_choice("box", "gaussian"), "box"),
        "widths": (_parse_floats, "1,0.1,0.01"),
        "steps": (int, "4096"),
        "max_defect": (float, "1e-9"),
    },
    "spatial": {
        **_COUPLING,
        "bx": (float, "0.3"),
        "length": (float, repr(2 * math.pi)),
        "points": (int, "256"),
        "momentum_index": (int, "2"),
        "polarization": (_choice("up", "down", "x", "y"), "up"),
        "field": (_choice("homogeneous", "step"), "homogeneous"),
        "dt_before": (float, "0"),
        "dt_after": (float, "0"),
        "output": (_choice("grid", "spectrum"), "grid"),
        "max_norm_drift": (float, "1e-10"),
    },
    "laser": {
        "peak_intensity_w_m2": (float, repr(laser.J_KAREN_P.peak_intensity)),
        "total_energy_j": (float, repr(laser.J_KAREN_P.total_energy)),
        "duration_s": (float, repr(laser.J_KAREN_P.duration)),
        "cross_section_m2": (float, repr(laser.J_KAREN_P.cross_section)),
        "reference_coupling": (float, repr(laser.REFERENCE_COUPLING)),
        "format": (_choice("text", "csv"), "text"),
    },
    "figure1": {"b_min": (float, "0"), "b_max": (float, "6"), "step": (float, "0.01")},
}


@dataclass
class RunConfig:
    command: str
    parameters: dict[str, str] = field(default_factory=dict)
    output_path: Optional[str] = None

    def typed(self) -> dict:
        """Merge defaults with ``parameters`` and parse every value."""
        try:
            schema = SCHEMAS[self.command]
        except KeyError:
            raise ConfigError(f"unknown command {self.command!r}") from None
        unknown = sorted(set(self.parameters) - set(schema))
        if unknown:
            raise ConfigError(f"unknown key(s) for {self.command}: {', '.join(unknown)}")
        out = {}
        for key, (parse, default) in schema.items():
            text = self.parameters.get(key, default)
            try:
                out[key] = parse(text)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {exc}") from None
        return out


def read_config_file(path: str) -> dict[str, str]:
    params = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            params[key.strip()] = value.strip()
    return params


def _sweep_points(b_min: float, b_max: float, step: float) -> list[float]:
    if not (0 <= b_min < b_max) or not step > 0:
        raise BadRange(f"need 0 <= b_min < b_max and step > 0, got ({b_min}, {b_max}, {step})")
    span = b_max - b_min
    n = round(span / step)
    if n < 1 or abs(n * step - span) > 1e-9 * max(span, 1.0):
        raise BadRange(f"step {step} does not divide [{b_min}, {b_max}]")
    # dividing last keeps grid points such as 0.3 correctly rounded
    return [b_min + span * i / n for i in range(n + 1)]


def _write_rows(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def run_figure1(b_min: float = 0.0, b_max: float = 6.0, step: float = 0.01) -> str:
    """CSV of post-pulse <S_y>, <S_z> (units of hbar/2) against coupling."""
    rows = []
    for b in _sweep_points(b_min, b_max, step):
        e = transfer.post_pulse_expectations((b, 0.0, 0.0))
        rows.append((b, e.y, e.z))
    buf = io.StringIO()
    _write_rows(buf, FIGURE1_COLUMNS, rows)
    return buf.getvalue()


def _cmd_figure1(p) -> str:
    return run_figure1(p["b_min"], p["b_max"], p["step"])


def _cmd_sweep(p) -> str:
    rows = []
    for b in _sweep_points(p["b_min"], p["b_max"], p["step"]):
        bv = (b, 0.0, 0.0)
        e = transfer.post_pulse_expectations(bv)
        rows.append(
            (
                b,
                transfer.spin_flip_probability(bv),
                e.x,
                e.y,
                e.z,
                transfer.larmor_approx(bv),
                transfer.rotation_angle(bv),
                transfer.exponential_angle_gap(b),
                transfer.norm_ratio(p["a"], b),
            )
        )
    buf = io.StringIO()
    _write_rows(buf, SWEEP_COLUMNS, rows)
    return buf.getvalue()


def _cmd_transfer(p) -> str:
    b = (p["bx"], p["by"], p["bz"])
    a = p["a"]
    if p["flip"]:
        flip = transfer.spin_flip_probability(b)
    u = transfer.general_a_transfer(a, b)
    out = apply(u, SPIN_UP)
    bmag = float(np.linalg.norm(b))
    lines = {"bx": b[0], "by": b[1], "bz": b[2], "a": a}
    for i in range(2):
        for j in range(2):
            lines[f"U{i}{j}_re"] = u[i, j].real
            lines[f"U{i}{j}_im"] = u[i, j].imag
    lines["unitarity_defect"] = unitarity_defect(u)
    lines["norm_ratio"] = transfer.norm_ratio(a, bmag)
    lines["final_up_re"], lines["final_up_im"] = out[0].real, out[0].imag
    lines["final_down_re"], lines["final_down_im"] = out[1].real, out[1].imag
    lines["final_norm_squared"] = norm_squared(out)
    if a == 0.5:
        if lines["unitarity_defect"] > p["max_defect"]:
            raise NumericalQualityError(
                f"unitarity defect {lines['unitarity_defect']:.3e} exceeds {p['max_defect']:.3e}"
            )
        lines["rotation_angle"] = transfer.rotation_angle(b)
        bloch = bloch_vector(out)
        lines["bloch_x"], lines["bloch_y"], lines["bloch_z"] = bloch
    if p["flip"]:
        lines["spin_flip_probability"] = flip
    return "".join(f"{k}={fmt(v)}\n" for k, v in lines.items())


def _cmd_oracle(p) -> str:
    b = (p["bx"], p["by"], p["bz"])
    widths = p["widths"]
    if not widths:
        raise ConfigError("widths must list at least one value")
    rows = []
    worst = 0.0
    exact = oracle.exponential_propagator(b)
    delta = transfer.delta_transfer(b)
    for w in widths:
        res = oracle.integrate_spin_ode(oracle.PulseProfile(p["profile"], w), b, p["steps"])
        worst = max(worst, res.unitarity_defect)
        rows.append(
            (w, res.unitarity_defect, max_entry_distance(res.propagator, exact), max_entry_distance(res.propagator, delta))
        )
    if worst > p["max_defect"]:
        raise NumericalQualityError(f"unitarity defect {worst:.3e} exceeds {p['max_defect']:.3e}")
    buf = io.StringIO()
    _write_rows(buf, ORACLE_COLUMNS, rows)
    return buf.getvalue()


_POLARIZATIONS = {
    "up": SPIN_UP,
    "down": SPIN_DOWN,
    "x": np.array([1, 1], dtype=complex) / math.sqrt(2),
    "y": np.array([1, 1j], dtype=complex) / math.sqrt(2),
}


def _cmd_spatial(p) -> str:
    grid = spatial.empty_grid(p["length"], p["points"])
    w = spatial.make_plane_wave(grid, p["momentum_index"], _POLARIZATIONS[p["polarization"]])
    norm0 = w.norm()
    b = transfer.as_coupling((p["bx"], p["by"], p["bz"]))
    field_values = spatial.homogeneous_field(b, w.points)
    if p["field"] == "step":
        field_values[w.x() >= 0.5 * w.length] = 0.0
    w = spatial.free_propagate(w, p["dt_before"])
    w = spatial.apply_pulse_pointwise(w, field_values)
    w = spatial.free_propagate(w, p["dt_after"])
    drift = abs(w.norm() - norm0) / norm0
    if drift > p["max_norm_drift"]:
        raise NumericalQualityError(f"relative norm drift {drift:.3e} exceeds {p['max_norm_drift']:.3e}")
    buf = io.StringIO()
    if p["output"] == "grid":
        spatial.write_grid_csv(w, buf)
    else:
        weights = spatial.momentum_spectrum(w)
        modes = np.fft.fftfreq(w.points, d=1.0 / w.points).astype(int)
        order = np.argsort(modes, kind="stable")
        momenta = w.momenta()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SPECTRUM_COLUMNS)
        for k in order:
            writer.writerow([str(modes[k]), fmt(momenta[k]), fmt(weights[k])])
    return buf.getvalue()


def _cmd_laser(p) -> str:
    spec = laser.LaserPulseSpec(
        peak_intensity=p["peak_intensity_w_m2"],
        total_energy=p["total_energy_j"],
        duration=p["duration_s"],
        cross_section=p["cross_section_m2"],
    )
    report = laser.scenario_report(spec, reference_coupling=p["reference_coupling"])
    return report.to_text() if p["format"] == "text" else report.to_csv()


COMMANDS = {
    "transfer": _cmd_transfer,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "spatial": _cmd_spatial,
    "laser": _cmd_laser,
    "figure1": _cmd_figure1,
}


def run_scenario(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one command; returns the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        params = config.typed()
        text = COMMANDS[config.command](params)
    except NumericalQualityError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (ValidationError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if config.output_path in (None, "-"):
        stdout.write(text)
    else:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="neutron-pulse", description="Spin response of neutrons to a delta-like magnetic pulse.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, schema in SCHEMAS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--out", default=None, help="output file (default: standard output)")
        sp.add_argument("--config", default=None, help="key=value parameter file")
        for key, (_, default) in schema.items():
            sp.add_argument(f"--{key}", dest=f"param_{key}", default=None, metavar="VALUE", help=f"default {default}")
    return parser


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    params = read_config_file(ns.config) if ns.config else {}
    for key, value in vars(ns).items():
        if key.startswith("param_") and value is not None:
            params[key[len("param_"):]] = value
    return RunConfig(ns.command, params, ns.out)


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run_scenario(config)


if __name__ == "__main__":
    sys.exit(main())
