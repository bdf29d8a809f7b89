"""Command-line front end.

    thermal-forces energy --separation 1um --temperature 300 --beta 90deg
    thermal-forces sweep --var temperature --start 1 --stop 600 --steps 50 --scale log

Parameters are resolved as built-in defaults < scenario file < flags. Every
record echoes its inputs; floats are written with 17 significant digits in
both CSV and JSON so the two formats carry identical values.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import casimir, fluxon
from . import constants as const
from .numerics import QuadratureSpec

COMMANDS = ("energy", "pressure", "anisotropy", "fluxon-force", "feasibility", "sweep")
SWEEP_VARIABLES = {"separation": "separation", "temperature": "temperature", "beta": "beta",
                   "field": "field", "B-field": "field"}

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_UNCONVERGED = 0, 2, 3, 4


class ParameterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# unit-aware value parsers

_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def _with_suffix(token, suffixes, what):
    m = re.fullmatch(rf"\s*({_NUMBER})\s*([^\s\d.+-][^\s]*)?\s*", str(token))
    if not m:
        raise ParameterError(f"cannot parse {what} {token!r}")
    value, suffix = float(m.group(1)), m.group(2) or ""
    if suffix not in suffixes:
        raise ParameterError(f"unknown unit {suffix!r} in {what} {token!r}")
    return suffixes[suffix](value)


def _times(factor):
    return lambda v: v * factor


def _over(divisor):
    # dividing by an exact power of ten keeps 5um == 5e-6 bit for bit
    return lambda v: v / divisor


_ONE = _times(1.0)


def parse_length(token):
    return _with_suffix(token, {"": _ONE, "m": _ONE, "mm": _over(1e3), "um": _over(1e6),
                                "µm": _over(1e6), "μm": _over(1e6), "nm": _over(1e9)}, "length")


def parse_temperature(token):
    return _with_suffix(token, {"": _ONE, "K": _ONE}, "temperature")


def parse_angle(token):
    return _with_suffix(token, {"": _ONE, "rad": _ONE, "deg": _times(math.pi / 180.0)}, "angle")


def parse_field(token):
    return _with_suffix(token, {"": _ONE, "T": _ONE}, "magnetic field")


def parse_float(token):
    return _with_suffix(token, {"": _ONE}, "number")


def parse_positive(token):
    v = parse_float(token)
    if not v > 0:
        raise ParameterError(f"value must be positive, got {token!r}")
    return v


def parse_n_max(token):
    if str(token).strip() == "auto":
        return "auto"
    try:
        n = int(str(token).strip())
    except ValueError:
        raise ParameterError(f"n-max must be 'auto' or an integer, got {token!r}") from None
    if n < 0:
        raise ParameterError(f"n-max must be non-negative, got {token!r}")
    return n


def parse_int_at_least(lo):
    def parse(token):
        try:
            n = int(str(token).strip())
        except ValueError:
            raise ParameterError(f"expected an integer, got {token!r}") from None
        if n < lo:
            raise ParameterError(f"expected an integer >= {lo}, got {token!r}")
        return n
    return parse


def parse_choice(*choices):
    def parse(token):
        t = str(token).strip()
        if t not in choices:
            raise ParameterError(f"expected one of {', '.join(choices)}, got {token!r}")
        return t
    return parse


def parse_str(token):
    return str(token).strip()


# key -> (parser, default); keys double as scenario-file keys
PARAMETERS = {
    "separation": (parse_length, 1e-6),
    "temperature": (parse_temperature, 300.0),
    "beta": (parse_angle, 0.0),
    "mode": (parse_choice(casimir.UNIAXIAL, casimir.ISOTROPIC, "isotropic"), casimir.UNIAXIAL),
    "rel_tol": (parse_positive, 1e-9),
    "term_rel_tol": (parse_positive, 1e-10),
    "n_max": (parse_n_max, "auto"),
    "format": (parse_choice("csv", "json"), "csv"),
    "output": (parse_str, None),
    "jobs": (parse_int_at_least(1), 1),
    "terms": (parse_choice("true", "false"), "false"),
    "n2": (parse_positive, 1e17),
    "mass": (parse_positive, const.electron_mass),
    "cutoff": (parse_length, 1e-9),
    "system_radius": (parse_length, 1e-3),
    "xi_pair": (parse_float, 1.0),
    "fermi_velocity": (parse_positive, 1.37e6),
    "planck": (parse_choice("h", "hbar"), "hbar"),
    "material": (parse_str, "Nb"),
    "materials": (parse_str, None),
    "field": (parse_field, 0.1),
    "var": (parse_choice(*SWEEP_VARIABLES), None),
    "start": (parse_str, None),
    "stop": (parse_str, None),
    "steps": (parse_int_at_least(2), None),
    "scale": (parse_choice("linear", "log"), "linear"),
    "quantity": (parse_choice(*COMMANDS[:-1]), "energy"),
}


def load_scenario(path) -> dict:
    """Read ``key = value`` lines; '#' starts a comment. Values stay unparsed."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in PARAMETERS:
                raise ParameterError(f"{path}:{lineno}: unknown key {key!r}")
            if not value:
                raise ParameterError(f"{path}:{lineno}: empty value for {key!r}")
            out[key] = value
    return out


def resolve(flags: dict, scenario: dict = None) -> dict:
    """Merge defaults, scenario values and flags, parsing every given value."""
    params = {k: default for k, (_, default) in PARAMETERS.items()}
    for source, label in ((scenario or {}, "scenario"), (flags, "flag")):
        for key, raw in source.items():
            if raw is None:
                continue
            parser = PARAMETERS[key][0]
            try:
                params[key] = parser(raw)
            except ParameterError as exc:
                name = "--" + key.replace("_", "-") if label == "flag" else key
                raise ParameterError(f"invalid {name}: {exc}") from None
    if params["mode"] == "isotropic":
        params["mode"] = casimir.ISOTROPIC
    return params


# ---------------------------------------------------------------------------
# record construction

def _control(p):
    return casimir.SumControl(p["n_max"], p["term_rel_tol"], QuadratureSpec(rel_tol=p["rel_tol"]))


def _energy_record(p):
    a, T, beta = p["separation"], p["temperature"], p["beta"]
    if p["mode"] == casimir.ISOTROPIC:
        if T != 0:
            raise ValueError("the isotropic reference is a zero-temperature closed form; use --temperature 0")
        value = casimir.isotropic_reference_energy(a)
        res = casimir.EnergyResult(value, [(0, value)], 0.0, 0.0, True)
    else:
        res = casimir.free_energy(casimir.PlateConfig(a, beta), casimir.ThermalParams(T), _control(p))
    rec = {"a_m": a, "T_K": T, "beta_rad": beta, "value_J_per_m2": res.value,
           "error_estimate": res.error_estimate, "truncation_bound": res.truncation_bound,
           "n_terms": res.n_terms, "converged": res.converged}
    if p["terms"] == "true":
        rec["terms"] = [[n, v] for n, v in res.terms]
    return rec


def _pressure_record(p):
    a, T, beta = p["separation"], p["temperature"], p["beta"]
    if p["mode"] == casimir.ISOTROPIC:
        if T != 0:
            raise ValueError("the isotropic reference is a zero-temperature closed form; use --temperature 0")
        value, err, ok = casimir.isotropic_reference_pressure(a), 0.0, True
    else:
        value, err, ok = casimir.casimir_pressure(casimir.PlateConfig(a, beta),
                                                  casimir.ThermalParams(T), _control(p))
    return {"a_m": a, "T_K": T, "beta_rad": beta, "value_N_per_m2": value,
            "error_estimate": err, "converged": ok}


def _anisotropy_record(p):
    a, T = p["separation"], p["temperature"]
    s = casimir.anisotropy_signal(a, T, _control(p))
    return {"a_m": a, "T_K": T, "xi": const.xi_parameter(a, T).value,
            "delta_F_J_per_m2": s.delta, "relative": s.relative,
            "F_parallel_J_per_m2": s.parallel.value, "F_perpendicular_J_per_m2": s.perpendicular.value,
            "error_estimate": s.parallel.error_estimate + s.perpendicular.error_estimate,
            "truncation_bound": s.parallel.truncation_bound + s.perpendicular.truncation_bound,
            "converged": s.converged}


def _fluxon_record(p):
    a, T = p["separation"], p["temperature"]
    sys_ = fluxon.FluxonSystem(alphas=(0.5, 0.5), positions=((0.0, 0.0), (a, 0.0)), n2=p["n2"],
                               mass=p["mass"], system_radius=p["system_radius"],
                               cutoff=p["cutoff"], xi_pair=p["xi_pair"])
    force = fluxon.ab_force(a, sys_)
    rec = {"a_m": a, "T_K": T, "n2_per_m2": p["n2"], "mass_kg": p["mass"], "cutoff_m": p["cutoff"],
           "system_radius_m": p["system_radius"], "xi_pair": p["xi_pair"],
           "fermi_velocity_m_per_s": p["fermi_velocity"], "planck": p["planck"],
           "pair_energy_J": fluxon.pair_interaction_energy(a, sys_), "force_N": force}
    if T > 0:
        dec = fluxon.DecoherenceParams(T, p["fermi_velocity"], p["planck"])
        rec["l_dec_m"] = fluxon.decoherence_length(dec)
        rec["screened_force_N"] = fluxon.screened_ab_force(a, sys_, dec)
    else:
        rec["l_dec_m"] = math.inf
        rec["screened_force_N"] = force
    return rec


def _feasibility_record(p):
    materials = fluxon.load_materials(p["materials"])
    if p["material"] not in materials:
        raise ValueError(f"unknown material {p['material']!r}; known: {', '.join(sorted(materials))}")
    r = fluxon.feasibility_report(materials[p["material"]], p["temperature"], p["field"], p["planck"])
    return {"material": r.material, "T_K": r.temperature, "B_T": r.field, "planck": p["planck"],
            "l_dec_m": r.decoherence_length, "lambda_L_m": r.london_depth,
            "spacing_m": r.lattice_spacing, "spacing_within_screening": r.spacing_within_screening,
            "coherence_exceeds_london": r.coherence_exceeds_london,
            "strongly_suppressed": r.strongly_suppressed}


RECORD_BUILDERS = {
    "energy": _energy_record,
    "pressure": _pressure_record,
    "anisotropy": _anisotropy_record,
    "fluxon-force": _fluxon_record,
    "feasibility": _feasibility_record,
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES.values():
            raise ValueError(f"cannot sweep {self.variable!r}")
        if not self.start < self.stop:
            raise ValueError(f"sweep needs start < stop, got {self.start!r} >= {self.stop!r}")
        if self.steps < 2:
            raise ValueError("sweep needs at least 2 steps")
        if self.scale == "log" and not self.start > 0:
            raise ValueError("log sweep needs a positive start")

    def grid(self):
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


_SWEEP_PARSERS = {"separation": parse_length, "temperature": parse_temperature,
                  "beta": parse_angle, "field": parse_field}


def sweep_spec(p) -> SweepSpec:
    for key in ("var", "start", "stop", "steps"):
        if p[key] is None:
            raise ParameterError(f"sweep requires --{key}")
    var = SWEEP_VARIABLES[p["var"]]
    parse = _SWEEP_PARSERS[var]
    return SweepSpec(var, parse(p["start"]), parse(p["stop"]), p["steps"], p["scale"])


def _sweep_point(args):
    quantity, params = args
    return RECORD_BUILDERS[quantity](params)


def run_sweep(p):
    spec = sweep_spec(p)
    tasks = []
    for value in spec.grid():
        q = dict(p)
        q[spec.variable] = float(value)
        tasks.append((p["quantity"], q))
    if p["jobs"] == 1:
        return [_sweep_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=p["jobs"]) as pool:
        # map yields results in submission order
        return list(pool.map(_sweep_point, tasks))


# ---------------------------------------------------------------------------
# output

def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    if isinstance(v, list):
        return ";".join(":".join(format_value(x) for x in item) for item in v)
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, (float, np.floating)) and not math.isfinite(v):
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, list):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return format_value(v)


def render(records, fmt) -> str:
    if fmt == "json":
        rows = ["  {" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in r.items()) + "}"
                for r in records]
        return "[\n" + ",\n".join(rows) + "\n]\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(records[0].keys()) if records else []
    writer.writerow(header)
    for r in records:
        writer.writerow([format_value(r.get(k, "")) for k in header])
    return buf.getvalue()


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    for key, (_, default) in PARAMETERS.items():
        common.add_argument("--" + key.replace("_", "-"), dest=key, default=None, metavar="VALUE")
    common.add_argument("--scenario", default=None, metavar="PATH")
    parser = argparse.ArgumentParser(prog="thermal-forces", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    flags = {k: v for k, v in vars(ns).items() if k in PARAMETERS}
    try:
        scenario = load_scenario(ns.scenario) if ns.scenario else {}
        p = resolve(flags, scenario)
        if ns.command == "sweep":
            records = run_sweep(p)
        else:
            records = [RECORD_BUILDERS[ns.command](p)]
    except (ParameterError, OSError) as exc:
        print(f"thermal-forces: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"thermal-forces: domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    text = render(records, p["format"])
    if p["output"]:
        with open(p["output"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not all(r.get("converged", True) for r in records):
        print("thermal-forces: error: at least one result did not converge", file=stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
