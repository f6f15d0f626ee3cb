"""Experiment configuration: key=value sections with a strict schema.

A run is described by an INI-style file (or the ``parameters`` block of a
previous run's summary.json, which round-trips).  Every scenario declares
exactly which section.key pairs it accepts; unknown keys are rejected with a
diagnostic naming the offender.  All values are stored as strings and
converted on access, so a configuration echoes back byte-for-byte.
"""

from __future__ import annotations

import configparser
import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError


class Scenario(enum.Enum):
    GROUND_STATE = "GROUND_STATE"
    RAMP = "RAMP"
    RAMSEY_SWEEP = "RAMSEY_SWEEP"
    COHERENCE_ANALYSIS = "COHERENCE_ANALYSIS"
    ESTIMATE_U = "ESTIMATE_U"
    FIG1 = "FIG1"
    FIG2 = "FIG2"
    FIG3 = "FIG3"
    FIG4 = "FIG4"
    FIG5 = "FIG5"
    FIG6 = "FIG6"
    FIG7 = "FIG7"
    FIG8 = "FIG8"


@dataclass(frozen=True)
class Field:
    kind: str          # int | float | floats | ints | str | bool | choice
    default: str | None = None   # None means required
    choices: tuple = ()


# sections shared by the primitive scenarios
_RUN = {
    "output_dir": Field("str", "runs"),
}
_MODEL = {
    "n_atoms": Field("int", "20"),
    "kappa": Field("float", "10.0"),
    "convention": Field("choice", "HALF", ("HALF", "FULL")),
}
_INTEGRATOR = {
    "method": Field("choice", "ADAPTIVE_RK", ("ADAPTIVE_RK", "EXPONENTIAL_EIGEN")),
    "step_tolerance": Field("float", "1e-12"),
    "max_step": Field("float", "inf"),
}
_STATE = {
    "type": Field("choice", "noon", ("noon", "mixture", "ground", "ramp")),
    "phi": Field("float", "0.0"),
    "u": Field("float", "0.0"),
    "u_start": Field("float", "1.0"),
    "u_end": Field("float", "-1.0"),
    "ramp_time": Field("float", "4.0"),
}

SCHEMAS: dict = {
    Scenario.GROUND_STATE: {
        "run": _RUN,
        "model": _MODEL,
        "ground": {
            "u_values": Field("floats", "0.0"),
            "tol": Field("float", "1e-12"),
            "max_iterations": Field("int", "2000000"),
        },
    },
    Scenario.RAMP: {
        "run": _RUN,
        "model": _MODEL,
        "integrator": _INTEGRATOR,
        "ramp": {
            "u_start": Field("float", None),
            "u_end": Field("float", None),
            "ramp_time": Field("float", None),
            "samples": Field("int", "200"),
        },
    },
    Scenario.RAMSEY_SWEEP: {
        "run": _RUN,
        "model": _MODEL,
        "integrator": _INTEGRATOR,
        "state": _STATE,
        "ramsey": {
            "theta": Field("str", ""),           # empty = sweep the full grid
            "theta_points": Field("int", "512"),
            "kappa_bs": Field("float", "10.0"),
            "u_bs": Field("float", "0.0"),
            "max_moment": Field("int", "2"),
            "include_distributions": Field("bool", "false"),
        },
    },
    Scenario.COHERENCE_ANALYSIS: {
        "run": _RUN,
        "model": _MODEL,
        "integrator": _INTEGRATOR,
        "state": _STATE,
        "coherence": {
            "theta_points": Field("int", "512"),
            "kappa_bs": Field("float", "10.0"),
            "u_bs": Field("float", "0.0"),
        },
    },
    Scenario.ESTIMATE_U: {
        "run": _RUN,
        "trap": {
            "mass_amu": Field("float", "85.0"),
            "omega": Field("floats", "1000,1000,100"),
            "omega_units": Field("choice", "angular", ("angular", "hertz")),
            "scattering_lengths_a0": Field("floats", "2000,-200"),
        },
    },
}


def _preset_schema(section: str, keys: dict) -> dict:
    """Preset scenarios accept [run], [model], and their own pinned section."""
    return {"run": _RUN, "model": _MODEL, section: keys}


SCHEMAS[Scenario.FIG1] = _preset_schema("fig1", {
    "u_values": Field("floats", "0,-1,-5"),
    "tol": Field("float", "1e-12"),
    "max_iterations": Field("int", "2000000"),
})
SCHEMAS[Scenario.FIG2] = _preset_schema("fig2", {
    "atom_numbers": Field("ints", "1,2"),
    "phi": Field("float", "0.0"),
    "kappa_bs": Field("float", "10.0"),
    "u_bs": Field("float", "0.0"),
    "theta_points": Field("int", "512"),
})
SCHEMAS[Scenario.FIG3] = _preset_schema("fig3", {
    "phi": Field("float", "0.0"),
    "theta": Field("float", repr(math.pi / 2.0)),
    "kappa_bs": Field("float", "10.0"),
    "u_bs_values": Field("floats", "0,-0.1,-0.25"),
})
SCHEMAS[Scenario.FIG4] = _preset_schema("fig4", {
    "atom_numbers": Field("ints", "10,20"),
    "phi": Field("float", "0.0"),
    "kappa_bs": Field("float", "10.0"),
    "u_over_kappa_bs": Field("floats", "0,-0.01,-0.025"),
    "theta_points": Field("int", "512"),
})
SCHEMAS[Scenario.FIG5] = _preset_schema("fig5", {
    "u_start": Field("float", "1.0"),
    "u_end": Field("float", "-3.0"),
    "ramp_times": Field("floats", "0.5,4"),
    "samples": Field("int", "200"),
    "step_tolerance": Field("float", "1e-12"),
})
SCHEMAS[Scenario.FIG6] = _preset_schema("fig6", {
    "u_start": Field("float", "1.0"),
    "u_end": Field("float", "-3.0"),
    "ramp_times": Field("floats", "0.25,0.5,1,2,4"),
    "step_tolerance": Field("float", "1e-12"),
})
_FIG78 = {
    "u_start": Field("float", "1.0"),
    "u_end": Field("float", "-1.0"),
    "ramp_time": Field("float", "4.0"),
    "kappa_bs": Field("float", "10.0"),
    "u_bs_values": Field("floats", "0,-0.1,-0.25"),
    "theta_points": Field("int", "512"),
    "step_tolerance": Field("float", "1e-12"),
}
SCHEMAS[Scenario.FIG7] = _preset_schema("fig7", dict(_FIG78))
SCHEMAS[Scenario.FIG8] = _preset_schema("fig8", dict(_FIG78))

# presets pin the convention that reproduces the reference variances
PRESET_MODEL_DEFAULTS: dict = {
    Scenario.FIG1: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG2: {"n_atoms": "1", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG3: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG4: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG5: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG6: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG7: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
    Scenario.FIG8: {"n_atoms": "20", "kappa": "10.0", "convention": "FULL"},
}


def _convert(raw: str, field: Field, where: str):
    try:
        if field.kind == "int":
            return int(raw)
        if field.kind == "float":
            return float(raw)
        if field.kind == "floats":
            return tuple(float(x) for x in raw.split(",") if x.strip() != "")
        if field.kind == "ints":
            return tuple(int(x) for x in raw.split(",") if x.strip() != "")
        if field.kind == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if field.kind == "choice":
            if raw not in field.choices:
                raise ValueError(f"{raw!r} not in {field.choices}")
            return raw
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {where}: {exc}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated scenario plus its fully expanded key=value sections."""

    scenario: Scenario
    sections: dict   # section -> key -> string value

    @classmethod
    def build(cls, scenario: Scenario, provided: dict | None = None) -> "ExperimentConfig":
        """Merge provided strings over the schema defaults, strictly."""
        schema = SCHEMAS[scenario]
        provided = provided or {}
        for section, keys in provided.items():
            if section not in schema:
                raise ConfigError(
                    f"unknown section [{section}] for scenario {scenario.value} "
                    f"(allowed: {', '.join(sorted(schema))})"
                )
            for key in keys:
                if key not in schema[section]:
                    raise ConfigError(
                        f"unknown key {section}.{key} for scenario {scenario.value} "
                        f"(allowed: {', '.join(sorted(schema[section]))})"
                    )
        sections: dict = {}
        model_defaults = PRESET_MODEL_DEFAULTS.get(scenario, {})
        for section, fields in schema.items():
            sections[section] = {}
            for key, field in fields.items():
                raw = provided.get(section, {}).get(key)
                if raw is None:
                    raw = model_defaults.get(key) if section == "model" else None
                if raw is None:
                    raw = field.default
                if raw is None:
                    raise ConfigError(f"missing required key {section}.{key}")
                raw = str(raw)
                _convert(raw, field, f"{section}.{key}")   # validate eagerly
                sections[section][key] = raw
        return cls(scenario=scenario, sections=sections)

    def get(self, section: str, key: str):
        field = SCHEMAS[self.scenario][section][key]
        return _convert(self.sections[section][key], field, f"{section}.{key}")

    @property
    def output_dir(self) -> Path:
        return Path(self.get("run", "output_dir"))

    def parameters_payload(self) -> dict:
        return {section: dict(keys) for section, keys in self.sections.items()}


def _scenario_from_name(name: str) -> Scenario:
    try:
        return Scenario(name.upper())
    except ValueError:
        raise ConfigError(
            f"unknown scenario {name!r} (expected one of "
            f"{', '.join(s.value for s in Scenario)})"
        ) from None


def read_config_file(path: Path) -> tuple:
    """Read an INI config or a summary.json; returns (scenario|None, sections)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    if path.suffix == ".json":
        payload = json.loads(path.read_text(encoding="utf-8"))
        try:
            scenario = _scenario_from_name(payload["scenario"])
            sections = {s: dict(kv) for s, kv in payload["parameters"].items()}
        except KeyError as exc:
            raise ConfigError(f"summary JSON missing {exc} block") from None
        return scenario, sections
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(path.read_text(encoding="utf-8"), source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    sections = {s: dict(parser.items(s)) for s in parser.sections()}
    scenario = None
    if "run" in sections and "scenario" in sections["run"]:
        scenario = _scenario_from_name(sections["run"].pop("scenario"))
    return scenario, sections


def load_config(scenario: Scenario | None, config_path: Path | None = None,
                overrides: dict | None = None) -> ExperimentConfig:
    """Compose defaults < config file < overrides, then validate strictly."""
    file_scenario, sections = (None, {})
    if config_path is not None:
        file_scenario, sections = read_config_file(config_path)
    scenario = scenario or file_scenario
    if scenario is None:
        raise ConfigError("no scenario given (pass a subcommand or run.scenario)")
    if file_scenario is not None and file_scenario != scenario:
        raise ConfigError(
            f"config file is for scenario {file_scenario.value}, not {scenario.value}"
        )
    for (section, key), value in (overrides or {}).items():
        sections.setdefault(section, {})[key] = str(value)
    return ExperimentConfig.build(scenario, sections)
