"""JSON scenario documents: schema, validation and conversion.

All frequencies are MHz, lengths cm, densities cm^-3, powers W.  Unknown keys
are rejected; every error message names exactly one offending key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .model import (
    DecayRates,
    Drives,
    FieldDrive,
    Populations,
    Role,
    TransitionCoefficients,
    TripodParams,
)
from .oracle import OracleModel
from .scan import AXES, FIT_PARAMETERS, Lock, ScanSpec, Scenario


class ConfigError(ValueError):
    """Invalid scenario document; ``key`` is the dotted path of the culprit."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


def _obj(properties: dict, required=()) -> dict:
    return {
        "type": "object",
        "properties": properties,
        "required": list(required),
        "additionalProperties": False,
    }


_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_PAIR = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_DRIVE = _obj({"rabi": _NONNEG, "detuning": _NUM})

SCHEMA: dict = _obj(
    {
        "description": {"type": "string"},
        "kind": {"enum": ["sweep", "fig4"]},
        "params": _obj({
            "density": _POS,
            "dipole": _POS,
            "wavelength": _POS,
            "cell_length": _POS,
            "decay": _obj({f"gamma{i}": _NONNEG for i in range(4)}),
            "coeffs": _obj({k: _PAIR for k in ("c_probe", "c_coupling", "c_trigger")}),
            "populations": _obj({k: _PAIR for k in ("rho_a", "rho_b", "rho_e")}),
        }),
        "drives": _obj({r.value: _DRIVE for r in Role}),
        "switches": _obj({"probe": {"type": "boolean"}, "trigger": {"type": "boolean"}}),
        "population_source": {"enum": ["configured", "oracle"]},
        "oracle": _obj({
            "laser_linewidth": _NONNEG,
            "ground_mixing": _NONNEG,
            "branching": {
                "oneOf": [
                    {"enum": ["equal", "dipole"]},
                    {"type": "array", "items": _NONNEG, "minItems": 3, "maxItems": 3},
                ]
            },
        }),
        "scan": _obj(
            {
                "axis": {"enum": list(AXES)},
                "start": _NUM,
                "stop": _NUM,
                "points": {"type": "integer", "minimum": 3},
                "locks": {
                    "type": "object",
                    "propertyNames": {"enum": list(AXES)},
                    "additionalProperties": _obj(
                        {"follow": {"enum": list(AXES)}, "offset": _NUM}, required=("follow",)
                    ),
                },
            },
            required=("axis", "start", "stop", "points"),
        ),
        "output": _obj({
            "baseline": {"type": "boolean"},
            "xpm": {"type": "boolean"},
            "group_index": {"type": "boolean"},
            "columns": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "format": {"enum": ["csv", "json"]},
        }),
        "xpm": _obj({
            "target": {"enum": ["probe", "trigger", "both"]},
            "n2": _NUM,
            "intensity": _POS,
        }),
        "fit": _obj(
            {
                "column": {"type": "string"},
                "free": {"type": "array", "items": {"enum": list(FIT_PARAMETERS)}, "minItems": 1},
                "bounds": {
                    "type": "object",
                    "propertyNames": {"enum": list(FIT_PARAMETERS)},
                    "additionalProperties": _PAIR,
                },
                "max_iter": {"type": "integer", "minimum": 1},
            },
            required=("column", "free"),
        ),
        "provenance": {
            "type": "object",
            "additionalProperties": {
                "type": "string",
                "pattern": "^(reported|default|derived)(: .+)?$",
            },
        },
    }
)


def _path(error: jsonschema.ValidationError) -> str:
    return ".".join(str(p) for p in error.absolute_path)


def _describe(error: jsonschema.ValidationError) -> ConfigError:
    base = _path(error)
    join = (lambda k: f"{base}.{k}" if base else k)
    if error.validator == "additionalProperties" and isinstance(error.instance, dict):
        allowed = set(error.schema.get("properties", {}))
        extra = sorted(k for k in error.instance if k not in allowed)
        if extra:
            return ConfigError(join(extra[0]), "unknown key")
    if error.validator == "propertyNames":
        return ConfigError(join(str(error.instance)), "unknown key")
    if error.validator == "required":
        missing = sorted(k for k in error.validator_value if k not in error.instance)
        return ConfigError(join(missing[0]), "required key is missing")
    return ConfigError(base or "<document>", error.message)


def validate(doc: Any) -> None:
    """Raise :class:`ConfigError` for the first schema violation (by key path)."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.validator))
    if errors:
        raise _describe(errors[0])


def load(path) -> dict:
    """Read and validate a scenario document."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"{path} is not valid JSON: {exc}") from None
    validate(doc)
    return doc


PRESETS = (
    "reference", "fig2a", "fig2b",
    "fig3a", "fig3b", "fig3c", "fig3d", "fig3e", "fig3f", "fig3g", "fig3h",
    "fig4", "single_photon", "qpg_projection", "weak_field_oracle",
)


def preset_path(name: str):
    if name not in PRESETS:
        raise ConfigError("preset", f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return resources.files("tripod_xpm").joinpath("presets", f"{name}.json")


def load_preset(name: str) -> dict:
    doc = json.loads(preset_path(name).read_text(encoding="utf-8"))
    validate(doc)
    return doc


# ---------------------------------------------------------------------------
# conversion to library objects


def _build(key: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(key, str(exc)) from None


def params_from(doc: dict) -> TripodParams:
    p = doc.get("params", {})
    defaults = TripodParams()
    decay = _build("params.decay", DecayRates, **p.get("decay", {}))
    coeffs = _build("params.coeffs", TransitionCoefficients,
                    **{k: tuple(v) for k, v in p.get("coeffs", {}).items()})
    pops = _build("params.populations", Populations,
                  **{k: tuple(v) for k, v in p.get("populations", {}).items()})
    return _build(
        "params", TripodParams,
        density=p.get("density", defaults.density),
        dipole=p.get("dipole", defaults.dipole),
        coeffs=coeffs,
        decay=decay,
        populations=pops,
        wavelength=p.get("wavelength", defaults.wavelength),
        cell_length=p.get("cell_length", defaults.cell_length),
    )


def drives_from(doc: dict) -> Drives:
    d = doc.get("drives", {})
    defaults = Drives.make()
    out = []
    for role in (Role.PROBE, Role.COUPLING, Role.TRIGGER):
        block = d.get(role.value, {})
        base = defaults.get(role)
        out.append(_build(f"drives.{role.value}", FieldDrive, role,
                          block.get("rabi", base.rabi), block.get("detuning", base.detuning)))
    return Drives(*out)


def oracle_model_from(doc: dict) -> OracleModel:
    o = dict(doc.get("oracle", {}))
    if isinstance(o.get("branching"), list):
        o["branching"] = tuple(o["branching"])
    return _build("oracle", OracleModel, **o)


def scenario_from(doc: dict) -> Scenario:
    sw = doc.get("switches", {})
    return Scenario(
        params=params_from(doc),
        drives=drives_from(doc),
        population_source=doc.get("population_source", "configured"),
        oracle_model=oracle_model_from(doc),
        probe_on=sw.get("probe", True),
        trigger_on=sw.get("trigger", True),
    )


def scan_from(doc: dict) -> ScanSpec:
    if "scan" not in doc:
        raise ConfigError("scan", "required key is missing")
    s = doc["scan"]
    locks = {t: Lock(v["follow"], v.get("offset", 0.0)) for t, v in s.get("locks", {}).items()}
    return _build("scan", ScanSpec, s["axis"], s["start"], s["stop"], s["points"], locks)


@dataclass(frozen=True)
class OutputOptions:
    baseline: bool = False
    xpm: bool = False
    group_index: bool = True
    columns: tuple[str, ...] | None = None
    format: str = "csv"


def output_from(doc: dict) -> OutputOptions:
    o = doc.get("output", {})
    cols = o.get("columns")
    return OutputOptions(
        baseline=o.get("baseline", False),
        xpm=o.get("xpm", False),
        group_index=o.get("group_index", True),
        columns=tuple(cols) if cols else None,
        format=o.get("format", "csv"),
    )


def provenance_lines(doc: dict) -> list[str]:
    """Header comment lines describing where each configured value comes from."""
    lines = []
    if doc.get("description"):
        lines.append(f"scenario: {doc['description']}")
    for key, note in sorted(doc.get("provenance", {}).items()):
        lines.append(f"provenance {key} = {note}")
    scan = doc.get("scan", {})
    for target, lock in sorted(scan.get("locks", {}).items()):
        lines.append(f"lock {target} = {lock['follow']} + {lock.get('offset', 0.0)!r} MHz")
    if doc.get("population_source"):
        lines.append(f"population_source = {doc['population_source']}")
    return lines


@dataclass(frozen=True)
class FitOptions:
    column: str
    free: tuple[str, ...]
    bounds: dict = field(default_factory=dict)
    max_iter: int = 4000


def fit_from(doc: dict) -> FitOptions:
    if "fit" not in doc:
        raise ConfigError("fit", "required key is missing")
    f = doc["fit"]
    return FitOptions(
        column=f["column"],
        free=tuple(f["free"]),
        bounds={k: tuple(v) for k, v in f.get("bounds", {}).items()},
        max_iter=f.get("max_iter", 4000),
    )
