"""Solver configuration: the 12-parameter space, validation, presets and export.

Codes used by the categorical parameters:

* ``breaking_ties``: 0 random, 1 favour the oldest vertex
* ``init_construction``: 0 random, 1 greedy by weight, 2 greedy by degree
* ``drop_vertex``: 0 random, 1 random with probability ``randomdrop_prob`` and
  weight-based otherwise, 2 weight-based (lightest member)
* ``tabu_type``: 0 strong configuration checking, 1 tabu, 2 tabu with
  neighbour lifting
"""

from __future__ import annotations

import dataclasses
import json
import math
import random
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Iterable

PARAMETER_NAMES = (
    "perform_BMS",
    "bms_num",
    "breaking_ties",
    "init_construction",
    "drop_vertex",
    "randomdrop_prob",
    "perform_restart",
    "restart_prob",
    "perform_randomwalk",
    "randomwalk_prob",
    "tabu_type",
    "tabu_tenure",
)

RANDOMDROP_VALUES = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


class ConfigError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


# -- parameter space ---------------------------------------------------------


@dataclass(frozen=True)
class Parameter:
    name: str
    kind: str  # "flag", "categorical", "integer" or "real"
    default: Any
    values: tuple | None = None  # flag / categorical
    low: float | None = None  # integer / real
    high: float | None = None
    log: bool = False

    def contains(self, value: Any) -> bool:
        if self.kind == "flag":
            return isinstance(value, bool)
        if isinstance(value, bool):
            return False
        if self.kind == "categorical":
            if isinstance(value, float):
                return any(math.isclose(value, v, rel_tol=0, abs_tol=1e-12) for v in self.values)
            return value in self.values
        if self.kind == "integer":
            return isinstance(value, int) and self.low <= value <= self.high
        return isinstance(value, (int, float)) and math.isfinite(value) and self.low <= value <= self.high

    def domain_text(self) -> str:
        if self.kind in ("flag", "categorical"):
            return "{" + ",".join(_fmt(v) for v in self.values) + "}"
        return f"[{_fmt(self.low)},{_fmt(self.high)}]"

    def sample(self, rng: random.Random) -> Any:
        if self.kind in ("flag", "categorical"):
            return rng.choice(self.values)
        if self.kind == "integer":
            return rng.randint(int(self.low), int(self.high))
        if self.log:
            return math.exp(rng.uniform(math.log(self.low), math.log(self.high)))
        return rng.uniform(self.low, self.high)


@dataclass(frozen=True)
class Condition:
    child: str
    parent: str
    values: tuple


@dataclass(frozen=True)
class ParameterSpace:
    parameters: tuple[Parameter, ...]
    conditions: tuple[Condition, ...]

    def __getitem__(self, name: str) -> Parameter:
        for p in self.parameters:
            if p.name == name:
                return p
        raise KeyError(name)

    def is_active(self, name: str, values: dict[str, Any]) -> bool:
        for c in self.conditions:
            if c.child == name and values.get(c.parent) not in c.values:
                return False
        return True

    def to_json(self) -> str:
        return json.dumps(
            {
                "parameters": [dataclasses.asdict(p) for p in self.parameters],
                "conditions": [dataclasses.asdict(c) for c in self.conditions],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "ParameterSpace":
        data = json.loads(text)
        params = []
        for p in data["parameters"]:
            if p["values"] is not None:
                p["values"] = tuple(p["values"])
            params.append(Parameter(**p))
        conds = [Condition(c["child"], c["parent"], tuple(c["values"])) for c in data["conditions"]]
        return cls(tuple(params), tuple(conds))

    def to_pcs(self) -> str:
        lines = []
        for p in self.parameters:
            if p.kind in ("flag", "categorical"):
                lines.append(f"{p.name} {p.domain_text()} [{_fmt(p.default)}]")
            else:
                suffix = ("i" if p.kind == "integer" else "") + ("l" if p.log else "")
                lines.append(f"{p.name} {p.domain_text()} [{_fmt(p.default)}]{suffix}")
        lines.append("")
        lines.append("Conditionals:")
        for c in self.conditions:
            lines.append(f"{c.child} | {c.parent} in {{{','.join(_fmt(v) for v in c.values)}}}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_pcs(cls, text: str) -> "ParameterSpace":
        """Parse the subset of the classic PCS grammar that :meth:`to_pcs` writes."""
        params: list[Parameter] = []
        conds: list[Condition] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line or line == "Conditionals:":
                continue
            if "|" in line:
                child, rest = (s.strip() for s in line.split("|", 1))
                parent, _, vals = rest.partition(" in ")
                items = vals.strip().strip("{}").split(",")
                conds.append(Condition(child, parent.strip(), tuple(_parse_atom(v) for v in items)))
                continue
            name, rest = line.split(None, 1)
            rest = rest.strip()
            if rest.startswith("{"):
                dom, _, tail = rest[1:].partition("}")
                values = tuple(_parse_atom(v) for v in dom.split(","))
                default = _parse_atom(tail.strip().strip("[]"))
                kind = "flag" if all(isinstance(v, bool) for v in values) else "categorical"
                params.append(Parameter(name, kind, default, values=values))
            else:
                dom, _, tail = rest[1:].partition("]")
                lo, hi = (float(s) for s in dom.split(","))
                dflt, _, flags = tail.strip()[1:].partition("]")
                integer = "i" in flags
                kind = "integer" if integer else "real"
                conv = int if integer else float
                params.append(
                    Parameter(name, kind, conv(float(dflt)) if integer else float(dflt),
                              low=conv(lo), high=conv(hi), log="l" in flags)
                )
        return cls(tuple(params), tuple(conds))


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


def _parse_atom(tok: str) -> Any:
    tok = tok.strip()
    if tok in ("true", "false"):
        return tok == "true"
    try:
        return int(tok)
    except ValueError:
        return float(tok)


SPACE = ParameterSpace(
    parameters=(
        Parameter("perform_BMS", "flag", True, values=(True, False)),
        Parameter("bms_num", "integer", 50, low=1, high=100),
        Parameter("breaking_ties", "categorical", 0, values=(0, 1)),
        Parameter("init_construction", "categorical", 0, values=(0, 1, 2)),
        Parameter("drop_vertex", "categorical", 0, values=(0, 1, 2)),
        Parameter("randomdrop_prob", "categorical", 0.2, values=RANDOMDROP_VALUES),
        Parameter("perform_restart", "flag", False, values=(True, False)),
        Parameter("restart_prob", "real", 1e-6, low=1e-7, high=1e-4, log=True),
        Parameter("perform_randomwalk", "flag", True, values=(True, False)),
        Parameter("randomwalk_prob", "real", 1e-4, low=1e-5, high=0.1, log=True),
        Parameter("tabu_type", "categorical", 1, values=(0, 1, 2)),
        Parameter("tabu_tenure", "integer", 7, low=1, high=100),
    ),
    conditions=(
        Condition("bms_num", "perform_BMS", (True,)),
        Condition("randomdrop_prob", "drop_vertex", (1,)),
        Condition("restart_prob", "perform_restart", (True,)),
        Condition("randomwalk_prob", "perform_randomwalk", (True,)),
        Condition("tabu_tenure", "tabu_type", (1, 2)),
    ),
)

CONDITIONAL = frozenset(c.child for c in SPACE.conditions)


def export_space(fmt: str = "pcs_text") -> str:
    if fmt == "pcs_text":
        return SPACE.to_pcs()
    if fmt == "json":
        return SPACE.to_json()
    raise ValueError(f"unknown space format {fmt!r}")


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Configuration:
    """One point of the space.  Inactive parameters may be ``None``.

    Equality and hashing only look at active parameters.
    """

    perform_BMS: bool = True
    bms_num: int | None = 50
    breaking_ties: int = 0
    init_construction: int = 0
    drop_vertex: int = 0
    randomdrop_prob: float | None = 0.2
    perform_restart: bool = False
    restart_prob: float | None = 1e-6
    perform_randomwalk: bool = True
    randomwalk_prob: float | None = 1e-4
    tabu_type: int = 1
    tabu_tenure: int | None = 7

    def as_dict(self) -> dict[str, Any]:
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def active(self) -> dict[str, Any]:
        values = self.as_dict()
        return {k: v for k, v in values.items() if SPACE.is_active(k, values)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.active() == other.active()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.active().items())))

    def replace(self, **changes: Any) -> "Configuration":
        return dataclasses.replace(self, **changes)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Configuration":
        unknown = set(data) - set(PARAMETER_NAMES)
        if unknown:
            raise ConfigError([f"unknown parameter {name!r}" for name in sorted(unknown)])
        values: dict[str, Any] = {name: None for name in CONDITIONAL}
        values.update(data)
        return cls(**values)

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        return cls.from_dict(json.loads(text))


def validate(config: Configuration) -> list[str]:
    """Return the list of problems; empty means the configuration is valid."""
    errors = []
    values = config.as_dict()
    for p in SPACE.parameters:
        if not SPACE.is_active(p.name, values):
            continue
        value = values[p.name]
        if value is None:
            errors.append(f"{p.name} is active but missing")
        elif not p.contains(value):
            errors.append(f"{p.name} ∉ {p.domain_text()} (got {value!r})")
    return errors


def check(config: Configuration) -> Configuration:
    errors = validate(config)
    if errors:
        raise ConfigError(errors)
    return config


# Tuned values are kept as the exact decimal strings they were published with.
PRESET_SOURCES: dict[str, dict[str, Any]] = {
    "default": {
        "perform_BMS": True, "bms_num": 50, "breaking_ties": 0, "init_construction": 0,
        "drop_vertex": 0, "perform_restart": False, "perform_randomwalk": True,
        "randomwalk_prob": "1.0E-4", "tabu_type": 1, "tabu_tenure": 7,
    },
    "bhoslib": {
        "perform_BMS": False, "breaking_ties": 1, "init_construction": 1, "drop_vertex": 0,
        "perform_restart": True, "perform_randomwalk": True,
        "restart_prob": "5.016696977394702E-5", "randomwalk_prob": "0.09733547356349166",
        "tabu_type": 1, "tabu_tenure": 5,
    },
    "dimacs_mann": {
        "perform_BMS": False, "breaking_ties": 1, "init_construction": 1, "drop_vertex": 1,
        "perform_restart": False, "perform_randomwalk": True, "randomdrop_prob": "0.1",
        "randomwalk_prob": "0.0021339029487367554", "tabu_type": 0,
    },
    "dimacs_other": {
        "perform_BMS": False, "breaking_ties": 1, "init_construction": 0, "drop_vertex": 0,
        "perform_restart": True, "perform_randomwalk": True,
        "restart_prob": "3.459685410644107E-5", "randomwalk_prob": "0.00994485968433248",
        "tabu_type": 1, "tabu_tenure": 8,
    },
    "kes": {
        "perform_BMS": True, "bms_num": 6, "breaking_ties": 1, "init_construction": 0,
        "drop_vertex": 2, "perform_restart": True, "perform_randomwalk": False,
        "restart_prob": "2.7775287025690946E-5", "tabu_type": 1, "tabu_tenure": 30,
    },
    "ref": {
        "perform_BMS": True, "bms_num": 16, "breaking_ties": 1, "init_construction": 0,
        "drop_vertex": 1, "perform_restart": True, "perform_randomwalk": False,
        "randomdrop_prob": "0.4", "restart_prob": "9.44211698679448E-6",
        "tabu_type": 2, "tabu_tenure": 8,
    },
}


def preset(name: str) -> Configuration:
    """Configuration for a benchmark family; unlisted parameters are inactive.

    The default preset also carries the space defaults for its inactive
    parameters (``randomdrop_prob=0.2``, ``restart_prob=1e-6``).
    """
    try:
        source = PRESET_SOURCES[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESET_SOURCES)}") from None
    values: dict[str, Any] = {}
    for key, value in source.items():
        values[key] = float(Decimal(value)) if isinstance(value, str) else value
    if name == "default":
        return Configuration(**values)
    return Configuration.from_dict(values)


def sample_configuration(rng: random.Random, space: ParameterSpace = SPACE) -> Configuration:
    """Uniform sample respecting activation conditions; inactive parameters are ``None``."""
    values: dict[str, Any] = {}
    for p in space.parameters:
        values[p.name] = p.sample(rng)
    for p in space.parameters:
        if not space.is_active(p.name, values):
            values[p.name] = None
    return Configuration.from_dict(values)


def as_cli_flags(config: Configuration) -> list[str]:
    flags = []
    for name, value in config.active().items():
        flags.append(f"--{name}={_fmt(value)}")
    return flags


def parse_value(name: str, text: str) -> Any:
    """Convert a command-line string to the type of parameter ``name``."""
    p = SPACE[name]
    if p.kind == "flag":
        low = text.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ValueError(f"{name} expects true/false, got {text!r}")
    if p.kind == "integer" or (p.kind == "categorical" and all(isinstance(v, int) for v in p.values)):
        return int(text)
    return float(text)


def override(config: Configuration, pairs: Iterable[tuple[str, str]]) -> Configuration:
    return config.replace(**{name: parse_value(name, text) for name, text in pairs})
