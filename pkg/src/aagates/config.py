"""Experiment configuration: a flat INI file with sectioned tables.

Grammar (configparser syntax, ``;`` or ``#`` comments)::

    [model]
    kind = two_level | lab_two_level | raman | raman_effective | biexciton
    ... per-kind physical parameters (rad/fs, fs) ...

    [sequence]
    kind = gate1 | gate2 | segments | hold | raman_not | raman_phase
         | two_photon_phase
    ... per-kind controls ...

    [segment.N]                      ; only for kind = segments, N = 1, 2, ...
    rabi = ...  phase = ...  detuning = ...  duration = ...

    [initial]
    state = 0                        ; basis index or label (E, G, E+, E-, GG, ...)

    [integrator]
    method = exact | rk4
    samples_per_segment = 2000
    dt = ...                         ; optional, overrides samples_per_segment

    [target]
    kind = none | gate1 | gate2 | conditional_phase
    angle = pi/2 | auto              ; auto derives the angle from the sequence

    [output]
    dir = out/run

Numeric values accept literal arithmetic with ``pi`` and ``e``
(e.g. ``pi/8``, ``2*0.02``); nothing else is evaluated.
"""

from __future__ import annotations

import ast
import configparser
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

MODEL_KINDS = {"two_level", "lab_two_level", "raman", "raman_effective", "biexciton"}
SEQUENCE_KINDS = {
    "gate1", "gate2", "segments", "hold", "raman_not", "raman_phase", "two_photon_phase",
}
TARGET_KINDS = {"none", "gate1", "gate2", "conditional_phase"}

_ALLOWED_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_ALLOWED_NAMES = {"pi": math.pi, "e": math.e}

STATE_LABELS = {
    "E": 0, "G": 1,
    "E+": 0, "E-": 1,
    "GG": 0, "GE": 1, "EG": 2, "EE": 3,
}


def parse_number(text: str) -> float:
    """Evaluate a literal arithmetic expression (pi and e allowed)."""
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ConfigError(f"cannot parse number {text!r}") from exc

    def ev(n: ast.AST) -> float:
        if isinstance(n, ast.Constant) and isinstance(n.value, (int, float)):
            return float(n.value)
        if isinstance(n, ast.Name) and n.id in _ALLOWED_NAMES:
            return _ALLOWED_NAMES[n.id]
        if isinstance(n, ast.BinOp) and type(n.op) in _ALLOWED_BINOPS:
            return _ALLOWED_BINOPS[type(n.op)](ev(n.left), ev(n.right))
        if isinstance(n, ast.UnaryOp) and isinstance(n.op, ast.USub):
            return -ev(n.operand)
        raise ConfigError(f"disallowed expression in number: {text!r}")

    return ev(node)


@dataclass
class ExperimentConfig:
    """Parsed and type-checked experiment description."""

    sections: dict[str, dict[str, str]]
    path: Path | None = None
    warnings: list[str] = field(default_factory=list)

    # -- raw access ---------------------------------------------------------

    def get(self, section: str, key: str, default: str | None = None) -> str | None:
        return self.sections.get(section, {}).get(key, default)

    def require(self, section: str, key: str) -> str:
        value = self.get(section, key)
        if value is None:
            raise ConfigError(f"missing required key [{section}] {key}")
        return value

    def number(self, section: str, key: str, default: float | None = None) -> float:
        raw = self.get(section, key)
        if raw is None:
            if default is None:
                raise ConfigError(f"missing required numeric key [{section}] {key}")
            return default
        return parse_number(raw)

    def integer(self, section: str, key: str, default: int | None = None) -> int:
        value = self.number(section, key, None if default is None else float(default))
        if abs(value - round(value)) > 1e-9:
            raise ConfigError(f"[{section}] {key} must be an integer, got {value}")
        return int(round(value))

    # -- typed views --------------------------------------------------------

    @property
    def model_kind(self) -> str:
        kind = self.require("model", "kind")
        if kind not in MODEL_KINDS:
            raise ConfigError(f"unknown model kind {kind!r}; expected one of {sorted(MODEL_KINDS)}")
        return kind

    @property
    def sequence_kind(self) -> str:
        kind = self.require("sequence", "kind")
        if kind not in SEQUENCE_KINDS:
            raise ConfigError(
                f"unknown sequence kind {kind!r}; expected one of {sorted(SEQUENCE_KINDS)}"
            )
        return kind

    @property
    def target_kind(self) -> str:
        kind = self.get("target", "kind", "none")
        if kind not in TARGET_KINDS:
            raise ConfigError(f"unknown target kind {kind!r}")
        return kind

    @property
    def initial_state_index(self) -> int:
        raw = self.get("initial", "state", "0")
        if raw in STATE_LABELS:
            return STATE_LABELS[raw]
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"unknown initial state {raw!r}") from exc

    @property
    def integrator_method(self) -> str:
        method = self.get("integrator", "method", "rk4")
        if method not in {"exact", "rk4"}:
            raise ConfigError(f"integrator method must be exact or rk4, got {method!r}")
        return method

    def samples_for(self, duration: float) -> int:
        dt = self.get("integrator", "dt")
        if dt is not None:
            step = parse_number(dt)
            if step <= 0:
                raise ConfigError("integrator dt must be positive")
            return max(1, int(math.ceil(duration / step)))
        return self.integer("integrator", "samples_per_segment", 2000)

    def explicit_segments(self) -> list[dict[str, float]]:
        out = []
        n = 1
        while f"segment.{n}" in self.sections:
            sec = f"segment.{n}"
            out.append(
                {
                    "rabi": self.number(sec, "rabi", 0.0),
                    "phase": self.number(sec, "phase", 0.0),
                    "detuning": self.number(sec, "detuning", 0.0),
                    "duration": self.number(sec, "duration"),
                }
            )
            n += 1
        if not out:
            raise ConfigError("sequence kind 'segments' needs at least [segment.1]")
        return out

    @property
    def output_dir(self) -> Path:
        return Path(self.get("output", "dir", "out"))


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and structurally validate a config file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    sections = {name: dict(parser[name]) for name in parser.sections()}
    if "model" not in sections or "sequence" not in sections:
        raise ConfigError("config needs [model] and [sequence] sections")
    cfg = ExperimentConfig(sections=sections, path=path)
    # force early validation of the discriminators
    _ = cfg.model_kind, cfg.sequence_kind, cfg.target_kind
    return cfg
