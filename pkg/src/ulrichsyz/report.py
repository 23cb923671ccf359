"""Config files, deterministic JSON documents and their markdown rendering."""

from __future__ import annotations

import configparser
import json
import re
from importlib import resources
from pathlib import Path

from . import __version__
from .classification import (
    DEFAULT_COR54,
    DEFAULT_CURVES,
    DEFAULT_P1XP1,
    DEFAULT_PROP52,
    DEFAULT_SURFACES,
)
from .core import SearchConfig

DEFAULT_SWEEP = SearchConfig.of(p1_m=(1, 5), p2_L=(1, 2), p3_L=(1, 1), quadric=(1, 2),
                                k=(-4, 5), a=(1, 8))

DEFAULTS = {
    "curves": DEFAULT_CURVES,
    "surfaces": DEFAULT_SURFACES,
    "p1xp1": DEFAULT_P1XP1,
    "prop52": DEFAULT_PROP52,
    "cor54": DEFAULT_COR54,
    "sweep": DEFAULT_SWEEP,
}

_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    m = _RANGE.match(text)
    if not m:
        raise ConfigError(f"bad range {text!r}: expected 'lo..hi' with finite integer bounds")
    return int(m.group(1)), int(m.group(2))


def _apply(configs: dict, section: str, key: str, value: str) -> None:
    if section not in configs:
        raise ConfigError(f"unknown config section [{section}]")
    cfg = configs[section]
    if key not in dict(cfg.ranges):
        raise ConfigError(f"unknown key {key!r} in [{section}]")
    try:
        configs[section] = cfg.with_ranges(**{key: parse_range(value)})
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | None = None, overrides: list[str] = ()) -> dict[str, SearchConfig]:
    """Defaults, then the ``[section]`` key = lo..hi file, then ``section.key=lo..hi`` flags."""
    configs = dict(DEFAULTS)
    if path:
        parser = configparser.ConfigParser()
        parser.optionxform = str
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for section in parser.sections():
            for key, value in parser.items(section):
                _apply(configs, section, key, value)
    for item in overrides:
        name, sep, value = item.partition("=")
        section, dot, key = name.partition(".")
        if not sep or not dot:
            raise ConfigError(f"bad override {item!r}: expected section.key=lo..hi")
        _apply(configs, section.strip(), key.strip(), value)
    return configs


def config_snapshot(configs: dict[str, SearchConfig], sections) -> dict:
    return {s: configs[s].as_dict() for s in sections}


# --------------------------------------------------------------------------
# documents


def make_document(command: str, config: dict, results: dict, checks: dict[str, bool]) -> dict:
    return {
        "manifest": {"command": command, "config": config, "version": __version__},
        "results": results,
        "summary": {
            "checks": {name: ("pass" if ok else "fail") for name, ok in sorted(checks.items())},
            "passed": all(checks.values()),
        },
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("ulrichsyz").joinpath("schema.json").read_text())


def golden_path(name: str) -> Path:
    return Path(str(resources.files("ulrichsyz").joinpath("golden", f"{name}.json")))


def _md_value(v) -> str:
    if isinstance(v, (dict, list)):
        return "`" + json.dumps(v, sort_keys=True, separators=(",", ":")) + "`"
    return str(v)


def render_markdown(doc: dict) -> str:
    man = doc["manifest"]
    lines = [f"# {man['command']}", "", f"version {man['version']}", ""]
    lines += ["| check | status |", "|---|---|"]
    for name, status in doc["summary"]["checks"].items():
        lines.append(f"| {name} | {status} |")
    lines += ["", f"**overall: {'pass' if doc['summary']['passed'] else 'fail'}**", ""]
    for key in sorted(doc["results"]):
        value = doc["results"][key]
        lines += [f"## {key}", ""]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            cols = sorted({c for row in value for c in row})
            lines += ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
            for row in value:
                lines.append("| " + " | ".join(_md_value(row.get(c, "")) for c in cols) + " |")
        elif isinstance(value, dict):
            for k2 in sorted(value):
                lines.append(f"- {k2}: {_md_value(value[k2])}")
        else:
            lines.append(_md_value(value))
        lines.append("")
    lines += ["## config", "", "```", json.dumps(man["config"], sort_keys=True, indent=2), "```", ""]
    return "\n".join(lines)
