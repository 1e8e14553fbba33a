"""Flat key-value experiment configs.

Grammar::

    # comment
    key = value              top-level settings and grid axes
    n = 500, 1000            lists are comma separated
    [cell.1]                 explicit extra cells, appended in section order
    n = 2000
    alpha = 0.45

Top-level ``n`` crossed with ``alpha`` (or ``p``) forms the grid, n-major.
Keys ``mode k samples c delta epsilon budget fast_path`` set defaults that
``[cell.N]`` sections may override. ``seed`` is top-level only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .canonical import DEFAULT_BUDGET
from .errors import ConfigError
from .experiments import MODES, Cell, ExperimentSpec

__all__ = ["parse_config", "load_config"]

_SECTION = re.compile(r"^\[cell\.(\d+)\]$")
_CELL_KEYS = {"n", "alpha", "p", "mode", "k", "samples", "c", "delta", "epsilon", "budget", "fast_path"}
_TOP_KEYS = _CELL_KEYS | {"seed"}


@dataclass
class _Value:
    text: str
    line: int
    column: int


def _split_list(v: _Value) -> list[_Value]:
    out = []
    offset = 0
    for part in v.text.split(","):
        lead = len(part) - len(part.lstrip())
        if not part.strip():
            raise ConfigError("empty list item", v.line, v.column + offset)
        out.append(_Value(part.strip(), v.line, v.column + offset + lead))
        offset += len(part) + 1
    return out


def _num(v: _Value, kind, what: str):
    try:
        return kind(v.text)
    except ValueError:
        raise ConfigError(f"{what} must be {'an integer' if kind is int else 'a number'}, got {v.text!r}",
                          v.line, v.column) from None


def _bool(v: _Value) -> bool:
    t = v.text.lower()
    if t in ("true", "yes", "1", "on"):
        return True
    if t in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {v.text!r}", v.line, v.column)


def _tokenize(text: str):
    top: dict[str, _Value] = {}
    sections: list[tuple[int, int, dict[str, _Value]]] = []
    current = top
    seen_ids = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("["):
            m = _SECTION.match(stripped)
            if not m:
                raise ConfigError(f"bad section header {stripped!r}, expected [cell.N]", lineno, indent + 1)
            ident = int(m.group(1))
            if ident in seen_ids:
                raise ConfigError(f"duplicate section [cell.{ident}]", lineno, indent + 1)
            seen_ids.add(ident)
            current = {}
            sections.append((ident, lineno, current))
            continue
        if "=" not in stripped:
            raise ConfigError("expected 'key = value'", lineno, indent + 1)
        key_part, _, value_part = raw.partition("=")
        key = key_part.strip()
        allowed = _TOP_KEYS if current is top else _CELL_KEYS
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r}", lineno, indent + 1)
        if key in current:
            raise ConfigError(f"duplicate key {key!r}", lineno, indent + 1)
        value = value_part.split("#", 1)[0]
        col = len(key_part) + 2 + (len(value) - len(value.lstrip()))
        if not value.strip():
            raise ConfigError(f"missing value for {key!r}", lineno, len(key_part) + 2)
        current[key] = _Value(value.strip(), lineno, col)
    sections.sort(key=lambda s: s[0])
    return top, sections


def _settings(d: dict[str, _Value], base: dict) -> dict:
    out = dict(base)
    if "mode" in d:
        if d["mode"].text not in MODES:
            raise ConfigError(f"unknown mode {d['mode'].text!r}; expected one of {', '.join(MODES)}",
                              d["mode"].line, d["mode"].column)
        out["mode"] = d["mode"].text
    for key, kind in (("k", int), ("samples", int), ("budget", int)):
        if key in d:
            out[key] = _num(d[key], kind, key)
            if out[key] < (0 if key == "k" else 1):
                raise ConfigError(f"{key} out of range", d[key].line, d[key].column)
    for key in ("c", "delta", "epsilon"):
        if key in d:
            out[key] = _num(d[key], float, key)
    if "delta" in d and not 0 < out["delta"] < 1:
        raise ConfigError("delta must lie in (0, 1)", d["delta"].line, d["delta"].column)
    if "fast_path" in d:
        out["fast_path"] = _bool(d["fast_path"])
    return out


def _make_cell(n_val: _Value, axis: str, x_val: _Value, s: dict) -> Cell:
    n = _num(n_val, int, "n")
    if n < 1:
        raise ConfigError("n must be at least 1", n_val.line, n_val.column)
    x = _num(x_val, float, axis)
    if axis == "alpha":
        p, alpha = s["c"] * n ** (-x), x
    else:
        p, alpha = x, None
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"edge probability {p:g} for n={n} is outside [0, 1]", x_val.line, x_val.column)
    return Cell(n=n, p=p, alpha=alpha, mode=s["mode"], samples=s["samples"], k=s["k"],
                delta=s["delta"], epsilon=s["epsilon"], budget=s["budget"], fast_path=s["fast_path"])


def parse_config(text: str) -> ExperimentSpec:
    """Parse a config; every problem raises :class:`ConfigError` with its position."""
    top, sections = _tokenize(text)
    defaults = dict(mode="local-symmetry", k=1, samples=100, c=1.0, delta=0.5, epsilon=0.1,
                    budget=DEFAULT_BUDGET, fast_path=True)
    base = _settings(top, defaults)
    seed = None
    if "seed" in top:
        seed = _num(top["seed"], int, "seed")
        if seed < 0:
            raise ConfigError("seed must be non-negative", top["seed"].line, top["seed"].column)

    cells = []
    for where, d, s in [(None, top, base)] + [(ln, d, None) for _, ln, d in sections]:
        if s is None:
            s = _settings(d, base)
        if "alpha" in d and "p" in d:
            raise ConfigError("give either alpha or p, not both", d["p"].line, d["p"].column)
        axis = "alpha" if "alpha" in d else "p" if "p" in d else None
        if "n" not in d:
            if axis is not None:
                raise ConfigError(f"{axis} given without n", d[axis].line, d[axis].column)
            if where is not None:
                raise ConfigError("cell section needs n", where, 1)
            continue
        if axis is None:
            raise ConfigError("n given without alpha or p", d["n"].line, d["n"].column)
        for nv in _split_list(d["n"]):
            for xv in _split_list(d[axis]):
                cells.append(_make_cell(nv, axis, xv, s))
    return ExperimentSpec(cells=cells, seed=seed)


def load_config(path) -> ExperimentSpec:
    return parse_config(Path(path).read_text(encoding="utf-8"))
