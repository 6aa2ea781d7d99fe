"""Problem files: YAML or JSON documents naming f, g and a stratified complex."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ParseError
from .poly import Polynomial, parse
from .polar import StratumGeometry
from .strat import (
    ModuleDescription,
    StratifiedComplexSpec,
    StratumData,
    constant_sheaf,
    coordinate_cross,
)

PRESETS = ("constant-sheaf", "coordinate-cross")
RINGS = ("integral-domain", "general")


class ProblemError(ParseError):
    """A structurally invalid problem file."""


@dataclass(frozen=True)
class Problem:
    variables: tuple
    f: Polynomial
    g: Polynomial | None
    spec: StratifiedComplexSpec
    seed: int
    raw: dict


def _require(cond, message):
    if not cond:
        raise ProblemError(message)


def _morse(table, where) -> dict:
    _require(isinstance(table, dict), f"{where}: morse must be a mapping from degree to module")
    out = {}
    for k, m in table.items():
        try:
            degree = int(k)
        except (TypeError, ValueError):
            raise ProblemError(f"{where}: morse degree {k!r} is not an integer") from None
        if isinstance(m, int):
            m = {"rank": m}
        _require(isinstance(m, dict) and "rank" in m, f"{where}: morse[{k}] needs a rank")
        rank = m["rank"]
        _require(isinstance(rank, int) and rank >= 0, f"{where}: rank must be a non-negative integer")
        torsion = m.get("torsion", [])
        _require(isinstance(torsion, list), f"{where}: torsion must be a list of labels")
        out[degree] = ModuleDescription(rank, tuple(str(t) for t in torsion))
    return out


def _polynomial(text, variables, where) -> Polynomial:
    if isinstance(text, (int, float)):
        text = str(text)
    _require(isinstance(text, str), f"{where}: expected a polynomial string")
    try:
        return parse(text, variables)
    except ParseError as exc:
        raise ProblemError(f"{where}: {exc}", text, exc.position) from exc


def build_problem(data: dict, seed_override: int | None = None) -> Problem:
    _require(isinstance(data, dict), "problem file must be a mapping")
    variables = data.get("variables")
    _require(
        isinstance(variables, list) and variables and all(isinstance(v, str) for v in variables),
        "variables: expected a non-empty list of names",
    )
    _require(len(set(variables)) == len(variables), "variables: names must be distinct")
    variables = tuple(variables)
    _require("f" in data, "f is required")
    f = _polynomial(data["f"], variables, "f")
    g = _polynomial(data["g"], variables, "g") if data.get("g") is not None else None
    ring = data.get("ring", "integral-domain")
    _require(ring in RINGS, f"ring: expected one of {', '.join(RINGS)}")
    integral = ring == "integral-domain"
    seed = data.get("seed", 0) if seed_override is None else seed_override
    _require(isinstance(seed, int), "seed must be an integer")

    strata = data.get("strata")
    preset = data.get("preset")
    if strata is None:
        preset = preset or "constant-sheaf"
        _require(preset in PRESETS, f"preset: expected one of {', '.join(PRESETS)}")
        if preset == "constant-sheaf":
            spec = constant_sheaf(variables)
        else:
            _require(len(variables) == 2, "coordinate-cross preset needs exactly two variables")
            spec = coordinate_cross(variables=variables)
        spec = StratifiedComplexSpec(spec.variables, spec.strata, integral)
    else:
        _require(preset is None, "give either strata or preset, not both")
        _require(isinstance(strata, list) and strata, "strata: expected a non-empty list")
        items = []
        names = set()
        for i, st in enumerate(strata):
            where = f"strata[{i}]"
            _require(isinstance(st, dict), f"{where}: expected a mapping")
            name = str(st.get("name", f"S{i}"))
            _require(name not in names, f"{where}: duplicate stratum name {name}")
            names.add(name)
            eqs = st.get("equations", [])
            _require(isinstance(eqs, list), f"{where}: equations must be a list")
            polys = tuple(_polynomial(e, variables, f"{where}.equations") for e in eqs)
            try:
                geom = StratumGeometry(name, variables, polys, st.get("dim"))
            except ValueError as exc:
                raise ProblemError(str(exc)) from exc
            morse = _morse(st["morse"], where) if st.get("morse") is not None else None
            items.append(StratumData(geom, morse))
        spec = StratifiedComplexSpec(variables, tuple(items), integral)
    return Problem(variables, f, g, spec, seed, data)


def load_problem(path, seed_override: int | None = None) -> Problem:
    return build_problem(load_document(path), seed_override)


def load_document(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ProblemError(f"cannot parse {path}: {exc}") from exc
    _require(isinstance(data, dict), f"{path}: top level must be a mapping")
    return data
