"""JSON form of mode descriptors and elements (used by ``voalog apply``).

An operator is a JSON object with a ``case`` (``"triplet(p)"``,
``"triplet(p,p')"``, ``"super(p,p')"`` or ``"affine"``), a ``kind`` and the
kind's arguments::

    {"case": "triplet(2)", "kind": "virasoro", "n": 0}
    {"case": "triplet(2)", "kind": "screening", "label": "Qtilde"}
    {"case": "triplet(2)", "kind": "deformed_virasoro", "n": 0, "v": "Qtilde",
     "algebra_ctx": {"extended": 0}, "ctx": {"extended": 1}}

Rationals are strings ``"num/den"`` (integers are accepted too).  Elements
use the report serialization: a list of ``{"coeff", "bosons", "point",
"fermions"}`` terms (a single term object is accepted as well).  An extended
sector context is ``{"extended": i}`` (the sector ``V_i`` of the triplet or
super case) or explicit cosets ``{"base": [...], "shifted": [...],
"algebra_shift": [...]}``.
"""
from __future__ import annotations

from .errors import ConfigError, InvalidParameters
from .fock import FockElement, element_from_json, element_to_json
from .lattice import Sector, affine, frac, super_ns, triplet
from .modes import ExtendedSector, ModeDescriptor, apply_mode, triplet_extended

ELEMENT_ARGS = ("u", "a", "v")
RATIONAL_ARGS = ("n", "r", "c")
VECTOR_ARGS = ("mu", "h")


def parse_case(case: str):
    case = (case or "").strip()
    try:
        if case == "affine":
            return affine()
        if case.startswith(("triplet(", "super(")) and case.endswith(")"):
            name, params = case[:-1].split("(", 1)
            nums = [int(x) for x in params.split(",")]
            return triplet(*nums) if name == "triplet" else super_ns(*nums)
    except (InvalidParameters, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown case {case!r}")


def parse_element(data) -> FockElement:
    if isinstance(data, dict):
        data = [data]
    try:
        return element_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad element JSON: {exc}") from exc


def parse_ctx(config, data):
    if data is None:
        return None
    if "extended" in data:
        return triplet_extended(config, int(data["extended"]))
    try:
        sec = lambda key: Sector(config, tuple(frac(x) for x in data[key]))
        return ExtendedSector(sec("base"), sec("shifted"), sec("algebra_shift"), label=data.get("label", ""))
    except KeyError as exc:
        raise ConfigError(f"context needs base/shifted/algebra_shift: missing {exc}") from exc


def _element_arg(config, value):
    if isinstance(value, str):
        from .screenings import screening_vector

        if value == "omega":
            from .modes import conformal_vector

            return conformal_vector(config)
        return screening_vector(config, value)
    return parse_element(value)


def parse_descriptor(config, data) -> ModeDescriptor:
    if not isinstance(data, dict) or "kind" not in data:
        raise ConfigError("operator JSON must be an object with a 'kind'")
    kind = data["kind"]
    args = {}
    for key, value in data.items():
        if key in ("kind", "case", "ctx"):
            continue
        if key in ELEMENT_ARGS:
            args[key] = _element_arg(config, value)
        elif key in RATIONAL_ARGS:
            args[key] = frac(value)
        elif key in VECTOR_ARGS:
            args[key] = tuple(frac(x) for x in value)
        elif key == "gen":
            args[key] = config.names.index(value) if isinstance(value, str) else int(value)
        elif key in ("algebra_ctx", "es"):
            args[key] = parse_ctx(config, value)
        elif key == "inner":
            args[key] = parse_descriptor(config, value)
        elif key == "ops":
            args[key] = tuple(parse_descriptor(config, d) for d in value)
        elif key == "terms":
            args[key] = tuple((frac(c), parse_descriptor(config, d)) for c, d in value)
        else:
            args[key] = value
    return ModeDescriptor(kind, tuple(sorted(args.items(), key=lambda kv: kv[0])))


def apply_json(op: dict, to) -> list:
    """Evaluate the operator JSON on the element JSON; returns the result's JSON."""
    config = parse_case(op.get("case"))
    desc = parse_descriptor(config, op)
    ctx = parse_ctx(config, op.get("ctx"))
    w = parse_element(to)
    try:
        return element_to_json(apply_mode(config, desc, w, ctx))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


__all__ = ["apply_json", "parse_case", "parse_ctx", "parse_descriptor", "parse_element"]
