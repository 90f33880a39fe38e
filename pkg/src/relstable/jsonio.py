"""JSON interchange for groups, modules, morphisms, sequences, and chains.

One resolver serves the CLI: an argument containing a path separator is
read as a JSON file, anything else is looked up in the catalog.  All
matrices are nested arrays of residues; groups travel by table; modules
carry only their generator actions and are rebuilt by word evaluation,
so a written module re-ingests bit-identically.
"""

from __future__ import annotations

import json
import os
from typing import Any, Union

from . import catalog
from .ff import FpMatrix
from .groups import FiniteGroup, Subgroup
from .reps import Module, Morphism, ShortExactSequence, module_from_generators
from .triangles import Chain


class FormatError(ValueError):
    """Malformed or inconsistent JSON payload."""


def _require(obj: dict, key: str, context: str) -> Any:
    if key not in obj:
        raise FormatError(f"{context}: missing required key {key!r}")
    return obj[key]


def group_from_obj(obj: dict) -> FiniteGroup:
    table = _require(obj, "table", "group")
    generators = obj.get("generators")
    names = obj.get("names")
    g = FiniteGroup(table, generators, names)
    if "order" in obj and obj["order"] != g.order:
        raise FormatError(f"group: declared order {obj['order']} but table has {g.order} rows")
    return g


def group_to_obj(g: FiniteGroup) -> dict:
    return {
        "order": g.order,
        "table": g.table.tolist(),
        "generators": list(g.generators),
        "names": list(g.names),
    }


def _resolve_group(ref: Union[str, dict]) -> FiniteGroup:
    if isinstance(ref, dict):
        return group_from_obj(ref)
    payload = resolve(ref, expect="group")
    return payload


def module_from_obj(obj: dict) -> Module:
    group = _resolve_group(_require(obj, "group", "module"))
    p = int(_require(obj, "p", "module"))
    dim = int(_require(obj, "dim", "module"))
    gen_action_raw = _require(obj, "generator_action", "module")
    name_to_index = {name: i for i, name in enumerate(group.names)}
    gen_action: dict[int, FpMatrix] = {}
    for name, mat in gen_action_raw.items():
        if name not in name_to_index:
            raise FormatError(f"module: {name!r} is not an element of the group")
        gen_action[name_to_index[name]] = FpMatrix(p, mat)
    try:
        return module_from_generators(group, p, dim, gen_action)
    except ValueError as exc:
        raise FormatError(f"module: {exc}") from exc


def module_to_obj(m: Module) -> dict:
    return {
        "group": group_to_obj(m.group),
        "p": m.p,
        "dim": m.dim,
        "generator_action": {
            m.group.names[g]: m.act(g).tolist() for g in m.group.generators
        },
    }


def _resolve_module(ref: Union[str, dict]) -> Module:
    if isinstance(ref, dict):
        return module_from_obj(ref)
    return resolve(ref, expect="module")


def morphism_from_obj(obj: dict) -> Morphism:
    source = _resolve_module(_require(obj, "source", "morphism"))
    target = _resolve_module(_require(obj, "target", "morphism"))
    matrix = FpMatrix(source.p, _require(obj, "matrix", "morphism"))
    try:
        return Morphism(source, target, matrix)
    except ValueError as exc:
        raise FormatError(f"morphism: {exc}") from exc


def ses_from_obj(obj: dict) -> ShortExactSequence:
    inj = morphism_from_obj(_require(obj, "inj", "ses"))
    surj = morphism_from_obj(_require(obj, "surj", "ses"))
    try:
        return ShortExactSequence(inj, surj)
    except ValueError as exc:
        raise FormatError(f"ses: {exc}") from exc


def chain_from_obj(obj: dict) -> Chain:
    maps = [morphism_from_obj(m) for m in obj.get("maps", [])]
    if maps:
        return Chain.from_maps(maps)
    modules = obj.get("modules", [])
    if len(modules) != 1:
        raise FormatError("chain: need either maps or exactly one module")
    return Chain.single(_resolve_module(modules[0]))


def subgroup_from_obj(obj: dict) -> Subgroup:
    group = _resolve_group(_require(obj, "group", "subgroup"))
    elements = _require(obj, "elements", "subgroup")
    try:
        return Subgroup(group, elements)
    except ValueError as exc:
        raise FormatError(f"subgroup: {exc}") from exc


def payload_from_obj(obj: dict) -> Any:
    """Sniff the payload kind from its keys."""
    if not isinstance(obj, dict):
        raise FormatError(f"expected a JSON object, got {type(obj).__name__}")
    if "generator_action" in obj:
        return module_from_obj(obj)
    if "inj" in obj and "surj" in obj:
        return ses_from_obj(obj)
    if "maps" in obj or "modules" in obj:
        return chain_from_obj(obj)
    if "elements" in obj and "group" in obj:
        return subgroup_from_obj(obj)
    if "table" in obj:
        return group_from_obj(obj)
    if "source" in obj and "target" in obj and "matrix" in obj:
        return morphism_from_obj(obj)
    raise FormatError(f"cannot determine payload kind from keys {sorted(obj)}")


_KIND_BY_TYPE = {
    FiniteGroup: "group",
    Subgroup: "subgroup",
    Module: "module",
    ShortExactSequence: "ses",
    Chain: "chain",
    Morphism: "morphism",
}


def resolve(ref: str, expect: str | None = None) -> Any:
    """Resolve a CLI argument to a payload.

    References with a path separator are JSON files; bare names are
    catalog lookups (names win when the argument lacks a separator).
    """
    if os.sep in ref or (os.altsep is not None and os.altsep in ref):
        try:
            with open(ref, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise FormatError(f"cannot read {ref}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise FormatError(f"{ref} is not valid JSON: {exc}") from exc
        payload = payload_from_obj(obj)
    else:
        payload = catalog.get_example(ref).payload
    if expect is not None:
        kind = _KIND_BY_TYPE.get(type(payload))
        if kind != expect:
            raise FormatError(f"{ref} resolved to a {kind}, expected a {expect}")
    return payload


def write_module(path: str, m: Module) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(module_to_obj(m), fh, sort_keys=True, indent=2)
        fh.write("\n")
