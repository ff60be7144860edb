"""JSON reading and writing for models, elements, intervals and CFP instances.

Model files::

    {"kind": "numerical", "generators": [3, 4], "order_mode": "algebraic", "element_bound": 200}
    {"kind": "affine", "dimension": 2, "generators": [[1, 0], [1, 2]]}
    {"kind": "direct_sum", "components": [{...}, {...}]}

Integers may be given as base-10 strings. Direct-sum elements are lists of
``[component index, element]`` pairs. Intervals are ``{"principal": e}``,
``{"chain": {"preamble": [...], "increment": e}}`` or ``"top"``; a bare
element is read as a principal interval. Sequences are
``{"preamble": [...], "period": [...]}``.
"""
from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .completion import TOP, CfpInstance, ChainGenerated, Completion, Principal, SequenceDescriptor, Top
from .errors import OscompError, ParseError
from .semigroup import (
    DEFAULT_ELEMENT_BOUND,
    AffineSemigroup,
    DirectSum,
    NumericalSemigroup,
    OrderMode,
    SemigroupModel,
    SumElem,
    _to_int,
)


def model_from_json(obj, location="model") -> SemigroupModel:
    if not isinstance(obj, dict):
        raise ParseError("a model must be a JSON object", location)
    kind = obj.get("kind")
    try:
        mode = OrderMode(obj.get("order_mode", "algebraic"))
    except ValueError:
        raise ParseError(f"unknown order_mode {obj.get('order_mode')!r}", f"{location}.order_mode") from None
    bound = _to_int(obj.get("element_bound", DEFAULT_ELEMENT_BOUND), f"{location}.element_bound")
    try:
        if kind == "numerical":
            gens = tuple(_to_int(g, f"{location}.generators") for g in _list(obj, "generators", location))
            return NumericalSemigroup(gens, mode, bound)
        if kind == "affine":
            gens = _list(obj, "generators", location)
            dim = obj.get("dimension", len(gens[0]) if gens else None)
            if dim is None:
                raise ParseError("an affine model without generators needs a dimension", f"{location}.dimension")
            return AffineSemigroup(dim, tuple(tuple(g) for g in gens), mode, bound)
        if kind == "direct_sum":
            comps = tuple(
                model_from_json(c, f"{location}.components[{i}]")
                for i, c in enumerate(_list(obj, "components", location))
            )
            return DirectSum(comps, mode, bound)
    except ParseError as exc:
        if not exc.location:
            raise ParseError(exc.message, location) from None
        raise
    raise ParseError(f"unknown model kind {kind!r}", f"{location}.kind")


def _list(obj, key, location):
    value = obj.get(key)
    if not isinstance(value, list):
        raise ParseError(f"{key} must be a list", f"{location}.{key}")
    return value


def model_to_json(model: SemigroupModel) -> dict:
    out = {"kind": model.kind}
    if isinstance(model, NumericalSemigroup):
        out["generators"] = list(model.generators)
    elif isinstance(model, AffineSemigroup):
        out["dimension"] = model.dimension
        out["generators"] = [list(g) for g in model.generators]
    else:
        out["components"] = [model_to_json(c) for c in model.components]
    out["order_mode"] = model.order_mode.value
    out["element_bound"] = model.element_bound
    return out


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def load_model(path) -> SemigroupModel:
    return model_from_json(load_json(path), str(path))


def element_from_json(model, obj):
    try:
        return model.normalize(obj)
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"cannot read element {obj!r}: {exc}") from None


def element_to_json(model, e):
    if isinstance(e, SumElem):
        return [[i, element_to_json(model.components[i], v)] for i, v in e.terms]
    if isinstance(e, tuple):
        return list(e)
    return e


def interval_from_json(completion: Completion, obj, location="interval"):
    if obj == "top" or (isinstance(obj, dict) and obj.get("top")):
        return TOP
    if isinstance(obj, dict) and "principal" in obj:
        return _wrap(lambda: completion.principal(obj["principal"]), location)
    if isinstance(obj, dict) and "chain" in obj:
        chain = obj["chain"]
        if not isinstance(chain, dict) or "increment" not in chain:
            raise ParseError("a chain needs a preamble and an increment", location)
        return _wrap(lambda: completion.chain(chain.get("preamble", []), chain["increment"]), location)
    return _wrap(lambda: completion.principal(obj), location)


def _wrap(fn, location):
    try:
        return fn()
    except ParseError as exc:
        raise ParseError(exc.message, exc.location or location) from None
    except OscompError as exc:
        raise ParseError(str(exc), location) from None


def interval_to_json(model, interval):
    if isinstance(interval, Top):
        return "top"
    if isinstance(interval, Principal):
        return {"principal": element_to_json(model, interval.g)}
    return {"chain": {"preamble": [element_to_json(model, p) for p in interval.preamble],
                      "increment": element_to_json(model, interval.increment)}}


def sequence_from_json(completion: Completion, obj, location="sequence") -> SequenceDescriptor:
    if not isinstance(obj, dict) or "period" not in obj:
        raise ParseError("a sequence needs a non-empty period", location)
    pre = obj.get("preamble", [])
    period = obj["period"]
    if not isinstance(pre, list) or not isinstance(period, list) or not period:
        raise ParseError("preamble and period must be lists, period non-empty", location)
    return SequenceDescriptor(
        tuple(interval_from_json(completion, v, f"{location}.preamble[{i}]") for i, v in enumerate(pre)),
        tuple(interval_from_json(completion, v, f"{location}.period[{i}]") for i, v in enumerate(period)),
    )


def instance_from_json(completion: Completion, obj, location="instance") -> CfpInstance:
    if not isinstance(obj, dict):
        raise ParseError("an instance must be a JSON object", location)
    for key in ("x_prime", "m", "y_seq"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", location)
    m = _to_int(obj["m"], f"{location}.m")
    x_seq = obj.get("x_seq")
    x = obj.get("x")
    return CfpInstance(
        interval_from_json(completion, obj["x_prime"], f"{location}.x_prime"),
        m,
        sequence_from_json(completion, obj["y_seq"], f"{location}.y_seq"),
        sequence_from_json(completion, x_seq, f"{location}.x_seq") if x_seq is not None else None,
        interval_from_json(completion, x, f"{location}.x") if x is not None else None,
    )


def instance_to_json(model, instance: CfpInstance) -> dict:
    def seq(s):
        return {"preamble": [interval_to_json(model, v) for v in s.preamble],
                "period": [interval_to_json(model, v) for v in s.period]}

    out = {"x_prime": interval_to_json(model, instance.x_prime), "m": instance.m, "y_seq": seq(instance.y_seq)}
    if instance.x_seq is not None:
        out["x_seq"] = seq(instance.x_seq)
    if instance.x is not None:
        out["x"] = interval_to_json(model, instance.x)
    return out


def jsonable(obj, model=None):
    """Plain JSON structure for results: dataclasses become objects,
    fractions ``"p/q"`` strings, enums their values."""
    if isinstance(obj, SemigroupModel):
        return model_to_json(obj)
    if isinstance(obj, Completion):
        return {"completion_of": model_to_json(obj.base)}
    if isinstance(obj, (Principal, ChainGenerated, Top)) and model is not None:
        return interval_to_json(model, obj)
    if isinstance(obj, Top):
        return "top"
    if isinstance(obj, SumElem):
        return [[i, jsonable(v)] for i, v in obj.terms]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, float):
        return obj
    if dataclasses.is_dataclass(obj):
        return {
            f.name: jsonable(getattr(obj, f.name), model)
            for f in dataclasses.fields(obj)
            if not f.name.startswith("_") and f.name != "model"
        }
    if isinstance(obj, dict):
        return {_key(k): jsonable(v, model) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, model) for v in obj]
    return repr(obj)


def _key(k):
    if isinstance(k, str):
        return k
    return json.dumps(jsonable(k), separators=(",", ":"))


def dumps(obj, model=None, indent=2) -> str:
    return json.dumps(jsonable(obj, model), indent=indent, sort_keys=True)
