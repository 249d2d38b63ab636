"""JSON encoding and decoding for every object kind.

Rationals serialize as canonical "p/q" strings (lowest terms, positive
denominator); no floating point appears anywhere in I/O. Labels are strings,
or tuples for tensor points; a tuple label used as an object key is encoded
as the compact JSON array of its parts, so plain string labels may not begin
with "[".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Optional

from .measure import Measure
from .metric import FinMetricSpace, ShortFunctional, ShortMap, tensor
from .monad import NestedMeasure
from .structure import InternalMonoid, Law

Resolver = Optional[Callable[[str, str], object]]


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {s!r}: {exc}") from None
    return value


def label_to_json(label):
    if isinstance(label, str):
        if label.startswith("["):
            raise ValueError(f"string labels may not begin with '[': {label!r}")
        return label
    if isinstance(label, tuple):
        return [label_to_json(part) for part in label]
    raise ValueError(f"label {label!r} is not JSON-serializable")


def label_from_json(obj):
    if isinstance(obj, str):
        if obj.startswith("["):
            raise ValueError(f"string labels may not begin with '[': {obj!r}")
        return obj
    if isinstance(obj, list):
        return tuple(label_from_json(part) for part in obj)
    raise ValueError(f"bad label {obj!r}")


def label_key(label) -> str:
    """Encode a label for use as a JSON object key."""
    encoded = label_to_json(label)
    if isinstance(encoded, str):
        return encoded
    return json.dumps(encoded, separators=(",", ":"))


def label_from_key(key: str):
    if key.startswith("["):
        return label_from_json(json.loads(key))
    return key


def _resolve(kind: str, obj, resolver: Resolver):
    if resolver is None:
        raise ValueError(f"cannot resolve {kind} reference {obj!r} without a workspace")
    return resolver(kind, obj)


def space_to_json(space: FinMetricSpace):
    if space.factors is not None:
        left, right = space.factors
        return {"tensor": [space_to_json(left), space_to_json(right)]}
    return {
        "points": [label_to_json(p) for p in space.points],
        "dist": [[format_fraction(x) for x in row] for row in space.dist],
    }


def space_from_json(obj, resolver: Resolver = None) -> FinMetricSpace:
    if isinstance(obj, str):
        return _resolve("space", obj, resolver)
    if not isinstance(obj, dict):
        raise ValueError(f"bad space {obj!r}")
    if "tensor" in obj:
        parts = obj["tensor"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise ValueError("tensor form needs exactly two factor spaces")
        return tensor(
            space_from_json(parts[0], resolver), space_from_json(parts[1], resolver)
        )
    points = [label_from_json(p) for p in obj.get("points", [])]
    dist = [[parse_fraction(x) for x in row] for row in obj.get("dist", [])]
    return FinMetricSpace(tuple(points), tuple(tuple(row) for row in dist))


def measure_to_json(p: Measure):
    return {
        "space": space_to_json(p.space),
        "weights": {
            label_key(pt): format_fraction(w)
            for pt, w in zip(p.space.points, p.weights)
            if w
        },
    }


def measure_from_json(obj, resolver: Resolver = None) -> Measure:
    if isinstance(obj, str):
        return _resolve("measure", obj, resolver)
    if not isinstance(obj, dict) or "space" not in obj:
        raise ValueError(f"bad measure {obj!r}")
    space = space_from_json(obj["space"], resolver)
    weights = {
        label_from_key(k): parse_fraction(v)
        for k, v in obj.get("weights", {}).items()
    }
    return Measure.from_mapping(space, weights)


def map_to_json(f: ShortMap):
    return {
        "domain": space_to_json(f.domain),
        "codomain": space_to_json(f.codomain),
        "table": {
            label_key(p): label_key(t) for p, t in zip(f.domain.points, f.table)
        },
    }


def map_from_json(obj, resolver: Resolver = None) -> ShortMap:
    if isinstance(obj, str):
        return _resolve("map", obj, resolver)
    if not isinstance(obj, dict) or "table" not in obj:
        raise ValueError(f"bad map {obj!r}")
    domain = space_from_json(obj["domain"], resolver)
    codomain = space_from_json(obj["codomain"], resolver)
    table = {
        label_from_key(k): label_from_key(v) for k, v in obj["table"].items()
    }
    return ShortMap.from_mapping(domain, codomain, table)


def functional_to_json(f: ShortFunctional):
    return {
        "domain": space_to_json(f.domain),
        "values": {
            label_key(p): format_fraction(v)
            for p, v in zip(f.domain.points, f.values)
        },
    }


def functional_from_json(obj, resolver: Resolver = None) -> ShortFunctional:
    domain = space_from_json(obj["domain"], resolver)
    values = {label_from_key(k): parse_fraction(v) for k, v in obj["values"].items()}
    return ShortFunctional.from_mapping(domain, values)


def nested_to_json(mu: NestedMeasure):
    return {
        "base": space_to_json(mu.base),
        "inner": [measure_to_json(m) for m in mu.inner],
        "weights": [format_fraction(w) for w in mu.weights],
    }


def nested_from_json(obj, resolver: Resolver = None) -> NestedMeasure:
    if isinstance(obj, str):
        return _resolve("nested", obj, resolver)
    if not isinstance(obj, dict) or "base" not in obj:
        raise ValueError(f"bad nested measure {obj!r}")
    base = space_from_json(obj["base"], resolver)
    inner = tuple(measure_from_json(m, resolver) for m in obj.get("inner", []))
    weights = tuple(parse_fraction(w) for w in obj.get("weights", []))
    return NestedMeasure(base, inner, weights)


def monoid_to_json(m: InternalMonoid):
    return {
        "carrier": space_to_json(m.carrier),
        "mult": map_to_json(m.mult),
        "unit": label_to_json(m.unit),
    }


def monoid_from_json(obj, resolver: Resolver = None) -> InternalMonoid:
    if isinstance(obj, str):
        return _resolve("monoid", obj, resolver)
    if not isinstance(obj, dict) or "carrier" not in obj:
        raise ValueError(f"bad monoid {obj!r}")
    carrier = space_from_json(obj["carrier"], resolver)
    mult = map_from_json(obj["mult"], resolver)
    unit = label_from_json(obj["unit"])
    return InternalMonoid(carrier, mult, unit)


def law_to_json(law: Law):
    return measure_to_json(law.measure)


def law_from_json(obj, resolver: Resolver = None) -> Law:
    measure = measure_from_json(obj, resolver)
    return Law(measure.space, measure)


# Typed wrappers used to serialize law-suite instances and counterexamples.

_ENCODERS = {}
_DECODERS = {}


def _register(type_name, cls, encode, decode):
    _ENCODERS[cls] = (type_name, encode)
    _DECODERS[type_name] = decode


_register("space", FinMetricSpace, space_to_json, space_from_json)
_register("map", ShortMap, map_to_json, map_from_json)
_register("measure", Measure, measure_to_json, measure_from_json)
_register("functional", ShortFunctional, functional_to_json, functional_from_json)
_register("nested", NestedMeasure, nested_to_json, nested_from_json)
_register("monoid", InternalMonoid, monoid_to_json, monoid_from_json)
_register("law", Law, law_to_json, law_from_json)


def value_to_json(value):
    """Encode a typed value as {"type": ..., "value": ...}."""
    for cls, (type_name, encode) in _ENCODERS.items():
        if isinstance(value, cls):
            return {"type": type_name, "value": encode(value)}
    if isinstance(value, bool):
        return {"type": "bool", "value": value}
    if isinstance(value, int):
        return {"type": "int", "value": value}
    if isinstance(value, Fraction):
        return {"type": "rational", "value": format_fraction(value)}
    if isinstance(value, (str, tuple)):
        return {"type": "point", "value": label_to_json(value)}
    if isinstance(value, list):
        return {"type": "list", "value": [value_to_json(v) for v in value]}
    raise ValueError(f"cannot encode {value!r}")


def value_from_json(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError(f"bad typed value {obj!r}")
    t, v = obj["type"], obj.get("value")
    if t in _DECODERS:
        return _DECODERS[t](v)
    if t == "bool":
        return bool(v)
    if t == "int":
        return int(v)
    if t == "rational":
        return parse_fraction(v)
    if t == "point":
        return label_from_json(v)
    if t == "list":
        return [value_from_json(x) for x in v]
    raise ValueError(f"unknown value type {t!r}")


def instance_to_json(instance: dict):
    return {name: value_to_json(value) for name, value in instance.items()}


def instance_from_json(obj) -> dict:
    if not isinstance(obj, dict):
        raise ValueError("an instance must be a JSON object")
    return {name: value_from_json(value) for name, value in obj.items()}


def dumps(obj, pretty: bool = False) -> str:
    """Deterministic JSON text: keys sorted, no floats anywhere."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
