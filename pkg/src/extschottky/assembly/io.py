"""JSON description of an assembly.

    {
      "n": 2,
      "lam": 2.0,                       # default multiplier, optional
      "factors": [
        {"kind": "T3", "order": 4, "host": {"center": [5, 0], "radius": 1}},
        {"kind": "T2", "order": 2, "host": {"center": [-5, 0], "radius": 1}},
        {"kind": "T8", "orders": [3], "loxodromic": 1, "host": {...}}
      ],
      "hnn": [
        {"source": {...}, "target": {...}, "t": "[a, b; c, d] +", "name": "t"}
      ]
    }

``order`` is the order of the finite generator: d for T2/T4, 2d for T3/T5.
A circle is ``{"center": [x, y], "radius": r}`` with an optional
``"side": "exterior"``. A factor without ``host`` keeps its model
coordinates, which only makes sense for a single factor.
"""

from __future__ import annotations

import json

from ..circles import GeneralizedCircle
from ..moebius import format_transform, parse_transform
from .basic import DEFAULT_LAMBDA, KINDS, make_basic
from .group import GroupAssembly, free_product, hnn_extend


class SchemaError(ValueError):
    """The document does not follow the assembly schema."""


def circle_from_json(data) -> GeneralizedCircle:
    if not isinstance(data, dict):
        raise SchemaError(f"a circle must be an object, got {data!r}")
    try:
        x, y = data["center"]
        radius = float(data["radius"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad circle {data!r}: {exc}") from None
    side = data.get("side", "interior")
    if side not in ("interior", "exterior"):
        raise SchemaError(f"side must be 'interior' or 'exterior', got {side!r}")
    if not radius > 0:
        raise SchemaError(f"radius must be positive, got {radius}")
    return GeneralizedCircle.from_center_radius(complex(float(x), float(y)), radius, side == "interior")


def circle_to_json(c: GeneralizedCircle) -> dict:
    # adding 0.0 turns -0.0 into 0.0
    out = {"center": [c.center.real + 0.0, c.center.imag + 0.0], "radius": c.radius}
    if c.side == -1:
        out["side"] = "exterior"
    return out


def _int(data: dict, key: str, default=None):
    value = data.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{key} must be an integer, got {value!r}")
    return value


def factor_from_json(data, n: int, lam: float):
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError(f"a factor needs a kind, got {data!r}")
    kind = str(data["kind"]).upper()
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {data['kind']!r}")
    kw = {"lam": float(data.get("lam", lam))}
    order = _int(data, "order")
    if kind in ("T2", "T4"):
        if order is None:
            raise SchemaError(f"{kind} needs an order")
        kw["d"] = order
    elif kind in ("T3", "T5"):
        if order is None or order % 2:
            raise SchemaError(f"{kind} needs an even order, got {order!r}")
        kw["d"] = order // 2
    elif kind == "T8":
        orders = data.get("orders", [])
        if not isinstance(orders, list) or not all(isinstance(o, int) for o in orders):
            raise SchemaError("T8 orders must be a list of integers")
        kw["orders"] = tuple(orders)
        kw["loxodromic"] = _int(data, "loxodromic", 0)
    if "host" in data:
        kw["placement"] = circle_from_json(data["host"])
    return make_basic(kind, n, **kw)


def assembly_from_json(data) -> GroupAssembly:
    """Build (and check) the assembly a document describes."""
    if not isinstance(data, dict):
        raise SchemaError("the document must be a JSON object")
    n = _int(data, "n")
    if n is None or n < 1:
        raise SchemaError("n must be a positive integer")
    lam = float(data.get("lam", DEFAULT_LAMBDA))
    factors = data.get("factors", [])
    if not isinstance(factors, list):
        raise SchemaError("factors must be a list")
    specs = [factor_from_json(f, n, lam) for f in factors]
    group = free_product(specs, n=n) if specs else GroupAssembly((), n)
    for k, h in enumerate(data.get("hnn", [])):
        try:
            t = parse_transform(h["t"])
            src, dst = circle_from_json(h["source"]), circle_from_json(h["target"])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad hnn entry {k}: {exc}") from None
        group = hnn_extend(group, src, dst, t, name=str(h.get("name", f"t{k + 1}")))
    return group


def load_assembly(path) -> GroupAssembly:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from None
    return assembly_from_json(data)


def assembly_to_json(group: GroupAssembly) -> dict:
    """Document that rebuilds ``group`` (hosts are recorded, not generators)."""
    factors, hnn = [], []
    for f in group.factors:
        if f.kind == "HNN":
            p = f.pairing
            hnn.append({"source": circle_to_json(p.source), "target": circle_to_json(p.target),
                        "t": format_transform(f.pairing_generator), "name": p.generator})
            continue
        entry = {"kind": f.kind, "lam": f.params.get("lam", DEFAULT_LAMBDA)}
        d = f.params.get("d")
        if f.kind in ("T2", "T4"):
            entry["order"] = d
        elif f.kind in ("T3", "T5"):
            entry["order"] = 2 * d
        elif f.kind == "T8":
            entry["orders"] = list(f.params.get("orders", ()))
            entry["loxodromic"] = f.params.get("loxodromic", 0)
        entry["host"] = circle_to_json(f.params.get("host", f.hosts[0]))
        factors.append(entry)
    out = {"n": group.n, "factors": factors}
    if hnn:
        out["hnn"] = hnn
    return out
