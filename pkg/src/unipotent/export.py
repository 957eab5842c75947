"""JSON forms of matrices; every entry is an exact string (``"p/q"`` or ``"r mod l"``)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .coeffs import QQ, CoeffField, Rationals, field_from_spec, format_exact, parse_exact


def field_name(field: CoeffField) -> str:
    return "Q" if isinstance(field, Rationals) else f"F{field.characteristic}"


def field_from_name(name: str) -> CoeffField:
    if name == "Q":
        return QQ
    if name.startswith("F"):
        return field_from_spec(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


def matrix_to_obj(m, field: CoeffField = QQ) -> list:
    return [[format_exact(field(x)) for x in row] for row in m]


def matrix_from_obj(obj: list, field: CoeffField = QQ) -> list:
    return [[field(parse_exact(s)) for s in row] for row in obj]


@dataclass(frozen=True)
class MatrixBundle:
    """A matrix together with what it represents: ``(a, field, action, parameter)``."""

    a: int
    field: CoeffField
    action: str  # monodromy | galois | change-of-generator | mult | ...
    parameter: Any
    matrix: list

    def to_obj(self) -> dict:
        return {
            "a": self.a,
            "field": field_name(self.field),
            "action": self.action,
            "parameter": _param_str(self.parameter),
            "matrix": matrix_to_obj(self.matrix, self.field),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True)

    @classmethod
    def from_obj(cls, obj: dict) -> "MatrixBundle":
        field = field_from_name(obj["field"])
        return cls(int(obj["a"]), field, obj["action"], obj["parameter"], matrix_from_obj(obj["matrix"], field))


def _param_str(p) -> Any:
    if p is None or isinstance(p, (str, bool)):
        return p
    if isinstance(p, (list, tuple)):
        return [_param_str(x) for x in p]
    if isinstance(p, int):
        return str(p)
    return format_exact(p)
