"""JSON reading and writing for structures, cochains, specs and results.

Structure files look like::

    {"kind": "ternary", "size": 2, "table": [0, 1, 1, 0, 1, 0, 0, 1]}
    {"kind": "group", "size": 2, "table": [0, 1, 1, 0], "identity": 0}

Ternary tables are flattened in index order ``(x*n + y)*n + z`` and group
tables in order ``x*n + y``.  ``labels`` is optional in both.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .complexes import CochainSpace, CohomologyResult
from .core import GroupTable, TernaryTable
from .linalg import AbHom, FinAbGroup
from .transfers import ExtensionSpec, SesSpec

__all__ = [
    "InputError",
    "parse_json",
    "read_json",
    "canonical_json",
    "digest",
    "structure_from_json",
    "structure_to_json",
    "load_structure",
    "cochain_from_json",
    "cochain_to_json",
    "group_from_json",
    "group_to_json",
    "extension_spec_from_json",
    "extension_spec_to_json",
    "ses_spec_from_json",
    "ses_spec_to_json",
    "cohomology_to_json",
]


class InputError(ValueError):
    """Malformed or invalid input; the CLI maps it to exit status 2."""


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def read_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{p}: {exc.strerror or exc}") from None
    return parse_json(text, str(p))


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def _field(data: dict, key: str, what: str):
    if not isinstance(data, dict):
        raise InputError(f"{what}: expected a JSON object")
    if key not in data:
        raise InputError(f"{what}: missing field {key!r}")
    return data[key]


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what}: expected an integer, got {value!r}")
    return value


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list):
        raise InputError(f"{what}: expected an array")
    return [_int(v, f"{what}[{i}]") for i, v in enumerate(value)]


# ----------------------------------------------------------------------
# Structures
# ----------------------------------------------------------------------


def structure_from_json(data: dict, what: str = "structure") -> TernaryTable | GroupTable:
    kind = _field(data, "kind", what)
    n = _int(_field(data, "size", what), f"{what}.size")
    if n < 1:
        raise InputError(f"{what}.size: must be positive")
    flat = _int_list(_field(data, "table", what), f"{what}.table")
    labels = data.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or not all(isinstance(s, str) for s in labels)
    ):
        raise InputError(f"{what}.labels: expected an array of strings")
    try:
        if kind == "ternary":
            if len(flat) != n**3:
                raise InputError(f"{what}.table: expected {n**3} entries, got {len(flat)}")
            return TernaryTable.from_array(np.array(flat).reshape(n, n, n), labels)
        if kind == "group":
            if len(flat) != n**2:
                raise InputError(f"{what}.table: expected {n**2} entries, got {len(flat)}")
            e = _int(_field(data, "identity", what), f"{what}.identity")
            return GroupTable.from_array(np.array(flat).reshape(n, n), e, labels)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None
    raise InputError(f"{what}.kind: expected 'ternary' or 'group', got {kind!r}")


def structure_to_json(s: TernaryTable | GroupTable) -> dict:
    if isinstance(s, TernaryTable):
        out = {"kind": "ternary", "size": s.size, "table": s.table.ravel().tolist()}
    else:
        out = {
            "kind": "group",
            "size": s.size,
            "table": s.product.ravel().tolist(),
            "identity": int(s.identity),
        }
    if s.carrier.labels is not None:
        out["labels"] = list(s.carrier.labels)
    return out


def load_structure(path: str | Path) -> TernaryTable | GroupTable:
    return structure_from_json(read_json(path), str(path))


# ----------------------------------------------------------------------
# Groups and cochains
# ----------------------------------------------------------------------


def group_from_json(data, what: str = "coefficients") -> FinAbGroup:
    factors = _int_list(data, what)
    if any(d < 0 for d in factors):
        raise InputError(f"{what}: factors must be non-negative")
    return FinAbGroup(factors)


def group_to_json(G: FinAbGroup) -> list[int]:
    return list(G.moduli)


def cochain_from_json(data, space: CochainSpace, what: str = "cochain") -> np.ndarray:
    """Accept one coordinate vector per tuple; a bare integer is allowed when ``k = 1``."""
    count = space.indexer.count * space.blocks
    if not isinstance(data, list) or len(data) != count:
        raise InputError(f"{what}: expected an array of {count} values")
    k = space.k
    rows = []
    for i, v in enumerate(data):
        if k == 1 and isinstance(v, int) and not isinstance(v, bool):
            v = [v]
        row = _int_list(v, f"{what}[{i}]")
        if len(row) != k:
            raise InputError(f"{what}[{i}]: expected {k} coordinates")
        rows.append(row)
    return space.group.reduce(np.array(rows, dtype=np.int64).reshape(-1))


def cochain_to_json(v, space: CochainSpace) -> list[list[int]]:
    return np.asarray(space.group.reduce(np.asarray(v)), dtype=np.int64).reshape(-1, space.k).tolist()


def cohomology_to_json(r: CohomologyResult) -> dict:
    return {
        "invariant_factors": list(r.group.invariant_factors),
        "representatives": [cochain_to_json(v, r.space) for v in r.representatives],
    }


# ----------------------------------------------------------------------
# Specs
# ----------------------------------------------------------------------


def extension_spec_from_json(data: dict, what: str = "extension") -> ExtensionSpec:
    base = structure_from_json(_field(data, "base", what), f"{what}.base")
    if not isinstance(base, TernaryTable):
        raise InputError(f"{what}.base: must be a ternary structure")
    A = group_from_json(_field(data, "coefficients", what), f"{what}.coefficients")
    eta = cochain_from_json(_field(data, "eta", what), CochainSpace(base.size, 3, A), f"{what}.eta")
    flavor = data.get("flavor", "heap")
    try:
        return ExtensionSpec(base, A, eta, flavor)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def extension_spec_to_json(spec: ExtensionSpec) -> dict:
    return {
        "base": structure_to_json(spec.base),
        "coefficients": group_to_json(spec.coefficients),
        "eta": cochain_to_json(spec.eta, spec.space),
        "flavor": spec.flavor,
    }


def _matrix(value, what: str) -> np.ndarray:
    if not isinstance(value, list):
        raise InputError(f"{what}: expected a nested array")
    rows = [_int_list(r, f"{what}[{i}]") for i, r in enumerate(value)]
    if len({len(r) for r in rows}) > 1:
        raise InputError(f"{what}: rows have different lengths")
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def ses_spec_from_json(data: dict, what: str = "ses") -> SesSpec:
    H = group_from_json(_field(data, "sub", what), f"{what}.sub")
    E = group_from_json(_field(data, "total", what), f"{what}.total")
    G = group_from_json(_field(data, "quot", what), f"{what}.quot")
    try:
        return SesSpec(
            H, E, G,
            AbHom(H, E, _matrix(_field(data, "inclusion", what), f"{what}.inclusion")),
            AbHom(E, G, _matrix(_field(data, "projection", what), f"{what}.projection")),
            _matrix(_field(data, "section", what), f"{what}.section"),
        )
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def ses_spec_to_json(s: SesSpec) -> dict:
    return {
        "sub": group_to_json(s.sub),
        "total": group_to_json(s.total),
        "quot": group_to_json(s.quot),
        "inclusion": s.inclusion.matrix.tolist(),
        "projection": s.projection.matrix.tolist(),
        "section": np.asarray(s.section).tolist(),
    }
