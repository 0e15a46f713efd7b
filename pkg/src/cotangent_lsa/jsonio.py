"""Canonical JSON interchange for algebras, products, forms, certificates.

Scalars serialize as "p/q" (or "p" when the denominator is 1).  Canonical
bytes use sorted keys, no whitespace variance, and triplet lists sorted by
(i, j, k), so identical objects always produce identical files and digests.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .algebra_core import BasisLabel, LieAlgebra, LinearMap
from .errors import ParseError
from .exactnum import Scalar, format_scalar, parse_scalar
from .lsa import LsaProduct
from .symplectic import TwoForm


def canonical_bytes(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def digest(data: Any) -> str:
    if not isinstance(data, (bytes, bytearray)):
        data = canonical_bytes(data)
    return hashlib.sha256(data).hexdigest()


def save_file(path, obj: Any) -> str:
    data = canonical_bytes(obj)
    Path(path).write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def load_file(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path} does not hold a JSON object")
    return obj


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _as_index(value, where: str, upper: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < upper:
        raise ParseError(f"{where}: index {value!r} out of range 0..{upper - 1}")
    return value


def _as_scalar_str(value, where: str) -> Scalar:
    if not isinstance(value, str):
        raise ParseError(f"{where}: scalar must be a string, got {value!r}")
    return parse_scalar(value)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

def algebra_to_obj(L: LieAlgebra) -> dict:
    return {
        "dim": L.dim,
        "labels": [str(lbl) for lbl in L.labels],
        "brackets": [
            {"i": i, "j": j, "k": k, "c": format_scalar(c)}
            for (i, j, k, c) in L.triplets()
        ],
    }


def algebra_from_obj(obj: dict, where: str = "algebra") -> LieAlgebra:
    dim = _need(obj, "dim", where)
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"{where}: dim must be a positive integer")
    raw_labels = _need(obj, "labels", where)
    if not isinstance(raw_labels, list) or len(raw_labels) != dim:
        raise ParseError(f"{where}: labels must list exactly {dim} strings")
    labels = [BasisLabel.parse(str(s)) for s in raw_labels]
    triplets = []
    for ent in _need(obj, "brackets", where):
        i = _as_index(_need(ent, "i", where), where, dim)
        j = _as_index(_need(ent, "j", where), where, dim)
        k = _as_index(_need(ent, "k", where), where, dim)
        if not i < j:
            raise ParseError(f"{where}: bracket entry needs i < j, got ({i}, {j})")
        c = _as_scalar_str(_need(ent, "c", where), where)
        if c:
            triplets.append((i, j, k, c))
    try:
        return LieAlgebra.from_triplets(dim, labels, triplets)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# left-symmetric products
# ---------------------------------------------------------------------------

def lsa_to_obj(S: LsaProduct, meta: dict | None = None) -> dict:
    obj = algebra_to_obj(S.base)
    obj["products"] = [
        {"i": i, "j": j, "k": k, "p": format_scalar(c)}
        for (i, j, k, c) in S.triplets()
    ]
    if meta:
        obj["meta"] = meta
    return obj


def lsa_from_obj(obj: dict, where: str = "lsa") -> tuple[LsaProduct, dict | None]:
    base = algebra_from_obj(obj, where)
    triplets = []
    for ent in _need(obj, "products", where):
        i = _as_index(_need(ent, "i", where), where, base.dim)
        j = _as_index(_need(ent, "j", where), where, base.dim)
        k = _as_index(_need(ent, "k", where), where, base.dim)
        p = _as_scalar_str(_need(ent, "p", where), where)
        if p:
            triplets.append((i, j, k, p))
    try:
        product = LsaProduct.from_triplets(base, triplets)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    return product, obj.get("meta")


# ---------------------------------------------------------------------------
# two-forms
# ---------------------------------------------------------------------------

def form_to_obj(w: TwoForm, meta: dict | None = None) -> dict:
    obj = algebra_to_obj(w.base)
    entries = []
    for i in range(w.base.dim):
        for j in range(i + 1, w.base.dim):
            if w.omega[i][j]:
                entries.append({"i": i, "j": j, "w": format_scalar(w.omega[i][j])})
    obj["omega"] = entries
    if meta:
        obj["meta"] = meta
    return obj


def form_from_obj(obj: dict, where: str = "form") -> tuple[TwoForm, dict | None]:
    base = algebra_from_obj(obj, where)
    entries: dict[tuple[int, int], Scalar] = {}
    for ent in _need(obj, "omega", where):
        i = _as_index(_need(ent, "i", where), where, base.dim)
        j = _as_index(_need(ent, "j", where), where, base.dim)
        if not i < j:
            raise ParseError(f"{where}: form entry needs i < j, got ({i}, {j})")
        if (i, j) in entries:
            raise ParseError(f"{where}: duplicate form entry ({i}, {j})")
        v = _as_scalar_str(_need(ent, "w", where), where)
        if v:
            entries[(i, j)] = v
    try:
        form = TwoForm.from_upper_entries(base, entries)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    return form, obj.get("meta")


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def certificate_to_obj(phi: LinearMap, c: Scalar | None = None) -> dict:
    obj = {"phi": [[format_scalar(x) for x in row] for row in phi.rows]}
    if c is not None:
        obj["c"] = format_scalar(c)
    return obj


def certificate_from_obj(obj: dict, where: str = "certificate") -> tuple[LinearMap, Scalar | None]:
    raw = _need(obj, "phi", where)
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}: phi must be a nonempty row-major matrix")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != len(raw):
            raise ParseError(f"{where}: phi must be square")
        rows.append(tuple(_as_scalar_str(x, where) for x in row))
    scale = None
    if "c" in obj:
        scale = _as_scalar_str(obj["c"], where)
    return LinearMap(tuple(rows)), scale


def detect_kind(obj: dict) -> str:
    if "products" in obj:
        return "lsa"
    if "omega" in obj:
        return "form"
    return "algebra"
