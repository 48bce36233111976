"""Reading tuples from JSON and writing reports.

Tuple files are JSON objects::

    {"n": 1, "m": 2,
     "matrices": [[[[0, 0], [0, 0]], [[1, 0], [0, 0]]]],
     "h": [[1, 0], [0, 0]],
     "gram": [1.0, 1.0]}

``matrices`` holds `n` matrices, each a row-major list of `m` rows of `m`
``[re, im]`` pairs (a flat list of ``m * m`` pairs is also accepted).
``h`` is a list of `m` pairs and the optional ``gram`` is a list of `m`
positive reals giving a diagonal weight.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exceptions import ValidationError
from .tuples import CyclicTuple, MomentTable
from . import multiindex as mi

FORMAT_NAME = "fockmodel-report"
FORMAT_VERSION = 1


def _number(x, field: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(f"expected a number, got {x!r}", field=field)
    if not math.isfinite(x):
        raise ValidationError("numbers must be finite", field=field)
    return float(x)


def _pair(x, field: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(_number(x, field))
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise ValidationError(f"expected an [re, im] pair, got {x!r}", field=field)
    return complex(_number(x[0], field), _number(x[1], field))


def _int(doc: dict, key: str, lo: int) -> int:
    if key not in doc:
        raise ValidationError(f"missing required field {key!r}", field=key)
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < lo:
        raise ValidationError(f"{key} must be an integer >= {lo}, got {v!r}", field=key)
    return v


def _matrix(raw, m: int, field: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise ValidationError("expected a list", field=field)
    if len(raw) == m * m and all(isinstance(r, list) and len(r) == 2 and not isinstance(r[0], list)
                                 for r in raw):
        rows = [raw[r * m:(r + 1) * m] for r in range(m)]
    else:
        rows = raw
    if len(rows) != m:
        raise ValidationError(f"expected {m} rows, got {len(rows)}", field=field)
    out = np.empty((m, m), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise ValidationError(f"row {r} must hold {m} entries", field=f"{field}[{r}]")
        for c, x in enumerate(row):
            out[r, c] = _pair(x, f"{field}[{r}][{c}]")
    return out


def tuple_from_dict(doc) -> CyclicTuple:
    """Parse the JSON tuple schema; errors name the offending field."""
    if not isinstance(doc, dict):
        raise ValidationError("top level must be an object", field="<root>")
    n = _int(doc, "n", 1)
    m = _int(doc, "m", 1)
    mats = doc.get("matrices")
    if mats is None:
        raise ValidationError("missing required field 'matrices'", field="matrices")
    if not isinstance(mats, list) or len(mats) != n:
        raise ValidationError(f"expected {n} matrices", field="matrices")
    matrices = [_matrix(x, m, f"matrices[{i}]") for i, x in enumerate(mats)]
    h = doc.get("h")
    if h is None:
        raise ValidationError("missing required field 'h'", field="h")
    if not isinstance(h, list) or len(h) != m:
        raise ValidationError(f"h must hold {m} entries", field="h")
    hv = np.array([_pair(x, f"h[{k}]") for k, x in enumerate(h)])
    gram = doc.get("gram")
    if gram is not None:
        if not isinstance(gram, list) or len(gram) != m:
            raise ValidationError(f"gram must hold {m} positive reals", field="gram")
        gram = np.array([_number(x, f"gram[{k}]") for k, x in enumerate(gram)])
        if np.any(gram <= 0):
            raise ValidationError("gram entries must be positive", field="gram")
    return CyclicTuple(matrices, hv, gram)


def read_tuple(path) -> CyclicTuple:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}", field="input") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}", field="input") from None
    return tuple_from_dict(doc)


def pair(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def tuple_to_dict(t: CyclicTuple) -> dict:
    """Inverse of :func:`tuple_from_dict`; non-diagonal weights are first made Euclidean."""
    if not np.array_equal(t.gram, np.diag(np.diag(t.gram))):
        t = t.to_euclidean()
    doc = {"n": t.n, "m": t.m,
           "matrices": [[[pair(x) for x in row] for row in a] for a in t.matrices],
           "h": [pair(x) for x in t.h]}
    if not t.has_identity_gram:
        doc["gram"] = [float(x.real) for x in np.diag(t.gram)]
    return doc


def moments_to_records(mt: MomentTable) -> dict:
    basis = mt.basis
    return {"n": mt.n, "d": mt.degree,
            "entries": [{"alpha": list(a), "beta": list(b), "value": pair(mt.values[i, j])}
                        for i, a in enumerate(basis) for j, b in enumerate(basis)]}


def moments_from_records(doc) -> MomentTable:
    try:
        n, d = int(doc["n"]), int(doc["d"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("moment header needs integer n and d", field="n") from None
    idx = mi.index_map(n, d)
    vals = np.zeros((len(idx), len(idx)), dtype=complex)
    seen = np.zeros(vals.shape, dtype=bool)
    for k, e in enumerate(doc.get("entries", [])):
        try:
            i, j = idx[tuple(e["alpha"])], idx[tuple(e["beta"])]
        except (KeyError, TypeError):
            raise ValidationError("bad multi-index", field=f"entries[{k}]") from None
        vals[i, j] = _pair(e.get("value"), f"entries[{k}].value")
        seen[i, j] = True
    if not seen.all():
        raise ValidationError("moment table is incomplete", field="entries")
    return MomentTable(n, d, vals)


def rep_to_records(rep) -> list:
    return [{"lambda": [pair(x) for x in term.point],
             "polys": [[{"alpha": list(a), "coeff": pair(c)} for a, c in sorted(q.items())]
                       for q in term.polys]}
            for term in rep.terms]


# -- machine-readable output ---------------------------------------------------

def _render(obj) -> str:
    """JSON text with every float printed to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    if isinstance(obj, (complex, np.complexfloating)):
        return _render(pair(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_render(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return _render(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    return json.dumps(str(obj))


class MachineWriter:
    """Line-oriented JSON records after a versioned header line."""

    def __init__(self, stream, command: str):
        self.stream = stream
        self.stream.write(_render({"format": FORMAT_NAME, "version": FORMAT_VERSION,
                                   "command": command}) + "\n")

    def record(self, kind: str, **fields):
        self.stream.write(_render({"record": kind, **fields}) + "\n")
