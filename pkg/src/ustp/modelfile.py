"""Model files: JSON schema, positioned diagnostics, and LP text export.

A model document is a UTF-8 JSON object with these top-level keys
(all indices 1-based, matching printed reports):

* ``dimensions``: {"m", "n", "l", "r", "K"} positive integers.
* ``costs``: nested arrays [t][p][i][j][k] of uncertain-value records.
* ``supply`` [p][i], ``demand`` [p][j], ``capacity`` [k]: uncertain-value
  records.
* ``confidence``: {"gamma" [p][i], "beta" [p][j], "delta" [k]} of reals in
  (0, 1); each may be given as a single scalar to apply everywhere.
* ``forbidden``: array of [p, i, j, k] quadruples (may be empty or absent).

An uncertain-value record is {"family": "linear"|"zigzag"|"normal",
"params": [...]} — linear [a, b], zigzag [a, b, c], normal [e, sigma].

Loading reports every problem it can find at once, each diagnostic naming
the offending key path. The bundled example instance ships inside the
package and is reachable by its bare file name from the CLI.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import InvalidModelError
from .model import MmstpModel, validate
from .simplex import GE
from .transform import DeterministicModel
from .uncertain import Family, UncertainValue

BUNDLED_EXAMPLE = "paper_section5.json"

_DIM_KEYS = ("m", "n", "l", "r", "K")


def bundled_example_path() -> Path:
    """Filesystem path of the packaged example model."""
    return Path(resources.files("ustp").joinpath("data", BUNDLED_EXAMPLE))


def resolve_model_path(name: str) -> Path:
    """Interpret a --model argument: a real path, or a bundled file name."""
    p = Path(name)
    if p.exists():
        return p
    if p.name == name and name == BUNDLED_EXAMPLE:
        return bundled_example_path()
    return p  # let load_model produce the I/O diagnostic


def _record(obj, path: str, diags: list[str]):
    """Parse one uncertain-value record; None plus a diagnostic on failure."""
    if not isinstance(obj, dict):
        diags.append(f"{path}: expected an object with family/params, got {obj!r}")
        return None
    family = obj.get("family")
    params = obj.get("params")
    try:
        fam = Family(family)
    except ValueError:
        diags.append(f"{path}.family: unknown family {family!r}")
        return None
    if not isinstance(params, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in params
    ):
        diags.append(f"{path}.params: expected an array of numbers, got {params!r}")
        return None
    try:
        return UncertainValue(fam, tuple(params))
    except ValueError as exc:
        diags.append(f"{path}: {exc}")
        return None


def _nested(obj, dims, path, parse_leaf, diags):
    """Walk nested arrays of the exact shape `dims`, parsing leaves.

    Shape errors are reported at the level they occur; leaf errors carry
    the full 1-based path.
    """
    if not dims:
        return parse_leaf(obj, path, diags)
    if not isinstance(obj, list) or len(obj) != dims[0]:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        diags.append(f"{path}: expected an array of {dims[0]} entries, got {got}")
        return None
    return tuple(
        _nested(sub, dims[1:], f"{path}[{idx + 1}]", parse_leaf, diags)
        for idx, sub in enumerate(obj)
    )


def _confidence_leaf(obj, path, diags):
    if isinstance(obj, (int, float)) and not isinstance(obj, bool) and 0.0 < obj < 1.0:
        return float(obj)
    diags.append(f"{path}: confidence level must lie in (0,1), got {obj!r}")
    return None


def _confidence_block(obj, key, dims, diags):
    """A confidence entry: scalar broadcast or full nested array."""
    path = f"confidence.{key}"
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        leaf = _confidence_leaf(obj, path, diags)
        if leaf is None:
            return None
        out = leaf
        for d in reversed(dims):
            out = (out,) * d
        return out
    return _nested(obj, dims, path, _confidence_leaf, diags)


def model_from_document(doc) -> MmstpModel:
    """Build and fully validate a model from parsed JSON data.

    Raises InvalidModelError carrying every diagnostic found, not just the
    first.
    """
    diags: list[str] = []
    if not isinstance(doc, dict):
        raise InvalidModelError(["model document must be a JSON object"])
    missing = [k for k in ("dimensions", "costs", "supply", "demand", "capacity", "confidence") if k not in doc]
    if missing:
        raise InvalidModelError([f"missing top-level key {k!r}" for k in missing])

    dims = doc["dimensions"]
    if not isinstance(dims, dict):
        raise InvalidModelError(["dimensions must be an object"])
    sizes = {}
    for k in _DIM_KEYS:
        v = dims.get(k)
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            diags.append(f"dimensions.{k}: must be a positive integer, got {v!r}")
        else:
            sizes[k] = v
    if diags:
        raise InvalidModelError(diags)
    m, n, l, r, K = (sizes[k] for k in _DIM_KEYS)

    cost = _nested(doc["costs"], (K, r, m, n, l), "costs", _record, diags)
    supply = _nested(doc["supply"], (r, m), "supply", _record, diags)
    demand = _nested(doc["demand"], (r, n), "demand", _record, diags)
    capacity = _nested(doc["capacity"], (l,), "capacity", _record, diags)

    conf = doc["confidence"]
    gamma = beta = delta = None
    if not isinstance(conf, dict):
        diags.append("confidence: must be an object with gamma/beta/delta")
    else:
        missing = [k for k in ("gamma", "beta", "delta") if k not in conf]
        for k in missing:
            diags.append(f"confidence.{k}: missing")
        if not missing:
            gamma = _confidence_block(conf["gamma"], "gamma", (r, m), diags)
            beta = _confidence_block(conf["beta"], "beta", (r, n), diags)
            delta = _confidence_block(conf["delta"], "delta", (l,), diags)

    forbidden = set()
    raw_forbidden = doc.get("forbidden", [])
    if not isinstance(raw_forbidden, list):
        diags.append(f"forbidden: expected an array, got {type(raw_forbidden).__name__}")
    else:
        for idx, quad in enumerate(raw_forbidden):
            ok = (
                isinstance(quad, list)
                and len(quad) == 4
                and all(isinstance(v, int) and not isinstance(v, bool) for v in quad)
            )
            if not ok:
                diags.append(
                    f"forbidden[{idx + 1}]: expected a [p, i, j, k] quadruple, got {quad!r}"
                )
                continue
            p, i, j, k = quad
            if not (1 <= p <= r and 1 <= i <= m and 1 <= j <= n and 1 <= k <= l):
                diags.append(
                    f"forbidden[{idx + 1}]: route (p={p}, i={i}, j={j}, k={k}) is out of bounds"
                )
                continue
            forbidden.add((p - 1, i - 1, j - 1, k - 1))

    if diags:
        raise InvalidModelError(diags)

    model = MmstpModel(
        m=m, n=n, l=l, r=r, K=K,
        cost=cost, supply=supply, demand=demand, capacity=capacity,
        gamma=gamma, beta=beta, delta=delta,
        forbidden=frozenset(forbidden),
    )
    diags = validate(model)
    if diags:
        raise InvalidModelError(diags)
    return model


def load_model(path) -> MmstpModel:
    """Read, parse, and validate a model file.

    Raises InvalidModelError for unreadable files, malformed JSON (with
    line/column), and schema/validation problems.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidModelError([f"cannot read model file {path}: {exc}"]) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidModelError(
            [f"{path} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"]
        ) from exc
    return model_from_document(doc)


def _record_doc(v: UncertainValue) -> dict:
    return {"family": v.family.value, "params": list(v.params)}


def _map_nested(tensor, fn):
    if isinstance(tensor, tuple):
        return [_map_nested(sub, fn) for sub in tensor]
    return fn(tensor)


def document_from_model(model: MmstpModel) -> dict:
    """Serialize back to the JSON schema (1-based forbidden indices)."""
    return {
        "dimensions": {"m": model.m, "n": model.n, "l": model.l, "r": model.r, "K": model.K},
        "costs": _map_nested(model.cost, _record_doc),
        "supply": _map_nested(model.supply, _record_doc),
        "demand": _map_nested(model.demand, _record_doc),
        "capacity": _map_nested(model.capacity, _record_doc),
        "confidence": {
            "gamma": _map_nested(model.gamma, float),
            "beta": _map_nested(model.beta, float),
            "delta": _map_nested(model.delta, float),
        },
        "forbidden": [
            [p + 1, i + 1, j + 1, k + 1] for p, i, j, k in sorted(model.forbidden)
        ],
    }


def save_model(model: MmstpModel, path) -> None:
    Path(path).write_text(
        json.dumps(document_from_model(model), indent=2) + "\n", encoding="utf-8"
    )


def _lp_number(v: float) -> str:
    return format(float(v), ".12g")


def _lp_terms(coeffs: np.ndarray, names: list[str]) -> str:
    terms = []
    for c, name in zip(coeffs, names):
        if c == 0.0:
            continue
        sign = "-" if c < 0 else "+"
        mag = _lp_number(abs(c))
        terms.append(f"{sign} {mag} {name}")
    if not terms:
        return "0"
    first = terms[0]
    first = first[2:] if first.startswith("+ ") else "-" + first[2:]
    return " ".join([first] + terms[1:])


def lp_text(det: DeterministicModel, objective: np.ndarray, comment: str = "") -> str:
    """Render the deterministic constraints with one linear objective as LP text.

    Plain LP interchange format: Minimize / Subject To / Bounds / End, all
    variables nonnegative by default, columns named x_p*_i*_j*_k*.
    """
    names = det.column_names()
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"\\ {c}")
    lines.append("Minimize")
    lines.append(f" obj: {_lp_terms(np.asarray(objective, dtype=float), names)}")
    lines.append("Subject To")
    for label, row in zip(det.row_labels(), det.lp_rows()):
        rel = ">=" if row.relation == GE else "<="
        lines.append(f" {label}: {_lp_terms(row.coeffs, names)} {rel} {_lp_number(row.rhs)}")
    lines.append("Bounds")
    for name in names:
        lines.append(f" 0 <= {name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(det: DeterministicModel, objective, path, comment: str = "") -> None:
    Path(path).write_text(lp_text(det, objective, comment), encoding="utf-8")
