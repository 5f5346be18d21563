"""JSON and CSV formats for states, entropy vectors, descriptors and reports.

All JSON is written by :func:`dumps`, which sorts nothing but is fully
deterministic: floats are printed with 17 significant digits so that a value
read back is bit-identical to the one written.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import fields, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .constructions import ConstructionDescriptor, Kind, rebuild
from .core import (
    ClassicalState,
    DensityMatrix,
    EntropyVector,
    RenyiOrder,
    SparsePureState,
    SubsetMask,
    WeightedSpectrum,
)
from .errors import RenyiConeError

State = Union[ClassicalState, SparsePureState, DensityMatrix]


# ----------------------------------------------------------------------------
# deterministic text


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise RenyiConeError(f"cannot serialize non-finite float {x!r} to JSON")
    if x == 0.0:
        return "0.0"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _plain(obj: Any) -> Any:
    """Convert numpy scalars, enums, orders, masks and dataclasses to JSON-ready values."""
    if isinstance(obj, RenyiOrder):
        return str(obj)
    if isinstance(obj, SubsetMask):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, Mapping):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in fields(obj)}
    return obj


def _emit(obj: Any, out: list[str], indent: int, level: int) -> None:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = ", " if not indent else ","
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(sep)
            out.append(pad)
            out.append(json.dumps(str(k)) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        scalar = all(not isinstance(v, (dict, list)) for v in obj)
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", " if scalar or not indent else ",")
            if not scalar:
                out.append(pad)
            _emit(v, out, indent, level + 1)
        out.append((end if not scalar else "") + "]")
    else:
        raise RenyiConeError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    out: list[str] = []
    _emit(_plain(obj), out, indent, 0)
    return "".join(out)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise RenyiConeError(f"invalid JSON: {exc}") from None


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise RenyiConeError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def write_text(path: Union[str, Path], text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _require(data: Mapping, key: str, what: str):
    if not isinstance(data, Mapping) or key not in data:
        raise RenyiConeError(f"{what} JSON is missing the field {key!r}")
    return data[key]


# ----------------------------------------------------------------------------
# orders, spectra, vectors


def order_to_json(order: RenyiOrder) -> str:
    return str(order)


def order_from_json(value) -> RenyiOrder:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return RenyiOrder.of(value)
    if not isinstance(value, str):
        raise RenyiConeError(f"alpha must be a string, got {value!r}")
    return RenyiOrder.parse(value)


def spectrum_to_json(spec: WeightedSpectrum) -> list:
    return [[float(v), int(m) if m < 2**53 else float(m)] for v, m in spec.atoms]


def spectrum_from_json(data) -> WeightedSpectrum:
    try:
        return WeightedSpectrum([(float(v), m) for v, m in data])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, RenyiConeError):
            raise
        raise RenyiConeError(f"spectrum must be a list of [value, multiplicity] pairs: {exc}") from None


def vector_to_json(vec: EntropyVector) -> dict:
    return {
        "n": vec.n,
        "alpha": None if vec.order is None else str(vec.order),
        "entries": vec.as_dict(),
    }


def vector_from_json(data: Mapping) -> EntropyVector:
    n = int(_require(data, "n", "entropy vector"))
    entries = _require(data, "entries", "entropy vector")
    alpha = data.get("alpha")
    order = None if alpha is None else order_from_json(alpha)
    if not isinstance(entries, Mapping):
        raise RenyiConeError("entropy vector entries must be an object keyed by subset strings")
    return EntropyVector.from_mapping(n, {k: float(v) for k, v in entries.items()}, order)


# ----------------------------------------------------------------------------
# descriptors

_SUBSET_PARAMS_PARTIES = {Kind.SPIKE_QUANTUM_GT1}


def descriptor_to_json(desc: ConstructionDescriptor) -> dict:
    """JSON form of a descriptor; subsets are digit strings and spectra atom lists."""
    params: dict[str, Any] = {}
    for key, value in desc.params.items():
        if key == "I":
            ref = desc.parties if desc.kind in _SUBSET_PARAMS_PARTIES else desc.n
            value = str(SubsetMask(int(value), ref))
        elif key == "generators":
            value = [str(SubsetMask(int(g), desc.n)) for g in value]
        elif key == "subsets":
            value = [str(SubsetMask(int(g), desc.n)) for g in value]
        elif key == "target":
            value = EntropyVector(desc.n, value).as_dict()
        elif isinstance(value, WeightedSpectrum):
            value = spectrum_to_json(value)
        params[key] = _plain(value)
    out = {"kind": desc.kind.value, "n": desc.n, "parties": desc.parties, **params}
    if desc.components:
        out["components"] = [descriptor_to_json(c) for c in desc.components]
    return out


def descriptor_from_json(data: Mapping) -> ConstructionDescriptor:
    """Rebuild a descriptor from its JSON form; derived fields are recomputed."""
    try:
        kind = Kind(_require(data, "kind", "descriptor"))
    except ValueError:
        raise RenyiConeError(f"unknown descriptor kind {data.get('kind')!r}") from None
    n = int(_require(data, "n", "descriptor"))
    p: dict[str, Any] = {"alpha": order_from_json(_require(data, "alpha", "descriptor"))}
    for key in ("s_bits", "H_R"):
        if key in data:
            p[key] = float(data[key])
    if "M" in data:
        M = data["M"]
        p["M"] = None if M is None else (tuple(int(m) for m in M) if isinstance(M, list) else int(M))
    if "I" in data:
        ref = n + 1 if kind in _SUBSET_PARAMS_PARTIES else n
        p["I"] = SubsetMask.parse(str(data["I"]), ref).bits
    if "generators" in data:
        p["generators"] = [SubsetMask.parse(str(g), n).bits for g in data["generators"]]
    if "R" in data:
        p["R"] = spectrum_from_json(data["R"])
    if "position" in data:
        p["position"] = int(data["position"])
    if "target" in data:
        target = data["target"]
        vec = EntropyVector.from_mapping(n, target) if isinstance(target, Mapping) else EntropyVector(n, target)
        p["target"] = list(vec.values)
    components = tuple(descriptor_from_json(c) for c in data.get("components", ()))
    try:
        return rebuild(kind, n, p, components)
    except KeyError as exc:
        raise RenyiConeError(f"{kind.value} descriptor JSON is missing the field {exc.args[0]!r}") from None


# ----------------------------------------------------------------------------
# states


def state_to_json(state: State, descriptor: Optional[ConstructionDescriptor] = None) -> dict:
    if isinstance(state, ClassicalState):
        out = {
            "type": "classical",
            "n": state.n,
            "alphabet_sizes": [int(m) for m in state.alphabet_sizes],
            "atoms": [
                {"x": [int(i) for i in row], "p": float(p)} for row, p in zip(state.indices, state.probs)
            ],
        }
    elif isinstance(state, SparsePureState):
        out = {
            "type": "pure",
            "n": state.n,
            "dims": [int(d) for d in state.dims],
            "amplitudes": [
                {"index": [int(i) for i in row], "re": float(a.real), "im": float(a.imag)}
                for row, a in zip(state.indices, state.amplitudes)
            ],
        }
    elif isinstance(state, DensityMatrix):
        out = {
            "type": "dense",
            "n": state.n,
            "dims": [int(d) for d in state.dims],
            "re": state.matrix.real.tolist(),
            "im": state.matrix.imag.tolist(),
        }
    else:
        raise RenyiConeError(f"cannot serialize state of type {type(state).__name__}")
    if descriptor is not None:
        out["descriptor"] = descriptor_to_json(descriptor)
    return out


def descriptor_only_json(descriptor: ConstructionDescriptor) -> dict:
    """State-file stand-in used when the explicit state exceeds its budget."""
    return {"type": "descriptor", "n": descriptor.parties, "descriptor": descriptor_to_json(descriptor)}


def _check_n(data: Mapping, n: int, what: str) -> None:
    if "n" in data and int(data["n"]) != n:
        raise RenyiConeError(f"{what} state declares n={data['n']} but has {n} parties")


def state_from_json(data: Mapping) -> tuple[Optional[State], Optional[ConstructionDescriptor]]:
    """Parse a state file; returns ``(state, descriptor)``, either of which may be ``None``."""
    kind = _require(data, "type", "state")
    desc = descriptor_from_json(data["descriptor"]) if data.get("descriptor") else None
    try:
        if kind == "classical":
            sizes = [int(m) for m in _require(data, "alphabet_sizes", "classical")]
            atoms = _require(data, "atoms", "classical")
            idx = np.array([a["x"] for a in atoms], dtype=np.int64).reshape(len(atoms), len(sizes))
            probs = np.array([float(a["p"]) for a in atoms])
            _check_n(data, len(sizes), kind)
            return ClassicalState(sizes, idx, probs), desc
        if kind == "pure":
            dims = [int(d) for d in _require(data, "dims", "pure")]
            amps = _require(data, "amplitudes", "pure")
            idx = np.array([a["index"] for a in amps], dtype=np.int64).reshape(len(amps), len(dims))
            vals = np.array([complex(float(a.get("re", 0.0)), float(a.get("im", 0.0))) for a in amps])
            _check_n(data, len(dims), kind)
            return SparsePureState(dims, idx, vals), desc
        if kind == "dense":
            dims = [int(d) for d in _require(data, "dims", "dense")]
            re = np.asarray(_require(data, "re", "dense"), dtype=float)
            im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
            _check_n(data, len(dims), kind)
            return DensityMatrix(dims, re + 1j * im), desc
        if kind == "descriptor":
            if desc is None:
                raise RenyiConeError("descriptor state JSON is missing the field 'descriptor'")
            return None, desc
    except (KeyError, TypeError) as exc:
        raise RenyiConeError(f"malformed {kind} state JSON: {exc!r}") from None
    raise RenyiConeError(f"unknown state type {kind!r}; expected classical, pure, dense or descriptor")


# ----------------------------------------------------------------------------
# CSV


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def vector_csv(vec: EntropyVector) -> str:
    return csv_text(("subset", "entropy_bits"), ((str(m), float(v)) for m, v in vec.items()))
