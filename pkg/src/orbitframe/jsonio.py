"""JSON encoding for reports and configs.

Complex numbers travel as ``[re, im]`` pairs; plain reals are accepted on
input.  Floats are written with 12 significant digits so repeated runs give
byte-identical output.
"""
from __future__ import annotations

import dataclasses
import json

import numpy as np

SIG_DIGITS = 12


def _real(x: float) -> float:
    x = float(x)
    if not np.isfinite(x):
        return None
    r = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if r == 0 else r


def to_jsonable(obj):
    """Recursively convert numpy arrays, complex numbers and dataclasses to JSON types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "as_dict"):
            return to_jsonable(obj.as_dict())
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            if np.all(obj.imag == 0):
                obj = obj.real
            else:
                return to_jsonable(np.stack([obj.real, obj.imag], axis=-1).tolist())
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _real(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_real(obj.real), _real(obj.imag)] if obj.imag != 0 else _real(obj.real)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def parse_array(data, ndim: int) -> np.ndarray:
    """Complex array of the given rank from nested lists of reals or ``[re, im]`` pairs."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim == ndim + 1 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != ndim:
        raise ValueError(f"expected a rank-{ndim} array, got shape {arr.shape}")
    return arr.astype(complex)


def parse_complex(data) -> complex:
    if isinstance(data, (list, tuple)):
        if len(data) != 2:
            raise ValueError("complex numbers are [re, im] pairs")
        return complex(float(data[0]), float(data[1]))
    return complex(float(data))
