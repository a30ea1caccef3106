"""Byte-stable JSON: sorted keys, floats cut to 12 significant digits."""

from __future__ import annotations

import json
import math

import numpy as np


def canonical(obj):
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [canonical(obj.real), canonical(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return float(f"{x:.12g}") + 0.0
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=indent)


def dump_line(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"))
