"""Plain-text export helpers: CSV for matrices and fan plots, JSON text.

All output is deterministic: fixed key order, no timestamps, and
full-precision scientific notation for CSV floats so values round-trip
exactly.
"""
from __future__ import annotations

import json

import numpy as np


def float_cell(x: float) -> str:
    return f"{float(x):.17e}"


def matrix_csv(matrix) -> str:
    """Row-major CSV of a 2-D array, one matrix row per line."""
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {M.shape}")
    lines = [",".join(float_cell(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def corrections_csv(corrections) -> str:
    """CSV of first-order corrections: branch_index,correction."""
    lines = ["branch_index,correction"]
    for i, c in enumerate(corrections):
        lines.append(f"{i},{float_cell(c)}")
    return "\n".join(lines) + "\n"


def fan_csv(rows) -> str:
    """CSV of (epsilon, branch_index, eigenvalue) triples."""
    lines = ["epsilon,branch_index,eigenvalue"]
    for eps, idx, mu in rows:
        lines.append(f"{float_cell(eps)},{int(idx)},{float_cell(mu)}")
    return "\n".join(lines) + "\n"


def json_text(payload: dict) -> str:
    """Deterministic JSON rendering of a report dict."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"
