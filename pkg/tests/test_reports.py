"""Deterministic text export helpers."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toruspert.reports import corrections_csv, fan_csv, float_cell, json_text, matrix_csv


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_cell_roundtrips(x):
    assert float(float_cell(x)) == x


def test_matrix_csv_layout():
    text = matrix_csv(np.array([[1.0, 2.0], [3.0, 4.0]]))
    rows = text.splitlines()
    assert len(rows) == 2
    assert [float(c) for c in rows[1].split(",")] == [3.0, 4.0]
    assert text.endswith("\n")
    with pytest.raises(ValueError):
        matrix_csv(np.zeros(3))


def test_corrections_csv_header():
    text = corrections_csv([0.5, -0.5])
    assert text.splitlines()[0] == "branch_index,correction"
    assert text.splitlines()[1].startswith("0,")


def test_fan_csv_header():
    text = fan_csv([(1e-2, 0, 0.99), (1e-2, 1, 1.01)])
    lines = text.splitlines()
    assert lines[0] == "epsilon,branch_index,eigenvalue"
    assert len(lines) == 3


def test_json_text_rejects_non_finite():
    assert json_text({"a": 1}) == '{\n  "a": 1\n}\n'
    with pytest.raises(ValueError):
        json_text({"a": float("nan")})
