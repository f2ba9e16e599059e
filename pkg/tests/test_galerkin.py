"""Truncated-operator cross-checks of the perturbative predictions."""
from __future__ import annotations

import math

import numpy as np
import pytest

from toruspert import (
    CouplingTooLargeError,
    PotentialSpec,
    ResourceLimitError,
    assemble_galerkin,
    eigen_near,
    first_order_corrections,
    fourier_coefficient,
    validate_first_order,
)

CIRCLE = PotentialSpec(n=1, alpha=(1.0,))


def test_operator_structure():
    op = assemble_galerkin(CIRCLE, 1, 0.25, 2)
    assert op.basis == ((-2,), (-1,), (0,), (1,), (2,))
    assert op.size == 5
    H = op.matrix
    assert np.array_equal(H, H.T)
    assert np.array_equal(np.diag(H), [4.0, 1.0, 0.0, 1.0, 4.0])
    for i, mi in enumerate(op.basis):
        for j, mj in enumerate(op.basis):
            if i == j:
                continue
            t = tuple(a - b for a, b in zip(mi, mj))
            assert H[i, j] == 0.25 * fourier_coefficient(CIRCLE, t)


def test_operator_keeps_constant_on_diagonal():
    spec = PotentialSpec(n=1, alpha=(1.0,), subtract_constant=False)
    op = assemble_galerkin(spec, 1, 0.5, 1)
    assert np.allclose(np.diag(op.matrix), [1.5, 0.5, 1.5], atol=1e-15, rtol=0)


def test_eigen_near_unperturbed():
    op = assemble_galerkin(CIRCLE, 1, 0.0, 2)
    assert eigen_near(op, 1, 2).tolist() == [1.0, 1.0]
    assert eigen_near(op, 1, 3).tolist() == [0.0, 1.0, 1.0]
    # distance ties (0 and 4 from lambda0=2) resolve toward the smaller
    assert eigen_near(op, 2, 3).tolist() == [0.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        eigen_near(op, 1, 0)
    with pytest.raises(ValueError):
        eigen_near(op, 1, 6)


def test_circle_validation_passes():
    val = validate_first_order(CIRCLE, 1, 1, [1e-2, 1e-3], cutoff=8)
    assert val.multiplicity == 2
    assert val.passed
    assert val.cutoff_shift == 0.0
    assert val.cutoff_converged is True
    assert val.formal_warning is None
    # deviation from first order is dominated by the eps^2 term
    assert val.rows[0].max_error == pytest.approx(2.25e-3, rel=0.05)
    assert val.rows[1].max_error == pytest.approx(2.25e-4, rel=0.05)
    t = val.trend[0]
    assert (t.band_low, t.band_high) == (pytest.approx(0.02), pytest.approx(0.5))
    assert t.ratio == pytest.approx(0.1, rel=0.01)
    assert t.ok


def test_circle_cluster_tracks_predictions():
    rep = first_order_corrections(CIRCLE, 1, 1)
    val = validate_first_order(CIRCLE, 1, 1, [1e-3], cutoff=8)
    d = np.asarray(val.rows[0].d)
    assert np.abs(d - rep.corrections).max() <= 5e-4
    assert list(val.first_order) == list(rep.corrections)


def test_torus_validation_passes():
    spec = PotentialSpec(n=2, alpha=(1.0, 2.0), subtract_constant=True)
    val = validate_first_order(spec, 5, 2, [1e-2, 1e-3], cutoff=8)
    assert val.multiplicity == 8
    assert val.passed
    assert val.rows[0].max_error <= 5e-3
    assert val.rows[1].max_error <= 5e-4
    assert val.trend[0].ok
    assert val.cutoff_shift is not None and val.cutoff_shift < 1e-12


def test_zero_coupling_row_is_trivial():
    val = validate_first_order(CIRCLE, 1, 1, [1e-3, 0.0], cutoff=8)
    row = val.rows[1]
    assert row.epsilon == 0.0
    assert row.d is None
    assert row.max_error == 0.0
    assert row.eigenvalues == (1.0, 1.0)
    assert val.trend[0].ratio is None and val.trend[0].ok
    assert val.passed


def test_formal_spec_skips_cutoff_check():
    spec = PotentialSpec(n=2, alpha=(1.0, 0.0), subtract_constant=False)
    val = validate_first_order(spec, 1, 2, [1e-3], cutoff=4)
    assert val.formal_warning is not None
    assert val.cutoff_shift is None
    assert val.cutoff_converged is None
    assert val.passed


def test_strong_coupling_detected():
    spec = PotentialSpec(n=2, alpha=(0.1, 0.1), subtract_constant=True)
    with pytest.raises(CouplingTooLargeError, match="not isolated"):
        validate_first_order(spec, 5, 2, [0.6], cutoff=5)


def test_cutoff_must_cover_eigenspace():
    spec = PotentialSpec(n=2, alpha=(1.0, 2.0), subtract_constant=True)
    with pytest.raises(ValueError, match="does not contain"):
        validate_first_order(spec, 9, 2, [1e-3], cutoff=2)


def test_epsilon_list_validation():
    for bad in ([], [1e-3, 1e-2], [1.0], [-1e-3], [1e-2, 1e-2]):
        with pytest.raises(ValueError):
            validate_first_order(CIRCLE, 1, 1, bad, cutoff=8)


def test_operator_validation():
    with pytest.raises(ValueError):
        assemble_galerkin(CIRCLE, 2, 1e-3, 4)
    with pytest.raises(ValueError):
        assemble_galerkin(CIRCLE, 1, 1.0, 4)
    with pytest.raises(ValueError):
        assemble_galerkin(CIRCLE, 1, -0.1, 4)
    with pytest.raises(ValueError):
        assemble_galerkin(CIRCLE, 1, 1e-3, 0)
    spec2 = PotentialSpec(n=2, alpha=(1.0, 1.0))
    with pytest.raises(ResourceLimitError):
        assemble_galerkin(spec2, 2, 1e-3, 75)


def test_report_serialization():
    val = validate_first_order(CIRCLE, 1, 1, [1e-2, 1e-3], cutoff=8)
    d = val.to_dict()
    assert d["schema"] == 1
    assert d["kind"] == "oracle_report"
    assert d["lambda0"] == 1 and d["n"] == 1
    assert d["passed"] is True
    assert len(d["rows"]) == 2
    assert len(d["trend"]) == 1
    assert d["trend"][0]["band"] == [pytest.approx(0.02), pytest.approx(0.5)]
    fan = val.fan_rows()
    assert len(fan) == 4
    assert fan[0] == (1e-2, 0, val.rows[0].eigenvalues[0])
    assert fan[3] == (1e-3, 1, val.rows[1].eigenvalues[1])
