"""Smoke tests for the compiled Python bindings."""

import math

import numpy as np
import pytest

import lambda_esd as le


def bell() -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = 0.5
    rho[0, 3] = rho[3, 0] = 0.5
    return rho


def test_bell_measures():
    result = le.lambda_(bell())
    assert result.lambda_ == pytest.approx(1.0, abs=1e-12)
    assert result.concurrence == pytest.approx(1.0, abs=1e-12)
    assert le.negativity(bell()) == pytest.approx(1.0, abs=1e-12)
    assert le.purity(bell()) == pytest.approx(1.0, abs=1e-12)
    assert le.concurrence(bell()) == pytest.approx(1.0, abs=1e-12)


def test_maximally_mixed():
    rho = np.eye(4, dtype=complex) / 4.0
    result = le.lambda_(rho)
    assert result.lambda_ == pytest.approx(-0.5, abs=1e-12)
    assert result.concurrence == 0.0
    assert le.negativity(rho) == 0.0


def test_x_state_roundtrip_and_closed_form():
    params = le.XStateParams(a=1 / 12, b=5 / 12, c=5 / 12, d=1 / 12, z=5 / 12)
    rho = le.x_state(params)
    assert rho.shape == (4, 4)
    assert rho[1, 2] == pytest.approx(5 / 12)
    assert le.lambda_x_closed(params) == pytest.approx(
        le.lambda_(rho).lambda_, abs=1e-12
    )


def test_dephasing_golden_values():
    params = le.XStateParams(a=1 / 12, b=5 / 12, c=5 / 12, d=1 / 12, z=5 / 12)
    rho0 = le.x_state(params)
    ln5 = math.log(5.0)

    assert le.lambda_dephasing_closed(params, 1.0, ln5) == pytest.approx(0.0, abs=1e-14)
    evolved = le.dephase(rho0, 1.0, 1.0, 2 * ln5)
    assert le.lambda_(evolved).lambda_ == pytest.approx(-2 / 15, abs=1e-12)

    death = le.esd_time_dephasing(params, 1.0)
    assert death["time"] == pytest.approx(ln5, abs=1e-12)
    assert death["initially_separable"] is False


def test_jc_golden_values():
    alpha = math.pi / 6
    assert le.lambda_jc_psi(alpha, 1.0, math.pi / 2) == pytest.approx(
        math.sqrt(3) / 4, abs=1e-14
    )
    rho = le.jc_simulate("psi", alpha, math.pi / 2)
    assert le.lambda_(rho).lambda_ == pytest.approx(math.sqrt(3) / 4, abs=1e-10)

    onset = le.esd_onset_jc_phi(alpha, 1.0)
    assert onset == pytest.approx(2 * math.asin(3 ** -0.25), abs=1e-14)
    assert le.esd_onset_jc_phi(math.pi / 3, 1.0) is None


def test_find_crossings_with_python_model():
    report = le.find_crossings(
        lambda t: 2 * (5 / 12) * math.exp(-t) - 2 / 12, 0.0, 5.0, 501
    )
    assert report["classification"] == "MonotonicCrossing"
    assert len(report["crossings"]) == 1
    assert report["crossings"][0]["time"] == pytest.approx(math.log(5.0), abs=1e-8)
    assert report["crossings"][0]["direction"] == "down"
    assert report["window_limited"] is True


def test_partial_transpose():
    pt = le.partial_transpose(bell(), "B")
    # The Bell partial transpose swaps the coherence onto the inner block.
    assert pt[1, 2] == pytest.approx(0.5)
    assert pt[0, 3] == pytest.approx(0.0)


def test_validation_errors_are_typed():
    with pytest.raises(le.LambdaEsdError):
        le.lambda_(np.eye(4, dtype=complex))  # trace 4
    with pytest.raises(le.LambdaEsdError):
        le.x_state(le.XStateParams(a=0.25, b=0.25, c=0.25, d=0.25, z=0.5, w=0.5))
    with pytest.raises(le.LambdaEsdError):
        le.jc_simulate("phi", 0.5, -1.0)  # negative time
    with pytest.raises(le.LambdaEsdError):
        le.dephase(bell(), -1.0, 1.0, 0.5)  # negative rate


def test_alias_and_repr():
    assert le.separability_distance is le.lambda_
    result = le.lambda_(bell())
    assert "LambdaResult" in repr(result)
    assert len(result.sqrt_eigs) == 4
