import json
import math

import pytest

import sisfront


def test_params_and_equilibria():
    p = sisfront.params(beta=2, gamma=0.5, sigma=0.5, c=1)
    eq = sisfront.equilibria(p)
    assert eq["A"][0] == pytest.approx(0.5 / 1.75)
    assert eq["B"] == [1.0, 0.0, 0.0, 0.0]
    assert sisfront.case2_eigs_B(p)[0] == pytest.approx(-1.25 / 1.5)


def test_invalid_params_raise():
    with pytest.raises(sisfront.SisfrontError) as info:
        sisfront.params(beta=1, gamma=1)
    assert info.value.args[1] == "AdmissibilityViolation"


def test_case2_shot_reaches_disease_free_state():
    prof = sisfront.shoot(sisfront.params(c=1))
    assert prof["endpoint_gap"] < 1e-6
    assert prof["S"][-1] == pytest.approx(1.0, abs=1e-6)
    assert prof["I"][0] == 0.5


def test_case3_below_bound():
    p = sisfront.params(c=1, regime="case3")
    with pytest.raises(sisfront.SisfrontError) as info:
        sisfront.shoot(p)
    assert info.value.args[1] == "SpeedBelowBound"


def test_trap_and_wedge():
    p = sisfront.params(c=3)
    assert sisfront.trap_check_case2(p)["pass"]
    assert sisfront.trap_check_case3(p, 3, 1.5)["pass"]
    assert not sisfront.trap_check_case3(p, 3, 2.9)["pass"]
    assert sisfront.wedge_rotation(0.7, 0.2, p) == pytest.approx(-0.004)


def test_front_speed():
    p = sisfront.params(regime="case3")
    est = sisfront.simulate_front_speed(p, x_max=100, n=501, T=30)
    assert 1.6 < est["c_hat"] < 2.1


def test_cli_roundtrip(tmp_path):
    code, out, err = sisfront.run_cli(["analyze", "--regime", "case3", "--c", "3", "--out", str(tmp_path)])
    assert code == 0, err
    analysis = json.loads((tmp_path / "analysis.json").read_text())
    assert analysis["c_min"] == 2.0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["exit_code"] == 0
    assert not math.isnan(manifest["wall_clock_seconds"])
