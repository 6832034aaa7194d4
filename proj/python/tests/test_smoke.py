import json

import numpy as np
import pytest

import causal_channels as cc


def test_choi_kraus_roundtrip():
    m = cc.random_cptp(2, 3, 2, seed=4)
    j = cc.choi(m)
    assert j.shape == (6, 6)
    back = cc.kraus_from_choi(j, 2, 3)
    assert cc.choi_distance(m, back) < 1e-10
    assert cc.tp_defect(m) < 1e-12


def test_apply_matches_numpy():
    m = cc.random_cptp(2, 2, 2, seed=1)
    rho = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
    expect = sum(k @ rho @ k.conj().T for k in m.kraus)
    assert np.allclose(cc.apply(m, rho), expect, atol=1e-14)


def test_completion_is_trace_preserving():
    m = cc.scale(cc.random_cptp(3, 2, 3, seed=2), 0.3)
    assert cc.tp_defect(cc.add(m, cc.complementary_map(m))) < 1e-12


def test_nine_state_discrimination():
    alice, bob, states = cc.nine_state_instruments()
    assert cc.validate_instrument(alice, 1e-12)
    joint, defect = cc.compose_loop(alice, bob)
    assert defect < 1e-12
    for k, rho in enumerate(states):
        target = np.zeros((81, 81))
        target[10 * k, 10 * k] = 1.0
        assert np.linalg.norm(cc.apply(joint, rho) - target) < 1e-9
    report = json.loads(cc.nine_state_report())
    assert report["pass"] and len(report["states"]) == 9


def test_instrument_json_roundtrip():
    alice, _, _ = cc.nine_state_instruments()
    back = cc.Instrument.from_json(alice.to_json())
    assert back.to_json() == alice.to_json()
    with pytest.raises(cc.InputError):
        cc.Instrument.from_json("{}")


def test_loop_process_is_invalid():
    loop = {"alphabets": {"i_a": 2, "i_b": 2, "o_a": 2, "o_b": 2}, "table": [0.0] * 16}
    for oa in range(2):
        for ob in range(2):
            loop["table"][ob + 2 * (oa + 2 * (oa + 2 * ob))] = 1.0
    check = cc.check_process(json.dumps(loop))
    assert not check["valid"]
    assert "f" in check and "g" in check
    with pytest.raises(cc.Error):
        cc.decompose_process(json.dumps(loop))


def test_cli_exit_codes():
    code, out, _ = cc.cli(["discriminate-nine"])
    assert code == 0 and json.loads(out)["pass"]
    code, _, err = cc.cli(["no-such-command"])
    assert code == 2 and "Usage" in err


def test_acceptance_criteria_pass():
    results = cc.run_acceptance()
    assert [r["id"] for r in results] == list(range(1, 8))
    assert all(r["pass"] for r in results)
