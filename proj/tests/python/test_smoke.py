import json

import numpy as np
import pytest

import dtrust


def test_presets_listed():
    names = dtrust.preset_names()
    assert "fig4-20-cyclic" in names
    assert "table2-er" in names


def test_config_overrides_round_trip():
    text = dtrust.config("fig4-20-er", n_trials=3, master_seed=9)
    assert "n_trials = 3" in text
    assert "master_seed = 9" in text


def test_bad_override_rejected():
    with pytest.raises(dtrust.ConfigRejected):
        dtrust.config("fig4-20-er", alpha_legit=(0.3, 0.6))
    with pytest.raises(dtrust.ConfigRejected):
        dtrust.config("no-such-preset")


def test_instance_edge_list_round_trip():
    inst = dtrust.make_instance("fig4-20-cyclic", trial=2)
    assert len(inst.legitimate) == 20
    assert len(inst.malicious) == 30
    again = dtrust.Instance.parse(inst.to_edge_list())
    assert again == inst
    report = dtrust.verify(inst)
    assert report["legit_subgraph_strongly_connected"] and report["every_malicious_observed"]


def test_verify_flags_fixture():
    report = dtrust.verify(dtrust.fixture())
    assert report["legit_subgraph_strongly_connected"]
    assert not report["every_malicious_observed"]


def test_analyze_cyclic():
    inst = dtrust.make_instance("fig4-20-cyclic")
    res = dtrust.analyze(inst)
    for key in ("con_max", "l_G", "deg_max", "h", "Delta"):
        assert key in res["instance"]
    legit = [t for t in res["targets"] if t["role"] == "legit"]
    assert legit and all(t["u_q"] == 18 and t["con"] == 17 for t in legit)
    assert all(set(t) >= {"q", "role", "u_q", "con", "weakly_chained", "h_q", "bound_rounds"}
               for t in res["targets"])


def test_run_trial_converges_and_is_deterministic():
    a = dtrust.run_trial("fig4-20-cyclic", trial=0)
    b = dtrust.run_trial("fig4-20-cyclic", trial=0)
    assert a == b
    assert a["T_hat_max"] is not None
    assert a["T_f"] <= a["T_hat_max"]
    assert a["classified_ok"]
    assert a["csv"].startswith("round,mse,max_err,min_err\n")
    assert len(a["mse"]) == len(a["csv"].splitlines()) - 1


def test_run_experiment_writes_layout(tmp_path):
    res = dtrust.run_experiment("fig4-20-er", write_files=True, n_trials=2, out_dir=str(tmp_path))
    assert len(res) == 1 and len(res[0]["trials"]) == 2
    d = tmp_path / "fig4-20-er"
    for f in ("trial_0.csv", "trial_0.json", "trial_1.csv", "trial_1.json", "aggregate.json", "analysis.json"):
        assert (d / f).exists()
    summary = json.loads((d / "trial_1.json").read_text())
    assert set(summary) >= {"seed", "T_f", "T_hat_max", "classified_ok", "n_legit", "n_malicious", "graph_kind"}


def test_matrix_helpers():
    chain = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0.5]], dtype=float)
    assert dtrust.index_of_contraction(chain) == 3
    assert dtrust.is_weakly_chained(chain)
    closed = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert dtrust.index_of_contraction(closed) is None
    assert not dtrust.is_weakly_chained(closed)
    assert np.allclose(dtrust.matrix_power(np.array([[0.5]]), 3), [[0.125]])
