import json
import math

import pytest

import woamlp


def test_metrics_match_reported_row():
    report = woamlp.metrics_report(woamlp.ConfusionMatrix(255, 58, 16, 291, "covid"))
    got = [report.acc, report.sen, report.spe, report.pre, report.f1, report.mcc, report.kappa]
    want = [88.06, 81.47, 94.79, 94.10, 87.33, 76.87, 76.16]
    for g, w in zip(got, want):
        assert abs(100 * g - w) <= 0.005
    assert json.loads(report.to_json())["tp"] == 255


def test_confusion_and_errors():
    cm = woamlp.confusion(["a", "b", "a"], ["a", "a", "b"], "a")
    assert (cm.tp, cm.fn, cm.fp, cm.tn) == (1, 1, 1, 0)
    with pytest.raises(woamlp.WoamlpError):
        woamlp.confusion(["a"], ["a", "b"], "a")


def test_network_primitives():
    topo = woamlp.MlpTopology([6144, 20, 2])
    assert woamlp.param_count(topo) == 122942
    out = woamlp.mlp_forward(woamlp.MlpTopology([1, 2]), [0.0] * 4, [3.0])
    assert out == [0.5, 0.5]
    pooled = woamlp.cnn_layer_forward([[1, -2], [3, 4]], [[1]], 0.0, 2, "max")
    assert pooled == [[4.0]]


def test_woa_updates_and_optimizer():
    assert woamlp.coefficient_a(50, 100) == 1.0
    assert woamlp.encircle_update([0, 0], [1, 1], [0.5, 0.5], [1, 1]) == [0.5, 0.5]
    assert woamlp.spiral_update([0], [1], 1.0, 0.0) == [2.0]
    assert woamlp.explore_update([2], [0], [-1], [1]) == [2.0]

    state = woamlp.optimize(lambda x: sum(v * v for v in x), [-10] * 3, [10] * 3,
                            population_size=20, max_iterations=100, seed=3)
    assert len(state.history) == 100
    assert state.best_fitness < 1e-2
    assert all(b <= a for a, b in zip(state.history, state.history[1:]))

    serial = woamlp.bench("rastrigin", 4, 5.12, 16, 40, 9, 1)
    parallel = woamlp.bench("rastrigin", 4, 5.12, 16, 40, 9, 3)
    assert serial.history == parallel.history


def test_train_predict_roundtrip(tmp_path):
    xor = woamlp.FeatureTable(["a", "b", "c", "d"], [[0, 0], [0, 1], [1, 0], [1, 1]],
                              ["zero", "one", "one", "zero"])
    model = woamlp.train(xor, hidden_layers=[4], population_size=40,
                         max_iterations=500, normalize=False, seed=1)
    labels = [woamlp.predict(model, xor.row(i))[0] for i in range(4)]
    assert labels == list(xor.labels)

    path = tmp_path / "m.json"
    woamlp.save_model(model, str(path))
    back = woamlp.load_model(str(path))
    for i in range(4):
        label, probs = woamlp.predict(back, xor.row(i))
        assert label == labels[i]
        assert math.isclose(sum(probs), 1.0, abs_tol=1e-9)


def test_feature_io(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    a.write_text("id,label,f0\ns1,p,1\ns2,n,2\ns3,p,3\ns4,n,4\n")
    b.write_text("id,label,f0,f1\ns4,n,9,9\ns3,p,8,8\ns2,n,7,7\ns1,p,6,6\n")
    fused = woamlp.fuse(woamlp.load_feature_table(str(a)), woamlp.load_feature_table(str(b)))
    assert fused.cols == 3
    assert fused.row(0) == [1.0, 6.0, 6.0]
    train, test = woamlp.split(fused, 0.5, 4)
    assert train.rows + test.rows == 4
    assert test.class_counts() == [1, 1]
