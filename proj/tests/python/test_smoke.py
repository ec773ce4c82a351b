import math

import numpy as np
import pytest

import mvcs


def test_closed_forms():
    assert mvcs.kde_eval([0.0], 1.0, [0.0])[0] == pytest.approx(1.0 / math.sqrt(2 * math.pi))
    assert mvcs.mode_count([-5.0, 5.0], 0.5) == 2
    assert mvcs.mode_count([-5.0, 5.0], 10.0) == 1
    assert mvcs.critical_bandwidth([-1.0, 1.0]) == pytest.approx(1.0, rel=2e-3)
    z = mvcs.standardize(np.array([[1.0], [2.0], [3.0]]))
    assert z[:, 0] == pytest.approx([-1.224744871391589, 0.0, 1.224744871391589])


def test_knn_ties_and_shape():
    table = mvcs.knn(np.array([[0.0], [1.0], [10.0]]), 1)
    assert table.tolist() == [[1], [0], [1]]


def test_score_and_detect_on_synthetic():
    ds = mvcs.generate_synthetic(n=200, seed=1)
    assert ds.num_views == 3
    assert ds.num_instances == 200

    report = mvcs.score(ds)
    assert 0.0 <= report["s_final"] < 1.0
    assert report["view_names"] == ["view1", "view2", "view3"]

    noisy = mvcs.corrupt(ds, [1], "per", seed=3)
    assert mvcs.score(noisy)["s_final"] < report["s_final"]
    result = mvcs.detect(noisy)
    assert result["detected"] == "view2"
    assert len(result["per_view"]) == 3


def test_identical_views_agree():
    x = np.random.default_rng(0).normal(size=(50, 3))
    ds = mvcs.MultiViewDataset([x, x])
    assert mvcs.neighborhood_consistency(ds) == 1.0
    assert mvcs.score(ds)["s_nbr"] == 1.0


def test_config_and_errors(tmp_path):
    config = mvcs.ScoreConfig()
    assert config.k == 10
    config.alpha = 0.9
    with pytest.raises(mvcs.MvcsError) as info:
        config.validate()
    assert info.value.code == "InvalidConfig"

    with pytest.raises(mvcs.MvcsError) as info:
        mvcs.load_dataset(tmp_path / "missing.json")
    assert info.value.code == "MissingFile"

    with pytest.raises(mvcs.MvcsError) as info:
        mvcs.MultiViewDataset([np.zeros((4, 2)), np.zeros((3, 2))])
    assert info.value.code == "RowCountMismatch"


def test_round_trip(tmp_path):
    ds = mvcs.generate_synthetic(n=40, views=2, seed=5)
    manifest = mvcs.save_dataset(ds, tmp_path)
    back = mvcs.load_dataset(manifest)
    assert back.view_names == ds.view_names
    assert np.array_equal(back.view(0), ds.view(0))
    assert back.labels == ds.labels


def test_hopkins_and_noise():
    x = np.random.default_rng(1).uniform(size=(500, 2))
    assert 0.3 < mvcs.hopkins(x, 50, seed=2) < 0.7
    permuted = mvcs.corrupt_permutation(x, seed=4)
    assert np.array_equal(np.sort(permuted, axis=0), np.sort(x, axis=0))
    labels = [0] * 250 + [1] * 250
    assert mvcs.corrupt_conflict(x, labels, seed=1).shape == x.shape
