import numpy as np
import pytest

import kotaro


def test_fit_interpolates_training_labels():
    X = np.array([[0.0], [1.0], [3.0]])
    y = [1, 1, -1]
    model = kotaro.fit(X, y, n_neighbors=1)
    np.testing.assert_array_equal(model.d, [1.0, 1.0, 2.0])
    assert model.predict(X) == y
    assert model.fit_residual <= 1e-8
    assert len(model) == 3


def test_design_matrix_is_asymmetric():
    A = kotaro.design_matrix(np.array([[0.0], [1.0], [3.0]]), n_neighbors=1)
    assert A[2, 0] == pytest.approx(np.exp(-9.0), rel=1e-14)
    assert A[0, 2] == pytest.approx(np.exp(-4.5), rel=1e-14)
    np.testing.assert_array_equal(np.diag(A), 1.0)


def test_generate_and_score():
    Xtr, ytr, Xte, yte = kotaro.generate(dim=2, total=100, ratio=1 / 9, seed=3)
    assert Xtr.shape == (100, 2) and ytr.count(1) == 10
    assert Xte.shape == (100, 2) and yte.count(1) == 50
    model = kotaro.fit(Xtr, ytr)
    table = kotaro.metrics(yte, model.predict(Xte))
    assert 0.5 < table["accuracy"] <= 1.0
    assert kotaro.gmean(yte, [-1] * len(yte)) == 0.0


def test_model_round_trip(tmp_path):
    Xtr, ytr, _, _ = kotaro.generate(dim=2, total=40, seed=5)
    model = kotaro.fit(Xtr, ytr, n_neighbors=3, solver="ridge:1e-6")
    model.save(str(tmp_path / "m.txt"))
    back = kotaro.load_model(str(tmp_path / "m.txt"))
    probe = np.random.default_rng(0).uniform(0, 5, size=(100, 2))
    np.testing.assert_array_equal(back.decision_function(probe), model.decision_function(probe))
    assert back.solver == model.solver


def test_folds_and_cross_validation():
    y = [1] * 12 + [-1] * 88
    folds = np.array(kotaro.stratified_kfold(y, k=5, seed=1))
    assert sorted(np.bincount(folds)) == [20] * 5
    assert set(np.bincount(folds[:12])) <= {2, 3}
    X, y, _, _ = kotaro.generate(dim=3, total=60, ratio=0.5, seed=2)
    report = kotaro.cross_validate(X, y, classifiers=["kotaro", "majority"], k=3, seed=1)
    assert len(report["trials"]) == 6
    agg = {(a["classifier"], a["metric"]): a["mean"] for a in report["aggregates"]}
    assert agg[("majority", "gmean")] == 0.0


def test_sweep_shape():
    report = kotaro.imbalance_sweep(dim=2, ratios=[0.2, 1.0], trials=2, total=40, test_per_class=10,
                                    classifiers=["kotaro", "majority"])
    assert len(report["trials"]) == 2 * 2 * 2


def test_errors_raise_kotaro_error():
    with pytest.raises(kotaro.KotaroError, match="SingleClass"):
        kotaro.fit(np.array([[0.0], [1.0]]), [1, 1], n_neighbors=1)
    with pytest.raises(kotaro.KotaroError, match="BadNeighborCount"):
        kotaro.neighbor_scales(np.zeros((3, 1)) + np.arange(3)[:, None], n_neighbors=3)
