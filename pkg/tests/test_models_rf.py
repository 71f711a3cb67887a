"""Random forest: memorization, split choice vs brute-force Gini, determinism."""

import numpy as np
import pytest

from sentibench import RandomForest, model_to_dict
from helpers import sv


def record_depth(record) -> int:
    if "class" in record:
        return 0
    return 1 + max(record_depth(record["left"]), record_depth(record["right"]))


def weighted_gini_for_split(dense, y_idx, feature, threshold):
    left = y_idx[dense[:, feature] <= threshold]
    right = y_idx[dense[:, feature] > threshold]
    total = len(y_idx)

    def gini(group):
        if len(group) == 0:
            return 0.0
        p = np.bincount(group, minlength=3) / len(group)
        return 1.0 - float((p**2).sum())

    return len(left) / total * gini(left) + len(right) / total * gini(right)


def brute_force_best_root(dense, y_idx):
    """Exhaustive (feature, midpoint-threshold) search minimizing Gini."""
    best = (np.inf, None, None)
    for f in range(dense.shape[1]):
        values = np.unique(dense[:, f])
        for a, b in zip(values[:-1], values[1:]):
            thr = (a + b) / 2.0
            score = weighted_gini_for_split(dense, y_idx, f, thr)
            if score < best[0]:
                best = (score, f, thr)
    return best


class TestMemorization:
    def test_single_tree_memorizes_consistent_data(self):
        rng = np.random.default_rng(8)
        X, y = [], []
        labels = ("negative", "neutral", "positive")
        for i in range(30):
            # unique indicator feature per sample keeps the data consistent
            pairs = [(i, 1.0)] + [
                (30 + j, float(rng.integers(0, 3))) for j in range(4)
                if rng.random() < 0.5
            ]
            X.append(sv(34, [(a, b) for a, b in pairs if b != 0.0]))
            y.append(labels[rng.integers(0, 3)])
        model = RandomForest(
            n_trees=1, bootstrap=False, max_depth=None, max_features=34, seed=0
        ).fit(X, y)
        assert model.predict(X) == y


class TestPerfectFeature:
    def build(self):
        rng = np.random.default_rng(17)
        X, y = [], []
        for i in range(60):
            label = "positive" if i % 2 else "negative"
            pairs = [(5, 1.0)] if label == "positive" else []
            pairs += [
                (j, float(rng.integers(0, 4)))
                for j in range(10)
                if j != 5 and rng.random() < 0.5
            ]
            X.append(sv(10, [(a, b) for a, b in pairs if b != 0.0]))
            y.append(label)
        return X, y

    def test_every_root_split_uses_the_deciding_feature(self):
        X, y = self.build()
        model = RandomForest(n_trees=10, max_features=10, seed=1).fit(X, y)
        for record in model_to_dict(model)["params"]["trees"]:
            assert record["feature"] == 5

    def test_root_choice_matches_brute_force_gini(self):
        X, y = self.build()
        dense = np.vstack([v.to_dense() for v in X])
        y_idx = np.array([0 if label == "negative" else 2 for label in y])
        _, best_feature, _ = brute_force_best_root(dense, y_idx)
        assert best_feature == 5
        model = RandomForest(n_trees=1, bootstrap=False, max_features=10, seed=1).fit(X, y)
        root = model_to_dict(model)["params"]["trees"][0]
        assert root["feature"] == 5
        assert root["threshold"] == 0.5  # midpoint of observed {0, 1}

    def test_forest_fits_training_data(self):
        X, y = self.build()
        model = RandomForest(n_trees=10, max_features=10, seed=1).fit(X, y)
        assert model.predict(X) == y


class TestThresholdsAreMidpoints:
    def test_observed_value_midpoints_only(self):
        X = [sv(1, [(0, v)]) if v else sv(1, []) for v in (0.0, 2.0, 4.0, 2.0, 0.0, 4.0)]
        y = ["negative", "neutral", "positive", "neutral", "negative", "positive"]
        model = RandomForest(
            n_trees=1, bootstrap=False, max_depth=None, max_features=1, seed=0
        ).fit(X, y)

        def collect(record, out):
            if "class" not in record:
                out.append(record["threshold"])
                collect(record["left"], out)
                collect(record["right"], out)

        thresholds = []
        collect(model_to_dict(model)["params"]["trees"][0], thresholds)
        assert sorted(thresholds) == [1.0, 3.0]
        assert model.predict(X) == y


class TestDepthAndVotes:
    def test_max_depth_limits_tree(self):
        rng = np.random.default_rng(3)
        X = [sv(6, [(j, float(rng.integers(1, 5))) for j in range(6) if rng.random() < 0.6])
             for _ in range(40)]
        y = [("negative", "neutral", "positive")[i] for i in rng.integers(0, 3, 40)]
        model = RandomForest(n_trees=3, max_depth=2, max_features=6, seed=2).fit(X, y)
        for record in model_to_dict(model)["params"]["trees"]:
            assert record_depth(record) <= 2

    def test_vote_fractions(self):
        rng = np.random.default_rng(5)
        X = [sv(4, [(j, float(rng.integers(1, 3))) for j in range(4) if rng.random() < 0.7])
             for _ in range(25)]
        y = [("negative", "neutral", "positive")[i] for i in rng.integers(0, 3, 25)]
        model = RandomForest(n_trees=10, seed=7).fit(X, y)
        for scores in model.predict_scores(X[:5]):
            total = sum(scores.values())
            assert total == pytest.approx(1.0, abs=1e-12)
            for value in scores.values():
                assert (value * 10) == pytest.approx(round(value * 10), abs=1e-9)

    def test_all_zero_vectors_predict_majority(self):
        # bootstrap off so every tree sees the true label distribution
        X = [sv(3, []) for _ in range(5)]
        y = ["positive", "positive", "positive", "negative", "neutral"]
        model = RandomForest(n_trees=5, bootstrap=False, seed=0).fit(X, y)
        assert model.predict([sv(3, [])])[0] == "positive"


class TestDeterminism:
    def test_same_seed_identical_forest(self):
        rng = np.random.default_rng(13)
        X = [sv(8, [(j, float(rng.integers(1, 4))) for j in range(8) if rng.random() < 0.5])
             for _ in range(50)]
        y = [("negative", "neutral", "positive")[i] for i in rng.integers(0, 3, 50)]
        a = RandomForest(n_trees=8, seed=21).fit(X, y)
        b = RandomForest(n_trees=8, seed=21).fit(X, y)
        assert model_to_dict(a) == model_to_dict(b)
        probe = [sv(8, [(j, 1.0) for j in range(8)])]
        assert a.predict(probe) == b.predict(probe)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            RandomForest(n_trees=0)
        with pytest.raises(ValueError):
            RandomForest(max_depth=0)
        with pytest.raises(ValueError):
            RandomForest(max_features=0)
