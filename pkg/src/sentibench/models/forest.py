"""Random forest of CART trees with Gini-impurity splits.

Each tree trains on a bootstrap resample (seeded per tree, so parallel
tree construction would reproduce sequential results) and considers a
fresh random feature subset at every node. Candidate thresholds are the
midpoints between adjacent distinct observed values of a feature within
the node, where rows that do not store a feature explicitly count as
observations of 0. The best candidate minimizes the size-weighted Gini
impurity of the two children; ties go to the lower feature index, then
the lower threshold. The forest predicts by majority vote over the
trees' leaf classes, ties resolved by the fixed class order.

The split scan works on the node's nonzero entries only, grouped by
feature, with one virtual zero-entry per feature carrying the class
histogram of the implicit zeros. That keeps per-node cost proportional
to the node's stored entries instead of rows x features.
"""

from __future__ import annotations

import math

import numpy as np

from .base import BaseClassifier, check_X_y

_STREAM = 3


class _Tree:
    """Flat array form: feature < 0 marks a leaf; label is the majority class."""

    __slots__ = ("feature", "threshold", "left", "right", "label", "counts")

    def __init__(self, feature, threshold, left, right, label, counts):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.label = label
        self.counts = counts


def _sample_features(rng, dims: int, k: int) -> np.ndarray:
    if k >= dims:
        return np.arange(dims)
    return rng.choice(dims, size=k, replace=False, shuffle=False)


def _best_split(X, y, rows, node_hist, sampled, feat_flags, row_flags):
    """Return (feature, threshold, left_rows, right_rows) or None.

    ``feat_flags`` / ``row_flags`` are reusable boolean scratch buffers of
    size n_features / n_rows.
    """
    sub = X[rows]
    feats = sub.indices
    vals = sub.data
    per_row = np.diff(sub.indptr)
    entry_row = np.repeat(rows, per_row)
    entry_lab = np.repeat(y[rows], per_row)

    feat_flags[sampled] = True
    keep = feat_flags[feats]
    feat_flags[sampled] = False
    if not keep.any():
        return None
    feats = feats[keep]
    vals = vals[keep]
    entry_row = entry_row[keep]
    entry_lab = entry_lab[keep]

    # Per-feature class histogram of the nonzero entries.
    ufeat, inv = np.unique(feats, return_inverse=True)
    nz_hist = np.zeros((ufeat.size, 3))
    np.add.at(nz_hist, (inv, entry_lab), 1.0)
    nz_count = np.bincount(inv, minlength=ufeat.size)
    zero_hist = node_hist - nz_hist
    has_zero = rows.size - nz_count > 0

    # One virtual entry per feature stands in for all its implicit zeros.
    vfeat = ufeat[has_zero]
    vhist = zero_hist[has_zero]
    all_feat = np.concatenate([feats, vfeat])
    all_val = np.concatenate([vals, np.zeros(vfeat.size)])
    all_row = np.concatenate([entry_row, np.full(vfeat.size, -1, dtype=entry_row.dtype)])
    all_tag = np.concatenate([entry_lab, np.arange(vfeat.size)])

    order = np.lexsort((all_val, all_feat))
    F = all_feat[order]
    V = all_val[order]
    R = all_row[order]
    T = all_tag[order]

    real = R >= 0
    hist_rows = np.zeros((F.size, 3))
    hist_rows[real, T[real]] = 1.0
    hist_rows[~real] = vhist[T[~real]]
    prefix = np.vstack([np.zeros(3), np.cumsum(hist_rows, axis=0)])

    new_group = np.empty(F.size, dtype=bool)
    new_group[0] = True
    new_group[1:] = F[1:] != F[:-1]
    group_start = np.maximum.accumulate(np.where(new_group, np.arange(F.size), 0))

    boundary = (~new_group[1:]) & (V[:-1] < V[1:])
    cand = np.flatnonzero(boundary)
    if cand.size == 0:
        return None

    left_hist = prefix[cand + 1] - prefix[group_start[cand]]
    n_left = left_hist.sum(axis=1)
    n_right = rows.size - n_left
    right_hist = node_hist - left_hist
    # Minimizing weighted Gini == maximizing sum of squared counts / size.
    quality = (left_hist**2).sum(axis=1) / n_left + (right_hist**2).sum(axis=1) / n_right
    best = int(np.argmax(quality))

    i = cand[best]
    feature = int(F[i])
    threshold = float(V[i] + V[i + 1]) / 2.0
    if threshold >= V[i + 1]:  # 1-ulp value gap: midpoint rounded up; keep
        threshold = float(V[i])  # the "value <= threshold" routing consistent

    in_feature = F == feature
    if threshold >= 0.0:
        go_right = R[in_feature & (V > threshold) & real]
        row_flags[go_right] = True
        right_rows = rows[row_flags[rows]]
        left_rows = rows[~row_flags[rows]]
        row_flags[go_right] = False
    else:
        go_left = R[in_feature & (V <= threshold) & real]
        row_flags[go_left] = True
        left_rows = rows[row_flags[rows]]
        right_rows = rows[~row_flags[rows]]
        row_flags[go_left] = False
    return feature, threshold, left_rows, right_rows


def _grow_tree(X, y, k, max_depth, rng) -> _Tree:
    n, dims = X.shape
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    label: list[int] = []
    counts: list[np.ndarray] = []

    def alloc() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        label.append(0)
        counts.append(None)
        return len(feature) - 1

    feat_flags = np.zeros(dims, dtype=bool)
    row_flags = np.zeros(n, dtype=bool)
    stack = [(np.arange(n), 0, alloc())]
    while stack:
        rows, depth, slot = stack.pop()
        hist = np.bincount(y[rows], minlength=3).astype(np.float64)
        label[slot] = int(np.argmax(hist))
        counts[slot] = hist.astype(np.int64)

        depth_reached = max_depth is not None and depth >= max_depth
        if depth_reached or hist.max() == rows.size or rows.size < 2:
            continue
        sampled = _sample_features(rng, dims, k)
        found = _best_split(X, y, rows, hist, sampled, feat_flags, row_flags)
        if found is None:
            continue
        f, thr, left_rows, right_rows = found
        feature[slot] = f
        threshold[slot] = thr
        lid = alloc()
        rid = alloc()
        left[slot] = lid
        right[slot] = rid
        stack.append((right_rows, depth + 1, rid))
        stack.append((left_rows, depth + 1, lid))

    return _Tree(
        feature=np.array(feature, dtype=np.int32),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int32),
        right=np.array(right, dtype=np.int32),
        label=np.array(label, dtype=np.int8),
        counts=np.vstack(counts),
    )


class RandomForest(BaseClassifier):
    variant = "rf"

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int | None = 40,
        max_features: int | None = None,
        bootstrap: bool = True,
        seed: int = 0,
    ):
        super().__init__()
        if n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if max_depth is not None and max_depth < 1:
            raise ValueError("max_depth must be >= 1 or None for unlimited")
        if max_features is not None and max_features < 1:
            raise ValueError("max_features must be >= 1 or None for ceil(sqrt(dims))")
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed

    def fit(self, X, y) -> "RandomForest":
        csr, y_idx = check_X_y(X, y)
        csr.sort_indices()
        n, dims = csr.shape
        if self.max_features is None:
            k = math.isqrt(dims - 1) + 1  # ceil(sqrt(dims))
        else:
            k = min(dims, self.max_features)

        self.trees_ = []
        for t in range(self.n_trees):
            # Stream keyed by (seed, tree index): tree order never matters.
            rng = np.random.default_rng([self.seed, _STREAM, t])
            if self.bootstrap:
                sample = rng.integers(0, n, size=n)
                X_t, y_t = csr[sample], y_idx[sample]
            else:
                X_t, y_t = csr, y_idx
            self.trees_.append(_grow_tree(X_t, y_t, k, self.max_depth, rng))

        self.n_features_ = dims
        return self

    def _score_matrix(self, csr) -> np.ndarray:
        n = csr.shape[0]
        votes = np.zeros((n, 3))
        # Densify in bounded chunks so (row, feature) gathers stay cheap.
        chunk = max(1, int(4_000_000 // max(1, self.n_features_)))
        for start in range(0, n, chunk):
            dense = csr[start : start + chunk].toarray()
            m = dense.shape[0]
            sample_ids = np.arange(m)
            for tree in self.trees_:
                node = np.zeros(m, dtype=np.int32)
                while True:
                    f = tree.feature[node]
                    internal = f >= 0
                    if not internal.any():
                        break
                    vals = dense[sample_ids, np.where(internal, f, 0)]
                    node = np.where(
                        internal,
                        np.where(
                            vals <= tree.threshold[node], tree.left[node], tree.right[node]
                        ),
                        node,
                    )
                votes[start + sample_ids, tree.label[node]] += 1.0
        return votes / self.n_trees
