"""CART decision tree and the bagged random forest built on top of it."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from nextday.learn.kernels import best_split, parent_score

CART_KIND = "cart"
FOREST_KIND = "random_forest"


@dataclass(frozen=True)
class CartConfig:
    max_depth: int = 8
    min_samples_leaf: int = 2


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    bootstrap: bool = True
    max_features: int | None = None  # None = ceil(sqrt(d))
    seed: int = 0
    tree: CartConfig = field(default_factory=CartConfig)


@dataclass
class Node:
    """Internal split node or leaf; leaves carry the training class counts."""

    feature: int = -1
    threshold: float = 0.0
    left: "Node | None" = None
    right: "Node | None" = None
    counts: tuple[int, int] = (0, 0)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def prediction(self) -> int:
        return 1 if self.counts[1] > self.counts[0] else 0

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"counts": list(self.counts)}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "counts": list(self.counts),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Node":
        counts = tuple(obj["counts"])
        if "feature" not in obj:
            return cls(counts=counts)
        return cls(
            feature=obj["feature"],
            threshold=obj["threshold"],
            left=cls.from_dict(obj["left"]),
            right=cls.from_dict(obj["right"]),
            counts=counts,
        )


def _grow(
    x: np.ndarray,
    y: np.ndarray,
    depth: int,
    cfg: CartConfig,
    rng: random.Random | None,
    max_features: int | None,
) -> Node:
    n = x.shape[0]
    n1 = int(y.sum())
    n0 = n - n1
    counts = (n0, n1)
    if depth >= cfg.max_depth or n0 == 0 or n1 == 0 or n < 2 * cfg.min_samples_leaf:
        return Node(counts=counts)

    d = x.shape[1]
    if max_features is not None and max_features < d and rng is not None:
        columns = sorted(rng.sample(range(d), max_features))
        found = best_split(np.ascontiguousarray(x[:, columns]), y, cfg.min_samples_leaf)
        if found is not None:
            found = (columns[found[0]], found[1], found[2])
    else:
        found = best_split(x, y, cfg.min_samples_leaf)

    if found is None or found[2] <= parent_score(n0, n1):
        return Node(counts=counts)
    feature, threshold, _ = found
    mask = x[:, feature] <= threshold
    if not mask.any() or mask.all():  # degenerate midpoint rounding
        return Node(counts=counts)
    left = _grow(
        np.ascontiguousarray(x[mask]), y[mask], depth + 1, cfg, rng, max_features
    )
    right = _grow(
        np.ascontiguousarray(x[~mask]), y[~mask], depth + 1, cfg, rng, max_features
    )
    return Node(feature=feature, threshold=threshold, left=left, right=right, counts=counts)


def _predict_node(node: Node, row: np.ndarray) -> int:
    while not node.is_leaf:
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node.prediction


def _as_matrix(x) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(x, dtype=np.float64))


def _as_labels(y) -> np.ndarray:
    labels = np.asarray(y, dtype=np.int8)
    if labels.size and not np.isin(labels, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    return labels


@dataclass
class CartModel:
    kind = CART_KIND
    config: CartConfig
    root: Node
    feature_names: tuple[str, ...] = ()

    def predict_row(self, row) -> int:
        return _predict_node(self.root, np.asarray(row, dtype=np.float64))

    def predict(self, x) -> np.ndarray:
        matrix = _as_matrix(x)
        return np.array([_predict_node(self.root, row) for row in matrix], dtype=np.int8)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": {
                "max_depth": self.config.max_depth,
                "min_samples_leaf": self.config.min_samples_leaf,
            },
            "feature_names": list(self.feature_names),
            "tree": self.root.to_dict(),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "CartModel":
        return cls(
            config=CartConfig(**obj["config"]),
            root=Node.from_dict(obj["tree"]),
            feature_names=tuple(obj["feature_names"]),
        )


@dataclass
class ForestModel:
    kind = FOREST_KIND
    config: ForestConfig
    roots: list[Node]
    feature_names: tuple[str, ...] = ()

    def predict_row(self, row) -> int:
        values = np.asarray(row, dtype=np.float64)
        votes = sum(_predict_node(root, values) for root in self.roots)
        return 1 if 2 * votes > len(self.roots) else 0

    def predict(self, x) -> np.ndarray:
        matrix = _as_matrix(x)
        return np.array([self.predict_row(row) for row in matrix], dtype=np.int8)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": {
                "n_trees": self.config.n_trees,
                "bootstrap": self.config.bootstrap,
                "max_features": self.config.max_features,
                "seed": self.config.seed,
                "tree": {
                    "max_depth": self.config.tree.max_depth,
                    "min_samples_leaf": self.config.tree.min_samples_leaf,
                },
            },
            "feature_names": list(self.feature_names),
            "trees": [root.to_dict() for root in self.roots],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ForestModel":
        cfg = dict(obj["config"])
        cfg["tree"] = CartConfig(**cfg["tree"])
        return cls(
            config=ForestConfig(**cfg),
            roots=[Node.from_dict(t) for t in obj["trees"]],
            feature_names=tuple(obj["feature_names"]),
        )


def train_cart(x, y, cfg: CartConfig | None = None, feature_names=()) -> CartModel:
    """Grow a CART tree by greedy Gini-impurity reduction.

    Single-class data produces a depth-0 majority leaf; prediction ties
    resolve to class 0.
    """
    cfg = cfg or CartConfig()
    matrix = _as_matrix(x)
    labels = _as_labels(y)
    if matrix.shape[0] == 0:
        raise ValueError("cannot train on an empty dataset")
    root = _grow(matrix, labels, 0, cfg, rng=None, max_features=None)
    return CartModel(config=cfg, root=root, feature_names=tuple(feature_names))


def tree_seed(seed: int, index: int) -> str:
    return f"tree:{seed}:{index}"


def train_forest(x, y, cfg: ForestConfig | None = None, feature_names=()) -> ForestModel:
    """Bagged CART ensemble with per-node feature subsampling.

    Each tree's RNG is derived from (seed, tree index) only, so training
    is reproducible and trees could be grown in any order.
    """
    cfg = cfg or ForestConfig()
    matrix = _as_matrix(x)
    labels = _as_labels(y)
    n, d = matrix.shape
    if n == 0:
        raise ValueError("cannot train on an empty dataset")
    max_features = cfg.max_features if cfg.max_features is not None else math.isqrt(d)
    if max_features * max_features < d:  # ceil(sqrt(d))
        max_features += 1
    max_features = min(max_features, d)

    roots = []
    for index in range(cfg.n_trees):
        rng = random.Random(tree_seed(cfg.seed, index))
        if cfg.bootstrap:
            chosen = [rng.randrange(n) for _ in range(n)]
            sample_x = np.ascontiguousarray(matrix[chosen])
            sample_y = labels[chosen]
        else:
            sample_x, sample_y = matrix, labels
        roots.append(
            _grow(sample_x, sample_y, 0, cfg.tree, rng=rng, max_features=max_features)
        )
    return ForestModel(config=cfg, roots=roots, feature_names=tuple(feature_names))
