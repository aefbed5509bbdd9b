"""Linear SVM trained by deterministic primal sub-gradient descent."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

SVM_KIND = "linear_svm"


@dataclass(frozen=True)
class SvmConfig:
    c: float = 1.0
    epochs: int = 200
    seed: int = 0


@dataclass
class SvmModel:
    kind = SVM_KIND
    config: SvmConfig
    weights: np.ndarray
    bias: float
    mean: np.ndarray
    scale: np.ndarray
    feature_names: tuple[str, ...] = ()
    objective_history: tuple[float, ...] = ()

    def _standardize(self, x: np.ndarray) -> np.ndarray:
        return (x - self.mean) / self.scale

    def decision(self, x) -> np.ndarray:
        matrix = np.asarray(x, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix[np.newaxis, :]
        return self._standardize(matrix) @ self.weights + self.bias

    def predict_row(self, row) -> int:
        return 1 if self.decision(row)[0] > 0.0 else 0

    def predict(self, x) -> np.ndarray:
        return (self.decision(x) > 0.0).astype(np.int8)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": {
                "c": self.config.c,
                "epochs": self.config.epochs,
                "seed": self.config.seed,
            },
            "feature_names": list(self.feature_names),
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "mean": self.mean.tolist(),
            "scale": self.scale.tolist(),
            "objective_history": list(self.objective_history),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SvmModel":
        return cls(
            config=SvmConfig(**obj["config"]),
            weights=np.asarray(obj["weights"], dtype=np.float64),
            bias=float(obj["bias"]),
            mean=np.asarray(obj["mean"], dtype=np.float64),
            scale=np.asarray(obj["scale"], dtype=np.float64),
            feature_names=tuple(obj["feature_names"]),
            objective_history=tuple(obj["objective_history"]),
        )


def hinge_objective(weights: np.ndarray, bias: float, x: np.ndarray, signs: np.ndarray, c: float) -> float:
    """0.5*||w||^2 + C * sum of hinge losses on (x, signs)."""
    margins = signs * (x @ weights + bias)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * float(weights @ weights) + c * float(hinge.sum())


def train_svm(x, y, cfg: SvmConfig | None = None, feature_names=()) -> SvmModel:
    """Hinge-loss sub-gradient descent with a 1/(lambda*t) step schedule.

    Features are standardized from the training data itself (zero
    variance columns are left at zero rather than divided). Labels map
    {0 -> -1, 1 -> +1}; the bias is not regularized.

    The fitted parameters are the running average of the iterates: the
    raw iterate oscillates around the optimum by construction of the
    step schedule, while the averaged one settles, so its objective
    (recorded per epoch on the model) decreases cleanly once past the
    early noisy epochs.
    """
    cfg = cfg or SvmConfig()
    matrix = np.asarray(x, dtype=np.float64)
    labels = np.asarray(y)
    n, d = matrix.shape
    if n == 0:
        raise ValueError("cannot train on an empty dataset")
    signs = np.where(labels == 1, 1.0, -1.0)

    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    flat = std == 0.0
    if flat.any():
        log.warning("zero-variance features standardized to zero: %s", np.nonzero(flat)[0].tolist())
    scale = np.where(flat, 1.0, std)
    standardized = (matrix - mean) / scale

    lam = 1.0 / (cfg.c * n)
    weights = np.zeros(d)
    bias = 0.0
    avg_weights = np.zeros(d)
    avg_bias = 0.0
    rng = random.Random(f"svm:{cfg.seed}")
    history = []
    step = 0
    for _ in range(cfg.epochs):
        order = list(range(n))
        rng.shuffle(order)
        for i in order:
            step += 1
            eta = 1.0 / (lam * step)
            margin = signs[i] * (standardized[i] @ weights + bias)
            weights *= 1.0 - 1.0 / step
            if margin < 1.0:
                weights += (eta * signs[i]) * standardized[i]
                bias += eta * signs[i]
            avg_weights += (weights - avg_weights) / step
            avg_bias += (bias - avg_bias) / step
        history.append(hinge_objective(avg_weights, avg_bias, standardized, signs, cfg.c))

    return SvmModel(
        config=cfg,
        weights=avg_weights,
        bias=avg_bias,
        mean=mean,
        scale=scale,
        feature_names=tuple(feature_names),
        objective_history=tuple(history),
    )
