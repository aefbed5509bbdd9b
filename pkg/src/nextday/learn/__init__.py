"""Classifiers and the cross-validation evaluation harness."""

from nextday.learn.cv import (
    Dataset,
    DatasetError,
    EvalReport,
    f_score,
    kfold_cv,
    metrics,
    stratified_folds,
)
from nextday.learn.persist import ModelLoadError, load_model, save_model
from nextday.learn.svm import SvmConfig, SvmModel, train_svm
from nextday.learn.tree import (
    CartConfig,
    CartModel,
    ForestConfig,
    ForestModel,
    train_cart,
    train_forest,
)

__all__ = [
    "Dataset",
    "DatasetError",
    "EvalReport",
    "f_score",
    "kfold_cv",
    "metrics",
    "stratified_folds",
    "ModelLoadError",
    "load_model",
    "save_model",
    "SvmConfig",
    "SvmModel",
    "train_svm",
    "CartConfig",
    "CartModel",
    "ForestConfig",
    "ForestModel",
    "train_cart",
    "train_forest",
]
