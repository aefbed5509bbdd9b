"""JSON persistence for trained models."""

from __future__ import annotations

import json

from nextday.learn.svm import SVM_KIND, SvmModel
from nextday.learn.tree import CART_KIND, FOREST_KIND, CartModel, ForestModel

FORMAT = "nextday.model"
VERSION = 1

_KINDS = {
    CART_KIND: CartModel,
    FOREST_KIND: ForestModel,
    SVM_KIND: SvmModel,
}


class ModelLoadError(ValueError):
    """Model file is unreadable, truncated, or from another version."""


def save_model(model, path) -> None:
    payload = {"format": FORMAT, "version": VERSION, "model": model.to_dict()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_model(path):
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelLoadError(f"cannot read model file {path}: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != FORMAT:
        raise ModelLoadError(f"{path} is not a model file")
    if payload.get("version") != VERSION:
        raise ModelLoadError(
            f"{path}: unsupported model version {payload.get('version')!r}"
        )
    obj = payload.get("model", {})
    kind = obj.get("kind")
    if kind not in _KINDS:
        raise ModelLoadError(f"{path}: unknown model kind {kind!r}")
    try:
        return _KINDS[kind].from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelLoadError(f"{path}: malformed model payload: {exc}") from None
