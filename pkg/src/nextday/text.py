"""Shared text utilities: tokenization, stop words, n-grams."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_TOKEN_RE = re.compile(r"[a-z0-9_]+")
_CASED_TOKEN_RE = re.compile(r"[A-Za-z0-9_']+")
_HASHTAG_RE = re.compile(r"#([A-Za-z0-9_]+)")


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric tokens; punctuation acts as a separator."""
    return _TOKEN_RE.findall(text.lower())


def tokenize_cased(text: str) -> list[str]:
    """Tokens with original casing kept (for ALL-CAPS detection)."""
    return _CASED_TOKEN_RE.findall(text)


def extract_hashtags(text: str) -> set[str]:
    """Hashtag bodies found in raw text, lowercased, '#' stripped."""
    return {m.lower() for m in _HASHTAG_RE.findall(text)}


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return frozenset(load_stopwords_resource())


def load_stopwords_resource() -> set[str]:
    data = resources.files("nextday.data").joinpath("stopwords.txt").read_text("utf-8")
    return load_stopwords_text(data)


def load_stopwords_text(data: str) -> set[str]:
    words = set()
    for line in data.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return words


def load_stopwords_file(path) -> set[str]:
    with open(path, encoding="utf-8") as fh:
        return load_stopwords_text(fh.read())


def content_tokens(text: str, stopwords: frozenset[str] | set[str]) -> list[str]:
    """Tokens with stop words removed (order and duplicates kept)."""
    return [t for t in tokenize(text) if t not in stopwords]


def bigrams(tokens: list[str]) -> set[tuple[str, str]]:
    return set(zip(tokens, tokens[1:]))
