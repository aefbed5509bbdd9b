import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "data" / "golden"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def golden_corpus():
    from nextday.corpus import load_corpus

    return load_corpus(
        GOLDEN / "articles.jsonl", GOLDEN / "tweets.jsonl", GOLDEN / "users.jsonl"
    )


@pytest.fixture(scope="session")
def golden_associations(golden_corpus):
    from nextday.relevance import RelevanceParams, associate_all

    return associate_all(golden_corpus, RelevanceParams())


@pytest.fixture(scope="session")
def lexicons():
    from nextday.lexicons import default_lexicons

    return default_lexicons()


@pytest.fixture()
def golden_config(tmp_path):
    """Config file pointing at the golden corpus, output under tmp_path."""

    def make(**overrides) -> Path:
        tree = {
            "paths": {
                "articles": str(GOLDEN / "articles.jsonl"),
                "tweets": str(GOLDEN / "tweets.jsonl"),
                "users": str(GOLDEN / "users.jsonl"),
                "output_dir": str(tmp_path / "out"),
            },
            "learn": {"k": 5, "seed": 2016, "forest": {"n_trees": 25}},
        }
        for key, value in overrides.items():
            tree.setdefault(key, {}).update(value)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(tree, indent=2))
        return path

    return make
