"""Associate tweets to articles via keyword seeds and hashtag expansion.

Seeding finds same-day tweets sharing enough of an article's top TF-IDF
keywords. Hashtags harvested from the matched tweets are split into
generic tags (frequent across the prior 30 days) and article-specific
tags; the latter pull in further same-day tweets until a fixpoint.
"""

from __future__ import annotations

import enum
import json
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import timedelta

from nextday.corpus import Corpus, NewsArticle, Tweet
from nextday.text import content_tokens, default_stopwords

log = logging.getLogger(__name__)

MIN_TOKEN_LENGTH = 3


class RelevanceError(ValueError):
    """Article cannot be profiled (e.g. no indexable tokens)."""


class HashtagKind(enum.Enum):
    GENERIC = "generic"
    ARTICLE_SPECIFIC = "article_specific"


@dataclass(frozen=True)
class KeywordProfile:
    article_id: str
    keywords: tuple[tuple[str, float], ...]

    def tokens(self) -> set[str]:
        return {token for token, _ in self.keywords}


@dataclass(frozen=True)
class HashtagLabel:
    hashtag: str
    kind: HashtagKind
    article_id: str | None = None


@dataclass(frozen=True)
class ArticleAssociation:
    article_id: str
    seed_tweet_ids: frozenset[str]
    expanded_tweet_ids: frozenset[str]
    article_specific_hashtags: frozenset[str]
    generic_hashtags: frozenset[str]
    iterations_run: int


@dataclass(frozen=True)
class RelevanceParams:
    min_overlap: int = 3
    generic_article_threshold: int = 5
    generic_frequency_quantile: float = 0.90
    max_iterations: int = 3
    history_days: int = 30
    keywords_source: str = "title_body"  # or "title"
    keyword_count: int = 10


def article_text(article: NewsArticle, source: str) -> str:
    if source == "title":
        return article.title
    if source == "title_body":
        return article.title + "\n" + article.body
    raise ValueError(f"unknown keywords source {source!r}")


def _index_tokens(text: str, stopwords) -> list[str]:
    return [t for t in content_tokens(text, stopwords) if len(t) >= MIN_TOKEN_LENGTH]


def tfidf_keywords(
    article: NewsArticle,
    background: list[NewsArticle],
    k: int = 10,
    stopwords: frozenset[str] | None = None,
    source: str = "title_body",
) -> KeywordProfile:
    """Top-k tokens of the article by TF-IDF against the background set.

    TF is the token's count over the article's kept-token count; IDF is
    ln(1 + D/df) with D the background size. Score ties rank the
    lexicographically smaller token first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    stopwords = stopwords if stopwords is not None else default_stopwords()
    tokens = _index_tokens(article_text(article, source), stopwords)
    if not tokens:
        raise RelevanceError(f"no indexable tokens in article '{article.id}'")

    docs = list(background)
    if all(doc.id != article.id for doc in docs):
        docs.append(article)
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(_index_tokens(article_text(doc, source), stopwords)))

    counts = Counter(tokens)
    total = len(tokens)
    scored = [
        (token, (count / total) * math.log(1.0 + len(docs) / df[token]))
        for token, count in counts.items()
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return KeywordProfile(article_id=article.id, keywords=tuple(scored[:k]))


def seed_tweets(
    profile: KeywordProfile,
    tweets: list[Tweet],
    min_overlap: int,
    stopwords: frozenset[str] | None = None,
) -> set[str]:
    """Ids of tweets sharing at least `min_overlap` profile keywords."""
    if min_overlap < 1:
        raise ValueError("min_overlap must be >= 1")
    stopwords = stopwords if stopwords is not None else default_stopwords()
    keywords = profile.tokens()
    selected = set()
    for tweet in tweets:
        overlap = keywords.intersection(content_tokens(tweet.text, stopwords))
        if len(overlap) >= min_overlap:
            selected.add(tweet.id)
    return selected


@dataclass(frozen=True)
class HistoryWindow:
    """Prior-window tweet slice plus the stats hashtag labelling needs."""

    tweet_ids: frozenset[str]
    hashtag_counts: dict[str, int]
    hashtag_articles: dict[str, frozenset[str]]

    @property
    def empty(self) -> bool:
        return not self.tweet_ids

    def count_quantile(self, q: float) -> int:
        """Nearest-rank q-quantile of the usage counts (0 when empty)."""
        counts = sorted(self.hashtag_counts.values())
        if not counts:
            return 0
        rank = max(1, math.ceil(q * len(counts)))
        return counts[min(rank, len(counts)) - 1]


def build_history(
    corpus: Corpus,
    article: NewsArticle,
    params: RelevanceParams,
    profiles: dict[str, KeywordProfile] | None = None,
    seeds: dict[str, frozenset[str]] | None = None,
) -> HistoryWindow:
    """Collect the prior-window tweets and per-hashtag statistics.

    A hashtag is attached to a prior article when it appears in that
    article's seed tweets (seed-level only, so the definition is not
    recursive). Articles that cannot be profiled are skipped.
    """
    day = article.published_day
    start = day - timedelta(days=params.history_days)
    window_ids: set[str] = set()
    hashtag_counts: Counter[str] = Counter()
    for tweet in corpus.tweets:
        if start <= tweet.created_day < day:
            window_ids.add(tweet.id)
            hashtag_counts.update(tweet.hashtags)

    hashtag_articles: dict[str, set[str]] = {}
    for prior in corpus.articles:
        if not start <= prior.published_day < day:
            continue
        if seeds is not None and prior.id in seeds:
            seed_ids = seeds[prior.id]
        else:
            if profiles is not None and prior.id in profiles:
                profile = profiles[prior.id]
            else:
                try:
                    profile = tfidf_keywords(
                        prior,
                        list(corpus.articles),
                        k=params.keyword_count,
                        source=params.keywords_source,
                    )
                except RelevanceError:
                    log.debug("history article %s has no indexable tokens", prior.id)
                    continue
            seed_ids = seed_tweets(
                profile, corpus.tweets_on(prior.published_day), params.min_overlap
            )
        for tweet_id in seed_ids:
            for tag in corpus.tweet_by_id[tweet_id].hashtags:
                hashtag_articles.setdefault(tag, set()).add(prior.id)

    return HistoryWindow(
        tweet_ids=frozenset(window_ids),
        hashtag_counts=dict(hashtag_counts),
        hashtag_articles={tag: frozenset(ids) for tag, ids in hashtag_articles.items()},
    )


def classify_hashtags(
    candidate_hashtags: set[str],
    history: HistoryWindow,
    params: RelevanceParams,
    article_id: str | None = None,
) -> list[HashtagLabel]:
    """Label candidates generic or article-specific from history usage.

    Generic requires attachment to enough distinct prior articles or a
    usage count above the history's frequency quantile. With an empty
    history everything is article-specific (a warning is logged).
    """
    if history.empty and candidate_hashtags:
        log.warning(
            "empty hashtag history window; labelling all %d candidates article-specific",
            len(candidate_hashtags),
        )
        return [
            HashtagLabel(tag, HashtagKind.ARTICLE_SPECIFIC, article_id)
            for tag in sorted(candidate_hashtags)
        ]
    threshold = history.count_quantile(params.generic_frequency_quantile)
    labels = []
    for tag in sorted(candidate_hashtags):
        attached = len(history.hashtag_articles.get(tag, ()))
        count = history.hashtag_counts.get(tag, 0)
        if attached >= params.generic_article_threshold or count > threshold:
            labels.append(HashtagLabel(tag, HashtagKind.GENERIC))
        else:
            labels.append(HashtagLabel(tag, HashtagKind.ARTICLE_SPECIFIC, article_id))
    return labels


def expand_association(
    article: NewsArticle,
    profile: KeywordProfile,
    corpus: Corpus,
    params: RelevanceParams,
    history: HistoryWindow | None = None,
    seed_ids: set[str] | None = None,
) -> ArticleAssociation:
    """Grow the article's tweet set from seeds via specific hashtags.

    Each iteration classifies newly harvested hashtags and admits every
    same-day tweet carrying any article-specific hashtag; iteration
    stops at a fixpoint or after `params.max_iterations` growth steps.
    """
    day_tweets = corpus.tweets_on(article.published_day)
    if seed_ids is None:
        seed_ids = seed_tweets(profile, day_tweets, params.min_overlap)
    if history is None:
        history = build_history(corpus, article, params)

    current = set(seed_ids)
    specific: set[str] = set()
    generic: set[str] = set()
    classified: set[str] = set()
    iterations_run = 0
    for iteration in range(1, params.max_iterations + 1):
        harvested = set()
        for tweet_id in current:
            harvested.update(corpus.tweet_by_id[tweet_id].hashtags)
        for label in classify_hashtags(harvested - classified, history, params, article.id):
            classified.add(label.hashtag)
            if label.kind is HashtagKind.GENERIC:
                generic.add(label.hashtag)
            else:
                specific.add(label.hashtag)
        additions = {
            t.id for t in day_tweets if t.hashtags & specific and t.id not in current
        }
        if not additions:
            break
        current.update(additions)
        iterations_run = iteration

    return ArticleAssociation(
        article_id=article.id,
        seed_tweet_ids=frozenset(seed_ids),
        expanded_tweet_ids=frozenset(current),
        article_specific_hashtags=frozenset(specific),
        generic_hashtags=frozenset(generic),
        iterations_run=iterations_run,
    )


def associate_all(
    corpus: Corpus, params: RelevanceParams, jobs: int = 1
) -> list[ArticleAssociation]:
    """Associations for every article, ordered by article id."""
    articles = sorted(corpus.articles, key=lambda a: a.id)
    profiles = {
        a.id: tfidf_keywords(
            a, list(corpus.articles), k=params.keyword_count, source=params.keywords_source
        )
        for a in articles
    }
    seeds = {
        a.id: frozenset(
            seed_tweets(profiles[a.id], corpus.tweets_on(a.published_day), params.min_overlap)
        )
        for a in articles
    }

    def run(article: NewsArticle) -> ArticleAssociation:
        history = build_history(corpus, article, params, profiles, seeds)
        return expand_association(
            article, profiles[article.id], corpus, params,
            history=history, seed_ids=set(seeds[article.id]),
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, articles))
    return [run(a) for a in articles]


def association_to_dict(assoc: ArticleAssociation) -> dict:
    return {
        "article_id": assoc.article_id,
        "seed_tweet_ids": sorted(assoc.seed_tweet_ids),
        "expanded_tweet_ids": sorted(assoc.expanded_tweet_ids),
        "article_specific_hashtags": sorted(assoc.article_specific_hashtags),
        "generic_hashtags": sorted(assoc.generic_hashtags),
        "iterations_run": assoc.iterations_run,
    }


def write_associations(path, associations: list[ArticleAssociation]) -> None:
    ordered = sorted(associations, key=lambda a: a.article_id)
    with open(path, "w", encoding="utf-8") as fh:
        for assoc in ordered:
            fh.write(json.dumps(association_to_dict(assoc), ensure_ascii=False) + "\n")


def load_associations(path) -> list[ArticleAssociation]:
    associations = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            associations.append(
                ArticleAssociation(
                    article_id=obj["article_id"],
                    seed_tweet_ids=frozenset(obj["seed_tweet_ids"]),
                    expanded_tweet_ids=frozenset(obj["expanded_tweet_ids"]),
                    article_specific_hashtags=frozenset(obj["article_specific_hashtags"]),
                    generic_hashtags=frozenset(obj["generic_hashtags"]),
                    iterations_run=obj["iterations_run"],
                )
            )
    return associations
