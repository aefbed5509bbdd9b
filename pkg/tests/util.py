"""Small builders shared across test modules."""

from datetime import datetime, timezone

from nextday.corpus import NewsArticle, Tweet, UserProfile, build_corpus
from nextday.text import extract_hashtags


def utc(year=2016, month=8, day=3, hour=12, minute=0) -> datetime:
    return datetime(year, month, day, hour, minute, tzinfo=timezone.utc)


def article(id="a1", title="Budget vote", body="The budget vote passed.", when=None, label=0):
    return NewsArticle(
        id=id, title=title, body=body, published_at=when or utc(), label=label
    )


def tweet(id="t1", text="hello world", user_id="u1", when=None, rt=0, fav=0, hashtags=()):
    return Tweet(
        id=id,
        text=text,
        user_id=user_id,
        created_at=when or utc(),
        retweet_count=rt,
        favorite_count=fav,
        hashtags=frozenset(hashtags) | extract_hashtags(text),
    )


def user(user_id="u1", followers=10, last_active=None, verified=False):
    return UserProfile(
        user_id=user_id,
        followers_count=followers,
        last_active_at=last_active or utc(month=8, day=1),
        verified=verified,
    )


def corpus_of(articles=(), tweets=(), users=()):
    return build_corpus(list(articles), list(tweets), list(users))
