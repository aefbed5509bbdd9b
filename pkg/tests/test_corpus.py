import io
import json

import pytest

from nextday.corpus import (
    CorpusError,
    article_to_dict,
    emit_diagnostics,
    load_articles,
    load_corpus,
    load_tweets,
    load_users,
    parse_rfc3339,
    tweet_to_dict,
    user_to_dict,
    write_jsonl,
)

from util import article, corpus_of, tweet, user, utc


def write_lines(path, *lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestLoadArticles:
    def test_single_line(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"T","body":"B","published_at":"2016-08-08T06:00:00Z","label":1}',
        )
        arts = load_articles(path)
        assert len(arts) == 1
        assert arts[0].id == "a1"
        assert arts[0].label == 1
        assert arts[0].published_at == utc(2016, 8, 8, 6)
        assert arts[0].section is None

    def test_empty_file(self, tmp_path):
        path = tmp_path / "a.jsonl"
        path.write_text("")
        assert load_articles(path) == []

    def test_label_out_of_range(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"T","body":"B","published_at":"2016-08-08T06:00:00Z","label":2}',
        )
        with pytest.raises(CorpusError, match="label out of range at line 1"):
            load_articles(path)

    def test_duplicate_id_named(self, tmp_path):
        line = '{"id":"a1","title":"T","body":"B","published_at":"2016-08-08T06:00:00Z","label":0}'
        path = write_lines(tmp_path / "a.jsonl", line, line)
        with pytest.raises(CorpusError, match="duplicate article id 'a1'"):
            load_articles(path)

    def test_malformed_line_number(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"T","body":"B","published_at":"2016-08-08T06:00:00Z","label":0}',
            "{broken",
        )
        with pytest.raises(CorpusError, match="line 2"):
            load_articles(path)

    def test_missing_field_named(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"T","published_at":"2016-08-08T06:00:00Z","label":0}',
        )
        with pytest.raises(CorpusError, match="'body'.*line 1"):
            load_articles(path)

    def test_blank_title_rejected(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"  ","body":"B","published_at":"2016-08-08T06:00:00Z","label":0}',
        )
        with pytest.raises(CorpusError, match="empty title or body at line 1"):
            load_articles(path)

    def test_bad_timestamp(self, tmp_path):
        path = write_lines(
            tmp_path / "a.jsonl",
            '{"id":"a1","title":"T","body":"B","published_at":"yesterday","label":0}',
        )
        with pytest.raises(CorpusError, match="bad published_at at line 1"):
            load_articles(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CorpusError, match="cannot open"):
            load_articles(tmp_path / "nope.jsonl")


class TestLoadTweets:
    def test_hashtags_extracted_from_text(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "vote #Trump #RepealObamacare",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": 0,
                    "favorite_count": 0,
                }
            ),
        )
        (tw,) = load_tweets(path)
        assert tw.hashtags == {"trump", "repealobamacare"}

    def test_no_hashtags(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "no tags here",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": 0,
                    "favorite_count": 0,
                    "hashtags": [],
                }
            ),
        )
        (tw,) = load_tweets(path)
        assert tw.hashtags == frozenset()

    def test_double_hash(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "##x",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": 0,
                    "favorite_count": 0,
                }
            ),
        )
        (tw,) = load_tweets(path)
        assert tw.hashtags == {"x"}

    def test_supplied_hashtags_unioned_and_normalized(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "text with #Inline",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": 1,
                    "favorite_count": 2,
                    "hashtags": ["#Supplied", "MiXeD"],
                }
            ),
        )
        (tw,) = load_tweets(path)
        assert tw.hashtags == {"inline", "supplied", "mixed"}

    def test_negative_count_rejected(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "x",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": -1,
                    "favorite_count": 0,
                }
            ),
        )
        with pytest.raises(CorpusError, match="negative retweet_count at line 1"):
            load_tweets(path)

    def test_bad_supplied_hashtag(self, tmp_path):
        path = write_lines(
            tmp_path / "t.jsonl",
            json.dumps(
                {
                    "id": "t1",
                    "text": "x",
                    "user_id": "u1",
                    "created_at": "2016-08-08T06:00:00Z",
                    "retweet_count": 0,
                    "favorite_count": 0,
                    "hashtags": ["bad tag"],
                }
            ),
        )
        with pytest.raises(CorpusError, match="invalid hashtag"):
            load_tweets(path)

    def test_malformed_timestamp_line_number(self, tmp_path):
        good = json.dumps(
            {
                "id": "t1",
                "text": "x",
                "user_id": "u1",
                "created_at": "2016-08-08T06:00:00Z",
                "retweet_count": 0,
                "favorite_count": 0,
            }
        )
        bad = good.replace("2016-08-08T06:00:00Z", "not-a-time").replace("t1", "t2")
        path = write_lines(tmp_path / "t.jsonl", good, bad)
        with pytest.raises(CorpusError, match="bad created_at at line 2"):
            load_tweets(path)


class TestLoadUsers:
    def test_basic(self, tmp_path):
        path = write_lines(
            tmp_path / "u.jsonl",
            '{"user_id":"u1","followers_count":1500,"last_active_at":"2016-08-01T00:00:00Z","verified":false}',
        )
        (profile,) = load_users(path)
        assert profile.followers_count == 1500
        assert profile.verified is False

    def test_negative_followers(self, tmp_path):
        path = write_lines(
            tmp_path / "u.jsonl",
            '{"user_id":"u1","followers_count":-1,"last_active_at":"2016-08-01T00:00:00Z","verified":false}',
        )
        with pytest.raises(CorpusError, match="negative followers_count"):
            load_users(path)

    def test_duplicate_user(self, tmp_path):
        line = '{"user_id":"u1","followers_count":5,"last_active_at":"2016-08-01T00:00:00Z","verified":true}'
        path = write_lines(tmp_path / "u.jsonl", line, line)
        with pytest.raises(CorpusError, match="duplicate user_id 'u1'"):
            load_users(path)


class TestBuildCorpus:
    def test_article_only_corpus_has_empty_hashtag_index(self):
        corpus = corpus_of(articles=[article()])
        assert corpus.hashtag_index == {}

    def test_unknown_user_is_diagnostic_not_error(self):
        corpus = corpus_of(tweets=[tweet(user_id="ghost")])
        assert corpus.diagnostics == ({"kind": "unresolved_user", "user_id": "ghost"},)

    def test_shared_hashtag_indexes_both_tweets(self):
        corpus = corpus_of(
            tweets=[
                tweet(id="t1", text="one #irandeal"),
                tweet(id="t2", text="two #irandeal"),
            ]
        )
        assert corpus.hashtag_index["irandeal"] == ("t1", "t2")

    def test_index_completeness(self, golden_corpus):
        for tw in golden_corpus.tweets:
            for tag in tw.hashtags:
                assert tw.id in golden_corpus.hashtag_index[tag]
        for tag, ids in golden_corpus.hashtag_index.items():
            for tid in ids:
                assert tag in golden_corpus.tweet_by_id[tid].hashtags

    def test_indexes_sorted(self, golden_corpus):
        keys = list(golden_corpus.hashtag_index)
        assert keys == sorted(keys)
        for ids in golden_corpus.user_index.values():
            assert list(ids) == sorted(ids)

    def test_diagnostics_wire_format(self):
        corpus = corpus_of(tweets=[tweet(user_id="ghost")])
        sink = io.StringIO()
        emit_diagnostics(corpus, sink)
        assert sink.getvalue() == '{"kind": "unresolved_user", "user_id": "ghost"}\n'


class TestRoundTrip:
    def test_golden_corpus_round_trips(self, tmp_path, golden_corpus):
        write_jsonl(tmp_path / "a.jsonl", (article_to_dict(a) for a in golden_corpus.articles))
        write_jsonl(tmp_path / "t.jsonl", (tweet_to_dict(t) for t in golden_corpus.tweets))
        write_jsonl(tmp_path / "u.jsonl", (user_to_dict(u) for u in golden_corpus.users))
        again = load_corpus(tmp_path / "a.jsonl", tmp_path / "t.jsonl", tmp_path / "u.jsonl")
        assert again.articles == golden_corpus.articles
        assert again.tweets == golden_corpus.tweets
        assert again.users == golden_corpus.users
        assert again.hashtag_index == golden_corpus.hashtag_index
        assert again.diagnostics == golden_corpus.diagnostics

    def test_hashtag_extraction_idempotent(self, golden_corpus):
        # re-serializing puts hashtags in the explicit field; text extraction
        # must add nothing new
        for tw in golden_corpus.tweets:
            again = tweet_to_dict(tw)
            assert set(again["hashtags"]) == tw.hashtags

    def test_timestamp_round_trip(self):
        stamps = ["2016-08-08T06:00:00Z", "2016-08-08T06:00:00.250000Z", "2016-08-08T08:30:00+02:30"]
        for stamp in stamps:
            parsed = parse_rfc3339(stamp)
            assert parse_rfc3339(parsed.isoformat()) == parsed

    def test_naive_timestamp_rejected(self):
        with pytest.raises(ValueError, match="lacks a UTC offset"):
            parse_rfc3339("2016-08-08T06:00:00")
