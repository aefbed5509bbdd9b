"""Rule-based tweet sentiment scoring and emotion tagging.

Scoring is fully deterministic: a token's lexicon valence is adjusted by
negators, boosters, and ALL-CAPS emphasis found in a three-token window,
and the adjusted sum S is squashed to S / sqrt(S^2 + 15).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from importlib import resources

from nextday.text import tokenize, tokenize_cased

NEGATION_SCALAR = -0.74
CAPS_INCREMENT = 0.733
NORMALIZATION_ALPHA = 15.0
MODIFIER_WINDOW = 3

POSITIVE_THRESHOLD = 0.05
NEGATIVE_THRESHOLD = -0.05

EMOTION_CATEGORIES = (
    "anger",
    "anticipation",
    "disgust",
    "fear",
    "joy",
    "sadness",
    "surprise",
    "trust",
)


class LexiconError(ValueError):
    """Malformed lexicon file."""


class Sentiment(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class SentimentLabel:
    sentiment: Sentiment
    compound: float


@dataclass(frozen=True)
class SentimentLexicon:
    entries: dict[str, float]
    negators: frozenset[str]
    boosters: dict[str, float]


@dataclass(frozen=True)
class EmotionLexicon:
    entries: dict[str, frozenset[str]]


@dataclass(frozen=True)
class Lexicons:
    sentiment: SentimentLexicon
    emotions: EmotionLexicon


def _lexicon_key(token: str) -> str:
    return token.lower().replace("'", "")


def score_sentiment(text: str, lex: SentimentLexicon) -> float:
    """Compound sentiment of `text` in (-1, 1); 0.0 when nothing matches.

    Per scored token, modifiers in the three preceding tokens apply in a
    fixed order: each negator multiplies the valence by -0.74, each
    booster then shifts it by its increment toward the current sign, and
    an ALL-CAPS surface form finally adds 0.733 toward the current sign.
    Negator tokens themselves are never scored as lexicon entries.
    """
    tokens = tokenize_cased(text)
    total = 0.0
    for i, token in enumerate(tokens):
        key = _lexicon_key(token)
        if key in lex.negators or key not in lex.entries:
            continue
        valence = lex.entries[key]
        window = tokens[max(0, i - MODIFIER_WINDOW) : i]
        for prior in window:
            if _lexicon_key(prior) in lex.negators:
                valence *= NEGATION_SCALAR
        for prior in window:
            increment = lex.boosters.get(_lexicon_key(prior))
            if increment is not None:
                valence += _toward_sign(valence, increment)
        if token.isupper() and any(c.isalpha() for c in token):
            valence += _toward_sign(valence, CAPS_INCREMENT)
        total += valence
    if total == 0.0:
        return 0.0
    return total / math.sqrt(total * total + NORMALIZATION_ALPHA)


def _toward_sign(valence: float, increment: float) -> float:
    if valence > 0:
        return increment
    if valence < 0:
        return -increment
    return 0.0


def classify_sentiment(compound: float) -> SentimentLabel:
    """Map a compound score to positive/negative/neutral (thresholds +-0.05)."""
    if compound >= POSITIVE_THRESHOLD:
        return SentimentLabel(Sentiment.POSITIVE, compound)
    if compound <= NEGATIVE_THRESHOLD:
        return SentimentLabel(Sentiment.NEGATIVE, compound)
    return SentimentLabel(Sentiment.NEUTRAL, compound)


def tag_emotions(text: str, lex: EmotionLexicon) -> dict[str, int]:
    """Count lexicon hits per emotion category (bag of words).

    A token contributes one hit to every category it is associated with.
    """
    counts = dict.fromkeys(EMOTION_CATEGORIES, 0)
    for token in tokenize(text):
        for category in lex.entries.get(token, ()):
            counts[category] += 1
    return counts


def dominant_emotion(hits: dict[str, int]) -> str | None:
    """Category with the most hits; ties go to the earlier category in
    the fixed order; None when all counts are zero."""
    best: str | None = None
    best_count = 0
    for category in EMOTION_CATEGORIES:
        count = hits.get(category, 0)
        if count > best_count:
            best = category
            best_count = count
    return best


def _data_lines(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rows.append((line_no, line.rstrip("\n").split("\t")))
    return rows


def parse_sentiment_lexicon(
    text: str,
    negators: frozenset[str] = frozenset(),
    boosters: dict[str, float] | None = None,
    path="<string>",
) -> SentimentLexicon:
    entries: dict[str, float] = {}
    for line_no, cols in _data_lines(text):
        if len(cols) < 2:
            raise LexiconError(f"{path}:{line_no}: expected token<TAB>valence")
        token = cols[0].strip().lower()
        try:
            valence = float(cols[1])
        except ValueError:
            raise LexiconError(f"{path}:{line_no}: bad valence {cols[1]!r}") from None
        if not -4.0 <= valence <= 4.0:
            raise LexiconError(f"{path}:{line_no}: valence {valence} outside [-4, 4]")
        entries[token] = valence
    return SentimentLexicon(
        entries=entries, negators=negators, boosters=dict(boosters or {})
    )


def parse_emotion_lexicon(text: str, path="<string>") -> EmotionLexicon:
    collected: dict[str, set[str]] = {}
    for line_no, cols in _data_lines(text):
        if len(cols) != 3:
            raise LexiconError(f"{path}:{line_no}: expected token<TAB>category<TAB>flag")
        token, category, flag = (c.strip() for c in cols)
        if category not in EMOTION_CATEGORIES:
            raise LexiconError(f"{path}:{line_no}: unknown category {category!r}")
        if flag not in ("0", "1"):
            raise LexiconError(f"{path}:{line_no}: flag must be 0 or 1")
        if flag == "1":
            collected.setdefault(token.lower(), set()).add(category)
    return EmotionLexicon(
        entries={token: frozenset(cats) for token, cats in collected.items()}
    )


def parse_negators(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line.replace("'", ""))
    return frozenset(words)


def parse_boosters(text: str, path="<string>") -> dict[str, float]:
    boosters: dict[str, float] = {}
    for line_no, cols in _data_lines(text):
        if len(cols) < 2:
            raise LexiconError(f"{path}:{line_no}: expected token<TAB>increment")
        try:
            boosters[cols[0].strip().lower()] = float(cols[1])
        except ValueError:
            raise LexiconError(f"{path}:{line_no}: bad increment {cols[1]!r}") from None
    return boosters


def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _resource(name: str) -> str:
    return resources.files("nextday.data").joinpath(name).read_text("utf-8")


def load_sentiment_lexicon(path, negators_path=None, boosters_path=None) -> SentimentLexicon:
    negators = parse_negators(_read(negators_path) if negators_path else _resource("negators.txt"))
    boosters = parse_boosters(_read(boosters_path) if boosters_path else _resource("boosters.tsv"))
    return parse_sentiment_lexicon(_read(path), negators, boosters, path=path)


def load_emotion_lexicon(path) -> EmotionLexicon:
    return parse_emotion_lexicon(_read(path), path=path)


def default_sentiment_lexicon() -> SentimentLexicon:
    return parse_sentiment_lexicon(
        _resource("sentiment.tsv"),
        parse_negators(_resource("negators.txt")),
        parse_boosters(_resource("boosters.tsv")),
        path="sentiment.tsv",
    )


def default_emotion_lexicon() -> EmotionLexicon:
    return parse_emotion_lexicon(_resource("emotions.tsv"), path="emotions.tsv")


def default_lexicons() -> Lexicons:
    return Lexicons(default_sentiment_lexicon(), default_emotion_lexicon())


def lexicons_from_paths(
    sentiment=None, emotions=None, negators=None, boosters=None
) -> Lexicons:
    """Load lexicons, falling back to the bundled files for unset paths."""
    negator_set = parse_negators(_read(negators) if negators else _resource("negators.txt"))
    booster_map = parse_boosters(_read(boosters) if boosters else _resource("boosters.tsv"))
    if sentiment:
        sentiment_lex = parse_sentiment_lexicon(
            _read(sentiment), negator_set, booster_map, path=sentiment
        )
    else:
        sentiment_lex = parse_sentiment_lexicon(
            _resource("sentiment.tsv"), negator_set, booster_map, path="sentiment.tsv"
        )
    emotion_lex = (
        parse_emotion_lexicon(_read(emotions), path=emotions)
        if emotions
        else default_emotion_lexicon()
    )
    return Lexicons(sentiment_lex, emotion_lex)
