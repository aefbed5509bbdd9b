#!/usr/bin/env python3
"""Regenerate the committed golden corpus under tests/data/golden/.

The corpus is constructed so every article's tweet associations are known
in advance: each article's body repeats exactly ten theme tokens that
appear nowhere else, seed tweets contain at least three of them, and
expansion tweets are reachable only through planted article-specific
hashtags. Expected outputs (associations, reaction indices, the proposed
feature CSV) are computed here from the construction tables with an
independent implementation of the documented rules; the script never
imports the package, so the committed files work as an oracle for it.

Layout: 4 front-day articles on 2016-08-03 mirroring known generic /
article-specific hashtag patterns, 22 prior-window articles on distinct
days, 200 tweets total, 24 user profiles plus 2 unresolved authors.
"""

import json
import math
import re
from collections import Counter
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data" / "golden"
DATA = ROOT / "src" / "nextday" / "data"

DAY0 = date(2016, 8, 3)

MIN_OVERLAP = 3
GENERIC_ARTICLE_THRESHOLD = 5
GENERIC_QUANTILE = 0.90
HISTORY_DAYS = 30
ACTIVE_WINDOW_DAYS = 30

TOKEN_RE = re.compile(r"[a-z0-9_]+")
CASED_TOKEN_RE = re.compile(r"[A-Za-z0-9_']+")
HASHTAG_RE = re.compile(r"#([A-Za-z0-9_]+)")

EMOTIONS = ("anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust")

GENERIC_TAGS = [
    "whitehouse", "trump2016", "chicago", "cnn", "pressecretary", "maga",
    "trump", "nevertrump", "us", "crookedhillary", "neverhillary",
    "shortcircuit", "hillary",
]

# 22 disjoint ten-token themes for the prior-window articles.
HISTORY_THEMES = [
    ["senate", "filibuster", "cloture", "amendment", "quorum", "gavel", "caucus", "rollcall", "recess", "motion"],
    ["border", "fence", "patrol", "checkpoint", "asylum", "customs", "visa500", "smuggler", "crossing", "detention"],
    ["economy", "jobs", "wages", "factories", "exports", "tariffs", "manufacturing", "growth", "payroll", "hiring"],
    ["healthcare", "hospital500", "clinics", "medicare", "medicaid", "doctors", "nurses", "patients", "premiums500", "billing"],
    ["education", "schools", "teachers", "tuition", "classrooms", "curriculum", "students", "textbooks", "charter", "grants"],
    ["climate", "emissions", "carbon", "renewable", "solar", "windfarm", "pipeline", "drilling", "methane", "epa500"],
    ["pentagon", "military", "troops", "deployment", "carrier", "brigade", "veterans", "armor", "munitions", "logistics"],
    ["russia", "kremlin", "sanctions", "oligarch", "moscow", "diplomat", "embassy", "espionage500", "summit", "treaty"],
    ["china", "beijing", "yuan", "shipping", "ports", "factories500", "trade", "soybeans", "steel", "aluminum"],
    ["police", "precinct", "patrolman", "bodycam", "arrests", "warrant", "sheriff", "deputies", "custody", "booking"],
    ["housing", "mortgage", "foreclosure", "renters", "landlords", "eviction", "zoning", "appraisal", "realtors", "deeds"],
    ["transit", "subway", "commuters", "turnstile", "conductor", "repairs", "signals", "delays500", "fares", "platforms"],
    ["banking", "lenders", "deposits", "regulators", "bailout", "audits", "branches", "tellers", "overdraft", "ledgers"],
    ["farming", "harvest", "drought", "irrigation", "tractors", "silos", "ranchers", "cattle", "feedlots", "grain"],
    ["internet", "broadband", "routers", "providers", "streaming", "bandwidth", "outages", "servers", "datacenter", "fiber"],
    ["courts", "appeals", "verdict", "jurors", "testimony", "subpoena", "docket", "litigants", "clerks", "gavels"],
    ["airports", "runways", "pilots", "turbulence", "boarding", "layover", "terminals", "luggage", "takeoff", "hangars"],
    ["pensions", "retirees", "annuities", "actuaries", "benefits", "payouts", "trustees", "solvency", "contributions", "vesting"],
    ["drugs", "opioids", "overdose", "naloxone", "pharmacies", "prescriptions", "addiction", "rehab", "fentanyl", "dosage"],
    ["energy", "reactors", "uranium", "turbines", "gridlock500", "blackout", "utilities", "megawatts", "substations", "meters"],
    ["media", "newsroom", "editors", "headlines", "circulation", "subscribers", "printing", "paywall", "columnists", "datelines"],
    ["labor", "unions", "strikes", "picket", "negotiators", "contracts", "overtime", "grievance", "arbitration", "stewards"],
]

TARGETS = {
    "a001": {
        "title": "GOP blasts Obama's $400M 'secret ransom' paid to Iran",
        "theme": ["iran", "ransom", "obama", "cash", "secret", "million", "payment", "hostages", "tehran", "airlift"],
        "label": 1,
        "specific": ["irandeal", "obamabetrayus"],
        "generic": ["whitehouse", "trump2016", "chicago", "cnn", "pressecretary"],
    },
    "a002": {
        "title": "Melania Trump: I have never lived in the US illegally",
        "theme": ["melania", "visa", "immigration", "sponsor", "modeling", "paperwork", "citizenship", "residency", "petition", "chronology"],
        "label": 1,
        "specific": ["illegalimmigration", "melaniaimmigration"],
        "generic": ["trump", "nevertrump", "us"],
    },
    "a003": {
        "title": "Hillary to blame for Iranian scientist's hanging, general says",
        "theme": ["clinton", "emails", "server", "scientist", "execution", "nuclear", "treason", "intelligence", "leak", "espionage"],
        "label": 0,
        "specific": [],
        "generic": ["crookedhillary", "neverhillary", "shortcircuit", "hillary"],
    },
    "a004": {
        "title": "Obamacare hikes has families struggling to afford insurance",
        "theme": ["obamacare", "insurance", "deductible", "coverage", "enrollees", "subsidies", "exchanges", "marketplace", "copay", "actuary"],
        "label": 0,
        "specific": ["repealobamacare"],
        "generic": ["trump", "maga"],
    },
}

JUNK_TOKENS = [
    "weather", "brunch", "playlist", "marathon", "gadgets", "recipes", "kittens",
    "sneakers", "concert", "puzzles", "gardening", "baseball", "skyline", "museum",
]


def ts(day: date, hour: int, minute: int = 0) -> str:
    stamp = datetime(day.year, day.month, day.day, hour, minute, tzinfo=timezone.utc)
    return stamp.isoformat().replace("+00:00", "Z")


def load_stopwords() -> set:
    words = set()
    for line in (DATA / "stopwords.txt").read_text().splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            words.add(line)
    return words


def load_sentiment():
    entries = {}
    for line in (DATA / "sentiment.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        token, valence = line.split("\t")
        entries[token] = float(valence)
    negators = {
        line.strip().replace("'", "")
        for line in (DATA / "negators.txt").read_text().splitlines()
        if line.strip() and not line.startswith("#")
    }
    boosters = {}
    for line in (DATA / "boosters.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        token, increment = line.split("\t")
        boosters[token] = float(increment)
    return entries, negators, boosters


def load_emotions():
    entries = {}
    for line in (DATA / "emotions.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        token, category, flag = line.split("\t")
        if flag == "1":
            entries.setdefault(token, set()).add(category)
    return entries


SENT_ENTRIES, SENT_NEGATORS, SENT_BOOSTERS = load_sentiment()
EMO_ENTRIES = load_emotions()
STOPWORDS = load_stopwords()


def compound_score(text: str) -> float:
    tokens = CASED_TOKEN_RE.findall(text)
    total = 0.0
    for i, token in enumerate(tokens):
        key = token.lower().replace("'", "")
        if key in SENT_NEGATORS or key not in SENT_ENTRIES:
            continue
        valence = SENT_ENTRIES[key]
        window = tokens[max(0, i - 3) : i]
        for prior in window:
            if prior.lower().replace("'", "") in SENT_NEGATORS:
                valence *= -0.74
        for prior in window:
            inc = SENT_BOOSTERS.get(prior.lower().replace("'", ""))
            if inc is not None and valence != 0.0:
                valence += inc if valence > 0 else -inc
        if token.isupper() and any(c.isalpha() for c in token):
            if valence > 0:
                valence += 0.733
            elif valence < 0:
                valence -= 0.733
        total += valence
    if total == 0.0:
        return 0.0
    return total / math.sqrt(total * total + 15.0)


def tweet_sentiment(text: str) -> str:
    score = compound_score(text)
    if score >= 0.05:
        return "positive"
    if score <= -0.05:
        return "negative"
    return "neutral"


def tweet_emotion(text: str):
    counts = dict.fromkeys(EMOTIONS, 0)
    for token in TOKEN_RE.findall(text.lower()):
        for category in EMO_ENTRIES.get(token, ()):
            counts[category] += 1
    best, best_count = None, 0
    for category in EMOTIONS:
        if counts[category] > best_count:
            best, best_count = category, counts[category]
    return best


def body_from_theme(theme: list) -> str:
    """A body whose non-stop tokens are exactly the theme, each used twice."""
    t = theme
    sentences = [
        f"The {t[0]} and the {t[1]} were once more at the {t[2]}.",
        f"A {t[3]} over the {t[4]} has been the {t[5]} of this {t[6]}.",
        f"Those with the {t[7]} should now own the {t[8]} and the {t[9]}.",
        f"From the {t[0]} to the {t[9]}, each {t[1]} was a {t[8]}.",
        f"If the {t[2]} has the {t[3]}, then the {t[4]} will be its {t[5]}.",
        f"No {t[6]} can be above the {t[7]} here.",
    ]
    return " ".join(sentences)


def content_tokens(text: str) -> set:
    return {t for t in TOKEN_RE.findall(text.lower()) if t not in STOPWORDS}


def hashtags_of(text: str) -> set:
    return {m.lower() for m in HASHTAG_RE.findall(text)}


class T:
    """One planted tweet."""

    def __init__(self, tid, day, hour, text, user, rt, fav, article=None, role="other"):
        self.id = tid
        self.day = day
        self.hour = hour
        self.text = text
        self.user = user
        self.rt = rt
        self.fav = fav
        self.article = article  # owning article id, None for distractors/fillers
        self.role = role  # seed | extra | distractor | filler
        self.hashtags = hashtags_of(text)

    def row(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "user_id": self.user,
            "created_at": ts(self.day, self.hour, 0),
            "retweet_count": self.rt,
            "favorite_count": self.fav,
        }


def build() -> None:
    articles = []  # dicts for articles.jsonl
    article_info = {}  # id -> {day, theme set, label}
    tweets = []

    # --- prior-window articles, one per day -------------------------------
    history_ids = []
    for i, theme in enumerate(HISTORY_THEMES, start=1):
        aid = f"h{i:02d}"
        history_ids.append(aid)
        day = DAY0 - timedelta(days=23 - i)
        unique_tag = f"{theme[0]}talk"
        generics = [GENERIC_TAGS[(4 * (i - 1) + j) % len(GENERIC_TAGS)] for j in range(4)]
        title = f"City braces as {theme[0]} fight over {theme[1]} deepens"
        body = body_from_theme(theme)
        label = 1 if i % 2 == 0 else 0
        articles.append(
            {
                "id": aid,
                "title": title,
                "body": body,
                "published_at": ts(day, 6),
                "label": label,
                "section": "politics",
            }
        )
        article_info[aid] = {"day": day, "theme": set(theme), "label": label, "unique": unique_tag, "generics": generics}

        mood = ["great hope for", "a terrible blow to", "good faith in", "an outrage over"]
        base_user = 2 * (i - 1) % 20
        authors = [f"u{(base_user + k) % 20 + 1:02d}" for k in (0, 1, 2, 3, 0, 4)]
        for j in range(4):  # seeds: three theme tokens + one generic + unique tag
            text = (
                f"So the {theme[3 * j % 10]} and the {theme[(3 * j + 1) % 10]} are "
                f"{mood[j]} the {theme[(3 * j + 2) % 10]} #{generics[j]} #{unique_tag}"
            )
            tweets.append(
                T(f"t_{aid}_s{j}", day, 9 + j, text, authors[j], (5 * i + 3 * j) % 23, (3 * i + 2 * j) % 17, aid, "seed")
            )
        for j in range(2):  # extras: reachable only through the unique tag
            word = "win" if j == 0 else "disaster"
            text = f"This is a {word} for the city, no doubt about it #{unique_tag}"
            tweets.append(
                T(f"t_{aid}_e{j}", day, 14 + j, text, authors[4 + j], (2 * i + j) % 11, (i + 3 * j) % 9, aid, "extra")
            )

    # --- front-day articles ------------------------------------------------
    for aid, spec in TARGETS.items():
        articles.append(
            {
                "id": aid,
                "title": spec["title"],
                "body": body_from_theme(spec["theme"]),
                "published_at": ts(DAY0, 6),
                "label": spec["label"],
                "section": "politics",
            }
        )
        article_info[aid] = {
            "day": DAY0,
            "theme": set(spec["theme"]),
            "label": spec["label"],
            "unique": None,
            "generics": spec["generic"],
        }

    target_tweets = {
        "a001": {
            "seeds": [
                ("he gave 400 million in cash to iran, a secret payment #irandeal", "u01", 31, 12),
                ("the secret ransom of cash that obama sent to tehran is a disgrace #whitehouse #irandeal", "u02", 22, 9),
                ("an airlift of cash for hostages is a ransom, period #obamabetrayus #trump2016", "u03", 18, 7),
                ("great, another secret million dollar payment to iran #cnn #chicago", "u04", 12, 4),
                ("obama calls it leverage, tehran calls it ransom money for hostages #pressecretary", "u05", 9, 3),
                ("the payment was cash, the cash was secret, and iran knew it #irandeal", "u01", 7, 2),
            ],
            "extras": [
                ("wake up america, this is terrible #obamabetrayus", "u06", 15, 6),
                ("no trust left after this disaster #irandeal", "u07", 11, 5),
                ("an outrage, nothing less #obamabetrayus", "u08", 8, 2),
                ("they will never admit the truth #irandeal", "ghost1", 5, 1),
                ("hope we win in november #irandeal", "u09", 4, 1),
            ],
        },
        "a002": {
            "seeds": [
                ("what visa did melania use before her immigration paperwork cleared #illegalimmigration", "u10", 14, 6),
                ("her modeling career began before the visa, the chronology and paperwork do not add up #trump", "u11", 10, 4),
                ("show the immigration petition and the residency dates, melania #nevertrump #illegalimmigration", "u12", 9, 3),
                ("a sponsor, a visa, a citizenship oath: the chronology matters #us", "u13", 6, 2),
                ("melania says her immigration and citizenship were clean, great #trump", "u10", 5, 2),
            ],
            "extras": [
                ("this story is a scandal waiting to happen #illegalimmigration #melaniaimmigration", "u14", 8, 3),
                ("nothing to see here, move along #melaniaimmigration", "u15", 4, 1),
                ("the lawyers love this mess #melaniaimmigration", "ghost2", 3, 1),
            ],
        },
        "a003": {
            "seeds": [
                ("clinton emails from her server outed a nuclear scientist #neverhillary", "u16", 20, 8),
                ("the execution of the scientist is on the server leak #crookedhillary #shortcircuit", "u17", 16, 6),
                ("treason charges, an execution, and intelligence leak traced to emails #hillary", "u18", 12, 5),
                ("her server, her emails, her leak: terrible judgment #crookedhillary", "u16", 9, 3),
            ],
            "extras": [],
        },
        "a004": {
            "seeds": [
                ("obamacare premiums up again, my deductible and copay are a disaster #repealobamacare", "u19", 17, 7),
                ("the insurance exchanges are failing and the enrollees pay for the coverage gap #trump #repealobamacare", "u20", 13, 5),
                ("subsidies cannot hide what the marketplace and the actuary already know #maga", "u21", 10, 4),
                ("my coverage shrank while the deductible grew, thanks obamacare #repealobamacare", "u22", 8, 3),
                ("insurance should not need an actuary to explain a copay #repealobamacare", "u19", 6, 2),
            ],
            "extras": [
                ("vote them out this fall #repealobamacare", "u23", 9, 4),
                ("my family is done with this law, we are so angry #repealobamacare", "u24", 7, 2),
                ("worst bill in a generation #repealobamacare", "u06", 5, 1),
                ("premiums, shmemiums #repealobamacare", "u07", 3, 1),
            ],
        },
    }

    for aid, spec in target_tweets.items():
        for j, (text, user, rt, fav) in enumerate(spec["seeds"]):
            tweets.append(T(f"t_{aid}_s{j}", DAY0, 8 + j % 10, text, user, rt, fav, aid, "seed"))
        for j, (text, user, rt, fav) in enumerate(spec["extras"]):
            tweets.append(T(f"t_{aid}_e{j}", DAY0, 12 + j % 8, text, user, rt, fav, aid, "extra"))

    distractor_rows = [
        ("vote in november, it matters #trump #maga", "u01"),
        ("watch the town hall tonight #cnn", "u05"),
        ("the press briefing ran long again #whitehouse #pressecretary", "u09"),
        ("windy day by the lake #chicago", "u13"),
        ("campaign bus rolls on #trump2016", "u17"),
        ("cable news never sleeps #cnn #us", "ghost1"),
        ("another day another rally #maga", "u21"),
        ("polls open soon enough #nevertrump #hillary", "u24"),
    ]
    for j, (text, user) in enumerate(distractor_rows):
        tweets.append(T(f"t_d{j:02d}", DAY0, 7 + j, text, user, j % 5, j % 3, None, "distractor"))

    # --- fillers: prior-window chatter with one-off tags -------------------
    n_fillers = 200 - len(tweets)
    for j in range(n_fillers):
        day = DAY0 - timedelta(days=2 + (j * 5) % 21)
        junk = JUNK_TOKENS[j % len(JUNK_TOKENS)]
        text = f"just out here thinking about {junk} again #{junk}{j:02d}"
        tweets.append(T(f"t_f{j:02d}", day, 6 + j % 14, text, f"u{j % 24 + 1:02d}", j % 4, j % 6, None, "filler"))
    assert len(tweets) == 200, len(tweets)

    # --- users --------------------------------------------------------------
    users = []
    for i in range(1, 25):
        uid = f"u{i:02d}"
        influential = i <= 8
        users.append(
            {
                "user_id": uid,
                "followers_count": 1500 + 700 * i if influential else 40 + 30 * i,
                "last_active_at": ts(date(2016, 8, 1), 12) if i % 6 != 5 else ts(date(2016, 5, 1), 12),
                "verified": i in (1, 5, 9),
            }
        )

    # --- construction audits -------------------------------------------------
    all_article_tokens = {}
    for art in articles:
        toks = Counter(
            t
            for t in TOKEN_RE.findall((art["title"] + "\n" + art["body"]).lower())
            if t not in STOPWORDS and len(t) >= 3
        )
        all_article_tokens[art["id"]] = toks
    for aid, info in article_info.items():
        toks = all_article_tokens[aid]
        for theme_token in info["theme"]:
            assert toks[theme_token] >= 2, (aid, theme_token, toks[theme_token])
        for other_id, other_toks in all_article_tokens.items():
            if other_id != aid:
                shared = info["theme"] & set(other_toks)
                assert not shared, (aid, other_id, shared)
        for token, count in toks.items():
            if token not in info["theme"]:
                assert count <= 1, (aid, token, count)

    by_day_articles = {}
    for aid, info in article_info.items():
        by_day_articles.setdefault(info["day"], []).append(aid)

    for tw in tweets:
        toks = content_tokens(tw.text)
        for aid in by_day_articles.get(tw.day, []):
            overlap = len(article_info[aid]["theme"] & toks)
            if tw.role == "seed" and tw.article == aid:
                assert overlap >= MIN_OVERLAP, (tw.id, aid, overlap)
            else:
                assert overlap < MIN_OVERLAP, (tw.id, aid, overlap, toks)

    # --- expected associations (independent rule arithmetic) ----------------
    def window_stats(day: date):
        start = day - timedelta(days=HISTORY_DAYS)
        counts = Counter()
        window_has_tweets = False
        for tw in tweets:
            if start <= tw.day < day:
                window_has_tweets = True
                counts.update(tw.hashtags)
        attach = {}
        for aid, info in article_info.items():
            if not start <= info["day"] < day:
                continue
            for tw in tweets:
                if tw.article == aid and tw.role == "seed":
                    for tag in tw.hashtags:
                        attach.setdefault(tag, set()).add(aid)
        return counts, attach, window_has_tweets

    def classify(candidates, counts, attach, window_has_tweets):
        generic, specific = set(), set()
        if not window_has_tweets:
            return generic, set(candidates)
        values = sorted(counts.values())
        threshold = values[min(max(1, math.ceil(GENERIC_QUANTILE * len(values))), len(values)) - 1] if values else 0
        for tag in candidates:
            if len(attach.get(tag, ())) >= GENERIC_ARTICLE_THRESHOLD or counts.get(tag, 0) > threshold:
                generic.add(tag)
            else:
                specific.add(tag)
        return generic, specific

    expected_assoc = {}
    for aid, info in article_info.items():
        own = [tw for tw in tweets if tw.article == aid]
        seeds = {tw.id for tw in own if tw.role == "seed"}
        counts, attach, nonempty = window_stats(info["day"])
        current = {tw.id for tw in own if tw.role == "seed"}
        tweets_by_id = {tw.id: tw for tw in tweets}
        day_tweets = [tw for tw in tweets if tw.day == info["day"]]
        generic, specific, classified = set(), set(), set()
        iterations = 0
        for iteration in range(1, 4):
            harvested = set()
            for tid in current:
                harvested.update(tweets_by_id[tid].hashtags)
            new_generic, new_specific = classify(harvested - classified, counts, attach, nonempty)
            classified |= harvested
            generic |= new_generic
            specific |= new_specific
            additions = {tw.id for tw in day_tweets if tw.hashtags & specific} - current
            if not additions:
                break
            current |= additions
            iterations = iteration
        expected_assoc[aid] = {
            "article_id": aid,
            "seed_tweet_ids": sorted(seeds),
            "expanded_tweet_ids": sorted(current),
            "article_specific_hashtags": sorted(specific),
            "generic_hashtags": sorted(generic),
            "iterations_run": iterations,
        }
        planted = {tw.id for tw in own}
        assert current == planted, (aid, current ^ planted)

    for aid, spec in TARGETS.items():
        assert set(expected_assoc[aid]["article_specific_hashtags"]) == set(spec["specific"]), (
            aid, expected_assoc[aid]["article_specific_hashtags"])
        assert set(expected_assoc[aid]["generic_hashtags"]) == set(spec["generic"]), (
            aid, expected_assoc[aid]["generic_hashtags"])

    # --- expected reaction and proposed features ----------------------------
    users_by_id = {u["user_id"]: u for u in users}
    corpus_max = max(len(v["expanded_tweet_ids"]) for v in expected_assoc.values())
    tweets_by_id = {tw.id: tw for tw in tweets}

    reaction = {}
    feature_rows = []
    for aid in sorted(article_info):
        info = article_info[aid]
        assoc = expected_assoc[aid]
        members = [tweets_by_id[tid] for tid in sorted(assoc["expanded_tweet_ids"])]
        n = len(members)
        pc = nc = 0
        emo_counts = dict.fromkeys(EMOTIONS, 0)
        for tw in members:
            mood = tweet_sentiment(tw.text)
            if mood == "positive":
                pc += 1
            elif mood == "negative":
                nc += 1
            emotion = tweet_emotion(tw.text)
            if emotion:
                emo_counts[emotion] += 1
        sv = 1.0 - abs(pc - nc) / (pc + nc) if pc + nc else 0.0
        ordered = [emo_counts[c] for c in EMOTIONS]
        mean = sum(ordered) / 8
        ev_total = 0.0
        for c in ordered:
            ev_total += (c - mean) ** 2
        ev = ev_total / 8
        reaction[aid] = {
            "positive_count": pc,
            "negative_count": nc,
            "emotion_counts": ordered,
            "sentiment_variance": sv,
            "emotion_variance": ev,
        }

        per_user = Counter(tw.user for tw in members)
        unique_users = len(per_user)
        article_dt = datetime(info["day"].year, info["day"].month, info["day"].day, 6, tzinfo=timezone.utc)
        influential = 0
        for user_id in per_user:
            profile = users_by_id.get(user_id)
            if profile is None:
                continue
            last_active = datetime.fromisoformat(profile["last_active_at"].replace("Z", "+00:00"))
            if profile["followers_count"] > 1000 and abs(article_dt - last_active) <= timedelta(days=ACTIVE_WINDOW_DAYS):
                influential += 1
        values = [
            n / corpus_max,
            sum(tw.rt for tw in members) / n if n else 0.0,
            sum(tw.fav for tw in members) / n if n else 0.0,
            sum(1 for c in per_user.values() if c >= 2) / unique_users if unique_users else 0.0,
            influential / unique_users if unique_users else 0.0,
            float(len(assoc["article_specific_hashtags"])),
            sv,
            ev,
        ]
        feature_rows.append((aid, values, info["label"]))

    # --- write everything -----------------------------------------------------
    OUT.mkdir(parents=True, exist_ok=True)

    def write_jsonl(name, rows):
        with open(OUT / name, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")

    write_jsonl("articles.jsonl", articles)
    write_jsonl("tweets.jsonl", [tw.row() for tw in sorted(tweets, key=lambda t: t.id)])
    write_jsonl("users.jsonl", users)
    write_jsonl("expected_associations.jsonl", [expected_assoc[aid] for aid in sorted(TARGETS)])

    with open(OUT / "expected_reaction.json", "w", encoding="utf-8") as fh:
        json.dump({aid: reaction[aid] for aid in sorted(TARGETS)}, fh, indent=2)
        fh.write("\n")

    header = (
        "article_id,tweet_count_norm,avg_retweets,avg_favorites,affected_user_fraction,"
        "influential_user_fraction,article_specific_hashtag_count,sentiment_variance,"
        "emotion_variance,label"
    )
    with open(OUT / "expected_features_proposed.csv", "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for aid, values, label in feature_rows:
            fh.write(aid + "," + ",".join(f"{v:.6f}" for v in values) + f",{label}\n")

    print(f"articles={len(articles)} tweets={len(tweets)} users={len(users)}")
    print(f"corpus_max_tweets={corpus_max}")
    for aid in sorted(TARGETS):
        row = expected_assoc[aid]
        print(
            f"{aid}: seeds={len(row['seed_tweet_ids'])} expanded={len(row['expanded_tweet_ids'])} "
            f"specific={row['article_specific_hashtags']} generic={row['generic_hashtags']} "
            f"iterations={row['iterations_run']} sv={reaction[aid]['sentiment_variance']:.3f} "
            f"ev={reaction[aid]['emotion_variance']:.3f}"
        )


if __name__ == "__main__":
    build()
