"""Pipeline command line: ingest-check, associate, features, evaluate, report.

Each subcommand reads a JSON config (overridable with --set key=value),
writes its stage artifact into the configured output directory, and is
re-runnable: identical inputs give byte-identical artifacts. Run metadata
(timestamps, effective config) goes to run_meta.json, never into the
artifacts themselves.

Exit codes: 0 success, 2 usage/config error, 3 data/statistical error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import datetime, timezone

from nextday import __version__
from nextday.config import ConfigError, PipelineConfig, load_config
from nextday.corpus import (
    CorpusError,
    build_corpus,
    emit_diagnostics,
    load_articles,
    load_corpus,
)
from nextday.features import (
    ALL_SCHEMES,
    SCHEME_PROPOSED,
    assemble_matrix,
    write_feature_csv,
)
from nextday.learn.cv import Dataset, DatasetError, build_report, kfold_cv, render_report_md
from nextday.learn.persist import ModelLoadError
from nextday.lexicons import LexiconError, Lexicons, lexicons_from_paths
from nextday.relevance import (
    RelevanceError,
    associate_all,
    load_associations,
    write_associations,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _write_run_meta(config: PipelineConfig, command: str, argv: list[str], started: str) -> None:
    out = config.output_dir()
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "command": command,
        "argv": argv,
        "started_at": started,
        "finished_at": _now(),
        "version": __version__,
        "effective_config": config.effective_dict(),
    }
    (out / "run_meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def _load_lexicons(config: PipelineConfig) -> Lexicons:
    paths = config.paths
    return lexicons_from_paths(
        sentiment=paths.sentiment_lexicon,
        emotions=paths.emotion_lexicon,
        negators=paths.negators,
        boosters=paths.boosters,
    )


def _resolve_schemes(requested: str) -> list[str]:
    if requested == "all":
        return list(ALL_SCHEMES)
    if requested not in ALL_SCHEMES:
        raise ConfigError(
            f"unknown scheme '{requested}' (valid: {', '.join(ALL_SCHEMES)}, all)"
        )
    return [requested]


def cmd_ingest_check(config: PipelineConfig, args) -> int:
    config.require_files("articles", "tweets", "users")
    corpus = load_corpus(config.paths.articles, config.paths.tweets, config.paths.users)
    emit_diagnostics(corpus)
    print(
        f"articles={len(corpus.articles)} tweets={len(corpus.tweets)} "
        f"users={len(corpus.users)} unresolved_users={len(corpus.diagnostics)}"
    )
    return EXIT_OK


def cmd_associate(config: PipelineConfig, args) -> int:
    config.require_files("articles", "tweets", "users")
    corpus = load_corpus(config.paths.articles, config.paths.tweets, config.paths.users)
    emit_diagnostics(corpus)
    associations = associate_all(corpus, config.relevance, jobs=args.jobs)
    out = config.output_dir()
    out.mkdir(parents=True, exist_ok=True)
    write_associations(out / "associations.jsonl", associations)
    total = sum(len(a.expanded_tweet_ids) for a in associations)
    mean_iter = (
        sum(a.iterations_run for a in associations) / len(associations)
        if associations
        else 0.0
    )
    print(
        f"articles={len(associations)} associated_tweets={total} "
        f"mean_iterations={mean_iter:.2f}"
    )
    return EXIT_OK


def cmd_features(config: PipelineConfig, args) -> int:
    schemes = _resolve_schemes(args.scheme)
    lexicons = _load_lexicons(config)
    out = config.output_dir()
    out.mkdir(parents=True, exist_ok=True)

    needs_tweets = any(s == SCHEME_PROPOSED for s in schemes)
    if needs_tweets:
        config.require_files("articles", "tweets", "users")
        corpus = load_corpus(config.paths.articles, config.paths.tweets, config.paths.users)
        assoc_path = out / "associations.jsonl"
        if not assoc_path.exists():
            raise ConfigError(
                f"{assoc_path} not found; run 'nextday associate' before the proposed scheme"
            )
        associations = load_associations(assoc_path)
    else:
        config.require_files("articles")
        corpus = build_corpus(load_articles(config.paths.articles), [], [])
        associations = []

    for scheme in schemes:
        matrix = assemble_matrix(
            corpus, associations, scheme, lexicons, config.features, jobs=args.jobs
        )
        path = out / f"features_{scheme}.csv"
        write_feature_csv(matrix, path)
        print(f"wrote {path} ({len(matrix.vectors)} rows)")
    return EXIT_OK


def cmd_evaluate(config: PipelineConfig, args) -> int:
    schemes = _resolve_schemes(args.scheme)
    out = config.output_dir()
    repeats = args.repeats if args.repeats is not None else config.learn.repeats
    if repeats < 1:
        raise ConfigError("--repeats must be >= 1")
    base_seed = config.learn.seed
    seeds = [base_seed + r for r in range(repeats)]

    runs: dict[str, list] = {}
    for scheme in schemes:
        path = out / f"features_{scheme}.csv"
        if not path.exists():
            raise ConfigError(f"{path} not found; run 'nextday features' first")
        data = Dataset.from_csv(path, scheme=scheme)
        reports = []
        for seed in seeds:
            cfgs = {
                "random_forest": replace(config.learn.forest, seed=seed),
                "linear_svm": replace(config.learn.svm, seed=seed),
                "cart": config.learn.cart,
            }
            reports.append(kfold_cv(data, config.learn.k, cfgs, seed))
        runs[scheme] = reports

    # paths are machine-specific run metadata (present in run_meta.json);
    # keeping them out makes report.json location-independent
    snapshot = {k: v for k, v in config.effective_dict().items() if k != "paths"}
    report = build_report(runs, config.learn.k, seeds, snapshot)
    (out / "report.json").write_text(
        json.dumps(report, indent=2) + "\n", encoding="utf-8"
    )
    markdown = render_report_md(report)
    (out / "report.md").write_text(markdown + "\n", encoding="utf-8")
    print(markdown)
    return EXIT_OK


def cmd_report(config: PipelineConfig, args) -> int:
    path = config.output_dir() / "report.json"
    if not path.exists():
        raise ConfigError(f"{path} not found; run 'nextday evaluate' first")
    report = json.loads(path.read_text(encoding="utf-8"))
    markdown = render_report_md(report)
    (config.output_dir() / "report.md").write_text(markdown + "\n", encoding="utf-8")
    print(markdown)
    return EXIT_OK


COMMANDS = {
    "ingest-check": cmd_ingest_check,
    "associate": cmd_associate,
    "features": cmd_features,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nextday",
        description="Predict next-day follow-up coverage from same-day tweets.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to JSON config")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            default=[],
            help="override a config value (dotted key, JSON value)",
        )

    common(sub.add_parser("ingest-check", help="validate corpus files"))

    p_assoc = sub.add_parser("associate", help="link tweets to articles")
    common(p_assoc)
    p_assoc.add_argument("--jobs", type=int, default=1, help="worker threads")

    p_feat = sub.add_parser("features", help="emit feature CSVs")
    common(p_feat)
    p_feat.add_argument("--scheme", default="all", help="scheme name or 'all'")
    p_feat.add_argument("--jobs", type=int, default=1, help="worker threads")

    p_eval = sub.add_parser("evaluate", help="cross-validate classifiers")
    common(p_eval)
    p_eval.add_argument("--scheme", default="all", help="scheme name or 'all'")
    p_eval.add_argument("--repeats", type=int, default=None, help="re-run count")

    common(sub.add_parser("report", help="re-render report.md from report.json"))
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    started = _now()
    try:
        config = load_config(args.config, args.set)
        code = COMMANDS[args.command](config, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorpusError, DatasetError, LexiconError, ModelLoadError, RelevanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    _write_run_meta(config, args.command, argv, started)
    return code


if __name__ == "__main__":
    sys.exit(main())
