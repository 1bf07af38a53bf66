"""Command-line surface: file-driven pipeline stages over offline corpora.

Every subcommand reads corpus/score files, writes CSV/JSON outputs into an
output directory, and (with --json) prints a machine-readable summary on
stdout that validates against schemas/cli_summary.schema.json. Re-running a
subcommand with identical inputs overwrites outputs byte-identically.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import contentstats, detectkit, graphlab, linkmap, seedscan, synthnet
from .corpus import (ACCOUNTS_FILE, EDGES_FILE, LABELS_FILE, TWEETS_FILE,
                     Corpus, CorpusError, GroupPartition, cap_tweets,
                     export_corpus, load_corpus, merge_corpora, validate)

SUBCOMMANDS = ("ingest", "scan-phrases", "expand-domains", "graph-stats",
               "content-stats", "score", "sweep", "ttest", "synth", "report")

OUTPUT_DIR_ENV = "BOTSIEVE_OUT"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Small deterministic writers

def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else str(value)


def _write_csv(path: Path, header, rows) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _write_json(path: Path, obj) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _summary(command: str, outputs: dict[str, Path], metrics: dict) -> dict:
    return {
        "command": command,
        "status": "ok",
        "outputs": {name: str(path) for name, path in outputs.items()},
        "metrics": metrics,
    }


# ---------------------------------------------------------------------------
# Shared argument plumbing

def _add_corpus_args(parser):
    parser.add_argument("--corpus-dir", help="directory holding accounts.jsonl, "
                        "tweets.jsonl, edges.jsonl, labels.csv")
    parser.add_argument("--accounts", help="accounts.jsonl path (overrides --corpus-dir)")
    parser.add_argument("--tweets", help="tweets.jsonl path (overrides --corpus-dir)")
    parser.add_argument("--edges", help="edges.jsonl path")
    parser.add_argument("--labels", help="labels.csv path")
    parser.add_argument("--aliases", help="JSON file mapping canonical field names "
                        "to the names used in the input files")
    parser.add_argument("--tweet-cap", type=int, default=None,
                        help="keep only each account's N most recent tweets")


def _add_out_arg(parser):
    parser.add_argument("--out", default=None,
                        help=f"output directory (default: ${OUTPUT_DIR_ENV} or ./botsieve_out)")


def _out_dir(args) -> Path:
    out = Path(args.out or os.environ.get(OUTPUT_DIR_ENV, "botsieve_out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _require(path_str: str | None, label: str) -> Path:
    if path_str is None:
        raise UsageError(f"missing required input: {label}")
    path = Path(path_str)
    if not path.exists():
        raise DataError(f"missing artifact: {label} ({path})")
    return path


def _optional(path_str: str | None, default: Path | None) -> Path | None:
    if path_str is not None:
        path = Path(path_str)
        if not path.exists():
            raise DataError(f"missing artifact: {path}")
        return path
    if default is not None and default.exists():
        return default
    return None


def _load_corpus_from_args(args) -> Corpus:
    base = Path(args.corpus_dir) if args.corpus_dir else None
    accounts = args.accounts or (base / ACCOUNTS_FILE if base else None)
    tweets = args.tweets or (base / TWEETS_FILE if base else None)
    account_path = _require(str(accounts) if accounts else None, "accounts.jsonl")
    tweet_path = _require(str(tweets) if tweets else None, "tweets.jsonl")
    edge_path = _optional(args.edges, base / EDGES_FILE if base else None)
    label_path = _optional(args.labels, base / LABELS_FILE if base else None)
    aliases = None
    if args.aliases:
        with open(_require(args.aliases, "aliases file"), "r", encoding="utf-8") as fh:
            aliases = json.load(fh)
    corpus = load_corpus(account_path, tweet_path, edge_path, label_path,
                         field_aliases=aliases)
    if args.tweet_cap is not None:
        if args.tweet_cap < 1:
            raise UsageError("--tweet-cap must be >= 1")
        corpus = cap_tweets(corpus, args.tweet_cap)
    return corpus


def _group_members(corpus: Corpus, name: str | None):
    if name is None:
        return sorted(corpus.accounts)
    if name not in corpus.partition:
        raise DataError(f"missing artifact: group {name!r} not in labels")
    return sorted(corpus.partition[name])


def _read_scores_csv(path: Path) -> list[tuple[float, str]]:
    scores = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"value", "label"} <= set(reader.fieldnames):
            raise DataError(f"{path}: header must contain value,label")
        for lineno, row in enumerate(reader, start=2):
            try:
                scores.append((float(row["value"]), row["label"].strip()))
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: bad score row ({exc})") from exc
    return scores


def _make_detector(args) -> detectkit.TextDetector:
    scale = (detectkit.PROBABILITY_SCALE if getattr(args, "scale", "openai") == "probability"
             else detectkit.OPENAI_STYLE_SCALE)
    if args.detector == "heuristic":
        return detectkit.HeuristicDetector()
    if args.detector == "stub":
        return detectkit.StubDetector(key=args.stub_key, score_scale=scale)
    if args.detector == "replay":
        path = _require(args.replay_file, "--replay-file")
        return detectkit.ReplayDetector.from_file(path, score_scale=scale)
    raise UsageError(f"unknown detector {args.detector!r}")


def _qualification_rules(args) -> detectkit.QualificationRules:
    return detectkit.QualificationRules(
        exclude_retweets=not args.include_retweets,
        english_only=not args.any_language,
        strip_reply_handles=not args.keep_handles,
        strip_links=not args.keep_links,
    )


def _add_detector_args(parser):
    parser.add_argument("--detector", choices=("heuristic", "stub", "replay"),
                        default="heuristic")
    parser.add_argument("--replay-file", help="replay_scores.jsonl for --detector replay")
    parser.add_argument("--stub-key", default="", help="key for --detector stub")
    parser.add_argument("--scale", choices=("openai", "probability"), default="openai")
    parser.add_argument("--include-retweets", action="store_true")
    parser.add_argument("--any-language", action="store_true")
    parser.add_argument("--keep-handles", action="store_true")
    parser.add_argument("--keep-links", action="store_true")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker bound for detector scoring")


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_ingest(args):
    corpus = _load_corpus_from_args(args)
    report = validate(corpus)
    out = _out_dir(args)
    outputs = {
        "validation_report": _write_csv(
            out / "validation_report.csv",
            ("file", "line", "identifier", "rule", "detail"),
            list(corpus.load_report.to_rows()) + list(report.to_rows()),
        ),
        "corpus_summary": _write_json(out / "corpus_summary.json", {
            "n_accounts": corpus.n_accounts,
            "n_tweets": corpus.n_tweets,
            "n_follow_edges": len(corpus.follow_edges),
            "groups": {name: len(corpus.partition[name]) for name in corpus.partition.names},
            "n_load_violations": len(corpus.load_report),
            "n_invariant_violations": len(report),
        }),
    }
    if args.export:
        exported = export_corpus(corpus, out / "corpus")
        outputs.update({f"export_{k}": v for k, v in exported.items()})
    if args.strict and (corpus.load_report or report):
        raise DataError(
            f"validation failed: {len(corpus.load_report)} load + {len(report)} invariant violations"
        )
    metrics = {
        "n_accounts": corpus.n_accounts,
        "n_tweets": corpus.n_tweets,
        "n_violations": len(corpus.load_report) + len(report),
    }
    return _summary("ingest", outputs, metrics)


def _cmd_scan_phrases(args):
    corpus = _load_corpus_from_args(args)
    query = seedscan.load_phrases(_require(args.phrases, "--phrases")) \
        if args.phrases else seedscan.PhraseQuery()
    ruleset = seedscan.load_ruleset(_require(args.rules, "--rules")) \
        if args.rules else seedscan.DEFAULT_RULESET
    hits = seedscan.find_phrase_tweets(corpus, query)
    out = _out_dir(args)
    hit_rows = [(tid, corpus.tweets[tid].author_id, phrase) for tid, phrase in hits.items()]
    categories = {
        tid: seedscan.categorize_self_revealing(corpus.tweets[tid].text, ruleset)
        for tid in hits
    }
    summary_rows = seedscan.category_summary(hits.keys(), corpus, ruleset)
    outputs = {
        "hits": _write_csv(out / "hits.csv", ("tweet_id", "account_id", "phrase"), hit_rows),
        "categories": _write_csv(out / "categories.csv", ("tweet_id", "category"),
                                 [(tid, cat.value) for tid, cat in categories.items()]),
        "category_summary": _write_csv(
            out / "category_summary.csv", ("category", "count", "percentage"),
            [(row.category.value, row.count, row.percentage) for row in summary_rows]),
    }
    metrics = {
        "n_hits": len(hits),
        "n_accounts": len({corpus.tweets[tid].author_id for tid in hits}),
        "categories": {row.category.value: row.count for row in summary_rows},
    }
    return _summary("scan-phrases", outputs, metrics)


def _cmd_expand_domains(args):
    if args.top < 1:
        raise UsageError("--top must be >= 1")
    corpus = _load_corpus_from_args(args)
    seeds = linkmap.load_seed_domains(_require(args.seeds, "--seeds")) \
        if args.seeds else linkmap.DEFAULT_SEED_DOMAINS
    expanded = linkmap.expand_by_domains(corpus, seeds)
    out = _out_dir(args)
    outputs = {
        "expanded_accounts": _write_csv(out / "expanded_accounts.csv", ("account_id",),
                                        [(a,) for a in sorted(expanded)]),
        "domain_freq": _write_csv(
            out / "domain_freq.csv", ("domain", "count"),
            linkmap.domain_frequency(corpus, expanded, args.top) if expanded else []),
    }
    share = linkmap.domain_share_profiles(corpus, expanded, seeds)
    outputs["share_profiles"] = _write_csv(
        out / "share_profiles.csv", ("account_id", "share_probability"),
        [(p.account_id, p.share_probability) for p in share.profiles])
    return _summary("expand-domains", outputs, {
        "n_seeds": len(set(seeds)),
        "n_accounts": len(expanded),
        "mean_share_probability": share.mean_share_probability,
    })


def _cmd_graph_stats(args):
    corpus = _load_corpus_from_args(args)
    restriction = None
    if args.group is not None:
        restriction = _group_members(corpus, args.group)
    graph = graphlab.build_graph(corpus, args.kind, node_restriction=restriction)
    summary = graphlab.degree_stats(graph)
    wcc = graphlab.largest_wcc(graph)
    out = _out_dir(args)
    hist_rows = ([("in", d, c) for d, c in summary.in_histogram.items()]
                 + [("out", d, c) for d, c in summary.out_histogram.items()])
    outputs = {
        "edges": _write_csv(out / f"{args.kind}_edges.csv", ("source", "target", "weight"),
                            sorted((s, t, w) for (s, t), w in graph.edges.items())),
        "degree_histogram": _write_csv(out / f"{args.kind}_degree_histogram.csv",
                                       ("direction", "degree", "count"), hist_rows),
        "degree_summary": _write_json(out / f"{args.kind}_degree_summary.json", {
            "edge_kind": args.kind,
            "n_nodes": graph.n_nodes,
            "n_edges": graph.n_edges,
            "mean_in": summary.mean_in,
            "sd_in": summary.sd_in,
            "mean_out": summary.mean_out,
            "sd_out": summary.sd_out,
            "largest_wcc_size": len(wcc),
        }),
    }
    metrics = {
        "mean_in": summary.mean_in, "sd_in": summary.sd_in,
        "mean_out": summary.mean_out, "sd_out": summary.sd_out,
        "n_nodes": graph.n_nodes, "n_edges": graph.n_edges,
        "largest_wcc_size": len(wcc),
    }
    if args.pair_groups:
        names = [n.strip() for n in args.pair_groups.split(",") if n.strip()]
        try:
            sub = GroupPartition({n: corpus.partition[n] for n in names})
        except KeyError as exc:
            raise DataError(f"missing artifact: group {exc.args[0]!r} not in labels") from exc
        matrix = graphlab.pair_rate_matrix(graph, sub)
        rows = [
            (matrix.groups[i], matrix.groups[j],
             int(matrix.counts[i, j]), float(matrix.rates[i, j]))
            for i in range(len(matrix.groups)) for j in range(len(matrix.groups))
        ]
        outputs["pair_rates"] = _write_csv(
            out / f"{args.kind}_pair_rates.csv",
            ("source_group", "target_group", "pairs_with_edge", "rate"), rows)
        metrics["pair_rates"] = {
            f"{src}->{dst}": float(matrix.rate(src, dst))
            for src in matrix.groups for dst in matrix.groups
        }
    return _summary("graph-stats", outputs, metrics)


def _cmd_content_stats(args):
    if args.resolution < 1 or args.top < 1:
        raise UsageError("--resolution and --top must be >= 1")
    corpus = _load_corpus_from_args(args)
    group = _group_members(corpus, args.group)
    points = contentstats.group_mix_points(corpus, group)
    grid = contentstats.ternary_bin(points.values(), args.resolution)
    hashtags = contentstats.hashtag_ranking(corpus, group, args.top)
    amplified = contentstats.amplified_accounts(corpus, group, args.top)
    out = _out_dir(args)
    outputs = {
        "ternary_points": _write_csv(
            out / "ternary_points.csv",
            ("account_id", "pct_original", "pct_reply", "pct_retweet_quote"),
            [(a, p.pct_original, p.pct_reply, p.pct_retweet_quote)
             for a, p in points.items()]),
        "ternary_bins": _write_csv(out / "ternary_bins.csv", ("i", "j", "k", "count"),
                                   [(i, j, k, c) for (i, j, k), c in grid.bins.items()]),
        "hashtags": _write_csv(out / "hashtags.csv", ("rank", "hashtag", "count"),
                               [(r + 1, tag, c) for r, (tag, c) in enumerate(hashtags)]),
        "amplified": _write_csv(out / "amplified.csv", ("rank", "account_id", "count"),
                                [(r + 1, a, c) for r, (a, c) in enumerate(amplified)]),
    }
    metrics = {"n_accounts_with_tweets": len(points), "resolution": args.resolution}
    if group:
        profile = contentstats.profile_summary(corpus, group)
        outputs["profile_summary"] = _write_json(out / "profile_summary.json", {
            "n_accounts": profile.n_accounts,
            "follower_mean": profile.follower_mean,
            "follower_sd": profile.follower_sd,
            "following_mean": profile.following_mean,
            "following_sd": profile.following_sd,
            "tweet_count_mean": profile.tweet_count_mean,
            "tweet_count_sd": profile.tweet_count_sd,
            "creation_years": {str(y): c for y, c in profile.creation_years.items()},
        })
        metrics["follower_mean"] = profile.follower_mean
    return _summary("content-stats", outputs, metrics)


def _cmd_score(args):
    if args.min_qualified < 1 or args.threads < 1:
        raise UsageError("--min-qualified and --threads must be >= 1")
    corpus = _load_corpus_from_args(args)
    detector = _make_detector(args)
    rules = _qualification_rules(args)
    group = _group_members(corpus, args.group) if args.group else None
    scores, unscored = detectkit.score_corpus(corpus, detector, rules, group=group,
                                              max_workers=args.threads)
    kept = detectkit.filter_min_qualified(scores.values(), args.min_qualified) \
        if args.min_qualified > 1 else list(scores.values())
    out = _out_dir(args)
    outputs = {
        "account_scores": _write_csv(
            out / "account_scores.csv", ("account_id", "n_qualified", "mean_score"),
            [(s.account_id, s.n_qualified, s.mean_score) for s in kept]),
    }
    metrics = {
        "detector": detector.name,
        "n_scored": len(scores),
        "n_unscored": unscored,
        "n_after_filter": len(kept),
    }
    return _summary("score", outputs, metrics)


def _cmd_sweep(args):
    scores = _read_scores_csv(_require(args.scores, "--scores"))
    try:
        outcome = detectkit.sweep_threshold(scores)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    out = _out_dir(args)
    summary_obj = {
        "best_threshold": outcome.best.threshold,
        "f1": outcome.best.f1,
        "precision": outcome.best.precision,
        "recall": outcome.best.recall,
    }
    bots = [v for v, label in scores if label == detectkit.BOT_LABEL]
    humans = [v for v, label in scores if label == detectkit.HUMAN_LABEL]
    summary_obj["welch"] = None
    if len(bots) >= 2 and len(humans) >= 2:
        try:
            welch = detectkit.welch_t(bots, humans)
            summary_obj["welch"] = {"t": welch.t, "df": welch.df, "p": welch.p}
        except ValueError:
            pass
    outputs = {
        "sweep_curve": _write_csv(
            out / "sweep_curve.csv", ("threshold", "precision", "recall", "f1"),
            [(r.threshold, r.precision, r.recall, r.f1) for r in outcome.curve]),
        "summary": _write_json(out / "summary.json", summary_obj),
    }
    return _summary("sweep", outputs, dict(summary_obj))


def _cmd_ttest(args):
    scores = _read_scores_csv(_require(args.scores, "--scores"))
    bots = [v for v, label in scores if label == detectkit.BOT_LABEL]
    humans = [v for v, label in scores if label == detectkit.HUMAN_LABEL]
    try:
        result = detectkit.welch_t(bots, humans)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    out = _out_dir(args)
    obj = {"t": result.t, "df": result.df, "p": result.p,
           "n_bot": len(bots), "n_human": len(humans)}
    outputs = {"ttest": _write_json(out / "ttest.json", obj)}
    return _summary("ttest", outputs, obj)


def _coerce_param(value: str):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) > 1:
        try:
            return tuple(float(p) for p in parts)
        except ValueError:
            return tuple(parts)
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def _read_params_file(path: Path) -> tuple[dict, dict]:
    """Parse key=value generator settings; human_* keys address the organic side."""
    import dataclasses
    bot_fields = {f.name for f in dataclasses.fields(synthnet.BotnetParams)}
    human_fields = {f.name for f in dataclasses.fields(synthnet.HumanParams)}
    bot_kwargs: dict = {}
    human_kwargs: dict = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise DataError(f"{path}:{lineno}: expected key = value")
        key = key.strip()
        parsed = _coerce_param(value.strip())
        if key.startswith("human_") and key[6:] in human_fields:
            human_kwargs[key[6:]] = parsed
        elif key == "n_humans":
            human_kwargs["n_humans"] = parsed
        elif key in bot_fields:
            bot_kwargs[key] = parsed
        else:
            raise DataError(f"{path}:{lineno}: unknown generator parameter {key!r}")
    return bot_kwargs, human_kwargs


def _cmd_synth(args):
    if args.preset not in synthnet.PRESETS:
        raise UsageError(f"unknown preset {args.preset!r}")
    bot_kwargs: dict = {}
    human_kwargs: dict = {}
    if args.params:
        bot_kwargs, human_kwargs = _read_params_file(_require(args.params, "--params"))
    seed = args.seed if args.seed is not None else bot_kwargs.get("rng_seed", 0)
    bot_kwargs["rng_seed"] = seed
    human_kwargs.setdefault("rng_seed", seed + 1)
    if args.n_bots is not None:
        bot_kwargs["n_bots"] = args.n_bots
    if args.n_humans is not None:
        human_kwargs["n_humans"] = args.n_humans
    try:
        bot_params = synthnet.BotnetParams(**bot_kwargs)
        human_params = synthnet.HumanParams(**human_kwargs)
    except (TypeError, ValueError) as exc:
        raise DataError(f"bad generator parameters: {exc}") from exc
    corpus = synthnet.generate_botnet(bot_params)
    if human_params.n_humans > 0:
        corpus = merge_corpora(corpus, synthnet.generate_humans(human_params))
    out = _out_dir(args)
    paths = export_corpus(corpus, out)
    metrics = {
        "preset": args.preset,
        "seed": seed,
        "n_accounts": corpus.n_accounts,
        "n_tweets": corpus.n_tweets,
        "n_follow_edges": len(corpus.follow_edges),
    }
    return _summary("synth", {k: v for k, v in paths.items()}, metrics)


def _cmd_report(args):
    if args.resolution < 1 or args.top < 1 or args.threads < 1:
        raise UsageError("--resolution, --top, and --threads must be >= 1")
    corpus = _load_corpus_from_args(args)
    out = _out_dir(args)
    bot_group = sorted(corpus.partition[args.bot_group]) \
        if args.bot_group in corpus.partition else []
    human_group = sorted(corpus.partition[args.human_group]) \
        if args.human_group in corpus.partition else []
    outputs: dict[str, Path] = {}
    metrics: dict = {"bot_group_size": len(bot_group), "human_group_size": len(human_group)}

    profiles = {}
    for name, members in ((args.bot_group, bot_group), (args.human_group, human_group)):
        if members:
            p = contentstats.profile_summary(corpus, members)
            profiles[name] = {
                "n_accounts": p.n_accounts,
                "follower_mean": p.follower_mean, "follower_sd": p.follower_sd,
                "following_mean": p.following_mean, "following_sd": p.following_sd,
                "tweet_count_mean": p.tweet_count_mean, "tweet_count_sd": p.tweet_count_sd,
                "creation_years": {str(y): c for y, c in p.creation_years.items()},
            }
        else:
            profiles[name] = None
    outputs["fig1_profiles"] = _write_json(out / "fig1_profiles.json", profiles)

    degree_rows = []
    for kind in graphlab.EDGE_KINDS:
        if not bot_group:
            continue
        graph = graphlab.build_graph(corpus, kind, node_restriction=bot_group)
        summary = graphlab.degree_stats(graph)
        degree_rows += [(kind, "in", d, c) for d, c in summary.in_histogram.items()]
        degree_rows += [(kind, "out", d, c) for d, c in summary.out_histogram.items()]
        metrics[f"{kind}_mean_in"] = summary.mean_in
        metrics[f"{kind}_largest_wcc"] = len(graphlab.largest_wcc(graph))
    outputs["fig2_degrees"] = _write_csv(
        out / "fig2_degrees.csv", ("edge_kind", "direction", "degree", "count"), degree_rows)

    pair_rows = []
    usable = {name: corpus.partition[name] for name in corpus.partition.names
              if len(corpus.partition[name]) >= 2}
    if usable:
        sub = GroupPartition(usable)
        for kind in ("reply", "retweet"):
            graph = graphlab.build_graph(corpus, kind)
            matrix = graphlab.pair_rate_matrix(graph, sub)
            for i, src in enumerate(matrix.groups):
                for j, dst in enumerate(matrix.groups):
                    pair_rows.append((kind, src, dst, int(matrix.counts[i, j]),
                                      float(matrix.rates[i, j])))
    outputs["fig2_pairrates"] = _write_csv(
        out / "fig2_pairrates.csv",
        ("edge_kind", "source_group", "target_group", "pairs_with_edge", "rate"), pair_rows)

    ternary_rows = []
    for name, members in ((args.bot_group, bot_group), (args.human_group, human_group)):
        if not members:
            continue
        points = contentstats.group_mix_points(corpus, members)
        grid = contentstats.ternary_bin(points.values(), args.resolution)
        ternary_rows += [(name, i, j, k, c) for (i, j, k), c in grid.bins.items()]
    outputs["fig3_ternary"] = _write_csv(
        out / "fig3_ternary.csv", ("group", "i", "j", "k", "count"), ternary_rows)

    hashtags = contentstats.hashtag_ranking(corpus, bot_group, args.top) if bot_group else []
    outputs["fig4_hashtags"] = _write_csv(
        out / "fig4_hashtags.csv", ("rank", "hashtag", "count"),
        [(r + 1, tag, c) for r, (tag, c) in enumerate(hashtags)])
    amplified = contentstats.amplified_accounts(corpus, bot_group, args.top) if bot_group else []
    outputs["fig4_amplified"] = _write_csv(
        out / "fig4_amplified.csv", ("rank", "account_id", "count"),
        [(r + 1, a, c) for r, (a, c) in enumerate(amplified)])

    domains = linkmap.domain_frequency(corpus, bot_group, args.top) if bot_group else []
    outputs["fig5_domains"] = _write_csv(
        out / "fig5_domains.csv", ("rank", "domain", "count"),
        [(r + 1, d, c) for r, (d, c) in enumerate(domains)])
    if bot_group:
        share = linkmap.domain_share_profiles(corpus, bot_group, linkmap.DEFAULT_SEED_DOMAINS)
        metrics["seed_domain_share_mean"] = share.mean_share_probability

    hits = seedscan.find_phrase_tweets(corpus)
    category_rows = seedscan.category_summary(hits.keys(), corpus)
    outputs["table1_categories"] = _write_csv(
        out / "table1_categories.csv", ("category", "count", "percentage"),
        [(row.category.value, row.count, row.percentage) for row in category_rows])
    metrics["n_self_revealing"] = len(hits)

    recall_obj = {"threshold": args.recall_threshold, "recall": None,
                  "n_bot_scores": 0, "scores_file": None}
    if args.recall_scores:
        recall_scores = _read_scores_csv(_require(args.recall_scores, "--recall-scores"))
        try:
            recall_obj["recall"] = detectkit.recall_at(recall_scores, args.recall_threshold)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
        recall_obj["n_bot_scores"] = sum(
            1 for _, label in recall_scores if label == detectkit.BOT_LABEL)
        recall_obj["scores_file"] = str(args.recall_scores)
    outputs["fig6_recall"] = _write_json(out / "fig6_recall.json", recall_obj)

    sweep_rows = []
    if bot_group and human_group:
        detector = _make_detector(args)
        rules = _qualification_rules(args)
        labeled = []
        for members, label in ((bot_group, detectkit.BOT_LABEL),
                               (human_group, detectkit.HUMAN_LABEL)):
            scores, _ = detectkit.score_corpus(corpus, detector, rules, group=members,
                                               max_workers=args.threads)
            labeled += [(s.mean_score, label) for s in scores.values()]
        if any(l == detectkit.BOT_LABEL for _, l in labeled) and \
           any(l == detectkit.HUMAN_LABEL for _, l in labeled):
            outcome = detectkit.sweep_threshold(labeled)
            sweep_rows = [(r.threshold, r.precision, r.recall, r.f1) for r in outcome.curve]
            metrics["best_threshold"] = outcome.best.threshold
            metrics["best_f1"] = outcome.best.f1
    outputs["fig8_sweep"] = _write_csv(
        out / "fig8_sweep.csv", ("threshold", "precision", "recall", "f1"), sweep_rows)

    return _summary("report", outputs, metrics)


# ---------------------------------------------------------------------------
# Parser assembly

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="botsieve",
                     description="Botnet forensics over offline social-media corpora")
    parser.add_argument("--json", action="store_true",
                        help="print a machine-readable summary on stdout")
    sub = parser.add_subparsers(dest="command", metavar="|".join(SUBCOMMANDS))

    p = sub.add_parser("ingest", help="load, validate, and summarize a corpus")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--export", action="store_true", help="re-emit the normalized corpus")
    p.add_argument("--strict", action="store_true", help="exit 2 on any violation")
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("scan-phrases", help="find and categorize self-revealing tweets")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--phrases", help="phrases.txt (one phrase per line)")
    p.add_argument("--rules", help="category_rules.csv (priority,category,trigger)")
    p.set_defaults(handler=_cmd_scan_phrases)

    p = sub.add_parser("expand-domains", help="expand candidate accounts by seed domains")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--seeds", help="seeds.txt (one domain per line)")
    p.add_argument("--top", type=int, default=10,
                   help="domains to keep in domain_freq.csv")
    p.set_defaults(handler=_cmd_expand_domains)

    p = sub.add_parser("graph-stats", help="interaction-graph metrics")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--kind", choices=graphlab.EDGE_KINDS, default="follow")
    p.add_argument("--group", help="restrict both endpoints to this labeled group")
    p.add_argument("--pair-groups", help="comma-separated group names for pair rates")
    p.set_defaults(handler=_cmd_graph_stats)

    p = sub.add_parser("content-stats", help="tweet mix, rankings, profile summaries")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--group", help="labeled group (default: every account)")
    p.add_argument("--resolution", type=int, default=20)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(handler=_cmd_content_stats)

    p = sub.add_parser("score", help="run a text detector over accounts")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--group", help="labeled group (default: every account)")
    p.add_argument("--min-qualified", type=int, default=1)
    _add_detector_args(p)
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("sweep", help="F1-maximizing threshold sweep over labeled scores")
    _add_out_arg(p)
    p.add_argument("--scores", required=True, help="CSV with value,label columns")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("ttest", help="Welch t-test between bot and human scores")
    _add_out_arg(p)
    p.add_argument("--scores", required=True, help="CSV with value,label columns")
    p.set_defaults(handler=_cmd_ttest)

    p = sub.add_parser("synth", help="generate a synthetic benchmark corpus")
    _add_out_arg(p)
    p.add_argument("--preset", default="fox8", help="generator preset name")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-bots", type=int, default=None)
    p.add_argument("--n-humans", type=int, default=None)
    p.add_argument("--params", help="key=value generator settings file "
                   "(human_* keys address the organic side)")
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("report", help="emit every figure/table data file")
    _add_corpus_args(p)
    _add_out_arg(p)
    p.add_argument("--bot-group", default="bot")
    p.add_argument("--human-group", default="human")
    p.add_argument("--resolution", type=int, default=20)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--recall-scores", help="CSV with value,label for the recall harness")
    p.add_argument("--recall-threshold", type=float, default=2.5)
    _add_detector_args(p)
    p.set_defaults(handler=_cmd_report)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            raise UsageError("a subcommand is required (see --help)")
        summary = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DataError, CorpusError, ValueError, LookupError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - defensive catch-all
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(run())
