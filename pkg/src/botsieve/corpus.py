"""Offline social-media corpus: loading, validation, indexing, export.

A corpus is four files (accounts.jsonl, tweets.jsonl, edges.jsonl,
labels.csv) loaded into an immutable in-memory ``Corpus``. Loading is
tolerant: lines that decode but fail the record schema are dropped and
reported; lines that do not decode at all are fatal once they exceed 10%
of a file. Duplicate identifiers are always fatal. Everything downstream
treats the corpus as read-only.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

VALID_KINDS = frozenset({"original", "reply", "retweet", "quote"})

ACCOUNTS_FILE = "accounts.jsonl"
TWEETS_FILE = "tweets.jsonl"
EDGES_FILE = "edges.jsonl"
LABELS_FILE = "labels.csv"

# Fraction of undecodable lines (per file) above which loading aborts.
MALFORMED_FATAL_FRACTION = 0.10


class CorpusError(Exception):
    """Fatal ingestion problem: unreadable file, duplicate id, broken schema."""


def parse_instant(value) -> datetime:
    """Parse an ISO-8601 string or epoch seconds into a UTC datetime."""
    if isinstance(value, bool):
        raise ValueError(f"not a timestamp: {value!r}")
    if isinstance(value, (int, float)):
        return datetime.fromtimestamp(value, tz=timezone.utc)
    if isinstance(value, str):
        text = value.strip()
        if text.endswith(("Z", "z")):
            text = text[:-1] + "+00:00"
        dt = datetime.fromisoformat(text)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return dt.astimezone(timezone.utc)
    raise ValueError(f"not a timestamp: {value!r}")


def format_instant(dt: datetime) -> str:
    """Canonical ISO-8601 form with a Z suffix; inverse of parse_instant."""
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def normalize_hashtag(tag: str) -> str:
    """Lowercase and strip any leading '#' from a hashtag."""
    return tag.strip().lstrip("#").lower()


@dataclass(frozen=True)
class Account:
    account_id: str
    handle: str
    created_at: datetime
    follower_count: int
    following_count: int
    tweet_count: int
    description: str = ""


@dataclass(frozen=True)
class Tweet:
    tweet_id: str
    author_id: str
    created_at: datetime
    text: str
    kind: str
    in_reply_to_account: str | None = None
    referenced_account: str | None = None
    hashtags: tuple[str, ...] = ()
    urls: tuple[str, ...] = ()
    language: str | None = None


@dataclass(frozen=True)
class FollowEdge:
    source: str
    target: str


@dataclass(frozen=True)
class GroupPartition:
    """Named, pairwise-disjoint account sets driving group comparisons."""

    groups: dict[str, frozenset[str]] = field(default_factory=dict)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.groups)

    def group_of(self, account_id: str) -> str | None:
        for name, members in self.groups.items():
            if account_id in members:
                return name
        return None

    def __contains__(self, name: str) -> bool:
        return name in self.groups

    def __getitem__(self, name: str) -> frozenset[str]:
        return self.groups[name]


@dataclass(frozen=True)
class Violation:
    """One broken rule, anchored to a file/line or an identifier."""

    rule: str
    file: str | None = None
    line: int | None = None
    identifier: str | None = None
    detail: str = ""

    def sort_key(self):
        return (self.file or "", self.line if self.line is not None else -1,
                self.identifier or "", self.rule)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __bool__(self) -> bool:
        return bool(self.violations)

    @property
    def empty(self) -> bool:
        return not self.violations

    def rules(self) -> list[str]:
        return [v.rule for v in self.violations]

    def to_rows(self) -> list[tuple]:
        return [(v.file or "", "" if v.line is None else v.line,
                 v.identifier or "", v.rule, v.detail) for v in self.violations]


@dataclass(frozen=True)
class Corpus:
    """Immutable, indexed snapshot of one corpus. Treat every field as read-only."""

    accounts: dict[str, Account]
    tweets: dict[str, Tweet]
    follow_edges: frozenset[FollowEdge]
    partition: GroupPartition
    tweets_by_author: dict[str, tuple[str, ...]] = field(compare=False, default_factory=dict)
    load_report: ValidationReport = field(compare=False, default_factory=ValidationReport)
    provenance: dict[tuple[str, str], tuple[str, int]] = field(compare=False, default_factory=dict)

    def __post_init__(self):
        index: dict[str, list[str]] = {}
        for tweet in self.tweets.values():
            index.setdefault(tweet.author_id, []).append(tweet.tweet_id)
        for author, ids in index.items():
            ids.sort(key=lambda tid: (self.tweets[tid].created_at, tid))
        object.__setattr__(
            self, "tweets_by_author", {a: tuple(ids) for a, ids in sorted(index.items())}
        )

    def tweets_of(self, account_id: str) -> tuple[Tweet, ...]:
        return tuple(self.tweets[tid] for tid in self.tweets_by_author.get(account_id, ()))

    @property
    def n_accounts(self) -> int:
        return len(self.accounts)

    @property
    def n_tweets(self) -> int:
        return len(self.tweets)


def make_corpus(accounts, tweets, edges=(), partition=None, load_report=None,
                provenance=None) -> Corpus:
    """Index records into a Corpus; duplicate account/tweet ids are fatal."""
    account_index: dict[str, Account] = {}
    for acct in accounts:
        if acct.account_id in account_index:
            raise CorpusError(f"duplicate account_id: {acct.account_id}")
        account_index[acct.account_id] = acct
    tweet_index: dict[str, Tweet] = {}
    for tweet in tweets:
        if tweet.tweet_id in tweet_index:
            raise CorpusError(f"duplicate tweet_id: {tweet.tweet_id}")
        tweet_index[tweet.tweet_id] = tweet
    return Corpus(
        accounts=account_index,
        tweets=tweet_index,
        follow_edges=frozenset(edges),
        partition=partition or GroupPartition(),
        load_report=load_report or ValidationReport(),
        provenance=provenance or {},
    )


class _RecordError(Exception):
    def __init__(self, rule: str, detail: str = ""):
        super().__init__(rule)
        self.rule = rule
        self.detail = detail


def _as_id(obj, key, aliases) -> str:
    value = obj.get(aliases.get(key, key))
    if value is None or (isinstance(value, str) and not value.strip()):
        raise _RecordError(f"missing-field:{key}")
    if isinstance(value, (str, int)):
        return str(value).strip()
    raise _RecordError(f"bad-field:{key}", f"expected identifier, got {type(value).__name__}")


def _as_count(obj, key, aliases) -> int:
    value = obj.get(aliases.get(key, key))
    if value is None:
        raise _RecordError(f"missing-field:{key}")
    if isinstance(value, bool) or not isinstance(value, int):
        raise _RecordError(f"bad-field:{key}", f"expected integer, got {value!r}")
    if value < 0:
        raise _RecordError("negative-count", f"{key}={value}")
    return value


def _as_instant(obj, key, aliases) -> datetime:
    value = obj.get(aliases.get(key, key))
    if value is None:
        raise _RecordError(f"missing-field:{key}")
    try:
        return parse_instant(value)
    except (ValueError, OverflowError, OSError) as exc:
        raise _RecordError("bad-timestamp", str(exc)) from exc


def _parse_account(obj, aliases) -> Account:
    return Account(
        account_id=_as_id(obj, "account_id", aliases),
        handle=str(obj.get(aliases.get("handle", "handle"), "") or ""),
        created_at=_as_instant(obj, "created_at", aliases),
        follower_count=_as_count(obj, "follower_count", aliases),
        following_count=_as_count(obj, "following_count", aliases),
        tweet_count=_as_count(obj, "tweet_count", aliases),
        description=str(obj.get(aliases.get("description", "description"), "") or ""),
    )


def _optional_id(obj, key, aliases) -> str | None:
    value = obj.get(aliases.get(key, key))
    if value is None or value == "":
        return None
    return str(value).strip() or None


def _parse_tweet(obj, aliases) -> Tweet:
    kind = obj.get(aliases.get("kind", "kind"))
    if kind is None:
        raise _RecordError("missing-field:kind")
    if kind not in VALID_KINDS:
        raise _RecordError("bad-kind", f"kind={kind!r}")
    text = obj.get(aliases.get("text", "text"))
    if text is None:
        raise _RecordError("missing-field:text")
    raw_tags = obj.get(aliases.get("hashtags", "hashtags")) or []
    raw_urls = obj.get(aliases.get("urls", "urls")) or []
    if not isinstance(raw_tags, list) or not isinstance(raw_urls, list):
        raise _RecordError("bad-field:entities", "hashtags/urls must be lists")
    hashtags = tuple(t for t in (normalize_hashtag(str(tag)) for tag in raw_tags) if t)
    language = obj.get(aliases.get("language", "language"))
    return Tweet(
        tweet_id=_as_id(obj, "tweet_id", aliases),
        author_id=_as_id(obj, "author_id", aliases),
        created_at=_as_instant(obj, "created_at", aliases),
        text=str(text),
        kind=kind,
        in_reply_to_account=_optional_id(obj, "in_reply_to_account", aliases),
        referenced_account=_optional_id(obj, "referenced_account", aliases),
        hashtags=hashtags,
        urls=tuple(str(u) for u in raw_urls),
        language=str(language) if language not in (None, "") else None,
    )


def _iter_jsonl(path: Path):
    """Yield (line_number, decoded_object_or_None); None marks an undecodable line."""
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    with handle:
        for lineno, raw in enumerate(handle, start=1):
            stripped = raw.strip()
            if not stripped:
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError:
                yield lineno, None
                continue
            yield lineno, obj if isinstance(obj, dict) else None


def _load_jsonl_records(path: Path, parse, aliases, violations):
    """Parse one JSONL file; returns [(line, record)]. >10% undecodable is fatal."""
    records = []
    total = 0
    malformed = 0
    first_bad: int | None = None
    fname = path.name
    for lineno, obj in _iter_jsonl(path):
        total += 1
        if obj is None:
            malformed += 1
            if first_bad is None:
                first_bad = lineno
            violations.append(Violation("invalid-json", file=fname, line=lineno))
            continue
        try:
            records.append((lineno, parse(obj, aliases)))
        except _RecordError as exc:
            violations.append(
                Violation(exc.rule, file=fname, line=lineno, detail=exc.detail)
            )
    if total and malformed > MALFORMED_FATAL_FRACTION * total:
        raise CorpusError(
            f"{fname}: {malformed} of {total} lines are not valid JSON records "
            f"(first offending line: {first_bad})"
        )
    return records


def _load_labels(path: Path, known_accounts, violations) -> GroupPartition:
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    fname = path.name
    groups: dict[str, set[str]] = {}
    assigned: dict[str, str] = {}
    with handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or not {"account_id", "group_name"} <= set(reader.fieldnames):
            raise CorpusError(f"{fname}: header must contain account_id,group_name")
        for lineno, row in enumerate(reader, start=2):
            account_id = (row.get("account_id") or "").strip()
            group = (row.get("group_name") or "").strip()
            if not account_id or not group:
                violations.append(Violation("bad-label-row", file=fname, line=lineno))
                continue
            if account_id not in known_accounts:
                violations.append(
                    Violation("partition-unknown-member", file=fname, line=lineno,
                              identifier=account_id)
                )
                continue
            if account_id in assigned:
                if assigned[account_id] != group:
                    violations.append(
                        Violation("partition-overlap", file=fname, line=lineno,
                                  identifier=account_id,
                                  detail=f"already in {assigned[account_id]}")
                    )
                continue
            assigned[account_id] = group
            groups.setdefault(group, set()).add(account_id)
    return GroupPartition({name: frozenset(members) for name, members in groups.items()})


def load_corpus(account_path, tweet_path, edge_path=None, label_path=None,
                field_aliases=None) -> Corpus:
    """Load a corpus from JSONL/CSV files into an immutable Corpus.

    ``field_aliases`` maps canonical field names to the names used in the
    files, per section: ``{"accounts": {"account_id": "id"}, "tweets": {...}}``.
    Line-level problems end up in ``corpus.load_report``; duplicated
    identifiers and files with >10% undecodable lines raise CorpusError.
    """
    aliases = field_aliases or {}
    violations: list[Violation] = []
    provenance: dict[tuple[str, str], tuple[str, int]] = {}

    account_path = Path(account_path)
    tweet_path = Path(tweet_path)
    account_records = _load_jsonl_records(
        account_path, _parse_account, aliases.get("accounts", {}), violations)
    accounts = []
    for lineno, acct in account_records:
        accounts.append(acct)
        provenance[("account", acct.account_id)] = (account_path.name, lineno)

    tweet_records = _load_jsonl_records(
        tweet_path, _parse_tweet, aliases.get("tweets", {}), violations)
    tweets = []
    for lineno, tweet in tweet_records:
        tweets.append(tweet)
        provenance[("tweet", tweet.tweet_id)] = (tweet_path.name, lineno)

    edges: list[FollowEdge] = []
    if edge_path is not None:
        edge_path = Path(edge_path)
        seen_pairs = set()
        edge_aliases = aliases.get("edges", {})

        def parse_edge(obj, al):
            return FollowEdge(source=_as_id(obj, "source", al), target=_as_id(obj, "target", al))

        for lineno, edge in _load_jsonl_records(edge_path, parse_edge, edge_aliases, violations):
            if edge.source == edge.target:
                violations.append(
                    Violation("self-follow", file=edge_path.name, line=lineno,
                              identifier=edge.source)
                )
                continue
            pair = (edge.source, edge.target)
            if pair in seen_pairs:
                violations.append(
                    Violation("duplicate-edge", file=edge_path.name, line=lineno,
                              identifier=f"{edge.source}->{edge.target}")
                )
                continue
            seen_pairs.add(pair)
            edges.append(edge)

    known = {a.account_id for a in accounts}
    partition = GroupPartition()
    if label_path is not None:
        partition = _load_labels(Path(label_path), known, violations)

    violations.sort(key=Violation.sort_key)
    return make_corpus(
        accounts, tweets, edges, partition,
        load_report=ValidationReport(tuple(violations)),
        provenance=provenance,
    )


def validate(corpus: Corpus) -> ValidationReport:
    """Check every type invariant on an in-memory corpus (pure)."""
    violations: list[Violation] = []

    def where(kind: str, identifier: str) -> dict:
        file, line = corpus.provenance.get((kind, identifier), (None, None))
        return {"file": file, "line": line, "identifier": identifier}

    for acct in corpus.accounts.values():
        if min(acct.follower_count, acct.following_count, acct.tweet_count) < 0:
            violations.append(Violation("negative-count", **where("account", acct.account_id)))

    for tweet in corpus.tweets.values():
        loc = where("tweet", tweet.tweet_id)
        if tweet.kind == "reply" and tweet.in_reply_to_account is None:
            violations.append(Violation("reply-missing-target", **loc))
        if tweet.kind in ("retweet", "quote") and tweet.referenced_account is None:
            violations.append(Violation("reference-missing-target", **loc))
        if tweet.kind != "reply" and tweet.in_reply_to_account is not None:
            violations.append(Violation("unexpected-reply-target", **loc))
        if tweet.kind in ("original", "reply") and tweet.referenced_account is not None:
            violations.append(Violation("unexpected-reference-target", **loc))
        if tweet.author_id not in corpus.accounts:
            violations.append(Violation("dangling-author", detail=tweet.author_id, **loc))
        for tag in tweet.hashtags:
            if tag != normalize_hashtag(tag) or not tag:
                violations.append(Violation("hashtag-not-normalized", detail=tag, **loc))

    for edge in sorted(corpus.follow_edges, key=lambda e: (e.source, e.target)):
        if edge.source == edge.target:
            violations.append(Violation("self-follow", identifier=edge.source))

    seen: dict[str, str] = {}
    for name, members in corpus.partition.groups.items():
        for member in sorted(members):
            if member in seen:
                violations.append(
                    Violation("partition-overlap", identifier=member,
                              detail=f"{seen[member]} and {name}")
                )
            seen[member] = name
            if member not in corpus.accounts:
                violations.append(Violation("partition-unknown-member", identifier=member))

    violations.sort(key=Violation.sort_key)
    return ValidationReport(tuple(violations))


def _account_to_obj(acct: Account) -> dict:
    return {
        "account_id": acct.account_id,
        "handle": acct.handle,
        "created_at": format_instant(acct.created_at),
        "follower_count": acct.follower_count,
        "following_count": acct.following_count,
        "tweet_count": acct.tweet_count,
        "description": acct.description,
    }


def _tweet_to_obj(tweet: Tweet) -> dict:
    return {
        "tweet_id": tweet.tweet_id,
        "author_id": tweet.author_id,
        "created_at": format_instant(tweet.created_at),
        "text": tweet.text,
        "kind": tweet.kind,
        "in_reply_to_account": tweet.in_reply_to_account,
        "referenced_account": tweet.referenced_account,
        "hashtags": list(tweet.hashtags),
        "urls": list(tweet.urls),
        "language": tweet.language,
    }


def export_corpus(corpus: Corpus, out_dir) -> dict[str, Path]:
    """Write the corpus back out as canonical, sorted JSONL/CSV files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "accounts": out / ACCOUNTS_FILE,
        "tweets": out / TWEETS_FILE,
        "edges": out / EDGES_FILE,
        "labels": out / LABELS_FILE,
    }
    with open(paths["accounts"], "w", encoding="utf-8") as fh:
        for account_id in sorted(corpus.accounts):
            fh.write(json.dumps(_account_to_obj(corpus.accounts[account_id]),
                                ensure_ascii=False, sort_keys=True) + "\n")
    with open(paths["tweets"], "w", encoding="utf-8") as fh:
        for tweet_id in sorted(corpus.tweets):
            fh.write(json.dumps(_tweet_to_obj(corpus.tweets[tweet_id]),
                                ensure_ascii=False, sort_keys=True) + "\n")
    with open(paths["edges"], "w", encoding="utf-8") as fh:
        for edge in sorted(corpus.follow_edges, key=lambda e: (e.source, e.target)):
            fh.write(json.dumps({"source": edge.source, "target": edge.target},
                                sort_keys=True) + "\n")
    with open(paths["labels"], "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["account_id", "group_name"])
        for name in corpus.partition.names:
            for member in sorted(corpus.partition[name]):
                writer.writerow([member, name])
    return paths


def merge_corpora(*parts: Corpus) -> Corpus:
    """Union disjoint corpus fragments; colliding identifiers are fatal."""
    accounts: list[Account] = []
    tweets: list[Tweet] = []
    edges: set[FollowEdge] = set()
    groups: dict[str, set[str]] = {}
    for part in parts:
        accounts.extend(part.accounts.values())
        tweets.extend(part.tweets.values())
        edges.update(part.follow_edges)
        for name, members in part.partition.groups.items():
            groups.setdefault(name, set()).update(members)
    partition = GroupPartition({n: frozenset(m) for n, m in groups.items()})
    return make_corpus(accounts, tweets, edges, partition)


def cap_tweets(corpus: Corpus, max_per_account: int) -> Corpus:
    """Keep only each author's ``max_per_account`` most recent tweets."""
    if max_per_account < 1:
        raise ValueError("max_per_account must be >= 1")
    keep: set[str] = set()
    for author, tweet_ids in corpus.tweets_by_author.items():
        recent = sorted(
            tweet_ids, key=lambda tid: (corpus.tweets[tid].created_at, tid), reverse=True
        )[:max_per_account]
        keep.update(recent)
    return make_corpus(
        list(corpus.accounts.values()),
        [corpus.tweets[tid] for tid in sorted(keep)],
        corpus.follow_edges,
        corpus.partition,
        provenance=corpus.provenance,
    )
