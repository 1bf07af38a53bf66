"""Per-account content statistics: tweet-type mix, ternary binning, rankings,
profile summaries.

The tweet-type mix treats quotes as retweets, giving each active account a
point on the 2-simplex (original / reply / retweet+quote percentages).
Binning uses a triangular lattice with largest-remainder rounding, so bin
counts conserve the number of accounts exactly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus


@dataclass(frozen=True)
class TernaryPoint:
    pct_original: float
    pct_reply: float
    pct_retweet_quote: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.pct_original, self.pct_reply, self.pct_retweet_quote)


def tweet_mix(corpus: Corpus, account_id: str) -> TernaryPoint | None:
    """Percentage mix of the account's tweets; None when it has no tweets."""
    tweets = corpus.tweets_of(account_id)
    if not tweets:
        return None
    kinds = Counter(t.kind for t in tweets)
    total = len(tweets)
    return TernaryPoint(
        pct_original=100.0 * kinds["original"] / total,
        pct_reply=100.0 * kinds["reply"] / total,
        pct_retweet_quote=100.0 * (kinds["retweet"] + kinds["quote"]) / total,
    )


def group_mix_points(corpus: Corpus, group) -> dict[str, TernaryPoint]:
    """Mix point per group member, skipping accounts with no tweets."""
    points = {}
    for account_id in sorted(group):
        point = tweet_mix(corpus, account_id)
        if point is not None:
            points[account_id] = point
    return points


@dataclass(frozen=True)
class TernaryBinGrid:
    resolution: int
    bins: dict[tuple[int, int, int], int]

    @property
    def total(self) -> int:
        return sum(self.bins.values())


def _lattice_bin(point: TernaryPoint, resolution: int) -> tuple[int, int, int]:
    raw = [p * resolution / 100.0 for p in point.as_tuple()]
    base = [math.floor(x) for x in raw]
    missing = resolution - sum(base)
    if not 0 <= missing <= 3:
        raise ValueError(f"ternary point does not sum to 100: {point}")
    # Largest-remainder correction; remainder ties resolved by axis order.
    order = sorted(range(3), key=lambda i: (-(raw[i] - base[i]), i))
    for i in order[:missing]:
        base[i] += 1
    return (base[0], base[1], base[2])


def ternary_bin(points, resolution: int) -> TernaryBinGrid:
    """Assign each mix point to its lattice bin (i, j, k) with i+j+k=resolution."""
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    bins: Counter[tuple[int, int, int]] = Counter()
    for point in points:
        bins[_lattice_bin(point, resolution)] += 1
    return TernaryBinGrid(resolution=resolution, bins=dict(sorted(bins.items())))


def hashtag_ranking(corpus: Corpus, group, k: int) -> list[tuple[str, int]]:
    """Top-k hashtags over all tweet kinds of the group, ties lexicographic."""
    if k < 1:
        raise ValueError("k must be >= 1")
    counts: Counter[str] = Counter()
    for account_id in group:
        for tweet in corpus.tweets_of(account_id):
            counts.update(tweet.hashtags)
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]


def amplified_accounts(corpus: Corpus, group, k: int) -> list[tuple[str, int]]:
    """Top-k outside accounts the group retweets, quotes, or replies to."""
    if k < 1:
        raise ValueError("k must be >= 1")
    members = frozenset(group)
    counts: Counter[str] = Counter()
    for account_id in members:
        for tweet in corpus.tweets_of(account_id):
            if tweet.kind == "reply":
                target = tweet.in_reply_to_account
            elif tweet.kind in ("retweet", "quote"):
                target = tweet.referenced_account
            else:
                continue
            if target is not None and target not in members:
                counts[target] += 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]


@dataclass(frozen=True)
class ProfileSummary:
    n_accounts: int
    follower_mean: float
    follower_sd: float
    following_mean: float
    following_sd: float
    tweet_count_mean: float
    tweet_count_sd: float
    creation_years: dict[int, int]


def profile_summary(corpus: Corpus, group) -> ProfileSummary:
    """Mean/SD (population) of profile counters plus a creation-year histogram."""
    members = sorted(group)
    if not members:
        raise ValueError("group must be non-empty")
    accounts = [corpus.accounts[m] for m in members if m in corpus.accounts]
    if not accounts:
        raise ValueError("no group member resolves to an account")
    followers = np.array([a.follower_count for a in accounts], dtype=float)
    following = np.array([a.following_count for a in accounts], dtype=float)
    tweet_counts = np.array([a.tweet_count for a in accounts], dtype=float)
    years = Counter(a.created_at.year for a in accounts)
    return ProfileSummary(
        n_accounts=len(accounts),
        follower_mean=float(followers.mean()),
        follower_sd=float(followers.std()),
        following_mean=float(following.mean()),
        following_sd=float(following.std()),
        tweet_count_mean=float(tweet_counts.mean()),
        tweet_count_sd=float(tweet_counts.std()),
        creation_years=dict(sorted(years.items())),
    )
