"""Shared corpus-building helpers for the test suite."""

from __future__ import annotations

from botsieve.corpus import (Account, FollowEdge, GroupPartition, Tweet,
                             make_corpus, parse_instant)


def account(account_id, followers=10, following=5, tweet_count=3,
            created="2020-06-01T00:00:00Z", handle=None, description=""):
    return Account(
        account_id=account_id,
        handle=handle or f"user_{account_id}",
        created_at=parse_instant(created),
        follower_count=followers,
        following_count=following,
        tweet_count=tweet_count,
        description=description,
    )


def tweet(tweet_id, author, kind="original", text="hello world",
          created="2023-01-01T00:00:00Z", reply_to=None, ref=None,
          hashtags=(), urls=(), language="en"):
    return Tweet(
        tweet_id=tweet_id,
        author_id=author,
        created_at=parse_instant(created),
        text=text,
        kind=kind,
        in_reply_to_account=reply_to,
        referenced_account=ref,
        hashtags=tuple(hashtags),
        urls=tuple(urls),
        language=language,
    )


def corpus_of(accounts, tweets, edges=(), groups=None):
    partition = GroupPartition(
        {name: frozenset(members) for name, members in (groups or {}).items()}
    )
    return make_corpus(accounts, tweets, [FollowEdge(*e) for e in edges], partition)
