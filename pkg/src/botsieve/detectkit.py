"""Machine-generated-text detection pipeline.

Covers tweet qualification and preprocessing, pluggable text detectors,
per-account score aggregation, score binning and dichotomization,
F1-maximizing threshold sweeps, recall at fixed thresholds, and Welch's
unequal-variance t-test.

Detectors are deliberately local and deterministic: a replay detector for
reproducing recorded scores, a keyed-digest stub for pipeline tests, and a
transparent text-statistics heuristic so the end-to-end pipeline runs on
raw text with no external service.
"""

from __future__ import annotations

import hashlib
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from scipy import stats as _scipy_stats

from .corpus import Corpus

# ---------------------------------------------------------------------------
# Qualification and preprocessing

_URL_RE = re.compile(r"(?:https?://\S+|www\.\S+)", re.IGNORECASE)
_HANDLE_TOKEN_RE = re.compile(r"@\w+")


@dataclass(frozen=True)
class QualificationRules:
    """Which tweets qualify for scoring and how their text is processed."""

    exclude_retweets: bool = True
    english_only: bool = True
    strip_reply_handles: bool = True
    strip_links: bool = True
    min_chars_after_processing: int = 1


def process_text(text: str, kind: str = "original",
                 rules: QualificationRules = QualificationRules()) -> str:
    """Strip platform artifacts from one tweet's text. Idempotent."""
    if rules.strip_reply_handles and kind == "reply":
        tokens = text.split()
        keep = 0
        while keep < len(tokens) and _HANDLE_TOKEN_RE.fullmatch(tokens[keep]):
            keep += 1
        text = " ".join(tokens[keep:])
    if rules.strip_links:
        text = _URL_RE.sub(" ", text)
    return " ".join(text.split())


def _is_english(language: str | None) -> bool:
    # A missing tag is treated as not-English: qualification is conservative.
    return language is not None and (language == "en" or language.startswith("en-"))


def qualify_tweets(corpus: Corpus, account_id: str,
                   rules: QualificationRules = QualificationRules()) -> list[str]:
    """Processed texts of the account's qualified tweets (possibly empty)."""
    if account_id not in corpus.accounts:
        raise KeyError(f"unknown account: {account_id}")
    texts = []
    for tweet in corpus.tweets_of(account_id):
        if rules.exclude_retweets and tweet.kind == "retweet":
            continue
        if rules.english_only and not _is_english(tweet.language):
            continue
        processed = process_text(tweet.text, tweet.kind, rules)
        if len(processed) >= rules.min_chars_after_processing:
            texts.append(processed)
    return texts


# ---------------------------------------------------------------------------
# Detectors

OPENAI_STYLE_SCALE = (0.0, 100.0)
PROBABILITY_SCALE = (0.0, 1.0)


def text_digest(text: str) -> str:
    """Stable digest keying replay scores: sha256 of the exact UTF-8 text, hex."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class TextDetector:
    """Interface: a named, deterministic text scorer with a declared range."""

    name: str = "detector"
    score_scale: tuple[float, float] = OPENAI_STYLE_SCALE
    concurrency_safe: bool = True

    def score(self, text: str) -> float:
        raise NotImplementedError


class StubDetector(TextDetector):
    """Keyed-digest pseudo-score: uniform over the scale, fixed for (key, text)."""

    def __init__(self, key: str = "", score_scale=OPENAI_STYLE_SCALE, name: str = "stub"):
        self.key = key
        self.score_scale = tuple(score_scale)
        self.name = name

    def score(self, text: str) -> float:
        digest = hashlib.sha256(f"{self.key}|{text}".encode("utf-8")).digest()
        unit = int.from_bytes(digest[:8], "big") / 2**64
        low, high = self.score_scale
        return low + unit * (high - low)


class ReplayDetector(TextDetector):
    """Scores looked up from a recorded fixture, keyed by text digest.

    The fixture is JSONL with records {"text_digest", "score"}; digests are
    produced by :func:`text_digest`. Unknown texts raise LookupError.
    """

    def __init__(self, scores: dict[str, float], score_scale=OPENAI_STYLE_SCALE,
                 name: str = "replay"):
        self.scores = dict(scores)
        self.score_scale = tuple(score_scale)
        self.name = name

    @classmethod
    def from_file(cls, path, score_scale=OPENAI_STYLE_SCALE) -> "ReplayDetector":
        scores = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                obj = json.loads(line)
                scores[obj["text_digest"]] = float(obj["score"])
        return cls(scores, score_scale=score_scale)

    def score(self, text: str) -> float:
        digest = text_digest(text)
        try:
            return self.scores[digest]
        except KeyError:
            raise LookupError(f"no recorded score for text digest {digest}") from None


def write_replay_scores(path, text_scores: dict[str, float]) -> Path:
    """Record {text: score} pairs as a replay fixture file."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for text in sorted(text_scores):
            fh.write(json.dumps(
                {"text_digest": text_digest(text), "score": float(text_scores[text])},
                sort_keys=True) + "\n")
    return path


_WORD_RE = re.compile(r"[a-zA-Z']+")
_SENTENCE_SPLIT_RE = re.compile(r"[.!?]+")

_FUNCTION_WORDS = frozenset(
    "the a an and or but if then of to in on at for with as is are was were be "
    "been being am it its this that these those there here i you he she we they "
    "my your his her our their me him them so not no do does did have has had "
    "will would can could should may might".split()
)


class HeuristicDetector(TextDetector):
    """Transparent text-statistics scorer on the 0-100 scale.

    Three signals associated with formulaic generated prose, each in [0, 1]:
    low type-token ratio, heavy function-word usage, and uniform sentence
    lengths. The score is a fixed-weight blend scaled to [0, 100]. This is a
    pipeline stand-in, not a calibrated classifier.
    """

    name = "heuristic"
    score_scale = OPENAI_STYLE_SCALE

    def score(self, text: str) -> float:
        tokens = [t.lower() for t in _WORD_RE.findall(text)]
        if not tokens:
            return 0.0
        repetition = 1.0 - len(set(tokens)) / len(tokens)
        function_load = min(1.0, (sum(t in _FUNCTION_WORDS for t in tokens) / len(tokens)) / 0.6)
        lengths = [len(_WORD_RE.findall(s)) for s in _SENTENCE_SPLIT_RE.split(text)]
        lengths = [n for n in lengths if n > 0]
        if len(lengths) >= 2:
            arr = np.array(lengths, dtype=float)
            uniformity = 1.0 / (1.0 + float(arr.std()))
        else:
            uniformity = 0.5
        blended = 0.35 * repetition + 0.35 * function_load + 0.30 * uniformity
        return float(min(100.0, max(0.0, 100.0 * blended)))


# ---------------------------------------------------------------------------
# Score aggregation

@dataclass(frozen=True)
class AccountScore:
    account_id: str
    n_qualified: int
    mean_score: float
    per_tweet_scores: tuple[float, ...]


def _score_texts(texts, detector: TextDetector, max_workers: int) -> list[float]:
    if max_workers > 1 and detector.concurrency_safe and len(texts) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(detector.score, texts))
    return [detector.score(text) for text in texts]


def score_account(account_id: str, texts, detector: TextDetector,
                  max_workers: int = 1) -> AccountScore | None:
    """Average the detector over the account's texts; None when nothing qualifies."""
    texts = list(texts)
    if not texts:
        return None
    scores = _score_texts(texts, detector, max_workers)
    return AccountScore(
        account_id=account_id,
        n_qualified=len(scores),
        mean_score=float(sum(scores) / len(scores)),
        per_tweet_scores=tuple(scores),
    )


def concat_and_score(texts, detector: TextDetector, separator: str = "\n") -> float:
    """Join texts and score the consolidated document once."""
    texts = list(texts)
    if not texts:
        raise ValueError("need at least one text to concatenate")
    return detector.score(separator.join(texts))


def score_corpus(corpus: Corpus, detector: TextDetector,
                 rules: QualificationRules = QualificationRules(),
                 group=None, max_workers: int = 1):
    """Score every account (or a group); returns (scores by id, n without any
    qualified tweet)."""
    account_ids = sorted(group) if group is not None else sorted(corpus.accounts)
    scores: dict[str, AccountScore] = {}
    unscored = 0
    for account_id in account_ids:
        if account_id not in corpus.accounts:
            continue
        result = score_account(
            account_id, qualify_tweets(corpus, account_id, rules), detector, max_workers)
        if result is None:
            unscored += 1
        else:
            scores[account_id] = result
    return scores, unscored


def filter_min_qualified(account_scores, min_n: int) -> list[AccountScore]:
    """Keep accounts backed by at least ``min_n`` qualified tweets."""
    if min_n < 1:
        raise ValueError("min_n must be >= 1")
    return [s for s in account_scores if s.n_qualified >= min_n]


# ---------------------------------------------------------------------------
# Binning and dichotomization

class ScoreBand(Enum):
    VERY_UNLIKELY = "very_unlikely"
    UNLIKELY = "unlikely"
    UNCLEAR = "unclear"
    POSSIBLY = "possibly"
    LIKELY = "likely"


# Right-closed bin edges on the 0-100 detector scale; 0 itself falls into
# the lowest band to keep the partition total.
_BAND_EDGES = (
    (10.0, ScoreBand.VERY_UNLIKELY),
    (45.0, ScoreBand.UNLIKELY),
    (90.0, ScoreBand.UNCLEAR),
    (98.0, ScoreBand.POSSIBLY),
    (100.0, ScoreBand.LIKELY),
)


def bin_openai(score: float) -> ScoreBand:
    """Band for a 0-100 detector score: (0,10] (10,45] (45,90] (90,98] (98,100]."""
    if not 0.0 <= score <= 100.0:
        raise ValueError(f"score out of range [0, 100]: {score}")
    for upper, band in _BAND_EDGES:
        if score <= upper:
            return band
    raise AssertionError("unreachable")


def classify_probability(prob: float, threshold: float = 0.65) -> str:
    """Dichotomize a generated-probability; the threshold itself counts as generated."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability out of range [0, 1]: {prob}")
    return "generated" if prob >= threshold else "not_generated"


# ---------------------------------------------------------------------------
# Threshold evaluation

BOT_LABEL = "bot"
HUMAN_LABEL = "human"


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    f1: float
    precision: float
    recall: float


@dataclass(frozen=True)
class SweepOutcome:
    best: ThresholdResult
    curve: tuple[ThresholdResult, ...]


def _split_labeled(scores):
    bots, humans = [], []
    for value, label in scores:
        if label == BOT_LABEL:
            bots.append(float(value))
        elif label == HUMAN_LABEL:
            humans.append(float(value))
        else:
            raise ValueError(f"label must be '{BOT_LABEL}' or '{HUMAN_LABEL}', got {label!r}")
    return bots, humans


def _confusion_result(threshold, bot_values, human_values) -> ThresholdResult:
    tp = int(np.count_nonzero(bot_values >= threshold))
    fp = int(np.count_nonzero(human_values >= threshold))
    fn = len(bot_values) - tp
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ThresholdResult(threshold=float(threshold), f1=f1,
                           precision=precision, recall=recall)


def sweep_threshold(scores) -> SweepOutcome:
    """Find the F1-maximizing bot/human threshold (predict bot iff value >= t).

    Candidates are the midpoints between consecutive distinct score values
    plus one sentinel below and above everything, which covers every
    achievable confusion matrix. Ties go to the smallest threshold.
    """
    bots, humans = _split_labeled(scores)
    if not bots or not humans:
        raise ValueError("need both bot- and human-labeled scores")
    bot_values = np.array(bots)
    human_values = np.array(humans)
    distinct = np.unique(np.concatenate([bot_values, human_values]))
    candidates = [float(distinct[0] - 1.0)]
    candidates += [float(t) for t in (distinct[:-1] + distinct[1:]) / 2.0]
    candidates.append(float(distinct[-1] + 1.0))

    curve = tuple(_confusion_result(c, bot_values, human_values) for c in candidates)
    best = curve[0]
    for result in curve[1:]:
        if result.f1 > best.f1:
            best = result
    return SweepOutcome(best=best, curve=curve)


def recall_at(scores, threshold: float) -> float:
    """Fraction of bot-labeled scores at or above the threshold."""
    bots, _ = _split_labeled(scores)
    if not bots:
        raise ValueError("need at least one bot-labeled score")
    return sum(1 for v in bots if v >= threshold) / len(bots)


# ---------------------------------------------------------------------------
# Statistical testing

@dataclass(frozen=True)
class WelchResult:
    t: float
    df: float
    p: float


def welch_t(sample_a, sample_b) -> WelchResult:
    """Welch's unequal-variance t-test, two-sided.

    The statistic carries the sign of mean(a) - mean(b); degrees of freedom
    follow Welch-Satterthwaite; the p-value uses the t-distribution
    survival function.
    """
    a = np.asarray(list(sample_a), dtype=float)
    b = np.asarray(list(sample_b), dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("each sample needs at least 2 observations")
    var_a = float(a.var(ddof=1))
    var_b = float(b.var(ddof=1))
    sa = var_a / len(a)
    sb = var_b / len(b)
    if sa + sb == 0.0:
        raise ValueError("degenerate samples: combined variance is zero")
    t = (float(a.mean()) - float(b.mean())) / np.sqrt(sa + sb)
    # Weights instead of raw squared errors so subnormal variances cannot
    # underflow the Welch-Satterthwaite denominator.
    wa = sa / (sa + sb)
    wb = sb / (sa + sb)
    df = 1.0 / (wa**2 / (len(a) - 1) + wb**2 / (len(b) - 1))
    p = float(2.0 * _scipy_stats.t.sf(abs(t), df))
    return WelchResult(t=float(t), df=float(df), p=p)
