"""botsieve: forensics toolkit for coordinated, LLM-powered social-media botnets.

Works entirely offline: corpora are loaded from JSONL/CSV exports, candidate
botnets are expanded from self-revealing phrases and shared seed domains,
coordination shows up in interaction-graph metrics and content statistics,
and a pluggable machine-generated-text detection pipeline turns per-tweet
scores into account-level classifications with threshold tuning and
statistical tests. A synthetic generator provides ground-truth corpora for
end-to-end validation.
"""

from . import (contentstats, corpus, detectkit, graphlab, linkmap, seedscan,
               synthnet)
from .corpus import (Account, Corpus, CorpusError, FollowEdge, GroupPartition,
                     Tweet, ValidationReport, cap_tweets, export_corpus,
                     load_corpus, merge_corpora, validate)
from .detectkit import (AccountScore, HeuristicDetector, QualificationRules,
                        ReplayDetector, StubDetector, TextDetector,
                        ThresholdResult, WelchResult, bin_openai,
                        classify_probability, concat_and_score,
                        filter_min_qualified, qualify_tweets, recall_at,
                        score_account, score_corpus, sweep_threshold, welch_t)
from .graphlab import (InteractionGraph, build_graph, degree_stats,
                       largest_wcc, pair_rate_matrix)
from .linkmap import (DEFAULT_SEED_DOMAINS, domain_frequency,
                      domain_share_profiles, expand_by_domains,
                      extract_domains, normalize_domain)
from .seedscan import (DEFAULT_RULESET, CategoryRuleset, PhraseQuery,
                       SelfRevealCategory, categorize_self_revealing,
                       category_summary, find_phrase_tweets, normalize_text)
from .contentstats import (TernaryPoint, amplified_accounts, hashtag_ranking,
                           profile_summary, ternary_bin, tweet_mix)
from .synthnet import (BotnetParams, HumanParams, fox8_preset,
                       generate_botnet, generate_humans, simulate_scores)

__version__ = "0.1.0"
