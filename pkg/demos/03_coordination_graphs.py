"""
Coordination signals in interaction graphs
==========================================

A botnet under one operator looks nothing like an organic community once
you draw its interaction graphs: follow degrees concentrate tightly around
an engineered mean, most of the network sits in one weakly connected
component, and the within-group reply rate is an order of magnitude above
baseline. This script computes all three signals on a ground-truth corpus.
"""

from botsieve import BotnetParams, HumanParams
from botsieve.corpus import GroupPartition, merge_corpora
from botsieve.graphlab import build_graph, degree_stats, largest_wcc, pair_rate_matrix
from botsieve.synthnet import generate_botnet, generate_humans

corpus = merge_corpora(
    generate_botnet(BotnetParams(n_bots=400, rng_seed=21)),
    generate_humans(HumanParams(n_humans=400, rng_seed=22)),
)
bots = sorted(corpus.partition["bot"])

# Follow network restricted to the botnet: dense and suspiciously uniform.
follow = build_graph(corpus, "follow", node_restriction=bots)
stats = degree_stats(follow)
print("botnet follow network")
print(f"  nodes {follow.n_nodes}, edges {follow.n_edges}")
print(f"  in-degree  {stats.mean_in:.1f} (SD {stats.sd_in:.1f})")
print(f"  out-degree {stats.mean_out:.1f} (SD {stats.sd_out:.1f})")

component = largest_wcc(follow)
print(f"  largest weakly connected component: {len(component)} of {follow.n_nodes}")

# Reply-pair rates within and across groups. The unrestricted graph keeps
# every referenced endpoint so both groups are fully inside it.
reply = build_graph(corpus, "reply")
matrix = pair_rate_matrix(reply, GroupPartition({
    "bot": corpus.partition["bot"],
    "human": corpus.partition["human"],
}))
print("\nreply pair rates (source group -> target group)")
for src in matrix.groups:
    for dst in matrix.groups:
        print(f"  {src:>5} -> {dst:<5} {matrix.rate(src, dst):.6f}")
print("\nwithin-bot replies dwarf every other cell: that is the planted")
print("coordination, and exactly what separates a botnet from a community.")
