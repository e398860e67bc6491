import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from glosswsd.disambiguate import (DisambiguatedInstance, DisambiguationGraph, SignatureIndex,
                                   coherence_scores, densest_subgraph, improve, semantic_signature,
                                   solve)
from glosswsd.errors import UnknownSynsetError
from glosswsd.inventory import SemanticNetwork
from glosswsd.model import PartOfSpeech, Resource, Source


def chain():
    return SemanticNetwork([("a", "b", 0.5), ("b", "c", 0.4)])


def test_chain_signature():
    assert semantic_signature("a", chain(), radius=2) == {"a": 1.0, "b": 0.5, "c": 0.2}
    assert semantic_signature("a", chain(), radius=1) == {"a": 1.0, "b": 0.5}
    assert semantic_signature("z", chain()) == {"z": 1.0}


def test_best_path_product_wins():
    net = SemanticNetwork([("a", "b", 0.9), ("b", "d", 0.9), ("a", "c", 0.5), ("c", "d", 0.5)])
    assert semantic_signature("a", net)["d"] == pytest.approx(0.81)


def test_unknown_synset():
    with pytest.raises(UnknownSynsetError):
        semantic_signature("q", chain(), synsets={"a": None})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_signature_matches_networkx_oracle(seed, radius):
    rng = random.Random(seed)
    nodes = [f"s{i}" for i in range(7)]
    graph = oracles.random_graph(rng, nodes, density=0.4, high=1.5)
    net = SemanticNetwork((u, v, d["weight"]) for u, v, d in graph.edges(data=True))
    for node in nodes:
        got = semantic_signature(node, net, radius)
        want = oracles.signature(graph, node, radius)
        assert got.keys() == want.keys()
        for k in want:
            assert got[k] == pytest.approx(want[k], abs=1e-12)


def test_overlap_and_connection():
    sig = SignatureIndex(chain(), radius=1)
    # a: {a:1, b:.5}; c: {c:1, b:.4} share b
    assert sig.overlap("a", "c") == pytest.approx(0.2)
    assert sig.connected("a", "c")
    assert not SignatureIndex(chain(), radius=0).connected("a", "c")


def graph_for(candidates, edges, radius=1):
    return DisambiguationGraph.build(candidates, SignatureIndex(SemanticNetwork(edges), radius))


def test_graph_weights_are_symmetric_and_blocked():
    g = graph_for([("x", "y"), ("z",)], [("x", "z", 0.8)])
    assert (g.weights == g.weights.T).all()
    assert g.weights[0, 1] == 0  # same mention
    assert g.objective([0, 0]) == pytest.approx(g.weights[0, 2])


def test_solve_picks_connected_sense():
    g = graph_for([("rook_bird", "rook_chess"), ("chess",)], [("rook_chess", "chess", 0.9)])
    assignment, scores = solve(g)
    assert assignment == [1, 0]
    assert scores[0] == pytest.approx(1.0)  # the bird sense has no support at all
    assert scores[1] == 1.0  # single candidate


def test_zero_support_scores_zero():
    g = graph_for([("a", "b"), ("c", "d")], [])
    assignment, scores = solve(g)
    assert assignment == [0, 0]  # ties go to the smallest synset id
    assert scores == [0.0, 0.0]


def test_budget_keeps_incumbent():
    g = graph_for([("a", "b"), ("c", "d")], [("b", "d", 1.0)])
    assert improve(g, [0, 0], node_budget=0) == [0, 0]
    assert improve(g, [0, 0]) == [1, 1]
    assert densest_subgraph(g) == [1, 1]


def inst(sense, i=0):
    return DisambiguatedInstance(f"g{i}", Resource.WORDNET, "en", "w", 0, 1, "w",
                                 PartOfSpeech.NOUN, sense, 1.0, 0.0, Source.BABELFY)


def test_coherence_counts_connected_others():
    sig = SignatureIndex(SemanticNetwork([("a", "b", 1.0)]), radius=1)
    out = coherence_scores([inst("a"), inst("b"), inst("c")], sig)
    assert [d.coherence_score for d in out] == [0.5, 0.5, 0.0]
    assert coherence_scores([inst("a")], sig)[0].coherence_score == 0.0
    assert coherence_scores([], sig) == []
