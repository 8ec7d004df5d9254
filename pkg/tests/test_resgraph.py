from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanocert.errors import LengthMismatch
from fanocert.resgraph import (
    NFKind,
    ResolutionGraph,
    check_exhaustive,
    check_random,
    counting_mult_bound,
    enumerate_paths,
    evaluate_nf,
    format_graph,
    parse_graph,
    path_counts,
    random_graph,
    remove_arrows,
    sigma_groups,
)
from fanocert.resgraph.corpus import monotone_nu


def graph(K, arrows, delta=None, L=1, levels=3):
    return ResolutionGraph(K, frozenset(arrows), tuple(delta or [levels] * K), L, levels)


@st.composite
def graphs(draw, max_K=8):
    K = draw(st.integers(1, max_K))
    levels = draw(st.sampled_from([3, 4]))
    arrows = set()
    for i in range(2, K + 1):
        targets = draw(st.sets(st.integers(1, i - 1), min_size=1))
        arrows |= {(i, j) for j in targets}
    delta = [levels] + sorted(draw(st.lists(st.integers(1, levels), min_size=K - 1, max_size=K - 1)), reverse=True)
    L = draw(st.integers(1, K))
    return ResolutionGraph(K, frozenset(arrows), tuple(delta), L, levels)


def nx_counts(g, src):
    G = nx.DiGraph()
    G.add_nodes_from(range(1, g.K + 1))
    G.add_edges_from(g.arrows)
    out = {}
    for j in range(1, g.K + 1):
        out[j] = 1 if j == src else sum(1 for _ in nx.all_simple_paths(G, src, j))
    return out


def test_path_count_examples():
    assert path_counts(graph(3, {(3, 2), (2, 1)})) == {3: 1, 2: 1, 1: 1}
    assert path_counts(graph(3, {(3, 2), (3, 1), (2, 1)}))[1] == 2
    assert path_counts(graph(4, {(4, 3), (4, 2), (3, 2), (3, 1), (2, 1)}))[1] == 3


def test_path_counts_from_inner_vertex():
    g = graph(4, {(4, 3), (4, 2), (3, 2), (3, 1), (2, 1)})
    assert path_counts(g, 3) == {4: 0, 3: 1, 2: 1, 1: 2}


def test_remove_arrows_examples():
    g = graph(3, {(3, 2), (3, 1), (2, 1)}, [3, 3, 2], L=2)
    h = remove_arrows(g)
    assert h.arrows == {(3, 2), (2, 1)}
    assert path_counts(g)[1] == 2 and path_counts(h)[1] == 1
    assert path_counts(h)[2] == path_counts(g)[2] == 1
    chain = graph(3, {(3, 2), (2, 1)}, [3, 3, 2], L=2)
    assert remove_arrows(chain) == chain


def test_sigma_examples():
    sg = sigma_groups(graph(2, {(2, 1)}, [3, 3]))
    assert sg.p1 == 1 and sg.sigma == (1, 0, 0)
    g = graph(4, {(4, 3), (4, 2), (3, 2), (3, 1), (2, 1)}, [3, 3, 2, 1], L=3)
    sg = sigma_groups(g)
    p = enumerate_paths(g.K, g.arrows, g.K)
    assert sg.p1 == p[1]
    assert sg.sigma == (p[2], p[3], p[4])


def test_nf_examples():
    g = graph(2, {(2, 1)}, [3, 2])
    ev = evaluate_nf(g, [3, 1])
    assert (ev.lhs, ev.rhs, ev.satisfied) == (4, 5, False)
    ev = evaluate_nf(g, [3, 3])
    assert (ev.lhs, ev.rhs, ev.satisfied) == (6, 5, True)
    assert not evaluate_nf(g, [0, 0], "LogCanonical4").satisfied
    with pytest.raises(LengthMismatch):
        evaluate_nf(g, [1])


def test_nf_kinds():
    g = graph(4, {(4, 3), (4, 2), (3, 2), (3, 1), (2, 1)}, [3, 3, 2, 1], L=2)
    nu = [4, 3, 2, 1]
    p = path_counts(g)
    assert evaluate_nf(g, nu, NFKind.CANONICAL3).rhs == 3 * p[1] + 3 * p[2] + 2 * p[3] + p[4]
    assert evaluate_nf(g, nu, NFKind.LOG_CANONICAL4).rhs == 4 * p[1] + 3 * p[2] + 2 * p[3] + p[4]
    assert evaluate_nf(g, nu, NFKind.CASE51).rhs == 3 * p[1] + 2 * p[2] + (p[3] + p[4])


def test_counting_mult_bound_examples():
    assert counting_mult_bound(graph(1, set()), [3]) == 9
    assert counting_mult_bound(graph(3, {(3, 2), (2, 1)}), [3, 2, 1]) == 14
    with pytest.raises(LengthMismatch):
        counting_mult_bound(graph(1, set()), [1, 2])


def test_invariants_enforced():
    with pytest.raises(ValueError):
        graph(3, {(2, 1)})  # vertex 3 has no outgoing arrow
    with pytest.raises(ValueError):
        graph(2, {(1, 2)})
    with pytest.raises(ValueError):
        graph(2, {(2, 1)}, [3, 4])


def test_text_format():
    text = "K=5; L=3; delta=4,4,3,2,1; arrows=(5>4),(5>1),(4>3),(4>1),(3>2),(2>1); levels=4"
    g = parse_graph(text)
    assert format_graph(g) == text
    assert g.levels == 4 and g.L == 3


@given(graphs())
def test_dp_matches_networkx(g):
    assert path_counts(g) == nx_counts(g, g.K)
    assert path_counts(g) == enumerate_paths(g.K, g.arrows, g.K)


@given(graphs())
def test_removal_properties(g):
    p = path_counts(g)
    h = remove_arrows(g)
    q = path_counts(h)
    assert q[1] <= p[1]
    assert all(q[j] == p[j] for j in range(2, g.K + 1))
    if g.L >= 2:
        assert q[1] <= sum(q[i] for i in range(2, g.L + 1))
    assert parse_graph(format_graph(g)) == g


@given(graphs(), st.data())
def test_nf_truth_value(g, data):
    nu = data.draw(st.lists(st.fractions(min_value=0, max_value=10, max_denominator=4), min_size=g.K, max_size=g.K))
    ev = evaluate_nf(g, nu)
    assert ev.satisfied == (ev.lhs > ev.rhs)


def test_random_generators():
    rng = np.random.default_rng(0)
    for _ in range(200):
        K = int(rng.integers(2, 13))
        nu = monotone_nu(rng, K)
        assert all(a >= b for a, b in zip(nu[1:], nu[2:]))
        g = random_graph(rng, K)
        assert g.delta[0] == g.levels and 2 <= g.L <= K
        assert {(i, i - 1) for i in range(2, K + 1)} <= g.arrows


def test_exhaustive_corpus_small():
    res = check_exhaustive(4)
    assert res.ok and res.graphs > 0 and res.removal_checked > 0


def test_random_corpus():
    res = check_random(1000, 12)
    assert res.ok and res.graphs == 1000


def test_numba_and_numpy_agree():
    a = check_random(300, 12, seed=4, use_numba=True)
    b = check_random(300, 12, seed=4, use_numba=False)
    assert (a.graphs, a.removal_checked, a.ok) == (b.graphs, b.removal_checked, b.ok)
