"""Graph corpora and the property checks run over them.

Path counts are checked against a depth-first enumeration of paths that
shares nothing with the dynamic programme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from .graph import ResolutionGraph, path_counts, remove_arrows, sigma_groups


def enumerate_paths(K: int, arrows, src: int) -> dict[int, int]:
    """Count paths by walking every one of them."""
    out: dict[int, list[int]] = {}
    for i, j in arrows:
        out.setdefault(i, []).append(j)
    counts = {v: 0 for v in range(1, K + 1)}
    stack = [src]
    while stack:
        v = stack.pop()
        counts[v] += 1
        stack.extend(out.get(v, ()))
    return counts


def all_arrow_sets(K: int):
    """Every arrow set on 1..K with arrows to smaller indices."""
    pairs = [(i, j) for i in range(2, K + 1) for j in range(1, i)]
    for mask in range(1 << len(pairs)):
        yield frozenset(p for b, p in enumerate(pairs) if mask >> b & 1)


def random_graph(rng: np.random.Generator, K: int, levels: int = 3, p_extra: float = 0.35) -> ResolutionGraph:
    """Each E_i lies over E_{i-1}; extra arrows to earlier vertices at random."""
    arrows = {(i, i - 1) for i in range(2, K + 1)}
    for i in range(3, K + 1):
        for j in range(1, i - 1):
            if rng.random() < p_extra:
                arrows.add((i, j))
    delta = (levels,) + tuple(int(d) for d in rng.integers(1, levels + 1, size=K - 1))
    L = int(rng.integers(min(2, K), K + 1))
    return ResolutionGraph(K, frozenset(arrows), delta, L, levels)


def monotone_nu(rng: np.random.Generator, K: int, top: int = 12) -> list[int]:
    """nu_1 free, then nu_2 >= nu_3 >= ... >= nu_K."""
    tail = sorted((int(x) for x in rng.integers(0, top + 1, size=K - 1)), reverse=True)
    return [int(rng.integers(0, top + 1))] + tail


def _adjacency(K: int, arrows, size: int) -> np.ndarray:
    a = np.zeros((size + 1, size + 1), dtype=np.int64)
    for i, j in arrows:
        a[i, j] = 1
    return a


@dataclass
class CorpusResult:
    graphs: int = 0
    dp_mismatches: int = 0
    removal_checked: int = 0
    removal_violations: int = 0
    inequality_violations: int = 0
    examples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.dp_mismatches or self.removal_violations or self.inequality_violations)


def _check_removal(g: ResolutionGraph, res: CorpusResult):
    h = remove_arrows(g)
    before, after = path_counts(g), path_counts(h)
    res.removal_checked += 1
    if any(before[j] != after[j] for j in range(2, g.K + 1)) or after[1] > before[1]:
        res.removal_violations += 1
        res.examples.append(("removal", str(g)))
    if g.L >= 2:
        sg = sigma_groups(h)
        lower = sum(after[i] for i in range(2, g.L + 1))
        if sg.p1 > lower:
            res.inequality_violations += 1
            res.examples.append(("p1 bound", str(g)))


def check_exhaustive(max_K: int = 6, use_numba=None) -> CorpusResult:
    """All arrow sets for K <= max_K: DP against enumeration from every vertex
    E_K, then arrow removal on every valid resolution graph and every L."""
    res = CorpusResult()
    for K in range(1, max_K + 1):
        sets = list(all_arrow_sets(K))
        adjs = np.stack([_adjacency(K, s, K) for s in sets])
        srcs = np.full(len(sets), K, dtype=np.int64)
        dp = _kernels.path_counts_batch(adjs, srcs, use_numba)
        for idx, s in enumerate(sets):
            res.graphs += 1
            ref = enumerate_paths(K, s, K)
            if any(int(dp[idx, v]) != ref[v] for v in range(1, K + 1)):
                res.dp_mismatches += 1
                res.examples.append(("dp", K, sorted(s)))
            sources = {i for i, _ in s}
            if all(i in sources for i in range(2, K + 1)):
                for L in range(1, K + 1):
                    g = ResolutionGraph(K, s, (3,) * K, L)
                    _check_removal(g, res)
    return res


def check_random(n: int = 1000, max_K: int = 12, seed: int = 20131001, use_numba=None) -> CorpusResult:
    rng = np.random.default_rng(seed)
    graphs = [random_graph(rng, int(rng.integers(2, max_K + 1)), levels=int(rng.choice([3, 4]))) for _ in range(n)]
    adjs = np.stack([_adjacency(g.K, g.arrows, max_K) for g in graphs])
    srcs = np.array([g.K for g in graphs], dtype=np.int64)
    dp = _kernels.path_counts_batch(adjs, srcs, use_numba)
    res = CorpusResult()
    for idx, g in enumerate(graphs):
        res.graphs += 1
        ref = enumerate_paths(g.K, g.arrows, g.K)
        if any(int(dp[idx, v]) != ref[v] for v in range(1, g.K + 1)):
            res.dp_mismatches += 1
            res.examples.append(("dp", str(g)))
        _check_removal(g, res)
    return res


def small_examples() -> list[ResolutionGraph]:
    """A few hand-made graphs, used by the CLI and docs."""
    return [
        ResolutionGraph(3, frozenset({(3, 2), (2, 1)}), (3, 3, 2), 2),
        ResolutionGraph(3, frozenset({(3, 2), (3, 1), (2, 1)}), (3, 3, 2), 2),
        ResolutionGraph(4, frozenset({(4, 3), (4, 2), (3, 2), (3, 1), (2, 1)}), (3, 3, 2, 1), 3),
    ]


__all__ = [
    "CorpusResult",
    "all_arrow_sets",
    "check_exhaustive",
    "check_random",
    "enumerate_paths",
    "monotone_nu",
    "random_graph",
    "small_examples",
]
