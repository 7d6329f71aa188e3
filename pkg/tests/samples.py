"""Random instances and fixed templates shared by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from pcsp_width.hypergraph import Hypergraph, girth, is_hereditarily_beta_sparse
from pcsp_width.structures import RelationalStructure, clique_structure, cycle_graph, digraph

# monic templates with known mixing times (found by a seeded scan and pinned here)
TEMPLATES = [
    ("loops2", digraph(2, [(0, 0), (0, 1), (1, 0), (1, 1)]), 1),
    ("K3", clique_structure(2, 3), 2),
    ("d4", digraph(4, [(0, 0), (0, 3), (1, 0), (1, 1), (1, 2), (2, 1), (3, 0), (3, 1), (3, 3)]), 3),
    ("C5", cycle_graph(5), 4),
    ("K32", clique_structure(3, 2), 1),
    ("t2", RelationalStructure.build(3, [("R", 3, [
        (0, 0, 2), (0, 1, 0), (0, 1, 2), (1, 0, 1), (1, 0, 2), (1, 2, 0), (1, 2, 2), (2, 1, 1), (2, 2, 0)])]), 2),
    ("t3", RelationalStructure.build(3, [("R", 3, [
        (0, 1, 1), (0, 1, 2), (1, 0, 1), (1, 0, 2), (1, 1, 2), (1, 2, 0), (2, 0, 0), (2, 1, 0), (2, 1, 2), (2, 2, 2)])]), 3),
    ("t4", RelationalStructure.build(3, [("R", 3, [
        (0, 1, 0), (0, 1, 1), (0, 2, 2), (1, 0, 2), (1, 2, 0), (1, 2, 1), (2, 0, 0), (2, 1, 0)])]), 4),
]


def random_hypergraph(rng: np.random.Generator, n: int, r: int, m: int) -> Hypergraph:
    pool = list(itertools.combinations(range(n), r))
    m = min(m, len(pool))
    pick = rng.choice(len(pool), size=m, replace=False) if m else []
    return Hypergraph(n, r, [pool[i] for i in pick])


def chainy_hypergraph(rng: np.random.Generator, r: int, m: int, n_max: int) -> Hypergraph:
    """Random hypergraph grown by attaching edges to low-degree vertices, which favours links."""
    n = r
    edges = [tuple(range(r))]
    for _ in range(m - 1):
        deg = [0] * n
        for e in edges:
            for v in e:
                deg[v] += 1
        low = [v for v in range(n) if deg[v] == 1]
        k = int(rng.integers(0, min(2, len(low)) + 1))
        if rng.random() < 0.2:
            k = int(rng.integers(0, min(r, n) + 1))
            old = [int(v) for v in rng.choice(n, size=k, replace=False)] if k else []
        else:
            old = [int(v) for v in rng.choice(low, size=k, replace=False)] if k else []
        fresh = r - len(old)
        if n + fresh > n_max:
            break
        e = tuple(sorted(old + list(range(n, n + fresh))))
        n += fresh
        if e not in edges:
            edges.append(e)
    return Hypergraph(n, r, edges)


def drop_isolated(H: Hypergraph) -> Hypergraph:
    G, _ = H.induced(v for v in range(H.n) if H.degrees[v] > 0)
    return G


def sparse_girth_sample(rng: np.random.Generator, r: int, tau: int, beta: Fraction, n_max: int = 16) -> Hypergraph:
    """Grow a hereditarily beta-sparse hypergraph of girth at least ``tau``, no isolated vertices."""
    n = int(rng.integers(r + 1, n_max + 1))
    edges: list[tuple[int, ...]] = []
    for _ in range(int(rng.integers(1, 2 * n + 1))):
        if edges and rng.random() < 0.6:
            deg = [0] * n
            for e in edges:
                for v in e:
                    deg[v] += 1
            used = [v for v in range(n) if deg[v] > 0]
            free = [v for v in range(n) if deg[v] == 0]
            k = int(rng.integers(1, min(2, len(used)) + 1))
            if len(free) < r - k:
                continue
            e = tuple(sorted([int(v) for v in rng.choice(used, size=k, replace=False)]
                             + [int(v) for v in rng.choice(free, size=r - k, replace=False)]))
        else:
            e = tuple(sorted(int(v) for v in rng.choice(n, size=r, replace=False)))
        if e in edges:
            continue
        trial = Hypergraph(n, r, edges + [e])
        if girth(trial) >= tau and is_hereditarily_beta_sparse(trial, beta):
            edges.append(e)
    if rng.random() < 0.15 and n >= tau * (r - 1) and tau >= 2:
        # occasionally a bare cycle
        length = max(tau, 2 if r > 2 else 3)
        n = length * (r - 1)
        edges = []
        for i in range(length):
            a, b = i * (r - 1), ((i + 1) * (r - 1)) % n
            edges.append(tuple(sorted({a, b, *range(a + 1, a + r - 1)})))
    if not edges:
        edges = [tuple(range(r))]
    return drop_isolated(Hypergraph(n, r, edges))


def beta_in_range(rng: np.random.Generator, r: int, tau: int) -> Fraction:
    k = int(rng.integers(1, 100))
    return 1 + Fraction(k, 100) * Fraction(1, 10 * r * tau)


def random_structure(rng: np.random.Generator, n: int, signature, density: float):
    rels = []
    for name, arity in signature:
        tuples = [t for t in itertools.product(range(n), repeat=arity) if rng.random() < density]
        rels.append((name, arity, tuples))
    return RelationalStructure.build(n, rels)
