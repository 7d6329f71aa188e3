"""Slow, obviously-correct reference implementations used to cross-check the package."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np

from pcsp_width.hypergraph import Hypergraph
from pcsp_width.structures import RelationalStructure


# ---------------------------------------------------------------- homomorphisms


def brute_hom_exists(X: RelationalStructure, A: RelationalStructure) -> bool:
    for h in itertools.product(range(A.domain_size), repeat=X.domain_size):
        if all(
            tuple(h[v] for v in t) in set(ra)
            for rx, ra in zip(X.relations, A.relations)
            for t in rx
        ):
            return True
    return False


def partial_homs(X: RelationalStructure, A: RelationalStructure, size: int):
    rels = [(rx, set(ra)) for rx, ra in zip(X.relations, A.relations)]
    for dom in itertools.combinations(range(X.domain_size), size):
        for vals in itertools.product(range(A.domain_size), repeat=size):
            f = dict(zip(dom, vals))
            if all(
                tuple(f[v] for v in t) in ra
                for rx, ra in rels
                for t in rx
                if all(v in f for v in t)
            ):
                yield frozenset(f.items())


def naive_lc(X: RelationalStructure, A: RelationalStructure, kappa: int) -> set[frozenset]:
    """Greatest fixpoint of restriction closure and extension below ``kappa``."""
    kappa = min(kappa, X.domain_size)
    fam = {f for s in range(kappa + 1) for f in partial_homs(X, A, s)}
    changed = True
    while changed:
        changed = False
        for f in list(fam):
            if f not in fam:
                continue
            ok = all(f - {p} in fam for p in f)
            if ok and len(f) < kappa:
                dom = {v for v, _ in f}
                for x in range(X.domain_size):
                    if x in dom:
                        continue
                    if not any(f | {(x, a)} in fam for a in range(A.domain_size)):
                        ok = False
                        break
            if not ok:
                fam.discard(f)
                changed = True
    return fam


# ---------------------------------------------------------------- matrices


def powers_reach_full(M: np.ndarray) -> tuple[bool, int | None]:
    """Iterate ``M^t`` until a repeat; report whether (and first when) ``J`` appears."""
    n = M.shape[0]
    cur = M.astype(bool)
    seen = set()
    t = 1
    while True:
        if cur.all():
            return True, t
        key = cur.tobytes()
        if key in seen:
            return False, None
        seen.add(key)
        cur = (cur.astype(np.int64) @ M.astype(np.int64)) > 0
        t += 1
        if t > 2 ** (n * n) + 2:
            raise AssertionError("unreachable")


def mixing_time_by_patterns(A: RelationalStructure, max_tau: int) -> int | None:
    """Least ``tau`` for which every ``tau``-pattern joins every pair, by full enumeration."""
    r, n = A.arity, A.domain_size
    rows = list(itertools.permutations(range(r), 2))
    slices = {}
    for p, q in rows:
        m = np.zeros((n, n), dtype=np.int64)
        for t in A.tuples:
            m[t[p], t[q]] = 1
        slices[(p, q)] = m
    for tau in range(1, max_tau + 1):
        if all(
            np.linalg.multi_dot([np.eye(n, dtype=np.int64)] + [slices[x] for x in pat] + [np.eye(n, dtype=np.int64)]).all()
            for pat in itertools.product(rows, repeat=tau)
        ):
            return tau
    return None


# ---------------------------------------------------------------- hypergraphs


def _shares(e, f) -> bool:
    return bool(set(e) & set(f))


def _is_fiber(edges) -> bool:
    if len(edges) == 1:
        return True
    return any(all(_shares(p[i], p[i + 1]) for i in range(len(p) - 1)) for p in itertools.permutations(edges))


def brute_tau_fibrosity(H: Hypergraph, tau: int) -> int:
    degs = [0] * H.n
    for e in H.edges:
        for v in e:
            degs[v] += 1
    lk = [e for e in H.edges if sorted(degs[v] for v in e)[-2:] == [2, 2] and sum(degs[v] == 1 for v in e) == H.r - 2]
    fibers = [frozenset(c) for c in itertools.combinations(lk, tau) if _is_fiber(c)]

    def best(i: int, used: frozenset) -> int:
        if i == len(fibers):
            return 0
        skip = best(i + 1, used)
        if fibers[i] & used:
            return skip
        return max(skip, 1 + best(i + 1, used | fibers[i]))

    return best(0, frozenset())


def brute_hereditarily_sparse(H: Hypergraph, beta: Fraction) -> bool:
    for k in range(1, H.m + 1):
        for sub in itertools.combinations(H.edges, k):
            nv = len(set().union(*map(set, sub)))
            if not Fraction(k) < beta / (H.r - 1) * nv:
                return False
    return True


def brute_girth(H: Hypergraph) -> int | float:
    """Shortest Berge cycle by extending vertex/edge sequences."""
    best = math.inf
    inc = [[i for i, e in enumerate(H.edges) if v in e] for v in range(H.n)]

    def rec(start, v, used_v, used_e, length):
        nonlocal best
        if length >= best:
            return
        for i in inc[v]:
            if i in used_e:
                continue
            for w in H.edges[i]:
                if w == v:
                    continue
                if w == start and length + 1 >= 2:
                    best = min(best, length + 1)
                elif w not in used_v and w > start:
                    rec(start, w, used_v | {w}, used_e | {i}, length + 1)

    for s in range(H.n):
        rec(s, s, {s}, frozenset(), 0)
    return best


# ---------------------------------------------------------------- probability bound


def direct_failure_sum(r: int, ell, n: int, mu, nu, dps: int = 80):
    """``sum_{i=1}^{floor(mu n)} ((n/i)^(1-(r-1)nu) theta)^i`` by plain powers."""
    with mpmath.workdps(dps):
        ell, mu, nu = (mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator for x in (ell, mu, nu))
        theta = ell**nu * mpmath.exp(1 + (r + 1) * nu) * mpmath.mpf(r) ** (-r * nu) * nu ** (-nu)
        total = mpmath.mpf(0)
        for i in range(1, int(mpmath.floor(mu * n)) + 1):
            total += ((mpmath.mpf(n) / i) ** (1 - (r - 1) * nu) * theta) ** i
        return total, theta


def is_cycle_hypergraph(G: Hypergraph) -> bool:
    """Connected, at least two edges, no isolated vertex, every edge a link of ``G``."""
    if G.m < 2 or any(d == 0 for d in G.degrees):
        return False
    for e in G.edges:
        degs = sorted(G.degrees[v] for v in e)
        if degs[-2:] != [2, 2] or any(d != 1 for d in degs[:-2]):
            return False
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, f in enumerate(G.edges):
            if j not in seen and set(f) & set(G.edges[i]):
                seen.add(j)
                stack.append(j)
    return len(seen) == G.m
