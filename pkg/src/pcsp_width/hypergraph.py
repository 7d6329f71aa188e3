"""Uniform hypergraphs: fibers, pendency, Berge girth, sparsity and colourings."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .exact import as_fraction, fraction_str

BRUTE_FORCE_EDGE_LIMIT = 20


class HypergraphError(ValueError):
    pass


class HypergraphTooLarge(RuntimeError):
    """An exact search exceeded its work budget."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]] = ()):
        canon = []
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != r or len(set(t)) != r:
                raise HypergraphError(f"edge {tuple(e)} is not a set of {r} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise HypergraphError(f"edge {tuple(e)} is out of range [0, {n})")
            canon.append(t)
        if len(set(canon)) != len(canon):
            raise HypergraphError("duplicate edges")
        if r < 2:
            raise HypergraphError("uniformity must be at least 2")
        if n < 0:
            raise HypergraphError("vertex count must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.incidence)

    @cached_property
    def edge_index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 0]

    def induced(self, vertices: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
        """Induced subhypergraph, re-indexed; also returns the kept vertices."""
        keep = tuple(sorted(set(vertices)))
        new = {v: i for i, v in enumerate(keep)}
        edges = [tuple(new[v] for v in e) for e in self.edges if all(v in new for v in e)]
        return Hypergraph(len(keep), self.r, edges), keep

    def edge_subhypergraph(self, edge_ids: Iterable[int]) -> Hypergraph:
        """Keep all vertices and only the given edges."""
        return Hypergraph(self.n, self.r, [self.edges[i] for i in edge_ids])

    def disjoint_union(self, other: Hypergraph) -> Hypergraph:
        if other.r != self.r:
            raise HypergraphError("uniformities differ")
        shifted = [tuple(v + self.n for v in e) for e in other.edges]
        return Hypergraph(self.n + other.n, self.r, list(self.edges) + shifted)

    def adjacent_edges(self, i: int) -> set[int]:
        out = set()
        for v in self.edges[i]:
            out.update(self.incidence[v])
        out.discard(i)
        return out


# ---------------------------------------------------------------- links, fibers


def _is_link(H: Hypergraph, e: Sequence[int]) -> bool:
    degs = sorted(H.degrees[v] for v in e)
    return degs[-2:] == [2, 2] and all(d == 1 for d in degs[:-2])


def links(H: Hypergraph) -> list[tuple[int, ...]]:
    """Edges with exactly two degree-2 vertices, all others of degree 1."""
    return [e for e in H.edges if _is_link(H, e)]


def pendent_edges(H: Hypergraph) -> list[tuple[int, ...]]:
    """Edges with at most one vertex of degree at least 2."""
    return [e for e in H.edges if sum(H.degrees[v] >= 2 for v in e) <= 1]


@dataclass(frozen=True)
class Fiber:
    """A chain of links ``edges[0..k-1]`` threaded through ``path[0..k]``.

    ``path[i]`` and ``path[i+1]`` are the two degree-2 vertices of
    ``edges[i]``; for a degenerate fiber (a whole cycle) ``path[-1] == path[0]``.
    """

    edges: tuple[tuple[int, ...], ...]
    path: tuple[int, ...]
    degenerate: bool

    def __len__(self):
        return len(self.edges)

    @property
    def vertices(self) -> set[int]:
        return set(itertools.chain.from_iterable(self.edges))

    def chunk(self, start: int, size: int) -> Fiber:
        """The sub-fiber of ``size`` consecutive links starting at ``start``."""
        if self.degenerate and size == len(self.edges):
            return self.rotated(self.path[start])
        edges = self.edges[start : start + size]
        return Fiber(edges, self.path[start : start + size + 1], False)

    def rotated(self, v: int) -> Fiber:
        """Re-root a degenerate fiber so that its path starts (and ends) at ``v``."""
        if not self.degenerate:
            raise HypergraphError("only degenerate fibers can be rotated")
        k = self.path.index(v)
        edges = self.edges[k:] + self.edges[:k]
        core = self.path[:-1]
        path = core[k:] + core[:k]
        return Fiber(edges, path + (path[0],), True)

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "path": list(self.path), "degenerate": self.degenerate}


@dataclass(frozen=True)
class FiberDecomposition:
    links: tuple[tuple[int, ...], ...]
    maximal_fibers: tuple[Fiber, ...]
    pendent_edges: tuple[tuple[int, ...], ...]

    @property
    def fbr_max(self) -> int:
        return len(self.maximal_fibers)


def fiber_decomposition(H: Hypergraph) -> FiberDecomposition:
    """Group the links into maximal fibers by following shared degree-2 vertices."""
    link_ids = [i for i, e in enumerate(H.edges) if _is_link(H, e)]
    is_link = set(link_ids)

    def ports(i: int) -> list[int]:
        return [v for v in H.edges[i] if H.degrees[v] == 2]

    def across(i: int, v: int) -> int:
        a, b = H.incidence[v]
        return b if a == i else a

    def open_port(i: int) -> int | None:
        for v in ports(i):
            if across(i, v) not in is_link:
                return v
        return None

    seen: set[int] = set()
    fibers: list[Fiber] = []

    def walk(start: int, w0: int, closed: bool) -> Fiber:
        edges, path = [], [w0]
        i, w = start, w0
        while True:
            seen.add(i)
            edges.append(H.edges[i])
            p = ports(i)
            nxt_v = p[1] if p[0] == w else p[0]
            path.append(nxt_v)
            j = across(i, nxt_v)
            if j not in is_link or j in seen:
                break
            i, w = j, nxt_v
        return Fiber(tuple(edges), tuple(path), closed)

    # open chains, started from their least-index end link
    ends = [i for i in link_ids if open_port(i) is not None]
    for i in ends:
        if i in seen:
            continue
        fibers.append(walk(i, open_port(i), False))
    # what remains are closed chains (cycles)
    for i in link_ids:
        if i in seen:
            continue
        fibers.append(walk(i, min(ports(i)), True))
    fibers.sort(key=lambda f: H.edge_index[min(f.edges)])
    return FiberDecomposition(
        tuple(H.edges[i] for i in link_ids), tuple(fibers), tuple(pendent_edges(H))
    )


def tau_fibrosity(H: Hypergraph, tau: int) -> int:
    """Maximum number of mutually disjoint ``tau``-fibers."""
    if tau < 1:
        raise HypergraphError("tau must be positive")
    return sum(len(f) // tau for f in fiber_decomposition(H).maximal_fibers)


def tau_fibers(H: Hypergraph, tau: int) -> list[Fiber]:
    """A maximum family of disjoint ``tau``-fibers (consecutive chunks of maximal fibers)."""
    out = []
    for f in fiber_decomposition(H).maximal_fibers:
        for k in range(len(f) // tau):
            out.append(f.chunk(k * tau, tau))
    return out


@dataclass(frozen=True)
class Joint:
    vertices: tuple[int, ...]
    owner: Fiber | tuple[int, ...]


def joint_of(H: Hypergraph, owner: Fiber | Sequence[int], seed: int = 0) -> Joint:
    """The joint of a fiber or pendent edge; ties go to the least vertex."""
    # seed is reserved; the choice is deterministic
    if isinstance(owner, Fiber):
        if owner.degenerate:
            v = min(owner.path[:-1])
            return Joint((v,), owner.rotated(v))
        return Joint((owner.path[0], owner.path[-1]), owner)
    e = tuple(sorted(owner))
    if e not in H.edge_index:
        raise HypergraphError(f"{e} is not an edge")
    best = max(H.degrees[v] for v in e)
    return Joint((min(v for v in e if H.degrees[v] == best),), e)


# ---------------------------------------------------------------- cycles, girth


def _has_double_intersection(H: Hypergraph) -> bool:
    seen_pairs: set[tuple[int, int]] = set()
    for e in H.edges:
        for pair in itertools.combinations(e, 2):
            if pair in seen_pairs:
                return True
            seen_pairs.add(pair)
    return False


def girth(H: Hypergraph) -> int | float:
    """Length of the shortest Berge cycle (``math.inf`` if there is none).

    Computed as half the girth of the vertex/edge incidence graph.
    """
    if _has_double_intersection(H):
        return 2
    # incidence graph: vertices 0..n-1, edges n..n+m-1
    n = H.n
    adj: list[list[int]] = [list() for _ in range(n + H.m)]
    for i, e in enumerate(H.edges):
        for v in e:
            adj[v].append(n + i)
            adj[n + i].append(v)
    best = math.inf
    for s in range(n + H.m):
        if not adj[s]:
            continue
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best if best == math.inf else best // 2


def berge_cycles(H: Hypergraph, max_length: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Enumerate Berge cycles of length ``2..max_length``.

    Yields ``(vertices, edge_ids)`` with each cycle reported once: rooted at
    its least vertex and with the first edge id smaller than the last.
    """
    inc = H.incidence
    for root in range(H.n):
        vs = [root]
        es: list[int] = []
        used_e: set[int] = set()
        used_v = {root}

        def extend():
            cur = vs[-1]
            for ei in inc[cur]:
                if ei in used_e:
                    continue
                for w in H.edges[ei]:
                    if w == cur:
                        continue
                    if w == root and len(es) >= 1 and es[0] < ei:
                        yield tuple(vs), tuple(es + [ei])
                        continue
                    if w > root and w not in used_v and len(es) + 1 < max_length:
                        vs.append(w)
                        es.append(ei)
                        used_v.add(w)
                        used_e.add(ei)
                        yield from extend()
                        vs.pop()
                        es.pop()
                        used_v.discard(w)
                        used_e.discard(ei)

        yield from extend()


# ---------------------------------------------------------------- degree reciprocals


def sdr(H: Hypergraph, e: Sequence[int]) -> Fraction:
    """Sum of the reciprocal degrees of the vertices of ``e``."""
    e = tuple(sorted(e))
    if e not in H.edge_index:
        raise HypergraphError(f"{e} is not an edge")
    return sum((Fraction(1, H.degrees[v]) for v in e), Fraction(0))


def sdr_total(H: Hypergraph) -> Fraction:
    return sum((sdr(H, e) for e in H.edges), Fraction(0))


# ---------------------------------------------------------------- sparsity


def _check_beta(beta) -> Fraction:
    beta = as_fraction(beta, "beta")
    if beta <= 1:
        raise HypergraphError("beta must exceed 1")
    return beta


def _ratio(H: Hypergraph, beta: Fraction) -> Fraction:
    return beta / (H.r - 1)


def is_beta_sparse(H: Hypergraph, beta) -> bool:
    """``m < beta/(r-1) * n``, decided exactly."""
    beta = _check_beta(beta)
    return H.m < _ratio(H, beta) * H.n


def _violates(k_edges: int, n_vertices: int, c: Fraction) -> bool:
    return k_edges >= c * n_vertices


def densest_excess_witness(H: Hypergraph, c: Fraction) -> tuple[int, ...] | None:
    """Edge ids of some nonempty ``E'`` with ``|E'| >= c |union E'|``, or ``None``.

    Maximum-closure / min-cut formulation with integer capacities; each edge
    carries a tie-breaking bonus so that equality counts as a violation.
    """
    if H.m == 0:
        return None
    c = Fraction(c)
    p, q = c.numerator, c.denominator
    scale = H.m + 1
    g = nx.DiGraph()
    g.add_node("s")
    g.add_node("t")
    used = set()
    for i, e in enumerate(H.edges):
        g.add_edge("s", ("e", i), capacity=q * scale + 1)
        for v in e:
            g.add_edge(("e", i), ("v", v))  # no capacity attribute: infinite
            used.add(v)
    for v in used:
        g.add_edge(("v", v), "t", capacity=p * scale)
    cut, (source_side, _) = nx.minimum_cut(g, "s", "t")
    total = H.m * (q * scale + 1)
    if total - cut <= 0:
        return None
    chosen = tuple(sorted(node[1] for node in source_side if isinstance(node, tuple) and node[0] == "e"))
    return chosen


def is_hereditarily_beta_sparse(H: Hypergraph, beta) -> bool:
    """Every subhypergraph is beta-sparse (exact, via min-cut)."""
    beta = _check_beta(beta)
    return densest_excess_witness(H, _ratio(H, beta)) is None


def _union_size(H: Hypergraph, ids: Iterable[int]) -> int:
    return len(set(itertools.chain.from_iterable(H.edges[i] for i in ids)))


def brute_force_violation(H: Hypergraph, c: Fraction, max_edges: int | float, max_vertices: int | float = math.inf):
    """Exhaustive search over edge subsets with ``1 <= |E'| <= max_edges``.

    Returns a violating subset ``|E'| >= c |union E'|`` with
    ``|union E'| <= max_vertices``, or ``None``.
    """
    masks = []
    for e in H.edges:
        mk = 0
        for v in e:
            mk |= 1 << v
        masks.append(mk)
    limit = min(max_edges, H.m)
    chosen: list[int] = []

    def rec(start: int, mask: int):
        for i in range(start, H.m):
            chosen.append(i)
            nm = mask | masks[i]
            nv = nm.bit_count() if hasattr(nm, "bit_count") else bin(nm).count("1")
            if nv > max_vertices:
                chosen.pop()
                continue
            if _violates(len(chosen), nv, c):
                return tuple(chosen)
            if len(chosen) < limit:
                hit = rec(i + 1, nm)
                if hit:
                    return hit
            chosen.pop()
        return None

    if limit < 1:
        return None
    return rec(0, 0)


def connected_edge_subsets(H: Hypergraph, max_size: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Each connected edge subset of size ``<= max_size`` exactly once (ESU order).

    Raises :class:`HypergraphTooLarge` after ``budget`` subsets.
    """
    count = 0
    nbrs = [H.adjacent_edges(i) for i in range(H.m)]

    def extend(sub: list[int], ext: set[int], root: int, closed: set[int]):
        nonlocal count
        count += 1
        if count > budget:
            raise HypergraphTooLarge(f"more than {budget} connected edge subsets")
        yield tuple(sub)
        if len(sub) == max_size:
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            new_ext = ext | {u for u in nbrs[w] if u > root and u not in closed}
            yield from extend(sub + [w], new_ext, root, closed | nbrs[w] | {w})

    for root in range(H.m):
        yield from extend([root], {u for u in nbrs[root] if u > root}, root, nbrs[root] | {root})


@dataclass(frozen=True)
class SparsityVerdict:
    value: bool | None
    mode: str  # exact | implied | unknown
    witness: tuple[tuple[int, ...], ...] | None = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "mode": self.mode,
            "witness": None if self.witness is None else [list(e) for e in self.witness],
        }


def is_threshold_sparse(H: Hypergraph, gamma, beta, enumeration_budget: int = 200_000) -> SparsityVerdict:
    """Every subhypergraph with at most ``gamma`` edges is beta-sparse.

    Exact by exhaustive search when ``m <= 20``. Otherwise hereditary
    sparsity (min-cut) implies the answer, a small min-cut witness refutes
    it, and a budgeted enumeration of connected edge subsets (minimal
    violators are connected) settles the remaining cases when it can.
    """
    gamma = as_fraction(gamma, "gamma")
    beta = _check_beta(beta)
    c = _ratio(H, beta)
    kmax = math.floor(gamma)
    edges_of = lambda ids: tuple(H.edges[i] for i in ids)  # noqa: E731
    if kmax < 1 or H.m == 0:
        return SparsityVerdict(True, "exact")
    if H.m <= BRUTE_FORCE_EDGE_LIMIT:
        hit = brute_force_violation(H, c, kmax)
        return SparsityVerdict(hit is None, "exact", None if hit is None else edges_of(hit))
    witness = densest_excess_witness(H, c)
    if witness is None:
        return SparsityVerdict(True, "implied")
    if len(witness) <= kmax:
        return SparsityVerdict(False, "exact", edges_of(witness))
    try:
        for sub in connected_edge_subsets(H, kmax, enumeration_budget):
            if _violates(len(sub), _union_size(H, sub), c):
                return SparsityVerdict(False, "exact", edges_of(sub))
    except HypergraphTooLarge:
        return SparsityVerdict(None, "unknown")
    return SparsityVerdict(True, "exact")


# ---------------------------------------------------------------- colourings


def _colour_rest(H: Hypergraph, colouring: list[int], k: int, order: Sequence[int]) -> None:
    # extend to peeled vertices in reverse peeling order
    for v in order:
        banned = set()
        for ei in H.incidence[v]:
            others = [colouring[u] for u in H.edges[ei] if u != v]
            if all(c >= 0 for c in others) and len(set(others)) == 1:
                banned.add(others[0])
        colouring[v] = min(c for c in range(k) if c not in banned)


def _peel_order(H: Hypergraph, k: int) -> tuple[list[int], list[int]]:
    alive_e = [True] * H.m
    deg = list(H.degrees)
    alive_v = [True] * H.n
    removed: list[int] = []
    stack = [v for v in range(H.n) if deg[v] < k]
    while stack:
        v = stack.pop()
        if not alive_v[v]:
            continue
        alive_v[v] = False
        removed.append(v)
        for ei in H.incidence[v]:
            if alive_e[ei]:
                alive_e[ei] = False
                for u in H.edges[ei]:
                    if alive_v[u]:
                        deg[u] -= 1
                        if deg[u] < k:
                            stack.append(u)
    core = [v for v in range(H.n) if alive_v[v]]
    return core, removed


def find_colouring(H: Hypergraph, k: int, node_budget: int = 5_000_000) -> list[int] | None:
    """A weak ``k``-colouring (no monochromatic edge), or ``None`` if none exists.

    Exact: k-core peeling followed by DSATUR-style backtracking with
    colour-symmetry breaking on the core.
    """
    if k < 1:
        return None if H.n > 0 else []
    if H.m == 0:
        return [0] * H.n
    if k == 1:
        return None
    core, removed = _peel_order(H, k)
    colouring = [-1] * H.n
    if core:
        sub, keep = H.induced(core)
        found = _backtrack_colouring(sub, k, node_budget)
        if found is None:
            return None
        for i, v in enumerate(keep):
            colouring[v] = found[i]
    _colour_rest(H, colouring, k, list(reversed(removed)))
    return colouring


def _backtrack_colouring(H: Hypergraph, k: int, node_budget: int) -> list[int] | None:
    n = H.n
    colour = [-1] * n
    edges = H.edges
    inc = H.incidence
    nodes = 0

    def banned(v: int) -> set[int]:
        out = set()
        for ei in inc[v]:
            c0 = -2
            ok = True
            for u in edges[ei]:
                if u == v:
                    continue
                cu = colour[u]
                if cu < 0 or (c0 != -2 and cu != c0):
                    ok = False
                    break
                c0 = cu
            if ok:
                out.add(c0)
        return out

    def pick() -> tuple[int, set[int]] | None:
        best, best_key, best_ban = -1, None, None
        for v in range(n):
            if colour[v] >= 0:
                continue
            b = banned(v)
            key = (len(b), H.degrees[v])
            if best_key is None or key > best_key:
                best, best_key, best_ban = v, key, b
        return None if best < 0 else (best, best_ban)

    def rec(used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise HypergraphTooLarge(f"colouring search exceeded {node_budget} nodes")
        nxt = pick()
        if nxt is None:
            return True
        v, ban = nxt
        for c in range(min(used + 1, k)):
            if c in ban:
                continue
            colour[v] = c
            if rec(max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    return colour if rec(0) else None


def chromatic_number(H: Hypergraph, node_budget: int = 5_000_000) -> int:
    """Exact weak chromatic number (raises :class:`HypergraphTooLarge` past the budget)."""
    if H.n == 0:
        return 0
    if H.m == 0:
        return 1
    k = 2
    while find_colouring(H, k, node_budget) is None:
        k += 1
    return k


def independence_number(H: Hypergraph, node_budget: int = 5_000_000) -> int:
    """Largest vertex set containing no whole edge (exact branch and bound)."""
    best = 0
    nodes = 0
    inc = H.incidence

    def addable(chosen: set[int], v: int) -> bool:
        for ei in inc[v]:
            if all(u == v or u in chosen for u in H.edges[ei]):
                return False
        return True

    def rec(chosen: set[int], cands: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise HypergraphTooLarge(f"independence search exceeded {node_budget} nodes")
        if len(chosen) + len(cands) <= best:
            return
        if not cands:
            best = len(chosen)
            return
        # branch on the candidate of largest remaining degree
        v = max(cands, key=lambda u: (H.degrees[u], -u))
        rest = [u for u in cands if u != v]
        chosen.add(v)
        rec(chosen, [u for u in rest if addable(chosen, u)])
        chosen.discard(v)
        rec(chosen, rest)

    rec(set(), list(range(H.n)))
    return best


# ---------------------------------------------------------------- report


@dataclass(frozen=True)
class FibrosityReport:
    tau: int
    n: int
    m: int
    fbr_tau: int
    fbr_max: int
    pendency: int
    link_count: int
    girth: int | float
    sdr_total: Fraction
    sdr_identity: bool
    sparsity: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "n": self.n,
            "m": self.m,
            "fbr_tau": self.fbr_tau,
            "fbr_max": self.fbr_max,
            "pendency": self.pendency,
            "link_count": self.link_count,
            "girth": None if self.girth == math.inf else self.girth,
            "sdr_total": fraction_str(self.sdr_total),
            "sdr_identity": self.sdr_identity,
            "sparsity": self.sparsity,
        }


def fibrosity_report(H: Hypergraph, tau: int, beta=None, gamma=None) -> FibrosityReport:
    dec = fiber_decomposition(H)
    total = sdr_total(H)
    sparsity: dict = {}
    if beta is not None:
        beta = _check_beta(beta)
        sparsity["beta"] = fraction_str(beta)
        sparsity["beta_sparse"] = is_beta_sparse(H, beta)
        sparsity["hereditarily_beta_sparse"] = is_hereditarily_beta_sparse(H, beta)
        if gamma is not None:
            gamma = as_fraction(gamma, "gamma")
            sparsity["gamma"] = fraction_str(gamma)
            sparsity["threshold_sparse"] = is_threshold_sparse(H, gamma, beta).to_dict()
    return FibrosityReport(
        tau=tau,
        n=H.n,
        m=H.m,
        fbr_tau=sum(len(f) // tau for f in dec.maximal_fibers),
        fbr_max=dec.fbr_max,
        pendency=len(dec.pendent_edges),
        link_count=len(dec.links),
        girth=girth(H),
        sdr_total=total,
        sdr_identity=(not H.isolated_vertices()) and total == H.n,
        sparsity=sparsity,
    )
