"""Finite relational structures, homomorphism search and standard constructions.

Vertices are always the dense integers ``0..n-1``. Relations are stored as
sorted tuples of tuples so that equal structures compare (and hash) equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .hypergraph import Hypergraph

MONIC_SYMBOL = "R"


class StructureError(ValueError):
    """Raised for malformed structures or incompatible inputs."""


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.symbols:
            raise StructureError("signature must contain at least one symbol")
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate relation symbols in {names}")
        for name, arity in self.symbols:
            if not isinstance(arity, int) or arity < 1:
                raise StructureError(f"symbol {name!r} has invalid arity {arity!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(arity for _, arity in self.symbols)

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class RelationalStructure:
    signature: Signature
    domain_size: int
    relations: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.domain_size < 1:
            raise StructureError("domain must be nonempty")
        if len(self.relations) != len(self.signature):
            raise StructureError("one relation per signature symbol is required")
        for (name, arity), rel in zip(self.signature.symbols, self.relations):
            if len(set(rel)) != len(rel):
                raise StructureError(f"relation {name!r} has duplicate tuples")
            for t in rel:
                if len(t) != arity:
                    raise StructureError(f"tuple {t} in {name!r} does not have arity {arity}")
                for v in t:
                    if not 0 <= v < self.domain_size:
                        raise StructureError(f"tuple {t} in {name!r} is out of range [0, {self.domain_size})")

    @classmethod
    def build(cls, domain_size: int, relations: Sequence[tuple[str, int, Iterable[Sequence[int]]]]):
        """Build a structure from ``(name, arity, tuples)`` triples."""
        sig = Signature(tuple((name, arity) for name, arity, _ in relations))
        rels = []
        for _, _, tuples in relations:
            rels.append(tuple(sorted({tuple(int(v) for v in t) for t in tuples})))
        return cls(sig, domain_size, tuple(rels))

    def relation(self, name: str) -> tuple[tuple[int, ...], ...]:
        return self.relations[self.signature.names.index(name)]

    @property
    def is_monic(self) -> bool:
        return len(self.signature) == 1

    @property
    def arity(self) -> int:
        """Arity of the unique symbol of a monic structure."""
        if not self.is_monic:
            raise StructureError("arity is only defined for monic structures")
        return self.signature.arities[0]

    @property
    def tuples(self) -> tuple[tuple[int, ...], ...]:
        """The unique relation of a monic structure."""
        if not self.is_monic:
            raise StructureError("structure is not monic")
        return self.relations[0]

    @property
    def tuple_count(self) -> int:
        return sum(len(rel) for rel in self.relations)

    def with_signature(self, signature: Signature) -> RelationalStructure:
        """Rename symbols; arities must match position by position."""
        if signature.arities != self.signature.arities:
            raise StructureError("renaming must preserve arities")
        return RelationalStructure(signature, self.domain_size, self.relations)


def _require_same_signature(X: RelationalStructure, A: RelationalStructure):
    if X.signature != A.signature:
        raise StructureError(f"signature mismatch: {X.signature.symbols} vs {A.signature.symbols}")


def is_homomorphism(X: RelationalStructure, A: RelationalStructure, h: Mapping[int, int] | Sequence[int]) -> bool:
    """Check that ``h`` (total on ``X``) maps every tuple of ``X`` into ``A``."""
    _require_same_signature(X, A)
    for rel_x, rel_a in zip(X.relations, A.relations):
        target = set(rel_a)
        for t in rel_x:
            if tuple(h[v] for v in t) not in target:
                return False
    return True


def is_partial_homomorphism(X: RelationalStructure, A: RelationalStructure, f: Mapping[int, int]) -> bool:
    """``f`` is a homomorphism from the substructure of ``X`` induced by its domain."""
    for rel_x, rel_a in zip(X.relations, A.relations):
        target = set(rel_a)
        for t in rel_x:
            if all(v in f for v in t) and tuple(f[v] for v in t) not in target:
                return False
    return True


class _TemplateIndex:
    """Per-relation lookup of template tuples by (position, value)."""

    def __init__(self, A: RelationalStructure):
        self.tuples = A.relations
        self.by_pos = []
        for rel, arity in zip(A.relations, A.signature.arities):
            idx = [[set() for _ in range(A.domain_size)] for _ in range(arity)]
            for k, t in enumerate(rel):
                for i, v in enumerate(t):
                    idx[i][v].add(k)
            self.by_pos.append(idx)

    def matching(self, rel_id: int, t: tuple[int, ...], assignment: Sequence[int]):
        """Indices of template tuples compatible with the assigned entries of ``t``."""
        cands = None
        idx = self.by_pos[rel_id]
        for i, x in enumerate(t):
            a = assignment[x]
            if a >= 0:
                s = idx[i][a]
                cands = s if cands is None else cands & s
                if not cands:
                    return cands
        if cands is None:
            return range(len(self.tuples[rel_id]))
        return cands


def find_homomorphism(
    X: RelationalStructure,
    A: RelationalStructure,
    fixed: Mapping[int, int] | None = None,
    rng: np.random.Generator | None = None,
    node_budget: int | None = None,
) -> tuple[int, ...] | None:
    """Backtracking search for a homomorphism ``X -> A``.

    Variables are tried by descending number of tuple occurrences and values
    in ascending order, with forward checking over every tuple touching the
    newly assigned variable. ``fixed`` pre-assigns some variables (the result
    then agrees with it); ``rng`` shuffles value order for random sampling.
    Returns ``h`` as a tuple indexed by the vertices of ``X``, or ``None``.
    """
    _require_same_signature(X, A)
    n, na = X.domain_size, A.domain_size
    index = _TemplateIndex(A)

    occurrences: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n)]
    for rel_id, rel in enumerate(X.relations):
        for t in rel:
            for v in set(t):
                occurrences[v].append((rel_id, t))
    order = sorted(range(n), key=lambda v: (-len(occurrences[v]), v))

    assignment = [-1] * n
    domains: list[set[int]] = [set(range(na)) for _ in range(n)]
    if fixed:
        for v, a in fixed.items():
            if not 0 <= a < na:
                raise StructureError(f"fixed value {a} for vertex {v} is outside the template domain")
            domains[v] = {a}

    nodes = 0

    def propagate(v: int) -> list[tuple[int, set[int]]] | None:
        # Narrow the domains of unassigned neighbours; returns the undo log.
        undo = []
        for rel_id, t in occurrences[v]:
            cands = index.matching(rel_id, t, assignment)
            if not cands:
                for u, old in reversed(undo):
                    domains[u] = old
                return None
            rel_a = index.tuples[rel_id]
            allowed: dict[int, set[int]] = {}
            for i, x in enumerate(t):
                if assignment[x] < 0:
                    allowed.setdefault(x, set())
            if not allowed:
                continue
            for k in cands:
                a = rel_a[k]
                # repeated unassigned variables inside t must agree
                seen: dict[int, int] = {}
                ok = True
                for i, x in enumerate(t):
                    if assignment[x] < 0:
                        if seen.setdefault(x, a[i]) != a[i]:
                            ok = False
                            break
                if ok:
                    for x, val in seen.items():
                        allowed[x].add(val)
            for x, vals in allowed.items():
                new = domains[x] & vals
                if new != domains[x]:
                    undo.append((x, domains[x]))
                    domains[x] = new
                    if not new:
                        for u, old in reversed(undo):
                            domains[u] = old
                        return None
        return undo

    def solve(depth: int) -> bool:
        nonlocal nodes
        if depth == n:
            return True
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(f"homomorphism search exceeded {node_budget} nodes")
        v = order[depth]
        values = sorted(domains[v])
        if rng is not None:
            values = list(rng.permutation(values))
        saved = domains[v]
        for a in values:
            assignment[v] = int(a)
            domains[v] = {int(a)}
            undo = propagate(v)
            if undo is not None:
                if solve(depth + 1):
                    return True
                for u, old in reversed(undo):
                    domains[u] = old
            assignment[v] = -1
        domains[v] = saved
        return False

    # initial propagation for pre-fixed variables without assigning them yet
    if not all(domains):
        return None
    if solve(0):
        return tuple(assignment)
    return None


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ran out of its node/work budget."""


def monic_product(A: RelationalStructure, max_tuples: int = 2_000_000) -> RelationalStructure:
    """The single-relation structure whose tuples concatenate one tuple per relation."""
    size = math.prod(len(rel) for rel in A.relations)
    if size > max_tuples:
        raise StructureError(f"monic product would have {size} tuples (limit {max_tuples})")
    arity = sum(A.signature.arities)
    tuples = (tuple(itertools.chain.from_iterable(parts)) for parts in itertools.product(*A.relations))
    return RelationalStructure.build(A.domain_size, [(MONIC_SYMBOL, arity, tuples)])


def has_loop(B: RelationalStructure) -> bool:
    """True iff some element ``b`` has its constant tuple in every relation."""
    for b in range(B.domain_size):
        if all((b,) * arity in set(rel) for arity, rel in zip(B.signature.arities, B.relations)):
            return True
    return False


def induced_substructure(X: RelationalStructure, S: Iterable[int]) -> tuple[RelationalStructure, tuple[int, ...]]:
    """Substructure induced by ``S``, re-indexed to ``0..|S|-1``.

    Returns the structure and the index map (new vertex ``i`` is old vertex
    ``index_map[i]``).
    """
    keep = tuple(sorted(set(S)))
    if not keep:
        raise StructureError("induced substructure needs a nonempty vertex set")
    if keep[0] < 0 or keep[-1] >= X.domain_size:
        raise StructureError("vertex set is not contained in the domain")
    new = {v: i for i, v in enumerate(keep)}
    rels = []
    for rel in X.relations:
        rels.append(tuple(sorted(tuple(new[v] for v in t) for t in rel if all(v in new for v in t))))
    return RelationalStructure(X.signature, len(keep), tuple(rels)), keep


def is_oriented(X: RelationalStructure) -> bool:
    if not X.is_monic or X.arity < 2:
        return False
    seen = set()
    for t in X.tuples:
        s = frozenset(t)
        if len(s) != len(t) or s in seen:
            return False
        seen.add(s)
    return True


def orient(H: Hypergraph, seed: int = 0) -> RelationalStructure:
    """Pick one tuple per hyperedge; seed 0 keeps each edge in ascending order."""
    if H.r < 2:
        raise StructureError("orientation needs uniformity at least 2")
    if seed == 0:
        tuples = [tuple(e) for e in H.edges]
    else:
        rng = np.random.default_rng(seed)
        tuples = [tuple(int(v) for v in rng.permutation(e)) for e in H.edges]
    return RelationalStructure.build(H.n, [(MONIC_SYMBOL, H.r, tuples)])


def symmetrize(X: RelationalStructure) -> Hypergraph:
    """The hypergraph whose edges are the entry sets of the tuples of ``X``."""
    if not is_oriented(X):
        raise StructureError("symmetrize requires an oriented monic structure")
    return Hypergraph(X.domain_size, X.arity, [tuple(sorted(t)) for t in X.tuples])


def cycle_graph(n: int) -> RelationalStructure:
    """Undirected n-cycle as a symmetric digraph."""
    if n < 3:
        raise StructureError("cycle length must be at least 3")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        edges += [(i, j), (j, i)]
    return RelationalStructure.build(n, [(MONIC_SYMBOL, 2, edges)])


def clique_structure(r: int, c: int) -> RelationalStructure:
    """``K_{r,c}``: domain ``[c]`` and all non-constant ``r``-tuples."""
    if r < 1 or c < 1:
        raise StructureError("clique structure needs r >= 1 and c >= 1")
    tuples = [t for t in itertools.product(range(c), repeat=r) if len(set(t)) > 1]
    return RelationalStructure.build(c, [(MONIC_SYMBOL, r, tuples)])


def digraph(n: int, edges: Iterable[tuple[int, int]]) -> RelationalStructure:
    return RelationalStructure.build(n, [(MONIC_SYMBOL, 2, edges)])


def validate_group(table: Sequence[Sequence[int]]) -> int:
    """Check that ``table`` is a Cayley table; returns the identity element."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise StructureError("Cayley table must be a nonempty square")
    for row in table:
        for v in row:
            if not 0 <= v < n:
                raise StructureError(f"Cayley table entry {v} out of range")
    mul = [list(row) for row in table]
    identity = None
    for e in range(n):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise StructureError("Cayley table has no identity element")
    for x in range(n):
        if not any(mul[x][y] == identity and mul[y][x] == identity for y in range(n)):
            raise StructureError(f"element {x} has no inverse")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                    raise StructureError(f"table is not associative at ({x}, {y}, {z})")
    return identity


def group_structure(table: Sequence[Sequence[int]]) -> RelationalStructure:
    """Ternary relations ``R_g = {(h1,h2,h3) : h1*h2*h3 = g}``, one per group element."""
    validate_group(table)
    n = len(table)
    rels = []
    for g in range(n):
        tuples = [(a, b, c) for a in range(n) for b in range(n) for c in range(n) if table[table[a][b]][c] == g]
        rels.append((f"R{g}", 3, tuples))
    return RelationalStructure.build(n, rels)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]
