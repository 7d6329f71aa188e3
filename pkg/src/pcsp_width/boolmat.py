"""Square 0/1 matrices over the boolean semiring, stored as row bitsets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .structures import RelationalStructure, StructureError


class BoolMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class BoolMatrix:
    """Row ``i`` is the int ``rows[i]`` whose bit ``j`` holds entry ``(i, j)``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.rows) != self.n:
            raise BoolMatrixError("row count must equal the dimension")
        full = (1 << self.n) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise BoolMatrixError("row has bits outside the dimension")

    @classmethod
    def from_lists(cls, grid: Sequence[Sequence[int]]) -> BoolMatrix:
        n = len(grid)
        rows = []
        for row in grid:
            if len(row) != n:
                raise BoolMatrixError("matrix is not square")
            bits = 0
            for j, x in enumerate(row):
                if x not in (0, 1, True, False):
                    raise BoolMatrixError(f"entry {x!r} is not 0/1")
                if x:
                    bits |= 1 << j
            rows.append(bits)
        return cls(n, tuple(rows))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> BoolMatrix:
        rows = [0] * n
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> BoolMatrix:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def zeros(cls, n: int) -> BoolMatrix:
        return cls(n, (0,) * n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return bool_product(self, other)

    def __or__(self, other: BoolMatrix) -> BoolMatrix:
        _same_dim(self, other)
        return BoolMatrix(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if (self.rows[i] >> j) & 1]

    def is_full(self) -> bool:
        full = (1 << self.n) - 1
        return all(r == full for r in self.rows)

    def has_zero_row(self) -> bool:
        return any(r == 0 for r in self.rows)

    def has_zero_column(self) -> bool:
        union = 0
        for r in self.rows:
            union |= r
        return union != (1 << self.n) - 1

    def contains(self, other: BoolMatrix) -> bool:
        """Support inclusion ``supp(other) ⊆ supp(self)``."""
        _same_dim(self, other)
        return all(b & ~a == 0 for a, b in zip(self.rows, other.rows))

    def transpose(self) -> BoolMatrix:
        return transpose(self)

    def render(self) -> str:
        return "\n".join("".join(str((r >> j) & 1) for j in range(self.n)) for r in self.rows)


def _same_dim(a: BoolMatrix, b: BoolMatrix) -> None:
    if a.n != b.n:
        raise BoolMatrixError(f"dimension mismatch: {a.n} vs {b.n}")


def bool_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    _same_dim(a, b)
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc |= brows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return BoolMatrix(a.n, tuple(out))


def transpose(m: BoolMatrix) -> BoolMatrix:
    rows = [0] * m.n
    for i, r in enumerate(m.rows):
        j = 0
        while r:
            if r & 1:
                rows[j] |= 1 << i
            r >>= 1
            j += 1
    return BoolMatrix(m.n, tuple(rows))


def power(m: BoolMatrix, t: int) -> BoolMatrix:
    """``m**t`` by repeated squaring (``t = 0`` gives the identity)."""
    if t < 0:
        raise BoolMatrixError("negative exponent")
    result = BoolMatrix.identity(m.n)
    base = m
    while t:
        if t & 1:
            result = bool_product(result, base)
        t >>= 1
        if t:
            base = bool_product(base, base)
    return result


def alternating_tuple(t: int) -> tuple[int, ...]:
    """The indicator tuple ``(1, -1, 1, ...)`` of length ``t``."""
    return tuple(1 if i % 2 == 0 else -1 for i in range(t))


def is_balanced(x: Sequence[int]) -> bool:
    return sum(x) == 0


def indicator_power(m: BoolMatrix, x: Sequence[int]) -> BoolMatrix:
    """Left-to-right product of ``m`` (entry ``+1``) and its transpose (entry ``-1``)."""
    mt = None
    result = BoolMatrix.identity(m.n)
    for s in x:
        if s == 1:
            result = bool_product(result, m)
        elif s == -1:
            if mt is None:
                mt = transpose(m)
            result = bool_product(result, mt)
        else:
            raise BoolMatrixError(f"indicator entries must be +1 or -1, got {s!r}")
    return result


def reachability(m: BoolMatrix) -> BoolMatrix:
    """Pairs joined by a walk of positive length (transitive closure of ``m``)."""
    n = m.n
    reach = list(m.rows)
    # Warshall on bitset rows
    for k in range(n):
        bit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk
    return BoolMatrix(n, tuple(reach))


def is_irreducible(m: BoolMatrix) -> bool:
    """Every ordered pair, including ``(i, i)``, is joined by a positive-length walk."""
    if m.n == 0:
        raise BoolMatrixError("empty matrix")
    return reachability(m).is_full()


def wielandt_bound(n: int) -> int:
    return n * n - 2 * n + 2


def is_primitive(m: BoolMatrix) -> bool:
    if m.n == 0:
        raise BoolMatrixError("empty matrix")
    return power(m, wielandt_bound(m.n)).is_full()


def index_of_primitivity(m: BoolMatrix) -> int | None:
    """Least ``t >= 1`` with ``m**t`` full, or ``None`` when ``m`` is not primitive."""
    if m.n == 0:
        raise BoolMatrixError("empty matrix")
    if m.has_zero_row() or m.has_zero_column():
        return None
    cur = m
    for t in range(1, wielandt_bound(m.n) + 1):
        if cur.is_full():
            return t
        cur = bool_product(cur, m)
    return None


def slice_matrices(A: RelationalStructure) -> dict[tuple[int, int], BoolMatrix]:
    """``M[(i, j)][a, b] = 1`` iff some tuple has ``a`` at position ``i`` and ``b`` at ``j``.

    Positions are 0-based here; reports convert to 1-based.
    """
    if not A.is_monic:
        raise StructureError("slice matrices need a monic structure")
    r = A.arity
    if r < 2:
        raise StructureError("slice matrices need arity at least 2")
    n = A.domain_size
    out = {}
    for i, j in itertools.permutations(range(r), 2):
        rows = [0] * n
        for t in A.tuples:
            rows[t[i]] |= 1 << t[j]
        out[(i, j)] = BoolMatrix(n, tuple(rows))
    return out


def digraph_matrix(A: RelationalStructure) -> BoolMatrix:
    """Adjacency matrix of a monic binary structure."""
    if not A.is_monic or A.arity != 2:
        raise StructureError("expected a digraph (one binary relation)")
    return BoolMatrix.from_pairs(A.domain_size, A.tuples)
