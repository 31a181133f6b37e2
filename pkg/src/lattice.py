"""Points, level sets, spans and duals in the subspace lattice of GF(q)^n."""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FieldCtx, FieldElement
from .qcount import q_binom, q_int
from .utils import DEFAULT_BUDGET, check_budget

logger = logging.getLogger(__name__)

CHAIN_BUDGET = 10**7

Vector = tuple[int, ...]


@dataclass(frozen=True)
class ProjPoint:
    """
    A nonzero vector whose first nonzero coordinate is 1.

    Coordinates are stored as field representatives; `vector` exposes them
    as FieldElements.
    """

    coords: Vector
    index: int
    ctx: FieldCtx

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def vector(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(c, self.ctx) for c in self.coords)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^n stored as its reduced row-echelon basis."""

    n: int
    basis: tuple[Vector, ...]
    ctx: FieldCtx

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_leading(row) for row in self.basis)


def _leading(row: Sequence[int]) -> int:
    for i, c in enumerate(row):
        if c:
            return i
    return -1


def rref(rows: Iterable[Sequence[int]], n: int, ctx: FieldCtx) -> tuple[Vector, ...]:
    """
    Reduce rows to reduced row-echelon form over GF(q), dropping zero rows.

    Args:
        rows: Row vectors of length n, as field representatives
        n: Number of columns
        ctx: Field context

    Returns:
        Tuple of nonzero RREF rows
    """
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError(f"Row {r} does not have length {n}")
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        if lead != 1:
            scale = ctx.inv(lead)
            m[rank] = [ctx.mul(scale, x) for x in m[rank]]
        prow = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[r], prow)]
        rank += 1
        if rank == len(m):
            break
    return tuple(tuple(r) for r in m[:rank])


def rank_of(rows: Iterable[Sequence[int]], n: int, ctx: FieldCtx) -> int:
    return len(rref(rows, n, ctx))


def normalize(vec: Sequence[int], ctx: FieldCtx) -> Vector:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lead = _leading(vec)
    if lead < 0:
        raise ValueError("The zero vector has no projective normalization")
    scale = ctx.inv(vec[lead])
    return tuple(ctx.mul(scale, x) for x in vec)


def _reduce(vec: Sequence[int], W: Subspace) -> list[int]:
    ctx = W.ctx
    v = list(vec)
    for row, col in zip(W.basis, W.pivots):
        if v[col]:
            f = v[col]
            v = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(v, row)]
    return v


def enum_points(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> list[ProjPoint]:
    """
    Enumerate the points of GF(q)^n in canonical order.

    The order is that of the coordinate vector read as a base-q integer,
    most significant coordinate first.

    Args:
        n: Ambient dimension (>= 1)
        ctx: Field context
        budget: Upper bound on the q^n vectors scanned

    Returns:
        The [n]_q normalized points with their indices
    """
    if n < 1:
        raise ValueError(f"Dimension must be >= 1, got {n}")
    q = ctx.q
    check_budget(q**n, budget, f"enumerating GF({q})^{n}")

    points = []
    for coords in product(range(q), repeat=n):
        lead = _leading(coords)
        if lead >= 0 and coords[lead] == 1:
            points.append(ProjPoint(coords, len(points), ctx))
    logger.debug(f"Enumerated {len(points)} points of GF({q})^{n}")
    return points


def pivot_patterns(n: int, j: int) -> list[tuple[int, ...]]:
    """Pivot-column patterns of j x n echelon matrices, lexicographic."""
    if not 0 <= j <= n:
        raise ValueError(f"Level {j} out of range for dimension {n}")
    return list(combinations(range(n), j))


def echelon_template(n: int, pivots: Sequence[int]) -> list[str]:
    """
    Render the echelon pattern for the given pivots.

    Each row is a space-separated string of '1', '0' and '*' (free entry).
    """
    rows = []
    for r, c in enumerate(pivots):
        cells = []
        for col in range(n):
            if col == c:
                cells.append("1")
            elif col < c or col in pivots:
                cells.append("0")
            else:
                cells.append("*")
        rows.append(" ".join(cells))
    return rows


def _free_positions(n: int, pivots: Sequence[int]) -> list[tuple[int, int]]:
    pivot_set = set(pivots)
    return [(r, col) for r, c in enumerate(pivots) for col in range(c + 1, n) if col not in pivot_set]


def enum_level(n: int, j: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    """
    Enumerate the level set of j-dimensional subspaces.

    Generates every pivot pattern and fills its free entries with all field
    values, so each subspace appears exactly once as an RREF.

    Args:
        n: Ambient dimension
        j: Subspace dimension, 0 <= j <= n
        ctx: Field context
        budget: Upper bound on subspaces produced

    Returns:
        Subspaces ordered by pivot pattern, then by free entries
    """
    if not 0 <= j <= n:
        raise ValueError(f"Level {j} out of range for dimension {n}")
    check_budget(q_binom(n, j, ctx.q), budget, f"enumerating level {j} of V({n},{ctx.q})")
    level = []
    for pivots in pivot_patterns(n, j):
        free = _free_positions(n, pivots)
        for values in product(range(ctx.q), repeat=len(free)):
            rows = [[0] * n for _ in pivots]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, col), v in zip(free, values):
                rows[r][col] = v
            level.append(Subspace(n, tuple(tuple(r) for r in rows), ctx))
    logger.debug(f"Level {j} of V({n},{ctx.q}) has {len(level)} subspaces")
    return level


def span_vectors(rows: Iterable[Sequence[int]], n: int, ctx: FieldCtx) -> Subspace:
    return Subspace(n, rref(rows, n, ctx), ctx)


def span(points: Sequence[ProjPoint]) -> Subspace:
    """
    Span of a nonempty list of points.

    Raises:
        ValueError: If the list is empty or mixes dimensions or fields
    """
    if not points:
        raise ValueError("Cannot infer the ambient space of an empty point list")
    n, ctx = points[0].n, points[0].ctx
    for pt in points:
        if pt.n != n or pt.ctx != ctx:
            raise ValueError(f"Mixed ambient spaces in span: {pt.ctx!r}^{pt.n} vs {ctx!r}^{n}")
    return span_vectors((pt.coords for pt in points), n, ctx)


def dual(W: Subspace) -> Subspace:
    """
    Orthogonal complement under the standard bilinear form.

    The null space of the RREF basis has one generator per free column.
    """
    ctx, n = W.ctx, W.n
    pivots = W.pivots
    pivot_set = set(pivots)
    gens = []
    for f in range(n):
        if f in pivot_set:
            continue
        x = [0] * n
        x[f] = 1
        for row, c in zip(W.basis, pivots):
            x[c] = ctx.neg(row[f])
        gens.append(x)
    return span_vectors(gens, n, ctx)


def contains(W: Subspace, v: ProjPoint | Sequence[int]) -> bool:
    """True iff v lies in the row space of W."""
    coords = v.coords if isinstance(v, ProjPoint) else tuple(v)
    if len(coords) != W.n:
        raise ValueError(f"Vector of length {len(coords)} in a subspace of GF(q)^{W.n}")
    return not any(_reduce(coords, W))


def is_subspace(U: Subspace, W: Subspace) -> bool:
    """True iff U is contained in W."""
    return U.dim <= W.dim and all(contains(W, row) for row in U.basis)


def pairing_matrix(points: Sequence[ProjPoint], ctx: FieldCtx) -> np.ndarray:
    """
    Gram matrix of the standard bilinear form on the given points.

    Entry (i, j) is the representative of sum_c v_i[c] * v_j[c] in GF(q).
    """
    coords = np.array([pt.coords for pt in points], dtype=np.int64)
    if ctx.k == 1:
        return (coords @ coords.T) % ctx.p
    if ctx.mul_table is None:
        size = len(points)
        gram = np.zeros((size, size), dtype=np.int64)
        for i, a in enumerate(points):
            for j, b in enumerate(points):
                acc = 0
                for x, y in zip(a.coords, b.coords):
                    acc = ctx.add(acc, ctx.mul(x, y))
                gram[i, j] = acc
        return gram
    mul = ctx.mul_table.astype(np.int64)
    add = ctx.add_table.astype(np.int64)
    gram = np.zeros((len(points), len(points)), dtype=np.int64)
    for c in range(coords.shape[1]):
        col = coords[:, c]
        gram = add[gram, mul[col[:, None], col[None, :]]]
    return gram


class VectorSpaceLattice:
    """The lattice V(n, q) with its canonical point ordering."""

    def __init__(self, n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET):
        """
        Initialize the lattice.

        Args:
            n: Ambient dimension
            ctx: Field context
            budget: Upper bound passed to point enumeration
        """
        self.n = n
        self.ctx = ctx
        self.points = enum_points(n, ctx, budget)
        self.index = {pt.coords: pt.index for pt in self.points}

    @property
    def size(self) -> int:
        return len(self.points)

    def span_of(self, indices: Iterable[int]) -> Subspace:
        return span_vectors((self.points[i].coords for i in indices), self.n, self.ctx)

    def rank_of(self, indices: Iterable[int]) -> int:
        return rank_of((self.points[i].coords for i in indices), self.n, self.ctx)

    def point_set(self, W: Subspace) -> frozenset[int]:
        """
        Indices of all points lying in W.

        Combinations of the RREF rows whose first nonzero coefficient is 1
        are already normalized, so each point is produced once.
        """
        ctx, n = self.ctx, self.n
        found = set()
        for coeffs in product(range(ctx.q), repeat=W.dim):
            lead = _leading(coeffs)
            if lead < 0 or coeffs[lead] != 1:
                continue
            vec = [0] * n
            for a, row in zip(coeffs, W.basis):
                if a:
                    vec = [ctx.add(x, ctx.mul(a, y)) for x, y in zip(vec, row)]
            found.add(self.index[tuple(vec)])
        return frozenset(found)

    def span_points(self, indices: Iterable[int]) -> frozenset[int]:
        return self.point_set(self.span_of(indices))

    def point_of_line(self, W: Subspace) -> int:
        """Index of the point spanning a 1-dimensional subspace."""
        if W.dim != 1:
            raise ValueError(f"Expected a line, got a subspace of dimension {W.dim}")
        return self.index[W.basis[0]]

    def hyperplane_owner(self, H: Subspace) -> int:
        """Index j with H = v_j^perp."""
        return self.point_of_line(dual(H))

    @cached_property
    def hyperplanes(self) -> list[Subspace]:
        """v_1^perp, ..., v_N^perp in the order induced by the points."""
        return [dual(span([pt])) for pt in self.points]

    def extensions(self, W: Subspace) -> list[Subspace]:
        """Subspaces of dimension dim(W) + 1 containing W, in discovery order."""
        children: dict[tuple[Vector, ...], Subspace] = {}
        for pt in self.points:
            if not contains(W, pt):
                child = span_vectors(W.basis + (pt.coords,), self.n, self.ctx)
                children.setdefault(child.basis, child)
        return list(children.values())


def chain_cost(n: int, q: int) -> int:
    """Estimated chain extensions for the exhaustive chain search."""
    N = q_int(n, q)
    nodes, level = 0, 1
    for d in range(n):
        nodes += level
        level *= q_int(n - d, q)
    return nodes * N


def count_paths_bruteforce(n: int, ctx: FieldCtx, budget: int = CHAIN_BUDGET) -> int:
    """
    Count maximal chains 0 = W_0 < W_1 < ... < W_n = GF(q)^n by DFS.

    Raises:
        BudgetExceededError: If the estimated number of chain extensions exceeds budget
    """
    check_budget(chain_cost(n, ctx.q), budget, f"chain search in V({n},{ctx.q})")
    lattice = VectorSpaceLattice(n, ctx)

    def walk(W: Subspace) -> int:
        if W.dim == n:
            return 1
        return sum(walk(child) for child in lattice.extensions(W))

    count = walk(Subspace(n, (), ctx))
    logger.debug(f"Chain search in V({n},{ctx.q}) found {count} maximal chains")
    return count
