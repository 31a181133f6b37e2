"""Brute-force counterparts of the counting formulas in qcount.

Each oracle enumerates tuples, subsets, matrices or chains directly over the
lattice and never evaluates a closed form.
"""

import logging
from itertools import combinations, product
from math import comb
from typing import Callable

from .finite_field import FieldCtx
from .lattice import CHAIN_BUDGET, VectorSpaceLattice, count_paths_bruteforce, rank_of
from .qcount import q_int
from .utils import DEFAULT_BUDGET, check_budget

logger = logging.getLogger(__name__)

# Matrices enumerated one by one up to this many; larger groups are counted through ordered bases.
DIRECT_GL_LIMIT = 2**16


def _extension_cost(lattice: VectorSpaceLattice, j: int) -> int:
    """
    Estimated steps to extend j independent points to a basis depth-first.

    Every search node with d chosen points spans about q^d points at n^2
    steps each, and there are prod(size - [i]) such nodes for i from j to d-1.
    """
    n, q, size = lattice.n, lattice.ctx.q, lattice.size
    cost, nodes = 0, 1
    for d in range(j, n):
        cost += nodes * q**d * n * n
        nodes *= size - q_int(d, q)
    return cost


def _count_ordered_extensions(lattice: VectorSpaceLattice, start: tuple[int, ...]) -> int:
    """Ordered tuples of points that extend the independent `start` to a basis."""
    n, size = lattice.n, lattice.size

    def walk(chosen: tuple[int, ...]) -> int:
        blocked = lattice.span_points(chosen)
        if len(chosen) == n - 1:
            return size - len(blocked)
        return sum(walk(chosen + (i,)) for i in range(size) if i not in blocked)

    if len(start) == n:
        return 1
    return walk(start)


def fixed_independent_set(lattice: VectorSpaceLattice, j: int) -> tuple[int, ...]:
    """
    The first j independent points met in canonical order.

    Raises:
        ValueError: If j is not between 0 and n
    """
    if not 0 <= j <= lattice.n:
        raise ValueError(f"Fixed subset size {j} out of range for n = {lattice.n}")
    chosen: tuple[int, ...] = ()
    for pt in lattice.points:
        if len(chosen) == j:
            break
        if lattice.rank_of(chosen + (pt.index,)) == len(chosen) + 1:
            chosen += (pt.index,)
    return chosen


def gl_order_bruteforce(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> int:
    """
    Count invertible n x n matrices over GF(q).

    Small groups are counted matrix by matrix. Larger ones count ordered
    bases of points and scale by the (q-1)^n choices of representatives.
    """
    q = ctx.q
    if q ** (n * n) <= DIRECT_GL_LIMIT:
        check_budget(q ** (n * n) * n**3, budget, f"enumerating {n}x{n} matrices over GF({q})")
        count = 0
        for entries in product(range(q), repeat=n * n):
            rows = [entries[r * n:(r + 1) * n] for r in range(n)]
            if rank_of(rows, n, ctx) == n:
                count += 1
        return count
    return t_count_bruteforce(n, ctx, budget) * (q - 1) ** n


def t_count_bruteforce(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> int:
    """Ordered n-tuples of points forming a basis, by depth-first extension."""
    lattice = VectorSpaceLattice(n, ctx, budget)
    check_budget(_extension_cost(lattice, 0), budget, f"ordered bases of V({n},{ctx.q})")
    return _count_ordered_extensions(lattice, ())


def s_count_bruteforce(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> int:
    """Unordered n-subsets of points forming a basis, by rank test of every subset."""
    lattice = VectorSpaceLattice(n, ctx, budget)
    check_budget(comb(lattice.size, n) * n**3, budget, f"n-subsets of V({n},{ctx.q})")
    return sum(1 for subset in combinations(range(lattice.size), n) if lattice.rank_of(subset) == n)


def t_fixed_bruteforce(n: int, j: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> int:
    """Ordered extensions of a fixed independent j-set to a basis."""
    lattice = VectorSpaceLattice(n, ctx, budget)
    start = fixed_independent_set(lattice, j)
    check_budget(_extension_cost(lattice, j), budget, f"ordered extensions of {j} points in V({n},{ctx.q})")
    return _count_ordered_extensions(lattice, start)


def s_fixed_bruteforce(n: int, j: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> int:
    """Unordered extensions of a fixed independent j-set to a basis."""
    lattice = VectorSpaceLattice(n, ctx, budget)
    start = fixed_independent_set(lattice, j)
    rest = [i for i in range(lattice.size) if i not in start]
    check_budget(comb(len(rest), n - j) * n**3, budget, f"extensions of {j} points in V({n},{ctx.q})")
    return sum(1 for extra in combinations(rest, n - j) if lattice.rank_of(start + extra) == n)


def p_count_bruteforce(n: int, ctx: FieldCtx, budget: int | None = None) -> int:
    """Maximal chains of V(n, q), counted by depth-first search."""
    return count_paths_bruteforce(n, ctx, CHAIN_BUDGET if budget is None else budget)


def counting_oracles(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET) -> dict[str, Callable[[], int]]:
    """
    Every counting oracle at (n, q), unevaluated.

    Each callable runs one enumeration when called, so a caller can time the
    oracles separately and record the ones that exceed the budget.

    Returns:
        Mapping from formula name (e.g. "t_fixed(n,2,q)") to its oracle, in report order
    """
    oracles: dict[str, Callable[[], int]] = {
        "gl_order": lambda: gl_order_bruteforce(n, ctx, budget),
        "t_count": lambda: t_count_bruteforce(n, ctx, budget),
        "s_count": lambda: s_count_bruteforce(n, ctx, budget),
    }
    for j in range(n + 1):
        oracles[f"t_fixed(n,{j},q)"] = lambda j=j: t_fixed_bruteforce(n, j, ctx, budget)
        oracles[f"s_fixed(n,{j},q)"] = lambda j=j: s_fixed_bruteforce(n, j, ctx, budget)
    oracles["p_count"] = lambda: p_count_bruteforce(n, ctx, budget)
    logger.debug(f"Prepared {len(oracles)} counting oracles for n={n}, q={ctx.q}")
    return oracles
