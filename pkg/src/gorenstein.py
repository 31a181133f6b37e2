"""Combinatorial shadows of the Gorenstein algebra attached to V(n, q).

The algebra is never built as a quotient ring. Its dual generator is the
sum of the square-free monomials X_i1...X_in over the point bases, and
every quantity here is read off that set of bases or off the incidence
matrices.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, factorial

from .finite_field import FieldCtx
from .incidence import IncidencePair, build_incidence
from .lattice import VectorSpaceLattice
from .linalg import IntMatrix, PhiSpec, det_exact, mat_is_phi, mat_mul
from .qcount import q_factorial, q_int, s_fixed, t_fixed
from .utils import DEFAULT_BUDGET, check_budget

logger = logging.getLogger(__name__)

BASIS_BUDGET = 10**7


@dataclass(frozen=True)
class BasisSet:
    """Sorted n-subsets of point indices that span GF(q)^n, in lexicographic order."""

    n: int
    q: int
    bases: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.bases)

    def to_text(self) -> str:
        """One tuple per line, 1-based indices separated by spaces."""
        return "".join(" ".join(str(i + 1) for i in b) + "\n" for b in self.bases)


@dataclass(frozen=True)
class HessianAtOnes:
    """Second partials of the dual generator evaluated at X_1 = ... = X_N = 1."""

    H: IntMatrix

    @property
    def phi(self) -> PhiSpec | None:
        return mat_is_phi(self.H)

    @property
    def off_diagonal(self) -> int | None:
        spec = self.phi
        return spec.beta if spec else None


@dataclass(frozen=True)
class LefschetzMatrix:
    """Matrix of multiplication by l^(n-2) from degree 1 to degree n-1, l the sum of variables."""

    M: IntMatrix
    scalar: int

    def matches(self, A: IntMatrix) -> bool:
        return self.M == A.scale(self.scalar)


@dataclass
class HessianFactorizationReport:
    """Comparison of H with the scaled incidence product and with the candidate off-diagonals."""

    n: int
    q: int
    hessian: HessianAtOnes
    scaled_product: IntMatrix
    candidates: dict[str, int] = field(default_factory=dict)

    @property
    def factorization_holds(self) -> bool:
        return self.hessian.H == self.scaled_product

    @property
    def matched_candidates(self) -> list[str]:
        beta = self.hessian.off_diagonal
        return [name for name, value in self.candidates.items() if value == beta]


@dataclass(frozen=True)
class LefschetzCertificate:
    """Nonvanishing of multiplication by l^n (degree 0) and by l^(n-2) (degree 1)."""

    ell_n: int
    det_M: int

    @property
    def holds(self) -> bool:
        return self.ell_n != 0 and self.det_M != 0


def build_basis_set(n: int, ctx: FieldCtx, budget: int | None = None,
                    lattice: VectorSpaceLattice | None = None) -> BasisSet:
    """
    Enumerate the n-subsets of points that form a basis.

    Args:
        n: Ambient dimension (>= 2)
        ctx: Field context
        budget: Upper bound on subsets tested (defaults to BASIS_BUDGET)
        lattice: Optional prebuilt lattice for (n, ctx)

    Raises:
        BudgetExceededError: If C(N, n) exceeds the budget
    """
    if n < 2:
        raise ValueError(f"Basis set needs n >= 2, got {n}")
    lattice = lattice or VectorSpaceLattice(n, ctx)
    check_budget(comb(lattice.size, n), BASIS_BUDGET if budget is None else budget,
                 f"basis enumeration in V({n},{ctx.q})")
    bases = tuple(s for s in combinations(range(lattice.size), n) if lattice.rank_of(s) == n)
    logger.info(f"Basis set of V({n},{ctx.q}) has {len(bases)} members")
    return BasisSet(n, ctx.q, bases)


def hessian_at_ones(bs: BasisSet, size: int | None = None) -> HessianAtOnes:
    """
    Count, for every pair of distinct points, the bases containing both.

    Args:
        bs: Basis set
        size: Number of points N (defaults to [n]_q)
    """
    size = size if size is not None else q_int(bs.n, bs.q)
    counts = [[0] * size for _ in range(size)]
    for b in bs.bases:
        for i, j in combinations(b, 2):
            counts[i][j] += 1
            counts[j][i] += 1
    return HessianAtOnes(IntMatrix.from_rows(counts))


def hessian_candidates(n: int, q: int) -> dict[str, int]:
    """Candidate off-diagonal constants: ordered and unordered extensions of a fixed pair."""
    return {"t_fixed(n,2,q)": t_fixed(n, 2, q), "s_fixed(n,2,q)": s_fixed(n, 2, q)}


def verify_hessian_factorization(n: int, ctx: FieldCtx, budget: int | None = None,
                                 pair: IncidencePair | None = None,
                                 bs: BasisSet | None = None) -> HessianFactorizationReport:
    """
    Compare H with (t_(n-1,1,q) / (n-2)!) * AB and with both candidate Phi forms.

    The scaling is applied to the product matrix and every entry must divide
    exactly. Mismatches are findings in the report, not errors.

    Raises:
        ArithmeticError: If (n-2)! does not divide a scaled entry
    """
    if n < 2:
        raise ValueError(f"Hessian factorization needs n >= 2, got {n}")
    q = ctx.q
    lattice = VectorSpaceLattice(n, ctx) if pair is None or bs is None else None
    pair = pair or build_incidence(n, ctx, lattice)
    bs = bs or build_basis_set(n, ctx, budget, lattice)
    hessian = hessian_at_ones(bs, pair.N)

    scaled = mat_mul(pair.A, pair.B).scale(t_fixed(n - 1, 1, q)).exact_quotient(factorial(n - 2))
    report = HessianFactorizationReport(n, q, hessian, scaled, hessian_candidates(n, q))
    logger.info(
        f"Hessian at n={n}, q={q}: off-diagonal {hessian.off_diagonal}, "
        f"matches {report.matched_candidates or 'no candidate'}"
    )
    return report


def det_hessian_closed(n: int, q: int, off_diag: int) -> int:
    """|det Phi(N, 0, beta)| = (N - 1) * beta^N."""
    N = q_int(n, q)
    return (N - 1) * off_diag**N


def mu_matrix(n: int, ctx: FieldCtx, pair: IncidencePair | None = None) -> IntMatrix:
    """
    Multiplication pairing from degree 1 times degree n-1 into the socle.

    x_i * x_j^perp is the socle generator when v_i is not in v_j^perp and
    vanishes otherwise, so the pairing is B.
    """
    if n < 2:
        raise ValueError(f"Pairing needs n >= 2, got {n}")
    pair = pair or build_incidence(n, ctx)
    return pair.B


def lefschetz_matrix(n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET,
                     lattice: VectorSpaceLattice | None = None) -> LefschetzMatrix:
    """
    Build the matrix of multiplication by l^(n-2) by counting tuples.

    Entry (j, i) counts ordered (n-2)-tuples of points that together with
    v_i form n-1 distinct points spanning v_j^perp.

    Raises:
        BudgetExceededError: If N^(n-1) tuple tests exceed the budget
    """
    if n < 2:
        raise ValueError(f"Lefschetz matrix needs n >= 2, got {n}")
    lattice = lattice or VectorSpaceLattice(n, ctx)
    size = lattice.size
    check_budget(size ** (n - 1), budget, f"tuple count for l^{n - 2} in V({n},{ctx.q})")
    logger.info(f"Counting tuples for the Lefschetz matrix at n={n}, q={ctx.q}")

    counts = [[0] * size for _ in range(size)]
    for i in range(size):
        for rest in product(range(size), repeat=n - 2):
            chosen = (i,) + rest
            if len(set(chosen)) != n - 1:
                continue
            W = lattice.span_of(chosen)
            if W.dim != n - 1:
                continue
            counts[lattice.hyperplane_owner(W)][i] += 1

    return LefschetzMatrix(IntMatrix.from_rows(counts), t_fixed(n - 1, 1, ctx.q))


def ell_n_scalar(n: int, q: int, bs: BasisSet | None = None) -> int:
    """
    l^n applied to the dual generator: q^(n(n-1)/2) * [1][2]...[n].

    When a basis set is given, the value is checked against n! * |basis set|.

    Raises:
        ArithmeticError: If the basis set disagrees
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    value = q ** (n * (n - 1) // 2) * q_factorial(n, q)
    if bs is not None and factorial(n) * len(bs) != value:
        raise ArithmeticError(f"l^n scalar {value} disagrees with {n}! * {len(bs)} bases")
    return value


def composition_holds(pair: IncidencePair, lefschetz: LefschetzMatrix, hessian: HessianAtOnes) -> bool:
    """B * M = (n-2)! * H: pairing after multiplication by l^(n-2) gives the Hessian."""
    return mat_mul(pair.B, lefschetz.M) == hessian.H.scale(factorial(pair.n - 2))


def hyperplane_monomials(lattice: VectorSpaceLattice) -> list[tuple[int, ...]]:
    """
    A monomial basis of degree n-1, one monomial per hyperplane.

    For each v_j^perp, the lexicographically smallest (n-1)-subset of its
    points that spans it.
    """
    n = lattice.n
    if n < 2:
        raise ValueError(f"Hyperplane monomials need n >= 2, got {n}")
    monomials = []
    for H in lattice.hyperplanes:
        members = sorted(lattice.point_set(H))
        monomials.append(next(s for s in combinations(members, n - 1) if lattice.rank_of(s) == n - 1))
    return monomials


def dual_generator_text(bs: BasisSet) -> str:
    """Render the dual generator as "X1X2X4 + X1X3X4 + ..."."""
    return " + ".join("".join(f"X{i + 1}" for i in b) for b in bs.bases)


def lefschetz_certificate(n: int, q: int, lefschetz: LefschetzMatrix) -> LefschetzCertificate:
    """Degree 0 and degree 1 nonvanishing for multiplication by powers of l."""
    return LefschetzCertificate(ell_n_scalar(n, q), det_exact(lefschetz.M))
