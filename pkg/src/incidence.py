"""Incidence matrices between points and hyperplanes of GF(q)^n."""

import logging
from dataclasses import dataclass, field

from .finite_field import FieldCtx
from .lattice import ProjPoint, VectorSpaceLattice, pairing_matrix
from .linalg import IntMatrix, PhiSpec, mat_is_phi, mat_mul
from .qcount import exact_div, q_binom, q_int

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IncidencePair:
    """
    The incidence matrix A and its complement B for V_1 against V_(n-1).

    a_ij = 1 iff v_i lies in v_j^perp; b_ij = 1 - a_ij.
    """

    n: int
    q: int
    points: tuple[ProjPoint, ...]
    A: IntMatrix
    B: IntMatrix

    @property
    def N(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of matching a matrix product against a predicted Phi matrix."""

    name: str
    predicted: PhiSpec
    witnessed: PhiSpec | None

    @property
    def passed(self) -> bool:
        return self.predicted == self.witnessed


@dataclass
class SquareIdentityReport:
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def build_incidence(n: int, ctx: FieldCtx, lattice: VectorSpaceLattice | None = None) -> IncidencePair:
    """
    Build A and B over the canonical point ordering.

    v_i lies in v_j^perp exactly when the pairing of v_i and v_j vanishes.

    Args:
        n: Ambient dimension (>= 2)
        ctx: Field context
        lattice: Optional prebuilt lattice for (n, ctx)

    Returns:
        The incidence pair
    """
    if n < 2:
        raise ValueError(f"Incidence of points and hyperplanes needs n >= 2, got {n}")
    lattice = lattice or VectorSpaceLattice(n, ctx)
    logger.info(f"Building incidence matrices for n={n}, q={ctx.q} (N={lattice.size})")

    gram = pairing_matrix(lattice.points, ctx)
    a = (gram == 0).astype(int)
    A = IntMatrix.from_rows(a.tolist())
    B = IntMatrix.from_rows((1 - a).tolist())
    return IncidencePair(n, ctx.q, tuple(lattice.points), A, B)


def predicted_square_specs(n: int, q: int) -> dict[str, PhiSpec]:
    """Predicted Phi forms of A^2, B^2 and AB."""
    N = q_int(n, q)
    return {
        "A^2": PhiSpec(N, q_binom(n - 1, n - 2, q), q_binom(n - 2, n - 3, q)),
        "B^2": PhiSpec(N, q ** (n - 1), q ** (n - 2) * (q - 1)),
        "AB": PhiSpec(N, 0, q ** (n - 2)),
    }


def verify_square_identities(pair: IncidencePair) -> SquareIdentityReport:
    """
    Compare A^2, B^2 and AB with their predicted Phi forms.

    Mismatches are recorded in the report, not raised.
    """
    predicted = predicted_square_specs(pair.n, pair.q)
    products = {
        "A^2": mat_mul(pair.A, pair.A),
        "B^2": mat_mul(pair.B, pair.B),
        "AB": mat_mul(pair.A, pair.B),
    }
    report = SquareIdentityReport()
    for name, product in products.items():
        check = IdentityCheck(name, predicted[name], mat_is_phi(product))
        if not check.passed:
            logger.warning(f"{name} for n={pair.n}, q={pair.q}: expected {check.predicted}, got {check.witnessed}")
        report.checks.append(check)
    return report


def _det_B_squared_exponent(n: int, q: int) -> int:
    N = q_int(n, q)
    return (n - 2) * N + n


def det_B_squared_closed(n: int, q: int) -> int:
    """det(B^2) = q^((n-2)N + n)."""
    return q ** _det_B_squared_exponent(n, q)


def det_B_exponent(n: int, q: int) -> int:
    """Exponent e in |det B| = q^e."""
    return exact_div(_det_B_squared_exponent(n, q), 2, f"exponent of |det B| at n={n}, q={q}")


def det_B_closed(n: int, q: int) -> int:
    """|det B| = q^(((n-2)N + n) / 2)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return q ** det_B_exponent(n, q)


def det_A_exponent(n: int, q: int) -> int:
    """Exponent e in |det A| = q^e * [n-1]."""
    return exact_div((n - 2) * (q_int(n, q) - 1), 2, f"exponent of |det A| at n={n}, q={q}")


def det_A_closed(n: int, q: int) -> int:
    """|det A| = q^((n-2)(N-1)/2) * [n-1]."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return q ** det_A_exponent(n, q) * q_int(n - 1, q)


def det_AB_alternative(n: int, q: int) -> int:
    """|det A| from |det AB| = (N-1) q^(N(n-2)): (N-1) * q^((N(n-2) - n)/2)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    N = q_int(n, q)
    e = exact_div(N * (n - 2) - n, 2, f"alternative exponent at n={n}, q={q}")
    if e < 0:
        return exact_div(N - 1, q**-e, f"alternative |det A| at n={n}, q={q}")
    return (N - 1) * q**e
