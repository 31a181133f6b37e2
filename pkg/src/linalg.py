"""Exact integer matrices, the Phi family, and two determinant engines."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt, prod
from typing import Iterable, Sequence

import numpy as np
from sympy import prevprime, primerange
from sympy.ntheory.modular import crt

from .utils import format_power_product

logger = logging.getLogger(__name__)

CRT_PRIME_CEILING = 2**62
FACTOR_BOUND = 1000


@dataclass(frozen=True)
class IntMatrix:
    """A dense square matrix of Python integers, row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        for r in self.rows:
            if len(r) != size:
                raise ValueError(f"Matrix is not square: row of length {len(r)} in a {size}-row matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, size: int) -> "IntMatrix":
        return cls.from_rows([[0] * size for _ in range(size)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * x for x in r) for r in self.rows))

    def exact_quotient(self, d: int) -> "IntMatrix":
        """Divide every entry by d, raising ArithmeticError if any division leaves a remainder."""
        out = []
        for r in self.rows:
            row = []
            for x in r:
                quotient, remainder = divmod(x, d)
                if remainder:
                    raise ArithmeticError(f"Entry {x} is not divisible by {d}")
                row.append(quotient)
            out.append(tuple(row))
        return IntMatrix(tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _check_dims(self, other)
        return IntMatrix(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _check_dims(self, other)
        return IntMatrix(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def diagonal(self) -> list[int]:
        return [self.rows[i][i] for i in range(self.dim)]

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def col_sums(self) -> list[int]:
        return [sum(c) for c in zip(*self.rows)]

    def max_abs(self) -> int:
        return max((abs(x) for r in self.rows for x in r), default=0)

    def to_text(self) -> str:
        """Serialize as a size line followed by one space-separated line per row."""
        lines = [str(self.dim)]
        lines.extend(" ".join(str(x) for x in r) for r in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        """
        Parse the text format written by to_text.

        Raises:
            ValueError: If the size line and the rows disagree
        """
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("Empty matrix text")
        size = int(lines[0])
        body = lines[1:]
        if len(body) != size:
            raise ValueError(f"Expected {size} rows, found {len(body)}")
        rows = [[int(tok) for tok in ln.split(" ")] for ln in body]
        return cls.from_rows(rows)


def _check_dims(a: IntMatrix, b: IntMatrix) -> None:
    if a.dim != b.dim:
        raise ValueError(f"Dimension mismatch: {a.dim} vs {b.dim}")


@dataclass(frozen=True)
class PhiSpec:
    """Size, diagonal value and off-diagonal value of a Phi matrix."""

    nu: int
    alpha: int
    beta: int


@dataclass(frozen=True)
class Factorization:
    """sign * prod(p^e) * residual, with primes found by trial division."""

    sign: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    residual: int = 1

    @property
    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors) * self.residual

    def render(self) -> str:
        """Render the absolute value in table style, e.g. "2^14·7"."""
        if self.sign == 0:
            return "0"
        return format_power_product(list(self.factors), self.residual)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)


def phi_matrix(spec: PhiSpec) -> IntMatrix:
    """The nu x nu matrix with alpha on the diagonal and beta elsewhere."""
    if spec.nu < 1:
        raise ValueError(f"Phi size must be >= 1, got {spec.nu}")
    return IntMatrix.from_rows(
        [[spec.alpha if i == j else spec.beta for j in range(spec.nu)] for i in range(spec.nu)]
    )


def det_phi_closed(spec: PhiSpec) -> int:
    """det Phi(nu, alpha, beta) = (alpha - beta)^(nu - 1) * (nu*beta + alpha - beta)."""
    if spec.nu < 1:
        raise ValueError(f"Phi size must be >= 1, got {spec.nu}")
    return (spec.alpha - spec.beta) ** (spec.nu - 1) * (spec.nu * spec.beta + spec.alpha - spec.beta)


def phi_ratio_holds(s1: PhiSpec, s2: PhiSpec) -> bool:
    """
    Cross-multiplied ratio identity for two Phi matrices with equal alpha - beta.

    det(s1) * (nu*beta2 + alpha2 - beta2) == det(s2) * (nu*beta1 + alpha1 - beta1).
    """
    if s1.nu != s2.nu or s1.alpha - s1.beta != s2.alpha - s2.beta:
        raise ValueError(f"Ratio identity needs equal size and alpha - beta: {s1} vs {s2}")
    tail1 = s1.nu * s1.beta + s1.alpha - s1.beta
    tail2 = s2.nu * s2.beta + s2.alpha - s2.beta
    return det_phi_closed(s1) * tail2 == det_phi_closed(s2) * tail1


def det_exact(m: IntMatrix) -> int:
    """
    Determinant by single-step fraction-free (Bareiss) elimination.

    Pivots are the first nonzero entry at or below the diagonal; row swaps
    flip the sign.

    Raises:
        ArithmeticError: If a recurrence division is not exact
    """
    size = m.dim
    if size == 0:
        return 1
    rows = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        pivot = next((r for r in range(k, size) if rows[r][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        pkk = rows[k][k]
        tail = rows[k][k + 1:]
        for i in range(k + 1, size):
            ri = rows[i]
            rik = ri[k]
            steps = [divmod(pkk * a - rik * b, prev) for a, b in zip(ri[k + 1:], tail)]
            if any(rem for _, rem in steps):
                raise ArithmeticError(f"Bareiss division by {prev} is not exact at step {k}")
            ri[k + 1:] = [quotient for quotient, _ in steps]
        prev = pkk
        if k and k % 64 == 0:
            logger.debug(f"Bareiss step {k}/{size}")
    return sign * rows[size - 1][size - 1]


def hadamard_bound(m: IntMatrix) -> int:
    """Integer upper bound on |det m|: product of the rounded-up row norms."""
    bound = 1
    for r in m.rows:
        sq = sum(x * x for x in r)
        root = isqrt(sq)
        bound *= root if root * root == sq else root + 1
    return bound


_PRIMES: list[int] = []


def crt_primes(count: int) -> tuple[int, ...]:
    """The `count` largest primes below 2^62, descending."""
    while len(_PRIMES) < count:
        _PRIMES.append(int(prevprime(_PRIMES[-1] if _PRIMES else CRT_PRIME_CEILING)))
    return tuple(_PRIMES[:count])


def det_mod_prime(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant modulo a prime by Gaussian elimination over GF(p)."""
    size = len(rows)
    m = [[x % p for x in r] for r in rows]
    det = 1
    for k in range(size):
        pivot = next((r for r in range(k, size) if m[r][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        pkk = m[k][k]
        det = det * pkk % p
        inv = pow(pkk, -1, p)
        tail = m[k][k + 1:]
        for i in range(k + 1, size):
            ri = m[i]
            if ri[k]:
                f = ri[k] * inv % p
                ri[k + 1:] = [(a - f * b) % p for a, b in zip(ri[k + 1:], tail)]
    return det % p


def det_modular(m: IntMatrix, workers: int = 1) -> int:
    """
    Determinant from residues modulo word-size primes, rebuilt by CRT.

    The number of primes covers twice the Hadamard bound, plus one spare.
    Residues are independent per prime, so they may be computed by a
    process pool; the reconstruction does not depend on completion order.

    Args:
        m: Input matrix
        workers: Number of processes for the per-prime residues

    Returns:
        The exact signed determinant
    """
    if m.dim == 0:
        return 1
    bound = hadamard_bound(m)
    if bound == 0:
        return 0
    needed = 2 * bound + 1
    count, modulus = 0, 1
    while modulus <= needed:
        count += 1
        modulus *= crt_primes(count)[-1]
    primes = crt_primes(count + 1)
    logger.debug(f"Modular determinant of size {m.dim}: {len(primes)} primes, bound of {bound.bit_length()} bits")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            residues = list(pool.map(det_mod_prime, [m.rows] * len(primes), primes))
    else:
        residues = [det_mod_prime(m.rows, p) for p in primes]

    value, _ = crt(list(primes), residues, symmetric=True)
    return int(value)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """
    Exact matrix product.

    Uses int64 numpy arithmetic when the entry bound guarantees no
    overflow, exact Python integers otherwise.
    """
    _check_dims(a, b)
    if a.max_abs() * b.max_abs() * max(a.dim, 1) < 2**62:
        product = np.array(a.rows, dtype=np.int64).reshape(a.dim, a.dim) @ np.array(
            b.rows, dtype=np.int64
        ).reshape(b.dim, b.dim)
        return IntMatrix.from_rows(product.tolist())
    cols = list(zip(*b.rows))
    return IntMatrix(tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a.rows))


def mat_is_phi(m: IntMatrix) -> PhiSpec | None:
    """
    Recognize a Phi matrix.

    Returns:
        The PhiSpec when the diagonal and off-diagonal are each constant,
        None otherwise. A 1 x 1 matrix reports beta = 0.
    """
    if m.dim == 0:
        return None
    alpha = m[0, 0]
    beta = m[0, 1] if m.dim > 1 else 0
    for i, r in enumerate(m.rows):
        for j, x in enumerate(r):
            if x != (alpha if i == j else beta):
                return None
    return PhiSpec(m.dim, alpha, beta)


def factorize(v: int, bound: int = FACTOR_BOUND) -> Factorization:
    """
    Trial-divide v by the primes up to bound.

    Args:
        v: Value to factor
        bound: Largest trial divisor (>= 2)

    Returns:
        Factorization whose residual holds any part left unfactored
    """
    if bound < 2:
        raise ValueError(f"Trial division bound must be >= 2, got {bound}")
    if v == 0:
        return Factorization(0)
    sign = 1 if v > 0 else -1
    rest = abs(v)
    factors = []
    for p in primerange(2, bound + 1):
        if rest == 1:
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            factors.append((int(p), e))
    return Factorization(sign, tuple(factors), rest)
