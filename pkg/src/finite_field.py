"""Arithmetic in GF(q) for prime q and prime powers q = p^k."""

import logging
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from sympy import factorint, isprime

logger = logging.getLogger(__name__)

MAX_ORDER = 2**20
TABLE_LIMIT = 4096


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b over GF(p), low degree first."""
    rem = list(a)
    db = len(b) - 1
    while len(rem) - 1 >= db:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - db
            for i, c in enumerate(b):
                rem[shift + i] = (rem[shift + i] - lead * c) % p
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def _monic_polys(degree: int, p: int) -> Iterator[list[int]]:
    """Yield monic polynomials of the given degree in increasing order of their lower coefficients."""
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(code % p)
            code //= p
        yield coeffs + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """
    Exhaustively test a monic polynomial over GF(p) for irreducibility.

    Args:
        poly: Coefficients, lowest degree first, leading coefficient 1
        p: Prime characteristic

    Returns:
        True if no monic polynomial of degree 1..deg/2 divides poly
    """
    degree = len(poly) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(d, p):
            if not _poly_rem(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> list[int]:
    """
    Find the lexicographically smallest monic irreducible polynomial of degree k.

    Raises:
        ValueError: If the search space holds no irreducible polynomial
    """
    for poly in _monic_polys(k, p):
        if is_irreducible(poly, p):
            return poly
    raise ValueError(f"No irreducible polynomial of degree {k} found over GF({p})")


class FieldCtx:
    """
    The finite field GF(p^k).

    Elements are integers in [0, q) holding the base-p digits of their
    coefficient vector (digit i is the coefficient of x^i). The context is
    immutable once built and safe to share.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] = ()):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self.mul_table: np.ndarray | None = None
        self.inv_table: np.ndarray | None = None
        self.add_table: np.ndarray | None = None
        self._add: list[list[int]] | None = None
        self._mul: list[list[int]] | None = None
        self._inv: list[int] | None = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # direct arithmetic, used above TABLE_LIMIT and to seed the tables

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, digits: list[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _add_direct(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def _mul_direct(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        rem = _poly_rem(prod, list(self.modulus), self.p)
        return self.from_digits(rem + [0] * (self.k - len(rem)))

    def _pow_direct(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_direct(result, a)
            a = self._mul_direct(a, a)
            e >>= 1
        return result

    def _primitive_element(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        prime_divisors = list(factorint(order))
        for g in range(2, self.q):
            if all(self._pow_direct(g, order // r) != 1 for r in prime_divisors):
                return g
        raise ArithmeticError(f"No primitive element found in {self!r}")

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        logger.debug(f"Building dense tables for {self!r}")
        elems = np.arange(q, dtype=np.int64)

        add = np.zeros((q, q), dtype=np.int64)
        for i in range(self.k):
            place = p**i
            d = (elems // place) % p
            add += ((d[:, None] + d[None, :]) % p) * place

        g = self._primitive_element()
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_direct(x, g)
        exp[q - 1:] = exp[: q - 1]

        mul = exp[log[:, None] + log[None, :]]
        mul[0, :] = 0
        mul[:, 0] = 0
        inv = exp[(q - 1 - log) % (q - 1)]
        inv[0] = 0

        self.add_table = add.astype(np.uint16)
        self.mul_table = mul.astype(np.uint16)
        self.inv_table = inv.astype(np.uint16)
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._inv = inv.tolist()

    # public arithmetic on integer representatives

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return self._add[a][b]
        return self._add_direct(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits([(-d) % self.p for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_direct(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        if self._inv is not None:
            return self._inv[a]
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._pow_direct(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def element(self, rep: int) -> "FieldElement":
        if not 0 <= rep < self.q:
            raise ValueError(f"Representative {rep} out of range for {self!r}")
        return FieldElement(rep, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(r, self) for r in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(q) together with its field context."""

    rep: int
    ctx: FieldCtx

    def _check(self, other: "FieldElement") -> None:
        if self.ctx != other.ctx:
            raise ValueError(f"Mixed field contexts: {self.ctx!r} and {other.ctx!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx.add(self.rep, other.rep), self.ctx)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx.sub(self.rep, other.rep), self.ctx)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx.mul(self.rep, other.rep), self.ctx)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx.neg(self.rep), self.ctx)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.ctx.pow(self.rep, e), self.ctx)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.rep), self.ctx)

    def __int__(self) -> int:
        return self.rep

    def __repr__(self) -> str:
        return f"{self.rep}@{self.ctx!r}"


def field_new(p: int, k: int = 1) -> FieldCtx:
    """
    Build the field GF(p^k).

    Args:
        p: Prime characteristic
        k: Extension degree (>= 1)

    Returns:
        Field context with a verified irreducible modulus when k > 1

    Raises:
        ValueError: If p is not prime, k < 1, or p^k exceeds MAX_ORDER
    """
    if not isprime(p):
        raise ValueError(f"Characteristic must be prime, got {p}")
    if k < 1:
        raise ValueError(f"Extension degree must be >= 1, got {k}")
    if p**k > MAX_ORDER:
        raise ValueError(f"Field order {p}^{k} exceeds the limit {MAX_ORDER}")

    modulus: tuple[int, ...] = ()
    if k > 1:
        modulus = tuple(smallest_irreducible(p, k))
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"Modulus {modulus} is not irreducible over GF({p})")

    ctx = FieldCtx(p, k, modulus)
    logger.debug(f"Created field {ctx!r}")
    return ctx


def field_for_order(q: int) -> FieldCtx:
    """
    Build the field with q elements.

    Raises:
        ValueError: If q is not a prime power
    """
    if q < 2:
        raise ValueError(f"Field order must be >= 2, got {q}")
    factors = factorint(q)
    if len(factors) != 1:
        raise ValueError(f"Field order must be a prime power, got {q}")
    ((p, k),) = factors.items()
    return field_new(int(p), int(k))
