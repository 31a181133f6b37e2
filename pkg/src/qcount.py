"""Exact q-integers, q-binomials and the counting formulas of V(n, q).

All values are Python integers. Divisions that the formulas promise to be
exact are checked and raise ArithmeticError otherwise.
"""

from math import factorial, prod


def exact_div(numerator: int, denominator: int, what: str = "quotient") -> int:
    """Divide, raising ArithmeticError on a nonzero remainder."""
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise ArithmeticError(f"Inexact {what}: {numerator} / {denominator} leaves {remainder}")
    return quotient


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")


def q_int(i: int, q: int) -> int:
    """[i] = (q^i - 1) / (q - 1)."""
    _check_q(q)
    if i < 0:
        raise ValueError(f"q-integer index must be >= 0, got {i}")
    return exact_div(q**i - 1, q - 1, f"[{i}]_{q}")


def q_binom(n: int, j: int, q: int) -> int:
    """Gaussian binomial [n choose j]_q, zero outside 0 <= j <= n."""
    _check_q(q)
    if n < 0 or j < 0 or j > n:
        return 0
    num = prod(q_int(n - i, q) for i in range(j))
    den = prod(q_int(i, q) for i in range(1, j + 1))
    return exact_div(num, den, f"[{n} choose {j}]_{q}")


def q_factorial(n: int, q: int) -> int:
    """[1][2]...[n]."""
    return prod(q_int(k, q) for k in range(1, n + 1))


def gl_order(n: int, q: int) -> int:
    """|GL(n, q)| = (q^n - 1)(q^n - q)...(q^n - q^(n-1))."""
    _check_q(q)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return prod(q**n - q**k for k in range(n))


def t_count(n: int, q: int) -> int:
    """Ordered n-tuples of points forming a basis: |GL(n,q)| / (q-1)^n."""
    value = exact_div(gl_order(n, q), (q - 1) ** n, f"t_({n},{q})")
    closed = q ** (n * (n - 1) // 2) * q_factorial(n, q)
    if value != closed:
        raise ArithmeticError(f"t_({n},{q}): {value} disagrees with product form {closed}")
    return value


def s_count(n: int, q: int) -> int:
    """Unordered bases drawn from the points: t_(n,q) / n!."""
    return exact_div(t_count(n, q), factorial(n), f"s_({n},{q})")


def t_fixed(n: int, j: int, q: int) -> int:
    """Ordered extensions of a fixed independent j-set of points to a basis."""
    _check_q(q)
    if not 0 <= j <= n:
        raise ValueError(f"Fixed subset size {j} out of range for n = {n}")
    exponent = exact_div(n * (n - 1) - j * (j - 1), 2, f"exponent of t_({n},{j},{q})")
    value = q**exponent * q_factorial(n - j, q)
    direct = exact_div(prod(q**n - q**m for m in range(j, n)), (q - 1) ** (n - j), f"t_({n},{j},{q})")
    if value != direct:
        raise ArithmeticError(f"t_({n},{j},{q}): {value} disagrees with {direct}")
    return value


def s_fixed(n: int, j: int, q: int) -> int:
    """Unordered extensions of a fixed independent j-set of points to a basis."""
    return exact_div(t_fixed(n, j, q), factorial(n - j), f"s_({n},{j},{q})")


def p_count(n: int, q: int) -> int:
    """Maximal chains from 0 to GF(q)^n: [1][2]...[n]."""
    _check_q(q)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return q_factorial(n, q)
