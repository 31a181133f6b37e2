"""Utility functions for budgets, factored rendering, JSON formatting, and validation."""

import json
import os
from pathlib import Path
from typing import Any

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Raised when brute-force work is estimated to exceed the configured budget."""

    def __init__(self, what: str, cost: int, budget: int):
        self.what = what
        self.cost = cost
        self.budget = budget
        super().__init__(f"{what}: estimated cost {cost} exceeds budget {budget}")


def check_budget(cost: int, budget: int, what: str) -> None:
    """
    Refuse work whose estimated cost is above the budget.

    Args:
        cost: Estimated number of elementary steps
        budget: Allowed number of steps
        what: Description used in the error message

    Raises:
        BudgetExceededError: If cost > budget
    """
    if cost > budget:
        raise BudgetExceededError(what, cost, budget)


def format_power(base: int, exponent: int) -> str:
    """Render base^exponent, or the bare base for exponent 1."""
    if exponent == 1:
        return str(base)
    return f"{base}^{exponent}"


def format_power_product(factors: list[tuple[int, int]], residual: int = 1) -> str:
    """
    Render a product of prime powers in table style.

    Args:
        factors: (base, exponent) pairs in display order
        residual: Unfactored cofactor appended when not 1

    Returns:
        String such as "2^14·7", or "1" for the empty product
    """
    parts = [format_power(b, e) for b, e in factors if e]
    if residual != 1:
        parts.append(str(residual))
    return "·".join(parts) if parts else "1"


def parse_range(text: str) -> tuple[int, int]:
    """
    Parse "a..b" (or a single integer) into an inclusive range.

    Raises:
        ValueError: If the text is malformed or the range is empty
    """
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"Empty range: {text}")
    return lo, hi


def format_json_output(data: dict[str, Any], pretty: bool = False) -> str:
    """
    Format data as a stable JSON string.

    Keys are sorted so identical data always serializes identically.

    Args:
        data: Dictionary to format
        pretty: Whether to pretty-print the JSON

    Returns:
        JSON formatted string
    """
    if pretty:
        return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True)
    return json.dumps(data, ensure_ascii=False, sort_keys=True)


def validate_output_path(path: str) -> tuple[bool, str]:
    """
    Validate if the output path is writable.

    Args:
        path: Path to the output file

    Returns:
        Tuple of (is_valid, error_message)
    """
    output_path = Path(path)

    parent_dir = output_path.parent
    if not parent_dir.exists():
        try:
            parent_dir.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            return False, f"Cannot create output directory: {e}"

    if output_path.is_dir():
        return False, f"Output path is a directory: {path}"

    if output_path.exists() and not os.access(path, os.W_OK):
        return False, f"Output file is not writable: {path}"

    return True, ""
