"""
Table Exporter Module

Computes the determinants of A and B for a range of n at fixed q and renders
them as an aligned text table, CSV or JSON, with the factored values next to
their closed forms.
"""

import csv
import io
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from sympy import factorint

from .finite_field import FieldCtx
from .incidence import build_incidence, det_A_closed, det_A_exponent, det_B_closed, det_B_exponent
from .linalg import Factorization, IntMatrix, det_exact, det_modular, factorize
from .qcount import q_int
from .utils import DEFAULT_BUDGET, format_json_output, format_power_product

logger = logging.getLogger(__name__)

ENGINES = ("exact", "modular", "both")
FORMATS = ("text", "csv", "json")


def render_leading(f: Factorization, p: int) -> str:
    """Render |value| with the power of p first, e.g. "3^180·2^3·5"."""
    if f.sign == 0:
        return "0"
    lead = [(b, e) for b, e in f.factors if b == p]
    rest = [(b, e) for b, e in f.factors if b != p]
    return format_power_product(lead + rest, f.residual)


def _prime_power(q: int) -> tuple[int, int]:
    ((p, k),) = factorint(q).items()
    return int(p), int(k)


def closed_form_A(n: int, q: int) -> str:
    """|det A| as p^(ke)·[n-1] for q = p^k, e.g. "2^762·127"."""
    p, k = _prime_power(q)
    return format_power_product([(p, k * det_A_exponent(n, q))], q_int(n - 1, q))


def closed_form_B(n: int, q: int) -> str:
    """|det B| as p^(ke)·p^(k(n-1)) for q = p^k, e.g. "2^762·2^7"."""
    p, k = _prime_power(q)
    total = det_B_exponent(n, q)
    return format_power_product([(p, k * (total - (n - 1))), (p, k * (n - 1))])


@dataclass
class TableRow:
    """One n of the table. Skipped rows carry a reason and no determinants."""

    n: int
    N: int
    det_A: int | None = None
    det_B: int | None = None
    engines_agree: bool | None = None
    skipped: str | None = None

    def matches_closed_forms(self, q: int) -> bool | None:
        if self.skipped:
            return None
        return abs(self.det_A) == det_A_closed(self.n, q) and abs(self.det_B) == det_B_closed(self.n, q)


class TableExporter:
    """Compute and render determinant tables for a fixed q."""

    def __init__(self, ctx: FieldCtx, n_min: int, n_max: int, engine: str = "exact",
                 budget: int = DEFAULT_BUDGET, workers: int = 1):
        """
        Initialize the table exporter.

        Args:
            ctx: Field context
            n_min: Smallest n (>= 2)
            n_max: Largest n
            engine: Determinant engine: exact, modular or both
            budget: Per-cell bound on N^3 elimination steps
            workers: Processes used by the modular engine
        """
        if n_min < 2:
            raise ValueError(f"Table rows need n >= 2, got {n_min}")
        if engine not in ENGINES:
            raise ValueError(f"Unknown engine '{engine}', expected one of {', '.join(ENGINES)}")
        self.ctx = ctx
        self.q = ctx.q
        self.n_min = n_min
        self.n_max = n_max
        self.engine = engine
        self.budget = budget
        self.workers = workers
        self.rows: list[TableRow] | None = None

    def _determinant(self, m: IntMatrix) -> tuple[int, bool | None]:
        if self.engine == "exact":
            return det_exact(m), None
        if self.engine == "modular":
            return det_modular(m, self.workers), None
        exact = det_exact(m)
        return exact, exact == det_modular(m, self.workers)

    def compute(self) -> list[TableRow]:
        """Compute every row in order of n."""
        if self.rows is not None:
            return self.rows
        rows = []
        for n in range(self.n_min, self.n_max + 1):
            N = q_int(n, self.q)
            if N**3 > self.budget:
                reason = f"N^3 = {N**3} exceeds budget {self.budget}"
                logger.warning(f"Skipping n={n}, q={self.q}: {reason}")
                rows.append(TableRow(n, N, skipped=reason))
                continue
            start = time.perf_counter()
            pair = build_incidence(n, self.ctx)
            det_a, agree_a = self._determinant(pair.A)
            det_b, agree_b = self._determinant(pair.B)
            agree = None if agree_a is None else agree_a and agree_b
            if agree is False:
                logger.error(f"Determinant engines disagree at n={n}, q={self.q}")
            logger.debug(f"Cell n={n}, q={self.q} (N={N}) took {time.perf_counter() - start:.2f}s")
            rows.append(TableRow(n, N, det_a, det_b, agree))
        self.rows = rows
        return rows

    def _cells(self, row: TableRow) -> dict[str, str]:
        p = self.ctx.p
        if row.skipped:
            blank = "skipped"
            return {"n": str(row.n), "N": str(row.N), "|det A|": blank, "closed |det A|": closed_form_A(row.n, self.q),
                    "|det B|": blank, "closed |det B|": closed_form_B(row.n, self.q), "sign A": "", "sign B": "",
                    "match": ""}
        return {
            "n": str(row.n),
            "N": str(row.N),
            "|det A|": render_leading(factorize(row.det_A), p),
            "closed |det A|": closed_form_A(row.n, self.q),
            "|det B|": render_leading(factorize(row.det_B), p),
            "closed |det B|": closed_form_B(row.n, self.q),
            "sign A": "-" if row.det_A < 0 else "+",
            "sign B": "-" if row.det_B < 0 else "+",
            "match": "yes" if row.matches_closed_forms(self.q) else "NO",
        }

    def to_text(self) -> str:
        rows = [self._cells(r) for r in self.compute()]
        headers = list(rows[0]) if rows else []
        widths = {h: max([len(h)] + [len(r[h]) for r in rows]) for h in headers}
        lines = [f"q = {self.q}", "  ".join(h.ljust(widths[h]) for h in headers)]
        lines.append("  ".join("-" * widths[h] for h in headers))
        for r in rows:
            lines.append("  ".join(r[h].ljust(widths[h]) for h in headers).rstrip())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = [self._cells(r) for r in self.compute()]
        buffer = io.StringIO()
        if rows:
            writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buffer.getvalue()

    def to_dict(self) -> dict[str, Any]:
        out = []
        for row, cells in zip(self.compute(), (self._cells(r) for r in self.compute())):
            entry: dict[str, Any] = {
                "n": row.n,
                "N": row.N,
                "det_A": None if row.det_A is None else str(row.det_A),
                "det_B": None if row.det_B is None else str(row.det_B),
                "abs_det_A_factored": cells["|det A|"],
                "abs_det_B_factored": cells["|det B|"],
                "closed_det_A": cells["closed |det A|"],
                "closed_det_B": cells["closed |det B|"],
                "matches_closed_forms": row.matches_closed_forms(self.q),
                "skipped": row.skipped,
            }
            if self.engine == "both":
                entry["engines_agree"] = row.engines_agree
            out.append(entry)
        return {"q": self.q, "engine": self.engine, "rows": out}

    def render(self, fmt: str = "text", pretty: bool = False) -> str:
        if fmt not in FORMATS:
            raise ValueError(f"Unknown format '{fmt}', expected one of {', '.join(FORMATS)}")
        if fmt == "json":
            return format_json_output(self.to_dict(), pretty=pretty) + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()

    def export(self, output_path: str | Path, fmt: str = "text", pretty: bool = False) -> None:
        """
        Write the rendered table to a file.

        Args:
            output_path: Destination file
            fmt: text, csv or json
            pretty: Pretty-print JSON
        """
        output_path = Path(output_path)
        try:
            output_path.write_text(self.render(fmt, pretty), encoding='utf-8')
            logger.info(f"Table for q={self.q} written to {output_path}")
        except OSError as e:
            logger.error(f"Failed to write table to {output_path}: {e}")
            raise

    @property
    def all_match(self) -> bool:
        return all(r.matches_closed_forms(self.q) is not False for r in self.compute()) and not any(
            r.engines_agree is False for r in self.compute()
        )
