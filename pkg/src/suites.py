"""Verification suites run by `qlattice verify`.

Each suite compares closed forms with values computed from the lattice and
records the outcome in a VerificationReport. Work that does not fit the
budget is recorded as skipped.
"""

import logging
import time
from functools import cached_property
from math import factorial
from typing import Any, Callable

from .finite_field import FieldCtx
from .gorenstein import (
    BasisSet,
    HessianAtOnes,
    LefschetzMatrix,
    build_basis_set,
    composition_holds,
    det_hessian_closed,
    ell_n_scalar,
    hessian_candidates,
    lefschetz_certificate,
    lefschetz_matrix,
    mu_matrix,
    verify_hessian_factorization,
)
from .incidence import (
    IncidencePair,
    build_incidence,
    det_A_closed,
    det_AB_alternative,
    det_B_closed,
    det_B_squared_closed,
    verify_square_identities,
)
from .lattice import VectorSpaceLattice, enum_level
from .linalg import IntMatrix, PhiSpec, det_exact, det_modular, det_phi_closed, mat_is_phi
from .oracles import counting_oracles
from .qcount import gl_order, p_count, q_binom, q_int, s_count, s_fixed, t_count, t_fixed
from .report import CheckResult, Finding, SkippedCheck, VerificationReport
from .utils import DEFAULT_BUDGET, BudgetExceededError

logger = logging.getLogger(__name__)

SUITES = ("counting", "incidence", "gorenstein")


def _common_value(values: list[int]) -> int | str:
    distinct = sorted(set(values))
    return distinct[0] if len(distinct) == 1 else "varies: " + ",".join(str(v) for v in distinct)


class SuiteRunner:
    """Run verification suites for one (n, q), sharing lattice objects between checks."""

    def __init__(self, n: int, ctx: FieldCtx, budget: int = DEFAULT_BUDGET,
                 workers: int = 1, timing: bool = True):
        """
        Initialize the runner.

        Args:
            n: Ambient dimension
            ctx: Field context
            budget: Budget passed to every brute-force oracle
            workers: Processes used for modular determinants
            timing: Record elapsed milliseconds per check (zero otherwise)
        """
        self.n = n
        self.ctx = ctx
        self.q = ctx.q
        self.budget = budget
        self.workers = workers
        self.timing = timing
        self.report: VerificationReport | None = None
        self._dets: dict[str, int] = {}

    @cached_property
    def lattice(self) -> VectorSpaceLattice:
        return VectorSpaceLattice(self.n, self.ctx, self.budget)

    @cached_property
    def pair(self) -> IncidencePair:
        return build_incidence(self.n, self.ctx, self.lattice)

    @cached_property
    def basis_set(self) -> BasisSet:
        return build_basis_set(self.n, self.ctx, self.budget, self.lattice)

    @cached_property
    def lefschetz(self) -> LefschetzMatrix:
        return lefschetz_matrix(self.n, self.ctx, self.budget, self.lattice)

    def run(self, suite: str = "all") -> VerificationReport:
        """
        Run one suite or all of them.

        Raises:
            ValueError: If the suite name is unknown
        """
        if suite != "all" and suite not in SUITES:
            raise ValueError(f"Unknown suite '{suite}', expected one of all, {', '.join(SUITES)}")
        self.report = VerificationReport(self.n, self.q, suite)
        for name in SUITES if suite == "all" else (suite,):
            logger.info(f"Running {name} suite for n={self.n}, q={self.q}")
            try:
                getattr(self, f"_{name}_suite")()
            except BudgetExceededError as e:
                logger.warning(f"Skipping the rest of the {name} suite: {e}")
                self._skip(f"{name} suite", str(e))
        return self.report

    def _check(self, name: str, predicted: Any, compute: Callable[[], Any],
               passed: Callable[[Any], bool] | None = None) -> Any:
        """Time `compute`, record a check, and return the computed value."""
        start = time.perf_counter()
        try:
            computed = compute()
        except BudgetExceededError as e:
            logger.warning(f"Skipping {name}: {e}")
            self._skip(name, str(e))
            return None
        ms = int((time.perf_counter() - start) * 1000) if self.timing else 0
        verdict = passed(computed) if passed else None
        result = CheckResult.compare(name, predicted, computed, ms, verdict)
        if not result.passed:
            logger.warning(f"Check failed: {name}: predicted {result.predicted}, computed {result.computed}")
        self.report.checks.append(result)
        return computed

    def _skip(self, name: str, reason: str) -> None:
        self.report.skipped.append(SkippedCheck(name, reason))

    def _note(self, name: str, detail: str) -> None:
        self.report.findings.append(Finding(name, detail))

    def _det(self, name: str, m: IntMatrix) -> int:
        """Signed determinant from both engines; disagreement clears engine_agreement."""
        if name not in self._dets:
            exact = det_exact(m)
            modular = det_modular(m, self.workers)
            if exact != modular:
                logger.error(f"Determinant engines disagree on {name}: {exact} vs {modular}")
                self.report.engine_agreement = False
                self._note(f"engines on {name}", f"exact {exact}, modular {modular}")
            self._dets[name] = exact
        return self._dets[name]

    def _counting_suite(self) -> None:
        n, q, ctx, budget = self.n, self.q, self.ctx, self.budget
        N = self.lattice.size
        self._check("N = [n]", q_int(n, q), lambda: N)
        if n >= 2:
            self._check("N = [n-1] + q^(n-1)", q_int(n - 1, q) + q ** (n - 1), lambda: N)
            self._check("N - 1 = q[n-1]", q * q_int(n - 1, q), lambda: N - 1)
        for j in range(n + 1):
            self._check(f"|level {j}| = q_binom(n,{j})", q_binom(n, j, q),
                        lambda j=j: len(enum_level(n, j, ctx, budget)))
        predicted = {
            "gl_order": gl_order(n, q),
            "t_count": t_count(n, q),
            "s_count": s_count(n, q),
            "p_count": p_count(n, q),
        }
        for j in range(n + 1):
            predicted[f"t_fixed(n,{j},q)"] = t_fixed(n, j, q)
            predicted[f"s_fixed(n,{j},q)"] = s_fixed(n, j, q)
        for name, oracle in counting_oracles(n, ctx, budget).items():
            self._check(name, predicted[name], oracle)

    def _incidence_suite(self) -> None:
        n, q = self.n, self.q
        if n < 2:
            self._skip("incidence suite", f"needs n >= 2, got {n}")
            return
        pair = self.pair
        A, B, N = pair.A, pair.B, pair.N
        self._check("A symmetric", True, A.is_symmetric)
        self._check("B symmetric", True, B.is_symmetric)
        self._check("A row sums = [n-1]", q_int(n - 1, q), lambda: _common_value(A.row_sums()))
        self._check("A column sums = [n-1]", q_int(n - 1, q), lambda: _common_value(A.col_sums()))
        self._check("B row sums = q^(n-1)", q ** (n - 1), lambda: _common_value(B.row_sums()))
        self._check("B column sums = q^(n-1)", q ** (n - 1), lambda: _common_value(B.col_sums()))
        self._check("A + B", PhiSpec(N, 1, 1), lambda: mat_is_phi(A + B))

        for check in verify_square_identities(pair).checks:
            self.report.checks.append(CheckResult.compare(check.name, check.predicted, check.witnessed))

        det_a = self._check("|det A|", det_A_closed(n, q), lambda: abs(self._det("A", A)))
        det_b = self._check("|det B|", det_B_closed(n, q), lambda: abs(self._det("B", B)))
        self._check("det(B)^2", det_B_squared_closed(n, q), lambda: det_b**2)
        self._check("|det A| via AB", det_A_closed(n, q), lambda: det_AB_alternative(n, q))
        a_squared = PhiSpec(N, q_int(n - 1, q), q_int(n - 2, q))
        self._check("det(A^2) = det Phi", det_phi_closed(a_squared), lambda: det_a**2)
        self._note("signed det A", f"{self._det('A', A)} under the canonical point order")
        self._note("signed det B", f"{self._det('B', B)} under the canonical point order")

    def _gorenstein_suite(self) -> None:
        n, q, ctx = self.n, self.q, self.ctx
        if n < 2:
            self._skip("gorenstein suite", f"needs n >= 2, got {n}")
            return
        pair = self.pair
        N = pair.N
        bs = self.basis_set

        self._check("|basis set| = s_count", s_count(n, q), lambda: len(bs))
        self._check("l^n scalar = n! |basis set|", ell_n_scalar(n, q), lambda: factorial(n) * len(bs))

        factorization = verify_hessian_factorization(n, ctx, self.budget, pair, bs)
        hessian: HessianAtOnes = factorization.hessian
        H = hessian.H
        self._check("H symmetric with zero diagonal", True,
                    lambda: H.is_symmetric() and not any(H.diagonal()))
        self._check("H = (t_(n-1,1,q)/(n-2)!) AB", mat_is_phi(factorization.scaled_product), lambda: hessian.phi,
                    passed=lambda _: factorization.factorization_holds)
        beta = hessian.off_diagonal
        self._check("H off-diagonal = s_fixed(n,2,q)", s_fixed(n, 2, q), lambda: beta)
        candidates = ", ".join(f"{k} = {v}" for k, v in hessian_candidates(n, q).items())
        matched = ", ".join(factorization.matched_candidates) or "none"
        self._note("hessian off-diagonal", f"witnessed {beta}; candidates {candidates}; matched {matched}")
        if beta is not None:
            self._check("|det H| = (N-1) beta^N", det_hessian_closed(n, q, beta), lambda: abs(self._det("H", H)))

        mu = mu_matrix(n, ctx, pair)
        self._check("mu diagonal marks anisotropic points", [int(bool(self._self_pairing(i))) for i in range(N)],
                    lambda: mu.diagonal())

        try:
            lefschetz = self.lefschetz
        except BudgetExceededError as e:
            logger.warning(f"Skipping the Lefschetz checks: {e}")
            self._skip("Lefschetz matrix", str(e))
            return
        self._check("M = t_(n-1,1,q) A", t_fixed(n - 1, 1, q), lambda: self._scalar_multiple(lefschetz.M, pair.A))
        det_a = abs(self._det("A", pair.A))
        self._check("|det M| = t^N |det A|", t_fixed(n - 1, 1, q) ** N * det_a,
                    lambda: abs(self._det("M", lefschetz.M)))
        self._check("B M = (n-2)! H", True, lambda: composition_holds(pair, lefschetz, hessian))
        self._check("strong Lefschetz in degrees 0 and 1", True,
                    lambda: lefschetz_certificate(n, q, lefschetz).holds)

    def _self_pairing(self, i: int) -> int:
        ctx = self.ctx
        acc = 0
        for c in self.lattice.points[i].coords:
            acc = ctx.add(acc, ctx.mul(c, c))
        return acc

    @staticmethod
    def _scalar_multiple(m: IntMatrix, base: IntMatrix) -> int | None:
        """c with m = c * base, or None."""
        for i, row in enumerate(base.rows):
            for j, x in enumerate(row):
                if x:
                    c, r = divmod(m[i, j], x)
                    return c if not r and m == base.scale(c) else None
        return None


def run_verification(n: int, ctx: FieldCtx, suite: str = "all", budget: int = DEFAULT_BUDGET,
                     workers: int = 1, timing: bool = True) -> VerificationReport:
    """Run the named suite at (n, q) and return its report."""
    return SuiteRunner(n, ctx, budget, workers, timing).run(suite)
