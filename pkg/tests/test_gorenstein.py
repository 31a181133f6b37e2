"""Tests for the basis set, Hessian, pairing and Lefschetz matrices."""

from math import factorial

import pytest

from src.finite_field import field_new
from src.gorenstein import (
    BasisSet,
    build_basis_set,
    composition_holds,
    det_hessian_closed,
    dual_generator_text,
    ell_n_scalar,
    hessian_at_ones,
    hyperplane_monomials,
    lefschetz_certificate,
    lefschetz_matrix,
    mu_matrix,
    verify_hessian_factorization,
)
from src.incidence import build_incidence
from src.lattice import VectorSpaceLattice
from src.linalg import IntMatrix, PhiSpec, det_exact, det_modular, phi_matrix
from src.qcount import s_count
from src.utils import BudgetExceededError


class TestBasisSet:
    """Tests for basis enumeration."""

    def test_gf2_n3_has_28(self, gf2):
        bs = build_basis_set(3, gf2)
        assert len(bs) == 28
        assert bs.bases[0] == (0, 1, 3)

    def test_gf2_n2_all_pairs(self, gf2):
        assert build_basis_set(2, gf2).bases == ((0, 1), (0, 2), (1, 2))

    def test_gf3_n3(self, gf3):
        assert len(build_basis_set(3, gf3)) == 234

    @pytest.mark.parametrize("n,p,k", [(4, 2, 1), (2, 5, 1), (3, 2, 2)])
    def test_size_is_s_count(self, n, p, k):
        ctx = field_new(p, k)
        bs = build_basis_set(n, ctx)
        assert len(bs) == s_count(n, ctx.q)
        assert list(bs.bases) == sorted(bs.bases)

    def test_budget(self, gf3):
        with pytest.raises(BudgetExceededError):
            build_basis_set(4, gf3, budget=100)

    def test_text(self):
        bs = BasisSet(2, 2, ((0, 1), (1, 2)))
        assert bs.to_text() == "1 2\n2 3\n"

    def test_generator_text(self, gf2):
        text = dual_generator_text(build_basis_set(3, gf2))
        assert text.startswith("X1X2X4 + ")
        assert text.count("+") == 27


class TestHessian:
    """Tests for the Hessian at the all-ones point."""

    def test_gf2_n3(self, gf2):
        H = hessian_at_ones(build_basis_set(3, gf2)).H
        assert H == phi_matrix(PhiSpec(7, 0, 4))
        assert det_exact(H) == det_modular(H) == 98304

    def test_gf2_n4_off_diagonal(self, gf2):
        hessian = hessian_at_ones(build_basis_set(4, gf2))
        assert hessian.phi == PhiSpec(15, 0, 48)

    def test_factorization_gf2_n3(self, gf2):
        report = verify_hessian_factorization(3, gf2)
        assert report.factorization_holds
        assert report.matched_candidates == ["t_fixed(n,2,q)", "s_fixed(n,2,q)"]

    def test_factorization_adjudicates_gf2_n4(self, gf2):
        """Pair counts pick the unordered extension count."""
        report = verify_hessian_factorization(4, gf2)
        assert report.factorization_holds
        assert report.candidates == {"t_fixed(n,2,q)": 96, "s_fixed(n,2,q)": 48}
        assert report.matched_candidates == ["s_fixed(n,2,q)"]
        H = report.hessian.H
        assert abs(det_exact(H)) == det_hessian_closed(4, 2, 48) == 14 * 48**15
        assert det_modular(H) == det_exact(H)

    def test_factorization_gf3_n3(self, gf3):
        report = verify_hessian_factorization(3, gf3)
        assert report.factorization_holds
        assert report.hessian.H.is_symmetric()
        assert not any(report.hessian.H.diagonal())

    def test_det_closed(self):
        assert det_hessian_closed(3, 2, 4) == 98304
        assert det_hessian_closed(3, 2, 0) == 0


class TestMuAndLefschetz:
    """Tests for the pairing matrix and multiplication by powers of l."""

    def test_mu_is_b(self, gf2, pair_3_2, example_A_rows):
        mu = mu_matrix(3, gf2)
        assert mu == pair_3_2.B
        assert mu.diagonal() == [1, 1, 0, 1, 0, 0, 1]
        assert mu == phi_matrix(PhiSpec(7, 1, 1)) - IntMatrix.from_rows(example_A_rows)

    def test_mu_n2(self, gf2):
        mu = mu_matrix(2, gf2)
        assert mu.dim == 3
        assert mu.row_sums() == [2, 2, 2]

    def test_lefschetz_gf2_n3_is_2a(self, gf2, pair_3_2):
        lef = lefschetz_matrix(3, gf2)
        assert lef.scalar == 2
        assert lef.M == pair_3_2.A.scale(2)
        assert lef.matches(pair_3_2.A)

    def test_lefschetz_n2_is_a(self, gf3):
        lef = lefschetz_matrix(2, gf3)
        assert lef.scalar == 1
        assert lef.matches(build_incidence(2, gf3).A)

    def test_lefschetz_gf2_n4(self, gf2):
        pair = build_incidence(4, gf2)
        lef = lefschetz_matrix(4, gf2)
        assert lef.scalar == 24
        assert lef.matches(pair.A)
        assert abs(det_exact(lef.M)) == 24**15 * abs(det_exact(pair.A))

    def test_lefschetz_gf3_n3(self, gf3):
        assert lefschetz_matrix(3, gf3).matches(build_incidence(3, gf3).A)

    def test_lefschetz_budget(self, gf2):
        with pytest.raises(BudgetExceededError):
            lefschetz_matrix(4, gf2, budget=100)

    @pytest.mark.parametrize("n", [3, 4])
    def test_composition(self, gf2, n):
        pair = build_incidence(n, gf2)
        lef = lefschetz_matrix(n, gf2)
        hessian = hessian_at_ones(build_basis_set(n, gf2))
        assert composition_holds(pair, lef, hessian)

    def test_certificate(self, gf2):
        cert = lefschetz_certificate(3, 2, lefschetz_matrix(3, gf2))
        assert cert.ell_n == 168
        assert cert.det_M == 2**7 * -24
        assert cert.holds


class TestEllNScalar:
    """Tests for the scalar of l^n on the dual generator."""

    def test_values(self):
        assert ell_n_scalar(3, 2) == 168
        assert ell_n_scalar(1, 5) == 1
        assert ell_n_scalar(4, 2) == 20160

    def test_against_basis_set(self, gf2):
        bs = build_basis_set(4, gf2)
        assert ell_n_scalar(4, 2, bs) == factorial(4) * len(bs)

    def test_mismatch(self):
        with pytest.raises(ArithmeticError):
            ell_n_scalar(3, 2, BasisSet(3, 2, ((0, 1, 3),)))


class TestHyperplaneMonomials:
    """Tests for the degree n-1 monomial basis."""

    def test_gf2_n3(self, gf2):
        monomials = hyperplane_monomials(VectorSpaceLattice(3, gf2))
        one_based = [tuple(i + 1 for i in m) for m in monomials]
        assert one_based == [(2, 4), (1, 4), (3, 4), (1, 2), (2, 5), (1, 6), (3, 5)]

    def test_each_spans_its_hyperplane(self, gf3):
        lattice = VectorSpaceLattice(4, gf3)
        for j, m in enumerate(hyperplane_monomials(lattice)):
            assert lattice.hyperplane_owner(lattice.span_of(m)) == j
