"""Product axioms, translations, completeness, and isomorphism certificates."""

import random
from fractions import Fraction as F

import pytest

from cotangent_lsa.algebra_core import (
    BasisLabel,
    LieAlgebra,
    LinearMap,
    Z_INDEX,
    basis_vector,
    cotangent_filiform,
    e_index,
    f_index,
    t_index,
    zero_vector,
)
from cotangent_lsa.errors import AxiomsNotVerified, DimensionMismatch
from cotangent_lsa.families import FamilyParams, build_family_product, build_sign_swap_iso
from cotangent_lsa.lsa import (
    CompletenessVerdict,
    LsaProduct,
    check_associator_symmetry,
    check_bracket_compatibility,
    check_complete,
    check_left_hom,
    check_left_symmetric,
    left_translation,
    lsa_product,
    right_translation,
    triangularization_order,
    verify_lsa_isomorphism,
)


def family(n, alpha, beta):
    return build_family_product(FamilyParams(n, F(alpha), F(beta)))


def zero_product_on(base):
    return LsaProduct(base, {})


def abelian(dim):
    return LieAlgebra.from_triplets(
        dim, [BasisLabel.generic(f"x{i}") for i in range(dim)], [])


def gamma_perturbed_n3():
    """The (2,2) family product at n=3 with gamma_1 shifted by one.

    Both gamma_1 slots move together, so the commutator still reproduces the
    bracket and only the associator axiom can fail.
    """
    S = family(3, 2, 2)
    trips = []
    for (i, j, k, c) in S.triplets():
        if (i, j) == (e_index(2), f_index(3)):
            c = c + 1  # gamma_1 -> gamma_1 + 1
        elif (i, j) == (f_index(3), e_index(2)):
            c = c + 1  # (gamma_1 - 1) -> gamma_1
        trips.append((i, j, k, c))
    return LsaProduct.from_triplets(S.base, trips)


def line_with_idempotent():
    """One-dimensional abelian algebra with x*x = x."""
    base = abelian(1)
    return LsaProduct.from_triplets(base, [(0, 0, 0, F(1))])


class TestProductEvaluation:
    def test_t_times_e2(self):
        S = family(2, 2, 2)
        d = S.base.dim
        out = lsa_product(S, basis_vector(d, t_index(2)), basis_vector(d, e_index(2)))
        assert out == tuple(2 * x for x in basis_vector(d, e_index(1)))

    def test_e2_times_t(self):
        S = family(2, 2, 2)
        d = S.base.dim
        out = lsa_product(S, basis_vector(d, e_index(2)), basis_vector(d, t_index(2)))
        assert out == basis_vector(d, e_index(1))

    def test_bilinearity_zero(self):
        S = family(3, 2, 2)
        d = S.base.dim
        assert lsa_product(S, basis_vector(d, 3), zero_vector(d)) == zero_vector(d)

    def test_dimension_mismatch(self):
        S = family(2, 2, 2)
        with pytest.raises(DimensionMismatch):
            lsa_product(S, (F(1),), zero_vector(S.base.dim))

    def test_full_table_n2(self):
        # all six nonzero products of the (2, 2) member at n = 2:
        # gamma_1 = (alpha-1)(1*(beta+1)-1) / (2(alpha-1)(beta+1)-alpha+beta+2) = 2/8
        S = family(2, 2, 2)
        d = S.base.dim
        t, e1, e2 = t_index(2), e_index(1), e_index(2)
        f1, f2, z = f_index(1), f_index(2), Z_INDEX
        table = {
            (t, e2): {e1: F(2)},
            (e2, t): {e1: F(1)},
            (t, f2): {f1: F(2)},
            (f2, t): {f1: F(3)},
            (e2, f2): {z: F(1, 4)},
            (f2, e2): {z: F(-3, 4)},
        }
        assert dict(S.products) == table


class TestTranslations:
    def test_left_by_central_elements_is_zero(self):
        S = family(3, 2, 2)
        d = S.base.dim
        zero = LinearMap.from_rows([[0] * d] * d)
        for idx in (Z_INDEX, e_index(1), f_index(1)):
            assert left_translation(S, basis_vector(d, idx)) == zero

    def test_left_by_t_matrix_entries(self):
        # frozen from the closed forms at (n, alpha, beta) = (3, 2, 2):
        # alpha_1 = 2, alpha_2 = 3/2, beta_1 = 2, beta_2 = -5/2
        S = family(3, 2, 2)
        d = S.base.dim
        m = left_translation(S, basis_vector(d, t_index(3)))
        expected = {
            (e_index(1), e_index(2)): F(2),
            (e_index(2), e_index(3)): F(3, 2),
            (f_index(1), f_index(2)): F(2),
            (f_index(2), f_index(3)): F(-5, 2),
        }
        for r in range(d):
            for c in range(d):
                assert m.rows[r][c] == expected.get((r, c), F(0))

    def test_left_translation_is_linear(self):
        S = family(3, 3, 2)
        d = S.base.dim
        rng = random.Random(5)
        for _ in range(5):
            x = tuple(F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(d))
            y = tuple(F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(d))
            xy = tuple(a + b for a, b in zip(x, y))
            lx = left_translation(S, x)
            ly = left_translation(S, y)
            lxy = left_translation(S, xy)
            assert all(
                lxy.rows[r][c] == lx.rows[r][c] + ly.rows[r][c]
                for r in range(d) for c in range(d))

    def test_right_by_t_on_e2(self):
        S = family(2, 2, 2)
        d = S.base.dim
        m = right_translation(S, basis_vector(d, t_index(2)))
        assert m.apply(basis_vector(d, e_index(2))) == basis_vector(d, e_index(1))

    def test_right_of_zero_product(self):
        S = zero_product_on(abelian(3))
        assert right_translation(S, (F(1), F(2), F(3))) == LinearMap.from_rows(
            [[0] * 3] * 3)

    def test_ad_is_left_minus_right(self):
        from cotangent_lsa.algebra_core import bracket

        S = family(3, 2, 3)
        d = S.base.dim
        rng = random.Random(9)
        x = tuple(F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(d))
        lx = left_translation(S, x)
        rx = right_translation(S, x)
        for j in range(d):
            expected = bracket(S.base, x, basis_vector(d, j))
            got = tuple(lx.rows[r][j] - rx.rows[r][j] for r in range(d))
            assert got == expected


class TestAxiomChecks:
    def test_family_passes(self):
        S = family(4, F(3, 2), F(5, 2))
        assert check_left_symmetric(S).passed

    def test_zero_product_on_abelian_passes(self):
        S = zero_product_on(abelian(4))
        assert check_left_symmetric(S).passed
        assert check_left_hom(S).passed

    def test_gamma_perturbation_fails_with_witness(self):
        S = gamma_perturbed_n3()
        report = check_left_symmetric(S)
        assert not report.passed
        assert ("e3", "f3", "t") in [w.labels for w in report.witnesses]
        # the commutator half still holds: only the associator broke
        assert check_bracket_compatibility(S).passed
        assert not check_associator_symmetry(S).passed

    def test_left_hom_family_and_specific_commutator(self):
        S = family(3, 2, 2)
        d = S.base.dim
        assert check_left_hom(S).passed
        lt = left_translation(S, basis_vector(d, t_index(3)))
        le3 = left_translation(S, basis_vector(d, e_index(3)))
        le2 = left_translation(S, basis_vector(d, e_index(2)))
        assert (lt @ le3).rows != (le3 @ lt).rows
        comm = [[(lt @ le3).rows[r][c] - (le3 @ lt).rows[r][c] for c in range(d)]
                for r in range(d)]
        assert LinearMap.from_rows(comm) == le2

    def test_left_hom_fails_at_perturbed_pair(self):
        report = check_left_hom(gamma_perturbed_n3())
        assert not report.passed
        assert [w.labels for w in report.witnesses] == [("e3", "f3")]

    def test_zero_product_on_nonabelian(self):
        # left translations all vanish, so the commutator identity holds
        # vacuously; the bracket-compatibility axiom is what fails
        base = cotangent_filiform(2)
        S = zero_product_on(base)
        assert check_left_hom(S).passed
        assert not check_bracket_compatibility(S).passed

    def test_hom_iff_associator_when_brackets_match(self):
        # perturb both orientations of random entries by the same shift so
        # the commutator axiom is preserved, then the two checks must agree
        rng = random.Random(21)
        for _ in range(12):
            S = family(3, 2, 2)
            trips = {(i, j, k): c for (i, j, k, c) in S.triplets()}
            for _ in range(rng.randint(1, 3)):
                i = rng.randrange(S.base.dim)
                j = rng.randrange(S.base.dim)
                k = rng.randrange(S.base.dim)
                shift = F(rng.randint(1, 3), rng.randint(1, 2))
                trips[(i, j, k)] = trips.get((i, j, k), F(0)) + shift
                trips[(j, i, k)] = trips.get((j, i, k), F(0)) + shift
            perturbed = LsaProduct.from_triplets(
                S.base, [(i, j, k, c) for (i, j, k), c in trips.items()])
            assert check_bracket_compatibility(perturbed).passed
            hom = check_left_hom(perturbed).passed
            assoc = check_associator_symmetry(perturbed).passed
            assert hom == assoc


class TestCompleteness:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_family_triangularizes(self, n):
        result = check_complete(family(n, 2, 2))
        assert result.verdict is CompletenessVerdict.COMPLETE_BY_TRIANGULARIZATION
        assert result.order is not None

    def test_both_paths_agree_on_family(self):
        for n in (2, 3, 4):
            S = family(n, F(5, 2), F(3, 2))
            assert triangularization_order(S) is not None
            traced = check_complete(S, method="trace")
            assert traced.verdict is CompletenessVerdict.COMPLETE_BY_TRACE_CRITERION

    def test_idempotent_line_not_complete(self):
        result = check_complete(line_with_idempotent())
        assert result.verdict is CompletenessVerdict.NOT_COMPLETE
        assert result.witness.point == (F(1),)
        assert result.witness.power == 1
        assert result.witness.trace_value == F(1)

    def test_zero_product_triangularizes(self):
        result = check_complete(zero_product_on(abelian(3)))
        assert result.verdict is CompletenessVerdict.COMPLETE_BY_TRIANGULARIZATION

    def test_axioms_enforced(self):
        with pytest.raises(AxiomsNotVerified):
            check_complete(gamma_perturbed_n3())

    def test_family_order_is_strictly_lowering(self):
        # the documented ordering t, e_n, f_n, ..., e_1, f_1, z
        S = family(3, 2, 2)
        order = triangularization_order(S)
        labels = [str(S.base.labels[i]) for i in order]
        assert labels == ["t", "e3", "f3", "e2", "f2", "e1", "f1", "z"]
        pos = {idx: p for p, idx in enumerate(order)}
        for (i, _j), column in S.products.items():
            for k in column:
                assert pos[k] > pos[i]


class TestIsomorphismCertificates:
    def test_identity_on_same_product(self):
        S = family(3, 2, 2)
        phi = LinearMap.identity(S.base.dim)
        assert verify_lsa_isomorphism(S, S, phi).passed

    def test_sign_swap_between_mirror_members(self):
        S = family(3, 2, 2)
        S2 = family(3, -2, -2)
        phi = build_sign_swap_iso(3)
        assert verify_lsa_isomorphism(S, S2, phi).passed

    def test_flipped_t_sign_fails(self):
        S = family(3, 2, 2)
        S2 = family(3, -2, -2)
        phi = build_sign_swap_iso(3)
        rows = [list(r) for r in phi.rows]
        t = t_index(3)
        rows[t][t] = F(-1)
        bad = LinearMap.from_rows(rows)
        report = verify_lsa_isomorphism(S, S2, bad)
        assert not report.passed
        assert any(set(w.labels) == {"t", "e2"} for w in report.witnesses)

    def test_singular_certificate_fails(self):
        S = family(2, 2, 2)
        d = S.base.dim
        report = verify_lsa_isomorphism(S, S, LinearMap.from_rows([[0] * d] * d))
        assert not report.passed
        assert "singular" in report.witnesses[0].detail

    def test_pass_implies_inverse_passes(self):
        S = family(4, 2, 2)
        S2 = family(4, -2, -2)
        phi = build_sign_swap_iso(4)
        assert verify_lsa_isomorphism(S, S2, phi).passed
        assert verify_lsa_isomorphism(S2, S, phi.inverse()).passed

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            verify_lsa_isomorphism(family(2, 2, 2), family(3, 2, 2),
                                   LinearMap.identity(6))
