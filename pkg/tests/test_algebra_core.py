"""Structure constants, constructors, and structural invariants."""

import random
from fractions import Fraction as F

import pytest

from cotangent_lsa.algebra_core import (
    BasisLabel,
    LieAlgebra,
    LinearMap,
    Subspace,
    Z_INDEX,
    basis_vector,
    bracket,
    center,
    check_jacobi,
    cotangent,
    cotangent_filiform,
    cotangent_filiform_permutation,
    e_index,
    f_index,
    jordan_nilpotent_block,
    lower_central_series,
    nilpotency_step,
    relabeled,
    semidirect_sum,
    subspace_bracket,
    t_index,
    zero_vector,
)
from cotangent_lsa.errors import DimensionMismatch, NonSquareMatrix, SizeTooSmall


def abelian(dim):
    return LieAlgebra.from_triplets(
        dim, [BasisLabel.generic(f"x{i}") for i in range(dim)], [])


class TestLabels:
    def test_str_roundtrip(self):
        for lbl in (BasisLabel.t(), BasisLabel.z(), BasisLabel.e(3),
                    BasisLabel.f(12), BasisLabel.generic("t*")):
            assert BasisLabel.parse(str(lbl)) == lbl

    def test_bad_labels(self):
        with pytest.raises(ValueError):
            BasisLabel("e")
        with pytest.raises(ValueError):
            BasisLabel("generic")


class TestLinearMap:
    def test_identity_and_inverse(self):
        m = LinearMap.from_rows([[1, 2], [3, 5]])
        assert m @ m.inverse() == LinearMap.identity(2)
        assert m.det() == F(-1)

    def test_singular(self):
        m = LinearMap.from_rows([[1, 2], [2, 4]])
        assert not m.is_invertible()
        with pytest.raises(ValueError):
            m.inverse()

    def test_non_square_rejected(self):
        with pytest.raises(NonSquareMatrix):
            LinearMap.from_rows([[1, 2]])


class TestSubspace:
    def test_canonical_equality(self):
        a = Subspace.span([(F(1), F(1), F(0)), (F(0), F(2), F(0))], 3)
        b = Subspace.span([(F(3), F(0), F(0)), (F(1), F(1), F(0))], 3)
        assert a == b
        assert a.dim == 2

    def test_contains(self):
        s = Subspace.span([(F(1), F(0), F(1))], 3)
        assert s.contains((F(2), F(0), F(2)))
        assert not s.contains((F(1), F(1), F(1)))

    def test_zero_and_whole(self):
        assert Subspace.zero(4).dim == 0
        assert Subspace.whole(4).dim == 4


class TestBracket:
    def test_paper_table_entry(self):
        L = cotangent_filiform(2)
        t = basis_vector(L.dim, t_index(2))
        e2 = basis_vector(L.dim, e_index(2))
        assert bracket(L, t, e2) == basis_vector(L.dim, e_index(1))

    def test_antisymmetry_on_equal_args(self):
        L = cotangent_filiform(3)
        rng = random.Random(3)
        x = tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(L.dim))
        assert bracket(L, x, x) == zero_vector(L.dim)

    def test_e2_f3_gives_z(self):
        L = cotangent_filiform(3)
        e2 = basis_vector(L.dim, e_index(2))
        f3 = basis_vector(L.dim, f_index(3))
        assert bracket(L, e2, f3) == basis_vector(L.dim, Z_INDEX)

    def test_dimension_mismatch(self):
        L = cotangent_filiform(2)
        with pytest.raises(DimensionMismatch):
            bracket(L, (F(1),), basis_vector(L.dim, 0))


class TestJacobi:
    def test_abelian_passes(self):
        assert check_jacobi(abelian(4)).passed

    def test_model_algebra_passes(self):
        assert check_jacobi(cotangent_filiform(4)).passed

    def test_broken_bracket_fails_with_witness(self):
        # n = 2 with [e2, f2] = z replaced by [e2, f1] = z; brute-force
        # evaluation of every cyclic sum leaves (e2, f2, t) as the only
        # failing triple.
        L = cotangent_filiform(2)
        trips = [(i, j, k, c) for (i, j, k, c) in L.triplets()
                 if (i, j) != (e_index(2), f_index(2))]
        trips.append((f_index(1), e_index(2), Z_INDEX, F(-1)))  # [e2, f1] = z
        broken = LieAlgebra.from_triplets(L.dim, L.labels, trips)
        report = check_jacobi(broken)
        assert not report.passed
        assert [w.labels for w in report.witnesses] == [("e2", "f2", "t")]


class TestJordanBlock:
    def test_n2_matrix(self):
        assert jordan_nilpotent_block(2).rows == ((F(0), F(1)), (F(0), F(0)))

    def test_action_convention(self):
        J = jordan_nilpotent_block(3)
        assert J.apply(basis_vector(3, 2)) == basis_vector(3, 1)
        assert J.apply(basis_vector(3, 1)) == basis_vector(3, 0)
        assert J.apply(basis_vector(3, 0)) == zero_vector(3)

    def test_nilpotency_index(self):
        J = jordan_nilpotent_block(4)
        p = J @ J @ J
        assert p.rows != LinearMap.from_rows([[0] * 4] * 4).rows
        assert (p @ J).rows == tuple((F(0),) * 4 for _ in range(4))

    def test_too_small(self):
        with pytest.raises(SizeTooSmall):
            jordan_nilpotent_block(1)


class TestSemidirectSum:
    def test_zero_derivation_is_abelian(self):
        L = semidirect_sum([[0, 0], [0, 0]])
        assert L.dim == 3
        assert L.is_abelian()

    def test_jordan_brackets(self):
        L = semidirect_sum(jordan_nilpotent_block(3))
        t, e1, e2, e3 = (basis_vector(4, i) for i in range(4))
        assert bracket(L, t, e2) == e1
        assert bracket(L, t, e3) == e2
        assert bracket(L, e2, e3) == zero_vector(4)
        assert bracket(L, t, e1) == zero_vector(4)

    def test_jordan_step(self):
        L = semidirect_sum(jordan_nilpotent_block(5))
        assert nilpotency_step(L) == 5

    def test_non_square_rejected(self):
        with pytest.raises(NonSquareMatrix):
            semidirect_sum([[0, 1]])


class TestCotangent:
    def test_abelian_stays_abelian(self):
        T = cotangent(abelian(3))
        assert T.dim == 6
        assert T.is_abelian()

    def test_doubles_dimension(self):
        for n in (2, 3, 4):
            L = semidirect_sum(jordan_nilpotent_block(n))
            assert cotangent(L).dim == 2 * L.dim

    def test_cotangent_passes_jacobi(self):
        L = semidirect_sum(jordan_nilpotent_block(3))
        assert check_jacobi(cotangent(L)).passed

    @pytest.mark.parametrize("n", range(2, 7))
    def test_matches_direct_construction(self, n):
        # same structure tensor after the documented relabeling
        raw = cotangent(semidirect_sum(jordan_nilpotent_block(n)))
        direct = cotangent_filiform(n)
        rel = relabeled(raw, cotangent_filiform_permutation(n), direct.labels)
        assert rel.brackets == direct.brackets


class TestModelAlgebra:
    def test_n2_has_three_brackets(self):
        L = cotangent_filiform(2)
        assert L.dim == 6
        assert len(L.triplets()) == 3

    def test_labels_ordering(self):
        L = cotangent_filiform(3)
        assert [str(x) for x in L.labels] == [
            "z", "e1", "f1", "e2", "f2", "e3", "f3", "t"]

    def test_derived_subalgebra_bracket_is_z_line(self):
        # the z-producing pairs [e_{i+1}, f_{n-i+1}] sit inside the first
        # series term only for 2 <= i <= n-2, so the span is the z line
        # exactly when n >= 4 and vanishes for n = 2, 3
        for n in (4, 5, 6):
            L = cotangent_filiform(n)
            g1 = lower_central_series(L)[1]
            span = subspace_bracket(L, g1, g1)
            assert span == Subspace.span([basis_vector(L.dim, Z_INDEX)], L.dim)
        for n in (2, 3):
            L = cotangent_filiform(n)
            g1 = lower_central_series(L)[1]
            assert subspace_bracket(L, g1, g1).is_zero

    def test_too_small(self):
        with pytest.raises(SizeTooSmall):
            cotangent_filiform(1)


class TestLowerCentralSeries:
    def test_model_n3_dims(self):
        dims = [s.dim for s in lower_central_series(cotangent_filiform(3))]
        assert dims == [8, 5, 3, 0]

    def test_model_n2_dims(self):
        dims = [s.dim for s in lower_central_series(cotangent_filiform(2))]
        assert dims == [6, 3, 0]

    def test_abelian(self):
        dims = [s.dim for s in lower_central_series(abelian(5))]
        assert dims == [5, 0]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_terms_match_expected_spans(self, n):
        # independent construction of each term straight from the labels:
        # the k-th term is spanned by z and the first n-k e's and f's
        L = cotangent_filiform(n)
        series = lower_central_series(L)
        for k in range(1, n):
            gens = [basis_vector(L.dim, Z_INDEX)]
            gens += [basis_vector(L.dim, e_index(i)) for i in range(1, n - k + 1)]
            gens += [basis_vector(L.dim, f_index(i)) for i in range(1, n - k + 1)]
            assert series[k] == Subspace.span(gens, L.dim)

    def test_series_is_decreasing_chain_of_ideals(self):
        L = cotangent_filiform(4)
        series = lower_central_series(L)
        whole = Subspace.whole(L.dim)
        for prev, nxt in zip(series, series[1:]):
            assert nxt.dim < prev.dim
            moved = subspace_bracket(L, prev, whole)
            for row in moved.rows:
                assert nxt.contains(row)


class TestCenter:
    def test_model_n4(self):
        L = cotangent_filiform(4)
        expected = Subspace.span(
            [basis_vector(L.dim, Z_INDEX),
             basis_vector(L.dim, e_index(1)),
             basis_vector(L.dim, f_index(1))], L.dim)
        assert center(L) == expected

    def test_abelian_center_is_whole(self):
        assert center(abelian(4)) == Subspace.whole(4)

    def test_jordan_semidirect(self):
        L = semidirect_sum(jordan_nilpotent_block(3))
        assert center(L) == Subspace.span([basis_vector(4, 1)], 4)

    def test_center_equals_last_nonzero_series_term(self):
        for n in (2, 3, 4, 5):
            L = cotangent_filiform(n)
            series = lower_central_series(L)
            assert center(L) == series[-2]


class TestNilpotencyStep:
    def test_model_n5(self):
        assert nilpotency_step(cotangent_filiform(5)) == 5

    def test_abelian(self):
        assert nilpotency_step(abelian(3)) == 1

    def test_solvable_not_nilpotent(self):
        L = LieAlgebra.from_triplets(
            2, [BasisLabel.t(), BasisLabel.e(1)], [(0, 1, 1, F(1))])
        assert nilpotency_step(L) is None


class TestRelabeled:
    def test_permutation_validated(self):
        L = cotangent_filiform(2)
        with pytest.raises(ValueError):
            relabeled(L, (0,) * L.dim, L.labels)

    def test_involution(self):
        L = cotangent_filiform(2)
        perm = cotangent_filiform_permutation(2)
        raw = cotangent(semidirect_sum(jordan_nilpotent_block(2)))
        once = relabeled(raw, perm, L.labels)
        inv = [0] * L.dim
        for new, old in enumerate(perm):
            inv[old] = new
        back = relabeled(once, tuple(inv), raw.labels)
        assert back.brackets == raw.brackets
