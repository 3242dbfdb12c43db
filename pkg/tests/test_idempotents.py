import random

import pytest

from okubo.errors import (
    BadCharacteristic,
    BudgetExceeded,
    InfiniteField,
    NotIdempotent,
)
from okubo.fields import GF, rationals
from okubo.idempotents import (
    QUADRATIC,
    QUATERNIONIC,
    SINGULAR,
    census_summary,
    centralizer,
    classify_idempotent,
    enumerate_idempotents,
    find_idempotents_slice_search,
    fixed_space,
    is_idempotent,
    minpoly_check_char_not3,
    nonclassified_report,
    norm_rank_on,
    para_hurwitz_of,
    petersson_twist,
    tau_map,
    twist_report,
    unit_of,
)
from okubo.linalg import Matrix, Subspace
from okubo.models import build_split_okubo, distinguished_idempotent

# frozen census facts for GF(3), derived by two independent brute-force passes
GF3_TOTAL = 81
GF3_BY_TYPE = {QUATERNIONIC: 1, QUADRATIC: 72, SINGULAR: 8}

SINGULAR_WITNESS = [-1, 0, -1, 0, 0, -1, 1, 1]


class TestCensus:
    def test_total_and_membership(self, okubo_gf3, census_gf3):
        assert len(census_gf3) == GF3_TOTAL
        e = distinguished_idempotent(okubo_gf3)
        assert e in census_gf3
        for i in (0, 2, 4, 6):
            pair = okubo_gf3.basis_element(i) + okubo_gf3.basis_element(i + 1)
            assert pair in census_gf3
        assert okubo_gf3.element(SINGULAR_WITNESS) in census_gf3

    def test_all_are_idempotent_and_norm_one(self, okubo_gf3, census_gf3, gf3):
        for f in census_gf3:
            assert is_idempotent(okubo_gf3, f)
            assert okubo_gf3.norm(f) == gf3.one

    def test_budget(self, okubo_gf3):
        with pytest.raises(BudgetExceeded):
            enumerate_idempotents(okubo_gf3, budget=100)

    def test_infinite_field(self):
        algebra = build_split_okubo(rationals())
        with pytest.raises(InfiniteField):
            enumerate_idempotents(algebra)

    def test_enumeration_is_lexicographic(self, gf3, census_gf3):
        keys = [tuple(gf3.element_index(c) for c in f.coords) for f in census_gf3]
        assert keys == sorted(keys)


class TestTau:
    def test_hand_derived_value(self, okubo_gf3):
        # f = x(1,1) + x(-1,-1); both pairing terms vanish and
        # x(1,0)*f = -x(0,-1), so tau(x(1,0)) = x(0,-1)
        f = okubo_gf3.basis_element(4) + okubo_gf3.basis_element(5)
        tau = tau_map(okubo_gf3, f)
        image = okubo_gf3.element(tau.matvec(okubo_gf3.basis_element(0).coords))
        assert image == okubo_gf3.basis_element(3)

    def test_fixes_f(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        tau = tau_map(okubo_gf3, e)
        assert okubo_gf3.element(tau.matvec(e.coords)) == e

    def test_simplified_formula(self, okubo_gf3, gf3, census_gf3):
        # tau(x) = n(f,x) f - x*f
        rng = random.Random(67)
        for f in rng.sample(census_gf3, 12):
            tau = tau_map(okubo_gf3, f)
            cols = []
            for j in range(8):
                bj = okubo_gf3.basis_element(j)
                expect = f * okubo_gf3.norm_polar(f, bj) - okubo_gf3.multiply(bj, f)
                cols.append(expect.coords)
            assert tau == Matrix(gf3, list(zip(*cols)))

    def test_fixed_space_is_centralizer(self, okubo_gf3, census_gf3):
        rng = random.Random(68)
        for f in rng.sample(census_gf3, 8):
            assert fixed_space(tau_map(okubo_gf3, f)) == centralizer(okubo_gf3, f)

    def test_rejects_non_idempotent(self, okubo_gf3):
        with pytest.raises(NotIdempotent):
            tau_map(okubo_gf3, okubo_gf3.zero())
        with pytest.raises(NotIdempotent):
            tau_map(okubo_gf3, okubo_gf3.basis_element(0))


class TestCentralizer:
    def test_dim_of_e(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        assert centralizer(okubo_gf3, e).dim == 6

    def test_dim_of_pair_gf3(self, okubo_gf3):
        f = okubo_gf3.basis_element(4) + okubo_gf3.basis_element(5)
        assert centralizer(okubo_gf3, f).dim == 4

    def test_pair_gf7_dim4_nonsingular(self, okubo_gf7):
        # outside characteristic 3 the fixed subalgebra is a 4-dimensional
        # composition subalgebra, so the restricted norm is nonsingular
        f = okubo_gf7.basis_element(4) + okubo_gf7.basis_element(5)
        cent = centralizer(okubo_gf7, f)
        assert cent.dim == 4
        assert norm_rank_on(cent, okubo_gf7) == 4


class TestNormRank:
    def test_full_space(self, okubo_gf3, gf3):
        assert norm_rank_on(Subspace.full(gf3, 8), okubo_gf3) == 8

    def test_centralizer_of_e(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        assert norm_rank_on(centralizer(okubo_gf3, e), okubo_gf3) == 4

    def test_isotropic_line(self, okubo_gf3, gf3):
        line = Subspace.from_vectors(gf3, 8, [okubo_gf3.basis_element(0).coords])
        assert norm_rank_on(line, okubo_gf3) == 0

    def test_zero_subspace(self, okubo_gf3, gf3):
        assert norm_rank_on(Subspace.zero(gf3, 8), okubo_gf3) == 0

    def test_char2_exhaustive_branch(self, gf2):
        algebra = build_split_okubo(gf2)
        assert norm_rank_on(Subspace.full(gf2, 8), algebra) == 8
        line = Subspace.from_vectors(gf2, 8, [algebra.basis_element(0).coords])
        assert norm_rank_on(line, algebra) == 0
        # a hyperbolic plane keeps rank 2 even in characteristic 2
        plane = Subspace.from_vectors(
            gf2, 8,
            [algebra.basis_element(0).coords, algebra.basis_element(1).coords],
        )
        assert norm_rank_on(plane, algebra) == 2


class TestTwist:
    def test_unit_examples(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        twisted = petersson_twist(okubo_gf3, e)
        x10 = twisted.basis_element(0)
        assert twisted.multiply(twisted.element(e.coords), x10) == x10
        u = unit_of(twisted)
        assert u is not None and u.coords == e.coords

    def test_report_passes(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        report = twist_report(okubo_gf3, e, trials=500, seed=0)
        assert report.passed

    def test_quadratic_idempotent_twist(self, okubo_gf3):
        f = okubo_gf3.basis_element(0) + okubo_gf3.basis_element(1)
        assert twist_report(okubo_gf3, f, trials=200, seed=1).passed

    def test_char_not3_twist(self, okubo_gf7):
        f = okubo_gf7.basis_element(0) + okubo_gf7.basis_element(1)
        assert twist_report(okubo_gf7, f, trials=200, seed=2).passed

    def test_qw_twist_generic_path(self, okubo_qw):
        f = okubo_qw.basis_element(0) + okubo_qw.basis_element(1)
        assert twist_report(okubo_qw, f, trials=25, seed=3).passed

    def test_rejects_non_idempotent(self, okubo_gf3):
        with pytest.raises(NotIdempotent):
            petersson_twist(okubo_gf3, okubo_gf3.basis_element(0))


class TestParaHurwitz:
    def test_unit_in_commutative_center(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        twisted = petersson_twist(okubo_gf3, e)
        para = para_hurwitz_of(twisted)
        center = para.commutative_center()
        assert center.contains_vector(e.coords)
        assert center.dim >= 1

    def test_unit_squared(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        para = para_hurwitz_of(petersson_twist(okubo_gf3, e))
        one = para.element(e.coords)
        assert para.multiply(one, one) == one

    def test_not_isomorphic_to_okubo(self, okubo_gf3):
        # the commutative centers have different dimensions (0 vs >= 1)
        e = distinguished_idempotent(okubo_gf3)
        para = para_hurwitz_of(petersson_twist(okubo_gf3, e))
        assert okubo_gf3.commutative_center().dim == 0
        assert para.commutative_center().dim >= 1

    def test_needs_unit(self, okubo_gf3):
        with pytest.raises(ValueError):
            para_hurwitz_of(okubo_gf3)  # the Okubo product has no unit


class TestClassification:
    def test_e_quaternionic(self, okubo_gf3):
        e = distinguished_idempotent(okubo_gf3)
        report = classify_idempotent(okubo_gf3, e)
        assert report.type_tag == QUATERNIONIC
        assert report.centralizer_dim == 6 == report.tau_fixed_dim
        assert report.norm_rank == 4

    def test_pair_quadratic(self, okubo_gf3):
        f = okubo_gf3.basis_element(2) + okubo_gf3.basis_element(3)
        report = classify_idempotent(okubo_gf3, f)
        assert report.type_tag == QUADRATIC
        assert (report.centralizer_dim, report.norm_rank) == (4, 2)

    def test_singular_witness(self, okubo_gf3):
        report = classify_idempotent(okubo_gf3, okubo_gf3.element(SINGULAR_WITNESS))
        assert report.type_tag == SINGULAR
        assert (report.centralizer_dim, report.norm_rank) == (4, 1)

    def test_char_not3_rejected(self, okubo_gf7):
        f = okubo_gf7.basis_element(0) + okubo_gf7.basis_element(1)
        with pytest.raises(BadCharacteristic):
            classify_idempotent(okubo_gf7, f)

    def test_nonclassified_report(self, okubo_gf7, sl3_gf7, gf7):
        f = okubo_gf7.basis_element(0) + okubo_gf7.basis_element(1)
        rep = nonclassified_report(okubo_gf7, f, model=sl3_gf7)
        assert rep.type_tag == "nonclassified-char-not-3"
        assert rep.minpoly_degree == 2
        assert rep.norm_value == gf7.one


class TestCensusSummary:
    def test_counts_and_witness(self, okubo_gf3):
        summary = census_summary(okubo_gf3)
        assert summary.total == GF3_TOTAL
        assert summary.by_type == GF3_BY_TYPE
        assert summary.quaternionic_witness == ["1"] * 8
        assert summary.quaternionic_is_distinguished
        assert summary.anomalies == []
        assert summary.all_norms_one
        assert summary.dual_pass_consistent
        assert summary.passed

    def test_char_not3_rejected(self, okubo_gf7):
        with pytest.raises(BadCharacteristic):
            census_summary(okubo_gf7)


class TestMinpolyAndSliceSearch:
    def test_canonical_idempotent(self, sl3_gf7, gf7):
        w = sl3_gf7.omega
        scale = (w - w * w).inverse()
        mat = scale * Matrix.from_rows(gf7, [[2, 0, 0], [0, -1, 0], [0, 0, -1]])
        f = sl3_gf7.algebra.element(sl3_gf7.coords_of(mat))
        assert is_idempotent(sl3_gf7.algebra, f)
        assert minpoly_check_char_not3(sl3_gf7, f) == 2

    def test_pairs_have_degree_2(self, sl3_gf7):
        for i in (0, 2, 4, 6):
            f = sl3_gf7.algebra.basis_element(i) + sl3_gf7.algebra.basis_element(i + 1)
            assert minpoly_check_char_not3(sl3_gf7, f) == 2

    def test_char3_rejected(self, gf3, okubo_gf3):
        model = None
        with pytest.raises(BadCharacteristic):
            # fabricate the call through a small stand-in with char 3
            class Fake:
                field = gf3
                algebra = okubo_gf3

            minpoly_check_char_not3(Fake(), okubo_gf3.element([1] * 8))

    def test_slice_search_finds_distinct_idempotents(self, sl3_gf7):
        found = find_idempotents_slice_search(sl3_gf7.algebra, 20, seed=0)
        assert len(found) == 20
        assert len({f.coords for f in found}) == 20
        for f in found:
            assert is_idempotent(sl3_gf7.algebra, f)

    def test_slice_search_deterministic(self, sl3_gf7):
        a = find_idempotents_slice_search(sl3_gf7.algebra, 5, seed=9)
        b = find_idempotents_slice_search(sl3_gf7.algebra, 5, seed=9)
        assert [f.coords for f in a] == [f.coords for f in b]


def test_classification_invariant_under_tau_automorphisms(okubo_gf3, census_gf3):
    # a tau of one idempotent maps any idempotent to an idempotent with the
    # same (centralizer dim, norm rank) signature
    rng = random.Random(73)
    taus = [tau_map(okubo_gf3, f) for f in rng.sample(census_gf3, 4)]
    for g in rng.sample(census_gf3, 10):
        rep = classify_idempotent(okubo_gf3, g)
        for tau in taus:
            image = okubo_gf3.element(tau.matvec(g.coords))
            assert is_idempotent(okubo_gf3, image)
            irep = classify_idempotent(okubo_gf3, image)
            assert (irep.centralizer_dim, irep.norm_rank) == (
                rep.centralizer_dim,
                rep.norm_rank,
            )
            assert irep.type_tag == rep.type_tag


def test_sixth_power_of_left_multiplication(okubo_gf3, census_gf3, gf3):
    rng = random.Random(71)
    ident = Matrix.identity(gf3, 8)
    for f in rng.sample(census_gf3, 10):
        lf = okubo_gf3.left_mult_matrix(f)
        p = ident
        for _ in range(6):
            p = p @ lf
        assert p == ident
