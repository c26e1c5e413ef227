"""Module presentations, elementary ideals, Fox calculus, torsion orders."""

import random

import pytest

from strongpoly import (
    LaurentPoly,
    ModulePresentation,
    ResourceBudgetExceeded,
    Ring,
    ZZ,
    blanchfield_self_link_witness,
    braid_components,
    braid_to_presentation,
    canonical_associate,
    divisorial_hull,
    elementary_ideal,
    eval_at_ones,
    fox_derivative,
    free_rank,
    laurent_member,
    presentation_rank,
    slice_polynomial,
    torsion_alexander_poly,
    verify_ribbon_presentation,
)
from strongpoly.groebner import IdealBasis

from conftest import mk

L1 = Ring(1, True, ZZ)
L2 = Ring(2, True, ZZ)


def lp(nvars, terms):
    return mk(nvars, terms, laurent=True)


def pres(rows, ncols=None):
    return ModulePresentation.from_rows(rows, ncols=ncols)


P = lp(2, {(0, 0): 1, (1, 0): 1, (0, 1): -1})  # 1 + x1 - x2
Q = lp(2, {(0, 0): 1, (1, 1): 1})  # 1 + x1*x2
T = lp(1, {(2,): 1, (1,): -1, (0,): 1})  # t^2 - t + 1


class TestPresentation:
    def test_requires_integral_laurent_ring(self):
        with pytest.raises(ValueError):
            ModulePresentation(Ring(2, False, ZZ), ((P.to_ordinary(),),), 1)
        with pytest.raises(ValueError):
            ModulePresentation(L2, (), 0)

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            ModulePresentation(L2, ((P, Q), (P,)), 2)

    def test_rank_goldens(self):
        z = LaurentPoly.zero(L2)
        assert presentation_rank(pres([[P, z], [z, Q]])) == 2
        assert presentation_rank(pres([[P, Q], [P + P, Q + Q]])) == 1
        assert presentation_rank(pres([[z, z]], ncols=2)) == 0
        assert presentation_rank(ModulePresentation(L2, (), 3)) == 0

    def test_free_rank(self):
        z = LaurentPoly.zero(L2)
        assert free_rank(pres([[P, z], [z, Q]])) == 0
        assert free_rank(pres([[P, z]], ncols=2)) == 1
        assert free_rank(ModulePresentation(L2, (), 2)) == 2

    def test_rank_is_transpose_invariant(self):
        rng = random.Random(3)
        for _ in range(10):
            rows = [
                [
                    lp(2, {(rng.randint(-1, 1), rng.randint(-1, 1)): rng.randint(-2, 2)})
                    for _ in range(3)
                ]
                for _ in range(2)
            ]
            a = pres([r[:] for r in rows], ncols=3)
            b = pres([[rows[i][j] for i in range(2)] for j in range(3)], ncols=2)
            assert presentation_rank(a) == presentation_rank(b)


class TestElementaryIdeals:
    def test_index_conventions(self):
        m = pres([[P, Q]], ncols=2)
        assert elementary_ideal(m, 2).generators[0].to_text() == "1"
        assert elementary_ideal(m, 0).generators == ()
        e1 = elementary_ideal(m, 1)
        assert len(e1.generators) == 2
        with pytest.raises(ValueError):
            elementary_ideal(m, -1)

    def test_generators_are_unit_normalized(self):
        shifted = P.mul_monomial((-3, 2), -1)
        e = elementary_ideal(pres([[shifted]]), 0)
        assert [g.to_text() for g in e.generators] == ["x1 - x2 + 1"]
        assert not e.ring.laurent

    def test_minor_budget(self):
        one = LaurentPoly.one(L2)
        big = pres([[one] * 16 for _ in range(16)])
        with pytest.raises(ResourceBudgetExceeded):
            elementary_ideal(big, 8)

    def test_nesting_chain(self):
        rng = random.Random(11)
        for _ in range(5):
            rows = [
                [
                    lp(2, {(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-2, 2)})
                    for _ in range(3)
                ]
                for _ in range(3)
            ]
            m = pres(rows, ncols=3)
            for k in range(0, 3):
                small = elementary_ideal(m, k)
                big = elementary_ideal(m, k + 1)
                for g in small.generators:
                    assert laurent_member(g.to_laurent(), list(big.generators))


class TestHull:
    def test_gcd_of_generators(self):
        R = lp(2, {(0, 0): 2, (1, 0): 1})
        I = IdealBasis.from_polys([(P * Q).to_ordinary(), (P * R).to_ordinary()])
        assert divisorial_hull(I) == canonical_associate(P)

    def test_coprime_generators_hull_to_one(self):
        a = lp(2, {(1, 0): 1, (0, 0): -1}).to_ordinary()
        b = lp(2, {(0, 1): 1, (0, 0): -1}).to_ordinary()
        assert divisorial_hull(IdealBasis.from_polys([a, b])).to_text() == "1"

    def test_zero_ideal_hulls_to_zero(self):
        assert divisorial_hull(IdealBasis(L2.ordinary_version(), ())).is_zero()

    def test_integer_content_is_dropped(self):
        I = IdealBasis.from_polys([P.to_ordinary().scale(6)])
        assert divisorial_hull(I) == canonical_associate(P)

    def test_canonical_associate(self):
        p = P.mul_monomial((-2, 1), -3)
        c = canonical_associate(p)
        assert c.to_text() == "x1 - x2 + 1"
        assert canonical_associate(c.to_laurent()) == c
        assert canonical_associate(lp(2, {(5, -2): -7})).to_text() == "1"
        assert canonical_associate(LaurentPoly.zero(L2)).is_zero()


class TestTorsionOrder:
    def test_diagonal_matrices(self):
        z = LaurentPoly.zero(L2)
        assert torsion_alexander_poly(pres([[P]])) == canonical_associate(P)
        assert torsion_alexander_poly(pres([[P, z], [z, Q]])) == canonical_associate(
            P * Q
        )
        # a zero column is a free summand and contributes no torsion
        assert torsion_alexander_poly(pres([[P, z]], ncols=2)) == canonical_associate(P)

    def test_invariance_under_row_operations(self):
        rng = random.Random(5)
        for _ in range(8):
            rows = [
                [
                    lp(2, {(rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-2, 2)})
                    for _ in range(2)
                ]
                for _ in range(3)
            ]
            m = pres(rows, ncols=2)
            ref = torsion_alexander_poly(m)
            # swap two rows
            swapped = pres([rows[1], rows[0], rows[2]], ncols=2)
            assert torsion_alexander_poly(swapped) == ref
            # scale a row by a unit monomial
            unit_scaled = pres(
                [[e.mul_monomial((1, -1), -1) for e in rows[0]], rows[1], rows[2]],
                ncols=2,
            )
            assert torsion_alexander_poly(unit_scaled) == ref
            # add a multiple of row 0 to row 1
            f = lp(2, {(1, 0): 2})
            bumped = pres(
                [rows[0], [a + f * b for a, b in zip(rows[1], rows[0])], rows[2]],
                ncols=2,
            )
            assert torsion_alexander_poly(bumped) == ref

    def test_invariance_under_stabilization(self):
        z = LaurentPoly.zero(L2)
        one = LaurentPoly.one(L2)
        m = pres([[P, Q], [Q, P]], ncols=2)
        stab = pres([[P, Q, z], [Q, P, z], [z, z, one]], ncols=3)
        assert torsion_alexander_poly(stab) == torsion_alexander_poly(m)
        assert free_rank(stab) == free_rank(m)


class TestFoxCalculus:
    def test_conjugation_golden(self):
        # d/dx (x y x^-1) = 1 - [xyx^-1] = 1 - y after abelianization
        d = fox_derivative([1, 2, -1], 1, L2, [0, 1])
        assert d == lp(2, {(0, 0): 1, (0, 1): -1})

    def test_inverse_golden(self):
        # d/dx (x^-1) = -x^-1
        d = fox_derivative([-1], 1, L1, [0])
        assert d == lp(1, {(-1,): -1})

    def test_missing_generator(self):
        assert fox_derivative([2, 2], 1, L2, [0, 1]).is_zero()

    def test_product_rule(self):
        rng = random.Random(9)

        def ab(word):
            e = [0, 0]
            for g in word:
                e[[0, 1][abs(g) - 1]] += 1 if g > 0 else -1
            return lp(2, {tuple(e): 1})

        for _ in range(20):
            u = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4))]
            v = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4))]
            for g in (1, 2):
                lhs = fox_derivative(u + v, g, L2, [0, 1])
                rhs = fox_derivative(u, g, L2, [0, 1]) + ab(u) * fox_derivative(
                    v, g, L2, [0, 1]
                )
                assert lhs == rhs


class TestBraidClosures:
    def test_component_counts(self):
        assert braid_components([1], 2)[0] == 1
        assert braid_components([], 2)[0] == 2
        assert braid_components([1, 1], 2)[0] == 2
        assert braid_components([1, 2], 3)[0] == 1
        assert braid_components([1, 1, 1], 2) == (1, (0, 0))

    def test_braid_validation(self):
        with pytest.raises(ValueError):
            braid_to_presentation([2], 2)
        with pytest.raises(ValueError):
            braid_to_presentation([0], 2)
        with pytest.raises(ValueError):
            braid_to_presentation([], 0)

    def test_trefoil(self):
        m = braid_to_presentation([1, 1, 1], 2)
        assert torsion_alexander_poly(m).to_text("t") == "t^2 - t + 1"
        assert free_rank(m) == 1  # one more than the link's free rank

    def test_trefoil_mirror(self):
        m = braid_to_presentation([-1, -1, -1], 2)
        assert torsion_alexander_poly(m).to_text("t") == "t^2 - t + 1"

    def test_figure_eight(self):
        m = braid_to_presentation([1, -2, 1, -2], 3)
        assert torsion_alexander_poly(m).to_text("t") == "t^2 - 3*t + 1"

    def test_unknots(self):
        assert torsion_alexander_poly(braid_to_presentation([1], 2)).to_text("t") == "1"
        assert torsion_alexander_poly(braid_to_presentation([], 1)).to_text("t") == "1"

    def test_two_component_unlink(self):
        m = braid_to_presentation([], 2)
        assert m.ring.nvars == 2
        assert free_rank(m) == 2  # link free rank 1: split unlink
        assert torsion_alexander_poly(m).to_text() == "1"

    def test_hopf_link(self):
        m = braid_to_presentation([1, 1], 2)
        assert m.ring.nvars == 2
        assert torsion_alexander_poly(m).to_text() == "1"

    def test_knot_sanity(self):
        for word, strands in [([1, 1, 1], 2), ([1, -2, 1, -2], 3), ([1, 1, 1, 1, 1], 2)]:
            d = torsion_alexander_poly(braid_to_presentation(word, strands))
            assert abs(eval_at_ones(d)) == 1
            assert canonical_associate(d.to_laurent().bar()) == d


class TestRibbonCertificate:
    def test_certificate_passes_for_family_member(self):
        report = verify_ribbon_presentation(P)
        assert report.ok
        assert len(report.steps) == 7
        assert all(flag for _, flag, _ in report.steps)
        assert report.product == slice_polynomial(P)
        assert report.alexander == canonical_associate(slice_polynomial(P))
        assert free_rank(report.presentation) == 0

    def test_product_frozen_terms(self):
        report = verify_ribbon_presentation(P)
        assert report.product.term_dict() == {
            (0, 0): 3,
            (1, 0): 1,
            (-1, 0): 1,
            (0, 1): -1,
            (0, -1): -1,
            (1, -1): -1,
            (-1, 1): -1,
        }

    def test_bar_associate_input_rejected(self):
        # bar(x1 + x2) is a unit multiple of x1 + x2, so the gate trips
        with pytest.raises(ValueError):
            verify_ribbon_presentation(lp(2, {(1, 0): 1, (0, 1): 1}))

    def test_reducible_but_bar_coprime_input_still_certifies(self):
        # the cyclic certificate only needs gcd(p, bar p) to be a unit
        report = verify_ribbon_presentation(P * P)
        assert report.ok
        assert report.alexander == canonical_associate(slice_polynomial(P * P))

    def test_several_family_members(self):
        from strongpoly import build_family_poly, family_corpus

        for spec in family_corpus(2)[:4]:
            p = build_family_poly(spec)
            report = verify_ribbon_presentation(p)
            assert report.ok
            assert report.alexander == canonical_associate(slice_polynomial(p))


class TestBlanchfield:
    def test_nonzero_witnesses(self):
        for f in (
            LaurentPoly.one(L2),
            lp(2, {(1, 0): 1}),
            lp(2, {(0, 0): 1, (1, 0): 1}),
        ):
            w = blanchfield_self_link_witness(P, f)
            assert not w.is_zero
            assert w.denominator == P * P.bar()

    def test_numerator_is_hermitian(self):
        f = lp(2, {(0, 0): 1, (1, 0): 1})
        w = blanchfield_self_link_witness(P, f)
        assert w.numerator.bar() == w.numerator

    def test_multiple_of_p_rejected(self):
        with pytest.raises(ValueError):
            blanchfield_self_link_witness(P, P * Q)

    def test_degenerate_p_rejected(self):
        with pytest.raises(ValueError):
            blanchfield_self_link_witness(P * Q, LaurentPoly.one(L2))
        with pytest.raises(ValueError):
            blanchfield_self_link_witness(LaurentPoly.one(L2), LaurentPoly.one(L2))
        with pytest.raises(ValueError):
            blanchfield_self_link_witness(lp(2, {(1, 0): 1, (0, 1): 1}), LaurentPoly.one(L2))
