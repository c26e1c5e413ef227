"""Buchberger engine: reduced bases, membership, radicals, trivial-zero test."""

import pytest
from hypothesis import given, settings

from strongpoly import (
    GBOptions,
    IdealBasis,
    LaurentPoly,
    QQ,
    ResourceBudgetExceeded,
    Ring,
    buchberger,
    laurent_member,
    only_trivial_solution,
)
from strongpoly.groebner import ideal_member, linear_rank, radical_member

from conftest import nonzero_poly_st

Q3 = Ring(3, False, QQ)


def basis(ring, *term_dicts):
    return IdealBasis.from_polys([LaurentPoly(ring, d) for d in term_dicts], ring)


def text_basis(G):
    return sorted(g.to_text() for g in G.polys)


class TestBuchberger:
    def test_twisted_cubic_reduced_basis(self):
        # <x1^2 - x2, x1^3 - x3> in grlex
        I = basis(Q3, {(2, 0, 0): 1, (0, 1, 0): -1}, {(3, 0, 0): 1, (0, 0, 1): -1})
        G = buchberger(I)
        assert text_basis(G) == [
            "x1*x2 - x3",
            "x1*x3 - x2^2",
            "x1^2 - x2",
            "x2^3 - x3^2",
        ]

    def test_unit_ideal_collapses_to_one(self):
        I = basis(Q3, {(1, 0, 0): 1}, {(1, 0, 0): 1, (0, 0, 0): 1})
        G = buchberger(I)
        assert text_basis(G) == ["1"]
        assert G.is_unit_ideal()

    def test_zero_ideal(self):
        G = buchberger(IdealBasis(Q3, ()))
        assert G.polys == ()
        assert not G.is_unit_ideal()

    def test_reduced_basis_is_input_order_invariant(self):
        gens = [
            {(2, 0, 0): 1, (0, 1, 0): -1},
            {(3, 0, 0): 1, (0, 0, 1): -1},
            {(1, 1, 0): 1, (0, 0, 1): -1},
        ]
        ref = text_basis(buchberger(basis(Q3, *gens)))
        assert text_basis(buchberger(basis(Q3, *reversed(gens)))) == ref

    def test_pair_budget_enforced(self):
        I = basis(
            Q3,
            {(2, 1, 0): 1, (0, 0, 2): -1},
            {(1, 2, 0): 1, (0, 0, 1): -3},
            {(0, 3, 1): 1, (1, 0, 0): 5},
        )
        with pytest.raises(ResourceBudgetExceeded):
            buchberger(I, GBOptions(max_pairs=1))


class TestMembership:
    def test_ideal_member_golden(self):
        I = basis(Q3, {(2, 0, 0): 1, (0, 1, 0): -1}, {(3, 0, 0): 1, (0, 0, 1): -1})
        G = buchberger(I)
        # x2^2 - x1*x3 vanishes on the curve (t, t^2, t^3)
        assert ideal_member(LaurentPoly(Q3, {(0, 2, 0): 1, (1, 0, 1): -1}), G)
        assert not ideal_member(LaurentPoly(Q3, {(0, 1, 0): 1}), G)

    @given(nonzero_poly_st(nvars=2, max_exp=2, max_terms=3))
    @settings(max_examples=25, deadline=None)
    def test_combinations_are_members(self, f):
        R = Ring(2, False, QQ)
        f = f.to_domain(QQ)
        g1 = LaurentPoly(R, {(1, 0): 1, (0, 1): -1})
        g2 = LaurentPoly(R, {(0, 2): 1, (0, 0): 1})
        G = buchberger(IdealBasis.from_polys([g1, g2], R))
        assert ideal_member(f * g1 + g2, G)

    def test_laurent_membership_sees_units(self):
        L2 = Ring(2, True, QQ)
        x1 = LaurentPoly(L2, {(1, 0): 1})
        # x1 is invertible, so the Laurent ideal it generates is everything
        assert laurent_member(LaurentPoly.one(L2), [x1])
        L3 = Ring(3, True, QQ)
        g = LaurentPoly(L3, {(1, 0, 0): 1, (0, 1, 0): -1})
        f = LaurentPoly(L3, {(-1, 1, 0): 1, (0, 0, 0): -1})
        # f = -x1^-1 * (x1 - x2)
        assert laurent_member(f, [g])
        assert not laurent_member(LaurentPoly(L3, {(0, 0, 1): 1}), [g])


class TestRadical:
    def test_radical_triple(self):
        R2 = Ring(2, False, QQ)
        x1 = LaurentPoly(R2, {(1, 0): 1})
        x2 = LaurentPoly(R2, {(0, 1): 1})
        assert radical_member(x1, IdealBasis.from_polys([x1 * x1], R2))
        assert not radical_member(x1, IdealBasis.from_polys([x2], R2))
        assert radical_member(
            x1 + x2, IdealBasis.from_polys([x1 * x1, x2 * x2], R2)
        )


class TestOnlyTrivialSolution:
    def test_full_variable_system(self):
        I = basis(Q3, {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1})
        assert only_trivial_solution(I)

    def test_squares_of_variables(self):
        I = basis(Q3, {(2, 0, 0): 1}, {(0, 2, 0): 1}, {(0, 0, 2): 1})
        assert only_trivial_solution(I)

    def test_missing_direction_gives_nontrivial_zero(self):
        # z2 free: (0, 0, 1) kills both generators
        I = basis(Q3, {(2, 0, 0): 1}, {(1, 1, 0): 1})
        assert not only_trivial_solution(I)

    def test_sign_variant(self):
        I = basis(Q3, {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): -1})
        assert only_trivial_solution(I)

    def test_rejects_non_homogeneous_input(self):
        I = basis(Q3, {(1, 0, 0): 1, (0, 0, 0): 1})
        with pytest.raises(ValueError):
            only_trivial_solution(I)

    def test_methods_agree(self):
        cases = [
            basis(Q3, {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}),
            basis(Q3, {(2, 0, 0): 1}, {(1, 1, 0): 1}),
            basis(Q3, {(2, 0, 0): 1}, {(0, 2, 0): 1}, {(0, 0, 2): 1}),
            basis(
                Q3,
                {(1, 0, 0): 1, (0, 1, 0): 1},
                {(0, 1, 0): 1, (0, 0, 1): 1},
                {(1, 0, 0): 1, (0, 0, 1): 1},
            ),
        ]
        for I in cases:
            assert only_trivial_solution(I, method="finiteness") == only_trivial_solution(
                I, method="radical"
            )

    def test_unknown_method_rejected(self):
        I = basis(Q3, {(1, 0, 0): 1})
        with pytest.raises(ValueError):
            only_trivial_solution(I, method="guess")


class TestLinearRank:
    def test_rank_golden(self):
        R2 = Ring(2, False, QQ)
        x1 = LaurentPoly(R2, {(1, 0): 1})
        x2 = LaurentPoly(R2, {(0, 1): 1})
        assert linear_rank([x1 + x2, (x1 + x2).scale(2)], 2) == 1
        assert linear_rank([x1 + x2, x1 - x2], 2) == 2
        assert linear_rank([], 2) == 0

    def test_rejects_nonlinear(self):
        R2 = Ring(2, False, QQ)
        with pytest.raises(ValueError):
            linear_rank([LaurentPoly(R2, {(2, 0): 1})], 2)
