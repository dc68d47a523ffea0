from dataclasses import replace

import pytest

from gkmchar.lattice import dot
from gkmchar.laurent import LaurentPoly, RationalChar, eval_numeric
from gkmchar.characters import NotGeneric, localization_terms
from gkmchar.residues import (fiber_average_numeric, from_z_form, res_T,
                              res_half, to_z_form)
from gkmchar.randomgen import (random_class, random_generic_xi,
                               random_pole_free_point, random_torus_point,
                               random_vertex_star, standard_fixtures)


def _simple(num_exp, den):
    return RationalChar(LaurentPoly.monomial(num_exp), tuple(den))


def test_to_z_form_basic():
    f = _simple((-1, 0), [(1, 0)])
    z = to_z_form(f, (1, 0))
    assert z.numer == ((1, (0,), -1),)
    assert z.factors == (((0,), 1),)


def test_to_z_form_rejects_zero_pairing():
    f = _simple((0, 0), [(0, 1)])
    with pytest.raises(NotGeneric):
        to_z_form(f, (1, 0))


def test_to_z_form_annihilator_monomial():
    f = RationalChar(LaurentPoly.monomial((0, 5)), ())
    z = to_z_form(f, (1, 0))
    ((c, beta, k),) = z.numer
    assert c == 1 and k == 0
    assert z.factors == ()


def test_round_trip(rng):
    for _ in range(30):
        star, xi = random_vertex_star(rng.choice([2, 3]), rng.randint(1, 3),
                                      rng)
        z = to_z_form(star, xi)
        back = from_z_form(z)
        assert back.numerator == star.numerator
        assert sorted(back.denominator) == sorted(star.denominator)


def test_res_half_cp1_p_summand():
    z = to_z_form(_simple((-1, 0), [(1, 0)]), (1, 0))
    assert res_half(z, "minus") == LaurentPoly.one(1)
    assert res_half(z, "plus").is_zero()


def test_res_half_cp1_q_summand():
    z = to_z_form(_simple((1, 0), [(-1, 0)]), (1, 0))
    assert res_half(z, "minus").is_zero()
    assert res_half(z, "plus") == LaurentPoly.one(1)


def test_res_half_pure_monomial_vanishes():
    z = to_z_form(RationalChar(LaurentPoly.monomial((3, 1)), ()), (1, 0))
    assert res_half(z, "minus").is_zero()
    assert res_half(z, "plus").is_zero()


def test_res_T_cp1_summands():
    p = res_T(_simple((-1, 0), [(1, 0)]), (1, 0))
    assert p.total == LaurentPoly.constant(2, -1)
    q = res_T(_simple((1, 0), [(-1, 0)]), (1, 0))
    assert q.total == LaurentPoly.one(2)


def test_res_T_polynomial_input_is_zero():
    f = RationalChar(LaurentPoly(2, {(1, 2): 3, (0, 1): -1}), ())
    assert res_T(f, (1, 0)).total.is_zero()


def test_res_T_lands_in_annihilator(rng):
    for _ in range(20):
        star, xi = random_vertex_star(rng.choice([2, 3]), rng.randint(1, 3),
                                      rng)
        rv = res_T(star, xi)
        for e in rv.total.terms:
            assert dot(e, xi) == 0


def test_res_T_sign_flips_with_direction(rng):
    for _ in range(10):
        star, xi = random_vertex_star(2, rng.randint(1, 3), rng)
        a = res_T(star, xi).total
        b = res_T(star, tuple(-x for x in xi)).total
        assert a == -b


def test_res_T_linear_in_numerator(rng):
    den = ((1, 0), (1, 1))
    f = RationalChar(LaurentPoly(2, {(0, 1): 2, (1, -1): -3}), den)
    parts = LaurentPoly.zero(2)
    for e, c in f.numerator.terms.items():
        parts = parts + res_T(RationalChar(LaurentPoly.monomial(e, c), den),
                              (1, 0)).total
    assert parts == res_T(f, (1, 0)).total


def test_vanishing_laws_per_monomial(rng):
    for _ in range(100):
        star, xi = random_vertex_star(rng.choice([2, 3]), rng.randint(1, 3),
                                      rng)
        z = to_z_form(star, xi)
        neg_sum = sum(-k for _, k in z.factors if k < 0)
        pos_sum = sum(k for _, k in z.factors if k > 0)
        has_neg = any(k < 0 for _, k in z.factors)
        has_pos = any(k > 0 for _, k in z.factors)
        for c, beta, k in z.numer:
            mono = replace(z, numer=((c, beta, k),))
            if k > -neg_sum:
                assert res_half(mono, "minus").is_zero()
            if k < pos_sum:
                assert res_half(mono, "plus").is_zero()
            if k > 0:
                assert res_half(mono, "minus").is_zero()
            if k < 0:
                assert res_half(mono, "plus").is_zero()
            if k == 0 and has_neg:
                assert res_half(mono, "minus").is_zero()
            if k == 0 and has_pos:
                assert res_half(mono, "plus").is_zero()


def test_total_residue_vanishes_on_fixtures(rng):
    for name, (action, sym) in standard_fixtures().items():
        f = random_class(action, sym, rng)
        xi = random_generic_xi(action, rng)
        total = LaurentPoly.zero(action.n)
        for term in localization_terms(f).values():
            total = total + res_T(term, xi).total
        assert total.is_zero(), name


def test_fiber_average_of_constant(rng):
    f = RationalChar(LaurentPoly.one(2), ())
    g = random_torus_point(2, rng)
    assert abs(fiber_average_numeric(f, (3, 1), (1, 0), g) - 1) < 1e-10


def test_fiber_average_kills_nondivisible_pairing(rng):
    alpha, xi = (2, 0), (1, 0)  # order 2 fiber
    f = RationalChar(LaurentPoly.monomial((1, 3)), ())  # pairing 1, odd
    g = random_torus_point(2, rng)
    assert abs(fiber_average_numeric(f, alpha, xi, g)) < 1e-10


def test_fiber_average_zero_pairing_rejected(rng):
    f = RationalChar(LaurentPoly.one(2), ())
    with pytest.raises(NotGeneric):
        fiber_average_numeric(f, (0, 1), (1, 0), random_torus_point(2, rng))


def test_residue_equals_signed_fiber_average_sum(rng):
    for _ in range(10):
        star, xi = random_vertex_star(2, rng.randint(2, 3), rng)
        rv = res_T(star, xi)
        g = random_pole_free_point([star], 2, rng)
        lhs = eval_numeric(rv.total, g)
        rhs = 0j
        for j, w in enumerate(star.denominator):
            rest = tuple(u for i, u in enumerate(star.denominator) if i != j)
            hat = RationalChar(star.numerator, rest)
            sign = 1 if dot(w, xi) < 0 else -1
            rhs += sign * fiber_average_numeric(hat, w, xi, g)
        assert abs(lhs - rhs) < 1e-6
