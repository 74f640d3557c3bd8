from fractions import Fraction

import pytest

from ffperiods.fields import FqField
from ffperiods.series import TruncSeries
from ffperiods.towers import (
    LocalFieldTower,
    NotEisensteinError,
    TameAut,
    TowerBoundError,
    UnsupportedKummerError,
    derivative_congruence_check,
    mu_value,
    solve_additive_twist,
    solve_frobenius_recursion,
    solve_kummer,
    tame_apply,
    tame_group,
    newton_root,
)


def kummer_tower(q_v, e, **kw):
    t = LocalFieldTower.base(q_v, **kw)
    z = t.uniformizer()
    return t.extend_eisenstein([-z] + [t.zero()] * (e - 1), name="pi")


def test_base_valuation():
    t = LocalFieldTower.base(3)
    z = t.uniformizer()
    assert z.valuation() == 1
    assert (z * z).valuation() == 2


def test_tame_kummer_extension():
    t2 = kummer_tower(3, 2)
    assert t2.e_abs == 2
    pi = t2.uniformizer()
    assert pi.valuation() == Fraction(1, 2)
    # pi^2 = z: check against the lifted base uniformizer
    z_up = t2.level_uniformizer(0)
    assert (pi.pow(2) - z_up).is_zero_within_precision()


def test_unramified_extension():
    t = LocalFieldTower.base(2).extend_unramified(2)
    assert t.residue.q == 4
    assert t.e_abs == 1 and t.f_abs == 2


def test_artin_schreier_shaped_eisenstein_accepted():
    # X^2 + z X - z over q_v = 2: v(const) = 1, v(middle) = 1 > 0
    t = LocalFieldTower.base(2)
    z = t.uniformizer()
    t2 = t.extend_eisenstein([-z, z], name="pi")
    assert t2.e_abs == 2
    # the defining polynomial vanishes at the uniformizer
    pi = t2.uniformizer()
    val = pi.pow(2) + t2.lift(z) * pi - t2.lift(z)
    assert val.is_zero_within_precision()


def test_not_eisenstein_rejected():
    t = LocalFieldTower.base(3)
    z = t.uniformizer()
    with pytest.raises(NotEisensteinError):
        t.extend_eisenstein([-z * z])  # constant term has order 2
    with pytest.raises(NotEisensteinError):
        t.extend_eisenstein([-z, t.one()])  # unit middle coefficient


def test_reexpand_identity_and_roundtrip():
    t2 = kummer_tower(3, 2)
    top = t2.level_uniformizer(1)
    assert top.series.terms == {1: t2.residue.one}
    # round-trip: z's re-expansion satisfies X - pi^2 = 0
    z_up = t2.level_uniformizer(0)
    assert (z_up - t2.uniformizer().pow(2)).is_zero_within_precision()


def test_reexpand_artin_schreier_by_hand():
    # tower base l0 with X^q + theta X - l0, theta = -l0^(q-1), q = 2:
    # l0 = l1^2 + l1^3 + l1^4 + ... (geometric, verified by hand for 2 terms)
    t = LocalFieldTower.base(2)
    tower, ells = solve_frobenius_recursion(t, t.uniformizer(), 2, 1)
    # here l0 = zeta is the base uniformizer itself (qt - 1 = 1)
    l0 = tower.level_uniformizer(0)
    terms = l0.series.terms
    assert min(terms) == 2
    # first few coefficients are all 1: l1^2 + l1^3 + l1^4 ...
    for e in range(2, min(l0.series.prec, 8)):
        assert terms.get(e) == tower.residue.one


def test_tower_bound():
    t = LocalFieldTower.base(2, bound=4)
    z = t.uniformizer()
    t2 = t.extend_eisenstein([-z] + [t.zero()] * 2)  # degree 3
    with pytest.raises(TowerBoundError):
        t2.extend_eisenstein([-t2.uniformizer(), t2.lift(z)])


def test_solve_kummer_eisenstein_case():
    # q_v = 3: x^2 = -z gives a uniformizer of valuation 1/2
    t = LocalFieldTower.base(3)
    z = t.uniformizer()
    t2, root = solve_kummer(t, 2, -z)
    assert root.valuation() == Fraction(1, 2)
    assert (root.pow(2) + t2.lift(z)).is_zero_within_precision()


def test_solve_kummer_trivial_and_unramified_first():
    t = LocalFieldTower.base(2)
    z = t.uniformizer()
    t1, r1 = solve_kummer(t, 1, z)
    assert r1.series.terms == z.series.terms
    # m = 3 over q_v = 2: 3 | 2^2 - 1 forces the residue extension to F_4
    t3, r3 = solve_kummer(t, 3, z)
    assert t3.residue.q == 4
    assert r3.valuation() == Fraction(1, 3)
    assert (r3.pow(3) - t3.lift(z)).is_zero_within_precision()


def test_solve_kummer_in_field_unit_root():
    # x^2 = z^2 * unit over q_v = 3 stays in the field
    t = LocalFieldTower.base(3)
    z = t.uniformizer()
    a = z * z
    t2, r = solve_kummer(t, 2, a)
    assert t2 is t
    assert (r * r - a).is_zero_within_precision()


def test_solve_kummer_unsupported_order():
    t = LocalFieldTower.base(3)
    z = t.uniformizer()
    with pytest.raises(UnsupportedKummerError):
        solve_kummer(t, 2, z.pow(3))


def test_frobenius_recursion_valuations():
    # criterion-7 shape: v(l_n) = v(xi) qt^(-n) / (qt - 1)
    for q_v, qt in [(2, 2), (3, 3), (4, 4)]:
        t = LocalFieldTower.base(q_v)
        tower, ells = solve_frobenius_recursion(t, t.uniformizer(), qt, 2)
        for n, ell in enumerate(ells):
            assert ell.valuation() == Fraction(1, qt ** n * (qt - 1))


def test_frobenius_recursion_base_cases():
    # q_v=2, qt=2, N=0: l0 = -zeta = zeta in char 2
    t = LocalFieldTower.base(2)
    tower, ells = solve_frobenius_recursion(t, t.uniformizer(), 2, 0)
    assert tower is t
    assert ells[0].series.terms == t.uniformizer().series.terms
    # q_v=3, qt=3, N=0: v(l0) = 1/2
    t3 = LocalFieldTower.base(3)
    tower3, ells3 = solve_frobenius_recursion(t3, t3.uniformizer(), 3, 0)
    assert ells3[0].valuation() == Fraction(1, 2)
    # q_v=2, qt=2, N=1: v(l1) = 1/2
    t2 = LocalFieldTower.base(2)
    tower2, ells2 = solve_frobenius_recursion(t2, t2.uniformizer(), 2, 1)
    assert ells2[1].valuation() == Fraction(1, 2)


def test_defining_polynomials_vanish_at_uniformizers():
    t = LocalFieldTower.base(3)
    tower, ells = solve_frobenius_recursion(t, t.uniformizer(), 3, 2)
    xi = tower.level_uniformizer(0)
    for n in range(1, 3):
        lhs = ells[n].pow(3) + xi * ells[n] - ells[n - 1]
        assert lhs.is_zero_within_precision()
    assert (ells[0].pow(2) + xi).is_zero_within_precision()


def test_different_unramified_is_zero():
    t = LocalFieldTower.base(2).extend_unramified(3)
    assert t.different_valuation() == 0


def test_different_tame_kummer():
    t2 = kummer_tower(3, 2)
    assert t2.different_valuation() == Fraction(1, 2)


@pytest.mark.parametrize("e,q_v", [(2, 3), (3, 4), (4, 5), (5, 11), (6, 7), (7, 8), (8, 9)])
def test_different_tame_formula(e, q_v):
    # derivative oracle: for X^e - z the different is (e-1)/e
    t = kummer_tower(q_v, e, bound=16)
    assert t.different_valuation() == Fraction(e - 1, e)


def test_different_wild_artin_schreier():
    # X^2 + zX - z over q_v = 2: derivative is z in char 2, so v(D) = 1
    t = LocalFieldTower.base(2)
    z = t.uniformizer()
    t2 = t.extend_eisenstein([-z, z])
    assert t2.different_valuation() == 1


def test_valuation_homomorphism():
    t = kummer_tower(3, 2)
    pi = t.uniformizer()
    z = t.level_uniformizer(0)
    a = pi + z
    b = pi.pow(3) + z * pi
    assert (a * b).valuation() == a.valuation() + b.valuation()
    s = a + b
    assert s.valuation() >= min(a.valuation(), b.valuation())


def test_tame_aut_group_law_and_mu():
    # e=2 over q_v=3: mu(identity) = v(D) = 1/2, mu(inertia flip) = -1/2
    t = kummer_tower(3, 2)
    gid = TameAut(0, 0, 1, 2, 3)
    gflip = TameAut(0, 1, 1, 2, 3)
    assert mu_value(t, gid) == Fraction(1, 2)
    assert mu_value(t, gflip) == Fraction(-1, 2)
    # off inertia
    t4 = LocalFieldTower.base(2).extend_unramified(2)
    frob = TameAut(1, 0, 2, 1, 2)
    assert mu_value(t4, frob) == 0


@pytest.mark.parametrize("q_v,f,e", [(3, 1, 2), (2, 2, 3), (3, 2, 4), (2, 2, 1)])
def test_inertia_sum_zero(q_v, f, e):
    t = LocalFieldTower.base(q_v).extend_unramified(f)
    if e > 1:
        z = t.uniformizer()
        t = t.extend_eisenstein([-z] + [t.zero()] * (e - 1))
    total = Fraction(0)
    for g in tame_group(q_v, f, e):
        if g.a == 0:
            total += mu_value(t, g)
    assert total == 0


def test_tame_apply_respects_relations():
    # g(pi)^e must equal g(z) = z
    q_v, f, e = 2, 2, 3
    t = LocalFieldTower.base(q_v).extend_unramified(f)
    z = t.uniformizer()
    t = t.extend_eisenstein([-z] + [t.zero()] * (e - 1))
    for g in tame_group(q_v, f, e):
        gpi = tame_apply(t, g, t.uniformizer())
        assert (gpi.pow(e) - t.level_uniformizer(0)).is_zero_within_precision()


def test_tame_aut_composition_is_consistent_with_action():
    q_v, f, e = 2, 2, 3
    t = LocalFieldTower.base(q_v).extend_unramified(f)
    z = t.uniformizer()
    t = t.extend_eisenstein([-z] + [t.zero()] * (e - 1))
    pi = t.uniformizer()
    x = pi + t.level_uniformizer(0)
    for g in tame_group(q_v, f, e):
        for h in tame_group(q_v, f, e):
            # the fixed law composes left-factor-first
            lhs = tame_apply(t, g * h, x)
            rhs = tame_apply(t, h, tame_apply(t, g, x))
            assert (lhs - rhs).is_zero_within_precision()


def test_derivative_congruence_examples():
    F3 = FqField(3, 1)
    t = kummer_tower(3, 2)
    pi = t.uniformizer()
    # z = y: quotient is 1
    assert derivative_congruence_check(TruncSeries(F3, {1: 1}), pi)
    # z = y^2: (y^2 - pi^2)/(y - pi) = y + pi -> 2*pi = psi(2y)
    assert derivative_congruence_check(TruncSeries(F3, {2: 1}), pi)
    # z = y^3 in char 3: derivative 0, quotient y^2+y*pi+pi^2 -> 3 pi^2 = 0
    assert derivative_congruence_check(TruncSeries(F3, {3: 1}), pi)


def test_newton_root_simple():
    # sqrt of 1 + z over q_v = 3
    t = LocalFieldTower.base(3)
    a = t.one() + t.uniformizer()
    root = newton_root(t, [-a, t.zero(), t.one()], t.residue.one)
    assert ((root * root) - a).is_zero_within_precision()


def test_additive_twist_solver():
    # g - g^2 = z has the solution with residue 0
    t = LocalFieldTower.base(2)
    tower, g = solve_additive_twist(t, t.uniformizer(), 2)
    assert (g - g.pow(2) - tower.lift(t.uniformizer())).is_zero_within_precision()
    # unit right-hand side forcing a residue extension: g - g^2 = 1 over F_2
    tower2, g2 = solve_additive_twist(t, t.one(), 2)
    assert tower2.residue.q == 4
    assert (g2 - g2.pow(2) - tower2.one()).is_zero_within_precision()


def test_reexpand_down_function():
    from ffperiods.towers import reexpand_down

    t2 = kummer_tower(3, 2)
    z_up = reexpand_down(t2, 0, 8)
    assert (z_up - t2.uniformizer().pow(2)).is_zero_within_precision()
    assert reexpand_down(t2, 1, 4).series.terms == {1: t2.residue.one}
    with pytest.raises(ValueError):
        reexpand_down(t2, 0, 0)


from hypothesis import given, settings, strategies as st

_tower34 = None


def _hyp_tower():
    global _tower34
    if _tower34 is None:
        _tower34 = kummer_tower(3, 4, bound=8)
    return _tower34


small_elems = st.dictionaries(
    st.integers(min_value=-2, max_value=6),
    st.integers(min_value=0, max_value=2),
    min_size=1, max_size=4,
)


@given(small_elems, small_elems)
@settings(max_examples=40, deadline=None)
def test_valuation_multiplicative_property(ta, tb):
    t = _hyp_tower()
    a = t.element(ta)
    b = t.element(tb)
    if a.series.terms and b.series.terms:
        assert (a * b).valuation() == a.valuation() + b.valuation()
        s = a + b
        if s.series.terms:
            assert s.valuation() >= min(a.valuation(), b.valuation())
