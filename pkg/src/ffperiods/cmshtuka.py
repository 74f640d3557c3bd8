"""Local shtukas with complex multiplication in standard form and their
period elements.

A CM algebra is a product of local components, each described by its residue
degree f, ramification index e and tameness.  Tame components use the pure
Kummer model y^e = z: the embeddings are (j mod f, k mod e), sending y to
w^k pi for the canonical generator w of mu_e and the chosen root pi of
X^e - z.  Wild components carry no explicit model here; they participate
through user-supplied valuation tables only.

The central computation adjoins the recursion family l_0^(qt-1) = -xi,
l_n^qt + xi l_n = l_(n-1) for xi = phi(y), forms the eigencomponent period

    (y - phi(y))^[j(psi) = j(phi)] * sum_n l_n^(q_v^s) y^n   at   y = psi(y) + w,

s = (j(psi) - j(phi)) mod f, and re-expands it in powers of z - zeta.  The
two canonical outputs are the (z-zeta)-order and the valuation of the
leading coefficient; the element itself is determined only up to the
documented unit ambiguity and is kept for internal consistency checks.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .coeffseries import CoeffSeries, poly_at_series, reversion
from .fields import factor_prime_power
from .lfunctions import (
    LocalGaloisDatum,
    TameEmbedding,
    act_on_embedding,
    cm_characters,
    indicator_pair_function,
    mu_art_v,
    z_v_at_one,
)
from .series import TruncSeries
from .towers import (
    DEFAULT_TOWER_BOUND,
    LocalFieldTower,
    TowerElem,
    TowerError,
    solve_additive_twist,
    solve_frobenius_recursion,
    unit_nth_root_with_extension,
)


class MixedComponentError(ValueError):
    pass


class WildComponentError(ValueError):
    pass


class AmbiguousLeadingTermError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CMComponent:
    f: int
    e: int
    tame: bool = True
    diff_valuation: Fraction = None
    pairwise: tuple = None  # ((k1, k2, value), ...) for wild components

    def __post_init__(self):
        if self.f < 1 or self.e < 1:
            raise ValueError("f and e must be positive")

    def degree(self):
        return self.f * self.e

    def pairwise_value(self, k1, k2):
        if self.pairwise is None:
            raise WildComponentError("wild component needs the pairwise table")
        for a, b, v in self.pairwise:
            if (a, b) == (k1, k2) or (a, b) == (k2, k1):
                return Fraction(v)
        raise WildComponentError("pairwise value (%s, %s) missing" % (k1, k2))


class CMAlgebra:
    """E_v = product of local components; q_v the base residue cardinality."""

    def __init__(self, q_v, components):
        self.q_v = q_v
        self.p = factor_prime_power(q_v)[0]
        self.components = tuple(components)
        for c in self.components:
            if c.tame:
                if c.e > 1 and (q_v ** c.f - 1) % c.e != 0:
                    raise ValueError(
                        "tame component needs e | q_v^f - 1 (e=%d, q_v^f=%d)"
                        % (c.e, q_v ** c.f)
                    )
                if c.e % self.p == 0:
                    raise ValueError("tame component cannot have p | e")

    def dim(self):
        return sum(c.degree() for c in self.components)

    def q_tilde(self, i):
        return self.q_v ** self.components[i].f

    def embeddings(self, i=None):
        out = []
        comps = range(len(self.components)) if i is None else [i]
        for ci in comps:
            c = self.components[ci]
            for j in range(c.f):
                for k in range(c.e):
                    out.append(Embedding(ci, j, k))
        return out


@dataclass(frozen=True)
class Embedding:
    i: int
    j: int
    k: int

    def to_tame(self, cm):
        c = cm.components[self.i]
        return TameEmbedding(self.j, self.k, c.f, c.e)


def frobenius_distance(cm, psi, phi):
    """(j(psi), j(phi)): the representative of j(psi) - j(phi) in 0..f-1."""
    return (psi.j - phi.j) % cm.components[psi.i].f


class LocalShtukaStd:
    """Standard form: per (i, j) the twist is eps_(i,j) times the product of
    (y - phi(y))^d_phi over the embeddings phi with that (i, j)."""

    def __init__(self, cm, cm_type, eps=None):
        self.cm = cm
        self.cm_type = {e: int(d) for e, d in dict(cm_type).items()}
        for emb in self.cm_type:
            if emb.i >= len(cm.components):
                raise ValueError("CM-type references a missing component")
        self.eps = dict(eps or {})
        for (i, j), series in self.eps.items():
            if 0 not in series.terms:
                raise ValueError("eps_(%d,%d) must be a unit power series" % (i, j))

    def d(self, emb):
        return self.cm_type.get(emb, 0)

    def cm_type_readback(self):
        return {emb: self.d(emb) for emb in self.cm.embeddings() if self.d(emb)}

    def eps_series(self, i, j):
        return self.eps.get((i, j))

    def tau_poly(self, i, j, tower=None, bound=DEFAULT_TOWER_BOUND):
        """tau_(i,j) without its eps factor, as a polynomial in y with
        coefficients in the component tower (d_phi >= 0 only)."""
        c = self.cm.components[i]
        if not c.tame:
            raise WildComponentError("explicit tau needs a tame component")
        if tower is None:
            tower, pi, _ = component_tower(self.cm, i, bound=bound)
        else:
            pi = component_uniformizer(tower, c)
        out = CoeffSeries.one(tower)
        for emb in self.cm.embeddings(i):
            if emb.j != j or self.d(emb) == 0:
                continue
            dval = self.d(emb)
            if dval < 0:
                raise ValueError("tau_poly displays effective types only")
            phi_y = embedding_value(tower, self.cm, emb, pi)
            lin = CoeffSeries(tower, {0: -phi_y, 1: tower.one()})
            out = out * lin.pow(dval)
        return out


def std_shtuka(cm, phi_type, eps=None):
    """Build the standard-form shtuka; the CM-type must read back verbatim."""
    sh = LocalShtukaStd(cm, phi_type, eps)
    assert sh.cm_type_readback() == {e: d for e, d in dict(phi_type).items() if d}
    return sh


# ---------------------------------------------------------------------------
# towers of a component, embedding values


def component_tower(cm, i, bound=DEFAULT_TOWER_BOUND, prec=None):
    """(tower, pi, omega): unramified-then-Kummer tower of component i; pi is
    the chosen root of X^e - z (z itself when e = 1), omega generates mu_e."""
    c = cm.components[i]
    if not c.tame:
        raise WildComponentError("explicit towers exist only for tame components")
    tower = LocalFieldTower.base(cm.q_v, bound=bound, prec=prec or 32)
    tower = tower.extend_unramified(c.f)
    if c.e > 1:
        z = tower.uniformizer()
        tower = tower.extend_eisenstein([-z] + [tower.zero()] * (c.e - 1), name="pi")
    pi = tower.uniformizer()
    return tower, pi, _omega_or_one(tower, c.e)


def component_uniformizer(tower, c):
    """The component's Kummer uniformizer inside a taller tower."""
    return tower.level_uniformizer(1 if c.e > 1 else 0)


def _omega_or_one(tower, e):
    return tower.residue.root_of_unity(e) if e > 1 else tower.residue.one


def embedding_value(tower, cm, emb, pi):
    """psi(y) = omega^k pi in the given tower."""
    c = cm.components[emb.i]
    pi = tower.lift_from(pi)
    if c.e == 1 or emb.k == 0:
        return pi
    omega = _omega_or_one(tower, c.e)
    return pi.scale_coeff(omega ** emb.k)


# ---------------------------------------------------------------------------
# the recursion family and its defining property


@dataclass
class RecursionFamily:
    """Solution family of sigma^f(l+) = (y - xi) l+ with xi = phi(y)."""

    tower: LocalFieldTower
    xi: TowerElem
    q_tilde: int
    ells: list
    rescale: list = None  # optional residue-constant multiplier (a_0 != 0)

    def depth(self):
        return len(self.ells) - 1

    def coefficients(self):
        if not self.rescale:
            return list(self.ells)
        out = []
        for n in range(len(self.ells)):
            acc = self.tower.zero()
            for j, a in enumerate(self.rescale):
                if j > n or a.is_zero():
                    continue
                acc = acc + self.ells[n - j].scale_coeff(a)
            out.append(acc)
        return out

    def verify_tau_property(self):
        """l_0^qt = -xi l_0 and l_n^qt + xi l_n = l_(n-1), within precision."""
        qt = self.q_tilde
        coeffs = self.coefficients()
        rel = coeffs[0].pow(qt) + self.xi * coeffs[0]
        if not rel.is_zero_within_precision():
            return False
        for n in range(1, len(coeffs)):
            rel = coeffs[n].pow(qt) + self.xi * coeffs[n] - coeffs[n - 1]
            if not rel.is_zero_within_precision():
                return False
        return True


def recursion_family(cm, phi, depth, bound=DEFAULT_TOWER_BOUND, prec=None,
                     rescale=None, base_tower=None):
    c = cm.components[phi.i]
    if not c.tame:
        raise WildComponentError("the series route needs a tame component")
    if base_tower is None:
        tower, pi, _ = component_tower(cm, phi.i, bound=bound, prec=prec)
    else:
        tower = base_tower
        pi = component_uniformizer(tower, c)
    xi = embedding_value(tower, cm, phi, pi)
    qt = cm.q_tilde(phi.i)
    tower, ells = solve_frobenius_recursion(tower, xi, qt, depth)
    xi = tower.lift_from(xi)
    rescale_elems = None
    if rescale is not None:
        rescale_elems = [tower.residue.elem(a) for a in rescale]
        if rescale_elems[0].is_zero():
            raise ValueError("rescaling unit must have a nonzero constant term")
    fam = RecursionFamily(tower, xi, qt, ells, rescale_elems)
    if not fam.verify_tau_property():
        raise TowerError("recursion family fails its defining relation")
    return fam


def max_recursion_depth(cm, i, bound=DEFAULT_TOWER_BOUND, cap=3):
    """Largest depth <= cap whose recursion tower stays within the bound."""
    c = cm.components[i]
    qt = cm.q_tilde(i)
    base = c.f * c.e * max(qt - 1, 1)
    if base > bound:
        raise TowerError("even depth 0 exceeds the tower bound")
    n = 0
    while n < cap and base * qt ** (n + 1) <= bound:
        n += 1
    return n


# ---------------------------------------------------------------------------
# period elements


@dataclass
class PeriodElement:
    """A truncated element of C_v((z - zeta)): the (z-zeta)-order, the
    coefficients from that order on, and the exact valuations of the terms
    that built the leading coefficient (strictly increasing for all
    supported inputs; checked before any valuation is reported)."""

    hat_order: int
    zeta_coeffs: CoeffSeries
    leading: TowerElem
    term_valuations: list
    tower: LocalFieldTower

    def hat_valuation(self):
        if not self.leading.series.terms:
            raise AmbiguousLeadingTermError(
                "leading coefficient invisible at the working precision"
            )
        vals = self.term_valuations
        if vals and any(a >= b for a, b in zip(vals, vals[1:])):
            raise AmbiguousLeadingTermError("term valuations fail to increase strictly")
        return self.hat_order

    def series_valuation(self):
        self.hat_valuation()
        return self.leading.valuation()


def hat_valuation(period):
    return period.hat_valuation()


def period_valuation_series(period):
    return period.series_valuation()


def _binom_mod_p(tower, n, r):
    return tower.residue.one.scale_int(comb(n, r))


def _evaluation_series(fam, cm, psi, pi, w_prec, sigma_power):
    """sum_n l_n^(q_v^s) (psi(y) + w)^n as a w-series, together with the exact
    valuations of its w^0 summands."""
    tower = fam.tower
    psi_y = embedding_value(tower, cm, psi, pi)
    coeffs = fam.coefficients()
    qpow = cm.q_v ** sigma_power
    terms = {}
    term_vals = []
    for n, ell in enumerate(coeffs):
        ell_s = ell.pow(qpow)
        term_vals.append(ell_s.valuation() + n * psi_y.valuation())
        for r in range(0, min(n, w_prec - 1) + 1):
            b = _binom_mod_p(tower, n, r)
            if b.is_zero():
                continue
            piece = ell_s.scale_coeff(b)
            if n - r:
                piece = piece * psi_y.pow(n - r)
            terms[r] = terms[r] + piece if r in terms else piece
    series = CoeffSeries(tower, terms, w_prec)
    leading = terms.get(0, tower.zero())
    return series, term_vals, leading


def _zeta_minus_z_series(tower, cm, psi, pi, w_prec):
    """z - zeta = (psi(y) + w)^e - psi(y)^e as an exact polynomial in w."""
    e = cm.components[psi.i].e
    psi_y = embedding_value(tower, cm, psi, pi)
    terms = {}
    for r in range(1, e + 1):
        b = _binom_mod_p(tower, e, r)
        if b.is_zero():
            continue
        c = tower.from_residue(b)
        if e - r:
            c = c * psi_y.pow(e - r)
        terms[r] = c
    return CoeffSeries(tower, terms)


def _omega_w_series(fam, cm, phi, psi, w_prec):
    """The w-expansion of Omega(phi, psi) over the family's tower, plus the
    leading data (leading coefficient, term valuations).

    The linear factor (y - phi(y)) is present exactly when the residue parts
    agree: it is w itself for phi = psi and (psi(y) - phi(y)) + w otherwise;
    embeddings with different residue parts contribute no such factor.
    """
    tower = fam.tower
    c = cm.components[phi.i]
    pi = component_uniformizer(tower, c)
    s = frobenius_distance(cm, psi, phi)
    series, term_vals, leading = _evaluation_series(fam, cm, psi, pi, w_prec, s)
    psi_y = embedding_value(tower, cm, psi, pi)
    phi_y = embedding_value(tower, cm, phi, pi)
    if phi == psi:
        factor1 = CoeffSeries.variable(tower)
        hat = 1
    elif phi.j == psi.j:
        diff = psi_y - phi_y
        if not diff.series.terms:
            raise AmbiguousLeadingTermError("psi(y) - phi(y) vanishes within precision")
        factor1 = CoeffSeries(tower, {0: diff, 1: tower.one()})
        leading = leading * diff
        term_vals = [v + diff.valuation() for v in term_vals]
        hat = 0
    else:
        factor1 = CoeffSeries.one(tower)
        hat = 0
    return factor1 * series, hat, leading, term_vals


def _to_zeta_coordinates(tower, cm, psi, pi, w_series, hat, leading, w_prec):
    """Re-expand a w-series in powers of u = z - zeta; the leading coefficient
    picks up (dz/dy at psi)^(-hat)."""
    e = cm.components[psi.i].e
    if e == 1:
        return w_series, leading
    zmz = _zeta_minus_z_series(tower, cm, psi, pi, w_prec + 1)
    w_of_u = reversion(zmz, w_prec + 1, tower)
    zeta_coeffs = w_series.substitute(w_of_u, w_prec)
    if hat:
        leading = leading * zmz.coeff(1).inv().pow(hat)
    return zeta_coeffs, leading


def omega_period(cm, phi, psi, depth=None, bound=DEFAULT_TOWER_BOUND, prec=None,
                 rescale=None, w_prec=None):
    """The eigencomponent period of the elementary CM shtuka of phi, read in
    the psi-coordinate, as a PeriodElement.

    Verifies the defining recursion to `depth`; the rescale hook multiplies
    the recursion solution by an integral unit (choice-independence tests).
    """
    if phi.i != psi.i:
        raise MixedComponentError("period components must agree: %r vs %r" % (phi, psi))
    if not cm.components[phi.i].tame:
        raise WildComponentError(
            "the series route is disabled for wild components; closed forms only"
        )
    if depth is None:
        depth = max_recursion_depth(cm, phi.i, bound)
    fam = recursion_family(cm, phi, depth, bound=bound, prec=prec, rescale=rescale)
    return _omega_from_family(fam, cm, phi, psi, w_prec)


def _omega_from_family(fam, cm, phi, psi, w_prec=None):
    tower = fam.tower
    if w_prec is None:
        w_prec = fam.depth() + 2
    w_series, hat, leading, term_vals = _omega_w_series(fam, cm, phi, psi, w_prec)
    pi = component_uniformizer(tower, cm.components[phi.i])
    zeta_coeffs, leading = _to_zeta_coordinates(
        tower, cm, psi, pi, w_series, hat, leading, w_prec
    )
    pe = PeriodElement(hat, zeta_coeffs, leading, term_vals, tower)
    lead_in_series = zeta_coeffs.terms.get(0 if hat == 0 else hat)
    if lead_in_series is None or not lead_in_series.series.terms:
        raise AmbiguousLeadingTermError("period has no visible leading coefficient")
    if lead_in_series.valuation() != leading.valuation():
        raise AmbiguousLeadingTermError("leading coefficient disagrees with expansion")
    return pe


# ---------------------------------------------------------------------------
# closed forms


def component_diff_valuation(c):
    """v(D) of the component over the base: (e-1)/e for tame, table for wild."""
    if c.tame:
        return Fraction(c.e - 1, c.e)
    if c.diff_valuation is None:
        raise WildComponentError("wild component needs diff_valuation")
    return Fraction(c.diff_valuation)


def embedding_difference_valuation(cm, phi, psi):
    """v(psi(y) - phi(y)) for distinct embeddings with equal residue part."""
    c = cm.components[phi.i]
    if phi.j != psi.j or phi == psi:
        raise ValueError("defined for distinct embeddings with equal residue part")
    if c.tame:
        return Fraction(1, c.e)  # omega^k1 - omega^k2 is a unit
    return c.pairwise_value(phi.k, psi.k)


def omega_valuation_closed(cm, phi, psi):
    """The three-case closed form for v(Omega(phi, psi))."""
    if phi.i != psi.i:
        raise MixedComponentError("closed form needs i(phi) = i(psi)")
    c = cm.components[phi.i]
    qt = cm.q_tilde(phi.i)
    base = Fraction(1, c.e * (qt - 1))
    if phi == psi:
        return base - component_diff_valuation(c)
    if phi.j == psi.j:
        return base + embedding_difference_valuation(cm, phi, psi)
    s = frobenius_distance(cm, psi, phi)
    return Fraction(cm.q_v ** s, c.e * (qt - 1))


def omega_valuation_via_L(cm, phi, psi, datum=None, pair_function=None):
    """Z_v(a_{psi,phi}, 1) - mu_Art,v(a_{psi,phi}) through the Galois datum;
    tame data are built here, wild components must supply datum and class
    function."""
    if phi.i != psi.i:
        raise MixedComponentError("need i(phi) = i(psi)")
    c = cm.components[phi.i]
    if not c.tame and (datum is None or pair_function is None):
        raise WildComponentError(
            "wild components need a user-supplied datum and class function"
        )
    if datum is None:
        datum = LocalGaloisDatum.tame(cm.q_v, c.f, c.e)
    if pair_function is None:
        # a(g) = 1 iff g.psi = phi: source psi, target phi
        pair_function = indicator_pair_function(datum, psi.to_tame(cm), phi.to_tame(cm))
    return z_v_at_one(datum, pair_function) - mu_art_v(datum, pair_function)


# ---------------------------------------------------------------------------
# the unit part (all d_phi = 0)


def tau_invariant_unit_part(shtuka, depth, bound=DEFAULT_TOWER_BOUND):
    """Solve c = tau_0 sigma(c) for the unit twist tau_0 = (eps_(i,j)).

    Returns {"tower": t, "c": {(i, j): CoeffSeries in y}}; the tower is only
    extended unramified (asserted), realizing the statement that the
    invariants generate an unramified extension.
    """
    cm = shtuka.cm
    out = {}
    tower = LocalFieldTower.base(cm.q_v, bound=bound)
    base_k = tower.residue.k
    for i, c in enumerate(cm.components):
        if not c.tame:
            raise WildComponentError("unit-part solving needs tame components")
        need_f = c.f
        for j in range(c.f):
            series = shtuka.eps_series(i, j)
            if series is not None:
                # the twist coefficients must embed into the residue field
                rel = series.field.k // gcd(series.field.k, base_k)
                need_f = need_f * rel // gcd(need_f, rel)
        tower = tower.extend_unramified(_relative_unramified_degree(tower, need_f))
        qt = cm.q_tilde(i)
        eps_total = CoeffSeries.one(tower, depth + 1)
        for step in range(c.f):
            j = (c.f - step) % c.f  # epsilon_i = eps_0 sigma(eps_(f-1)) ... sigma^(f-1)(eps_1)
            series = shtuka.eps_series(i, j)
            if series is None:
                continue
            lifted = _lift_eps(tower, series, depth + 1)
            twisted = lifted.coeff_pow_map(lambda x, s=step: x.frobenius_power(s))
            eps_total = (eps_total * twisted).truncate(depth + 1)
        b = [eps_total.coeff(n) for n in range(depth + 1)]
        if not b[0].series.terms or b[0].ord() != 0:
            raise ValueError("component %d: twist has no unit leading term" % i)
        tower, c00 = unit_nth_root_with_extension(tower, b[0].inv(), qt - 1)
        b = [tower.lift_from(x) for x in b]
        b0_inv = b[0].inv()
        gammas = [tower.one()]
        for n in range(1, depth + 1):
            rhs = tower.zero()
            for l in range(1, n + 1):
                if b[l].is_zero_within_precision():
                    continue
                rhs = rhs + (b[l] * b0_inv) * gammas[n - l].pow(qt)
            tower, g = solve_additive_twist(tower, rhs, qt)
            gammas = [tower.lift_from(x) for x in gammas]
            gammas.append(g)
        c00 = tower.lift_from(c00)
        comps = {0: CoeffSeries(tower, {n: gammas[n] * c00 for n in range(depth + 1)},
                                depth + 1)}
        for j in range(1, c.f):
            sigma_prev = comps[j - 1].coeff_pow_map(lambda x: x.frobenius_power(1))
            series = shtuka.eps_series(i, j)
            if series is not None:
                sigma_prev = (_lift_eps(tower, series, depth + 1) * sigma_prev
                              ).truncate(depth + 1)
            comps[j] = sigma_prev
        for j in range(c.f):
            out[(i, j)] = comps[j]
    assert tower.e_abs == 1, "unit-part tower must stay unramified"
    # cyclic verification: c_(i,j) = eps_(i,j) sigma(c_(i,j-1)) including wrap
    for i, c in enumerate(cm.components):
        for j in range(c.f):
            lhs = out[(i, j)].map_to(tower)
            prev = out[(i, (j - 1) % c.f)].map_to(tower)
            rhs = prev.coeff_pow_map(lambda x: x.frobenius_power(1))
            series = shtuka.eps_series(i, j)
            if series is not None:
                rhs = (_lift_eps(tower, series, depth + 1) * rhs).truncate(depth + 1)
            if not (lhs - rhs).is_zero_within_precision():
                raise TowerError("unit-part solution fails c = tau_0 sigma(c)")
    return {"tower": tower, "c": out}


def _relative_unramified_degree(tower, f):
    cur = tower.f_abs
    l = cur * f // gcd(cur, f)
    return l // cur


def _lift_eps(tower, series, prec):
    """An eps series (coefficients in a residue field below) over `tower`."""
    emb = series.field.embedding(tower.residue)
    terms = {}
    for e, c in series.terms.items():
        if e >= prec:
            continue
        terms[e] = tower.from_residue(emb(c))
    eff = prec if series.prec is None else min(prec, series.prec)
    return CoeffSeries(tower, terms, eff)




# ---------------------------------------------------------------------------
# scalings, full-shtuka pairing elements and their valuations


@dataclass
class ScalingData:
    """u-scaling a in E_v^x as per-component uniformizer powers (unit part
    implicit), and omega-scaling x by a leading-coefficient valuation plus a
    (z-zeta)-order."""

    u_powers: dict = field(default_factory=dict)
    x_leading_valuation: Fraction = Fraction(0)
    x_order: int = 0

    def v_psi_u(self, cm, psi):
        return Fraction(self.u_powers.get(psi.i, 0), cm.components[psi.i].e)


CANONICAL = ScalingData()


def integral_u_omega(shtuka, psi, u_scaling=None, omega_scaling=None, depth=None,
                     bound=DEFAULT_TOWER_BOUND):
    """The pairing element of the full shtuka against scaled canonical
    generators: (a x 1) x * (eps c^-1) * prod_phi Omega(phi, psi)^d_phi.

    All recursion families are adjoined to one shared tower; CM-types
    supported on several embeddings of the component therefore require
    depth 0 (deeper steps would not be Eisenstein over the shared tower).
    """
    cm = shtuka.cm
    u_scaling = u_scaling or CANONICAL
    omega_scaling = omega_scaling or CANONICAL
    i = psi.i
    c = cm.components[i]
    if not c.tame:
        raise WildComponentError("element-level periods need a tame component")
    support = [phi for phi in cm.embeddings(i) if shtuka.d(phi)]
    if depth is None:
        depth = max_recursion_depth(cm, i, bound) if len(support) <= 1 else 0
    unit_data = tau_invariant_unit_part(shtuka, depth, bound=bound) if shtuka.eps \
        else None
    tower, pi0, _ = component_tower(cm, i, bound=bound)
    if unit_data is not None:
        # host the unramified unit invariants alongside the ramified tower
        need = unit_data["tower"].f_abs
        rel = need * tower.f_abs // gcd(need, tower.f_abs) // tower.f_abs
        if rel > 1:
            tower = tower.extend_unramified(rel)
            pi0 = tower.lift_from(pi0)
    current = tower
    fams = []
    for phi in support:
        fam = recursion_family(cm, phi, depth, bound=bound, base_tower=current)
        current = fam.tower
        fams.append((phi, fam))
    w_prec = depth + 2
    result = CoeffSeries.one(current, w_prec)
    hat = 0
    lead_val_terms = Fraction(0)
    for phi, fam in fams:
        fam_up = RecursionFamily(
            current, current.lift_from(fam.xi), fam.q_tilde,
            [current.lift_from(x) for x in fam.ells], fam.rescale,
        )
        om_w, om_hat, om_lead, _ = _omega_w_series(fam_up, cm, phi, psi, w_prec)
        d = shtuka.d(phi)
        hat += om_hat * d
        lead_val_terms += d * om_lead.valuation()
        result = (result * om_w.pow(d, w_prec)).truncate(w_prec)
    if unit_data is not None:
        result = (result * _unit_factor_w(shtuka, psi, current, unit_data, w_prec)
                  ).truncate(w_prec)
    pi_here = current.lift_from(pi0)
    n_i = u_scaling.u_powers.get(i, 0)
    if n_i:
        psi_y = embedding_value(current, cm, psi, pi_here)
        result = result.scale(psi_y.pow(n_i))
    if omega_scaling.x_leading_valuation:
        ordx = omega_scaling.x_leading_valuation * current.e_abs
        if ordx.denominator != 1:
            raise ValueError("x-scaling valuation not representable in the tower")
        result = result.scale(
            TowerElem(current, TruncSeries.monomial(current.residue, int(ordx)))
        )
    zeta_coeffs, lead = _pairing_zeta_coordinates(
        current, cm, psi, pi_here, result, hat, w_prec
    )
    # the product's leading valuation must assemble from its factors: the
    # omega leads, the unit factor (valuation 0), the scaling shifts, and the
    # coordinate-change derivative to the hat-th power
    expected = (lead_val_terms
                + u_scaling.v_psi_u(cm, psi) + omega_scaling.x_leading_valuation)
    if c.e > 1 and hat:
        expected -= hat * Fraction(c.e - 1, c.e)
    if lead.valuation() != expected:
        raise AmbiguousLeadingTermError(
            "pairing leading valuation %s disagrees with its factors (%s)"
            % (lead.valuation(), expected)
        )
    if omega_scaling.x_order:
        zeta_coeffs = zeta_coeffs.shift(omega_scaling.x_order)
        hat += omega_scaling.x_order
    return PeriodElement(hat, zeta_coeffs, lead, [], current)


def _pairing_zeta_coordinates(tower, cm, psi, pi, w_series, hat, w_prec):
    e = cm.components[psi.i].e
    if e == 1:
        zeta_coeffs = w_series
    else:
        zmz = _zeta_minus_z_series(tower, cm, psi, pi, w_prec + 1)
        w_of_u = reversion(zmz, w_prec + 1, tower)
        zeta_coeffs = w_series.substitute(w_of_u, w_prec)
    lead = zeta_coeffs.terms.get(hat)
    if lead is None or not lead.series.terms:
        raise AmbiguousLeadingTermError("pairing element has no visible leading term")
    return zeta_coeffs, lead


def _unit_factor_w(shtuka, psi, tower, unit_data, w_prec):
    """eps_(i,j(psi)) * c_(i,j(psi))^(-1) evaluated at y = psi(y) + w.

    Requires the unit data to live over residue constants so the unramified
    invariants transport into the ramified recursion tower (whose residue
    field must already contain them).
    """
    cm = shtuka.cm
    c_series = unit_data["c"][(psi.i, psi.j)]
    if tower.residue.k % unit_data["tower"].residue.k != 0:
        raise WildComponentError(
            "pairing tower's residue field cannot host the unit invariants"
        )
    comp = cm.components[psi.i]
    pi = component_uniformizer(tower, comp)
    psi_y = embedding_value(tower, cm, psi, pi)
    y_sub = CoeffSeries(tower, {0: psi_y, 1: tower.one()}, w_prec)

    def transport(series):
        terms = {}
        for m, coeff in series.terms.items():
            if not coeff.series.terms:
                continue
            if coeff.ord() != 0 or len(coeff.series.terms) != 1:
                raise WildComponentError(
                    "unit invariants with non-constant coefficients are not "
                    "transportable into the ramified tower"
                )
            const = coeff.leading_coeff()
            emb = coeff.tower.residue.embedding(tower.residue)
            terms[m] = tower.from_residue(emb(const))
        return CoeffSeries(tower, terms, series.prec)

    c_w = poly_at_series(transport(c_series), y_sub, w_prec, tower)
    eps = shtuka.eps_series(psi.i, psi.j)
    eps_w = (
        poly_at_series(_lift_eps(tower, eps, w_prec), y_sub, w_prec, tower)
        if eps is not None
        else CoeffSeries.one(tower, w_prec)
    )
    return eps_w * c_w.inv(w_prec)


def cm_period_valuation(cm, phi_type, psi, u_scaling=None, omega_scaling=None):
    """v of the pairing for the full CM-type: sum of closed forms plus the
    scaling shifts; for tame components the L-route value is recomputed from
    the induced class function and must agree."""
    u_scaling = u_scaling or CANONICAL
    omega_scaling = omega_scaling or CANONICAL
    i = psi.i
    c = cm.components[i]
    phi_type = dict(phi_type)
    total_closed = Fraction(0)
    for phi in cm.embeddings(i):
        d = phi_type.get(phi, 0)
        if d:
            total_closed += d * omega_valuation_closed(cm, phi, psi)
    if c.tame:
        datum = LocalGaloisDatum.tame(cm.q_v, c.f, c.e)
        values = {e2.to_tame(cm): d for e2, d in phi_type.items() if e2.i == i}
        a, _ = cm_characters(datum, values, psi.to_tame(cm))
        l_route = z_v_at_one(datum, a) - mu_art_v(datum, a)
        assert l_route == total_closed, (l_route, total_closed)
    return total_closed + u_scaling.v_psi_u(cm, psi) + omega_scaling.x_leading_valuation


def averaged_period_valuation(cm, phi_type, psi, scalings_per_eta=None):
    """(1/#G) sum_eta v(pairing for the eta-twisted data), computed per eta
    through the transported CM-types and cross-checked against the
    conjugation-averaged class function a0."""
    i = psi.i
    c = cm.components[i]
    if not c.tame:
        raise WildComponentError("averaging needs the tame embedding action")
    datum = LocalGaloisDatum.tame(cm.q_v, c.f, c.e)
    n = len(datum.elements)
    phi_type = dict(phi_type)
    direct = Fraction(0)
    scaling_avg = Fraction(0)
    for idx, eta in enumerate(datum.elements):
        eta_inv = datum.inverse(eta)
        transported = {e2: d for e2, d in phi_type.items() if e2.i != i}
        for phi in cm.embeddings(i):
            src = act_on_embedding(datum, eta_inv, phi.to_tame(cm))
            d = phi_type.get(Embedding(i, src.j, src.k), 0)
            if d:
                transported[phi] = d
        eta_psi_t = act_on_embedding(datum, eta, psi.to_tame(cm))
        eta_psi = Embedding(i, eta_psi_t.j, eta_psi_t.k)
        scaling = (scalings_per_eta or {}).get(idx, CANONICAL)
        direct += cm_period_valuation(cm, transported, eta_psi, scaling, scaling)
        scaling_avg += scaling.v_psi_u(cm, eta_psi) + scaling.x_leading_valuation
    direct = direct / n
    scaling_avg = scaling_avg / n
    values = {e2.to_tame(cm): d for e2, d in phi_type.items() if e2.i == i}
    _, a0 = cm_characters(datum, values, psi.to_tame(cm))
    formula = z_v_at_one(datum, a0) - mu_art_v(datum, a0) + scaling_avg
    assert direct == formula, (direct, formula)
    return direct


# ---------------------------------------------------------------------------
# Galois character check


def galois_character_check(cm, phi, psi, g_kind, g_index, depth=2,
                           bound=DEFAULT_TOWER_BOUND):
    """Verify g(Omega) = psi(chi(g)) Omega for an automorphism of the
    recursion tower over the component field.

    g_kind "inertia": g(l_n) = w^g_index l_n, w the canonical generator of
    mu_(qt-1) (the tame quotient of the torsion tower).  g_kind "frobenius":
    the coefficient-Frobenius power, admissible only when it fixes the
    recursion datum xi.  chi(g) = g(l+)/l+ must land in the sigma^f-invariant
    units; both that and the Omega identity are checked coefficientwise.
    """
    if phi.i != psi.i:
        raise MixedComponentError("need i(phi) = i(psi)")
    c = cm.components[phi.i]
    if not c.tame:
        raise WildComponentError("Galois checks are implemented for tame components")
    qt = cm.q_tilde(phi.i)
    fam = recursion_family(cm, phi, depth, bound=bound)
    tower = fam.tower
    if g_kind == "inertia":
        if qt == 2:
            twisted = list(fam.ells)
        else:
            w = tower.residue.root_of_unity(qt - 1)
            twisted = [ell.scale_coeff(w ** g_index) for ell in fam.ells]
    elif g_kind == "frobenius":
        g_xi = fam.xi.coeff_frobenius(g_index)
        if not (g_xi - fam.xi).is_zero_within_precision():
            raise TowerError(
                "coefficient Frobenius moves xi; unsupported for this embedding"
            )
        twisted = [ell.coeff_frobenius(g_index) for ell in fam.ells]
    else:
        raise ValueError("g_kind must be 'inertia' or 'frobenius'")
    tfam = RecursionFamily(tower, fam.xi, qt, twisted, fam.rescale)
    if not tfam.verify_tau_property():
        return False
    # chi(g) = g(l+)/l+: triangular solve of chi * l+ = g(l+)
    chi = []
    l0_inv = fam.ells[0].inv()
    for n in range(depth + 1):
        acc = twisted[n]
        for m in range(n):
            acc = acc - chi[m] * fam.ells[n - m]
        chi.append(acc * l0_inv)
    for coeff in chi:
        if not (coeff.pow(qt) - coeff).is_zero_within_precision():
            return False  # not sigma^f-invariant: not in O_E^x
    w_prec = depth + 2
    om, _, _, _ = _omega_w_series(fam, cm, phi, psi, w_prec)
    g_om, _, _, _ = _omega_w_series(tfam, cm, phi, psi, w_prec)
    s = frobenius_distance(cm, psi, phi)
    pi = component_uniformizer(tower, c)
    psi_y = embedding_value(tower, cm, psi, pi)
    psi_chi = tower.zero()
    for m, coeff in enumerate(chi):
        term = coeff.pow(cm.q_v ** s)
        if m:
            term = term * psi_y.pow(m)
        psi_chi = psi_chi + term
    rhs = om.scale(psi_chi)
    return (g_om - rhs).is_zero_within_precision()
