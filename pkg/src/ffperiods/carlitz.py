"""End-to-end reproduction of the Carlitz product formula.

Three ingredients, all exact:

* the infinite-place value log|pairing|_infty = (q/(q-1)) log q, read off
  from the tower F_q((beta)) with beta^(q-1) = -zeta and the 1-unit product
  prod_(i>=1) (1 - zeta^(q^i - 1));
* per finite place v the series value log|pairing|_v = -(1/(q_v-1)) log q_v,
  computed through the recursion tower (not the closed form) and checked to
  have a simple pole in z - zeta and to equal -Z_v(1, 1) log q_v;
* the tail of the divergent sum over the remaining places, regularized with
  the trivial tail character, genus 0 and no conductor term.

The grand total is exactly 0 * log q.
"""

from dataclasses import dataclass
from fractions import Fraction

from .cmshtuka import (
    CMAlgebra,
    CMComponent,
    Embedding,
    hat_valuation,
    omega_period,
    period_valuation_series,
)
from .fields import FqField, factor_prime_power, monic_irreducibles
from .lfunctions import (
    ClassFunctionQ,
    ExplicitPlaceTerm,
    LocalGaloisDatum,
    LogQValue,
    log_q_value,
    regularized_sum,
    z_infty_at,
    z_v_at_one,
    zeta_closed_forms,
)
from .towers import LocalFieldTower, solve_kummer

DESK_TOWER_LIMIT = 20000


class CrossCheckError(AssertionError):
    """A direct place value disagrees with its L-factor counterpart."""


@dataclass(frozen=True)
class Place:
    """A closed point of the projective line: infinity or a monic irreducible."""

    q: int
    poly: object = None  # PolyFq; None encodes infinity

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    @property
    def q_v(self):
        return self.q ** self.degree

    def label(self):
        return "infty" if self.poly is None else repr(self.poly)


def finite_places(q, max_degree):
    """All finite places of degree <= max_degree, by degree then lexicographic."""
    p, k = factor_prime_power(q)
    F = FqField(p, k)
    out = []
    for d in range(1, max_degree + 1):
        for poly in monic_irreducibles(F, d):
            out.append(Place(q, poly))
    return out


def carlitz_infty_log_abs(q, n_terms):
    """(log|pairing|_infty as LogQValue, the truncated 1-unit product).

    The value is q/(q-1) log q for every n_terms >= 1: the product of
    1 - zeta^(q^i - 1) is a 1-unit, so only beta^q contributes valuation.
    """
    if n_terms < 1:
        raise ValueError("need at least one product term")
    tower = LocalFieldTower.base(q, bound=max(64, q), prec=q ** n_terms + q + 8)
    zeta = tower.uniformizer()
    tower, beta = solve_kummer(tower, q - 1, -zeta, name="beta")
    zeta = tower.lift_from(zeta)
    product = tower.one()
    for i in range(1, n_terms + 1):
        product = product * (tower.one() - zeta.pow(q ** i - 1))
    assert product.ord() == 0
    assert product.leading_coeff() == tower.residue.one, "the product must be a 1-unit"
    total = beta.pow(q) * product
    # |pairing|_infty = |(beta^q * product)^(-1)| = q^(+v(beta^q * product))
    value = log_q_value(total.valuation())
    assert value.coeff == Fraction(q, q - 1)
    return value, product


@dataclass
class PlaceValue:
    place: Place
    log_abs: LogQValue  # log|pairing|_v
    z_v_at_one: Fraction  # Z_v(1, 1)
    via_series: bool  # False when the tower bound forced the closed form
    hat_order: int


def carlitz_v_log_abs(q, place, depth, desk_limit=DESK_TOWER_LIMIT):
    """log|pairing|_v at a finite place, through the recursion tower.

    Falls back to the closed form (flagged via_series=False) when the tower
    degree (q_v - 1) q_v^depth would exceed the desk limit.
    """
    if place.is_infinite:
        raise ValueError("use carlitz_infty_log_abs at infinity")
    q_v = place.q_v
    deg = place.degree
    datum = LocalGaloisDatum.tame(q_v, 1, 1)
    zv1 = z_v_at_one(datum, ClassFunctionQ.trivial(datum))
    needed = (q_v - 1) * q_v ** depth if q_v > 2 else q_v ** depth
    if needed > desk_limit:
        return PlaceValue(place, log_q_value(Fraction(-deg, q_v - 1)), zv1, False, 1)
    cm = CMAlgebra(q_v, [CMComponent(1, 1)])
    psi = Embedding(0, 0, 0)
    pe = omega_period(cm, psi, psi, depth=depth, bound=max(needed, 2))
    hat = hat_valuation(pe)
    if hat != 1:
        raise CrossCheckError("pairing at %s has pole order %d, expected 1"
                              % (place.label(), hat))
    v_val = period_valuation_series(pe)
    value = log_q_value(-v_val * deg)
    if value.coeff != -zv1 * deg:
        raise CrossCheckError(
            "place %s: series value %s != -Z_v(1,1) log q_v" % (place.label(), value)
        )
    return PlaceValue(place, value, zv1, True, hat)


@dataclass
class ProductFormulaReport:
    q: int
    infty: LogQValue
    places: list  # PlaceValue, ordered by degree then lexicographically
    z_infty_at_zero: LogQValue
    mu_term: LogQValue
    genus_term: LogQValue
    tail_value: LogQValue
    total: LogQValue

    def all_series_routes(self):
        return all(pv.via_series for pv in self.places)


def carlitz_product_formula(q, max_degree, depth, desk_limit=DESK_TOWER_LIMIT):
    """Combine the infinite place, the direct values at places of degree <=
    max_degree and the regularized tail; the total must vanish exactly."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    infty, _ = carlitz_infty_log_abs(q, max(depth, 1))
    values = [carlitz_v_log_abs(q, pl, depth, desk_limit)
              for pl in finite_places(q, max_degree)]
    zeta_a, _ = zeta_closed_forms(q)
    explicit = [
        ExplicitPlaceTerm(pv.place.label(), pv.place.degree, pv.log_abs, pv.z_v_at_one)
        for pv in values
    ]
    tail = regularized_sum(zeta_a, q, log_q_value(0), 0, 1, explicit)
    z_inf0 = z_infty_at(zeta_a, q, 0)
    total = infty + tail
    report = ProductFormulaReport(
        q=q,
        infty=infty,
        places=values,
        z_infty_at_zero=z_inf0,
        mu_term=log_q_value(0),
        genus_term=log_q_value(0),
        tail_value=tail,
        total=total,
    )
    if total.coeff != 0:
        raise CrossCheckError("product formula total is %s, expected 0" % total)
    return report


def report_as_dict(report):
    """JSON-ready dictionary with exact rationals as 'num/den' strings."""

    def frac(x):
        f = x.coeff if isinstance(x, LogQValue) else Fraction(x)
        return "%d/%d" % (f.numerator, f.denominator)

    return {
        "schema": "1",
        "q": report.q,
        "infty": frac(report.infty),
        "places": [
            {
                "place": pv.place.label(),
                "degree": pv.place.degree,
                "q_v": pv.place.q_v,
                "log_abs": frac(pv.log_abs),
                "z_v_at_1": frac(pv.z_v_at_one),
                "hat_order": pv.hat_order,
                "via_series": pv.via_series,
            }
            for pv in report.places
        ],
        "regularization": {
            "z_infty_at_0": frac(report.z_infty_at_zero),
            "mu_infty": frac(report.mu_term),
            "genus_term": frac(report.genus_term),
            "tail_value": frac(report.tail_value),
        },
        "total": frac(report.total),
    }
