"""Explicit towers of finite extensions of F_{q_v}((z)).

A tower starts from the Laurent series field F_{q_v}((z)) with the absolute
valuation normalized by v(z) = 1 and grows by two kinds of steps:

* unramified steps, which enlarge the residue field, and
* Eisenstein steps X^m + a_{m-1} X^{m-1} + ... + a_0 (monic, v(a_0) exactly
  one unit of the previous level, v(a_j) > 0 otherwise), which adjoin a new
  uniformizer and multiply the ramification index by m.

Every element is stored as a truncated sparse Laurent series in the *top*
uniformizer with coefficients in the top residue field.  When a tower is
extended by an Eisenstein step, the previous uniformizer is re-expanded in
the new one by a fixed-point iteration on the defining equation; the
iteration must gain valuation at every sweep, otherwise the step data was
not Eisenstein and we refuse to continue.  All valuations are exact
Fractions with denominator dividing the absolute ramification index.
"""

from fractions import Fraction

from .fields import FqField, factor_prime_power
from .series import InsufficientPrecisionError, TruncSeries


class TowerError(Exception):
    pass


class NotEisensteinError(TowerError):
    pass


class TowerBoundError(TowerError):
    pass


class NonConvergenceError(TowerError):
    pass


class UnsupportedKummerError(TowerError):
    pass


class WildTowerError(TowerError):
    """Raised where only tame towers carry the requested Galois structure."""


DEFAULT_TOWER_BOUND = 64


class LocalFieldTower:
    """One level of a tower; `previous` links to the tower below."""

    def __init__(self, q_v, residue, e_abs, f_abs, previous, step, bound, prec, name):
        self.q_v = q_v
        self.residue = residue
        self.e_abs = e_abs
        self.f_abs = f_abs
        self.previous = previous
        self.step = step  # None | ("unramified", f, embed) | ("eisenstein", coeffs, m)
        self.bound = bound
        self.prec = prec
        self.name = name
        self._prev_unif_cache = {}  # prec -> TruncSeries

    # -- construction --------------------------------------------------------

    @classmethod
    def base(cls, q_v, bound=DEFAULT_TOWER_BOUND, prec=32, name="z"):
        p, k = factor_prime_power(q_v)
        return cls(q_v, FqField(p, k), 1, 1, None, None, bound, prec, name)

    def degree(self):
        return self.e_abs * self.f_abs

    def _check_bound(self, factor):
        if self.degree() * factor > self.bound:
            raise TowerBoundError(
                "tower degree %d exceeds bound %d" % (self.degree() * factor, self.bound)
            )

    def extend_unramified(self, f):
        if f < 1:
            raise ValueError("unramified degree must be >= 1")
        if f == 1:
            return self
        self._check_bound(f)
        new_res = FqField(self.residue.p, self.residue.k * f)
        embed = self.residue.embedding(new_res)
        return LocalFieldTower(
            self.q_v, new_res, self.e_abs, self.f_abs * f, self,
            ("unramified", f, embed), self.bound, self.prec, self.name,
        )

    def extend_eisenstein(self, coeffs, name=None, prec=None):
        """Adjoin a root of X^m + coeffs[m-1] X^(m-1) + ... + coeffs[0].

        The root becomes the new uniformizer.  Coefficients are elements of
        this tower; the polynomial must be Eisenstein within precision.
        """
        m = len(coeffs)
        if m < 1:
            raise ValueError("need at least the constant coefficient")
        coeffs = [self.lift_from(c) for c in coeffs]
        a0 = coeffs[0]
        if not a0.series.terms:
            raise NotEisensteinError("constant term not determined within precision")
        if a0.ord() != 1:
            raise NotEisensteinError(
                "constant term has order %d in the current uniformizer, expected 1" % a0.ord()
            )
        for j, c in enumerate(coeffs[1:], start=1):
            lb = c.series.ord_lower_bound()
            if c.series.terms:
                if c.series.ord() <= 0:
                    raise NotEisensteinError("coefficient %d has non-positive valuation" % j)
            elif lb is not None and lb <= 0:
                raise NotEisensteinError("coefficient %d not determined within precision" % j)
        self._check_bound(m)
        if prec is None:
            # enough to see every leading term in play (valuations here stay
            # below ~2 absolute units) without dragging dense tails around
            prec = max(2 * self.e_abs * m + 32, 4 * m + 8)
        tower = LocalFieldTower(
            self.q_v, self.residue, self.e_abs * m, self.f_abs, self,
            ("eisenstein", tuple(coeffs), m), self.bound, prec,
            name if name is not None else self.name + "'",
        )
        # force one re-expansion so a bad step fails here, not at first use
        tower._prev_uniformizer(min(prec, 4 * m + 4))
        return tower

    # -- elements -------------------------------------------------------------

    def lift_from(self, x):
        if not isinstance(x, TowerElem):
            raise TypeError("expected a TowerElem, got %r" % (x,))
        return x if x.tower is self else self.lift(x)

    def zero(self, prec=None):
        return TowerElem(self, TruncSeries.zero(self.residue, prec))

    def one(self):
        return TowerElem(self, TruncSeries.one(self.residue))

    def uniformizer(self):
        return TowerElem(self, TruncSeries.monomial(self.residue, 1))

    def from_residue(self, c):
        """Constant element from a residue-field value (or int)."""
        c = self.residue.elem(c)
        return TowerElem(self, TruncSeries(self.residue, {0: c}))

    def element(self, terms, prec=None):
        return TowerElem(self, TruncSeries(self.residue, terms, prec))

    def integer(self, n):
        return self.from_residue(self.residue.one.scale_int(n))

    # -- re-expansion ----------------------------------------------------------

    def _prev_uniformizer(self, prec):
        """The previous level's uniformizer as a series in our uniformizer.

        Solved from the defining Eisenstein relation by the fixed-point
        iteration w <- -(pi^m + sum_{j>=1} a_j(w) pi^j) / u(w), where
        a_0 = sum c_r T^r gives u = sum c_r T^(r-1); each sweep must gain
        valuation strictly.
        """
        assert self.step is not None and self.step[0] == "eisenstein"
        cached = self._prev_unif_cache.get(prec)
        if cached is not None:
            return cached
        for p0 in sorted(self._prev_unif_cache):
            if p0 >= prec:
                out = self._prev_unif_cache[p0].truncate(prec)
                self._prev_unif_cache[prec] = out
                return out
        coeffs, m = self.step[1], self.step[2]
        res = self.residue
        a0 = coeffs[0].series
        # pure Kummer step X^m - c*pi_old: exact monomial re-expansion
        others_zero = all(
            not c.series.terms and c.series.prec is None for c in coeffs[1:]
        )
        if others_zero and a0.prec is None and set(a0.terms) == {1}:
            w = TruncSeries.monomial(res, m, (-a0.terms[1].inv()))
            self._prev_unif_cache[prec] = w
            return w
        u_series = TruncSeries(res, {e - 1: c for e, c in a0.terms.items()},
                               None if a0.prec is None else a0.prec - 1)
        pi_m = TruncSeries.monomial(res, m)
        w = TruncSeries.zero(res)  # exact zero start
        last_gain = None
        for _ in range(prec + 8):
            rhs = pi_m
            for j in range(1, m):
                cj = coeffs[j].series
                if not cj.terms and cj.prec is None:
                    continue
                rhs = rhs + _subst(cj, w, prec) * TruncSeries.monomial(res, j)
            rhs = rhs.scale(-res.one)
            denom = _subst(u_series, w, prec)
            inv_target = prec
            if denom.prec is not None:
                inv_target = min(inv_target, denom.prec)
            new_w = (rhs * denom.inv(inv_target)).truncate(prec)
            diff = new_w - w
            if not diff.terms:
                self._prev_unif_cache[prec] = new_w
                return new_w
            lb = diff.ord()
            if lb >= prec:
                self._prev_unif_cache[prec] = new_w
                return new_w
            if last_gain is not None and lb <= last_gain:
                raise NonConvergenceError(
                    "re-expansion failed to gain valuation (stuck at order %s)" % lb
                )
            last_gain = lb
            w = new_w
        raise NonConvergenceError("re-expansion did not converge within the sweep budget")

    def lift(self, elem, prec=None):
        """Express an element of a lower tower in this tower."""
        if elem.tower is self:
            return elem
        chain = []
        t = self
        while t is not None and t is not elem.tower:
            chain.append(t)
            t = t.previous
        if t is None:
            raise TowerError("element does not live below this tower")
        cur = elem
        for tower in reversed(chain):
            cur = tower._lift_one(cur, prec)
        return cur

    def _lift_one(self, elem, prec=None):
        kind = self.step[0]
        if kind == "unramified":
            embed = self.step[2]
            return TowerElem(self, elem.series.map_coeffs(embed, self.residue))
        m = self.step[2]
        target = self.prec if prec is None else prec
        s = elem.series
        lb = s.ord_lower_bound()
        if lb is not None and lb * m >= target:
            # invisible at this precision; keep the ord bound, skip the work
            return TowerElem(self, TruncSeries.zero(self.residue, min(target, lb * m)))
        w = self._prev_uniformizer(target)
        pos = TruncSeries(self.residue, {e: c for e, c in s.terms.items() if e >= 0},
                          s.prec)
        out = _subst(pos, w, target)
        negs = {e: c for e, c in s.terms.items() if e < 0}
        if negs:
            if w.prec is None and len(w.terms) == 1:
                w_inv = w.inv()
            else:
                avail = target if w.prec is None else w.prec
                w_inv = w.inv(max(avail - 2 * w.ord(), 1))
            for e, c in negs.items():
                out = out + w_inv.pow_int(-e).scale(c).truncate(target)
        if s.prec is not None:
            out = out.truncate(min(target, s.prec * m))
        else:
            out = out.truncate(target)
        return TowerElem(self, out)

    def level_uniformizer(self, level, prec=None):
        """reexpand_down: the uniformizer of Eisenstein level `level` (0 = the
        base uniformizer z) expressed in this tower."""
        towers = self.depth_levels()
        eis = [t for t in towers if t.step is None or t.step[0] == "eisenstein"]
        if level < 0 or level >= len(eis):
            raise ValueError("no Eisenstein level %d in this tower" % level)
        return self.lift(eis[level].uniformizer(), prec)

    def depth_levels(self):
        out = []
        t = self
        while t is not None:
            out.append(t)
            t = t.previous
        out.reverse()
        return out

    # -- invariants ------------------------------------------------------------

    def different_valuation(self):
        """v(D) over the base with v(z) = 1: sum over Eisenstein levels of
        v(P'(pi)); unramified steps contribute nothing (the different is
        multiplicative in towers)."""
        total = Fraction(0)
        for t in self.depth_levels():
            if t.step is None or t.step[0] != "eisenstein":
                continue
            coeffs, m = t.step[1], t.step[2]
            pi = t.uniformizer()
            val = t.integer(m) * pi.pow(m - 1)
            for j in range(1, m):
                cj = coeffs[j]
                if not cj.series.terms:
                    continue
                val = val + t.lift_from(cj).scale_residue_int(j) * pi.pow(j - 1)
            try:
                total += val.valuation()
            except InsufficientPrecisionError:
                raise TowerError(
                    "derivative vanishes within precision: inseparable step or "
                    "precision too low at level %s" % t.name
                )
        return total

    def tame_shape(self):
        """(f, e, kummer_unit) when the tower is one optional unramified step
        followed by at most one Kummer step X^e - c*z; None otherwise."""
        f = 1
        e = 1
        unit = None
        seen_eis = False
        for t in self.depth_levels():
            if t.step is None:
                continue
            if t.step[0] == "unramified":
                if seen_eis:
                    return None
                f *= t.step[1]
            else:
                if seen_eis:
                    return None
                seen_eis = True
                coeffs, m = t.step[1], t.step[2]
                if any(c.series.terms for c in coeffs[1:]):
                    return None
                a0 = coeffs[0].series
                if a0.prec is not None or set(a0.terms) != {1}:
                    return None
                e = m
                unit = -a0.terms[1]
        if e > 1 and (self.q_v ** f - 1) % e != 0:
            return None
        if e % self.residue.p == 0:
            return None
        return (f, e, unit)


def _subst(series, w, prec):
    """Substitute w into `series` (nonnegative exponents), truncating to prec."""
    if not series.terms:
        if series.prec is None:
            return TruncSeries.zero(w.field, prec)
        lb = w.ord() if w.terms else 1
        return TruncSeries.zero(w.field, min(prec, series.prec * max(lb, 1)))
    return series.compose(w).truncate(prec)


class TowerElem:
    """An element of (the top level of) a LocalFieldTower."""

    __slots__ = ("tower", "series")

    def __init__(self, tower, series):
        assert series.field is tower.residue
        self.tower = tower
        self.series = series

    def _pair(self, other):
        if not isinstance(other, TowerElem):
            raise TypeError("cannot combine %r with %r" % (self, other))
        if other.tower is self.tower:
            return self, other
        if _is_below(other.tower, self.tower):
            return self, self.tower.lift(other)
        if _is_below(self.tower, other.tower):
            return other.tower.lift(self), other
        raise TowerError("elements live in unrelated towers")

    def __add__(self, other):
        a, b = self._pair(other)
        return TowerElem(a.tower, a.series + b.series)

    def __sub__(self, other):
        a, b = self._pair(other)
        return TowerElem(a.tower, a.series - b.series)

    def __neg__(self):
        return TowerElem(self.tower, -self.series)

    def __mul__(self, other):
        a, b = self._pair(other)
        return TowerElem(a.tower, a.series * b.series)

    def scale_coeff(self, c):
        return TowerElem(self.tower, self.series.scale(c))

    def scale_residue_int(self, n):
        return TowerElem(self.tower, self.series.scale(self.tower.residue.one.scale_int(n)))

    def inv(self, prec=None):
        if prec is None and self.series.prec is None and len(self.series.terms) != 1:
            prec = self.tower.prec  # exact non-monomials invert to working precision
        return TowerElem(self.tower, self.series.inv(prec))

    def pow(self, n):
        return TowerElem(self.tower, self.series.pow_int(n))

    def frobenius_power(self, n=1):
        """x -> x^(q_v^n), the arithmetic Frobenius over the base."""
        if n < 0:
            raise TowerError("negative Frobenius powers are not supported")
        return self.pow(self.tower.q_v ** n)

    def coeff_frobenius(self, n=1):
        """q_v-power Frobenius on residue coefficients only, exponents fixed.

        A field map of the abstract Laurent series field; whether it respects
        a given tower's defining relations is the caller's business.
        """
        _, k = factor_prime_power(self.tower.q_v)
        return TowerElem(self.tower, self.series.frobenius_coeffs(k * n))

    def is_zero_within_precision(self):
        return not self.series.terms

    def ord(self):
        return self.series.ord()

    def valuation(self):
        """Absolute valuation with v(z) = 1, as an exact Fraction."""
        return Fraction(self.series.ord(), self.tower.e_abs)

    def valuation_lower_bound(self):
        lb = self.series.ord_lower_bound()
        return None if lb is None else Fraction(lb, self.tower.e_abs)

    def leading_coeff(self):
        return self.series.leading_coeff()

    def truncate(self, prec):
        return TowerElem(self.tower, self.series.truncate(prec))

    def sort_key(self):
        """Deterministic ordering key: by order, then coefficient codes."""
        return tuple((e, c.code()) for e, c in sorted(self.series.terms.items()))

    def __repr__(self):
        return "TowerElem(%s; %r)" % (self.tower.name, self.series)


def _is_below(lower, upper):
    t = upper
    while t is not None:
        if t is lower:
            return True
        t = t.previous
    return False


def reexpand_down(tower, level, depth):
    """The uniformizer of Eisenstein level `level` as an element of `tower`,
    to absolute precision depth/e_abs (depth in top-uniformizer units)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return tower.level_uniformizer(level, prec=depth)


# ---------------------------------------------------------------------------
# root solvers


def newton_root(tower, coeffs, residue_root, prec=None):
    """Root of P(X) = sum coeffs[j] X^j lifted from a simple residue root.

    Requires P(x0) = 0 and P'(x0) a unit at the residue level.
    """
    target = tower.prec if prec is None else prec
    coeffs = [tower.lift_from(c).truncate(target) for c in coeffs]
    dcoeffs = [c.scale_residue_int(j) for j, c in enumerate(coeffs)][1:]

    def ev(cs, x):
        acc = tower.zero()
        for c in reversed(cs):
            acc = acc * x + c
        return acc.truncate(target)

    x = tower.from_residue(residue_root)
    fx = ev(coeffs, x)
    dfx = ev(dcoeffs, x)
    if not dfx.series.terms or dfx.ord() != 0:
        raise TowerError("residue root is not simple; Newton cannot start")
    stall = 0
    while fx.series.terms:
        inv_target = target
        if dfx.series.prec is not None:
            inv_target = min(inv_target, dfx.series.prec)
        step = fx * dfx.inv(inv_target)
        new_x = (x - step).truncate(target)
        if new_x.series.terms == x.series.terms:
            stall += 1
            if stall > 2:
                raise NonConvergenceError("Newton iteration stalled")
        x = new_x
        fx = ev(coeffs, x)
        dfx = ev(dcoeffs, x)
    return x


def unit_nth_root(tower, elem, n):
    """An n-th root of a valuation-zero element, gcd(n, p) = 1.

    Takes the lexicographically smallest residue root and Newton-lifts it;
    raises UnsupportedKummerError when the residue field has no root.
    """
    if elem.ord() != 0:
        raise ValueError("unit_nth_root needs a valuation-zero element")
    res = tower.residue
    lead = elem.leading_coeff()
    root0 = None
    for cand in res.elements():
        if cand.is_zero():
            continue
        if cand ** n == lead:
            root0 = cand
            break
    if root0 is None:
        raise UnsupportedKummerError(
            "no %d-th root of the leading coefficient in %r" % (n, res)
        )
    coeffs = [-elem] + [tower.zero()] * (n - 1) + [tower.one()]
    return newton_root(tower, coeffs, root0)


def unit_nth_root_with_extension(tower, unit, n):
    """(tower', x) with x^n = unit: the residue field is extended unramified
    (once, by the minimal degree) when it carries no n-th root of the leading
    coefficient."""
    res = tower.residue
    lead = unit.leading_coeff()
    t = 1
    while t <= 4 * n:
        order = res.q ** t - 1
        g = _gcd(n, order)
        if t == 1:
            ok = lead ** (order // g) == res.one
        else:
            big = FqField(res.p, res.k * t)
            emb = res.embedding(big)
            ok = emb(lead) ** (order // g) == big.one
        if ok:
            break
        t += 1
    else:
        raise UnsupportedKummerError("no residue field hosts an %d-th root" % n)
    if t > 1:
        tower = tower.extend_unramified(t)
        unit = tower.lift_from(unit)
    return tower, unit_nth_root(tower, unit, n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def solve_kummer(tower, m, a, name=None):
    """Solve x^m = a, extending the tower if needed; returns (tower', root).

    Supported shapes: m = 1; ord(a) a multiple of m (in-field root, after an
    unramified step adjoining mu_m); ord(a) = 1 (Kummer-Eisenstein step
    X^m - a whose root is the new uniformizer).
    """
    if m < 1:
        raise ValueError("m must be positive")
    a = tower.lift_from(a)
    if m == 1:
        return tower, a
    if m % tower.residue.p == 0:
        raise UnsupportedKummerError("m must be coprime to the characteristic")
    f_extra = 1
    qr = tower.residue.q
    while (qr ** f_extra - 1) % m != 0:
        f_extra += 1
        if f_extra > 64:
            raise UnsupportedKummerError("mu_%d needs an unreasonable extension" % m)
    if f_extra > 1:
        tower = tower.extend_unramified(f_extra)
        a = tower.lift(a)
    r = a.ord()
    if r % m == 0:
        unit = TowerElem(tower, a.series.shift(-r))
        tower, root_unit = unit_nth_root_with_extension(tower, unit, m)
        return tower, TowerElem(tower, root_unit.series.shift(r // m))
    if r == 1:
        coeffs = [-a] + [tower.zero()] * (m - 1)
        tower2 = tower.extend_eisenstein(coeffs, name=name)
        return tower2, tower2.uniformizer()
    raise UnsupportedKummerError(
        "cannot take an m-th root at order %d (supported: 0 mod m, or 1)" % r
    )


def solve_frobenius_recursion(tower, xi, q_tilde, depth, names=None):
    """Adjoin l_0^(qt-1) = -xi and l_n^qt + xi*l_n = l_(n-1) for n <= depth.

    Returns (tower', [l_0..l_depth]), all in the final tower; asserts the
    valuation law v(l_n) = v(xi) qt^(-n) / (qt-1) along the way.
    """
    q_v = tower.q_v
    qt = q_tilde
    f = 0
    while q_v ** f < qt:
        f += 1
    if q_v ** f != qt:
        raise ValueError("q_tilde must be a power of q_v")
    xi = tower.lift_from(xi)
    v_xi = xi.valuation()
    if v_xi <= 0:
        raise ValueError("xi must have positive valuation")
    tower, ell0 = solve_kummer(tower, qt - 1, -xi, name=(names[0] if names else None))
    assert ell0.valuation() == v_xi / (qt - 1)
    ells = [ell0]
    for n in range(1, depth + 1):
        xi_here = tower.lift(xi)
        coeffs = [-ells[-1], xi_here] + [tower.zero()] * (qt - 2)
        tower = tower.extend_eisenstein(coeffs, name=(names[n] if names else None))
        ells = [tower.lift(e) for e in ells]
        ell_n = tower.uniformizer()
        assert ell_n.valuation() == v_xi * Fraction(1, qt ** n * (qt - 1))
        ells.append(ell_n)
    ells = [tower.lift(e) for e in ells]
    return tower, ells


def solve_additive_twist(tower, rhs, q_tilde, prec=None):
    """Solve g - g^qt = rhs to the working precision, extending the residue
    field when the residue equation requires it; returns (tower', g)."""
    qt = q_tilde
    rhs = tower.lift_from(rhs)
    target = tower.prec if prec is None else prec
    if not rhs.series.terms:
        return tower, tower.zero(rhs.series.prec)
    if rhs.ord() < 0:
        raise ValueError("rhs must be integral")
    if rhs.ord() > 0:
        g0 = tower.residue.zero
    else:
        g0 = _residue_twist_root(tower.residue, rhs.leading_coeff(), qt)
        if g0 is None:
            tower = tower.extend_unramified(tower.residue.p)
            rhs = tower.lift(rhs)
            g0 = _residue_twist_root(tower.residue, rhs.leading_coeff(), qt)
            if g0 is None:
                raise NonConvergenceError("no residue solution of g - g^qt = rhs")
    if rhs.series.prec is not None:
        target = min(target, rhs.series.prec)
    g = tower.from_residue(g0).truncate(target)
    # f(g) = g - g^qt - rhs satisfies f(g - d) = f(g) - d + d^qt: take d = f(g),
    # whose order multiplies by qt every round
    last = None
    for _ in range(200):
        fg = (g - g.pow(qt) - rhs).truncate(target)
        if not fg.series.terms:
            return tower, g
        if last is not None and fg.ord() <= last:
            raise NonConvergenceError("additive-twist solve failed to gain valuation")
        last = fg.ord()
        g = (g - fg).truncate(target)
    raise NonConvergenceError("additive-twist solve stalled")


def _residue_twist_root(res, lead, qt):
    for cand in res.elements():
        if cand - cand ** qt == lead:
            return cand
    return None


# ---------------------------------------------------------------------------
# tame automorphisms and the mu measure


class TameAut:
    """Automorphism datum (a mod f, k mod e) of a tame tower.

    a is the residue Frobenius exponent, k the root-of-unity index on the
    uniformizer.  Composition follows the fixed semidirect law
    (a, k) * (a', k') = (a + a', k * q_v^a' + k'): the product acts by the
    left factor first.
    """

    __slots__ = ("a", "k", "f", "e", "q_v")

    def __init__(self, a, k, f, e, q_v):
        self.f = f
        self.e = e
        self.q_v = q_v
        self.a = a % f
        self.k = k % e

    def __mul__(self, other):
        assert (self.f, self.e, self.q_v) == (other.f, other.e, other.q_v)
        k = 0 if self.e == 1 else (self.k * pow(self.q_v, other.a, self.e) + other.k)
        return TameAut(self.a + other.a, k, self.f, self.e, self.q_v)

    def inverse(self):
        if self.e == 1:
            return TameAut(-self.a, 0, self.f, self.e, self.q_v)
        o = _mul_order(self.q_v, self.e)
        qinv = pow(self.q_v, (-self.a) % o, self.e)
        return TameAut(-self.a, -self.k * qinv, self.f, self.e, self.q_v)

    def conjugate_by(self, h):
        return h.inverse() * self * h

    def is_identity(self):
        return self.a == 0 and self.k == 0

    def __eq__(self, other):
        return isinstance(other, TameAut) and (
            self.a, self.k, self.f, self.e, self.q_v,
        ) == (other.a, other.k, other.f, other.e, other.q_v)

    def __hash__(self):
        return hash((self.a, self.k, self.f, self.e, self.q_v))

    def __repr__(self):
        return "TameAut(a=%d, k=%d; f=%d, e=%d)" % (self.a, self.k, self.f, self.e)


def _mul_order(x, m):
    if m == 1:
        return 1
    o = 1
    acc = x % m
    while acc != 1:
        acc = (acc * x) % m
        o += 1
        if o > m:
            raise ValueError("x not invertible mod m")
    return o


def tame_group(q_v, f, e):
    """All automorphisms of the tame datum with invariants (f, e)."""
    return [TameAut(a, k, f, e, q_v) for a in range(f) for k in range(e)]


def tame_apply(tower, g, elem):
    """Apply a TameAut to an element of a tame tower: pi -> w^k pi (w the
    canonical generator of mu_e) and the q_v^a Frobenius on coefficients."""
    shape = tower.tame_shape()
    if shape is None:
        raise WildTowerError("tower is not of the supported tame shape")
    f, e, _ = shape
    if (g.f, g.e) != (f, e):
        raise ValueError("automorphism invariants do not match the tower")
    elem = tower.lift_from(elem)
    res = tower.residue
    _, k0 = factor_prime_power(tower.q_v)
    omega = res.root_of_unity(e) if e > 1 else res.one
    t = {}
    for exp, c in elem.series.terms.items():
        nc = c.frobenius(k0 * g.a)
        if e > 1 and (g.k * exp) % e:
            nc = nc * omega ** ((g.k * exp) % e)
        t[exp] = nc
    return TowerElem(tower, TruncSeries(res, t, elem.series.prec))


def mu_value(tower, g):
    """mu_L(g) on a tame tower: 0 off inertia; -v(g(pi) - pi) for inertia
    moving the uniformizer; v(D) for inertia fixing it."""
    shape = tower.tame_shape()
    if shape is None:
        raise WildTowerError("mu is only computed on tame towers here")
    if g.f > 1 and g.a % g.f != 0:
        return Fraction(0)
    if g.e > 1 and g.k % g.e != 0:
        pi = tower.uniformizer()
        moved = tame_apply(tower, g, pi) - pi
        return -moved.valuation()
    return tower.different_valuation()


# ---------------------------------------------------------------------------
# derivative congruence (uniformizer-independence of the leading coefficient)


def derivative_congruence_check(z_series, psi_of_y):
    """Check ((f(y) - f(a)) / (y - a))|_{y=a} == f'(a) at a = psi_of_y.

    f = z_series over the tower's residue field; the quotient is produced by
    exact synthetic division, then both sides are evaluated in the tower.
    """
    tower = psi_of_y.tower
    if z_series.field is not tower.residue:
        raise ValueError("series coefficients must live in the tower's residue field")
    if z_series.prec is not None and z_series.prec < 2:
        raise InsufficientPrecisionError("need at least two known coefficients")
    if z_series.terms and min(z_series.terms) < 0:
        raise ValueError("z must be integral in y")
    a = psi_of_y
    hi = max(z_series.terms) if z_series.terms else 0
    coeffs = [tower.from_residue(z_series.terms.get(e, tower.residue.zero))
              for e in range(hi + 1)]
    # synthetic division f(y) - f(a) = (y - a) q(y): q_{j-1} = b_j + a*q_j
    q = [tower.zero()] * max(hi, 1)
    carry = tower.zero()
    for j in range(hi, 0, -1):
        carry = coeffs[j] + carry * a
        q[j - 1] = carry
    quotient_at_a = tower.zero()
    for j in range(len(q) - 1, -1, -1):
        quotient_at_a = quotient_at_a * a + q[j]
    deriv = z_series.derivative()
    deriv_at_a = tower.zero()
    for e in sorted(deriv.terms):
        deriv_at_a = deriv_at_a + a.pow(e).scale_coeff(deriv.terms[e])
    return (quotient_at_a - deriv_at_a).is_zero_within_precision()
