"""Good-reduction A-motive models over R = kappa[[pi]] and their local
shtukas at a finite place.

The entries of the twist matrix are polynomials in t with coefficients in R;
the structure map sends t to theta in R.  At a place cut out by a monic
irreducible p(t) of degree d the associated local shtuka is obtained by

  (i)  Hensel-solving p(T) = z for t = T(z) in R[[z]], starting from the
       residue root of p that matches theta's reduction, and
  (ii) substituting T(z) into the d-fold twisted product
       tau . sigma*tau . ... . sigma^(d-1)*tau, where sigma raises the
       R-coefficients to the q-th power and fixes t.

For the Carlitz motive at a degree-1 place the output is exactly z - zeta.
"""

from .coeffseries import CoeffSeries, poly_at_series
from .towers import LocalFieldTower, TowerError, newton_root


class ResidueMismatchError(ValueError):
    pass


class HenselFailureError(ArithmeticError):
    pass


class AMotiveModel:
    """rank, matrix of t-polynomials over the model tower, and theta."""

    def __init__(self, q, rank, tau_matrix, theta, tower):
        self.q = q
        self.rank = rank
        self.tau = tau_matrix  # rank x rank nested lists of CoeffSeries in t
        self.theta = theta
        self.tower = tower
        if len(tau_matrix) != rank or any(len(row) != rank for row in tau_matrix):
            raise ValueError("tau matrix must be %d x %d" % (rank, rank))


def carlitz_model(q, place_poly, bound=None, prec=None):
    """The Carlitz motive (rank 1, tau = t - theta) over the completion at
    the place of p(theta); theta is the Hensel root of p(X) = zeta."""
    d = place_poly.degree
    q_v = q ** d
    tower = LocalFieldTower.base(q_v, bound=bound or 64, prec=prec or (4 * d + 28))
    theta, _ = _theta_root(tower, q, place_poly)
    t_poly = CoeffSeries(tower, {0: -theta, 1: tower.one()})
    return AMotiveModel(q, 1, [[t_poly]], theta, tower)


def identity_model(q, rank, q_v=None):
    """The etale unit model: tau the identity matrix."""
    tower = LocalFieldTower.base(q_v or q)
    theta = tower.uniformizer()
    one = CoeffSeries.one(tower)
    zero = CoeffSeries.zero(tower)
    tau = [[one if i == j else zero for j in range(rank)] for i in range(rank)]
    return AMotiveModel(q, rank, tau, theta, tower)


def _embed_place_coeffs(tower, q, place_poly):
    """The place polynomial's coefficients as residue constants of the tower."""
    src = place_poly.field
    if src.p != tower.residue.p or tower.residue.k % src.k != 0:
        raise ResidueMismatchError(
            "the model's residue field does not contain the place's coefficient field"
        )
    emb = src.embedding(tower.residue)
    return [tower.from_residue(emb(c)) for c in place_poly.coeffs]


def _theta_root(tower, q, place_poly):
    """Hensel root of p(X) = zeta in the tower, from the smallest residue
    root of p; returns (theta, residue_root)."""
    coeffs = _embed_place_coeffs(tower, q, place_poly)
    coeffs[0] = coeffs[0] - tower.uniformizer()
    root0 = _smallest_residue_root(tower.residue, place_poly)
    theta = newton_root(tower, coeffs, root0)
    return theta, root0


def _smallest_residue_root(res, place_poly):
    emb = place_poly.field.embedding(res)
    for cand in res.elements():
        acc = res.zero
        for c in reversed(place_poly.coeffs):
            acc = acc * cand + emb(c)
        if acc.is_zero():
            return cand
    raise ResidueMismatchError("the place polynomial has no root in the residue field")


def hensel_t_of_z(model, place_poly, depth):
    """T(z) in R[[z]] with p(T) = z and T(0) the residue root matching theta.

    Newton in the z-adic sense; the residue root must be simple (automatic
    for an irreducible place).
    """
    tower = model.tower
    coeffs = _embed_place_coeffs(tower, model.q, place_poly)
    if model.theta.series.prec is not None and model.theta.series.prec < 1:
        raise HenselFailureError("theta has no determined residue")
    theta_res = model.theta.series.terms.get(0, tower.residue.zero)
    t_cur = CoeffSeries.constant(tower, tower.from_residue(theta_res), depth + 1)
    z_var = CoeffSeries.variable(tower, depth + 1)
    dcoeffs = [c.scale_residue_int(j) for j, c in enumerate(coeffs)][1:]

    def ev(cs, x):
        acc = CoeffSeries.zero(tower, depth + 1)
        for c in reversed(cs):
            acc = (acc * x).truncate(depth + 1) + CoeffSeries.constant(
                tower, c, depth + 1
            )
        return acc

    fx = ev(coeffs, t_cur) - z_var
    dfx = ev(dcoeffs, t_cur)
    d0 = dfx.terms.get(0)
    if d0 is None or not d0.series.terms or d0.ord() != 0:
        raise HenselFailureError("place root is not simple; Hensel cannot start")
    for _ in range(depth + 3):
        if fx.is_zero_within_precision():
            return t_cur
        t_cur = (t_cur - fx * dfx.inv(depth + 1)).truncate(depth + 1)
        fx = ev(coeffs, t_cur) - z_var
        dfx = ev(dcoeffs, t_cur)
    raise HenselFailureError("z-adic Newton did not converge")


def _sigma_twist_poly(poly, q, n=1):
    """sigma^n on a t-polynomial: coefficients to the q^n power, t fixed."""
    return poly.coeff_pow_map(lambda c: c.pow(q ** n))


_poly_at_series = poly_at_series


def amotive_to_local_shtuka(model, place_poly, depth):
    """The local shtuka matrix at the place, over truncated R[[z]].

    Returns a rank x rank nested list of CoeffSeries in z.
    """
    if not place_poly.is_irreducible():
        raise ValueError("the place polynomial must be irreducible")
    d_v = place_poly.degree
    tower = model.tower
    if tower.residue.k % (d_v * place_poly.field.k) != 0:
        raise ResidueMismatchError(
            "residue field F_(%d^%d) does not contain the place's residue field"
            % (tower.residue.p, tower.residue.k)
        )
    t_of_z = hensel_t_of_z(model, place_poly, depth)
    factors = []
    for i in range(d_v):
        twisted = [
            [_sigma_twist_poly(model.tau[r][c], model.q, i) for c in range(model.rank)]
            for r in range(model.rank)
        ]
        substituted = [
            [
                _poly_at_series(entry, t_of_z, depth + 1, tower)
                if entry.terms
                else CoeffSeries.zero(tower, depth + 1)
                for entry in row
            ]
            for row in twisted
        ]
        factors.append(substituted)
    out = factors[0]
    for m in factors[1:]:
        out = _mat_mul(out, m, model.rank, depth + 1)
    return out


def _mat_mul(a, b, rank, prec):
    out = []
    for r in range(rank):
        row = []
        for c in range(rank):
            acc = None
            for k in range(rank):
                term = (a[r][k] * b[k][c]).truncate(prec)
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def shtuka_determinant(matrix, prec):
    """Naive Laplace determinant of a small matrix of z-series."""
    rank = len(matrix)
    if rank == 1:
        return matrix[0][0]
    det = None
    for c in range(rank):
        entry = matrix[0][c]
        minor = [
            [matrix[r][cc] for cc in range(rank) if cc != c] for r in range(1, rank)
        ]
        piece = entry * shtuka_determinant(minor, prec)
        if c % 2:
            piece = -piece
        det = piece if det is None else det + piece
    return det.truncate(prec) if det.prec is not None else det


def z_series_hat_order(series, zeta, max_order=None):
    """ord_(z - zeta) of a z-series with R-coefficients: expand around
    z = zeta + u and report the first u-coefficient with a visible term.

    Coefficients that vanish only within precision are treated as zero at
    that precision; the returned order is therefore an 'order within working
    precision', which is the honest notion here.
    """
    tower = zeta.tower
    bound = series.prec if series.prec is not None else series.degree_bound() + 1
    shift = CoeffSeries(tower, {0: zeta, 1: tower.one()}, bound)
    around = _poly_at_series(series, shift, bound, tower)
    limit = bound if max_order is None else min(bound, max_order + 1)
    zeta_ord = zeta.ord()
    for m in range(limit):
        c = around.terms.get(m)
        if c is None:
            continue
        # the unknown z-tail O(z^bound) contributes only above this pi-order
        c = c.truncate((bound - m) * zeta_ord)
        if c.series.terms:
            return m
    raise TowerError("no visible coefficient below order %d" % limit)
