"""Command-line front end.

Subcommands:

  carlitz     product-formula run: per-place table or JSON plus the
              regularization ledger; exits 0 only when the total is exactly 0
  omega       period valuations of one embedding pair, three routes compared
  zv          local zeta operator and Artin measure of a class function
  regularize  the four-term regularized value of a tail-convention sum

Exit codes: 0 success, 1 mathematical cross-check failure, 2 invalid input.
All rational output is exact ('num/den', with an explicit log q marker where
applicable); nothing is ever evaluated in floating point.  The environment
variable FFP_TOWER_BOUND overrides the tower degree cap.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .carlitz import CrossCheckError, carlitz_product_formula, report_as_dict
from .cmshtuka import (
    CMAlgebra,
    CMComponent,
    Embedding,
    WildComponentError,
    hat_valuation,
    max_recursion_depth,
    omega_period,
    omega_valuation_closed,
    omega_valuation_via_L,
    period_valuation_series,
)
from .fields import factor_prime_power
from .lfunctions import (
    ClassFunctionQ,
    ExplicitPlaceTerm,
    LocalGaloisDatum,
    LogQValue,
    MissingMuError,
    indicator_pair_function,
    TameEmbedding,
    log_q_value,
    mu_art_v,
    regularized_sum,
    z_v_rational,
    zeta_closed_forms,
)
from .ratfunc import PoleOrZeroError, QPoly, RatFunc
from .towers import TowerError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2


class InputError(ValueError):
    pass


def _frac(s):
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise InputError("rationals must be integers or 'num/den' strings: %r" % (s,))


def _frac_str(f):
    f = Fraction(f)
    return "%d/%d" % (f.numerator, f.denominator)


def _log_q_str(v):
    return "%s·log q" % _frac_str(v.coeff if isinstance(v, LogQValue) else v)


def _tower_bound(default):
    env = os.environ.get("FFP_TOWER_BOUND")
    if env is None:
        return default
    try:
        return int(env)
    except ValueError:
        raise InputError("FFP_TOWER_BOUND must be an integer, got %r" % env)


def _is_prime_power(n):
    try:
        factor_prime_power(n)
        return True
    except ValueError:
        return False


# -- carlitz -----------------------------------------------------------------


def cmd_carlitz(args):
    if not _is_prime_power(args.q) or args.q > 16:
        raise InputError("q must be a prime power <= 16, got %d" % args.q)
    if args.max_degree < 1:
        raise InputError("max-degree must be >= 1")
    if args.depth < 0:
        raise InputError("depth must be >= 0")
    limit = _tower_bound(20000)
    report = carlitz_product_formula(args.q, args.max_degree, args.depth, limit)
    payload = report_as_dict(report)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("Carlitz product formula, q = %d" % args.q)
        print("  infinite place: %s" % _log_q_str(report.infty))
        print("  place           deg  q_v   log|.|_v        route")
        for pv in report.places:
            route = "series" if pv.via_series else "closed-form (tower bound)"
            print("  %-14s %4d %4d   %-14s %s"
                  % (pv.place.label(), pv.place.degree, pv.place.q_v,
                     _log_q_str(pv.log_abs), route))
        print("  regularized tail: %s" % _log_q_str(report.tail_value))
        print("    -Z^infty(1,0) = %s" % _log_q_str(-report.z_infty_at_zero.coeff))
        print("    conductor term = %s, genus term = %s"
              % (_log_q_str(report.mu_term), _log_q_str(report.genus_term)))
        print("total: %s" % _log_q_str(report.total))
    return EXIT_OK


# -- omega --------------------------------------------------------------------


def _parse_embedding(raw, cm):
    try:
        parts = raw.strip().lstrip("(").rstrip(")").split(",")
        i, j, k = (int(x) for x in parts)
    except Exception:
        raise InputError("embeddings are written '(i,j,k)', got %r" % raw)
    if i >= len(cm.components):
        raise InputError("component %d does not exist" % i)
    c = cm.components[i]
    if not (0 <= j < c.f) or not (0 <= k < max(c.e, 1)):
        raise InputError("embedding %r out of range for component %d" % (raw, i))
    return Embedding(i, j, k)


def _load_cm(path):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("schema") != "1":
        raise InputError("cm file needs schema '1'")
    if "q_v" not in data or not _is_prime_power(data["q_v"]):
        raise InputError("cm file needs a prime-power q_v")
    comps = []
    for c in data.get("components", []):
        pairwise = None
        if c.get("pairwise") is not None:
            pairwise = tuple((int(a), int(b), _frac(v)) for a, b, v in c["pairwise"])
        comps.append(
            CMComponent(
                f=int(c["f"]),
                e=int(c["e"]),
                tame=bool(c.get("tame", True)),
                diff_valuation=(
                    _frac(c["diff_valuation"]) if c.get("diff_valuation") is not None
                    else None
                ),
                pairwise=pairwise,
            )
        )
    if not comps:
        raise InputError("cm file lists no components")
    cm = CMAlgebra(data["q_v"], comps)
    cm_type = {}
    for key, d in data.get("cm_type", {}).items():
        cm_type[_parse_embedding(key, cm)] = int(d)
    return cm, cm_type


def cmd_omega(args):
    cm, _ = _load_cm(args.cm)
    phi = _parse_embedding(args.phi, cm)
    psi = _parse_embedding(args.psi, cm)
    if phi.i != psi.i:
        raise InputError("phi and psi must lie in the same component")
    comp = cm.components[phi.i]
    try:
        closed = omega_valuation_closed(cm, phi, psi)
    except WildComponentError as exc:
        raise InputError(
            "wild component %d is missing tables (diff_valuation, pairwise): %s"
            % (phi.i, exc)
        )
    if not comp.tame:
        print("component %d is wild: closed-form valuation only" % phi.i)
        print("v(Omega) closed form: %s" % _frac_str(closed))
        return EXIT_OK
    if args.depth is not None and args.depth < 0:
        raise InputError("depth must be >= 0")
    bound = _tower_bound(64)
    depth = args.depth if args.depth is not None else max_recursion_depth(cm, phi.i, bound)
    pe = omega_period(cm, phi, psi, depth=depth, bound=bound)
    series = period_valuation_series(pe)
    via_l = omega_valuation_via_L(cm, phi, psi)
    agree = series == closed == via_l
    print("hat order:        %d" % hat_valuation(pe))
    print("series valuation: %s" % _frac_str(series))
    print("closed form:      %s" % _frac_str(closed))
    print("Z - mu route:     %s" % _frac_str(via_l))
    print("agreement:        %s" % ("yes" if agree else "NO"))
    return EXIT_OK if agree else EXIT_MISMATCH


# -- zv -----------------------------------------------------------------------


def _load_galois(path):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("schema") != "1":
        raise InputError("galois file needs schema '1'")
    if "q_v" not in data or not _is_prime_power(data["q_v"]):
        raise InputError("galois file needs a prime-power q_v")
    mode = data.get("mode")
    if mode == "tame":
        try:
            return LocalGaloisDatum.tame(data["q_v"], int(data["f"]), int(data["e"])), data
        except (KeyError, ValueError) as exc:
            raise InputError("bad tame datum: %s" % exc)
    if mode == "table":
        try:
            mu = {g: _frac(v) for g, v in (data.get("mu") or {}).items()}
            return (
                LocalGaloisDatum.from_table(
                    data["q_v"], data["elements"], data["table"],
                    data["inertia"], data["frobenius_coset"], mu,
                ),
                data,
            )
        except (KeyError, ValueError) as exc:
            raise InputError("bad table datum: %s" % exc)
    raise InputError("galois mode must be 'tame' or 'table'")


def _ratfunc_str(f):
    return "(%r) / (%r)" % (f.num, f.den)


def cmd_zv(args):
    datum, raw = _load_galois(args.galois)
    if args.char_file is not None:
        with open(args.char_file) as fh:
            spec = json.load(fh)
        if spec.get("schema") != "1" or "values" not in spec:
            raise InputError("class-function files need schema '1' and a values map")
        values = {}
        for g in datum.elements:
            key = g if isinstance(g, str) else "(%d,%d)" % (g.a, g.k)
            if key not in spec["values"]:
                raise InputError("class function misses a value for %s" % key)
            values[g] = _frac(spec["values"][key])
        a = ClassFunctionQ(datum, values)
        label = "class function from %s" % args.char_file
    elif args.char == "trivial":
        a = ClassFunctionQ.trivial(datum)
        label = "trivial character"
    else:
        if raw.get("mode") != "tame":
            raise InputError("pair characters need a tame datum")
        f, e = datum.f, datum.e
        phi = _parse_tame_pair(args.phi, f, e)
        psi = _parse_tame_pair(args.psi, f, e)
        a = indicator_pair_function(datum, phi, psi)
        label = "indicator of g.%s = %s" % (args.phi, args.psi)
    z = z_v_rational(datum, a)
    print("character: %s" % label)
    print("Z_v(a, s) in x = q_v^(-s): %s" % _ratfunc_str(z))
    for s0 in (0, 1):
        x0 = Fraction(datum.q_v) ** (-s0)
        try:
            val = z.evaluate(x0)
            print("Z_v(a, %d) = %s" % (s0, _frac_str(val)))
        except PoleOrZeroError:
            print("Z_v(a, %d): pole" % s0)
    try:
        mu = mu_art_v(datum, a)
        print("mu_Art,v(a) = %s" % _frac_str(mu))
    except MissingMuError as exc:
        raise InputError(str(exc))
    return EXIT_OK


def _parse_tame_pair(raw, f, e):
    if raw is None:
        raise InputError("pair characters need --phi and --psi")
    try:
        parts = raw.strip().lstrip("(").rstrip(")").split(",")
        j, k = (int(x) for x in parts)
    except Exception:
        raise InputError("tame embeddings are written '(j,k)', got %r" % raw)
    return TameEmbedding(j, k, f, e)


# -- regularize -----------------------------------------------------------------


def cmd_regularize(args):
    with open(args.config) as fh:
        data = json.load(fh)
    if data.get("schema") != "1":
        raise InputError("config needs schema '1'")
    q = data.get("q")
    if not isinstance(q, int) or not _is_prime_power(q):
        raise InputError("config needs a prime-power q")
    genus = int(data.get("genus", 0))
    character = data.get("character", "trivial")
    if character == "trivial":
        l_infty, _ = zeta_closed_forms(q)
        a_identity = Fraction(1)
        mu_infty = log_q_value(0)
    else:
        lf = data.get("l_infty")
        if lf is None:
            raise InputError("non-trivial characters need an l_infty rational function")
        l_infty = RatFunc(QPoly([_frac(c) for c in lf["num"]]),
                          QPoly([_frac(c) for c in lf["den"]]))
        a_identity = _frac(data.get("a_identity", 1))
        mu_infty = LogQValue(_frac(data.get("mu_infty", 0)))
    explicit = []
    for row in data.get("explicit", []):
        deg = int(row["degree"])
        if character == "trivial":
            zv1 = Fraction(1, q ** deg - 1)
        else:
            zv1 = _frac(row["z_v_at_1"])
        explicit.append(
            ExplicitPlaceTerm(str(row.get("label", "?")), deg,
                              LogQValue(_frac(row["x"])), zv1)
        )
    try:
        value = regularized_sum(l_infty, q, mu_infty, genus, a_identity, explicit)
        from .lfunctions import z_infty_at

        z0 = z_infty_at(l_infty, q, 0)
    except PoleOrZeroError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_MISMATCH
    print("regularized value ledger (coefficients of log q):")
    print("  -Z^infty(a*, 0)   = %s" % _frac_str(-z0.coeff))
    print("  -mu^infty_Art(a)  = %s" % _frac_str(-mu_infty.coeff))
    print("  genus term        = %s" % _frac_str(-2 * genus * a_identity))
    corr = sum((t.x_v.coeff + t.z_v_at_one * t.degree for t in explicit), Fraction(0))
    print("  explicit terms    = %s" % _frac_str(corr))
    print("value: %s" % _log_q_str(value))
    return EXIT_OK


# -- driver ---------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ffperiods",
        description="exact period and L-factor computations for CM local shtukas",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("carlitz", help="run the Carlitz product formula")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_carlitz)

    p = sub.add_parser("omega", help="period valuations of one embedding pair")
    p.add_argument("--cm", required=True, help="path to a cm.json description")
    p.add_argument("--phi", required=True, help="embedding '(i,j,k)'")
    p.add_argument("--psi", required=True, help="embedding '(i,j,k)'")
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(fn=cmd_omega)

    p = sub.add_parser("zv", help="local zeta operator and Artin measure")
    p.add_argument("--galois", required=True, help="path to a galois.json datum")
    p.add_argument("--char", default="trivial", choices=("trivial", "pair"))
    p.add_argument("--phi", default=None, help="tame embedding '(j,k)'")
    p.add_argument("--psi", default=None, help="tame embedding '(j,k)'")
    p.add_argument("--char-file", default=None,
                   help="JSON class function {schema, values: {g: 'num/den'}}")
    p.set_defaults(fn=cmd_zv)

    p = sub.add_parser("regularize", help="regularized value of a tail sum")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_regularize)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (CrossCheckError,) as exc:
        print("cross-check failure: %s" % exc, file=sys.stderr)
        return EXIT_MISMATCH
    except (TowerError, PoleOrZeroError, WildComponentError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
