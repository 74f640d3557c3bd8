"""Sparse, precision-tracked (truncated) Laurent series over a finite field.

A TruncSeries is a finite map {exponent -> nonzero coefficient} together with
a precision bound ``prec``: every coefficient of T^m with m < prec is known
exactly, nothing is claimed beyond.  ``prec = None`` marks an exact series
(a Laurent polynomial, all coefficients known).  Every operation computes the
tightest provable precision of its output; when a needed leading term is not
determined inside the known range the operation raises rather than guessing.
"""



class InsufficientPrecisionError(ArithmeticError):
    pass


class TruncSeries:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field, terms, prec=None):
        t = {}
        for e, c in terms.items():
            c = field.elem(c)
            if c.is_zero():
                continue
            if prec is not None and e >= prec:
                continue
            t[e] = c
        self.field = field
        self.terms = t
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, prec=None):
        return cls(field, {}, prec)

    @classmethod
    def one(cls, field, prec=None):
        return cls(field, {0: field.one}, prec)

    @classmethod
    def monomial(cls, field, exponent, coeff=None, prec=None):
        return cls(field, {exponent: field.one if coeff is None else coeff}, prec)

    # -- structure ----------------------------------------------------------

    def is_exact(self):
        return self.prec is None

    def is_zero(self):
        """True iff provably zero (exact and no terms)."""
        return not self.terms and self.prec is None

    def ord(self):
        """Exponent of the lowest known term.

        Raises if the series has no visible term: an inexact series with empty
        support might still be nonzero past its precision.
        """
        if self.terms:
            return min(self.terms)
        if self.prec is None:
            raise ValueError("ord of the zero series")
        raise InsufficientPrecisionError(
            "series is 0 to precision O(T^%d); ord undetermined" % self.prec
        )

    def ord_lower_bound(self):
        if self.terms:
            return min(self.terms)
        return self.prec  # None means +infinity (exact zero)

    def leading_coeff(self):
        return self.terms[self.ord()]

    def coeff(self, e):
        if self.prec is not None and e >= self.prec:
            raise InsufficientPrecisionError("coefficient of T^%d beyond O(T^%d)" % (e, self.prec))
        return self.terms.get(e, self.field.zero)

    def __eq__(self, other):
        """Equality of the stored data (same terms and same precision)."""
        return (
            isinstance(other, TruncSeries)
            and self.field is other.field
            and self.terms == other.terms
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((id(self.field), tuple(sorted(self.terms.items(), key=lambda kv: kv[0])), self.prec))

    def agrees_with(self, other):
        """Equality up to the common precision."""
        d = self - other
        return not d.terms

    def __repr__(self):
        items = sorted(self.terms.items())
        body = " + ".join(
            ("%r" % c if e == 0 else ("%r*T^%d" % (c, e) if c != self.field.one else "T^%d" % e))
            for e, c in items
        )
        if not body:
            body = "0"
        if self.prec is not None:
            body += " + O(T^%d)" % self.prec
        return body

    # -- arithmetic ----------------------------------------------------------

    def _common_prec(self, other):
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("series over different coefficient fields")
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, self.field.zero) + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        return TruncSeries(self.field, t, self._common_prec(other))

    def __neg__(self):
        return TruncSeries(self.field, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("series over different coefficient fields")
        # output precision: min over the unknown-tail contributions
        prec = None
        if self.prec is not None:
            lb = other.ord_lower_bound()
            prec = None if lb is None else self.prec + lb
        if other.prec is not None:
            lb = self.ord_lower_bound()
            p2 = None if lb is None else other.prec + lb
            prec = p2 if prec is None else min(prec, p2)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                s = t.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return TruncSeries(self.field, t, prec)

    def scale(self, c):
        c = self.field.elem(c)
        return TruncSeries(self.field, {e: x * c for e, x in self.terms.items()}, self.prec)

    def shift(self, k):
        """Multiply by T^k."""
        return TruncSeries(
            self.field,
            {e + k: c for e, c in self.terms.items()},
            None if self.prec is None else self.prec + k,
        )

    def truncate(self, prec):
        if self.prec is not None and prec > self.prec:
            prec = self.prec
        return TruncSeries(self.field, {e: c for e, c in self.terms.items() if e < prec}, prec)

    def inv(self, prec=None):
        """Multiplicative inverse.

        For an exact monomial the result is exact.  Otherwise a target
        precision is needed (defaults to the input's own precision window).
        """
        if not self.terms:
            if self.prec is None:
                raise ZeroDivisionError("inverse of the zero series")
            raise InsufficientPrecisionError("inverse of a series with no visible term")
        m = self.ord()
        c0 = self.terms[m]
        if len(self.terms) == 1 and self.prec is None:
            return TruncSeries(self.field, {-m: c0.inv()})
        if prec is None:
            if self.prec is None:
                raise ValueError("inv of an exact non-monomial needs a target precision")
            prec = self.prec - 2 * m
        else:
            if self.prec is not None and prec > self.prec - 2 * m:
                raise InsufficientPrecisionError(
                    "cannot invert to O(T^%d): input only known to O(T^%d)" % (prec, self.prec)
                )
        # u = 1 - self/(c0 T^m); inverse = (1/(c0 T^m)) * sum u^j
        rel_prec = prec + m  # precision for the unit-part inverse
        unit = self.shift(-m).scale(c0.inv()).truncate(rel_prec)
        u = TruncSeries.one(self.field, rel_prec) - unit
        acc = TruncSeries.one(self.field, rel_prec)
        term = TruncSeries.one(self.field, rel_prec)
        u_lb = u.ord_lower_bound()
        if u_lb is not None and u_lb <= 0:
            raise AssertionError("unit normalization failed")
        while term.terms:
            term = (term * u).truncate(rel_prec)
            acc = acc + term
        return acc.shift(-m).scale(c0.inv())

    def compose(self, inner):
        """Substitute `inner` (ord >= 1) for the variable.

        Only nonnegative exponents are allowed here; Laurent substitution is
        assembled by the callers that need it (split off the principal part
        and multiply by inverse powers).
        """
        if inner.terms and inner.ord() < 1:
            raise ValueError("compose requires ord(inner) >= 1")
        if self.terms and min(self.terms) < 0:
            raise ValueError("compose is only defined for nonnegative exponents")
        prec = None
        if self.prec is not None:
            lb = inner.ord_lower_bound()
            prec = None if lb is None else self.prec * max(lb, 1)
        if inner.prec is not None:
            prec = inner.prec if prec is None else min(prec, inner.prec)
        if not self.terms:
            return TruncSeries.zero(self.field, prec)
        # term-by-term (the supports are sparse and exponents can be huge;
        # char-p powering keeps each inner^e cheap)
        acc = TruncSeries.zero(self.field, prec)
        lb = inner.ord_lower_bound()
        for e in sorted(self.terms):
            if prec is not None and lb is not None and e * lb >= prec:
                break
            term = inner.pow_int(e).scale(self.terms[e])
            if prec is not None:
                term = term.truncate(prec)
            acc = acc + term
        if prec is not None:
            acc = acc.truncate(prec)
        return acc

    def frobenius_coeffs(self, n=1):
        """Raise every coefficient to its p^n power, exponents unchanged."""
        return TruncSeries(
            self.field, {e: c.frobenius(n) for e, c in self.terms.items()}, self.prec
        )

    def pow_int(self, n):
        if n < 0:
            return self.inv().pow_int(-n)
        if n == 0:
            return TruncSeries.one(self.field)
        p = self.field.p
        result = TruncSeries.one(self.field)
        # char-p powering: a^(p^j) is coefficient Frobenius + exponent scaling
        base = self
        while n:
            digit = n % p
            for _ in range(digit):
                result = result * base
            n //= p
            if n:
                base = base._pow_char_p()
        return result

    def _pow_char_p(self):
        p = self.field.p
        return TruncSeries(
            self.field,
            {e * p: c ** p for e, c in self.terms.items()},
            None if self.prec is None else self._char_p_prec(),
        )

    def _char_p_prec(self):
        # (f + O(T^N))^p = f^p + O(T^(N + (p-1)*min(ord, N)))
        p = self.field.p
        lb = self.ord_lower_bound()
        if lb is None:
            return None
        return self.prec + (p - 1) * min(lb, self.prec)

    def derivative(self):
        return TruncSeries(
            self.field,
            {e - 1: c.scale_int(e) for e, c in self.terms.items() if e % self.field.p != 0},
            None if self.prec is None else self.prec - 1,
        )

    def map_coeffs(self, fn, new_field=None):
        """Apply fn to every coefficient (e.g. a field embedding)."""
        f = new_field if new_field is not None else self.field
        t = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                t[e] = v
        return TruncSeries(f, t, self.prec)


def series_arith(a, b, op, n=1, prec=None):
    """Dispatch wrapper: op in {add, mul, inv, compose, frobenius_coeffs, derivative}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv(prec)
    if op == "compose":
        return a.compose(b)
    if op == "frobenius_coeffs":
        return a.frobenius_coeffs(n)
    if op == "derivative":
        return a.derivative()
    raise ValueError("unknown series op %r" % (op,))
