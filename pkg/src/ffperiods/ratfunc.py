"""Univariate rational functions over Q, kept in normalized form.

Used for the local zeta operators Z_v(a, s) viewed as rational functions of
x = q_v^(-s) and for the global zeta functions in u = q^(-s).  Coefficients
are exact Fractions; normalization makes numerator and denominator coprime
with a monic denominator.
"""

from fractions import Fraction


class QPoly:
    """Polynomial over Q as a dense coefficient tuple (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([Fraction(c)])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def degree(self):
        if self.coeffs == (Fraction(0),):
            return -1
        return len(self.coeffs) - 1

    def is_zero(self):
        return self.degree < 0

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return QPoly([0])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    def scale(self, c):
        c = Fraction(c)
        return QPoly([a * c for a in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(1, len(rem) - other.degree)
        while len(rem) - 1 >= other.degree and any(rem):
            if rem[-1] == 0:
                rem.pop()
                continue
            c = rem[-1] / other.coeffs[-1]
            shift = len(rem) - 1 - other.degree
            q[shift] = c
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] -= c * oc
            while len(rem) > 1 and rem[-1] == 0:
                rem.pop()
        return QPoly(q), QPoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.scale(1 / a.coeffs[-1])

    def derivative(self):
        if self.degree < 1:
            return QPoly([0])
        return QPoly([self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def evaluate(self, x0):
        x0 = Fraction(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0 and self.degree >= 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else "%s*x" % c)
            else:
                terms.append("x^%d" % i if c == 1 else "%s*x^%d" % (c, i))
        return " + ".join(reversed(terms)) if terms else "0"


class PoleOrZeroError(ArithmeticError):
    pass


class RatFunc:
    """num/den over Q; normalized: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, QPoly):
            num = QPoly(num if isinstance(num, (list, tuple)) else [num])
        if den is None:
            den = QPoly([1])
        elif not isinstance(den, QPoly):
            den = QPoly(den if isinstance(den, (list, tuple)) else [den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        if num.is_zero():
            den = QPoly([1])
        else:
            lead = den.coeffs[-1]
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(QPoly.const(c))

    @classmethod
    def x(cls):
        return cls(QPoly.x())

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def scale(self, c):
        return RatFunc(self.num.scale(c), self.den)

    def derivative(self):
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, x0):
        x0 = Fraction(x0)
        d = self.den.evaluate(x0)
        if d == 0:
            raise PoleOrZeroError("pole at x = %s" % x0)
        return self.num.evaluate(x0) / d

    def has_pole_at(self, x0):
        return self.den.evaluate(x0) == 0

    def __repr__(self):
        if self.den == QPoly([1]):
            return "(%r)" % self.num
        return "(%r)/(%r)" % (self.num, self.den)


def logderiv_value(f, x0):
    """Exact value of f'(x0)/f(x0) for a RatFunc f; errors if f has a zero or
    pole at x0 (there the logarithmic derivative has a pole)."""
    x0 = Fraction(x0)
    if f.den.evaluate(x0) == 0:
        raise PoleOrZeroError("pole of f at x = %s" % x0)
    v = f.evaluate(x0)
    if v == 0:
        raise PoleOrZeroError("zero of f at x = %s" % x0)
    return f.derivative().evaluate(x0) / v
