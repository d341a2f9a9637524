"""
Truncated Laurent series in q with exact rational coefficients.

A QSeries stores coefficients densely for exponents valuation..prec-1.
Everything at exponent >= prec is unknown; arithmetic only reports
coefficients that are provably correct (the usual Laurent product rule).
"""

import json
from fractions import Fraction
from functools import cached_property
from math import lcm


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def format_rational(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def _common_denominator(coeffs):
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def _convolve(a, b, n):
    """First n terms of the product of two integer sequences."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


class QSeries:
    """
    q^v * (c_0 + c_1 q + ... + c_{N-v-1} q^{N-v-1}) + O(q^N).

    ``valuation`` is the lowest stored exponent (its coefficient may be
    zero, e.g. after a cancellation), ``prec`` the first unknown exponent.
    Instances are treated as immutable.
    """

    def __init__(self, valuation, prec, coeffs):
        valuation, prec = int(valuation), int(prec)
        coeffs = tuple(as_fraction(c) for c in coeffs)
        if prec <= valuation:
            raise ValueError("prec must exceed valuation")
        if len(coeffs) != prec - valuation:
            raise ValueError(
                "expected %d coefficients, got %d" % (prec - valuation, len(coeffs))
            )
        self.valuation = valuation
        self.prec = prec
        self.coeffs = coeffs

    # -- construction ----------------------------------------------------

    @classmethod
    def from_terms(cls, terms, prec, valuation=None):
        """Build from a dict {exponent: coefficient}."""
        if valuation is None:
            valuation = min(terms, default=0)
            valuation = min(valuation, prec - 1)
        coeffs = [0] * (prec - valuation)
        for n, c in terms.items():
            if n < valuation:
                raise ValueError("term q^%d below valuation %d" % (n, valuation))
            if n < prec:
                coeffs[n - valuation] = c
        return cls(valuation, prec, coeffs)

    @classmethod
    def constant(cls, c, prec):
        return cls.from_terms({0: c}, prec, valuation=0)

    @classmethod
    def monomial(cls, n, prec, c=1):
        return cls.from_terms({n: c}, prec, valuation=n)

    # -- access ----------------------------------------------------------

    def __getitem__(self, n):
        if n >= self.prec:
            raise IndexError("coefficient of q^%d is beyond precision %d" % (n, self.prec))
        if n < self.valuation:
            return Fraction(0)
        return self.coeffs[n - self.valuation]

    def exponents(self):
        return range(self.valuation, self.prec)

    def items(self):
        return zip(self.exponents(), self.coeffs)

    def nonzero_terms(self):
        return {n: c for n, c in self.items() if c}

    def is_zero(self):
        return not any(self.coeffs)

    def order(self):
        """Exponent of the first nonzero coefficient, or None if zero to precision."""
        for n, c in self.items():
            if c:
                return n
        return None

    def leading(self):
        n = self.order()
        if n is None:
            return None, Fraction(0)
        return n, self[n]

    @cached_property
    def float_coeffs(self):
        return [float(c) for c in self.coeffs]

    # -- shape changes ---------------------------------------------------

    def truncate(self, prec):
        """Drop everything at exponent >= prec; prec may not exceed self.prec."""
        if prec > self.prec:
            raise ValueError("cannot raise precision from %d to %d" % (self.prec, prec))
        if prec == self.prec:
            return self
        if prec <= self.valuation:
            raise ValueError("truncation below valuation")
        return QSeries(self.valuation, prec, self.coeffs[: prec - self.valuation])

    def normalized(self):
        """Strip leading zero coefficients (the zero series is returned as is)."""
        n = self.order()
        if n is None or n == self.valuation:
            return self
        return QSeries(n, self.prec, self.coeffs[n - self.valuation :])

    def shift(self, m):
        """Multiply by q^m."""
        return QSeries(self.valuation + m, self.prec + m, self.coeffs)

    def map_coefficients(self, fn):
        """Apply fn(exponent, coefficient) termwise."""
        return QSeries(self.valuation, self.prec, [fn(n, c) for n, c in self.items()])

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, max(self.prec, 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        v = min(self.valuation, other.valuation)
        N = min(self.prec, other.prec)
        return QSeries(v, N, [self[n] + other[n] for n in range(v, N)])

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.valuation, self.prec, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_fraction(c)
        return QSeries(self.valuation, self.prec, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        v = self.valuation + other.valuation
        N = min(self.valuation + other.prec, other.valuation + self.prec)
        n = N - v
        da, ia = _common_denominator(self.coeffs)
        db, ib = _common_denominator(other.coeffs)
        den = da * db
        return QSeries(v, N, [Fraction(x, den) for x in _convolve(ia, ib, n)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        result = QSeries.constant(1, self.prec - self.valuation)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self):
        """
        Multiplicative inverse.  Leading zeros are stripped first; for
        a = q^v u with u known to relative precision r, 1/a = q^{-v} u^{-1}
        is known to the same relative precision r.
        """
        a = self.normalized()
        c0 = a.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("not invertible at this precision")
        r = len(a.coeffs)
        inv0 = 1 / c0
        b = [inv0]
        for n in range(1, r):
            s = sum(a.coeffs[m] * b[n - m] for m in range(1, n + 1))
            b.append(-s * inv0)
        return QSeries(-a.valuation, -a.valuation + r, b)

    def Dq(self):
        """q d/dq, termwise multiplication of the q^n coefficient by n."""
        return self.map_coefficients(lambda n, c: n * c)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.nonzero_terms() == other.nonzero_terms()

    def __hash__(self):
        return hash((self.prec, tuple(sorted(self.nonzero_terms().items()))))

    def agrees_with(self, other, prec=None):
        """True if both series have the same coefficients below prec (default: common precision)."""
        N = min(self.prec, other.prec) if prec is None else prec
        lo = min(self.valuation, other.valuation)
        return all(self[n] == other[n] for n in range(lo, N))

    # -- printing / serialization ---------------------------------------

    def __repr__(self):
        terms = []
        for n, c in self.items():
            if not c:
                continue
            if n == 0:
                terms.append(str(c))
            else:
                mono = "q" if n == 1 else "q^%d" % n
                terms.append(mono if c == 1 else "%s*%s" % (c, mono))
            if len(terms) >= 6:
                break
        body = " + ".join(terms) if terms else "0"
        return "%s + O(q^%d)" % (body, self.prec)

    def to_dict(self):
        return {
            "valuation": self.valuation,
            "prec": self.prec,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["valuation"], d["prec"], [parse_rational(s) for s in d["coeffs"]])

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


# Function spellings of the core operations.

def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_Dq(a):
    return a.Dq()


def series_invert(a):
    return a.invert()
