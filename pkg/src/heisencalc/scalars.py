"""Exact scalar arithmetic: Laurent polynomials in t and a rank-1 exterior scalar.

Everything here is exact: integer (or rational) coefficients, no floats.
"""

from fractions import Fraction

Rational = Fraction


def _as_coeff(c):
    if isinstance(c, (int, Fraction)):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class LaurentPoly:
    """Laurent polynomial in a single variable t with exact coefficients.

    Stored as a dict {exponent: coefficient} with zero coefficients stripped.
    Exponents may be negative.  Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(e, int):
                    raise TypeError("exponents must be ints")
                c = _as_coeff(c)
                if c != 0:
                    clean[e] = clean.get(e, 0) + c
                    if clean[e] == 0:
                        del clean[e]
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @staticmethod
    def zero():
        return LaurentPoly()

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    @staticmethod
    def t(exp=1):
        return LaurentPoly({exp: 1})

    @staticmethod
    def const(c):
        return LaurentPoly({0: c})

    @staticmethod
    def coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def items(self):
        return self._coeffs.items()

    def coeff(self, exp):
        return self._coeffs.get(exp, 0)

    def is_zero(self):
        return not self._coeffs

    def is_one(self):
        return self._coeffs == {0: 1}

    def min_exp(self):
        assert self._coeffs, "zero polynomial has no exponents"
        return min(self._coeffs)

    def max_exp(self):
        assert self._coeffs, "zero polynomial has no exponents"
        return max(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        acc = LaurentPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def substitute(self, value):
        """Evaluate at t = value (exact; value is int or Fraction).

        Raises ZeroDivisionError if the polynomial has a negative exponent
        and value == 0.
        """
        value = _as_coeff(value)
        total = Fraction(0)
        for e, c in self._coeffs.items():
            if e < 0 and value == 0:
                raise ZeroDivisionError(
                    "cannot substitute t=0 into a term with negative exponent"
                )
            total += Fraction(c) * Fraction(value) ** e
        return total

    def divexact(self, other):
        """Exact polynomial division; raises ValueError if not divisible.

        Used by fraction-free elimination, where divisibility is guaranteed.
        """
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        rem = dict(self._coeffs)
        quot = {}
        dmax = other.max_exp()
        dlead = other.coeff(dmax)
        min_q_exp = self.min_exp() - other.min_exp()
        while rem:
            e = max(rem)
            q_exp = e - dmax
            if q_exp < min_q_exp:
                raise ValueError("not exactly divisible")
            c = rem[e]
            q_coeff = c // dlead if isinstance(c, int) and c % dlead == 0 else Fraction(c, dlead)
            quot[q_exp] = q_coeff
            for oe, oc in other._coeffs.items():
                ne = oe + q_exp
                rem[ne] = rem.get(ne, 0) - oc * q_coeff
                if rem[ne] == 0:
                    del rem[ne]
        out = LaurentPoly(quot)
        if out * other != self:
            raise ValueError("not exactly divisible")
        return out

    def render(self, compact=False):
        """Human-readable form with ascending exponents, e.g. '1 + 2*t + t^2'.

        With compact=True the separators drop their spaces ('1+2*t+t^2'),
        which is the style used inside coefficient parentheses.
        """
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs):
            c = self._coeffs[e]
            if e == 0:
                body = str(c)
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                if c == 1:
                    body = tpow
                elif c == -1:
                    body = f"-{tpow}"
                else:
                    body = f"{c}*{tpow}"
            parts.append(body)
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += minus + p[1:]
            else:
                text += plus + p
        return text

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"


def qint(k):
    """Quantum integer [k] = 1 + t + ... + t^(k-1); qint(0) = 0.

    Requires k >= 0; a negative argument is a usage error.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"qint requires a nonnegative integer, got {k!r}")
    return LaurentPoly({e: 1 for e in range(k)})


def render_coeff_factor(poly):
    """Render a LaurentPoly as a multiplicative prefix: '', '2*', '(1 + t)*', ...

    Coefficient 1 renders as the empty prefix.  A bare (positive or negative)
    integer needs no parentheses; anything touching t gets wrapped so the
    result re-parses unambiguously.
    """
    poly = LaurentPoly.coerce(poly)
    if poly.is_one():
        return ""
    items = dict(poly.items())
    if set(items) == {0}:
        return "-" if items[0] == -1 else f"{items[0]}*"
    return f"({poly.render(compact=True)})*"


class ExtScalar:
    """Element c0 + c1*v of the rank-1 exterior algebra on one generator v.

    Multiplication uses v*v = 0; the trace takes tr(1) = 0 and tr(v) = 1.
    """

    __slots__ = ("c0", "c1")

    def __init__(self, c0=0, c1=0):
        object.__setattr__(self, "c0", Fraction(_as_coeff(c0)))
        object.__setattr__(self, "c1", Fraction(_as_coeff(c1)))

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    @staticmethod
    def one():
        return ExtScalar(1, 0)

    @staticmethod
    def v():
        return ExtScalar(0, 1)

    def __eq__(self, other):
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __add__(self, other):
        return ExtScalar(self.c0 + other.c0, self.c1 + other.c1)

    def __neg__(self):
        return ExtScalar(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"ExtScalar({self.c0}, {self.c1})"


def ext_mul(a, b):
    """Product in the exterior algebra: (a0 + a1 v)(b0 + b1 v), with v^2 = 0."""
    return ExtScalar(a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0)


def ext_trace(a):
    """Trace functional: tr(1) = 0, tr(v) = 1, extended linearly."""
    return a.c1
