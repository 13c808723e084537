"""Exact coefficient arithmetic: rationals, powers of pi, and a curvature variable.

Everything downstream (algebra builds, kinematic tables, emitters) works over
these rings.  ``Scalar`` is a Laurent polynomial in pi with rational
coefficients; pi is treated as a formal transcendental, so nothing is ever
rounded.  ``LambdaScalar`` extends a Scalar by a polynomial curvature variable
``lam`` (formal weight -2 in the graded bookkeeping used by the space-form
algebras).
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


class ScalarError(ArithmeticError):
    pass


class UnsupportedInverse(ScalarError):
    """Inverse of a multi-term Scalar was requested."""


class InexactDivision(ScalarError):
    """Exact polynomial division left a remainder."""


def binomial(a, b):
    """Binomial coefficient with the convention C(a,b)=0 for b<0 or b>a."""
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def factorial(k):
    return math.factorial(k)


def double_factorial(k):
    if k <= 0:
        return 1
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r


def _coerce_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class Scalar:
    """Element of Q[pi, pi^-1], stored as a map pi-exponent -> nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for p, c in terms.items():
                c = _coerce_fraction(c)
                if c != 0:
                    clean[int(p)] = clean.get(int(p), Fraction(0)) + c
        self.terms = {p: c for p, c in clean.items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, q):
        return cls({0: _coerce_fraction(q)})

    @classmethod
    def pi_power(cls, m, coeff=1):
        return cls({m: _coerce_fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: Fraction(1)})

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return set(self.terms) <= {0}

    def as_rational(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ScalarError(f"{self} is not a plain rational")
        return self.terms[0]

    def is_single_term(self):
        return len(self.terms) == 1

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, Fraction(0)) + c
        return Scalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                p = p1 + p2
                terms[p] = terms.get(p, Fraction(0)) + c1 * c2
        return Scalar(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = Scalar.one()
        for _ in range(k):
            r = r * self
        return r

    def inverse(self):
        """Inverse of a single-term Scalar; multi-term inversion is unsupported."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        if not self.is_single_term():
            raise UnsupportedInverse(f"cannot invert multi-term Scalar {self}")
        (p, c), = self.terms.items()
        return Scalar({-p: Fraction(1) / c})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_single_term():
            return self * other.inverse()
        return self.exact_div(other)

    def exact_div(self, other):
        """Exact division in Q[pi,pi^-1]; raises InexactDivision on remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        if self.is_zero():
            return Scalar.zero()
        # shift both to ordinary polynomials in pi
        lo_n = min(self.terms)
        lo_d = min(other.terms)
        num = self._as_poly_list(lo_n)
        den = other._as_poly_list(lo_d)
        quo = [Fraction(0)] * (len(num) - len(den) + 1)
        if len(num) < len(den):
            raise InexactDivision(f"{self} not divisible by {other}")
        rem = list(num)
        dlead = den[-1]
        for i in range(len(quo) - 1, -1, -1):
            q = rem[i + len(den) - 1] / dlead
            quo[i] = q
            if q != 0:
                for j, dj in enumerate(den):
                    rem[i + j] -= q * dj
        if any(r != 0 for r in rem):
            raise InexactDivision(f"{self} not divisible by {other}")
        shift = lo_n - lo_d
        return Scalar({shift + i: c for i, c in enumerate(quo) if c != 0})

    def _as_poly_list(self, lo):
        hi = max(self.terms)
        out = [Fraction(0)] * (hi - lo + 1)
        for p, c in self.terms.items():
            out[p - lo] = c
        return out

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms):
            c = self.terms[p]
            if p == 0:
                parts.append(f"{c}")
            elif p == 1:
                parts.append(f"{c}*pi")
            else:
                parts.append(f"{c}*pi^{p}")
        return " + ".join(parts)

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "terms": [
                {"pi_pow": p, "num": str(self.terms[p].numerator),
                 "den": str(self.terms[p].denominator)}
                for p in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, doc):
        return cls({t["pi_pow"]: Fraction(int(t["num"]), int(t["den"]))
                    for t in doc["terms"]})


ZERO = Scalar.zero()
ONE = Scalar.one()
PI = Scalar.pi_power(1)


def omega(k):
    """Volume of the k-dimensional unit ball, as an exact Scalar.

    omega_k = pi^(k/2) / Gamma(1 + k/2); half-integer Gamma values are expanded
    exactly, so the result always lands in Q * pi^floor(k/2).
    """
    if k < 0:
        raise ValueError("omega(k) needs k >= 0")
    if k % 2 == 0:
        m = k // 2
        return Scalar.pi_power(m, Fraction(1, factorial(m)))
    m = (k - 1) // 2
    # Gamma(1 + (2m+1)/2) = (2m+2)! sqrt(pi) / (4^(m+1) (m+1)!)
    coeff = Fraction(4 ** (m + 1) * factorial(m + 1), factorial(2 * m + 2))
    return Scalar.pi_power(m, coeff)


def alpha(k):
    """Volume of the k-dimensional unit sphere: alpha_k = (k+1) * omega_{k+1}."""
    return omega(k + 1) * (k + 1)


class LambdaScalar:
    """Polynomial in the curvature variable lam with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for j, s in terms.items():
                if isinstance(s, (int, Fraction)):
                    s = Scalar.from_rational(s)
                if not s.is_zero():
                    prev = clean.get(int(j))
                    clean[int(j)] = s if prev is None else prev + s
        self.terms = {j: s for j, s in clean.items() if not s.is_zero()}

    @classmethod
    def from_scalar(cls, s):
        if isinstance(s, (int, Fraction)):
            s = Scalar.from_rational(s)
        return cls({0: s})

    @classmethod
    def lam_power(cls, j, coeff=1):
        return cls({j: coeff if isinstance(coeff, Scalar) else Scalar.from_rational(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: Scalar.one()})

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, LambdaScalar):
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return LambdaScalar.from_scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for j, s in other.terms.items():
            terms[j] = terms[j] + s if j in terms else s
        return LambdaScalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return LambdaScalar({j: -s for j, s in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for j1, s1 in self.terms.items():
            for j2, s2 in other.terms.items():
                j = j1 + j2
                prod = s1 * s2
                terms[j] = terms[j] + prod if j in terms else prod
        return LambdaScalar(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        r = LambdaScalar.one()
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((j, hash(s)) for j, s in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def substitute(self, lam_value):
        """Specialize lam to an exact rational (or Scalar) value."""
        if isinstance(lam_value, (int, Fraction)):
            lam_value = Scalar.from_rational(lam_value)
        out = Scalar.zero()
        for j, s in self.terms.items():
            out = out + s * lam_value ** j
        return out

    def lam_degree(self):
        return max(self.terms) if self.terms else -1

    def exact_div(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero LambdaScalar")
        if self.is_zero():
            return LambdaScalar.zero()
        dd = other.lam_degree()
        dn = self.lam_degree()
        if dn < dd:
            raise InexactDivision(f"{self!r} not divisible by {other!r}")
        rem = dict(self.terms)
        quo = {}
        lead = other.terms[dd]
        for i in range(dn - dd, -1, -1):
            top = rem.get(i + dd, ZERO)
            if top.is_zero():
                continue
            q = top.exact_div(lead)
            quo[i] = q
            for j, s in other.terms.items():
                k = i + j
                cur = rem.get(k, ZERO)
                cur = cur - q * s
                if cur.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = cur
        if any(not s.is_zero() for s in rem.values()):
            raise InexactDivision(f"{self!r} not divisible by {other!r}")
        return LambdaScalar(quo)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for j in sorted(self.terms):
            s = self.terms[j]
            if j == 0:
                parts.append(f"({s})")
            elif j == 1:
                parts.append(f"({s})*lam")
            else:
                parts.append(f"({s})*lam^{j}")
        return " + ".join(parts)

    def to_json(self):
        return {"terms": [{"lam_pow": j, "scalar": self.terms[j].to_json()}
                          for j in sorted(self.terms)]}


LAMBDA = LambdaScalar.lam_power(1)
