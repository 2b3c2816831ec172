"""Exact rational functions in q and t, where t stands for q**lambda.

Values are stored as a reduced fraction of two polynomials with rational
coefficients in the variables (q, t).  Negative powers never appear in the
stored polynomials; they are cleared into the denominator on construction.
"""

from enum import Enum
from fractions import Fraction
from functools import lru_cache

import flint

_CTX = flint.fmpq_mpoly_ctx.get(("q", "t"), "lex")
_Q, _T = _CTX.gens()
_ONE_P = _CTX.constant(1)
_ZERO_P = _CTX.constant(0)


class PoleError(ArithmeticError):
    """The reduced denominator vanishes at the evaluation point."""


def _poly(x):
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, Fraction):
        return _CTX.constant(flint.fmpq(x.numerator, x.denominator))
    return _CTX.constant(x)


def _is_monomial(p):
    return len(p) == 1


class QRat:
    """An element of Q(q, t) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if isinstance(num, QRat):
            if den is not None:
                raise TypeError("denominator not allowed with a QRat numerator")
            self.num, self.den = num.num, num.den
            return
        num = _poly(num)
        if den is None:
            self.num, self.den = num, _ONE_P
            return
        den = _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den.is_one() and other.den.is_one():
            return QRat._raw(self.num + other.num, _ONE_P)
        if self.den == other.den:
            n = self.num + other.num
            if n.is_zero():
                return ZERO
            if _is_monomial(self.den):
                return _from_monomial_den(n, self.den)
            return QRat._raw(*_reduce(n, self.den))
        if _is_monomial(self.den) and _is_monomial(other.den):
            g = self.den.gcd(other.den)
            a = other.den / g
            b = self.den / g
            return _from_monomial_den(self.num * a + other.num * b, self.den * a)
        return QRat._raw(*_reduce(self.num * other.den + other.num * self.den,
                                  self.den * other.den))

    __radd__ = __add__

    def __neg__(self):
        return QRat._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QRat._raw(self.num * other.num, _ONE_P)
        if _is_monomial(self.den) and _is_monomial(other.den):
            return _from_monomial_den(self.num * other.num, self.den * other.den)
        # cross-cancel before multiplying keeps the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num / g1) * (other.num / g2)
        d = (self.den / g2) * (other.den / g1)
        return QRat._raw(*_normalize_lc(n, d))

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return QRat._raw(*_normalize_lc(self.den, self.num))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return QRat._raw(self.num ** k, self.den ** k)

    # -- comparison ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(sorted(self.num.to_dict().items())),
                     tuple(sorted(self.den.to_dict().items()))))

    # -- introspection ------------------------------------------------------

    def t_free(self):
        return self.num.degrees()[1] <= 0 and self.den.degrees()[1] <= 0

    def is_laurent_monomial(self):
        """True when the value is c * q**a * t**b."""
        return _is_monomial(self.num) and _is_monomial(self.den)

    def to_string(self):
        """Canonical text form ``p(q,t)/r(q,t)``."""
        return "(%s)/(%s)" % (self.num.str(), self.den.str())

    def __str__(self):
        if self.den.is_one():
            return self.num.str()
        return self.to_string()

    def __repr__(self):
        return "QRat(%s)" % self.to_string()


def _coerce(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
        return QRat._raw(_poly(x), _ONE_P)
    return NotImplemented


def _normalize_lc(num, den):
    if num.is_zero():
        return _ZERO_P, _ONE_P
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _reduce(num, den):
    if num.is_zero():
        return _ZERO_P, _ONE_P
    g = num.gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    return _normalize_lc(num, den)


def _from_monomial_den(num, den):
    if num.is_zero():
        return ZERO
    g = num.term_content().gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    return QRat._raw(*_normalize_lc(num, den))


ZERO = QRat._raw(_ZERO_P, _ONE_P)
ONE = QRat._raw(_ONE_P, _ONE_P)
q = QRat._raw(_Q, _ONE_P)
t = QRat._raw(_T, _ONE_P)


@lru_cache(maxsize=None)
def qpow(k):
    """q**k for any integer k."""
    if k >= 0:
        return QRat._raw(_Q ** k, _ONE_P)
    return QRat._raw(_ONE_P, _Q ** (-k))


@lru_cache(maxsize=None)
def tpow(k):
    """t**k, i.e. q**(k*lambda)."""
    if k >= 0:
        return QRat._raw(_T ** k, _ONE_P)
    return QRat._raw(_ONE_P, _T ** (-k))


def qt_monomial(c, a, b):
    """c * q**a * t**b with c rational."""
    return _coerce(c) * qpow(a) * tpow(b)


gamma = q - qpow(-1)


class QIntFlavor(Enum):
    BRACKET_J = "J"   # [[a]] = 1 + q^2 + ... + q^(2a-2)
    BRACKET_L = "L"   # [a] = q^(1-a) + ... + q^(a-1)
    BRACKET_K = "K"   # {{a}} = 1 + q^-2 + ... + q^-(2a-2)

    @classmethod
    def parse(cls, x):
        if isinstance(x, cls):
            return x
        return cls(str(x).upper())


@lru_cache(maxsize=None)
def qint(a, flavor=QIntFlavor.BRACKET_L):
    """The q-integer of the given flavor; zero for a = 0."""
    if a < 0:
        raise ValueError("q-integers are defined for a >= 0")
    flavor = QIntFlavor.parse(flavor)
    if a == 0:
        return ZERO
    if flavor is QIntFlavor.BRACKET_J:
        exps = range(0, 2 * a - 1, 2)
    elif flavor is QIntFlavor.BRACKET_K:
        exps = range(-(2 * a - 2), 1, 2)
    else:
        exps = range(1 - a, a, 2)
    lo = min(exps)
    num = _CTX.constant(0)
    for e in exps:
        num += _Q ** (e - lo)
    if lo >= 0:
        return QRat._raw(num * _Q ** lo, _ONE_P)
    return QRat._raw(num, _Q ** (-lo))


@lru_cache(maxsize=None)
def lambda_bracket(shift=0):
    """[lambda + shift] = (t q^shift - t^-1 q^-shift) / (q - q^-1)."""
    return (tpow(1) * qpow(shift) - tpow(-1) * qpow(-shift)) / gamma


@lru_cache(maxsize=None)
def qfactorial(a, flavor=QIntFlavor.BRACKET_L):
    """qint(1) * qint(2) * ... * qint(a); the empty product is 1."""
    if a < 0:
        raise ValueError("q-factorials are defined for a >= 0")
    flavor = QIntFlavor.parse(flavor)
    out = ONE
    for k in range(1, a + 1):
        out = out * qint(k, flavor)
    return out


def _fraction(c):
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _specialize_poly(p, lam):
    """p(q, q**lam) as a (numerator, q-shift) pair with nonnegative exponents."""
    terms = p.to_dict()
    if not terms:
        return _ZERO_P, 0
    shift = 0
    if lam < 0:
        shift = max(b for (_, b) in terms) * (-lam)
    out = {}
    for (a, b), c in terms.items():
        e = a + b * lam + shift
        out[(e, 0)] = out.get((e, 0), 0) + c
    return _CTX.from_dict({k: v for k, v in out.items() if v != 0}), shift


def specialize(x, lambda_value):
    """Substitute t := q**lambda_value and reduce; the result is t-free."""
    x = _coerce(x)
    if x.t_free():
        return x
    lam = int(lambda_value)
    n, sn = _specialize_poly(x.num, lam)
    d, sd = _specialize_poly(x.den, lam)
    # x = (n / q^sn) / (d / q^sd)
    n = n * _Q ** sd
    d = d * _Q ** sn
    if d.is_zero():
        raise PoleError("denominator vanishes after t := q**%d" % lam)
    return QRat(n, d)


def eval_at(x, q_value, lambda_value=None):
    """Exact value at q = q_value, t = q_value**lambda_value.

    The weight parameter is specialized symbolically first, so factors that
    cancel once t is tied to q do not produce spurious poles.
    """
    x = _coerce(x)
    if not x.t_free():
        if lambda_value is None:
            raise ValueError("lambda_value is required for t-dependent values")
        x = specialize(x, lambda_value)
    qv = flint.fmpq(Fraction(q_value).numerator, Fraction(q_value).denominator)
    d = x.den.subs({"q": qv})
    dv = d.leading_coefficient() if not d.is_zero() else 0
    if dv == 0:
        raise PoleError("reduced denominator vanishes at q = %s" % q_value)
    n = x.num.subs({"q": qv})
    nv = n.leading_coefficient() if not n.is_zero() else 0
    return _fraction(nv) / _fraction(dv)


def as_qrat(x):
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError("cannot convert %r to QRat" % (x,))
    return out
