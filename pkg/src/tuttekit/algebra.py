"""Exact scalars and the polynomial types used throughout the package.

Three polynomial flavours live here:

* ``LaurentPoly``: univariate, integer (possibly negative) exponents.
* ``MultiAffinePoly``: multiaffine in indexed edge variables, Laurent in one
  extra variable (``q`` by default).  Stored flat as ``(mask, exp) -> coeff``.
* ``Poly``: small general multivariate polynomial with named variables, for
  the places where products of overlapping multiaffine polynomials are
  unavoidable (determinant expansion, Rayleigh differences, Tutte x/y form).

Coefficients may be ``int``, ``Fraction`` or ``GaussianRational``.  Python
floats and complex numbers are rejected so exact and approximate values do
not mix by accident.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import reduce
from numbers import Rational

__all__ = [
    "GaussianRational", "LaurentPoly", "MultiAffinePoly", "Poly",
    "RationalFunction", "NonMultiaffineError", "CapExceeded", "I",
    "as_exact", "exact_determinant", "exact_permanent", "coeff_to_json",
    "coeff_from_json", "popcount", "bits",
]


class NonMultiaffineError(ArithmeticError):
    """Raised when a product would square an edge variable."""


class CapExceeded(RuntimeError):
    """A configured size cap was exceeded."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other, 0)
        if isinstance(other, Rational):
            return GaussianRational(Fraction(other), 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*I)"


I = GaussianRational(0, 1)


def as_exact(x):
    """Coerce ``x`` to an exact scalar, refusing floats."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, Fraction, GaussianRational)):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def _canon_coeff(c):
    # integral Fractions collapse to int to keep arithmetic on the fast path
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    if type(c) is GaussianRational and c.im == 0:
        return _canon_coeff(c.re)
    return c


def _sort_key_coeff(c):
    if isinstance(c, GaussianRational):
        return (c.re, c.im)
    return (c, 0)


def coeff_to_json(c):
    c = _canon_coeff(c)
    if isinstance(c, GaussianRational):
        return {"re": coeff_to_json(c.re), "im": coeff_to_json(c.im)}
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def coeff_from_json(obj):
    if isinstance(obj, dict):
        return _canon_coeff(GaussianRational(Fraction(obj["re"]), Fraction(obj["im"])))
    return _canon_coeff(Fraction(obj))


def _coeff_str(c) -> str:
    if isinstance(c, GaussianRational):
        return str(c)
    return str(c)


def _fmt_term(coeff, factors: list[str]) -> tuple[str, str]:
    """Return (sign, body) for a term ``coeff * prod(factors)``."""
    negative = False
    if not isinstance(coeff, GaussianRational) and coeff < 0:
        negative, coeff = True, -coeff
    if not factors:
        return ("-" if negative else "+", _coeff_str(coeff))
    body = "*".join(factors)
    if coeff == 1:
        return ("-" if negative else "+", body)
    return ("-" if negative else "+", f"{_coeff_str(coeff)}*{body}")


def _join_terms(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# Univariate Laurent polynomials


class LaurentPoly:
    """Sparse univariate Laurent polynomial with exact coefficients."""

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs=None, var: str = "q"):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, a in items:
                a = as_exact(a)
                if a != 0:
                    c[int(e)] = _canon_coeff(c.get(int(e), 0) + a)
                    if c[int(e)] == 0:
                        del c[int(e)]
        self._c = c
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, c: dict, var: str = "q"):
        obj = cls.__new__(cls)
        obj._c = c
        obj.var = var
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, a, var="q"):
        return cls({0: a}, var)

    @classmethod
    def monomial(cls, exp: int, coeff=1, var="q"):
        return cls({exp: coeff}, var)

    @classmethod
    def from_coefficients(cls, coeffs, var="q"):
        """Build from a low-to-high coefficient list."""
        return cls({i: a for i, a in enumerate(coeffs)}, var)

    # -- inspection
    def items(self):
        return sorted(self._c.items())

    def coeff(self, exp: int):
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("low degree of the zero polynomial")
        return min(self._c)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._c.get(0, 0)

    def coefficient_list(self) -> list:
        """Coefficients from degree 0 upward; requires no negative exponents."""
        if not self._c:
            return []
        if self.low_degree() < 0:
            raise ValueError("negative exponents present")
        return [self._c.get(i, 0) for i in range(self.degree() + 1)]

    # -- arithmetic
    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_scalar(other):
            return LaurentPoly._raw({0: _canon_coeff(other)} if other != 0 else {}, self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, a in o._c.items():
            s = c.get(e, 0) + a
            if s == 0:
                c.pop(e, None)
            else:
                c[e] = _canon_coeff(s)
        return LaurentPoly._raw(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()}, self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if other == 0:
                return LaurentPoly._raw({}, self.var)
            return LaurentPoly._raw({e: _canon_coeff(a * other) for e, a in self._c.items()}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._raw({e: _canon_coeff(a) for e, a in c.items() if a != 0}, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (Fraction(1) / other if not isinstance(other, GaussianRational)
                           else GaussianRational(1) / other)
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, a), = self._c.items()
            inv = Fraction(1) / a if not isinstance(a, GaussianRational) else GaussianRational(1) / a
            return LaurentPoly._raw({e * k: _canon_coeff(inv ** (-k))}, self.var)
        result = LaurentPoly._raw({0: 1}, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var**k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()}, self.var)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        """Exact evaluation (Horner over the exponent range)."""
        if not self._c:
            return 0
        if isinstance(x, LaurentPoly):
            total = LaurentPoly._raw({}, x.var)
            for e, a in self._c.items():
                total = total + (x ** e) * a
            return total
        lo, hi = min(self._c), max(self._c)
        if lo < 0 and x == 0:
            raise ZeroDivisionError("negative power evaluated at zero")
        acc = 0
        for e in range(hi, lo - 1, -1):
            acc = acc * x + self._c.get(e, 0)
        if lo < 0:
            inv = (GaussianRational(1) / x) if isinstance(x, GaussianRational) else Fraction(1) / x
            acc = acc * inv ** (-lo)
        elif lo > 0:
            acc = acc * x ** lo
        return _canon_coeff(acc) if _is_scalar(acc) else acc

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({e - 1: _canon_coeff(a * e) for e, a in self._c.items() if e != 0},
                                self.var)

    def taylor_shift(self, a) -> "LaurentPoly":
        """Return p(x + a) for a polynomial p (no negative exponents)."""
        out = LaurentPoly._raw({}, self.var)
        x_plus_a = LaurentPoly({1: 1, 0: a}, self.var)
        for e, c in self._c.items():
            if e < 0:
                raise ValueError("taylor_shift needs nonnegative exponents")
            out = out + (x_plus_a ** e) * c
        return out

    def divmod(self, other: "LaurentPoly"):
        """Polynomial long division of ordinary polynomials (no negative exponents)."""
        num = self.coefficient_list()
        den = other.coefficient_list()
        if not den:
            raise ZeroDivisionError("division by zero polynomial")
        lead = den[-1]
        inv = (GaussianRational(1) / lead) if isinstance(lead, GaussianRational) else Fraction(1) / lead
        num = list(num)
        quot = [0] * max(len(num) - len(den) + 1, 0)
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] * inv
            quot[i] = c
            if c != 0:
                for j, d in enumerate(den):
                    num[i + j] -= c * d
        rem = num[: len(den) - 1]
        return (LaurentPoly.from_coefficients(quot, self.var),
                LaurentPoly.from_coefficients(rem, self.var))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact Laurent division; raises ArithmeticError on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly._raw({}, self.var)
        s_lo, o_lo = self.low_degree(), other.low_degree()
        q, r = self.shift(-s_lo).divmod(other.shift(-o_lo))
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q.shift(s_lo - o_lo)

    def monic_gcd(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        if a.is_zero():
            return a
        lead = a._c[a.degree()]
        return a * ((GaussianRational(1) / lead) if isinstance(lead, GaussianRational)
                    else Fraction(1) / lead)

    def squarefree_decomposition(self):
        """Yun's algorithm.  Returns [(factor, multiplicity), ...] of the
        polynomial part; the power of ``var`` dividing it is reported as a
        separate factor ``var`` when present."""
        out = []
        lo = self.low_degree()
        p = self.shift(-lo)
        if lo > 0:
            out.append((LaurentPoly({1: 1}, self.var), lo))
        if p.degree() == 0:
            return out
        dp = p.derivative()
        a = p.monic_gcd(dp)
        b = p.exact_div(a)
        c = dp.exact_div(a)
        d = c - b.derivative()
        i = 1
        while b.degree() > 0:
            a = b.monic_gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if a.degree() > 0:
                out.append((a, i))
            i += 1
        return out

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly._raw(dict(self._c), var)

    # -- output
    def to_json(self):
        return {"q_laurent": [[e, coeff_to_json(a)] for e, a in sorted(self._c.items())]}

    @classmethod
    def from_json(cls, obj, var="q"):
        return cls({int(e): coeff_from_json(a) for e, a in obj["q_laurent"]}, var)

    def pretty(self) -> str:
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            if e == 0:
                factors = []
            elif e == 1:
                factors = [self.var]
            else:
                factors = [f"{self.var}^{e}"]
            parts.append(_fmt_term(a, factors))
        return _join_terms(parts)

    def __repr__(self):
        return f"LaurentPoly({self.pretty()})"

    __str__ = pretty


# ---------------------------------------------------------------------------
# Multiaffine polynomials in edge variables, Laurent in q


class MultiAffinePoly:
    """Polynomial multiaffine in indexed variables ``{prefix}_{i}`` and
    Laurent in ``qname``.

    Internally a flat dict ``(mask, q_exponent) -> coefficient`` where bit i
    of ``mask`` stands for variable ``i``.  Variable names are cosmetic and do
    not take part in equality.
    """

    __slots__ = ("_t", "prefix", "qname", "_hash")

    def __init__(self, terms=None, prefix: str = "v", qname: str = "q"):
        t = {}
        if terms:
            for (mask, e), a in (terms.items() if isinstance(terms, dict) else terms):
                a = as_exact(a)
                if a == 0:
                    continue
                key = (int(mask), int(e))
                s = t.get(key, 0) + a
                if s == 0:
                    t.pop(key, None)
                else:
                    t[key] = _canon_coeff(s)
        self._t = t
        self.prefix = prefix
        self.qname = qname
        self._hash = None

    @classmethod
    def _raw(cls, t, prefix="v", qname="q"):
        obj = cls.__new__(cls)
        obj._t = t
        obj.prefix = prefix
        obj.qname = qname
        obj._hash = None
        return obj

    def _like(self, t):
        return MultiAffinePoly._raw(t, self.prefix, self.qname)

    # -- constructors
    @classmethod
    def zero(cls, prefix="v", qname="q"):
        return cls._raw({}, prefix, qname)

    @classmethod
    def one(cls, prefix="v", qname="q"):
        return cls._raw({(0, 0): 1}, prefix, qname)

    @classmethod
    def constant(cls, a, prefix="v", qname="q"):
        a = as_exact(a)
        return cls._raw({(0, 0): _canon_coeff(a)} if a != 0 else {}, prefix, qname)

    @classmethod
    def variable(cls, index: int, coeff=1, prefix="v", qname="q"):
        return cls._raw({(1 << index, 0): coeff}, prefix, qname)

    @classmethod
    def q_power(cls, k: int, coeff=1, prefix="v", qname="q"):
        return cls._raw({(0, k): coeff}, prefix, qname)

    @classmethod
    def from_laurent(cls, lp: LaurentPoly, mask: int = 0, prefix="v", qname=None):
        return cls._raw({(mask, e): a for e, a in lp._c.items()}, prefix, qname or lp.var)

    # -- inspection
    def items(self):
        """Sorted ``((mask, q_exp), coeff)`` pairs."""
        return sorted(self._t.items())

    def terms(self) -> dict:
        return dict(self._t)

    def masks(self) -> list[int]:
        return sorted({m for m, _ in self._t})

    def coefficient(self, mask: int) -> LaurentPoly:
        return LaurentPoly._raw({e: a for (m, e), a in self._t.items() if m == mask}, self.qname)

    def by_mask(self) -> dict:
        out = {}
        for (m, e), a in self._t.items():
            out.setdefault(m, {})[e] = a
        return {m: LaurentPoly._raw(c, self.qname) for m, c in out.items()}

    def support_mask(self) -> int:
        s = 0
        for m, _ in self._t:
            s |= m
        return s

    def variables(self) -> list[int]:
        return list(bits(self.support_mask()))

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(m == 0 and e == 0 for m, e in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not a constant")
        return self._t.get((0, 0), 0)

    def is_q_free(self) -> bool:
        return all(e == 0 for _, e in self._t)

    def degree_q(self) -> int:
        if not self._t:
            raise ValueError("degree of the zero polynomial")
        return max(e for _, e in self._t)

    def low_degree_q(self) -> int:
        if not self._t:
            raise ValueError("low degree of the zero polynomial")
        return min(e for _, e in self._t)

    def to_laurent(self) -> LaurentPoly:
        if any(m for m, _ in self._t):
            raise ValueError("edge variables remain")
        return LaurentPoly._raw({e: a for (_, e), a in self._t.items()}, self.qname)

    def q_coefficient(self, k: int) -> "MultiAffinePoly":
        """The coefficient of q^k, as a q-free multiaffine polynomial."""
        return self._like({(m, 0): a for (m, e), a in self._t.items() if e == k})

    def homogeneous_part(self, degree: int) -> "MultiAffinePoly":
        return self._like({(m, e): a for (m, e), a in self._t.items() if popcount(m) == degree})

    def is_homogeneous(self) -> bool:
        return len({popcount(m) for m, _ in self._t}) <= 1

    def total_degrees(self) -> list[int]:
        return sorted({popcount(m) for m, _ in self._t})

    # -- arithmetic
    def _lift(self, other):
        if isinstance(other, MultiAffinePoly):
            return other
        if isinstance(other, LaurentPoly):
            return MultiAffinePoly.from_laurent(other, 0, self.prefix, self.qname)
        if _is_scalar(other):
            return MultiAffinePoly.constant(other, self.prefix, self.qname)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for k, a in o._t.items():
            s = t.get(k, 0) + a
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = _canon_coeff(s)
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -a for k, a in self._t.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if other == 0:
                return self._like({})
            return self._like({k: _canon_coeff(a * other) for k, a in self._t.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.support_mask() & o.support_mask():
            raise NonMultiaffineError("operands share an edge variable")
        t = {}
        for (m1, e1), a1 in self._t.items():
            for (m2, e2), a2 in o._t.items():
                key = (m1 | m2, e1 + e2)
                t[key] = t.get(key, 0) + a1 * a2
        return self._like({k: _canon_coeff(a) for k, a in t.items() if a != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = GaussianRational(1) / other if isinstance(other, GaussianRational) else Fraction(1) / other
            return self * inv
        if isinstance(other, LaurentPoly):
            return self.div_laurent(other)
        return NotImplemented

    def shift_q(self, k: int) -> "MultiAffinePoly":
        """Multiply by q^k."""
        if k == 0:
            return self
        return self._like({(m, e + k): a for (m, e), a in self._t.items()})

    def div_laurent(self, d: LaurentPoly) -> "MultiAffinePoly":
        """Exact division of every q-coefficient by the Laurent polynomial d."""
        out = {}
        for m, lp in self.by_mask().items():
            for e, a in lp.exact_div(d)._c.items():
                out[(m, e)] = a
        return self._like(out)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def canonical_key(self) -> tuple:
        """A sortable, hashable canonical encoding."""
        return tuple(sorted((m, e, _sort_key_coeff(a)) for (m, e), a in self._t.items()))

    # -- structural transformations
    def split(self, index: int):
        """Write p = p0 + v_index * p1; returns (p0, p1)."""
        bit = 1 << index
        p0, p1 = {}, {}
        for (m, e), a in self._t.items():
            if m & bit:
                p1[(m ^ bit, e)] = a
            else:
                p0[(m, e)] = a
        return self._like(p0), self._like(p1)

    def derivative(self, index: int) -> "MultiAffinePoly":
        return self.split(index)[1]

    def rename(self, prefix: str | None = None, qname: str | None = None) -> "MultiAffinePoly":
        return MultiAffinePoly._raw(dict(self._t), prefix or self.prefix, qname or self.qname)

    def relabel(self, mapping: dict) -> "MultiAffinePoly":
        """Rename variable indices (bit i becomes bit mapping[i])."""
        out = {}
        for (m, e), a in self._t.items():
            nm = 0
            for i in bits(m):
                nm |= 1 << mapping.get(i, i)
            out[(nm, e)] = a
        return MultiAffinePoly(out, self.prefix, self.qname)

    def dual_transform(self, universe_mask: int, q_scale=None) -> "MultiAffinePoly":
        """Return (prod_{e in U} v_e) * p(v -> s/v) with s = q by default.

        Each term c * q^k * v^S (S inside U) becomes c * q^k * s^{|S|} * v^{U \\ S}.
        Applying it twice multiplies p by s^{|U|}.  ``q_scale`` may be a
        scalar s (e.g. 1 for plain reciprocals).
        """
        out = {}
        for (m, e), a in self._t.items():
            if m & ~universe_mask:
                raise ValueError("term outside the declared universe")
            k = popcount(m)
            nm = universe_mask & ~m
            if q_scale is None:
                key, val = (nm, e + k), a
            else:
                key, val = (nm, e), a * q_scale ** k
            out[key] = out.get(key, 0) + val
        return self._like({k: _canon_coeff(a) for k, a in out.items() if a != 0})

    def homogenized_substitute(self, bindings: dict) -> "MultiAffinePoly":
        """Substitute v_i -> n_i / d_i and clear the denominators.

        ``bindings`` maps variable index to a pair ``(n_i, d_i)`` of
        multiaffine polynomials.  Returns
        ``(prod_i d_i) * p(..., n_i/d_i, ...)``, which is polynomial.  The
        numerators/denominators of different indices must use disjoint
        variables, and none of the remaining variables of p.
        """
        result = self._like({})
        groups: dict[int, MultiAffinePoly] = {}
        bound_mask = 0
        for i in bindings:
            bound_mask |= 1 << i
        for (m, e), a in self._t.items():
            rest = m & ~bound_mask
            g = groups.get(m & bound_mask)
            piece = self._like({(rest, e): a})
            groups[m & bound_mask] = piece if g is None else g + piece
        for sub, rest_poly in groups.items():
            term = rest_poly
            for i, (n, d) in sorted(bindings.items()):
                term = term * (n if (sub >> i) & 1 else d)
            result = result + term
        return result

    def evaluate(self, values: dict | None = None, q=None):
        """Evaluate at exact values.  ``values`` maps variable index to scalar;
        unbound variables stay symbolic.  With ``q`` given and all variables
        bound, returns a scalar."""
        values = values or {}
        if q is not None:
            q = as_exact(q) if not isinstance(q, LaurentPoly) else q
        bound = 0
        for i in values:
            bound |= 1 << i
        # fold the bound variables one at a time: cost stays linear in #terms
        cur: dict = {}
        for (m, e), a in self._t.items():
            cur[(m, e)] = a
        for i in sorted(values, reverse=True):
            bit = 1 << i
            x = values[i]
            nxt: dict = {}
            for (m, e), a in cur.items():
                if m & bit:
                    key, val = (m ^ bit, e), a * x
                else:
                    key, val = (m, e), a
                nxt[key] = nxt.get(key, 0) + val
            cur = {k: a for k, a in nxt.items() if a != 0}
        if q is None:
            return self._like({k: _canon_coeff(a) for k, a in cur.items()})
        grouped: dict[int, dict] = {}
        for (m, e), a in cur.items():
            grouped.setdefault(m, {})[e] = a
        out = {}
        for m, c in grouped.items():
            val = LaurentPoly._raw(c, self.qname).evaluate(q)
            if isinstance(val, LaurentPoly):
                for e, a in val._c.items():
                    out[(m, e)] = out.get((m, e), 0) + a
            elif val != 0:
                out[(m, 0)] = _canon_coeff(val)
        res = self._like({k: a for k, a in out.items() if a != 0})
        if not isinstance(q, LaurentPoly) and res.support_mask() == 0:
            return res._t.get((0, 0), 0)
        return res

    def substitute(self, bindings: dict, q_value=None):
        """Substitute edge variables.

        Values may be exact scalars, ``LaurentPoly`` expressions in q, or
        ``MultiAffinePoly`` values over fresh variables.  The special value
        ``"q/u"`` requests the duality substitution v_e -> q/u_e, which yields
        a ``RationalFunction`` in the u variables.
        """
        recip = [i for i, val in bindings.items() if isinstance(val, str) and val == "q/u"]
        if recip:
            others = {i: val for i, val in bindings.items() if i not in recip}
            base = self.substitute(others) if others else self
            umask = 0
            for i in recip:
                umask |= 1 << i
            num = base.dual_transform(umask)
            den = MultiAffinePoly._raw({(umask, 0): 1}, self.prefix, self.qname)
            rf = RationalFunction(num.to_poly(), den.to_poly())
            if q_value is not None:
                rf = rf.evaluate({self.qname: q_value}, partial=True)
            return rf
        scalars = {i: v for i, v in bindings.items() if _is_scalar(v)}
        rest = {i: v for i, v in bindings.items() if i not in scalars}
        cur = self.evaluate(scalars) if scalars else self
        if rest:
            pairs = {}
            for i, val in rest.items():
                if isinstance(val, LaurentPoly):
                    val = MultiAffinePoly.from_laurent(val, 0, self.prefix, self.qname)
                if not isinstance(val, MultiAffinePoly):
                    raise TypeError(f"unsupported binding {val!r}")
                pairs[i] = (val, MultiAffinePoly.one(self.prefix, self.qname))
            cur = cur.homogenized_substitute(pairs)
        if q_value is not None:
            return cur.evaluate({}, q=q_value)
        return cur

    def to_poly(self) -> "Poly":
        terms = {}
        for (m, e), a in self._t.items():
            mono = [(f"{self.prefix}_{i}", 1) for i in bits(m)]
            if e:
                mono.append((self.qname, e))
            terms[Poly._mono(mono)] = a
        return Poly._raw(terms)

    @classmethod
    def from_poly(cls, p: "Poly", prefix="v", qname="q") -> "MultiAffinePoly":
        out = {}
        pre = prefix + "_"
        for mono, a in p._t.items():
            mask, e = 0, 0
            for name, k in mono:
                if name == qname:
                    e = k
                elif name.startswith(pre) and name[len(pre):].isdigit():
                    if k != 1:
                        raise NonMultiaffineError(f"{name}^{k} is not multiaffine")
                    mask |= 1 << int(name[len(pre):])
                else:
                    raise ValueError(f"unexpected variable {name}")
            out[(mask, e)] = a
        return cls(out, prefix, qname)

    # -- output
    def to_json(self):
        rows = []
        for m, lp in sorted(self.by_mask().items()):
            rows.append({"edges": list(bits(m)), "q_poly": lp.to_json()})
        return {"terms": rows}

    @classmethod
    def from_json(cls, obj, prefix="v", qname="q"):
        t = {}
        for row in obj["terms"]:
            mask = 0
            for i in row["edges"]:
                mask |= 1 << int(i)
            for e, a in row["q_poly"]["q_laurent"]:
                t[(mask, int(e))] = coeff_from_json(a)
        return cls(t, prefix, qname)

    def pretty(self) -> str:
        keyed = sorted(self._t.items(), key=lambda kv: (-kv[0][1], popcount(kv[0][0]), kv[0][0]))
        parts = []
        for (m, e), a in keyed:
            factors = []
            if e == 1:
                factors.append(self.qname)
            elif e != 0:
                factors.append(f"{self.qname}^{e}")
            factors.extend(f"{self.prefix}_{i}" for i in bits(m))
            parts.append(_fmt_term(a, factors))
        return _join_terms(parts)

    def __repr__(self):
        return f"MultiAffinePoly({self.pretty()})"

    __str__ = pretty


# ---------------------------------------------------------------------------
# General sparse multivariate polynomials


class Poly:
    """Sparse polynomial in named variables; exponents may be negative.

    Monomials are sorted tuples of ``(name, exponent)`` pairs.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for mono, a in (terms.items() if isinstance(terms, dict) else terms):
                a = as_exact(a)
                if a == 0:
                    continue
                key = Poly._mono(mono)
                s = t.get(key, 0) + a
                if s == 0:
                    t.pop(key, None)
                else:
                    t[key] = _canon_coeff(s)
        self._t = t

    @staticmethod
    def _mono(pairs) -> tuple:
        acc: dict = {}
        for name, k in pairs:
            acc[name] = acc.get(name, 0) + k
        return tuple(sorted((n, k) for n, k in acc.items() if k != 0))

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def var(cls, name: str, exp: int = 1):
        return cls._raw({((name, exp),): 1} if exp else {(): 1})

    @classmethod
    def const(cls, a):
        a = as_exact(a)
        return cls._raw({(): _canon_coeff(a)} if a != 0 else {})

    @classmethod
    def from_laurent(cls, lp: LaurentPoly, name: str | None = None):
        name = name or lp.var
        return cls._raw({(((name, e),) if e else ()): a for e, a in lp._c.items()})

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def variables(self) -> set:
        return {n for mono in self._t for n, _ in mono}

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if _is_scalar(other):
            return Poly.const(other)
        if isinstance(other, LaurentPoly):
            return Poly.from_laurent(other)
        if isinstance(other, MultiAffinePoly):
            return other.to_poly()
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for k, a in o._t.items():
            s = t.get(k, 0) + a
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = _canon_coeff(s)
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -a for k, a in self._t.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            if other == 0:
                return Poly._raw({})
            return Poly._raw({k: _canon_coeff(a * other) for k, a in self._t.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for m1, a1 in self._t.items():
            for m2, a2 in o._t.items():
                key = Poly._mono(m1 + m2) if m1 and m2 else (m1 or m2)
                t[key] = t.get(key, 0) + a1 * a2
        return Poly._raw({k: _canon_coeff(a) for k, a in t.items() if a != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (mono, a), = self._t.items()
            inv = GaussianRational(1) / a if isinstance(a, GaussianRational) else Fraction(1) / a
            return Poly._raw({tuple((n, e * k) for n, e in mono): _canon_coeff(inv ** (-k))})
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = GaussianRational(1) / other if isinstance(other, GaussianRational) else Fraction(1) / other
            return self * inv
        return NotImplemented

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __bool__(self):
        return bool(self._t)

    def degree(self, name: str) -> int:
        if not self._t:
            raise ValueError("degree of the zero polynomial")
        return max(dict(m).get(name, 0) for m in self._t)

    def low_degree(self, name: str) -> int:
        if not self._t:
            raise ValueError("degree of the zero polynomial")
        return min(dict(m).get(name, 0) for m in self._t)

    def total_degree(self) -> int:
        return max(sum(k for _, k in m) for m in self._t)

    def coefficient(self, monomial: dict) -> object:
        return self._t.get(Poly._mono(monomial.items()), 0)

    def coefficients_in(self, name: str) -> dict:
        """Collect by powers of one variable: {exp: Poly}."""
        out: dict = {}
        for m, a in self._t.items():
            d = dict(m)
            k = d.pop(name, 0)
            key = tuple(sorted(d.items()))
            out.setdefault(k, {})[key] = a
        return {k: Poly._raw(t) for k, t in out.items()}

    def is_nonnegative_coeffs(self) -> bool:
        return all(not isinstance(a, GaussianRational) and a >= 0 for a in self._t.values())

    def multiply_monomial(self, monomial: dict) -> "Poly":
        extra = tuple(monomial.items())
        return Poly._raw({Poly._mono(m + extra): a for m, a in self._t.items()})

    def substitute(self, bindings: dict) -> "Poly":
        """Replace variables by scalars or polynomials.  Negative exponents of
        substituted variables require monomial or scalar values."""
        out = Poly._raw({})
        cache: dict = {}
        for m, a in self._t.items():
            factor = Poly.const(a)
            keep = []
            for name, k in m:
                if name in bindings:
                    key = (name, k)
                    if key not in cache:
                        val = bindings[name]
                        val = val if isinstance(val, Poly) else Poly._lift(self, val)
                        cache[key] = val ** k
                    factor = factor * cache[key]
                else:
                    keep.append((name, k))
            if keep:
                factor = factor.multiply_monomial(dict(keep))
            out = out + factor
        return out

    def evaluate(self, values: dict):
        """Evaluate; every variable must be bound to an exact scalar (or a
        complex float, which switches the whole evaluation to floats)."""
        total = 0
        for m, a in self._t.items():
            term = a if not any(isinstance(v, (float, complex)) for v in values.values()) else complex(a)
            for name, k in m:
                x = values[name]
                if k < 0 and not isinstance(x, (float, complex)):
                    x = (GaussianRational(1) / x) if isinstance(x, GaussianRational) else Fraction(1) / x
                    k = -k
                term = term * x ** k
            total = total + term
        return _canon_coeff(total) if _is_scalar(total) else total

    def to_laurent(self, name: str) -> LaurentPoly:
        out = {}
        for m, a in self._t.items():
            d = dict(m)
            k = d.pop(name, 0)
            if d:
                raise ValueError("more than one variable present")
            out[k] = a
        return LaurentPoly._raw(out, name)

    def to_sympy(self):
        import sympy
        expr = sympy.Integer(0)
        syms: dict = {}
        for m, a in self._t.items():
            if isinstance(a, GaussianRational):
                c = sympy.Rational(a.re.numerator, a.re.denominator) + \
                    sympy.I * sympy.Rational(a.im.numerator, a.im.denominator)
            else:
                f = Fraction(a)
                c = sympy.Rational(f.numerator, f.denominator)
            term = c
            for name, k in m:
                s = syms.setdefault(name, sympy.Symbol(name))
                term = term * s ** k
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr) -> "Poly":
        import sympy
        expr = sympy.expand(expr)
        if expr == 0:
            return cls._raw({})
        gens = sorted(expr.free_symbols, key=lambda s: s.name)
        if not gens:
            return cls.const(_sympy_scalar(expr))
        sp = sympy.Poly(expr, *gens)
        t = {}
        for exps, c in sp.terms():
            t[tuple((g.name, k) for g, k in zip(gens, exps) if k)] = _sympy_scalar(c)
        return cls(t)

    def to_json(self):
        return {"terms": [{"monomial": {n: k for n, k in m}, "coeff": coeff_to_json(a)}
                          for m, a in sorted(self._t.items())]}

    def pretty(self, order: list[str] | None = None) -> str:
        order = order or []

        def rank(name):
            return (order.index(name), "") if name in order else (len(order), name)

        def sort_key(item):
            m, _ = item
            d = dict(m)
            lead = [-d.get(n, 0) for n in order]
            return (lead, -sum(k for _, k in m), [(rank(n), -k) for n, k in m])

        parts = []
        for m, a in sorted(self._t.items(), key=sort_key):
            factors = [n if k == 1 else f"{n}^{k}" for n, k in sorted(m, key=lambda p: rank(p[0]))]
            parts.append(_fmt_term(a, factors))
        return _join_terms(parts)

    def __repr__(self):
        return f"Poly({self.pretty()})"

    __str__ = pretty


def _sympy_scalar(c):
    import sympy
    re, im = sympy.re(c), sympy.im(c)
    re = Fraction(int(sympy.numer(re)), int(sympy.denom(re)))
    im = Fraction(int(sympy.numer(im)), int(sympy.denom(im)))
    return _canon_coeff(GaussianRational(re, im)) if im else _canon_coeff(re)


class RationalFunction:
    """Quotient of two ``Poly`` values.  Equality is by cross-multiplication,
    so an unreduced representation compares correctly."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num if isinstance(num, Poly) else Poly._lift(Poly._raw({}), num)
        if den is None:
            den = Poly.const(1)
        self.den = den if isinstance(den, Poly) else Poly._lift(Poly._raw({}), den)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (Poly, MultiAffinePoly, LaurentPoly)) or _is_scalar(x):
            return cls(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "RationalFunction":
        """Cancel common factors (multivariate gcd via sympy) and normalise
        the denominator's leading coefficient to 1."""
        import sympy
        n, d = self.num.to_sympy(), self.den.to_sympy()
        g = sympy.gcd(n, d)
        n, d = sympy.cancel(n / g), sympy.cancel(d / g)
        n, d = sympy.fraction(sympy.cancel(n / d))
        num, den = Poly.from_sympy(n), Poly.from_sympy(d)
        lead = den._t[max(den._t, key=lambda m: (sum(k for _, k in m), m))]
        if lead != 1:
            inv = GaussianRational(1) / lead if isinstance(lead, GaussianRational) else Fraction(1) / lead
            num, den = num * inv, den * inv
        return RationalFunction(num, den)

    def evaluate(self, values: dict, partial: bool = False):
        if partial:
            return RationalFunction(self.num.substitute(values), self.den.substitute(values))
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        n = self.num.evaluate(values)
        if isinstance(d, (complex, float)) or isinstance(n, (complex, float)):
            return n / d
        return _canon_coeff(as_exact(n) / as_exact(d)) if not isinstance(d, GaussianRational) \
            else _canon_coeff(GaussianRational._coerce(n) / d)

    def substitute(self, bindings: dict) -> "RationalFunction":
        return RationalFunction(self.num.substitute(bindings), self.den.substitute(bindings))

    def to_json(self):
        r = self.reduced()
        return {"num": r.num.to_json(), "den": r.den.to_json(),
                "pretty": r.pretty()}

    def pretty(self) -> str:
        n, d = self.num.pretty(["q"]), self.den.pretty(["q"])
        if d == "1":
            return n
        return f"({n})/({d})"

    def __repr__(self):
        return f"RationalFunction({self.pretty()})"

    __str__ = pretty


# ---------------------------------------------------------------------------
# Determinants and permanents


def _det_bareiss(m):
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev == 1:
                    a[i][j] = num
                elif isinstance(num, int) and isinstance(prev, int):
                    a[i][j] = num // prev
                else:
                    a[i][j] = _canon_coeff(num / prev)
            a[i][k] = 0
        prev = a[k][k]
    return _canon_coeff(sign * a[n - 1][n - 1])


def _det_minors(m):
    """Laplace expansion along rows, memoised on the set of used columns."""
    n = len(m)
    memo: dict = {}

    def rec(used: int):
        row = popcount(used)
        if row == n:
            return Poly.const(1)
        if used in memo:
            return memo[used]
        total = Poly._raw({})
        free_before = 0
        for col in range(n):
            if used >> col & 1:
                continue
            entry = m[row][col]
            if entry:
                term = entry * rec(used | (1 << col))
                total = total - term if free_before % 2 else total + term
            free_before += 1
        memo[used] = total
        return total

    return rec(0)


def exact_determinant(m, minors_cap: int = 8):
    """Exact determinant.

    Scalar matrices (int, Fraction, GaussianRational) use fraction-free
    Bareiss elimination.  Polynomial matrices (``MultiAffinePoly`` or
    ``Poly``) are expanded by minors up to ``minors_cap`` rows; the product
    structure is computed in the general ``Poly`` ring so that intermediate
    squares of edge variables are allowed, and the result is converted back
    to ``MultiAffinePoly`` when the input was multiaffine.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    flat = [x for row in m for x in row]
    if all(_is_scalar(x) for x in flat):
        return _det_bareiss([[as_exact(x) for x in row] for row in m])
    if n > minors_cap:
        raise CapExceeded(f"polynomial determinant of size {n} exceeds cap {minors_cap}")
    multi = [x for x in flat if isinstance(x, MultiAffinePoly)]
    lifted = [[Poly._lift(Poly._raw({}), x) for x in row] for row in m]
    det = _det_minors(lifted)
    if multi:
        ref = multi[0]
        return MultiAffinePoly.from_poly(det, ref.prefix, ref.qname)
    return det


def exact_permanent(m, cap: int = 10):
    """Ryser's formula with exact arithmetic."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n > cap:
        raise CapExceeded(f"permanent of size {n} exceeds cap {cap}")
    if n == 0:
        return 1
    total = 0
    for r in range(1, n + 1):
        sign = (-1) ** r
        for cols in itertools.combinations(range(n), r):
            prod = 1
            for row in m:
                prod = prod * sum((row[c] for c in cols), 0)
                if prod == 0:
                    break
            total = total + sign * prod
    return _canon_coeff((-1) ** n * total)


def product(iterable, start=1):
    return reduce(lambda a, b: a * b, iterable, start)


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False)
