"""A finite Grassmann (exterior) algebra on paired generators.

Generators are ordered psi_0 < psibar_0 < psi_1 < psibar_1 < ...; psi_i is
bit 2i and psibar_i is bit 2i+1 of a monomial mask.  Coefficients may be any
commutative ring elements that support +, * and comparison with 0 (Fractions,
LaurentPoly, Poly)."""

from __future__ import annotations

from fractions import Fraction

from .algebra import bits, popcount

__all__ = ["GrassmannElement", "psi", "psibar", "pair"]


def _sign(a: int, b: int) -> int:
    """Sign of reordering monomial a followed by monomial b into canonical order."""
    swaps = 0
    for j in bits(b):
        swaps += popcount(a >> (j + 1))
    return -1 if swaps & 1 else 1


def _nonzero(c) -> bool:
    return not (c == 0)


class GrassmannElement:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if _nonzero(c)}

    @classmethod
    def scalar(cls, n: int, c) -> "GrassmannElement":
        return cls(n, {0: c})

    @classmethod
    def generator(cls, n: int, index: int, coeff=1) -> "GrassmannElement":
        return cls(n, {1 << index: coeff})

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.n, other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return GrassmannElement(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            return GrassmannElement(self.n, {m: c * other for m, c in self.terms.items()})
        t: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                val = ca * cb
                if _sign(ma, mb) < 0:
                    val = -val
                key = ma | mb
                t[key] = t[key] + val if key in t else val
        return GrassmannElement(self.n, t)

    def __rmul__(self, other):
        return GrassmannElement(self.n, {m: other * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.n, other)
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __repr__(self):
        return f"GrassmannElement(n={self.n}, {len(self.terms)} terms)"

    def is_even(self) -> bool:
        return all(popcount(m) % 2 == 0 for m in self.terms)

    def degree_parts(self) -> dict[int, "GrassmannElement"]:
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(popcount(m), {})[m] = c
        return {d: GrassmannElement(self.n, t) for d, t in out.items()}

    def exp(self) -> "GrassmannElement":
        """exp of a nilpotent even element by its power series.  Every term
        has degree >= 2, so powers beyond n vanish and the sum is exact."""
        if not self.is_even():
            raise ValueError("exp is only defined here for even elements")
        if _nonzero(self.terms.get(0, 0)):
            raise ValueError("exp of an element with a constant term is not supported")
        result = GrassmannElement.scalar(self.n, 1)
        power = GrassmannElement.scalar(self.n, 1)
        for k in range(1, self.n + 1):
            power = power * self
            if not power.terms:
                break
            result = result + power * Fraction(1, _factorial(k))
        return result

    def exp_commuting(self) -> "GrassmannElement":
        """exp as prod (1 + c m) over the monomials c m of the element.

        Valid because even monomials commute and square to zero; it is a
        faster route to the same answer as ``exp``."""
        if not self.is_even():
            raise ValueError("exp is only defined here for even elements")
        if _nonzero(self.terms.get(0, 0)):
            raise ValueError("exp of an element with a constant term is not supported")
        result = {0: 1}
        for m, c in sorted(self.terms.items()):
            new = dict(result)
            for r, a in result.items():
                if r & m:
                    continue
                val = a * c
                if _sign(r, m) < 0:
                    val = -val
                key = r | m
                new[key] = new[key] + val if key in new else val
            result = {k: v for k, v in new.items() if _nonzero(v)}
        return GrassmannElement(self.n, result)

    def top_coefficient(self):
        return self.terms.get((1 << (2 * self.n)) - 1, 0)

    def integrate(self):
        """Berezin integral with measure prod_i dpsi_i dpsibar_i.

        Integrating psibar_0 psi_0 ... psibar_{n-1} psi_{n-1} gives 1; in the
        canonical order that monomial is (-1)^n times the top monomial."""
        c = self.top_coefficient()
        return -c if self.n % 2 else c


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def psi(n: int, i: int) -> GrassmannElement:
    return GrassmannElement.generator(n, 2 * i)


def psibar(n: int, i: int) -> GrassmannElement:
    return GrassmannElement.generator(n, 2 * i + 1)


def pair(n: int, i: int, coeff=1) -> GrassmannElement:
    """psibar_i psi_i as a single even monomial (= -psi_i psibar_i)."""
    return GrassmannElement(n, {(1 << (2 * i)) | (1 << (2 * i + 1)): -coeff})
