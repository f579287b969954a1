"""Complex roots of univariate specializations and zero-free region checks."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .algebra import GaussianRational, LaurentPoly, Poly, as_exact
from .graph import Multigraph, maxmaxflow, second_largest_degree
from .report import FALSIFIED, HOLDS, PropertyReport
from .tutte import chromatic_poly, compute_z

__all__ = ["RootSet", "complex_roots", "chromatic_roots", "flow_roots", "DISC_CONSTANT",
           "zero_free_disc_check", "sturm_count", "conjecture_experiments", "ROYLE_ROOTS"]

# decimal literal of the universal disc constant, kept exact
DISC_CONSTANT = Fraction("7.963907")

# known chromatic roots of large graphs violating the maxmaxflow half-plane bound;
# recorded for reference only, far beyond exact computation here
ROYLE_ROOTS = {
    47: complex(3.0129950712, 0.8089628639),
    95: complex(3.0536525915, 0.7547530551),
    191: complex(3.07174237056, 0.7105232675),
    383: complex(3.0766232972, 0.6746120243),
}


@dataclass
class RootSet:
    roots: list                 # complex, each listed once per multiplicity
    multiplicities: list        # parallel to ``distinct``
    distinct: list
    tolerance: float
    residuals: list = field(default_factory=list)
    source_hash: str = ""
    degree: int = 0

    def __len__(self):
        return len(self.roots)

    def to_json(self):
        return {"roots": [{"re": z.real, "im": z.imag, "multiplicity": m}
                          for z, m in zip(self.distinct, self.multiplicities)],
                "degree": self.degree, "tolerance": self.tolerance,
                "max_residual": max(self.residuals, default=0.0),
                "source_hash": self.source_hash}

    def max_modulus(self) -> float:
        return max((abs(z) for z in self.roots), default=0.0)

    def real_roots(self, tol: float = 1e-9) -> list:
        return sorted(z.real for z in self.distinct if abs(z.imag) <= tol)


def _to_mp(c):
    if isinstance(c, GaussianRational):
        return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                          mpmath.mpf(c.im.numerator) / c.im.denominator)
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def _as_laurent(p, var="q") -> LaurentPoly:
    if isinstance(p, LaurentPoly):
        return p
    if isinstance(p, Poly):
        names = p.variables()
        if len(names) > 1:
            raise ValueError("polynomial is not univariate")
        name = next(iter(names)) if names else var
        return p.to_laurent(name)
    if isinstance(p, (list, tuple)):
        return LaurentPoly.from_coefficients([as_exact(c) for c in p], var)
    raise TypeError("expected a LaurentPoly, univariate Poly or coefficient list")


def _polish(coeffs_mp, z0, steps=60):
    """Newton iteration in extended precision; returns (root, converged)."""
    z = mpmath.mpc(z0)
    deriv = [c * k for k, c in enumerate(coeffs_mp)][1:]
    for _ in range(steps):
        f = mpmath.polyval(coeffs_mp[::-1], z)
        df = mpmath.polyval(deriv[::-1], z) if deriv else 0
        if df == 0:
            return z, False
        step = f / df
        z -= step
        if abs(step) <= mpmath.mpf(10) ** (-(mpmath.mp.dps - 5)) * max(1, abs(z)):
            return z, True
    return z, False


def _squarefree_roots(f: LaurentPoly, dps: int):
    """Roots of a squarefree polynomial with exact coefficients."""
    coeffs = f.coefficient_list()
    n = len(coeffs) - 1
    if n == 0:
        return []
    with mpmath.workdps(dps):
        cm = [_to_mp(c) for c in coeffs]
        lead = cm[-1]
        monic = [c / lead for c in cm]
        if n == 1:
            return [complex(-monic[0])]
        # companion-matrix eigenvalues (LAPACK balances by default)
        approx = np.roots([complex(c) for c in monic[::-1]])
        polished = []
        ok = True
        for z0 in approx:
            z, conv = _polish(monic, z0)
            ok &= conv
            polished.append(z)
        # distinct starting points may converge to the same root; fall back
        if not ok or _has_duplicates(polished):
            polished = mpmath.polyroots(monic[::-1], maxsteps=500, extraprec=4 * dps)
        out = [complex(z) for z in polished]
        if not any(isinstance(c, GaussianRational) for c in coeffs):
            # real coefficients: polishing leaves ~1e-100 imaginary dust on real roots
            out = [complex(z.real, 0.0) if abs(z.imag) < 1e-40 * max(1.0, abs(z)) else z
                   for z in out]
        return out


def _has_duplicates(zs) -> bool:
    for i in range(len(zs)):
        for j in range(i):
            if abs(zs[i] - zs[j]) < mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)):
                return True
    return False


def _residual(f: LaurentPoly, z: complex) -> float:
    coeffs = f.coefficient_list()
    scale = sum(abs(complex(_to_mp(c))) * max(1.0, abs(z)) ** k for k, c in enumerate(coeffs))
    val = abs(complex(mpmath.polyval([_to_mp(c) for c in coeffs[::-1]], mpmath.mpc(z))))
    return val / scale if scale else val


def _source_hash(lp: LaurentPoly) -> str:
    """Stable digest of the exact coefficients (``hash`` is salted per run)."""
    return hashlib.sha256(json.dumps(lp.to_json()).encode()).hexdigest()[:16]


def complex_roots(p, tol: float = 1e-10, dps: int = 60) -> RootSet:
    """All complex roots with exact multiplicities.

    The polynomial is split exactly into squarefree factors (Yun), each
    factor's roots are seeded from companion-matrix eigenvalues and polished
    by Newton steps at ``dps`` digits.  Every root is checked against the
    exact coefficients: the relative residual must not exceed ``tol``.
    A Laurent polynomial is first multiplied by the power of q that clears
    negative exponents."""
    lp = _as_laurent(p)
    if lp.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    lp = lp.shift(-min(lp.low_degree(), 0))
    roots, distinct, mults, residuals = [], [], [], []
    for factor, mult in lp.squarefree_decomposition():
        if factor.degree() == 1 and factor.coeff(0) == 0:
            zs = [0j]
        else:
            zs = _squarefree_roots(factor, dps)
        for z in zs:
            r = _residual(factor, z)
            if r > tol:
                raise ArithmeticError(f"root {z} fails the residual check ({r:.2e} > {tol})")
            residuals.append(r)
            distinct.append(z)
            mults.append(mult)
            roots.extend([z] * mult)
    order = sorted(range(len(distinct)), key=lambda i: (round(distinct[i].real, 12),
                                                         round(distinct[i].imag, 12)))
    distinct = [distinct[i] for i in order]
    mults = [mults[i] for i in order]
    residuals = [residuals[i] for i in order]
    roots.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return RootSet(roots, mults, distinct, tol, residuals, _source_hash(lp), lp.degree())


def chromatic_roots(g: Multigraph, tol: float = 1e-10) -> RootSet:
    """Chromatic roots, including q = 0 with multiplicity k(G)."""
    if g.has_loops():
        raise ValueError("a graph with a loop has chromatic polynomial 0")
    return complex_roots(chromatic_poly(g), tol)


def flow_roots(g: Multigraph, tol: float = 1e-10) -> RootSet:
    from .tutte import flow_poly
    return complex_roots(flow_poly(g), tol)


def _disc_sample(rng: random.Random, closed: bool = True) -> GaussianRational:
    """A rational point v with |1 + v| <= 1 (or < 1)."""
    while True:
        x = Fraction(rng.randint(-1000, 1000), 1000)
        y = Fraction(rng.randint(-1000, 1000), 1000)
        r2 = x * x + y * y
        if r2 < 1 or (closed and r2 == 1):
            return GaussianRational(x - 1, y)


def zero_free_disc_check(g: Multigraph, v_samples: int = 0, seed: int = 0,
                         tol: float = 1e-8) -> PropertyReport:
    """Chromatic roots inside |q| < C*Delta, and inside the union of
    |q| < C*Delta2 and |q - 1| < C*Delta2.  With ``v_samples`` > 0, also the
    q-roots of Z_G(q, v) for v sampled in the closed disc |1 + v| <= 1 must
    lie in |q| < C*max|v|*Delta."""
    if g.has_loops():
        raise ValueError("loopless graphs only")
    C = float(DISC_CONSTANT)
    delta = g.max_degree()
    delta2 = second_largest_degree(g)
    rs = chromatic_roots(g)
    details = {"max_degree": delta, "second_degree": delta2,
               "max_modulus": rs.max_modulus(), "radius_max_degree": C * delta,
               "radius_second_degree": C * delta2}
    witness = None
    for z in rs.distinct:
        if not abs(z) < C * delta - tol:
            witness = {"root": z, "bound": "max-degree disc"}
            break
        if not (abs(z) < C * delta2 - tol or abs(z - 1) < C * delta2 - tol):
            witness = {"root": z, "bound": "second-degree union"}
            break
    rng = random.Random(seed)
    checked = len(rs.distinct)
    for _ in range(v_samples if witness is None else 0):
        vals = {e.id: _disc_sample(rng) for e in g.edges}
        vmax = max(abs(complex(v)) for v in vals.values()) if vals else 0
        z = compute_z(g, vals).to_laurent()
        for r in complex_roots(z, tol=1e-9).distinct:
            checked += 1
            # q = 0 is a root of every Z_G and is not what the bound is about
            if abs(r) > tol and not abs(r) < C * vmax * delta - tol:
                witness = {"root": r, "bound": "weighted disc", "v": vals}
                break
        if witness:
            break
    return PropertyReport("zero-free-disc", FALSIFIED if witness else HOLDS, checked, seed,
                          witness, details)


def sturm_count(p: LaurentPoly, a: Fraction, b: Fraction | None = None) -> int:
    """Number of distinct real roots in (a, b] (b = None means +infinity)."""
    p = p.shift(-min(p.low_degree(), 0))
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        _, r = seq[-2].divmod(seq[-1])
        seq.append(-r)
    seq = [s for s in seq if not s.is_zero()]

    def changes(x):
        if x is None:
            signs = [1 if s.coeff(s.degree()) > 0 else -1 for s in seq]
        else:
            signs = [s.evaluate(x) for s in seq]
            signs = [1 if v > 0 else -1 for v in signs if v != 0]
        return sum(1 for i in range(1, len(signs)) if signs[i] != signs[i - 1])

    return changes(a) - changes(b)


def conjecture_experiments(g: Multigraph) -> dict:
    """Evaluate the maxmaxflow conjectures on one graph.  Experimental:
    outcomes are recorded, never asserted."""
    if g.has_loops():
        raise ValueError("loopless graphs only")
    lam = maxmaxflow(g) if g.n >= 2 else 0
    P = chromatic_poly(g)
    rs = chromatic_roots(g)
    reduced = P.shift(-1)
    taylor = reduced.taylor_shift(lam)
    no_root_beyond = sturm_count(P, Fraction(lam)) == 0
    lead_positive = P.coeff(P.degree()) > 0
    return {
        "maxmaxflow": lam,
        "max_modulus": rs.max_modulus(),
        "modulus_over_maxmaxflow": rs.max_modulus() / lam if lam else None,
        "half_plane_re_le_maxmaxflow": all(z.real <= lam + 1e-9 for z in rs.distinct),
        "max_real_part": max(z.real for z in rs.distinct),
        "taylor_nonnegative_at_maxmaxflow": all(c >= 0 for _, c in taylor.items()),
        # no real root beyond lambda and a positive leading coefficient
        "positive_beyond_maxmaxflow": no_root_beyond and lead_positive,
    }
