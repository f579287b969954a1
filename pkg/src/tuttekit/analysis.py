"""Checkers for analytic properties: half-plane, same-phase, Rayleigh,
Brown-Colbourn, Lee-Yang/Heilmann-Lieb, hard-core gas and polymer gas.

Sample points are exact (rational or Gaussian rational) so that every
reported zero can be re-evaluated exactly.  Besides plain sampling, the
falsifiers use a linear-solve search: a multiaffine polynomial is affine in
each single variable, so fixing all other variables at random admissible
values leaves one exact candidate root, which is kept if it lies in the
region of interest."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np

from .algebra import GaussianRational, MultiAffinePoly, Poly, bits, popcount
from .graph import Multigraph, Symbol, induced_subgraph
from .matroid import RankOracle, is_matroid_basis_family, q_zero_matroid_limits
from .report import FALSIFIED, HOLDS, PROVEN, PropertyReport
from .tutte import connected_spanning_poly, spanning_tree_poly, z_tilde

__all__ = ["hpp_sample_check", "same_phase_check", "support_matroid_check",
           "rayleigh_difference", "rayleigh_check_graph", "rayleigh_check_matroid",
           "brown_colbourn_sample", "K4_EDGES", "K4_CASES", "k4_case_graph", "k4_bivariate_polys",
           "bc_boundary_root_trace", "bc_matroid_check", "lee_yang_poly", "lee_yang_check",
           "hardcore_poly", "hardcore_disc_check", "PolymerGas", "polymer_gas",
           "polymer_representation_check"]


# ---------------------------------------------------------------------------
# sampling helpers


def _rat(rng: random.Random, lo: int = 1, hi: int = 1000) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 1000))


def _right_half_plane(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(1, 1000), rng.randint(1, 1000))
    im = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
    return GaussianRational(re, im)


def _in_open_bc_disc(rng: random.Random) -> GaussianRational:
    """v with |1 + v| < 1."""
    while True:
        x = Fraction(rng.randint(-999, 999), 1000)
        y = Fraction(rng.randint(-999, 999), 1000)
        if x * x + y * y < 1:
            return GaussianRational(x - 1, y)


def _in_closed_disc(rng: random.Random, radius: Fraction) -> GaussianRational:
    while True:
        x = Fraction(rng.randint(-1000, 1000), 1000)
        y = Fraction(rng.randint(-1000, 1000), 1000)
        if x * x + y * y <= 1:
            return GaussianRational(x * radius, y * radius)


def _value(p, point: dict):
    """Exact value of a q-free MultiAffinePoly or a Poly at a full point."""
    if isinstance(p, MultiAffinePoly):
        r = p.evaluate(point)
        if isinstance(r, MultiAffinePoly):
            return r.constant_value() if not r.is_zero() else 0
        return r
    return p.evaluate(point)


def _is_zero(x) -> bool:
    return x == 0


def _bc_inside(v) -> bool:
    w = GaussianRational(1) + v
    return w.norm() < 1


def _linear_solve(p: MultiAffinePoly, k: int, point: dict):
    """Value of variable k making p vanish with the others fixed, or None."""
    p0, p1 = p.split(k)
    others = {i: x for i, x in point.items() if i != k}
    b = _value(p1, others)
    if _is_zero(b):
        return None
    a = _value(p0, others)
    return -_as_gauss(a) / b


def _as_gauss(x):
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


# ---------------------------------------------------------------------------
# half-plane property and its necessary conditions


def hpp_sample_check(p: MultiAffinePoly, samples: int = 200, seed: int = 0,
                     search: int = 200, complementary: bool = True) -> PropertyReport:
    """Look for a zero of p with every variable in Re x > 0.

    Probes: all ones, all 1+i, ``samples`` random Gaussian-rational points,
    then ``search`` linear-solve attempts.  With ``complementary`` the
    polynomial (prod x) p(1/x) is examined as well.  Never claims a proof."""
    if not p.is_q_free():
        raise ValueError("expected a polynomial in the edge variables only")
    variables = p.variables()
    targets = [("p", p)]
    if complementary and variables:
        universe = sum(1 << i for i in variables)
        targets.append(("complement", p.dual_transform(universe, 1)))
    rng = random.Random(seed)
    tried = 0
    for label, poly in targets:
        probes = [{i: GaussianRational(1) for i in variables},
                  {i: GaussianRational(1, 1) for i in variables}]
        probes += [{i: _right_half_plane(rng) for i in variables} for _ in range(samples)]
        for pt in probes:
            tried += 1
            if _is_zero(_value(poly, pt)):
                return PropertyReport("hpp", FALSIFIED, tried, seed,
                                      {"polynomial": label, "point": pt, "value": 0})
        for _ in range(search if variables else 0):
            tried += 1
            pt = {i: _right_half_plane(rng) for i in variables}
            k = rng.choice(variables)
            x = _linear_solve(poly, k, pt)
            if x is not None and _as_gauss(x).re > 0:
                pt[k] = _as_gauss(x)
                assert _is_zero(_value(poly, pt))
                return PropertyReport("hpp", FALSIFIED, tried, seed,
                                      {"polynomial": label, "point": pt, "value": 0})
    if p.is_homogeneous() and not p.is_zero():
        found = _stability_witness(p, rng, search)
        tried += found[0]
        if found[1] is not None:
            return PropertyReport("hpp", FALSIFIED, tried, seed,
                                  {"polynomial": "p", "point": found[1], "value": 0},
                                  {"method": "real-stability"})
    if p.is_zero():
        return PropertyReport("hpp", FALSIFIED, tried, seed, {"polynomial": "p", "value": 0},
                              {"reason": "zero polynomial"})
    return PropertyReport("hpp", HOLDS, tried, seed)


def _stability_witness(p: MultiAffinePoly, rng: random.Random, trials: int):
    """Exact right-half-plane zero of a homogeneous multiaffine p, if found.

    A real multiaffine polynomial is stable exactly when p_e p_f - p p_ef >= 0
    at every real point.  At a real point where this fails, solving for x_f
    with x_e = i is a Moebius map that keeps the upper half-plane, so nudging
    the remaining variables by +i*eps gives a zero with every Im > 0.
    Homogeneity turns that into a zero with every Re > 0 after multiplying
    all coordinates by -i."""
    variables = p.variables()
    if len(variables) < 2:
        return 0, None
    pairs = [(e, f) for e in variables for f in variables if e < f]
    parts = {e: p.derivative(e) for e in variables}
    for t in range(trials):
        x = {i: Fraction(rng.randint(-5, 5)) for i in variables}
        for e, f in pairs:
            pef = parts[e].derivative(f)
            gap = _value(parts[e], x) * _value(parts[f], x) - _value(p, x) * _value(pef, x)
            if gap >= 0:
                continue
            for eps in (Fraction(1, 1000), Fraction(1, 10 ** 6), Fraction(1, 10 ** 9)):
                pt = {k: GaussianRational(x[k], eps) for k in variables if k not in (e, f)}
                pt[e] = GaussianRational(0, 1)
                w = _linear_solve(p, f, pt)
                if w is None or _as_gauss(w).im <= 0:
                    continue
                pt[f] = _as_gauss(w)
                rotated = {k: z * GaussianRational(0, -1) for k, z in pt.items()}
                if all(z.re > 0 for z in rotated.values()) and _is_zero(_value(p, rotated)):
                    return t + 1, rotated
    return trials, None


def same_phase_check(p) -> PropertyReport:
    """All nonzero coefficients share one phase."""
    coeffs = [_as_gauss(a) for _, a in p.items()]
    if not coeffs:
        return PropertyReport("samephase", PROVEN, 0, details={"reason": "zero polynomial"})
    ref = coeffs[0]
    for c in coeffs[1:]:
        prod = c * ref.conjugate()
        if prod.im != 0 or prod.re <= 0:
            return PropertyReport("samephase", FALSIFIED, len(coeffs), None,
                                  {"coefficients": [ref, c]})
    return PropertyReport("samephase", PROVEN, len(coeffs))


def support_matroid_check(p: MultiAffinePoly) -> PropertyReport:
    """The support of a homogeneous multiaffine polynomial must be the
    family of bases of a matroid."""
    if not p.is_q_free():
        raise ValueError("expected a polynomial in the edge variables only")
    if not p.is_homogeneous():
        raise ValueError("support check needs a homogeneous polynomial")
    family = p.masks()
    if is_matroid_basis_family(family):
        return PropertyReport("support-matroid", PROVEN, len(family))
    return PropertyReport("support-matroid", FALSIFIED, len(family), None,
                          {"support": [list(bits(m)) for m in family]})


# ---------------------------------------------------------------------------
# Rayleigh


def rayleigh_difference(T: MultiAffinePoly, e: int, f: int) -> Poly:
    """T_e T_f - T_ef T, where T_e is the coefficient of x_e (the trees
    through e with e contracted) and T_ef the coefficient of x_e x_f."""
    if e == f:
        raise ValueError("need two distinct elements")
    Te, Tf = T.derivative(e), T.derivative(f)
    Tef = Te.derivative(f)
    return Te.to_poly() * Tf.to_poly() - Tef.to_poly() * T.to_poly()


def _rayleigh_report(name, diff: Poly, samples, seed) -> PropertyReport:
    if diff.is_nonnegative_coeffs():
        return PropertyReport(name, PROVEN, 0, seed, None, {"difference": diff.pretty()})
    rng = random.Random(seed)
    names = sorted(diff.variables())
    for k in range(samples):
        pt = {n: _rat(rng) for n in names}
        val = diff.evaluate(pt)
        if val < 0:
            return PropertyReport(name, FALSIFIED, k + 1, seed, {"point": pt, "value": val},
                                  {"difference": diff.pretty()})
    return PropertyReport(name, HOLDS, samples, seed, None, {"difference": diff.pretty()})


def rayleigh_check_graph(h: Multigraph, e: int, f: int, samples: int = 100, seed: int = 0):
    """Returns (report, difference polynomial) for the spanning-tree polynomial."""
    T = spanning_tree_poly(h.with_weights(Symbol()), prefix="x")
    diff = rayleigh_difference(T, e, f)
    return _rayleigh_report("rayleigh", diff, samples, seed), diff


def rayleigh_check_matroid(m: RankOracle, e: int, f: int, samples: int = 100, seed: int = 0):
    B = q_zero_matroid_limits(m)["B_M"]
    diff = rayleigh_difference(B, e, f)
    return _rayleigh_report("rayleigh-matroid", diff, samples, seed), diff


# ---------------------------------------------------------------------------
# Brown-Colbourn


def _bc_search(C: MultiAffinePoly, variables, samples, search, rng):
    """Random exact samples and linear-solve search in the open polydisc."""
    tried = 0
    for _ in range(samples):
        tried += 1
        pt = {i: _in_open_bc_disc(rng) for i in variables}
        if _is_zero(_value(C, pt)):
            return tried, pt
    for _ in range(search):
        tried += 1
        pt = {i: _in_open_bc_disc(rng) for i in variables}
        k = rng.choice(variables)
        x = _linear_solve(C, k, pt)
        if x is not None and _bc_inside(_as_gauss(x)):
            pt[k] = _as_gauss(x)
            return tried, pt
    return tried, None


def _float_roots(coeffs: list) -> list:
    """Roots of a polynomial with complex float coefficients (low to high),
    polished with Newton steps; returns (root, relative residual) pairs."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) < 2:
        return []
    approx = np.roots(coeffs[::-1])
    out = []
    with mpmath.workdps(40):
        cm = [mpmath.mpc(c) for c in coeffs]
        dm = [c * k for k, c in enumerate(cm)][1:]
        for z0 in approx:
            z = mpmath.mpc(z0)
            for _ in range(50):
                f = mpmath.polyval(cm[::-1], z)
                df = mpmath.polyval(dm[::-1], z)
                if df == 0:
                    break
                step = f / df
                z -= step
                if abs(step) < mpmath.mpf(10) ** -35:
                    break
            scale = sum(abs(c) * max(1, abs(z)) ** k for k, c in enumerate(cm))
            res = float(abs(mpmath.polyval(cm[::-1], z)) / scale)
            out.append((complex(z), res))
    return out


def _rationalize(z: complex, den: int = 10 ** 12) -> GaussianRational:
    return GaussianRational(Fraction(z.real).limit_denominator(den),
                            Fraction(z.imag).limit_denominator(den))


def _class_guided_search(g: Multigraph, C: MultiAffinePoly):
    """For graphs whose symbolic edges fall into named weight classes, put
    one class just inside the boundary circle, solve for another class
    numerically, round, and finish with an exact linear solve on one edge."""
    classes: dict = {}
    for e in g.edges:
        if isinstance(e.weight, Symbol):
            classes.setdefault(e.weight.name, []).append(e.id)
    if len(classes) < 2:
        return None
    names = sorted(classes)
    for free, fixed in [(a, b) for a in names for b in names if a != b]:
        rest = [n for n in names if n not in (free, fixed)]
        for rho in (Fraction(9999, 10000), Fraction(999, 1000), Fraction(99, 100)):
            for step in range(1, 51):
                theta = step / 100
                b_val = _rationalize(complex(-1 + float(rho) * math.cos(theta),
                                             float(rho) * math.sin(theta)), 10 ** 8)
                if not _bc_inside(b_val):
                    continue
                point = {i: b_val for i in classes[fixed]}
                for n in rest:
                    for i in classes[n]:
                        point[i] = GaussianRational(Fraction(-1, 2))
                # univariate polynomial in the free class value
                coeffs = [0j] * (len(classes[free]) + 1)
                for mask, a in C.evaluate(point).items():
                    coeffs[popcount(mask[0])] += complex(a)
                for root, _ in _float_roots(coeffs):
                    if abs(1 + root) >= 1:
                        continue
                    approx = _rationalize(root)
                    pt = dict(point)
                    for i in classes[free]:
                        pt[i] = approx
                    k = classes[free][-1]
                    x = _linear_solve(C, k, pt)
                    if x is not None and _bc_inside(_as_gauss(x)):
                        pt[k] = _as_gauss(x)
                        if all(_bc_inside(v) for v in pt.values()) and _is_zero(_value(C, pt)):
                            return pt, {"fixed_class": fixed, "free_class": free,
                                        "theta": theta, "radius": str(rho)}
    return None


def brown_colbourn_sample(g: Multigraph, samples: int = 1000, seed: int = 0,
                          search: int = 200) -> PropertyReport:
    """Search for v in the open polydisc |1 + v_e| < 1 with C_G(v) = 0.
    Edge weights of g only matter as class labels for the guided search."""
    if g.has_loops():
        raise ValueError("the Brown-Colbourn property concerns loopless graphs")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    C = connected_spanning_poly(g.with_weights(Symbol()))
    variables = g.edge_ids()
    rng = random.Random(seed)
    tried, pt = _bc_search(C, variables, samples, search, rng)
    details = {}
    if pt is None:
        guided = _class_guided_search(g, C)
        if guided is not None:
            pt, details = guided
    if pt is not None:
        assert _is_zero(_value(C, pt)) and all(_bc_inside(v) for v in pt.values())
        return PropertyReport("bc", FALSIFIED, tried, seed, {"point": pt, "value": 0}, details)
    return PropertyReport("bc", HOLDS, tried, seed)


def bc_matroid_check(m: RankOracle, samples: int = 1000, seed: int = 0,
                     search: int = 200) -> PropertyReport:
    """Spanning-set polynomial S_M sampled in the open polydisc."""
    if any(m.is_loop(e) for e in m.elements):
        raise ValueError("the Brown-Colbourn property concerns loopless matroids")
    S = q_zero_matroid_limits(m)["S_M"]
    rng = random.Random(seed)
    tried, pt = _bc_search(S, m.elements, samples, search, rng)
    if pt is not None:
        return PropertyReport("bc-matroid", FALSIFIED, tried, seed, {"point": pt, "value": 0})
    return PropertyReport("bc-matroid", HOLDS, tried, seed)


K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
# edges (by position in K4_EDGES) carrying weight a; the rest carry b
K4_CASES = {
    "a": [0],            # one edge
    "b": [0, 5],         # two disjoint edges
    "c": [0, 1],         # two edges sharing a vertex
    "d": [0, 1, 2],      # the star at vertex 0 (complement is a triangle)
    "e": [0, 1, 5],      # the path 1-0-2-3
}


def k4_case_graph(case: str) -> Multigraph:
    marked = set(K4_CASES[case])
    weights = [Symbol("a") if i in marked else Symbol("b") for i in range(6)]
    return Multigraph.from_pairs(4, K4_EDGES, weights)


def k4_bivariate_polys() -> dict:
    """C_{K4}(a, b) for the five ways of splitting the edges into two classes."""
    out = {}
    A, B = Poly.var("a"), Poly.var("b")
    for case in K4_CASES:
        g = k4_case_graph(case)
        C = connected_spanning_poly(g.with_weights(Symbol()))
        binding = {f"v_{e.id}": (A if e.weight.name == "a" else B) for e in g.edges}
        out[case] = C.to_poly().substitute(binding)
    return out


def bc_boundary_root_trace(case: str, thetas=None, tol: float = 1e-9,
                           direction: str = "both") -> PropertyReport:
    """Put one weight on the circle |1 + w| = 1 and solve C_{K4}(a, b) = 0
    for the other; report the smallest distance of a root from -1.

    ``direction`` "a" moves b = -1 + e^{i theta} and solves for a, "b" does
    the converse, "both" runs the two.  Roots must satisfy the residual
    tolerance ``tol``."""
    if case not in ("b", "d"):
        raise ValueError("the trace is defined for cases b and d")
    if direction not in ("a", "b", "both"):
        raise ValueError("direction must be a, b or both")
    if thetas is None:
        thetas = [k / 100 for k in range(1, 51)] + [math.pi]
    poly = k4_bivariate_polys()[case]
    solve_for = ["a", "b"] if direction == "both" else [direction]
    path = []
    witness = None
    for var in solve_for:
        other = "b" if var == "a" else "a"
        by_var = poly.coefficients_in(var)
        deg = max(by_var)
        for theta in thetas:
            w = complex(-1 + math.cos(theta), math.sin(theta))
            coeffs = [complex(by_var[k].evaluate({other: w})) if k in by_var else 0j
                      for k in range(deg + 1)]
            roots = _float_roots(coeffs)
            for z, res in roots:
                if res > tol:
                    raise ArithmeticError(f"root residual {res} exceeds {tol}")
            dists = [abs(1 + z) for z, _ in roots]
            best = min(range(len(roots)), key=lambda i: dists[i])
            path.append({"solve_for": var, "theta": theta, "roots": [z for z, _ in roots],
                         "min_dist": dists[best], "residual": roots[best][1]})
            if witness is None and dists[best] < 1:
                witness = {"solve_for": var, "theta": theta, other: w, var: roots[best][0],
                           "dist": dists[best], "residual": roots[best][1]}
    verdict = FALSIFIED if witness else HOLDS
    return PropertyReport("bc-boundary-trace", verdict, len(path), None, witness,
                          {"case": case, "path": path})


# ---------------------------------------------------------------------------
# Lee-Yang / Heilmann-Lieb and the hard-core gas


def lee_yang_poly(g: Multigraph, scheme: str = "lee-yang") -> Poly:
    """sum over A of prod_{e in A} lam_e prod_i w_i(A), with w_i = t_i for
    odd degree (Lee-Yang) or for degree one (Heilmann-Lieb, zero above)."""
    if scheme not in ("lee-yang", "heilmann-lieb"):
        raise ValueError("scheme must be lee-yang or heilmann-lieb")
    terms = {}
    m = g.num_edges
    ids = g.edge_ids()
    for mask in range(1 << m):
        deg = [0] * g.n
        mono = []
        for k in range(m):
            if (mask >> k) & 1:
                e = g.edges[k]
                deg[e.u] += 1
                deg[e.v] += 1
                mono.append((f"lam_{ids[k]}", 1))
        ok = True
        for i in range(g.n):
            if scheme == "lee-yang":
                if deg[i] % 2:
                    mono.append((f"t_{i}", 1))
            else:
                if deg[i] == 1:
                    mono.append((f"t_{i}", 1))
                elif deg[i] > 1:
                    ok = False
                    break
        if ok:
            key = Poly._mono(mono)
            terms[key] = terms.get(key, 0) + 1
    return Poly(terms)


def lee_yang_check(g: Multigraph, scheme: str = "lee-yang", samples: int = 200, seed: int = 0,
                   search: int = 200) -> PropertyReport:
    """Nonvanishing for lam_e >= 0 and Re t_i > 0, by sampling plus a
    linear-solve search in the t variables."""
    P = lee_yang_poly(g, scheme)
    names = sorted(P.variables())
    tnames = [n for n in names if n.startswith("t_")]
    lnames = [n for n in names if n.startswith("lam_")]
    rng = random.Random(seed)

    def point():
        pt = {n: _right_half_plane(rng) for n in tnames}
        pt.update({n: Fraction(rng.randint(0, 1000), rng.randint(1, 1000)) for n in lnames})
        return pt

    tried = 0
    for _ in range(samples):
        tried += 1
        pt = point()
        if _is_zero(P.evaluate(pt)):
            return PropertyReport(scheme, FALSIFIED, tried, seed, {"point": pt})
    for _ in range(search if tnames else 0):
        tried += 1
        pt = point()
        k = rng.choice(tnames)
        parts = P.coefficients_in(k)
        rest = {n: x for n, x in pt.items() if n != k}
        b = parts.get(1, Poly.const(0)).evaluate(rest) if 1 in parts else 0
        a = parts.get(0, Poly.const(0)).evaluate(rest) if 0 in parts else 0
        if b == 0:
            continue
        x = -_as_gauss(a) / b
        if x.re > 0:
            pt[k] = x
            return PropertyReport(scheme, FALSIFIED, tried, seed, {"point": pt})
    return PropertyReport(scheme, HOLDS, tried, seed)


def hardcore_poly(g: Multigraph) -> MultiAffinePoly:
    """Independent-set polynomial in vertex weights w_i."""
    adj = [0] * g.n
    for e in g.edges:
        adj[e.u] |= 1 << e.v
        adj[e.v] |= 1 << e.u
    terms = {}
    for S in range(1 << g.n):
        if all(not (adj[i] & S) for i in bits(S)):
            terms[(S, 0)] = 1
    return MultiAffinePoly(terms, prefix="w")


def hardcore_disc_check(g: Multigraph, samples: int = 200, seed: int = 0) -> PropertyReport:
    """Nonvanishing in the closed polydisc |w_i| <= (D-1)^(D-1)/D^D."""
    delta = g.max_degree()
    if delta < 2:
        raise ValueError("the disc bound needs maximum degree at least 2")
    R = Fraction((delta - 1) ** (delta - 1), delta ** delta)
    Z = hardcore_poly(g)
    rng = random.Random(seed)
    probes = [{i: GaussianRational(-R) for i in range(g.n)},
              {i: GaussianRational(R) for i in range(g.n)}]
    probes += [{i: _in_closed_disc(rng, R) for i in range(g.n)} for _ in range(samples)]
    for k, pt in enumerate(probes):
        if _is_zero(_value(Z, pt)):
            return PropertyReport("hardcore", FALSIFIED, k + 1, seed, {"point": pt},
                                  {"radius": R})
    return PropertyReport("hardcore", HOLDS, len(probes), seed, None, {"radius": R})


# ---------------------------------------------------------------------------
# polymer gas


@dataclass
class PolymerGas:
    n: int
    polymers: list          # vertex masks with at least two vertices
    weights: dict           # mask -> MultiAffinePoly
    singleton: dict         # vertex -> weight of an uncovered vertex

    def incompatible(self, a: int, b: int) -> bool:
        return bool(a & b)

    def intersection_edges(self) -> list:
        return [(a, b) for a, b in combinations(self.polymers, 2) if a & b]

    def partition_function(self) -> MultiAffinePoly:
        """Sum over families of pairwise disjoint polymers of the product of
        their weights, uncovered vertices contributing their singleton
        weight."""
        memo = {0: MultiAffinePoly.one()}
        by_low: dict = {}
        for S in self.polymers:
            by_low.setdefault(S & -S, []).append(S)

        def F(U):
            if U in memo:
                return memo[U]
            low = U & -U
            i = low.bit_length() - 1
            total = self.singleton[i] * F(U & ~low)
            for S in by_low.get(low, []):
                if S & ~U == 0:
                    total = total + self.weights[S] * F(U & ~S)
            memo[U] = total
            return total

        return F((1 << self.n) - 1)


def polymer_gas(g: Multigraph) -> PolymerGas:
    gs = g.with_weights(Symbol())
    polymers, weights = [], {}
    for size in range(2, g.n + 1):
        for vs in combinations(range(g.n), size):
            sub, _ = induced_subgraph(gs, vs)
            if not sub.is_connected():
                continue
            mask = sum(1 << v for v in vs)
            polymers.append(mask)
            weights[mask] = connected_spanning_poly(sub).shift_q(1 - size)
    singleton = {}
    for v in range(g.n):
        w = MultiAffinePoly.one()
        for e in gs.edges:
            if e.is_loop and e.u == v:
                w = w * (MultiAffinePoly.variable(e.id) + 1)
        singleton[v] = w
    return PolymerGas(g.n, polymers, weights, singleton)


def polymer_representation_check(g: Multigraph) -> PropertyReport:
    """Z~_G(q, v) against its polymer-gas expansion, as exact polynomials."""
    if g.n > 7:
        raise ValueError("polymer check limited to 7 vertices")
    gas = polymer_gas(g)
    lhs = z_tilde(g.with_weights(Symbol()))
    rhs = gas.partition_function()
    verdict = PROVEN if lhs == rhs else FALSIFIED
    return PropertyReport("polymer", verdict, len(gas.polymers), None,
                          None if verdict == PROVEN else {"direct": lhs, "polymer": rhs},
                          {"polymers": len(gas.polymers)})
