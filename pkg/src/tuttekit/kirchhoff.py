"""Laplacians, matrix-tree theorems, effective conductance and the
Grassmann-integral representation of spanning forests."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .algebra import (CapExceeded, MultiAffinePoly, Poly, RationalFunction, as_exact, bits,
                      exact_determinant, popcount)
from .graph import Multigraph, Symbol, UnionFind, merge_vertices
from .grassmann import GrassmannElement, pair, psi, psibar
from .tutte import enumerate_subsets

__all__ = ["weighted_laplacian", "laplacian_via_incidence", "matrix_tree", "rooted_forest_minor",
           "rooted_forests_enumerated", "effective_conductance", "bilinear_form",
           "grassmann_integrate", "quartic_term", "quartic_edge_term", "grassmann_forest_lhs",
           "forest_rhs", "grassmann_marked_formula", "marked_subgraph_sum"]


def _edge_weight(e, prefix="x"):
    if isinstance(e.weight, Symbol):
        return MultiAffinePoly.variable(e.id, prefix=prefix)
    return MultiAffinePoly.constant(as_exact(e.weight), prefix=prefix)


def weighted_laplacian(g: Multigraph, weights: dict | None = None, prefix="x"):
    """L[i][i] = sum of weights at i, L[i][j] = -(sum of weights on ij).

    Entries are MultiAffinePoly; symbolic edges become x_e.  ``weights``
    optionally maps edge ids to exact values.  Loops contribute nothing."""
    zero = MultiAffinePoly.zero(prefix=prefix)
    L = [[zero for _ in range(g.n)] for _ in range(g.n)]
    for e in g.edges:
        if e.is_loop:
            continue
        w = (MultiAffinePoly.constant(as_exact(weights[e.id]), prefix=prefix)
             if weights and e.id in weights else _edge_weight(e, prefix))
        L[e.u][e.u] = L[e.u][e.u] + w
        L[e.v][e.v] = L[e.v][e.v] + w
        L[e.u][e.v] = L[e.u][e.v] - w
        L[e.v][e.u] = L[e.v][e.u] - w
    return L


def laplacian_via_incidence(g: Multigraph, prefix="x"):
    """B diag(x) B^T for the incidence matrix B of the orientation u -> v."""
    zero = MultiAffinePoly.zero(prefix=prefix)
    L = [[zero for _ in range(g.n)] for _ in range(g.n)]
    for e in g.edges:
        col = [0] * g.n
        col[e.u] += 1
        col[e.v] -= 1
        w = _edge_weight(e, prefix)
        for i in range(g.n):
            if col[i] == 0:
                continue
            for j in range(g.n):
                if col[j] != 0:
                    L[i][j] = L[i][j] + w * (col[i] * col[j])
    return L


def _minor(L, drop):
    keep = [i for i in range(len(L)) if i not in drop]
    return [[L[i][j] for j in keep] for i in keep]


def _det(M):
    if not M:
        return MultiAffinePoly.one(prefix="x")
    if all(x.is_constant() for row in M for x in row):
        val = exact_determinant([[x.constant_value() for x in row] for row in M])
        return MultiAffinePoly.constant(val, prefix="x")
    d = exact_determinant(M)
    if isinstance(d, MultiAffinePoly):
        return d.rename(prefix="x")
    return MultiAffinePoly.constant(d, prefix="x")


def matrix_tree(g: Multigraph, root: int = 0, weights: dict | None = None) -> MultiAffinePoly:
    """det of the Laplacian with row and column ``root`` removed: the
    spanning-tree polynomial (zero when g is disconnected)."""
    if not 0 <= root < g.n:
        raise ValueError("root out of range")
    return _det(_minor(weighted_laplacian(g, weights), {root}))


def rooted_forest_minor(g: Multigraph, roots, weights: dict | None = None) -> MultiAffinePoly:
    """det L with the rows/columns of ``roots`` removed: spanning forests in
    which every tree contains exactly one root."""
    roots = set(roots)
    if not roots or any(not 0 <= r < g.n for r in roots):
        raise ValueError("roots must be a nonempty set of vertices")
    return _det(_minor(weighted_laplacian(g, weights), roots))


def rooted_forests_enumerated(g: Multigraph, roots) -> MultiAffinePoly:
    """The same polynomial by enumerating acyclic edge sets."""
    roots = sorted(set(roots))
    acc = {}
    for mask, k in enumerate_subsets(g):
        if k != len(roots) or popcount(mask) != g.n - k:
            continue
        uf = UnionFind(g.n)
        for e in g.edges:
            if (mask >> e.id) & 1:
                uf.union(e.u, e.v)
        if len({uf.find(r) for r in roots}) == len(roots):
            c = 1
            sym = 0
            for e in g.edges:
                if (mask >> e.id) & 1:
                    if isinstance(e.weight, Symbol):
                        sym |= 1 << e.id
                    else:
                        c *= as_exact(e.weight)
            if c:
                acc[(sym, 0)] = acc.get((sym, 0), 0) + c
    return MultiAffinePoly(acc, prefix="x")


def effective_conductance(g: Multigraph, i: int, j: int) -> RationalFunction:
    """Y_ij = T_G / T_{G/ij}, reduced (scalar-valued when weights are numeric)."""
    if i == j:
        raise ValueError("need two distinct vertices")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    t_g = matrix_tree(g)
    merged, _ = merge_vertices(g, i, j)
    t_m = matrix_tree(merged)
    return RationalFunction(t_g.to_poly(), t_m.to_poly()).reduced()


# ---------------------------------------------------------------------------
# Grassmann integrals


def bilinear_form(A, n: int | None = None) -> GrassmannElement:
    """psibar A psi = sum_ij A_ij psibar_i psi_j."""
    n = len(A) if n is None else n
    out = GrassmannElement(n)
    for i in range(len(A)):
        for j in range(len(A)):
            if A[i][j] != 0:
                out = out + psibar(n, i) * psi(n, j) * A[i][j]
    return out


def grassmann_integrate(e: GrassmannElement):
    return e.integrate()


def _scalar_laplacian(g: Multigraph, w):
    """Laplacian with scalar or Poly entries; w maps edge id -> weight."""
    L = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        if e.is_loop:
            continue
        x = w[e.id]
        L[e.u][e.u] = L[e.u][e.u] + x
        L[e.v][e.v] = L[e.v][e.v] + x
        L[e.u][e.v] = L[e.u][e.v] - x
        L[e.v][e.u] = L[e.v][e.u] - x
    return L


def quartic_term(L, u) -> GrassmannElement:
    """-(u/2) sum_{i,j} (psibar_i psi_i) L_ij (psibar_j psi_j)."""
    n = len(L)
    out = GrassmannElement(n)
    for i in range(n):
        for j in range(n):
            if i != j and L[i][j] != 0:
                out = out + pair(n, i) * pair(n, j) * (L[i][j] * u * Fraction(-1, 2))
    return out


def quartic_edge_term(g: Multigraph, w, u) -> GrassmannElement:
    """u sum over edges ij of w_ij psibar_i psi_i psibar_j psi_j."""
    out = GrassmannElement(g.n)
    for e in g.edges:
        if not e.is_loop:
            out = out + pair(g.n, e.u) * pair(g.n, e.v) * (w[e.id] * u)
    return out


def _weights(g: Multigraph, w):
    """Edge id -> weight: a scalar for all, a dict, or None for symbolic w_e."""
    if w is None:
        return {e.id: Poly.var(f"w_{e.id}") for e in g.edges}
    if isinstance(w, dict):
        return {e.id: w[e.id] for e in g.edges}
    return {e.id: w for e in g.edges}


def grassmann_forest_lhs(g: Multigraph, t=None, w=None, quartic: str = "laplacian",
                         method: str = "series"):
    """Integral of exp[psibar L psi + t sum psibar_i psi_i + quartic] with the
    quartic coupling u = -t.  ``t=None`` keeps t symbolic (a Poly in t);
    ``w`` as in ``_weights``.  ``quartic`` selects the Laplacian form or the
    edge form of the four-fermion term."""
    if g.n > 8:
        raise CapExceeded("Grassmann algebra limited to 8 vertices")
    t = Poly.var("t") if t is None else t
    wmap = _weights(g, w)
    L = _scalar_laplacian(g, wmap)
    n = g.n
    X = bilinear_form(L, n)
    for i in range(n):
        X = X + pair(n, i, t)
    u = -t
    X = X + (quartic_term(L, u) if quartic == "laplacian" else quartic_edge_term(g, wmap, u))
    E = X.exp() if method == "series" else X.exp_commuting()
    return E.integrate()


def forest_rhs(g: Multigraph, t=None, w=None):
    """t^{|V|} F_G(w/t) = sum over forests A of t^{|V|-|A|} prod w_e."""
    t = Poly.var("t") if t is None else t
    wmap = _weights(g, w)
    total = 0
    for mask, k in enumerate_subsets(g):
        if popcount(mask) != g.n - k:
            continue
        term = t ** k
        for i in bits(mask):
            term = term * wmap[i]
        total = total + term
    return total


def _connected_subgraphs(g: Multigraph):
    """All (vertex mask, edge mask) pairs of connected subgraphs."""
    out = []
    for size in range(1, g.n + 1):
        for vs in combinations(range(g.n), size):
            vmask = sum(1 << v for v in vs)
            inside = [e for e in g.edges if (vmask >> e.u) & 1 and (vmask >> e.v) & 1]
            for r in range(len(inside) + 1):
                for es in combinations(inside, r):
                    uf = UnionFind(g.n)
                    for e in es:
                        uf.union(e.u, e.v)
                    if len({uf.find(v) for v in vs}) == 1:
                        out.append((vmask, sum(1 << e.id for e in es)))
    return out


def marked_subgraph_sum(g: Multigraph, marks: dict, w=None):
    """Right-hand side: sum over spanning H of prod_i W(H_i) prod_{e in H} w_e,
    where W(H_i) sums t_Gamma over subgraphs Gamma contained in H_i whose
    cycles account for all cycles of H_i.  ``marks`` maps (vertex mask, edge
    mask) to t_Gamma."""
    wmap = _weights(g, w)
    total = 0
    for mask, _ in enumerate_subsets(g):
        uf = UnionFind(g.n)
        for e in g.edges:
            if (mask >> e.id) & 1:
                uf.union(e.u, e.v)
        comps: dict = {}
        for v in range(g.n):
            comps.setdefault(uf.find(v), [0, 0])[0] |= 1 << v
        for e in g.edges:
            if (mask >> e.id) & 1:
                comps[uf.find(e.u)][1] |= 1 << e.id
        prod = 1
        for vmask, emask in comps.values():
            cyc = popcount(emask) - popcount(vmask) + 1
            weight = 0
            for (gv, ge), tg in marks.items():
                if gv & ~vmask or ge & ~emask:
                    continue
                if popcount(ge) - popcount(gv) + 1 == cyc:
                    weight = weight + tg
            prod = prod * weight
            if prod == 0:
                break
        if prod == 0:
            continue
        for i in bits(mask):
            prod = prod * wmap[i]
        total = total + prod
    return total


def grassmann_marked_formula(g: Multigraph, marks: dict, w=None) -> dict:
    """Both sides of the marked-subgraph generating function.

    ``marks`` maps (vertex mask, edge mask) of connected subgraphs to t_Gamma.
    Returns {"lhs", "rhs", "equal"}."""
    if g.n > 5:
        raise CapExceeded("marked formula limited to 5 vertices")
    wmap = _weights(g, w)
    L = _scalar_laplacian(g, wmap)
    n = g.n
    X = bilinear_form(L, n)
    for (vmask, emask), tg in marks.items():
        coeff = tg
        for i in bits(emask):
            coeff = coeff * wmap[i]
        mono = GrassmannElement.scalar(n, 1)
        for v in bits(vmask):
            mono = mono * pair(n, v)
        X = X + mono * coeff
    lhs = X.exp().integrate()
    rhs = marked_subgraph_sum(g, marks, w)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}
