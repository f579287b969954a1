"""Z_G(q, v) and its specializations.

Two independent routes compute the multivariate Tutte polynomial:

* ``z_subset_expansion`` sums q^{k(A)} prod v_e over all edge subsets;
* ``z_delete_contract`` is a memoised deletion-contraction solver with loop,
  pendant, parallel and series reductions and component/block splitting.

The solver stores every edge weight as a fraction ``num/den`` of multiaffine
polynomials and computes the *homogenized* partition function

    Zh(G) = sum_A q^{k(A)} prod_{e in A} num_e prod_{e not in A} den_e,

which equals (prod den_e) * Z_G(q, num/den).  With this bookkeeping a series
merge needs no separate prefactor: the merged edge gets
num = n1*n2 and den = q*d1*d2 + n1*d2 + n2*d1, and Zh is unchanged.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import CapExceeded, LaurentPoly, MultiAffinePoly, Poly, as_exact, bits, popcount
from .graph import Edge, Multigraph, RotationSystem, Symbol, UnionFind, planar_dual

__all__ = [
    "TutteResult", "ReductionStep", "symbolic_cap", "edge_weight_map",
    "z_subset_expansion", "z_delete_contract", "compute_z", "potts_coloring_oracle",
    "gamma_flow_oracle", "chromatic_poly", "flow_poly", "flow_poly_multivariate",
    "reliability_poly", "q_zero_limits", "alpha_limit_check", "tutte_xy",
    "duality_check", "z_uniform_bivariate", "z_tilde", "reduce_graph",
    "enumerate_subsets", "connected_spanning_poly", "spanning_forest_poly",
    "spanning_tree_poly",
]

ONE = MultiAffinePoly.one()
Q = MultiAffinePoly.q_power(1)


def symbolic_cap() -> int:
    """Maximum number of symbolic edges; override with TUTTEKIT_CAP_EDGES."""
    return int(os.environ.get("TUTTEKIT_CAP_EDGES", "24"))


def _check_cap(count: int, what: str):
    cap = symbolic_cap()
    if count > cap:
        raise CapExceeded(f"{what}: {count} edges exceeds the symbolic cap {cap}")


@dataclass
class ReductionStep:
    kind: str            # loop-factor, bridge-factor, isolated, parallel-merge, series-merge, ...
    edges: tuple
    factor: MultiAffinePoly | None = None


@dataclass
class TutteResult:
    z: MultiAffinePoly
    provenance: str
    stats: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def check_invariants(self, g: Multigraph):
        """Degree in q equals |V|; lowest q-power equals k(G)."""
        if self.z.is_zero():
            return True
        return self.z.degree_q() == g.n and self.z.low_degree_q() == g.components()


def edge_weight_map(g: Multigraph, overrides: dict | None = None) -> dict:
    """Edge id -> (num, den) pair of MultiAffinePoly.

    Symbolic edges (any symbol name) become their own variable v_id.
    ``overrides`` may give a scalar, a LaurentPoly in q, a MultiAffinePoly, or
    an explicit (num, den) pair per edge id."""
    out = {}
    overrides = overrides or {}
    for e in g.edges:
        w = overrides.get(e.id, e.weight)
        if isinstance(w, tuple):
            n, d = (_as_map(x) for x in w)
        elif isinstance(w, Symbol):
            n, d = MultiAffinePoly.variable(e.id), ONE
        else:
            n, d = _as_map(w), ONE
        out[e.id] = (n, d)
    return out


def _as_map(x) -> MultiAffinePoly:
    if isinstance(x, MultiAffinePoly):
        return x
    if isinstance(x, LaurentPoly):
        return MultiAffinePoly.from_laurent(x)
    return MultiAffinePoly.constant(as_exact(x))


# ---------------------------------------------------------------------------
# subset expansion


def enumerate_subsets(g: Multigraph):
    """Yield (mask, k(A)) for every edge subset A, by depth-first search with
    a copied parent array at each inclusion."""
    edges = [(e.id, e.u, e.v) for e in g.edges]
    m = len(edges)

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    stack = [(0, 0, list(range(g.n)), g.n)]
    while stack:
        i, mask, parent, k = stack.pop()
        if i == m:
            yield mask, k
            continue
        eid, a, b = edges[i]
        stack.append((i + 1, mask, parent, k))
        ra, rb = find(parent, a), find(parent, b)
        if ra == rb:
            stack.append((i + 1, mask | (1 << eid), parent, k))
        else:
            p2 = list(parent)
            p2[ra] = rb
            stack.append((i + 1, mask | (1 << eid), p2, k - 1))


def _scalar_weights(g: Multigraph, overrides=None):
    """Split edges into symbolic bits and numeric coefficients."""
    sym = {}
    num = {}
    overrides = overrides or {}
    for e in g.edges:
        w = overrides.get(e.id, e.weight)
        if isinstance(w, Symbol):
            sym[e.id] = True
        else:
            num[e.id] = as_exact(w)
    return sym, num


def z_subset_expansion(g: Multigraph, weights: dict | None = None) -> TutteResult:
    """Direct sum over all 2^|E| subsets.  Symbolic edges contribute their
    variable, numeric edges their value."""
    sym, num = _scalar_weights(g, weights)
    _check_cap(g.num_edges, "subset expansion")
    num_mask = 0
    for i in num:
        num_mask |= 1 << i
    acc: dict = {}
    count = 0
    for mask, k in enumerate_subsets(g):
        count += 1
        c = 1
        for i in bits(mask & num_mask):
            c = c * num[i]
            if c == 0:
                break
        if c == 0:
            continue
        key = (mask & ~num_mask, k)
        acc[key] = acc.get(key, 0) + c
    z = MultiAffinePoly(acc)
    return TutteResult(z, "oracle", {"subsets": count})


# ---------------------------------------------------------------------------
# deletion-contraction solver

# internal graph: (verts: tuple of labels, edges: tuple of (eid, u, v, num, den))


def _canonical_key(verts, edges):
    """Relabel vertices by iterated degree refinement (ties broken by the
    current labels) and return a literal key.  Equal keys imply isomorphic
    weighted graphs, which is all correctness needs."""
    wkey = {e[0]: hash((e[3], e[4])) for e in edges}
    adj = {x: [] for x in verts}
    for eid, u, v, _, _ in edges:
        adj[u].append((v, wkey[eid]))
        adj[v].append((u, wkey[eid]))
    color = {x: len(adj[x]) for x in verts}
    for _ in range(len(verts)):
        sig = {x: (color[x], tuple(sorted((color[y], w) for y, w in adj[x]))) for x in verts}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {x: ranks[sig[x]] for x in verts}
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    order = sorted(verts, key=lambda x: (color[x], x))
    label = {x: i for i, x in enumerate(order)}
    rows = []
    for eid, u, v, n, d in edges:
        a, b = label[u], label[v]
        if a > b:
            a, b = b, a
        rows.append((a, b, hash(n), hash(d), n, d))
    rows.sort(key=lambda r: r[:4])
    return (len(verts), tuple((a, b, n, d) for a, b, _, _, n, d in rows))


class _Solver:
    def __init__(self, use_memo: bool = True, trace: bool = False):
        self.memo: dict = {}
        self.use_memo = use_memo
        self.stats = {"nodes": 0, "cache_hits": 0, "branches": 0,
                      "series_merges": 0, "parallel_merges": 0}
        self.trace: list | None = [] if trace else None

    # local reductions --------------------------------------------------
    def reduce(self, verts, edges, record=False):
        """Apply loop, isolated-vertex, pendant, parallel and series rules
        until none applies.  Returns (prefactor, verts, edges)."""
        pref = ONE
        verts = set(verts)
        edges = list(edges)
        log = self.trace if record else None
        while True:
            changed = False
            # loops
            keep = []
            for e in edges:
                if e[1] == e[2]:
                    f = e[3] + e[4]
                    pref = pref * f
                    if log is not None:
                        log.append(ReductionStep("loop-factor", (e[0],), f))
                    changed = True
                else:
                    keep.append(e)
            edges = keep
            inc = {x: [] for x in verts}
            for idx, e in enumerate(edges):
                inc[e[1]].append(idx)
                inc[e[2]].append(idx)
            # isolated vertices and pendant edges
            drop_edges = set()
            for x in sorted(verts):
                live = [i for i in inc[x] if i not in drop_edges]
                if len(live) == 1:
                    # Zh(G) = (q d + n) Zh(G - leaf)
                    i = live[0]
                    eid, n, d = edges[i][0], edges[i][3], edges[i][4]
                    f = Q * d + n
                    pref = pref * f
                    drop_edges.add(i)
                    verts.discard(x)
                    if log is not None:
                        log.append(ReductionStep("bridge-factor", (eid,), f))
                    changed = True
            if drop_edges:
                edges = [e for i, e in enumerate(edges) if i not in drop_edges]
            # isolated vertices are separate components worth q each
            used = {e[1] for e in edges} | {e[2] for e in edges}
            isolated = sorted(verts - used)
            if isolated and edges:
                for x in isolated:
                    verts.discard(x)
                pref = pref.shift_q(len(isolated))
                if log is not None:
                    log.append(ReductionStep("isolated", tuple(isolated),
                                             MultiAffinePoly.q_power(len(isolated))))
                changed = True
            elif isolated and not edges:
                return pref.shift_q(len(verts)), set(), []
            if changed:
                continue
            # parallel merges
            groups: dict = {}
            for e in edges:
                key = (min(e[1], e[2]), max(e[1], e[2]))
                groups.setdefault(key, []).append(e)
            if any(len(grp) > 1 for grp in groups.values()):
                merged = []
                for key, grp in groups.items():
                    eid, u, v, n, d = grp[0]
                    for other in grp[1:]:
                        n2, d2 = other[3], other[4]
                        n, d = n * d2 + n2 * d + n * n2, d * d2
                        self.stats["parallel_merges"] += 1
                        if log is not None:
                            log.append(ReductionStep("parallel-merge", (eid, other[0])))
                    merged.append((eid, u, v, n, d))
                edges = merged
                continue
            # series merge at one degree-2 vertex per pass
            done = False
            for x in sorted(verts):
                if len(inc[x]) == 2:
                    i, j = inc[x]
                    e1, e2 = edges[i], edges[j]
                    a = e1[2] if e1[1] == x else e1[1]
                    b = e2[2] if e2[1] == x else e2[1]
                    n1, d1, n2, d2 = e1[3], e1[4], e2[3], e2[4]
                    n = n1 * n2
                    d = (d1 * d2).shift_q(1) + n1 * d2 + n2 * d1
                    new = (e1[0], a, b, n, d)
                    edges = [e for k, e in enumerate(edges) if k not in (i, j)] + [new]
                    verts.discard(x)
                    self.stats["series_merges"] += 1
                    if log is not None:
                        log.append(ReductionStep("series-merge", (e1[0], e2[0]), d))
                    done = True
                    break
            if done:
                continue
            return pref, verts, edges

    # structure splitting -------------------------------------------------
    @staticmethod
    def _components(verts, edges):
        index = {x: i for i, x in enumerate(sorted(verts))}
        uf = UnionFind(len(index))
        for e in edges:
            uf.union(index[e[1]], index[e[2]])
        if uf.count == 1:
            return None
        groups: dict = {}
        for x, i in index.items():
            groups.setdefault(uf.find(i), ([], []))[0].append(x)
        for e in edges:
            groups[uf.find(index[e[1]])][1].append(e)
        return [grp for _, grp in sorted(groups.items(), key=lambda kv: min(kv[1][0]))]

    @staticmethod
    def _blocks(verts, edges):
        """Blocks of a connected loopless graph as (verts, edges) pairs, or
        None when it is already 2-connected."""
        adj = {x: [] for x in verts}
        for idx, e in enumerate(edges):
            adj[e[1]].append((e[2], idx))
            adj[e[2]].append((e[1], idx))
        root = min(verts)
        disc = {root: 0}
        low = {root: 0}
        counter = 1
        stack = [(root, -1, iter(adj[root]))]
        estack: list = []
        blocks = []
        while stack:
            x, pe, it = stack[-1]
            advanced = False
            for y, idx in it:
                if idx == pe:
                    continue
                if y not in disc:
                    estack.append(idx)
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, idx, iter(adj[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    estack.append(idx)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    blk = []
                    while True:
                        idx = estack.pop()
                        blk.append(idx)
                        if idx == pe:
                            break
                    blocks.append(blk)
        if len(blocks) <= 1:
            return None
        out = []
        for blk in blocks:
            es = [edges[i] for i in sorted(blk)]
            vs = {e[1] for e in es} | {e[2] for e in es}
            out.append((vs, es))
        return out

    # main recursion ------------------------------------------------------
    def solve(self, verts, edges, record=False) -> MultiAffinePoly:
        self.stats["nodes"] += 1
        pref, verts, edges = self.reduce(verts, edges, record)
        if not edges:
            return pref.shift_q(len(verts))
        comps = self._components(verts, edges)
        if comps is not None:
            if record:
                self.trace.append(ReductionStep("component-split", tuple(sorted(e[0] for e in edges))))
            z = pref
            for vs, es in comps:
                z = z * self.solve(vs, es)
            return z
        blocks = self._blocks(verts, edges)
        if blocks is not None:
            if record:
                self.trace.append(ReductionStep("block-split", tuple(len(b[1]) for b in blocks)))
            z = pref
            for vs, es in blocks:
                z = z * self.solve(vs, es)
            return z.shift_q(-(len(blocks) - 1))
        key = None
        if self.use_memo:
            key = _canonical_key(verts, edges)
            hit = self.memo.get(key)
            if hit is not None:
                self.stats["cache_hits"] += 1
                return pref * hit
        z = self._branch(verts, edges, record)
        if key is not None:
            self.memo[key] = z
        return pref * z

    def _branch(self, verts, edges, record=False):
        self.stats["branches"] += 1
        deg: dict = {x: 0 for x in verts}
        for e in edges:
            deg[e[1]] += 1
            deg[e[2]] += 1
        hub = min(verts, key=lambda x: (-deg[x], x))
        eid, u, v, n, d = min((e for e in edges if hub in (e[1], e[2])), key=lambda e: e[0])
        if record:
            self.trace.append(ReductionStep("branch", (eid,)))
        rest = [e for e in edges if e[0] != eid]
        z_del = self.solve(verts, rest)
        keep, drop = (u, v) if u < v else (v, u)
        contracted = [(e[0], keep if e[1] == drop else e[1], keep if e[2] == drop else e[2], e[3], e[4])
                      for e in rest]
        z_con = self.solve(verts - {drop}, contracted)
        return d * z_del + n * z_con


def z_delete_contract(g: Multigraph, weights: dict | None = None, use_memo: bool = True,
                      trace: bool = False) -> TutteResult:
    """Z_G(q, v) by deletion-contraction with reductions and memoisation.

    ``weights`` optionally overrides edge weights (see ``edge_weight_map``);
    with (num, den) pairs the result is the homogenized polynomial
    (prod den) * Z_G(q, num/den)."""
    wmap = edge_weight_map(g, weights)
    nsym = len({i for n, d in wmap.values() for i in n.variables() + d.variables()})
    _check_cap(nsym, "deletion-contraction")
    edges = [(e.id, e.u, e.v, *wmap[e.id]) for e in g.edges]
    solver = _Solver(use_memo=use_memo, trace=trace)
    z = solver.solve(set(range(g.n)), edges, record=trace)
    return TutteResult(z, "delcon", dict(solver.stats), solver.trace or [])


def compute_z(g: Multigraph, weights=None) -> MultiAffinePoly:
    return z_delete_contract(g, weights).z


def z_tilde(g: Multigraph, weights=None) -> MultiAffinePoly:
    """q^{-|V|} Z_G."""
    return compute_z(g, weights).shift_q(-g.n)


def reduce_graph(g: Multigraph, weights=None):
    """Apply the local reductions once to fixpoint.

    Returns (prefactor, core_vertices, core_edges, steps) where core edges are
    (id, u, v, num, den).  The homogenized Z of the core times the prefactor
    reproduces Z_G."""
    wmap = edge_weight_map(g, weights)
    solver = _Solver(trace=True)
    edges = [(e.id, e.u, e.v, *wmap[e.id]) for e in g.edges]
    pref, verts, core = solver.reduce(set(range(g.n)), edges, record=True)
    return pref, verts, core, solver.trace


def homogenized_z_of_core(verts, core_edges) -> MultiAffinePoly:
    """Zh of an internal core by plain subset enumeration (used to replay
    reductions against the solver)."""
    verts = sorted(verts)
    index = {x: i for i, x in enumerate(verts)}
    g = Multigraph(len(verts), tuple(Edge(i, index[e[1]], index[e[2]])
                                     for i, e in enumerate(core_edges)))
    total = MultiAffinePoly.zero()
    for mask, k in enumerate_subsets(g):
        term = MultiAffinePoly.q_power(k)
        for i, e in enumerate(core_edges):
            term = term * (e[3] if (mask >> i) & 1 else e[4])
        total = total + term
    return total


# ---------------------------------------------------------------------------
# coloring and flow oracles


def _expand_submasks(acc: dict, counts: dict, sym_mask: int, numeric: dict):
    """acc[S] += count * prod_{numeric e in M}(1 + w_e) for S within the
    symbolic part of each mask M."""
    for mask, c in counts.items():
        f = c
        for i in bits(mask & ~sym_mask):
            f = f * (1 + numeric[i])
        if f == 0:
            continue
        s = mask & sym_mask
        sub = s
        while True:
            acc[sub] = acc.get(sub, 0) + f
            if sub == 0:
                break
            sub = (sub - 1) & s


def potts_coloring_oracle(g: Multigraph, q: int, weights=None) -> MultiAffinePoly:
    """sum over sigma: V -> [q] of prod_e (1 + v_e delta(sigma_u, sigma_v))."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    if q ** g.n > 10 ** 7:
        raise CapExceeded(f"{q}^{g.n} colorings exceeds 10^7")
    sym, num = _scalar_weights(g, weights)
    sym_mask = 0
    for i in sym:
        sym_mask |= 1 << i
    counts: dict = {}
    for sigma in itertools.product(range(q), repeat=g.n):
        mono = 0
        for e in g.edges:
            if sigma[e.u] == sigma[e.v]:
                mono |= 1 << e.id
        counts[mono] = counts.get(mono, 0) + 1
    acc: dict = {}
    _expand_submasks(acc, counts, sym_mask, num)
    return MultiAffinePoly({(m, 0): c for m, c in acc.items()})


def gamma_flow_oracle(g: Multigraph, group=(2,), u: dict | None = None) -> MultiAffinePoly:
    """sum over Gamma-flows psi of prod_e (1 + u_e delta(psi(e), 0)).

    ``group`` lists cyclic factor orders, e.g. (4,) or (2, 2).  Edges are
    oriented u -> v.  ``u`` maps edge ids to numeric weights; missing edges
    keep a symbolic variable (printed as u_i)."""
    order = 1
    for n_i in group:
        order *= n_i
    uf = UnionFind(g.n)
    tree, cotree = [], []
    for e in g.edges:
        (tree if uf.union(e.u, e.v) else cotree).append(e)
    if order ** len(cotree) > 10 ** 7:
        raise CapExceeded("too many flows to enumerate")
    # order tree edges so that each is processed when one endpoint is a leaf
    adj = {x: [] for x in range(g.n)}
    for e in tree:
        adj[e.u].append(e)
        adj[e.v].append(e)
    seen = set()
    post = []  # (edge, child vertex)
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        stack = [(root, None)]
        visit = []
        while stack:
            x, via = stack.pop()
            visit.append((x, via))
            for e in adj[x]:
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    stack.append((y, e))
        for x, via in reversed(visit):
            if via is not None:
                post.append((via, x))
    zero = tuple(0 for _ in group)

    def add(a, b):
        return tuple((x + y) % n_i for x, y, n_i in zip(a, b, group))

    def neg(a):
        return tuple((-x) % n_i for x, n_i in zip(a, group))

    elements = list(itertools.product(*[range(n_i) for n_i in group]))
    counts: dict = {}
    for values in itertools.product(elements, repeat=len(cotree)):
        excess = [zero] * g.n  # outflow minus inflow
        psi = {}
        for e, val in zip(cotree, values):
            psi[e.id] = val
            excess[e.u] = add(excess[e.u], val)
            excess[e.v] = add(excess[e.v], neg(val))
        for e, child in post:
            val = neg(excess[child]) if e.u == child else excess[child]
            psi[e.id] = val
            excess[e.u] = add(excess[e.u], val)
            excess[e.v] = add(excess[e.v], neg(val))
        mask = 0
        for eid, val in psi.items():
            if val == zero:
                mask |= 1 << eid
        counts[mask] = counts.get(mask, 0) + 1
    u = u or {}
    sym_mask = 0
    for e in g.edges:
        if e.id not in u:
            sym_mask |= 1 << e.id
    acc: dict = {}
    _expand_submasks(acc, counts, sym_mask, {i: as_exact(x) for i, x in u.items()})
    return MultiAffinePoly({(m, 0): c for m, c in acc.items()}, prefix="u")


def flow_poly_multivariate(g: Multigraph, z: MultiAffinePoly | None = None) -> MultiAffinePoly:
    """q^{-|V|} (prod u_e) Z_G(q, q/u): the multivariate flow polynomial,
    Laurent in q, in variables u_e."""
    if z is None:
        z = compute_z(g.with_weights(Symbol()))
    return z.dual_transform(g.edge_mask()).shift_q(-g.n).rename(prefix="u")


def chromatic_poly(g: Multigraph) -> LaurentPoly:
    """P_G(q) = Z_G(q, -1)."""
    return compute_z(g, {e.id: -1 for e in g.edges}).to_laurent()


def flow_poly(g: Multigraph) -> LaurentPoly:
    """F_G(q) = q^{-|V|} (-1)^{|E|} Z_G(q, -q)."""
    minus_q = MultiAffinePoly.q_power(1, -1)
    z = compute_z(g, {e.id: minus_q for e in g.edges}).to_laurent()
    return z.shift(-g.n) * (-1) ** g.num_edges


def _interpolate(xs, ys):
    """Exact Lagrange interpolation; returns low-to-high coefficients."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    return coeffs


def reliability_poly(g: Multigraph, p=None):
    """All-terminal reliability.

    With ``p`` a dict or scalar, returns the exact probability that the
    surviving edges keep every component of G connected, computed as the
    homogenized sum over A of prod_{A} p_e prod_{not A} (1 - p_e) restricted
    to k(A) = k(G); p_e = 1 and p_e = 0 need no special casing.  With
    ``p=None`` returns the univariate polynomial R_G(p) (uniform p) as a
    LaurentPoly in ``p``, recovered by exact interpolation."""
    k = g.components()
    if p is None:
        xs = [Fraction(i, g.num_edges + 2) for i in range(g.num_edges + 1)]
        ys = [reliability_poly(g, x) for x in xs]
        return LaurentPoly.from_coefficients(_interpolate(xs, ys), var="p")
    if not isinstance(p, dict):
        p = {e.id: p for e in g.edges}
    pairs = {e.id: (as_exact(p[e.id]), 1 - as_exact(p[e.id])) for e in g.edges}
    z = compute_z(g, pairs)
    return z.q_coefficient(k).constant_value() if not z.q_coefficient(k).is_zero() else 0


# ---------------------------------------------------------------------------
# q -> 0 family


def _constrained_sum(g: Multigraph, accept, prefix="v") -> MultiAffinePoly:
    _check_cap(g.num_edges, "constrained enumeration")
    acc = {}
    k_all = g.components()
    for mask, k in enumerate_subsets(g):
        c = popcount(mask) - g.n + k
        if accept(k, c, k_all):
            acc[(mask, 0)] = 1
    return MultiAffinePoly(acc, prefix=prefix)


def connected_spanning_poly(g: Multigraph) -> MultiAffinePoly:
    """C_G: sum over A with k(A) = k(G) of prod v_e."""
    return _constrained_sum(g, lambda k, c, k0: k == k0)


def spanning_forest_poly(g: Multigraph) -> MultiAffinePoly:
    """F_G: sum over acyclic A of prod w_e."""
    return _constrained_sum(g, lambda k, c, k0: c == 0, prefix="w")


def spanning_tree_poly(g: Multigraph, prefix="v") -> MultiAffinePoly:
    """T_G: sum over maximal spanning forests of prod v_e."""
    return _constrained_sum(g, lambda k, c, k0: k == k0 and c == 0, prefix=prefix)


def q_zero_limits(g: Multigraph) -> dict:
    return {"C_G": connected_spanning_poly(g), "F_G": spanning_forest_poly(g),
            "T_G": spanning_tree_poly(g)}


def alpha_limit_check(g: Multigraph, alpha) -> bool:
    """Check that q^{-alpha|V| - (1-alpha)k(G)} Z_G(q, q^alpha x) tends to
    T_G(x) as q -> 0, by tracking the rational q-exponent of every monomial."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    z = compute_z(g.with_weights(Symbol()))
    k0 = g.components()
    surviving = {}
    for (mask, e), a in z.items():
        expo = e + alpha * popcount(mask) - alpha * g.n - (1 - alpha) * k0
        if expo < 0:
            return False
        if expo == 0:
            surviving[(mask, 0)] = surviving.get((mask, 0), 0) + a
    return MultiAffinePoly(surviving) == spanning_tree_poly(g)


# ---------------------------------------------------------------------------
# Tutte plane and duality


def z_uniform_bivariate(g: Multigraph) -> Poly:
    """Z_G(q, v) with every edge weight equal to v, as a Poly in q and v.
    Computed numerically at |E|+1 values of v and interpolated exactly."""
    m = g.num_edges
    xs = list(range(m + 1))
    per_q: dict = {}
    for x in xs:
        lp = compute_z(g, {e.id: x for e in g.edges}).to_laurent()
        for e, a in lp.items():
            per_q.setdefault(e, {})[x] = a
    terms = {}
    for e, vals in per_q.items():
        coeffs = _interpolate(xs, [vals.get(x, 0) for x in xs])
        for j, c in enumerate(coeffs):
            if c:
                terms[(("q", e), ("v", j))] = c
    return Poly(terms)


def tutte_xy(g: Multigraph) -> Poly:
    """Classical Tutte polynomial T_G(x, y) from Z_G via q = (x-1)(y-1),
    v = y - 1, divided by (x-1)^{k(E)} (y-1)^{|V|}."""
    z = z_uniform_bivariate(g)
    X, Y = Poly.var("X"), Poly.var("Y")
    shifted = z.substitute({"q": X * Y, "v": Y})
    k = g.components()
    out = {}
    for mono, a in shifted.items():
        d = dict(mono)
        dx, dy = d.get("X", 0) - k, d.get("Y", 0) - g.n
        if dx < 0 or dy < 0:
            raise ArithmeticError("inexact division in the Tutte-plane conversion")
        out[(("X", dx), ("Y", dy))] = a
    return Poly(out).substitute({"X": Poly.var("x") - 1, "Y": Poly.var("y") - 1})


def duality_check(g: Multigraph, rot: RotationSystem) -> dict:
    """Verify Z_{G*}(q,v) = q^{1-|V|} (prod v) Z_G(q, q/v) and its q -> 0
    corollaries for a connected plane graph.  Returns a dict of booleans
    plus both sides of the main identity."""
    gs = g.with_weights(Symbol())
    dual = planar_dual(gs, rot)
    universe = gs.edge_mask()
    z = compute_z(gs)
    z_dual = compute_z(dual)
    rhs = z.dual_transform(universe).shift_q(1 - g.n)
    lim_g, lim_d = q_zero_limits(gs), q_zero_limits(dual)
    flow_mv = flow_poly_multivariate(gs, z).rename(prefix="v")
    checks = {
        "z_dual": z_dual == rhs,
        "z_dual_is_q_flow": z_dual == flow_mv.shift_q(1),
        "C_dual_vs_F": lim_d["C_G"] == lim_g["F_G"].dual_transform(universe, 1).rename(prefix="v"),
        "F_dual_vs_C": lim_d["F_G"] == lim_g["C_G"].dual_transform(universe, 1).rename(prefix="w"),
        "T_dual_vs_T": lim_d["T_G"] == lim_g["T_G"].dual_transform(universe, 1),
    }
    checks["all"] = all(checks.values())
    checks["lhs"] = z_dual
    checks["rhs"] = rhs
    return checks
