"""Two-rooted graphs: connected/disconnected splits, effective couplings and
substitution of whole subgraphs for edges."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LaurentPoly, MultiAffinePoly, Poly, RationalFunction, as_exact
from .graph import Edge, Multigraph, distance, merge_vertices
from .tutte import compute_z

__all__ = ["TwoRootedDecomposition", "decompose", "effective_coupling", "transmissivity",
           "substitute_subgraphs", "compose_graph", "theta_graph_poly", "degree_report"]

_Q_MINUS_ONE = LaurentPoly({1: 1, 0: -1})


@dataclass(frozen=True)
class TwoRootedDecomposition:
    z_conn: MultiAffinePoly   # subsets A in which x and y are connected
    z_disc: MultiAffinePoly   # subsets A in which they are not
    a: MultiAffinePoly        # q^-2 z_disc
    b: MultiAffinePoly        # q^-1 z_conn
    z: MultiAffinePoly
    z_merged: MultiAffinePoly  # Z of G with x and y identified

    def consistent(self) -> bool:
        return (self.z_conn + self.z_disc == self.z
                and self.z_conn + self.z_disc.shift_q(-1) == self.z_merged
                and self.a.shift_q(2) == self.z_disc and self.b.shift_q(1) == self.z_conn)


def decompose(g: Multigraph, x: int, y: int, z: MultiAffinePoly | None = None) -> TwoRootedDecomposition:
    """Split Z_G by whether the roots x, y are joined.

    From Z_G = Zc + Zd and Z_{G/xy} = Zc + Zd/q one gets
    Zd = q (Z_G - Z_{G/xy}) / (q - 1); the division is exact."""
    if x == y:
        raise ValueError("roots must be distinct")
    if z is None:
        z = compute_z(g)
    merged, _ = merge_vertices(g, x, y)
    z_merged = compute_z(merged)
    z_disc = (z - z_merged).shift_q(1).div_laurent(_Q_MINUS_ONE)
    z_conn = z - z_disc
    return TwoRootedDecomposition(z_conn, z_disc, z_disc.shift_q(-2), z_conn.shift_q(-1), z, z_merged)


def effective_coupling(d: TwoRootedDecomposition) -> RationalFunction:
    """v_eff = B/A = q Zc / Zd, reduced."""
    if d.a.is_zero():
        raise ZeroDivisionError("the disconnected part vanishes identically")
    return RationalFunction(d.b.to_poly(), d.a.to_poly()).reduced()


def transmissivity(d: TwoRootedDecomposition) -> RationalFunction:
    """t_eff = v_eff / (q + v_eff) = Zc / Z."""
    if d.z_conn.is_zero():
        return RationalFunction(Poly.const(0), Poly.const(1))
    return RationalFunction(d.z_conn.to_poly(), d.z.to_poly()).reduced()


def compose_graph(h: Multigraph, assignment: dict) -> tuple[Multigraph, dict]:
    """Replace each edge e of h listed in ``assignment`` by a copy of the
    2-rooted graph (G_e, x_e, y_e), gluing x_e to e.u and y_e to e.v.

    Edge ids of the copies are shifted so that no two pieces share one;
    the returned map sends each h-edge to the id offset used for its piece.
    Unassigned edges keep their id (offsets start above h's ids)."""
    n = h.n
    edges = []
    offsets = {}
    next_id = max(h.edge_ids(), default=-1) + 1
    for e in h.edges:
        if e.id not in assignment:
            edges.append(e)
            continue
        piece, x, y = assignment[e.id]
        vmap = {}
        for w in range(piece.n):
            if w == x:
                vmap[w] = e.u
            elif w == y:
                vmap[w] = e.v
            else:
                vmap[w] = n
                n += 1
        offsets[e.id] = next_id
        for pe in piece.edges:
            edges.append(Edge(next_id + pe.id, vmap[pe.u], vmap[pe.v], pe.weight))
        next_id += max(piece.edge_ids(), default=-1) + 1
    return Multigraph(n, tuple(edges)), offsets


def substitute_subgraphs(h: Multigraph, assignment: dict):
    """Z of the composite graph from Z_H and the pieces' (A, B) pairs.

    Returns (z, prefactor, composite) where z = (prod A_e) Z_H(q, B_e/A_e)
    computed by homogenized substitution, prefactor = prod A_e, and
    composite is the glued graph whose direct Z must equal z."""
    composite, offsets = compose_graph(h, assignment)
    bindings = {}
    prefactor = MultiAffinePoly.one()
    for eid, (piece, x, y) in assignment.items():
        shifted = piece.relabel_edges(offsets[eid])
        d = decompose(shifted, x, y)
        bindings[eid] = (d.b, d.a)
        prefactor = prefactor * d.a
    z_h = compute_z(h)
    return z_h.homogenized_substitute(bindings), prefactor, composite


def theta_graph_poly(s: int, p: int, q=None, v=None):
    """Z of the generalized theta graph: p internally disjoint paths of
    length s between two vertices, all edge weights equal.

    Each path is built by repeated series composition and the paths are
    combined in parallel; weights are carried as num/den pairs so the
    series prefactors never leave the polynomial ring.  With q or v given
    the result is evaluated there (a Poly in the remaining variables, or a
    scalar)."""
    if s < 1 or p < 1:
        raise ValueError("s and p must be positive")
    Q, V = Poly.var("q"), Poly.var("v")
    n, d = V, Poly.const(1)
    for _ in range(s - 1):
        n, d = n * V, Q * d + n + V * d
    pn, pd = n, d
    for _ in range(p - 1):
        pn, pd = pn * d + n * pd + pn * n, pd * d
    z = Q * Q * pd + Q * pn
    bind = {}
    if q is not None:
        bind["q"] = as_exact(q)
    if v is not None:
        bind["v"] = as_exact(v)
    if bind:
        z = z.substitute(bind)
        if not z.variables():
            return z.coefficient({}) if not z.is_zero() else 0
    return z


def degree_report(g: Multigraph, x: int, y: int, d: TwoRootedDecomposition | None = None) -> dict:
    """deg_q A (expected |V|-2) and deg_q B (bounded by |V|-1-dist(x,y))."""
    if d is None:
        d = decompose(g, x, y)
    dist = distance(g, x, y)
    deg_a = d.a.degree_q() if not d.a.is_zero() else None
    deg_b = d.b.degree_q() if not d.b.is_zero() else None
    bound_b = g.n - 1 - dist
    return {
        "deg_a": deg_a, "expected_a": g.n - 2,
        "deg_b": deg_b, "bound_b": bound_b, "distance": dist,
        "ok": deg_a == g.n - 2 and (deg_b is None or deg_b <= bound_b),
    }
