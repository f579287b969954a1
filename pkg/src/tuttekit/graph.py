"""Weighted multigraphs with stable edge ids, plus the structural operations
(deletion, contraction, connectivity, reductions, planar duals, flows)."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction

from .algebra import CapExceeded, GaussianRational, as_exact

__all__ = [
    "Symbol", "SYMBOL", "Edge", "Multigraph", "RotationSystem", "UnionFind",
    "delete_edge", "contract_edge", "merge_vertices", "components_and_cyclomatic",
    "classify_edge", "find_parallel_pair", "find_series_pair", "planar_dual",
    "max_flow", "maxmaxflow", "cocycle_lambda_tilde", "parse_graph", "format_graph",
    "second_largest_degree", "biconnected_blocks", "distance",
    "rotation_from_coordinates", "same_up_to_vertex_relabel", "induced_subgraph",
]


@dataclass(frozen=True)
class Symbol:
    """Marker for a symbolic edge weight.  The default name ``v`` means "the
    edge's own variable"; other names tie edges to a shared symbol."""

    name: str = "v"

    def __str__(self):
        return self.name


SYMBOL = Symbol()


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: object = SYMBOL

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def symbolic(self) -> bool:
        return isinstance(self.weight, Symbol)

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.count -= 1
        return True


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    Loops and parallel edges are allowed.  Edges keep their ids through
    deletion and contraction of other edges.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {e.id} references a missing vertex")
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id}")
            seen.add(e.id)

    @classmethod
    def from_pairs(cls, n: int, pairs, weights=None) -> "Multigraph":
        """Edges numbered 0, 1, ... in the order given."""
        edges = []
        for i, (a, b) in enumerate(pairs):
            w = SYMBOL if weights is None else weights[i] if isinstance(weights, (list, tuple)) else weights
            edges.append(Edge(i, a, b, w))
        return cls(n, tuple(edges))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(f"unknown edge id {eid}")

    def edge_ids(self) -> list[int]:
        return [e.id for e in self.edges]

    def edge_mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e.id
        return m

    def degree(self, x: int) -> int:
        return sum((e.u == x) + (e.v == x) for e in self.edges)

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for e in self.edges:
            d[e.u] += 1
            d[e.v] += 1
        return d

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    def is_symbolic(self) -> bool:
        return any(e.symbolic for e in self.edges)

    def symbol_names(self) -> set:
        return {e.weight.name for e in self.edges if e.symbolic}

    def with_weights(self, weights) -> "Multigraph":
        """Replace weights: a scalar/Symbol for all edges or a dict by id."""
        if isinstance(weights, dict):
            edges = tuple(replace(e, weight=weights.get(e.id, e.weight)) for e in self.edges)
        else:
            edges = tuple(replace(e, weight=weights) for e in self.edges)
        return Multigraph(self.n, edges)

    def components(self, mask: int | None = None) -> int:
        uf = UnionFind(self.n)
        for e in self.edges:
            if mask is None or (mask >> e.id) & 1:
                uf.union(e.u, e.v)
        return uf.count

    def is_connected(self) -> bool:
        return self.n <= 1 or self.components() == 1

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """adj[x] = list of (neighbour, edge id); loops appear twice."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        return adj

    def relabel_edges(self, offset: int) -> "Multigraph":
        return Multigraph(self.n, tuple(replace(e, id=e.id + offset) for e in self.edges))

    def __str__(self):
        return format_graph(self)


# ---------------------------------------------------------------------------
# elementary operations


def delete_edge(g: Multigraph, eid: int) -> Multigraph:
    g.edge(eid)
    return Multigraph(g.n, tuple(e for e in g.edges if e.id != eid))


def merge_vertices(g: Multigraph, x: int, y: int) -> tuple[Multigraph, dict]:
    """Identify x and y.  Vertices are renumbered densely; returns the new
    graph and the old-to-new vertex map."""
    if x == y:
        return g, {i: i for i in range(g.n)}
    keep, drop = min(x, y), max(x, y)
    mapping = {}
    for i in range(g.n):
        if i == drop:
            mapping[i] = keep
        else:
            mapping[i] = i - (i > drop)
    mapping[drop] = mapping[keep]
    edges = tuple(replace(e, u=mapping[e.u], v=mapping[e.v]) for e in g.edges)
    return Multigraph(g.n - 1, edges), mapping


def contract_edge(g: Multigraph, eid: int) -> Multigraph:
    """Contract edge ``eid``.  Contracting a loop deletes it; all other edges
    are retained, so parallels of ``eid`` become loops."""
    e = g.edge(eid)
    h = delete_edge(g, eid)
    if e.is_loop:
        return h
    return merge_vertices(h, e.u, e.v)[0]


def components_and_cyclomatic(g: Multigraph, A=None) -> tuple[int, int]:
    """(k(A), c(A)) for the spanning subgraph (V, A).  ``A`` is an iterable
    of edge ids or a bitmask; ``None`` means all edges."""
    if A is None:
        mask = g.edge_mask()
    elif isinstance(A, int):
        mask = A
    else:
        mask = 0
        for i in A:
            mask |= 1 << i
    k = g.components(mask)
    size = sum(1 for e in g.edges if (mask >> e.id) & 1)
    return k, size - g.n + k


def classify_edge(g: Multigraph, eid: int) -> str:
    e = g.edge(eid)
    if e.is_loop:
        return "loop"
    if delete_edge(g, eid).components() > g.components():
        return "bridge"
    return "normal"


def find_parallel_pair(g: Multigraph):
    """Two non-loop edges with the same endpoints, or None."""
    seen = {}
    for e in g.edges:
        if e.is_loop:
            continue
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in seen:
            return seen[key], e.id
        seen[key] = e.id
    return None


def find_series_pair(g: Multigraph, wide: bool = False):
    """Narrow sense: the two edges at a vertex of degree 2 (neither a loop).
    Wide sense: any two-edge cut (minimal edge set of size two whose removal
    disconnects a component)."""
    adj = g.adjacency()
    for y in range(g.n):
        inc = adj[y]
        if len(inc) == 2 and inc[0][1] != inc[1][1]:
            e1, e2 = g.edge(inc[0][1]), g.edge(inc[1][1])
            if not e1.is_loop and not e2.is_loop:
                return e1.id, e2.id
    if not wide:
        return None
    k0 = g.components()
    candidates = [e for e in g.edges if not e.is_loop
                  and delete_edge(g, e.id).components() == k0]
    for e1, e2 in itertools.combinations(candidates, 2):
        mask = g.edge_mask() & ~(1 << e1.id) & ~(1 << e2.id)
        if g.components(mask) > k0:
            return e1.id, e2.id
    return None


def induced_subgraph(g: Multigraph, verts) -> tuple[Multigraph, dict]:
    """Subgraph induced on ``verts`` (edge ids kept); returns the vertex map."""
    verts = sorted(verts)
    index = {x: i for i, x in enumerate(verts)}
    edges = tuple(replace(e, u=index[e.u], v=index[e.v]) for e in g.edges
                  if e.u in index and e.v in index)
    return Multigraph(len(verts), edges), index


def biconnected_blocks(g: Multigraph) -> list[list[int]]:
    """Edge-id lists of the blocks (loops form their own blocks).  Iterative
    Hopcroft-Tarjan over the multigraph."""
    blocks = []
    loops = [[e.id] for e in g.edges if e.is_loop]
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in g.edges:
        if not e.is_loop:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
    disc = [-1] * g.n
    low = [0] * g.n
    counter = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        estack: list[int] = []
        while stack:
            x, parent_edge, it = stack[-1]
            advanced = False
            for y, eid in it:
                if eid == parent_edge:
                    continue
                if disc[y] == -1:
                    estack.append(eid)
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, eid, iter(adj[y])))
                    advanced = True
                    break
                if disc[y] < disc[x]:
                    estack.append(eid)
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    block = []
                    while True:
                        eid = estack.pop()
                        block.append(eid)
                        if eid == parent_edge:
                            break
                    blocks.append(sorted(block))
    return blocks + loops


def distance(g: Multigraph, x: int, y: int, usable=None) -> float:
    """BFS distance using edges accepted by ``usable`` (all by default)."""
    adj = [[] for _ in range(g.n)]
    for e in g.edges:
        if usable is None or usable(e):
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
    dist = {x: 0}
    dq = deque([x])
    while dq:
        a = dq.popleft()
        if a == y:
            return dist[a]
        for b in adj[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                dq.append(b)
    return math.inf


# ---------------------------------------------------------------------------
# rotation systems and planar duals


@dataclass(frozen=True)
class RotationSystem:
    """For each vertex, the cyclic order of incident edge-ends.  An edge-end
    is ``(edge_id, side)`` with side 0 at ``edge.u`` and side 1 at ``edge.v``."""

    order: tuple  # order[x] = tuple of (edge_id, side)

    def validate(self, g: Multigraph):
        ends = [end for cyc in self.order for end in cyc]
        expected = {(e.id, s) for e in g.edges for s in (0, 1)}
        if len(ends) != len(set(ends)) or set(ends) != expected:
            raise ValueError("rotation must list every edge-end exactly once")
        if len(self.order) != g.n:
            raise ValueError("rotation needs one cyclic order per vertex")
        for x, cyc in enumerate(self.order):
            for eid, side in cyc:
                e = g.edge(eid)
                if (e.u if side == 0 else e.v) != x:
                    raise ValueError(f"edge-end {(eid, side)} is not at vertex {x}")

    def faces(self, g: Multigraph) -> list[list[tuple[int, int]]]:
        """Face boundaries as cycles of darts.  Dart (e, s) leaves the
        endpoint on side s."""
        self.validate(g)
        succ = {}
        for cyc in self.order:
            for i, end in enumerate(cyc):
                succ[end] = cyc[(i + 1) % len(cyc)]
        seen = set()
        faces = []
        for start in sorted(succ):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                eid, s = d
                d = succ[(eid, 1 - s)]
            faces.append(face)
        return faces


def rotation_from_coordinates(g: Multigraph, pos) -> RotationSystem:
    """Counter-clockwise rotation of a straight-line drawing (no loops)."""
    order = []
    for x in range(g.n):
        ends = []
        for e in g.edges:
            if e.is_loop:
                raise ValueError("straight-line drawings cannot contain loops")
            for side, (a, b) in enumerate(((e.u, e.v), (e.v, e.u))):
                if a == x:
                    dx, dy = pos[b][0] - pos[x][0], pos[b][1] - pos[x][1]
                    ends.append((math.atan2(dy, dx), e.id, side))
        ends.sort()
        order.append(tuple((eid, side) for _, eid, side in ends))
    return RotationSystem(tuple(order))


def planar_dual(g: Multigraph, rot: RotationSystem, with_rotation: bool = False):
    """Dual graph of a connected plane-embedded multigraph.  Dual edge ids
    equal primal ids; side 0 of a dual edge lies in the face containing the
    primal dart (e, 0)."""
    if not g.is_connected():
        raise ValueError("planar dual needs a connected graph")
    faces = rot.faces(g)
    if g.n - g.num_edges + len(faces) != 2:
        raise ValueError("non-planar embedding: Euler relation fails "
                         f"({g.n} - {g.num_edges} + {len(faces)} != 2)")
    face_of = {}
    for f, cyc in enumerate(faces):
        for d in cyc:
            face_of[d] = f
    edges = tuple(Edge(e.id, face_of[(e.id, 0)], face_of[(e.id, 1)], e.weight) for e in g.edges)
    dual = Multigraph(len(faces), edges)
    if not with_rotation:
        return dual
    return dual, RotationSystem(tuple(tuple(cyc) for cyc in faces))


def same_up_to_vertex_relabel(g: Multigraph, h: Multigraph) -> bool:
    """True if some vertex bijection maps g onto h preserving edge ids."""
    if g.n != h.n or sorted(g.edge_ids()) != sorted(h.edge_ids()):
        return False
    hmap = {e.id: e for e in h.edges}
    edges = list(g.edges)

    def solve(i: int, fwd: dict, used: set) -> bool:
        if i == len(edges):
            return True
        e = edges[i]
        f = hmap[e.id]
        if e.is_loop != f.is_loop:
            return False
        for a, b in {(f.u, f.v), (f.v, f.u)}:
            nf, nu, ok = dict(fwd), set(used), True
            for src, dst in ((e.u, a), (e.v, b)):
                if src in nf:
                    ok = nf[src] == dst
                elif dst in nu:
                    ok = False
                else:
                    nf[src] = dst
                    nu.add(dst)
                if not ok:
                    break
            if ok and solve(i + 1, nf, nu):
                return True
        return False

    return solve(0, {}, set())


# ---------------------------------------------------------------------------
# flows and cocycles


def max_flow(g: Multigraph, x: int, y: int) -> int:
    """Maximum number of edge-disjoint x-y paths (unit capacities)."""
    if x == y:
        raise ValueError("max_flow needs two distinct vertices")
    cap = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        if not e.is_loop:
            cap[e.u][e.v] += 1
            cap[e.v][e.u] += 1
    flow = 0
    while True:
        prev = [-1] * g.n
        prev[x] = x
        dq = deque([x])
        while dq and prev[y] == -1:
            a = dq.popleft()
            for b in range(g.n):
                if prev[b] == -1 and cap[a][b] > 0:
                    prev[b] = a
                    dq.append(b)
        if prev[y] == -1:
            return flow
        b = y
        while b != x:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1


def maxmaxflow(g: Multigraph) -> int:
    if g.n < 2:
        raise ValueError("maxmaxflow needs at least two vertices")
    return max(max_flow(g, x, y) for x, y in itertools.combinations(range(g.n), 2))


def second_largest_degree(g: Multigraph) -> int:
    d = sorted(g.degrees(), reverse=True)
    return d[1] if len(d) > 1 else 0


def _cocycle_vectors(g: Multigraph) -> tuple[list[int], int]:
    """All nonzero cocycles as bitmasks over edge positions, and the
    dimension of the cocycle space."""
    vecs = set()
    for subset in range(1, 1 << g.n):
        v = 0
        for pos, e in enumerate(g.edges):
            if ((subset >> e.u) & 1) != ((subset >> e.v) & 1):
                v |= 1 << pos
        if v:
            vecs.add(v)
    return sorted(vecs), g.n - g.components()


def _gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def cocycle_lambda_tilde(g: Multigraph, cap: int = 6) -> int:
    """Minimum over bases of the cocycle space of the largest cocycle in the
    basis, by exhaustive enumeration of bases."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the cocycle brute-force cap {cap}")
    vecs, dim = _cocycle_vectors(g)
    if dim == 0:
        return 0
    best = None
    sizes = {v: bin(v).count("1") for v in vecs}
    for combo in itertools.combinations(vecs, dim):
        worst = max(sizes[v] for v in combo)
        if best is not None and worst >= best:
            continue
        if _gf2_rank(combo) == dim:
            best = worst
    return best


# ---------------------------------------------------------------------------
# text format


def _parse_weight(tok: str):
    try:
        return as_exact(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        pass
    if not tok.replace("_", "").isalnum() or tok[0].isdigit():
        raise ValueError(f"bad weight token {tok!r}")
    return Symbol(tok)


def _weight_str(w) -> str:
    if isinstance(w, Symbol):
        return w.name
    if isinstance(w, GaussianRational):
        raise ValueError("complex weights have no text form")
    f = Fraction(w)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_graph(text: str) -> tuple[Multigraph, RotationSystem | None]:
    """Parse the line-oriented graph format.

    ``vertices <n>``, ``edge <u> <v> [<weight>]`` (edges numbered in order),
    optional ``rot <v> <end> <end> ...`` where an end is ``<edge>`` or
    ``<edge>:<side>``; ``#`` starts a comment.
    """
    n = None
    edges = []
    rot_lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "vertices":
                n = int(parts[1])
            elif kw == "edge":
                if len(parts) not in (3, 4):
                    raise ValueError("edge needs two endpoints and an optional weight")
                w = _parse_weight(parts[3]) if len(parts) == 4 else SYMBOL
                edges.append(Edge(len(edges), int(parts[1]), int(parts[2]), w))
            elif kw == "rot":
                rot_lines[int(parts[1])] = parts[2:]
            else:
                raise ValueError(f"unknown keyword {kw!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'vertices' line")
    g = Multigraph(n, tuple(edges))
    if not rot_lines:
        return g, None
    order = []
    for x in range(n):
        cyc = []
        for tok in rot_lines.get(x, []):
            if ":" in tok:
                a, b = tok.split(":")
                cyc.append((int(a), int(b)))
            else:
                e = g.edge(int(tok))
                if e.is_loop:
                    raise ValueError(f"loop {e.id} needs explicit ends in rotation")
                cyc.append((e.id, 0 if e.u == x else 1))
        order.append(tuple(cyc))
    rot = RotationSystem(tuple(order))
    rot.validate(g)
    return g, rot


def format_graph(g: Multigraph, rot: RotationSystem | None = None) -> str:
    """Inverse of ``parse_graph``.  Edge ids must be 0..m-1 in order for a
    faithful round trip."""
    lines = [f"vertices {g.n}"]
    for e in g.edges:
        w = "" if e.weight == SYMBOL else f" {_weight_str(e.weight)}"
        lines.append(f"edge {e.u} {e.v}{w}")
    if rot is not None:
        for x, cyc in enumerate(rot.order):
            lines.append("rot " + " ".join([str(x)] + [f"{eid}:{s}" for eid, s in cyc]))
    return "\n".join(lines) + "\n"
