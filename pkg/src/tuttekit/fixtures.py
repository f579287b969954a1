"""Named graph and matroid fixtures, plus the small-graph corpora used by the
test suite and the CLI ``fixtures`` command."""

from __future__ import annotations

import math
import random
from itertools import combinations, combinations_with_replacement, permutations
from pathlib import Path

from .graph import Multigraph, Symbol, format_graph, rotation_from_coordinates

__all__ = ["path", "star", "cycle", "complete", "petersen", "theta", "wheel", "parallel_edges",
           "k4_case", "series_parallel_fixtures", "FIXTURES", "manifest", "emit",
           "exhaustive_multigraphs", "random_multigraph", "random_corpus",
           "bounded_degree_corpus", "random_tree", "cycle_embedded", "complete_embedded_k4",
           "write_all", "symbolic", "EMBEDDED"]


def path(n: int) -> Multigraph:
    """Path on n vertices."""
    return Multigraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Multigraph:
    """K_{1,n}: centre 0 and leaves 1..n."""
    return Multigraph.from_pairs(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle(n: int) -> Multigraph:
    if n < 1:
        raise ValueError("cycle needs at least one vertex")
    return Multigraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def cycle_embedded(n: int):
    pos = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
    g = cycle(n)
    return g, rotation_from_coordinates(g, pos)


def complete(n: int) -> Multigraph:
    return Multigraph.from_pairs(n, list(combinations(range(n), 2)))


def complete_embedded_k4():
    """K4 drawn with vertex 3 inside the triangle 0, 1, 2."""
    g = complete(4)
    pos = [(0.0, 1.0), (-1.0, -0.7), (1.0, -0.7), (0.0, 0.0)]
    return g, rotation_from_coordinates(g, pos)


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_pairs(10, outer + spokes + inner)


def theta(s: int, p: int) -> Multigraph:
    """p internally disjoint paths of length s between poles 0 and 1."""
    if s < 1 or p < 1:
        raise ValueError("theta needs s >= 1 and p >= 1")
    pairs, n = [], 2
    for _ in range(p):
        prev = 0
        for _ in range(s - 1):
            pairs.append((prev, n))
            prev = n
            n += 1
        pairs.append((prev, 1))
    return Multigraph.from_pairs(n, pairs)


def wheel(n: int, embedded: bool = False):
    """W_n: hub 0 joined to every vertex of the rim cycle 1..n.  With
    ``embedded`` also returns the rotation of the standard drawing."""
    if n < 3:
        raise ValueError("a wheel needs a rim of at least 3 vertices")
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    spokes = [(0, i) for i in range(1, n + 1)]
    g = Multigraph.from_pairs(n + 1, rim + spokes)
    if not embedded:
        return g
    pos = [(0.0, 0.0)] + [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
                          for k in range(n)]
    return g, rotation_from_coordinates(g, pos)


def parallel_edges(k: int) -> Multigraph:
    return Multigraph.from_pairs(2, [(0, 1)] * k)


def k4_case(case: str) -> Multigraph:
    from .analysis import k4_case_graph
    return k4_case_graph(case)


def random_tree(n: int, rng: random.Random) -> Multigraph:
    """Uniform labelled tree on n vertices from a random Pruefer sequence."""
    if n <= 1:
        return Multigraph(max(n, 0), ())
    if n == 2:
        return Multigraph.from_pairs(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    pairs = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        pairs.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    pairs.append((u, v))
    return Multigraph.from_pairs(n, pairs)


def series_parallel_fixtures() -> dict:
    """Five series-parallel graphs (no K4 minor)."""
    return {"C5": cycle(5), "theta23": theta(2, 3), "fan4": _fan(4),
            "triple-edge-path": Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)]),
            "tree6": path(6)}


def _fan(n: int) -> Multigraph:
    """Apex 0 joined to every vertex of the path 1..n."""
    pairs = [(i, i + 1) for i in range(1, n)] + [(0, i) for i in range(1, n + 1)]
    return Multigraph.from_pairs(n + 1, pairs)


# ---------------------------------------------------------------------------
# registry used by ``tuttekit fixtures``

FIXTURES = {
    "path": ("graph", path, ["n"], "path on n vertices"),
    "star": ("graph", star, ["n"], "star K_{1,n}"),
    "cycle": ("graph", cycle, ["n"], "cycle C_n"),
    "complete": ("graph", complete, ["n"], "complete graph K_n"),
    "petersen": ("graph", petersen, [], "Petersen graph"),
    "theta": ("graph", theta, ["s", "p"], "p disjoint paths of length s between two poles"),
    "wheel": ("graph", wheel, ["n"], "wheel: hub plus rim C_n, with an embedding"),
    "parallel": ("graph", parallel_edges, ["n"], "n parallel edges"),
    "k4-case": ("graph", k4_case, ["case"], "K4 with edge classes a/b, cases a..e"),
    "uniform": ("matroid", None, ["r", "n"], "uniform matroid U_{r,n}"),
    "graphic-k4": ("matroid", None, [], "graphic matroid of K4"),
}

EMBEDDED = {"wheel": lambda n: wheel(n, embedded=True), "cycle": cycle_embedded,
            "complete": lambda n: complete_embedded_k4() if n == 4 else (complete(n), None)}


def manifest() -> list[dict]:
    return [{"name": name, "kind": kind, "params": params, "description": desc}
            for name, (kind, _, params, desc) in FIXTURES.items()]


def emit(name: str, **params) -> str:
    """Text of one fixture, in the graph or matroid file format."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    kind, gen, needed, _ = FIXTURES[name]
    missing = [p for p in needed if params.get(p) is None]
    if missing:
        raise ValueError(f"fixture {name} needs --{' --'.join(missing)}")
    args = [params[p] for p in needed]
    if name == "uniform":
        return f"uniform {args[0]} {args[1]}\n"
    if name == "graphic-k4":
        return "graphic\n" + format_graph(complete(4))
    rot = None
    if name in EMBEDDED:
        g, rot = EMBEDDED[name](*args)
    else:
        g = gen(*args)
    return format_graph(g, rot)


def write_all(directory) -> list[Path]:
    """Write the standard fixture set used by the acceptance suite."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    jobs = {"p2.txt": ("path", {"n": 2}), "c3.txt": ("cycle", {"n": 3}),
            "c4.txt": ("cycle", {"n": 4}), "k4.txt": ("complete", {"n": 4}),
            "k5.txt": ("complete", {"n": 5}), "petersen.txt": ("petersen", {}),
            "theta23.txt": ("theta", {"s": 2, "p": 3}), "w4.txt": ("wheel", {"n": 4}),
            "w5.txt": ("wheel", {"n": 5}), "u24.txt": ("uniform", {"r": 2, "n": 4}),
            "graphic-k4.txt": ("graphic-k4", {})}
    for c in "abcde":
        jobs[f"k4-case-{c}.txt"] = ("k4-case", {"case": c})
    out = []
    for fname, (name, params) in jobs.items():
        p = d / fname
        p.write_text(emit(name, **params))
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# corpora


def _canonical(n: int, pairs) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in pairs))
        if best is None or key < best:
            best = key
    return best


def exhaustive_multigraphs(max_vertices: int = 4, max_edges: int = 6, loops: bool = True):
    """Every multigraph (loops and parallel edges allowed) with at most the
    given numbers of vertices and edges, one per isomorphism class."""
    out = []
    for n in range(1, max_vertices + 1):
        slots = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v]
        seen = set()
        for m in range(max_edges + 1):
            for pairs in combinations_with_replacement(slots, m):
                key = _canonical(n, pairs)
                if key in seen:
                    continue
                seen.add(key)
                out.append(Multigraph.from_pairs(n, list(key)))
    return out


def random_multigraph(rng: random.Random, n: int, m: int, loops: bool = True,
                      multi: bool = True) -> Multigraph:
    if not multi and m > n * (n - 1) // 2 + (n if loops else 0):
        raise ValueError("too many edges for a simple graph")
    pairs: list = []
    while len(pairs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        if not multi and (min(u, v), max(u, v)) in pairs:
            continue
        pairs.append((min(u, v), max(u, v)))
    return Multigraph.from_pairs(n, pairs)


def random_corpus(count: int = 200, seed: int = 0, max_vertices: int = 6,
                  max_edges: int = 8) -> list[Multigraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_vertices)
        m = rng.randint(0, max_edges)
        out.append(random_multigraph(rng, n, m))
    return out


def bounded_degree_corpus(count: int = 100, seed: int = 0, max_vertices: int = 10,
                          max_degree: int = 4) -> list[Multigraph]:
    """Random simple loopless graphs with maximum degree at most max_degree
    and at least one edge."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_vertices)
        target = rng.randint(1, n * max_degree // 2)
        deg = [0] * n
        pairs = set()
        candidates = list(combinations(range(n), 2))
        rng.shuffle(candidates)
        for u, v in candidates:
            if len(pairs) >= target:
                break
            if deg[u] < max_degree and deg[v] < max_degree:
                pairs.add((u, v))
                deg[u] += 1
                deg[v] += 1
        if pairs:
            out.append(Multigraph.from_pairs(n, sorted(pairs)))
    return out


def symbolic(g: Multigraph) -> Multigraph:
    """Copy of g in which every edge carries its own variable."""
    return g.with_weights(Symbol())

