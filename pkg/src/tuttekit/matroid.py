"""Matroids as rank oracles and their multivariate Tutte polynomials.

Elements are small non-negative integers; a subset is a bitmask over them.
Every oracle memoises its rank per subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import (CapExceeded, LaurentPoly, MultiAffinePoly, as_exact, bits, popcount)
from .graph import Multigraph, parse_graph
from .tutte import symbolic_cap

__all__ = ["RankOracle", "SetSystem", "uniform", "graphic", "linear", "from_bases",
           "from_rank_table", "z_tilde_matroid", "matroid_chromatic", "matroid_duality_identity",
           "matroid_delcon_identity", "SeriesParallelReduction", "matroid_series_parallel",
           "q_zero_matroid_limits", "limits_from_z", "is_matroid_basis_family",
           "group_spin_sum", "check_rank_axioms", "parse_matroid", "load_matroid"]


class RankOracle:
    """Ground set (as a bitmask) plus a memoised rank function."""

    def __init__(self, ground_mask: int, rank_fn, kind: str, params=None):
        self.ground = ground_mask
        self._rank_fn = rank_fn
        self.kind = kind
        self.params = params or {}
        self._memo: dict[int, int] = {}

    # -- basics
    @property
    def elements(self) -> list[int]:
        return list(bits(self.ground))

    @property
    def size(self) -> int:
        return popcount(self.ground)

    def _mask(self, A) -> int:
        if isinstance(A, int):
            return A
        m = 0
        for e in A:
            m |= 1 << e
        return m

    def rank(self, A=None) -> int:
        mask = self.ground if A is None else self._mask(A)
        if mask & ~self.ground:
            raise KeyError("subset contains elements outside the ground set")
        r = self._memo.get(mask)
        if r is None:
            r = self._rank_fn(mask)
            self._memo[mask] = r
        return r

    def is_loop(self, e: int) -> bool:
        return self.rank(1 << e) == 0

    def is_coloop(self, e: int) -> bool:
        return self.rank(self.ground & ~(1 << e)) < self.rank()

    def _check_element(self, e: int):
        if not (self.ground >> e) & 1:
            raise KeyError(f"unknown element {e}")

    # -- views
    def dual(self) -> "RankOracle":
        base, full = self, self.ground

        def r(mask):
            return popcount(mask) + base.rank(full & ~mask) - base.rank(full)
        return RankOracle(full, r, "dual", {"of": base})

    def delete(self, e: int) -> "RankOracle":
        self._check_element(e)
        base = self
        return RankOracle(self.ground & ~(1 << e), base.rank, "deletion", {"of": base, "element": e})

    def contract(self, e: int) -> "RankOracle":
        self._check_element(e)
        base, bit = self, 1 << e
        re = base.rank(bit)

        def r(mask):
            return base.rank(mask | bit) - re
        return RankOracle(self.ground & ~bit, r, "contraction", {"of": base, "element": e})

    def rank_table(self) -> dict[int, int]:
        return {A: self.rank(A) for A in _submasks(self.ground)}

    def bases(self) -> list[int]:
        r = self.rank()
        return [A for A in _submasks(self.ground) if popcount(A) == r and self.rank(A) == r]

    def __repr__(self):
        return f"RankOracle({self.kind}, |E|={self.size}, r={self.rank()})"


@dataclass(frozen=True)
class SetSystem:
    ground: frozenset
    family: tuple


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# constructors


def uniform(r: int, n: int) -> RankOracle:
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    return RankOracle((1 << n) - 1, lambda m: min(popcount(m), r), "uniform", {"r": r, "n": n})


def graphic(g: Multigraph) -> RankOracle:
    """Cycle matroid: r(A) = |V| - k(A)."""
    return RankOracle(g.edge_mask(), lambda m: g.n - g.components(m), "graphic", {"graph": g})


def _gf2_rank(columns: list[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> vector
    for v in columns:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def _rational_rank(columns: list[list[Fraction]]) -> int:
    if not columns:
        return 0
    rows = [list(col) for col in zip(*columns)]  # rows x chosen columns
    rank = 0
    ncols = len(columns)
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def linear(matrix, field: str = "Q") -> RankOracle:
    """Column matroid of a matrix over the rationals ("Q") or GF(2)."""
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    field = field.upper()
    if field in ("GF2", "GF(2)"):
        cols = []
        for c in range(ncols):
            v = 0
            for i, row in enumerate(rows):
                if int(row[c]) % 2:
                    v |= 1 << i
            cols.append(v)
        fn = lambda m: _gf2_rank([cols[i] for i in bits(m)])  # noqa: E731
        field = "GF2"
    elif field in ("Q", "RATIONALS", "QQ"):
        cols = [[as_exact(rows[i][c]) for i in range(len(rows))] for c in range(ncols)]
        fn = lambda m: _rational_rank([cols[i] for i in bits(m)])  # noqa: E731
        field = "Q"
    else:
        raise ValueError(f"unsupported field {field!r}")
    return RankOracle((1 << ncols) - 1, fn, "linear", {"matrix": rows, "field": field})


def from_bases(bases, n: int | None = None) -> RankOracle:
    """Matroid given by its bases; r(A) = max |A & B|.  The family is
    checked with the exchange axiom."""
    masks = []
    for b in bases:
        masks.append(b if isinstance(b, int) else sum(1 << e for e in b))
    if not masks:
        raise ValueError("a matroid has at least one basis")
    if n is None:
        n = max((m.bit_length() for m in masks), default=0)
    if not is_matroid_basis_family(masks):
        raise ValueError("the family violates the basis exchange axiom")
    return RankOracle((1 << n) - 1, lambda m: max(popcount(m & b) for b in masks), "bases",
                      {"bases": masks})


def from_rank_table(table: dict | list, n: int) -> RankOracle:
    """Explicit table of all 2^n ranks (n <= 20), precomputed."""
    if n > 20:
        raise CapExceeded("explicit rank tables are limited to 20 elements")
    if isinstance(table, list):
        table = dict(enumerate(table))
    if len(table) != 1 << n:
        raise ValueError("table must list every subset")
    t = dict(table)
    oracle = RankOracle((1 << n) - 1, lambda m: t[m], "table", {})
    oracle._memo.update(t)
    return oracle


# ---------------------------------------------------------------------------
# Z tilde and identities


def _cap(m: RankOracle):
    if m.size > symbolic_cap():
        raise CapExceeded(f"{m.size} elements exceeds the symbolic cap {symbolic_cap()}")


def z_tilde_matroid(m: RankOracle) -> MultiAffinePoly:
    """sum over A of q^{-r(A)} prod_{e in A} v_e."""
    _cap(m)
    return MultiAffinePoly({(A, -m.rank(A)): 1 for A in _submasks(m.ground)})


def matroid_chromatic(m: RankOracle) -> LaurentPoly:
    """Z tilde at v = -1."""
    _cap(m)
    acc: dict = {}
    for A in _submasks(m.ground):
        e = -m.rank(A)
        acc[e] = acc.get(e, 0) + (-1) ** popcount(A)
    return LaurentPoly(acc)


def matroid_duality_identity(m: RankOracle, return_sides: bool = False):
    """Z~_{M*}(q, v) == q^{-r*(E)} (prod v) Z~_M(q, q/v)."""
    if m.size > 12:
        raise CapExceeded("duality identity is checked for at most 12 elements")
    d = m.dual()
    lhs = z_tilde_matroid(d)
    rhs = z_tilde_matroid(m).dual_transform(m.ground).shift_q(-d.rank())
    return (lhs == rhs, lhs, rhs) if return_sides else lhs == rhs


def matroid_delcon_identity(m: RankOracle, e: int) -> bool:
    """Z~_M = (1+v_e) Z~_{M\\e} for a loop, else Z~_{M\\e} + (v_e/q) Z~_{M/e}."""
    z = z_tilde_matroid(m)
    ve = MultiAffinePoly.variable(e)
    z_del = z_tilde_matroid(m.delete(e))
    if m.is_loop(e):
        return z == (ve + 1) * z_del
    return z == z_del + (ve * z_tilde_matroid(m.contract(e))).shift_q(-1)


@dataclass
class SeriesParallelReduction:
    kind: str                 # "parallel" or "series"
    reduced: RankOracle       # M \ e2 (parallel) or M / e2 (series)
    kept: int
    removed: int
    weight: tuple             # (num, den) for the surviving element
    prefactor: tuple          # (num, den)

    def reduced_z(self) -> MultiAffinePoly:
        """prefactor * Z~ of the reduced matroid at the effective weight,
        with all denominators cleared except the prefactor's."""
        z = z_tilde_matroid(self.reduced).homogenized_substitute({self.kept: self.weight})
        # homogenized substitution multiplied by the weight denominator; for
        # series it coincides with the prefactor numerator
        if self.kind == "series":
            return z.shift_q(-1)
        return z

    def verify(self, m: RankOracle) -> bool:
        return z_tilde_matroid(m) == self.reduced_z()


def _is_parallel(m: RankOracle, e1, e2) -> bool:
    a, b = 1 << e1, 1 << e2
    return m.rank(a) == 1 and m.rank(b) == 1 and m.rank(a | b) == 1


def _is_series(m: RankOracle, e1, e2) -> bool:
    a, b = 1 << e1, 1 << e2
    r = m.rank()
    rest = m.ground & ~(a | b)
    if m.is_coloop(e1) and m.is_coloop(e2):
        return True
    return (m.rank(rest) == r - 1 and m.rank(m.ground & ~a) == r and m.rank(m.ground & ~b) == r)


def matroid_series_parallel(m: RankOracle, e1: int, e2: int) -> SeriesParallelReduction:
    """Merge a two-element circuit (parallel) or cocircuit (series).

    Parallel: weight v1 + v2 + v1 v2, no prefactor.  Series: weight
    v1 v2 / (q + v1 + v2) with prefactor (q + v1 + v2)/q.  Pairs of loops are
    accepted as parallel and pairs of coloops as series."""
    if e1 == e2:
        raise ValueError("need two distinct elements")
    v1, v2 = MultiAffinePoly.variable(e1), MultiAffinePoly.variable(e2)
    one = MultiAffinePoly.one()
    both_loops = m.is_loop(e1) and m.is_loop(e2)
    if both_loops or _is_parallel(m, e1, e2):
        return SeriesParallelReduction("parallel", m.delete(e2), e1, e2,
                                       (v1 + v2 + v1 * v2, one), (one, one))
    if _is_series(m, e1, e2):
        s = MultiAffinePoly.q_power(1) + v1 + v2
        return SeriesParallelReduction("series", m.contract(e2), e1, e2,
                                       (v1 * v2, s), (s, MultiAffinePoly.q_power(1)))
    raise ValueError(f"elements {e1}, {e2} form neither a circuit nor a cocircuit")


def q_zero_matroid_limits(m: RankOracle) -> dict:
    """Spanning-set, independent-set and basis generating polynomials by
    direct enumeration."""
    _cap(m)
    r = m.rank()
    S, I, B = {}, {}, {}
    for A in _submasks(m.ground):
        ra = m.rank(A)
        if ra == r:
            S[(A, 0)] = 1
        if ra == popcount(A):
            I[(A, 0)] = 1
            if ra == r:
                B[(A, 0)] = 1
    return {"S_M": MultiAffinePoly(S), "I_M": MultiAffinePoly(I, prefix="w"),
            "B_M": MultiAffinePoly(B)}


def limits_from_z(m: RankOracle, z: MultiAffinePoly | None = None) -> dict:
    """The same three polynomials read off Z~_M: S_M is the coefficient of
    q^{-r(E)}; I_M is the q^0 coefficient after v = q w; B_M is the
    surviving part of q^{alpha r(E)} Z~(q, q^alpha x) as q -> 0 (alpha = 1/2),
    found by exponent bookkeeping."""
    if z is None:
        z = z_tilde_matroid(m)
    r = m.rank()
    S = z.q_coefficient(-r)
    I = {}
    B = {}
    for (A, e), a in z.items():
        if e + popcount(A) == 0:
            I[(A, 0)] = a
        # exponent of q after v -> q^{1/2} x, times q^{r/2}: e + |A|/2 + r/2
        if 2 * e + popcount(A) + r == 0:
            B[(A, 0)] = a
    return {"S_M": S, "I_M": MultiAffinePoly(I, prefix="w"), "B_M": MultiAffinePoly(B)}


def is_matroid_basis_family(family) -> bool:
    """Basis exchange axiom, checked exhaustively.  Accepts masks or
    iterables of elements."""
    masks = []
    for b in (family.family if isinstance(family, SetSystem) else family):
        masks.append(b if isinstance(b, int) else sum(1 << e for e in b))
    if not masks:
        return False
    if len({popcount(b) for b in masks}) != 1:
        return False
    fam = set(masks)
    for b1 in fam:
        for b2 in fam:
            for x in bits(b1 & ~b2):
                if not any(((b1 & ~(1 << x)) | (1 << y)) in fam for y in bits(b2 & ~b1)):
                    return False
    return True


def check_rank_axioms(m: RankOracle) -> bool:
    """rank(empty) = 0, unit increase, submodularity (exhaustive)."""
    if m.rank(0) != 0:
        return False
    subs = list(_submasks(m.ground))
    for A in subs:
        for e in bits(m.ground & ~A):
            if m.rank(A | (1 << e)) - m.rank(A) not in (0, 1):
                return False
    for A in subs:
        for B in subs:
            if m.rank(A | B) + m.rank(A & B) > m.rank(A) + m.rank(B):
                return False
    return True


def group_spin_sum(matrix, group=(2,), v: dict | None = None) -> MultiAffinePoly:
    """|Gamma|^{-rows} * sum over sigma: rows -> Gamma of
    prod_e [1 + v_e delta(sigma . b_e, 0)], b_e the e-th column.

    Gamma is a product of cyclic groups given by their orders; the integer
    matrix acts componentwise.  Unbound v_e stay symbolic."""
    rows = [list(map(int, r)) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    order = 1
    for k in group:
        order *= k
    if order ** nrows > 10 ** 7:
        raise CapExceeded("too many spin configurations")
    elements = list(itertools.product(*[range(k) for k in group]))
    counts: dict = {}
    for sigma in itertools.product(elements, repeat=nrows):
        mask = 0
        for c in range(ncols):
            zero = True
            for j, k in enumerate(group):
                if sum(rows[i][c] * sigma[i][j] for i in range(nrows)) % k:
                    zero = False
                    break
            if zero:
                mask |= 1 << c
        counts[mask] = counts.get(mask, 0) + 1
    v = {i: as_exact(x) for i, x in (v or {}).items()}
    acc: dict = {}
    sym = ((1 << ncols) - 1) & ~sum(1 << i for i in v)
    for mask, c in counts.items():
        f = Fraction(c, order ** nrows)
        for i in bits(mask & ~sym):
            f *= 1 + v[i]
        if f == 0:
            continue
        s = mask & sym
        for sub in _submasks(s):
            acc[(sub, 0)] = acc.get((sub, 0), 0) + f
    return MultiAffinePoly(acc)


# ---------------------------------------------------------------------------
# text format


def parse_matroid(text: str, base_dir: Path | None = None) -> RankOracle:
    """`uniform r n` | `graphic <graph-file>` | `linear <field> <rows> <cols>`
    followed by the rows | `bases [n]` followed by one basis per line.
    `#` starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty matroid description")
    head = lines[0].split()
    kind = head[0].lower()
    if kind == "uniform":
        return uniform(int(head[1]), int(head[2]))
    if kind == "graphic":
        if len(head) == 2:
            path = Path(head[1])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            g, _ = parse_graph(path.read_text())
        else:
            g, _ = parse_graph("\n".join(lines[1:]))
        return graphic(g)
    if kind == "linear":
        field, nr, nc = head[1], int(head[2]), int(head[3])
        rows = [[Fraction(tok) for tok in ln.split()] for ln in lines[1:1 + nr]]
        if len(rows) != nr or any(len(r) != nc for r in rows):
            raise ValueError("matrix shape does not match the header")
        return linear(rows, field)
    if kind == "bases":
        n = int(head[1]) if len(head) > 1 else None
        bases = [[int(t) for t in ln.replace(",", " ").split()] for ln in lines[1:]]
        return from_bases(bases, n)
    raise ValueError(f"unknown matroid kind {head[0]!r}")


def load_matroid(path) -> RankOracle:
    path = Path(path)
    return parse_matroid(path.read_text(), path.parent)
