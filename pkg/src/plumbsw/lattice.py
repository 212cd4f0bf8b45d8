"""Exact lattice invariants of a plumbing tree.

Everything is computed over the rationals with ``fractions.Fraction``;
no floating point is used anywhere.  The lattice L is freely generated by
the vertex classes with the (negative definite) intersection form, L' is
its dual generated by the anti-dual classes, and H = L'/L is the finite
first homology of the link, of order det(-I).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .graph import PlumbingGraph, classify_vertices, intersection_matrix

Vec = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


def vec(values) -> Vec:
    return tuple(Fraction(x) for x in values)


def vec_add(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a) -> Vec:
    c = Fraction(c)
    return tuple(c * x for x in a)


def format_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vec(a) -> str:
    return "(" + ",".join(format_frac(Fraction(x)) for x in a) + ")"


@dataclass(frozen=True)
class HClass:
    """Element of H = L'/L, held by its unique representative with all
    coordinates in [0,1).  Equal classes have equal reps."""

    rep: Vec

    def __str__(self) -> str:
        return format_vec(self.rep)


def _invert(matrix):
    """Exact inverse by Gauss-Jordan over Fraction."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise LatticeError("intersection matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def _det(matrix) -> int:
    # Bareiss fraction-free elimination; exact over the big integers.
    n = len(matrix)
    a = [list(row) for row in matrix]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


class Lattice:
    """Cached per-graph bundle: intersection matrix, -I^{-1}, anti-dual
    basis, canonical cycle and scaled integer copies used by enumerations.

    Scaled data: every L' coordinate has denominator dividing d = det(-I),
    so d*x is an integer vector; enumerations work on those to stay in
    machine/big integer arithmetic.
    """

    def __init__(self, g: PlumbingGraph):
        self.graph = g
        self.ids = g.ids
        self.n = g.n
        self.idx = {v: i for i, v in enumerate(g.ids)}
        self.imat = intersection_matrix(g)
        neg = [[-x for x in row] for row in self.imat]
        self.h_order = _det(neg)
        if self.h_order <= 0:
            raise LatticeError("intersection matrix is not negative definite")
        self.neg_inv = _invert(neg)
        # e_star[i] is column i of -I^{-1}; the matrix is symmetric but we
        # read columns to match the defining property (E*_v, E_w) = -delta.
        self.estar: tuple[Vec, ...] = tuple(
            tuple(self.neg_inv[r][i] for r in range(self.n)) for i in range(self.n)
        )
        d = self.h_order
        self.sestar = tuple(tuple(int(x * d) for x in col) for col in self.estar)
        nodes, ends, val = classify_vertices(g)
        self.node_idx = tuple(self.idx[v] for v in nodes)
        self.end_idx = tuple(self.idx[v] for v in ends)
        self.deltas = tuple(val[v] for v in g.ids)
        self.mults = tuple(dv - 2 for dv in self.deltas)
        zk = self._solve_adjunction()
        self.z_k = zk
        self.z_k_me: Vec = tuple(x - 1 for x in zk)
        self.l_top: Vec = vec_add(self.z_k_me,
                                  _sum_cols(self.estar, self.end_idx, self.n))
        self.zero_class = HClass(tuple(Fraction(0) for _ in range(self.n)))

    def _solve_adjunction(self) -> Vec:
        # (Z_K, E_v) = e_v + 2 for all v, i.e. I * z = euler + 2.
        rhs = [e + 2 for e in self.graph.eulers]
        z = [Fraction(0)] * self.n
        inv = _invert(self.imat)
        for i in range(self.n):
            z[i] = sum((inv[i][j] * rhs[j] for j in range(self.n)), Fraction(0))
        return tuple(z)

    # -- scaled helpers ----------------------------------------------------
    def scaled(self, x) -> tuple[int, ...]:
        d = self.h_order
        out = []
        for c in x:
            s = Fraction(c) * d
            if s.denominator != 1:
                raise LatticeError(f"{format_vec(x)} is not in the dual lattice")
            out.append(s.numerator)
        return tuple(out)

    def class_key(self, scaled) -> tuple[int, ...]:
        d = self.h_order
        return tuple(c % d for c in scaled)

    def key_to_class(self, key) -> HClass:
        d = self.h_order
        return HClass(tuple(Fraction(k, d) for k in key))


def _sum_cols(cols, which, n) -> Vec:
    total = [Fraction(0)] * n
    for i in which:
        for r in range(n):
            total[r] += cols[i][r]
    return tuple(total)


@lru_cache(maxsize=None)
def lattice_of(g: PlumbingGraph) -> Lattice:
    return Lattice(g)


# -- lattice operations on graphs -------------------------------------------

def intersection_data(g: PlumbingGraph):
    """(I, -I^{-1}, det(-I)); the determinant is the order of H."""
    lat = lattice_of(g)
    return lat.imat, lat.neg_inv, lat.h_order


def e_star(g: PlumbingGraph, v: str) -> Vec:
    """Anti-dual class of a vertex: column v of -I^{-1}.  All entries are
    strictly positive for a negative definite tree."""
    lat = lattice_of(g)
    return lat.estar[g.index(v)]


def pairing(g: PlumbingGraph, x, y) -> Fraction:
    """Intersection pairing x^T I y (negative definite)."""
    lat = lattice_of(g)
    if len(x) != lat.n or len(y) != lat.n:
        raise LatticeError("vector dimension does not match the vertex count")
    total = Fraction(0)
    for i in range(lat.n):
        xi = Fraction(x[i])
        if not xi:
            continue
        row = lat.imat[i]
        total += xi * sum((Fraction(y[j]) * row[j] for j in range(lat.n) if row[j]),
                          Fraction(0))
    return total


def in_dual_lattice(g: PlumbingGraph, x) -> bool:
    lat = lattice_of(g)
    return all(
        sum((Fraction(x[j]) * lat.imat[i][j] for j in range(lat.n)), Fraction(0)).denominator == 1
        for i in range(lat.n)
    )


def class_of(g: PlumbingGraph, x) -> HClass:
    """Class [x] in H, as the fractional-part representative.  x must lie
    in the dual lattice."""
    if not in_dual_lattice(g, x):
        raise LatticeError(f"{format_vec(x)} is not in the dual lattice")
    return HClass(tuple(Fraction(c) - (Fraction(c).numerator // Fraction(c).denominator)
                        for c in x))


def rep(c: HClass) -> Vec:
    return c.rep


def class_add(a: HClass, b: HClass) -> HClass:
    return HClass(tuple(x + y - int(x + y) for x, y in zip(a.rep, b.rep)))


def class_neg(a: HClass) -> HClass:
    return HClass(tuple(Fraction(0) if not x else 1 - x for x in a.rep))


def canonical_cycle(g: PlumbingGraph) -> Vec:
    """Z_K, the unique solution of the adjunction relations."""
    return lattice_of(g).z_k


def l_top(g: PlumbingGraph) -> Vec:
    """Z_K - E plus the sum of the end anti-duals; equivalently the
    node-supported combination sum_{nodes} (valency - 2) E*_v."""
    return lattice_of(g).l_top


def rho(g: PlumbingGraph, x) -> HClass:
    """Class of sum_e x_e E*_e for a non-negative integer vector indexed by
    the end vertices (in basis order)."""
    lat = lattice_of(g)
    xs = list(x)
    if len(xs) != len(lat.end_idx):
        raise LatticeError(f"expected {len(lat.end_idx)} end coordinates")
    if any(not isinstance(c, int) or c < 0 for c in xs):
        raise LatticeError("end multiplicities must be non-negative integers")
    key = [0] * lat.n
    for c, i in zip(xs, lat.end_idx):
        col = lat.sestar[i]
        for r in range(lat.n):
            key[r] += c * col[r]
    return lat.key_to_class(lat.class_key(tuple(key)))


def all_classes(g: PlumbingGraph) -> tuple[HClass, ...]:
    """All of H, reached from the anti-dual generators; sorted by rep."""
    lat = lattice_of(g)
    gens = [lat.class_key(col) for col in lat.sestar]
    d = lat.h_order
    seen = {(0,) * lat.n}
    frontier = [(0,) * lat.n]
    while frontier:
        key = frontier.pop()
        for gcol in gens:
            nxt = tuple((a + b) % d for a, b in zip(key, gcol))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    if len(seen) != d:
        raise LatticeError(f"anti-duals span {len(seen)} classes, expected {d}")
    return tuple(lat.key_to_class(k) for k in sorted(seen))
