"""Shared builders for the test suite: shipped example graphs, Brieskorn
star graphs from pairwise coprime exponents, and a seeded random corpus of
small negative definite trees."""
from __future__ import annotations

import heapq
import random
from collections import Counter
from pathlib import Path

from plumbsw.graph import PlumbingGraph, parse_graph, validate
from plumbsw.lattice import lattice_of

GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"

CORPUS_SEED = 20240912
CORPUS_SIZE = 30


def load_graph(name: str) -> PlumbingGraph:
    return parse_graph((GRAPH_DIR / name).read_text())


def sigma257() -> PlumbingGraph:
    return load_graph("sigma_2_5_7.graph")


def two_nodes() -> PlumbingGraph:
    return load_graph("two_nodes_h3.graph")


def three_nodes() -> PlumbingGraph:
    return load_graph("three_nodes_h1.graph")


def neg_cont_frac(a: int, w: int) -> list[int]:
    """a/w = b1 - 1/(b2 - 1/(...)) with every bi >= 2."""
    out = []
    while w:
        b = -(-a // w)
        out.append(b)
        a, w = w, b * w - a
    return out


def brieskorn(p: int, q: int, r: int) -> PlumbingGraph:
    """Star-shaped plumbing of the Brieskorn sphere with the given pairwise
    coprime exponents: Seifert data solved from the orbifold Euler number
    -1/(pqr), legs by negative continued fractions."""
    alphas = (p, q, r)
    pqr = p * q * r
    omegas = []
    for a in alphas:
        w = (-pow(pqr // a, -1, a)) % a
        omegas.append(w if w else a)
    e0 = (-1 - sum(w * (pqr // a) for w, a in zip(omegas, alphas))) // pqr
    lines = [f"vertex c {e0}"]
    edges = []
    for i, (a, w) in enumerate(zip(alphas, omegas)):
        prev = "c"
        for j, b in enumerate(neg_cont_frac(a, w)):
            vid = f"l{i}_{j}"
            lines.append(f"vertex {vid} {-b}")
            edges.append(f"edge {prev} {vid}")
            prev = vid
    return parse_graph("\n".join(lines + edges))


def star(center_euler: int, leg_eulers) -> PlumbingGraph:
    lines = [f"vertex c {center_euler}"]
    edges = []
    for i, e in enumerate(leg_eulers):
        lines.append(f"vertex s{i} {e}")
        edges.append(f"edge c s{i}")
    return parse_graph("\n".join(lines + edges))


def chain(eulers) -> PlumbingGraph:
    lines = [f"vertex c{i} {e}" for i, e in enumerate(eulers)]
    edges = [f"edge c{i} c{i + 1}" for i in range(len(eulers) - 1)]
    return parse_graph("\n".join(lines + edges))


def _random_tree_edges(rng: random.Random, n: int) -> set[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()
    if n < 2:
        return edges
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.add((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.add((min(u, v), max(u, v)))
    return edges


def random_graph(rng: random.Random, n: int) -> PlumbingGraph:
    edges = _random_tree_edges(rng, n)
    deg = Counter()
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    eulers = []
    for i in range(n):
        if deg[i] >= 3 and rng.random() < 0.6:
            eulers.append(rng.choice([-1, -1, -2]))
        else:
            eulers.append(rng.choice([-2, -2, -2, -2, -3]))
    ids = tuple(f"v{i}" for i in range(n))
    return PlumbingGraph(ids, tuple(eulers),
                         frozenset((ids[a], ids[b]) for a, b in edges))


def corpus(seed: int = CORPUS_SEED, count: int = CORPUS_SIZE, max_n: int = 8,
           max_h: int = 12, node_quota: int = 15) -> list[PlumbingGraph]:
    """Deterministic stream of random negative definite trees with at most
    ``max_n`` vertices and |H| <= ``max_h``; ``node_quota`` of them have at
    least one node so every route gets exercised."""
    rng = random.Random(seed)
    with_nodes: list[PlumbingGraph] = []
    without: list[PlumbingGraph] = []
    tries = 0
    while len(with_nodes) + len(without) < count:
        tries += 1
        if tries > 200000:
            raise RuntimeError("corpus generation stalled")
        g = random_graph(rng, rng.randint(2, max_n))
        if not validate(g).ok:
            continue
        lat = lattice_of(g)
        if lat.h_order > max_h:
            continue
        if lat.node_idx and len(with_nodes) < node_quota:
            with_nodes.append(g)
        elif not lat.node_idx and len(without) < count - node_quota:
            without.append(g)
    return with_nodes + without
