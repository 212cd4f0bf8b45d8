"""Orchestration of the Seiberg-Witten routes.

Three independent computations of the normalized invariant (always
reported with opposite sign, the quantity -sw^norm_h) are available:

* duality: the finite counting-function evaluation Q at the cut Z_K - r_h
  in the dual class [Z_K] - h, over the nodes;
* polypart: the value at 1 of the polynomial part, built by duality from
  the expansion at infinity and cross-checked against Euclidean division;
* lattice: the alternating sum of fibered lattice point counts over the
  node multiset (needs at least one node).

The raw invariant is recovered from the agreed normalized value by the
exact quadratic shift ((K + 2 r_h)^2 + |V|)/8, and the quadratic
consistency check samples the full-variable counting function deep in the
shifted Lipman cone against that quadratic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .counting import Q
from .decomp import evaluate_at_one, euclid_divide, f_h, polypart_dual
from .graph import PlumbingGraph
from .lattice import (HClass, all_classes, class_add, class_neg, class_of,
                      lattice_of, pairing, vec_add, vec_scale, vec_sub)
from .polytopes import PolytopeError, sw_via_lattice


class RouteDisagreement(RuntimeError):
    pass


def duality_cut_vertices(g: PlumbingGraph) -> tuple[str, ...]:
    """Nodes when there are any, the whole vertex set otherwise (chains and
    the one-vertex graph have no nodes and keep all variables)."""
    lat = lattice_of(g)
    if lat.node_idx:
        return tuple(g.ids[i] for i in lat.node_idx)
    return g.ids


def dual_class(g: PlumbingGraph, h: HClass) -> HClass:
    return class_add(class_of(g, lattice_of(g).z_k), class_neg(h))


def sw_norm_via_duality(g: PlumbingGraph, h: HClass) -> int:
    """-sw^norm_h as the counting function of the dual class at Z_K - r_h."""
    lat = lattice_of(g)
    cut = vec_sub(lat.z_k, h.rep)
    return Q(g, dual_class(g, h), duality_cut_vertices(g), cut)


def sw_norm_via_polypart(g: PlumbingGraph, h: HClass, check_division: bool = True) -> int:
    """-sw^norm_h as the coefficient sum of the polynomial part; optionally
    verified against the Euclidean-division construction."""
    subset = duality_cut_vertices(g)
    dec = polypart_dual(g, h, subset)
    if check_division:
        div = euclid_divide(f_h(g, h, subset))
        if div.poly_live() != dec.poly_live():
            raise RouteDisagreement(
                "division and duality produced different polynomial parts")
    return evaluate_at_one(dec.poly)


def sw_norm_via_division(g: PlumbingGraph, h: HClass) -> int:
    """-sw^norm_h as the coefficient sum of the Euclidean-division
    polynomial part."""
    subset = duality_cut_vertices(g)
    return evaluate_at_one(euclid_divide(f_h(g, h, subset)).poly_live())


def sw_shift(g: PlumbingGraph, h: HClass) -> Fraction:
    """((K + 2 r_h)^2 + |V|)/8 with K = -Z_K, computed exactly."""
    lat = lattice_of(g)
    v = vec_add(vec_scale(-1, lat.z_k), vec_scale(2, h.rep))
    return (pairing(g, v, v) + lat.n) / 8


def sw_raw(g: PlumbingGraph, h: HClass, sw_norm_neg: int) -> Fraction:
    """Raw Seiberg-Witten invariant of the structure indexed by h, from the
    agreed normalized value: sw_norm - ((K + 2 r_h)^2 + |V|)/8."""
    return Fraction(-sw_norm_neg) - sw_shift(g, h)


ROUTES = ("duality", "polypart", "division", "lattice")


@dataclass
class SWEntry:
    h: HClass
    values: dict[str, int]
    errors: dict[str, str]
    agree: bool
    sw_norm_neg: int | None
    raw: Fraction | None


@dataclass
class SWReport:
    entries: tuple[SWEntry, ...]

    @property
    def agree(self) -> bool:
        return all(e.agree for e in self.entries)


def sw_report(g: PlumbingGraph, methods=ROUTES) -> SWReport:
    """Run the requested routes for every class of H, sorted by
    representative; refuse to normalize when the routes disagree."""
    entries = []
    for h in all_classes(g):
        values: dict[str, int] = {}
        errors: dict[str, str] = {}
        if "duality" in methods:
            values["duality"] = sw_norm_via_duality(g, h)
        if "polypart" in methods:
            try:
                values["polypart"] = sw_norm_via_polypart(g, h)
            except RouteDisagreement as exc:
                errors["polypart"] = str(exc)
        if "division" in methods:
            values["division"] = sw_norm_via_division(g, h)
        if "lattice" in methods:
            try:
                values["lattice"] = sw_via_lattice(g, h)
            except PolytopeError as exc:
                errors["lattice"] = "not applicable: " + str(exc)
        agree = len(set(values.values())) == 1 and not any(
            route != "lattice" for route in errors)
        norm = next(iter(values.values())) if agree and values else None
        raw = sw_raw(g, h, norm) if norm is not None else None
        entries.append(SWEntry(h, values, errors, agree, norm, raw))
    return SWReport(tuple(entries))


@dataclass
class QuadraticSample:
    lprime: tuple
    ok: bool


@dataclass
class QuadraticReport:
    samples: tuple[QuadraticSample, ...]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.samples)


def quadratic_check(g: PlumbingGraph, samples: int = 3, seed: int = 0) -> QuadraticReport:
    """Sample l' = Z_K + (positive anti-dual combination) and compare the
    full-variable count -Q_{[l']}(l') with the quadratic
    ((K + 2 l')^2 + |V|)/8 + raw invariant of the matching class."""
    lat = lattice_of(g)
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        lp = list(lat.z_k)
        for i in range(lat.n):
            c = rng.randint(1, 2)
            col = lat.estar[i]
            for r in range(lat.n):
                lp[r] += c * col[r]
        lp = tuple(lp)
        h = class_of(g, lp)
        lhs = -Q(g, h, g.ids, lp)
        v = vec_add(vec_scale(-1, lat.z_k), vec_scale(2, lp))
        rhs = (pairing(g, v, v) + lat.n) / 8 + sw_raw(g, h, sw_norm_via_duality(g, h))
        out.append(QuadraticSample(lp, lhs == rhs))
    return QuadraticReport(tuple(out))
