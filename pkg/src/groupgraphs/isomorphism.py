"""Exact graph-isomorphism decisions via invariants, colour refinement, and
individualization-refinement backtracking.

Vertex labels are ignored: this is pure graph isomorphism.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .bitsets import bits
from .graphs import SimpleGraph


@dataclass
class IsoResult:
    isomorphic: bool
    mapping: Optional[list[int]] = None
    refutation: Optional[str] = None


def _refine(adjs: list[tuple[int, ...]], colorings: list[list[int]]):
    """Jointly refine colourings of several graphs until stable.

    Colour ids are assigned canonically (sorted signatures), so equal
    colourings across graphs stay comparable between rounds.
    """
    while True:
        sigs = []
        for adj, colors in zip(adjs, colorings):
            sigs.append(
                [
                    (colors[v], tuple(sorted(colors[u] for u in bits(adj[v]))))
                    for v in range(len(colors))
                ]
            )
        table = {s: i for i, s in enumerate(sorted(set().union(*map(set, sigs))))}
        new = [[table[s] for s in graph_sigs] for graph_sigs in sigs]
        # Refinement only splits classes, so an unchanged class count means
        # the partition is stable.
        if all(
            len(set(n)) == len(set(c)) for n, c in zip(new, colorings)
        ):
            return new
        colorings = new


def _histogram(colors: list[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(colors).items()))


def _verified_mapping(g1: SimpleGraph, g2: SimpleGraph, mapping: list[int]) -> bool:
    moved = [0] * g2.m
    for v in range(g1.m):
        mv = mapping[v]
        for u in bits(g1.adj[v]):
            moved[mv] |= 1 << mapping[u]
    return tuple(moved) == g2.adj


def _search(g1: SimpleGraph, g2: SimpleGraph, c1: list[int], c2: list[int]):
    c1, c2 = _refine([g1.adj, g2.adj], [c1, c2])
    if _histogram(c1) != _histogram(c2):
        return None
    cells1: dict[int, list[int]] = {}
    cells2: dict[int, list[int]] = {}
    for v, c in enumerate(c1):
        cells1.setdefault(c, []).append(v)
    for v, c in enumerate(c2):
        cells2.setdefault(c, []).append(v)
    split = [(len(vs), c) for c, vs in cells1.items() if len(vs) > 1]
    if not split:
        mapping = [0] * g1.m
        for c, vs in cells1.items():
            mapping[vs[0]] = cells2[c][0]
        return mapping if _verified_mapping(g1, g2, mapping) else None
    _, color = min(split)
    fresh = max(max(c1), max(c2)) + 1
    v = cells1[color][0]
    for u in cells2[color]:
        n1 = list(c1)
        n2 = list(c2)
        n1[v] = fresh
        n2[u] = fresh
        found = _search(g1, g2, n1, n2)
        if found is not None:
            return found
    return None


def are_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> IsoResult:
    """Exact decision; any returned mapping has been verified edge-by-edge."""
    if g1.m != g2.m:
        return IsoResult(False, refutation="vertex_count")
    if g1.edge_count() != g2.edge_count():
        return IsoResult(False, refutation="edge_count")
    if g1.degree_multiset() != g2.degree_multiset():
        return IsoResult(False, refutation="degree_multiset")
    if g1.m == 0:
        return IsoResult(True, mapping=[])

    comp1 = sorted(len(c) for c in g1.connected_components())
    comp2 = sorted(len(c) for c in g2.connected_components())
    if comp1 != comp2:
        return IsoResult(False, refutation="component_sizes")

    full = g1.m * (g1.m - 1) // 2
    if g1.edge_count() in (0, full):
        # Edgeless or complete: equal counts suffice; identity map works.
        mapping = list(range(g1.m))
        assert _verified_mapping(g1, g2, mapping)
        return IsoResult(True, mapping=mapping)

    nd1 = sorted(
        (g1.degree(v), tuple(sorted(g1.degree(u) for u in bits(g1.adj[v]))))
        for v in range(g1.m)
    )
    nd2 = sorted(
        (g2.degree(v), tuple(sorted(g2.degree(u) for u in bits(g2.adj[v]))))
        for v in range(g2.m)
    )
    if nd1 != nd2:
        return IsoResult(False, refutation="neighbor_degrees")

    c1, c2 = _refine([g1.adj, g2.adj], [[0] * g1.m, [0] * g2.m])
    if _histogram(c1) != _histogram(c2):
        return IsoResult(False, refutation="color_refinement")

    mapping = _search(g1, g2, c1, c2)
    if mapping is None:
        return IsoResult(False, refutation="backtracking")
    return IsoResult(True, mapping=mapping)


def stable_coloring(g: SimpleGraph) -> list[int]:
    """Canonical stable colouring of a single graph."""
    return _refine([g.adj], [[0] * g.m])[0]


def fingerprint(g: SimpleGraph) -> str:
    """Isomorphism-invariant hash; equality is necessary, never sufficient.

    Built from the canonical stable colouring, so relabelled copies agree.
    """
    colors = stable_coloring(g)
    per_class: dict[int, int] = Counter(colors)
    payload = repr(
        (
            g.m,
            g.edge_count(),
            g.degree_multiset(),
            tuple(sorted(per_class.items())),
            tuple(sorted(len(c) for c in g.connected_components())),
        )
    )
    return hashlib.sha256(payload.encode()).hexdigest()
