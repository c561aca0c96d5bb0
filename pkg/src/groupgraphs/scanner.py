"""Catalog scanning: which groups share an isomorphic graph of a given kind,
and whether nilpotency survives the correspondence."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .builders import GraphKind, build_graph
from .errors import (
    AbelianGroupError,
    NotTwoGeneratedError,
    SizeLimitError,
)
from .graph6 import to_graph6
from .graphs import SimpleGraph
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup
from .isomorphism import are_isomorphic, fingerprint
from .structure import DEFAULT_LATTICE_CAP, is_nilpotent

# Kinds whose scans are hard contracts: an isomorphic pair with exactly one
# nilpotent member would contradict a verified statement, so the scanner's
# mismatch list must stay empty.  All other kinds are monitored: mismatches
# are findings, reported but never asserted away.
CONTRACT_KINDS = frozenset({GraphKind.POWER, GraphKind.ENGEL})


@dataclass
class ScanReport:
    kind: GraphKind
    pairs_tested: int
    iso_pairs: list[tuple[str, str]]
    nilpotency_mismatches: list[tuple[str, str]]
    skipped: list[tuple[str, str]] = field(default_factory=list)
    classes: list[dict] = field(default_factory=list)

    @property
    def contract_violated(self) -> bool:
        return self.kind in CONTRACT_KINDS and bool(self.nilpotency_mismatches)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "pairs_tested": self.pairs_tested,
            "iso_pairs": [list(p) for p in self.iso_pairs],
            "nilpotency_mismatches": [list(p) for p in self.nilpotency_mismatches],
            "skipped": [list(s) for s in self.skipped],
            "classes": self.classes,
            "contract_kind": self.kind in CONTRACT_KINDS,
            "contract_violated": self.contract_violated,
        }


def scan_question1(
    catalog: list[FiniteGroup],
    kind: GraphKind,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    lattice_cap: int = DEFAULT_LATTICE_CAP,
    jobs: int = 1,
) -> ScanReport:
    """Build the kind-graph for every admissible catalog group, bucket by
    fingerprint, and confirm isomorphism pairwise; fingerprints are only ever
    used for bucketing."""
    if kind is GraphKind.DIRECTED_POWER:
        raise ValueError("isomorphism scans cover the undirected graph kinds")

    graphs: list[tuple[str, SimpleGraph, bool]] = []
    skipped: list[tuple[str, str]] = []
    for g in catalog:
        try:
            graph = build_graph(g, kind, element_cap=element_cap, lattice_cap=lattice_cap)
        except AbelianGroupError:
            skipped.append((g.name, "abelian group"))
            continue
        except NotTwoGeneratedError:
            skipped.append((g.name, "not 2-generated"))
            continue
        except SizeLimitError as exc:
            skipped.append((g.name, str(exc)))
            continue
        graphs.append((g.name, graph, is_nilpotent(g)))

    buckets: dict[str, list[int]] = {}
    for idx, (_, graph, _) in enumerate(graphs):
        buckets.setdefault(fingerprint(graph), []).append(idx)

    candidates = [
        (i, j)
        for bucket in buckets.values()
        for i, j in combinations(bucket, 2)
    ]
    candidates.sort()

    def confirm(pair: tuple[int, int]) -> tuple[int, int, bool]:
        i, j = pair
        return i, j, are_isomorphic(graphs[i][1], graphs[j][1]).isomorphic

    if jobs > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            confirmed = list(pool.map(confirm, candidates))
    else:
        confirmed = [confirm(p) for p in candidates]

    parent = list(range(len(graphs)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    iso_pairs: list[tuple[str, str]] = []
    mismatches: list[tuple[str, str]] = []
    for i, j, ok in confirmed:
        if not ok:
            continue
        iso_pairs.append((graphs[i][0], graphs[j][0]))
        parent[find(i)] = find(j)
        nil_i, nil_j = graphs[i][2], graphs[j][2]
        if nil_i != nil_j:
            nil_first = (graphs[i][0], graphs[j][0]) if nil_i else (graphs[j][0], graphs[i][0])
            mismatches.append(nil_first)

    classes: dict[int, list[int]] = {}
    for idx in range(len(graphs)):
        classes.setdefault(find(idx), []).append(idx)
    class_entries = []
    for root, members in sorted(classes.items()):
        if len(members) < 2:
            continue
        class_entries.append(
            {
                "members": [graphs[i][0] for i in members],
                "graph6": to_graph6(graphs[members[0]][1]),
            }
        )

    return ScanReport(
        kind=kind,
        pairs_tested=len(candidates),
        iso_pairs=sorted(iso_pairs),
        nilpotency_mismatches=sorted(mismatches),
        skipped=skipped,
        classes=class_entries,
    )
