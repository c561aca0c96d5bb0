"""Claim orchestration: run every verifier (or a filtered subset) over a
catalog and collect the reports the CLI emits."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .builders import GraphKind
from .claims import (
    ClaimReport,
    verify_delta_disconnection,
    verify_delta_structure,
    verify_edge_count_identity,
    verify_engel_claims,
    verify_euler_product,
    verify_join_claims,
    verify_join_isolated_vertex,
    verify_nilpotent_degrees,
    verify_noncommuting_pair,
    verify_power_graph_pair,
    verify_prime_claims,
    verify_prime_doubling,
    verify_prime_squarefree,
    verify_supdue,
    verify_super_pair,
)
from .decompose import (
    build_supersoluble_instance,
    ratio_of_primes,
    recover_primes_from_ratio,
)
from .errors import GroupGraphsError
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup, cyclic, symmetric
from .scanner import ScanReport, scan_question1
from .structure import (
    DEFAULT_LATTICE_CAP,
    frattini,
    is_2generated,
    is_cyclic,
    is_nilpotent,
    is_supersoluble,
    _prime_factors,
)

_PRIMES_97 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


@dataclass
class RunContext:
    catalog: list[FiniteGroup]
    element_cap: int = DEFAULT_ELEMENT_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    jobs: int = 1
    seed: int = 1729
    sample_count: int = 200
    _scans: dict = field(default_factory=dict)

    def scan(self, kind: GraphKind) -> ScanReport:
        if kind not in self._scans:
            self._scans[kind] = scan_question1(
                self.catalog,
                kind,
                element_cap=self.element_cap,
                lattice_cap=self.lattice_cap,
                jobs=self.jobs,
            )
        return self._scans[kind]

    def by_name(self, name: str) -> FiniteGroup:
        return next(g for g in self.catalog if g.name == name)


def _scan_contract_report(ctx: RunContext, kind: GraphKind, claim_id: str) -> ClaimReport:
    report = ctx.scan(kind)
    failures = {}
    if report.nilpotency_mismatches:
        failures["nilpotency_mismatches"] = [list(p) for p in report.nilpotency_mismatches]
    return ClaimReport(
        claim_id,
        "catalog",
        not failures,
        failures or {"info": {"iso_pairs": len(report.iso_pairs), "pairs_tested": report.pairs_tested}},
    )


def _run_engel_equivalences(ctx: RunContext) -> list[ClaimReport]:
    return [verify_engel_claims(g) for g in ctx.catalog if g.n <= ctx.element_cap]


def _run_engel_scan(ctx: RunContext) -> list[ClaimReport]:
    return [_scan_contract_report(ctx, GraphKind.ENGEL, "engel-scan")]


def _run_power_scan(ctx: RunContext) -> list[ClaimReport]:
    return [_scan_contract_report(ctx, GraphKind.POWER, "power-scan")]


def _run_power_pairs(ctx: RunContext) -> list[ClaimReport]:
    report = ctx.scan(GraphKind.POWER)
    return [
        verify_power_graph_pair(ctx.by_name(a), ctx.by_name(b))
        for a, b in report.iso_pairs
    ]


def _run_noncommuting_pairs(ctx: RunContext) -> list[ClaimReport]:
    report = ctx.scan(GraphKind.NON_COMMUTING)
    return [
        verify_noncommuting_pair(ctx.by_name(a), ctx.by_name(b))
        for a, b in report.iso_pairs
    ]


def _run_generating_pairs(ctx: RunContext) -> list[ClaimReport]:
    report = ctx.scan(GraphKind.GENERATING)
    return [
        verify_super_pair(ctx.by_name(a), ctx.by_name(b))
        for a, b in report.iso_pairs
    ]


def _run_join_pairs(ctx: RunContext) -> list[ClaimReport]:
    report = ctx.scan(GraphKind.JOIN)
    return [
        verify_join_claims(ctx.by_name(a), ctx.by_name(b), cap=ctx.lattice_cap)
        for a, b in report.iso_pairs
    ]


def _run_join_isolated(ctx: RunContext) -> list[ClaimReport]:
    return [
        verify_join_isolated_vertex(g, cap=ctx.lattice_cap)
        for g in ctx.catalog
        if g.n <= ctx.lattice_cap
    ]


def _degree_law_groups(ctx: RunContext) -> list[FiniteGroup]:
    return [
        g
        for g in ctx.catalog
        if g.n <= ctx.element_cap
        and is_nilpotent(g)
        and not is_cyclic(g)
        and is_2generated(g)
    ]


def _run_degree_law(ctx: RunContext) -> list[ClaimReport]:
    return [verify_nilpotent_degrees(g) for g in _degree_law_groups(ctx)]


def _run_euler(ctx: RunContext) -> list[ClaimReport]:
    return [verify_euler_product(g) for g in _degree_law_groups(ctx)]


def _run_edge_identity(ctx: RunContext) -> list[ClaimReport]:
    return [
        verify_edge_count_identity(g)
        for g in ctx.catalog
        if g.n <= ctx.element_cap and is_2generated(g)
    ]


def _run_supdue(ctx: RunContext) -> list[ClaimReport]:
    reports = []
    for g in ctx.catalog:
        if g.n > ctx.lattice_cap or not is_2generated(g) or not is_supersoluble(g):
            continue
        if frattini(g, cap=ctx.lattice_cap).order != 1:
            continue
        reports.append(verify_supdue(g, cap=ctx.lattice_cap))
    # constructed instances exercise the builder path as well
    for module_orders, complement_orders, action in (
        ([3], [2], [[2]]),
        ([5], [2], [[4]]),
        ([3, 5], [2], [[2], [4]]),
    ):
        built = build_supersoluble_instance(module_orders, complement_orders, action)
        reports.append(verify_supdue(built, cap=ctx.lattice_cap))
    return reports


def _run_delta_structure(ctx: RunContext) -> list[ClaimReport]:
    return [
        verify_delta_structure(g)
        for g in ctx.catalog
        if g.n <= ctx.element_cap and is_2generated(g)
    ]


def _run_delta_disconnection(ctx: RunContext) -> list[ClaimReport]:
    return [
        verify_delta_disconnection(g, cap=ctx.lattice_cap)
        for g in ctx.catalog
        if g.n <= ctx.lattice_cap and is_2generated(g)
    ]


def _run_prime_pairs(ctx: RunContext) -> list[ClaimReport]:
    # Monitored findings: only the pairs where nilpotency does not transfer
    # are worth recording individually.
    report = ctx.scan(GraphKind.PRIME)
    return [
        verify_prime_claims(ctx.by_name(a), ctx.by_name(b))
        for a, b in report.nilpotency_mismatches
    ]


def _run_prime_squarefree(ctx: RunContext) -> list[ClaimReport]:
    reports = [verify_prime_squarefree(g) for g in ctx.catalog]
    scan = ctx.scan(GraphKind.PRIME)
    for a, b in scan.iso_pairs:
        for nil_name, other_name in ((a, b), (b, a)):
            nil, other = ctx.by_name(nil_name), ctx.by_name(other_name)
            primes = _prime_factors(other.n)
            if is_nilpotent(nil) and math.prod(primes) == other.n:
                if not is_cyclic(other):
                    reports.append(
                        ClaimReport(
                            "prime-squarefree",
                            f"{nil.name}|{other.name}",
                            False,
                            {"squarefree_partner_not_cyclic": {"order": other.n}},
                        )
                    )
    return reports


def _run_prime_doubling(ctx: RunContext) -> list[ClaimReport]:
    return [verify_prime_doubling(cyclic(6), symmetric(3))]


def _run_ratio_recovery(ctx: RunContext) -> list[ClaimReport]:
    rng = random.Random(ctx.seed)
    failures = []
    for _ in range(ctx.sample_count):
        size = rng.randint(0, 6)
        multiset = tuple(sorted(rng.choice(_PRIMES_97) for _ in range(size)))
        try:
            recovered = recover_primes_from_ratio(ratio_of_primes(multiset))
        except GroupGraphsError as exc:
            failures.append({"multiset": list(multiset), "error": str(exc)})
            continue
        if recovered != multiset:
            failures.append({"multiset": list(multiset), "recovered": list(recovered)})
    witness = {"failures": failures[:10]} if failures else None
    return [
        ClaimReport(
            "prime-ratio-recovery",
            f"{ctx.sample_count} samples (seed {ctx.seed})",
            not failures,
            witness or {"info": {"samples": ctx.sample_count}},
        )
    ]


CLAIM_RUNNERS = {
    "engel-equivalences": _run_engel_equivalences,
    "engel-scan": _run_engel_scan,
    "power-scan": _run_power_scan,
    "power-graph-pair": _run_power_pairs,
    "noncommuting-pair": _run_noncommuting_pairs,
    "generating-pair": _run_generating_pairs,
    "join-pair": _run_join_pairs,
    "join-isolated-vertex": _run_join_isolated,
    "generating-degree-law": _run_degree_law,
    "euler-product": _run_euler,
    "edge-count-identity": _run_edge_identity,
    "supersoluble-degree-formula": _run_supdue,
    "delta-structure": _run_delta_structure,
    "delta-disconnection": _run_delta_disconnection,
    "prime-pair": _run_prime_pairs,
    "prime-squarefree": _run_prime_squarefree,
    "prime-doubling": _run_prime_doubling,
    "prime-ratio-recovery": _run_ratio_recovery,
}

CLAIM_IDS = tuple(CLAIM_RUNNERS)

# Reports under these ids record open-question findings; they never fail and
# never affect the exit code.
MONITORED_CLAIM_IDS = frozenset({"prime-pair"})


def run_claims(ctx: RunContext, claim_filter: tuple[str, ...] | None = None) -> list[ClaimReport]:
    selected = claim_filter or CLAIM_IDS
    unknown = [c for c in selected if c not in CLAIM_RUNNERS]
    if unknown:
        raise KeyError(f"unknown claim ids: {', '.join(unknown)}")
    reports: list[ClaimReport] = []
    for claim_id in CLAIM_IDS:
        if claim_id in selected:
            reports.extend(CLAIM_RUNNERS[claim_id](ctx))
    return reports


def contract_failed(reports: list[ClaimReport]) -> bool:
    return any(not r.passed and r.claim_id not in MONITORED_CLAIM_IDS for r in reports)
