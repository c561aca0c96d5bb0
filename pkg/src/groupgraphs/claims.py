"""Machine checks of the structural claims on concrete groups and group pairs.

Each verifier returns a ClaimReport: pass/fail plus witness data that makes a
failure reproducible.  Verifiers assert biconditionals on the given instance;
they never assume the claim they are checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional

from .bitsets import bits, full_mask, mask_of
from .builders import (
    GraphKind,
    delta_graph,
    edge_count_identity_holds,
    element_graph,
    euler_product_nilpotent,
    gen_probability,
    join_graph,
    nilpotent_degree_table,
    prime_graph,
)
from .decompose import (
    classify_frattini_quotient,
    coprime_direct_factors,
    find_supersoluble_decomposition,
    is_p_group,
)
from .errors import AbelianGroupError
from .groups import FiniteGroup, direct_product
from .isomorphism import are_isomorphic
from .structure import (
    DEFAULT_LATTICE_CAP,
    center,
    conjugacy_class_size_multiset,
    fitting,
    frattini,
    group_isomorphic,
    hypercenter,
    is_2generated,
    is_cyclic,
    is_elementary_abelian,
    is_nilpotent,
    is_soluble,
    is_supersoluble,
    order_spectrum,
    sylow_subgroup,
    _prime_factors,
)


@dataclass
class ClaimReport:
    """Outcome of one claim on one group (or pair); failures carry a witness."""

    claim_id: str
    subject: str
    passed: bool
    witness: Optional[dict] = None

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError("failed reports must carry a witness")

    def to_json_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "subject": self.subject,
            "passed": self.passed,
            "witness": self.witness,
        }


def _report(claim_id: str, subject: str, failures: dict, info: dict | None = None) -> ClaimReport:
    if failures:
        witness = dict(failures)
        if info:
            witness["info"] = info
        return ClaimReport(claim_id, subject, False, witness)
    return ClaimReport(claim_id, subject, True, {"info": info} if info else None)


# -- Engel / nilpotent graph claims ---------------------------------------------------


def verify_engel_claims(g: FiniteGroup) -> ClaimReport:
    """Four checks: completeness of the Engel graph vs nilpotency, Engel graph
    equals nilpotent graph vs nilpotency, universal nilpotent-graph vertices
    equal the hypercenter, universal Engel-graph vertices equal the Fitting
    subgroup (asserted for soluble groups, recorded otherwise)."""
    engel = element_graph(g, GraphKind.ENGEL)
    nil_graph = element_graph(g, GraphKind.NILPOTENT)
    nilpotent = is_nilpotent(g)
    failures: dict = {}

    if engel.is_complete() != nilpotent:
        failures["engel_complete_iff_nilpotent"] = {
            "complete": engel.is_complete(),
            "nilpotent": nilpotent,
        }
    if (engel.adj == nil_graph.adj) != nilpotent:
        diff = [
            (x, y)
            for x in range(g.n)
            for y in bits(engel.adj[x] ^ nil_graph.adj[x])
            if x < y
        ]
        failures["engel_equals_nilpotent_iff_nilpotent"] = {
            "equal": engel.adj == nil_graph.adj,
            "nilpotent": nilpotent,
            "edge_differences": diff[:10],
        }

    hyper = hypercenter(g)
    nil_universal = mask_of(nil_graph.universal_vertices())
    if nil_universal != hyper.mask:
        failures["nilpotent_universal_equals_hypercenter"] = {
            "universal": sorted(bits(nil_universal)),
            "hypercenter": hyper.elements(),
        }

    fit = fitting(g)
    engel_universal = mask_of(engel.universal_vertices())
    info = None
    if is_soluble(g):
        if engel_universal != fit.mask:
            failures["engel_universal_equals_fitting"] = {
                "universal": sorted(bits(engel_universal)),
                "fitting": fit.elements(),
            }
    else:
        info = {
            "insoluble_record": {
                "engel_universal": sorted(bits(engel_universal)),
                "fitting": fit.elements(),
                "agrees": engel_universal == fit.mask,
            }
        }
    return _report("engel-equivalences", g.name, failures, info)


# -- power graph pair claims ----------------------------------------------------------


def verify_power_graph_pair(g: FiniteGroup, h: FiniteGroup, iso_cap: int = 32) -> ClaimReport:
    """Consequences of a power-graph isomorphism: equal order, equal order
    spectrum, nilpotency transfer, isomorphic enhanced power graphs, and (for
    abelian pairs at small order) group isomorphism."""
    pg, ph = element_graph(g, GraphKind.POWER), element_graph(h, GraphKind.POWER)
    iso = are_isomorphic(pg, ph)
    failures: dict = {}
    info: dict = {"power_isomorphic": iso.isomorphic}
    if iso.isomorphic:
        if g.n != h.n:
            failures["same_order"] = {"orders": [g.n, h.n]}
        if order_spectrum(g) != order_spectrum(h):
            failures["same_order_spectrum"] = {
                "spectra": [order_spectrum(g), order_spectrum(h)]
            }
        if is_nilpotent(g) != is_nilpotent(h):
            failures["nilpotency_transfers"] = {
                "nilpotent": [is_nilpotent(g), is_nilpotent(h)]
            }
        enhanced = are_isomorphic(
            element_graph(g, GraphKind.ENHANCED_POWER),
            element_graph(h, GraphKind.ENHANCED_POWER),
        )
        if not enhanced.isomorphic:
            failures["enhanced_power_isomorphic"] = {"refutation": enhanced.refutation}
        if g.is_abelian and h.is_abelian and g.n <= iso_cap:
            if group_isomorphic(g, h) is None:
                failures["abelian_groups_isomorphic"] = {"orders": [g.n, h.n]}
    else:
        enhanced = are_isomorphic(
            element_graph(g, GraphKind.ENHANCED_POWER),
            element_graph(h, GraphKind.ENHANCED_POWER),
        )
        info["enhanced_isomorphic_recorded"] = enhanced.isomorphic
        info["power_refutation"] = iso.refutation
    return _report("power-graph-pair", f"{g.name}|{h.name}", failures, info)


# -- non-commuting graph pair claims ----------------------------------------------------


def verify_noncommuting_pair(g: FiniteGroup, h: FiniteGroup) -> ClaimReport:
    """Same-order consequences of a non-commuting graph isomorphism, plus the
    transfer of the AC property."""
    if g.is_abelian or h.is_abelian:
        raise AbelianGroupError("non-commuting pair requires non-abelian groups")
    ng = element_graph(g, GraphKind.NON_COMMUTING)
    nh = element_graph(h, GraphKind.NON_COMMUTING)
    iso = are_isomorphic(ng, nh)
    failures: dict = {}
    from .structure import is_ac_group

    info: dict = {
        "noncommuting_isomorphic": iso.isomorphic,
        "ac_flags": [is_ac_group(g), is_ac_group(h)],
        "orders": [g.n, h.n],
    }
    if iso.isomorphic:
        if is_ac_group(g) != is_ac_group(h):
            failures["ac_property_transfers"] = {"ac": info["ac_flags"]}
        if g.n == h.n:
            if center(g).order != center(h).order:
                failures["equal_center_order"] = {
                    "centers": [center(g).order, center(h).order]
                }
            if conjugacy_class_size_multiset(g) != conjugacy_class_size_multiset(h):
                failures["equal_class_size_multiset"] = {
                    "multisets": [
                        conjugacy_class_size_multiset(g),
                        conjugacy_class_size_multiset(h),
                    ]
                }
            if is_nilpotent(g) != is_nilpotent(h):
                failures["nilpotency_transfers"] = {
                    "nilpotent": [is_nilpotent(g), is_nilpotent(h)]
                }
        else:
            info["different_orders_recorded"] = True
    return _report("noncommuting-pair", f"{g.name}|{h.name}", failures, info)


# -- generating graph claims -------------------------------------------------------------


def verify_nilpotent_degrees(g: FiniteGroup) -> ClaimReport:
    """Exact degree census of the generating graph of a nilpotent non-cyclic
    2-generated group against the predicted table."""
    table = nilpotent_degree_table(g)
    gen = element_graph(g, GraphKind.GENERATING)
    actual = tuple(sorted(gen.degree(v) for v in range(gen.m) if gen.adj[v]))
    predicted = table.predicted_multiset()
    failures: dict = {}
    if actual != predicted:
        failures["degree_multiset"] = {"actual": actual, "predicted": predicted}
    betas = [beta for _, _, beta in table.rows]
    if len(set(betas)) != len(betas):
        failures["distinct_degrees_per_subset"] = {"betas": betas}
    if table.non_isolated_count() != sum(1 for v in range(gen.m) if gen.adj[v]):
        failures["non_isolated_count"] = {
            "predicted": table.non_isolated_count(),
            "actual": sum(1 for v in range(gen.m) if gen.adj[v]),
        }
    return _report(
        "generating-degree-law",
        g.name,
        failures,
        {"rows": [[list(i), a, b] for i, a, b in table.rows]},
    )


def verify_euler_product(g: FiniteGroup) -> ClaimReport:
    prob = gen_probability(g)
    formula = euler_product_nilpotent(g)
    failures = {}
    if prob != formula:
        failures["euler_product_equals_probability"] = {
            "probability": str(prob),
            "formula": str(formula),
        }
    return _report("euler-product", g.name, failures, {"value": str(prob)})


def verify_edge_count_identity(g: FiniteGroup) -> ClaimReport:
    holds = edge_count_identity_holds(g)
    cyclic = is_cyclic(g)
    failures = {}
    # Holds exactly for non-cyclic 2-generated groups; the diagonal generator
    # pairs of a cyclic group break it.
    if holds == cyclic:
        failures["identity_iff_noncyclic"] = {"holds": holds, "cyclic": cyclic}
    return _report("edge-count-identity", g.name, failures)


def verify_supdue(x: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> ClaimReport:
    """Per-vertex degree law and non-isolation criterion of the recovered
    module/complement decomposition.

    The complement factor counts the pairs (y, y~) with <y, y~> = Y including
    y~ = y: the self pair participates exactly when y alone generates Y, and
    in that case the module factors exclude the vertex itself.
    """
    dec = find_supersoluble_decomposition(x, cap=cap)
    subject = x.name
    t = len(dec.modules)
    if t == 0 and is_cyclic(x):
        return ClaimReport(
            "supersoluble-degree-formula",
            subject,
            True,
            {"info": {"note": "degenerate: cyclic with no modules"}},
        )

    gen = element_graph(x, GraphKind.GENERATING)
    y_elems = dec.complement_elements
    y_grp = dec.complement.as_group()
    whole_y = full_mask(y_grp.n)
    pair_counts = []
    for yi in range(y_grp.n):
        pair_counts.append(
            sum(1 for yj in range(y_grp.n) if y_grp.pair_closure(yi, yj) == whole_y)
        )

    w_members = [0]
    if t:
        w_mask = x.subgroup_closure([m.gens[0] for m in dec.modules])
        w_members = list(bits(w_mask))
    components: dict[int, tuple[int, ...]] = {}
    for combo in iproduct(*[m.elements() for m in dec.modules]) if t else [()]:
        w = 0
        for c in combo:
            w = x.mul(w, c)
        components[w] = combo
    split: dict[int, tuple[int, int]] = {}
    for w in w_members:
        for pos, y in enumerate(y_elems):
            split[x.mul(w, y)] = (w, pos)
    if len(split) != x.n:
        return ClaimReport(
            "supersoluble-degree-formula",
            subject,
            False,
            {"decomposition_not_bijective": {"covered": len(split), "order": x.n}},
        )

    failures: dict = {}
    bad_degrees = []
    bad_isolation = []
    for e in range(x.n):
        w, ypos = split[e]
        combo = components[w]
        kernel = dec.kernel_indices(ypos)
        predicted_nonisolated = pair_counts[ypos] > 0 and all(
            combo[i] != 0 for i in kernel
        )
        actual_nonisolated = gen.adj[e] != 0
        if predicted_nonisolated != actual_nonisolated:
            bad_isolation.append(
                {"element": e, "predicted": predicted_nonisolated, "actual": actual_nonisolated}
            )
            continue
        if actual_nonisolated:
            expected = pair_counts[ypos]
            for i, r in enumerate(dec.module_orders):
                expected *= r if i in kernel else r - 1
            if gen.degree(e) != expected:
                bad_degrees.append(
                    {"element": e, "expected": expected, "actual": gen.degree(e)}
                )
    if bad_degrees:
        failures["degree_formula"] = bad_degrees[:10]
    if bad_isolation:
        failures["non_isolation_criterion"] = bad_isolation[:10]
    return _report(
        "supersoluble-degree-formula",
        subject,
        failures,
        {"module_orders": list(dec.module_orders), "complement_order": dec.complement.order},
    )


def verify_super_pair(g: FiniteGroup, h: FiniteGroup) -> ClaimReport:
    """If the generating graphs agree, a nilpotent partner forces a supersoluble
    partner to be nilpotent; entry identities on edges and generation
    probability are asserted alongside."""
    gg = element_graph(g, GraphKind.GENERATING)
    gh = element_graph(h, GraphKind.GENERATING)
    iso = are_isomorphic(gg, gh)
    failures: dict = {}
    info: dict = {"generating_isomorphic": iso.isomorphic}
    if iso.isomorphic:
        if gg.m != gh.m or gg.edge_count() != gh.edge_count():
            failures["entry_identities"] = {
                "vertices": [gg.m, gh.m],
                "edges": [gg.edge_count(), gh.edge_count()],
            }
        if g.n == h.n and gen_probability(g) != gen_probability(h):
            failures["generation_probability"] = {
                "values": [str(gen_probability(g)), str(gen_probability(h))]
            }
        if is_nilpotent(g) and is_supersoluble(h) and not is_nilpotent(h):
            failures["supersoluble_partner_nilpotent"] = {
                "pair": [g.name, h.name],
            }
        if is_nilpotent(h) and is_supersoluble(g) and not is_nilpotent(g):
            failures["supersoluble_partner_nilpotent_rev"] = {
                "pair": [h.name, g.name],
            }
        info["nilpotent_flags"] = [is_nilpotent(g), is_nilpotent(h)]
    return _report("generating-pair", f"{g.name}|{h.name}", failures, info)


# -- Delta graph claims ---------------------------------------------------------------------


def _is_dihedral_of_odd_prime(g: FiniteGroup) -> bool:
    # A group of order 2p (p an odd prime) is either cyclic or dihedral.
    half = g.n // 2
    return (
        g.n % 2 == 0
        and half > 2
        and _prime_factors(half) == [half]
        and not g.is_abelian
    )


def verify_delta_structure(g: FiniteGroup) -> ClaimReport:
    """Shape checks for the non-generating-pair graph: cyclic groups, non-cyclic
    p-groups, dihedral groups of order 2p, and the isolated-vertex
    classification on this instance."""
    delta = delta_graph(g)
    failures: dict = {}
    info: dict = {"vertices": delta.m}

    if is_cyclic(g):
        if delta.m != g.n:
            failures["cyclic_vertex_count"] = {"vertices": delta.m, "order": g.n}
        if g.n >= 2 and len(delta.isolated_vertices()) < 2:
            failures["cyclic_two_isolated"] = {
                "isolated": len(delta.isolated_vertices())
            }
    primes = _prime_factors(g.n)
    if not is_cyclic(g) and len(set(primes)) == 1 and is_2generated(g):
        p = primes[0]
        k = 0
        n = g.n
        while n > 1:
            n //= p
            k += 1
        expected_size = p ** (k - 2) * (p - 1)
        comps = delta.connected_components()
        if len(comps) != p + 1:
            failures["p_group_component_count"] = {
                "components": len(comps),
                "expected": p + 1,
            }
        for comp in comps:
            sub = delta.induced(list(comp))
            if len(comp) != expected_size or not sub.is_complete():
                failures.setdefault("p_group_component_shape", []).append(
                    {"size": len(comp), "expected": expected_size, "complete": sub.is_complete()}
                )
        if not delta.is_regular() or (
            delta.m and delta.degree(0) != expected_size - 1
        ):
            failures["p_group_regularity"] = {
                "regular": delta.is_regular(),
                "valency": delta.degrees()[:1],
                "expected": expected_size - 1,
            }
    if _is_dihedral_of_odd_prime(g):
        p = g.n // 2
        comps = sorted(delta.connected_components(), key=len)
        isolated = delta.isolated_vertices()
        if delta.m != g.n - 1:
            failures["dihedral_vertex_count"] = {"vertices": delta.m, "expected": g.n - 1}
        if len(isolated) != p:
            failures["dihedral_isolated_count"] = {
                "isolated": len(isolated),
                "expected": p,
            }
        big = comps[-1] if comps else ()
        if len(big) != p - 1 or not delta.induced(list(big)).is_complete():
            failures["dihedral_complete_component"] = {
                "size": len(big),
                "expected": p - 1,
            }

    # isolated-vertex classification, both directions on this instance
    should_have_isolated = (
        is_cyclic(g)
        or (g.n == 4 and is_elementary_abelian(g))
        or _is_dihedral_of_odd_prime(g)
    )
    has_isolated = bool(delta.isolated_vertices())
    if has_isolated != should_have_isolated:
        failures["isolated_classification"] = {
            "has_isolated": has_isolated,
            "classified": should_have_isolated,
        }
    return _report("delta-structure", g.name, failures, info)


def verify_delta_disconnection(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> ClaimReport:
    """The classifier's verdict must match actual disconnection of the graph.

    The trivial group is degenerate: its one-vertex graph cannot disconnect,
    so the correspondence starts at order 2.
    """
    if g.n == 1:
        return ClaimReport(
            "delta-disconnection", g.name, True, {"info": {"note": "single vertex"}}
        )
    cls = classify_frattini_quotient(g, cap=cap)
    delta = delta_graph(g)
    disconnected = len(delta.connected_components()) > 1
    failures = {}
    if cls.predicts_disconnected != disconnected:
        failures["classifier_matches_graph"] = {
            "class": cls.tag,
            "disconnected": disconnected,
        }
    return _report("delta-disconnection", g.name, failures, {"class": cls.tag})


# -- prime graph claims ------------------------------------------------------------------


def verify_prime_claims(g: FiniteGroup, h: FiniteGroup) -> ClaimReport:
    """Record (never assert) nilpotency across an isomorphic prime-graph pair."""
    iso = are_isomorphic(prime_graph(g), prime_graph(h))
    info = {
        "prime_isomorphic": iso.isomorphic,
        "nilpotent_flags": [is_nilpotent(g), is_nilpotent(h)],
    }
    return _report("prime-pair", f"{g.name}|{h.name}", {}, info)


def verify_prime_doubling(g: FiniteGroup, k: FiniteGroup) -> ClaimReport:
    """K x K has a complete prime graph; with pi(K) = pi(G) it matches a
    nilpotent G's prime graph despite K x K being non-nilpotent."""
    failures: dict = {}
    doubled = direct_product(k, k)
    dg = prime_graph(doubled)
    if not dg.is_complete():
        failures["doubled_prime_graph_complete"] = {"graph_order": dg.m}
    if is_nilpotent(k):
        failures["k_must_be_non_nilpotent"] = {"k": k.name}
    elif is_nilpotent(doubled):
        failures["doubled_still_non_nilpotent"] = {"group": doubled.name}
    if set(_prime_factors(g.n)) == set(_prime_factors(k.n)) and is_nilpotent(g):
        iso = are_isomorphic(prime_graph(g), dg)
        if not iso.isomorphic:
            failures["isomorphic_to_nilpotent_partner"] = {
                "refutation": iso.refutation
            }
    return _report("prime-doubling", f"{g.name}|{k.name}", failures)


def verify_prime_squarefree(h: FiniteGroup) -> ClaimReport:
    """Square-free order plus a complete prime graph forces cyclic."""
    primes = _prime_factors(h.n)
    squarefree = math.prod(primes) == h.n
    failures = {}
    info = {"squarefree": squarefree}
    if squarefree and prime_graph(h).is_complete() and not is_cyclic(h):
        failures["squarefree_complete_implies_cyclic"] = {"order": h.n}
    return _report("prime-squarefree", h.name, failures, info)


# -- join graph claims ----------------------------------------------------------------------


def _is_direct_product_of_elementary_abelians(g: FiniteGroup) -> bool:
    if not is_nilpotent(g):
        return False
    return all(
        is_elementary_abelian(sylow_subgroup(g, p).as_group())
        for p in set(_prime_factors(g.n))
    )


def verify_join_claims(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> ClaimReport:
    """Consequences of a join-graph isomorphism: nilpotent partner forces
    supersoluble, trivial Frattini transfers, and the coprime product shape
    when both conditions meet."""
    jg, jh = join_graph(g, cap=cap), join_graph(h, cap=cap)
    iso = are_isomorphic(jg, jh)
    failures: dict = {}
    info: dict = {"join_isomorphic": iso.isomorphic}
    if iso.isomorphic:
        if is_nilpotent(g) and not is_supersoluble(h):
            failures["nilpotent_forces_supersoluble"] = {"pair": [g.name, h.name]}
        if is_nilpotent(h) and not is_supersoluble(g):
            failures["nilpotent_forces_supersoluble_rev"] = {"pair": [h.name, g.name]}
        phi_g = frattini(g, cap=cap).order
        phi_h = frattini(h, cap=cap).order
        if (phi_g == 1) != (phi_h == 1):
            failures["trivial_frattini_transfers"] = {"orders": [phi_g, phi_h]}
        for nil, other, phi_other in ((g, h, phi_h), (h, g, phi_g)):
            if phi_other == 1 and is_nilpotent(nil):
                if not _is_direct_product_of_elementary_abelians(nil):
                    failures["nilpotent_side_elementary"] = {"group": nil.name}
                factors = coprime_direct_factors(other)
                bad = [
                    f.name
                    for f in factors
                    if f.n > 1 and not (is_p_group(f) or is_elementary_abelian(f))
                ]
                if bad:
                    failures["partner_coprime_factors"] = {
                        "group": other.name,
                        "bad_factors": bad,
                    }
        info["nilpotent_flags"] = [is_nilpotent(g), is_nilpotent(h)]
    return _report("join-pair", f"{g.name}|{h.name}", failures, info)


def verify_join_isolated_vertex(h: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> ClaimReport:
    """With trivial Frattini subgroup the identity subgroup is the unique
    isolated vertex of the join graph (noncyclic case)."""
    failures: dict = {}
    if frattini(h, cap=cap).order == 1 and not is_cyclic(h) and h.n > 1:
        jh = join_graph(h, cap=cap)
        isolated = jh.isolated_vertices()
        trivial_label = format(1, "x")
        labels = [jh.labels[v] for v in isolated]
        if labels != [trivial_label]:
            failures["unique_isolated_identity"] = {"isolated_labels": labels}
    return _report("join-isolated-vertex", h.name, failures)


__all__ = [
    "ClaimReport",
    "verify_delta_disconnection",
    "verify_delta_structure",
    "verify_edge_count_identity",
    "verify_engel_claims",
    "verify_euler_product",
    "verify_join_claims",
    "verify_join_isolated_vertex",
    "verify_nilpotent_degrees",
    "verify_noncommuting_pair",
    "verify_power_graph_pair",
    "verify_prime_claims",
    "verify_prime_doubling",
    "verify_prime_squarefree",
    "verify_supdue",
    "verify_super_pair",
]
