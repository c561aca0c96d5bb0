"""The graphs a finite group carries, plus the numeric laws attached to them.

Builders are pure functions of immutable groups; built graphs are memoised on
the group so repeated queries are free.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .bitsets import bits, full_mask
from .errors import (
    AbelianGroupError,
    CyclicGroupError,
    NotNilpotentError,
    NotTwoGeneratedError,
    SizeLimitError,
)
from .graphs import DiGraph, SimpleGraph
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup
from .structure import (
    DEFAULT_LATTICE_CAP,
    all_subgroups,
    center,
    engel_reaches_identity,
    is_2generated,
    is_cyclic,
    is_nilpotent,
    is_nilpotent_mask,
    is_soluble,
    is_soluble_mask,
    order_spectrum,
    prime_signature,
)
from .structure import _cache  # shared per-group memo


class GraphKind(Enum):
    POWER = "power"
    DIRECTED_POWER = "directed-power"
    ENHANCED_POWER = "enhanced-power"
    COMMUTING = "commuting"
    NON_COMMUTING = "noncommuting"
    ENGEL = "engel"
    NILPOTENT = "nilpotent"
    SOLUBLE = "soluble"
    GENERATING = "generating"
    DELTA = "delta"
    PRIME = "prime"
    JOIN = "join"


ELEMENT_KINDS = frozenset(
    {
        GraphKind.POWER,
        GraphKind.ENHANCED_POWER,
        GraphKind.COMMUTING,
        GraphKind.NON_COMMUTING,
        GraphKind.ENGEL,
        GraphKind.NILPOTENT,
        GraphKind.SOLUBLE,
        GraphKind.GENERATING,
    }
)


def _graph_cache(g: FiniteGroup) -> dict:
    return _cache(g).setdefault("graphs", {})


def _element_labels(g: FiniteGroup) -> list[str]:
    return [str(x) for x in g.elements()]


def element_graph(
    g: FiniteGroup, kind: GraphKind, cap: int = DEFAULT_ELEMENT_CAP
) -> SimpleGraph:
    """Element-vertex graph of the requested kind.

    Vertex set is all of G except for the non-commuting graph, whose vertices
    are the non-central elements.
    """
    if kind not in ELEMENT_KINDS:
        raise ValueError(f"{kind} is not an element-vertex kind")
    if g.n > cap:
        raise SizeLimitError(f"order {g.n} exceeds cap {cap}")
    cache = _graph_cache(g)
    if kind not in cache:
        cache[kind] = _build_element_graph(g, kind)
    return cache[kind]


def _build_element_graph(g: FiniteGroup, kind: GraphKind) -> SimpleGraph:
    n = g.n
    labels = _element_labels(g)

    if kind is GraphKind.POWER:
        adj = [0] * n
        for y in range(n):
            m = g.cyclic_masks[y] & ~(1 << y)
            adj[y] |= m
            for x in bits(m):
                adj[x] |= 1 << y
        return SimpleGraph(n, adj, labels)

    if kind is GraphKind.ENHANCED_POWER:
        adj = [0] * n
        for z in range(n):
            m = g.cyclic_masks[z]
            for x in bits(m):
                adj[x] |= m
        return SimpleGraph(n, [adj[x] & ~(1 << x) for x in range(n)], labels)

    if kind is GraphKind.COMMUTING:
        adj = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if g.mul(x, y) == g.mul(y, x):
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
        return SimpleGraph(n, adj, labels)

    if kind is GraphKind.NON_COMMUTING:
        if g.is_abelian:
            raise AbelianGroupError(
                f"{g.name} is abelian: the non-commuting graph has no vertices"
            )
        vertices = [x for x in g.elements() if x not in center(g)]
        pos = {x: i for i, x in enumerate(vertices)}
        adj = [0] * len(vertices)
        for i, x in enumerate(vertices):
            for y in vertices[i + 1:]:
                if g.mul(x, y) != g.mul(y, x):
                    adj[i] |= 1 << pos[y]
                    adj[pos[y]] |= 1 << i
        return SimpleGraph(len(vertices), adj, [str(x) for x in vertices])

    if kind is GraphKind.ENGEL:
        adj = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if engel_reaches_identity(g, x, y) or engel_reaches_identity(g, y, x):
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
        return SimpleGraph(n, adj, labels)

    if kind is GraphKind.NILPOTENT:
        adj = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if g.mul(x, y) == g.mul(y, x) or is_nilpotent_mask(g, g.pair_closure(x, y)):
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
        return SimpleGraph(n, adj, labels)

    if kind is GraphKind.SOLUBLE:
        if is_soluble(g):
            # every subgroup of a soluble group is soluble
            whole = full_mask(n)
            return SimpleGraph(n, [whole ^ (1 << x) for x in range(n)], labels)
        adj = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if g.mul(x, y) == g.mul(y, x) or is_soluble_mask(g, g.pair_closure(x, y)):
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
        return SimpleGraph(n, adj, labels)

    if kind is GraphKind.GENERATING:
        if not is_2generated(g):
            raise NotTwoGeneratedError(f"{g.name} is not generated by any pair")
        whole = full_mask(n)
        adj = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if g.pair_closure(x, y) == whole:
                    adj[x] |= 1 << y
                    adj[y] |= 1 << x
        return SimpleGraph(n, adj, labels)

    raise AssertionError(kind)


def directed_power_graph(g: FiniteGroup) -> DiGraph:
    """Arc y -> x whenever x is a power of y (x != y); out-degree |y| - 1."""
    out = [g.cyclic_masks[y] & ~(1 << y) for y in g.elements()]
    return DiGraph(g.n, out, _element_labels(g))


def delta_graph(g: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> SimpleGraph:
    """Complement of the generating graph induced on its non-isolated vertices.

    Labels carry the underlying element indices.
    """
    cache = _graph_cache(g)
    if GraphKind.DELTA not in cache:
        gen = element_graph(g, GraphKind.GENERATING, cap=cap)
        vertices = [v for v in range(gen.m) if gen.adj[v] != 0]
        if g.n == 1:
            vertices = [0]  # the trivial group generates itself
        cache[GraphKind.DELTA] = gen.induced(vertices).complement()
    return cache[GraphKind.DELTA]


def prime_graph(g: FiniteGroup) -> SimpleGraph:
    """Vertices the primes dividing |G|; p ~ q iff some element order is
    divisible by pq."""
    cache = _graph_cache(g)
    if GraphKind.PRIME not in cache:
        primes = []
        n = g.n
        d = 2
        while d * d <= n:
            if n % d == 0:
                primes.append(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            primes.append(n)
        orders = set(g.elem_order)
        adj = [0] * len(primes)
        for i, p in enumerate(primes):
            for j in range(i + 1, len(primes)):
                pq = p * primes[j]
                if any(o % pq == 0 for o in orders):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        cache[GraphKind.PRIME] = SimpleGraph(len(primes), adj, [str(p) for p in primes])
    return cache[GraphKind.PRIME]


def join_graph(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SimpleGraph:
    """Vertices the proper subgroups; M ~ N iff together they generate G.

    Labels are hex bitmasks of the subgroup members.
    """
    cache = _graph_cache(g)
    if GraphKind.JOIN not in cache:
        whole = full_mask(g.n)
        subs = [s for s in all_subgroups(g, cap=cap) if s.is_proper()]
        adj = [0] * len(subs)
        for i, a in enumerate(subs):
            for j in range(i + 1, len(subs)):
                b = subs[j]
                if a.mask | b.mask == whole or g.subgroup_closure(a.gens + b.gens) == whole:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        labels = [format(s.mask, "x") for s in subs]
        cache[GraphKind.JOIN] = SimpleGraph(len(subs), adj, labels)
    return cache[GraphKind.JOIN]


def build_graph(g: FiniteGroup, kind: GraphKind, element_cap: int = DEFAULT_ELEMENT_CAP,
                lattice_cap: int = DEFAULT_LATTICE_CAP):
    """Uniform dispatch used by the CLI and the scanner."""
    if kind in ELEMENT_KINDS:
        return element_graph(g, kind, cap=element_cap)
    if kind is GraphKind.DELTA:
        return delta_graph(g, cap=element_cap)
    if kind is GraphKind.PRIME:
        return prime_graph(g)
    if kind is GraphKind.JOIN:
        return join_graph(g, cap=lattice_cap)
    if kind is GraphKind.DIRECTED_POWER:
        return directed_power_graph(g)
    raise AssertionError(kind)


# -- numeric laws ------------------------------------------------------------------


def gen_probability(g: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> Fraction:
    """Probability that an ordered pair of uniform elements generates G."""
    gen = element_graph(g, GraphKind.GENERATING, cap=cap)
    whole = full_mask(g.n)
    diagonal = sum(1 for x in g.elements() if g.cyclic_masks[x] == whole)
    return Fraction(2 * gen.edge_count() + diagonal, g.n * g.n)


def edge_count_identity_holds(g: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Whether 2 * (edges of the generating graph) equals |G|^2 * P_G(2).

    True for non-cyclic 2-generated groups; for cyclic groups the diagonal
    generator pairs break it, which this reports rather than asserts.
    """
    gen = element_graph(g, GraphKind.GENERATING, cap=cap)
    return Fraction(2 * gen.edge_count(), g.n * g.n) == gen_probability(g, cap=cap)


def _require_nilpotent_noncyclic_2gen(g: FiniteGroup) -> None:
    if not is_nilpotent(g):
        raise NotNilpotentError(f"{g.name} is not nilpotent")
    if is_cyclic(g):
        raise CyclicGroupError(f"{g.name} is cyclic")
    if not is_2generated(g):
        raise NotTwoGeneratedError(f"{g.name} is not 2-generated")


def euler_product_nilpotent(g: FiniteGroup) -> Fraction:
    """Exact generation probability of a nilpotent non-cyclic 2-generated group
    as a product over its primes, split by cyclic/non-cyclic Sylow subgroup."""
    _require_nilpotent_noncyclic_2gen(g)
    sig = prime_signature(g)
    value = Fraction(1)
    for p in sig.pi1:
        value *= 1 - Fraction(1, p * p)
    for q in sig.pi2:
        value *= (1 - Fraction(1, q)) * (1 - Fraction(1, q * q))
    return value


@dataclass(frozen=True)
class DegreeTable:
    """Predicted generating-graph degree census of a nilpotent group.

    One row per subset I of the cyclic-Sylow primes: exactly ``alpha`` vertices
    of degree ``beta``.
    """

    rows: tuple[tuple[tuple[int, ...], int, int], ...]

    def non_isolated_count(self) -> int:
        return sum(alpha for _, alpha, _ in self.rows)

    def predicted_multiset(self) -> tuple[int, ...]:
        out: list[int] = []
        for _, alpha, beta in self.rows:
            out.extend([beta] * alpha)
        return tuple(sorted(out))


def nilpotent_degree_table(g: FiniteGroup) -> DegreeTable:
    """Exact (alpha, beta) rows; integrality of both is asserted."""
    _require_nilpotent_noncyclic_2gen(g)
    sig = prime_signature(g)
    q_factor_alpha = Fraction(1)
    q_factor_beta = Fraction(1)
    for q in sig.pi2:
        q_factor_alpha *= 1 - Fraction(1, q * q)
        q_factor_beta *= 1 - Fraction(1, q)
    rows = []
    p_list = sig.pi1
    for r in range(len(p_list) + 1):
        for subset in combinations(p_list, r):
            inside = set(subset)
            alpha = Fraction(g.n) * q_factor_alpha
            beta = Fraction(g.n) * q_factor_beta
            for p in p_list:
                if p in inside:
                    alpha *= 1 - Fraction(1, p)
                else:
                    alpha *= Fraction(1, p)
                    beta *= 1 - Fraction(1, p)
            assert alpha.denominator == 1 and beta.denominator == 1, "degree law must be integral"
            rows.append((subset, int(alpha), int(beta)))
    return DegreeTable(tuple(rows))


__all__ = [
    "DegreeTable",
    "ELEMENT_KINDS",
    "GraphKind",
    "build_graph",
    "delta_graph",
    "directed_power_graph",
    "edge_count_identity_holds",
    "element_graph",
    "euler_product_nilpotent",
    "gen_probability",
    "join_graph",
    "nilpotent_degree_table",
    "order_spectrum",
    "prime_graph",
]
