"""Simple graphs and digraphs over labelled vertices, adjacency as bitmask rows."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .bitsets import bits, full_mask, popcount


class SimpleGraph:
    """Irreflexive symmetric adjacency on vertices 0..m-1."""

    def __init__(self, m: int, adj: Sequence[int], labels: Sequence[str] | None = None):
        self.m = m
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(m))
        if len(self.adj) != m or len(self.labels) != m:
            raise ValueError("adjacency/labels length must equal vertex count")

    @classmethod
    def from_edges(
        cls, m: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
    ) -> "SimpleGraph":
        adj = [0] * m
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(m, adj, labels)

    def validate(self) -> None:
        for v in range(self.m):
            assert not (self.adj[v] >> v) & 1, "self-loop"
            for u in bits(self.adj[v]):
                assert (self.adj[u] >> v) & 1, "asymmetric adjacency"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.m == other.m
            and self.adj == other.adj
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.m, self.adj))

    def __repr__(self) -> str:
        return f"SimpleGraph(m={self.m}, edges={self.edge_count()})"

    # -- statistics --

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.adj]

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def is_regular(self) -> bool:
        degs = self.degrees()
        return self.m == 0 or all(d == degs[0] for d in degs)

    def is_complete(self) -> bool:
        return all(self.degree(v) == self.m - 1 for v in range(self.m))

    # -- connectivity --

    def connected_components(self) -> list[tuple[int, ...]]:
        remaining = full_mask(self.m)
        components = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                for v in bits(frontier):
                    grow |= self.adj[v]
                frontier = grow & ~comp
                comp |= grow
            comp &= full_mask(self.m)
            components.append(tuple(bits(comp)))
            remaining &= ~comp
        return components

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.m) if self.adj[v] == 0)

    def universal_vertices(self) -> tuple[int, ...]:
        want = full_mask(self.m)
        return tuple(v for v in range(self.m) if self.adj[v] == want ^ (1 << v))

    # -- derived graphs --

    def complement(self) -> "SimpleGraph":
        whole = full_mask(self.m)
        adj = [whole ^ (1 << v) ^ self.adj[v] for v in range(self.m)]
        return SimpleGraph(self.m, adj, self.labels)

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        adj = [0] * len(vertices)
        for i, v in enumerate(vertices):
            for u in bits(self.adj[v]):
                j = pos.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        return SimpleGraph(len(vertices), adj, [self.labels[v] for v in vertices])

    def permuted(self, perm: Sequence[int]) -> "SimpleGraph":
        """Relabelled copy; vertex v moves to position perm[v]."""
        adj = [0] * self.m
        labels = [""] * self.m
        for v in range(self.m):
            labels[perm[v]] = self.labels[v]
            for u in bits(self.adj[v]):
                adj[perm[v]] |= 1 << perm[u]
        return SimpleGraph(self.m, adj, labels)


class DiGraph:
    """Directed graph without self-arcs; ``out[v]`` is the arc-target bitmask."""

    def __init__(self, m: int, out: Sequence[int], labels: Sequence[str] | None = None):
        self.m = m
        self.out = tuple(out)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(m))
        if len(self.out) != m or len(self.labels) != m:
            raise ValueError("arc/labels length must equal vertex count")

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def out_degree(self, v: int) -> int:
        return popcount(self.out[v])

    def in_degree(self, v: int) -> int:
        return sum(1 for u in range(self.m) if (self.out[u] >> v) & 1)

    def arc_count(self) -> int:
        return sum(popcount(row) for row in self.out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiGraph)
            and self.m == other.m
            and self.out == other.out
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"DiGraph(m={self.m}, arcs={self.arc_count()})"
