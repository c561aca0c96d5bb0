"""Subgroups, characteristic subgroups, and group-theoretic predicates.

Everything here treats ``FiniteGroup`` instances as immutable; expensive
results are memoised on a per-group cache dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .bitsets import bits, full_mask, mask_of, popcount
from .errors import (
    NotADivisorError,
    NotNormalError,
    SizeLimitError,
)
from .groups import FiniteGroup

DEFAULT_LATTICE_CAP = 48


def _cache(group: FiniteGroup) -> dict:
    cache = group.__dict__.get("_structure_cache")
    if cache is None:
        cache = group.__dict__["_structure_cache"] = {}
    return cache


class Subgroup:
    """Subset of a parent group's elements, closed under product and inverse."""

    def __init__(self, parent: FiniteGroup, mask: int, gens: tuple[int, ...] = ()):
        self.parent = parent
        self.mask = mask
        self.gens = gens
        self.order = popcount(mask)

    def elements(self) -> list[int]:
        return list(bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> x) & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.mask == self.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name})"

    @property
    def is_normal(self) -> bool:
        cached = self.__dict__.get("_is_normal")
        if cached is None:
            g = self.parent
            members = self.gens if self.gens else tuple(self.elements())
            cached = all(
                g.conjugate(a, x) in self for a in g.elements() for x in members
            )
            self.__dict__["_is_normal"] = cached
        return cached

    def is_proper(self) -> bool:
        return self.order < self.parent.n

    def validate(self) -> None:
        """Check the closure invariants (used by the test-suite, not hot paths)."""
        g = self.parent
        assert 0 in self, "identity missing"
        elems = self.elements()
        for a in elems:
            assert g.inv[a] in self, "not closed under inverse"
            for b in elems:
                assert g.mul(a, b) in self, "not closed under product"
        assert g.n % self.order == 0, "Lagrange violated"

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; meta['element_map'] maps the new
        indices back to parent elements."""
        cached = self.__dict__.get("_as_group")
        if cached is None:
            cached = _mask_as_group(self.parent, self.mask)
            self.__dict__["_as_group"] = cached
        return cached


def _mask_as_group(g: FiniteGroup, mask: int) -> FiniteGroup:
    import numpy as np

    elems = list(bits(mask))  # ascending, so identity 0 stays at index 0
    index = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    table = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(elems):
        row = table[i]
        for j, b in enumerate(elems):
            row[j] = index[g.mul(a, b)]
    sub = FiniteGroup._from_trusted_table(table, f"{g.name}|{k}")
    sub.meta["element_map"] = elems
    return sub


# -- generated subgroups -------------------------------------------------------


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = tuple(sorted(set(gens)))
    return Subgroup(g, g.subgroup_closure(gens), gens)


def centralizer(g: FiniteGroup, x: int) -> Subgroup:
    mask = mask_of(a for a in g.elements() if g.mul(a, x) == g.mul(x, a))
    return Subgroup(g, mask)


def center(g: FiniteGroup) -> Subgroup:
    cache = _cache(g)
    if "center" not in cache:
        mask = full_mask(g.n)
        for x in g.elements():
            mask &= centralizer(g, x).mask
            if mask == 1:
                break
        cache["center"] = mask
    return Subgroup(g, cache["center"])


def conjugacy_classes(g: FiniteGroup) -> list[int]:
    """Class bitmasks, ordered by least member."""
    cache = _cache(g)
    if "classes" not in cache:
        seen = 0
        classes = []
        for x in g.elements():
            if (seen >> x) & 1:
                continue
            mask = mask_of(g.conjugate(a, x) for a in g.elements())
            classes.append(mask)
            seen |= mask
        cache["classes"] = classes
    return cache["classes"]


def conjugacy_class_size_multiset(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(sorted(popcount(c) for c in conjugacy_classes(g)))


def normal_closure(g: FiniteGroup, x: int) -> Subgroup:
    cls = [g.conjugate(a, x) for a in g.elements()]
    gens = tuple(sorted(set(cls)))
    return Subgroup(g, g.subgroup_closure(gens), gens)


# -- the subgroup lattice --------------------------------------------------------


def all_subgroups(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup, found bottom-up from cyclic subgroups by iterated joins."""
    if g.n > cap:
        raise SizeLimitError(f"subgroup enumeration capped at order {cap}, got {g.n}")
    cache = _cache(g)
    if "lattice" not in cache:
        known: dict[int, tuple[int, ...]] = {1: ()}
        for x in g.elements():
            mask = g.cyclic_masks[x]
            if mask not in known:
                known[mask] = (x,)
        queue = sorted(known)
        while queue:
            fresh = []
            for mask in queue:
                gens = known[mask]
                for x in g.elements():
                    if (mask >> x) & 1:
                        continue
                    joined_gens = gens + (x,)
                    joined = g.subgroup_closure(joined_gens)
                    if joined not in known:
                        known[joined] = joined_gens
                        fresh.append(joined)
            queue = fresh
        cache["lattice"] = sorted(known.items(), key=lambda kv: (popcount(kv[0]), kv[0]))
    return [Subgroup(g, mask, gens) for mask, gens in cache["lattice"]]


def maximal_subgroups(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    subs = all_subgroups(g, cap=cap)
    proper = [s for s in subs if s.is_proper()]
    maximal = []
    for s in proper:
        if not any(o is not s and s.mask | o.mask == o.mask for o in proper):
            maximal.append(s)
    return maximal


def frattini(g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> Subgroup:
    """Intersection of the maximal subgroups (the whole group when trivial)."""
    if g.n == 1:
        return Subgroup(g, 1)
    mask = full_mask(g.n)
    for m in maximal_subgroups(g, cap=cap):
        mask &= m.mask
    return Subgroup(g, mask)


# -- series and characteristic subgroups -----------------------------------------


def commutator_subgroup_mask(g: FiniteGroup, mask_a: int, mask_b: int) -> int:
    gens = {
        g.commutator(a, b) for a in bits(mask_a) for b in bits(mask_b)
    }
    gens.discard(0)
    return g.subgroup_closure(sorted(gens))


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    whole = full_mask(g.n)
    return Subgroup(g, commutator_subgroup_mask(g, whole, whole))


def hypercenter(g: FiniteGroup) -> Subgroup:
    """Terminal term of the upper central series.

    Uses the preimage characterisation: Z_{i+1} = {x : [x, y] in Z_i for all y},
    which is the pullback of the centre of G/Z_i without materialising the
    quotient.
    """
    current = 1
    while True:
        nxt = mask_of(
            x
            for x in g.elements()
            if all((current >> g.commutator(x, y)) & 1 for y in g.elements())
        )
        if nxt == current:
            return Subgroup(g, current)
        current = nxt


def fitting(g: FiniteGroup) -> Subgroup:
    """Largest nilpotent normal subgroup, as the join of the nilpotent normal
    closures of single elements; the result is asserted nilpotent."""
    cache = _cache(g)
    if "fitting" not in cache:
        gens: list[int] = []
        seen_masks = set()
        for cls_mask in conjugacy_classes(g):
            x = next(bits(cls_mask))
            closure = normal_closure(g, x)
            if closure.mask in seen_masks:
                continue
            seen_masks.add(closure.mask)
            if is_nilpotent_mask(g, closure.mask):
                gens.extend(closure.gens)
        mask = g.subgroup_closure(sorted(set(gens)))
        assert is_nilpotent_mask(g, mask), "join of nilpotent normals must be nilpotent"
        cache["fitting"] = mask
    return Subgroup(g, cache["fitting"])


def quotient_group(g: FiniteGroup, n: Subgroup) -> FiniteGroup:
    """Quotient by a normal subgroup; meta carries the projection map."""
    import numpy as np

    if n.parent is not g:
        raise NotNormalError("subgroup belongs to a different group")
    if not n.is_normal:
        raise NotNormalError(f"subgroup of order {n.order} is not normal in {g.name}")
    proj = [-1] * g.n
    reps: list[int] = []
    members = n.elements()
    for x in g.elements():
        if proj[x] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        for m in members:
            proj[g.mul(x, m)] = cid
    k = len(reps)
    table = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i, j] = proj[g.mul(a, b)]
    quo = FiniteGroup._from_trusted_table(table, f"{g.name}/{n.order}")
    quo.meta["projection"] = proj
    quo.meta["coset_reps"] = reps
    return quo


# -- Sylow subgroups and Engel iteration ------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_subgroup(g: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown from a p-element by normalizer extension."""
    if p < 2 or _prime_factors(p) != [p]:
        raise NotADivisorError(f"{p} is not prime")
    if g.n % p != 0:
        raise NotADivisorError(f"{p} does not divide |{g.name}| = {g.n}")
    cache = _cache(g).setdefault("sylow", {})
    if p in cache:
        mask, gens = cache[p]
        return Subgroup(g, mask, gens)

    target = 1
    m = g.n
    while m % p == 0:
        target *= p
        m //= p

    x = next(a for a in g.elements() if g.elem_order[a] % p == 0)
    x = g.power(x, g.elem_order[x] // p)
    mask = g.cyclic_masks[x]
    gens = [x]
    while popcount(mask) < target:
        # a normalizes P as soon as it conjugates the generators into P.
        normalizer = [
            a
            for a in g.elements()
            if all((mask >> g.conjugate(a, s)) & 1 for s in gens)
        ]
        extended = False
        for y in normalizer:
            if (mask >> y) & 1:
                continue
            # y extends P iff the coset yP has order p in N/P.
            t = 1
            z = y
            while not (mask >> z) & 1:
                z = g.mul(z, y)
                t += 1
            if t == p:
                gens.append(y)
                mask = g.subgroup_closure(gens)
                extended = True
                break
        if not extended:  # pragma: no cover - impossible for genuine groups
            raise RuntimeError("Sylow extension failed")
    cache[p] = (mask, tuple(gens))
    return Subgroup(g, mask, tuple(gens))


def engel_reaches_identity(g: FiniteGroup, x: int, y: int) -> bool:
    """Iterate z <- [z, y] from z = x; True iff the identity is reached.

    Total: the orbit of a deterministic self-map is eventually periodic, so a
    revisit without hitting the identity settles the answer.
    """
    z = x
    seen = 1 << x
    while True:
        z = g.commutator(z, y)
        if z == 0:
            return True
        if (seen >> z) & 1:
            return False
        seen |= 1 << z


# -- predicates -------------------------------------------------------------------


def is_abelian(g: FiniteGroup) -> bool:
    return g.is_abelian


def is_cyclic(g: FiniteGroup) -> bool:
    return g.n in g.elem_order or g.n == 1


def is_nilpotent(g: FiniteGroup) -> bool:
    """Every Sylow subgroup normal."""
    cache = _cache(g)
    if "nilpotent" not in cache:
        cache["nilpotent"] = all(
            sylow_subgroup(g, p).is_normal for p in _prime_factors(g.n)
        )
    return cache["nilpotent"]


def is_nilpotent_mask(g: FiniteGroup, mask: int) -> bool:
    """Nilpotency of the subgroup given by ``mask``, memoised per group."""
    if mask == full_mask(g.n):
        return is_nilpotent(g)
    cache = _cache(g).setdefault("nilpotent_masks", {})
    if mask not in cache:
        cache[mask] = is_nilpotent(_mask_as_group(g, mask))
    return cache[mask]


def is_soluble(g: FiniteGroup) -> bool:
    cache = _cache(g)
    if "soluble" not in cache:
        whole = full_mask(g.n)
        current = whole
        while True:
            nxt = commutator_subgroup_mask(g, current, current)
            if nxt == current:
                break
            current = nxt
        cache["soluble"] = current == 1
    return cache["soluble"]


def is_soluble_mask(g: FiniteGroup, mask: int) -> bool:
    if mask == full_mask(g.n):
        return is_soluble(g)
    cache = _cache(g).setdefault("soluble_masks", {})
    if mask not in cache:
        current = mask
        while True:
            nxt = commutator_subgroup_mask(g, current, current)
            if nxt == current:
                break
            current = nxt
        cache[mask] = current == 1
    return cache[mask]


def _prime_order_normal_masks(g: FiniteGroup) -> list[tuple[int, int]]:
    """(generator, mask) for each normal subgroup of prime order."""
    out = []
    seen = set()
    for x in g.elements():
        order = g.elem_order[x]
        if order < 2 or _prime_factors(order) != [order]:
            continue
        mask = g.cyclic_masks[x]
        if mask in seen:
            continue
        seen.add(mask)
        if all((mask >> g.conjugate(a, x)) & 1 for a in g.elements()):
            out.append((x, mask))
    return out


def is_supersoluble(g: FiniteGroup) -> bool:
    """Recursion on a normal subgroup of prime order.

    Supersoluble groups are quotient-closed, so the first candidate that
    yields a supersoluble quotient settles the positive case.
    """
    cache = _cache(g)
    if "supersoluble" not in cache:
        if g.n == 1:
            result = True
        else:
            result = False
            for x, mask in _prime_order_normal_masks(g):
                quo = quotient_group(g, Subgroup(g, mask, (x,)))
                if is_supersoluble(quo):
                    result = True
                    break
        cache["supersoluble"] = result
    return cache["supersoluble"]


def is_2generated(g: FiniteGroup) -> bool:
    cache = _cache(g)
    if "two_generated" not in cache:
        whole = full_mask(g.n)
        if g.n == 1 or any(m == whole for m in g.cyclic_masks):
            cache["two_generated"] = True
        else:
            cache["two_generated"] = any(
                g.pair_closure(x, y) == whole
                for x in g.elements()
                for y in range(x + 1, g.n)
            )
    return cache["two_generated"]


def is_ac_group(g: FiniteGroup) -> bool:
    """Centralizers of all non-central elements are abelian."""
    z = center(g).mask
    checked = set()
    for x in g.elements():
        if (z >> x) & 1:
            continue
        mask = centralizer(g, x).mask
        if mask in checked:
            continue
        checked.add(mask)
        elems = list(bits(mask))
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                if g.mul(a, b) != g.mul(b, a):
                    return False
    return True


def is_elementary_abelian(g: FiniteGroup) -> bool:
    if not g.is_abelian:
        return False
    if g.n == 1:
        return True
    primes = _prime_factors(g.n)
    return len(primes) == 1 and all(
        o in (1, primes[0]) for o in g.elem_order
    )


@dataclass(frozen=True)
class PrimeSignature:
    """Primes dividing the order, split by whether the Sylow subgroup is cyclic."""

    primes: tuple[int, ...]
    pi1: tuple[int, ...]  # cyclic Sylow subgroup
    pi2: tuple[int, ...]  # non-cyclic Sylow subgroup


def prime_signature(g: FiniteGroup) -> PrimeSignature:
    pi1, pi2 = [], []
    for p in _prime_factors(g.n):
        sylow = sylow_subgroup(g, p)
        if is_cyclic(sylow.as_group()):
            pi1.append(p)
        else:
            pi2.append(p)
    return PrimeSignature(
        tuple(sorted(pi1 + pi2)), tuple(sorted(pi1)), tuple(sorted(pi2))
    )


def order_spectrum(g: FiniteGroup) -> tuple[int, ...]:
    """Multiset of element orders, sorted ascending."""
    return tuple(sorted(g.elem_order))


# -- group isomorphism (Cayley-table backtracking) ---------------------------------


def _generating_sequence(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    mask = 1
    whole = full_mask(g.n)
    order = sorted(g.elements(), key=lambda x: (-g.elem_order[x], x))
    for x in order:
        if (mask >> x) & 1:
            continue
        gens.append(x)
        mask = g.subgroup_closure(gens)
        if mask == whole:
            break
    return gens


def _extend_map(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]):
    """Map the subgroup generated by ``gens`` along gens -> imgs; None on conflict."""
    mapping = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            fa = mapping[a]
            for gi, hi in zip(gens, imgs):
                b = g.mul(a, gi)
                fb = h.mul(fa, hi)
                known = mapping.get(b)
                if known is None:
                    mapping[b] = fb
                    nxt.append(b)
                elif known != fb:
                    return None
        frontier = nxt
    if len(set(mapping.values())) != len(mapping):
        return None
    return mapping


def group_isomorphic(g: FiniteGroup, h: FiniteGroup) -> Optional[list[int]]:
    """An isomorphism g -> h as an index map, or None.

    Generator-image backtracking guided by element orders and class sizes;
    meant for desk-scale orders.
    """
    if g.n != h.n or order_spectrum(g) != order_spectrum(h):
        return None
    if g.is_abelian != h.is_abelian:
        return None
    if conjugacy_class_size_multiset(g) != conjugacy_class_size_multiset(h):
        return None

    gens = _generating_sequence(g)
    h_by_order: dict[int, list[int]] = {}
    for x in h.elements():
        h_by_order.setdefault(h.elem_order[x], []).append(x)

    def class_size(grp: FiniteGroup, x: int) -> int:
        return popcount(next(c for c in conjugacy_classes(grp) if (c >> x) & 1))

    def backtrack(i: int, imgs: list[int]):
        if i == len(gens):
            mapping = _extend_map(g, h, gens, imgs)
            if mapping is None or len(mapping) != g.n:
                return None
            out = [mapping[x] for x in range(g.n)]
            for a in range(g.n):
                for b in range(g.n):
                    if out[g.mul(a, b)] != h.mul(out[a], out[b]):
                        return None
            return out
        gi = gens[i]
        want = class_size(g, gi)
        for hi in h_by_order.get(g.elem_order[gi], []):
            if class_size(h, hi) != want:
                continue
            if _extend_map(g, h, gens[: i + 1], imgs + [hi]) is None:
                continue
            found = backtrack(i + 1, imgs + [hi])
            if found is not None:
                return found
        return None

    return backtrack(0, [])


__all__ = [
    "DEFAULT_LATTICE_CAP",
    "PrimeSignature",
    "Subgroup",
    "all_subgroups",
    "center",
    "centralizer",
    "commutator_subgroup_mask",
    "conjugacy_class_size_multiset",
    "conjugacy_classes",
    "derived_subgroup",
    "engel_reaches_identity",
    "fitting",
    "frattini",
    "generated_subgroup",
    "group_isomorphic",
    "hypercenter",
    "is_2generated",
    "is_abelian",
    "is_ac_group",
    "is_cyclic",
    "is_elementary_abelian",
    "is_nilpotent",
    "is_nilpotent_mask",
    "is_soluble",
    "is_soluble_mask",
    "is_supersoluble",
    "maximal_subgroups",
    "normal_closure",
    "order_spectrum",
    "prime_signature",
    "quotient_group",
    "sylow_subgroup",
]
