"""Structure recognition: module/complement decompositions of Frattini-trivial
groups, the disconnection classifier for the non-generating-pair graph, prime
recovery from degree ratios, and lattice-theoretic P-group recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Optional

import numpy as np

from .bitsets import bits, popcount
from .errors import (
    DecompositionNotFoundError,
    NotAnActionError,
    NotTwoGeneratedError,
    UnrecoverableRatioError,
)
from .groups import FiniteGroup, semidirect_product
from .structure import (
    DEFAULT_LATTICE_CAP,
    Subgroup,
    all_subgroups,
    center,
    fitting,
    frattini,
    is_2generated,
    is_cyclic,
    is_elementary_abelian,
    is_supersoluble,
    quotient_group,
    sylow_subgroup,
    _prime_factors,
)


# -- prime-multiset recovery from a (1 - 1/p) product --------------------------------


def recover_primes_from_ratio(q: Fraction, bound: int = 997) -> tuple[int, ...]:
    """The unique sorted prime multiset (a_1..a_r) with prod(1 - 1/a_i) = q.

    Search mirrors induction on the largest prime: in lowest terms the largest
    prime of any solution divides the denominator with exactly its
    multiplicity (it cannot divide any a_i - 1), so every node of the search
    tree is forced and exhausting it is exactly this recursion.
    """
    q = Fraction(q)
    if not 0 < q <= 1:
        raise UnrecoverableRatioError(f"ratio {q} outside (0, 1]")
    acc: list[int] = []
    while q != 1:
        den = q.denominator
        p = max(_prime_factors(den))
        if p > bound:
            raise UnrecoverableRatioError(
                f"denominator prime {p} exceeds search bound {bound}"
            )
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        acc.extend([p] * k)
        q = q / (1 - Fraction(1, p)) ** k
        if q > 1:
            raise UnrecoverableRatioError("ratio is not a product of (1 - 1/p) factors")
    return tuple(sorted(acc))


def ratio_of_primes(primes) -> Fraction:
    value = Fraction(1)
    for p in primes:
        value *= 1 - Fraction(1, p)
    return value


# -- supersoluble module/complement decompositions -----------------------------------


@dataclass
class SupersolubleDecomposition:
    """X = (V_1 x ... x V_t) x| Y with prime-order modules and abelian Y.

    ``action_scalars[i][j]`` is the multiplier by which the j-th element of the
    complement acts on the i-th module, in the field of module_orders[i]
    elements.
    """

    group: FiniteGroup
    modules: tuple[Subgroup, ...]
    module_orders: tuple[int, ...]
    complement: Subgroup
    action_scalars: tuple[tuple[int, ...], ...]
    complement_elements: tuple[int, ...] = field(default=())

    def kernel_indices(self, y_position: int) -> frozenset[int]:
        """Module indices on which the complement element acts trivially."""
        return frozenset(
            i
            for i in range(len(self.modules))
            if self.action_scalars[i][y_position] == 1
        )


def _discrete_log(g: FiniteGroup, base: int, target: int, order: int) -> Optional[int]:
    z = base
    for k in range(1, order):
        if z == target:
            return k
        z = g.mul(z, base)
    return None


def _module_scalars(
    g: FiniteGroup, module_gen: int, prime: int, y_elements
) -> Optional[tuple[int, ...]]:
    """Scalar action of each y on <module_gen>, or None if not by power maps."""
    out = []
    for y in y_elements:
        conj = g.conjugate(y, module_gen)
        k = 0 if conj == 0 else _discrete_log(g, module_gen, conj, prime)
        if k is None or k == 0:
            return None
        out.append(k % prime)
    return tuple(out)


def find_supersoluble_decomposition(x: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SupersolubleDecomposition:
    """Recover X = (V_1 x ... x V_t) x| Y for a 2-generated supersoluble X with
    trivial Frattini subgroup; raises DecompositionNotFoundError otherwise."""
    if not is_supersoluble(x):
        raise DecompositionNotFoundError(f"{x.name} is not supersoluble")
    if not is_2generated(x):
        raise DecompositionNotFoundError(f"{x.name} is not 2-generated")
    if frattini(x, cap=cap).order != 1:
        raise DecompositionNotFoundError(f"{x.name} has nontrivial Frattini subgroup")

    subs = all_subgroups(x, cap=cap)
    fit = fitting(x)
    zen = center(x)

    # W: a complement of the centre inside the Fitting subgroup, normal in X.
    w_candidates = [
        s
        for s in subs
        if s.mask | fit.mask == fit.mask
        and s.mask & zen.mask == 1
        and s.order * zen.order == fit.order
        and s.is_normal
    ]
    for w in w_candidates:
        y_candidates = [
            s
            for s in subs
            if s.order * w.order == x.n and s.mask & w.mask == 1 and s.as_group().is_abelian
        ]
        for y in y_candidates:
            dec = _split_modules(x, w, y)
            if dec is not None:
                return dec
    raise DecompositionNotFoundError(f"no module/complement decomposition of {x.name}")


def _split_modules(
    x: FiniteGroup, w: Subgroup, y: Subgroup
) -> Optional[SupersolubleDecomposition]:
    """Split W into prime-order X-normal modules with distinct scalar actions."""
    y_elements = tuple(bits(y.mask))
    if w.order == 1:
        return SupersolubleDecomposition(x, (), (), y, (), y_elements)

    candidates = []
    seen = set()
    for v in bits(w.mask):
        if v == 0:
            continue
        order = x.elem_order[v]
        if _prime_factors(order) != [order]:
            continue
        mask = x.cyclic_masks[v]
        if mask in seen:
            continue
        seen.add(mask)
        if not all((mask >> x.conjugate(a, v)) & 1 for a in x.elements()):
            continue  # must be normal in X
        scalars = _module_scalars(x, v, order, y_elements)
        if scalars is None:
            continue
        candidates.append((mask, v, order, scalars))
    candidates.sort(key=lambda c: (c[2], c[0]))

    chosen: list[tuple[int, int, int, tuple[int, ...]]] = []

    def extend(start: int, mask_acc: int, order_acc: int) -> bool:
        if order_acc == w.order:
            return True
        for idx in range(start, len(candidates)):
            cmask, cv, corder, cscal = candidates[idx]
            if mask_acc & cmask != 1:
                continue
            if any(corder == o and cscal == s for _, _, o, s in chosen):
                continue  # modules must be pairwise non-isomorphic over Y
            joined = x.subgroup_closure(
                [v for _, v, _, _ in chosen] + [cv]
            )
            if popcount(joined) != order_acc * corder:
                continue
            chosen.append(candidates[idx])
            if extend(idx + 1, joined, order_acc * corder):
                return True
            chosen.pop()
        return False

    if not extend(0, 1, 1):
        return None
    modules = tuple(Subgroup(x, m, (v,)) for m, v, _, _ in chosen)
    return SupersolubleDecomposition(
        x,
        modules,
        tuple(o for _, _, o, _ in chosen),
        y,
        tuple(s for _, _, _, s in chosen),
        y_elements,
    )


def _abelian_product_table(orders: list[int]) -> FiniteGroup:
    """C_{o_1} x ... x C_{o_k} with mixed-radix element indices (last fastest)."""
    n = 1
    for o in orders:
        n *= o
    radix = []
    acc = 1
    for o in reversed(orders):
        radix.append(acc)
        acc *= o
    radix.reverse()

    def encode(parts):
        return sum(p * r for p, r in zip(parts, radix))

    def decode(idx):
        out = []
        for o, r in zip(orders, radix):
            out.append((idx // r) % o)
        return out

    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        pa = decode(a)
        for b in range(n):
            pb = decode(b)
            table[a, b] = encode([(u + v) % o for u, v, o in zip(pa, pb, orders)])
    name = "x".join(f"C{o}" for o in orders) if orders else "C1"
    grp = FiniteGroup._from_trusted_table(table, name)
    grp.meta["cyclic_orders"] = list(orders)
    return grp


def build_supersoluble_instance(
    module_orders: list[int],
    complement_orders: list[int],
    action: list[list[int]],
    name: str | None = None,
) -> FiniteGroup:
    """(C_{r_1} x ... x C_{r_t}) x| Y with Y abelian of the given cyclic factor
    orders; ``action[i][j]`` is the scalar by which the j-th Y-generator acts
    on the i-th module.

    The result must come out 2-generated with trivial Frattini subgroup and
    pairwise non-isomorphic module actions; violations raise NotAnActionError.
    """
    if len(action) != len(module_orders) or any(
        len(row) != len(complement_orders) for row in action
    ):
        raise NotAnActionError("action must be a (modules x complement-generators) matrix")
    for i, r in enumerate(module_orders):
        if _prime_factors(r) != [r]:
            raise NotAnActionError(f"module order {r} is not prime")
        for j, d in enumerate(complement_orders):
            if pow(action[i][j] % r, d, r) != 1:
                raise NotAnActionError(
                    f"scalar {action[i][j]} has order not dividing {d} mod {r}"
                )

    a_grp = _abelian_product_table(list(module_orders))
    y_grp = _abelian_product_table(list(complement_orders))
    t = len(module_orders)

    y_orders = list(complement_orders)
    radix = []
    acc = 1
    for o in reversed(y_orders):
        radix.append(acc)
        acc *= o
    radix.reverse()

    a_radix = []
    acc = 1
    for o in reversed(module_orders):
        a_radix.append(acc)
        acc *= o
    a_radix.reverse()

    maps = []
    for y in range(y_grp.n):
        exps = [(y // r) % o for o, r in zip(y_orders, radix)]
        mults = []
        for i, r in enumerate(module_orders):
            m = 1
            for j, e in enumerate(exps):
                m = (m * pow(action[i][j] % r, e, r)) % r
            mults.append(m)
        phi = []
        for a in range(a_grp.n):
            parts = [(a // ar) % o for o, ar in zip(module_orders, a_radix)]
            phi.append(
                sum(((m * p) % o) * ar for m, p, o, ar in zip(mults, parts, module_orders, a_radix))
            )
        maps.append(phi)

    grp = semidirect_product(a_grp, y_grp, maps, name=name or f"({a_grp.name}):({y_grp.name})")
    dec = None
    try:
        dec = find_supersoluble_decomposition(grp)
    except DecompositionNotFoundError as exc:
        raise NotAnActionError(f"built group admits no valid decomposition: {exc}") from exc
    if len(dec.modules) != t:
        raise NotAnActionError(
            f"built group decomposes with {len(dec.modules)} modules, expected {t}"
        )
    return grp


# -- classifier for the disconnection shapes of the non-generating graph --------------


@dataclass(frozen=True)
class DeltaClass:
    """Why (or whether) the non-generating-pair graph can disconnect.

    tag is one of 'cyclic', 'p-group', 'prime-complement' (modules acted on by
    C_p), 'biprime-complement' (modules acted on by C_p x C_p with central
    C_p), or 'connected'.
    """

    tag: str
    detail: dict = field(default_factory=dict)

    @property
    def predicts_disconnected(self) -> bool:
        return self.tag != "connected"


def _y_invariant_subgroups(q: FiniteGroup, w_mask: int, y_gens) -> list[int]:
    out = []
    for s in all_subgroups(q):
        if s.mask | w_mask != w_mask or s.order == 1:
            continue
        if all((s.mask >> q.conjugate(y, v)) & 1 for y in y_gens for v in s.elements()):
            out.append(s.mask)
    return sorted(out, key=lambda m: (popcount(m), m))


def _module_isomorphic_over_y(q: FiniteGroup, m1: int, m2: int, y_gens) -> bool:
    """Equivariant isomorphism test between two abelian module subgroups."""
    if popcount(m1) != popcount(m2):
        return False
    elems1 = [v for v in bits(m1)]
    elems2 = [v for v in bits(m2)]
    gens1: list[int] = []
    mask = 1
    for v in elems1:
        if not (mask >> v) & 1:
            gens1.append(v)
            mask = q.subgroup_closure(gens1)
        if mask == m1:
            break

    def extend(images: list[int]) -> Optional[dict[int, int]]:
        mapping = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                fa = mapping[a]
                for gi, hi in zip(gens1, images):
                    b = q.mul(a, gi)
                    fb = q.mul(fa, hi)
                    seen = mapping.get(b)
                    if seen is None:
                        mapping[b] = fb
                        nxt.append(b)
                    elif seen != fb:
                        return None
            frontier = nxt
        return mapping

    for images in iproduct(elems2, repeat=len(gens1)):
        mapping = extend(list(images))
        if mapping is None or len(mapping) != len(elems1):
            continue
        if set(mapping.values()) != set(elems2):
            continue
        if all(
            mapping[q.conjugate(y, v)] == q.conjugate(y, mapping[v])
            for y in y_gens
            for v in elems1
        ):
            return True
    return False


def _modules_decompose(q: FiniteGroup, w: Subgroup, y: Subgroup) -> Optional[list[int]]:
    """W as a direct sum of irreducible nontrivial pairwise non-Y-isomorphic
    Y-submodules; returns the module masks or None."""
    if not w.as_group().is_abelian:
        return None
    y_gens = y.gens if y.gens else tuple(y.elements())
    invariant = _y_invariant_subgroups(q, w.mask, y_gens)
    irreducible = []
    for m in invariant:
        if any(o != m and o | m == m for o in invariant):
            continue  # has a proper nontrivial invariant subgroup
        # the action must be nontrivial on each module
        if all(q.conjugate(yy, v) == v for yy in y_gens for v in bits(m)):
            continue
        irreducible.append(m)

    chosen: list[int] = []

    def extend(start: int, mask_acc: int, order_acc: int) -> bool:
        if order_acc == w.order:
            return True
        for idx in range(start, len(irreducible)):
            m = irreducible[idx]
            if mask_acc & m != 1:
                continue
            joined = q.subgroup_closure(
                [v for c in chosen + [m] for v in bits(c) if v]
            )
            if popcount(joined) != order_acc * popcount(m):
                continue
            if any(_module_isomorphic_over_y(q, c, m, y_gens) for c in chosen):
                continue
            chosen.append(m)
            if extend(idx + 1, joined, order_acc * popcount(m)):
                return True
            chosen.pop()
        return False

    if extend(0, 1, 1):
        return list(chosen)
    return None


def classify_frattini_quotient(
    g: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP
) -> DeltaClass:
    """Classify G by the shape of G/Phi(G) that governs disconnection of the
    non-generating-pair graph."""
    if not is_2generated(g):
        raise NotTwoGeneratedError(f"{g.name} is not 2-generated")
    if is_cyclic(g):
        return DeltaClass("cyclic")
    if len(_prime_factors(g.n)) == 1:
        return DeltaClass("p-group", {"p": _prime_factors(g.n)[0]})

    quo = quotient_group(g, Subgroup(g, frattini(g, cap=cap).mask))
    subs = all_subgroups(quo, cap=cap)

    for w in subs:
        if w.order in (1, quo.n) or not w.is_normal:
            continue
        for y in subs:
            if y.order * w.order != quo.n or y.mask & w.mask != 1:
                continue
            primes = _prime_factors(y.order)
            if len(primes) != 1:
                continue
            p = primes[0]
            y_group = y.as_group()
            if y.order == p:
                shape = "prime-complement"
            elif y.order == p * p and all(o in (1, p) for o in y_group.elem_order):
                shape = "biprime-complement"
            else:
                continue
            modules = _modules_decompose(quo, w, y)
            if modules is None:
                continue
            if shape == "biprime-complement":
                centralizer_mask = 0
                for yy in bits(y.mask):
                    if all(quo.conjugate(yy, v) == v for v in bits(w.mask)):
                        centralizer_mask |= 1 << yy
                if popcount(centralizer_mask) != p:
                    continue
            return DeltaClass(
                shape,
                {
                    "p": p,
                    "module_orders": [popcount(m) for m in modules],
                    "complement_mask": y.mask,
                    "w_mask": w.mask,
                },
            )
    return DeltaClass("connected")


# -- P-groups (subgroup-lattice sense) and coprime direct factorisation ---------------


def is_p_group(g: FiniteGroup) -> bool:
    """P-group in the subgroup-lattice sense: non-cyclic elementary abelian, or
    elementary abelian p-group extended by C_q (q != p prime) acting by a
    nontrivial power automorphism."""
    if is_elementary_abelian(g) and not is_cyclic(g):
        return True
    primes = sorted(set(_prime_factors(g.n)))
    if len(primes) != 2:
        return False
    counts = {p: 0 for p in primes}
    n = g.n
    for p in primes:
        while n % p == 0:
            counts[p] += 1
            n //= p
    singles = [p for p in primes if counts[p] == 1]
    if not singles:
        return False
    for q in singles:
        p = next(r for r in primes if r != q)
        sylow_p = sylow_subgroup(g, p)
        if not sylow_p.is_normal:
            continue
        p_part = sylow_p.as_group()
        if not is_elementary_abelian(p_part):
            continue
        y = next(a for a in g.elements() if g.elem_order[a] == q)
        x0 = next(iter(v for v in sylow_p.elements() if v != 0))
        conj = g.conjugate(y, x0)
        k = None
        z = x0
        for e in range(1, p):
            if z == conj:
                k = e
                break
            z = g.mul(z, x0)
        if k is None or k == 1:
            continue
        if all(g.conjugate(y, v) == g.power(v, k) for v in sylow_p.elements()):
            return True
    return False


def coprime_direct_factors(g: FiniteGroup) -> list[FiniteGroup]:
    """Finest decomposition of G as an internal direct product of subgroups of
    pairwise coprime orders (Hall-part splitting).

    A normal Hall subgroup for a prime set is exactly the set of elements
    whose orders use only those primes, so a split exists iff both part-sets
    are subgroups of the right orders.
    """
    primes = sorted(set(_prime_factors(g.n)))
    if len(primes) <= 1:
        return [g]

    def part_mask(prime_subset: frozenset[int]) -> int:
        mask = 0
        for x in g.elements():
            if all(p in prime_subset for p in _prime_factors(g.elem_order[x])):
                mask |= 1 << x
        return mask

    def part_order(prime_subset: frozenset[int]) -> int:
        order = 1
        n = g.n
        for p in primes:
            while n % p == 0:
                if p in prime_subset:
                    order *= p
                n //= p
        return order

    subsets = []
    for size in range(1, len(primes)):
        subsets.extend(
            frozenset(c) for c in combinations(primes, size)
        )
    for left in subsets:
        right = frozenset(primes) - left
        lm, rm = part_mask(left), part_mask(right)
        if popcount(lm) != part_order(left) or popcount(rm) != part_order(right):
            continue
        if g.subgroup_closure(list(bits(lm))) != lm:
            continue
        if g.subgroup_closure(list(bits(rm))) != rm:
            continue
        left_grp = Subgroup(g, lm).as_group()
        right_grp = Subgroup(g, rm).as_group()
        return coprime_direct_factors(left_grp) + coprime_direct_factors(right_grp)
    return [g]


__all__ = [
    "DeltaClass",
    "SupersolubleDecomposition",
    "build_supersoluble_instance",
    "classify_frattini_quotient",
    "coprime_direct_factors",
    "find_supersoluble_decomposition",
    "is_p_group",
    "ratio_of_primes",
    "recover_primes_from_ratio",
]
