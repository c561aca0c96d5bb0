"""Concrete finite groups as validated Cayley tables.

Elements are dense indices 0..n-1 and every constructor relabels so the
identity sits at index 0.  Groups are immutable once built; derived data is
cached lazily.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .bitsets import full_mask
from .errors import (
    CayleyParseError,
    NotAGroupError,
    NotAnActionError,
    SizeLimitError,
)

DEFAULT_ELEMENT_CAP = 5040

# Direct O(n^3) associativity checking is vectorised but cubic in memory;
# above this order we switch to Light's test on a generating set.
_DIRECT_ASSOC_LIMIT = 200


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class FiniteGroup:
    """Finite group of order ``n`` on elements 0..n-1 with identity 0."""

    def __init__(self, table: np.ndarray, name: str, *, _validated: bool = False):
        if not _validated:
            raise TypeError("use FiniteGroup.from_cayley_table or a named constructor")
        self.n = int(table.shape[0])
        self.name = name
        self.identity = 0
        self._table = table
        # Plain nested lists make single lookups much faster than numpy
        # scalar extraction; skip them for very large tables.
        self._rows: list[list[int]] | None = (
            table.tolist() if self.n <= 1500 else None
        )
        self.inv: list[int] = np.argmax(table == 0, axis=1).tolist()
        self.elem_order: list[int] = self._compute_orders()
        self.meta: dict = {}

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._rows is not None:
            return self._rows[a][b]
        return int(self._table[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv[g])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 * b^-1 * a * b."""
        return self.mul(self.mul(self.mul(self.inv[a], self.inv[b]), a), b)

    def elements(self) -> range:
        return range(self.n)

    @property
    def table(self) -> np.ndarray:
        view = self._table.view()
        view.flags.writeable = False
        return view

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.n})"

    # -- cached structure ----------------------------------------------------

    def _compute_orders(self) -> list[int]:
        orders = [0] * self.n
        divs = _divisors(self.n)
        for a in range(self.n):
            for d in divs:
                if self.power(a, d) == 0:
                    orders[a] = d
                    break
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    @cached_property
    def cyclic_masks(self) -> tuple[int, ...]:
        """cyclic_masks[x] = bitmask of the cyclic subgroup generated by x."""
        masks = []
        for x in range(self.n):
            mask = 1
            y = x
            while y != 0:
                mask |= 1 << y
                y = self.mul(y, x)
            masks.append(mask)
        return tuple(masks)

    def subgroup_closure(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by ``gens``."""
        gens = [g for g in gens if g != 0]
        mask = 1
        if not gens:
            return mask
        frontier = []
        for g in gens:
            if not (mask >> g) & 1:
                mask |= 1 << g
                frontier.append(g)
        # In a finite group the closure under right multiplication by the
        # generators is already the generated subgroup.
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if not (mask >> b) & 1:
                        mask |= 1 << b
                        nxt.append(b)
            frontier = nxt
        return mask

    def pair_closure(self, x: int, y: int) -> int:
        return self.subgroup_closure((x, y))

    def generates(self, x: int, y: int) -> bool:
        return self.pair_closure(x, y) == full_mask(self.n)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_cayley_table(
        cls,
        table: Sequence[Sequence[int]] | np.ndarray,
        name: str = "G",
        cap: int = DEFAULT_ELEMENT_CAP,
    ) -> "FiniteGroup":
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise NotAGroupError("table must be a nonempty square matrix")
        n = arr.shape[0]
        if n > cap:
            raise SizeLimitError(f"order {n} exceeds cap {cap}")
        if arr.min() < 0 or arr.max() >= n:
            raise NotAGroupError("table entries must lie in 0..n-1")

        target = np.arange(n)
        if not (np.array_equal(np.sort(arr, axis=1), np.tile(target, (n, 1)))
                and np.array_equal(np.sort(arr, axis=0), np.tile(target[:, None], (1, n)))):
            raise NotAGroupError("table is not a Latin square")

        identity = None
        for e in range(n):
            if np.array_equal(arr[e], target) and np.array_equal(arr[:, e], target):
                identity = e
                break
        if identity is None:
            raise NotAGroupError("no two-sided identity element")

        if n <= _DIRECT_ASSOC_LIMIT:
            lhs = arr[arr, :]  # lhs[a,b,c] = t[t[a,b],c]
            rhs = arr[:, arr]  # rhs[a,b,c] = t[a,t[b,c]]
            if not np.array_equal(lhs, rhs):
                raise NotAGroupError("operation is not associative")
        else:
            cls._light_associativity_check(arr, identity)

        if not np.all(np.any(arr == identity, axis=1)):
            raise NotAGroupError("some element has no inverse")

        if identity != 0:
            perm = target.copy()
            perm[0], perm[identity] = identity, 0  # involution: old <-> new
            arr = perm[arr[perm][:, perm]]
        return cls(arr.astype(np.int32), name, _validated=True)

    @staticmethod
    def _light_associativity_check(arr: np.ndarray, identity: int) -> None:
        """Light's test: associativity with every generator in the middle.

        Sound because each element of the closure below is a left-associated
        word in the generators.
        """
        n = arr.shape[0]
        gens: list[int] = []
        seen = {identity}
        for x in range(n):
            if x in seen:
                continue
            gens.append(x)
            frontier = list(seen | {x})
            seen.add(x)
            while frontier:
                nxt = []
                for a in frontier:
                    for g in gens:
                        b = int(arr[a, g])
                        if b not in seen:
                            seen.add(b)
                            nxt.append(b)
                frontier = nxt
        for g in gens:
            if not np.array_equal(arr[arr[:, g], :], arr[:, arr[g, :]]):
                raise NotAGroupError("operation is not associative")

    @classmethod
    def _from_trusted_table(cls, arr: np.ndarray, name: str) -> "FiniteGroup":
        return cls(arr.astype(np.int32), name, _validated=True)


# -- named constructors -------------------------------------------------------


def trivial(name: str = "C1") -> FiniteGroup:
    return FiniteGroup._from_trusted_table(np.zeros((1, 1), dtype=np.int32), name)


def cyclic(n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    if n > cap:
        raise SizeLimitError(f"order {n} exceeds cap {cap}")
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return FiniteGroup._from_trusted_table(table, f"C{n}")


def dihedral(m: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Dihedral group of order 2m; element i + m*j is r^i s^j."""
    if m < 2:
        raise ValueError("dihedral(m) needs m >= 2")
    if 2 * m > cap:
        raise SizeLimitError(f"order {2 * m} exceeds cap {cap}")
    n = 2 * m
    table = np.empty((n, n), dtype=np.int32)
    for i1 in range(m):
        for j1 in range(2):
            a = i1 + m * j1
            for i2 in range(m):
                for j2 in range(2):
                    i = (i1 + i2) % m if j1 == 0 else (i1 - i2) % m
                    table[a, i2 + m * j2] = i + m * ((j1 + j2) % 2)
    return FiniteGroup._from_trusted_table(table, f"D{n}")


def quaternion(m: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Dicyclic group of order 4m: <a,b | a^(2m)=1, b^2=a^m, b^-1 a b=a^-1>.

    Named Q<order> when the order is a power of two (generalized quaternion),
    Dic<order> otherwise.
    """
    if m < 2:
        raise ValueError("quaternion(m) needs m >= 2")
    order = 4 * m
    if order > cap:
        raise SizeLimitError(f"order {order} exceeds cap {cap}")
    mm = 2 * m
    table = np.empty((order, order), dtype=np.int32)
    for i1 in range(mm):
        for j1 in range(2):
            a = i1 + mm * j1
            for i2 in range(mm):
                for j2 in range(2):
                    if j1 == 0:
                        i, j = (i1 + i2) % mm, j2
                    else:
                        i, j = (i1 - i2) % mm, 1 + j2
                    if j == 2:
                        i, j = (i + m) % mm, 0
                    table[a, i2 + mm * j2] = i + mm * j
    name = f"Q{order}" if order & (order - 1) == 0 else f"Dic{order}"
    return FiniteGroup._from_trusted_table(table, name)


def from_generators(
    perms: Sequence[Sequence[int]],
    name: str = "G",
    cap: int = DEFAULT_ELEMENT_CAP,
) -> FiniteGroup:
    """Group generated by permutations of 0..d-1, closed Dimino-style."""
    if perms:
        d = len(perms[0])
        gens = []
        for p in perms:
            tp = tuple(p)
            if len(tp) != d or sorted(tp) != list(range(d)):
                raise ValueError(f"not a permutation of 0..{d - 1}: {p!r}")
            gens.append(tp)
    else:
        d, gens = 1, []

    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[g[i]] for i in range(d))
                if y not in index:
                    if len(elems) >= cap:
                        raise SizeLimitError(f"closure exceeds cap {cap}")
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt

    n = len(elems)
    e_arr = np.array(elems, dtype=np.int64)
    keys = e_arr @ (d ** np.arange(d - 1, -1, -1, dtype=np.int64))
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prod_keys = e_arr[i][e_arr] @ (d ** np.arange(d - 1, -1, -1, dtype=np.int64))
        pos = np.searchsorted(sorted_keys, prod_keys)
        table[i] = order[pos]
    group = FiniteGroup._from_trusted_table(table, name)
    group.meta["permutations"] = elems
    return group


def symmetric(k: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if not 1 <= k <= 7:
        raise ValueError("symmetric(k) supports 1 <= k <= 7")
    if k == 1:
        return trivial("S1")
    swap = tuple([1, 0] + list(range(2, k)))
    cycle = tuple(list(range(1, k)) + [0])
    return from_generators([swap, cycle], f"S{k}", cap=cap)


def alternating(k: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    if not 3 <= k <= 7:
        raise ValueError("alternating(k) supports 3 <= k <= 7")
    three = tuple([1, 2, 0] + list(range(3, k)))
    if k % 2 == 1:
        big = tuple(list(range(1, k)) + [0])
    else:
        big = tuple([0] + list(range(2, k)) + [1])
    return from_generators([three, big], f"A{k}", cap=cap)


def direct_product(
    g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ELEMENT_CAP
) -> FiniteGroup:
    n = g.n * h.n
    if n > cap:
        raise SizeLimitError(f"order {n} exceeds cap {cap}")
    tg = g._table.astype(np.int64)
    th = h._table.astype(np.int64)
    table = (tg[:, None, :, None] * h.n + th[None, :, None, :]).reshape(n, n)
    prod = FiniteGroup._from_trusted_table(table, f"{g.name}x{h.name}")
    prod.meta["factors"] = (g.name, h.name)
    prod.meta["left_index"] = [a // h.n for a in range(n)]
    prod.meta["right_index"] = [a % h.n for a in range(n)]
    return prod


def semidirect_product(
    a: FiniteGroup,
    b: FiniteGroup,
    action: Sequence[Sequence[int]],
    name: str | None = None,
    cap: int = DEFAULT_ELEMENT_CAP,
) -> FiniteGroup:
    """Semidirect product A x| B; ``action[y]`` is the automorphism of A
    applied by y, and y -> action[y] must be a homomorphism."""
    n = a.n * b.n
    if n > cap:
        raise SizeLimitError(f"order {n} exceeds cap {cap}")
    phi = np.asarray(action, dtype=np.int64)
    if phi.shape != (b.n, a.n):
        raise NotAnActionError("action must supply one automorphism of A per element of B")
    ta = a._table.astype(np.int64)
    tb = b._table.astype(np.int64)
    ident = np.arange(a.n)
    if not np.array_equal(phi[0], ident):
        raise NotAnActionError("identity of B must act trivially")
    for y in range(b.n):
        if not np.array_equal(np.sort(phi[y]), ident):
            raise NotAnActionError(f"action of element {y} is not a bijection")
        if not np.array_equal(phi[y][ta], ta[np.ix_(phi[y], phi[y])]):
            raise NotAnActionError(f"action of element {y} is not an automorphism")
    for y1 in range(b.n):
        for y2 in range(b.n):
            if not np.array_equal(phi[int(tb[y1, y2])], phi[y1][phi[y2]]):
                raise NotAnActionError("action is not a homomorphism from B")

    # Element (a, y) has index a * |B| + y; (a1,y1)(a2,y2) = (a1 * phi_y1(a2), y1 y2).
    table = np.empty((n, n), dtype=np.int64)
    for a1 in range(a.n):
        for y1 in range(b.n):
            row = np.empty(n, dtype=np.int64)
            for a2 in range(a.n):
                ares = int(ta[a1, phi[y1, a2]])
                row[a2 * b.n:(a2 + 1) * b.n] = ares * b.n + tb[y1]
            table[a1 * b.n + y1] = row
    prod = FiniteGroup._from_trusted_table(table, name or f"{a.name}:{b.name}")
    prod.meta["factors"] = (a.name, b.name)
    prod.meta["normal_index"] = [x // b.n for x in range(n)]
    prod.meta["complement_index"] = [x % b.n for x in range(n)]
    return prod


def cyclic_scalar_action(a: FiniteGroup, b: FiniteGroup, k: int) -> list[list[int]]:
    """Action of cyclic B on cyclic A where the B-generator maps x -> k*x."""
    action = []
    for y in range(b.n):
        # Additive C_b built by cyclic(): element y is the generator to the y.
        mult = pow(k, y, a.n) if a.n > 1 else 1
        action.append([(mult * x) % a.n for x in range(a.n)])
    return action


# -- Cayley-table text format --------------------------------------------------
#
# line 1: n
# next n lines: n space-separated element indices
# optional last line: "name <display name>"


def parse_cayley_text(text: str, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CayleyParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise CayleyParseError(f"first line must be the order, got {lines[0]!r}") from exc
    if n < 1:
        raise CayleyParseError("order must be positive")
    if len(lines) < n + 1:
        raise CayleyParseError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:n + 1]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError as exc:
            raise CayleyParseError(f"non-integer table entry in row {ln!r}") from exc
        if len(row) != n:
            raise CayleyParseError(f"ragged row: expected {n} entries, got {len(row)}")
        rows.append(row)
    name = "imported"
    rest = lines[n + 1:]
    if rest:
        if len(rest) != 1 or not rest[0].startswith("name "):
            raise CayleyParseError("trailing content must be a single 'name <string>' line")
        name = rest[0][5:].strip()
        if not name:
            raise CayleyParseError("empty name")
    return FiniteGroup.from_cayley_table(rows, name, cap=cap)


def format_cayley_text(group: FiniteGroup) -> str:
    out = [str(group.n)]
    for a in range(group.n):
        out.append(" ".join(str(group.mul(a, b)) for b in range(group.n)))
    out.append(f"name {group.name}")
    return "\n".join(out) + "\n"


def load_cayley_file(path: str, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cayley_text(fh.read(), cap=cap)


__all__ = [
    "DEFAULT_ELEMENT_CAP",
    "FiniteGroup",
    "alternating",
    "cyclic",
    "cyclic_scalar_action",
    "dihedral",
    "direct_product",
    "format_cayley_text",
    "from_generators",
    "load_cayley_file",
    "parse_cayley_text",
    "quaternion",
    "semidirect_product",
    "symmetric",
    "trivial",
]
