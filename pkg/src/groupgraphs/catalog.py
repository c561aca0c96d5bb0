"""Named group constructors, the group-spec grammar, and catalog resolution.

Grammar: ``C<order>``, ``D<order>`` (dihedral, by order), ``Q<order>`` /
``Dic<order>`` (dicyclic, by order), ``S<degree>``, ``A<degree>``, the
Frobenius groups ``F20`` and ``F21``, and products of those joined with ``x``
(e.g. ``S3xC6``).  Further names can come from config-defined semidirect
products or imported Cayley-table files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .errors import GroupGraphsError, SizeLimitError
from .groups import (
    DEFAULT_ELEMENT_CAP,
    FiniteGroup,
    alternating,
    cyclic,
    cyclic_scalar_action,
    dihedral,
    direct_product,
    load_cayley_file,
    quaternion,
    semidirect_product,
    symmetric,
)


class GroupSpecError(GroupGraphsError):
    """A group spec token does not parse."""


def frobenius20(cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    c5, c4 = cyclic(5, cap=cap), cyclic(4, cap=cap)
    return semidirect_product(c5, c4, cyclic_scalar_action(c5, c4, 2), name="F20", cap=cap)


def frobenius21(cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    c7, c3 = cyclic(7, cap=cap), cyclic(3, cap=cap)
    return semidirect_product(c7, c3, cyclic_scalar_action(c7, c3, 2), name="F21", cap=cap)


def heisenberg27(cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Nonabelian group of order 27 and exponent 3: C3^2 extended by a shear."""
    base = direct_product(cyclic(3, cap=cap), cyclic(3, cap=cap), cap=cap)
    c3 = cyclic(3, cap=cap)
    action = []
    for z in range(3):
        # (a, b) -> (a, z*a + b) on indices 3a + b
        action.append([3 * a + ((z * a + b) % 3) for a in range(3) for b in range(3)])
    return semidirect_product(base, c3, action, name="He3", cap=cap)


def modular27(cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    """Nonabelian group of order 27 with an order-9 element: C9 x| C3."""
    c9, c3 = cyclic(9, cap=cap), cyclic(3, cap=cap)
    return semidirect_product(c9, c3, cyclic_scalar_action(c9, c3, 4), name="M27", cap=cap)


_TOKEN = re.compile(r"^(C|D|Q|Dic|S|A|F)(\d+)$")


def _named_group(token: str, cap: int) -> FiniteGroup:
    m = _TOKEN.match(token)
    if not m:
        raise GroupSpecError(f"unrecognised group token {token!r}")
    family, num = m.group(1), int(m.group(2))
    if family == "C":
        if num < 1:
            raise GroupSpecError("cyclic order must be >= 1")
        return cyclic(num, cap=cap)
    if family == "D":
        if num < 4 or num % 2:
            raise GroupSpecError(f"D{num}: dihedral groups are named by even order >= 4")
        return dihedral(num // 2, cap=cap)
    if family in ("Q", "Dic"):
        if num < 8 or num % 4:
            raise GroupSpecError(f"{token}: dicyclic groups are named by order 4m >= 8")
        return quaternion(num // 4, cap=cap)
    if family == "S":
        if not 1 <= num <= 7:
            raise GroupSpecError("S<degree> supports degrees 1..7")
        return symmetric(num, cap=cap)
    if family == "A":
        if not 3 <= num <= 7:
            raise GroupSpecError("A<degree> supports degrees 3..7")
        return alternating(num, cap=cap)
    if family == "F":
        if num == 20:
            return frobenius20(cap)
        if num == 21:
            return frobenius21(cap)
        raise GroupSpecError(f"unknown Frobenius shorthand F{num}")
    raise GroupSpecError(f"unrecognised group token {token!r}")


def parse_group_spec(
    spec: str,
    cap: int = DEFAULT_ELEMENT_CAP,
    extra: dict[str, Callable[[], FiniteGroup]] | None = None,
) -> FiniteGroup:
    """Resolve a spec like ``S3xC6`` into a group; ``extra`` supplies
    config-defined named constructors."""
    spec = spec.strip()
    if not spec:
        raise GroupSpecError("empty group spec")
    parts = spec.split("x")
    groups = []
    for token in parts:
        token = token.strip()
        if extra and token in extra:
            groups.append(extra[token]())
        else:
            groups.append(_named_group(token, cap))
    result = groups[0]
    for g in groups[1:]:
        result = direct_product(result, g, cap=cap)
    return result


@dataclass(frozen=True)
class CatalogSpec:
    """What to scan or verify over: a size bound, optional explicit names,
    optional Cayley-table imports."""

    max_order: int
    include: tuple[str, ...] = ()
    import_paths: tuple[str, ...] = ()


_PRODUCT_NAMES = [
    "C2xC2", "C2xC4", "C2xC6", "C2xC8", "C2xC16", "C2xC2xC2",
    "C3xC3", "C3xC6", "C3xC9", "C3xC3xC3", "C4xC4", "C4xC8", "C5xC5",
    "C6xC6", "C7xC7", "C8xC8",
    "S3xC3", "S3xC4", "S3xC6", "S3xS3",
    "A4xC2", "Q8xC2", "Q8xC3", "D8xC2", "D8xC3",
]


def default_catalog(max_order: int, cap: int = DEFAULT_ELEMENT_CAP) -> list[FiniteGroup]:
    """The built-in groups of order at most ``max_order``."""
    groups: list[FiniteGroup] = []
    for n in range(1, max_order + 1):
        groups.append(cyclic(n, cap=cap))
    for m in range(3, max_order // 2 + 1):
        groups.append(dihedral(m, cap=cap))
    for m in range(2, max_order // 4 + 1):
        groups.append(quaternion(m, cap=cap))
    for k in (3, 4, 5, 6, 7):
        order = 1
        for i in range(2, k + 1):
            order *= i
        if order <= max_order:
            groups.append(symmetric(k, cap=cap))
    for k in (4, 5):
        order = 12 if k == 4 else 60
        if order <= max_order:
            groups.append(alternating(k, cap=cap))
    for name in _PRODUCT_NAMES:
        g = parse_group_spec(name, cap=cap)
        if g.n <= max_order:
            groups.append(g)
    for g in (frobenius20(cap), frobenius21(cap), heisenberg27(cap), modular27(cap)):
        if g.n <= max_order:
            groups.append(g)
    return groups


def resolve_catalog(
    spec: CatalogSpec,
    cap: int = DEFAULT_ELEMENT_CAP,
    extra: dict[str, Callable[[], FiniteGroup]] | None = None,
) -> list[FiniteGroup]:
    """Catalog per spec: explicit names if given, the defaults otherwise, plus
    any imported Cayley tables; names are uniquified."""
    if spec.max_order > cap:
        raise SizeLimitError(
            f"catalog bound {spec.max_order} exceeds the element cap {cap}"
        )
    if spec.include:
        groups = [parse_group_spec(name, cap=cap, extra=extra) for name in spec.include]
    else:
        # The size bound trims only the default catalog; explicit includes and
        # imports are taken as given.
        groups = default_catalog(spec.max_order, cap=cap)
        if extra:
            for factory in extra.values():
                g = factory()
                if g.n <= spec.max_order:
                    groups.append(g)
    for path in spec.import_paths:
        groups.append(load_cayley_file(path, cap=cap))

    seen: dict[str, int] = {}
    for g in groups:
        count = seen.get(g.name, 0)
        seen[g.name] = count + 1
        if count:
            g.name = f"{g.name}#{count + 1}"
    return groups
