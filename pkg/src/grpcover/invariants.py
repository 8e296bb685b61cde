"""Structural predicates and characteristic subgroups."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .elements import ElementSet, members
from .errors import OrderBudgetExceeded
from .fields import prime_factors
from .group import GroupTable, center, commutator, commutator_subgroup, extend_subgroup, generate
from .lattice import SubgroupLattice, cyclic_subgroups, frattini

MIN_GENERATORS_ORDER_CAP = 64
MIN_GENERATORS_TUPLE_CAP = 4


@dataclass(frozen=True)
class StructureReport:
    order: int
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_dedekind: bool
    is_p_group: int | None
    center_size: int
    commutator_size: int
    frattini_size: int
    fitting_size: int
    min_generators: int | None

    def to_dict(self) -> dict:
        return asdict(self)


def is_p_group(G: GroupTable) -> int | None:
    ps = prime_factors(G.order)
    return ps[0] if len(ps) == 1 else None


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow_subgroups(L: SubgroupLattice, p: int, within: int | None = None):
    """Sylow p-subgroups of the subgroup ``within`` (default: the whole group)."""
    if within is None:
        within = L.group.full_mask
    size = _p_part(within.bit_count(), p)
    return [H for H in L.subgroups if H.order == size and H.mask & ~within == 0]


def is_nilpotent_subgroup(L: SubgroupLattice, mask: int) -> bool:
    """A finite group is nilpotent iff each of its Sylow subgroups is unique."""
    n = mask.bit_count()
    return all(len(sylow_subgroups(L, p, mask)) == 1 for p in prime_factors(n))


def upper_central_series(G: GroupTable) -> list[ElementSet]:
    series = [1]
    while True:
        z = series[-1]
        nxt = 0
        for g in range(G.order):
            if all((z >> commutator(G, g, h)) & 1 for h in G.generators):
                nxt |= 1 << g
        if nxt == z:
            break
        series.append(nxt)
    return [ElementSet.from_mask(m) for m in series]


def is_nilpotent(G: GroupTable, L: SubgroupLattice) -> bool:
    by_sylow = is_nilpotent_subgroup(L, G.full_mask)
    by_series = upper_central_series(G)[-1].mask == G.full_mask
    if by_sylow != by_series:
        raise RuntimeError(f"nilpotency tests disagree for {G.name}")
    return by_sylow


def fitting(G: GroupTable, L: SubgroupLattice) -> ElementSet:
    """Join of all nilpotent normal subgroups."""
    seed = 1
    for H in L.subgroups:
        if H.is_normal and H.mask & ~seed and is_nilpotent_subgroup(L, H.mask):
            seed |= H.mask
    return ElementSet.from_mask(generate(G, members(seed))[1])


def derived_series(G: GroupTable) -> list[ElementSet]:
    series = [G.elements()]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: GroupTable) -> bool:
    return len(derived_series(G)[-1]) == 1


def is_dedekind(L: SubgroupLattice) -> bool:
    return all(H.is_normal for H in L.subgroups)


def is_cyclic_mask(G: GroupTable, mask: int) -> bool:
    n = mask.bit_count()
    return any(G.element_order[g] == n for g in members(mask))


def is_cyclic_hall_fitting(G: GroupTable, L: SubgroupLattice) -> bool:
    fit = fitting(G, L).mask
    f = fit.bit_count()
    return is_cyclic_mask(G, fit) and gcd(f, G.order // f) == 1


def min_generators_exhaustive(G: GroupTable, L: SubgroupLattice, max_k: int = MIN_GENERATORS_TUPLE_CAP) -> int | None:
    """Least k such that some k elements generate G, or None if k > max_k.

    Level k holds every subgroup generated by k elements; level k+1 joins
    each of them with each cyclic subgroup.
    """
    if G.order == 1:
        return 0
    prod = G.product
    cyc = cyclic_subgroups(G)
    level = {m: L.find(m) for m, _ in cyc}
    for k in range(1, max_k + 1):
        if G.full_mask in level:
            return k
        if k == max_k:
            break
        nxt = {}
        for m, H in level.items():
            elems = members(m)
            for cm, g in cyc:
                if cm & ~m == 0:
                    nxt.setdefault(m, H)
                    continue
                _, jm = extend_subgroup(prod, elems, m, H.generators, g)
                if jm not in nxt:
                    nxt[jm] = L.find(jm)
        level = nxt
    return None


def min_generators(G: GroupTable, L: SubgroupLattice) -> int:
    """Burnside basis count for p-groups; exhaustive search otherwise."""
    p = is_p_group(G)
    if G.order == 1:
        return 0
    if p is not None:
        index = G.order // len(frattini(L))
        k = 0
        while index > 1:
            index //= p
            k += 1
        return k
    if G.order > MIN_GENERATORS_ORDER_CAP:
        raise OrderBudgetExceeded(f"exhaustive generator search limited to order <= {MIN_GENERATORS_ORDER_CAP}")
    k = min_generators_exhaustive(G, L)
    if k is None:
        raise OrderBudgetExceeded(f"no generating tuple of size <= {MIN_GENERATORS_TUPLE_CAP}")
    return k


def structure_report(G: GroupTable, L: SubgroupLattice) -> StructureReport:
    try:
        mg = min_generators(G, L)
    except OrderBudgetExceeded:
        mg = None
    return StructureReport(
        order=G.order,
        is_abelian=G.is_abelian(),
        is_nilpotent=is_nilpotent(G, L),
        is_solvable=is_solvable(G),
        is_dedekind=is_dedekind(L),
        is_p_group=is_p_group(G),
        center_size=len(center(G)),
        commutator_size=len(commutator_subgroup(G)),
        frattini_size=len(frattini(L)),
        fitting_size=len(fitting(G, L)),
        min_generators=mg,
    )
