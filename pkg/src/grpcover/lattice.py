"""Complete subgroup lattices of small finite groups.

Every subgroup is a join of cyclic subgroups, so the lattice is the
closure of the trivial subgroup under "join with a cyclic subgroup".
Subgroups are identified by member set and numbered by
``(order, sorted members)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config
from .elements import ElementSet, members
from .errors import LatticeBudgetExceeded, OrderBudgetExceeded
from .group import GroupTable, _require_subgroup, extend_subgroup, generate, is_normal_mask


@dataclass(eq=False)
class Subgroup:
    id: int
    members: ElementSet
    is_normal: bool
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return self.members.mask


@dataclass(eq=False)
class SubgroupLattice:
    group: GroupTable
    subgroups: list[Subgroup]
    _by_mask: dict[int, int] = field(default_factory=dict, repr=False)
    _normalizers: dict[int, int] = field(default_factory=dict, repr=False)
    _maximal: list[Subgroup] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def find(self, H: ElementSet | int) -> Subgroup | None:
        mask = H if isinstance(H, int) else H.mask
        i = self._by_mask.get(mask)
        return None if i is None else self.subgroups[i]

    def includes(self, i: int, j: int) -> bool:
        """Inclusion order: subgroup ``i`` is contained in subgroup ``j``."""
        a, b = self.subgroups[i].mask, self.subgroups[j].mask
        return a & ~b == 0

    def normalizer_mask(self, H: Subgroup) -> int:
        m = self._normalizers.get(H.id)
        if m is None:
            m = self.group.full_mask if H.is_normal else _normalizer_mask(self.group, H.mask, H.generators)
            self._normalizers[H.id] = m
        return m

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]


def _normalizer_mask(G: GroupTable, mask: int, gens) -> int:
    conj = G.conjugation_table()
    out = 0
    for g in range(G.order):
        row = conj[g]
        for h in gens:
            if not (mask >> row[h]) & 1:
                break
        else:
            out |= 1 << g
    return out


def generated_subgroup(G: GroupTable, seed) -> ElementSet:
    """Least subgroup containing ``seed``."""
    seed = [G.check_index(s) for s in seed]
    return ElementSet.from_mask(generate(G, seed)[1])


def normalizer(G: GroupTable, H: ElementSet) -> ElementSet:
    _require_subgroup(G, H)
    gens = generate(G, members(H.mask))[2]
    return ElementSet.from_mask(_normalizer_mask(G, H.mask, gens))


def conjugate_subgroup(G: GroupTable, H: ElementSet, g: int) -> ElementSet:
    """``g^-1 H g``."""
    elems = _require_subgroup(G, H)
    g = G.check_index(g)
    row = G.conjugation_table()[g]
    m = 0
    for h in elems:
        m |= 1 << row[h]
    return ElementSet.from_mask(m)


def cyclic_subgroups(G: GroupTable) -> list[tuple[int, int]]:
    """(mask, smallest generator) for each cyclic subgroup, in index order of generator."""
    prod = G.product
    seen: dict[int, int] = {}
    for g in range(G.order):
        m, x = 1, g
        while x:
            m |= 1 << x
            x = prod[x][g]
        seen.setdefault(m, g)
    return [(m, g) for m, g in seen.items()]


def enumerate_subgroups(G: GroupTable, cap: int | None = None, max_order: int | None = None) -> SubgroupLattice:
    if cap is None:
        cap = config.DEFAULT_LATTICE_CAP
    if max_order is None:
        max_order = config.max_order()
    if G.order > max_order:
        raise OrderBudgetExceeded(f"group order {G.order} exceeds max order {max_order}")
    prod = G.product
    cyclics = cyclic_subgroups(G)
    found: dict[int, tuple[list[int], list[int]]] = {1: ([0], [])}
    queue = [1]
    i = 0
    while i < len(queue):
        hmask = queue[i]
        i += 1
        elems, gens = found[hmask]
        for cmask, g in cyclics:
            if cmask & ~hmask == 0:
                continue
            kel, kmask = extend_subgroup(prod, elems, hmask, gens, g)
            if kmask not in found:
                found[kmask] = (kel, gens + [g])
                queue.append(kmask)
                if len(found) > cap:
                    raise LatticeBudgetExceeded(f"more than {cap} subgroups")
    order_key = sorted(found, key=lambda m: (m.bit_count(), members(m)))
    subs = []
    by_mask = {}
    for idx, m in enumerate(order_key):
        gens = tuple(found[m][1])
        subs.append(Subgroup(idx, ElementSet.from_mask(m), is_normal_mask(G, m, gens), gens))
        by_mask[m] = idx
    return SubgroupLattice(G, subs, by_mask)


def maximal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    if L._maximal is None:
        proper = L.subgroups[:-1]
        result = []
        # larger subgroups first; a subgroup is maximal iff no found maximal contains it
        for H in sorted(proper, key=lambda s: -s.id):
            if not any(H.mask & ~M.mask == 0 for M in result):
                result.append(H)
        L._maximal = sorted(result, key=lambda s: s.id)
    return list(L._maximal)


def frattini(L: SubgroupLattice) -> ElementSet:
    maxes = maximal_subgroups(L)
    m = L.group.full_mask
    for M in maxes:
        m &= M.mask
    return ElementSet.from_mask(m)


def normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    return [H for H in L.subgroups if H.is_normal]


def subgroup_normalizer(L: SubgroupLattice, H: Subgroup) -> ElementSet:
    return ElementSet.from_mask(L.normalizer_mask(H))


def conjugates(L: SubgroupLattice, H: Subgroup) -> list[Subgroup]:
    """Distinct conjugates of ``H``, computed on demand."""
    conj = L.group.conjugation_table()
    seen = {}
    for g in range(L.group.order):
        row = conj[g]
        m = 0
        for h in H.members:
            m |= 1 << row[h]
        if m not in seen:
            seen[m] = L.find(m)
    return sorted(seen.values(), key=lambda s: s.id)
