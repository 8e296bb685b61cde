"""Normalizer, subgroup and centralizer covering numbers.

All three numbers are exact minimum set covers of the group by a family
of proper subgroups.  ``exact_min_cover`` is a branch-and-bound solver over
int bitmasks; the ``sigma*`` functions build the families and report the
witnesses in terms of subgroup ids of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from . import config
from .elements import ElementSet, members
from .errors import SolverBudgetExceeded
from .group import GroupTable, centralizer
from .lattice import SubgroupLattice, maximal_subgroups


@dataclass
class NormalizerFamily:
    group: GroupTable
    sets: list[tuple[ElementSet, int]]
    maximality_filtered: bool = False

    def __len__(self):
        return len(self.sets)

    def union_mask(self) -> int:
        m = 0
        for s, _ in self.sets:
            m |= s.mask
        return m


@dataclass
class CoverOutcome:
    kind: Literal["finite", "infinite"]
    value: int | None = None
    witness_cover: list[int] = field(default_factory=list)
    witness_element: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def as_number(self) -> float:
        """Covering number with infinity as ``float('inf')``; handy for ``min``."""
        return self.value if self.kind == "finite" else float("inf")

    def __str__(self):
        return str(self.value) if self.kind == "finite" else "inf"


def finite(value: int, cover) -> CoverOutcome:
    return CoverOutcome("finite", value, list(cover))


def infinite(witness: int) -> CoverOutcome:
    return CoverOutcome("infinite", witness_element=witness)


# -- solver ------------------------------------------------------------------

def exact_min_cover(ground, sets: Sequence, node_cap: int | None = None) -> tuple[int, list[int]] | None:
    """Minimum number of ``sets`` whose union contains ``ground``.

    Returns ``(k, sorted indices)`` or None when the union misses part of the
    ground set.  The search starts from the greedy cover (largest new
    coverage, lowest index on ties) and replaces it only by strictly smaller
    covers found by depth-first search, branching on the uncovered point in
    the fewest sets and trying its sets in index order.  Duplicate or
    dominated sets are dropped up front, keeping the lowest index.
    """
    if node_cap is None:
        node_cap = config.DEFAULT_NODE_CAP
    g = ground.mask if isinstance(ground, ElementSet) else int(ground)
    masks = [(s.mask if isinstance(s, ElementSet) else int(s)) & g for s in sets]
    if g == 0:
        return 0, []
    union = 0
    for m in masks:
        union |= m
    if union & g != g:
        return None

    keep = []
    for i, m in enumerate(masks):
        if m == 0:
            continue
        dominated = False
        for j, other in enumerate(masks):
            if j != i and m & ~other == 0 and (other != m or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    active = [masks[i] for i in keep]

    common = g
    for m in active:
        common &= m
    if common == g:
        return 1, [keep[0]]
    g &= ~common

    pts = members(g)
    containing = {e: [k for k, m in enumerate(active) if (m >> e) & 1] for e in pts}
    set_bits = {e: sum(1 << k for k in containing[e]) for e in pts}
    order = sorted(pts, key=lambda e: (len(containing[e]), e))

    best = _greedy(g, active)
    nodes = 0

    def lower_bound(unc: int) -> int:
        used, count = 0, 0
        for e in order:
            if (unc >> e) & 1 and not set_bits[e] & used:
                used |= set_bits[e]
                count += 1
        size = max((m & unc).bit_count() for m in active)
        return max(count, -(-unc.bit_count() // size))

    def search(unc: int, chosen: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_cap:
            raise SolverBudgetExceeded(f"branch-and-bound exceeded {node_cap} nodes")
        if unc == 0:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(unc) >= len(best):
            return
        e = next(e for e in order if (unc >> e) & 1)
        for k in containing[e]:
            chosen.append(k)
            search(unc & ~active[k], chosen)
            chosen.pop()
            if len(chosen) + 1 >= len(best):
                break

    search(g, [])
    return len(best), sorted(keep[k] for k in best)


def _greedy(g: int, active: list[int]) -> list[int]:
    unc, chosen = g, []
    while unc:
        k = max(range(len(active)), key=lambda k: ((active[k] & unc).bit_count(), -k))
        chosen.append(k)
        unc &= ~active[k]
    return chosen


def brute_force_min_cover(ground, sets: Sequence, max_size: int | None = None) -> tuple[int, list[int]] | None:
    """Enumerate subfamilies by increasing size; first hit in lexicographic order."""
    from itertools import combinations

    g = ground.mask if isinstance(ground, ElementSet) else int(ground)
    masks = [s.mask if isinstance(s, ElementSet) else int(s) for s in sets]
    limit = len(masks) if max_size is None else min(max_size, len(masks))
    for k in range(0, limit + 1):
        for combo in combinations(range(len(masks)), k):
            u = 0
            for i in combo:
                u |= masks[i]
            if u & g == g:
                return k, list(combo)
    return None


# -- families ----------------------------------------------------------------

def proper_normalizers(G: GroupTable, L: SubgroupLattice) -> NormalizerFamily:
    """One entry per distinct proper normalizer, represented by its first non-normal subgroup."""
    seen: dict[int, int] = {}
    for H in L.subgroups:
        if H.is_normal:
            continue
        m = L.normalizer_mask(H)
        if m not in seen:
            seen[m] = H.id
    return NormalizerFamily(G, [(ElementSet.from_mask(m), i) for m, i in seen.items()])


def maximal_normalizer_family(F: NormalizerFamily) -> NormalizerFamily:
    kept = []
    for s, rep in F.sets:
        if not any(s < t for t, _ in F.sets):
            kept.append((s, rep))
    return NormalizerFamily(F.group, kept, maximality_filtered=True)


def _uncovered_witness(G: GroupTable, covered: int) -> int | None:
    """Uncovered element of largest order, smallest index on ties."""
    rest = members(G.full_mask & ~covered)
    if not rest:
        return None
    return min(rest, key=lambda x: (-G.element_order[x], x))


def covering_existence(G: GroupTable, L: SubgroupLattice) -> tuple[bool, int | None]:
    """(True, None) when proper normalizers cover G, else (False, witness)."""
    w = _uncovered_witness(G, proper_normalizers(G, L).union_mask())
    return (w is None), w


def fit_criterion(G: GroupTable, L: SubgroupLattice) -> bool:
    from .invariants import fitting

    fit = fitting(G, L).mask
    return fit & ~proper_normalizers(G, L).union_mask() == 0


def _cover_family(G: GroupTable, sets: list[tuple[int, int]], node_cap: int | None) -> CoverOutcome:
    union = 0
    for m, _ in sets:
        union |= m
    w = _uncovered_witness(G, union)
    if w is not None:
        return infinite(w)
    k, chosen = exact_min_cover(G.full_mask, [m for m, _ in sets], node_cap=node_cap)
    return finite(k, sorted(sets[i][1] for i in chosen))


def sigma_n(G: GroupTable, L: SubgroupLattice, node_cap: int | None = None, filtered: bool = True) -> CoverOutcome:
    """Normalizer covering number; witnesses are representative subgroup ids."""
    fam = proper_normalizers(G, L)
    if filtered:
        fam = maximal_normalizer_family(fam)
    return _cover_family(G, [(s.mask, rep) for s, rep in fam.sets], node_cap)


def sigma(G: GroupTable, L: SubgroupLattice, node_cap: int | None = None, order_budget: int | None = None) -> CoverOutcome:
    """Covering number by proper subgroups (maximal subgroups suffice)."""
    if order_budget is None:
        order_budget = config.DEFAULT_SIGMA_ORDER_BUDGET
    if G.order > order_budget:
        raise SolverBudgetExceeded(f"sigma is limited to groups of order <= {order_budget}")
    maxes = maximal_subgroups(L) if G.order > 1 else []
    return _cover_family(G, [(M.mask, M.id) for M in maxes], node_cap)


def proper_centralizers(G: GroupTable, L: SubgroupLattice) -> list[tuple[int, int]]:
    """Inclusion-maximal proper element centralizers as (mask, subgroup id)."""
    cents = {}
    for x in range(G.order):
        m = centralizer(G, x).mask
        if m != G.full_mask and m not in cents:
            cents[m] = L.find(m).id
    masks = list(cents)
    keep = [m for m in masks if not any(m != o and m & ~o == 0 for o in masks)]
    return sorted(((m, cents[m]) for m in keep), key=lambda t: t[1])


def sigma_c(G: GroupTable, L: SubgroupLattice, node_cap: int | None = None) -> CoverOutcome:
    """Covering number by proper centralizers of elements."""
    return _cover_family(G, proper_centralizers(G, L), node_cap)


def cover_members(L: SubgroupLattice, outcome: CoverOutcome, kind: str = "sigma_n") -> list[ElementSet]:
    """The covering sets named by a finite outcome's witness ids."""
    out = []
    for i in outcome.witness_cover:
        H = L[i]
        if kind == "sigma_n":
            out.append(ElementSet.from_mask(L.normalizer_mask(H)))
        else:
            out.append(H.members)
    return out
