"""Finite groups as normalized multiplication tables.

Elements are the integers ``0..n-1`` with 0 the identity.  Subsets of
elements are ``ElementSet`` bit-vectors; internally most algorithms work on
the raw int masks for speed.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import config
from .elements import ElementSet, members
from .errors import BadIndex, DegreeMismatch, NotAGroup, NotASubgroup, NotNormal, OrderBudgetExceeded


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``range(degree)``; ``images[i]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise NotAGroup(f"images {list(imgs)} do not form a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def then(self, other: Permutation) -> Permutation:
        """Product applying ``self`` first, then ``other``."""
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))


class GroupTable:
    """An immutable finite group given by its Cayley table.

    ``product[a][b]`` is the index of ``a*b``.  Construction validates the
    group axioms: full associativity check up to
    ``config.FULL_ASSOCIATIVITY_BOUND`` elements and a deterministic sample
    of ``10*n*n`` triples above it.
    """

    def __init__(self, product, name: str = "", generators: Sequence[int] | None = None, validate: bool = True):
        table = np.asarray(product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise NotAGroup("multiplication table must be a non-empty square matrix")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise BadIndex(f"table entries must lie in [0, {n})")
        self.order = n
        self.name = name
        self.table = table
        self.table.setflags(write=False)
        self.product: list[list[int]] = table.tolist()
        if validate:
            _check_axioms(table)
        prod = self.product
        self.inverse: list[int] = [row.index(0) for row in prod]
        orders = []
        for g in range(n):
            x, k = g, 1
            while x != 0:
                x = prod[x][g]
                k += 1
            orders.append(k if g else 1)
        self.element_order: list[int] = orders
        if generators is None:
            generators = _greedy_generators(self)
        self.generators: tuple[int, ...] = tuple(int(g) for g in generators)
        self._conj = None

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def elements(self) -> ElementSet:
        return ElementSet.from_mask(self.full_mask)

    def mul(self, a: int, b: int) -> int:
        return self.product[a][b]

    def power(self, g: int, k: int) -> int:
        k %= self.element_order[g]
        x = 0
        for _ in range(k):
            x = self.product[x][g]
        return x

    def conj(self, h: int, g: int) -> int:
        """``g^-1 h g``."""
        return self.product[self.product[self.inverse[g]][h]][g]

    def conjugation_table(self) -> list[list[int]]:
        """``table[g][h] == g^-1 h g``, computed once."""
        if self._conj is None:
            t = self.table
            inv = np.asarray(self.inverse)
            # rows indexed by g: t[t[inv[g], h], g]
            left = t[inv]  # left[g][h] = g^-1 h
            self._conj = t[left, np.arange(self.order)[:, None]].tolist()
        return self._conj

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_index(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.order:
            raise BadIndex(f"element index {x!r} outside [0, {self.order})")
        return int(x)


def _check_axioms(table: np.ndarray) -> None:
    n = table.shape[0]
    ident = np.arange(n)
    if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
        raise NotAGroup("index 0 is not a two-sided identity")
    rows_ok = (np.sort(table, axis=1) == ident).all(axis=1)
    if not rows_ok.all():
        bad = int(np.argmin(rows_ok))
        raise NotAGroup(f"row {bad} is not a permutation (no inverse)", witness=(bad,))
    cols_ok = (np.sort(table, axis=0) == ident[:, None]).all(axis=0)
    if not cols_ok.all():
        bad = int(np.argmin(cols_ok))
        raise NotAGroup(f"column {bad} is not a permutation (no inverse)", witness=(bad,))
    if n <= config.FULL_ASSOCIATIVITY_BOUND:
        chunk = max(1, 2_000_000 // (n * n))
        for start in range(0, n, chunk):
            a = np.arange(start, min(n, start + chunk))
            left = table[table[a]]  # (ab)c
            right = np.take(table[a], table, axis=1)  # a(bc)
            diff = left != right
            if diff.any():
                i, b, c = (int(v) for v in np.argwhere(diff)[0])
                raise NotAGroup(f"associativity fails for ({int(a[i])}, {b}, {c})", witness=(int(a[i]), b, c))
    else:
        rng = np.random.default_rng(n)
        remaining = 10 * n * n
        while remaining:
            k = min(remaining, 1_000_000)
            a, b, c = rng.integers(0, n, size=(3, k))
            left = table[table[a, b], c]
            right = table[a, table[b, c]]
            bad = np.nonzero(left != right)[0]
            if bad.size:
                j = bad[0]
                w = (int(a[j]), int(b[j]), int(c[j]))
                raise NotAGroup(f"associativity fails for {w}", witness=w)
            remaining -= k


def _greedy_generators(G: GroupTable) -> list[int]:
    """A small generating set: elements of large order first, then index."""
    gens: list[int] = []
    elems, span = [0], 1
    for g in sorted(range(1, G.order), key=lambda g: (-G.element_order[g], g)):
        if span == G.full_mask:
            break
        if not (span >> g) & 1:
            elems, span = extend_subgroup(G.product, elems, span, gens, g)
            gens.append(g)
    return gens


# -- closure primitives ------------------------------------------------------

def extend_subgroup(prod: list[list[int]], elems: list[int], mask: int, gens: Sequence[int], g: int) -> tuple[list[int], int]:
    """Subgroup generated by the subgroup ``elems``/``mask`` and ``g``.

    ``gens`` generates the given subgroup.  The result is assembled from
    right cosets of the old subgroup, so each new element costs one lookup.
    """
    if (mask >> g) & 1:
        return elems, mask
    base = list(elems)
    out = list(elems)
    all_gens = list(gens) + [g]
    reps = [0]
    i = 0
    while i < len(reps):
        r = reps[i]
        i += 1
        row = prod[r]
        for s in all_gens:
            e = row[s]
            if not (mask >> e) & 1:
                reps.append(e)
                for h in base:
                    x = prod[h][e]
                    out.append(x)
                    mask |= 1 << x
    return out, mask


def generate(G: GroupTable, seed: Sequence[int]) -> tuple[list[int], int, list[int]]:
    """Closure of ``seed``; returns (elements, mask, irredundant generators)."""
    prod = G.product
    elems, mask, gens = [0], 1, []
    for g in seed:
        if not (mask >> g) & 1:
            elems, mask = extend_subgroup(prod, elems, mask, gens, g)
            gens.append(g)
    return elems, mask, gens


def is_subgroup_mask(G: GroupTable, mask: int) -> bool:
    if not mask & 1:
        return False
    elems = members(mask)
    prod = G.product
    for a in elems:
        row = prod[a]
        for b in elems:
            if not (mask >> row[b]) & 1:
                return False
    return True


def _require_subgroup(G: GroupTable, H: ElementSet) -> list[int]:
    if H.mask >> G.order:
        raise BadIndex("subset contains indices outside the group")
    if not is_subgroup_mask(G, H.mask):
        raise NotASubgroup("subset is not closed under the group product")
    return members(H.mask)


# -- constructors ------------------------------------------------------------

def group_from_cayley(table, name: str = "") -> GroupTable:
    """Validate a Cayley table, moving the identity to index 0 if needed."""
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NotAGroup("multiplication table must be a non-empty square matrix")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise BadIndex(f"table entries must lie in [0, {n})")
    ident = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident)]
    if not candidates:
        raise NotAGroup("table has no two-sided identity")
    e = candidates[0]
    if e != 0:
        sigma = ident.copy()
        sigma[0], sigma[e] = e, 0
        relabeled = np.empty_like(arr)
        relabeled[np.ix_(sigma, sigma)] = sigma[arr]
        arr = relabeled
    return GroupTable(arr, name=name)


def group_from_generators(gens: Sequence[Permutation], name: str = "", max_order: int | None = None) -> GroupTable:
    """Breadth-first closure of permutation generators.

    Products compose left to right: ``(p*q)(i) = q(p(i))``.  Elements are
    numbered identity first, then in discovery order, so the same generator
    list always yields the same table.
    """
    if max_order is None:
        max_order = config.max_order()
    gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in gens]
    degree = gens[0].degree if gens else 0
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators act on different numbers of points")
    identity = tuple(range(degree))
    index = {identity: 0}
    elems = [identity]
    parent = [0]
    via = [-1]
    right: list[list[int]] = [[] for _ in gens]
    gen_images = [g.images for g in gens]
    i = 0
    while i < len(elems):
        x = elems[i]
        for k, gi in enumerate(gen_images):
            y = tuple(gi[p] for p in x)
            j = index.get(y)
            if j is None:
                j = len(elems)
                if j >= max_order:
                    raise OrderBudgetExceeded(f"closure exceeds max order {max_order}")
                index[y] = j
                elems.append(y)
                parent.append(i)
                via.append(k)
            right[k].append(j)
        i += 1
    n = len(elems)
    prod = [[0] * n for _ in range(n)]
    for x in range(n):
        row = prod[x]
        row[0] = x
        for y in range(1, n):
            row[y] = right[via[y]][row[parent[y]]]
    gen_ids = [index[g.images] for g in gens]
    gen_ids = [g for g in dict.fromkeys(gen_ids) if g != 0]
    G = GroupTable(prod, name=name, generators=gen_ids or None)
    G.permutations = elems
    return G


def regular_representation(G: GroupTable) -> list[Permutation]:
    """Generators of ``G`` acting on its own elements by right multiplication."""
    return [Permutation(tuple(G.product[x][g] for x in range(G.order))) for g in G.generators]


def direct_product(A: GroupTable, B: GroupTable, name: str | None = None, max_order: int | None = None) -> GroupTable:
    """Pairs (a, b) numbered ``a*|B| + b``."""
    if max_order is None:
        max_order = config.max_order()
    n = A.order * B.order
    if n > max_order:
        raise OrderBudgetExceeded(f"|A|*|B| = {n} exceeds max order {max_order}")
    m = B.order
    table = (A.table[:, None, :, None] * m + B.table[None, :, None, :]).reshape(n, n)
    gens = [a * m for a in A.generators] + list(B.generators)
    return GroupTable(table, name=name or f"{A.name}x{B.name}", generators=gens or None)


def quotient_group(G: GroupTable, N: ElementSet, name: str | None = None) -> tuple[GroupTable, list[int]]:
    """``G/N`` with cosets numbered by their first element; returns (table, projection)."""
    elems_n = _require_subgroup(G, N)
    if not is_normal_mask(G, N.mask, elems_n):
        raise NotNormal("subgroup is not normal")
    prod = G.product
    proj = [-1] * G.order
    reps = []
    for g in range(G.order):
        if proj[g] < 0:
            c = len(reps)
            reps.append(g)
            for h in elems_n:
                proj[prod[h][g]] = c
    table = [[proj[prod[a][b]] for b in reps] for a in reps]
    gens = sorted({proj[g] for g in G.generators} - {0})
    Q = GroupTable(table, name=name or f"{G.name}/N", generators=gens or None)
    return Q, proj


# -- whole-group primitives --------------------------------------------------

def is_normal_mask(G: GroupTable, mask: int, gens: Sequence[int] | None = None) -> bool:
    if gens is None:
        gens = members(mask)
    conj = G.conjugation_table()
    for g in G.generators:
        row = conj[g]
        for h in gens:
            if not (mask >> row[h]) & 1:
                return False
    return True


def center(G: GroupTable) -> ElementSet:
    prod = G.product
    gens = G.generators
    mask = 0
    for g in range(G.order):
        row = prod[g]
        if all(row[h] == prod[h][g] for h in gens):
            mask |= 1 << g
    return ElementSet.from_mask(mask)


def centralizer(G: GroupTable, x: int) -> ElementSet:
    x = G.check_index(x)
    prod = G.product
    row = prod[x]
    mask = 0
    for g in range(G.order):
        if row[g] == prod[g][x]:
            mask |= 1 << g
    return ElementSet.from_mask(mask)


def commutator(G: GroupTable, g: int, h: int) -> int:
    """``[g, h] = g^-1 h^-1 g h``."""
    p, inv = G.product, G.inverse
    return p[p[p[inv[g]][inv[h]]][g]][h]


def commutator_subgroup(G: GroupTable, K: ElementSet | None = None) -> ElementSet:
    """Derived subgroup of ``G`` (or of its subgroup ``K``)."""
    elems = list(range(G.order)) if K is None else _require_subgroup(G, K)
    seen = set()
    for g in elems:
        for h in elems:
            seen.add(commutator(G, g, h))
    return ElementSet.from_mask(generate(G, sorted(seen))[1])
