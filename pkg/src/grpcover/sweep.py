"""The built-in population of constructed groups.

The sweep is every primitive expression of order at most ``max_order``,
a short list of semidirect products completing small prime-power orders,
and the binary products of those groups in which at least one factor is
non-abelian (abelian-by-abelian products are already primitives).
Candidates sharing an isomorphism-invariant profile are collapsed onto the
first expression met.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .constructions import Product, build, parse_group_expr
from .group import GroupTable, center, commutator_subgroup

SWEEP_MAX_ORDER = 120

# Named semidirect products not reachable from the primitive families.
EXTRA_SEMIDIRECTS = [
    "semidirect(cyclic(8),2:[3])",  # semidihedral of order 16
    "semidirect(cyclic(4),4:[3])",  # C4 x| C4
    "semidirect(product(cyclic(4),cyclic(2)),2:[3,1])",  # (C4 x C2) x| C2
    "semidirect(product(cyclic(4),cyclic(2)),2:[2,5])",  # C4 o D8
    "semidirect(cyclic(9),3:[4])",  # order 27, exponent 9
    "semidirect(cyclic(7),3:[2])",  # Frobenius group of order 21
    "semidirect(cyclic(3),8:[2])",  # C3 x| C8
    "semidirect(cyclic(16),2:[7])",  # semidihedral of order 32
    "semidirect(cyclic(27),3:[10])",  # modular group of order 81
    "semidirect(heisenberg(3),3:[10,3])",  # order 81, central automorphism
    "semidirect(abelian(3,3),4:[1,6])",  # C3^2 x| C4 acting by x -> y -> x^-1
]

# Number of isomorphism types for orders where the harness certifies coverage.
GROUP_COUNTS = {1: 1, 2: 1, 4: 2, 8: 5, 9: 2, 16: 14, 25: 2, 27: 5, 32: 51, 49: 2, 81: 15, 121: 2, 125: 5}


def _abelian_invariant_lists(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists n1 | n2 | ... | nk with k >= 2 and product <= max_order."""
    out = []

    def extend(prefix: tuple[int, ...], total: int):
        if len(prefix) >= 2:
            out.append(prefix)
        last = prefix[-1]
        m = last
        while total * m <= max_order:
            extend(prefix + (m,), total * m)
            m += last

    for n1 in range(2, max_order + 1):
        extend((n1,), n1)
    return out


def primitive_expressions(max_order: int = SWEEP_MAX_ORDER) -> list[str]:
    exprs = [f"cyclic({n})" for n in range(1, max_order + 1)]
    exprs += ["abelian(" + ",".join(map(str, a)) + ")" for a in _abelian_invariant_lists(max_order)]
    exprs += [f"dihedral({n})" for n in range(6, max_order + 1, 2)]
    exprs += [f"dicyclic({n})" for n in range(8, max_order + 1, 4)]
    exprs += [f"symmetric({n})" for n in range(3, 6)]
    exprs += [f"alternating({n})" for n in range(4, 6)]
    exprs += ["heisenberg(3)", "heisenberg(5)"]
    m = 16
    while m <= max_order:
        exprs.append(f"modular2({m})")
        m *= 2
    for p, k in [(3, 1), (5, 1), (7, 1), (11, 1), (2, 2), (2, 3), (3, 2), (2, 4)]:
        exprs.append(f"affine({p},{k})")
    return [e for e in exprs if parse_group_expr(e).order() <= max_order]


def base_expressions(max_order: int = SWEEP_MAX_ORDER) -> list[str]:
    extras = [e for e in EXTRA_SEMIDIRECTS if parse_group_expr(e).order() <= max_order]
    return primitive_expressions(max_order) + extras


def profile(G: GroupTable) -> tuple:
    """Isomorphism invariant: element orders, center, derived subgroup, class
    types and square-root counts."""
    conj = G.conjugation_table()
    seen = [False] * G.order
    classes = Counter()
    for x in range(G.order):
        if not seen[x]:
            cls = {row[x] for row in conj}
            for y in cls:
                seen[y] = True
            classes[(G.element_order[x], len(cls))] += 1
    roots = Counter(G.product[x][x] for x in range(G.order))
    Z = center(G)
    return (
        G.order,
        tuple(sorted(Counter(G.element_order).items())),
        tuple(sorted(Counter(G.element_order[z] for z in Z).items())),
        len(commutator_subgroup(G)),
        tuple(sorted(classes.items())),
        tuple(sorted(Counter((G.element_order[x], roots[x]) for x in range(G.order)).items())),
    )


def product_pairs(max_order: int = SWEEP_MAX_ORDER) -> list[tuple[str, str]]:
    """Factor pairs (in base order) whose product joins the candidate list."""
    bases = base_expressions(max_order)
    orders = {e: parse_group_expr(e).order() for e in bases}
    small = [e for e in bases if 1 < orders[e] <= max_order // 2]
    nonabelian = {e: not build(e).is_abelian() for e in small}
    pairs = []
    for i, a in enumerate(small):
        for b in small[i:]:
            if orders[a] * orders[b] <= max_order and (nonabelian[a] or nonabelian[b]):
                pairs.append((a, b))
    return pairs


@lru_cache(maxsize=4)
def sweep(max_order: int = SWEEP_MAX_ORDER) -> tuple[str, ...]:
    """Deduplicated expression texts in generation order."""
    candidates = base_expressions(max_order)
    for a, b in product_pairs(max_order):
        candidates.append(str(Product(parse_group_expr(a), parse_group_expr(b))))
    kept, seen = [], set()
    for e in candidates:
        key = profile(build(e))
        if key not in seen:
            seen.add(key)
            kept.append(e)
    return tuple(kept)
