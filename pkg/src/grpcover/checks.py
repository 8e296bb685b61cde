"""Executable versions of the structural claims about sigma_n.

Each check runs over a :class:`Population` (the built-in sweep plus any
ingested catalogs) and returns a :class:`CheckReport`.  A check that fails
always names at least one offending group; a check whose population is
empty, or which needs complete coverage of an order that the population
cannot certify, is reported as skipped rather than passed.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Callable

from .analysis import GroupAnalysis
from .catalog import GroupRecord
from .constructions import build, parse_group_expr
from .covering import brute_force_min_cover, cover_members, exact_min_cover, sigma_n
from .elements import members
from .errors import BudgetError
from .fields import prime_factors
from .group import centralizer, commutator_subgroup, is_subgroup_mask, quotient_group
from .invariants import is_cyclic_hall_fitting, min_generators_exhaustive
from .lattice import enumerate_subgroups
from .sweep import GROUP_COUNTS, SWEEP_MAX_ORDER, product_pairs, profile, sweep

INF = float("inf")


@dataclass
class CheckReport:
    check_id: str
    claim: str
    population: int
    status: str
    reasons: list[str] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "claim": self.claim,
            "population": self.population,
            "status": self.status,
            "reasons": self.reasons,
            "counterexamples": self.counterexamples,
        }


class Population:
    """Analyses of the sweep groups followed by the ingested catalog groups."""

    def __init__(self, max_order: int = SWEEP_MAX_ORDER, records: list[GroupRecord] = (),
                 node_cap: int | None = None, include_sweep: bool = True):
        self.node_cap = node_cap
        self.members: list[GroupAnalysis] = []
        self._by_expr: dict[str, GroupAnalysis] = {}
        self.errors: list[tuple[str, str]] = []
        if include_sweep:
            for e in sweep(max_order):
                A = GroupAnalysis(build(e), name=e, node_cap=node_cap, origin="sweep", expr=e)
                self.members.append(A)
                self._by_expr[e] = A
        for rec in records:
            try:
                G = rec.build()
            except Exception as exc:  # reported, never fatal
                self.errors.append((rec.name, f"{type(exc).__name__}: {exc}"))
                continue
            A = GroupAnalysis(G, name=rec.name, node_cap=node_cap, origin="catalog", expr=rec.expr)
            A.record = rec
            self.members.append(A)

    def expr(self, text: str) -> GroupAnalysis:
        """Analysis of a constructed group, shared with the sweep when present."""
        key = str(parse_group_expr(text))
        if key not in self._by_expr:
            self._by_expr[key] = GroupAnalysis(build(key), name=key, node_cap=self.node_cap, origin="aux", expr=key)
        return self._by_expr[key]

    def of_order(self, n: int) -> list[GroupAnalysis]:
        return [A for A in self.members if A.G.order == n]

    def p_groups(self) -> list[GroupAnalysis]:
        return [A for A in self.members if A.G.order > 1 and len(prime_factors(A.G.order)) == 1]

    def coverage(self, n: int) -> tuple[int, int | None]:
        """(distinct profiles present, known number of groups of order n)."""
        return len({profile(A.G) for A in self.of_order(n)}), GROUP_COUNTS.get(n)

    def is_complete(self, n: int) -> bool:
        have, known = self.coverage(n)
        return known is not None and have >= known


class _Tally:
    def __init__(self):
        self.population = 0
        self.reasons: list[str] = []
        self.counterexamples: list[dict] = []
        self.skip: str | None = None

    def fail(self, group: str, detail: str):
        self.counterexamples.append({"group": group, "detail": detail})

    def guard(self, A: GroupAnalysis, fn: Callable[[], None]):
        """Run ``fn`` for one group, turning budget errors into a noted exclusion."""
        try:
            fn()
        except BudgetError as exc:
            self.reasons.append(f"{A.name} excluded: {exc}")


def _sn(A: GroupAnalysis) -> float:
    return A.sigma_n.as_number()


def _fmt(x: float) -> str:
    return "inf" if x == INF else str(int(x))


# -- individual claims ------------------------------------------------------

def _check_s4(pop: Population, t: _Tally):
    A = pop.expr("symmetric(4)")
    t.population = 1
    out = A.sigma_n
    if not out.is_finite or out.value != 7:
        t.fail(A.name, f"sigma_n = {out}")
        return
    union = 0
    for s in cover_members(A.lattice, out):
        union |= s.mask
    if len(out.witness_cover) != 7 or union != A.G.full_mask:
        t.fail(A.name, "witness family does not cover the group with 7 normalizers")


def _check_dihedral(pop: Population, t: _Tally):
    named = [pop.expr(f"dihedral({2 * n})") for n in range(3, 9)]
    extra = [A for A in pop.members if A.expr and A.expr.startswith("dihedral(") and A not in named]
    for A in named + extra:
        t.population += 1
        n = A.G.order // 2
        ok, w = A.covering_existence
        if ok or A.sigma_n.is_finite:
            t.fail(A.name, f"sigma_n = {A.sigma_n}, expected inf")
            continue
        if A.G.element_order[A.sigma_n.witness_element] != n:
            t.fail(A.name, f"witness has order {A.G.element_order[A.sigma_n.witness_element]}, expected {n}")
        if (A.family.union_mask() >> A.sigma_n.witness_element) & 1:
            t.fail(A.name, "witness lies in a proper normalizer")


def _check_dedekind(pop: Population, t: _Tally):
    q8 = pop.expr("dicyclic(8)")
    if not q8.structure.is_dedekind:
        t.fail(q8.name, "not reported Dedekind")
    group = [q8] + [A for A in pop.members if A is not q8 and A.structure.is_dedekind]
    for A in group:
        t.population += 1
        if len(A.family) or A.sigma_n.is_finite:
            t.fail(A.name, f"Dedekind group with {len(A.family)} proper normalizers, sigma_n = {A.sigma_n}")


def _check_nocover(pop: Population, t: _Tally):
    for A in pop.members:
        def run(A=A):
            ok, w = A.covering_existence
            if ok != A.sigma_n.is_finite:
                t.fail(A.name, f"covering_existence = {ok} but sigma_n = {A.sigma_n}")
            elif not ok and (A.family.union_mask() >> w) & 1:
                t.fail(A.name, f"witness {w} lies in a proper normalizer")
        t.population += 1
        t.guard(A, run)


def _check_fit(pop: Population, t: _Tally):
    for A in pop.members:
        t.population += 1
        if A.fit_criterion != A.covering_existence[0]:
            t.fail(A.name, f"fit_criterion = {A.fit_criterion}, covering_existence = {A.covering_existence[0]}")


def _check_quotients(pop: Population, t: _Tally):
    pairs = 0
    for A in pop.members:
        if A.G.is_abelian():
            continue
        t.population += 1
        mine = _sn(A)
        for N in A.lattice.subgroups:
            if not N.is_normal or N.order == 1 or N.order == A.G.order:
                continue
            Q, _ = quotient_group(A.G, N.members)
            if Q.is_abelian():
                continue  # abelian quotients have no covering
            try:
                q = sigma_n(Q, enumerate_subgroups(Q), node_cap=pop.node_cap).as_number()
            except BudgetError as exc:
                t.reasons.append(f"{A.name}/N{N.id} excluded: {exc}")
                continue
            if q == INF:
                continue
            pairs += 1
            if mine > q:
                t.fail(A.name, f"sigma_n = {_fmt(mine)} exceeds sigma_n of quotient by subgroup {N.id} ({_fmt(q)})")
    t.reasons.append(f"{pairs} (G, N) pairs with finite sigma_n(G/N)")


def _check_direct(pop: Population, t: _Tally, need_coprime: int = 20, need_other: int = 10):
    in_sweep = set(sweep())
    coprime = other = 0
    for a, b in product_pairs():
        if a not in in_sweep or b not in in_sweep:
            continue
        H, K = pop.expr(a), pop.expr(b)
        prod_expr = f"product({a},{b})"
        P = pop.expr(prod_expr)
        bound = min(_sn(H), _sn(K))
        got = _sn(P)
        if gcd(H.G.order, K.G.order) == 1:
            coprime += 1
            if got != bound:
                t.fail(P.name, f"sigma_n = {_fmt(got)}, min over factors = {_fmt(bound)} (coprime)")
        else:
            other += 1
            if bound != INF and got > bound:
                t.fail(P.name, f"sigma_n = {_fmt(got)} exceeds min over factors {_fmt(bound)}")
    t.population = coprime + other
    t.reasons.append(f"{coprime} coprime pairs, {other} non-coprime pairs")
    if coprime < need_coprime or other < need_other:
        t.skip = f"too few pairs (need {need_coprime} coprime and {need_other} others)"


def _check_cyclic_hall(pop: Population, t: _Tally):
    required = {str(parse_group_expr(e)) for e in ("symmetric(3)", "dihedral(10)", "dihedral(14)")}
    seen = set()
    for A in pop.members + [pop.expr(e) for e in sorted(required)]:
        if A.name in seen or not A.structure.is_solvable or not is_cyclic_hall_fitting(A.G, A.lattice):
            continue
        seen.add(A.name)
        t.population += 1
        if A.sigma_n.is_finite:
            t.fail(A.name, f"cyclic Hall Fitting subgroup but sigma_n = {A.sigma_n}")
    for name in sorted(required - seen):
        t.fail(name, "expected to satisfy the cyclic Hall Fitting hypothesis")


def _check_p_groups(pop: Population, t: _Tally):
    for A in pop.p_groups():
        if A.G.is_abelian() or not A.sigma_n.is_finite:
            continue
        t.population += 1
        p = prime_factors(A.G.order)[0]
        allowed = {3, 5} if p == 2 else {p + 1}
        if A.sigma_n.value not in allowed:
            t.fail(A.name, f"sigma_n = {A.sigma_n.value}, allowed {sorted(allowed)}")


def _check_nilpotent(pop: Population, t: _Tally):
    for A in pop.members:
        if not A.structure.is_nilpotent or not A.sigma_n.is_finite:
            continue
        t.population += 1
        allowed = {p + 1 for p in prime_factors(A.G.order)} | {5}
        if A.sigma_n.value not in allowed:
            t.fail(A.name, f"sigma_n = {A.sigma_n.value}, allowed {sorted(allowed)}")


def _check_cohn(pop: Population, t: _Tally, max_order: int = 32):
    for A in pop.p_groups():
        if A.G.order > max_order or any(A.G.element_order[g] == A.G.order for g in range(A.G.order)):
            continue
        t.population += 1
        p = prime_factors(A.G.order)[0]
        s = A.sigma
        if s is None or not s.is_finite or s.value != p + 1:
            t.fail(A.name, f"sigma = {s}, expected {p + 1}")


def _check_lower_bound(pop: Population, t: _Tally):
    for A in pop.members:
        t.population += 1
        for label, out in (("sigma_n", A.sigma_n), ("sigma", A.sigma), ("sigma_c", A.sigma_c)):
            if out is not None and out.is_finite and out.value < 3:
                t.fail(A.name, f"{label} = {out.value} < 3")


def _check_maximality(pop: Population, t: _Tally, max_order: int = 48):
    for A in pop.members:
        if A.G.order > max_order:
            continue
        def run(A=A):
            raw = sigma_n(A.G, A.lattice, node_cap=pop.node_cap, filtered=False).as_number()
            if raw != _sn(A):
                t.fail(A.name, f"unfiltered {_fmt(raw)} vs filtered {_fmt(_sn(A))}")
        t.population += 1
        t.guard(A, run)


def _check_minimality(pop: Population, t: _Tally, max_k: int = 8):
    for A in pop.members:
        out = A.sigma_n
        if not out.is_finite or out.value > max_k:
            continue
        t.population += 1
        union = 0
        for s in cover_members(A.lattice, out):
            union |= s.mask
        if union != A.G.full_mask:
            t.fail(A.name, "witness family does not cover the group")
            continue
        masks = [s.mask for s, _ in A.maximal_family.sets]
        full = A.G.full_mask
        for combo in combinations(masks, out.value - 1):
            u = 0
            for m in combo:
                u |= m
            if u == full:
                t.fail(A.name, f"a subfamily of size {out.value - 1} covers the group")
                break


def _random_instances(count: int = 24):
    rng = random.Random(20240601)  # fixed stream: instances are part of the check definition
    out = []
    for _ in range(count):
        points = rng.randint(1, 24)
        nsets = rng.randint(1, 12)
        sets = [sum(1 << i for i in range(points) if rng.random() < 0.3) for _ in range(nsets)]
        out.append(((1 << points) - 1, sets))
    return out


def _check_solver(pop: Population, t: _Tally, max_value: int = 6):
    for ground, sets in _random_instances():
        t.population += 1
        got = exact_min_cover(ground, sets)
        want = brute_force_min_cover(ground, sets)
        if (got and got[0]) != (want and want[0]):
            t.fail("random instance", f"solver {got}, exhaustive {want}, sets {sets}")
        elif got is not None:
            u = 0
            for i in got[1]:
                u |= sets[i]
            if u & ground != ground:
                t.fail("random instance", f"solver cover {got[1]} misses points")
    for A in pop.members:
        if not A.sigma_n.is_finite or A.sigma_n.value > max_value:
            continue
        t.population += 1
        masks = [s.mask for s, _ in A.maximal_family.sets]
        want = brute_force_min_cover(A.G.full_mask, masks, max_size=max_value)
        if want is None or want[0] != A.sigma_n.value:
            t.fail(A.name, f"solver {A.sigma_n.value}, exhaustive {want and want[0]}")


def _naive_closure(G, seed: set[int]) -> frozenset[int]:
    elems = {0} | set(seed)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in seed:
                c = G.product[a][b]
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(elems)


def lattice_oracle(G) -> set[frozenset[int]]:
    """All subgroups, found by adjoining elements one at a time to generator sets."""
    level = {frozenset([0])}
    found = set(level)
    while level:
        nxt = set()
        for H in level:
            for g in range(G.order):
                if g not in H:
                    J = _naive_closure(G, set(H) | {g})
                    if J not in found:
                        found.add(J)
                        nxt.add(J)
        level = nxt
    return found


def _check_lattice(pop: Population, t: _Tally, max_order: int = 24):
    for A in pop.members:
        if A.G.order > max_order:
            continue
        t.population += 1
        got = {frozenset(H.members) for H in A.lattice.subgroups}
        want = lattice_oracle(A.G)
        if got != want:
            t.fail(A.name, f"enumerated {len(got)} subgroups, oracle {len(want)}")
    s4 = pop.expr("symmetric(4)")
    if len(s4.lattice) != 30:
        t.fail(s4.name, f"{len(s4.lattice)} subgroups, expected 30")


# -- p-group lemma suites -------------------------------------------------------

def _z_le_phi(A: GroupAnalysis) -> bool:
    from .group import center
    from .lattice import frattini

    return center(A.G).mask & ~frattini(A.lattice).mask == 0


def _phi_index(A: GroupAnalysis) -> int:
    return A.G.order // A.structure.frattini_size


def _check_gen(pop: Population, t: _Tally):
    for A in pop.p_groups():
        p = prime_factors(A.G.order)[0]
        if p == 2 or not _z_le_phi(A) or A.sigma_n.is_finite:
            continue
        t.population += 1
        if _phi_index(A) != p * p:
            t.fail(A.name, f"|G:Phi(G)| = {_phi_index(A)}, expected {p * p}")


def _check_sufficient(pop: Population, t: _Tally):
    for A in pop.p_groups():
        p = prime_factors(A.G.order)[0]
        if p == 2 or not _z_le_phi(A) or _phi_index(A) <= p * p:
            continue
        t.population += 1
        if not A.sigma_n.is_finite:
            t.fail(A.name, f"|G:Phi(G)| = {_phi_index(A)} but sigma_n = inf")


def _check_gen2(pop: Population, t: _Tally):
    for A in pop.p_groups():
        if prime_factors(A.G.order)[0] != 2 or not _z_le_phi(A) or A.sigma_n.is_finite or A.G.order == 1:
            continue
        t.population += 1
        G = A.G
        x = A.sigma_n.witness_element
        M = centralizer(G, x).mask
        if commutator_subgroup(G).mask & ~M:
            t.fail(A.name, "derived subgroup not inside C_G(x)")
        if any(H.mask & ~M == 0 and not H.is_normal for H in A.lattice.subgroups):
            t.fail(A.name, "C_G(x) has a subgroup that is not normal in G")
        cyc = {}
        for g in range(G.order):
            c, k = [0], g
            while k != 0:
                c.append(k)
                k = G.product[k][g]
            cyc[g] = c
        mem = members(M)
        found = False
        for y in range(G.order):
            MY = {G.product[m][a] for m in mem for a in cyc[y]}
            for z in range(y, G.order):
                if len(MY) * len(cyc[z]) < G.order:
                    continue
                if len({G.product[u][b] for u in MY for b in cyc[z]}) == G.order:
                    found = True
                    break
            if found:
                break
        if not found:
            t.fail(A.name, "no y, z with G = C_G(x)<y><z>")


def _nonabelian_p_groups(pop: Population):
    return [A for A in pop.p_groups() if not A.G.is_abelian()]


def _check_index(pop: Population, t: _Tally):
    configs = 0
    for A in _nonabelian_p_groups(pop):
        G, L = A.G, A.lattice
        p = prime_factors(G.order)[0]
        normals = [H for H in L.subgroups if H.is_normal]
        t.population += 1
        for T in L.subgroups:
            if T.is_normal:
                continue
            index = None
            for K in normals:
                if K.order != p * T.order or T.mask & ~K.mask:
                    continue
                for N in normals:
                    if N.order * p != T.order or N.mask & ~T.mask:
                        continue
                    if any(not (N.mask >> G.power(k, p)) & 1 for k in members(K.mask)):
                        continue  # K/N is cyclic of order p^2
                    configs += 1
                    if index is None:
                        index = G.order // L.normalizer_mask(T).bit_count()
                    if index != p:
                        t.fail(A.name, f"subgroup {T.id} has normalizer of index {index}")
    t.reasons.append(f"{configs} (K, T, L) configurations")


def _index_p_normalizers(A: GroupAnalysis) -> list[int]:
    p = prime_factors(A.G.order)[0]
    return [s.mask for s, _ in A.family.sets if s.mask.bit_count() * p == A.G.order]


def _check_cyc22(pop: Population, t: _Tally):
    for A in _nonabelian_p_groups(pop):
        if not A.sigma_n.is_finite:
            continue
        t.population += 1
        u = 0
        for m in _index_p_normalizers(A):
            u |= m
        if u != A.G.full_mask:
            missing = members(A.G.full_mask & ~u)[0]
            t.fail(A.name, f"element {missing} lies in no normalizer that is a maximal subgroup")


def _check_max2(pop: Population, t: _Tally):
    for A in _nonabelian_p_groups(pop):
        t.population += 1
        tops = _index_p_normalizers(A)
        for s, rep in A.family.sets:
            if not any(s.mask & ~m == 0 for m in tops):
                t.fail(A.name, f"normalizer of subgroup {rep} lies in no maximal-subgroup normalizer")


# -- named families --------------------------------------------------------------

def _check_heisenberg(pop: Population, t: _Tally):
    for p in (3, 5):
        A = pop.expr(f"heisenberg({p})")
        t.population += 1
        exponent_ok = all(A.G.element_order[g] == p for g in range(1, A.G.order))
        if A.G.order != p ** 3 or not exponent_ok:
            t.fail(A.name, "not of order p^3 and exponent p")
        if _sn(A) != p + 1:
            t.fail(A.name, f"sigma_n = {A.sigma_n}, expected {p + 1}")


AFFINE_CASES = [(2, 2), (2, 3), (3, 2)]


def _check_affine(pop: Population, t: _Tally):
    from .invariants import fitting

    for p, k in AFFINE_CASES:
        A = pop.expr(f"affine({p},{k})")
        q = p ** k
        t.population += 1
        if _sn(A) != q + 1:
            t.fail(A.name, f"sigma_n = {A.sigma_n}, expected {q + 1}")
        H = (1 << q) - 1
        G = A.G
        if not is_subgroup_mask(G, H) or any(G.element_order[h] != p for h in range(1, q)):
            t.fail(A.name, "translation subgroup is not elementary abelian")
            continue
        if any(G.product[a][b] != G.product[b][a] for a in range(q) for b in range(q)):
            t.fail(A.name, "translation subgroup is not abelian")
        if fitting(G, A.lattice).mask != H:
            t.fail(A.name, "Fitting subgroup differs from the translation subgroup")
        for S in A.lattice.subgroups:
            if 1 < S.order < q and S.mask & ~H == 0 and S.is_normal:
                t.fail(A.name, f"proper subgroup {S.id} of H is normal")


def _subgroup_profile(A: GroupAnalysis) -> tuple:
    return (A.G.order, A.structure.center_size, tuple(sorted(Counter(H.order for H in A.lattice.subgroups).items())))


def _check_affine_a4(pop: Population, t: _Tally):
    a, b = pop.expr("affine(2,2)"), pop.expr("alternating(4)")
    t.population = 2
    if _subgroup_profile(a) != _subgroup_profile(b):
        t.fail(a.name, f"profile {_subgroup_profile(a)} differs from alternating(4) {_subgroup_profile(b)}")


def _coverage_note(pop: Population, n: int) -> str:
    have, known = pop.coverage(n)
    return f"order {n}: {have} distinct profiles of {known if known else '?'} known groups"


def _check_order16(pop: Population, t: _Tally):
    group = pop.of_order(16)
    t.population = len(group)
    t.reasons.append(_coverage_note(pop, 16))
    hits = [A.name for A in group if _sn(A) == 3]
    for A in group:
        if not A.G.is_abelian() and _sn(A) not in (3, 5, INF):
            t.fail(A.name, f"sigma_n = {A.sigma_n}")
    if hits:
        t.reasons.append("sigma_n = 3 attained by " + ", ".join(hits))
    elif pop.is_complete(16):
        t.fail("order 16", "no group of order 16 attains sigma_n = 3")
    if not pop.is_complete(16):
        t.skip = "order 16 coverage not certified"


def _check_odd_p4(pop: Population, t: _Tally):
    group = [A for A in pop.of_order(27) if not A.G.is_abelian()] + pop.of_order(81)
    t.population = len(group)
    t.reasons.append(_coverage_note(pop, 27))
    t.reasons.append(_coverage_note(pop, 81))
    for A in group:
        if _sn(A) not in (4, INF):
            t.fail(A.name, f"sigma_n = {A.sigma_n}")


def _check_order32(pop: Population, t: _Tally):
    group = [A for A in pop.of_order(32) if not A.G.is_abelian()]
    t.population = len(group)
    t.reasons.append(_coverage_note(pop, 32))
    hits = [A.name for A in group if _sn(A) == 5]
    if hits:
        t.reasons.append("sigma_n = 5 attained by " + ", ".join(hits))
    elif pop.is_complete(32):
        t.fail("order 32", "complete order-32 population has no group with sigma_n = 5")
    else:
        t.skip = "no order-32 group with sigma_n = 5 in an incomplete population"


def _check_structure(pop: Population, t: _Tally):
    for A in pop.members:
        st = A.structure
        t.population += 1
        if st.is_abelian and not st.is_nilpotent or st.is_nilpotent and not st.is_solvable:
            t.fail(A.name, "abelian => nilpotent => solvable violated")
        if st.is_p_group and not st.is_nilpotent:
            t.fail(A.name, "p-group reported non-nilpotent")
        if st.is_nilpotent != (st.fitting_size == st.order):
            t.fail(A.name, "nilpotent iff Fit(G) = G violated")
        if st.is_abelian and not st.is_dedekind:
            t.fail(A.name, "abelian group reported non-Dedekind")
        if st.is_p_group and st.order <= 64 and st.min_generators is not None:
            k = min_generators_exhaustive(A.G, A.lattice)
            if k is not None and k != st.min_generators:
                t.fail(A.name, f"Burnside count {st.min_generators}, exhaustive {k}")


STRUCTURE_KEYS = ("is_abelian", "is_nilpotent", "is_solvable", "is_dedekind", "center_size",
                  "commutator_size", "frattini_size", "fitting_size", "min_generators", "order")


def _check_recorded(pop: Population, t: _Tally):
    for A in pop.members:
        rec = getattr(A, "record", None)
        if rec is None or not rec.results:
            continue
        t.population += 1
        res = rec.results
        for key in ("sigma_n", "sigma", "sigma_c"):
            if key in res:
                out = getattr(A, key)
                got = None if out is None else (out.value if out.is_finite else "inf")
                if res[key] != got:
                    t.fail(A.name, f"recorded {key} = {res[key]!r}, recomputed {got!r}")
        claimed = res.get("structure") or {}
        actual = A.structure.to_dict()
        for key in STRUCTURE_KEYS:
            if key in claimed and claimed[key] != actual[key]:
                t.fail(A.name, f"recorded {key} = {claimed[key]!r}, recomputed {actual[key]!r}")
    for name, err in pop.errors:
        t.fail(name, f"record does not build: {err}")


CHECKS: list[tuple[str, str, Callable]] = [
    ("s4_value", "sigma_n(S4) = 7 with a verified 7-normalizer witness", _check_s4),
    ("dihedral_no_cover", "D_2n (n > 2) has no normalizer covering; elements of order n avoid all proper normalizers", _check_dihedral),
    ("dedekind_no_cover", "Q8 is Dedekind; Dedekind groups have no proper normalizers", _check_dedekind),
    ("nocover_witness", "sigma_n = inf iff some element lies in no proper normalizer", _check_nocover),
    ("fit_equivalence", "a covering exists iff Fit(G) lies in the union of proper normalizers", _check_fit),
    ("quotient_monotone", "sigma_n(G) <= sigma_n(G/N) when the right side is finite", _check_quotients),
    ("direct_product", "sigma_n(HxK) = min for coprime orders, <= min otherwise", _check_direct),
    ("cyclic_hall_fitting", "solvable with cyclic Hall Fitting subgroup => sigma_n = inf", _check_cyclic_hall),
    ("p_group_values", "non-abelian p-group with a covering: {3,5} for p = 2, p+1 for odd p", _check_p_groups),
    ("nilpotent_values", "nilpotent with a covering: sigma_n in {p+1, 5}, p dividing |G|", _check_nilpotent),
    ("cohn_sigma", "sigma(G) = p+1 for non-cyclic p-groups of order <= 32", _check_cohn),
    ("lower_bound", "every finite sigma_n, sigma, sigma_c is at least 3", _check_lower_bound),
    ("maximality_lossless", "restricting to maximal normalizers leaves sigma_n unchanged (order <= 48)", _check_maximality),
    ("witness_minimal", "finite sigma_n = k <= 8: witness covers, no k-1 maximal normalizers do", _check_minimality),
    ("solver_oracle", "branch-and-bound agrees with exhaustive subfamily search", _check_solver),
    ("lattice_complete", "subgroup enumeration matches generator-set exhaustion (order <= 24); S4 has 30", _check_lattice),
    ("lemma_gen", "odd p, Z <= Phi, sigma_n = inf => |G:Phi| = p^2", _check_gen),
    ("lemma_sufficient", "odd p, Z <= Phi, |G:Phi| > p^2 => sigma_n finite", _check_sufficient),
    ("lemma_gen2", "2-group, Z <= Phi, sigma_n = inf => M = C_G(x) has G' <= M, all subgroups normal, G = M<y><z>", _check_gen2),
    ("lemma_index", "K/L = Cp x Cp, |K:T| = p, T non-normal => |G:N(T)| = p", _check_index),
    ("lemma_cyc22", "p-group with a covering: every element lies in a normalizer that is a maximal subgroup", _check_cyc22),
    ("lemma_max2", "p-group: every proper normalizer lies in one that is a maximal subgroup", _check_max2),
    ("heisenberg_values", "order p^3 exponent p (p = 3, 5): sigma_n = p+1", _check_heisenberg),
    ("affine_values", "affine(p,k), k > 1: sigma_n = p^k+1; H = Fit elementary abelian with no normal proper subgroup", _check_affine),
    ("affine_a4_profile", "affine(2,2) and A4 share order, center size and subgroup profile", _check_affine_a4),
    ("order16_sigma3", "some group of order 16 has sigma_n = 3; non-abelian order 16 in {3,5,inf}", _check_order16),
    ("order27_81_values", "non-abelian order 27 and all order 81 groups: sigma_n in {4, inf}", _check_odd_p4),
    ("order32_sigma5", "some non-abelian group of order 32 has sigma_n = 5", _check_order32),
    ("structure_consistency", "structure report is internally consistent", _check_structure),
    ("recorded_results", "results stored in catalog records are reproducible", _check_recorded),
]

CHECK_IDS = [c[0] for c in CHECKS]


def run_check(check_id: str, pop: Population) -> CheckReport:
    for cid, claim, fn in CHECKS:
        if cid == check_id:
            t = _Tally()
            fn(pop, t)
            if t.counterexamples:
                status = "fail"
            elif t.skip:
                status = "skipped"
                t.reasons.append(t.skip)
            elif t.population == 0:
                status = "skipped"
                t.reasons.append("empty population")
            else:
                status = "pass"
            return CheckReport(cid, claim, t.population, status, t.reasons, t.counterexamples)
    raise KeyError(check_id)


def run_checks(pop: Population, ids=None) -> list[CheckReport]:
    return [run_check(cid, pop) for cid in (ids or CHECK_IDS)]


def traceability_table(reports: list[CheckReport]) -> str:
    w = max(len(r.check_id) for r in reports)
    lines = [f"{'check':<{w}}  {'population':>10}  {'status':<7}  claim"]
    for r in reports:
        lines.append(f"{r.check_id:<{w}}  {r.population:>10}  {r.status:<7}  {r.claim}")
    return "\n".join(lines)
