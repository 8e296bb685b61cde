"""Per-group pipeline: lattice, covering numbers, structure, result rows."""

from __future__ import annotations

import time
from functools import cached_property

from . import config
from .covering import (
    CoverOutcome,
    covering_existence,
    fit_criterion,
    maximal_normalizer_family,
    proper_normalizers,
    sigma,
    sigma_c,
    sigma_n,
)
from .errors import BudgetError, GroupError
from .group import GroupTable
from .invariants import structure_report
from .lattice import SubgroupLattice, enumerate_subgroups

RESULT_FIELDS = (
    "name", "order", "sigma_n", "sigma", "sigma_c", "is_nilpotent",
    "is_solvable", "fitting_size", "witness", "elapsed_ms", "error",
)


class GroupAnalysis:
    """Lazily computed invariants of one group, shared by checks and commands."""

    def __init__(self, G: GroupTable, name: str | None = None, node_cap: int | None = None,
                 lattice_cap: int | None = None, sigma_budget: int | None = None,
                 origin: str = "sweep", expr: str | None = None):
        self.G = G
        self.name = name or G.name
        self.origin = origin
        self.expr = expr
        self.node_cap = node_cap
        self.lattice_cap = lattice_cap
        self.sigma_budget = config.DEFAULT_SIGMA_ORDER_BUDGET if sigma_budget is None else sigma_budget

    def __repr__(self):
        return f"GroupAnalysis({self.name!r}, order={self.G.order})"

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return enumerate_subgroups(self.G, cap=self.lattice_cap)

    @cached_property
    def family(self):
        return proper_normalizers(self.G, self.lattice)

    @cached_property
    def maximal_family(self):
        return maximal_normalizer_family(self.family)

    @cached_property
    def sigma_n(self) -> CoverOutcome:
        return sigma_n(self.G, self.lattice, node_cap=self.node_cap)

    @cached_property
    def sigma(self) -> CoverOutcome | None:
        """None when the group is above the sigma order budget."""
        if self.G.order > self.sigma_budget:
            return None
        return sigma(self.G, self.lattice, node_cap=self.node_cap, order_budget=self.sigma_budget)

    @cached_property
    def sigma_c(self) -> CoverOutcome:
        return sigma_c(self.G, self.lattice, node_cap=self.node_cap)

    @cached_property
    def structure(self):
        return structure_report(self.G, self.lattice)

    @cached_property
    def covering_existence(self):
        return covering_existence(self.G, self.lattice)

    @cached_property
    def fit_criterion(self) -> bool:
        return fit_criterion(self.G, self.lattice)

    def witness(self) -> dict:
        out = self.sigma_n
        if out.is_finite:
            return {"cover": [list(self.lattice[i].generators) for i in out.witness_cover]}
        return {"element": out.witness_element}


def _num(outcome: CoverOutcome | None):
    if outcome is None:
        return None
    return outcome.value if outcome.is_finite else "inf"


def result_row(name: str, build, node_cap: int | None = None, timing: bool = False) -> dict:
    """One results-file record; ``build`` returns the GroupTable.

    Errors are recorded in the row instead of propagating.  ``elapsed_ms``
    stays null unless ``timing`` is set, so files are reproducible.
    """
    row = dict.fromkeys(RESULT_FIELDS)
    row["name"] = name
    start = time.perf_counter()
    try:
        G = build()
        row["order"] = G.order
        A = GroupAnalysis(G, name=name, node_cap=node_cap)
        row["sigma_n"] = _num(A.sigma_n)
        row["sigma"] = _num(A.sigma)
        row["sigma_c"] = _num(A.sigma_c)
        st = A.structure
        row["is_nilpotent"] = st.is_nilpotent
        row["is_solvable"] = st.is_solvable
        row["fitting_size"] = st.fitting_size
        row["witness"] = A.witness()
    except GroupError as exc:
        kind = "budget" if isinstance(exc, BudgetError) else "input"
        row["error"] = f"{kind}: {type(exc).__name__}: {exc}"
    if timing:
        row["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return row
