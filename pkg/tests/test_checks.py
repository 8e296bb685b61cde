import json

import pytest

from grpcover.catalog import constructed, load_catalog, parse_jsonl_text
from grpcover.checks import CHECK_IDS, Population, lattice_oracle, run_check, traceability_table
from grpcover.cli import main
from grpcover.constructions import build
from grpcover.lattice import enumerate_subgroups

from conftest import CATALOGS


def _records(*exprs):
    return [constructed(e) for e in exprs]


@pytest.fixture(scope="module")
def small_pop():
    return Population(include_sweep=False, records=_records(
        "symmetric(3)", "symmetric(4)", "dihedral(8)", "dicyclic(8)", "heisenberg(3)", "alternating(4)",
        "abelian(2,2)", "cyclic(9)", "semidirect(cyclic(4),4:[3])"))


def test_check_ids_unique():
    assert len(CHECK_IDS) == len(set(CHECK_IDS)) == 30
    with pytest.raises(KeyError):
        run_check("nonexistent", Population(include_sweep=False))


@pytest.mark.parametrize("cid", ["nocover_witness", "fit_equivalence", "quotient_monotone", "p_group_values",
                                 "nilpotent_values", "cohn_sigma", "lower_bound", "maximality_lossless",
                                 "witness_minimal", "lattice_complete", "lemma_cyc22", "lemma_max2",
                                 "structure_consistency"])
def test_checks_pass_on_small_population(small_pop, cid):
    r = run_check(cid, small_pop)
    assert r.status == "pass" and r.population > 0 and not r.counterexamples


def test_empty_population_is_skipped_not_passed():
    pop = Population(include_sweep=False)
    for cid in ["nocover_witness", "lemma_gen", "lemma_gen2", "lemma_index", "recorded_results", "order16_sigma3"]:
        r = run_check(cid, pop)
        assert r.status == "skipped" and r.reasons


def test_incomplete_order_is_skipped(small_pop):
    r = run_check("order16_sigma3", small_pop)
    assert r.status == "skipped" and "order 16 coverage not certified" in r.reasons
    r = run_check("order32_sigma5", small_pop)
    assert r.status == "skipped"


def test_order32_passes_with_catalog():
    pop = Population(include_sweep=False, records=load_catalog(CATALOGS / "extraspecial32.gens"))
    r = run_check("order32_sigma5", pop)
    assert r.status == "pass" and any("extraspecial32_minus" in x for x in r.reasons)


def test_lattice_oracle_agrees():
    for e in ["symmetric(4)", "dicyclic(12)", "product(symmetric(3),cyclic(3))"]:
        G = build(e)
        found = {frozenset(H.members) for H in enumerate_subgroups(G)}
        assert lattice_oracle(G) == found
    assert len(lattice_oracle(build("symmetric(4)"))) == 30


CORRUPT = [
    {"name": "c4_mislabeled", "source": {"kind": "constructed", "expr": "cyclic(4)"},
     "results": {"sigma_n": "inf", "structure": {"is_abelian": False}}},
    {"name": "s4_wrong", "source": {"kind": "constructed", "expr": "symmetric(4)"}, "results": {"sigma_n": 6}},
    {"name": "s3_ok", "source": {"kind": "constructed", "expr": "symmetric(3)"},
     "results": {"sigma_n": "inf", "sigma": 4, "sigma_c": 4, "structure": {"is_abelian": False, "fitting_size": 3}}},
]


@pytest.fixture
def corrupt_file(tmp_path):
    path = tmp_path / "corrupt.jsonl"
    path.write_text("\n".join(json.dumps(x) for x in CORRUPT) + "\n", encoding="utf-8")
    return path


def test_fault_injection_names_group(corrupt_file):
    pop = Population(include_sweep=False, records=load_catalog(corrupt_file))
    r = run_check("recorded_results", pop)
    assert r.status == "fail" and r.population == 3
    assert {c["group"] for c in r.counterexamples} == {"c4_mislabeled", "s4_wrong"}
    assert any("is_abelian" in c["detail"] for c in r.counterexamples)


def test_verify_paper_exit_code(capsys, corrupt_file, tmp_path):
    out_path = tmp_path / "reports.jsonl"
    code = main(["verify-paper", "--no-sweep", "--in", str(corrupt_file), "--check", "recorded_results",
                 "--check", "structure_consistency", "--out", str(out_path)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL recorded_results" in out and "c4_mislabeled" in out
    reports = [json.loads(ln) for ln in out_path.read_text().splitlines()]
    assert [r["status"] for r in reports] == ["fail", "pass"]


def test_counterexample_is_rerunnable(capsys, corrupt_file):
    pop = Population(include_sweep=False, records=load_catalog(corrupt_file))
    (cx,) = [c for c in run_check("recorded_results", pop).counterexamples if c["group"] == "s4_wrong"]
    assert cx["detail"] == "recorded sigma_n = 6, recomputed 7"
    assert main(["sigma-n", "--in", str(corrupt_file), "--name", "s4_wrong"]) == 0
    assert "sigma_n = 7" in capsys.readouterr().out.splitlines()


def test_unbuildable_record_fails_check():
    recs = parse_jsonl_text('{"name": "bad", "source": {"kind": "cayley", "table": [[0, 1], [1, 1]]}}')
    pop = Population(include_sweep=False, records=recs)
    assert pop.errors and run_check("recorded_results", pop).status == "fail"


def test_verify_paper_passes_on_clean_subset(capsys):
    code = main(["verify-paper", "--no-sweep", "--check", "s4_value", "--check", "heisenberg_values",
                 "--check", "lemma_gen"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0].split() == ["check", "population", "status", "claim"]
    assert "skipped lemma_gen: empty population" in out


def test_traceability_table(small_pop):
    reports = [run_check(c, small_pop) for c in ("s4_value", "lemma_gen")]
    lines = traceability_table(reports).splitlines()
    assert len(lines) == 3 and lines[1].startswith("s4_value") and "pass" in lines[1]
