import json

import pytest

from grpcover.analysis import GroupAnalysis
from grpcover.catalog import (
    GroupRecord,
    constructed,
    export_regular,
    load_catalog,
    load_catalogs,
    parse_cayley_file,
    parse_cayley_text,
    parse_gens_file,
    parse_gens_text,
    parse_jsonl_text,
    resolve_group,
    write_gens,
)
from grpcover.constructions import build
from grpcover.errors import DegreeMismatch, DuplicateName, InputError, NotAGroup, ParseError

from conftest import CATALOGS, s3_cayley


def _csv(rows):
    return f"order,{len(rows)}\n" + "\n".join(",".join(map(str, r)) for r in rows) + "\n"


def test_gens_single_block(tmp_path):
    path = tmp_path / "c4.gens"
    path.write_text("name: C4\ndegree: 4\ngen: 1 2 3 0\n", encoding="utf-8")
    (rec,) = parse_gens_file(path)
    assert rec.name == "C4" and rec.degree == 4 and rec.build().order == 4


def test_gens_empty_and_comments():
    assert parse_gens_text("") == []
    assert parse_gens_text("# nothing here\n\n\n") == []
    text = "# header\nname: V4  # Klein\ndegree: 4\n# between\ngen: 1 0 3 2\ngen: 2 3 0 1\n\n\nname: C2\ndegree: 2\ngen: 1 0\n"
    recs = parse_gens_text(text)
    assert [r.name for r in recs] == ["V4", "C2"]
    assert [r.build().order for r in recs] == [4, 2]


def test_gens_errors():
    with pytest.raises(ParseError) as info:
        parse_gens_text("name: X\ndegree: 3\ngen: 0 0 1\n")
    assert info.value.line == 3 and "line 3" in str(info.value)
    with pytest.raises(DegreeMismatch):
        parse_gens_text("name: X\ndegree: 3\ngen: 0 1\n")
    with pytest.raises(DuplicateName):
        parse_gens_text("name: X\ndegree: 2\ngen: 1 0\n\nname: X\ndegree: 2\ngen: 0 1\n")
    with pytest.raises(ParseError):
        parse_gens_text("name: X\ngen: 1 0\n")
    with pytest.raises(ParseError):
        parse_gens_text("name: X\ndegree: 2\nfoo: 1\n")
    with pytest.raises(ParseError):
        parse_gens_text("degree: 2\ngen: 1 0\n")


def test_cayley_examples(tmp_path):
    rec = parse_cayley_text("order,2\n0,1\n1,0\n")
    G = rec.build()
    assert G.order == 2 and G.is_abelian()
    path = tmp_path / "s3.csv"
    path.write_text(_csv(s3_cayley()), encoding="utf-8")
    rec = parse_cayley_file(path)
    assert rec.name == "s3" and rec.build().order == 6 and not rec.build().is_abelian()
    assert load_catalog(path)[0].table == rec.table


@pytest.mark.parametrize("text", ["order,2\n0,1\n1\n", "order,2\n0,1\n", "size,2\n0,1\n1,0\n", "",
                                  "order,2\n0,1\n1,x\n", "order,2\n0,1\n1,2\n"])
def test_cayley_malformed(text):
    with pytest.raises(ParseError):
        parse_cayley_text(text)


def test_cayley_not_a_group():
    with pytest.raises(NotAGroup):
        parse_cayley_text("order,2\n0,1\n1,1\n")


def test_jsonl_and_expression_lists(tmp_path):
    lines = [
        {"name": "s4", "source": {"kind": "constructed", "expr": "symmetric( 4 )"}},
        {"name": "c3", "source": {"kind": "generators", "degree": 3, "gens": [[1, 2, 0]]}, "results": {"sigma_n": "inf"}},
        {"name": "c2", "source": {"kind": "cayley", "table": [[0, 1], [1, 0]]}},
    ]
    recs = parse_jsonl_text("\n".join(json.dumps(x) for x in lines))
    assert [r.build().order for r in recs] == [24, 3, 2]
    assert recs[0].expr == "symmetric(4)" and recs[1].results == {"sigma_n": "inf"}
    assert [r.to_json() for r in recs][1] == lines[1]
    with pytest.raises(ParseError):
        parse_jsonl_text('{"name": "x"}')
    with pytest.raises(DegreeMismatch):
        parse_jsonl_text('{"name": "x", "source": {"kind": "generators", "degree": 3, "gens": [[1, 0]]}}')
    lst = tmp_path / "groups.txt"
    lst.write_text("symmetric(3)\n# comment\n\ndihedral(8)\n", encoding="utf-8")
    assert [r.name for r in load_catalog(lst)] == ["symmetric(3)", "dihedral(8)"]


def test_duplicates_across_files(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("cyclic(3)\n", encoding="utf-8")
    b.write_text("cyclic( 3 )\n", encoding="utf-8")
    with pytest.raises(DuplicateName):
        load_catalogs([a, b])
    with pytest.raises(ParseError):
        load_catalog(tmp_path / "missing.gens")


def test_resolve_group(tmp_path):
    name, G = resolve_group("dihedral(8)", None)
    assert name == "dihedral(8)" and G.order == 8
    name, G = resolve_group(None, [CATALOGS / "extraspecial32.gens"], name="extraspecial32_minus")
    assert G.order == 32 and G.name == name
    with pytest.raises(InputError):
        resolve_group(None, [CATALOGS / "extraspecial32.gens"])


def test_renaming_does_not_leak_into_cache():
    rec = constructed("symmetric(3)", name="my_s3")
    assert rec.build().name == "my_s3"
    assert build("symmetric(3)").name == "symmetric(3)"


@pytest.mark.parametrize("expr", ["symmetric(4)", "dihedral(12)", "heisenberg(3)", "affine(2,2)",
                                  "dicyclic(8)", "product(symmetric(3),cyclic(2))", "cyclic(1)"])
def test_round_trip_regular_representation(tmp_path, expr):
    G = build(expr)
    path = tmp_path / "out.gens"
    write_gens([export_regular(G, name="exported")], path)
    (rec,) = parse_gens_file(path)
    H = rec.build()
    A, B = GroupAnalysis(G), GroupAnalysis(H)
    assert H.order == G.order and rec.degree == G.order
    assert str(A.sigma_n) == str(B.sigma_n)
    assert str(A.sigma) == str(B.sigma) and str(A.sigma_c) == str(B.sigma_c)
    assert A.structure == B.structure


def test_extraspecial_catalog():
    recs = load_catalog(CATALOGS / "extraspecial32.gens")
    assert [r.name for r in recs] == ["extraspecial32_plus", "extraspecial32_minus"]
    values = {}
    for r in recs:
        A = GroupAnalysis(r.build())
        st = A.structure
        assert (st.order, st.center_size, st.commutator_size, st.frattini_size) == (32, 2, 2, 2)
        values[r.name] = A.sigma_n.value
    assert values == {"extraspecial32_plus": 3, "extraspecial32_minus": 5}


def test_record_defaults():
    rec = GroupRecord(name="x", source="cayley", table=[[0]])
    assert rec.to_json() == {"name": "x", "source": {"kind": "cayley", "table": [[0]]}}
    assert rec.build().order == 1
