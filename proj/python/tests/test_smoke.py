import pytest

import _orbitrank as orb

SPEC = """
chain S3 = [ (0 1 2),(0 1) ] > [ (0 1 2) ] > [ ]
group W = wreath(powinf(atom(Z2)))
"""


def test_ordinals():
    assert orb.ord_str("w^2*3+w*1+4") == "w^2*3+w+4"
    assert orb.ord_add("3", "w") == "w"
    assert orb.ord_add("w*2+5", "w") == "w*3"
    assert orb.ord_mul_omega("w") == "w^2"
    assert orb.ord_limit_part("w^2+w*2+7") == "w^2+w*2"
    assert orb.ord_cmp("w", "3") > 0
    assert orb.ord_kind("w*2") == "limit"
    with pytest.raises(orb.OrbitrankError):
        orb.ord_str("nope")


def test_chain_ranks():
    spec = orb.SpecFile.parse(SPEC)
    s3 = spec.chain("S3")
    assert s3.degree == 3
    assert s3.rho_table() == ["0", "1", "2"]
    assert s3.rho() == "2"
    assert "digraph" in s3.tree_dot(2)
    assert s3.tree_json(0) == "[]"


def test_classification():
    spec = orb.SpecFile.parse(SPEC)
    assert spec.classify("W") == ("1", False)
    assert not spec.is_alpha_cli("W", "1")
    assert spec.is_L_alpha_cli("W", "1")


def test_examples_and_truncation():
    text, rank, tight = orb.build_example("G", "1")
    assert text == "wreath(powinf(atom(Z2)))"
    assert rank == "1" and not tight
    text, rank, tight = orb.build_example("H", "w")
    assert rank == "w" and tight

    spec = orb.SpecFile.parse(SPEC)
    shadow = spec.truncate("W", 3, 2)
    assert shadow.order(0) == 32
    assert shadow.rho() != "0"


def test_verify_suite_small():
    ok, report = orb.verify_suite(1, 2)
    assert ok, report
    assert "hierarchy-witnesses" in report
