import pytest

fuselab = pytest.importorskip("fuselab")


def test_catalog_and_groups():
    names = fuselab.catalog_names()
    assert "S4" in names and "A6" in names and "GL(3,2)" in names
    g = fuselab.load_group("S4")
    assert g.order == 24
    assert g.mul(0, 3) == 3

    doc = {"format": "perm", "name": "D8", "degree": 4,
           "generators": [[[1, 2, 3, 4]], [[1, 3]]]}
    d8 = fuselab.load_group(doc)
    assert d8.order == 8


def test_fusion_system_of_s4():
    f = fuselab.fusion_of_group("S4", 2)
    assert f.prime == 2
    assert f.sylow.order == 8
    assert f.object_count == 10
    assert f.is_saturated()
    hyp = fuselab.hyperfocal(f)
    assert hyp.order == 4

    op = fuselab.o_p_subsystem(f)
    assert op.sylow.order == 4
    a4 = fuselab.fusion_of_group("A4", 2)
    assert a4.is_saturated()

    limit, chain = fuselab.f_infinity(f)
    assert fuselab.is_trivial_system(limit)
    assert len(chain) >= 3
    assert chain[1]["step"] in ("p-power index", "index prime to p")


def test_reduction_of_a6_is_identity():
    f = fuselab.fusion_of_group("A6", 2)
    red = fuselab.reduction(f)
    assert fuselab.fusion_equals(red, f)


def test_cli_entry_point():
    out = fuselab.run(["analyze", "--catalog", "S4", "-p", "2"])
    assert out["exit_code"] == 0
    assert out["report"]["result"]["saturated"] is True

    bad = fuselab.run(["analyze", "--catalog", "NoSuchGroup", "-p", "2"])
    assert bad["exit_code"] == 3


def test_selftest_single_suite():
    results = fuselab.selftest(only="hyperfocal")
    assert len(results) == 1
    assert results[0]["passed"]
