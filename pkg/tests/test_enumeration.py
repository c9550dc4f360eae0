import numpy as np
import pytest

from hyperlattice.core import (
    CornerSumHypermatrix,
    LatinSquare,
    is_ashm,
    is_asm,
    is_corner_sum_hypermatrix,
    is_pashm,
)
from hyperlattice.enumeration import (
    EnumerationCapExceeded,
    count_ashm_by_planes,
    count_pashm_by_planes,
    enumerate_ashm,
    enumerate_asm,
    enumerate_corner_sum,
    enumerate_kind,
    enumerate_latin,
    enumerate_monotone_hypertriangles,
    enumerate_pashm,
)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 12), (4, 576)])
def test_latin_counts_and_validity(n, count):
    res = enumerate_latin(n)
    assert res.count == count == len(res.objects())
    objs = res.objects()
    assert all(isinstance(s, LatinSquare) for s in objs)
    assert len(set(objs)) == count


def test_latin_order_5_count_and_parallel_agree():
    assert enumerate_latin(5, count_only=True).count == 161280
    assert enumerate_latin(4, count_only=True, workers=2).count == 576


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)])
def test_asm_counts(n, count):
    asms = enumerate_asm(n)
    assert len(asms) == count and all(is_asm(m) for m in asms)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 35)])
def test_corner_sum_lists(n, count):
    res = enumerate_corner_sum(n)
    objs = res.objects()
    assert res.count == count
    assert all(is_corner_sum_hypermatrix(c.entries) for c in objs)
    assert len({c.key() for c in objs}) == count


def test_corner_sum_order_4():
    assert enumerate_corner_sum(4, count_only=True).count == 62858
    assert enumerate_corner_sum(4, count_only=True, workers=2).count == 62858


@pytest.mark.parametrize("n,ashm,pashm", [(1, 1, 1), (2, 2, 2), (3, 14, 18), (4, 924, 2424)])
def test_signed_counts_two_strategies(n, ashm, pashm):
    a = enumerate_ashm(n, strategy="both")
    p = enumerate_pashm(n, strategy="both")
    assert len(a.elements) == ashm and len(p.elements) == pashm
    assert count_ashm_by_planes(n) == ashm and count_pashm_by_planes(n) == pashm
    if n <= 3:
        assert all(is_ashm(x) for x in a.elements)
        assert all(is_pashm(x) for x in p.elements)


def test_ashm_strategies_individually():
    planes = enumerate_ashm(3, strategy="planes").elements
    corner = enumerate_ashm(3, strategy="corner-sum").elements
    assert np.array_equal(planes, corner)


def test_triangle_counts():
    assert enumerate_monotone_hypertriangles(3, count_only=True).count == 35
    assert enumerate_monotone_hypertriangles(4, count_only=True).count == 62858


def test_caps(monkeypatch):
    monkeypatch.delenv("HYPERLATTICE_MAX_N", raising=False)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_latin(6, count_only=True)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_corner_sum(5, count_only=True)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_ashm(5)
    with pytest.raises(ValueError):
        enumerate_latin(0)


def test_env_override_lowers_cap(monkeypatch):
    monkeypatch.setenv("HYPERLATTICE_MAX_N", "2")
    with pytest.raises(EnumerationCapExceeded):
        enumerate_latin(3)


def test_count_only_result_has_no_elements():
    res = enumerate_kind("latin", 3, count_only=True)
    assert res.elements is None
    with pytest.raises(ValueError):
        list(res)


def test_enumerate_kind_dispatch():
    assert enumerate_kind("asm", 4).count == 42
    assert enumerate_kind("triangle", 3, count_only=True).count == 35
    assert isinstance(enumerate_kind("corner-sum", 2).objects()[0], CornerSumHypermatrix)
    with pytest.raises(ValueError):
        enumerate_kind("sudoku", 3)


@pytest.mark.long
def test_ashm_order_5():
    assert enumerate_ashm(5, count_only=True).count == 852960
