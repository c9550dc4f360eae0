import numpy as np
import pytest

from hyperlattice import reference_data as ref
from hyperlattice.bruhat import bruhat_leq
from hyperlattice.core import ValidationError
from hyperlattice.enumeration import enumerate_asm, enumerate_monotone_hypertriangles
from hyperlattice.triangles import (
    MonotoneHypertriangle,
    asm_to_monotone_triangle,
    check_conditions,
    check_interlacing,
    from_triangle,
    interlacing_violations,
    is_monotone_triangle,
    monotone_triangle_to_asm,
    render,
    to_triangle,
    triangle_leq,
)
from helpers import lattice


def test_known_triangle():
    a = ref.stack_planes(ref.TRIANGLE_HYPERMATRIX)
    t = to_triangle(a)
    assert t.rows() == ref.TRIANGLE_ROWS
    assert t.is_valid() and check_interlacing(t)
    assert np.array_equal(from_triangle(t), a)
    assert t[3, 4, 2] == 2  # fourth symbol of row 3 in plane 2
    assert MonotoneHypertriangle.from_rows(ref.TRIANGLE_ROWS) == t


def test_render_layout():
    text = render(to_triangle(ref.stack_planes(ref.TRIANGLE_HYPERMATRIX)))
    planes = text.split("\n\n")
    assert len(planes) == 3
    assert planes[0].splitlines() == ["  1", " 1 2", "1 2 3"]


def test_order5_array_fails_condition_3_only():
    t = MonotoneHypertriangle.from_rows(ref.order5_completed_rows())
    assert check_interlacing(t) and interlacing_violations(t) == []
    rep = check_conditions(t)
    assert rep.failed() == [3]
    assert all(m.startswith("plane 2") for m in rep.condition3)
    with pytest.raises(ValidationError):
        from_triangle(t)


def test_bijection_on_order_3():
    seen = set()
    for c in lattice(3):
        a = c.hypermatrix()
        t = to_triangle(a)
        assert t.is_valid()
        assert np.array_equal(from_triangle(t), a)
        seen.add(t)
    assert len(seen) == 35


def test_enumerated_triangles_are_the_images():
    res = enumerate_monotone_hypertriangles(3)
    images = {to_triangle(c.hypermatrix()) for c in lattice(3)}
    found = {MonotoneHypertriangle(m) for m in res.elements}
    assert found == images


def test_triangle_order_matches_bruhat():
    elems = lattice(3)
    tris = [to_triangle(c.hypermatrix()) for c in elems]
    for x in range(0, len(elems), 2):
        for y in range(len(elems)):
            assert triangle_leq(tris[x], tris[y]) == bruhat_leq(elems[x], elems[y])


def test_bad_inputs():
    with pytest.raises(ValidationError):
        to_triangle(-np.eye(3, dtype=int)[:, :, None].repeat(3, axis=2))
    with pytest.raises(ValidationError):
        MonotoneHypertriangle.from_rows([[[1]], [[2]]], 2)
    with pytest.raises(ValidationError):
        MonotoneHypertriangle.from_rows([[[3], [1, 2]], [[1, 2], [1, 1, 2, 2]]])
    with pytest.raises(ValueError):
        triangle_leq(to_triangle(np.ones((1, 1, 1), int)),
                     to_triangle(ref.stack_planes(ref.TRIANGLE_HYPERMATRIX)))


def test_unsorted_row_fails_condition():
    rows = [list(map(list, p)) for p in ref.TRIANGLE_ROWS]
    rows[1][1] = [3, 2, 1, 1]
    t = MonotoneHypertriangle.from_rows(rows)
    assert not t.is_valid()


@pytest.mark.parametrize("n", range(1, 6))
def test_classical_monotone_triangles(n):
    for m in enumerate_asm(n):
        tri = asm_to_monotone_triangle(m)
        assert is_monotone_triangle(tri)
        assert np.array_equal(monotone_triangle_to_asm(tri), m)
