import numpy as np
import pytest

from hyperlattice import reference_data as ref
from hyperlattice.core import (
    CornerSumHypermatrix,
    LatinSquare,
    ValidationError,
    as_hypermatrix,
    check_partial_sum_bounds,
    corner_sum_violations,
    format_cell,
    format_grid,
    from_grid_notation,
    grid_notation,
    is_ashm,
    is_asm,
    is_corner_sum_matrix,
    is_in_xi_preimage,
    is_latin,
    is_pashm,
    is_permutation_hypermatrix,
    latin_like_square,
    latin_violation,
    line_sums,
    parse_cell,
    partial_sum_hypermatrix,
    permutation_matrix,
    plane_sum,
    sigma,
    sigma_inverse,
    step_bounds,
    xi,
    xi_inverse,
)
from helpers import lattice, latin


def test_sigma_of_permutation_312():
    want = [[0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 2], [0, 1, 2, 3]]
    # row i holds a 1 in column sigma(i): 3, 1, 2
    assert sigma(permutation_matrix([3, 1, 2])).tolist() == want


def test_sigma_roundtrip_on_asms():
    for m in (np.eye(3, dtype=int), np.array(ref.CROSS), np.array(ref.ANTI_3)):
        assert np.array_equal(sigma_inverse(sigma(m)), m)
        assert is_corner_sum_matrix(sigma(m))


def test_cyclic_square_transforms():
    sq = LatinSquare(ref.CYCLIC_3)
    assert sigma(sq.cells).tolist() == ref.CYCLIC_3_SIGMA
    x = xi(sq.hypermatrix())
    for k in range(4):
        assert x[:, :, k].tolist() == ref.CYCLIC_3_XI_PLANES[k]
    a = xi_inverse(x)
    assert a[1, 0, 1] == 1 and a[1, 1, 1] == 0
    assert np.array_equal(a, sq.hypermatrix())


def test_corner_sum_boundary_faces():
    c = LatinSquare(ref.CYCLIC_3).xi()
    n = 3
    prod = np.outer(range(n + 1), range(n + 1))
    for face in (c[:, :, n], c[:, n, :], c[n, :, :]):
        assert np.array_equal(face, prod)
    assert not c[:, :, 0].any() and not c[0].any() and not c[:, 0].any()


def test_corner_sum_violation_reports():
    c = LatinSquare(ref.CYCLIC_3).xi().copy()
    c[1, 1, 1] += 5
    msgs = corner_sum_violations(c)
    assert msgs and "step" in msgs[0]
    c = LatinSquare(ref.CYCLIC_3).xi().copy()
    c[3, 3, 3] = 0
    assert any("face" in m for m in corner_sum_violations(c))
    with pytest.raises(ValidationError):
        CornerSumHypermatrix(c)


def test_step_bounds_small():
    lo, hi = step_bounds(2)
    assert lo.tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    assert hi.tolist() == [[0, 0, 0], [0, 1, 1], [0, 1, 2]]


def test_latin_validation_location():
    assert latin_violation([[1, 2, 3], [1, 2, 1], [3, 1, 2]])[1] == (2, 3)
    with pytest.raises(ValidationError) as exc:
        LatinSquare([[1, 2], [1, 2]])
    assert exc.value.location == (2, 1)
    with pytest.raises(ValidationError):
        LatinSquare([[1, 2, 3]])
    assert latin_violation([[1, 4], [2, 1]])[1] == (1, 2)


def test_latin_square_views():
    sq = LatinSquare(ref.CYCLIC_3)
    assert sq[2, 3] == 1
    assert sq.rows() == ref.CYCLIC_3
    assert LatinSquare.from_hypermatrix(sq.hypermatrix()) == sq
    assert is_permutation_hypermatrix(sq.hypermatrix())
    assert is_latin(ref.CYCLIC_3) and not is_latin([[1, 1], [2, 2]])


def test_signed_objects():
    pashm = ref.stack_planes(ref.PASHM_3)
    ashm = ref.stack_planes(ref.ASHM_3)
    assert is_pashm(pashm) and not is_ashm(pashm)
    assert is_ashm(ashm) and is_pashm(ashm)
    assert is_asm(ref.CROSS) and not is_asm([[1, 0], [1, 0]])
    twos = ref.stack_planes(ref.ALL_TWOS_3)
    assert is_in_xi_preimage(twos)
    assert (latin_like_square(twos) == 2).all()


def test_grid_notation_examples():
    for planes, grid in ((ref.PASHM_3, ref.PASHM_3_GRID), (ref.ASHM_3, ref.ASHM_3_GRID)):
        a = ref.stack_planes(planes)
        assert [[tuple(c) for c in row] for row in grid_notation(a)] == grid
        assert np.array_equal(from_grid_notation(grid), a)
    assert format_cell((1, -2, 3)) == "1-2+3"
    assert format_cell((-1, 2, 3)) == "-1+2+3"
    assert format_cell(()) == "0"
    assert parse_cell("-1+2+3") == (-1, 2, 3)
    assert "1-2+3" in format_grid(ref.ASHM_3_GRID)


def test_grid_notation_errors():
    with pytest.raises(ValidationError):
        from_grid_notation([[(1,), (4,)], [(2,), (1,)]])
    with pytest.raises(ValidationError):
        from_grid_notation([[(1, -1), (2,)], [(2,), (1,)]])
    with pytest.raises(ValidationError):
        parse_cell("1+")


def test_partial_sums_and_plane_sum():
    a = ref.stack_planes(ref.TRIANGLE_HYPERMATRIX)
    p = partial_sum_hypermatrix(a)
    for k in range(3):
        assert p[:, :, k].tolist() == ref.TRIANGLE_MULTIPLICITY_PLANES[k]
    # sum_k C_ijk counts symbol k' with weight n + 1 - k'
    ij = np.outer(range(1, 4), range(1, 4))
    assert np.array_equal(plane_sum(xi(a)), 4 * ij - sigma(latin_like_square(a))[1:, 1:])


def test_line_sums_of_preimage_are_one():
    for c in lattice(3):
        a = c.hypermatrix()
        assert all((s == 1).all() for s in line_sums(a))
        assert is_in_xi_preimage(a)
        assert check_partial_sum_bounds(a)


def test_preimage_predicate_matches_corner_sum_rule():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = rng.integers(-1, 2, size=(3, 3, 3))
        assert is_in_xi_preimage(a) == (not corner_sum_violations(xi(a)))


def test_as_hypermatrix_rejects_non_cubes():
    with pytest.raises(ValueError):
        as_hypermatrix(np.zeros((2, 3, 3)))


def test_every_latin_square_of_order_3_is_a_lattice_element():
    keys = {c.key() for c in lattice(3)}
    assert all(CornerSumHypermatrix(s.xi()).key() in keys for s in latin(3))
