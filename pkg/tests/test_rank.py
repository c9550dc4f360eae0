import numpy as np
import pytest

from hyperlattice import reference_data as ref
from hyperlattice.core import LatinSquare, ValidationError
from hyperlattice.lattice import maximum_element, minimum_element
from hyperlattice.rank import (
    RankProfile,
    asm_rank,
    asm_rank_from_sigma,
    bridging_identity_check,
    lattice_rank,
    lattice_rank_direct,
    line_permutations,
    m_closed_form,
    m_direct,
    rank_closed,
    rank_diagonal_form,
    rank_of,
    rank_profile,
    rank_sum_identity_check,
    rank_sum_target,
    rank_sums,
    rho,
    rho_direct,
    rho_weighted,
    sigma_sum_constant,
    sigma_sum_identity_check,
)
from hyperlattice.enumeration import enumerate_asm
from helpers import lattice, latin

M_VALUES = [1, 14, 76, 268, 731, 1685, 3444, 6436]
LATTICE_RANKS = [0, 1, 8, 36, 112, 283, 616, 1208]


@pytest.mark.parametrize("n", range(1, 9))
def test_m_closed_form(n):
    assert m_closed_form(n) == m_direct(n) == M_VALUES[n - 1]


@pytest.mark.parametrize("n", range(1, 9))
def test_lattice_rank(n):
    assert lattice_rank(n) == lattice_rank_direct(n) == LATTICE_RANKS[n - 1]


def test_cyclic_square_rank():
    sq = LatinSquare(ref.CYCLIC_3)
    assert rho(sq) == rho_direct(sq) == rho_weighted(sq) == 75
    assert rank_of(sq) == 1
    prof = rank_profile(sq)
    assert prof.as_dict() == {"n": 3, "rho": 75, "rank": 1, "m": 76, "lattice_rank": 8}


def test_extremes_have_extreme_ranks():
    for n in range(1, 6):
        assert rank_of(minimum_element(n)) == 0
        assert rank_of(maximum_element(n)) == lattice_rank(n)


def test_two_rank_forms_agree_on_order_3():
    for c in lattice(3):
        assert rank_closed(c) == rank_diagonal_form(c)
        assert rho_direct(c) == rho_weighted(c)


def test_rank_profile_is_checked():
    with pytest.raises(AssertionError):
        RankProfile(3, 75, 2, 76, 8)


def test_asm_rank_two_ways():
    for n in range(1, 6):
        for m in enumerate_asm(n):
            assert asm_rank(m) == asm_rank_from_sigma(m)
    assert asm_rank(np.eye(3, dtype=int)) == 0
    assert asm_rank(np.array(ref.ANTI_3)) == 4
    with pytest.raises(ValidationError):
        asm_rank([[1, 1], [0, 0]])


@pytest.mark.parametrize("n", [3, 4])
def test_rank_sums_on_all_latin_squares(n):
    target = rank_sum_target(n)
    for sq in latin(n):
        assert rank_sums(sq) == {"symbol": target, "row": target, "col": target}
    assert rank_sum_identity_check(latin(n)[0])


def test_line_permutations_axes():
    sq = LatinSquare(ref.CYCLIC_3)
    for axis in ("symbol", "row", "col"):
        perms = line_permutations(sq, axis)
        assert len(perms) == 3 and all((p.sum(axis=0) == 1).all() for p in perms)
    with pytest.raises(ValueError):
        line_permutations(sq, "diag")


def test_sigma_sum_constant_values():
    assert sigma_sum_constant(3) == 144
    assert sigma_sum_constant(4) == 500


def test_identities_on_order_3_lattice_and_order_4_squares():
    for c in lattice(3):
        assert sigma_sum_identity_check(c)
        assert bridging_identity_check(c)
    for sq in latin(4):
        assert sigma_sum_identity_check(sq)
        assert bridging_identity_check(sq)


def test_identities_on_order_4_sample():
    from helpers import lattice as lat

    elems = lat(4)
    rng = np.random.default_rng(7)
    for t in rng.choice(len(elems), 200, replace=False):
        assert sigma_sum_identity_check(elems[t])
        assert bridging_identity_check(elems[t])
