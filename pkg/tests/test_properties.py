"""Property tests over random elements of the small lattices and random squares."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlattice.bruhat import (
    TBlock3D,
    apply_tblock,
    bruhat_leq,
    compact_tblock_witness,
    apply_witness,
    covers_in_lattice,
    decompose_tblock,
    find_intercalates,
    apply_intercalate,
)
from hyperlattice.core import (
    CornerSumHypermatrix,
    from_grid_notation,
    grid_notation,
    is_corner_sum_hypermatrix,
    sigma,
    sigma_inverse,
    xi,
    xi_inverse,
)
from hyperlattice.formats import dumps, loads
from hyperlattice.lattice import join, lower_covers, meet, upper_covers
from hyperlattice.rank import rank_of, rank_sum_identity_check, sigma_sum_identity_check
from hyperlattice.triangles import from_triangle, to_triangle, triangle_leq
from helpers import lattice, latin

order3 = st.sampled_from(lattice(3))
order4 = st.integers(0, 62857).map(lambda t: lattice(4)[t])
elements = st.one_of(order3, order4)
squares4 = st.sampled_from(latin(4))
squares5 = st.integers(0, 161279).map(lambda t: latin(5)[t])


def _same_order(draw, pick):
    n = draw(st.sampled_from([3, 4]))
    src = order3 if n == 3 else order4
    return tuple(draw(src) for _ in range(pick))


pairs = st.composite(lambda draw: _same_order(draw, 2))()
triples = st.composite(lambda draw: _same_order(draw, 3))()


@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(-2, 2), min_size=n * n * n, max_size=n * n * n)
    .map(lambda v: np.array(v).reshape(n, n, n))))
def test_xi_roundtrip(a):
    assert np.array_equal(xi_inverse(xi(a)), a)


@given(st.integers(1, 7).flatmap(
    lambda n: st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n)
    .map(lambda v: np.array(v).reshape(n, n))))
def test_sigma_roundtrip(m):
    assert np.array_equal(sigma_inverse(sigma(m)), m)


@given(elements)
def test_grid_notation_roundtrip(c):
    a = c.hypermatrix()
    assert np.array_equal(from_grid_notation(grid_notation(a)), a)


@given(elements)
def test_document_roundtrip(c):
    assert loads(dumps(c)) == c


@given(elements)
def test_triangle_roundtrip(c):
    a = c.hypermatrix()
    t = to_triangle(a)
    assert t.is_valid()
    assert np.array_equal(from_triangle(t), a)


@given(pairs)
def test_lattice_laws(p):
    a, b = p
    j, m = join(a, b), meet(a, b)
    assert is_corner_sum_hypermatrix(j.entries) and is_corner_sum_hypermatrix(m.entries)
    assert bruhat_leq(a, j) and bruhat_leq(b, j) and bruhat_leq(m, a) and bruhat_leq(m, b)
    assert join(a, b) == join(b, a) and meet(a, b) == meet(b, a)
    assert join(a, meet(a, b)) == a and meet(a, join(a, b)) == a
    assert join(a, a) == a


@given(triples)
def test_associative_and_distributive(t):
    a, b, c = t
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))
    assert join(a, meet(b, c)) == meet(join(a, b), join(a, c))


@given(triples)
def test_order_axioms(t):
    a, b, c = t
    assert bruhat_leq(a, a)
    if bruhat_leq(a, b) and bruhat_leq(b, a):
        assert a == b
    if bruhat_leq(a, b) and bruhat_leq(b, c):
        assert bruhat_leq(a, c)


@given(elements)
def test_contiguous_tblock_drops_rho_by_one(c):
    for low in lower_covers(c):
        assert covers_in_lattice(low, c)
        assert low.rho == c.rho + 1
        assert rank_of(low) == rank_of(c) - 1
    for up in upper_covers(c):
        assert rank_of(up) == rank_of(c) + 1


@given(elements, st.data())
def test_applying_a_tblock_adds_its_box(c, data):
    n = c.n
    i1, i2 = sorted(data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True)))
    j1, j2 = sorted(data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True)))
    k1, k2 = sorted(data.draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True)))
    t = TBlock3D(i1, i2, j1, j2, k1, k2)
    after = xi(apply_tblock(c.hypermatrix(), t))
    box = np.zeros_like(after)
    box[i1:i2, j1:j2, k1:k2] = 1
    assert np.array_equal(after - c.entries, box)
    assert sum(p.pattern(n) for p in decompose_tblock(t)).tolist() == t.pattern(n).tolist()
    assert len(decompose_tblock(t)) == (i2 - i1) * (j2 - j1) * (k2 - k1)
    if is_corner_sum_hypermatrix(after):
        assert bruhat_leq(CornerSumHypermatrix(after), c)


@settings(max_examples=50)
@given(pairs)
def test_compact_witness_reaches_lower(p):
    a, b = p
    lo, hi = (a, b) if bruhat_leq(a, b) else (meet(a, b), a)
    w = compact_tblock_witness(lo, hi)
    assert w.reached
    assert np.array_equal(apply_witness(hi, w), lo.hypermatrix())


@settings(max_examples=50)
@given(pairs)
def test_triangle_order_matches(p):
    a, b = p
    assert triangle_leq(to_triangle(a.hypermatrix()), to_triangle(b.hypermatrix())) == bruhat_leq(a, b)


@given(elements)
def test_sigma_sum_identity(c):
    assert sigma_sum_identity_check(c)


@given(squares5)
def test_rank_sums_order_5(sq):
    assert rank_sum_identity_check(sq)


@given(squares4)
def test_intercalate_switch_direction(sq):
    for x in find_intercalates(sq):
        new = apply_intercalate(sq, x)
        assert bruhat_leq(new, sq) == x.decreasing
