"""Lattice structure of C_n: meet and join, extremes, join-irreducibles, U_n and
the Dedekind-MacNeille checks.

In the Bruhat orientation the join (least upper bound) of two elements is the
entrywise *minimum* of their corner sums and the meet is the entrywise
*maximum*.  The minimum element M_n therefore has the largest corner sums.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DTYPE,
    CornerSumHypermatrix,
    LatinSquare,
    coerce_corner_sum,
    is_corner_sum_hypermatrix,
    is_latin,
    plane_sum,
    sigma,
    sigma_inverse,
    xi_inverse,
)


def _orders_match(a: CornerSumHypermatrix, b: CornerSumHypermatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")


def join(a, b) -> CornerSumHypermatrix:
    """Least upper bound in <=_B: entrywise min of the corner sums."""
    a, b = coerce_corner_sum(a), coerce_corner_sum(b)
    _orders_match(a, b)
    return CornerSumHypermatrix(np.minimum(a.entries, b.entries))


def meet(a, b) -> CornerSumHypermatrix:
    """Greatest lower bound in <=_B: entrywise max of the corner sums."""
    a, b = coerce_corner_sum(a), coerce_corner_sum(b)
    _orders_match(a, b)
    return CornerSumHypermatrix(np.maximum(a.entries, b.entries))


def join_all(items) -> CornerSumHypermatrix:
    items = [coerce_corner_sum(x) for x in items]
    return CornerSumHypermatrix(np.minimum.reduce([x.entries for x in items]))


def meet_all(items) -> CornerSumHypermatrix:
    items = [coerce_corner_sum(x) for x in items]
    return CornerSumHypermatrix(np.maximum.reduce([x.entries for x in items]))


def _grid(n: int):
    r = np.arange(n + 1)
    return np.meshgrid(r, r, r, indexing="ij")


def minimum_entries(n: int) -> np.ndarray:
    i, j, k = _grid(n)
    return np.minimum(k * np.minimum(i, j), i * j - (n - k) * np.maximum(0, i + j - n))


def minimum_piecewise(n: int) -> np.ndarray:
    """M_n from the four-case description (interior indices 1..n)."""
    out = np.zeros((n + 1,) * 3, dtype=DTYPE)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if i <= min(k, n - j) and j <= k:
                    v = i * j
                elif i <= min(j, n - k) and j > k:
                    v = i * k
                elif i > max(j, k) and j + k <= n:
                    v = j * k
                elif i > max(n - j, n - k) and j + k > n:
                    v = n * n - n * i - n * j - n * k + i * j + i * k + j * k
                else:
                    raise AssertionError(f"no case applies at {(i, j, k)}")
                out[i, j, k] = v
    return out


def minimum_element(n: int) -> CornerSumHypermatrix:
    return CornerSumHypermatrix(minimum_entries(n))


def maximum_entries(n: int) -> np.ndarray:
    i, j, k = _grid(n)
    return np.maximum(k * np.maximum(0, i + j - n), i * j - (n - k) * np.minimum(i, j))


def maximum_element(n: int) -> CornerSumHypermatrix:
    return CornerSumHypermatrix(maximum_entries(n))


def is_distributive_triple(x, y, z) -> bool:
    return meet(x, join(y, z)) == join(meet(x, y), meet(x, z))


# ---------------------------------------------------------------------------
# Covers by neighbour probing
# ---------------------------------------------------------------------------

def _probe(c: CornerSumHypermatrix, delta: int, index=None) -> list[CornerSumHypermatrix]:
    n = c.n
    out = []
    base = c.entries
    for i in range(1, n):
        for j in range(1, n):
            for k in range(1, n):
                e = base.copy()
                e[i, j, k] += delta
                if index is not None:
                    hit = index.get(e.astype(np.int16).tobytes())
                    if hit is not None:
                        out.append(hit)
                elif is_corner_sum_hypermatrix(e):
                    out.append(CornerSumHypermatrix(e, check=False))
    return out


def lower_covers(c, index: dict | None = None) -> list[CornerSumHypermatrix]:
    """Elements covered by c: one corner-sum entry larger by 1."""
    return _probe(coerce_corner_sum(c), +1, index)


def upper_covers(c, index: dict | None = None) -> list[CornerSumHypermatrix]:
    return _probe(coerce_corner_sum(c), -1, index)


def join_irreducibles(elements) -> list[CornerSumHypermatrix]:
    """Elements of the (complete) list that cover exactly one element."""
    elems = [coerce_corner_sum(e) for e in elements]
    index = {e.key(): e for e in elems}
    return [e for e in elems if len(lower_covers(e, index)) == 1]


def construct_Un(n: int) -> CornerSumHypermatrix:
    """M_n with the (2,2,2) entry lowered by one; requires n >= 4."""
    if n < 4:
        raise ValueError("U_n is only a corner-sum hypermatrix for n >= 4")
    e = minimum_entries(n).astype(DTYPE)
    e[2, 2, 2] -= 1
    return CornerSumHypermatrix(e)


# ---------------------------------------------------------------------------
# Dedekind-MacNeille completion of a finite poset
# ---------------------------------------------------------------------------

def dm_cuts(leq: np.ndarray) -> list[frozenset]:
    """All normal cuts A = (A^u)^l of a finite poset given by its order matrix.

    They are exactly the intersections of principal ideals (the empty
    intersection being the whole poset), so the family is built by closing
    the principal ideals under pairwise intersection.
    """
    leq = np.asarray(leq, dtype=bool)
    m = len(leq)
    ideals = {frozenset(np.flatnonzero(leq[:, x]).tolist()) for x in range(m)}
    family = set(ideals) | {frozenset(range(m))}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in ideals:
                c = a & b
                if c not in family:
                    new.add(c)
        family |= new
        frontier = new
    return sorted(family, key=lambda s: (len(s), sorted(s)))


def _closure(leq: np.ndarray, subset: frozenset) -> frozenset:
    m = len(leq)
    ups = [y for y in range(m) if all(leq[x, y] for x in subset)]
    return frozenset(x for x in range(m) if all(leq[x, y] for y in ups))


def latin_order_matrix(squares: list[LatinSquare]) -> np.ndarray:
    cs = np.stack([s.xi() for s in squares]).reshape(len(squares), -1)
    return (cs[:, None, :] >= cs[None, :, :]).all(axis=2)


def dm_completion_report(n: int = 3) -> dict:
    """Compare the DM completion of (L_n, <=_B) with C_n by formal-concept closure.

    Each cut is sent to the join (entrywise min of corner sums) of its members,
    the empty cut to M_n.  The report records whether this is a bijection onto
    C_n and an order isomorphism (inclusion of cuts vs <=_B).
    """
    from .enumeration import enumerate_corner_sum, enumerate_latin

    squares = enumerate_latin(n).objects()
    leq = latin_order_matrix(squares)
    cuts = dm_cuts(leq)
    closed = all(_closure(leq, c) == c for c in cuts)
    images = []
    for cut in cuts:
        if cut:
            images.append(join_all([squares[t] for t in cut]))
        else:
            images.append(minimum_element(n))
    lattice = enumerate_corner_sum(n).objects()
    keys = {c.key() for c in lattice}
    image_keys = [c.key() for c in images]
    bijective = len(set(image_keys)) == len(cuts) and set(image_keys) == keys
    order_iso = all(
        (a <= b) == bool((images[x].entries >= images[y].entries).all())
        for x, a in enumerate(cuts) for y, b in enumerate(cuts))
    return {
        "n": n,
        "latin_squares": len(squares),
        "cuts": len(cuts),
        "cuts_closed": closed,
        "lattice_size": len(lattice),
        "bijective": bijective,
        "order_isomorphic": order_iso,
        "completion_holds": bool(closed and bijective and order_iso),
    }


# ---------------------------------------------------------------------------
# The non-completion witness for n >= 4
# ---------------------------------------------------------------------------

K4_A = [[4, 3, 2, 1], [3, 1, 4, 2], [2, 4, 1, 3], [1, 2, 3, 4]]
K4_B = [[4, 2, 1, 3], [3, 4, 2, 1], [2, 1, 3, 4], [1, 3, 4, 2]]


def latin_like_witness() -> dict:
    """The analogous witness in the lattice of Latin-like squares at order 4."""
    a, b = LatinSquare(K4_A), LatinSquare(K4_B)
    x = np.maximum(sigma(a.cells), sigma(b.cells))
    pre = sigma_inverse(x)
    m = plane_sum(minimum_entries(4))
    u = plane_sum(construct_Un(4).entries)
    diff = x[1:, 1:] - m
    return {
        "A": a.rows(),
        "B": b.rows(),
        "X": x[1:, 1:].tolist(),
        "M": m.tolist(),
        "plane_sum_Un_equals_X": bool(np.array_equal(u, x[1:, 1:])),
        "X_minus_M_single_unit": bool(np.abs(diff).sum() == 1 and diff.min() == -1),
        "sigma_inverse_X": pre.tolist(),
        "sigma_inverse_X_is_latin": is_latin(pre),
    }


def dm_witness_report(n: int, exhaustive: bool | None = None) -> dict:
    """Check the argument that C_n is not the DM completion of L_n (n >= 4).

    For n = 3 the DM completion is computed and compared instead.  Covers of
    U_n are found by neighbour probing, or by scanning the enumerated C_4
    when ``exhaustive`` (the default at n = 4).
    """
    if n == 3:
        rep = dm_completion_report(3)
        rep["kind"] = "completion"
        return rep
    if n < 4:
        raise ValueError("the witness needs n >= 4 (use n = 3 for the completion check)")
    u = construct_Un(n)
    m = minimum_element(n)
    if exhaustive is None:
        exhaustive = n == 4
    if exhaustive:
        from .enumeration import enumerate_corner_sum

        allc = enumerate_corner_sum(n).elements.astype(DTYPE)
        d = allc - u.entries
        flat = d.reshape(len(d), -1)
        covered = (flat.sum(axis=1) == 1) & (flat >= 0).all(axis=1)
        lower = [CornerSumHypermatrix(allc[t], check=False) for t in np.flatnonzero(covered)]
        method = "exhaustive"
    else:
        lower = lower_covers(u)
        method = "neighbour-probe"
    a = xi_inverse(u.entries)
    bad = np.argwhere((a != 0) & (a != 1))
    report = {
        "kind": "witness",
        "n": n,
        "Un_valid": is_corner_sum_hypermatrix(u.entries),
        "Un_222": int(u.entries[2, 2, 2]),
        "covers": len(lower),
        "covers_only_minimum": len(lower) == 1 and lower[0] == m,
        "cover_method": method,
        "join_irreducible": len(lower) == 1,
        "xi_inverse_222": int(a[1, 1, 1]),
        "non_latin_entries": [[int(t) + 1 for t in p] + [int(a[tuple(p)])] for p in bad],
        "xi_inverse_is_latin": False if len(bad) else None,
    }
    report["witness_confirmed"] = bool(
        report["Un_valid"] and report["covers_only_minimum"] and len(bad) > 0)
    if n == 4:
        report["latin_like"] = latin_like_witness()
    return report
