"""Rank formulas on C_n and the identities relating them.

Rank 0 is at the minimum M_n (largest corner sums).  For an element with
corner sum C, rho = sum of C's entries and rank = m(n) - rho, where m(n) is
rho of M_n.  Every formula is evaluated two ways and the two are asserted
equal.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .core import (
    DTYPE,
    CornerSumHypermatrix,
    LatinSquare,
    ValidationError,
    as_matrix,
    coerce_corner_sum,
    is_asm,
    latin_like_square,
    sigma,
)


def _parity_term(n: int) -> int:
    """4^(1 + (-1)^n): 16 for even n, 1 for odd n."""
    return 16 if n % 2 == 0 else 1


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise AssertionError(f"{num}/{den} is not an integer")
    return q


def _weights(n: int) -> np.ndarray:
    w = np.arange(n, 0, -1)
    return np.outer(w, w)


def _cell_sums(c: CornerSumHypermatrix) -> np.ndarray:
    """L(A): the signed symbol total sum_k k A_{ijk} of each cell."""
    return latin_like_square(c.hypermatrix())


def rho_direct(x) -> int:
    return coerce_corner_sum(x).rho


def rho_weighted(x) -> int:
    """sum_{i,j} (n-i+1)(n-j+1)(n-L_ij+1) with L the cell sums."""
    c = coerce_corner_sum(x)
    n = c.n
    return int((_weights(n) * (n + 1 - _cell_sums(c))).sum())


def rho(x) -> int:
    a, b = rho_direct(x), rho_weighted(x)
    if a != b:
        raise AssertionError(f"rho mismatch: direct {a}, weighted {b}")
    return a


def m_closed_form(n: int) -> int:
    return _exact(69 * n**5 + 180 * n**4 + 170 * n**3 + 60 * n**2 + _parity_term(n) * n, 480)


def m_direct(n: int) -> int:
    from .lattice import minimum_entries

    return int(minimum_entries(n).sum())


def rank_closed(x) -> int:
    c = coerce_corner_sum(x)
    return m_closed_form(c.n) - rho(c)


def rank_diagonal_form(x) -> int:
    """Constant plus half the sum of (i-j)^2 (n - L_ij)."""
    c = coerce_corner_sum(x)
    n = c.n
    idx = np.arange(1, n + 1)
    d2 = (idx[:, None] - idx[None, :]) ** 2
    const = -11 * n**5 + 20 * n**4 + 10 * n**3 - 20 * n**2 + _parity_term(n) * n
    return _exact(const + 240 * int((d2 * (n - _cell_sums(c))).sum()), 480)


def rank_of(x) -> int:
    a, b = rank_closed(x), rank_diagonal_form(x)
    if a != b:
        raise AssertionError(f"rank mismatch: {a} vs {b}")
    return a


def asm_rank(m) -> int:
    """Half the sum of (i-j)^2 A_ij; rank of an ASM in the 2-D lattice."""
    m = as_matrix(m)
    if not is_asm(m):
        raise ValidationError("not an alternating sign matrix")
    n = m.shape[0]
    idx = np.arange(1, n + 1)
    return _exact(int((((idx[:, None] - idx[None, :]) ** 2) * m).sum()), 2)


def asm_rank_from_sigma(m) -> int:
    """The same rank as rho(I_n) - rho(A) with rho the sum of Sigma."""
    m = as_matrix(m)
    n = m.shape[0]
    return int(sigma(np.eye(n, dtype=DTYPE)).sum() - sigma(m).sum())


def line_permutations(l: LatinSquare, axis: str) -> list[np.ndarray]:
    """Permutation matrices implied by symbols, rows or columns of l."""
    h = l.hypermatrix()
    if axis == "symbol":
        return [h[:, :, k] for k in range(l.n)]
    if axis == "row":
        return [h[i, :, :] for i in range(l.n)]
    if axis == "col":
        return [h[:, j, :] for j in range(l.n)]
    raise ValueError(f"unknown axis {axis!r}")


def rank_sum_target(n: int) -> int:
    return _exact(n * n * (n * n - 1), 12)


def rank_sums(l: LatinSquare) -> dict[str, int]:
    return {axis: sum(asm_rank(p) for p in line_permutations(l, axis))
            for axis in ("symbol", "row", "col")}


def rank_sum_identity_check(l: LatinSquare) -> bool:
    target = rank_sum_target(l.n)
    return all(v == target for v in rank_sums(l).values())


def sigma_sum_constant(n: int) -> int:
    return _exact(n * n * (n + 1) ** 3, 4)


def sigma_sum_identity_check(x) -> bool:
    """rho + (sum of Sigma(L)) equals n^2 (n+1)^3 / 4, L the cell sums."""
    c = coerce_corner_sum(x)
    return rho(c) + int(sigma(_cell_sums(c)).sum()) == sigma_sum_constant(c.n)


def bridging_identity_check(x) -> bool:
    """Half sum (i-j)^2 (n-L_ij) = n^2(n+1)(n^2+n+1)/6 - weighted rho."""
    if isinstance(x, LatinSquare):
        cells = x.cells
    elif isinstance(x, CornerSumHypermatrix):
        cells = _cell_sums(x)
    else:
        arr = np.asarray(x)
        cells = latin_like_square(arr) if arr.ndim == 3 else as_matrix(arr)
    n = cells.shape[0]
    idx = np.arange(1, n + 1)
    d2 = (idx[:, None] - idx[None, :]) ** 2
    left2 = int((d2 * (n - cells)).sum())  # twice the left side
    weighted = int((_weights(n) * (n + 1 - cells)).sum())
    right2 = _exact(n * n * (n + 1) * (n * n + n + 1), 3) - 2 * weighted
    return left2 == right2


def lattice_rank(n: int) -> int:
    return _exact(9 * n**5 - 10 * n**3 + _parity_term(n) * n, 240)


def lattice_rank_direct(n: int) -> int:
    from .lattice import maximum_entries, minimum_entries

    return int((minimum_entries(n) - maximum_entries(n)).sum())


@dataclass
class RankProfile:
    n: int
    rho: int
    rank: int
    m: int
    lattice_rank: int

    def __post_init__(self):
        if self.rank != self.m - self.rho or not 0 <= self.rank <= self.lattice_rank:
            raise AssertionError(f"inconsistent rank profile {self}")

    def as_dict(self) -> dict:
        return asdict(self)


def rank_profile(x) -> RankProfile:
    c = coerce_corner_sum(x)
    return RankProfile(c.n, rho(c), rank_of(c), m_closed_form(c.n), lattice_rank(c.n))
