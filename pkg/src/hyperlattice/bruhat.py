"""The Bruhat order: T-blocks, corner-sum comparison, covers, subarrays and switches.

Orientation: ``a <=_B b`` iff ``Xi(a) >= Xi(b)`` entrywise.  Adding a positive
T-block moves an element down the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .core import (
    DTYPE,
    CornerSumHypermatrix,
    LatinSquare,
    ValidationError,
    as_hypermatrix,
    coerce_corner_sum,
    is_corner_sum_hypermatrix,
    is_latin,
    sigma,
)


# ---------------------------------------------------------------------------
# T-blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TBlock3D:
    """Signed 2x2x2 pattern on rows i1<i2, columns j1<j2, planes k1<k2 (1-based).

    A positive block has +1 at (i1, j1, k1) and alternates in sign across
    every axis.
    """

    i1: int
    i2: int
    j1: int
    j2: int
    k1: int
    k2: int
    sign: int = 1

    def __post_init__(self):
        if not (self.i1 < self.i2 and self.j1 < self.j2 and self.k1 < self.k2):
            raise ValueError(f"T-block corners must be strictly increasing: {self}")
        if min(self.i1, self.j1, self.k1) < 1:
            raise ValueError(f"T-block indices are 1-based: {self}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def contiguous_at(cls, i: int, j: int, k: int, sign: int = 1) -> "TBlock3D":
        return cls(i, i + 1, j, j + 1, k, k + 1, sign)

    @property
    def contiguous(self) -> bool:
        return self.i2 == self.i1 + 1 and self.j2 == self.j1 + 1 and self.k2 == self.k1 + 1

    @property
    def gaps(self) -> tuple[int, int, int]:
        return self.i2 - self.i1, self.j2 - self.j1, self.k2 - self.k1

    def negated(self) -> "TBlock3D":
        return TBlock3D(self.i1, self.i2, self.j1, self.j2, self.k1, self.k2, -self.sign)

    def corners(self):
        """Yield ((i, j, k), value) for the eight corners."""
        for a, i in enumerate((self.i1, self.i2)):
            for b, j in enumerate((self.j1, self.j2)):
                for c, k in enumerate((self.k1, self.k2)):
                    yield (i, j, k), self.sign * (-1) ** (a + b + c)

    def pattern(self, n: int) -> np.ndarray:
        if max(self.i2, self.j2, self.k2) > n:
            raise IndexError(f"T-block {self} does not fit in order {n}")
        out = np.zeros((n, n, n), dtype=DTYPE)
        for (i, j, k), v in self.corners():
            out[i - 1, j - 1, k - 1] = v
        return out

    def as_list(self) -> list[int]:
        return [self.i1, self.i2, self.j1, self.j2, self.k1, self.k2, self.sign]


def apply_tblock(a, t: TBlock3D) -> np.ndarray:
    a = as_hypermatrix(a)
    return a + t.pattern(a.shape[0])


def decompose_tblock(t: TBlock3D) -> list[TBlock3D]:
    """Split a positive T-block into contiguous positive T-blocks.

    The largest gap is shrunk by one: the block telescopes into the block
    ending one step earlier on that axis plus the one-step slab at its end.
    """
    if t.sign != 1:
        raise ValueError("only positive T-blocks are decomposed")
    if t.contiguous:
        return [t]
    gaps = t.gaps
    axis = gaps.index(max(gaps))
    lo = [t.i1, t.j1, t.k1]
    hi = [t.i2, t.j2, t.k2]
    inner_hi = list(hi)
    inner_hi[axis] -= 1
    slab_lo = list(lo)
    slab_lo[axis] = hi[axis] - 1
    inner = TBlock3D(lo[0], inner_hi[0], lo[1], inner_hi[1], lo[2], inner_hi[2])
    slab = TBlock3D(slab_lo[0], hi[0], slab_lo[1], hi[1], slab_lo[2], hi[2])
    return decompose_tblock(inner) + decompose_tblock(slab)


# ---------------------------------------------------------------------------
# Comparison and covers
# ---------------------------------------------------------------------------

def _pair(a, b) -> tuple[CornerSumHypermatrix, CornerSumHypermatrix]:
    ca, cb = coerce_corner_sum(a), coerce_corner_sum(b)
    if ca.n != cb.n:
        raise ValueError(f"order mismatch: {ca.n} vs {cb.n}")
    return ca, cb


def bruhat_leq(a, b) -> bool:
    """a <=_B b, i.e. Xi(a) >= Xi(b) entrywise.

    Operands may be LatinSquares, CornerSumHypermatrix objects or hypermatrices
    in Xi^{-1}(C_n); anything else raises ValidationError.
    """
    ca, cb = _pair(a, b)
    return bool((ca.entries >= cb.entries).all())


def covers_in_lattice(a, b) -> bool:
    """a is covered by b in C_n: the corner sums differ by a single +1."""
    ca, cb = _pair(a, b)
    d = ca.entries - cb.entries
    nz = np.flatnonzero(d)
    return len(nz) == 1 and d.flat[nz[0]] == 1


def tblock_between(a, b) -> TBlock3D | None:
    """The contiguous positive T-block taking b down to a when a is covered by b."""
    ca, cb = _pair(a, b)
    if not covers_in_lattice(ca, cb):
        return None
    i, j, k = (int(t) for t in np.argwhere(ca.entries != cb.entries)[0])
    return TBlock3D.contiguous_at(i, j, k)


def sigma_dual_leq(a: LatinSquare, b: LatinSquare) -> bool:
    """The order <=' on Latin squares read as integer matrices: Sigma(a) <= Sigma(b).

    It is the dual of an earlier Bruhat order on Latin squares; it coincides
    with <=_B up to order 3 and differs from order 4 on.
    """
    return bool((sigma(a.cells) <= sigma(b.cells)).all())


@dataclass
class Witness:
    """Positive T-blocks taking ``upper`` down to ``lower``, with per-step validity."""

    blocks: list[TBlock3D]
    reached: bool
    intermediates_valid: list[bool]

    @property
    def all_intermediates_valid(self) -> bool:
        return all(self.intermediates_valid)

    def as_dict(self) -> dict:
        return {
            "reached": self.reached,
            "blocks": [t.as_list() for t in self.blocks],
            "intermediates_valid": self.intermediates_valid,
        }


def greedy_tblock_witness(lower, upper) -> Witness:
    """Walk from ``upper`` towards ``lower`` one contiguous positive T-block at a time.

    Each step picks the lexicographically smallest (i, j, k) where Xi(lower)
    exceeds the current corner sum and adds the T-block whose corner sum is a
    unit at (i, j, k).  Stops early (``reached=False``) if some entry is
    already too large, which happens exactly when lower is not <=_B upper.
    """
    cl, cu = _pair(lower, upper)
    target = cl.entries
    cur = cu.entries.copy()
    blocks: list[TBlock3D] = []
    valid: list[bool] = []
    if (cur > target).any():
        return Witness(blocks, False, valid)
    while True:
        deficit = np.argwhere(target > cur)
        if len(deficit) == 0:
            break
        i, j, k = (int(t) for t in deficit[0])
        cur[i, j, k] += 1
        blocks.append(TBlock3D.contiguous_at(i, j, k))
        valid.append(is_corner_sum_hypermatrix(cur))
    return Witness(blocks, True, valid)


def apply_witness(upper, witness: Witness) -> np.ndarray:
    a = coerce_corner_sum(upper).hypermatrix()
    for t in witness.blocks:
        a = apply_tblock(a, t)
    return a


def tblock_reachable(lower, upper) -> bool:
    """Whether contiguous positive T-blocks carry ``upper`` onto ``lower``."""
    w = greedy_tblock_witness(lower, upper)
    if not w.reached:
        return False
    return np.array_equal(apply_witness(upper, w), coerce_corner_sum(lower).hypermatrix())


def compact_tblock_witness(lower, upper) -> Witness:
    """A short witness made of general (not necessarily contiguous) positive T-blocks.

    A positive T-block on rows i1<i2, columns j1<j2, planes k1<k2 raises the
    corner sum by one on the box [i1, i2) x [j1, j2) x [k1, k2).  The
    corner-sum difference is peeled into such boxes: from the first positive
    cell the box is grown along k, then j, then i while every cell stays
    positive.
    """
    cl, cu = _pair(lower, upper)
    d = cl.entries - cu.entries
    if (d < 0).any():
        return Witness([], False, [])
    cur = cu.entries.copy()
    blocks: list[TBlock3D] = []
    valid: list[bool] = []
    while d.any():
        i, j, k = (int(t) for t in np.argwhere(d > 0)[0])
        i2, j2, k2 = i + 1, j + 1, k + 1
        while d[i:i2, j:j2, k2].all() if k2 < d.shape[2] else False:
            k2 += 1
        while d[i:i2, j2, k:k2].all() if j2 < d.shape[1] else False:
            j2 += 1
        while d[i2, j:j2, k:k2].all() if i2 < d.shape[0] else False:
            i2 += 1
        d[i:i2, j:j2, k:k2] -= 1
        cur[i:i2, j:j2, k:k2] += 1
        blocks.append(TBlock3D(i, i2, j, j2, k, k2))
        valid.append(is_corner_sum_hypermatrix(cur))
    return Witness(blocks, True, valid)


# ---------------------------------------------------------------------------
# Subarrays and decreasing replacements
# ---------------------------------------------------------------------------

class Subarray:
    """Cells ``positions`` (1-based) of a host Latin square."""

    __slots__ = ("host", "positions")

    def __init__(self, host: LatinSquare, positions: Iterable[tuple[int, int]]):
        pos = frozenset((int(i), int(j)) for i, j in positions)
        n = host.n
        for i, j in pos:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValidationError(f"position ({i},{j}) outside the host", (i, j))
        self.host = host
        self.positions = pos

    def symbols(self) -> list[int]:
        return sorted(self.host[i, j] for i, j in self.positions)

    def row_symbols(self, i: int) -> list[int]:
        return sorted(self.host[i, j] for a, j in self.positions if a == i)

    def col_symbols(self, j: int) -> list[int]:
        return sorted(self.host[i, j] for i, b in self.positions if b == j)

    def count(self, i: int, j: int, k: int) -> int:
        return subarray_count(self, i, j, k)

    def __repr__(self):
        return f"Subarray({sorted(self.positions)})"


def subarray_count(x: Subarray, i: int, j: int, k: int) -> int:
    """X[i,j,k]: cells of x in the top-left i x j block holding a symbol <= k."""
    return sum(1 for a, b in x.positions if a <= i and b <= j and x.host[a, b] <= k)


def is_decreasing_replacement(x: Subarray, y: Subarray, full_range: bool = False) -> bool:
    """Whether y is a decreasing replacement for x.

    By default the count inequality Y[i,j,k] >= X[i,j,k] is checked only for
    (i, j) in pos(X) and k in sym(X).  That is necessary for the replacement
    to move down the order but not sufficient: the squares 123/231/312 and
    213/132/321 pass it and are incomparable.  ``full_range=True`` checks all
    i, j, k in [n], which is equivalent to comparing the corner sums.
    """
    if x.host.n != y.host.n or x.positions != y.positions:
        return False
    rows = {i for i, _ in x.positions}
    cols = {j for _, j in x.positions}
    if any(x.row_symbols(i) != y.row_symbols(i) for i in rows):
        return False
    if any(x.col_symbols(j) != y.col_symbols(j) for j in cols):
        return False
    if full_range:
        n = x.host.n
        cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        syms = range(1, n + 1)
    else:
        cells = list(x.positions)
        syms = set(x.symbols())
    return all(subarray_count(y, i, j, k) >= subarray_count(x, i, j, k)
               for i, j in cells for k in syms)


def difference_subarrays(l1: LatinSquare, l2: LatinSquare) -> tuple[Subarray, Subarray]:
    """Subarrays of l2 and l1 on the cells where they differ."""
    diff = [(i + 1, j + 1) for i, j in zip(*np.nonzero(l1.cells != l2.cells))]
    return Subarray(l2, diff), Subarray(l1, diff)


# ---------------------------------------------------------------------------
# The Latin poset
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _latin_corner_sums(n: int) -> tuple[np.ndarray, dict]:
    from .enumeration import enumerate_latin

    squares = enumerate_latin(n).elements
    h = (squares[:, :, :, None] == np.arange(1, n + 1)).astype(np.int16)
    c = np.zeros((len(squares), n + 1, n + 1, n + 1), dtype=np.int16)
    c[:, 1:, 1:, 1:] = h.cumsum(1).cumsum(2).cumsum(3)
    index = {s.astype(DTYPE).tobytes(): t for t, s in enumerate(squares)}
    return c, index


def covers_in_latin_poset(l1: LatinSquare, l2: LatinSquare) -> bool:
    """l1 is covered by l2 among Latin squares, decided against the full enumeration."""
    if l1.n != l2.n:
        raise ValueError("order mismatch")
    if l1 == l2 or not bruhat_leq(l1, l2):
        return False
    cs, _ = _latin_corner_sums(l1.n)
    lo, hi = l1.xi(), l2.xi()
    flat = cs.reshape(len(cs), -1)
    between = (flat <= lo.ravel()).all(axis=1) & (flat >= hi.ravel()).all(axis=1)
    return int(between.sum()) == 2


# ---------------------------------------------------------------------------
# Intercalates and cycle switches
# ---------------------------------------------------------------------------

class Intercalate(NamedTuple):
    rows: tuple[int, int]
    cols: tuple[int, int]
    symbols: tuple[int, int]
    decreasing: bool  # top-left holds the larger symbol, so switching moves down


def find_intercalates(l: LatinSquare) -> list[Intercalate]:
    g = l.cells
    n = l.n
    out = []
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    a, b = int(g[r1, c1]), int(g[r1, c2])
                    if g[r2, c1] == b and g[r2, c2] == a:
                        out.append(Intercalate((r1 + 1, r2 + 1), (c1 + 1, c2 + 1),
                                               (min(a, b), max(a, b)), a > b))
    return out


def apply_intercalate(l: LatinSquare, x: Intercalate) -> LatinSquare:
    g = np.array(l.cells)
    (r1, r2), (c1, c2) = x.rows, x.cols
    cells = [(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
    for i, j in cells:
        g[i - 1, j - 1] = x.symbols[0] + x.symbols[1] - g[i - 1, j - 1]
    return LatinSquare(g)


AXES = ("row", "col", "symbol")


def _cycles(perm: dict[int, int]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for start in sorted(perm):
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def cycle_supports(l: LatinSquare, axis: str, pair: tuple[int, int]) -> list[frozenset]:
    """Minimal switchable cell sets for two lines, ordered by smallest starting index."""
    g = l.cells
    n = l.n
    p, q = pair
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    if p == q or not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"invalid line pair {pair}")
    if axis == "row":
        where = {int(g[q - 1, c]): c + 1 for c in range(n)}
        perm = {c + 1: where[int(g[p - 1, c])] for c in range(n)}
        return [frozenset((r, c) for c in cyc for r in (p, q)) for cyc in _cycles(perm)]
    if axis == "col":
        where = {int(g[r, q - 1]): r + 1 for r in range(n)}
        perm = {r + 1: where[int(g[r, p - 1])] for r in range(n)}
        return [frozenset((r, c) for r in cyc for c in (p, q)) for cyc in _cycles(perm)]
    # symbols p and q: follow row -> column of p -> row holding q there
    col_of = {s: {r + 1: int(np.flatnonzero(g[r] == s)[0]) + 1 for r in range(n)} for s in (p, q)}
    row_of_q_in_col = {c + 1: int(np.flatnonzero(g[:, c] == q)[0]) + 1 for c in range(n)}
    perm = {r: row_of_q_in_col[col_of[p][r]] for r in range(1, n + 1)}
    return [frozenset(cell for r in cyc for cell in ((r, col_of[p][r]), (r, col_of[q][r])))
            for cyc in _cycles(perm)]


def _line_matrix(g: np.ndarray, axis: str, line: int, support: frozenset) -> np.ndarray:
    """The partial permutation of one line restricted to ``support`` as an n x n 0/1 matrix."""
    n = g.shape[0]
    m = np.zeros((n, n), dtype=DTYPE)
    for i, j in support:
        s = int(g[i - 1, j - 1])
        if axis == "row" and i == line:
            m[j - 1, s - 1] = 1
        elif axis == "col" and j == line:
            m[i - 1, s - 1] = 1
        elif axis == "symbol" and s == line:
            m[i - 1, j - 1] = 1
    return m


@dataclass
class SwitchResult:
    square: LatinSquare
    lower_line_precedes: bool  # in the result, the lower-index line 2-D precedes the other


def apply_cycle_switch(l: LatinSquare, axis: str, pair: tuple[int, int],
                       support: Iterable[tuple[int, int]]) -> SwitchResult:
    """Swap two lines on ``support``; raises ValidationError unless the result is Latin."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    p, q = pair
    sup = frozenset((int(i), int(j)) for i, j in support)
    g = np.array(l.cells)
    new = g.copy()
    for i, j in sup:
        if axis == "row":
            if i not in (p, q):
                raise ValidationError(f"cell ({i},{j}) is not on rows {p},{q}", (i, j))
            new[i - 1, j - 1] = g[p + q - i - 1, j - 1]
        elif axis == "col":
            if j not in (p, q):
                raise ValidationError(f"cell ({i},{j}) is not on columns {p},{q}", (i, j))
            new[i - 1, j - 1] = g[i - 1, p + q - j - 1]
        else:
            s = int(g[i - 1, j - 1])
            if s not in (p, q):
                raise ValidationError(f"cell ({i},{j}) does not hold symbol {p} or {q}", (i, j))
            new[i - 1, j - 1] = p + q - s
    if axis in ("row", "col"):
        lines = {i if axis == "row" else j for i, j in sup}
        other = {j if axis == "row" else i for i, j in sup}
        expected = {(a, b) if axis == "row" else (b, a) for a in (p, q) for b in other}
        if sup != expected or not lines <= {p, q}:
            raise ValidationError("support does not pair up the two lines")
    if not is_latin(new):
        raise ValidationError("support is not a closed cycle: result is not Latin")
    lo, hi = min(p, q), max(p, q)
    m_lo = _line_matrix(new, axis, lo, sup)
    m_hi = _line_matrix(new, axis, hi, sup)
    precedes = bool((sigma(m_lo) >= sigma(m_hi)).all())
    return SwitchResult(LatinSquare(new), precedes)
