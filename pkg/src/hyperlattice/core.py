"""Integer arrays, corner-sum transforms and validity predicates.

Index conventions (the one place they are defined):

* A *matrix* of order n is an ``(n, n)`` integer ndarray; entry ``A_{i,j}``
  (1-based) lives at ``m[i-1, j-1]``.
* A *hypermatrix* of order n is an ``(n, n, n)`` integer ndarray;
  ``A_{i,j,k}`` lives at ``a[i-1, j-1, k-1]``.  Axis 0 indexes rows of the
  grid, axis 1 columns and axis 2 planes (symbols).
* Corner-sum arrays keep their zero boundary: a corner-sum matrix is
  ``(n+1, n+1)`` and a corner-sum hypermatrix ``(n+1, n+1, n+1)``, so
  ``C_{i,j,k}`` is simply ``c[i, j, k]`` for ``0 <= i, j, k <= n``.

Public functions that take explicit coordinates use the 1-based (or
0..n for corner-sums) convention above.  Hypermatrices are plain ndarrays and
are never validated implicitly; :class:`LatinSquare` and
:class:`CornerSumHypermatrix` validate on construction.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 64
DTYPE = np.int64


class ValidationError(ValueError):
    """Raised when an object violates the invariants of its type."""

    def __init__(self, message: str, location: tuple | None = None):
        super().__init__(message)
        self.location = location


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {n}")


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=DTYPE)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
    return arr


def as_hypermatrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=DTYPE)
    if arr.ndim != 3 or len(set(arr.shape)) != 1:
        raise ValueError(f"expected a cubical 3-D array, got shape {arr.shape}")
    _check_order(arr.shape[0])
    return arr


def identity_matrix(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def anti_identity_matrix(n: int) -> np.ndarray:
    """The complete inversion J_n (ones on the anti-diagonal)."""
    return np.fliplr(np.eye(n, dtype=DTYPE))


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix with a 1 in row i, column perm[i-1] (1-based symbols)."""
    n = len(perm)
    m = np.zeros((n, n), dtype=DTYPE)
    for i, p in enumerate(perm):
        m[i, p - 1] = 1
    return m


# ---------------------------------------------------------------------------
# 2-D corner sums
# ---------------------------------------------------------------------------

def sigma(m) -> np.ndarray:
    """Corner-sum matrix: entry (i, j) is the sum of the top-left i x j block.

    Works for rectangular input; the result has a leading zero row and column.
    """
    m = as_matrix(m)
    out = np.zeros((m.shape[0] + 1, m.shape[1] + 1), dtype=DTYPE)
    out[1:, 1:] = m.cumsum(axis=0).cumsum(axis=1)
    return out


def sigma_inverse(c) -> np.ndarray:
    c = as_matrix(c)
    if c.shape[0] < 2 or c.shape[1] < 2:
        raise ValueError(f"corner-sum grid must be at least 2x2, got {c.shape}")
    if c[0].any() or c[:, 0].any():
        raise ValueError("corner-sum grid must have a zero 0-row and 0-column")
    return c[1:, 1:] - c[:-1, 1:] - c[1:, :-1] + c[:-1, :-1]


def is_corner_sum_matrix(c) -> bool:
    c = as_matrix(c)
    if c.shape[0] != c.shape[1] or c.shape[0] < 2:
        return False
    n = c.shape[0] - 1
    idx = np.arange(n + 1)
    if c[0].any() or c[:, 0].any():
        return False
    if (c[:, n] != idx).any() or (c[n, :] != idx).any():
        return False
    steps = np.concatenate([np.diff(c, axis=0).ravel(), np.diff(c, axis=1).ravel()])
    return bool(((steps == 0) | (steps == 1)).all())


# ---------------------------------------------------------------------------
# 3-D corner sums
# ---------------------------------------------------------------------------

def xi(a) -> np.ndarray:
    """Triple partial sums of a hypermatrix, with zero planes at index 0."""
    a = as_hypermatrix(a)
    n = a.shape[0]
    out = np.zeros((n + 1,) * 3, dtype=DTYPE)
    out[1:, 1:, 1:] = a.cumsum(axis=0).cumsum(axis=1).cumsum(axis=2)
    return out


def xi_inverse(c) -> np.ndarray:
    """Recover a hypermatrix from its corner-sum by 8-term inclusion-exclusion."""
    c = np.asarray(c, dtype=DTYPE)
    if c.ndim != 3 or len(set(c.shape)) != 1 or c.shape[0] < 2:
        raise ValueError(f"expected an (n+1)^3 array, got shape {c.shape}")
    if c[0].any() or c[:, 0].any() or c[:, :, 0].any():
        raise ValueError("corner-sum array must have zero planes at index 0")
    return np.diff(np.diff(np.diff(c, axis=0), axis=1), axis=2)


def step_bounds(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Entrywise (Sigma(J_n), Sigma(I_n)): allowed range of a plane-to-plane step.

    ``lo[i, j] = max(0, i+j-n)`` and ``hi[i, j] = min(i, j)`` for ``0 <= i, j <= n``.
    """
    i = np.arange(n + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    return np.maximum(0, i + j - n), np.minimum(i, j)


def _step_violations(c: np.ndarray) -> list[tuple[int, int, int, int]]:
    """Locations (axis, i, j, k) whose consecutive difference is out of range."""
    n = c.shape[0] - 1
    lo, hi = step_bounds(n)
    bad = []
    for axis in range(3):
        d = np.diff(c, axis=axis)
        # the bound depends on the two indices that stay fixed along ``axis``
        d = np.moveaxis(d, axis, 2)
        ok = (d >= lo[:, :, None]) & (d <= hi[:, :, None])
        for p, q, r in zip(*np.nonzero(~ok)):
            coords = [p, q]
            coords.insert(axis, r + 1)
            bad.append((axis, *map(int, coords)))
    return bad


def corner_sum_violations(c) -> list[str]:
    """Human-readable list of broken boundary/step conditions (empty if valid)."""
    c = np.asarray(c, dtype=DTYPE)
    if c.ndim != 3 or len(set(c.shape)) != 1 or c.shape[0] < 2:
        return [f"shape {c.shape} is not (n+1)^3 with n >= 1"]
    n = c.shape[0] - 1
    prod = np.outer(np.arange(n + 1), np.arange(n + 1))
    problems = []
    for name, zero_face, full_face in (
        ("k", c[:, :, 0], c[:, :, n]),
        ("j", c[:, 0, :], c[:, n, :]),
        ("i", c[0, :, :], c[n, :, :]),
    ):
        if zero_face.any():
            problems.append(f"{name}=0 face is not all zero")
        if (full_face != prod).any():
            problems.append(f"{name}={n} face is not i*j")
    if not problems:
        for axis, i, j, k in _step_violations(c):
            problems.append(f"step along axis {'ijk'[axis]} out of range at ({i},{j},{k})")
    return problems


def is_corner_sum_hypermatrix(c) -> bool:
    return not corner_sum_violations(c)


def partial_sum_hypermatrix(a) -> np.ndarray:
    """P(A)_{i,j,k}: sum of A_{a,j,b} over a <= i and b <= k."""
    a = as_hypermatrix(a)
    return a.cumsum(axis=0).cumsum(axis=2)


def latin_like_square(a) -> np.ndarray:
    """Cell (i, j) holds sum_k k * A_{i,j,k}; recovers L from H(L)."""
    a = as_hypermatrix(a)
    n = a.shape[0]
    return a @ np.arange(1, n + 1, dtype=DTYPE)


def plane_sum(c) -> np.ndarray:
    """Sum over k = 1..n of the planes C_{**k} of a corner-sum array (n x n)."""
    c = np.asarray(c, dtype=DTYPE)
    return c[1:, 1:, 1:].sum(axis=2)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------

def _alternates(line: np.ndarray) -> bool:
    nz = line[line != 0]
    if nz.size == 0 or nz.size % 2 == 0:
        return False
    if not np.isin(nz, (-1, 1)).all():
        return False
    expected = np.where(np.arange(nz.size) % 2 == 0, 1, -1)
    return bool((nz == expected).all())


def _partial_sums_01(a: np.ndarray, axis: int) -> bool:
    # alternation starting and ending with +1 <=> every prefix sum is 0/1, total 1
    if not np.isin(a, (-1, 0, 1)).all():
        return False
    ps = a.cumsum(axis=axis)
    return bool(((ps == 0) | (ps == 1)).all() and (np.take(ps, -1, axis=axis) == 1).all())


def is_latin(grid) -> bool:
    g = np.asarray(grid)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] == 0:
        return False
    n = g.shape[0]
    want = np.arange(1, n + 1)
    return all((np.sort(g[r]) == want).all() for r in range(n)) and all(
        (np.sort(g[:, c]) == want).all() for c in range(n)
    )


def is_asm(m) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return _partial_sums_01(m, 0) and _partial_sums_01(m, 1)


def is_permutation_matrix(m) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1] or not np.isin(m, (0, 1)).all():
        return False
    return bool((m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 1).all())


def is_ashm(a) -> bool:
    a = as_hypermatrix(a)
    return all(_partial_sums_01(a, ax) for ax in range(3))


def is_pashm(a) -> bool:
    a = as_hypermatrix(a)
    n = a.shape[0]
    if not np.isin(a, (-1, 0, 1)).all():
        return False
    if not (a.sum(axis=2) == 1).all():
        return False
    return all(is_asm(a[:, :, k]) for k in range(n))


def is_permutation_hypermatrix(a) -> bool:
    a = as_hypermatrix(a)
    if not np.isin(a, (0, 1)).all():
        return False
    return all((a.sum(axis=ax) == 1).all() for ax in range(3))


def ashm_corner_conditions(c) -> bool:
    """The three 2-D difference conditions on a corner-sum that single out ASHMs.

    For every 1 <= i, j, k <= n the mixed second differences of ``c`` in the
    (i, j), (i, k) and (j, k) directions must all be 0 or 1.
    """
    c = np.asarray(c, dtype=DTYPE)
    s = c[1:, 1:, 1:]
    d_ij = s - c[:-1, 1:, 1:] - c[1:, :-1, 1:] + c[:-1, :-1, 1:]
    d_ik = s - c[:-1, 1:, 1:] - c[1:, 1:, :-1] + c[:-1, 1:, :-1]
    d_jk = s - c[1:, :-1, 1:] - c[1:, 1:, :-1] + c[1:, :-1, :-1]
    return all(((d == 0) | (d == 1)).all() for d in (d_ij, d_ik, d_jk))


def planes(a, axis: int) -> list[np.ndarray]:
    """The n planes of a hypermatrix perpendicular to ``axis``."""
    a = as_hypermatrix(a)
    return [np.take(a, t, axis=axis) for t in range(a.shape[0])]


def is_in_xi_preimage(a) -> bool:
    """True iff every plane P (all three directions) has Sigma(J) <= Sigma(P) <= Sigma(I)."""
    a = as_hypermatrix(a)
    n = a.shape[0]
    lo, hi = step_bounds(n)
    for axis in range(3):
        for p in planes(a, axis):
            s = sigma(p)
            if (s < lo).any() or (s > hi).any():
                return False
    return True


def line_sums(a) -> list[np.ndarray]:
    a = as_hypermatrix(a)
    return [a.sum(axis=ax) for ax in range(3)]


def check_partial_sum_bounds(a) -> bool:
    """Prefix and suffix sums of every line lie in [1 - m_ij, m_ij].

    ``m_ij = min(i, j, n-i+1, n-j+1)`` where (i, j) are the two fixed indices
    of the line.  Necessary, not sufficient, for membership in Xi^{-1}(C_n).
    """
    a = as_hypermatrix(a)
    n = a.shape[0]
    idx = np.arange(1, n + 1)
    m = np.minimum(np.minimum(idx[:, None], idx[None, :]),
                   np.minimum(n - idx[:, None] + 1, n - idx[None, :] + 1))
    for axis in range(3):
        lines = np.moveaxis(a, axis, 2)
        prefix = lines.cumsum(axis=2)
        suffix = lines[:, :, ::-1].cumsum(axis=2)
        for s in (prefix, suffix):
            if (s < 1 - m[:, :, None]).any() or (s > m[:, :, None]).any():
                return False
    return True


# ---------------------------------------------------------------------------
# Validated value types
# ---------------------------------------------------------------------------

def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=DTYPE, copy=True)
    arr.setflags(write=False)
    return arr


class LatinSquare:
    """An n x n Latin square over symbols 1..n (validated on construction)."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        grid = np.asarray(cells, dtype=DTYPE)
        if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] == 0:
            raise ValidationError(f"Latin square must be square, got shape {grid.shape}")
        _check_order(grid.shape[0])
        loc = latin_violation(grid)
        if loc is not None:
            raise ValidationError(f"not a Latin square: {loc[0]}", loc[1])
        self.cells = _frozen(grid)

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"cell ({i},{j}) outside 1..{self.n}")
        return int(self.cells[i - 1, j - 1])

    def rows(self) -> list[list[int]]:
        return self.cells.tolist()

    def hypermatrix(self) -> np.ndarray:
        """The permutation hypermatrix H(L): A_{i,j,k} = 1 iff L_{i,j} = k."""
        n = self.n
        return (self.cells[:, :, None] == np.arange(1, n + 1)[None, None, :]).astype(DTYPE)

    def xi(self) -> np.ndarray:
        return xi(self.hypermatrix())

    @classmethod
    def from_hypermatrix(cls, a) -> "LatinSquare":
        a = as_hypermatrix(a)
        if not is_permutation_hypermatrix(a):
            raise ValidationError("hypermatrix is not a permutation hypermatrix")
        return cls(latin_like_square(a))

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash(self.cells.tobytes())

    def __repr__(self):
        return f"LatinSquare({self.rows()})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows())


def latin_violation(grid) -> tuple[str, tuple[int, int]] | None:
    """First violation as (message, 1-based cell) or None for a Latin square."""
    g = np.asarray(grid)
    n = g.shape[0]
    for i in range(n):
        for j in range(n):
            v = int(g[i, j])
            if not 1 <= v <= n:
                return f"symbol {v} at ({i + 1},{j + 1}) outside 1..{n}", (i + 1, j + 1)
    for i in range(n):
        seen: dict[int, int] = {}
        for j in range(n):
            v = int(g[i, j])
            if v in seen:
                return f"symbol {v} repeated in row {i + 1}", (i + 1, j + 1)
            seen[v] = j
    for j in range(n):
        seen = {}
        for i in range(n):
            v = int(g[i, j])
            if v in seen:
                return f"symbol {v} repeated in column {j + 1}", (i + 1, j + 1)
            seen[v] = i
    return None


class CornerSumHypermatrix:
    """An element of C_n: an (n+1)^3 array obeying the boundary and step rules."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries, *, check: bool = True):
        arr = np.asarray(entries, dtype=DTYPE)
        if check:
            problems = corner_sum_violations(arr)
            if problems:
                raise ValidationError("not a corner-sum hypermatrix: " + "; ".join(problems[:3]))
            _check_order(arr.shape[0] - 1)
        self.entries = _frozen(arr)
        self._hash = None

    @property
    def n(self) -> int:
        return self.entries.shape[0] - 1

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        return int(self.entries[ijk])

    @classmethod
    def from_hypermatrix(cls, a) -> "CornerSumHypermatrix":
        return cls(xi(a))

    def hypermatrix(self) -> np.ndarray:
        return xi_inverse(self.entries)

    @property
    def rho(self) -> int:
        return int(self.entries.sum())

    def key(self) -> bytes:
        return self.entries.astype(np.int16).tobytes()

    def __eq__(self, other):
        return isinstance(other, CornerSumHypermatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"CornerSumHypermatrix(n={self.n}, rho={self.rho})"


def coerce_corner_sum(x) -> CornerSumHypermatrix:
    """Accept a CornerSumHypermatrix, a LatinSquare, or a hypermatrix in Xi^{-1}(C_n).

    Raw arrays are always read as hypermatrices; raises ValidationError when
    their corner-sum is not in C_n.
    """
    if isinstance(x, CornerSumHypermatrix):
        return x
    if isinstance(x, LatinSquare):
        return CornerSumHypermatrix(x.xi(), check=False)
    return CornerSumHypermatrix(xi(x))


# ---------------------------------------------------------------------------
# Grid notation: each cell lists the signed plane indices of its vertical line
# ---------------------------------------------------------------------------

Cell = tuple[int, ...]


def grid_notation(a) -> list[list[Cell]]:
    """Cell (i, j) lists +k / -k once per unit of A_{i,j,k}, in increasing k."""
    a = as_hypermatrix(a)
    n = a.shape[0]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            terms: list[int] = []
            for k in range(n):
                v = int(a[i, j, k])
                terms.extend([(k + 1) if v > 0 else -(k + 1)] * abs(v))
            row.append(tuple(terms))
        out.append(row)
    return out


def from_grid_notation(grid: Sequence[Sequence[Iterable[int]]]) -> np.ndarray:
    n = len(grid)
    a = np.zeros((n, n, n), dtype=DTYPE)
    for i, row in enumerate(grid):
        if len(row) != n:
            raise ValidationError(f"row {i + 1} has {len(row)} cells, expected {n}", (i + 1,))
        for j, cell in enumerate(row):
            signs: dict[int, int] = {}
            for t in cell:
                t = int(t)
                if t == 0:
                    raise ValidationError(f"zero term in cell ({i + 1},{j + 1})", (i + 1, j + 1))
                k = abs(t)
                if k > n:
                    raise ValidationError(
                        f"plane index {k} out of range in cell ({i + 1},{j + 1})", (i + 1, j + 1))
                s = 1 if t > 0 else -1
                if signs.setdefault(k, s) != s:
                    raise ValidationError(
                        f"cancelling terms for plane {k} in cell ({i + 1},{j + 1})", (i + 1, j + 1))
                a[i, j, k - 1] += s
    return a


def format_cell(cell: Cell) -> str:
    """Render a cell in the compact "1-2+3" style."""
    if not cell:
        return "0"
    parts = []
    for idx, t in enumerate(cell):
        if t < 0:
            parts.append(f"-{-t}")
        else:
            parts.append(f"+{t}" if idx else str(t))
    return "".join(parts)


def parse_cell(text: str) -> Cell:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return ()
    terms = []
    pos = 0
    while pos < len(text):
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValidationError(f"malformed cell {text!r}")
        terms.append(sign * int(text[start:pos]))
    return tuple(terms)


def format_grid(grid: Sequence[Sequence[Cell]]) -> str:
    cells = [[format_cell(c) for c in row] for row in grid]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
