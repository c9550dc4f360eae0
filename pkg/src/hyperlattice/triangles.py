"""Monotone hypertriangles and their correspondence with Xi^{-1}(C_n).

A hypertriangle of order n has, for every (i, k) in [n]^2, a weakly increasing
row of i*k symbols from [n].  Internally it is stored as a multiplicity array
``mult[i-1, j-1, k-1]`` (how often symbol j occurs in row i of plane k), which
for a hypermatrix A is exactly the partial-sum hypermatrix P(A).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DTYPE, ValidationError, as_hypermatrix, as_matrix, partial_sum_hypermatrix


def _lo(a: int, b: int, n: int) -> int:
    return max(0, a + b - n)


def _hi(a: int, b: int) -> int:
    return min(a, b)


@dataclass
class ConditionReport:
    """Per-condition outcome; each list holds human-readable violations."""

    condition1: list[str] = field(default_factory=list)
    condition2: list[str] = field(default_factory=list)
    condition3: list[str] = field(default_factory=list)
    condition4: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.condition1 or self.condition2 or self.condition3 or self.condition4)

    def failed(self) -> list[int]:
        return [c for c in (1, 2, 3, 4) if getattr(self, f"condition{c}")]

    def as_dict(self) -> dict:
        return {f"condition{c}": getattr(self, f"condition{c}") for c in (1, 2, 3, 4)}


class MonotoneHypertriangle:
    """Immutable hypertriangle; construct from multiplicities or with :meth:`from_rows`.

    Construction only checks shape and symbol range.  Use :meth:`conditions`
    or :meth:`is_valid` for the four defining conditions.
    """

    __slots__ = ("multiplicities", "_rows")

    def __init__(self, multiplicities, _rows=None):
        m = np.array(multiplicities, dtype=DTYPE)
        if m.ndim != 3 or len(set(m.shape)) != 1 or m.shape[0] < 1:
            raise ValidationError(f"multiplicities must be n x n x n, got shape {m.shape}")
        if (m < 0).any():
            i, j, k = (int(t) + 1 for t in np.argwhere(m < 0)[0])
            raise ValidationError(f"negative multiplicity for symbol {j} in row {i} of plane {k}",
                                  (i, j, k))
        m.setflags(write=False)
        self.multiplicities = m
        self._rows = _rows

    @property
    def n(self) -> int:
        return self.multiplicities.shape[0]

    @classmethod
    def from_rows(cls, rows, n: int | None = None) -> "MonotoneHypertriangle":
        """``rows[k-1][i-1]`` is row i of plane k, as given (order is kept for checking)."""
        if n is None:
            n = len(rows)
        if len(rows) != n or any(len(plane) != n for plane in rows):
            raise ValidationError(f"expected {n} planes of {n} rows")
        mult = np.zeros((n, n, n), dtype=DTYPE)
        kept = []
        for k, plane in enumerate(rows, start=1):
            kept_plane = []
            for i, row in enumerate(plane, start=1):
                row = tuple(int(s) for s in row)
                for s in row:
                    if not 1 <= s <= n:
                        raise ValidationError(f"symbol {s} out of range in row {i} of plane {k}",
                                              (i, k))
                    mult[i - 1, s - 1, k - 1] += 1
                kept_plane.append(row)
            kept.append(tuple(kept_plane))
        return cls(mult, tuple(kept))

    def row(self, i: int, k: int) -> tuple[int, ...]:
        """Row i of plane k (1-based)."""
        if self._rows is not None:
            return self._rows[k - 1][i - 1]
        counts = self.multiplicities[i - 1, :, k - 1]
        return tuple(int(s) for s in np.repeat(np.arange(1, self.n + 1), counts))

    def rows(self) -> list[list[list[int]]]:
        n = self.n
        return [[list(self.row(i, k)) for i in range(1, n + 1)] for k in range(1, n + 1)]

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        """Entry M_{i,j,k}: the j-th symbol of row i in plane k."""
        i, j, k = ijk
        return self.row(i, k)[j - 1]

    def conditions(self) -> ConditionReport:
        return check_conditions(self)

    def is_valid(self) -> bool:
        return check_conditions(self).ok

    def __eq__(self, other):
        return isinstance(other, MonotoneHypertriangle) and self.rows() == other.rows()

    def __hash__(self):
        return hash(tuple(tuple(map(tuple, p)) for p in self.rows()))

    def __repr__(self):
        return f"MonotoneHypertriangle(n={self.n})"

    def __str__(self):
        return render(self)


def check_conditions(t: MonotoneHypertriangle) -> ConditionReport:
    n = t.n
    rep = ConditionReport()
    p = t.multiplicities
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            row = t.row(i, k)
            if len(row) != i * k:
                rep.condition1.append(f"row {i} of plane {k} has {len(row)} entries, expected {i * k}")
            if any(a > b for a, b in zip(row, row[1:])):
                rep.condition1.append(f"row {i} of plane {k} is not weakly increasing")
            for j in range(1, n + 1):
                c = int(p[i - 1, j - 1, k - 1])
                if not _lo(i, k, n) <= c <= _hi(i, k):
                    rep.condition2.append(
                        f"symbol {j} occurs {c} times in row {i} of plane {k}, "
                        f"allowed {_lo(i, k, n)}..{_hi(i, k)}")
    le = np.zeros((n + 1, n + 1, n + 1), dtype=DTYPE)  # le[i, j, k]: entries <= j
    le[1:, 1:, 1:] = np.cumsum(p, axis=1)
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                d = int(le[i, j, k] - le[i - 1, j, k])
                if not _lo(j, k, n) <= d <= _hi(j, k):
                    rep.condition3.append(
                        f"plane {k}: entries <= {j} grow by {d} from row {i - 1} to row {i}, "
                        f"allowed {_lo(j, k, n)}..{_hi(j, k)}")
                d = int(le[i, j, k] - le[i, j, k - 1])
                if not _lo(i, j, n) <= d <= _hi(i, j):
                    rep.condition4.append(
                        f"row {i}: entries <= {j} grow by {d} from plane {k - 1} to plane {k}, "
                        f"allowed {_lo(i, j, n)}..{_hi(i, j)}")
    return rep


def check_interlacing(t: MonotoneHypertriangle) -> bool:
    """Both interlacing chains (row to row, plane to plane) for every entry."""
    return not interlacing_violations(t)


def interlacing_violations(t: MonotoneHypertriangle) -> list[tuple[int, int, int]]:
    n = t.n
    bad = []
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            row = t.row(i, k)
            for j, m in enumerate(row, start=1):
                if i < n:
                    nxt = t.row(i + 1, k)
                    a, b = j + _lo(m, k, n), j + min(m - 1, k)
                    if not (a <= len(nxt) and b <= len(nxt) and nxt[a - 1] <= m <= nxt[b - 1]):
                        bad.append((i, j, k))
                        continue
                if k < n:
                    nxt = t.row(i, k + 1)
                    a, b = j + _lo(i, m, n), j + min(i, m - 1)
                    if not (a <= len(nxt) and b <= len(nxt) and nxt[a - 1] <= m <= nxt[b - 1]):
                        bad.append((i, j, k))
    return bad


def to_triangle(a) -> MonotoneHypertriangle:
    """Delta(A): symbol j appears P(A)_{i,j,k} times in row i of plane k."""
    p = partial_sum_hypermatrix(as_hypermatrix(a))
    if (p < 0).any():
        i, j, k = (int(t) + 1 for t in np.argwhere(p < 0)[0])
        raise ValidationError(f"partial sum P[{i},{j},{k}] is negative", (i, j, k))
    return MonotoneHypertriangle(p)


def from_triangle(t: MonotoneHypertriangle, check: bool = True) -> np.ndarray:
    """Recover A by differencing the multiplicities along i and k."""
    if check:
        rep = check_conditions(t)
        if not rep.ok:
            raise ValidationError(f"not a monotone hypertriangle (conditions {rep.failed()} fail)")
    p = t.multiplicities
    return np.diff(np.diff(p, axis=0, prepend=0), axis=2, prepend=0)


def triangle_leq(a: MonotoneHypertriangle, b: MonotoneHypertriangle) -> bool:
    """Entrywise comparison of rows; agrees with a <=_B b on the hypermatrices."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            if any(x > y for x, y in zip(a.row(i, k), b.row(i, k))):
                return False
    return True


def render(t: MonotoneHypertriangle) -> str:
    """Each plane as a centred triangle of rows, planes separated by blank lines."""
    blocks = []
    for k in range(1, t.n + 1):
        lines = [" ".join(str(s) for s in t.row(i, k)) for i in range(1, t.n + 1)]
        width = max(len(s) for s in lines)
        blocks.append("\n".join(s.center(width).rstrip() for s in lines))
    return "\n\n".join(blocks)


# ---------------------------------------------------------------------------
# Classical 2-D monotone triangles (kept separate; used as an oracle)
# ---------------------------------------------------------------------------

def asm_to_monotone_triangle(m) -> list[tuple[int, ...]]:
    """Row i lists the columns where the first i rows of the ASM sum to 1."""
    m = as_matrix(m)
    p = np.cumsum(m, axis=0)
    if not np.isin(p, (0, 1)).all():
        raise ValidationError("column partial sums are not 0/1; not an ASM")
    return [tuple(int(c) + 1 for c in np.flatnonzero(p[i])) for i in range(m.shape[0])]


def monotone_triangle_to_asm(tri, n: int | None = None) -> np.ndarray:
    n = len(tri) if n is None else n
    p = np.zeros((n, n), dtype=DTYPE)
    for i, row in enumerate(tri):
        if len(row) != i + 1 or any(a >= b for a, b in zip(row, row[1:])):
            raise ValidationError(f"row {i + 1} must hold {i + 1} strictly increasing entries")
        for c in row:
            p[i, c - 1] = 1
    return np.diff(p, axis=0, prepend=0)


def is_monotone_triangle(tri) -> bool:
    n = len(tri)
    for i, row in enumerate(tri):
        if len(row) != i + 1 or any(a >= b for a, b in zip(row, row[1:])):
            return False
        if any(not 1 <= s <= n for s in row):
            return False
    for i in range(n - 1):
        for j in range(i + 1):
            if not tri[i + 1][j] <= tri[i][j] <= tri[i + 1][j + 1]:
                return False
    return True
