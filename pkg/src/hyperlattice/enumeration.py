"""Exhaustive generators for Latin squares, ASMs, ASHMs, PASHMs, C_n and
monotone hypertriangles.

Every generator returns elements in a stable lexicographic order so that
node ids in serialized graphs are reproducible.  Orders above a per-kind cap
raise :class:`EnumerationCapExceeded`; the environment variable
``HYPERLATTICE_MAX_N`` overrides every cap.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

import numpy as np

from .core import (
    DTYPE,
    CornerSumHypermatrix,
    LatinSquare,
    ashm_corner_conditions,
    step_bounds,
)

DEFAULT_CAPS = {
    "latin": 5,
    "asm": 6,
    "ashm": 5,
    "pashm": 4,
    "corner-sum": 4,
    "triangle": 4,
}


class EnumerationCapExceeded(ValueError):
    pass


def cap_for(kind: str) -> int:
    env = os.environ.get("HYPERLATTICE_MAX_N")
    if env:
        return int(env)
    return DEFAULT_CAPS[kind]


def _check_cap(kind: str, n: int) -> None:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    cap = cap_for(kind)
    if n > cap:
        raise EnumerationCapExceeded(
            f"{kind} enumeration capped at n={cap} (set HYPERLATTICE_MAX_N to override)")


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        return 1
    if workers == 0:
        return os.cpu_count() or 1
    return max(1, workers)


@dataclass
class EnumerationResult:
    """Outcome of an exhaustive run; ``elements`` is None in count-only mode."""

    kind: str
    n: int
    count: int
    elements: np.ndarray | list | None = field(default=None, repr=False)
    wrap: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.elements is not None and len(self.elements) != self.count:
            raise AssertionError("count does not match the number of elements")

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator:
        if self.elements is None:
            raise ValueError("count-only result has no elements")
        wrap = self.wrap or (lambda x: x)
        for e in self.elements:
            yield wrap(e)

    def objects(self) -> list:
        return list(self)


# ---------------------------------------------------------------------------
# Latin squares: row-by-row backtracking over permutation bitmasks
# ---------------------------------------------------------------------------

def _perm_table(n: int) -> tuple[np.ndarray, list[int]]:
    perms = np.array(list(permutations(range(1, n + 1))), dtype=np.int8)
    # bit (col * n + sym - 1) marks symbol ``sym`` in column ``col``
    masks = [sum(1 << (c * n + int(s) - 1) for c, s in enumerate(p)) for p in perms]
    return perms, masks


def _latin_rows(n: int, masks: list[int], first: int | None) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    rows: list[int] = []

    def rec(cands: list[int]) -> None:
        if len(rows) == n:
            out.append(tuple(rows))
            return
        for p in cands:
            mp = masks[p]
            rows.append(p)
            rec([c for c in cands if not masks[c] & mp])
            rows.pop()

    everything = list(range(len(masks)))
    if first is None:
        rec(everything)
    else:
        rows.append(first)
        rec([c for c in everything if not masks[c] & masks[first]])
    return out


def _latin_partition(args):
    n, first = args
    _, masks = _perm_table(n)
    return _latin_rows(n, masks, first)


def enumerate_latin(n: int, count_only: bool = False, workers: int | None = None) -> EnumerationResult:
    _check_cap("latin", n)
    perms, masks = _perm_table(n)
    w = _resolve_workers(workers)
    if w > 1:
        with ProcessPoolExecutor(w) as ex:
            parts = ex.map(_latin_partition, [(n, p) for p in range(len(perms))])
            rows = [r for part in parts for r in part]
    else:
        rows = _latin_rows(n, masks, None)
    if count_only:
        return EnumerationResult("latin", n, len(rows))
    squares = perms[np.array(rows, dtype=np.intp)] if rows else np.zeros((0, n, n), np.int8)
    return EnumerationResult("latin", n, len(rows), squares, lambda s: LatinSquare(s))


# ---------------------------------------------------------------------------
# Alternating sign matrices via 2-D corner-sum matrices
# ---------------------------------------------------------------------------

def enumerate_asm(n: int) -> list[np.ndarray]:
    """All n x n ASMs, in lexicographic order of their corner-sum matrices."""
    _check_cap("asm", n)
    c = np.zeros((n + 1, n + 1), dtype=int)
    c[n, :] = np.arange(n + 1)
    c[:, n] = np.arange(n + 1)
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    out = []

    def rec(t: int) -> None:
        if t == len(cells):
            cs = c.copy()
            out.append((cs[1:, 1:] - cs[:-1, 1:] - cs[1:, :-1] + cs[:-1, :-1]).astype(DTYPE))
            return
        i, j = cells[t]
        lo = max(c[i - 1, j], c[i, j - 1])
        hi = min(c[i - 1, j], c[i, j - 1]) + 1
        if i + 1 == n:
            lo, hi = max(lo, c[n, j] - 1), min(hi, c[n, j])
        if j + 1 == n:
            lo, hi = max(lo, c[i, n] - 1), min(hi, c[i, n])
        for v in range(lo, hi + 1):
            c[i, j] = v
            rec(t + 1)
        c[i, j] = 0

    rec(0)
    return out


# ---------------------------------------------------------------------------
# Corner-sum hypermatrices: depth-first fill in (k, i, j) order
# ---------------------------------------------------------------------------

def _corner_sum_boundary(n: int) -> list[int]:
    N = n + 1
    c = [0] * N ** 3
    for i in range(N):
        for j in range(N):
            for k in range(N):
                if 0 in (i, j, k):
                    continue
                if i == n:
                    v = j * k
                elif j == n:
                    v = i * k
                elif k == n:
                    v = i * j
                else:
                    continue
                c[(i * N + j) * N + k] = v
    return c


def _corner_sum_plan(n: int):
    """Per interior cell: flat index plus the constraints known when it is placed."""
    N = n + 1
    lo, hi = step_bounds(n)
    lo, hi = lo.tolist(), hi.tolist()
    plan = []
    for k in range(1, n):
        for i in range(1, n):
            for j in range(1, n):
                f = (i * N + j) * N + k
                below = [  # (flat neighbour, min step, max step)
                    (f - 1, lo[i][j], hi[i][j]),
                    (f - N * N, lo[j][k], hi[j][k]),
                    (f - N, lo[i][k], hi[i][k]),
                ]
                above = []
                if k + 1 == n:
                    above.append((f + 1, lo[i][j], hi[i][j]))
                if i + 1 == n:
                    above.append((f + N * N, lo[j][k], hi[j][k]))
                if j + 1 == n:
                    above.append((f + N, lo[i][k], hi[i][k]))
                plan.append((f, below, above))
    return plan


def _corner_sum_search(n: int, first: int | None = None) -> list[tuple[int, ...]]:
    c = _corner_sum_boundary(n)
    plan = _corner_sum_plan(n)
    interior = [f for f, _, _ in plan]
    out: list[tuple[int, ...]] = []
    depth = len(plan)

    def rec(t: int) -> None:
        if t == depth:
            out.append(tuple(c[f] for f in interior))
            return
        f, below, above = plan[t]
        low, high = -10 ** 9, 10 ** 9
        for g, a, b in below:
            v = c[g]
            if v + a > low:
                low = v + a
            if v + b < high:
                high = v + b
        for g, a, b in above:
            v = c[g]
            if v - b > low:
                low = v - b
            if v - a < high:
                high = v - a
        if t == 0 and first is not None:
            if not low <= first <= high:
                return
            low = high = first
        for v in range(low, high + 1):
            c[f] = v
            rec(t + 1)
        c[f] = 0

    if depth == 0:
        return [()]
    rec(0)
    return out


def _corner_sum_partition(args):
    return _corner_sum_search(*args)


def _interior_to_full(n: int, interior: list[tuple[int, ...]]) -> np.ndarray:
    N = n + 1
    base = np.array(_corner_sum_boundary(n), dtype=np.int16).reshape(N, N, N)
    out = np.repeat(base[None], len(interior), axis=0)
    if n > 1 and interior:
        vals = np.array(interior, dtype=np.int16).reshape(len(interior), n - 1, n - 1, n - 1)
        # interior tuples are in (k, i, j) order
        out[:, 1:n, 1:n, 1:n] = vals.transpose(0, 2, 3, 1)
    return out


def enumerate_corner_sum(n: int, count_only: bool = False, workers: int | None = None) -> EnumerationResult:
    """All of C_n as an (count, n+1, n+1, n+1) int16 array."""
    _check_cap("corner-sum", n)
    w = _resolve_workers(workers)
    if w > 1 and n > 1:
        with ProcessPoolExecutor(w) as ex:
            values = range(0, 2)  # first interior cell C_{1,1,1} is 0 or 1
            parts = ex.map(_corner_sum_partition, [(n, v) for v in values])
            interior = [t for part in parts for t in part]
    else:
        interior = _corner_sum_search(n)
    if count_only:
        return EnumerationResult("corner-sum", n, len(interior))
    arr = _interior_to_full(n, interior)
    # canonical order: lexicographic on the flattened interior (i, j, k) entries
    flat = arr[:, 1:n, 1:n, 1:n].reshape(len(arr), -1)
    order = np.lexsort(flat.T[::-1]) if flat.shape[1] else np.arange(len(arr))
    arr = arr[order]
    return EnumerationResult("corner-sum", n, len(arr), arr,
                             lambda c: CornerSumHypermatrix(c, check=False))


# ---------------------------------------------------------------------------
# Monotone hypertriangles: backtracking over symbol multiplicities
# ---------------------------------------------------------------------------

def _triangle_search(n: int, emit: Callable[[list], None]) -> None:
    """Fill mult[i][j][k] (times symbol j occurs in row i of plane k).

    Rows n and planes n are forced (every symbol appears exactly k resp. i
    times); the free rows are chosen symbol by symbol, tracking running counts
    of entries <= j per row (``le``).
    """
    R = range(n + 1)
    mult = [[[0] * (n + 1) for _ in R] for _ in R]
    le = [[[0] * (n + 1) for _ in R] for _ in R]  # le[i][j][k]
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            mult[n][j][k] = k
            le[n][j][k] = j * k
        for i in range(1, n + 1):
            mult[i][j][n] = i
            le[i][j][n] = i * j

    def lo(a, b):
        return max(0, a + b - n)

    def hi(a, b):
        return min(a, b)

    cells = [(k, i, j) for k in range(1, n) for i in range(1, n) for j in range(1, n + 1)]
    depth = len(cells)

    def rec(t: int) -> None:
        if t == depth:
            emit(mult)
            return
        k, i, j = cells[t]
        before = le[i][j - 1][k]
        target = i * k
        cnt_lo, cnt_hi = lo(i, k), hi(i, k)  # condition 2
        for m in range(cnt_lo, cnt_hi + 1):
            q = before + m
            remaining = n - j
            # condition 1: the row must end with exactly i*k entries
            if q + remaining * cnt_hi < target or q + remaining * cnt_lo > target:
                continue
            # condition 3: growth from row i-1 (and into the forced row n)
            d = q - le[i - 1][j][k]
            if not lo(j, k) <= d <= hi(j, k):
                continue
            if i + 1 == n and not lo(j, k) <= le[n][j][k] - q <= hi(j, k):
                continue
            # condition 4: growth from plane k-1 (and into the forced plane n)
            d = q - le[i][j][k - 1]
            if not lo(i, j) <= d <= hi(i, j):
                continue
            if k + 1 == n and not lo(i, j) <= le[i][j][n] - q <= hi(i, j):
                continue
            mult[i][j][k] = m
            le[i][j][k] = q
            rec(t + 1)
        mult[i][j][k] = 0
        le[i][j][k] = 0

    rec(0)


def enumerate_monotone_hypertriangles(n: int, count_only: bool = False) -> EnumerationResult:
    _check_cap("triangle", n)
    from .triangles import MonotoneHypertriangle

    found: list[np.ndarray] = []
    counter = [0]

    def emit(mult):
        counter[0] += 1
        if not count_only:
            arr = np.array([[row[1:] for row in plane[1:]] for plane in mult[1:]], dtype=DTYPE)
            found.append(arr)

    _triangle_search(n, emit)
    if count_only:
        return EnumerationResult("triangle", n, counter[0])
    return EnumerationResult("triangle", n, counter[0], found,
                             lambda m: MonotoneHypertriangle(m))


# ---------------------------------------------------------------------------
# ASHMs and PASHMs
# ---------------------------------------------------------------------------

def _stack(asms: list[np.ndarray], seq: tuple[int, ...]) -> np.ndarray:
    return np.stack([asms[s] for s in seq], axis=2)


def _plane_sequences(n: int, alternating: bool) -> list[tuple[int, ...]]:
    """Sequences of n ASMs whose planes sum to the all-ones matrix.

    With ``alternating`` the running sum must stay 0/1 in every cell, which
    makes each vertical line alternate in sign starting and ending with +1.
    """
    asms = enumerate_asm(n)
    index = {a.tobytes(): t for t, a in enumerate(asms)}
    ones = np.ones((n, n), dtype=DTYPE)
    out: list[tuple[int, ...]] = []
    seq: list[int] = []

    def rec(partial: np.ndarray) -> None:
        left = n - len(seq)
        if left == 1:
            last = ones - partial
            t = index.get(last.tobytes())
            if t is not None:
                out.append((*seq, t))
            return
        for t, a in enumerate(asms):
            s = partial + a
            if alternating:
                if ((s < 0) | (s > 1)).any():
                    continue
            elif (np.abs(ones - s) > left - 1).any():
                continue
            seq.append(t)
            rec(s)
            seq.pop()

    rec(np.zeros((n, n), dtype=DTYPE))
    return out


def _from_corner_sums(n: int, predicate: str) -> np.ndarray:
    cs = enumerate_corner_sum(n).elements.astype(DTYPE)
    a = np.diff(np.diff(np.diff(cs, axis=1), axis=2), axis=3)
    if predicate == "ashm":
        keep = np.array([ashm_corner_conditions(c) for c in cs], dtype=bool)
    else:
        small = np.isin(a, (-1, 0, 1)).reshape(len(a), -1).all(axis=1)
        # each k-plane is an ASM iff its 2-D corner sum steps by 0/1 along i and j
        d = np.diff(cs, axis=3)
        steps_i = np.diff(d, axis=1)
        steps_j = np.diff(d, axis=2)
        ok_i = ((steps_i == 0) | (steps_i == 1)).reshape(len(a), -1).all(axis=1)
        ok_j = ((steps_j == 0) | (steps_j == 1)).reshape(len(a), -1).all(axis=1)
        keep = small & ok_i & ok_j
    return a[keep]


def _canonical(arrs) -> np.ndarray:
    arrs = np.asarray(arrs, dtype=DTYPE)
    if len(arrs) == 0:
        return arrs
    flat = arrs.reshape(len(arrs), -1)
    return arrs[np.lexsort(flat.T[::-1])]


def _enumerate_signed(kind: str, n: int, strategy: str) -> EnumerationResult:
    _check_cap(kind, n)
    alternating = kind == "ashm"
    results = {}
    if strategy in ("planes", "both"):
        asms = enumerate_asm(n)
        seqs = _plane_sequences(n, alternating)
        results["planes"] = _canonical([_stack(asms, s) for s in seqs]) if seqs else \
            np.zeros((0, n, n, n), DTYPE)
    if strategy in ("corner-sum", "both"):
        results["corner-sum"] = _canonical(_from_corner_sums(n, kind))
    if not results:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "both":
        a, b = results["planes"], results["corner-sum"]
        if a.shape != b.shape or not np.array_equal(a, b):
            raise RuntimeError(
                f"{kind} strategies disagree at n={n}: {len(a)} from planes, {len(b)} from corner sums")
    elements = next(iter(results.values()))
    return EnumerationResult(kind, n, len(elements), elements)


def enumerate_ashm(n: int, strategy: str = "both", count_only: bool = False) -> EnumerationResult:
    """All ASHMs of order n.

    ``strategy`` is ``"planes"`` (sequences of ASMs), ``"corner-sum"``
    (filter C_n by the mixed-difference conditions) or ``"both"``, which runs
    the two and raises RuntimeError unless they produce the same set.
    Count-only mode uses a dynamic programme over 0/1 running plane sums and
    reaches n = 5.
    """
    if count_only:
        _check_cap("ashm", n)
        return EnumerationResult("ashm", n, count_ashm_by_planes(n))
    if n > DEFAULT_CAPS["pashm"] and not os.environ.get("HYPERLATTICE_MAX_N"):
        raise EnumerationCapExceeded("full ASHM enumeration is capped at n=4; use count_only")
    return _enumerate_signed("ashm", n, strategy)


def enumerate_pashm(n: int, strategy: str = "both", count_only: bool = False) -> EnumerationResult:
    if count_only:
        _check_cap("pashm", n)
        return EnumerationResult("pashm", n, count_pashm_by_planes(n))
    return _enumerate_signed("pashm", n, strategy)


def count_ashm_by_planes(n: int) -> int:
    """Count ASHMs as walks over 0/1 running sums of ASM planes (bitmask DP)."""
    asms = enumerate_asm(n)
    moves = []
    for a in asms:
        flat = a.ravel()
        plus = sum(1 << t for t, v in enumerate(flat) if v == 1)
        minus = sum(1 << t for t, v in enumerate(flat) if v == -1)
        moves.append((plus, minus))
    full = (1 << (n * n)) - 1
    states = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for s, cnt in states.items():
            for plus, minus in moves:
                if plus & s or minus & ~s:
                    continue
                t = (s | plus) & ~minus
                nxt[t] = nxt.get(t, 0) + cnt
        states = nxt
    return states.get(full, 0)


def count_pashm_by_planes(n: int) -> int:
    """Count PASHMs by a DP over the running plane sum (any integers)."""
    asms = [tuple(a.ravel().tolist()) for a in enumerate_asm(n)]
    states = {tuple([0] * (n * n)): 1}
    for step in range(n):
        left = n - step - 1
        nxt: dict[tuple, int] = {}
        for s, cnt in states.items():
            for a in asms:
                t = tuple(x + y for x, y in zip(s, a))
                if any(abs(1 - v) > left for v in t):
                    continue
                nxt[t] = nxt.get(t, 0) + cnt
        states = nxt
    return states.get(tuple([1] * (n * n)), 0)


def enumerate_kind(kind: str, n: int, count_only: bool = False, workers: int | None = None) -> EnumerationResult:
    if kind == "latin":
        return enumerate_latin(n, count_only, workers)
    if kind == "corner-sum":
        return enumerate_corner_sum(n, count_only, workers)
    if kind == "ashm":
        return enumerate_ashm(n, count_only=count_only)
    if kind == "pashm":
        return enumerate_pashm(n, count_only=count_only)
    if kind == "triangle":
        return enumerate_monotone_hypertriangles(n, count_only)
    if kind == "asm":
        asms = enumerate_asm(n)
        return EnumerationResult("asm", n, len(asms), None if count_only else asms)
    raise ValueError(f"unknown kind {kind!r}")
