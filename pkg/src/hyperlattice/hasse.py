"""Hasse graphs: cover edges, ranks, lattice test and DOT/JSON export.

Two independent constructions are provided.  For the full lattice C_n the
covers are found by probing each element's +1 neighbours against a hash
index; for any other finite family (Latin squares, ASHMs, permutations) the
comparability matrix is computed and transitively reduced.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    CornerSumHypermatrix,
    LatinSquare,
    format_cell,
    grid_notation,
    sigma,
    xi,
)


def order_vector(e) -> np.ndarray:
    """Flattened corner sum; x <=_B y iff order_vector(x) >= order_vector(y)."""
    if isinstance(e, CornerSumHypermatrix):
        return e.entries.ravel()
    if isinstance(e, LatinSquare):
        return e.xi().ravel()
    arr = np.asarray(e)
    if arr.ndim == 2:
        return sigma(arr).ravel()
    return xi(arr).ravel()


def order_matrix(elements: Sequence, leq: Callable | None = None) -> np.ndarray:
    """Boolean matrix R with R[x, y] iff element x <= element y."""
    m = len(elements)
    if leq is not None:
        return np.array([[bool(leq(a, b)) for b in elements] for a in elements], dtype=bool).reshape(m, m)
    vecs = np.stack([order_vector(e) for e in elements]).astype(np.int16)
    out = np.empty((m, m), dtype=bool)
    for x in range(m):
        out[x] = (vecs[x] >= vecs).all(axis=1)
    return out


def transitive_reduction(leq: np.ndarray) -> list[tuple[int, int]]:
    """Cover pairs (x, y) of a partial order given by its reflexive matrix."""
    strict = np.asarray(leq, dtype=bool).copy()
    np.fill_diagonal(strict, False)
    s = strict.astype(np.int32)
    through = (s @ s) > 0
    cover = strict & ~through
    return [(int(x), int(y)) for x, y in zip(*np.nonzero(cover))]


def label_of(e) -> str:
    if isinstance(e, LatinSquare):
        return "/".join("".join(str(v) for v in row) for row in e.rows())
    if isinstance(e, CornerSumHypermatrix):
        a = e.hypermatrix()
    else:
        a = np.asarray(e)
        if a.ndim == 2:
            return "/".join(" ".join(str(int(v)) for v in row) for row in a)
    return " / ".join(" ".join(format_cell(c) for c in row) for row in grid_notation(a))


@dataclass
class HasseGraph:
    nodes: list
    edges: list[tuple[int, int]]  # (lower, upper)
    kind: str = "poset"
    n: int | None = None
    ranks: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.ranks:
            self.ranks = self._compute_ranks()

    def __len__(self) -> int:
        return len(self.nodes)

    def upper(self, x: int) -> list[int]:
        return [b for a, b in self.edges if a == x]

    def lower(self, x: int) -> list[int]:
        return [a for a, b in self.edges if b == x]

    def minimal(self) -> list[int]:
        has_lower = {b for _, b in self.edges}
        return [x for x in range(len(self.nodes)) if x not in has_lower]

    def maximal(self) -> list[int]:
        has_upper = {a for a, _ in self.edges}
        return [x for x in range(len(self.nodes)) if x not in has_upper]

    def _compute_ranks(self) -> list[int]:
        """Longest-chain length from a minimal element (equals BFS depth when graded)."""
        m = len(self.nodes)
        ups: list[list[int]] = [[] for _ in range(m)]
        indeg = [0] * m
        for a, b in self.edges:
            ups[a].append(b)
            indeg[b] += 1
        rank = [0] * m
        queue = deque(x for x in range(m) if indeg[x] == 0)
        seen = 0
        while queue:
            x = queue.popleft()
            seen += 1
            for y in ups[x]:
                rank[y] = max(rank[y], rank[x] + 1)
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if seen != m:
            raise ValueError("cover graph has a cycle")
        return rank

    def bfs_depth(self, source: int) -> list[int]:
        """Shortest upward distance from ``source`` (-1 if unreachable)."""
        m = len(self.nodes)
        ups: list[list[int]] = [[] for _ in range(m)]
        for a, b in self.edges:
            ups[a].append(b)
        depth = [-1] * m
        depth[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in ups[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    queue.append(y)
        return depth

    def is_graded(self) -> bool:
        return all(self.ranks[b] == self.ranks[a] + 1 for a, b in self.edges) and \
            len({self.ranks[x] for x in self.maximal()}) == 1

    def reachability(self) -> np.ndarray:
        """Reflexive-transitive closure of the cover relation."""
        m = len(self.nodes)
        r = np.eye(m, dtype=bool)
        for a, b in self.edges:
            r[a, b] = True
        while True:
            nxt = r | ((r.astype(np.int32) @ r.astype(np.int32)) > 0)
            if (nxt == r).all():
                return r
            r = nxt

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for x, e in enumerate(self.nodes):
            lab = label_of(e).replace('"', '\\"')
            lines.append(f'  n{x} [label="{lab}", rank={self.ranks[x]}];')
        by_rank: dict[int, list[int]] = {}
        for x, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(x)
        for r in sorted(by_rank):
            lines.append("  { rank=same; " + " ".join(f"n{x};" for x in by_rank[r]) + " }")
        for a, b in self.edges:
            lines.append(f"  n{a} -> n{b} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        from .formats import to_document

        return {
            "kind": self.kind,
            "n": self.n,
            "nodes": [to_document(e) if not isinstance(e, np.ndarray) or e.ndim in (2, 3)
                      else e.tolist() for e in self.nodes],
            "ranks": self.ranks,
            "edges": [list(e) for e in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _probe_edges(elements: Sequence[CornerSumHypermatrix]) -> list[tuple[int, int]]:
    index = {e.key(): t for t, e in enumerate(elements)}
    n = elements[0].n
    interior = [(i, j, k) for i in range(1, n) for j in range(1, n) for k in range(1, n)]
    edges = []
    for t, e in enumerate(elements):
        base = e.entries.astype(np.int16)
        for pos in interior:
            base[pos] += 1
            hit = index.get(base.tobytes())
            base[pos] -= 1
            if hit is not None:
                edges.append((hit, t))
    return sorted(edges)


def build_hasse(elements: Sequence, leq: Callable | None = None, method: str = "auto",
                kind: str = "poset", n: int | None = None) -> HasseGraph:
    """Cover graph of a finite family under <=_B (or a supplied ``leq``).

    ``method="probe"`` is only meaningful for the complete lattice C_n; the
    default ``"auto"`` uses it exactly when ``kind == "corner-sum"``.
    """
    elements = list(elements)
    if method == "auto":
        method = "probe" if kind == "corner-sum" and leq is None else "reduction"
    if method == "probe":
        elems = [e if isinstance(e, CornerSumHypermatrix) else CornerSumHypermatrix(e) for e in elements]
        edges = _probe_edges(elems) if elems else []
        elements = elems
    elif method == "reduction":
        edges = sorted(transitive_reduction(order_matrix(elements, leq)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return HasseGraph(elements, edges, kind, n)


def is_lattice(h: HasseGraph) -> tuple[bool, tuple[int, int] | None]:
    """Whether every pair has a least upper and a greatest lower bound.

    Returns ``(False, (x, y))`` for the first pair lacking one.
    """
    r = h.reachability()
    m = len(h.nodes)
    for x in range(m):
        for y in range(x + 1, m):
            for rel in (r, r.T):
                ub = np.flatnonzero(rel[x] & rel[y])
                if len(ub) == 0:
                    return False, (x, y)
                # a least element of ub is below every member of ub
                if not any(rel[u, ub].all() for u in ub):
                    return False, (x, y)
    return True, None


def hasse_for(kind: str, n: int, method: str = "auto") -> HasseGraph:
    """Cover graph of one of the standard families of order n."""
    from .enumeration import enumerate_ashm, enumerate_corner_sum, enumerate_latin, enumerate_pashm

    if kind == "latin":
        elems = enumerate_latin(n).objects()
    elif kind == "corner-sum":
        elems = enumerate_corner_sum(n).objects()
    elif kind == "ashm":
        elems = [CornerSumHypermatrix(xi(a)) for a in enumerate_ashm(n).elements]
    elif kind == "pashm":
        elems = [CornerSumHypermatrix(xi(a)) for a in enumerate_pashm(n).elements]
    elif kind == "permutation":
        from itertools import permutations

        from .core import permutation_matrix

        elems = [permutation_matrix(p) for p in permutations(range(1, n + 1))]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if kind != "corner-sum" and method == "probe":
        raise ValueError("neighbour probing only applies to the full corner-sum lattice")
    return build_hasse(elems, method=method, kind=kind, n=n)
