"""Core types: graphs with loops, permutations, neighborhood multisets.

Adjacency is stored as one int bitmask per vertex (bit y of adj[x] set iff
xy is an edge). A loop at x sets bit x of adj[x], so x is in its own open
neighborhood exactly when it carries a loop. Everything is immutable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import CapacityError, UsageError

MAX_N = 64

# budget guards for exhaustive enumeration (overridable with force=True)
ENUM_MAX_LOOPS = 6
ENUM_MAX_SIMPLE = 7


def popcount(x: int) -> int:
    return x.bit_count()


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def permute_mask(mask: int, image: tuple[int, ...]) -> int:
    """Relocate bit v to bit image[v] for every set bit."""
    out = 0
    while mask:
        b = mask & -mask
        out |= 1 << image[b.bit_length() - 1]
        mask ^= b
    return out


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(self.image)
        object.__setattr__(self, "image", img)
        n = len(img)
        if sorted(img) != list(range(n)):
            raise UsageError(f"not a bijection on 0..{n - 1}: {img}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        if len(other.image) != len(self.image):
            raise UsageError("composing permutations of different lengths")
        return Permutation(tuple(self.image[w] for w in other.image))

    def power(self, k: int) -> "Permutation":
        n = len(self.image)
        if k < 0:
            return self.inverse().power(-k)
        out = tuple(range(n))
        step = self.image
        while k:
            if k & 1:
                out = tuple(step[v] for v in out)
            step = tuple(step[v] for v in step)
            k >>= 1
        return Permutation(out)

    def order(self) -> int:
        k = 1
        p = self.image
        cur = p
        ident = tuple(range(len(p)))
        while cur != ident:
            cur = tuple(p[v] for v in cur)
            k += 1
        return k

    def is_involution(self) -> bool:
        img = self.image
        return any(img[v] != v for v in range(len(img))) and all(
            img[img[v]] == v for v in range(len(img))
        )

    def is_identity(self) -> bool:
        return all(w == v for v, w in enumerate(self.image))


def _check_rows(n: int, adj: tuple[int, ...]) -> None:
    if not 0 <= n <= MAX_N:
        raise CapacityError(f"vertex count {n} outside 0..{MAX_N}")
    if len(adj) != n:
        raise UsageError(f"expected {n} adjacency rows, got {len(adj)}")
    full = (1 << n) - 1
    for x, row in enumerate(adj):
        if row & ~full:
            raise UsageError(f"row {x} references vertices outside 0..{n - 1}")
    for x in range(n):
        for y in bits_of(adj[x]):
            if y > x and not adj[y] >> x & 1:
                raise UsageError(f"asymmetric adjacency between {x} and {y}")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.adj)
        object.__setattr__(self, "adj", rows)
        _check_rows(self.n, rows)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adj[u] >> v & 1)

    def has_loop(self, v: int) -> bool:
        self._check_vertex(v)
        return bool(self.adj[v] >> v & 1)

    def degree(self, v: int) -> int:
        """Size of the open neighborhood; a loop contributes 1."""
        self._check_vertex(v)
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as (min,max) pairs, sorted; loops as (v,v)."""
        out = []
        for x in range(self.n):
            row = self.adj[x] >> x
            for y in bits_of(row):
                out.append((x, x + y))
        out.sort()
        return out

    def edge_count(self) -> int:
        return sum(popcount(self.adj[x] >> x) for x in range(self.n))

    def relabel(self, p: Permutation) -> "Graph":
        if len(p) != self.n:
            raise UsageError("permutation length does not match vertex count")
        img = p.image
        rows = [0] * self.n
        for x in range(self.n):
            rows[img[x]] = permute_mask(self.adj[x], img)
        return Graph(self.n, tuple(rows))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise UsageError(f"vertex {v} out of range for n={self.n}")


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.arcs)
        object.__setattr__(self, "arcs", rows)
        if not 0 <= self.n <= MAX_N:
            raise CapacityError(f"vertex count {self.n} outside 0..{MAX_N}")
        if len(rows) != self.n:
            raise UsageError(f"expected {self.n} arc rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for x, row in enumerate(rows):
            if row & ~full:
                raise UsageError(f"arc row {x} out of range")

    def is_symmetric(self) -> bool:
        for x in range(self.n):
            for y in bits_of(self.arcs[x]):
                if not self.arcs[y] >> x & 1:
                    return False
        return True

    def to_graph(self) -> Graph:
        if not self.is_symmetric():
            raise UsageError("arc set is not symmetric; not a graph")
        return Graph(self.n, self.arcs)


@dataclass(frozen=True)
class NeighborhoodMultiset:
    """Canonical form: each entry sorted ascending, entries sorted lexicographically."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(e)) for e in self.entries))
        object.__setattr__(self, "entries", canon)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class RPartition:
    """Vertices grouped by equal open neighborhood; blocks keyed by least member."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(b)) for b in self.classes))
        object.__setattr__(self, "classes", canon)

    def same_block(self, x: int, y: int) -> bool:
        for block in self.classes:
            if x in block:
                return y in block
        raise UsageError(f"vertex {x} not covered by partition")

    def block_of(self, x: int) -> tuple[int, ...]:
        for block in self.classes:
            if x in block:
                return block
        raise UsageError(f"vertex {x} not covered by partition")


def component_masks(n: int, rows) -> list[int]:
    """Vertex masks of connected components, ordered by least vertex.

    Loops never join anything: a looped isolated vertex is its own component.
    """
    seen = 0
    comps = []
    for v in range(n):
        if seen >> v & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= rows[b.bit_length() - 1]
                m ^= b
            frontier = nxt & ~comp
        comps.append(comp)
        seen |= comp
    return comps


def neighborhood(g: Graph, x: int) -> frozenset[int]:
    """Open neighborhood N(x); contains x iff x has a loop."""
    g._check_vertex(x)
    return frozenset(bits_of(g.adj[x]))


def neighborhood_multiset(g: Graph) -> NeighborhoodMultiset:
    return NeighborhoodMultiset(tuple(tuple(bits_of(row)) for row in g.adj))


def multiset_key(rows: tuple[int, ...]) -> tuple[int, ...]:
    """Order-free fingerprint of {N(x)}; equal keys iff equal multisets."""
    return tuple(sorted(rows))


def r_partition(g: Graph) -> RPartition:
    by_row: dict[int, list[int]] = {}
    for v in range(g.n):
        by_row.setdefault(g.adj[v], []).append(v)
    return RPartition(tuple(tuple(vs) for vs in by_row.values()))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_N:
        raise CapacityError(f"disjoint union has {n} > {MAX_N} vertices")
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(n, tuple(rows))


def upper_cells(n: int, loops_allowed: bool) -> list[tuple[int, int]]:
    """Row-major upper-triangle cells; diagonal included when loops are allowed."""
    lo = 0 if loops_allowed else 1
    return [(i, j) for i in range(n) for j in range(i + lo, n)]


def iter_adj_rows(
    n: int, loops_allowed: bool, *, start: int = 0, stop: int | None = None
) -> Iterator[list[int]]:
    """Every labeled graph on n vertices, in lexicographic order over the
    upper-triangle bit vector (cell (0,0) or (0,1) is the most significant bit).

    Yields one shared, mutable row list; callers must copy what they keep.
    start/stop select a slice of enumeration indices, for sharded scans.
    """
    cells = upper_cells(n, loops_allowed)
    m = len(cells)
    if stop is None:
        stop = 1 << m
    if not 0 <= start <= stop <= 1 << m:
        raise UsageError(f"bad enumeration slice [{start}, {stop}) for m={m}")
    if start == stop:
        return
    # bit b of the counter corresponds to cell m-1-b
    cell_i = [0] * m
    cell_j = [0] * m
    for b in range(m):
        i, j = cells[m - 1 - b]
        cell_i[b] = i
        cell_j[b] = j
    rows = [0] * n
    for bpos in range(m):
        if start >> bpos & 1:
            i = cell_i[bpos]
            j = cell_j[bpos]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    yield rows
    for k in range(start + 1, stop):
        changed = k ^ (k - 1)
        while changed:
            b = changed & -changed
            bpos = b.bit_length() - 1
            i = cell_i[bpos]
            j = cell_j[bpos]
            rows[i] ^= 1 << j
            if i != j:
                rows[j] ^= 1 << i
            changed ^= b
        yield rows


def enumerate_count(n: int, loops_allowed: bool) -> int:
    return 1 << len(upper_cells(n, loops_allowed))


def enumerate_labeled_graphs(
    n: int, loops_allowed: bool, *, force: bool = False
) -> Iterator[Graph]:
    """Stream of all labeled graphs on 0..n-1, lexicographic (see iter_adj_rows)."""
    limit = ENUM_MAX_LOOPS if loops_allowed else ENUM_MAX_SIMPLE
    if n > limit and not force:
        raise CapacityError(
            f"enumeration of n={n} ({'loops' if loops_allowed else 'loopless'}) "
            f"exceeds the guard n<={limit}; pass force=True to override"
        )
    for rows in iter_adj_rows(n, loops_allowed):
        yield Graph(n, tuple(rows))


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(n))
