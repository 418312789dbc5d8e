"""Enhanced power graph (cyclic graph) of a finite group.

Vertices are the nontrivial elements; ``x ~ y`` when ``<x, y>`` is cyclic.
The closed neighborhood ``I(x)`` counts every ``y`` in the whole group with
``<x, y>`` cyclic, so it contains the identity and ``x`` itself.

Whole-graph queries use the fact that ``<x, y>`` is cyclic exactly when both
lie in one cyclic subgroup: each closed neighborhood is the union of the
cyclic subgroups through ``x``, stored as an integer bitmask.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

from .groups import GroupError, GroupTable, closure, commute

_MASKS: "weakref.WeakKeyDictionary[GroupTable, list[int]]" = weakref.WeakKeyDictionary()


def _check_vertex(g: GroupTable, x: int) -> None:
    if not 0 <= x < g.order:
        raise GroupError(f"element {x} out of range for order {g.order}")
    if x == 0:
        raise GroupError("the identity is not a vertex of the enhanced power graph")


def adjacent(g: GroupTable, x: int, y: int) -> bool:
    """Whether ``<x, y>`` is cyclic, for distinct nontrivial ``x, y``."""
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise GroupError("adjacency is only defined for distinct vertices")
    if not commute(g, x, y):
        return False
    sub = closure(g, (x, y))
    return any(g.orders[s] == len(sub) for s in sub)


def closed_neighborhood_masks(g: GroupTable) -> list[int]:
    """Bitmask of ``I(x)`` for every element; entry 0 is the whole group."""
    masks = _MASKS.get(g)
    if masks is not None:
        return masks
    n = g.order
    masks = [0] * n
    masks[0] = (1 << n) - 1
    for sub in g.cyclic_subgroups:
        if len(sub) == 1:
            continue
        m = 0
        for e in sub:
            m |= 1 << e
        for e in sub[1:]:
            masks[e] |= m
    _MASKS[g] = masks
    return masks


def neighborhood_size(g: GroupTable, x: int) -> int:
    _check_vertex(g, x)
    return closed_neighborhood_masks(g)[x].bit_count()


def neighborhood_sizes(g: GroupTable) -> dict[int, int]:
    """``|I(x)|`` for every nontrivial ``x``."""
    masks = closed_neighborhood_masks(g)
    return {x: masks[x].bit_count() for x in range(1, g.order)}


def n_G(g: GroupTable) -> int:
    """Largest closed neighborhood over the nontrivial elements."""
    if g.order < 2:
        raise GroupError("n_G is undefined for the trivial group")
    return max(neighborhood_sizes(g).values())


def universal_vertices(g: GroupTable) -> frozenset[int]:
    if g.order < 2:
        raise GroupError("the trivial group has no vertices")
    full = g.order
    return frozenset(x for x, s in neighborhood_sizes(g).items() if s == full)


class UnionFind:
    """Union-find with path compression; the root is always the smallest index."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        p = self.parent
        root = a
        while p[root] != root:
            root = p[root]
        while p[a] != root:
            p[a], a = root, p[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb


@dataclass(frozen=True, eq=False)
class EpgGraph:
    """Materialized enhanced power graph.

    ``adjacency[x]`` is the open neighborhood of ``x`` as a bitmask (bit 0
    and bit ``x`` clear; entry 0 is unused).  ``components`` are sorted
    tuples ordered by their smallest vertex, which is also their label.
    """

    group: GroupTable
    adjacency: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]

    @property
    def vertices(self) -> range:
        return range(1, self.group.order)

    def is_adjacent(self, x: int, y: int) -> bool:
        return bool(self.adjacency[x] >> y & 1)

    def neighbors(self, x: int) -> list[int]:
        m = self.adjacency[x]
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def edges(self):
        """Edges ``(x, y)`` with ``x < y`` in lexicographic order."""
        for x in self.vertices:
            for y in self.neighbors(x):
                if y > x:
                    yield x, y

    def edge_count(self) -> int:
        return sum(self.degree) // 2

    def component_of(self, x: int) -> tuple[int, ...]:
        for c in self.components:
            if x in c:
                return c
        raise KeyError(x)


def build_epg(g: GroupTable) -> EpgGraph:
    if g.order < 2:
        raise GroupError("the trivial group has an empty enhanced power graph")
    n = g.order
    masks = closed_neighborhood_masks(g)
    adj = [0] * n
    for x in range(1, n):
        adj[x] = masks[x] & ~1 & ~(1 << x)
    uf = UnionFind(n)
    for sub in g.cyclic_subgroups:
        for e in sub[2:]:
            uf.union(sub[1], e)
    groups: dict[int, list[int]] = {}
    for x in range(1, n):
        groups.setdefault(uf.find(x), []).append(x)
    comps = tuple(sorted(tuple(v) for v in groups.values()))
    deg = tuple(0 if x == 0 else adj[x].bit_count() for x in range(n))
    return EpgGraph(g, tuple(adj), comps, deg)


def to_dot(e: EpgGraph, name: str = "epg") -> str:
    g = e.group
    lines = [f"graph {name} {{", f"  // {g.label}, order {g.order}"]
    for x in e.vertices:
        lines.append(f'  {x} [label="g{x}/o{g.orders[x]}"];')
    for x, y in e.edges():
        lines.append(f"  {x} -- {y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
