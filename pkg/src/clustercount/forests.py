"""Labeled forests, Dynkin diagram constructors, colorings and domino tilings.

Vertex labels are positive integers; the Dynkin constructors label 1..n.
Frozen labeling conventions:

  A_n   path 1 - 2 - ... - n
  D_n   leaves 1 and 2 both adjacent to 3, then path 3 - 4 - ... - n
  E_n   central vertex 1 with arms of lengths (1, 2, n-4); arm vertices are
        numbered breadth-first from the center, short arm first, so
        E_6: edges 1-2, 1-3, 1-4, 3-5, 4-6
        E_7: same plus 6-7        (7 is the last vertex of the long arm)
        E_8: same plus 6-7, 7-8

The distinguished coefficient slot of each type (where a residual parameter
survives normalization) is exposed by `normal_form_slots`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BadRank, EmptyCoveredSet

WHITE = "W"
BLACK = "B"


@dataclass(frozen=True)
class Forest:
    """An acyclic graph on explicit integer vertices."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @staticmethod
    def make(vertices, edges) -> "Forest":
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop edge at vertex {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge {u}-{v} uses an undeclared vertex")
            es.add((min(u, v), max(u, v)))
        f = Forest(vs, tuple(sorted(es)))
        f._check_acyclic()
        return f

    def _check_acyclic(self):
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge {u}-{v} closes a cycle")
            parent[ru] = rv

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self.degree(v) == 1)

    def components(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adjacency[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def induced(self, keep) -> "Forest":
        keep = set(keep)
        return Forest(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def remove(self, drop) -> "Forest":
        drop = set(drop)
        return self.induced(v for v in self.vertices if v not in drop)

    def relabel(self, mapping: dict[int, int]) -> "Forest":
        return Forest.make(
            [mapping[v] for v in self.vertices],
            [(mapping[u], mapping[v]) for u, v in self.edges],
        )


@dataclass(frozen=True)
class DominoTiling:
    """A partial matching: a set of edges meeting each vertex at most once."""

    dominoes: tuple[tuple[int, int], ...]

    @staticmethod
    def make(dominoes) -> "DominoTiling":
        ds = tuple(sorted((min(u, v), max(u, v)) for u, v in dominoes))
        seen = set()
        for u, v in ds:
            if u in seen or v in seen:
                raise ValueError(f"vertex reused by domino {u}-{v}")
            seen.update((u, v))
        return DominoTiling(ds)

    @cached_property
    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.dominoes for v in e)

    def partner(self, v: int) -> int:
        for u, w in self.dominoes:
            if v == u:
                return w
            if v == w:
                return u
        raise KeyError(f"vertex {v} is not covered")

    def is_full(self, forest: Forest) -> bool:
        return self.covered == set(forest.vertices)


# ---------------------------------------------------------------------------
# Dynkin constructors
# ---------------------------------------------------------------------------

def dynkin(dynkin_type: str, rank: int) -> Forest:
    """The tree underlying the Dynkin diagram A_n / D_n / E_n."""
    t = dynkin_type.upper()
    if t == "A":
        if rank < 0:
            raise BadRank(f"A_n needs rank >= 0, got {rank}")
        return Forest.make(range(1, rank + 1),
                           [(i, i + 1) for i in range(1, rank)])
    if t == "D":
        if rank < 3:
            raise BadRank(f"D_n needs rank >= 3, got {rank}")
        edges = [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank)]
        return Forest.make(range(1, rank + 1), edges)
    if t == "E":
        if rank not in (6, 7, 8):
            raise BadRank(f"E_n needs rank in {{6,7,8}}, got {rank}")
        edges = [(1, 2), (1, 3), (1, 4), (3, 5), (4, 6)]
        if rank >= 7:
            edges.append((6, 7))
        if rank == 8:
            edges.append((7, 8))
        return Forest.make(range(1, rank + 1), edges)
    raise BadRank(f"unknown Dynkin type {dynkin_type!r}")


def e_long_branch_end(rank: int) -> int:
    """The last vertex on the long arm of E_rank (the E_7 parameter slot)."""
    if rank not in (6, 7, 8):
        raise BadRank(f"E_n needs rank in {{6,7,8}}, got {rank}")
    return rank


def normal_form_slots(dynkin_type: str, rank: int) -> tuple[int, ...]:
    """Vertices that can carry a residual coefficient after normalization.

    Empty for types whose varieties all normalize to the all-ones family.
    """
    t = dynkin_type.upper()
    if t == "A":
        if rank < 0:
            raise BadRank(f"A_n needs rank >= 0, got {rank}")
        return (1,) if rank % 2 == 1 else ()
    if t == "D":
        if rank < 3:
            raise BadRank(f"D_n needs rank >= 3, got {rank}")
        return (1, 2) if rank % 2 == 0 else (1,)
    if t == "E":
        if rank not in (6, 7, 8):
            raise BadRank(f"E_n needs rank in {{6,7,8}}, got {rank}")
        return (e_long_branch_end(rank),) if rank == 7 else ()
    raise BadRank(f"unknown Dynkin type {dynkin_type!r}")


def dynkin_tiling(dynkin_type: str, rank: int) -> DominoTiling:
    """The canonical partial tiling avoiding exactly `normal_form_slots`."""
    t = dynkin_type.upper()
    f = dynkin(t, rank)  # validates rank
    if t == "A":
        start = 2 if rank % 2 == 1 else 1
        return DominoTiling.make((i, i + 1) for i in range(start, rank, 2))
    if t == "D":
        start = 2 if rank % 2 == 1 else 3
        return DominoTiling.make((i, i + 1) for i in range(start, rank, 2))
    dominoes = [(1, 2), (3, 5), (4, 6)]
    if rank == 8:
        dominoes.append((7, 8))
    return DominoTiling.make(dominoes)


# ---------------------------------------------------------------------------
# colorings and tilings for arbitrary forests
# ---------------------------------------------------------------------------

def bipartite_color(forest: Forest, anchor: int | None = None) -> dict[int, str]:
    """Proper 2-coloring; the anchor (default: smallest index per component)
    is white."""
    color: dict[int, str] = {}
    for comp in forest.components():
        root = anchor if anchor in comp else min(comp)
        color[root] = WHITE
        stack = [root]
        while stack:
            v = stack.pop()
            nxt = BLACK if color[v] == WHITE else WHITE
            for u in forest.adjacency[v]:
                if u not in color:
                    color[u] = nxt
                    stack.append(u)
    return color


def leafy_tiling(forest: Forest) -> DominoTiling:
    """A deterministic partial tiling whose uncovered vertices are all leaves.

    Each component is rooted at its largest vertex and scanned top-down in
    BFS order; a still-uncovered vertex grabs its largest uncovered child.
    Any vertex left uncovered therefore has no children at all, i.e. is a
    leaf (or an isolated vertex).
    """
    dominoes = []
    covered = set()
    for comp in forest.components():
        root = max(comp)
        order, parent = [root], {root: None}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for u in sorted(forest.adjacency[v], reverse=True):
                if u not in parent:
                    parent[u] = v
                    order.append(u)
                    queue.append(u)
        children = {v: [] for v in comp}
        for v in order[1:]:
            children[parent[v]].append(v)
        for v in order:
            if v in covered:
                continue
            free = [c for c in children[v] if c not in covered]
            if free:
                c = max(free)
                dominoes.append((v, c))
                covered.update((v, c))
    return DominoTiling.make(dominoes)


def _flip_schedule(forest: Forest, tiling: DominoTiling,
                   coloring: dict[int, str], color: str) -> list[int]:
    """Order the covered vertices of one color so that flipping each over its
    domino partner never revisits an already-normalized vertex.

    Flipping s over its partner rescales the coefficients at the partner's
    other neighbors, so s2 must be flipped before s whenever partner(s2) is
    adjacent to s.  These constraints are acyclic on a forest; ties are
    broken by smallest vertex index.
    """
    todo = sorted(v for v in tiling.covered if coloring[v] == color)
    before: dict[int, set[int]] = {v: set() for v in todo}
    indeg = {v: 0 for v in todo}
    for s2 in todo:
        for s in forest.adjacency[tiling.partner(s2)]:
            if s != s2 and s in indeg:
                before[s2].add(s)
                indeg[s] += 1
    ready = sorted(v for v in todo if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        changed = False
        for s in before[v]:
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)
                changed = True
        if changed:
            ready.sort()
    if len(order) != len(todo):
        raise AssertionError("cyclic flip constraints on a forest")
    return order


def white_leaf(forest: Forest, tiling: DominoTiling,
               coloring: dict[int, str]) -> int:
    """First white vertex in the flip schedule of the covered subgraph."""
    if not tiling.covered:
        raise EmptyCoveredSet("tiling covers no vertices")
    return _flip_schedule(forest, tiling, coloring, WHITE)[0]


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def canonical_form(forest: Forest, labels: dict[int, object] | None = None) -> str:
    """Isomorphism-invariant encoding of a labeled forest.

    Two forests get the same string exactly when some graph isomorphism
    between them matches the per-vertex label data.  Each component is
    encoded as the minimum over all roots of its rooted canonical string;
    component strings are sorted.  Intended for small forests (the
    memoization keys of the counting recursion), so the O(n^2) rooting
    sweep is fine.
    """
    labels = labels or {}

    def enc(v: int, parent: int | None) -> str:
        subs = sorted(enc(u, v) for u in forest.adjacency[v] if u != parent)
        return f"({labels.get(v, '')}|{''.join(subs)})"

    comps = []
    for comp in forest.components():
        comps.append(min(enc(root, None) for root in comp))
    return ";".join(sorted(comps))


# ---------------------------------------------------------------------------
# file format: one edge "u v" per line, isolated vertices as "v"
# ---------------------------------------------------------------------------

def parse_tree_text(text: str) -> Forest:
    vertices, edges = set(), []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.add(int(parts[0]))
        elif len(parts) == 2:
            u, v = int(parts[0]), int(parts[1])
            vertices.update((u, v))
            edges.append((u, v))
        else:
            raise ValueError(f"line {lineno}: expected 'u v' or 'v', got {raw!r}")
    return Forest.make(vertices, edges)


def read_tree_file(path) -> Forest:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree_text(fh.read())
