"""Simple undirected graphs over dense integer ids, plus the standard
decompositions and constructors the convexity code builds on.

Vertex sets are exchanged as ``frozenset[int]`` at the API surface; the hot
paths work on Python ints used as bitmasks (bit ``v`` set iff ``v`` is in the
set).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

VertexSet = frozenset


class GraphError(ValueError):
    """Invalid graph input (bad ids, loops, malformed parameters)."""


class DisconnectedGraphError(GraphError):
    """Raised by operations that are only defined on connected graphs."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency must have exactly n entries")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbor id {u} of {v} out of range")
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an id outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhood of every vertex as a bitmask."""
        return tuple(mask_of(nbrs) for nbrs in self.adjacency)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(min, max)`` pairs in lexicographic order."""
        return tuple(
            (u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def vertices(self) -> range:
        return range(self.n)

    def induced_edges(self, s: Iterable[int]) -> list[tuple[int, int]]:
        m = mask_of(s)
        return [(u, v) for u, v in self.edges if m >> u & 1 and m >> v & 1]

    def subgraph(self, s: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` and the old id of each new id."""
        old = sorted(set(s))
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u, v in self.induced_edges(old)]
        return Graph.from_edges(len(old), edges), old

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for graph with {g.n} vertices")


def _check_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        _check_vertex(g, v)
    return s


def neighbors(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g, v)
    return g.adjacency[v]


def component_masks(g: Graph, s: int) -> list[int]:
    """Connected components of ``G[s]`` as bitmasks, ordered by least vertex."""
    adj = g.masks
    comps = []
    rest = s
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            frontier = grow & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def connected_components(g: Graph, s: Iterable[int]) -> list[frozenset[int]]:
    """Partition ``s`` into the vertex sets of the components of ``G[s]``."""
    s = _check_set(g, s)
    return [set_of(c) for c in component_masks(g, mask_of(s))]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(component_masks(g, g.full_mask)) == 1


def require_connected(g: Graph) -> None:
    if g.n == 0:
        raise DisconnectedGraphError("graph is empty")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def bfs_distances(g: Graph, source: int, within: int | None = None) -> list[int]:
    """Hop distances from ``source``; -1 for unreachable. ``within`` restricts
    the search to the vertices of that bitmask."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0 and (within is None or within >> w & 1):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g: Graph) -> int:
    require_connected(g)
    return max(max(bfs_distances(g, v)) for v in g.vertices())


# -- blocks -----------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks and cut vertices of a connected graph.

    ``tree`` holds the block-cut tree as ``(block_index, cut_vertex)`` edges.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    tree: tuple[tuple[int, int], ...]

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def cut_vertices_of(self, i: int) -> frozenset[int]:
        return self.blocks[i] & self.cut_vertices

    def end_blocks(self) -> list[int]:
        """Blocks containing exactly one cut vertex."""
        return [i for i in range(len(self.blocks)) if len(self.cut_vertices_of(i)) == 1]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Blocks via the iterative lowpoint DFS with an edge stack."""
    require_connected(g)
    if g.n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset(), ())
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    counter = 0
    root = 0
    disc[root] = low[root] = counter
    root_children = 0
    stack = [(root, -1, iter(sorted(g.adjacency[root])))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] < 0:
                counter += 1
                disc[w] = low[w] = counter
                edge_stack.append((u, w))
                stack.append((w, u, iter(sorted(g.adjacency[w]))))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent < 0:
            continue
        low[parent] = min(low[parent], low[u])
        if low[u] >= disc[parent]:
            if parent == root:
                root_children += 1
            else:
                cuts.add(parent)
            comp: set[int] = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (parent, u):
                    break
            blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)
    blocks.sort(key=sorted)
    tree = tuple(
        (i, c) for i, b in enumerate(blocks) for c in sorted(b & frozenset(cuts))
    )
    return BlockDecomposition(tuple(blocks), frozenset(cuts), tree)


# -- chordality -------------------------------------------------------------


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS visit order; ties go to the lowest id."""
    labels: list[list[int]] = [[] for _ in range(g.n)]
    visited = [False] * g.n
    order = []
    for step in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or labels[v] > labels[best]):
                best = v
        visited[best] = True
        order.append(best)
        for w in g.adjacency[best]:
            if not visited[w]:
                labels[w].append(g.n - step)
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n:
        return False
    for v in order:
        later = [w for w in g.adjacency[v] if pos[w] > pos[v]]
        if not later:
            continue
        first = min(later, key=pos.__getitem__)
        if any(w != first and w not in g.adjacency[first] for w in later):
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; returns a perfect elimination ordering when chordal."""
    peo = lex_bfs(g)[::-1]
    if is_perfect_elimination_ordering(g, peo):
        return True, peo
    return False, None


# -- products ---------------------------------------------------------------


class ProductKind(enum.Enum):
    CARTESIAN = "cartesian"
    STRONG = "strong"
    LEXICOGRAPHIC = "lexicographic"


@dataclass(frozen=True)
class ProductGraph:
    """A product graph with its coordinate map; vertex ``(a, b)`` has flat id
    ``a * h_order + b``."""

    graph: Graph
    kind: ProductKind
    g_order: int
    h_order: int

    def flat(self, a: int, b: int) -> int:
        return a * self.h_order + b

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.h_order)


def product_adjacent(
    g: Graph, h: Graph, kind: ProductKind, x: tuple[int, int], y: tuple[int, int]
) -> bool:
    (g1, h1), (g2, h2) = x, y
    gadj = g.has_edge(g1, g2)
    hadj = h.has_edge(h1, h2)
    if kind is ProductKind.CARTESIAN:
        return (gadj and h1 == h2) or (g1 == g2 and hadj)
    if kind is ProductKind.STRONG:
        return (gadj and h1 == h2) or (g1 == g2 and hadj) or (gadj and hadj)
    return gadj or (g1 == g2 and hadj)


def product(g: Graph, h: Graph, kind: ProductKind | str) -> ProductGraph:
    kind = ProductKind(kind)
    if g.n < 1 or h.n < 1:
        raise GraphError("product factors need at least one vertex")
    k = h.n
    edges = []
    for g1 in range(g.n):
        for h1 in range(h.n):
            # same G-coordinate, H-edge
            for h2 in h.adjacency[h1]:
                if h1 < h2:
                    edges.append((g1 * k + h1, g1 * k + h2))
            for g2 in g.adjacency[g1]:
                if g1 > g2:
                    continue
                if kind is ProductKind.LEXICOGRAPHIC:
                    edges.extend((g1 * k + h1, g2 * k + h2) for h2 in range(h.n))
                    continue
                edges.append((g1 * k + h1, g2 * k + h1))
                if kind is ProductKind.STRONG:
                    edges.extend((g1 * k + h1, g2 * k + h2) for h2 in h.adjacency[h1])
    return ProductGraph(Graph.from_edges(g.n * k, edges), kind, g.n, k)


# -- generators -------------------------------------------------------------


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_multipartite(parts: Sequence[int]) -> Graph:
    if len(parts) < 2 or any(p < 1 for p in parts):
        raise GraphError("complete multipartite graph needs >= 2 nonempty parts")
    owner = [i for i, p in enumerate(parts) for _ in range(p)]
    n = len(owner)
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if owner[u] != owner[v]]
    )


def star(leaves: int) -> Graph:
    return complete_multipartite([1, leaves])


def pendant_cycle(n: int) -> Graph:
    """Cycle on ``0..n-2`` with a pendant vertex ``n-1`` attached to 0."""
    if n < 4:
        raise GraphError("pendant cycle needs n >= 4")
    c = cycle(n - 1)
    return Graph.from_edges(n, list(c.edges) + [(0, n - 1)])


def unicyclic(m: int, parents: Sequence[int]) -> Graph:
    """Cycle ``0..m-1``; extra vertex ``m+i`` hangs off ``parents[i]``."""
    edges = list(cycle(m).edges)
    for i, p in enumerate(parents):
        v = m + i
        if not 0 <= p < v:
            raise GraphError(f"tree vertex {v} must attach to an existing vertex, got {p}")
        edges.append((p, v))
    return Graph.from_edges(m + len(parents), edges)


def _is_block_graph(b: Graph) -> bool:
    if b.n == 2:
        return b.num_edges == 1
    if b.n < 3 or not is_connected(b):
        return False
    dec = block_decomposition(b)
    return len(dec.blocks) == 1


def chordal_chain(
    blocks: Sequence[Graph], glue: Sequence[tuple[int, int]] | None = None
) -> Graph:
    """Glue ``blocks`` into a path of blocks.

    ``glue[i] = (a, b)`` identifies vertex ``a`` of block ``i`` with vertex
    ``b`` of block ``i+1``. The default glues the last vertex of each block to
    vertex 0 of the next. A block's entry and exit vertices must differ.
    """
    if not blocks:
        raise GraphError("chain needs at least one block")
    for b in blocks:
        if not _is_block_graph(b):
            raise GraphError("every chain block must be K2 or 2-connected")
    if glue is None:
        glue = [(blocks[i].n - 1, 0) for i in range(len(blocks) - 1)]
    if len(glue) != len(blocks) - 1:
        raise GraphError("need one glue pair per consecutive block pair")
    edges: list[tuple[int, int]] = []
    offset = 0
    entry_id = None
    for i, b in enumerate(blocks):
        entry = glue[i - 1][1] if i > 0 else None
        exit_ = glue[i][0] if i < len(glue) else None
        for v in (entry, exit_):
            if v is not None and not 0 <= v < b.n:
                raise GraphError(f"glue vertex {v} not in block {i}")
        if entry is not None and entry == exit_:
            raise GraphError(f"block {i} uses vertex {entry} as both glue points")
        ids = {}
        nxt = offset
        for v in range(b.n):
            if v == entry:
                ids[v] = entry_id
            else:
                ids[v] = nxt
                nxt += 1
        edges.extend((ids[u], ids[v]) for u, v in b.edges)
        offset = nxt
        if exit_ is not None:
            entry_id = ids[exit_]
    return Graph.from_edges(offset, edges)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    k = g.n
    edges = list(g.edges) + [(k + u, k + v) for u, v in h.edges]
    edges += [(u, k + v) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(g.n + h.n, edges)


def _ints(params: str) -> list[int]:
    try:
        return [int(x) for x in params.split(",") if x.strip()]
    except ValueError as exc:
        raise GraphError(f"bad family parameters {params!r}") from exc


FAMILIES = {
    "path": lambda p: path(*_ints(p)),
    "cycle": lambda p: cycle(*_ints(p)),
    "complete": lambda p: complete(*_ints(p)),
    "multipartite": lambda p: complete_multipartite(_ints(p)),
    "star": lambda p: star(*_ints(p)),
    "pendant-cycle": lambda p: pendant_cycle(*_ints(p)),
    "unicyclic": lambda p: unicyclic(_ints(p)[0], _ints(p)[1:]),
}


def generate(family: str) -> Graph:
    """Build a graph from a ``name:params`` string, e.g. ``cycle:7``,
    ``multipartite:2,3``, ``unicyclic:3,0,0`` (cycle length then parents) or
    ``chain:K3,K2,K3`` (blocks named ``K<n>``/``C<n>``, default glue)."""
    name, _, params = family.partition(":")
    if name == "chain":
        return chordal_chain([_named_block(t) for t in params.split(",") if t])
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}")
    try:
        return FAMILIES[name](params)
    except TypeError as exc:
        raise GraphError(f"wrong number of parameters for {name!r}") from exc


def _named_block(token: str) -> Graph:
    token = token.strip()
    kind, size = token[:1].upper(), token[1:]
    if not size.isdigit():
        raise GraphError(f"bad block name {token!r}")
    if kind == "K":
        return complete(int(size))
    if kind == "C":
        return cycle(int(size))
    raise GraphError(f"bad block name {token!r}")


# -- edge-list format -------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("edge list is empty")
    try:
        header = [int(x) for x in rows[0]]
        body = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from exc
    if len(header) != 2:
        raise GraphError("edge list header must be 'n m'")
    n, m = header
    if any(len(r) != 2 for r in body):
        raise GraphError("every edge line must hold exactly two ids")
    if len(body) != m:
        raise GraphError(f"header promises {m} edges, found {len(body)}")
    return Graph.from_edges(n, body)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
