"""Closed-form exchange numbers for recognised graph classes and products.

``exchange_formula`` tries the rules in a fixed order and returns the first
one whose hypotheses hold:

1. cycles, trees, complete graphs and complete multipartite graphs all have
   value 2;
2. a unicyclic graph whose cycle has ``m < n`` vertices has value ``m``;
3. a chordal graph whose blocks form one chain and none of them is ``K2``
   has value ``l + 1`` or ``l + 2`` (``l`` blocks) depending on the
   edge-vertex and vertex-separation properties of its blocks;
4. a chordal single chain with at least one ``K2`` block has value
   ``l + 2`` where ``l`` is the longest run of consecutive non-``K2``
   blocks, and 2 for trees.

Anything else is reported as not applicable rather than guessed. Two
universal vertices do not pin the value down: ``K2`` joined to ``K2 + K1``
has the E-independent set formed by the three vertices of ``K2 + K1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Graph,
    GraphError,
    ProductKind,
    bfs_distances,
    block_decomposition,
    diameter,
    is_chordal,
    is_connected,
    mask_of,
    require_connected,
)
from .independence import (
    ExchangeCertificate,
    ExchangeResult,
    e_certificate_mask,
    exchange_number_exact,
)


@dataclass(frozen=True)
class NotApplicable:
    """No closed form covers the input; ``reason`` says which hypothesis failed."""

    reason: str

    def to_dict(self) -> dict:
        return {"status": "not-applicable", "reason": self.reason}


# -- block properties ---------------------------------------------------------


def _require_block(g: Graph, block) -> frozenset[int]:
    require_connected(g)
    block = frozenset(block)
    if block not in block_decomposition(g).blocks:
        raise GraphError(f"{sorted(block)} is not a block of the graph")
    return block


def edge_vertex_property(g: Graph, block) -> tuple[int, int, int] | None:
    """Witness ``(u, v, x)``: an edge ``uv`` of the block and a block vertex
    ``x`` at distance at least 2 from both ends, distances taken inside the
    block. Witnesses whose ``x`` is not a cut vertex of ``g`` are preferred.
    ``None`` when no such triple exists."""
    block = _require_block(g, block)
    if len(block) < 3:
        raise GraphError("edge-vertex property needs a 2-connected block, got K2")
    cuts = block_decomposition(g).cut_vertices
    inside = mask_of(block)
    dist = {v: bfs_distances(g, v, inside) for v in block}
    found = [
        (u, v, x)
        for u, v in g.induced_edges(block)
        for x in sorted(block)
        if dist[u][x] >= 2 and dist[v][x] >= 2
    ]
    if not found:
        return None
    return min(found, key=lambda t: (t[2] in cuts, t))


def vertex_separation_property(g: Graph, block) -> tuple[int, int, int] | None:
    """Witness ``(x, y, c)``: a cut vertex ``c`` of ``g`` lying in the block
    and block vertices with ``x`` adjacent to ``c`` and ``y`` neither a cut
    vertex nor adjacent to ``c`` or ``x``. Neighbourhoods are those of ``g``."""
    block = _require_block(g, block)
    cuts = block_decomposition(g).cut_vertices
    adj = g.adjacency
    for c in sorted(cuts & block):
        for x in sorted(block & adj[c]):
            for y in sorted(block):
                if y in cuts or y in adj[c] or y in adj[x] or y == x:
                    continue
                return (x, y, c)
    return None


def graph_edge_vertex(g: Graph) -> tuple[int, int, int] | None:
    """The edge-vertex condition applied to the whole connected graph."""
    require_connected(g)
    dist = [bfs_distances(g, v) for v in range(g.n)]
    for u, v in g.edges:
        for x in range(g.n):
            if dist[u][x] >= 2 and dist[v][x] >= 2:
                return (u, v, x)
    return None


# -- chains -------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStructure:
    """Blocks in chain order when the block-cut tree is a path.

    For other graphs ``blocks_in_order`` lists the blocks in decomposition
    order and ``longest_non_k2_run`` is 0.
    """

    blocks_in_order: tuple[frozenset[int], ...]
    is_single_chain: bool
    longest_non_k2_run: int
    has_k2_blocks: bool

    def to_dict(self) -> dict:
        return {
            "blocks": [sorted(b) for b in self.blocks_in_order],
            "single_chain": self.is_single_chain,
            "longest_non_k2_run": self.longest_non_k2_run,
            "has_k2_blocks": self.has_k2_blocks,
        }


def chain_structure(g: Graph) -> ChainStructure:
    dec = block_decomposition(g)
    blocks = dec.blocks
    has_k2 = any(len(b) == 2 for b in blocks)
    per_cut = {c: dec.blocks_of(c) for c in dec.cut_vertices}
    is_path = all(len(bs) == 2 for bs in per_cut.values()) and all(
        len(dec.cut_vertices_of(i)) <= 2 for i in range(len(blocks))
    )
    if not is_path:
        return ChainStructure(blocks, False, 0, has_k2)
    order = [0]
    if len(blocks) > 1:
        order = [dec.end_blocks()[0]]
        used_cut: set[int] = set()
        while len(order) < len(blocks):
            cur = order[-1]
            c = next(c for c in sorted(dec.cut_vertices_of(cur)) if c not in used_cut)
            used_cut.add(c)
            order.append(next(b for b in per_cut[c] if b != cur))
    in_order = tuple(blocks[i] for i in order)
    best = run = 0
    for b in in_order:
        run = run + 1 if len(b) > 2 else 0
        best = max(best, run)
    return ChainStructure(in_order, True, best, has_k2)


@dataclass(frozen=True)
class BlockReport:
    block: frozenset[int]
    is_end_block: bool
    edge_vertex: tuple[int, int, int] | None
    vertex_separation: tuple[int, int, int] | None

    def to_dict(self) -> dict:
        return {
            "block": sorted(self.block),
            "end_block": self.is_end_block,
            "edge_vertex": list(self.edge_vertex) if self.edge_vertex else None,
            "vertex_separation": (
                list(self.vertex_separation) if self.vertex_separation else None
            ),
        }


def block_property_report(g: Graph) -> tuple[BlockReport, ...]:
    """Property witnesses for every block in chain (or decomposition) order.

    A graph that is a single block counts that block as an end block. ``K2``
    blocks carry neither property.
    """
    chain = chain_structure(g)
    dec = block_decomposition(g)
    out = []
    for b in chain.blocks_in_order:
        i = dec.blocks.index(b)
        end = len(dec.blocks) == 1 or len(dec.cut_vertices_of(i)) == 1
        if len(b) == 2:
            out.append(BlockReport(b, end, None, None))
        else:
            out.append(
                BlockReport(b, end, edge_vertex_property(g, b), vertex_separation_property(g, b))
            )
    return tuple(out)


# -- recognisers --------------------------------------------------------------


def is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(len(a) == 2 for a in g.adjacency)


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.num_edges == g.n - 1


def is_complete(g: Graph) -> bool:
    return g.num_edges == g.n * (g.n - 1) // 2


def is_complete_multipartite(g: Graph) -> bool:
    """Non-adjacency is an equivalence relation: the complement is a disjoint
    union of cliques."""
    closed_non = [frozenset(set(range(g.n)) - g.adjacency[v]) for v in range(g.n)]
    return all(closed_non[u] == closed_non[v] for v in range(g.n) for u in closed_non[v])


def universal_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if len(g.adjacency[v]) == g.n - 1]


def unicyclic_cycle(g: Graph) -> frozenset[int] | None:
    """Vertex set of the unique cycle of a connected unicyclic graph."""
    if not is_connected(g) or g.num_edges != g.n:
        return None
    deg = [len(a) for a in g.adjacency]
    alive = set(range(g.n))
    leaves = [v for v in alive if deg[v] == 1]
    while leaves:
        v = leaves.pop()
        alive.discard(v)
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    leaves.append(w)
    return frozenset(alive)


def is_exchange_n_minus_1(g: Graph) -> bool:
    """``K3``, ``P3`` or an ``(n-1)``-cycle with one pendant vertex."""
    require_connected(g)
    if g.n < 3:
        raise GraphError("the characterisation needs at least three vertices")
    if g.n == 3:
        return g.num_edges >= 2
    cyc = unicyclic_cycle(g)
    return cyc is not None and len(cyc) == g.n - 1


# -- dispatcher ---------------------------------------------------------------


def _pair(g: Graph, tag: str) -> ExchangeResult:
    return ExchangeResult(2, e_certificate_mask(g, 0b11), tag)


def _unicyclic_certificate(g: Graph, cyc: frozenset[int]) -> ExchangeCertificate:
    """All cycle vertices but one, plus a tree vertex hanging off the cycle."""
    pendant = min(v for v in range(g.n) if v not in cyc and g.adjacency[v] & cyc)
    root = min(g.adjacency[pendant] & cyc)
    # drop a cycle neighbour of the root; it is regenerated once the rest is in
    dropped = min(g.adjacency[root] & cyc)
    members = (cyc - {dropped}) | {pendant}
    return ExchangeCertificate(frozenset(members), pendant, dropped)


@dataclass(frozen=True)
class FormulaOutcome:
    """A formula value, or ``NotApplicable``, plus the structures consulted."""

    result: ExchangeResult | NotApplicable
    chain: ChainStructure | None = None
    blocks: tuple[BlockReport, ...] = field(default=())

    @property
    def applies(self) -> bool:
        return isinstance(self.result, ExchangeResult)

    def to_dict(self) -> dict:
        out = self.result.to_dict()
        if self.chain is not None:
            out["chain"] = self.chain.to_dict()
            out["blocks"] = [b.to_dict() for b in self.blocks]
        return out


def exchange_formula(g: Graph) -> FormulaOutcome:
    require_connected(g)
    if g.n == 1:
        return FormulaOutcome(
            ExchangeResult(1, ExchangeCertificate(frozenset({0}), None, None), "single-vertex")
        )
    if is_cycle_graph(g):
        return FormulaOutcome(_pair(g, "remark-cycle"))
    if is_tree(g):
        return FormulaOutcome(_pair(g, "remark-tree"))
    if is_complete(g):
        return FormulaOutcome(_pair(g, "remark-complete"))
    if is_complete_multipartite(g):
        return FormulaOutcome(_pair(g, "remark-multipartite"))

    cyc = unicyclic_cycle(g)
    if cyc is not None:
        return FormulaOutcome(
            ExchangeResult(len(cyc), _unicyclic_certificate(g, cyc), "unicyclic")
        )

    chordal, _ = is_chordal(g)
    if not chordal:
        return FormulaOutcome(NotApplicable("not chordal"))
    chain = chain_structure(g)
    if not chain.is_single_chain:
        return FormulaOutcome(NotApplicable("blocks do not form a single chain"), chain)
    reports = block_property_report(g)
    if chain.has_k2_blocks:
        l = chain.longest_non_k2_run
        return FormulaOutcome(ExchangeResult(l + 2, None, "k2-chain"), chain, reports)

    l = len(chain.blocks_in_order)
    cuts = block_decomposition(g).cut_vertices
    separated = any(r.vertex_separation for r in reports)
    # an end block only helps when the far vertex of its witness is not the
    # cut vertex joining it to the rest of the chain
    end_edge_vertex = any(
        r.edge_vertex and r.edge_vertex[2] not in cuts for r in reports if r.is_end_block
    )
    if separated or end_edge_vertex:
        return FormulaOutcome(ExchangeResult(l + 2, None, "chain-l+2"), chain, reports)
    if any(r.edge_vertex for r in reports):
        return FormulaOutcome(
            NotApplicable("edge-vertex property only where it gives no formula"),
            chain,
            reports,
        )
    return FormulaOutcome(ExchangeResult(l + 1, None, "chain-l+1"), chain, reports)


# -- products -----------------------------------------------------------------


@dataclass(frozen=True)
class ProductValue:
    """``status`` is ``exact`` or ``lower-bound``."""

    status: str
    value: int
    tag: str

    def to_dict(self) -> dict:
        return {"status": self.status, "value": self.value, "tag": self.tag}


def _is_path(g: Graph) -> bool:
    return is_tree(g) and all(len(a) <= 2 for a in g.adjacency)


def factor_exchange(g: Graph, exact_cap: int = 20) -> int:
    """Exchange number of a factor: formula first, exact solver up to
    ``exact_cap`` vertices, else the pair bound 2."""
    out = exchange_formula(g)
    if out.applies:
        return out.result.value
    if g.n <= exact_cap:
        return exchange_number_exact(g).value
    return 2


def product_exchange(
    g: Graph, h: Graph, kind: ProductKind | str, exact_cap: int = 20
) -> ProductValue | NotApplicable:
    kind = ProductKind(kind)
    for f in (g, h):
        require_connected(f)
        if f.n < 2:
            raise GraphError("product formulas need factors with at least two vertices")

    if kind is ProductKind.STRONG:
        if max(diameter(g), diameter(h)) > 2:
            return ProductValue("exact", 3, "strong-diameter")
        return NotApplicable("both factors have diameter at most 2")

    if kind is ProductKind.LEXICOGRAPHIC:
        if diameter(g) >= 2 or graph_edge_vertex(h) is not None:
            return ProductValue("exact", 3, "lexicographic")
        return ProductValue("exact", 2, "lexicographic")

    if g.n == h.n == 2:
        # K2 x K2 is the 4-cycle
        return ProductValue("exact", 2, "remark-cycle")
    for a, b in ((g, h), (h, g)):
        if is_complete(a) and _is_path(b):
            return ProductValue("exact", b.n + 1, "complete-by-path")
    if is_complete(g) and is_complete(h) and g.n >= 3 and h.n >= 3:
        return ProductValue("exact", 3, "complete-by-complete")
    bound = (factor_exchange(g, exact_cap) - 1) * (factor_exchange(h, exact_cap) - 1) + 1
    tag = "cartesian-bound"
    if _is_path(g) and _is_path(h) and g.n + h.n - 1 > bound:
        bound, tag = g.n + h.n - 1, "path-by-path-bound"
    return ProductValue("lower-bound", bound, tag)


__all__ = [
    "BlockReport",
    "ChainStructure",
    "FormulaOutcome",
    "NotApplicable",
    "ProductValue",
    "block_property_report",
    "chain_structure",
    "edge_vertex_property",
    "exchange_formula",
    "factor_exchange",
    "graph_edge_vertex",
    "is_complete",
    "is_complete_multipartite",
    "is_cycle_graph",
    "is_exchange_n_minus_1",
    "is_tree",
    "product_exchange",
    "unicyclic_cycle",
    "universal_vertices",
    "vertex_separation_property",
]
