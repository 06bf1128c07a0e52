"""Deterministic instance families with their formula expectations, used by
the ``verify`` and ``bench`` commands and by the test-suite.

A corpus spec is a family name followed by optional ``key=lo..hi`` ranges::

    cycles n=3..10          paths n=2..12         trees n=4..12
    complete n=3..8         multipartite part=1..3
    unicyclic m=3..6 extra=1..4                  pendant-cycles n=4..9
    chain K3x3              chain K3,K2,C4        chordal-chains
    cartesian K2xK2..K4xP4  strong K2xP2..P4xP4   lexicographic K2xK2..P3xP3

Random families (trees, unicyclic attachments, long chordal chains) draw
from ``random.Random(seed)``.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

from .formulas import NotApplicable, ProductValue, exchange_formula, product_exchange
from .graph import (
    Graph,
    GraphError,
    block_decomposition,
    chordal_chain,
    complete,
    complete_multipartite,
    cycle,
    format_edge_list,
    is_chordal,
    is_connected,
    path,
    pendant_cycle,
    product,
    unicyclic,
)


@dataclass(frozen=True)
class CorpusItem:
    name: str
    graph: Graph
    expected: int | None
    status: str  # "exact", "lower-bound" or "n/a"
    tag: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.graph.n,
            "m": self.graph.num_edges,
            "expected": self.expected,
            "status": self.status,
            "tag": self.tag,
        }


def _from_formula(name: str, g: Graph) -> CorpusItem:
    out = exchange_formula(g)
    if out.applies:
        return CorpusItem(name, g, out.result.value, "exact", out.result.method)
    return CorpusItem(name, g, None, "n/a", out.result.reason)


def _range(params: dict[str, str], key: str, default: tuple[int, int]) -> range:
    text = params.get(key)
    if text is None:
        lo, hi = default
    else:
        m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
        if not m:
            raise GraphError(f"bad range {key}={text!r}")
        lo = int(m.group(1))
        hi = int(m.group(2) or lo)
    return range(lo, hi + 1)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree through a random Pruefer sequence."""
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def _canonical_key(g: Graph) -> tuple:
    best = None
    for perm in itertools.permutations(range(g.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return best


def chordal_blocks(max_order: int = 5) -> list[Graph]:
    """Every 2-connected chordal graph on 3..``max_order`` vertices up to
    isomorphism, smallest first."""
    found: dict[tuple, Graph] = {}
    for n in range(3, max_order + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for chosen in itertools.product((0, 1), repeat=len(pairs)):
            edges = [e for e, c in zip(pairs, chosen) if c]
            if len(edges) < n:
                continue
            g = Graph.from_edges(n, edges)
            if not is_connected(g) or len(block_decomposition(g).blocks) != 1:
                continue
            if not is_chordal(g)[0]:
                continue
            key = (n, _canonical_key(g))
            found.setdefault(key, Graph.from_edges(n, list(key[1])))
    return [found[k] for k in sorted(found)]


def _glue_choices(b: Graph) -> list[int]:
    """One vertex per degree class; enough variety without orbit computation."""
    seen: dict[int, int] = {}
    for v in range(b.n):
        seen.setdefault(b.degree(v), v)
    return sorted(seen.values())


def chordal_chains(
    max_blocks: int = 3, seed: int = 0, max_order: int = 11, samples: int = 150
) -> list[CorpusItem]:
    """All two-block chains over the block pool (plus ``K2``) with one glue
    vertex per degree class, then ``samples`` random longer chains."""
    pool = [path(2)] + chordal_blocks(4) + [b for b in chordal_blocks(5) if b.n == 5]
    names = [_block_name(b) for b in pool]
    items: list[CorpusItem] = []
    seen: set[str] = set()

    def add(idx: list[int], glue: list[tuple[int, int]]) -> None:
        g = chordal_chain([pool[i] for i in idx], glue)
        if g.n > max_order:
            return
        key = format_edge_list(g)
        if key in seen:
            return
        seen.add(key)
        label = "chain " + "-".join(names[i] for i in idx) + " glue " + ",".join(f"{a}/{b}" for a, b in glue)
        items.append(_from_formula(label, g))

    for a, b in itertools.product(range(len(pool)), repeat=2):
        for u in _glue_choices(pool[a]):
            for w in _glue_choices(pool[b]):
                add([a, b], [(u, w)])
    rng = random.Random(seed)
    for _ in range(samples if max_blocks >= 3 else 0):
        count = rng.randint(3, max_blocks)
        idx = [rng.randrange(len(pool)) for _ in range(count)]
        glue = []
        for i in range(count - 1):
            entry = glue[-1][1] if glue else None
            exits = [v for v in range(pool[idx[i]].n) if v != entry]
            glue.append((rng.choice(exits), rng.randrange(pool[idx[i + 1]].n)))
        add(idx, glue)
    return items


def _block_name(b: Graph) -> str:
    if b.num_edges == b.n * (b.n - 1) // 2:
        return f"K{b.n}"
    return f"B{b.n}.{b.num_edges}"


_FACTOR = re.compile(r"([KPC])(\d+)")


def _factor(kind: str, n: int) -> Graph:
    return {"K": complete, "P": path, "C": cycle}[kind](n)


def _product_grid(text: str) -> list[tuple[str, Graph, str, Graph]]:
    text = text.replace("×", "x").replace(" ", "")
    m = re.fullmatch(r"([KPC]\d+)x([KPC]\d+)\.\.([KPC]\d+)x([KPC]\d+)", text)
    if not m:
        raise GraphError(f"bad product grid {text!r}; expected e.g. K2xK2..K4xP4")
    a1, b1, a2, b2 = (_FACTOR.fullmatch(t).groups() for t in m.groups())

    def slot(lo, hi):
        kinds = sorted({lo[0], hi[0]})
        sizes = range(int(lo[1]), int(hi[1]) + 1)
        return [(f"{k}{n}", _factor(k, n)) for k in kinds for n in sizes if not (k == "C" and n < 3)]

    return [(na, ga, nb, gb) for na, ga in slot(a1, a2) for nb, gb in slot(b1, b2)]


def _product_items(kind: str, grid: str) -> list[CorpusItem]:
    items = []
    sym = {"cartesian": "□", "strong": "⊠", "lexicographic": "∘"}[kind]
    for na, ga, nb, gb in _product_grid(grid):
        g = product(ga, gb, kind).graph
        res = product_exchange(ga, gb, kind)
        name = f"{na}{sym}{nb}"
        if isinstance(res, NotApplicable):
            items.append(CorpusItem(name, g, None, "n/a", res.reason))
        else:
            assert isinstance(res, ProductValue)
            items.append(CorpusItem(name, g, res.value, res.status, res.tag))
    return items


def corpus_generate(spec: str, seed: int = 0, max_blocks: int = 3) -> list[CorpusItem]:
    """Instances named by ``spec``, each with its formula expectation."""
    family, _, rest = spec.strip().partition(" ")
    rest = rest.strip()
    params = dict(tok.split("=", 1) for tok in rest.split() if "=" in tok)
    rng = random.Random(seed)
    if family == "cycles":
        return [_from_formula(f"C{n}", cycle(n)) for n in _range(params, "n", (3, 10))]
    if family == "paths":
        return [_from_formula(f"P{n}", path(n)) for n in _range(params, "n", (2, 12))]
    if family == "trees":
        return [
            _from_formula(f"tree n={n} #{i}", random_tree(n, rng))
            for n in _range(params, "n", (4, 12))
            for i in range(int(params.get("count", 3)))
        ]
    if family == "complete":
        return [_from_formula(f"K{n}", complete(n)) for n in _range(params, "n", (3, 8))]
    if family == "multipartite":
        sizes = _range(params, "part", (1, 3))
        items = []
        for r in (2, 3):
            for parts in itertools.combinations_with_replacement(sizes, r):
                if sum(parts) >= 3:
                    name = "K" + ",".join(map(str, parts))
                    items.append(_from_formula(name, complete_multipartite(list(parts))))
        return items
    if family == "unicyclic":
        items = []
        for m in _range(params, "m", (3, 6)):
            for extra in _range(params, "extra", (1, 4)):
                parents = []
                for t in range(extra):
                    parents.append(rng.randrange(m + t))
                items.append(_from_formula(f"U m={m} parents={parents}", unicyclic(m, parents)))
        return items
    if family == "pendant-cycles":
        return [_from_formula(f"C({n - 1},1)", pendant_cycle(n)) for n in _range(params, "n", (4, 9))]
    if family == "chain":
        m = re.fullmatch(r"([KC]\d+)\s*[x×]\s*(\d+)", rest)
        tokens = [m.group(1)] * int(m.group(2)) if m else [t for t in rest.split(",") if t]
        from .graph import generate

        return [_from_formula("chain " + rest, generate("chain:" + ",".join(tokens)))]
    if family == "chordal-chains":
        return chordal_chains(max_blocks=max_blocks, seed=seed)
    if family in ("cartesian", "strong", "lexicographic"):
        default = {"cartesian": "K2xK2..K4xP4", "strong": "K2xP2..P4xP4", "lexicographic": "K2xK2..P3xP3"}
        return _product_items(family, rest or default[family])
    raise GraphError(f"unknown corpus {family!r}")


CORPORA = (
    "cycles", "paths", "trees", "complete", "multipartite", "unicyclic",
    "pendant-cycles", "chain", "chordal-chains", "cartesian", "strong", "lexicographic",
)
