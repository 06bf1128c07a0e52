"""Carathéodory and exchange independence, and the exchange number.

The exact solver searches subsets by decreasing size and returns the first
E-independent set it meets, so the first hit is a maximum one. Candidate sets
of three or more vertices are screened by necessary conditions every
E-independent set of that size satisfies:

* ``G[S]`` is a forest (no ``l`` vertices of ``S`` induce a ``C_l``);
* ``G[S]`` has at least one edge;
* at most one vertex of ``S`` lies on no cycle of ``G``;
* ``G[hull(S)]`` is connected or one trivial plus one non-trivial component;
* ``S - {u, v}`` is never a hull set.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .convexity import hull_mask
from .graph import (
    Graph,
    GraphError,
    _check_set,
    bits,
    block_decomposition,
    component_masks,
    mask_of,
    require_connected,
    set_of,
)

BRUTE_CAP = 12


@dataclass(frozen=True)
class ExchangeCertificate:
    """An E-independent set with its pivot and anti-pivot (both ``None`` for a
    singleton)."""

    set: frozenset[int]
    pivot: int | None
    anti_pivot: int | None

    def to_dict(self) -> dict:
        return {"set": sorted(self.set), "pivot": self.pivot, "anti_pivot": self.anti_pivot}


@dataclass(frozen=True)
class ExchangeResult:
    value: int
    certificate: ExchangeCertificate | None
    method: str

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


class HullCache:
    """Memoized hulls of bitmask sets for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self._memo: dict[int, int] = {}

    def __call__(self, s: int) -> int:
        h = self._memo.get(s)
        if h is None:
            h = self._memo[s] = hull_mask(self.g, s)
        return h


def _certificate_from_deletions(s: int, deleted_hulls: list[tuple[int, int]]):
    """Lowest-id pivot and anti-pivot given ``(a, hull(S - a))`` pairs in
    increasing ``a``; ``None`` when no pivot exists."""
    k = len(deleted_hulls)
    prefix = [0] * (k + 1)
    for i, (_, h) in enumerate(deleted_hulls):
        prefix[i + 1] = prefix[i] | h
    suffix = 0
    covers = [0] * k
    for i in range(k - 1, -1, -1):
        covers[i] = prefix[i] | suffix
        suffix |= deleted_hulls[i][1]
    for i, (p, h) in enumerate(deleted_hulls):
        rest = h & ~covers[i]
        if rest:
            anti = (rest & -rest).bit_length() - 1
            return ExchangeCertificate(set_of(s), p, anti)
    return None


def e_certificate_mask(g: Graph, s: int, hull=None) -> ExchangeCertificate | None:
    hull = hull or (lambda m: hull_mask(g, m))
    if s & (s - 1) == 0:
        return ExchangeCertificate(set_of(s), None, None)
    return _certificate_from_deletions(s, [(a, hull(s & ~(1 << a))) for a in bits(s)])


def is_E_independent(g: Graph, s: Iterable[int]) -> ExchangeCertificate | None:
    """Certificate for an E-independent ``s``, ``None`` if ``s`` is E-dependent."""
    s = _check_set(g, s)
    if not s:
        raise GraphError("E-independence needs a nonempty set")
    return e_certificate_mask(g, mask_of(s))


def is_C_independent(g: Graph, s: Iterable[int]) -> tuple[bool, int | None]:
    """Whether ``hull(s)`` escapes every ``hull(s - a)``; lowest witness if so."""
    s = _check_set(g, s)
    if not s:
        raise GraphError("C-independence needs a nonempty set")
    m = mask_of(s)
    cover = 0
    for a in bits(m):
        cover |= hull_mask(g, m & ~(1 << a))
    rest = hull_mask(g, m) & ~cover
    if rest:
        return True, (rest & -rest).bit_length() - 1
    return False, None


def valid_pivots(g: Graph, s: Iterable[int]) -> list[int]:
    """Every member of ``s`` (two or more vertices) that works as a pivot."""
    m = mask_of(_check_set(g, s))
    deleted = [(a, hull_mask(g, m & ~(1 << a))) for a in bits(m)]
    out = []
    for p, h in deleted:
        cover = 0
        for a, other in deleted:
            if a != p:
                cover |= other
        if h & ~cover:
            out.append(p)
    return out


def validate_certificate(g: Graph, cert: ExchangeCertificate) -> bool:
    """Recheck a certificate straight from the definition."""
    s = set(cert.set)
    if len(s) == 1:
        return cert.pivot is None and cert.anti_pivot is None
    if cert.pivot not in s or cert.anti_pivot is None:
        return False
    hull_of = lambda t: set_of(hull_mask(g, mask_of(t)))  # noqa: E731
    if cert.anti_pivot not in hull_of(s - {cert.pivot}):
        return False
    return all(cert.anti_pivot not in hull_of(s - {a}) for a in s if a != cert.pivot)


# -- exact solver -------------------------------------------------------------


def acyclic_vertex_mask(g: Graph) -> int:
    """Vertices lying on no cycle: every block through them is a bridge."""
    dec = block_decomposition(g)
    on_cycle = 0
    for b in dec.blocks:
        if len(b) >= 3:
            on_cycle |= mask_of(b)
    return g.full_mask & ~on_cycle


def _screened_out(g: Graph, s: int, acyclic: int, hull: HullCache) -> bool:
    adj = g.masks
    k = s.bit_count()
    # at most one vertex off every cycle
    if (s & acyclic) & ((s & acyclic) - 1):
        return True
    twice_edges = 0
    for v in bits(s):
        twice_edges += (adj[v] & s).bit_count()
    if twice_edges == 0:
        return True
    if twice_edges // 2 != k - len(component_masks(g, s)):
        return True  # G[S] contains a cycle, hence an induced one
    comps = component_masks(g, hull(s))
    if len(comps) >= 3:
        return True
    if len(comps) == 2 and all(c & (c - 1) for c in comps):
        return True
    return False


def _certificate_with_pair_rule(
    g: Graph, s: int, hull: HullCache
) -> ExchangeCertificate | None:
    full = g.full_mask
    deleted = [(a, hull(s & ~(1 << a))) for a in bits(s)]
    spanning = [a for a, h in deleted if h == full]
    # S - {u, v} a hull set forces both deletion hulls to be full
    for u, v in combinations(spanning, 2):
        if hull(s & ~(1 << u) & ~(1 << v)) == full:
            return None
    return _certificate_from_deletions(s, deleted)


def _pair_result(g: Graph) -> ExchangeResult:
    cert = e_certificate_mask(g, 0b11)
    return ExchangeResult(2, cert, "exact")


def find_exchange_set(
    g: Graph, k_min: int, k_max: int | None = None, hull: HullCache | None = None
) -> ExchangeCertificate | None:
    """Largest E-independent set with size in ``[k_min, k_max]`` (screened
    search, sizes >= 3 only), lowest in lexicographic order among those."""
    hull = hull or HullCache(g)
    acyclic = acyclic_vertex_mask(g)
    k_max = g.n if k_max is None else min(k_max, g.n)
    for k in range(k_max, max(k_min, 3) - 1, -1):
        for combo in combinations(range(g.n), k):
            s = mask_of(combo)
            if _screened_out(g, s, acyclic, hull):
                continue
            cert = _certificate_with_pair_rule(g, s, hull)
            if cert is not None:
                return cert
    return None


def exchange_number_exact(g: Graph) -> ExchangeResult:
    require_connected(g)
    if g.n == 1:
        return ExchangeResult(1, ExchangeCertificate(frozenset({0}), None, None), "exact")
    cert = find_exchange_set(g, 3)
    if cert is None:
        return _pair_result(g)
    return ExchangeResult(len(cert.set), cert, "exact")


def exchange_number_brute(g: Graph, cap: int = BRUTE_CAP) -> int:
    """Unscreened maximum over every nonempty subset, straight from the
    definition with plain ``set`` arithmetic."""
    require_connected(g)
    if g.n > cap:
        raise GraphError(f"brute-force oracle limited to {cap} vertices, got {g.n}")

    def hull_of(t):
        return set_of(hull_mask(g, mask_of(t)))

    best = 0
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            s = set(s)
            if k == 1:
                best = max(best, 1)
                continue
            for p in s:
                cover = set()
                for a in s - {p}:
                    cover |= hull_of(s - {a})
                if hull_of(s - {p}) - cover:
                    best = k
                    break
    return best
