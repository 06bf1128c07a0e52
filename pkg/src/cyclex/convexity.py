"""Cycle-convexity interval and hull operators.

A vertex outside ``S`` is infected by ``S`` when two of its neighbors lie in
the same component of ``G[S]``: a path inside ``G[S]`` between those two
neighbors closes a cycle through the vertex, and any cycle through it in
``G[S + v]`` leaves and re-enters ``v`` through two such neighbors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, _check_set, bits, component_masks, mask_of, set_of


def interval_mask(g: Graph, s: int) -> int:
    adj = g.masks
    out = s
    outside = g.full_mask & ~s
    for comp in component_masks(g, s):
        if comp & (comp - 1) == 0:
            continue  # a single vertex cannot supply two neighbors
        for v in bits(outside):
            if (adj[v] & comp).bit_count() >= 2:
                out |= 1 << v
    return out


def hull_mask(g: Graph, s: int) -> int:
    while True:
        nxt = interval_mask(g, s)
        if nxt == s:
            return s
        s = nxt


@dataclass(frozen=True)
class HullTrace:
    """Synchronous interval rounds from the seed set to the hull.

    ``rounds[0]`` is the seed; each later entry is one application of the
    interval operator; the last entry equals ``final``.
    """

    rounds: tuple[frozenset[int], ...]

    @property
    def final(self) -> frozenset[int]:
        return self.rounds[-1]

    def added(self) -> list[list[int]]:
        """Vertices that entered in each round after the seed."""
        return [
            sorted(b - a) for a, b in zip(self.rounds, self.rounds[1:])
        ]


def interval(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = _check_set(g, s)
    return set_of(interval_mask(g, mask_of(s)))


def hull(g: Graph, s: Iterable[int]) -> HullTrace:
    cur = mask_of(_check_set(g, s))
    rounds = [cur]
    while True:
        nxt = interval_mask(g, cur)
        if nxt == cur:
            break
        rounds.append(nxt)
        cur = nxt
    return HullTrace(tuple(set_of(r) for r in rounds))


def is_convex(g: Graph, s: Iterable[int]) -> bool:
    m = mask_of(_check_set(g, s))
    return interval_mask(g, m) == m


def is_hull_set(g: Graph, s: Iterable[int]) -> bool:
    return hull_mask(g, mask_of(_check_set(g, s))) == g.full_mask


def redundant_vertices(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Members ``w`` of ``s`` regenerated by the rest: ``w in hull(s - w)``."""
    m = mask_of(_check_set(g, s))
    return frozenset(w for w in bits(m) if hull_mask(g, m & ~(1 << w)) >> w & 1)
