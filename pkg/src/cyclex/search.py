"""Existence of an E-independent set with at least ``k`` vertices, for graphs
too large for subset enumeration.

For a fixed anti-pivot ``x`` a SAT solver proposes a set ``S`` and pivot
``p``; each proposal is checked with exact hull computations and, when it
fails, a clause ruling out a whole family of proposals is added:

* ``G[S]`` holds a cycle: forbid that cycle (three or more members of an
  E-independent set never induce a cycle, since each would be redundant);
* ``x`` misses ``hull(S - p)``: grow ``hull(S - p)`` to a maximal convex set
  ``C`` avoiding ``x`` and require a non-pivot member outside ``C``;
* ``x`` lies in ``hull(S - a)`` for some ``a != p``: shrink ``S - a`` to a
  minimal generator ``Y`` of ``x``; any valid ``S`` containing ``Y`` must
  equal ``Y`` plus the pivot.

Generators of ``x`` with at most ``k - 2`` vertices are excluded up front by
the same argument. A solver that runs out of proposals proves that no set
with anti-pivot ``x`` exists, so the answer is exact unless the deadline
expires first.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

import z3

from .graph import Graph, GraphError, bits, mask_of, require_connected
from .independence import ExchangeCertificate, HullCache, e_certificate_mask

SMALL_GENERATOR_LIMIT = 2
NO_TIMEOUT = 2**32 - 1  # z3's largest millisecond budget


@dataclass(frozen=True)
class SearchOutcome:
    """``status`` is ``found``, ``none`` or ``timeout``."""

    status: str
    certificate: ExchangeCertificate | None
    iterations: int
    anti_pivots_closed: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "iterations": self.iterations,
            "anti_pivots_closed": self.anti_pivots_closed,
        }


def _cycle_in(g: Graph, s: int) -> int:
    """Vertex mask of some cycle of ``G[s]``, 0 for a forest."""
    adj = g.masks
    seen = 0
    for root in bits(s):
        if seen >> root & 1:
            continue
        parent = {root: None}
        order = [root]
        seen |= 1 << root
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            for w in bits(adj[u] & s):
                if w == parent[u]:
                    continue
                if w in parent:
                    # close the cycle through the lowest common ancestor
                    up = set()
                    a = u
                    while a is not None:
                        up.add(a)
                        a = parent[a]
                    cyc = 0
                    b = w
                    while b not in up:
                        cyc |= 1 << b
                        b = parent[b]
                    a = u
                    while a != b:
                        cyc |= 1 << a
                        a = parent[a]
                    return cyc | 1 << b
                parent[w] = u
                seen |= 1 << w
                order.append(w)
    return 0


class _AntiPivotSearch:
    def __init__(self, g: Graph, x: int, k: int, hull: HullCache):
        self.g, self.x, self.k, self.hull = g, x, k, hull
        n = g.n
        self.s = [z3.Bool(f"s{v}") for v in range(n)]
        self.p = [z3.Bool(f"p{v}") for v in range(n)]
        sol = self.solver = z3.Solver()
        sol.add(z3.Not(self.s[x]), z3.Not(self.p[x]))
        for v in range(n):
            sol.add(z3.Implies(self.p[v], self.s[v]))
        sol.add(z3.PbEq([(b, 1) for b in self.p], 1))
        sol.add(z3.PbGe([(b, 1) for b in self.s], k))
        adj = g.masks
        for a, b in g.edges:
            for c in bits(adj[a] & adj[b]):
                if c > b:
                    sol.add(z3.Not(z3.And(self.s[a], self.s[b], self.s[c])))
        for m in self._small_generators(min(SMALL_GENERATOR_LIMIT, k - 2)):
            sol.add(z3.Not(z3.And([self.s[v] for v in bits(m)])))
        self.iterations = 0
        self.closed = False

    def _small_generators(self, limit: int) -> list[int]:
        xb = 1 << self.x
        others = [v for v in range(self.g.n) if v != self.x]
        found: list[int] = []
        for size in range(1, limit + 1):
            for combo in combinations(others, size):
                m = mask_of(combo)
                if any(m & f == f for f in found):
                    continue
                if self.hull(m) & xb:
                    found.append(m)
        return found

    def step(self, remaining_ms: int | None) -> tuple[int, int] | None | str:
        """One proposal: ``(S, p)`` when valid, ``None`` after adding a cut,
        ``"closed"`` when exhausted, ``"timeout"`` when the solver gave up."""
        sol, s, p, x = self.solver, self.s, self.p, self.x
        sol.set("timeout", NO_TIMEOUT if remaining_ms is None else max(1, remaining_ms))
        self.iterations += 1
        verdict = sol.check()
        if verdict == z3.unsat:
            self.closed = True
            return "closed"
        if verdict != z3.sat:
            return "timeout"
        model = sol.model()
        n = self.g.n
        S = sum(1 << v for v in range(n) if z3.is_true(model[s[v]]))
        P = next(v for v in range(n) if z3.is_true(model[p[v]]))
        xb = 1 << x
        cyc = _cycle_in(self.g, S)
        if cyc:
            sol.add(z3.Not(z3.And([s[v] for v in bits(cyc)])))
            return None
        T = S & ~(1 << P)
        if not self.hull(T) & xb:
            conv = self.hull(T)
            for v in range(n):
                if v != x and not conv >> v & 1:
                    grown = self.hull(conv | 1 << v)
                    if not grown & xb:
                        conv = grown
            outside = [v for v in range(n) if v != x and not conv >> v & 1]
            sol.add(z3.Or([z3.And(s[v], z3.Not(p[v])) for v in outside]))
            return None
        bad = next((a for a in bits(T) if self.hull(S & ~(1 << a)) & xb), None)
        if bad is None:
            return (S, P)
        gen = S & ~(1 << bad)
        for v in bits(gen):
            if self.hull(gen & ~(1 << v)) & xb:
                gen &= ~(1 << v)
        inside = z3.And([s[v] for v in bits(gen)])
        if gen.bit_count() + 1 < self.k:
            sol.add(z3.Not(inside))
        else:
            for v in range(n):
                if not gen >> v & 1:
                    sol.add(z3.Implies(z3.And(inside, s[v]), p[v]))
        return None


def exchange_set_at_least(
    g: Graph,
    k: int,
    time_limit: float | None = None,
    anti_pivots: list[int] | None = None,
    first_slice: int = 16,
) -> SearchOutcome:
    """Search for an E-independent set with at least ``k >= 3`` vertices.

    Candidate anti-pivots (all vertices by default) share the work
    round-robin, each getting ``first_slice`` proposals per round and twice
    as many in every later round, so an easy witness behind a hard candidate
    is still found quickly.
    """
    require_connected(g)
    if k < 3:
        raise GraphError("the lazy search handles k >= 3; pairs are always E-independent")
    start = time.monotonic()
    hull = HullCache(g)
    order = list(range(g.n)) if anti_pivots is None else list(anti_pivots)
    searches: dict[int, _AntiPivotSearch] = {}
    slice_ = first_slice
    total = 0

    def out_of_time() -> bool:
        return time_limit is not None and time.monotonic() - start >= time_limit

    while True:
        open_ = [x for x in order if x not in searches or not searches[x].closed]
        if not open_:
            return SearchOutcome("none", None, total, len(order))
        for x in open_:
            if out_of_time():
                closed = sum(1 for s in searches.values() if s.closed)
                return SearchOutcome("timeout", None, total, closed)
            if x not in searches:
                searches[x] = _AntiPivotSearch(g, x, k, hull)
            search = searches[x]
            for _ in range(slice_):
                remaining = None if time_limit is None else time_limit - (time.monotonic() - start)
                if remaining is not None and remaining <= 0:
                    break
                ms = None if remaining is None else int(remaining * 1000)
                res = search.step(ms)
                total += 1
                if res == "closed":
                    break
                if res == "timeout":
                    closed = sum(1 for s in searches.values() if s.closed)
                    return SearchOutcome("timeout", None, total, closed)
                if isinstance(res, tuple):
                    cert = e_certificate_mask(g, res[0])
                    closed = sum(1 for s in searches.values() if s.closed)
                    return SearchOutcome("found", cert, total, closed)
        slice_ *= 2


__all__ = ["SearchOutcome", "exchange_set_at_least"]
