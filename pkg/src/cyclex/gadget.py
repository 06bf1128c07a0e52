"""3-SAT to exchange-number reduction: graph construction and small-instance
verification.

Every clause ``C_i`` gets a clause vertex ``c_i``, one triangle
``{l_1, l_2, l_3}`` per literal occurrence (all nine triangle vertices joined
to ``c_i``) and an adjacent pair ``w_i, w_i'`` joined to the three ``l_1``.
Each unordered pair of opposite literal occurrences in distinct clauses gets
its own four vertices ``l_4, l_5, l~_4, l~_5``. A vertex ``d`` closes the
cycle through ``c_1 .. c_m`` and an adjacent pair ``z, z'`` sees every
vertex of ``W``. The formula is satisfiable iff the graph has an
E-independent set of size ``2m + 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .convexity import hull_mask
from .graph import Graph, GraphError, mask_of
from .independence import ExchangeCertificate, e_certificate_mask, valid_pivots
from .search import SearchOutcome, exchange_set_at_least

Literal = int


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of exactly three nonzero literals over variables ``1..num_vars``."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise GraphError("formula needs at least one variable")
        if len(self.clauses) < 2:
            raise GraphError("reduction needs at least two clauses")
        for c in self.clauses:
            if len(c) != 3:
                raise GraphError(f"clause {list(c)} does not have exactly three literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise GraphError(f"literal {lit} outside 1..{self.num_vars}")

    @classmethod
    def of(cls, num_vars: int, clauses) -> CnfFormula:
        return cls(num_vars, tuple(tuple(c) for c in clauses))

    def evaluate(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def satisfying_assignment(self) -> dict[int, bool] | None:
        """Truth-table search; the lowest assignment in binary order wins."""
        for bits_ in itertools.product((False, True), repeat=self.num_vars):
            a = {v + 1: bits_[v] for v in range(self.num_vars)}
            if self.evaluate(a):
                return a
        return None


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or num_vars is not None:
                raise GraphError(f"malformed problem line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise GraphError(f"malformed problem line {line!r}") from exc
            continue
        if num_vars is None:
            raise GraphError("clause before 'p cnf' header")
        try:
            tokens = [int(t) for t in line.split()]
        except ValueError as exc:
            raise GraphError(f"non-integer literal in {line!r}") from exc
        for t in tokens:
            if t == 0:
                clauses.append(current)
                current = []
            else:
                current.append(t)
    if num_vars is None:
        raise GraphError("missing 'p cnf' header")
    if current:
        raise GraphError("last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise GraphError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula.of(num_vars, clauses)


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionOutput:
    """The reduction graph, its target ``k = 2m + 1`` and vertex roles.

    Occurrence labels read ``l<i>.<j>.<s>``: clause ``i``, position ``j`` (both
    1-based), subscript ``s``. Pair-gadget vertices carry the pair index:
    ``q<t>:l<i>.<j>.4``.
    """

    phi: CnfFormula
    graph: Graph
    k: int
    labels: tuple[str, ...]
    roles: dict[str, frozenset[int]]
    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    ids: dict[str, int] = field(repr=False)

    def vertex(self, label: str) -> int:
        return self.ids[label]

    def metadata(self) -> dict:
        return {
            "k": self.k,
            "n": self.graph.n,
            "opposite_pairs": [[list(a), list(b)] for a, b in self.pairs],
            "pair_gadgets": "one fresh l4/l5 quadruple per unordered pair of opposite occurrences",
            "labels": {str(i): lab for i, lab in enumerate(self.labels)},
            "roles": {r: sorted(s) for r, s in self.roles.items()},
        }


def build_reduction(phi: CnfFormula) -> ReductionOutput:
    labels: list[str] = []
    ids: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    roles: dict[str, set[int]] = {r: set() for r in "ABCDWZ"}

    def vertex(label: str, role: str | None = None) -> int:
        ids[label] = len(labels)
        labels.append(label)
        if role:
            roles[role].add(ids[label])
        return ids[label]

    def edge(a: str, b: str) -> None:
        u, v = ids[a], ids[b]
        edges.add((min(u, v), max(u, v)))

    m = len(phi.clauses)
    for i, clause in enumerate(phi.clauses, 1):
        c = f"c{i}"
        vertex(c, "C")
        for j in range(1, 4):
            occ = f"l{i}.{j}"
            vertex(f"{occ}.1", "A")
            vertex(f"{occ}.2", "B")
            vertex(f"{occ}.3", "B")
            for a, b in ((1, 2), (1, 3), (2, 3)):
                edge(f"{occ}.{a}", f"{occ}.{b}")
            for s in (1, 2, 3):
                edge(c, f"{occ}.{s}")
        vertex(f"w{i}", "W")
        vertex(f"w'{i}", "W")
        edge(f"w{i}", f"w'{i}")
        for j in range(1, 4):
            edge(f"w{i}", f"l{i}.{j}.1")
            edge(f"w'{i}", f"l{i}.{j}.1")

    occurrences = [
        (i, j, lit)
        for i, clause in enumerate(phi.clauses, 1)
        for j, lit in enumerate(clause, 1)
    ]
    pairs = []
    for (i, j, a), (i2, j2, b) in itertools.combinations(occurrences, 2):
        if i == i2 or a != -b:
            continue
        t = len(pairs) + 1
        pairs.append(((i, j), (i2, j2)))
        l, lb = f"l{i}.{j}", f"l{i2}.{j2}"
        q = f"q{t}:"
        vertex(f"{q}{l}.4", "A")
        vertex(f"{q}{l}.5", "W")
        vertex(f"{q}{lb}.4", "A")
        vertex(f"{q}{lb}.5", "W")
        l4, l5, lb4, lb5 = f"{q}{l}.4", f"{q}{l}.5", f"{q}{lb}.4", f"{q}{lb}.5"
        for x in (f"c{i}", f"{l}.2", f"{l}.3", l5, lb5):
            edge(l4, x)
        for x in (f"c{i2}", f"{lb}.2", f"{lb}.3", l5, lb5):
            edge(lb4, x)
        edge(l5, lb5)

    vertex("d", "D")
    vertex("z", "Z")
    vertex("z'", "Z")
    edge("d", "c1")
    edge("d", f"c{m}")
    for i in range(1, m):
        edge(f"c{i}", f"c{i + 1}")
    edge("z", "z'")
    for w in sorted(roles["W"]):
        edge("z", labels[w])
        edge("z'", labels[w])

    g = Graph.from_edges(len(labels), sorted(edges))
    return ReductionOutput(
        phi=phi,
        graph=g,
        k=2 * m + 1,
        labels=tuple(labels),
        roles={r: frozenset(s) for r, s in roles.items()},
        pairs=tuple(pairs),
        ids=ids,
    )


def has_k_clique(g: Graph, k: int) -> bool:
    """Exhaustive clique search over increasing vertex tuples."""
    adj = g.masks

    def grow(cand: int, size: int) -> bool:
        if size == k:
            return True
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if (cand & adj[v]).bit_count() >= k - size - 1 and grow(cand & adj[v], size + 1):
                return True
        return False

    return grow(g.full_mask, 0)


def forward_witness(red: ReductionOutput, assignment: dict[int, bool]) -> frozenset[int]:
    """``{z}`` plus ``l_2, l_3`` of the first true literal of every clause."""
    chosen = [red.vertex("z")]
    for i, clause in enumerate(red.phi.clauses, 1):
        j = next(
            (j for j, lit in enumerate(clause, 1) if assignment[abs(lit)] == (lit > 0)),
            None,
        )
        if j is None:
            raise GraphError(f"assignment falsifies clause {i}")
        chosen += [red.vertex(f"l{i}.{j}.2"), red.vertex(f"l{i}.{j}.3")]
    return frozenset(chosen)


def chosen_literal_region(red: ReductionOutput, witness: frozenset[int]) -> int:
    """Mask of ``C, D`` and every ``l_1..l_4`` vertex of the chosen
    occurrences; the hull of the witness minus ``z`` is expected to be this."""
    region = set(red.roles["C"] | red.roles["D"])
    chosen = {red.labels[v].rsplit(".", 1)[0] for v in witness if red.labels[v].startswith("l")}
    for v, lab in enumerate(red.labels):
        base = lab.split(":", 1)[-1]
        if base.rsplit(".", 1)[0] in chosen and base.rsplit(".", 1)[1] in "1234":
            region.add(v)
    return mask_of(region)


def _canonical(clauses, num_vars: int) -> tuple[tuple[int, ...], ...]:
    best = None
    for perm in itertools.permutations(range(1, num_vars + 1)):
        for signs in itertools.product((1, -1), repeat=num_vars):
            image = tuple(sorted(
                tuple(sorted(signs[abs(l) - 1] * perm[abs(l) - 1] * (1 if l > 0 else -1) for l in c))
                for c in clauses
            ))
            if best is None or image < best:
                best = image
    return best


def formula_corpus(num_vars: int = 3, m: int = 2) -> list[CnfFormula]:
    """One representative per class of ``m``-clause 3-CNF formulas over
    ``num_vars`` variables, up to renaming variables, flipping their signs and
    reordering literals or clauses. Repeated literals are allowed, which is
    what makes unsatisfiable members possible at ``m = 2``."""
    lits = [v for v in range(1, num_vars + 1)] + [-v for v in range(1, num_vars + 1)]
    clauses = sorted({tuple(sorted(c)) for c in itertools.product(lits, repeat=3)})
    reps = {_canonical(f, num_vars) for f in itertools.combinations_with_replacement(clauses, m)}
    return [CnfFormula.of(num_vars, f) for f in sorted(reps)]


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking "satisfiable iff a large E-independent set exists"
    on one formula. ``status`` is ``consistent``, ``inconsistent`` or
    ``timeout``; ``checks`` holds the structural side conditions."""

    status: str
    satisfiable: bool
    assignment: dict[int, bool] | None
    large_set: str
    certificate: ExchangeCertificate | None
    witness: frozenset[int] | None
    checks: dict[str, bool]
    search: SearchOutcome | None
    reduction: ReductionOutput

    def to_dict(self) -> dict:
        red = self.reduction
        return {
            "status": self.status,
            "satisfiable": self.satisfiable,
            "assignment": None if self.assignment is None
            else {str(v): b for v, b in sorted(self.assignment.items())},
            "k": red.k,
            "n": red.graph.n,
            "large_set": self.large_set,
            "certificate": None if self.certificate is None else {
                **self.certificate.to_dict(),
                "labels": [red.labels[v] for v in self.certificate.set],
            },
            "forward_witness": None if self.witness is None
            else [red.labels[v] for v in sorted(self.witness)],
            "checks": dict(sorted(self.checks.items())),
            "search": None if self.search is None else self.search.to_dict(),
        }


def _witness_checks(red: ReductionOutput, witness: frozenset[int]) -> tuple[ExchangeCertificate | None, dict[str, bool]]:
    g = red.graph
    z = red.vertex("z")
    cert = e_certificate_mask(g, mask_of(witness))
    closure = hull_mask(g, mask_of(witness - {z}))
    region = chosen_literal_region(red, witness)
    adj = g.masks
    sparse = all((adj[v] & closure).bit_count() <= 1 for v in range(g.n) if not closure >> v & 1)
    checks = {
        "witness_e_independent": cert is not None and len(witness) >= red.k,
        "witness_pivot_z": cert is not None and z in valid_pivots(g, witness),
        "witness_hull_is_region": closure == region,
        "outside_hull_one_neighbor": sparse,
    }
    return cert, checks


def verify_reduction(phi: CnfFormula, time_limit: float | None = None) -> Verdict:
    """Compare satisfiability (truth table) with the existence of an
    E-independent set of size ``k = 2m + 1`` in the reduction graph.

    For a satisfiable formula the set read off the first satisfying
    assignment is validated directly; the exhaustive search only runs when
    that set fails or the formula is unsatisfiable. A search cut short by
    ``time_limit`` yields a ``timeout`` verdict.
    """
    red = build_reduction(phi)
    g = red.graph
    checks = {"k5_free": not has_k_clique(g, 5)}
    assignment = phi.satisfying_assignment()
    witness = cert = outcome = None
    exists = None
    if assignment is not None:
        witness = forward_witness(red, assignment)
        cert, wchecks = _witness_checks(red, witness)
        checks.update(wchecks)
        if wchecks["witness_e_independent"]:
            exists = True
    if exists is None:
        outcome = exchange_set_at_least(g, red.k, time_limit=time_limit)
        if outcome.status == "found":
            exists, cert = True, outcome.certificate
        elif outcome.status == "none":
            exists = False
    if exists is None:
        status, large = "timeout", "unknown"
    else:
        status = "consistent" if exists == (assignment is not None) else "inconsistent"
        large = "exists" if exists else "none"
    return Verdict(status, assignment is not None, assignment, large, cert, witness, checks, outcome, red)
