"""Isomorphism of circulant graphs.

``decide_isomorphism`` runs the cheap certificates first (spectra, multiplier
equivalence ``q*S2 == S1``), then the two conditions under which a missing
multiplier proves non-isomorphism (all eigenvalues distinct; ``n``, ``n/2`` or
``n/4`` odd and square-free), and finally a budgeted backtracking search.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Union

from ._arith import is_square_free, units
from .errors import UsageError
from .graph import CirculantGraph, adjacency_matrix, has_repeated_eigenvalues, isospectral

DEFAULT_NODE_BUDGET = 10**7


class Status(str, enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NON_ISOMORPHIC = "NonIsomorphic"
    UNKNOWN = "Unknown"


class Reason(str, enum.Enum):
    ADAM_MULTIPLIER_FOUND = "AdamMultiplierFound"
    BRUTE_FORCE_PERMUTATION_FOUND = "BruteForcePermutationFound"
    ADAM_EXHAUSTED_UNDER_ELSPAS_TURNER = "AdamExhaustedUnderElspasTurner"
    ADAM_EXHAUSTED_UNDER_MUZYCHUK = "AdamExhaustedUnderMuzychuk"
    BRUTE_FORCE_EXHAUSTED = "BruteForceExhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"
    NOT_ISOSPECTRAL = "NotIsospectral"


@dataclass(frozen=True)
class Witness:
    """``multiplier``: ``q`` with ``q*S2 == S1``.  ``permutation``: ``value[v]`` is the image in g2 of vertex ``v`` of g1."""

    kind: str
    value: Union[int, tuple[int, ...]]

    def to_json(self) -> dict:
        value = list(self.value) if isinstance(self.value, tuple) else self.value
        return {"type": self.kind, "value": value}


@dataclass(frozen=True)
class IsomorphismVerdict:
    status: Status
    reason: Reason
    witness: Witness | None = None
    nodes_explored: int = 0

    def verify(self, g1: CirculantGraph, g2: CirculantGraph) -> bool:
        """Re-check the witness directly; vacuously true when there is none."""
        if self.witness is None:
            return self.status is not Status.ISOMORPHIC
        if self.witness.kind == "multiplier":
            return g2.connections.scaled(self.witness.value) == g1.connections
        return permutation_is_isomorphism(g1, g2, self.witness.value)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "reason": self.reason.value,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _check_moduli(g1: CirculantGraph, g2: CirculantGraph) -> None:
    if g1.modulus != g2.modulus:
        raise UsageError(f"modulus mismatch: {g1.modulus} vs {g2.modulus}")


def adam_equivalent(g1: CirculantGraph, g2: CirculantGraph) -> int | None:
    """Smallest unit ``q`` with ``q * S2 == S1`` as multisets, or ``None``."""
    _check_moduli(g1, g2)
    if g1.m != g2.m:
        return None
    for q in units(g1.modulus):
        if g2.connections.scaled(q) == g1.connections:
            return q
    return None


def multiplier_permutation(q: int, n: int) -> tuple[int, ...]:
    """Vertex map of g1 -> g2 induced by a multiplier with ``q*S2 == S1`` (namely ``v -> q^-1 v``)."""
    qinv = pow(q, -1, n)
    return tuple((qinv * v) % n for v in range(n))


def elspas_turner_applies(g1: CirculantGraph, g2: CirculantGraph) -> bool:
    _check_moduli(g1, g2)
    return not has_repeated_eigenvalues(g1) and not has_repeated_eigenvalues(g2)


def muzychuk_applies(n: int) -> bool:
    """True iff ``n``, ``n/2`` (with ``n = 2 mod 4``) or ``n/4`` is odd and square-free."""
    if n < 2:
        raise UsageError(f"n must be >= 2, got {n}")
    for k in (1, 2, 4):
        if n % k == 0 and (n // k) % 2 == 1:
            return is_square_free(n // k)
    return False


def permutation_is_isomorphism(g1: CirculantGraph, g2: CirculantGraph, perm) -> bool:
    n = g1.modulus
    if g2.modulus != n or sorted(perm) != list(range(n)):
        return False
    a1 = adjacency_matrix(g1)
    a2 = adjacency_matrix(g2)
    return bool((a2[list(perm)][:, list(perm)] == a1).all())


class _BudgetExceeded(Exception):
    pass


class _Search:
    """Individualization-refinement over pairs of colourings of the two vertex sets."""

    def __init__(self, g1: CirculantGraph, g2: CirculantGraph, budget: int):
        self.g1, self.g2 = g1, g2
        self.n = g1.modulus
        self.budget = budget
        self.nodes = 0
        self.adj = []
        for g in (g1, g2):
            out = [[((v + e) % self.n, mult) for e, mult in g.connections.elements] for v in range(self.n)]
            inn = [[((v - e) % self.n, mult) for e, mult in g.connections.elements] for v in range(self.n)]
            self.adj.append((out, inn))

    def _signatures(self, which: int, colors: list[int]) -> list[tuple]:
        out, inn = self.adj[which]
        return [
            (
                colors[v],
                tuple(sorted((colors[u], w) for u, w in out[v])),
                tuple(sorted((colors[u], w) for u, w in inn[v])),
            )
            for v in range(self.n)
        ]

    def refine(self, c1: list[int], c2: list[int]):
        ncolors = len(set(c1))
        while True:
            s1 = self._signatures(0, c1)
            s2 = self._signatures(1, c2)
            if Counter(s1) != Counter(s2):
                return None
            palette = {s: i for i, s in enumerate(sorted(set(s1)))}
            c1 = [palette[s] for s in s1]
            c2 = [palette[s] for s in s2]
            if len(palette) == ncolors:
                return c1, c2
            ncolors = len(palette)

    def search(self, c1: list[int], c2: list[int]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        refined = self.refine(c1, c2)
        if refined is None:
            return None
        c1, c2 = refined
        sizes = Counter(c1)
        open_cells = [(size, color) for color, size in sizes.items() if size > 1]
        if not open_cells:
            where = {c: w for w, c in enumerate(c2)}
            perm = tuple(where[c] for c in c1)
            return perm if permutation_is_isomorphism(self.g1, self.g2, perm) else None
        _, color = min(open_cells)
        v = c1.index(color)
        fresh = len(sizes)
        for w in (w for w, c in enumerate(c2) if c == color):
            d1 = list(c1)
            d2 = list(c2)
            d1[v] = fresh
            d2[w] = fresh
            found = self.search(d1, d2)
            if found is not None:
                return found
        return None


def brute_force_isomorphic(
    g1: CirculantGraph, g2: CirculantGraph, node_budget: int = DEFAULT_NODE_BUDGET
) -> IsomorphismVerdict:
    """Exhaustive isomorphism search for directed multigraphs, bounded by ``node_budget`` search nodes."""
    _check_moduli(g1, g2)
    if node_budget < 1:
        raise UsageError("node budget must be positive")
    n = g1.modulus
    s = _Search(g1, g2, node_budget)
    # Circulants are vertex-transitive, so some isomorphism (if any) fixes vertex 0.
    c1 = [0] * n
    c2 = [0] * n
    c1[0] = c2[0] = 1
    try:
        perm = s.search(c1, c2)
    except _BudgetExceeded:
        return IsomorphismVerdict(Status.UNKNOWN, Reason.BUDGET_EXCEEDED, nodes_explored=s.nodes - 1)
    if perm is None:
        return IsomorphismVerdict(Status.NON_ISOMORPHIC, Reason.BRUTE_FORCE_EXHAUSTED, nodes_explored=s.nodes)
    if not permutation_is_isomorphism(g1, g2, perm):
        raise AssertionError("search returned an invalid permutation")
    return IsomorphismVerdict(
        Status.ISOMORPHIC, Reason.BRUTE_FORCE_PERMUTATION_FOUND, Witness("permutation", perm), s.nodes
    )


def decide_isomorphism(
    g1: CirculantGraph, g2: CirculantGraph, node_budget: int = DEFAULT_NODE_BUDGET
) -> IsomorphismVerdict:
    _check_moduli(g1, g2)
    if not isospectral(g1, g2):
        return IsomorphismVerdict(Status.NON_ISOMORPHIC, Reason.NOT_ISOSPECTRAL)
    q = adam_equivalent(g1, g2)
    if q is not None:
        return IsomorphismVerdict(Status.ISOMORPHIC, Reason.ADAM_MULTIPLIER_FOUND, Witness("multiplier", q))
    if elspas_turner_applies(g1, g2):
        return IsomorphismVerdict(Status.NON_ISOMORPHIC, Reason.ADAM_EXHAUSTED_UNDER_ELSPAS_TURNER)
    if muzychuk_applies(g1.modulus):
        return IsomorphismVerdict(Status.NON_ISOMORPHIC, Reason.ADAM_EXHAUSTED_UNDER_MUZYCHUK)
    return brute_force_isomorphic(g1, g2, node_budget)
