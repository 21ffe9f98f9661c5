"""Isospectral, non-isomorphic circulant pairs on ``n = 2**r * p`` vertices.

For ``r >= 2`` and an odd prime ``p``::

    A = {1 + i 2^r : 0 <= i <= (p-1)/2} + {1 + j 2^r + n/2 : 1 <= j <= (p-1)/2}
    B = {1 - i 2^r : 0 <= i <= (p-1)/2} + {1 - j 2^r + n/2 : 1 <= j <= (p-1)/2}

and the extension ``A + qA``, ``B + qB`` for a unit ``q`` (multiset unions).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ._arith import is_prime
from .cyclotomic import GroupRingElement, reduce
from .errors import UsageError
from .graph import CirculantGraph, has_repeated_eigenvalues, isospectral, spectrum
from .isomorphism import DEFAULT_NODE_BUDGET, IsomorphismVerdict, Status, decide_isomorphism

OPEN_QUESTION_BUDGET = 10**8


@dataclass(frozen=True)
class ConstructionParams:
    r: int
    p: int
    q: int | None = None

    def __post_init__(self):
        if self.r < 2:
            raise UsageError(f"r must be >= 2, got {self.r}")
        if self.p < 3 or not is_prime(self.p):
            raise UsageError(f"p must be an odd prime, got {self.p}")
        if self.q is not None:
            q = self.q % self.n
            if gcd(q, self.n) != 1:
                raise UsageError(f"q={self.q} is not coprime to n={self.n}")
            if q == 1:
                raise UsageError("q = 1 mod n gives a trivial extension")
            object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return 2**self.r * self.p

    @property
    def extended(self) -> bool:
        return self.q is not None

    def to_json(self) -> dict:
        return {"r": self.r, "p": self.p, "q": self.q, "n": self.n}


def connection_values(r: int, p: int) -> tuple[list[int], list[int]]:
    """The two connection sets, each in formula order (``i``-terms then ``j``-terms), reduced mod n."""
    n = 2**r * p
    half = (p - 1) // 2
    a = [1 + i * 2**r for i in range(half + 1)] + [1 + j * 2**r + n // 2 for j in range(1, half + 1)]
    b = [1 - i * 2**r for i in range(half + 1)] + [1 - j * 2**r + n // 2 for j in range(1, half + 1)]
    return [v % n for v in a], [v % n for v in b]


def build_pair(params: ConstructionParams) -> tuple[CirculantGraph, CirculantGraph]:
    a, b = connection_values(params.r, params.p)
    return CirculantGraph.from_values(params.n, a), CirculantGraph.from_values(params.n, b)


def extend_pair(params: ConstructionParams) -> tuple[CirculantGraph, CirculantGraph]:
    if params.q is None:
        raise UsageError("extension needs a multiplier q")
    n, q = params.n, params.q
    a, b = connection_values(params.r, params.p)
    return (
        CirculantGraph.from_values(n, a + [q * v for v in a]),
        CirculantGraph.from_values(n, b + [q * v for v in b]),
    )


def _power_of_two_above_one(k: int) -> bool:
    return k > 1 and k & (k - 1) == 0


def verify_pairing(x: CirculantGraph, y: CirculantGraph) -> bool:
    """``lam_x == mu_(x + n/2)`` when gcd(x, n) is a power of two above 1, else ``lam_x == mu_x``."""
    n = x.modulus
    if y.modulus != n or n % 2:
        return False
    lam = spectrum(x).eigenvalues
    mu = spectrum(y).eigenvalues
    for i in range(n):
        j = (i + n // 2) % n if _power_of_two_above_one(gcd(i, n)) else i
        if lam[i] != mu[j]:
            return False
    return True


def _power_sums_agree(r: int, p: int, k_max: int, terms: int) -> bool:
    if r < 2 or p < 3 or not is_prime(p) or k_max < 0:
        raise UsageError(f"need r >= 2, odd prime p, k_max >= 0; got r={r}, p={p}, k_max={k_max}")
    n = 2**r * p
    base = reduce(GroupRingElement.from_exponents(n, (i * 2**r for i in range(terms))))
    for k in range(k_max + 1):
        step = pow(2, r + k, n)
        if reduce(GroupRingElement.from_exponents(n, (i * step for i in range(terms)))) != base:
            return False
    return True


def verify_power_sum_identity(r: int, p: int, k_max: int) -> bool:
    """``sum_{i<p} w^(i 2^(r+k)) == sum_{i<p} w^(i 2^r)`` for every ``0 <= k <= k_max``.

    This full-period form is what the isospectrality pairing relies on.  The variant
    truncated at ``i <= (p-1)/2`` is false in general; see ``half_period_sums_agree``.
    """
    return _power_sums_agree(r, p, k_max, p)


def half_period_sums_agree(r: int, p: int, k_max: int) -> bool:
    """``sum_{i<=(p-1)/2} w^(i 2^(r+k)) == sum_{i<=(p-1)/2} w^(i 2^r)`` for every ``0 <= k <= k_max``.

    Fails as soon as ``2^k`` is not 1 mod ``p`` (e.g. r=2, p=3, k=1: ``1 + w^8`` vs ``1 + w^4``).
    """
    return _power_sums_agree(r, p, k_max, (p + 1) // 2)


def verify_divisibility_split(x: CirculantGraph, y: CirculantGraph, p: int, multiples: int = 2) -> bool:
    """One connection multiset has exactly ``multiples`` elements divisible by ``p``; the other is all units.

    ``multiples`` is 2 for the base pair and 4 for an extended pair (``qa`` is divisible
    by ``p`` exactly when ``a`` is).
    """
    n = x.modulus

    def divisible(g):
        return sum(1 for v in g.connections.values() if v % p == 0)

    def all_units(g):
        return all(gcd(v, n) == 1 for v in g.connections.values())

    dx, dy = divisible(x), divisible(y)
    return (dx == multiples and all_units(y)) or (dy == multiples and all_units(x))


@dataclass
class ConstructionReport:
    params: ConstructionParams
    graph_x: CirculantGraph
    graph_y: CirculantGraph
    isospectral: bool
    pairing_verified: bool | None
    distinct_eigenvalues: bool
    divisibility_verified: bool
    verdict: IsomorphismVerdict
    open_question_data: bool

    def violations(self) -> list[str]:
        """Guaranteed properties that failed (empty when everything checks out)."""
        bad = []
        if not self.isospectral:
            bad.append("isospectral")
        if not self.divisibility_verified:
            bad.append("divisibility_verified")
        if not self.params.extended:
            if not self.pairing_verified:
                bad.append("pairing_verified")
            if not self.distinct_eigenvalues:
                bad.append("distinct_eigenvalues")
            if self.verdict.status is not Status.NON_ISOMORPHIC:
                bad.append("verdict")
        elif not self.open_question_data and self.verdict.status is not Status.NON_ISOMORPHIC:
            bad.append("verdict")
        return bad

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "graph_x": self.graph_x.format(),
            "graph_y": self.graph_y.format(),
            "simple": [self.graph_x.is_simple(), self.graph_y.is_simple()],
            "undirected": [self.graph_x.is_undirected(), self.graph_y.is_undirected()],
            "isospectral": self.isospectral,
            "pairing_verified": self.pairing_verified,
            "distinct_eigenvalues": self.distinct_eigenvalues,
            "divisibility_verified": self.divisibility_verified,
            "verdict": self.verdict.to_json(),
            "open_question_data": self.open_question_data,
        }


def full_report(params: ConstructionParams, node_budget: int | None = None) -> ConstructionReport:
    """Build (or extend) the pair and run every check.

    For extended pairs with ``r > 2`` no general result settles isomorphism; the verdict
    then comes from the search and is marked ``open_question_data``.
    """
    open_question = params.extended and params.r > 2
    if node_budget is None:
        node_budget = OPEN_QUESTION_BUDGET if open_question else DEFAULT_NODE_BUDGET
    if params.extended:
        x, y = extend_pair(params)
        pairing = None
        multiples = 4
    else:
        x, y = build_pair(params)
        pairing = verify_pairing(x, y)
        multiples = 2
    return ConstructionReport(
        params=params,
        graph_x=x,
        graph_y=y,
        isospectral=isospectral(x, y),
        pairing_verified=pairing,
        distinct_eigenvalues=not has_repeated_eigenvalues(x) and not has_repeated_eigenvalues(y),
        divisibility_verified=verify_divisibility_split(x, y, params.p, multiples),
        verdict=decide_isomorphism(x, y, node_budget),
        open_question_data=open_question,
    )
