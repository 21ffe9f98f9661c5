"""Exhaustive check that isospectral circulant graphs are isomorphic.

Every connection (multi)set of a given size is enumerated, graphs are bucketed by
spectrum, and within each bucket isomorphism classes are built with a union-find
keyed on verified witnesses.  When ``p_1 >= m`` and (``n`` a prime power or
``p_2 > p_1 (m - 1)``) every bucket should collapse to a single class.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from . import _arith, cyclotomic
from .errors import ResourceError, UsageError
from .graph import CirculantGraph, ConnectionMultiset, spectrum
from .isomorphism import DEFAULT_NODE_BUDGET, Status, decide_isomorphism

DEFAULT_ENUMERATION_BUDGET = 2_000_000
THREADS_ENV = "CIRC_SPECTRA_THREADS"


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def s(self) -> int:
        return len(self.factors)


def factorize(n: int) -> Factorization:
    if n < 2:
        raise UsageError(f"factorize needs n >= 2, got {n}")
    return Factorization(n, _arith.prime_factors(n))


def criterion_holds(n: int, m: int) -> bool:
    if n < 2 or m < 1:
        raise UsageError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    return cyclotomic.criterion(n, m)


def enumeration_count(n: int, m: int, allow_multisets: bool) -> int:
    return math.comb(n - 1 + m - 1, m) if allow_multisets else math.comb(n - 1, m)


def enumerate_connection_sets(
    n: int, m: int, allow_multisets: bool = False, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[ConnectionMultiset]:
    """All size-``m`` subsets (or multisets) of ``1..n-1`` in lexicographic order."""
    if n < 2 or m < 1:
        raise UsageError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    count = enumeration_count(n, m, allow_multisets)
    if count > budget:
        raise ResourceError(f"enumeration of {count} connection sets exceeds budget {budget}")
    combos = itertools.combinations_with_replacement if allow_multisets else itertools.combinations
    for combo in combos(range(1, n), m):
        yield ConnectionMultiset.from_values(n, combo)


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


@dataclass
class CharacterizationReport:
    n: int
    m: int
    allow_multisets: bool
    criterion_holds: bool
    graphs_enumerated: int = 0
    buckets_examined: int = 0
    isospectral_pairs: int = 0
    decisions: int = 0
    counterexamples: list[tuple[ConnectionMultiset, ConnectionMultiset]] = field(default_factory=list)
    unknown_pairs: list[tuple[ConnectionMultiset, ConnectionMultiset]] = field(default_factory=list)

    @property
    def all_isomorphic(self) -> bool:
        return not self.counterexamples and not self.unknown_pairs

    def violates_criterion(self) -> bool:
        """Criterion holds, nothing undecided, yet a counterexample was found."""
        return self.criterion_holds and not self.unknown_pairs and bool(self.counterexamples)

    def to_json(self) -> dict:
        def pair(p):
            return [str(p[0]), str(p[1])]

        return {
            "n": self.n,
            "m": self.m,
            "allow_multisets": self.allow_multisets,
            "criterion_holds": self.criterion_holds,
            "graphs_enumerated": self.graphs_enumerated,
            "buckets_examined": self.buckets_examined,
            "isospectral_pairs": self.isospectral_pairs,
            "decisions": self.decisions,
            "all_isomorphic": self.all_isomorphic,
            "counterexamples": [pair(p) for p in self.counterexamples],
            "unknown_pairs": [pair(p) for p in self.unknown_pairs],
        }


def _sort_key(s: ConnectionMultiset):
    return s.values()


def _ordered(a: ConnectionMultiset, b: ConnectionMultiset):
    return (a, b) if _sort_key(a) <= _sort_key(b) else (b, a)


def bucket_by_spectrum(graphs: list[CirculantGraph]) -> dict[bytes, list[CirculantGraph]]:
    workers = worker_count()
    if workers > 1 and len(graphs) > 256:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            keys = list(pool.map(lambda g: spectrum(g).canonical_key, graphs, chunksize=64))
    else:
        keys = [spectrum(g).canonical_key for g in graphs]
    buckets: dict[bytes, list[CirculantGraph]] = defaultdict(list)
    for key, g in zip(keys, graphs):
        buckets[key].append(g)
    return dict(sorted(buckets.items()))


def verify_characterization(
    n: int,
    m: int,
    allow_multisets: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> CharacterizationReport:
    report = CharacterizationReport(n, m, allow_multisets, criterion_holds(n, m))
    graphs = [CirculantGraph(n, s) for s in enumerate_connection_sets(n, m, allow_multisets, enumeration_budget)]
    report.graphs_enumerated = len(graphs)

    for bucket in bucket_by_spectrum(graphs).values():
        if len(bucket) < 2:
            continue
        report.buckets_examined += 1
        report.isospectral_pairs += math.comb(len(bucket), 2)
        # One representative per isomorphism class; a graph isomorphic to any member
        # of a class is isomorphic to its representative, so only those are compared.
        classes: list[list[CirculantGraph]] = []
        verdicts: dict[tuple[int, int], Status] = {}
        for g in bucket:
            home = None
            pending: dict[int, Status] = {}
            for ci, members in enumerate(classes):
                verdict = decide_isomorphism(members[0], g, node_budget)
                report.decisions += 1
                if verdict.status is Status.ISOMORPHIC:
                    if not verdict.verify(members[0], g):
                        raise AssertionError(f"witness failed to verify for {members[0]} vs {g}")
                    home = ci
                    break
                pending[ci] = verdict.status
            if home is not None:
                classes[home].append(g)
                continue
            new = len(classes)
            classes.append([g])
            for ci, status in pending.items():
                verdicts[(ci, new)] = status

        for (ci, cj), status in verdicts.items():
            if status is Status.NON_ISOMORPHIC:
                for a in classes[ci]:
                    for b in classes[cj]:
                        report.counterexamples.append(_ordered(a.connections, b.connections))
            else:
                report.unknown_pairs.append(_ordered(classes[ci][0].connections, classes[cj][0].connections))

    def pair_key(p):
        return (_sort_key(p[0]), _sort_key(p[1]))

    report.counterexamples.sort(key=pair_key)
    report.unknown_pairs.sort(key=pair_key)
    return report
