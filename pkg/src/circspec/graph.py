"""Circulant (multi)graphs Cay(Z_n, S) and their exact spectra.

Graphs are directed by default: an edge ``i -> i + s`` for every ``s`` in the
connection multiset, repeated by multiplicity.  Eigenvalue ``x`` is
``sum_s w**(x*s)`` reduced modulo ``Phi_n``.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .cyclotomic import CyclotomicValue, reduce_exponent_sums
from .errors import GraphParseError, ResourceError, UsageError

DEFAULT_MATRIX_BOUND = 4096


@dataclass(frozen=True)
class ConnectionMultiset:
    """Sorted ``(exponent, multiplicity)`` pairs with exponents in ``1..n-1``."""

    modulus: int
    elements: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise UsageError(f"modulus must be positive, got {self.modulus}")
        prev = 0
        for e, mult in self.elements:
            if not 0 < e < self.modulus:
                raise UsageError(f"connection element {e} outside 1..{self.modulus - 1}")
            if e <= prev:
                raise UsageError("connection elements must be strictly increasing")
            if mult < 1:
                raise UsageError(f"multiplicity of {e} must be >= 1")
            prev = e

    @classmethod
    def from_values(cls, n: int, values: Iterable[int]) -> ConnectionMultiset:
        counts = Counter(v % n for v in values)
        if counts.get(0):
            raise UsageError("0 cannot be in a connection set")
        return cls(n, tuple(sorted(counts.items())))

    @property
    def size(self) -> int:
        return sum(m for _, m in self.elements)

    def values(self) -> list[int]:
        """Elements listed with repetition, ascending."""
        return [e for e, m in self.elements for _ in range(m)]

    def multiplicity(self, e: int) -> int:
        return dict(self.elements).get(e % self.modulus, 0)

    def scaled(self, q: int) -> ConnectionMultiset:
        return ConnectionMultiset.from_values(self.modulus, (q * v for v in self.values()))

    def __str__(self):
        return ",".join(f"{e}*{m}" if m > 1 else str(e) for e, m in self.elements)


@dataclass(frozen=True)
class CirculantGraph:
    modulus: int
    connections: ConnectionMultiset

    def __post_init__(self):
        if self.connections.modulus != self.modulus:
            raise UsageError("connection multiset has a different modulus")

    @classmethod
    def from_values(cls, n: int, values: Iterable[int]) -> CirculantGraph:
        return cls(n, ConnectionMultiset.from_values(n, values))

    @property
    def n(self) -> int:
        return self.modulus

    @property
    def m(self) -> int:
        return self.connections.size

    def is_undirected(self) -> bool:
        return self.connections == self.connections.scaled(-1)

    def is_simple(self) -> bool:
        return all(mult == 1 for _, mult in self.connections.elements)

    def format(self) -> str:
        return f"{self.modulus}:{self.connections}"

    def __str__(self):
        return self.format()


def parse_graph(text: str) -> CirculantGraph:
    """Parse ``<n>:<e1[*m1]>,<e2[*m2]>,...`` (e.g. ``12:1,5,11`` or ``12:3*2,9``)."""
    head, sep, body = text.partition(":")
    if not sep:
        raise GraphParseError("missing ':'", text, len(text))
    try:
        n = int(head)
    except ValueError:
        raise GraphParseError("modulus is not an integer", text, 0) from None
    if n < 2:
        raise GraphParseError(f"modulus must be >= 2, got {n}", text, 0)
    values: list[int] = []
    pos = len(head) + 1
    if body.strip():
        for item in body.split(","):
            elem, star, mult_text = item.partition("*")
            try:
                e = int(elem)
            except ValueError:
                raise GraphParseError(f"bad element {elem.strip()!r}", text, pos) from None
            mult = 1
            if star:
                try:
                    mult = int(mult_text)
                except ValueError:
                    raise GraphParseError(f"bad multiplicity {mult_text.strip()!r}", text, pos + len(elem) + 1) from None
                if mult < 1:
                    raise GraphParseError("multiplicity must be >= 1", text, pos + len(elem) + 1)
            if e % n == 0:
                raise GraphParseError(f"element {e} is 0 mod {n}", text, pos)
            values.extend([e] * mult)
            pos += len(item) + 1
    return CirculantGraph.from_values(n, values)


def format_graph(g: CirculantGraph) -> str:
    return g.format()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues indexed by ``x`` in ``0..n-1`` plus a multiset fingerprint."""

    modulus: int
    eigenvalues: tuple[CyclotomicValue, ...]
    canonical_key: bytes

    def sorted_vectors(self) -> list[tuple[int, ...]]:
        return sorted(ev.coeffs for ev in self.eigenvalues)

    def to_json(self) -> dict:
        return {
            "n": self.modulus,
            "eigenvalues": [list(ev.coeffs) for ev in self.eigenvalues],
            "canonical_key": self.canonical_key.hex(),
        }


def encode_canonical_key(n: int, vectors: list[tuple[int, ...]]) -> bytes:
    """Header (n as 4-byte LE, coefficient width) then each sorted vector, fixed-width LE signed."""
    vectors = sorted(vectors)
    biggest = max((abs(c) for v in vectors for c in v), default=0)
    width = 8
    while biggest >= 2 ** (8 * width - 1):
        width *= 2
    header = n.to_bytes(4, "little") + bytes([width])
    if width == 8:
        return header + np.array(vectors, dtype="<i8").tobytes()
    return header + b"".join(c.to_bytes(width, "little", signed=True) for v in vectors for c in v)


@lru_cache(maxsize=8192)
def spectrum(g: CirculantGraph) -> Spectrum:
    n = g.modulus
    exps = np.array([e for e, _ in g.connections.elements], dtype=np.int64)
    mults = np.array([m for _, m in g.connections.elements], dtype=np.int64)
    grid = np.outer(np.arange(n, dtype=np.int64), exps) % n
    rows = reduce_exponent_sums(n, grid, mults)
    eig = tuple(CyclotomicValue(n, tuple(row)) for row in rows.tolist())
    return Spectrum(n, eig, encode_canonical_key(n, [ev.coeffs for ev in eig]))


def isospectral(g1: CirculantGraph, g2: CirculantGraph) -> bool:
    if g1.modulus != g2.modulus:
        return False
    return spectrum(g1).canonical_key == spectrum(g2).canonical_key


def has_repeated_eigenvalues(g: CirculantGraph) -> bool:
    vecs = spectrum(g).sorted_vectors()
    return any(a == b for a, b in zip(vecs, vecs[1:]))


def adjacency_matrix(g: CirculantGraph, max_order: int = DEFAULT_MATRIX_BOUND) -> np.ndarray:
    """Entry ``(i, j)`` is the multiplicity of ``j - i`` in the connection multiset."""
    n = g.modulus
    if n > max_order:
        raise ResourceError(f"adjacency matrix of order {n} exceeds bound {max_order}")
    row = np.zeros(n, dtype=np.int64)
    for e, mult in g.connections.elements:
        row[e] = mult
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def numeric_spectrum_crosscheck(g: CirculantGraph, tolerance: float = 1e-9) -> bool:
    """Compare each exact eigenvalue, evaluated at ``exp(2 pi i / n)``, with a direct float sum."""
    if not tolerance > 0:
        raise UsageError("tolerance must be positive")
    return max_crosscheck_deviation(g) < tolerance


def max_crosscheck_deviation(g: CirculantGraph) -> float:
    n = g.modulus
    worst = 0.0
    for x, ev in enumerate(spectrum(g).eigenvalues):
        direct = sum(mult * cmath.exp(2j * cmath.pi * ((x * e) % n) / n) for e, mult in g.connections.elements)
        worst = max(worst, abs(ev.evaluate() - direct))
    return worst
