"""Exact arithmetic in the group ring Z[Z_n] and in Z[w], w a primitive n-th root of unity.

Elements of Z[Z_n] are stored in normal form: a length-``n`` vector whose entry ``i``
is the coefficient of ``z**i``.  The evaluation map ``z -> w`` is realised by reducing
``sum C_i x**i`` modulo the cyclotomic polynomial ``Phi_n``; the remainder (a vector of
length ``phi(n)``) is canonical, so equality in Z[w] is plain tuple equality.
"""

from __future__ import annotations

import cmath
import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from ._arith import divisors, prime_factors
from .errors import DomainError, PreconditionError, UnsupportedModulusError, UsageError

# int64 accumulations are used only while |result| provably stays below this.
_INT64_SAFE = 2**62


def _exact_divide(num: list[int], den: Sequence[int]) -> list[int]:
    """Divide ascending-coefficient integer polynomials; ``den`` must be monic and divide ``num``."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dd]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n`` in ascending order of degree (constant term first).

    ``Phi_n = (x**n - 1) / prod(Phi_d for d | n, d < n)``, computed by exact division.
    """
    if n < 1:
        raise UsageError(f"cyclotomic polynomial needs n >= 1, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _exact_divide(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@dataclass(frozen=True)
class _ResidueTable:
    rows: tuple[tuple[int, ...], ...]  # rows[k] = x**k mod Phi_n, k < n
    array: np.ndarray
    max_abs: int


@lru_cache(maxsize=None)
def _residue_table(n: int) -> _ResidueTable:
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    for k in range(n):
        if k < d:
            cur = [0] * d
            cur[k] = 1
        else:
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(d):
                    cur[j] -= lead * phi[j]
        rows.append(tuple(cur))
    max_abs = max(abs(c) for row in rows for c in row)
    dtype = np.int64 if max_abs < _INT64_SAFE else object
    arr = np.array(rows, dtype=dtype).reshape(n, d)
    arr.setflags(write=False)
    return _ResidueTable(tuple(rows), arr, max_abs)


def degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@dataclass(frozen=True)
class CyclotomicValue:
    """An element of Z[w] stored as its remainder modulo ``Phi_n``."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != degree(self.modulus):
            raise UsageError(
                f"Z[w] value for n={self.modulus} needs {degree(self.modulus)} coefficients, got {len(coeffs)}"
            )

    @classmethod
    def zero(cls, n: int) -> CyclotomicValue:
        return cls(n, (0,) * degree(n))

    @classmethod
    def constant(cls, n: int, c: int) -> CyclotomicValue:
        return reduce(GroupRingElement.unit(n, 0) * c)

    @classmethod
    def root_power(cls, n: int, k: int) -> CyclotomicValue:
        """The value ``w**k``."""
        return cls(n, _residue_table(n).rows[k % n])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other):
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        if other.modulus != self.modulus:
            raise UsageError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return CyclotomicValue(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return CyclotomicValue(self.modulus, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicValue(self.modulus, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicValue(self.modulus, tuple(other * a for a in self.coeffs))
        if self._check(other) is NotImplemented:
            return NotImplemented
        n = self.modulus
        # x**n == 1 modulo Phi_n, so fold the product cyclically before reducing.
        folded = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        folded[(i + j) % n] += a * b
        return reduce(GroupRingElement(n, tuple(folded)))

    __rmul__ = __mul__

    def evaluate(self, k: int = 1) -> complex:
        """Complex value under the embedding ``w -> exp(2*pi*i*k/n)``."""
        root = cmath.exp(2j * cmath.pi * k / self.modulus)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * root + c
        return acc

    def __str__(self):
        terms = [f"{c}*w^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class GroupRingElement:
    """An element ``sum C_i z**i`` of Z[Z_n] in normal form."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise UsageError(f"modulus must be positive, got {self.modulus}")
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.modulus:
            raise UsageError(f"normal form for n={self.modulus} needs {self.modulus} coefficients, got {len(coeffs)}")

    @classmethod
    def zero(cls, n: int) -> GroupRingElement:
        return cls(n, (0,) * n)

    @classmethod
    def unit(cls, n: int, k: int = 0) -> GroupRingElement:
        """The group element ``z**k``."""
        c = [0] * n
        c[k % n] = 1
        return cls(n, tuple(c))

    @classmethod
    def from_exponents(cls, n: int, exponents: Iterable[int]) -> GroupRingElement:
        """Sum of ``z**e`` over ``exponents``; repeats accumulate."""
        c = [0] * n
        for e in exponents:
            c[e % n] += 1
        return cls(n, tuple(c))

    def coeff(self, j: int) -> int:
        return self.coeffs[j % self.modulus]

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def _check(self, other):
        if other.modulus != self.modulus:
            raise UsageError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        return GroupRingElement(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        return GroupRingElement(self.modulus, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupRingElement(self.modulus, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.modulus, tuple(other * a for a in self.coeffs))
        if isinstance(other, GroupRingElement):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else f"z^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Cyclic convolution of normal forms."""
    if a.modulus != b.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    n = a.modulus
    out = [0] * n
    bnz = [(j, cb) for j, cb in enumerate(b.coeffs) if cb]
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in bnz:
                out[(i + j) % n] += ca * cb
    return GroupRingElement(n, tuple(out))


def reduce(a: GroupRingElement) -> CyclotomicValue:
    """Image of ``a`` under ``z -> w``, as a canonical remainder modulo ``Phi_n``."""
    table = _residue_table(a.modulus)
    acc = [0] * len(table.rows[0])
    for i, c in enumerate(a.coeffs):
        if c:
            for j, r in enumerate(table.rows[i]):
                if r:
                    acc[j] += c * r
    return CyclotomicValue(a.modulus, tuple(acc))


def reduce_exponent_sums(n: int, exponents: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Batched reduction of ``sum_k weights[k] * z**exponents[x, k]`` for every row ``x``.

    Returns an array with one remainder vector per row.  Falls back to Python
    integers whenever an int64 accumulation could overflow.
    """
    table = _residue_table(n)
    weights = np.asarray(weights)
    bound = table.max_abs * int(np.abs(weights).sum()) if len(weights) else 0
    if table.array.dtype == object or bound >= _INT64_SAFE:
        arr = table.array.astype(object)
        w = weights.astype(object)
    else:
        arr = table.array
        w = weights.astype(np.int64)
    return (arr[exponents % n] * w[None, :, None]).sum(axis=1)


def is_in_kernel(a: GroupRingElement) -> bool:
    return reduce(a).is_zero()


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup of order ``order`` in the cyclic group of order ``modulus``."""

    modulus: int
    order: int

    def __post_init__(self):
        if self.order < 1 or self.modulus % self.order:
            raise UsageError(f"subgroup order {self.order} does not divide {self.modulus}")

    @property
    def step(self) -> int:
        return self.modulus // self.order

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(0, self.modulus, self.step))

    def coset(self, g: int) -> tuple[int, ...]:
        g %= self.step
        return tuple(range(g, self.modulus, self.step))

    def cosets(self) -> list[tuple[int, ...]]:
        return [self.coset(g) for g in range(self.step)]


def sigma(h: Subgroup) -> GroupRingElement:
    """Sum of the elements of ``h``."""
    return GroupRingElement.from_exponents(h.modulus, h.elements)


def epsilon(a: GroupRingElement) -> int:
    return sum(a.coeffs)


def epsilon0(a: GroupRingElement) -> int:
    return sum(1 for c in a.coeffs if c)


def support(a: GroupRingElement) -> Counter:
    """Multiset of exponents, exponent ``i`` with multiplicity ``C_i``."""
    _require_nonnegative(a)
    return Counter({i: c for i, c in enumerate(a.coeffs) if c})


def _require_nonnegative(a: GroupRingElement) -> None:
    if not a.is_nonnegative():
        raise DomainError(f"element has a negative coefficient: {a}")


@dataclass(frozen=True)
class CosetCheck:
    """Outcome of a coset-constancy test; truthy iff the coefficients are coset-constant."""

    constant: bool
    nonnegative: bool

    def __bool__(self):
        return self.constant

    @property
    def in_natural_ideal(self) -> bool:
        """Membership in N[G]*sigma(H) rather than Z[G]*sigma(H)."""
        return self.constant and self.nonnegative


def is_coset_constant_multiple(a: GroupRingElement, h: Subgroup) -> CosetCheck:
    """Whether ``a`` lies in the ideal generated by ``sigma(h)`` (coefficients constant on cosets)."""
    if a.modulus != h.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {h.modulus}")
    constant = all(len({a.coeffs[i] for i in coset}) == 1 for coset in h.cosets())
    return CosetCheck(constant, a.is_nonnegative())


def _smallest_prime_subgroups(n: int) -> list[Subgroup]:
    return [Subgroup(n, p) for p, _ in prime_factors(n)] if n > 1 else []


def _cover(coeffs: tuple[int, ...], blocks: Sequence[tuple[int, ...]]) -> list[int] | None:
    """Write ``coeffs`` as a nonnegative sum of 0/1 indicator vectors from ``blocks``.

    Exhaustive: the lowest index still carrying weight must be covered by one of the
    blocks containing it, so branching on those blocks (in order) is complete.
    Returns the list of block indices used (with repetition) or ``None``.
    """
    n = len(coeffs)
    containing: list[list[int]] = [[] for _ in range(n)]
    for b, block in enumerate(blocks):
        for i in block:
            containing[i].append(b)
    dead: set[tuple[int, ...]] = set()
    chosen: list[int] = []

    def go(state: list[int]) -> bool:
        i = next((k for k, c in enumerate(state) if c), None)
        if i is None:
            return True
        key = tuple(state)
        if key in dead:
            return False
        for b in containing[i]:
            block = blocks[b]
            if all(state[k] >= 1 for k in block):
                for k in block:
                    state[k] -= 1
                chosen.append(b)
                if go(state):
                    return True
                chosen.pop()
                for k in block:
                    state[k] += 1
        dead.add(key)
        return False

    return list(chosen) if go(list(coeffs)) else None


@dataclass(frozen=True)
class KernelDecomposition:
    """``a = sum a_g z**g sigma(P_1) + sum b_g z**g sigma(P_2)`` keyed by smallest coset exponent."""

    modulus: int
    part1: dict[int, int] = field(default_factory=dict)
    part2: dict[int, int] = field(default_factory=dict)

    def reconstruct(self) -> GroupRingElement:
        n = self.modulus
        out = GroupRingElement.zero(n)
        for part, h in zip((self.part1, self.part2), _smallest_prime_subgroups(n)):
            s = sigma(h)
            for g, c in part.items():
                out = out + GroupRingElement.unit(n, g) * s * c
        return out


def decompose_kernel(a: GroupRingElement) -> KernelDecomposition | None:
    """Decompose a nonnegative element over the cosets of ``P_1`` and ``P_2``.

    ``P_i`` is the subgroup of prime order ``p_i`` (``p_1 < p_2`` the prime factors of
    ``n``).  The search is exhaustive and does not consult ``is_in_kernel``; for at
    most two prime factors a decomposition exists exactly when ``a`` maps to zero.
    """
    _require_nonnegative(a)
    n = a.modulus
    subgroups = _smallest_prime_subgroups(n)
    if len(subgroups) >= 3:
        raise UnsupportedModulusError(f"n={n} has {len(subgroups)} distinct prime factors; at most 2 supported")
    blocks: list[tuple[int, ...]] = []
    owner: list[int] = []
    for which, h in enumerate(subgroups):
        for coset in h.cosets():
            blocks.append(coset)
            owner.append(which)
    used = _cover(a.coeffs, blocks)
    if used is None:
        return None
    parts: list[dict[int, int]] = [{}, {}]
    for b in used:
        rep = blocks[b][0]
        parts[owner[b]][rep] = parts[owner[b]].get(rep, 0) + 1
    return KernelDecomposition(n, dict(sorted(parts[0].items())), dict(sorted(parts[1].items())))


def in_restricted_span(a: GroupRingElement) -> bool:
    """Membership in ``N P_1 sigma(P_2) + N P_2 sigma(P_1)`` (or ``N sigma(P_1)`` for prime powers).

    Only translates of ``sigma(P_2)`` by elements of ``P_1`` (and vice versa) are
    allowed, which is strictly smaller than the full kernel cone for some ``n``
    (e.g. ``z + z^5 + z^9`` at ``n = 12``).
    """
    _require_nonnegative(a)
    n = a.modulus
    subgroups = _smallest_prime_subgroups(n)
    if len(subgroups) >= 3:
        raise UnsupportedModulusError(f"n={n} has {len(subgroups)} distinct prime factors; at most 2 supported")
    if not subgroups:
        return not any(a.coeffs)
    if len(subgroups) == 1:
        blocks = [subgroups[0].elements]
    else:
        p1, p2 = subgroups
        blocks = [p2.coset(h) for h in p1.elements] + [p1.coset(h) for h in p2.elements]
        blocks = list(dict.fromkeys(blocks))
    return _cover(a.coeffs, blocks) is not None


class ImageClass(enum.Enum):
    EQUAL = "Equal"
    BOTH_COSET_SUMS = "BothCosetSums"
    NEITHER = "NeitherCaseApplies"


def criterion(n: int, m: int) -> bool:
    """``p_1 >= m`` and (``n`` a prime power or ``p_2 > p_1 (m - 1)``)."""
    primes = [p for p, _ in prime_factors(n)]
    if not primes:
        return False
    if primes[0] < m:
        return False
    return len(primes) == 1 or primes[1] > primes[0] * (m - 1)


def classify_equal_image(a: GroupRingElement, b: GroupRingElement) -> ImageClass:
    """Classify two nonnegative elements of equal augmentation and equal image.

    Under ``p_1 >= m`` and (``s = 1`` or ``p_2 > p_1 (m - 1)``) the two must either
    coincide or both be translates of ``sigma(P_1)``.  The second case is checked
    constructively; ``NEITHER`` is returned rather than raised so callers can detect
    a violation.
    """
    if a.modulus != b.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if not (a.is_nonnegative() and b.is_nonnegative()):
        raise PreconditionError("coefficients must be nonnegative")
    n = a.modulus
    m = epsilon(a)
    if epsilon(b) != m:
        raise PreconditionError(f"augmentations differ: {m} vs {epsilon(b)}")
    if reduce(a) != reduce(b):
        raise PreconditionError("images under z -> w differ")
    primes = [p for p, _ in prime_factors(n)]
    if not primes:
        raise PreconditionError("n = 1 has no prime factors")
    if primes[0] < m:
        raise PreconditionError(f"p_1 >= m fails: p_1={primes[0]}, m={m}")
    if len(primes) > 1 and not primes[1] > primes[0] * (m - 1):
        raise PreconditionError(f"p_2 > p_1(m-1) fails: {primes[1]} <= {primes[0] * (m - 1)}")

    if a == b:
        return ImageClass.EQUAL
    s1 = sigma(Subgroup(n, primes[0]))

    def is_translate(x: GroupRingElement) -> bool:
        g = next(i for i, c in enumerate(x.coeffs) if c)
        return GroupRingElement.unit(n, g) * s1 == x

    if m == primes[0] and is_translate(a) and is_translate(b):
        return ImageClass.BOTH_COSET_SUMS
    return ImageClass.NEITHER
