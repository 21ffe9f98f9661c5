from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == ((n, 1),)


def totient(n: int) -> int:
    t = n
    for p, _ in prime_factors(n):
        t = t // p * (p - 1)
    return t


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_square_free(n: int) -> bool:
    return all(e == 1 for _, e in prime_factors(n))


def units(n: int) -> list[int]:
    """Residues in ``1..n-1`` coprime to ``n`` (``[0]`` for ``n == 1``)."""
    if n == 1:
        return [0]
    return [q for q in range(1, n) if gcd(q, n) == 1]
