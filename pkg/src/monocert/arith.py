"""Integer arithmetic base layer: valuations, factorization, Bezout, irreducible counts.

Everything here is exact big-integer arithmetic.  Randomized steps (rho
splitting) draw from an explicit seed so results are reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

_TRIAL_BOUND = 10**6

# Strong-pseudoprime bases proving primality below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROOF_BOUND = 3_317_044_064_679_887_385_961_981


class CapExceeded:
    """Marker returned when a valuation is known only to exceed a cap."""

    __slots__ = ("cap",)

    def __init__(self, cap: int):
        self.cap = cap

    def __repr__(self) -> str:
        return f"CapExceeded(cap={self.cap})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CapExceeded) and other.cap == self.cap

    def __hash__(self) -> int:
        return hash(("CapExceeded", self.cap))


@dataclass(frozen=True)
class IntFactorization:
    """Complete factorization of a nonzero integer, primes ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    @property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def reconstruct(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3e24, strong-base test above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n < _MR_PROOF_BOUND:
        return True
    # Past the proven range: extra pseudo-random witnesses (sizes this large
    # do not occur in the intended workloads).
    rng = random.Random(n)
    for _ in range(40):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def padic_valuation(p: int, m: int) -> int:
    """Largest k with p**k dividing m."""
    if m == 0:
        raise ValueError("valuation of zero undefined")
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def nu_stable(p: int, m: int, cap: int = 64) -> int | CapExceeded:
    """nu_p(m**(p-1) - 1) for odd p not dividing m, without forming m**(p-1).

    Tests m**(p-1) == 1 mod p**k at increasing k via modular exponentiation.
    Returns CapExceeded(cap) as soon as the valuation is known to exceed cap.
    """
    if p == 2:
        raise ValueError("p must be an odd prime")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if cap < 1:
        raise ValueError("cap must be positive")
    if m % p == 0:
        raise ValueError(f"{p} divides {m}")
    nu = 0
    for k in range(1, cap + 2):
        if pow(m, p - 1, p**k) != 1:
            return nu
        nu = k
    return CapExceeded(cap)


def _pollard_rho(n: int, rng: random.Random) -> int:
    """Brent-cycle rho: some nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, seed: int = 0) -> IntFactorization:
    """Complete factorization: trial division below 1e6, then seeded rho."""
    if n == 0:
        raise ValueError("cannot factorize zero")
    value = n
    n = abs(n)
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    # 2,3,5-wheel trial division.
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    d, i = 7, 0
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        t = stack.pop()
        if t == 1:
            continue
        if is_prime(t):
            counts[t] = counts.get(t, 0) + 1
            continue
        root = math.isqrt(t)
        if root * root == t:
            stack += [root, root]
            continue
        g = _pollard_rho(t, rng)
        stack += [g, t // g]
    factors = tuple(sorted(counts.items()))
    assert all(is_prime(p) for p, _ in factors)
    result = IntFactorization(value, factors)
    assert result.reconstruct() == value
    return result


def is_squarefree(a: int, seed: int = 0) -> bool:
    """True iff no prime square divides a; requires |a| >= 2."""
    if abs(a) < 2:
        raise ValueError("|a| >= 2 required")
    return factorize(a, seed).is_squarefree


def bezout_positive(u: int, n: int) -> tuple[int, int]:
    """Minimal (t, s) with u*t - n*s == 1, 1 <= t <= n, for coprime u, n."""
    if u < 1 or n < 1:
        raise ValueError("u and n must be positive")
    if math.gcd(u, n) != 1:
        raise ValueError(f"gcd({u}, {n}) != 1")
    t = pow(u, -1, n) if n > 1 else 1
    if t == 0:
        t = 1
    s = (u * t - 1) // n
    return t, s


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    mu = 1
    for _, e in factorize(n).factors:
        if e > 1:
            return 0
        mu = -mu
    return mu


def count_irreducibles(p: int, d: int) -> int:
    """Number of monic irreducible degree-d polynomials over F_p (necklace formula)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError("d must be positive")
    total = sum(_mobius(d // e) * p**e for e in range(1, d + 1) if d % e == 0)
    return total // d
