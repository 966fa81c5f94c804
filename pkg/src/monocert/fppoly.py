"""Polynomial arithmetic and factorization over F_p and extensions F_p[x]/(phi).

Moduli are primes below 2**31; extension elements are residues modulo a monic
irreducible polynomial.  A single generic engine (squarefree decomposition,
distinct-degree, seeded equal-degree splitting) factors polynomials whose
coefficients live in either kind of field, so the residual-polynomial code can
reuse exactly the machinery that factors integer polynomials mod p.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import arith

_MAX_MODULUS = 2**31


@functools.lru_cache(maxsize=None)
def _check_modulus(p: int) -> None:
    if p >= _MAX_MODULUS:
        raise ValueError(f"modulus {p} exceeds the 2^31 safety threshold")
    if not arith.is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def _fmt_poly(coeffs: Sequence, var: str = "x") -> str:
    if not coeffs:
        return "0"
    out = ""
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = f"{mag}"
        else:
            head = "" if mag == 1 else f"{mag}"
            body = f"{head}{var}" if i == 1 else f"{head}{var}^{i}"
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out or "0"


class FpPoly:
    """Dense polynomial over F_p; coefficients reduced, no trailing zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        _check_modulus(p)
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("FpPoly is immutable")

    @classmethod
    def zero(cls, p: int) -> "FpPoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "FpPoly":
        return cls(p, (1,))

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls(p, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _same(self, other: "FpPoly") -> None:
        if not isinstance(other, FpPoly):
            raise TypeError(f"expected FpPoly, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"modulus mismatch: {self.p} != {other.p}")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        return FpPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        return FpPoly(self.p, [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._same(other)
        if self.is_zero or other.is_zero:
            return FpPoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(self.p, out)

    def scale(self, c: int) -> "FpPoly":
        return FpPoly(self.p, [c * a for a in self.coeffs])

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._same(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dv = other.coeffs
        dq = len(rem) - len(dv)
        if dq < 0:
            return FpPoly.zero(p), self
        inv_lc = pow(dv[-1], -1, p)
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(dv) - 1] * inv_lc % p
            if c:
                quot[k] = c
                for j, d in enumerate(dv):
                    rem[k + j] = (rem[k + j] - c * d) % p
        return FpPoly(p, quot), FpPoly(p, rem[: len(dv) - 1])

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "FpPoly":
        if e < 0:
            raise ValueError("negative power")
        out, base = FpPoly.one(self.p), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def pow_mod(self, e: int, mod: "FpPoly") -> "FpPoly":
        """self**e reduced modulo mod, by square and multiply."""
        self._same(mod)
        if e < 0:
            raise ValueError("negative power")
        out, base = FpPoly.one(self.p) % mod, self % mod
        while e:
            if e & 1:
                out = out * base % mod
            base = base * base % mod
            e >>= 1
        return out

    def monic(self) -> "FpPoly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def derivative(self) -> "FpPoly":
        return FpPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FpPoly) and other.p == self.p and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"FpPoly({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return f"{_fmt_poly(self.coeffs)} (mod {self.p})"


def gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic greatest common divisor."""
    a._same(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def xgcd(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly, FpPoly]:
    """(g, s, t) with g = s*a + t*b, g monic."""
    a._same(b)
    p = a.p
    r0, r1 = a, b
    s0, s1 = FpPoly.one(p), FpPoly.zero(p)
    t0, t1 = FpPoly.zero(p), FpPoly.one(p)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    c = pow(r0.lc, -1, p)
    return r0.scale(c), s0.scale(c), t0.scale(c)


class FqElement:
    """Element of F_p[x]/(phi) for monic irreducible phi, stored as a reduced residue."""

    __slots__ = ("base", "rep")

    def __init__(self, base: FpPoly, rep: FpPoly):
        if not base.is_monic or base.degree < 1:
            raise ValueError("base must be monic of degree >= 1")
        rep._same(base)
        if rep.degree >= base.degree:
            rep = rep % base
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *a):
        raise AttributeError("FqElement is immutable")

    @classmethod
    def from_int(cls, base: FpPoly, c: int) -> "FqElement":
        return cls(base, FpPoly(base.p, (c,)))

    @classmethod
    def zero(cls, base: FpPoly) -> "FqElement":
        return cls.from_int(base, 0)

    @classmethod
    def one(cls, base: FpPoly) -> "FqElement":
        return cls.from_int(base, 1)

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def _same(self, other: "FqElement") -> None:
        if not isinstance(other, FqElement):
            raise TypeError(f"expected FqElement, got {type(other).__name__}")
        if other.base != self.base:
            raise ValueError("extension base mismatch")

    def __add__(self, other: "FqElement") -> "FqElement":
        self._same(other)
        return FqElement(self.base, self.rep + other.rep)

    def __sub__(self, other: "FqElement") -> "FqElement":
        self._same(other)
        return FqElement(self.base, self.rep - other.rep)

    def __neg__(self) -> "FqElement":
        return FqElement(self.base, -self.rep)

    def __mul__(self, other: "FqElement") -> "FqElement":
        self._same(other)
        return FqElement(self.base, self.rep * other.rep % self.base)

    def inverse(self) -> "FqElement":
        if self.is_zero:
            raise ZeroDivisionError("inverting zero field element")
        g, s, _ = xgcd(self.rep, self.base)
        if g.degree != 0:
            raise ValueError("base is not irreducible: residue has no inverse")
        return FqElement(self.base, s.scale(pow(g.coeffs[0], -1, self.base.p)))

    def __truediv__(self, other: "FqElement") -> "FqElement":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FqElement":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = FqElement.one(self.base), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FqElement) and other.base == self.base and other.rep == self.rep

    def __hash__(self) -> int:
        return hash((self.base, self.rep))

    def __repr__(self) -> str:
        return f"FqElement({_fmt_poly(self.rep.coeffs)} mod ({_fmt_poly(self.base.coeffs)}, {self.base.p}))"


# ---------------------------------------------------------------------------
# Generic field backends for the factorization engine.


class _PrimeField:
    """F_p with plain int elements."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1

    char = property(lambda self: self.p)
    order = property(lambda self: self.p)
    ext_degree = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def from_int(self, k: int):
        return k % self.p

    def rand(self, rng: random.Random):
        return rng.randrange(self.p)

    def sort_key(self, a):
        return a


class _ExtField:
    """F_p[x]/(phi) with FqElement elements."""

    __slots__ = ("base", "zero", "one")

    def __init__(self, base: FpPoly):
        self.base = base
        self.zero = FqElement.zero(base)
        self.one = FqElement.one(base)

    @property
    def char(self) -> int:
        return self.base.p

    @property
    def order(self) -> int:
        return self.base.p ** self.base.degree

    @property
    def ext_degree(self) -> int:
        return self.base.degree

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def from_int(self, k: int):
        return FqElement.from_int(self.base, k)

    def rand(self, rng: random.Random):
        return FqElement(self.base, FpPoly(self.base.p, [rng.randrange(self.base.p) for _ in range(self.base.degree)]))

    def sort_key(self, a):
        return a.rep.coeffs


# Generic dense polynomials over a field backend: plain lists, ascending
# coefficients, trimmed, [] is zero.


def _trim(K, f):
    while f and f[-1] == K.zero:
        f.pop()
    return f


def _padd(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.add(a, b))
    return _trim(K, out)


def _psub(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.sub(a, b))
    return _trim(K, out)


def _pmul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _trim(K, out)


def _pscale(K, f, c):
    return _trim(K, [K.mul(a, c) for a in f])


def _pdivmod(K, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    if len(rem) < len(g):
        return [], rem
    inv_lc = K.inv(g[-1])
    quot = [K.zero] * (len(rem) - len(g) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = K.mul(rem[k + len(g) - 1], inv_lc)
        if c == K.zero:
            continue
        quot[k] = c
        for j, d in enumerate(g):
            rem[k + j] = K.sub(rem[k + j], K.mul(c, d))
    return _trim(K, quot), _trim(K, rem[: len(g) - 1])


def _pmod(K, f, g):
    return _pdivmod(K, f, g)[1]


def _pmonic(K, f):
    if not f or f[-1] == K.one:
        return list(f)
    return _pscale(K, f, K.inv(f[-1]))


def _pgcd(K, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(K, f, g)
    return _pmonic(K, f)


def _ppow_mod(K, f, e, mod):
    out = _pmod(K, [K.one], mod)
    base = _pmod(K, list(f), mod)
    while e:
        if e & 1:
            out = _pmod(K, _pmul(K, out, base), mod)
        base = _pmod(K, _pmul(K, base, base), mod)
        e >>= 1
    return out


def _pderiv(K, f):
    return _trim(K, [K.mul(c, K.from_int(i)) for i, c in enumerate(f)][1:])


def _pth_root(K, f):
    # inverse Frobenius on coefficients: c -> c**(order/char)
    p = K.char
    e = K.order // p
    root = []
    for i in range(0, len(f), p):
        c = f[i]
        if e > 1:
            acc = K.one
            b, k = c, e
            while k:
                if k & 1:
                    acc = K.mul(acc, b)
                b = K.mul(b, b)
                k >>= 1
            c = acc
        root.append(c)
    return _trim(K, root)


def _distinct_degree(K, f):
    """[(product of irreducible factors of degree d, d)] for squarefree monic f."""
    out = []
    q = K.order
    x = [K.zero, K.one]
    h = list(x)
    d = 1
    while len(f) - 1 >= 2 * d:
        h = _ppow_mod(K, h, q, f)
        g = _pgcd(K, _psub(K, h, x), f)
        if len(g) > 1:
            out.append((g, d))
            f = _pdivmod(K, f, g)[0]
            h = _pmod(K, h, f)
        d += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(K, f, d, rng):
    """Split squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = K.order
    while True:
        a = _trim(K, [K.rand(rng) for _ in range(n)])
        if len(a) < 1:
            continue
        g = _pgcd(K, a, f)
        if 1 < len(g) < len(f):
            break
        if K.char == 2:
            # trace map into F_2: sum of a**(2**i) over the F_2-degree of F_{q^d}
            t = _pmod(K, a, f)
            acc = list(t)
            for _ in range(K.ext_degree * d - 1):
                t = _pmod(K, _pmul(K, t, t), f)
                acc = _padd(K, acc, t)
            g = _pgcd(K, acc, f)
        else:
            b = _ppow_mod(K, a, (q**d - 1) // 2, f)
            g = _pgcd(K, _psub(K, b, [K.one]), f)
        if 1 < len(g) < len(f):
            break
    other = _pdivmod(K, f, g)[0]
    return _equal_degree(K, g, d, rng) + _equal_degree(K, other, d, rng)


def _factor_list(K, f, rng):
    """[(monic irreducible, multiplicity)], canonically sorted."""
    found = []
    parts = []
    # inline squarefree decomposition (see _squarefree_parts; kept here so the
    # accumulated parts are returned)
    p = K.char
    n = 1
    g = _pmonic(K, f)
    while len(g) > 1:
        dg = _pderiv(K, g)
        if dg:
            w = _pgcd(K, g, dg)
            h = _pdivmod(K, g, w)[0]
            i = 1
            while len(h) > 1:
                wh = _pgcd(K, w, h)
                z = _pdivmod(K, h, wh)[0]
                if len(z) > 1:
                    parts.append((z, i * n))
                w = _pdivmod(K, w, wh)[0]
                h = wh
                i += 1
            if len(w) == 1:
                break
            g = w
        g = _pth_root(K, g)
        n *= p
    for part, mult in parts:
        for prod, d in _distinct_degree(K, part):
            for irr in _equal_degree(K, prod, d, rng):
                found.append((irr, mult))
    found.sort(key=lambda fm: (len(fm[0]), [K.sort_key(c) for c in fm[0]]))
    return found


# ---------------------------------------------------------------------------
# Public operations.


@dataclass(frozen=True)
class FactorMultiset:
    """Sorted irreducible factors with multiplicities; unit * product == input."""

    unit: int
    factors: tuple[tuple[FpPoly, int], ...]

    def product(self, p: int) -> FpPoly:
        out = FpPoly(p, (self.unit,))
        for f, e in self.factors:
            out = out * f**e
        return out

    def count_of_degree(self, d: int) -> int:
        return sum(1 for f, _ in self.factors if f.degree == d)


def factor(f: FpPoly, seed: int = 0) -> FactorMultiset:
    """Factor nonzero f into monic irreducibles; deterministic for fixed seed."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return FactorMultiset(f.lc, ())
    K = _PrimeField(f.p)
    rng = random.Random(seed)
    pairs = _factor_list(K, list(f.coeffs), rng)
    factors = tuple((FpPoly(f.p, cs), m) for cs, m in pairs)
    return FactorMultiset(f.lc, factors)


def is_separable(f: FpPoly) -> bool:
    """True iff gcd(f, f') = 1."""
    if f.is_zero:
        raise ValueError("separability of zero undefined")
    return gcd(f, f.derivative()).degree == 0


def is_irreducible(f: FpPoly) -> bool:
    """Rabin irreducibility test for monic f of degree >= 1."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    x = FpPoly.x(p)
    if x.pow_mod(p**n, f) != x % f:
        return False
    for ell in {q for q, _ in arith.factorize(n).factors}:
        h = x.pow_mod(p ** (n // ell), f) - x
        if gcd(h, f).degree != 0:
            return False
    return True


def count_degree_d_factors(p: int, d: int, u: int, m: int) -> int:
    """Distinct monic irreducible degree-d factors of x^u - (m mod p) over F_p.

    Counts roots of x^u = m in the multiplicative groups of F_{p^e} for e | d
    and sieves down to roots of exact degree d, so u may be astronomically
    large without any polynomial being materialized.
    """
    _check_modulus(p)
    if d < 1 or u < 1:
        raise ValueError("d and u must be positive")
    mbar = m % p
    if mbar == 0:
        # x^u - m reduces to x^u; the only irreducible factor is x
        return 1 if d == 1 else 0
    # distinct factors are unchanged when stripping p-th powers from u
    while u % p == 0:
        u //= p

    def roots_in(e: int) -> int:
        group = p**e - 1
        g = math.gcd(u, group)
        return g if pow(mbar, group // g, p) == 1 else 0

    exact: dict[int, int] = {}
    for e in sorted(k for k in range(1, d + 1) if d % k == 0):
        exact[e] = roots_in(e) - sum(exact[k] for k in exact if e % k == 0 and k < e)
    count, rem = divmod(exact[d], d)
    assert rem == 0
    return count


def fq_is_separable(coeffs: Sequence[FqElement]) -> bool:
    """Separability of a polynomial with F_q coefficients (gcd with derivative)."""
    cs = list(coeffs)
    if not cs:
        raise ValueError("separability of zero undefined")
    K = _ExtField(cs[0].base)
    f = _trim(K, cs)
    if not f:
        raise ValueError("separability of zero undefined")
    return len(_pgcd(K, f, _pderiv(K, f))) == 1


def fq_factor(coeffs: Sequence[FqElement], seed: int = 0) -> tuple[tuple[tuple[FqElement, ...], int], ...]:
    """Factor a nonzero F_q[y] polynomial into monic irreducibles with multiplicities."""
    cs = list(coeffs)
    if not cs:
        raise ValueError("cannot factor the zero polynomial")
    K = _ExtField(cs[0].base)
    f = _trim(K, cs)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return ()
    rng = random.Random(seed)
    return tuple((tuple(g), m) for g, m in _factor_list(K, f, rng))
