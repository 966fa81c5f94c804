"""Integer polynomials, phi-adic developments, principal Newton polygons.

All geometry is exact: cloud points are integer pairs, hull comparisons are
integer cross products, slopes are Fractions in lowest terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import arith
from .fppoly import FpPoly, FqElement, _fmt_poly, is_irreducible


class IntPoly:
    """Dense polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def binomial(cls, n: int, m: int) -> "IntPoly":
        """x**n - m."""
        if n < 1:
            raise ValueError("n must be positive")
        return cls([-m] + [0] * (n - 1) + [1])

    @classmethod
    def lift(cls, f: FpPoly) -> "IntPoly":
        """Integer lift with coefficients in [0, p)."""
        return cls(f.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative power")
        out, base = IntPoly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c: int) -> "IntPoly":
        return IntPoly([c * a for a in self.coeffs])

    def __divmod__(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Euclidean division; exact over Z, so the divisor must be monic."""
        if not other.is_monic:
            raise ValueError("division requires a monic divisor")
        rem = list(self.coeffs)
        dv = other.coeffs
        dq = len(rem) - len(dv)
        if dq < 0:
            return IntPoly.zero(), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(dv) - 1]
            if c:
                quot[k] = c
                for j, d in enumerate(dv):
                    rem[k + j] -= c * d
        return IntPoly(quot), IntPoly(rem[: len(dv) - 1])

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "IntPoly") -> "IntPoly":
        return divmod(self, other)[1]

    def exact_div_scalar(self, k: int) -> "IntPoly":
        if any(c % k for c in self.coeffs):
            raise ValueError(f"coefficients not divisible by {k}")
        return IntPoly([c // k for c in self.coeffs])

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def reduce_mod(self, p: int) -> FpPoly:
        return FpPoly(p, self.coeffs)

    def padic_valuation(self, p: int) -> int:
        """min over nonzero coefficients of their p-adic valuations."""
        if self.is_zero:
            raise ValueError("valuation of the zero polynomial undefined")
        return min(arith.padic_valuation(p, c) for c in self.coeffs if c)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPoly) and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return _fmt_poly(self.coeffs)


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Integer resultant via fraction-free (Bareiss) elimination of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = [[0] * size for _ in range(size)]
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows[i][i : i + m + 1] = fc
    for i in range(m):
        rows[n + i][i : i + n + 1] = gc
    sign, prev = 1, 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, size):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, size):
            head = rows[i][k]
            if head == 0 and pivot == prev:
                continue
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * pivot - head * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return sign * rows[size - 1][size - 1]


def discriminant(f: IntPoly) -> int:
    """Discriminant of monic f, (-1)^(n(n-1)/2) * Res(f, f')."""
    if not f.is_monic:
        raise ValueError("discriminant implemented for monic polynomials")
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


@dataclass(frozen=True)
class PhiExpansion:
    """F = sum parts[j] * base**j with deg parts[j] < deg base."""

    base: IntPoly
    parts: tuple[IntPoly, ...]

    def decode(self) -> IntPoly:
        out = IntPoly.zero()
        power = IntPoly.const(1)
        for part in self.parts:
            out = out + part * power
            power = power * self.base
        return out


def phi_expand(F: IntPoly, phi: IntPoly) -> PhiExpansion:
    """phi-adic development of F by repeated exact Euclidean division."""
    if not phi.is_monic or phi.degree < 1:
        raise ValueError("phi must be monic of degree >= 1")
    if not F.is_monic:
        raise ValueError("F must be monic")
    parts = []
    rest = F
    while not rest.is_zero:
        rest, rem = divmod(rest, phi)
        parts.append(rem)
    return PhiExpansion(phi, tuple(parts))


@dataclass(frozen=True)
class Side:
    """One negative-slope side of a principal polygon."""

    start: tuple[int, int]
    end: tuple[int, int]

    def __post_init__(self):
        if self.end[0] <= self.start[0]:
            raise ValueError("side must advance in x")
        if self.end[1] >= self.start[1]:
            raise ValueError("principal sides have negative slope")

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def height(self) -> int:
        return self.start[1] - self.end[1]

    @property
    def side_degree(self) -> int:
        return math.gcd(self.length, self.height)

    @property
    def ram_index(self) -> int:
        return self.length // self.side_degree

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.height, self.length)


@dataclass(frozen=True)
class PrincipalPolygon:
    """Negative-slope part of a Newton polygon: lower-convex vertex chain."""

    vertices: tuple[tuple[int, int], ...]
    sides: tuple[Side, ...]

    @property
    def total_length(self) -> int:
        return sum(s.length for s in self.sides)

    @property
    def is_empty(self) -> bool:
        return not self.sides


def lower_convex_hull(points: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Vertices of the lower convex hull, collinear interior points dropped."""
    best: dict[int, int] = {}
    for x, y in points:
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) > 1:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return tuple(hull)


def principal_from_points(points: Sequence[tuple[int, int]]) -> PrincipalPolygon:
    """Principal polygon of a point cloud: the negative-slope prefix of its lower hull."""
    hull = lower_convex_hull(points)
    vertices = [hull[0]] if hull else []
    sides = []
    for a, b in zip(hull, hull[1:]):
        if b[1] >= a[1]:
            break
        sides.append(Side(a, b))
        vertices.append(b)
    if not sides:
        return PrincipalPolygon((), ())
    return PrincipalPolygon(tuple(vertices), tuple(sides))


def principal_polygon(exp: PhiExpansion, p: int) -> PrincipalPolygon:
    """Principal Newton polygon of the development with respect to nu_p.

    Cloud points are (j, nu_p(parts[j])) over nonzero parts; the polygon keeps
    the negative-slope sides of the lower convex envelope.  Empty whenever
    nu_p(parts[0]) = 0, i.e. when the reduction of the base does not divide
    the reduction of the developed polynomial.
    """
    phi_bar = exp.base.reduce_mod(p)
    if phi_bar.degree != exp.base.degree:
        raise ValueError("base must stay monic mod p")
    if not is_irreducible(phi_bar):
        raise ValueError(f"{phi_bar} is not irreducible")
    if exp.parts and exp.parts[0].is_zero:
        raise ValueError("base divides the polynomial over Z; the polygon is unbounded")
    cloud = [(j, a.padic_valuation(p)) for j, a in enumerate(exp.parts) if not a.is_zero]
    return principal_from_points(cloud)


def polygon_index(poly: PrincipalPolygon, degphi: int) -> int:
    """deg(phi) times the number of lattice points with x,y >= 1 on or under the chain."""
    if degphi < 1:
        raise ValueError("degphi must be positive")
    if poly.is_empty:
        return 0
    count = 0
    for side in poly.sides:
        (s, ys), (r, _) = side.start, side.end
        length, height = side.length, side.height
        for x in range(max(s, 1), r + 1):
            # floor of the chain height at x, exact in integers
            y = (ys * length - height * (x - s)) // length
            if y >= 1:
                count += y
    # interior vertex columns are shared by two sides; subtract the duplicates
    for v in poly.vertices[1:-1]:
        if v[0] >= 1 and v[1] >= 1:
            count -= v[1]
    return degphi * count


@dataclass(frozen=True)
class ResidualPolynomial:
    """Residual polynomial of a side, with coefficients in F_p[x]/(phi_bar)."""

    base: FpPoly
    side: Side
    coeffs: tuple[FqElement, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_separable(self) -> bool:
        from .fppoly import fq_is_separable

        return fq_is_separable(self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            cs = _fmt_poly(c.rep.coeffs)
            cs = cs if c.rep.degree < 1 else f"({cs})"
            parts.append(cs if i == 0 else (f"y^{i}" if cs == "1" else f"{cs}*y^{i}"))
        return " + ".join(parts).replace("y^1", "y") or "0"


def residual_polynomial(exp: PhiExpansion, side: Side, p: int) -> ResidualPolynomial:
    """Residual polynomial attached to a side of the principal polygon.

    Coefficient j comes from the development part at abscissa s + j*e: zero if
    the cloud point lies strictly above the side, otherwise the reduction of
    part / p^valuation modulo (p, phi).
    """
    phi_bar = exp.base.reduce_mod(p)
    (s, ys) = side.start
    e, d = side.ram_index, side.side_degree
    step = side.height // d
    coeffs = []
    for j in range(d + 1):
        i = s + j * e
        target = ys - j * step
        part = exp.parts[i] if i < len(exp.parts) else IntPoly.zero()
        if part.is_zero:
            coeffs.append(FqElement.zero(phi_bar))
            continue
        v = part.padic_valuation(p)
        if v < target:
            raise ValueError("side does not bound the development cloud")
        if v > target:
            coeffs.append(FqElement.zero(phi_bar))
        else:
            unit = part.exact_div_scalar(p**v)
            coeffs.append(FqElement(phi_bar, unit.reduce_mod(p) % phi_bar))
    if coeffs[0].is_zero or coeffs[-1].is_zero:
        raise ValueError("side endpoints must lie on the polygon")
    return ResidualPolynomial(phi_bar, side, tuple(coeffs))
