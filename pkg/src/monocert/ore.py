"""Prime splitting data via residual polynomials: exactness, index bounds, witnesses.

For a monic polynomial F and a prime p, every monic irreducible factor of
F mod p is lifted (coefficients in [0, p)), developed, and its principal
polygon's residual polynomials are factored over the residue extension.  When
every residual is separable the splitting is exact: each slot is a prime ideal
with its ramification index e and residue degree f.  Otherwise only the index
lower bound is reported, never a splitting claim.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith, fppoly
from .polygon import (
    IntPoly,
    PrincipalPolygon,
    phi_expand,
    polygon_index,
    principal_polygon,
    residual_polynomial,
)


@dataclass(frozen=True)
class FactorSlot:
    """One prime ideal above p: lift, side, residual factor, and (e, f)."""

    phi: IntPoly
    side_index: int
    residual_factor: tuple[fppoly.FqElement, ...]
    multiplicity: int
    e: int
    f: int
    certain: bool = True

    def to_json_dict(self) -> dict:
        return {
            "phi": list(self.phi.coeffs),
            "e": self.e,
            "f": self.f,
            "multiplicity": self.multiplicity,
        }


@dataclass(frozen=True)
class PrimeSplit:
    """Splitting data of p in the order Z[x]/F; exact iff F is p-regular."""

    p: int
    slots: tuple[FactorSlot, ...]
    exact: bool
    index_valuation: int

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "exact": self.exact,
            "index_valuation": self.index_valuation,
            "slots": [s.to_json_dict() for s in self.slots],
        }


@dataclass(frozen=True)
class IndexDivisorWitness:
    """d with more residue-degree-d primes than F_p has irreducibles of degree d."""

    p: int
    d: int
    ideal_count: int
    irreducible_count: int


def ore_split(F: IntPoly, p: int, seed: int = 0) -> PrimeSplit:
    """Split p in the order defined by monic F.

    Slots are enumerated from sides whose residual polynomial is separable;
    with `exact` False the slot list is partial and `index_valuation` is only
    a lower bound.
    """
    if not F.is_monic:
        raise ValueError("F must be monic")
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    fbar = F.reduce_mod(p)
    factors = fppoly.factor(fbar, seed).factors
    slots: list[FactorSlot] = []
    exact = True
    index_val = 0
    for phi_bar, mult in factors:
        phi = IntPoly.lift(phi_bar)
        exp = phi_expand(F, phi)
        poly = principal_polygon(exp, p)
        assert poly.total_length == mult, "polygon length must equal the factor multiplicity"
        index_val += polygon_index(poly, phi_bar.degree)
        for side_index, side in enumerate(poly.sides):
            res = residual_polynomial(exp, side, p)
            if not res.is_separable():
                exact = False
                continue
            for factor_coeffs, fmult in fppoly.fq_factor(res.coeffs, seed):
                slots.append(
                    FactorSlot(
                        phi=phi,
                        side_index=side_index,
                        residual_factor=factor_coeffs,
                        multiplicity=fmult,
                        e=side.ram_index,
                        f=phi_bar.degree * (len(factor_coeffs) - 1),
                    )
                )
    slots.sort(key=lambda s: (s.phi.coeffs, s.side_index, tuple(c.rep.coeffs for c in s.residual_factor)))
    return PrimeSplit(p, tuple(slots), exact, index_val)


def is_p_regular(F: IntPoly, p: int, seed: int = 0) -> bool:
    """True iff every residual polynomial of every factor's polygon is separable."""
    return ore_split(F, p, seed).exact


def primes_of_degree(split: PrimeSplit, d: int) -> int:
    """Number of primes above p with residue degree d; defined only for exact splits."""
    if d < 1:
        raise ValueError("d must be positive")
    if not split.exact:
        raise ValueError("prime-counting undefined without p-regularity")
    return sum(1 for s in split.slots if s.f == d)


def common_index_divisor(F: IntPoly, p: int, seed: int = 0) -> IndexDivisorWitness | None:
    """Smallest d whose prime count beats the irreducible count, if any.

    A positive answer certifies that p divides the index of every generator of
    the field, which rules out a power integral basis.
    """
    split = ore_split(F, p, seed)
    for d in range(1, F.degree + 1):
        ideals = primes_of_degree(split, d)
        if ideals == 0:
            continue
        bound = arith.count_irreducibles(p, d)
        if ideals > bound:
            return IndexDivisorWitness(p, d, ideals, bound)
    return None
