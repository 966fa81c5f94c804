import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monocert import fppoly
from monocert.polygon import (
    IntPoly,
    Side,
    discriminant,
    lower_convex_hull,
    phi_expand,
    polygon_index,
    principal_from_points,
    principal_polygon,
    residual_polynomial,
    resultant,
)

QUARTIC = IntPoly.binomial(4, 17)
PHI1 = IntPoly([-1, 1])


class TestIntPoly:
    def test_construction_trims(self):
        assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPoly.binomial(4, 17).coeffs == (-17, 0, 0, 0, 1)

    def test_divmod_requires_monic(self):
        with pytest.raises(ValueError, match="monic"):
            divmod(IntPoly([1, 1]), IntPoly([1, 2]))

    @given(
        fc=st.lists(st.integers(-20, 20), min_size=1, max_size=9),
        gc=st.lists(st.integers(-9, 9), min_size=1, max_size=5),
    )
    def test_divmod_identity(self, fc, gc):
        f = IntPoly(fc)
        g = IntPoly(gc + [1])
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree

    def test_valuation(self):
        assert IntPoly([12, 8, 2]).padic_valuation(2) == 1
        assert IntPoly([0, 8]).padic_valuation(2) == 3
        with pytest.raises(ValueError):
            IntPoly.zero().padic_valuation(2)


class TestResultant:
    def test_discriminants(self):
        assert discriminant(IntPoly([-5, 0, 1])) == 20
        assert discriminant(IntPoly.binomial(3, 2)) == -108
        assert discriminant(IntPoly([2, 2, 1])) == -4

    def test_resultant_of_coprime_vs_shared_root(self):
        f = IntPoly([-1, 1]) * IntPoly([-2, 1])
        assert resultant(f, IntPoly([-1, 1])) == 0
        assert resultant(f, IntPoly([-3, 1])) == 2  # f(3) = 2

    def test_multiplicativity(self):
        rng = random.Random(9)
        for _ in range(30):
            f = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [1])
            g = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [1])
            h = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [1])
            assert resultant(f * g, h) == resultant(f, h) * resultant(g, h)


class TestPhiExpand:
    def test_quartic_parts(self):
        exp = phi_expand(QUARTIC, PHI1)
        assert [list(a.coeffs) for a in exp.parts] == [[-16], [4], [6], [4], [1]]

    def test_base_x_gives_coefficients(self):
        F = IntPoly([3, -1, 0, 2, 1])
        exp = phi_expand(F, IntPoly.x())
        assert tuple(a.coeffs[0] if a.coeffs else 0 for a in exp.parts) == F.coeffs

    def test_rejects_nonmonic(self):
        with pytest.raises(ValueError):
            phi_expand(QUARTIC, IntPoly([1, 2]))

    @given(
        fc=st.lists(st.integers(-30, 30), min_size=2, max_size=10),
        gc=st.lists(st.integers(-10, 10), min_size=1, max_size=4),
    )
    def test_reconstruction(self, fc, gc):
        F = IntPoly(fc + [1])
        phi = IntPoly(gc + [1])
        exp = phi_expand(F, phi)
        assert exp.decode() == F
        assert all(a.degree < phi.degree for a in exp.parts)


class TestPrincipalPolygon:
    def test_quartic_vertices(self):
        poly = principal_polygon(phi_expand(QUARTIC, PHI1), 2)
        assert poly.vertices == ((0, 4), (1, 2), (2, 1), (4, 0))
        assert [s.slope for s in poly.sides] == [Fraction(-2), Fraction(-1), Fraction(-1, 2)]
        assert [(s.side_degree, s.ram_index) for s in poly.sides] == [(1, 1), (1, 1), (1, 2)]

    def test_eisenstein_single_side(self):
        poly = principal_polygon(phi_expand(IntPoly.binomial(3, 2), IntPoly.x()), 2)
        assert poly.vertices == ((0, 1), (3, 0))
        (side,) = poly.sides
        assert (side.ram_index, side.side_degree) == (3, 1)

    def test_empty_when_unit_constant(self):
        poly = principal_polygon(phi_expand(IntPoly.binomial(3, 2), IntPoly.x()), 5)
        assert poly.is_empty
        assert poly.vertices == ()

    def test_reducible_base_rejected(self):
        with pytest.raises(ValueError, match="irreducible"):
            principal_polygon(phi_expand(QUARTIC, IntPoly([1, 0, 1])), 2)

    def test_exact_divisor_rejected(self):
        F = IntPoly([-1, 1]) * IntPoly([2, 1]) + IntPoly.zero()
        with pytest.raises(ValueError, match="divides"):
            principal_polygon(phi_expand(F, IntPoly([-1, 1])), 3)

    def test_hull_dominance_random(self):
        rng = random.Random(77)
        for _ in range(200):
            pts = sorted({(rng.randint(0, 12), rng.randint(0, 9)) for _ in range(rng.randint(2, 10))})
            poly = principal_from_points(pts)
            for side in poly.sides:
                (xs, ys), (xe, ye) = side.start, side.end
                for (x, y) in pts:
                    if xs <= x <= xe:
                        # exact rational comparison against the side line
                        assert Fraction(y) >= Fraction(ys) + Fraction(ye - ys, xe - xs) * (x - xs)

    def test_length_law_random(self):
        rng = random.Random(4242)
        checked = 0
        while checked < 500:
            p = rng.choice([2, 3, 5, 7])
            deg = rng.randint(2, 9)
            F = IntPoly([rng.randint(-40, 40) for _ in range(deg)] + [1])
            fm = fppoly.factor(F.reduce_mod(p), seed=checked)
            if not fm.factors:
                continue
            phi_bar, mult = rng.choice(list(fm.factors))
            try:
                poly = principal_polygon(phi_expand(F, IntPoly.lift(phi_bar)), p)
            except ValueError:
                continue  # the lift divides F over Z
            assert poly.total_length == mult, (F, p, phi_bar)
            checked += 1


class TestPolygonIndex:
    def test_quartic_index(self):
        poly = principal_polygon(phi_expand(QUARTIC, PHI1), 2)
        assert polygon_index(poly, 1) == 3

    def test_coprime_triangle(self):
        for n, u in [(5, 2), (6, 5), (7, 3), (9, 4)]:
            poly = principal_from_points([(0, u), (n, 0)])
            assert polygon_index(poly, 1) == (n - 1) * (u - 1) // 2

    def test_eisenstein_zero(self):
        poly = principal_from_points([(0, 1), (8, 0)])
        assert polygon_index(poly, 1) == 0

    def test_degphi_scales(self):
        poly = principal_from_points([(0, 4), (1, 2), (2, 1), (4, 0)])
        assert polygon_index(poly, 2) == 6

    def test_empty_polygon(self):
        assert polygon_index(principal_from_points([(0, 0), (3, 0)]), 1) == 0


class TestResidualPolynomial:
    def test_quartic_residuals(self):
        exp = phi_expand(QUARTIC, PHI1)
        poly = principal_polygon(exp, 2)
        for side in poly.sides:
            res = residual_polynomial(exp, side, 2)
            assert res.degree == 1
            assert [c.rep.coeffs for c in res.coeffs] == [(1,), (1,)]  # y + 1 each time
            assert res.is_separable()

    def test_interior_point_above_gives_zero(self):
        # x^2 - 12 at 2: side (0,2)-(2,0), the middle column is absent
        exp = phi_expand(IntPoly.binomial(2, 12), IntPoly.x())
        poly = principal_polygon(exp, 2)
        (side,) = poly.sides
        res = residual_polynomial(exp, side, 2)
        assert res.degree == 2
        assert res.coeffs[1].is_zero
        assert not res.is_separable()  # y^2 + 1 is a square mod 2

    def test_endpoints_nonzero(self):
        rng = random.Random(5)
        checked = 0
        while checked < 100:
            p = rng.choice([2, 3, 5])
            F = IntPoly([rng.randint(-40, 40) for _ in range(rng.randint(2, 8))] + [1])
            fm = fppoly.factor(F.reduce_mod(p), seed=checked)
            if not fm.factors:
                continue
            phi_bar, _ = rng.choice(list(fm.factors))
            try:
                exp = phi_expand(F, IntPoly.lift(phi_bar))
                poly = principal_polygon(exp, p)
            except ValueError:
                continue
            for side in poly.sides:
                res = residual_polynomial(exp, side, p)
                assert not res.coeffs[0].is_zero
                assert not res.coeffs[-1].is_zero
                assert res.degree == side.side_degree
                checked += 1

    def test_mismatched_side_rejected(self):
        exp = phi_expand(QUARTIC, PHI1)
        with pytest.raises(ValueError):
            residual_polynomial(exp, Side((0, 5), (1, 2)), 2)


class TestLowerHull:
    def test_collinear_points_removed(self):
        assert lower_convex_hull([(0, 4), (1, 3), (2, 2), (4, 0)]) == ((0, 4), (4, 0))

    def test_duplicate_x_takes_lowest(self):
        assert lower_convex_hull([(0, 5), (0, 2), (3, 0)]) == ((0, 2), (3, 0))
