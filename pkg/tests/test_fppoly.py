import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monocert import arith, fppoly
from monocert.fppoly import FpPoly, FqElement


def P(p, *coeffs):
    return FpPoly(p, coeffs)


class TestRingOps:
    def test_gcd_over_f2(self):
        # x^4 + 1 = (x^2 + 1)^2 over F_2
        assert fppoly.gcd(P(2, 1, 0, 0, 0, 1), P(2, 1, 0, 1)) == P(2, 1, 0, 1)

    def test_divide_by_one(self):
        f = P(5, 3, 1, 4)
        q, r = divmod(f, FpPoly.one(5))
        assert (q, r) == (f, FpPoly.zero(5))

    def test_pow_mod(self):
        # x has order 3 modulo x^2 + x + 1 over F_2
        x = FpPoly.x(2)
        assert x.pow_mod(7, P(2, 1, 1, 1)) == x

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            P(2, 1, 1) + P(3, 1, 1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod(P(3, 1, 1), FpPoly.zero(3))

    def test_modulus_validation(self):
        with pytest.raises(ValueError, match="not prime"):
            FpPoly(6, [1])
        with pytest.raises(ValueError, match="threshold"):
            FpPoly(2**31 + 11, [1])

    @given(
        p=st.sampled_from([2, 5, 11]),
        fc=st.lists(st.integers(0, 10), min_size=1, max_size=8),
        gc=st.lists(st.integers(0, 10), min_size=1, max_size=6),
    )
    def test_divmod_identity(self, p, fc, gc):
        f, g = FpPoly(p, fc), FpPoly(p, gc)
        if g.is_zero:
            return
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree


class TestFactor:
    def test_quartic_binomial_mod_2(self):
        fm = fppoly.factor(P(2, 1, 0, 0, 0, 1))  # x^4 - 17 reduces to x^4 + 1
        assert fm.factors == ((P(2, 1, 1), 4),)

    def test_five_linear_roots_mod_11(self):
        fm = fppoly.factor(FpPoly(11, [-10, 0, 0, 0, 0, 1]))
        assert len(fm.factors) == 5
        assert all(f.degree == 1 and mult == 1 for f, mult in fm.factors)

    def test_irreducible_fixed(self):
        f = P(2, 1, 1, 1)
        assert fppoly.factor(f).factors == ((f, 1),)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            fppoly.factor(FpPoly.zero(3))

    def test_reconstruction_random(self):
        rng = random.Random(1234)
        for _ in range(1000):
            p = rng.choice([2, 3, 5, 7, 11])
            deg = rng.randint(1, 12)
            f = FpPoly(p, [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)])
            fm = fppoly.factor(f, seed=17)
            assert fm.product(p) == f, f
            assert all(fppoly.is_irreducible(g) for g, _ in fm.factors)

    def test_determinism(self):
        f = FpPoly(7, [3, 1, 4, 1, 5, 0, 2, 1])
        assert fppoly.factor(f, seed=3) == fppoly.factor(f, seed=3)


class TestCountDegreeDFactors:
    def test_known_values(self):
        assert fppoly.count_degree_d_factors(7, 1, 5, 2) == 1  # the factor x - 4
        assert fppoly.count_degree_d_factors(11, 1, 5, -1) == 5
        assert fppoly.count_degree_d_factors(3, 2, 11, 2) == 0  # unique root already in F_3
        assert fppoly.count_degree_d_factors(3, 1, 11, 2) == 1

    def test_p_divides_m(self):
        assert fppoly.count_degree_d_factors(5, 1, 7, 10) == 1  # x^7 only has the factor x
        assert fppoly.count_degree_d_factors(5, 2, 7, 10) == 0

    def test_huge_exponent(self):
        # no polynomial is materialized, so u may be astronomical
        assert fppoly.count_degree_d_factors(7, 1, 5**40, 7**8 - 1) == 1

    def test_oracle_agreement_full_range(self):
        for p in (2, 3, 5, 7, 11):
            for u in range(1, 13):
                for m in range(-50, 51):
                    fm = fppoly.factor(FpPoly(p, [-m] + [0] * (u - 1) + [1]), seed=0)
                    for d in range(1, u + 1):
                        assert fppoly.count_degree_d_factors(p, d, u, m) == fm.count_of_degree(d), (p, d, u, m)

    def test_separable_degree_sum(self):
        # with p coprime to u*m the reduction is separable: factor degrees sum to u
        for p, u, m in [(3, 5, 4), (5, 6, 3), (7, 4, 5), (11, 9, 2)]:
            total = sum(d * fppoly.count_degree_d_factors(p, d, u, m) for d in range(1, u + 1))
            assert total == u

    def test_exhaustive_generation_matches_necklace_count(self):
        for p in (2, 3, 5):
            for d in range(1, 4):
                found = 0
                for idx in range(p**d):
                    coeffs = []
                    v = idx
                    for _ in range(d):
                        coeffs.append(v % p)
                        v //= p
                    if fppoly.is_irreducible(FpPoly(p, coeffs + [1])):
                        found += 1
                assert found == arith.count_irreducibles(p, d), (p, d)


class TestSeparability:
    def test_known_values(self):
        assert fppoly.is_separable(P(2, 1, 1, 1))
        assert not fppoly.is_separable(P(3, 1, 2, 1))  # (x+1)^2
        assert fppoly.is_separable(P(5, 2, 1))  # any degree-1 polynomial

    def test_frobenius_composite(self):
        assert not fppoly.is_separable(P(3, 1, 0, 0, 1))  # x^3 + 1 = (x+1)^3


class TestExtensionField:
    def _base(self):
        return P(3, 1, 0, 1)  # x^2 + 1, irreducible mod 3

    def test_inverse(self):
        base = self._base()
        a = FqElement(base, FpPoly.x(3))
        assert (a * a.inverse()) == FqElement.one(base)
        with pytest.raises(ZeroDivisionError):
            FqElement.zero(base).inverse()

    def test_pow(self):
        base = self._base()
        a = FqElement(base, P(3, 1, 1))
        assert a**8 == FqElement.one(base)  # the multiplicative group has order 8

    def test_fq_factor_splits_linear(self):
        # y^2 + 1 = (y - x)(y + x) over F_9 with x^2 = -1
        base = self._base()
        one = FqElement.one(base)
        f = [one, FqElement.zero(base), one]
        factors = fppoly.fq_factor(f, seed=0)
        assert len(factors) == 2
        assert all(mult == 1 and len(g) == 2 for g, mult in factors)
        x = FqElement(base, FpPoly.x(3))
        roots = {(-g[0] / g[1]) for g, _ in factors}
        assert roots == {x, -x}

    def test_fq_separability(self):
        base = self._base()
        one = FqElement.one(base)
        two = FqElement.from_int(base, 2)
        assert fppoly.fq_is_separable([one, one])
        # (y+1)^3 = y^3 + 3y^2 + 3y + 1 = y^3 + 1 in characteristic 3
        assert not fppoly.fq_is_separable([one, FqElement.zero(base), FqElement.zero(base), one])
        assert fppoly.fq_is_separable([two, one, one])

    def test_fq_factor_char2_extension(self):
        # F_4 = F_2[x]/(x^2+x+1); y^2 + y + x is separable, factor it
        base = P(2, 1, 1, 1)
        x = FqElement(base, FpPoly.x(2))
        one = FqElement.one(base)
        f = [x, one, one]
        assert fppoly.fq_is_separable(f)
        factors = fppoly.fq_factor(f, seed=1)
        total = sum(len(g) - 1 for g, mult in factors for _ in range(mult))
        assert total == 2
        # reconstruct the product
        prod = [one]
        for g, mult in factors:
            for _ in range(mult):
                new = [FqElement.zero(base)] * (len(prod) + len(g) - 1)
                for i, a in enumerate(prod):
                    for j, b in enumerate(g):
                        new[i + j] = new[i + j] + a * b
                prod = new
        assert prod == f
