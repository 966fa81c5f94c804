import json
import random

import pytest

from monocert import fppoly, ore
from monocert.polygon import IntPoly, resultant

QUARTIC = IntPoly.binomial(4, 17)


class TestOreSplit:
    def test_quartic_at_2(self):
        split = ore.ore_split(QUARTIC, 2)
        assert split.exact
        assert split.index_valuation == 3
        assert sorted((s.e, s.f) for s in split.slots) == [(1, 1), (1, 1), (2, 1)]

    def test_cubic_at_5(self):
        split = ore.ore_split(IntPoly.binomial(3, 2), 5)
        assert split.exact
        assert split.index_valuation == 0
        assert sorted((s.e, s.f) for s in split.slots) == [(1, 1), (1, 2)]

    def test_unramified_shape(self):
        F = IntPoly.binomial(3, 2)
        split = ore.ore_split(F, 7)
        assert split.exact and split.index_valuation == 0
        degs = sorted(f.degree for f, mult in fppoly.factor(F.reduce_mod(7)).factors for _ in range(mult))
        assert sorted(s.f for s in split.slots) == degs
        assert all(s.e == 1 for s in split.slots)

    def test_nonmonic_rejected(self):
        with pytest.raises(ValueError, match="monic"):
            ore.ore_split(IntPoly([1, 2]), 3)

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError, match="prime"):
            ore.ore_split(QUARTIC, 6)

    def test_inexact_reports_bound_only(self):
        # x^2 - 12 at 2: the single residual is y^2 + 1 = (y+1)^2, not separable
        split = ore.ore_split(IntPoly.binomial(2, 12), 2)
        assert not split.exact
        assert split.index_valuation == 1
        assert split.slots == ()

    def test_multiplicity_one_factors_still_split(self):
        # 5 is unramified in x^2 - 21 even though the constant part has valuation 2
        split = ore.ore_split(IntPoly.binomial(2, 21), 5)
        assert split.exact
        assert sorted(s.f for s in split.slots) == [1, 1]

    def test_determinism_byte_for_byte(self):
        a = ore.ore_split(QUARTIC, 2, seed=11)
        b = ore.ore_split(QUARTIC, 2, seed=11)
        assert a == b
        assert json.dumps(a.to_json_dict(), sort_keys=True) == json.dumps(b.to_json_dict(), sort_keys=True)

    def test_json_shape(self):
        doc = ore.ore_split(QUARTIC, 2).to_json_dict()
        assert set(doc) == {"p", "exact", "index_valuation", "slots"}
        assert all(set(s) == {"phi", "e", "f", "multiplicity"} for s in doc["slots"])

    def test_fundamental_identity_random(self):
        rng = random.Random(7)
        exact_count = 0
        while exact_count < 150:
            F = IntPoly([rng.randint(-30, 30) for _ in range(rng.randint(2, 10))] + [1])
            p = rng.choice([2, 3, 5, 7, 11, 13])
            try:
                split = ore.ore_split(F, p, seed=exact_count)
            except ValueError:
                continue
            if not split.exact:
                continue
            exact_count += 1
            assert sum(s.e * s.f for s in split.slots) == F.degree
            if resultant(F, F.derivative()) % p != 0:
                assert all(s.e == 1 for s in split.slots)


class TestExtensionResiduals:
    """Sides over proper extensions F_4 and F_9, where residual factoring is nontrivial."""

    def test_residual_splits_over_f4(self):
        phi = IntPoly([1, 1, 1])
        F = phi * phi + phi.scale(2) + IntPoly.const(4)
        split = ore.ore_split(F, 2)
        # residual y^2 + y + 1 has trace-zero constant: two conjugate roots in F_4
        assert split.exact
        assert sorted((s.e, s.f) for s in split.slots) == [(1, 2), (1, 2)]
        assert split.index_valuation == 2

    def test_residual_inert_over_f4(self):
        phi = IntPoly([1, 1, 1])
        F = phi * phi + phi * IntPoly([0, 2]) + IntPoly([0, 4])
        split = ore.ore_split(F, 2)
        # residual y^2 + y + xbar has trace one: irreducible, residue degree 4
        assert split.exact
        assert [(s.e, s.f) for s in split.slots] == [(1, 4)]

    def test_residual_over_f9(self):
        phi = IntPoly([1, 0, 1])
        F = phi * phi + phi.scale(3) + IntPoly([0, 9])
        split = ore.ore_split(F, 3)
        assert split.exact
        assert sum(s.e * s.f for s in split.slots) == 4


class TestRegularity:
    def test_known_values(self):
        assert ore.is_p_regular(QUARTIC, 2)
        assert ore.is_p_regular(QUARTIC, 17)
        assert ore.is_p_regular(IntPoly.binomial(5, 6), 2)  # Eisenstein-type
        assert not ore.is_p_regular(IntPoly.binomial(2, 12), 2)


class TestPrimesOfDegree:
    def test_quartic_counts(self):
        split = ore.ore_split(QUARTIC, 2)
        assert ore.primes_of_degree(split, 1) == 3
        assert ore.primes_of_degree(split, 2) == 0

    def test_cubic_counts(self):
        split = ore.ore_split(IntPoly.binomial(3, 2), 5)
        assert ore.primes_of_degree(split, 2) == 1

    def test_inexact_rejected(self):
        split = ore.ore_split(IntPoly.binomial(2, 12), 2)
        with pytest.raises(ValueError, match="regular"):
            ore.primes_of_degree(split, 1)


class TestCommonIndexDivisor:
    def test_quartic_witness(self):
        w = ore.common_index_divisor(QUARTIC, 2)
        assert w is not None
        assert (w.d, w.ideal_count, w.irreducible_count) == (1, 3, 2)

    def test_cubic_negative(self):
        assert ore.common_index_divisor(IntPoly.binomial(3, 2), 5) is None

    def test_large_primes_never_divide_index(self):
        for n, m in [(3, 2), (4, 17), (5, 6), (6, 35)]:
            F = IntPoly.binomial(n, m)
            for p in (n + 1, n + 3):
                from monocert import arith

                if not arith.is_prime(p):
                    continue
                try:
                    split = ore.ore_split(F, p)
                except ValueError:
                    continue
                if split.exact:
                    assert ore.common_index_divisor(F, p) is None, (n, m, p)

    def test_witness_implies_positive_index(self):
        w = ore.common_index_divisor(QUARTIC, 2)
        assert w is not None
        assert ore.ore_split(QUARTIC, 2).index_valuation >= 1
