import random
from fractions import Fraction

import pytest

from minadet.rings import QQ
from minadet.series import BiSeries, SeriesRing, UniSeries, series_from_json, series_to_json

import oracles


def uni(*coeffs):
    return UniSeries(QQ, coeffs)


def random_uni(rng, order, valuation_one=False):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order + 1)]
    if valuation_one:
        coeffs[0] = Fraction(0)
    return UniSeries(QQ, coeffs)


class TestMul:
    def test_square_of_one_plus_x(self):
        assert (uni(1, 1, 0) * uni(1, 1, 0)).coeffs == (1, 2, 1)

    def test_one_is_identity(self):
        rng = random.Random(1)
        s = random_uni(rng, 5)
        assert s * UniSeries.constant(QQ, 1, 5) == s

    def test_geometric_telescope(self):
        assert (uni(1, -1, 0, 0) * uni(1, 1, 1, 1)).coeffs == (1, 0, 0, 0)

    def test_order_mismatch_is_an_error(self):
        with pytest.raises(ValueError, match="orders differ"):
            uni(1, 1) * uni(1, 1, 1)

    def test_matches_convolution_oracle(self):
        rng = random.Random(2)
        for _ in range(30):
            a = random_uni(rng, 6)
            bb = random_uni(rng, 6)
            assert list((a * bb).coeffs) == oracles.convolve(a.coeffs, bb.coeffs, 6)


class TestPow:
    def test_cube_of_one_plus_x(self):
        assert (uni(1, 1, 0, 0) ** 3).coeffs == (1, 3, 3, 1)

    def test_zeroth_power_is_one(self):
        rng = random.Random(3)
        s = random_uni(rng, 4)
        assert s ** 0 == UniSeries.constant(QQ, 1, 4)

    def test_truncated_square(self):
        assert (uni(1, 1, 1) ** 2).coeffs == (1, 2, 3)

    def test_matches_repeated_convolution_oracle(self):
        rng = random.Random(4)
        for exponent in range(5):
            s = random_uni(rng, 5)
            assert list((s ** exponent).coeffs) == oracles.power(s.coeffs, exponent, 5)


class TestCompose:
    def test_self_composition_of_x_plus_x2(self):
        f = uni(0, 1, 1, 0, 0)
        assert f.compose(f).coeffs == (0, 1, 2, 2, 1)

    def test_identity_is_right_unit(self):
        rng = random.Random(5)
        f = random_uni(rng, 6, valuation_one=True)
        assert f.compose(UniSeries.identity(QQ, 6)) == f

    def test_geometric_self_composition(self):
        f = uni(0, 1, 1, 1, 1)
        assert f.compose(f).coeffs == (0, 1, 2, 4, 8)

    def test_nonzero_constant_term_rejected(self):
        with pytest.raises(ValueError, match="valuation"):
            uni(0, 1, 1).compose(uni(1, 1, 0))

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError, match="orders differ"):
            uni(0, 1, 1).compose(uni(0, 1))

    def test_matches_substitution_oracle(self):
        rng = random.Random(6)
        for _ in range(20):
            outer = random_uni(rng, 6)
            inner = random_uni(rng, 6, valuation_one=True)
            assert list(outer.compose(inner).coeffs) == oracles.compose(
                outer.coeffs, inner.coeffs, 6
            )


class TestDerivative:
    def test_power_rule(self):
        assert uni(1, 3, 3, 1).derivative().coeffs == (3, 6, 3)

    def test_constant_has_zero_derivative(self):
        assert uni(7, 0, 0).derivative() == UniSeries.constant(QQ, 0, 1)

    def test_second_derivative_of_x_cubed(self):
        assert uni(0, 0, 0, 1).derivative().derivative().coeffs == (0, 6)

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            uni(5).derivative()

    def test_leibniz_rule(self):
        rng = random.Random(7)
        for _ in range(25):
            f = random_uni(rng, 6)
            g = random_uni(rng, 6)
            product_rule = f.derivative() * g.truncate(5) + f.truncate(5) * g.derivative()
            assert (f * g).derivative() == product_rule


class TestCoefficientExtraction:
    def test_plain_lookup(self):
        assert uni(1, 2, 3).coefficient(2) == 3

    def test_constant_coefficient_of_valuation_one(self):
        assert uni(0, 1, 1).coefficient(0) == 0

    def test_past_truncation_is_an_error_not_zero(self):
        with pytest.raises(ValueError, match="unknown"):
            uni(1, 2, 3, 4).coefficient(5)


class TestBiSubstitute:
    def test_direct_substitution(self):
        F = BiSeries(QQ, 2, {(1, 0): 1, (1, 1): 1})
        g = UniSeries.identity(QQ, 2)
        assert F.substitute(g).coeffs == (0, 1, 1)

    def test_identity_transformation(self):
        rng = random.Random(8)
        g = random_uni(rng, 4, valuation_one=True)
        F = BiSeries(QQ, 4, {(1, 0): 1})
        assert F.substitute(g) == g

    def test_pure_t_shape_equals_composition(self):
        F = BiSeries(QQ, 4, {(1, 0): 1, (2, 0): 1})
        g = uni(0, 1, 1, 0, 0)
        assert F.substitute(g) == uni(0, 1, 1, 0, 0).compose(g)
        assert F.substitute(g).coeffs == (0, 1, 2, 2, 1)

    def test_nonzero_constant_term_rejected(self):
        F = BiSeries(QQ, 2, {(1, 0): 1})
        with pytest.raises(ValueError, match="valuation"):
            F.substitute(uni(1, 1, 0))

    def test_short_substituted_series_rejected(self):
        F = BiSeries(QQ, 3, {(1, 0): 1})
        with pytest.raises(ValueError, match="below truncation"):
            F.substitute(UniSeries.identity(QQ, 2))


class TestBiIterate:
    def test_zero_iterations_is_x(self):
        F = BiSeries(QQ, 3, {(1, 0): 1, (2, 1): Fraction(1, 2)})
        assert F.iterate(0, 3) == UniSeries.identity(QQ, 3)

    def test_multiplier_shape_gives_powers(self):
        # F = t*(1 + x): iterating i times gives x*(1+x)^i
        F = BiSeries(QQ, 3, {(1, 0): 1, (1, 1): 1})
        assert F.iterate(2, 3).coeffs == (0, 1, 2, 1)
        g = uni(1, 1, 0, 0)
        for i in range(5):
            assert F.iterate(i, 3) == (g ** i).shift(1)

    def test_triple_iterate_of_x_plus_x2(self):
        F = BiSeries(QQ, 4, {(1, 0): 1, (2, 0): 1})
        assert F.iterate(3, 4).coeffs == (0, 1, 3, 6, 9)

    def test_leading_coefficient_must_be_one(self):
        F = BiSeries(QQ, 3, {(1, 0): 2})
        with pytest.raises(ValueError, match=r"b\[1,0\]"):
            F.iterate(1, 3)

    def test_term_keys_validated(self):
        with pytest.raises(ValueError, match="m >= 1"):
            BiSeries(QQ, 3, {(0, 1): 1})
        with pytest.raises(ValueError, match="total-degree"):
            BiSeries(QQ, 2, {(2, 1): 1})


class TestInvariants:
    def test_composition_associativity(self):
        rng = random.Random(9)
        for _ in range(15):
            f = random_uni(rng, 6, valuation_one=True)
            g = random_uni(rng, 6, valuation_one=True)
            h = random_uni(rng, 6, valuation_one=True)
            assert f.compose(g.compose(h)) == f.compose(g).compose(h)

    def test_truncation_consistency_pow(self):
        rng = random.Random(10)
        for _ in range(10):
            s = random_uni(rng, 9)
            assert (s ** 3).truncate(5) == s.truncate(5) ** 3

    def test_truncation_consistency_compose(self):
        rng = random.Random(11)
        for _ in range(10):
            outer = random_uni(rng, 9)
            inner = random_uni(rng, 9, valuation_one=True)
            assert outer.compose(inner).truncate(5) == outer.truncate(5).compose(
                inner.truncate(5)
            )

    def test_truncation_consistency_iterate(self):
        rng = random.Random(12)
        for _ in range(5):
            terms = {(1, 0): Fraction(1)}
            for m in range(1, 7):
                for n in range(7 - m):
                    if (m, n) != (1, 0):
                        terms[(m, n)] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            F = BiSeries(QQ, 6, terms)
            assert F.iterate(3, 6).truncate(4) == F.iterate(3, 4)

    def test_multiplier_specialization_up_to_eight(self):
        rng = random.Random(13)
        order = 6
        g = random_uni(rng, order)
        g = g + (1 - g.coefficient(0))  # force constant term 1
        F = BiSeries(QQ, order, {(1, j): g.coefficient(j) for j in range(order + 1)})
        for i in range(9):
            assert F.iterate(i, order) == (g ** i).shift(1)

    def test_pure_t_specialization(self):
        rng = random.Random(14)
        order = 5
        u = random_uni(rng, order, valuation_one=True)
        u = UniSeries(QQ, (0, 1) + u.coeffs[2:])  # unit linear coefficient
        F = BiSeries(QQ, order, {(m, 0): u.coefficient(m) for m in range(1, order + 1)})
        iterate = UniSeries.identity(QQ, order)
        for i in range(5):
            assert F.iterate(i, order) == iterate
            iterate = u.compose(iterate)

    def test_iterate_semigroup(self):
        rng = random.Random(15)
        order = 6
        f = random_uni(rng, order, valuation_one=True)
        f = UniSeries(QQ, (0, 1) + f.coeffs[2:])
        iterates = [UniSeries.identity(QQ, order)]
        for _ in range(6):
            iterates.append(f.compose(iterates[-1]))
        for i in range(7):
            for j in range(7 - i):
                assert iterates[i].compose(iterates[j]) == iterates[i + j]


class TestSeriesRing:
    def test_zero_one_and_coercion(self):
        ring = SeriesRing(QQ, 3)
        assert ring.zero == UniSeries.constant(QQ, 0, 3)
        assert ring.one == UniSeries.constant(QQ, 1, 3)
        assert ring.coerce(uni(1, 2, 3, 4, 5)) == uni(1, 2, 3, 4)
        assert ring.coerce(7) == UniSeries.constant(QQ, 7, 3)
        with pytest.raises(ValueError, match="unknown"):
            ring.coerce(uni(1, 2))

    def test_no_exact_division(self):
        assert not SeriesRing(QQ, 3).has_exact_div


class TestJson:
    def test_uni_round_trip(self):
        s = uni(Fraction(1, 2), -2, 0, 3)
        assert series_from_json(series_to_json(s)) == s

    def test_bi_round_trip(self):
        F = BiSeries(QQ, 3, {(1, 0): 1, (2, 1): Fraction(-3, 4)})
        assert series_from_json(series_to_json(F)) == F

    def test_uni_length_must_match_order(self):
        with pytest.raises(ValueError, match="exactly"):
            series_from_json({"kind": "uni", "order": 2, "coeffs": ["1", "2"]})

    def test_duplicate_bivariate_keys_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            series_from_json(
                {
                    "kind": "bi",
                    "order": 2,
                    "terms": [
                        {"m": 1, "n": 0, "c": "1"},
                        {"m": 1, "n": 0, "c": "2"},
                    ],
                }
            )

    def test_bad_scalar_rejected(self):
        with pytest.raises(ValueError, match="rational"):
            series_from_json({"kind": "uni", "order": 0, "coeffs": ["1.5"]})

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="kind"):
            series_from_json({"kind": "tri", "order": 0})
