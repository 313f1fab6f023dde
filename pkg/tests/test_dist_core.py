import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tailbounds import (
    Pmf,
    ValidationError,
    make_pmf,
    mean,
    point_pmf,
    shape,
    tail,
    two_sided_tail,
    uniform_pmf,
    variance,
)


@st.composite
def pmfs(st_draw, max_size=12, offset_range=(-5, 5)):
    n = st_draw(st.integers(1, max_size))
    ws = st_draw(
        st.lists(st.integers(0, 9), min_size=n, max_size=n).filter(lambda w: any(w))
    )
    return make_pmf(st_draw(st.integers(*offset_range)), ws)


class TestMakePmf:
    def test_point_mass(self):
        p = make_pmf(0, [1])
        assert p.offset == 0 and p.weights == (F(1),)

    def test_uniform_rescaled(self):
        p = make_pmf(0, [1] * 11)
        assert p.weights == tuple([F(1, 11)] * 11)

    def test_negative_offset_rescaled(self):
        p = make_pmf(-2, [1, 2, 1])
        assert p.offset == -2
        assert p.weights == (F(1, 4), F(1, 2), F(1, 4))

    def test_trims_zero_endpoints(self):
        p = make_pmf(3, [0, 0, 2, 1, 0])
        assert p.offset == 5
        assert p.weights == (F(2, 3), F(1, 3))

    def test_all_zero_rejected(self):
        with pytest.raises(ValidationError):
            make_pmf(0, [0, 0])

    def test_negative_weight_rejected(self):
        with pytest.raises(ValidationError):
            make_pmf(0, [1, -1])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            make_pmf(0, [])

    def test_raw_constructor_rejects_unnormalized(self):
        with pytest.raises(ValidationError):
            Pmf(0, (F(1, 2), F(1, 4)))


class TestMoments:
    def test_uniform_mean(self):
        assert mean(uniform_pmf(0, 10)) == 5

    def test_point_mean(self):
        assert mean(point_pmf(0)) == 0

    def test_extremal_mixture_mean_matches_direct_sum(self):
        # Two-atom extremal shape for a=9, mu=17/4: point mass at 0 mixed
        # with uniform {0..17}; oracle is the direct weighted sum.
        weights = [F(1, 2) + F(1, 2) * F(1, 18)] + [F(1, 2) * F(1, 18)] * 17
        p = make_pmf(0, weights)
        direct = sum(F(k) * w for k, w in p.items())
        assert mean(p) == direct == F(17, 4)

    def test_uniform_variance(self):
        assert variance(uniform_pmf(0, 10)) == 10

    def test_point_variance(self):
        assert variance(point_pmf(7)) == 0

    @pytest.mark.parametrize("n", range(0, 51))
    def test_uniform_variance_closed_form(self, n):
        p = uniform_pmf(0, n)
        mu = sum(F(k) for k in range(n + 1)) / (n + 1)
        brute = sum((F(k) - mu) ** 2 for k in range(n + 1)) / (n + 1)
        assert variance(p) == brute == F(n * (n + 2), 12)


class TestTails:
    def test_uniform_tail(self):
        assert tail(uniform_pmf(0, 10), 9) == F(2, 11)

    def test_tail_at_support_min_is_one(self):
        assert tail(make_pmf(-2, [1, 2, 1]), -2) == 1

    def test_tail_counts_atoms(self):
        assert tail(uniform_pmf(0, 17), 9) == F(9, 18) == F(1, 2)

    def test_tail_beyond_support_is_zero(self):
        assert tail(uniform_pmf(0, 10), 11) == 0

    def test_two_sided_uniform(self):
        assert two_sided_tail(uniform_pmf(0, 10), 4) == F(4, 11)

    def test_two_sided_point_mass(self):
        assert two_sided_tail(point_pmf(3), F(1, 2)) == 0

    def test_two_sided_symmetric_pair(self):
        p = make_pmf(-1, [1, 0, 1])
        assert two_sided_tail(p, 1) == 1

    def test_two_sided_requires_positive_threshold(self):
        with pytest.raises(ValidationError):
            two_sided_tail(uniform_pmf(0, 10), 0)


class TestShape:
    def test_uniform_is_decreasing(self):
        rep = shape(uniform_pmf(0, 10))
        assert rep.is_decreasing and rep.is_unimodal and rep.mode == 0

    def test_peaked_not_decreasing(self):
        rep = shape(make_pmf(0, [1, 2, 1]))
        assert not rep.is_decreasing and rep.is_unimodal and rep.mode == 1

    def test_two_peaks_not_unimodal(self):
        rep = shape(make_pmf(0, [2, 1, 2, 1]))
        assert not rep.is_unimodal and rep.mode is None

    def test_decreasing_needs_offset_zero(self):
        rep = shape(uniform_pmf(1, 5))
        assert not rep.is_decreasing and rep.is_unimodal

    def test_mode_is_smallest_witness(self):
        assert shape(make_pmf(0, [1, 2, 2, 1])).mode == 1


class TestSerialization:
    def test_roundtrip(self):
        p = make_pmf(-2, [1, 2, 1])
        assert Pmf.from_dict(p.to_dict()) == p

    def test_dict_shape(self):
        assert uniform_pmf(0, 1).to_dict() == {"offset": 0, "weights": ["1/2", "1/2"]}

    def test_bad_json_rejected(self):
        with pytest.raises(ValidationError):
            Pmf.from_dict({"offset": "x", "weights": ["1"]})


class TestInvariants:
    @given(pmfs())
    def test_weights_sum_to_one(self, p):
        assert sum(p.weights) == 1

    @given(pmfs())
    def test_tail_at_offset_is_one_and_nonincreasing(self, p):
        assert tail(p, p.offset) == 1
        values = [tail(p, a) for a in range(p.offset, p.support_max + 2)]
        assert all(x >= y for x, y in zip(values, values[1:]))

    @given(pmfs(), st.fractions(min_value="1/100", max_value=30))
    def test_two_sided_decomposes_into_one_sided_sums(self, p, a):
        mu = mean(p)
        left = sum((w for k, w in p.items() if F(k) <= mu - a), F(0))
        right = sum((w for k, w in p.items() if F(k) >= mu + a), F(0))
        assert two_sided_tail(p, a) == left + right

    @given(pmfs())
    def test_variance_nonnegative_zero_iff_point(self, p):
        v = variance(p)
        assert v >= 0
        assert (v == 0) == (len(p.weights) == 1)

    def test_decreasing_implies_unimodal_on_random_monotone_pmfs(self):
        rng = random.Random(4)
        for _ in range(200):
            n = rng.randint(1, 30)
            ws = sorted((rng.randint(0, 9) for _ in range(n)), reverse=True)
            if ws[0] == 0:
                ws[0] = 1
            rep = shape(make_pmf(0, ws))
            assert rep.is_decreasing
            assert rep.is_unimodal and rep.mode == 0
