import math

import numpy as np
import pytest

from stepcross.besov import (
    BesovParams,
    besov_norm,
    besov_norm_blocks,
    besov_norm_vp,
    dyadic_blocks,
    normalize_to_ball,
)
from stepcross.errors import ParameterError
from stepcross.indexsets import q_set
from stepcross.majorant import MajorantParams
from stepcross.trigpoly import QuadratureSpec, TrigPolynomial, random_in_spectrum

INF = math.inf


def P(d, r, b, l=2):
    return MajorantParams(d=d, r=r, b=b, l=l)


def two_mode():
    # e^{ix} + e^{i 2x}: octave-1 and octave-2 blocks, each of unit L2 norm
    return TrigPolynomial([[1], [2]], [1.0, 1.0])


class TestBlocks:
    def test_split(self):
        blocks = dyadic_blocks(TrigPolynomial([[1], [12]], [1.0, 2.0]))
        assert set(blocks) == {(1,), (4,)}
        assert blocks[(4,)].coefficient((12,)) == 2.0

    def test_zero_coordinate_named(self):
        f = TrigPolynomial([[0, 3], [1, 1]], [1.0, 1.0])
        with pytest.raises(ParameterError, match=r"\(0, 3\)"):
            dyadic_blocks(f)


class TestBlockNorm:
    def test_weighted_sum(self):
        # weights 1/omega(2^-s): 2 and 4 for r=1, b=0; theta=1 totals 6
        val = besov_norm_blocks(two_mode(), P(1, 1.0, 0.0), BesovParams(2.0, 1.0))
        assert val == pytest.approx(6.0, rel=1e-13)

    def test_sup_form(self):
        val = besov_norm_blocks(two_mode(), P(1, 1.0, 0.0), BesovParams(2.0, INF))
        assert val == pytest.approx(4.0, rel=1e-13)

    def test_quadratic_form(self):
        val = besov_norm_blocks(two_mode(), P(1, 1.0, 0.0), BesovParams(2.0, 2.0))
        assert val == pytest.approx(math.sqrt(20.0), rel=1e-13)

    def test_monotone_in_theta(self):
        f = random_in_spectrum(q_set(P(2, 1.0, (0.0, 0.0)), 2 ** 6), seed=4)
        params, p = P(2, 1.0, (0.0, 0.0)), 2.0
        vals = [besov_norm_blocks(f, params, BesovParams(p, th))
                for th in (1.0, 2.0, 4.0, INF)]
        assert all(vals[i] >= vals[i + 1] * (1 - 1e-12) for i in range(len(vals) - 1))

    def test_zero_function(self):
        assert besov_norm_blocks(TrigPolynomial.zero(1), P(1, 1.0, 0.0),
                                 BesovParams(2.0, 2.0)) == 0.0


class TestBandNorm:
    def test_single_mode(self):
        f = TrigPolynomial([[1]], [1.0])
        val = besov_norm_vp(f, P(1, 1.0, 0.0), BesovParams(2.0, 2.0))
        assert val == pytest.approx(2.0, rel=1e-13)

    def test_only_adjacent_bands_contribute(self):
        # k = 6 (octave 3) is split evenly between bands 2 and 3: both ramps
        # give 1/2, weighted by 1/omega = 4 and 8 for r=1, b=0
        f = TrigPolynomial([[6]], [1.0])
        params = P(1, 1.0, 0.0)
        val = besov_norm_vp(f, params, BesovParams(2.0, 1.0))
        assert val == pytest.approx(0.5 * 4.0 + 0.5 * 8.0, rel=1e-13)

    def test_equivalent_to_blocks(self):
        params = P(2, 1.0, (0.0, 0.0))
        quad = QuadratureSpec(rel_tol=1e-4)
        for seed in range(5):
            f = random_in_spectrum(q_set(params, 2 ** 5), seed=seed)
            for p, th in ((1.0, 2.0), (2.0, 1.0), (INF, 2.0)):
                a = besov_norm_blocks(f, params, BesovParams(p, th), quad)
                b = besov_norm_vp(f, params, BesovParams(p, th), quad)
                assert 0.05 < a / b < 20.0

    def test_zero_coordinate_named(self):
        with pytest.raises(ParameterError, match=r"\(0,\)"):
            besov_norm_vp(TrigPolynomial([[0]], [1.0]), P(1, 1.0, 0.0),
                          BesovParams(1.0, 1.0))


class TestDispatch:
    def test_interior_p_uses_blocks(self):
        f = two_mode()
        params, bp = P(1, 1.0, 0.0), BesovParams(2.0, 1.0)
        assert besov_norm(f, params, bp) == besov_norm_blocks(f, params, bp)

    def test_endpoint_p_uses_bands(self):
        f = two_mode()
        params, bp = P(1, 1.0, 0.0), BesovParams(1.0, 1.0)
        assert besov_norm(f, params, bp) == besov_norm_vp(f, params, bp)
        bp_inf = BesovParams(INF, 1.0)
        assert besov_norm(f, params, bp_inf) == besov_norm_vp(f, params, bp_inf)

    def test_normalize(self):
        f = random_in_spectrum(q_set(P(2, 1.0, (0.5, 0.0)), 2 ** 5), seed=8)
        params, bp = P(2, 1.0, (0.5, 0.0)), BesovParams(2.0, 2.0)
        g, norm = normalize_to_ball(f, params, bp)
        assert norm == pytest.approx(besov_norm(f, params, bp), rel=1e-13)
        assert besov_norm(g, params, bp) == pytest.approx(1.0, rel=1e-12)

    def test_normalize_zero_rejected(self):
        with pytest.raises(ParameterError):
            normalize_to_ball(TrigPolynomial.zero(1), P(1, 1.0, 0.0),
                              BesovParams(2.0, 2.0))

    def test_params_validation(self):
        with pytest.raises(ParameterError):
            BesovParams(0.5, 2.0)
        with pytest.raises(ParameterError):
            BesovParams(2.0, 0.0)
