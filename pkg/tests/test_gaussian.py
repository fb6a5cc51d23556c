import json
import math

import numpy as np
import pytest

from loopstar.gaussian import (GREEN_ALPHA, GREEN_BETA, GreenKernel, basis_matrix,
                               export_loop_csv, gaussian_even_moment, green_diagonal,
                               green_kernel, holder_moment_check, increment_variance,
                               loop_eval, sample_loop, sample_xi_batch, spectral_green_sum)
from loopstar.modes import ModeIndex


def test_kernel_closed_form_shape():
    assert green_kernel(0.3, 0.3) == pytest.approx(green_diagonal())
    assert green_kernel(0.1, 0.4) == pytest.approx(green_kernel(0.4, 0.1))
    assert green_kernel(0.1, 0.4) == pytest.approx(green_kernel(1.1, 0.4))
    # minimum at antipodal separation, maximum on the diagonal
    assert green_kernel(0.0, 0.5) < green_kernel(0.0, 0.25) < green_diagonal()


def test_exponential_coefficients():
    gk = GreenKernel()
    assert gk.alpha == pytest.approx(1.0 / (2.0 * (1.0 - math.exp(-1.0))))
    assert gk.beta == pytest.approx(1.0 / (2.0 * (math.e - 1.0)))
    assert GREEN_ALPHA + GREEN_BETA == pytest.approx(green_diagonal())
    for x in (0.0, 0.2, 0.7, 1.0):
        assert gk.exponential_form(x) == pytest.approx(green_kernel(x, 0.0), abs=1e-14)
    assert gk.value(0.2, 0.9) == pytest.approx(green_kernel(0.2, 0.9))


def test_spectral_sum_converges_to_closed_form():
    err = lambda K: abs(green_kernel(0.1, 0.35) - spectral_green_sum(0.1, 0.35, K))
    assert err(200) <= 1e-4
    assert err(400) < err(100)


def test_spectral_sum_vectorized():
    s = np.array([0.1, 0.2])
    out = spectral_green_sum(s, 0.0, 32)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(spectral_green_sum(0.1, 0.0, 32))


def test_sampler_shapes_and_determinism():
    xi = sample_xi_batch(5, 7, 8, 2)
    assert xi.shape == (7, 2, 17)
    assert np.array_equal(xi, sample_xi_batch(5, 7, 8, 2))
    assert not np.array_equal(xi, sample_xi_batch(6, 7, 8, 2))
    assert np.array_equal(xi[:3], sample_xi_batch(5, 3, 8, 2))


def test_sample_loop_values_are_spectral():
    sample = sample_loop(3, 8, 64, d=2)
    E = basis_matrix(8, sample.grid)
    assert np.allclose(sample.values, (sample.xi @ E).T)
    assert sample.M == 64
    with pytest.raises(ValueError):
        sample_loop(3, 0, 64)
    with pytest.raises(ValueError):
        sample_loop(3, 8, 1)


def test_xi_value_and_map_guards():
    sample = sample_loop(3, 8, 64, d=2)
    mode = ModeIndex(1, 2)
    assert sample.xi_value(mode) == sample.xi[0, 2 + 8]
    with pytest.raises(ValueError):
        sample.xi_value(mode.as_dual)
    with pytest.raises(ValueError):
        sample.xi_value(ModeIndex(3, 0))
    with pytest.raises(ValueError):
        sample.xi_value(ModeIndex(1, 9))
    xi_map = sample.xi_map(2)
    assert len(xi_map) == 2 * 5
    with pytest.raises(ValueError):
        sample.xi_map(9)


def test_loop_eval_grid_and_off_grid():
    sample = sample_loop(9, 8, 32, d=2)
    assert np.array_equal(loop_eval(sample, 3 / 32), sample.values[3])
    s = 0.123456
    direct = sample.xi @ basis_matrix(8, np.array([s]))[:, 0]
    assert np.allclose(loop_eval(sample, s), direct)
    out = loop_eval(sample, np.array([0.0, s]))
    assert out.shape == (2, 2)


def test_increment_variance_and_moments():
    assert increment_variance(0.2, 0.2, 16) == pytest.approx(0.0, abs=1e-12)
    assert increment_variance(0.1, 0.3, 16) > 0
    assert gaussian_even_moment(2.0, 1, 2) == pytest.approx(4.0)        # d sigma2
    assert gaussian_even_moment(2.0, 2, 2) == pytest.approx(32.0)       # sigma2^2 d(d+2)
    assert gaussian_even_moment(1.0, 3, 1) == pytest.approx(15.0)       # E Z^6


def test_holder_moment_check_contract():
    with pytest.raises(ValueError):
        holder_moment_check(100, 4, [(0.1, 0.2)])
    with pytest.raises(ValueError):
        holder_moment_check(100, 1, [(0.0, 0.7)])
    table = holder_moment_check(500, 1, [(0.1, 0.1), (0.1, 0.3)], seed=1, K_mc=16, d=2)
    assert table["rows"][0]["ratio"] == 0.0
    row = table["rows"][1]
    assert abs(row["ratio"] - row["analytic"]) <= 4 * row["stderr"]


def test_export_loop_csv_round_trip(tmp_path):
    sample = sample_loop(4, 4, 8, d=2)
    meta_path = export_loop_csv(sample, tmp_path / "loop.csv")
    meta = json.loads(meta_path.read_text())
    assert meta == {"seed": 4, "K_mc": 4, "M": 8, "d": 2}
    lines = (tmp_path / "loop.csv").read_text().strip().splitlines()
    assert lines[0] == "s,B_1,B_2"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == pytest.approx(sample.values[0, 0])
