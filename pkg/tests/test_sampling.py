import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framegrid import sampling


def test_zero_jitter_is_integers():
    pat = sampling.jittered(16, 0.0, seed=7)
    np.testing.assert_array_equal(pat.lambdas, np.arange(-16, 17))


def test_jitter_bound_and_order():
    pat = sampling.jittered(16, 0.25, seed=7)
    assert np.all(np.abs(pat.lambdas - np.arange(-16, 17)) <= 0.25)
    assert np.all(np.diff(pat.lambdas) > 0)


def test_jitter_mean_near_zero():
    # 100-seed Monte Carlo put max |mean| at 0.019 (sd of the mean ~ 0.009)
    pat = sampling.jittered(128, 0.25, seed=1)
    assert abs(np.mean(pat.lambdas - np.arange(-128, 129))) <= 0.05


@pytest.mark.parametrize("theta", [0.5, 0.7, -0.1])
def test_jitter_rejects_large_theta(theta):
    with pytest.raises(ValueError):
        sampling.jittered(8, theta)


@given(st.integers(1, 200), st.floats(0, 0.499), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_jittered_properties(n, theta, seed):
    a = sampling.jittered(n, theta, seed)
    b = sampling.jittered(n, theta, seed)
    assert len(a) == 2 * n + 1
    assert a.lambdas.tobytes() == b.lambdas.tobytes()
    assert np.all(np.diff(a.lambdas) >= 1 - 2 * theta - 1e-12)


def test_log_endpoints():
    pat = sampling.logarithmic(2, 1.0)
    np.testing.assert_allclose(pat.lambdas, [-2.0, -0.1, 0.0, 0.1, 2.0], rtol=0, atol=1e-15)


def test_log_geometric():
    pat = sampling.logarithmic(16, 1.0)
    assert len(pat) == 33
    assert np.all(np.diff(pat.lambdas) > 0)
    pos = pat.lambdas[17:]
    assert pos[0] == 0.1 and pos[-1] == 16.0
    ratio = pos[1:] / pos[:-1]
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)


def test_uniform():
    np.testing.assert_array_equal(sampling.uniform(1).lambdas, [-1, 0, 1])
    np.testing.assert_array_equal(sampling.uniform(4).lambdas, np.arange(-4, 5))
    assert sampling.uniform(4) == sampling.jittered(4, 0.0, seed=123)


def test_parse():
    assert sampling.parse("uniform:n=3") == sampling.uniform(3)
    assert sampling.parse("log:n=8,v=2") == sampling.logarithmic(8, 2)
    assert sampling.parse("jittered:n=8,theta=0.2", seed=5) == sampling.jittered(8, 0.2, 5)
    assert sampling.parse("jittered:n=8,theta=0.2,seed=5") == sampling.jittered(8, 0.2, 5)
    with pytest.raises(ValueError):
        sampling.parse("jittered:theta=0.2")
    with pytest.raises(ValueError):
        sampling.parse("uniform:n=3,v=1")


def test_text_round_trip(tmp_path):
    pat = sampling.jittered(20, 0.3, seed=11)
    path = tmp_path / "pat.txt"
    sampling.write_pattern(pat, path)
    back = sampling.read_pattern(path)
    assert back.lambdas.tobytes() == pat.lambdas.tobytes()


def test_rejects_unsorted():
    with pytest.raises(ValueError):
        sampling.SamplingPattern([0.0, -1.0, 1.0], 1)
