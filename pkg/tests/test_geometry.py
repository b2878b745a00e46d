import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freesupport import InvalidTime, boundary_graph, f_t, g_value, graph_hausdorff, law_to_spec, nevanlinna_h, v_plus
from freesupport.geometry import scan_window, threshold


@pytest.fixture(scope="module")
def fine_semicircle():
    # the 1e-9 claim is about the root; the default law grid alone is off by ~3e-7
    return law_to_spec("semicircle", 65537)


def semicircle_f0(t):
    # (sqrt(y^2 + 4) - y) / (2y) = 1/(t-1)  =>  y = (t-1)/sqrt(t)
    return (t - 1) / np.sqrt(t)


def semicircle_v_edge(t):
    # g(x) = (1 + |x|/sqrt(x^2-4))/2 - 1 = 1/(t-1)  =>  |x| = (t+1)/sqrt(t)
    return (t + 1) / np.sqrt(t)


def test_time_must_exceed_one():
    with pytest.raises(InvalidTime):
        threshold(1.0)
    with pytest.raises(InvalidTime):
        threshold(float("nan"))


def test_f_t_semicircle_fine_grid(fine_semicircle):
    assert abs(f_t(fine_semicircle, 4.0, 0.0) - 1.5) < 1e-9


@pytest.mark.parametrize("t", [1.5, 2.0, 4.0])
def test_f_t_semicircle_default_grid(semicircle, t):
    assert f_t(semicircle, t, 0.0) == pytest.approx(semicircle_f0(t), abs=1e-6)


def test_f_t_zero_where_g_below_level(semicircle, mixed):
    assert g_value(semicircle, 3.0) < threshold(1.5)
    assert f_t(semicircle, 1.5, 3.0) == 0.0
    # atom at -1 of mass 0.3 has g = 1/0.3 - 1 < 1/(t-1) for t < 1/0.7
    assert f_t(mixed, 1.3, -1.0) == 0.0


@pytest.mark.parametrize("t", [1.1, 2.0, 4.0])
def test_v_plus_semicircle(semicircle, t):
    V = v_plus(semicircle, t)
    assert len(V) == 1
    lo, hi = V.to_list()[0]
    assert lo < -2 and hi > 2
    assert hi == pytest.approx(semicircle_v_edge(t), abs=1e-6)
    assert lo == pytest.approx(-semicircle_v_edge(t), abs=1e-6)


@pytest.mark.parametrize("t", [1.25, 1.5, 1.9])
def test_v_plus_bernoulli_single_symmetric_component(bernoulli, t):
    # rho = delta_0 and g = 1/x^2, so V_t = (-sqrt(t-1), sqrt(t-1))
    V = v_plus(bernoulli, t)
    assert len(V) == 1
    lo, hi = V.to_list()[0]
    assert hi == pytest.approx(np.sqrt(t - 1), abs=1e-8)
    assert lo == pytest.approx(-hi, abs=1e-8)


def test_v_plus_resolves_gap_at_surviving_atom(mixed):
    # the atom at -1 is outside the density [0, 2]; below its vanishing time it
    # carries its own pair of components around it
    V = v_plus(mixed, 1.3)
    assert not V.contains(-1.0)
    assert any(lo < -1 < hi for lo, hi in v_plus(mixed, 1.6))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["bernoulli", "free_poisson:0.5", "mixed", "mixed_two_atoms"]),
       st.floats(1.02, 3.0), st.floats(0.01, 1.5))
def test_v_plus_increasing_and_bounded(corpus, name, r, dt):
    spec = corpus[name]
    small, big = v_plus(spec, r), v_plus(spec, r + dt)
    assert big.covers(small, tol=1e-8)
    lo, hi = scan_window(spec)
    assert lo < big.lows.min() and big.highs.max() < hi


def test_f_t_is_the_root_and_increases_in_t(mixed_two_atoms):
    spec = mixed_two_atoms
    x = np.linspace(-2.5, 3.5, 61)
    f15, f2 = f_t(spec, 1.5, x), f_t(spec, 2.0, x)
    assert np.all(f15 <= f2)
    live = f2 > 1e-9
    h = np.asarray(nevanlinna_h(spec, x[live], f2[live]))
    np.testing.assert_allclose(h, threshold(2.0), atol=1e-9)


@pytest.mark.parametrize("name, xs", [
    ("semicircle", np.linspace(2.6, 6.0, 40)),
    ("mixed", np.linspace(2.2, 5.0, 40)),
])
def test_g_is_strictly_convex_off_support(corpus, name, xs):
    g = np.asarray(g_value(corpus[name], xs))
    assert np.all(np.isfinite(g))
    assert np.all(g[:-2] - 2 * g[1:-1] + g[2:] > 0)


def test_boundary_graph_center_sample(fine_semicircle, semicircle):
    comp = v_plus(fine_semicircle, 4.0).to_list()[0]
    graph = boundary_graph(fine_semicircle, 4.0, comp, samples_n=5)
    assert abs(graph.x[2]) < 1e-8
    assert abs(graph.f[2] - 1.5) < 1e-9
    graph = boundary_graph(semicircle, 4.0, v_plus(semicircle, 4.0).to_list()[0])
    assert graph.f[0] == graph.f[-1] == 0.0
    assert np.all(graph.f[1:-1] > 0)
    assert np.all(np.diff(graph.x) > 0)


def test_graph_distance_shrinks_with_time_step(semicircle):
    def graphs(t):
        return [boundary_graph(semicircle, t, c, 129) for c in v_plus(semicircle, t)]

    g0 = graphs(2.0)
    assert graph_hausdorff(g0, graphs(2.01)) < graph_hausdorff(g0, graphs(2.1))
