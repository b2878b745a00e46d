import numpy as np
import pytest

from freesupport import (IntervalUnion, LawSpec, UnsupportedLawTime, ValidationError, hausdorff, law_to_spec,
                         moment, oracle_density, oracle_support, snapshot)


def test_semicircle_discretization():
    spec = law_to_spec("semicircle", 401)
    seg = spec.segments[0]
    assert abs(np.trapezoid(seg.ys, seg.xs) - 1.0) < 1e-10
    exact = np.sqrt(np.maximum(4 - seg.xs**2, 0)) / (2 * np.pi)
    np.testing.assert_allclose(seg.ys, exact, atol=1e-4)


def test_bernoulli_is_two_atoms():
    spec = law_to_spec("bernoulli")
    assert spec.atoms.tolist() == [[-1.0, 0.5], [1.0, 0.5]]
    assert spec.segments == ()


def test_free_poisson_half():
    spec = law_to_spec("free_poisson:0.5")
    assert spec.atoms.tolist() == [[0.0, 0.5]]
    seg = spec.segments[0]
    a, b = (1 - np.sqrt(0.5)) ** 2, (1 + np.sqrt(0.5)) ** 2
    assert seg.lo == pytest.approx(a) and seg.hi == pytest.approx(b)
    mid = seg.xs[len(seg.xs) // 2]
    assert seg.ys[len(seg.xs) // 2] == pytest.approx(np.sqrt((b - mid) * (mid - a)) / (2 * np.pi * mid), rel=1e-6)
    assert moment(spec, 1) == pytest.approx(0.5, abs=1e-6)  # free Poisson mean = lambda


@pytest.mark.parametrize("text, law", [
    ("semicircle", LawSpec("semicircle", 1.0)),
    ("free_poisson:0.5", LawSpec("free_poisson", 0.5)),
    ("arcsine:2", LawSpec("arcsine", 2.0)),
])
def test_parse(text, law):
    assert LawSpec.parse(text) == law


@pytest.mark.parametrize("text", ["cauchy", "semicircle:-1", "free_poisson:x"])
def test_parse_rejects(text):
    with pytest.raises(ValidationError):
        LawSpec.parse(text)


def test_oracle_examples():
    ac, atoms = oracle_support("semicircle", 4.0)
    assert ac.to_list() == [[-4.0, 4.0]] and atoms == []
    ac, atoms = oracle_support("free_poisson:0.5", 2.0)
    assert ac.to_list() == [[0.0, 4.0]] and atoms == []
    ac, atoms = oracle_support("bernoulli", 2.0)
    assert ac.to_list() == [[-2.0, 2.0]] and atoms == []
    ac, atoms = oracle_support("free_poisson:0.5", 1.2)
    assert atoms == [(0.0, 0.4)]
    with pytest.raises(UnsupportedLawTime):
        oracle_support("arcsine", 2.0)


LAWS = ["semicircle", "bernoulli", "free_poisson:0.5"]


@pytest.mark.parametrize("law", LAWS)
def test_pipeline_matches_oracle(corpus, law):
    for t in (1.25, 1.5, 2.0, 3.0):
        s = snapshot(corpus[law], t, check_refinement=False)
        ac, atoms = oracle_support(law, t)
        assert hausdorff(s.ac_support, ac) < 1e-2
        got = sorted((a.position, a.mass) for a in s.atoms)
        assert got == sorted(atoms)
        whole = ac.union((x, x) for x, _ in atoms)
        assert hausdorff(s.support(), whole) < 1e-2


@pytest.mark.parametrize("law, t", [("bernoulli", 1.5), ("free_poisson:0.5", 1.2), ("semicircle", 2.5)])
def test_density_profile_matches_oracle(corpus, law, t):
    s = snapshot(corpus[law], t, check_refinement=False)
    u, p = s.density.u, s.density.p
    ac, _ = oracle_support(law, t)
    # a sqrt edge turns an edge offset of 1e-7 into a density offset of ~1e-3
    ok = np.isfinite(p) & (np.min(np.abs(u[:, None] - np.r_[ac.lows, ac.highs]), axis=1) > 1e-4)
    np.testing.assert_allclose(p[ok], oracle_density(law, t, u[ok]), atol=2e-4)


def test_arcsine_oracle_at_time_one():
    ac, _ = oracle_support("arcsine:2", 1.0)
    assert ac.to_list() == [[-2.0, 2.0]]
    assert oracle_density("arcsine:2", 1.0, 0.0) == pytest.approx(1 / (2 * np.pi))
    spec = law_to_spec("arcsine:2")
    # variance r^2 / 2; the 1/sqrt edges limit the piecewise-linear grid to ~5e-4
    assert moment(spec, 2) == pytest.approx(2.0, abs=1e-3)
