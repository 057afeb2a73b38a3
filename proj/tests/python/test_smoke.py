import math

import pytest

import twolayer as tl


def test_cutoffs():
    cfg = tl.FluidConfig(beta=0.5, b=1.0, k=1.0)
    ctx = tl.spectral_context(cfg)
    assert ctx.Lambda1 == pytest.approx(0.27578062269333832, rel=1e-12)
    assert ctx.tau1 == pytest.approx(3.009747286364956, rel=1e-12)
    assert ctx.q2 == pytest.approx(math.sqrt(2.0))


def test_bem_ellipse():
    res = tl.dipoles_bem(tl.make_ellipse(2.0, 1.0, math.pi / 6), 256)
    assert res.dipoles.mu == pytest.approx(2.625, abs=1e-7)
    assert res.dipoles.nu == pytest.approx(0.75 * math.sin(math.pi / 3), abs=1e-7)
    assert res.diagnostics.gauss_residual < 1e-10


def test_leading_order_results():
    cfg = tl.FluidConfig(0.5, 1.0, 1.0)
    ctx = tl.spectral_context(cfg)
    dip = tl.analytic_dipoles_circle(1.0)
    up = tl.ProblemSetup(cfg, tl.Side.upper, 0.5, 0.01, dip)
    low = tl.ProblemSetup(cfg, tl.Side.lower, 0.5, 0.01, dip)
    assert tl.trapped_upper(up, ctx).sigma == pytest.approx(8.574689691603593e-05, rel=1e-10)
    res = tl.resonance_upper(up, ctx, g_grav=9.81)
    assert res.im_sigma == pytest.approx(7.27205773632005e-09, rel=1e-10)
    assert res.decay_rate > 0
    assert tl.trapped_lower(low, ctx).order == "leading"
    lr = tl.resonance_lower(low, ctx)
    assert lr.im_sigma > 0
    assert math.log(lr.im_sigma) == pytest.approx(lr.log_im_sigma, abs=1e-9)


def test_embedded_and_errors():
    cfg = tl.FluidConfig(0.5, 1.0, 1.0)
    r = tl.a_star(cfg, tl.analytic_dipoles_circle(1.0), tl.spectral_context(cfg))
    assert r.exists
    assert r.a_star == pytest.approx(0.17045969415471394, rel=1e-10)
    with pytest.raises(ValueError):
        tl.FluidConfig(1.5, 1.0, 1.0)
    with pytest.raises(ValueError, match="not simple"):
        # figure eight: X = sin t, Y = sin(2t) / 2
        tl.make_fourier([[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.5]])
