"""Analytic gradients vs central finite differences.

Central differences are only a valid oracle where the function is smooth
across the whole [x-h, x+h] interval. The normalized-pyramid distance
contains |y| terms, so entries whose wiggle can flip the sign of a
near-zero pyramid coefficient are re-checked with a smaller step instead
of being compared at the standard h.
"""

import numpy as np
import pytest

from oracles import central_diff, grad_mismatch
from percepta import metrics as M
from percepta.metrics import (
    MetricKind,
    NlpdParams,
    distance,
    distance_and_gradient,
    metric_gradient,
)

H = 1e-4
H_FINE = 1e-6
REL_TOL = 1e-3


def nlpd_kink_mask(b, params, h):
    """Input entries whose +-h wiggle may cross an |y|=0 kink."""
    depth = min(params.depth, M.max_pyramid_depth(b.shape))
    lows, bands = M._pyramid_levels(b, depth, params.gen_kernel)
    mask = np.zeros(b.shape, dtype=bool)
    for level, stage in enumerate(bands + [lows[depth]]):
        near = np.argwhere(np.abs(stage) <= 6.0 * h)
        if near.size == 0:
            continue
        scale = 2 ** min(level, depth)
        rad = 4 * scale + 4  # conservative input-support radius
        for p, q in near:
            r0, r1 = max(0, p * scale - rad), min(b.shape[0], p * scale + rad + 1)
            c0, c1 = max(0, q * scale - rad), min(b.shape[1], q * scale + rad + 1)
            mask[r0:r1, c0:c1] = True
    return mask


def check_gradient(kind, a, b):
    _, ana = distance_and_gradient(kind, a, b)
    num = central_diff(lambda bb: distance(kind, a, bb), b, h=H)
    if kind == MetricKind.NLPD:
        mask = nlpd_kink_mask(b, NlpdParams(), H)
    else:
        mask = np.zeros(b.shape, dtype=bool)

    ok, rel, ab = grad_mismatch(ana[~mask], num[~mask], rel_tol=REL_TOL)
    assert ok, f"{kind}: rel {rel:g} abs {ab:g} at h={H}"
    worst = rel

    if mask.any():
        fine = central_diff(lambda bb: distance(kind, a, bb), b, h=H_FINE)
        ok, rel, ab = grad_mismatch(ana[mask], fine[mask], rel_tol=REL_TOL)
        assert ok, f"{kind}: kink entries rel {rel:g} abs {ab:g} at h={H_FINE}"
        worst = max(worst, rel)

        # aggregate directional check covers the masked entries as well
        rng = np.random.default_rng(99)
        v = rng.standard_normal(b.shape)
        fd_dir = (distance(kind, a, b + H_FINE * v)
                  - distance(kind, a, b - H_FINE * v)) / (2 * H_FINE)
        dot = float(np.vdot(ana, v))
        assert abs(fd_dir - dot) <= 1e-4 * max(abs(dot), 1e-8)
    return worst


@pytest.mark.parametrize("kind", list(MetricKind))
def test_gradient_matches_finite_differences(kind):
    rng = np.random.default_rng(1234)
    masked_pairs = 0
    for _ in range(10):
        a = rng.random((16, 16))
        b = rng.random((16, 16))
        check_gradient(kind, a, b)


def test_mse_gradient_closed_form():
    rng = np.random.default_rng(5)
    a = rng.random((7, 9))
    b = rng.random((7, 9))
    g = metric_gradient(MetricKind.MSE, a, b)
    assert np.allclose(g, 2.0 * (b - a) / b.size, atol=1e-15)


@pytest.mark.parametrize("kind", list(MetricKind))
def test_gradient_vanishes_at_reference(kind):
    rng = np.random.default_rng(6)
    for _ in range(3):
        x = rng.random((16, 16))
        g = metric_gradient(kind, x, x.copy())
        assert np.linalg.norm(g) <= 1e-6


def test_gradient_shape_and_sign_msssim():
    # moving toward the reference must decrease 1 - MS-SSIM
    rng = np.random.default_rng(7)
    a = rng.random((32, 32))
    b = rng.random((32, 32))
    d0, g = distance_and_gradient(MetricKind.ONE_MINUS_MSSSIM, a, b)
    step = b - 1e-3 * g
    assert g.shape == b.shape
    assert distance(MetricKind.ONE_MINUS_MSSSIM, a, step) < d0


def test_internal_adjoints_are_exact():
    rng = np.random.default_rng(8)
    k = M.BURT_ADELSON_KERNEL
    kern2 = np.asarray(M._default_norm_kernel())
    x = rng.standard_normal((9, 13))
    y = rng.standard_normal((9, 13))
    assert abs(np.vdot(M._blur(x, k), y) - np.vdot(x, M._blur_adj(y, k))) < 1e-12
    yr = rng.standard_normal((5, 7))
    assert abs(np.vdot(M._reduce(x, k), yr)
               - np.vdot(x, M._reduce_adj(yr, k, x.shape))) < 1e-12
    xs = rng.standard_normal((5, 7))
    assert abs(np.vdot(M._expand(xs, k, (9, 13)), y)
               - np.vdot(xs, M._expand_adj(y, k, xs.shape))) < 1e-12
    assert abs(np.vdot(M._conv2_sym(x, kern2), y)
               - np.vdot(x, M._conv2_sym_adj(y, kern2))) < 1e-12
    w = M._gaussian_window(5, 1.5)
    yv = rng.standard_normal((5, 9))
    assert abs(np.vdot(M._valid_corr_sep(x, w), yv)
               - np.vdot(x, M._valid_corr_sep_adj(yv, w, x.shape))) < 1e-12
