"""Spectrogram distance metrics usable both as distances and as losses.

Three metric kinds are implemented over 2-D real matrices normalized to
[0, 1]: plain MSE, 1 - MS-SSIM (structural similarity aggregated over
dyadic scales), and a normalized Laplacian pyramid distance (band-pass
decomposition followed by divisive normalization, RMS differences
averaged over stages). Every metric ships with an analytic gradient with
respect to the second argument so the same code drives training.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConfigError, InputError

BURT_ADELSON_KERNEL = (0.05, 0.25, 0.40, 0.25, 0.05)
MSSSIM_SCALE_WEIGHTS = (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)


class MetricKind(enum.Enum):
    MSE = "mse"
    ONE_MINUS_MSSSIM = "msssim"
    NLPD = "nlpd"

    @classmethod
    def from_name(cls, name: str) -> "MetricKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ConfigError(f"unknown metric {name!r}; expected one of "
                          f"{[k.value for k in cls]}")

    @property
    def label(self) -> str:
        return {"mse": "MSE", "msssim": "1-MS-SSIM", "nlpd": "NLPD"}[self.value]


@dataclass(frozen=True)
class SsimParams:
    window_size: int = 11
    window_sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 1.0
    scale_weights: tuple = MSSSIM_SCALE_WEIGHTS

    def __post_init__(self):
        if self.window_size < 3 or self.window_size % 2 == 0:
            raise ConfigError("window_size must be an odd integer >= 3")
        if self.window_sigma <= 0 or self.k1 <= 0 or self.k2 <= 0:
            raise ConfigError("window_sigma, k1, k2 must be positive")
        if self.dynamic_range <= 0:
            raise ConfigError("dynamic_range must be positive")
        weights = tuple(float(w) for w in self.scale_weights)
        if not weights or any(w <= 0 for w in weights):
            raise ConfigError("scale_weights must be non-empty and positive")
        # The canonical five-scale weights sum to 1.0001; store them
        # renormalized so the weights always sum to exactly one.
        total = sum(weights)
        object.__setattr__(self, "scale_weights",
                           tuple(w / total for w in weights))

    def to_json(self) -> dict:
        return {
            "window_size": self.window_size,
            "window_sigma": self.window_sigma,
            "k1": self.k1,
            "k2": self.k2,
            "dynamic_range": self.dynamic_range,
            "scale_weights": list(self.scale_weights),
        }


def _default_norm_kernel() -> tuple:
    k = np.asarray(BURT_ADELSON_KERNEL)
    kern = np.outer(k, k)
    kern[2, 2] = 0.0
    kern /= kern.sum()
    return tuple(tuple(float(v) for v in row) for row in kern)


@dataclass(frozen=True)
class NlpdParams:
    depth: int = 5
    gen_kernel: tuple = BURT_ADELSON_KERNEL
    norm_kernel: tuple | None = None
    sigma_dn: float = 0.17

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError("depth must be >= 1")
        gk = tuple(float(v) for v in self.gen_kernel)
        if len(gk) % 2 == 0 or any(v <= 0 for v in gk):
            raise ConfigError("gen_kernel must have odd length and positive entries")
        if gk != gk[::-1]:
            raise ConfigError("gen_kernel must be symmetric")
        if abs(sum(gk) - 1.0) > 1e-9:
            raise ConfigError("gen_kernel must sum to 1")
        object.__setattr__(self, "gen_kernel", gk)
        nk = self.norm_kernel if self.norm_kernel is not None else _default_norm_kernel()
        arr = np.asarray(nk, dtype=float)
        if arr.ndim != 2:
            raise ConfigError("norm_kernel must be a 2-D kernel")
        if (arr < 0).any():
            raise ConfigError("norm_kernel entries must be non-negative")
        center = (arr.shape[0] // 2, arr.shape[1] // 2)
        if arr[center] != 0.0:
            raise ConfigError("norm_kernel center entry must be 0")
        object.__setattr__(self, "norm_kernel",
                           tuple(tuple(float(v) for v in row) for row in arr))
        if self.sigma_dn <= 0:
            raise ConfigError("sigma_dn must be positive")

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "gen_kernel": list(self.gen_kernel),
            "norm_kernel": [list(r) for r in self.norm_kernel],
            "sigma_dn": self.sigma_dn,
        }


DEFAULT_SSIM = SsimParams()
DEFAULT_NLPD = NlpdParams()


@dataclass
class Pyramid:
    """Band-pass stack plus low-pass residual; invertible by collapse()."""

    bands: list
    residual: np.ndarray
    depth: int
    gen_kernel: tuple = BURT_ADELSON_KERNEL


# ---------------------------------------------------------------------------
# convolution primitives (symmetric a.k.a. mirror padding) and their adjoints
# ---------------------------------------------------------------------------

def _reflect_map(n: int, pad: int) -> np.ndarray:
    # numpy pad mode "symmetric": edge values repeat into the margin.
    idx = np.mod(np.arange(-pad, n + pad), 2 * n)
    return np.where(idx >= n, 2 * n - 1 - idx, idx)


def _axis_slices(ndim, axis, lo, hi):
    sl = [slice(None)] * ndim
    sl[axis] = slice(lo, hi)
    return tuple(sl)


def _axis_even(ndim, axis):
    sl = [slice(None)] * ndim
    sl[axis] = slice(0, None, 2)
    return tuple(sl)


def _conv_sym_axis(x, kernel, axis):
    # Same-size 1-D convolution along one axis with symmetric padding.
    n = x.shape[axis]
    m = len(kernel)
    pad = m // 2
    xp = np.take(x, _reflect_map(n, pad), axis=axis)
    out = np.zeros_like(x)
    for u in range(m):
        out += kernel[u] * xp[_axis_slices(x.ndim, axis, u, u + n)]
    return out


def _conv_sym_axis_adj(g, kernel, axis):
    n = g.shape[axis]
    m = len(kernel)
    pad = m // 2
    shape = list(g.shape)
    shape[axis] = n + 2 * pad
    gxp = np.zeros(shape)
    for u in range(m):
        gxp[_axis_slices(g.ndim, axis, u, u + n)] += kernel[u] * g
    gx = np.zeros_like(g)
    np.add.at(np.moveaxis(gx, axis, 0), _reflect_map(n, pad),
              np.moveaxis(gxp, axis, 0))
    return gx


def _blur(x, kernel):
    return _conv_sym_axis(_conv_sym_axis(x, kernel, 0), kernel, 1)


def _blur_adj(g, kernel):
    return _conv_sym_axis_adj(_conv_sym_axis_adj(g, kernel, 1), kernel, 0)


def _reduce(x, kernel):
    return _blur(x, kernel)[::2, ::2]


def _reduce_adj(g, kernel, orig_shape):
    t = np.zeros(orig_shape)
    t[::2, ::2] = g
    return _blur_adj(t, kernel)


def _expand_axis(x, kernel, axis, n_out):
    # Zero-insertion upsampling along one axis; the source is mirror-padded
    # in coarse space first so constants expand to constants, and the 2x
    # kernel restores the energy lost to the inserted zeros.
    k2 = [2.0 * v for v in kernel]
    p = len(kernel) // 2
    m = x.shape[axis]
    xp = np.take(x, _reflect_map(m, p), axis=axis)
    zshape = list(x.shape)
    zshape[axis] = 2 * (m + 2 * p) - 1
    z = np.zeros(zshape)
    z[_axis_even(x.ndim, axis)] = xp
    n_valid = 2 * m + 2 * p - 1
    out = np.zeros([n_valid if d == axis else s
                    for d, s in enumerate(x.shape)])
    for u in range(len(k2)):
        out += k2[u] * z[_axis_slices(x.ndim, axis, u, u + n_valid)]
    return out[_axis_slices(x.ndim, axis, p, p + n_out)]


def _expand_axis_adj(g, kernel, axis, m_src):
    k2 = [2.0 * v for v in kernel]
    p = len(kernel) // 2
    n_out = g.shape[axis]
    n_valid = 2 * m_src + 2 * p - 1
    gv = np.zeros([n_valid if d == axis else s for d, s in enumerate(g.shape)])
    gv[_axis_slices(g.ndim, axis, p, p + n_out)] = g
    zlen = 2 * (m_src + 2 * p) - 1
    gz = np.zeros([zlen if d == axis else s for d, s in enumerate(g.shape)])
    for u in range(len(k2)):
        gz[_axis_slices(g.ndim, axis, u, u + n_valid)] += k2[u] * gv
    gxp = gz[_axis_even(g.ndim, axis)]
    shape = list(g.shape)
    shape[axis] = m_src
    gx = np.zeros(shape)
    np.add.at(np.moveaxis(gx, axis, 0), _reflect_map(m_src, p),
              np.moveaxis(gxp, axis, 0))
    return gx


def _expand(x, kernel, target_shape):
    t = _expand_axis(x, kernel, 0, target_shape[0])
    return _expand_axis(t, kernel, 1, target_shape[1])


def _expand_adj(g, kernel, src_shape):
    t = _expand_axis_adj(g, kernel, 1, src_shape[1])
    return _expand_axis_adj(t, kernel, 0, src_shape[0])


def _conv2_sym(x, kern):
    r, c = x.shape
    kh, kw = kern.shape
    ph, pw = kh // 2, kw // 2
    xp = x[np.ix_(_reflect_map(r, ph), _reflect_map(c, pw))]
    out = np.zeros_like(x)
    for u in range(kh):
        for v in range(kw):
            w = kern[u, v]
            if w != 0.0:
                out += w * xp[u:u + r, v:v + c]
    return out


def _conv2_sym_adj(g, kern):
    r, c = g.shape
    kh, kw = kern.shape
    ph, pw = kh // 2, kw // 2
    gxp = np.zeros((r + 2 * ph, c + 2 * pw))
    for u in range(kh):
        for v in range(kw):
            w = kern[u, v]
            if w != 0.0:
                gxp[u:u + r, v:v + c] += w * g
    folded_rows = np.zeros((r, c + 2 * pw))
    np.add.at(folded_rows, _reflect_map(r, ph), gxp)
    gx = np.zeros((c, r))
    np.add.at(gx, _reflect_map(c, pw), folded_rows.T)
    return gx.T


def _valid_corr_sep(x, w):
    # Valid-mode separable correlation (no padding); output shrinks.
    m = len(w)
    r, c = x.shape
    t = np.zeros((r - m + 1, c))
    for u in range(m):
        t += w[u] * x[u:u + r - m + 1, :]
    out = np.zeros((r - m + 1, c - m + 1))
    for v in range(m):
        out += w[v] * t[:, v:v + c - m + 1]
    return out


def _valid_corr_sep_adj(gy, w, orig_shape):
    m = len(w)
    r, c = orig_shape
    gt = np.zeros((r - m + 1, c))
    for v in range(m):
        gt[:, v:v + c - m + 1] += w[v] * gy
    gx = np.zeros((r, c))
    for u in range(m):
        gx[u:u + r - m + 1, :] += w[u] * gt
    return gx


@lru_cache(maxsize=16)
def _gaussian_window(size: int, sigma: float) -> np.ndarray:
    coords = np.arange(size, dtype=float) - (size - 1) / 2.0
    g = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    g /= g.sum()
    g.setflags(write=False)
    return g


def _as_matrix(x, name):
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"{name} must be a non-empty 2-D matrix")
    return arr


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise InputError(f"shape mismatch: {a.shape} vs {b.shape}")


# ---------------------------------------------------------------------------
# MSE
# ---------------------------------------------------------------------------

def mse(a, b) -> float:
    """Mean squared difference over all entries."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    _check_same_shape(a, b)
    return float(np.mean((a - b) ** 2))


def _mse_grad(reference, candidate):
    return 2.0 * (candidate - reference) / candidate.size


# ---------------------------------------------------------------------------
# SSIM and MS-SSIM
# ---------------------------------------------------------------------------

def _ssim_stats(a, b, p: SsimParams):
    w = _gaussian_window(p.window_size, p.window_sigma)
    mu1 = _valid_corr_sep(a, w)
    mu2 = _valid_corr_sep(b, w)
    s1 = _valid_corr_sep(a * a, w) - mu1 * mu1
    s2 = _valid_corr_sep(b * b, w) - mu2 * mu2
    s12 = _valid_corr_sep(a * b, w) - mu1 * mu2
    c1 = (p.k1 * p.dynamic_range) ** 2
    c2 = (p.k2 * p.dynamic_range) ** 2
    lum_num = 2.0 * mu1 * mu2 + c1
    lum_den = mu1 * mu1 + mu2 * mu2 + c1
    cs_num = 2.0 * s12 + c2
    cs_den = s1 + s2 + c2
    return {
        "mu1": mu1, "mu2": mu2,
        "lum": lum_num / lum_den, "lum_num": lum_num, "lum_den": lum_den,
        "cs": cs_num / cs_den, "cs_den": cs_den,
    }


def ssim(a, b, params: SsimParams = DEFAULT_SSIM) -> float:
    """Mean structural similarity over all fully-valid window positions."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    _check_same_shape(a, b)
    if min(a.shape) < params.window_size:
        raise InputError(
            f"image {a.shape} smaller than the {params.window_size}x"
            f"{params.window_size} window")
    st = _ssim_stats(a, b, params)
    return float(np.mean(st["lum"] * st["cs"]))


def _ssim_grad_b(a, b, p, st, coeff, include_luminance):
    """d(coeff * mean(map))/db where map is lum*cs or cs alone."""
    w = _gaussian_window(p.window_size, p.window_sigma)
    mu1, mu2 = st["mu1"], st["mu2"]
    lum, cs = st["lum"], st["cs"]
    cs_den, lum_den = st["cs_den"], st["lum_den"]
    g0 = coeff / lum.size
    if include_luminance:
        # map = lum * cs
        gmu2 = g0 * cs * 2.0 * (mu1 * lum_den - mu2 * st["lum_num"]) / (lum_den ** 2)
        gs12 = g0 * lum * 2.0 / cs_den
        gs2 = -g0 * lum * cs / cs_den
    else:
        # map = cs
        gmu2 = np.zeros_like(mu2)
        gs12 = g0 * 2.0 / cs_den
        gs2 = -g0 * cs / cs_den
    gmu2_total = gmu2 - 2.0 * mu2 * gs2 - mu1 * gs12
    grad = _valid_corr_sep_adj(gmu2_total, w, a.shape)
    grad += 2.0 * b * _valid_corr_sep_adj(gs2, w, a.shape)
    grad += a * _valid_corr_sep_adj(gs12, w, a.shape)
    return grad


def _mean_pool2(x):
    r2, c2 = (x.shape[0] // 2) * 2, (x.shape[1] // 2) * 2
    v = x[:r2, :c2]
    return 0.25 * (v[0::2, 0::2] + v[1::2, 0::2] + v[0::2, 1::2] + v[1::2, 1::2])


def _mean_pool2_adj(g, orig_shape):
    out = np.zeros(orig_shape)
    r2, c2 = (orig_shape[0] // 2) * 2, (orig_shape[1] // 2) * 2
    blk = 0.25 * g
    out[0:r2:2, 0:c2:2] = blk
    out[1:r2:2, 0:c2:2] = blk
    out[0:r2:2, 1:c2:2] = blk
    out[1:r2:2, 1:c2:2] = blk
    return out


def usable_msssim_scales(shape, params: SsimParams = DEFAULT_SSIM) -> int:
    """Number of dyadic scales the input supports, capped at the weight count."""
    scales = 0
    min_dim = min(shape)
    while scales < len(params.scale_weights) and min_dim // (2 ** scales) >= params.window_size:
        scales += 1
    return scales


def _msssim_eval(a, b, p: SsimParams, with_grad: bool):
    _check_same_shape(a, b)
    if min(a.shape) < p.window_size:
        raise InputError(
            f"image {a.shape} smaller than the {p.window_size}x"
            f"{p.window_size} window")
    scales = usable_msssim_scales(a.shape, p)
    weights = np.asarray(p.scale_weights[:scales])
    weights = weights / weights.sum()

    levels = []
    aj, bj = a, b
    for j in range(scales):
        st = _ssim_stats(aj, bj, p)
        final = j == scales - 1
        score_map = st["lum"] * st["cs"] if final else st["cs"]
        levels.append((aj, bj, st, float(np.mean(score_map)), final))
        if not final:
            aj, bj = _mean_pool2(aj), _mean_pool2(bj)

    terms = np.array([max(t, 0.0) for (_, _, _, t, _) in levels])
    value = float(np.prod(terms ** weights))
    value = min(max(value, 0.0), 1.0)
    if not with_grad:
        return value, None

    grad = np.zeros_like(a)
    if np.any(terms == 0.0):
        return value, grad  # subgradient at the clamp
    for j in range(scales):
        aj, bj, st, _, final = levels[j]
        coeff = value * weights[j] / terms[j]
        gj = _ssim_grad_b(aj, bj, p, st, coeff, include_luminance=final)
        for back in range(j - 1, -1, -1):
            gj = _mean_pool2_adj(gj, levels[back][0].shape)
        grad += gj
    return value, grad


def ms_ssim(a, b, params: SsimParams = DEFAULT_SSIM) -> float:
    """Multi-scale SSIM in [0, 1]; luminance enters only at the coarsest scale.

    Scales the input cannot support are dropped and the remaining weights
    renormalized, so short clips degrade gracefully instead of failing.
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    value, _ = _msssim_eval(a, b, params, with_grad=False)
    return value


# ---------------------------------------------------------------------------
# Laplacian pyramid, divisive normalization, NLPD
# ---------------------------------------------------------------------------

def max_pyramid_depth(shape) -> int:
    """Largest depth such that min(shape) / 2^(depth-1) >= 4."""
    min_dim = min(shape)
    if min_dim < 4:
        return 0
    return int(math.floor(math.log2(min_dim / 4.0))) + 1


def _pyramid_levels(x, depth, kernel):
    lows = [x]
    for _ in range(depth):
        lows.append(_reduce(lows[-1], kernel))
    bands = [lows[k] - _expand(lows[k + 1], kernel, lows[k].shape)
             for k in range(depth)]
    return lows, bands


def laplacian_pyramid(x, depth: int, gen_kernel: tuple = BURT_ADELSON_KERNEL) -> Pyramid:
    """Decompose x into depth band-pass levels plus a low-pass residual."""
    x = _as_matrix(x, "x")
    if depth < 1:
        raise ConfigError("depth must be >= 1")
    feasible = max_pyramid_depth(x.shape)
    if depth > feasible:
        raise ConfigError(
            f"depth {depth} too deep for input {x.shape}; max feasible depth "
            f"is {feasible}")
    lows, bands = _pyramid_levels(x, depth, gen_kernel)
    return Pyramid(bands=bands, residual=lows[depth], depth=depth,
                   gen_kernel=tuple(gen_kernel))


def collapse(p: Pyramid) -> np.ndarray:
    """Invert laplacian_pyramid by upsample-and-add from the residual."""
    acc = p.residual
    for k in range(p.depth - 1, -1, -1):
        band = p.bands[k]
        expect = (-(-band.shape[0] // 2), -(-band.shape[1] // 2))
        if acc.shape != expect:
            raise InputError(
                f"inconsistent pyramid shapes: level {k} is {band.shape} but "
                f"the coarser level is {acc.shape}, expected {expect}")
        acc = band + _expand(acc, p.gen_kernel, band.shape)
    return acc


def _dn_stage(y, kern, sigma):
    den = sigma + _conv2_sym(np.abs(y), kern)
    return y / den, den


def divisive_normalize(p: Pyramid, params: NlpdParams = DEFAULT_NLPD) -> Pyramid:
    """Divide every stage by sigma plus a local pooled magnitude."""
    kern = np.asarray(params.norm_kernel)
    bands = [_dn_stage(b, kern, params.sigma_dn)[0] for b in p.bands]
    residual, _ = _dn_stage(p.residual, kern, params.sigma_dn)
    return Pyramid(bands=bands, residual=residual, depth=p.depth,
                   gen_kernel=p.gen_kernel)


def _nlpd_eval(a, b, p: NlpdParams, with_grad: bool):
    _check_same_shape(a, b)
    if min(a.shape) < 4:
        raise InputError(f"input {a.shape} too small for a pyramid stage")
    depth = min(p.depth, max_pyramid_depth(a.shape))
    kern = np.asarray(p.norm_kernel)

    lows_a, bands_a = _pyramid_levels(a, depth, p.gen_kernel)
    lows_b, bands_b = _pyramid_levels(b, depth, p.gen_kernel)
    stages_a = bands_a + [lows_a[depth]]
    stages_b = bands_b + [lows_b[depth]]

    za = [_dn_stage(y, kern, p.sigma_dn)[0] for y in stages_a]
    zb_den = [_dn_stage(y, kern, p.sigma_dn) for y in stages_b]

    n_stages = depth + 1
    rms = [float(np.sqrt(np.mean((za[i] - zb_den[i][0]) ** 2)))
           for i in range(n_stages)]
    dist = float(np.mean(rms))
    if not with_grad:
        return dist, None

    stage_grads = []
    for i in range(n_stages):
        zb, den = zb_den[i]
        if rms[i] == 0.0:
            stage_grads.append(np.zeros_like(zb))
            continue
        gz = (zb - za[i]) / (zb.size * rms[i] * n_stages)
        y = stages_b[i]
        gy = gz / den + np.sign(y) * _conv2_sym_adj(-gz * zb / den, kern)
        stage_grads.append(gy)

    # Walk the level chain coarse-to-fine accumulating d(dist)/d(low_k).
    gd = stage_grads[depth]
    for k in range(depth - 1, -1, -1):
        gd = gd + _expand_adj(-stage_grads[k], p.gen_kernel, lows_b[k + 1].shape)
        gd = _reduce_adj(gd, p.gen_kernel, lows_b[k].shape) + stage_grads[k]
    return dist, gd


def nlpd(a, b, params: NlpdParams = DEFAULT_NLPD) -> float:
    """Mean over pyramid stages of the RMS normalized-coefficient difference.

    The configured depth is reduced automatically when the input cannot
    support it (each stage needs a minimum extent of 4).
    """
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    value, _ = _nlpd_eval(a, b, params, with_grad=False)
    return value


# ---------------------------------------------------------------------------
# unified distance / gradient front end
# ---------------------------------------------------------------------------

def distance(kind: MetricKind, a, b,
             ssim_params: SsimParams = DEFAULT_SSIM,
             nlpd_params: NlpdParams = DEFAULT_NLPD) -> float:
    """Non-negative distance under the requested metric; 0 for identical inputs."""
    if kind == MetricKind.MSE:
        return mse(a, b)
    if kind == MetricKind.ONE_MINUS_MSSSIM:
        return 1.0 - ms_ssim(a, b, ssim_params)
    if kind == MetricKind.NLPD:
        return nlpd(a, b, nlpd_params)
    raise ConfigError(f"unknown metric kind {kind!r}")


def distance_and_gradient(kind: MetricKind, reference, candidate,
                          ssim_params: SsimParams = DEFAULT_SSIM,
                          nlpd_params: NlpdParams = DEFAULT_NLPD):
    """Distance plus its gradient with respect to `candidate` in one pass."""
    reference = _as_matrix(reference, "reference")
    candidate = _as_matrix(candidate, "candidate")
    _check_same_shape(reference, candidate)
    if kind == MetricKind.MSE:
        return mse(reference, candidate), _mse_grad(reference, candidate)
    if kind == MetricKind.ONE_MINUS_MSSSIM:
        value, grad = _msssim_eval(reference, candidate, ssim_params,
                                   with_grad=True)
        return 1.0 - value, -grad
    if kind == MetricKind.NLPD:
        return _nlpd_eval(reference, candidate, nlpd_params, with_grad=True)
    raise ConfigError(f"unknown metric kind {kind!r}")


def metric_gradient(kind: MetricKind, reference, candidate,
                    ssim_params: SsimParams = DEFAULT_SSIM,
                    nlpd_params: NlpdParams = DEFAULT_NLPD) -> np.ndarray:
    """Gradient of distance(kind, reference, candidate) w.r.t. candidate."""
    return distance_and_gradient(kind, reference, candidate,
                                 ssim_params, nlpd_params)[1]
