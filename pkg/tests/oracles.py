"""Independent straight-from-definition oracles.

Everything here is written with explicit loops and no shared code with
the package, so tests can compare the fast implementations against a
second, independently derived computation.
"""

import math

import numpy as np


# -- windowed SSIM ----------------------------------------------------------

def gaussian_window_2d(size, sigma):
    c = (size - 1) / 2.0
    w = [[math.exp(-((i - c) ** 2 + (j - c) ** 2) / (2.0 * sigma * sigma))
          for j in range(size)] for i in range(size)]
    total = sum(sum(row) for row in w)
    return [[v / total for v in row] for row in w]


def ssim_bruteforce(a, b, size=11, sigma=1.5, k1=0.01, k2=0.03, L=1.0,
                    cs_only=False):
    """Mean SSIM (or contrast-structure only) over valid window positions."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    w = gaussian_window_2d(size, sigma)
    c1 = (k1 * L) ** 2
    c2 = (k2 * L) ** 2
    rows, cols = a.shape
    total = 0.0
    count = 0
    for r in range(rows - size + 1):
        for c in range(cols - size + 1):
            mu1 = mu2 = 0.0
            for u in range(size):
                for v in range(size):
                    mu1 += w[u][v] * a[r + u, c + v]
                    mu2 += w[u][v] * b[r + u, c + v]
            s1 = s2 = s12 = 0.0
            for u in range(size):
                for v in range(size):
                    da = a[r + u, c + v] - mu1
                    db = b[r + u, c + v] - mu2
                    s1 += w[u][v] * da * da
                    s2 += w[u][v] * db * db
                    s12 += w[u][v] * da * db
            lum = (2 * mu1 * mu2 + c1) / (mu1 * mu1 + mu2 * mu2 + c1)
            cs = (2 * s12 + c2) / (s1 + s2 + c2)
            total += cs if cs_only else lum * cs
            count += 1
    return total / count


def mean_pool_2x2(x):
    x = np.asarray(x, dtype=float)
    r, c = x.shape[0] // 2, x.shape[1] // 2
    out = np.zeros((r, c))
    for i in range(r):
        for j in range(c):
            out[i, j] = (x[2 * i, 2 * j] + x[2 * i + 1, 2 * j]
                         + x[2 * i, 2 * j + 1] + x[2 * i + 1, 2 * j + 1]) / 4.0
    return out


def msssim_bruteforce(a, b, weights, size=11, sigma=1.5, k1=0.01, k2=0.03,
                      L=1.0):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scales = 0
    while scales < len(weights) and min(a.shape) // (2 ** scales) >= size:
        scales += 1
    ws = [float(x) for x in weights[:scales]]
    ws = [x / sum(ws) for x in ws]
    value = 1.0
    for j in range(scales):
        final = j == scales - 1
        t = ssim_bruteforce(a, b, size, sigma, k1, k2, L, cs_only=not final)
        value *= max(t, 0.0) ** ws[j]
        if not final:
            a, b = mean_pool_2x2(a), mean_pool_2x2(b)
    return min(max(value, 0.0), 1.0)


# -- normalized Laplacian pyramid distance ----------------------------------

def _reflect(i, n):
    # symmetric boundary: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
    period = 2 * n
    i = i % period
    if i < 0:
        i += period
    return i if i < n else period - 1 - i


def conv_sym_rows(x, kern):
    x = np.asarray(x, dtype=float)
    rows, cols = x.shape
    m = len(kern)
    p = m // 2
    out = np.zeros_like(x)
    for i in range(rows):
        for j in range(cols):
            acc = 0.0
            for u in range(m):
                acc += kern[u] * x[_reflect(i + u - p, rows), j]
            out[i, j] = acc
    return out


def conv_sym_cols(x, kern):
    return conv_sym_rows(np.asarray(x).T, kern).T


def blur_sym(x, kern):
    return conv_sym_cols(conv_sym_rows(x, kern), kern)


def conv2_sym(x, kern2):
    x = np.asarray(x, dtype=float)
    rows, cols = x.shape
    kh = len(kern2)
    kw = len(kern2[0])
    ph, pw = kh // 2, kw // 2
    out = np.zeros_like(x)
    for i in range(rows):
        for j in range(cols):
            acc = 0.0
            for u in range(kh):
                for v in range(kw):
                    acc += kern2[u][v] * x[_reflect(i + u - ph, rows),
                                           _reflect(j + v - pw, cols)]
            out[i, j] = acc
    return out


def nlpd_oracle(a, b, depth, kern=(0.05, 0.25, 0.40, 0.25, 0.05),
                sigma=0.17):
    """Loop-level NLPD: pyramid, divisive normalization, mean stage RMS."""
    kern = [float(v) for v in kern]
    kern2x = [2.0 * v for v in kern]
    norm = [[ku * kv for kv in kern] for ku in kern]
    norm[len(kern) // 2][len(kern) // 2] = 0.0
    s = sum(sum(row) for row in norm)
    norm = [[v / s for v in row] for row in norm]

    def reduce_(x):
        return blur_sym(x, kern)[::2, ::2]

    def expand_rows(x, n_out):
        # out[t] = sum_j k2x[p + t - 2j] * x[reflect(j)]: zero-insertion
        # upsampling with the source mirrored in coarse space.
        p = len(kern2x) // 2
        m = x.shape[0]
        out = np.zeros((n_out, x.shape[1]))
        for t in range(n_out):
            for j in range((t - p + 1) // 2, (t + p) // 2 + 1):
                u = p + t - 2 * j
                if 0 <= u < len(kern2x):
                    out[t, :] += kern2x[u] * x[_reflect(j, m), :]
        return out

    def expand_(x, target):
        t = expand_rows(np.asarray(x, dtype=float), target[0])
        return expand_rows(t.T, target[1]).T

    def stages(x):
        x = np.asarray(x, dtype=float)
        lows = [x]
        for _ in range(depth):
            lows.append(reduce_(lows[-1]))
        out = []
        for k in range(depth):
            out.append(lows[k] - expand_(lows[k + 1], lows[k].shape))
        out.append(lows[depth])
        normed = []
        for y in out:
            den = sigma + conv2_sym(np.abs(y), norm)
            normed.append(y / den)
        return normed

    za = stages(a)
    zb = stages(b)
    acc = 0.0
    for sa, sb in zip(za, zb):
        diff_sq = 0.0
        for i in range(sa.shape[0]):
            for j in range(sa.shape[1]):
                diff_sq += (sa[i, j] - sb[i, j]) ** 2
        acc += math.sqrt(diff_sq / sa.size)
    return acc / (depth + 1)


# -- brute-force KNN ---------------------------------------------------------

def knn_bruteforce(distances, train_labels, k):
    """Exhaustive neighbour search mirroring the documented tie rules.

    distances: list of (distance, train_index) pairs implied by position.
    """
    order = sorted(range(len(distances)), key=lambda i: (distances[i], i))
    chosen = order[:k]
    votes = {}
    for i in chosen:
        votes.setdefault(train_labels[i], []).append(distances[i])
    best_count = max(len(v) for v in votes.values())
    tied = [g for g, v in votes.items() if len(v) == best_count]
    if len(tied) == 1:
        return tied[0]
    means = {g: sum(votes[g]) / len(votes[g]) for g in tied}
    best_mean = min(means.values())
    tied = sorted(g for g in tied if means[g] == best_mean)
    return tied[0]


# -- finite differences ------------------------------------------------------

def central_diff(f, x, h=1e-4):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    it = np.nditer(x, flags=["multi_index"])
    while not it.finished:
        idx = it.multi_index
        xp = x.copy()
        xp[idx] += h
        xm = x.copy()
        xm[idx] -= h
        g[idx] = (f(xp) - f(xm)) / (2.0 * h)
        it.iternext()
    return g


def grad_mismatch(analytic, numeric, rel_tol=1e-3, abs_floor=1e-8,
                  abs_tol=1e-6):
    """Max relative error; entries with |analytic| < abs_floor compared
    absolutely at abs_tol. Returns (ok, worst_rel, worst_abs)."""
    analytic = np.asarray(analytic)
    numeric = np.asarray(numeric)
    err = np.abs(analytic - numeric)
    small = np.abs(analytic) < abs_floor
    rel = np.where(small, 0.0, err / np.maximum(np.abs(analytic), 1e-300))
    worst_rel = float(rel.max()) if rel.size else 0.0
    worst_abs = float(np.where(small, err, 0.0).max()) if err.size else 0.0
    return worst_rel <= rel_tol and worst_abs <= abs_tol, worst_rel, worst_abs
