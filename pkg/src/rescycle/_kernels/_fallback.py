"""Pure numpy versions of the compiled kernels.

Same arithmetic order as ``_core.pyx`` so both backends agree to rounding.
"""

import numpy as np


def local_linear(y, span, robust_w):
    y = np.asarray(y, dtype=np.float64)
    robust_w = np.asarray(robust_w, dtype=np.float64)
    n = y.shape[0]
    half = span // 2
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        lo = min(max(i - half, 0), n - span)
        hi = lo + span
        dmax = float(max(i - lo, hi - 1 - i))
        xj = np.arange(lo - i, hi - i, dtype=np.float64)
        d = np.abs(xj) / dmax
        w = np.where(d < 1.0, (1.0 - d**3) ** 3, 0.0) * robust_w[lo:hi]
        yj = y[lo:hi]
        sw = w.sum()
        if sw <= 0.0:
            out[i] = y[i]
            continue
        sx = (w * xj).sum()
        sy = (w * yj).sum()
        sxx = (w * xj * xj).sum()
        sxy = (w * xj * yj).sum()
        det = sw * sxx - sx * sx
        if sxx <= 0.0 or det <= 1e-12 * sw * sxx:
            out[i] = sy / sw
        else:
            out[i] = (sxx * sy - sx * sxy) / det
    return out


def powerlaw_scan(x):
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    lx = np.log(x)
    suffix = np.append(np.cumsum(lx[::-1])[::-1], 0.0)

    best_i, best_d, best_alpha = -1, 2.0, np.nan
    for i in range(n - 1):
        if i > 0 and x[i] == x[i - 1]:
            continue
        m = n - i
        lsum = suffix[i] - m * lx[i]
        if lsum <= 0.0:
            continue
        alpha = 1.0 + m / lsum
        f = 1.0 - np.exp(-(alpha - 1.0) * (lx[i:] - lx[i]))
        k = np.arange(m, dtype=np.float64)
        inv_m = 1.0 / m
        d = max(0.0, float(np.max((k + 1) * inv_m - f)), float(np.max(f - k * inv_m)))
        if d < best_d:
            best_i, best_d, best_alpha = i, d, alpha

    if best_i < 0:
        return -1, np.nan, np.nan
    return best_i, best_alpha, best_d
