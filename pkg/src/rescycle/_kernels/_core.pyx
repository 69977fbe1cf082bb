# cython: language_level=3
"""Compiled inner loops: tricube local-linear pass and power-law x_min scan."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, exp, fabs, log, nextafter

cnp.import_array()

cdef Py_ssize_t PROBES = 16
cdef Py_ssize_t COARSE = 16


def local_linear(const double[::1] y, Py_ssize_t span, const double[::1] robust_w):
    """One weighted local-linear pass over an integer-indexed series.

    For every point ``i`` the window is the ``span`` nearest indices, the
    distance weights are tricube on ``|j - i| / max|j - i|`` and are multiplied
    by ``robust_w[j]``. Returns the fitted value at each ``i``.
    """
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t i, j, lo, hi, half = span // 2
    cdef double dmax, d, w, xj, sw, sx, sy, sxx, sxy, det
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] fit = out

    with nogil:
        for i in range(n):
            lo = i - half
            if lo < 0:
                lo = 0
            if lo > n - span:
                lo = n - span
            hi = lo + span
            dmax = <double>(i - lo)
            if <double>(hi - 1 - i) > dmax:
                dmax = <double>(hi - 1 - i)

            sw = 0.0
            sx = 0.0
            sy = 0.0
            sxx = 0.0
            sxy = 0.0
            for j in range(lo, hi):
                xj = <double>(j - i)
                d = fabs(xj) / dmax
                if d >= 1.0:
                    continue
                w = 1.0 - d * d * d
                w = w * w * w * robust_w[j]
                sw += w
                sx += w * xj
                sy += w * y[j]
                sxx += w * xj * xj
                sxy += w * xj * y[j]

            if sw <= 0.0:
                fit[i] = y[i]
                continue
            det = sw * sxx - sx * sx
            if sxx <= 0.0 or det <= 1e-12 * sw * sxx:
                fit[i] = sy / sw
            else:
                fit[i] = (sxx * sy - sx * sxy) / det
    return out


cdef inline double _ks_tail(const double[::1] lx, Py_ssize_t i, Py_ssize_t n,
                           double expo, double bound) noexcept nogil:
    """K-S distance of the tail ``lx[i:]``; returns early once it reaches ``bound``."""
    cdef Py_ssize_t j, q, m = n - i
    cdef double inv_m = 1.0 / m, lxi = lx[i], f, dk, d = 0.0
    # any single point bounds D from below: probe a few before the sweep
    for q in range(1, PROBES):
        j = i + (q * (m - 1)) // PROBES
        f = 1.0 - exp(-expo * (lx[j] - lxi))
        dk = (j - i + 1) * inv_m - f
        if dk > d:
            d = dk
        dk = f - (j - i) * inv_m
        if dk > d:
            d = dk
    if d >= bound:
        return d
    for j in range(i, n):
        f = 1.0 - exp(-expo * (lx[j] - lxi))
        dk = (j - i + 1) * inv_m - f
        if dk > d:
            d = dk
        dk = f - (j - i) * inv_m
        if dk > d:
            d = dk
        if d >= bound:
            break
    return d


def powerlaw_scan(const double[::1] x):
    """Continuous power-law fit with K-S-minimising x_min.

    ``x`` must be sorted ascending and strictly positive. Returns
    ``(index, alpha, ks)`` for the first candidate reaching the smallest K-S
    distance, or ``(-1, nan, nan)`` when no candidate leaves a usable tail.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t i, m, npass, stride, best_i = -1
    cdef double best_d = 2.0, best_alpha = np.nan
    cdef double lsum, alpha, d

    lx_arr = np.empty(n, dtype=np.float64)
    suffix_arr = np.empty(n + 1, dtype=np.float64)
    cdef double[::1] lx = lx_arr
    cdef double[::1] suffix = suffix_arr

    with nogil:
        for i in range(n):
            lx[i] = log(x[i])
        suffix[n] = 0.0
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + lx[i]

        # a coarse pass seeds the bound; the full pass then keeps the
        # lowest-index minimiser, so the result matches a plain scan
        for npass in range(2):
            stride = COARSE if npass == 0 else 1
            i = -stride
            while i + stride < n - 1:
                i += stride
                if i == best_i or (i > 0 and x[i] == x[i - 1]):
                    continue
                m = n - i
                lsum = suffix[i] - m * lx[i]
                if lsum <= 0.0:
                    continue
                alpha = 1.0 + m / lsum
                if i < best_i:
                    d = _ks_tail(lx, i, n, alpha - 1.0, nextafter(best_d, INFINITY))
                    if d <= best_d:
                        best_d, best_i, best_alpha = d, i, alpha
                else:
                    d = _ks_tail(lx, i, n, alpha - 1.0, best_d)
                    if d < best_d:
                        best_d, best_i, best_alpha = d, i, alpha

    if best_i < 0:
        return -1, np.nan, np.nan
    return best_i, best_alpha, best_d
