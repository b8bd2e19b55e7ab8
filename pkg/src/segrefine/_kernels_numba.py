"""Numba-JIT implementations of the hot kernels.

Direct blocked convolution loops and a two-pass exact Euclidean distance
transform (per-column scan, then a 1-D lower-envelope-of-parabolas pass
per row on squared distances). All kernels are single-threaded and
deterministic; fastmath only reorders the inner accumulations.
"""

import numpy as np
from numba import njit


@njit(cache=True, fastmath=True)
def conv2d_forward(xp, w, stride, out_h, out_w):
    n, ci, _, _ = xp.shape
    co, _, kh, kw = w.shape
    y = np.zeros((n, co, out_h, out_w))
    acc = np.zeros(out_w)
    for b in range(n):
        for o in range(co):
            for oh in range(out_h):
                ih0 = oh * stride
                for ow in range(out_w):
                    acc[ow] = 0.0
                for c in range(ci):
                    for dh in range(kh):
                        xrow = xp[b, c, ih0 + dh]
                        for dw in range(kw):
                            wv = w[o, c, dh, dw]
                            if stride == 1:
                                for ow in range(out_w):
                                    acc[ow] += wv * xrow[ow + dw]
                            else:
                                for ow in range(out_w):
                                    acc[ow] += wv * xrow[ow * stride + dw]
                for ow in range(out_w):
                    y[b, o, oh, ow] = acc[ow]
    return y


@njit(cache=True, fastmath=True)
def conv2d_grad_input(gy, w, stride, hp, wp):
    n, co, out_h, out_w = gy.shape
    _, ci, kh, kw = w.shape
    gxp = np.zeros((n, ci, hp, wp))
    for b in range(n):
        for o in range(co):
            for oh in range(out_h):
                gyrow = gy[b, o, oh]
                ih0 = oh * stride
                for c in range(ci):
                    for dh in range(kh):
                        grow = gxp[b, c, ih0 + dh]
                        for dw in range(kw):
                            wv = w[o, c, dh, dw]
                            for ow in range(out_w):
                                grow[ow * stride + dw] += wv * gyrow[ow]
    return gxp


@njit(cache=True, fastmath=True)
def conv2d_grad_weight(gy, xp, stride, kh, kw):
    n, co, out_h, out_w = gy.shape
    _, ci, _, _ = xp.shape
    gw = np.zeros((co, ci, kh, kw))
    for b in range(n):
        for o in range(co):
            for oh in range(out_h):
                gyrow = gy[b, o, oh]
                ih0 = oh * stride
                for c in range(ci):
                    for dh in range(kh):
                        xrow = xp[b, c, ih0 + dh]
                        for dw in range(kw):
                            acc = 0.0
                            for ow in range(out_w):
                                acc += gyrow[ow] * xrow[ow * stride + dw]
                            gw[o, c, dh, dw] += acc
    return gw


@njit(cache=True)
def _edt_1d(f, d, v, z):
    n = f.shape[0]
    k = 0
    v[0] = 0
    z[0] = -1e30
    z[1] = 1e30
    for q in range(1, n):
        s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k])
        while s <= z[k]:
            k -= 1
            s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k])
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = 1e30
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        d[q] = (q - v[k]) * (q - v[k]) + f[v[k]]


@njit(cache=True)
def distance_inside(mask_padded):
    h, w = mask_padded.shape
    big = float((h + w) * (h + w))
    g = np.empty((h, w))
    for j in range(w):
        g[0, j] = 0.0 if mask_padded[0, j] == 0 else big
        for i in range(1, h):
            g[i, j] = 0.0 if mask_padded[i, j] == 0 else min(big, g[i - 1, j] + 1.0)
        for i in range(h - 2, -1, -1):
            if g[i + 1, j] + 1.0 < g[i, j]:
                g[i, j] = g[i + 1, j] + 1.0
    gsq = g * g
    out = np.empty((h, w))
    d = np.empty(w)
    v = np.empty(w, dtype=np.int64)
    z = np.empty(w + 1)
    for i in range(h):
        _edt_1d(gsq[i], d, v, z)
        for j in range(w):
            out[i, j] = np.sqrt(d[j])
    return out
